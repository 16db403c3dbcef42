//! Exponent vectors `a ∈ N_r`, their order ≺, the disagreement index 𝔡 and
//! the moves π_j, π_D that drive the matching.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::pd1::OrderedGenerators;

/// The disagreement index: `None` plays the role of −∞ and sorts below every index.
pub type Disagreement = Option<usize>;

pub const NEG_INF: Disagreement = None;

/// A weak composition `a = (a_1..a_q)` naming the generator `m^a` of `I^r`.
///
/// `Ord` is the order ≺: `b ≺ a` iff `b_j < a_j` at the largest index where
/// they differ. Vectors of different lengths never meet in practice; they
/// compare by length first so the order stays total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(entries: Vec<u32>) -> Self {
        ExpVec(entries)
    }

    pub fn zeros(q: usize) -> Self {
        ExpVec(vec![0; q])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn in_support(&self, j: usize) -> bool {
        self.0.get(j).is_some_and(|&e| e > 0)
    }

    /// `Supp(a) ∖ {first index}`: the indices a critical cell may use.
    pub fn movable_support(&self) -> Vec<usize> {
        self.support().filter(|&j| j > 0).collect()
    }

    /// `π_j(a) = a + e_{τ(j)} − e_j`.
    pub fn pi(&self, j: usize, tau: &[usize]) -> Result<ExpVec> {
        if !self.in_support(j) {
            return Err(Error::NotInSupport(j));
        }
        let mut out = self.0.clone();
        out[j] -= 1;
        out[tau[j]] += 1;
        Ok(ExpVec(out))
    }

    /// `π_D(a) = a + Σ_{i∈D} (e_{τ(i)} − e_i)`, requiring `D ⊆ Supp(a)`.
    pub fn pi_set(&self, d: &[usize], tau: &[usize]) -> Result<ExpVec> {
        let mut out: Vec<i64> = self.0.iter().map(|&e| e as i64).collect();
        for &i in d {
            if !self.in_support(i) {
                return Err(Error::NotInSupport(i));
            }
            out[i] -= 1;
            out[tau[i]] += 1;
        }
        // D ⊆ Supp(a) keeps every entry nonnegative: index i only loses the
        // single unit it owns and τ(i) only gains.
        Ok(ExpVec(out.into_iter().map(|e| e as u32).collect()))
    }

    /// `Π(a) = {π_j(a) : j ∈ Supp(a)} ∪ {a}`.
    pub fn pi_family(&self, tau: &[usize]) -> BTreeSet<ExpVec> {
        let mut family: BTreeSet<ExpVec> = self
            .support()
            .map(|j| self.pi(j, tau).expect("j in support"))
            .collect();
        family.insert(self.clone());
        family
    }

    /// `m^a = ∏ m_i^{a_i}`.
    pub fn expand(&self, og: &OrderedGenerators) -> Monomial {
        self.0
            .iter()
            .enumerate()
            .fold(Monomial::one(), |acc, (i, &e)| acc.mul(&og.generator(i).pow(e)))
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Compares `a` with `b` under ≺; `Greater` means `b ≺ a`.
pub fn prec_compare(a: &ExpVec, b: &ExpVec) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.cmp(b))
}

/// 𝔡(a, b): the largest index where `a` and `b` differ, or −∞ when equal.
pub fn dd(a: &ExpVec, b: &ExpVec) -> Disagreement {
    a.0.iter()
        .zip(&b.0)
        .rposition(|(x, y)| x != y)
}

/// All weak compositions of `r` into `q` parts, largest under ≺ first.
pub fn enumerate_nr(q: usize, r: u32) -> Vec<ExpVec> {
    let mut out = Vec::new();
    let mut current = vec![0u32; q];
    fill(&mut out, &mut current, q, r);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<ExpVec>, current: &mut Vec<u32>, remaining_slots: usize, r: u32) {
    if remaining_slots == 0 {
        if r == 0 {
            out.push(ExpVec(current.clone()));
        }
        return;
    }
    let idx = current.len() - remaining_slots;
    if remaining_slots == 1 {
        current[idx] = r;
        out.push(ExpVec(current.clone()));
        current[idx] = 0;
        return;
    }
    for e in 0..=r {
        current[idx] = e;
        fill(out, current, remaining_slots - 1, r - e);
    }
    current[idx] = 0;
}

/// `C(n, k)` without overflow for the sizes used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Checks that `a ↦ m^a` is injective on `N_r`.
pub fn uniqueness_check(og: &OrderedGenerators, r: u32) -> Result<bool> {
    let mut seen = HashSet::new();
    for a in enumerate_nr(og.q(), r) {
        let m = a.expand(og);
        if !seen.insert(m.clone()) {
            return Err(Error::DuplicateGenerator(m.display(og.vars()).to_string()));
        }
    }
    Ok(true)
}

/// The generators of `I^r` sorted ascending under ≺, so that the maximum of a
/// face (a sorted index list) is its last entry.
#[derive(Debug, Clone)]
pub struct PowerTable {
    og: OrderedGenerators,
    r: u32,
    vectors: Vec<ExpVec>,
    monomials: Vec<Monomial>,
    lookup: HashMap<ExpVec, usize>,
    /// `pi_index[v][j]` is the table index of `π_j(vector v)` when `j ∈ Supp`.
    pi_index: Vec<Vec<Option<usize>>>,
}

impl PowerTable {
    pub fn new(og: &OrderedGenerators, r: u32) -> Result<Self> {
        let mut vectors = enumerate_nr(og.q(), r);
        vectors.reverse();
        let monomials: Vec<Monomial> = vectors.iter().map(|a| a.expand(og)).collect();
        let mut distinct = HashSet::with_capacity(monomials.len());
        for m in &monomials {
            if !distinct.insert(m) {
                return Err(Error::DuplicateGenerator(m.display(og.vars()).to_string()));
            }
        }
        let lookup: HashMap<ExpVec, usize> =
            vectors.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let pi_index = vectors
            .iter()
            .map(|a| {
                (0..og.q())
                    .map(|j| a.pi(j, og.tau()).ok().map(|b| lookup[&b]))
                    .collect()
            })
            .collect();
        Ok(PowerTable {
            og: og.clone(),
            r,
            vectors,
            monomials,
            lookup,
            pi_index,
        })
    }

    pub fn og(&self) -> &OrderedGenerators {
        &self.og
    }

    pub fn tau(&self) -> &[usize] {
        self.og.tau()
    }

    pub fn q(&self) -> usize {
        self.og.q()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, v: usize) -> &ExpVec {
        &self.vectors[v]
    }

    pub fn vectors(&self) -> &[ExpVec] {
        &self.vectors
    }

    pub fn monomial(&self, v: usize) -> &Monomial {
        &self.monomials[v]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, a: &ExpVec) -> Option<usize> {
        self.lookup.get(a).copied()
    }

    /// Table index of `π_j` applied to vertex `v`.
    pub fn pi_of(&self, v: usize, j: usize) -> Option<usize> {
        self.pi_index[v][j]
    }

    /// Table indices of `Π(vector v)`, sorted.
    pub fn pi_family_of(&self, v: usize) -> Vec<usize> {
        let mut fam: Vec<usize> = self.pi_index[v].iter().flatten().copied().collect();
        fam.push(v);
        fam.sort_unstable();
        fam.dedup();
        fam
    }
}
