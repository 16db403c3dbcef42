//! The multigraded minimal free resolution of `I^r` carried by the critical
//! cells, its Betti numbers, and end-to-end checks of exactness and minimality.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldChoice;
use crate::monomial::Monomial;
use crate::morse::{cell_lcm, closure_facets, enumerate_critical, morse_differential_with, CriticalCell, Flow};
use crate::pd1::OrderedGenerators;
use crate::power::{binomial, PowerTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub cell: CriticalCell,
    pub lcm: Monomial,
}

/// `∂_i[row, col] = coeff · shift`, mapping basis `col` of degree `i` to basis `row` of degree `i−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: i64,
    pub shift: Monomial,
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub bases: Vec<Vec<BasisElement>>,
    /// `maps[i]` is `∂_i`; `maps[0]` is always empty.
    pub maps: Vec<Vec<MatrixEntry>>,
    tau: Vec<usize>,
}

impl ChainComplex {
    pub fn length(&self) -> usize {
        self.bases.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Copy with the sign of one entry of `∂_degree` flipped.
    pub fn with_flipped_sign(&self, degree: usize, entry: usize) -> ChainComplex {
        let mut out = self.clone();
        out.maps[degree][entry].coeff = -out.maps[degree][entry].coeff;
        out
    }

    /// Copy with one shift of `∂_degree` replaced by the unit monomial.
    pub fn with_unit_shift(&self, degree: usize, entry: usize) -> ChainComplex {
        let mut out = self.clone();
        out.maps[degree][entry].shift = Monomial::one();
        out
    }
}

pub fn build_resolution(og: &OrderedGenerators, r: u32) -> Result<ChainComplex> {
    let table = PowerTable::new(og, r)?;
    build_resolution_on(&table)
}

pub fn build_resolution_on(table: &PowerTable) -> Result<ChainComplex> {
    let og = table.og();
    let cells = enumerate_critical(table);
    let bases: Vec<Vec<BasisElement>> = cells
        .iter()
        .map(|dim| {
            dim.iter()
                .map(|c| BasisElement {
                    cell: c.clone(),
                    lcm: cell_lcm(c, og),
                })
                .collect()
        })
        .collect();
    let mut maps = vec![Vec::new()];
    for i in 1..cells.len() {
        let index: HashMap<&CriticalCell, usize> =
            cells[i - 1].iter().enumerate().map(|(k, c)| (c, k)).collect();
        let columns: Vec<Vec<MatrixEntry>> = cells[i]
            .par_iter()
            .enumerate()
            .map_init(
                || Flow::new(table),
                |flow, (col, c)| {
                    morse_differential_with(flow, c).map(|terms| {
                        terms
                            .into_iter()
                            .map(|t| MatrixEntry {
                                row: index[&t.target],
                                col,
                                coeff: t.coeff,
                                shift: t.shift,
                            })
                            .collect()
                    })
                },
            )
            .collect::<Result<_>>()?;
        maps.push(columns.into_iter().flatten().collect());
    }
    Ok(ChainComplex {
        bases,
        maps,
        tau: og.tau().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub total: Vec<usize>,
    pub multigraded: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    /// `Σ (−1)^i β_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.total
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Graded counts `β_{i, i+j}` keyed by `(i, j)` where the total degree is `i + j`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), usize> {
        let mut out = BTreeMap::new();
        for ((i, m), &n) in &self.multigraded {
            *out.entry((*i, m.degree() - *i as u32)).or_insert(0) += n;
        }
        out
    }
}

pub fn betti(complex: &ChainComplex) -> BettiTable {
    let mut multigraded = BTreeMap::new();
    for (i, basis) in complex.bases.iter().enumerate() {
        for b in basis {
            *multigraded.entry((i, b.lcm.clone())).or_insert(0) += 1;
        }
    }
    BettiTable {
        total: complex.ranks(),
        multigraded,
    }
}

/// `β_i = Σ_{a∈N_r} C(|Supp(a) ∖ {first}|, i)`.
pub fn betti_closed_form(table: &PowerTable) -> Vec<u128> {
    let mut total: Vec<u128> = vec![0];
    for a in table.vectors() {
        let s = a.movable_support().len() as u64;
        if total.len() <= s as usize {
            total.resize(s as usize + 1, 0);
        }
        for (i, slot) in total.iter_mut().enumerate().take(s as usize + 1) {
            *slot += binomial(s, i as u64);
        }
    }
    total
}

pub fn pd_formula(q: usize, r: u32) -> usize {
    (r as usize).min(q.saturating_sub(1))
}

pub fn pd_computed(complex: &ChainComplex) -> usize {
    complex.bases.iter().rposition(|b| !b.is_empty()).unwrap_or(0)
}

pub fn dstab(q: usize) -> usize {
    q.saturating_sub(1)
}

/// `pd(I^r)` for `r = 1..=max(q, 1)`.
pub fn pd_sequence(q: usize) -> Vec<usize> {
    (1..=q.max(1) as u32).map(|r| pd_formula(q, r)).collect()
}

/// Every shift is a non-unit and compatible with the labels, and no cell
/// shares its label with a cell of its closure.
pub fn verify_minimality(complex: &ChainComplex) -> bool {
    let entries_ok = complex.maps.iter().enumerate().skip(1).all(|(i, map)| {
        map.iter().all(|e| {
            !e.shift.is_one()
                && e.shift.mul(&complex.bases[i - 1][e.row].lcm) == complex.bases[i][e.col].lcm
        })
    });
    let labels: HashMap<&CriticalCell, &Monomial> = complex
        .bases
        .iter()
        .flatten()
        .map(|b| (&b.cell, &b.lcm))
        .collect();
    let closure_ok = complex.bases.iter().flatten().all(|b| {
        closure_facets(&b.cell, &complex.tau)
            .iter()
            .all(|c| labels.get(c).is_some_and(|&m| m != &b.lcm))
    });
    entries_ok && closure_ok
}

/// `∂_{i−1} ∘ ∂_i = 0` with monomial coefficients.
pub fn verify_d2(complex: &ChainComplex) -> bool {
    (2..complex.maps.len()).all(|i| {
        let mut by_col: HashMap<usize, Vec<&MatrixEntry>> = HashMap::new();
        for e in &complex.maps[i - 1] {
            by_col.entry(e.col).or_default().push(e);
        }
        let mut acc: HashMap<(usize, usize, Monomial), i64> = HashMap::new();
        for outer in &complex.maps[i] {
            for inner in by_col.get(&outer.row).into_iter().flatten() {
                let key = (inner.row, outer.col, inner.shift.mul(&outer.shift));
                *acc.entry(key).or_insert(0) += inner.coeff * outer.coeff;
            }
        }
        acc.values().all(|&c| c == 0)
    })
}

/// The labels closed under pairwise lcm, or `TooLarge` past `cap` elements.
pub fn lcm_closure(complex: &ChainComplex, cap: usize) -> Result<BTreeSet<Monomial>> {
    let mut closed: BTreeSet<Monomial> = complex.bases.iter().flatten().map(|b| b.lcm.clone()).collect();
    let mut frontier: Vec<Monomial> = closed.iter().cloned().collect();
    while !frontier.is_empty() {
        let snapshot: Vec<Monomial> = closed.iter().cloned().collect();
        let mut next = Vec::new();
        for m in &frontier {
            for n in &snapshot {
                let l = m.lcm(n);
                if !closed.contains(&l) {
                    closed.insert(l.clone());
                    next.push(l);
                    if closed.len() > cap {
                        return Err(Error::TooLarge {
                            what: "lcm closure of cell labels",
                            needed: closed.len() as u128,
                            cap: cap as u128,
                        });
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(closed)
}

pub const DEFAULT_STRAND_CAP: usize = 1 << 16;

/// Monomials whose strand failed, empty when the complex resolves `I^r` over `field`.
pub fn strand_failures(complex: &ChainComplex, field: FieldChoice, cap: usize) -> Result<Vec<Monomial>> {
    let degrees = lcm_closure(complex, cap)?;
    Ok(degrees
        .into_par_iter()
        .filter(|m| !strand_is_acyclic(complex, field, m))
        .collect())
}

pub fn verify_strand_acyclicity(complex: &ChainComplex, field: FieldChoice) -> Result<bool> {
    strand_failures(complex, field, DEFAULT_STRAND_CAP).map(|f| f.is_empty())
}

/// The cells with label dividing `m`, augmented by the empty cell, form an exact complex.
fn strand_is_acyclic(complex: &ChainComplex, field: FieldChoice, m: &Monomial) -> bool {
    let keep: Vec<Vec<Option<usize>>> = complex
        .bases
        .iter()
        .map(|basis| {
            let mut next = 0;
            basis
                .iter()
                .map(|b| {
                    b.lcm.divides(m).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = keep.iter().map(|k| k.iter().flatten().count()).collect();
    // Matrices of the augmented complex: mats[0] is ε from degree 0 to degree −1.
    let mut mats: Vec<Vec<Vec<i64>>> = vec![vec![vec![1; dims[0]]]];
    for i in 1..complex.bases.len() {
        let mut m_i = vec![vec![0i64; dims[i]]; dims[i - 1]];
        for e in &complex.maps[i] {
            if let (Some(r), Some(c)) = (keep[i - 1][e.row], keep[i][e.col]) {
                m_i[r][c] += e.coeff;
            }
        }
        mats.push(m_i);
    }
    for pair in mats.windows(2) {
        if !field.is_zero_matrix(&multiply(&pair[0], &pair[1])) {
            return false;
        }
    }
    let ranks: Vec<usize> = mats.iter().map(|m| field.rank(m)).collect();
    // Degree −1 has dimension 1 and no outgoing map.
    if ranks[0] != 1 {
        return false;
    }
    (0..dims.len()).all(|i| dims[i] == ranks[i] + ranks.get(i + 1).copied().unwrap_or(0))
}

fn multiply(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row.get(k).copied().unwrap_or(0) * b[k][j]).sum())
                .collect()
        })
        .collect()
}
