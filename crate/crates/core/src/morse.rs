//! Critical cells σ(a, D), their lcm labels and closure, gradient paths in
//! the modified face digraph, and the Morse differential.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::pd1::OrderedGenerators;
use crate::power::{dd, ExpVec, PowerTable};
use crate::taylor::{match_arrow, Face, MatchArrow};

/// `σ(a, D) = {a} ∪ {π_i(a) : i ∈ D}` with `D ⊆ Supp(a) ∖ {first index}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CriticalCell {
    pub a: ExpVec,
    pub d: Vec<usize>,
}

impl CriticalCell {
    pub fn new(a: ExpVec, mut d: Vec<usize>) -> Result<Self> {
        d.sort_unstable();
        d.dedup();
        if let Some(&bad) = d.iter().find(|&&i| i == 0 || !a.in_support(i)) {
            return Err(Error::NotInSupport(bad));
        }
        Ok(CriticalCell { a, d })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// The cell as a Taylor face over `table`.
    pub fn as_face(&self, table: &PowerTable) -> Face {
        let base = table.index_of(&self.a).expect("cell vector lies in N_r");
        let mut face: Face = std::iter::once(base)
            .chain(self.d.iter().map(|&i| table.pi_of(base, i).expect("i in support")))
            .collect();
        face.sort_unstable();
        face
    }

    /// Recovers `(a, D)` from a critical face: `a` is its maximum and each
    /// other vertex is `π_i(a)` with `i = 𝔡(a, π_i(a))`.
    pub fn from_face(table: &PowerTable, face: &[usize]) -> Result<Self> {
        let &max = face.last().ok_or(Error::EmptyFace)?;
        let a = table.vector(max).clone();
        let d = face[..face.len() - 1]
            .iter()
            .map(|&b| dd(&a, table.vector(b)).expect("distinct vertices"))
            .collect();
        let cell = CriticalCell::new(a, d)?;
        if cell.as_face(table) != face {
            return Err(Error::InvalidPath(format!("face {face:?} is not of the form σ(a, D)")));
        }
        Ok(cell)
    }
}

/// All `(a, D)` grouped by `|D|`, with `a` ascending under ≺ and `D` in
/// lexicographic order inside each dimension.
pub fn enumerate_critical(table: &PowerTable) -> Vec<Vec<CriticalCell>> {
    let mut by_dim: Vec<Vec<CriticalCell>> = vec![Vec::new()];
    for a in table.vectors() {
        let movable = a.movable_support();
        for mask in 0u64..(1u64 << movable.len()) {
            let d: Vec<usize> = movable
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            if by_dim.len() <= d.len() {
                by_dim.resize(d.len() + 1, Vec::new());
            }
            by_dim[d.len()].push(CriticalCell { a: a.clone(), d });
        }
    }
    for cells in &mut by_dim {
        cells.sort();
    }
    by_dim
}

/// `m^a · ∏_{j∈D} ∏_{x ∈ F_j ∖ F_{τ(j)}} x`.
pub fn cell_lcm(cell: &CriticalCell, og: &OrderedGenerators) -> Monomial {
    cell.d
        .iter()
        .fold(cell.a.expand(og), |acc, &j| acc.mul(&og.diff_monomial(j)))
}

/// The cells below `c` in the Morse complex: `σ(a, D∖k)` and `σ(π_k a, D∖k)` for `k ∈ D`.
pub fn closure_facets(cell: &CriticalCell, tau: &[usize]) -> Vec<CriticalCell> {
    let mut out = Vec::with_capacity(2 * cell.d.len());
    for &k in &cell.d {
        let rest: Vec<usize> = cell.d.iter().copied().filter(|&i| i != k).collect();
        out.push(CriticalCell {
            a: cell.a.clone(),
            d: rest.clone(),
        });
        out.push(CriticalCell {
            a: cell.a.pi(k, tau).expect("k in support"),
            d: rest,
        });
    }
    let mut sorted = out.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), out.len(), "closure families collided");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Up,
    Down,
}

/// A path `σ_0 → … → σ_h` alternating up and down, with the simplicial
/// weight it contributes to the differential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradientPath {
    pub faces: Vec<Face>,
    pub steps: Vec<Step>,
    pub weight: i64,
}

impl GradientPath {
    pub fn start(&self) -> &Face {
        &self.faces[0]
    }

    pub fn end(&self) -> &Face {
        self.faces.last().expect("paths are nonempty")
    }
}

/// `[σ : σ ∖ v] = (−1)^{position of v in σ}`.
pub fn incidence(face: &[usize], v: usize) -> i64 {
    let pos = face.binary_search(&v).expect("vertex of face");
    if pos.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn remove(face: &[usize], v: usize) -> Face {
    face.iter().copied().filter(|&w| w != v).collect()
}

/// Weight of one up step `τ ↗ ρ = τ ∪ {v}` followed by the down step `ρ ↘ ρ ∖ w`.
fn zigzag_weight(rho: &[usize], v: usize, w: usize) -> i64 {
    -incidence(rho, v) * incidence(rho, w)
}

/// The add/delete sequence from `σ(a, D) ∖ {a}` to `σ(π_k a, D ∖ k)`,
/// with every step checked against the matching.
pub fn gradient_path_explicit(table: &PowerTable, cell: &CriticalCell, k: usize) -> Result<GradientPath> {
    let d = &cell.d;
    let s = d.len();
    let e = d
        .iter()
        .position(|&x| x == k)
        .ok_or(Error::NotInSupport(k))?;
    if s < 2 {
        return Err(Error::InvalidPath("needs |D| ≥ 2".into()));
    }
    let tau = table.tau();
    let idx = |set: &[usize]| -> usize {
        table
            .index_of(&cell.a.pi_set(set, tau).expect("D in support"))
            .expect("vector lies in N_r")
    };

    let mut moves: Vec<(usize, usize)> = Vec::new();
    for i in 0..e {
        for j in (e + 1..s).rev() {
            let del = if i == 0 { idx(&[d[j]]) } else { idx(&[d[i - 1], d[j]]) };
            moves.push((idx(&[d[i], d[j]]), del));
        }
        moves.push((idx(&[d[i], d[e]]), idx(&[d[i]])));
    }
    for j in (e + 1..s).rev() {
        let del = if e == 0 { idx(&[d[j]]) } else { idx(&[d[e - 1], d[j]]) };
        moves.push((idx(&[d[e], d[j]]), del));
    }

    let full = cell.as_face(table);
    let base = table.index_of(&cell.a).expect("cell vector lies in N_r");
    let mut current = remove(&full, base);
    let mut path = GradientPath {
        faces: vec![current.clone()],
        steps: Vec::new(),
        weight: 1,
    };
    for (add, del) in moves {
        let mut upper = current.clone();
        let pos = upper
            .binary_search(&add)
            .err()
            .ok_or_else(|| Error::InvalidPath(format!("vertex {add} already present")))?;
        upper.insert(pos, add);
        if match_arrow(table, &current)? != MatchArrow::MatchedUp(upper.clone()) {
            return Err(Error::InvalidPath(format!("{current:?} ↗ {upper:?} is not a matched edge")));
        }
        if upper.binary_search(&del).is_err() {
            return Err(Error::InvalidPath(format!("vertex {del} missing from {upper:?}")));
        }
        let lower = remove(&upper, del);
        if lower == current {
            return Err(Error::InvalidPath("down step undoes the matched edge".into()));
        }
        path.weight *= zigzag_weight(&upper, add, del);
        path.faces.push(upper.clone());
        path.faces.push(lower.clone());
        path.steps.push(Step::Up);
        path.steps.push(Step::Down);
        current = lower;
    }
    let target = CriticalCell {
        a: cell.a.pi(k, tau)?,
        d: d.iter().copied().filter(|&x| x != k).collect(),
    };
    if current != target.as_face(table) {
        return Err(Error::InvalidPath(format!(
            "path ends at {current:?}, not at σ(π_k a, D∖k)"
        )));
    }
    Ok(path)
}

/// Every gradient path from `start` that ends at the first critical face it
/// meets, restricted to those ending at `end` when given. A critical start
/// yields only the trivial path. More than `cap` paths is `TooLarge`.
pub fn gradient_paths_from(
    table: &PowerTable,
    start: &[usize],
    end: Option<&[usize]>,
    cap: usize,
) -> Result<Vec<GradientPath>> {
    let mut found = Vec::new();
    let mut stack = vec![GradientPath {
        faces: vec![start.to_vec()],
        steps: Vec::new(),
        weight: 1,
    }];
    while let Some(path) = stack.pop() {
        let tip = path.end().clone();
        match match_arrow(table, &tip)? {
            MatchArrow::Critical => {
                if end.is_none_or(|e| e == tip.as_slice()) {
                    if found.len() == cap {
                        return Err(Error::TooLarge {
                            what: "gradient path enumeration",
                            needed: cap as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    found.push(path);
                }
            }
            MatchArrow::MatchedDown(_) => {}
            MatchArrow::MatchedUp(upper) => {
                let added = *upper
                    .iter()
                    .find(|v| tip.binary_search(v).is_err())
                    .expect("upper has one extra vertex");
                for &w in upper.iter().filter(|&&w| w != added) {
                    let lower = remove(&upper, w);
                    let mut next = path.clone();
                    next.weight *= zigzag_weight(&upper, added, w);
                    next.faces.push(upper.clone());
                    next.faces.push(lower);
                    next.steps.push(Step::Up);
                    next.steps.push(Step::Down);
                    stack.push(next);
                }
            }
        }
    }
    found.sort_by(|x, y| x.faces.cmp(&y.faces));
    Ok(found)
}

pub fn gradient_paths_bruteforce(
    table: &PowerTable,
    start: &[usize],
    end: &[usize],
    cap: usize,
) -> Result<Vec<GradientPath>> {
    gradient_paths_from(table, start, Some(end), cap)
}

/// One entry of `∂c`: coefficient and monomial shift towards a lower cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialTerm {
    pub target: CriticalCell,
    pub coeff: i64,
    pub shift: Monomial,
}

/// Memoized gradient flow: `Φ(τ)` expresses a face of the Taylor complex as
/// a combination of critical faces of the same dimension.
#[derive(Debug)]
pub struct Flow<'t> {
    table: &'t PowerTable,
    memo: HashMap<Face, Vec<(Face, i64)>>,
}

impl<'t> Flow<'t> {
    pub fn new(table: &'t PowerTable) -> Self {
        Flow {
            table,
            memo: HashMap::new(),
        }
    }

    pub fn phi(&mut self, face: &[usize]) -> Result<Vec<(Face, i64)>> {
        if let Some(hit) = self.memo.get(face) {
            return Ok(hit.clone());
        }
        let value = match match_arrow(self.table, face)? {
            MatchArrow::Critical => vec![(face.to_vec(), 1)],
            MatchArrow::MatchedDown(_) => Vec::new(),
            MatchArrow::MatchedUp(upper) => {
                let added = *upper
                    .iter()
                    .find(|v| face.binary_search(v).is_err())
                    .expect("upper has one extra vertex");
                let mut acc: HashMap<Face, i64> = HashMap::new();
                for &w in upper.iter().filter(|&&w| w != added) {
                    let weight = zigzag_weight(&upper, added, w);
                    for (crit, c) in self.phi(&remove(&upper, w))? {
                        *acc.entry(crit).or_insert(0) += weight * c;
                    }
                }
                let mut v: Vec<(Face, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
                v.sort();
                v
            }
        };
        self.memo.insert(face.to_vec(), value.clone());
        Ok(value)
    }
}

fn assemble(
    table: &PowerTable,
    cell: &CriticalCell,
    combos: HashMap<Face, i64>,
) -> Result<Vec<DifferentialTerm>> {
    let top = cell_lcm(cell, table.og());
    let mut terms = combos
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(face, coeff)| {
            let target = CriticalCell::from_face(table, &face)?;
            let shift = top.div_exact(&cell_lcm(&target, table.og()))?;
            Ok(DifferentialTerm {
                target,
                coeff,
                shift,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    terms.sort_by(|x, y| x.target.cmp(&y.target));
    Ok(terms)
}

/// `∂c = Σ_v [c : c∖v] Φ(c∖v)`, using a shared flow cache.
pub fn morse_differential_with(flow: &mut Flow<'_>, cell: &CriticalCell) -> Result<Vec<DifferentialTerm>> {
    let table = flow.table;
    if cell.dim() == 0 {
        return Ok(Vec::new());
    }
    let face = cell.as_face(table);
    let mut combos: HashMap<Face, i64> = HashMap::new();
    for &v in &face {
        let sign = incidence(&face, v);
        for (crit, c) in flow.phi(&remove(&face, v))? {
            *combos.entry(crit).or_insert(0) += sign * c;
        }
    }
    assemble(table, cell, combos)
}

pub fn morse_differential(table: &PowerTable, cell: &CriticalCell) -> Result<Vec<DifferentialTerm>> {
    morse_differential_with(&mut Flow::new(table), cell)
}

/// The same differential summed path by path, as an independent check on the flow.
pub fn morse_differential_by_paths(
    table: &PowerTable,
    cell: &CriticalCell,
    cap: usize,
) -> Result<Vec<DifferentialTerm>> {
    if cell.dim() == 0 {
        return Ok(Vec::new());
    }
    let face = cell.as_face(table);
    let mut combos: HashMap<Face, i64> = HashMap::new();
    for &v in &face {
        let sign = incidence(&face, v);
        for path in gradient_paths_from(table, &remove(&face, v), None, cap)? {
            *combos.entry(path.end().clone()).or_insert(0) += sign * path.weight;
        }
    }
    assemble(table, cell, combos)
}
