//! The Taylor complex of `I^r` as an implicit face poset, the matching
//! σ ↦ σ ∖ {π(σ)}, and generic verifiers for matchings on simplicial face sets.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::power::{dd, Disagreement, PowerTable};

/// A set of vertices, sorted ascending. For Taylor faces the vertices are
/// indices into a [`PowerTable`], so the ≺-maximum is the last entry.
pub type Face = Vec<usize>;

/// A matching edge `(upper, lower)` with `lower = upper ∖ {v}`.
pub type Arrow = (Face, Face);

pub const DEFAULT_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceStats {
    pub max: usize,
    pub dd: Disagreement,
    /// Table index of `π_{𝔡(σ)}(max σ)`, present when `𝔡(σ) ≠ −∞`.
    pub pi: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "partner")]
pub enum MatchArrow {
    Critical,
    MatchedUp(Face),
    MatchedDown(Face),
}

impl MatchArrow {
    pub fn is_critical(&self) -> bool {
        matches!(self, MatchArrow::Critical)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MatchArrow::Critical => "critical",
            MatchArrow::MatchedUp(_) => "matched_up",
            MatchArrow::MatchedDown(_) => "matched_down",
        }
    }

    pub fn partner(&self) -> Option<&Face> {
        match self {
            MatchArrow::Critical => None,
            MatchArrow::MatchedUp(f) | MatchArrow::MatchedDown(f) => Some(f),
        }
    }
}

pub fn face_lcm(table: &PowerTable, face: &[usize]) -> Result<Monomial> {
    if face.is_empty() {
        return Err(Error::EmptyFace);
    }
    Ok(face
        .iter()
        .fold(Monomial::one(), |acc, &v| acc.lcm(table.monomial(v))))
}

pub fn face_stats(table: &PowerTable, face: &[usize]) -> Result<FaceStats> {
    let &max = face.last().ok_or(Error::EmptyFace)?;
    let family = table.pi_family_of(max);
    let a = table.vector(max);
    let dd_face = face
        .iter()
        .filter(|v| family.binary_search(v).is_err())
        .map(|&b| dd(a, table.vector(b)))
        .max()
        .flatten();
    // b ≺ a forces a_k > b_k ≥ 0 at k = 𝔡(a, b), so π_k(a) is defined.
    let pi = dd_face.map(|k| table.pi_of(max, k).expect("disagreement index lies in the support"));
    Ok(FaceStats {
        max,
        dd: dd_face,
        pi,
    })
}

pub fn match_arrow(table: &PowerTable, face: &[usize]) -> Result<MatchArrow> {
    let stats = face_stats(table, face)?;
    Ok(match stats.pi {
        None => MatchArrow::Critical,
        Some(p) => match face.binary_search(&p) {
            Ok(pos) => {
                let mut lower = face.to_vec();
                lower.remove(pos);
                MatchArrow::MatchedDown(lower)
            }
            Err(pos) => {
                let mut upper = face.to_vec();
                upper.insert(pos, p);
                MatchArrow::MatchedUp(upper)
            }
        },
    })
}

pub fn face_from_mask(mask: u64) -> Face {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Number of nonempty Taylor faces, or `TooLarge` when `2^{|N_r|}` exceeds `cap`.
pub fn face_count(table: &PowerTable, cap: u128) -> Result<u64> {
    let n = table.len();
    let needed = if n >= 127 { u128::MAX } else { 1u128 << n };
    if n >= 64 || needed > cap {
        return Err(Error::TooLarge {
            what: "Taylor face enumeration",
            needed,
            cap,
        });
    }
    Ok((1u64 << n) - 1)
}

/// Classifies every nonempty face of the Taylor complex of `I^r`.
pub fn enumerate_matching(table: &PowerTable, cap: u128) -> Result<Vec<(Face, MatchArrow)>> {
    let count = face_count(table, cap)?;
    (1..=count)
        .into_par_iter()
        .map(|mask| {
            let face = face_from_mask(mask);
            let arrow = match_arrow(table, &face)?;
            Ok((face, arrow))
        })
        .collect()
}

/// The matching edges of a full classification, each listed once as `(upper, lower)`.
pub fn arrows_of(classified: &[(Face, MatchArrow)]) -> Vec<Arrow> {
    classified
        .iter()
        .filter_map(|(f, m)| match m {
            MatchArrow::MatchedDown(lower) => Some((f.clone(), lower.clone())),
            _ => None,
        })
        .collect()
}

pub fn critical_faces_bruteforce(table: &PowerTable, cap: u128) -> Result<BTreeSet<Face>> {
    let count = face_count(table, cap)?;
    let faces: Vec<Face> = (1..=count)
        .into_par_iter()
        .filter_map(|mask| {
            let face = face_from_mask(mask);
            match face_stats(table, &face) {
                Ok(s) if s.dd.is_none() => Some(face),
                _ => None,
            }
        })
        .collect();
    Ok(faces.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchingStats {
    pub faces: u64,
    pub critical: u64,
    pub matched_pairs: u64,
}

pub fn matching_stats(classified: &[(Face, MatchArrow)]) -> MatchingStats {
    let critical = classified.iter().filter(|(_, m)| m.is_critical()).count() as u64;
    let down = classified
        .iter()
        .filter(|(_, m)| matches!(m, MatchArrow::MatchedDown(_)))
        .count() as u64;
    MatchingStats {
        faces: classified.len() as u64,
        critical,
        matched_pairs: down,
    }
}

fn is_cover(upper: &[usize], lower: &[usize]) -> bool {
    upper.len() == lower.len() + 1 && lower.iter().all(|v| upper.binary_search(v).is_ok())
}

/// Every edge is a covering pair and no face lies in two edges.
pub fn verify_is_matching(arrows: &[Arrow]) -> bool {
    let mut seen: HashSet<&Face> = HashSet::with_capacity(arrows.len() * 2);
    arrows
        .iter()
        .all(|(u, l)| is_cover(u, l) && seen.insert(u) && seen.insert(l))
}

/// Builds the digraph on `universe` with every covering relation pointing
/// down except matched ones, which point up, and checks it has no cycle.
pub fn verify_matching_acyclic(arrows: &[Arrow], universe: &[Face]) -> bool {
    let index: HashMap<&Face, usize> = universe.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let matched: HashSet<(usize, usize)> = arrows
        .iter()
        .filter_map(|(u, l)| Some((*index.get(u)?, *index.get(l)?)))
        .collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); universe.len()];
    let mut indegree = vec![0usize; universe.len()];
    for (i, face) in universe.iter().enumerate() {
        for pos in 0..face.len() {
            let mut lower = face.clone();
            lower.remove(pos);
            let Some(&j) = index.get(&lower) else { continue };
            let (from, to) = if matched.contains(&(i, j)) { (j, i) } else { (i, j) };
            out[from].push(to);
            indegree[to] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..universe.len()).filter(|&i| indegree[i] == 0).collect();
    let mut visited = 0;
    while let Some(i) = queue.pop_front() {
        visited += 1;
        for &j in &out[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                queue.push_back(j);
            }
        }
    }
    visited == universe.len()
}

/// Matched faces carry equal labels.
pub fn verify_matching_homogeneous<F>(arrows: &[Arrow], label: F) -> bool
where
    F: Fn(&[usize]) -> Monomial + Sync,
{
    arrows.par_iter().all(|(u, l)| label(u) == label(l))
}

/// The cone matching `σ → σ ∖ {v}` on the faces of `y` containing `v`
/// whose deletion also lies in `y`.
pub fn vertex_matching(y: &[Face], v: usize) -> Vec<Arrow> {
    let members: HashSet<&Face> = y.iter().collect();
    y.iter()
        .filter_map(|f| {
            let pos = f.binary_search(&v).ok()?;
            let mut lower = f.clone();
            lower.remove(pos);
            members.contains(&lower).then(|| (f.clone(), lower))
        })
        .collect()
}

/// Groups faces by `(max σ, 𝔡(σ))` and glues the vertex matchings on the
/// blocks with `𝔡 ≠ −∞`, each coned at `π_𝔡(max σ)`.
pub fn cluster_union(table: &PowerTable, faces: &[Face]) -> Result<Vec<Arrow>> {
    let mut blocks: BTreeMap<(usize, usize), Vec<Face>> = BTreeMap::new();
    for f in faces {
        let s = face_stats(table, f)?;
        if let Some(k) = s.dd {
            blocks.entry((s.max, k)).or_default().push(f.clone());
        }
    }
    Ok(blocks
        .into_iter()
        .flat_map(|((max, k), y)| {
            let apex = table.pi_of(max, k).expect("disagreement index lies in the support");
            vertex_matching(&y, apex)
        })
        .collect())
}

/// Every face of the simplex on `0..n`, including the empty face when asked.
pub fn simplex_faces(n: usize, with_empty: bool) -> Vec<Face> {
    let start = if with_empty { 0u64 } else { 1 };
    (start..(1u64 << n)).map(face_from_mask).collect()
}
