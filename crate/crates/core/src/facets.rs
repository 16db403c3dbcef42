//! Simplicial complexes given by their facets: leaves, joints, quasi-forest
//! recognition and the complement complex.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Variables};

pub type VertexSet = BTreeSet<usize>;

/// A simplicial complex on vertices `0..n`, stored as its facets.
///
/// Facets are pairwise incomparable under inclusion and nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    pub fn new(num_vertices: usize, facets: Vec<VertexSet>) -> Result<Self> {
        for (i, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::Parse(format!("facet {i} is empty")));
            }
            if f.iter().any(|&v| v >= num_vertices) {
                return Err(Error::Parse(format!("facet {i} uses an undeclared vertex")));
            }
            for (j, g) in facets.iter().enumerate() {
                if i != j && f.is_subset(g) {
                    return Err(Error::Parse(format!("facet {i} is contained in facet {j}")));
                }
            }
        }
        Ok(SimplicialComplex {
            num_vertices,
            facets,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// The subcomplex generated by the facets at `indices`.
    pub fn restrict(&self, indices: &[usize]) -> SimplicialComplex {
        SimplicialComplex {
            num_vertices: self.num_vertices,
            facets: indices.iter().map(|&i| self.facets[i].clone()).collect(),
        }
    }
}

/// Joint data for one facet: every other facet `G` with `F ∩ H ⊆ G` for all `H ≠ F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafCertificate {
    pub leaf_index: usize,
    pub joint_indices: Vec<usize>,
    pub is_leaf: bool,
}

/// The facet complex of a square-free minimal generating set: one facet per
/// generator support, over all variables in `vars`.
pub fn facet_complex(generators: &[Monomial], vars: &Variables) -> Result<SimplicialComplex> {
    check_generators(generators, vars)?;
    let facets = generators
        .iter()
        .map(|g| g.support().collect::<VertexSet>())
        .collect();
    SimplicialComplex::new(vars.len(), facets)
}

/// Ingestion checks shared by every entry point: square-free, non-unit,
/// pairwise non-dividing generators.
pub fn check_generators(generators: &[Monomial], vars: &Variables) -> Result<()> {
    for g in generators {
        if g.is_one() {
            return Err(Error::UnitGenerator);
        }
        if !g.is_squarefree() {
            return Err(Error::NotSquarefree(g.display(vars).to_string()));
        }
    }
    for (i, a) in generators.iter().enumerate() {
        for (j, b) in generators.iter().enumerate() {
            if i != j && a.divides(b) {
                return Err(Error::NotMinimalGenerating {
                    divisor: a.display(vars).to_string(),
                    multiple: b.display(vars).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Replaces every facet `F` by `V ∖ F`. Complements of incomparable facets
/// are incomparable, so no re-minimalization is needed.
pub fn complement(delta: &SimplicialComplex) -> Result<SimplicialComplex> {
    let all: VertexSet = (0..delta.num_vertices).collect();
    let facets: Vec<VertexSet> = delta
        .facets
        .iter()
        .map(|f| all.difference(f).copied().collect())
        .collect();
    if let Some(i) = facets.iter().position(|f| f.is_empty()) {
        return Err(Error::EmptyComplementFacet(i));
    }
    Ok(SimplicialComplex {
        num_vertices: delta.num_vertices,
        facets,
    })
}

pub fn find_joints(delta: &SimplicialComplex, leaf: usize) -> LeafCertificate {
    let f = &delta.facets[leaf];
    let joint_indices: Vec<usize> = (0..delta.len())
        .filter(|&g| g != leaf)
        .filter(|&g| {
            let joint = &delta.facets[g];
            (0..delta.len())
                .filter(|&h| h != leaf)
                .all(|h| f.intersection(&delta.facets[h]).all(|v| joint.contains(v)))
        })
        .collect();
    LeafCertificate {
        leaf_index: leaf,
        is_leaf: delta.len() == 1 || !joint_indices.is_empty(),
        joint_indices,
    }
}

/// An order `F_1..F_q` in which each `F_i` is a leaf of `⟨F_1..F_i⟩`, found
/// by repeatedly peeling a leaf (the one with the largest index when several
/// qualify) and reversing the removal order.
pub fn quasi_forest_order(delta: &SimplicialComplex) -> Result<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..delta.len()).collect();
    let mut peeled = Vec::with_capacity(delta.len());
    while !remaining.is_empty() {
        let current = delta.restrict(&remaining);
        let leaf = (0..remaining.len())
            .rev()
            .find(|&k| find_joints(&current, k).is_leaf);
        match leaf {
            Some(k) => peeled.push(remaining.remove(k)),
            None => return Err(Error::NotQuasiForest { remaining }),
        }
    }
    peeled.reverse();
    Ok(peeled)
}

/// Re-checks the leaf condition of every prefix of `order`.
pub fn is_leaf_order(delta: &SimplicialComplex, order: &[usize]) -> bool {
    let mut seen = vec![false; delta.len()];
    if order.len() != delta.len() || order.iter().any(|&i| i >= delta.len() || std::mem::replace(&mut seen[i], true)) {
        return false;
    }
    (0..order.len()).all(|i| {
        let prefix = delta.restrict(&order[..=i]);
        find_joints(&prefix, i).is_leaf
    })
}

/// Vertices of `facet` lying in none of `prefix`.
pub fn free_vertices(prefix: &[VertexSet], facet: &VertexSet) -> VertexSet {
    facet
        .iter()
        .copied()
        .filter(|v| prefix.iter().all(|p| !p.contains(v)))
        .collect()
}
