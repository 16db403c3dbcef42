//! Ordered generators of a projective-dimension-one ideal, the joint
//! function τ and the tree supporting the minimal resolution of the ideal.
//!
//! Indices are 0-based throughout the library: generator `i` here is `m_{i+1}`
//! in the usual 1-based notation, `tau[0] == 0` and `tau[i] < i` otherwise.

use crate::error::{Error, Result};
use crate::facets::{self, find_joints, SimplicialComplex, VertexSet};
use crate::monomial::{Monomial, Variables};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGenerators {
    vars: Variables,
    generators: Vec<Monomial>,
    original_index: Vec<usize>,
    facets: Vec<VertexSet>,
    tau: Vec<usize>,
    diff_sets: Vec<VertexSet>,
}

impl OrderedGenerators {
    pub fn q(&self) -> usize {
        self.generators.len()
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Monomial {
        &self.generators[i]
    }

    /// `original_index()[i]` is the input position of ordered generator `i`.
    pub fn original_index(&self) -> &[usize] {
        &self.original_index
    }

    /// Whether the input order had to be replaced to satisfy the leaf condition.
    pub fn reordered(&self) -> bool {
        self.original_index.iter().enumerate().any(|(i, &j)| i != j)
    }

    /// Complement facets `F_i = V ∖ supp(m_i)` in order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// `F_j ∖ F_{τ(j)}`; empty for `j = 0`.
    pub fn diff_set(&self, j: usize) -> &VertexSet {
        &self.diff_sets[j]
    }

    /// `∏_{x ∈ F_j ∖ F_{τ(j)}} x`.
    pub fn diff_monomial(&self, j: usize) -> Monomial {
        Monomial::product_of(self.diff_sets[j].iter().copied())
    }

    pub fn with_tau(&self, tau: &[usize]) -> Result<OrderedGenerators> {
        validate_tau(&self.facets, tau)?;
        let mut og = self.clone();
        og.tau = tau.to_vec();
        og.diff_sets = diff_sets(&og.facets, &og.tau);
        Ok(og)
    }
}

/// Outcome of the projective-dimension test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pd1Check {
    Holds(OrderedGenerators),
    /// Input positions of the generators whose complement facets could not be peeled.
    Fails { stuck: Vec<usize> },
}

impl Pd1Check {
    pub fn holds(&self) -> bool {
        matches!(self, Pd1Check::Holds(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub child: usize,
    pub parent: usize,
    pub label: Monomial,
}

/// The tree `T` with vertex `v_i` labeled `m_i` and edges `(v_i, v_{τ(i)})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTree {
    pub vertices: Vec<Monomial>,
    pub edges: Vec<TreeEdge>,
}

/// Orders the generators so their complement facets form a leaf order, and
/// picks τ(i) as the smallest joint index. An input order that already works
/// is kept.
pub fn order_generators(generators: &[Monomial], vars: &Variables) -> Result<OrderedGenerators> {
    order_generators_with(generators, vars, None)
}

/// As [`order_generators`], but a declared order (input positions) must itself
/// be a leaf order instead of falling back to the greedy one.
pub fn order_generators_with(
    generators: &[Monomial],
    vars: &Variables,
    declared_order: Option<&[usize]>,
) -> Result<OrderedGenerators> {
    match check_pd1_with(generators, vars, declared_order)? {
        Pd1Check::Holds(og) => Ok(og),
        Pd1Check::Fails { stuck } => Err(Error::NotProjectiveDimensionOne {
            stuck: stuck
                .iter()
                .map(|&i| generators[i].display(vars).to_string())
                .collect(),
        }),
    }
}

pub fn check_pd1(generators: &[Monomial], vars: &Variables) -> Result<Pd1Check> {
    check_pd1_with(generators, vars, None)
}

pub fn check_pd1_with(
    generators: &[Monomial],
    vars: &Variables,
    declared_order: Option<&[usize]>,
) -> Result<Pd1Check> {
    facets::check_generators(generators, vars)?;
    if generators.is_empty() {
        return Err(Error::Parse("ideal has no generators".into()));
    }
    let all: VertexSet = (0..vars.len()).collect();
    let complements: Vec<VertexSet> = generators
        .iter()
        .map(|g| {
            let supp: VertexSet = g.support().collect();
            all.difference(&supp).copied().collect()
        })
        .collect();

    let order = if generators.len() == 1 {
        // The lone complement facet may be empty; nothing to peel.
        vec![0]
    } else {
        let delta = SimplicialComplex::new(vars.len(), complements.clone())?;
        let identity: Vec<usize> = (0..generators.len()).collect();
        match declared_order {
            Some(order) => {
                if !facets::is_leaf_order(&delta, order) {
                    return Err(Error::InvalidDeclaredOrder(order.iter().map(|i| i + 1).collect()));
                }
                order.to_vec()
            }
            None if facets::is_leaf_order(&delta, &identity) => identity,
            None => match facets::quasi_forest_order(&delta) {
                Ok(order) => order,
                Err(Error::NotQuasiForest { remaining }) => {
                    return Ok(Pd1Check::Fails { stuck: remaining })
                }
                Err(e) => return Err(e),
            },
        }
    };

    let facets: Vec<VertexSet> = order.iter().map(|&i| complements[i].clone()).collect();
    let tau = smallest_joints(&facets);
    Ok(Pd1Check::Holds(OrderedGenerators {
        vars: vars.clone(),
        generators: order.iter().map(|&i| generators[i].clone()).collect(),
        original_index: order,
        diff_sets: diff_sets(&facets, &tau),
        facets,
        tau,
    }))
}

fn prefix_complex(facets: &[VertexSet], i: usize) -> SimplicialComplex {
    // Complements of a minimal generating set are pairwise incomparable.
    SimplicialComplex::new(
        facets.iter().flatten().max().map_or(0, |&v| v + 1),
        facets[..=i].to_vec(),
    )
    .expect("prefix of incomparable facets")
}

fn smallest_joints(facets: &[VertexSet]) -> Vec<usize> {
    (0..facets.len())
        .map(|i| {
            if i == 0 {
                0
            } else {
                find_joints(&prefix_complex(facets, i), i).joint_indices[0]
            }
        })
        .collect()
}

fn validate_tau(facets: &[VertexSet], tau: &[usize]) -> Result<()> {
    if tau.len() != facets.len() {
        return Err(Error::InvalidTau(format!(
            "expected {} entries, got {}",
            facets.len(),
            tau.len()
        )));
    }
    if tau[0] != 0 {
        return Err(Error::InvalidTau("τ(1) must be 1".into()));
    }
    for (i, &t) in tau.iter().enumerate().skip(1) {
        if t >= i {
            return Err(Error::InvalidTau(format!("τ({}) must be below {}", i + 1, i + 1)));
        }
        let cert = find_joints(&prefix_complex(facets, i), i);
        if !cert.joint_indices.contains(&t) {
            return Err(Error::InvalidTau(format!(
                "F_{} is not a joint of F_{}",
                t + 1,
                i + 1
            )));
        }
    }
    Ok(())
}

fn diff_sets(facets: &[VertexSet], tau: &[usize]) -> Vec<VertexSet> {
    (0..facets.len())
        .map(|j| {
            if j == 0 {
                VertexSet::new()
            } else {
                facets[j].difference(&facets[tau[j]]).copied().collect()
            }
        })
        .collect()
}

pub fn resolution_tree(og: &OrderedGenerators) -> ResolutionTree {
    ResolutionTree {
        vertices: og.generators.clone(),
        edges: (1..og.q())
            .map(|i| {
                let parent = og.tau[i];
                TreeEdge {
                    child: i,
                    parent,
                    label: og.generators[i].lcm(&og.generators[parent]),
                }
            })
            .collect(),
    }
}
