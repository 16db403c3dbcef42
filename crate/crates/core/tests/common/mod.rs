#![allow(dead_code)]

pub mod lemmas;

use std::collections::BTreeSet;

use morsepow::io::{prepare, IdealSpec};
use morsepow::pd1::{check_pd1, order_generators, Pd1Check};
use morsepow::OrderedGenerators;

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub spec: IdealSpec,
}

impl Instance {
    pub fn og(&self) -> OrderedGenerators {
        let p = prepare(&self.spec).expect("corpus specs are valid");
        order_generators(&p.generators, &p.vars).expect("corpus ideals have pd one")
    }

    pub fn q(&self) -> usize {
        self.spec.generators.len()
    }
}

fn instance(name: String, gens: Vec<String>, vars: Option<Vec<String>>) -> Instance {
    let mut spec = IdealSpec::new(gens, 1);
    spec.variables = vars;
    Instance { name, spec }
}

/// Complements of the path `{x_i, x_{i+1}}`, `i = 1..q`, over `x_1..x_{q+1}`.
/// For `q = 1` that complement would be the unit, so a single variable stands in.
pub fn path_complement(q: usize) -> Instance {
    if q == 1 {
        return instance("path q=1".into(), vec!["x1".into()], None);
    }
    let n = q + 1;
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let gens = (1..=q)
        .map(|i| {
            (1..=n)
                .filter(|&j| j != i && j != i + 1)
                .map(|j| format!("x{j}"))
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect();
    instance(format!("path q={q}"), gens, Some(vars))
}

/// `m_i = ∏_{j≠i} x_j`: the complement facets are isolated points.
pub fn point_complement(q: usize) -> Instance {
    let gens = (1..=q)
        .map(|i| {
            (1..=q)
                .filter(|&j| j != i)
                .map(|j| format!("y{j}"))
                .collect::<Vec<_>>()
                .join("*")
        })
        .collect();
    let vars = (1..=q).map(|i| format!("y{i}")).collect();
    instance(format!("points q={q}"), gens, Some(vars))
}

pub fn running_example() -> Instance {
    instance("running".into(), vec!["x*y".into(), "y*z".into(), "z*u".into()], None)
}

const LETTERS: [&str; 4] = ["a", "b", "c", "d"];

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(masks: &[u32], perms: &[Vec<usize>]) -> Vec<u32> {
    perms
        .iter()
        .map(|p| {
            let mut image: Vec<u32> = masks
                .iter()
                .map(|&m| (0..4).filter(|&b| m >> b & 1 == 1).map(|b| 1 << p[b]).sum())
                .collect();
            image.sort_unstable();
            image
        })
        .min()
        .expect("nonempty permutation set")
}

fn extend(current: &mut Vec<u32>, next: u32, out: &mut Vec<Vec<u32>>) {
    for m in next..16 {
        if current.iter().all(|&c| c & m != c && c & m != m) {
            current.push(m);
            out.push(current.clone());
            extend(current, m + 1, out);
            current.pop();
        }
    }
}

/// Every square-free minimal generating set on at most four variables with
/// pd at most one, one representative per relabeling of the variables.
pub fn pd1_antichains() -> Vec<Instance> {
    let perms = permutations(4);
    let mut all = Vec::new();
    extend(&mut Vec::new(), 1, &mut all);
    let classes: BTreeSet<Vec<u32>> = all.iter().map(|a| canonical(a, &perms)).collect();
    classes
        .into_iter()
        .filter_map(|masks| {
            let gens: Vec<String> = masks
                .iter()
                .map(|&m| {
                    (0..4)
                        .filter(|&b| m >> b & 1 == 1)
                        .map(|b| LETTERS[b])
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .collect();
            let inst = instance(format!("antichain {}", gens.join(",")), gens, None);
            let p = prepare(&inst.spec).ok()?;
            matches!(check_pd1(&p.generators, &p.vars), Ok(Pd1Check::Holds(_))).then_some(inst)
        })
        .collect()
}

/// The whole corpus, deduplicated by generator list.
pub fn corpus() -> Vec<Instance> {
    let mut out = vec![running_example()];
    out.extend((1..=5).map(path_complement));
    out.extend((2..=5).map(point_complement));
    out.extend(pd1_antichains());
    out
}

/// Every joint function accepted for `og`, the default one first.
pub fn all_taus(og: &OrderedGenerators) -> Vec<OrderedGenerators> {
    let q = og.q();
    let mut candidates: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..q {
        candidates = candidates
            .into_iter()
            .flat_map(|t| {
                (0..i).map(move |u| {
                    let mut t = t.clone();
                    t.push(u);
                    t
                })
            })
            .collect();
    }
    let mut out = vec![og.clone()];
    out.extend(
        candidates
            .iter()
            .filter(|t| t.as_slice() != og.tau())
            .filter_map(|t| og.with_tau(t).ok()),
    );
    out
}
