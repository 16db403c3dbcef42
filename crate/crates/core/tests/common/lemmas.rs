//! Exhaustive checks of the combinatorial facts behind the matching. Each
//! returns the number of cases examined or the first counterexample.

use std::collections::BTreeSet;

use morsepow::morse::enumerate_critical;
use morsepow::power::{dd, enumerate_nr};
use morsepow::taylor::{face_stats, match_arrow, Face};
use morsepow::{ExpVec, PowerTable};

pub type Outcome = Result<usize, String>;

/// Every `τ` on `q` indices with `τ(0) = 0` and `τ(j) < j`.
pub fn abstract_taus(q: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![0]];
    for j in 1..q {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..j).map(move |u| {
                    let mut t = t.clone();
                    t.push(u);
                    t
                })
            })
            .collect();
    }
    out
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|m| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// `π_k(a) ≺ π_j(a) ≺ a`, `𝔡(π_j a, π_k a) = k` and `𝔡(a, π_j a) = j` for `0 < j < k` in the support.
pub fn pi_order(q: usize, r: u32) -> Outcome {
    let mut n = 0;
    for tau in abstract_taus(q) {
        for a in enumerate_nr(q, r) {
            let supp = a.movable_support();
            for (x, &j) in supp.iter().enumerate() {
                let pj = a.pi(j, &tau).map_err(|e| e.to_string())?;
                if !(pj < a && dd(&a, &pj) == Some(j)) {
                    return Err(format!("tau {tau:?}, a {a}, j {j}"));
                }
                for &k in &supp[x + 1..] {
                    let pk = a.pi(k, &tau).map_err(|e| e.to_string())?;
                    if !(pk < pj && dd(&pj, &pk) == Some(k)) {
                        return Err(format!("tau {tau:?}, a {a}, j {j}, k {k}"));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// For `L ≠ L′ ⊆ D`, `b = π_{L′}(a)`, `c = π_L(a)` and `k = max(L △ L′)`:
/// `c ≺ b` iff `k ∈ L`, and then `𝔡(b, c) = k` and `π_k(b) ∈ σ̄(a, D)`.
pub fn still(q: usize, r: u32) -> Outcome {
    let mut n = 0;
    for tau in abstract_taus(q) {
        for a in enumerate_nr(q, r) {
            for d in subsets(&a.movable_support()) {
                let family = subsets(&d);
                let closure: BTreeSet<ExpVec> = family
                    .iter()
                    .map(|m| a.pi_set(m, &tau).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?;
                for l in &family {
                    for lp in &family {
                        if l == lp {
                            continue;
                        }
                        let b = a.pi_set(lp, &tau).map_err(|e| e.to_string())?;
                        let c = a.pi_set(l, &tau).map_err(|e| e.to_string())?;
                        let k = *l
                            .iter()
                            .chain(lp)
                            .filter(|x| l.contains(x) != lp.contains(x))
                            .max()
                            .expect("distinct subsets");
                        let fail = || format!("tau {tau:?}, a {a}, L {l:?}, L' {lp:?}");
                        if (c < b) != l.contains(&k) {
                            return Err(fail());
                        }
                        if c < b {
                            let moved = b.pi(k, &tau).map_err(|_| fail())?;
                            if dd(&b, &c) != Some(k) || !closure.contains(&moved) {
                                return Err(fail());
                            }
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

/// `lcm(m^a, m^b, π_k(m^a)) = lcm(m^a, m^b)` for `b ≺ a`, `k = 𝔡(a, b)`.
pub fn absorption(table: &PowerTable) -> Outcome {
    let mut n = 0;
    for a in 0..table.len() {
        for b in 0..a {
            let k = dd(table.vector(a), table.vector(b)).ok_or("distinct vectors agree")?;
            let p = table
                .pi_of(a, k)
                .ok_or_else(|| format!("π_{k} undefined at {}", table.vector(a)))?;
            let ab = table.monomial(a).lcm(table.monomial(b));
            if ab.lcm(table.monomial(p)) != ab {
                return Err(format!("a {}, b {}", table.vector(a), table.vector(b)));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn closure_faces(table: &PowerTable, base: usize, d: &[usize]) -> Vec<usize> {
    let a = table.vector(base);
    let mut out: Vec<usize> = subsets(d)
        .iter()
        .map(|m| {
            let v = a.pi_set(m, table.tau()).expect("subset of the support");
            table.index_of(&v).expect("moves stay in N_r")
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The critical `|D|`-vertex faces of `σ̄(a, D)` avoiding `a` are exactly
/// `σ(π_k a, D ∖ k)` for `k ∈ D`.
pub fn critical_k(table: &PowerTable) -> Outcome {
    let mut n = 0;
    let tau = table.tau();
    for cell in enumerate_critical(table).into_iter().flatten().filter(|c| !c.d.is_empty()) {
        let base = table.index_of(&cell.a).expect("cell vector lies in N_r");
        let others: Vec<usize> = closure_faces(table, base, &cell.d)
            .into_iter()
            .filter(|&v| v != base)
            .collect();
        let size = cell.d.len();
        let mut found: BTreeSet<Face> = BTreeSet::new();
        for face in subsets(&others).into_iter().filter(|s| s.len() == size) {
            if match_arrow(table, &face).map_err(|e| e.to_string())?.is_critical() {
                found.insert(face);
            }
            n += 1;
        }
        let predicted: BTreeSet<Face> = cell
            .d
            .iter()
            .map(|&k| {
                let moved = cell.a.pi(k, tau).expect("k in support");
                let rest: Vec<usize> = cell.d.iter().copied().filter(|&i| i != k).collect();
                let v = table.index_of(&moved).expect("moves stay in N_r");
                let mut face: Face = std::iter::once(v)
                    .chain(rest.iter().map(|&i| table.pi_of(v, i).expect("i in support")))
                    .collect();
                face.sort_unstable();
                face
            })
            .collect();
        if found != predicted {
            return Err(format!("a {}, D {:?}: {found:?} vs {predicted:?}", cell.a, cell.d));
        }
    }
    Ok(n)
}

/// On every covering pair `σ′ ⋖ σ`: `max σ′ ≼ max σ`, and equal maxima force `𝔡(σ′) ≤ 𝔡(σ)`.
pub fn partition_monotone(table: &PowerTable) -> Outcome {
    use rayon::prelude::*;
    let n = table.len();
    if n > 20 {
        return Err(format!("{n} vertices is beyond the exhaustive range"));
    }
    let stats: Vec<_> = (1u64..1 << n)
        .into_par_iter()
        .map(|m| face_stats(table, &mask_face(m)).expect("nonempty"))
        .collect();
    let at = |m: u64| &stats[(m - 1) as usize];
    (1u64..1 << n)
        .into_par_iter()
        .try_fold(
            || 0usize,
            |count, m| {
                let s = at(m);
                let mut c = count;
                for v in (0..n).filter(|&v| m >> v & 1 == 1) {
                    let lower = m & !(1 << v);
                    if lower == 0 {
                        continue;
                    }
                    let t = at(lower);
                    let x_ok = t.max <= s.max;
                    let y_ok = t.max != s.max || t.dd <= s.dd;
                    if !(x_ok && y_ok) {
                        return Err(format!("{:?} ⋖ {:?}", mask_face(lower), mask_face(m)));
                    }
                    c += 1;
                }
                Ok(c)
            },
        )
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

pub fn mask_face(m: u64) -> Face {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

pub fn face_mask(face: &[usize]) -> u64 {
    face.iter().fold(0, |m, &v| m | 1 << v)
}
