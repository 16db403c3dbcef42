//! One PASS/FAIL line per acceptance criterion. Limits are wall-clock time
//! on an optimized test build.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::lemmas::{self, face_mask};
use common::{all_taus, corpus, path_complement, running_example, Instance};
use morsepow::field::FieldChoice;
use morsepow::monomial::Monomial;
use morsepow::morse::{
    closure_facets, enumerate_critical, gradient_path_explicit, gradient_paths_from, CriticalCell,
};
use morsepow::power::binomial;
use morsepow::resolution::{
    betti, betti_closed_form, build_resolution_on, dstab, pd_computed, pd_formula, pd_sequence,
    verify_d2, verify_minimality, verify_strand_acyclicity, ChainComplex,
};
use morsepow::taylor::{enumerate_matching, face_lcm, Face, MatchArrow};
use morsepow::{OrderedGenerators, PowerTable};

type Check = Result<String, String>;

const PATH_CAP: usize = 1_000_000;

fn criterion(n: u32, title: &str, limit: Duration, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = check();
    let took = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) if took <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the time limit")),
        Err(e) => (false, e),
    };
    println!(
        "{} [{n}] {title}: {detail} ({:.3}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(og: &OrderedGenerators, r: u32) -> Result<PowerTable, String> {
    PowerTable::new(og, r).map_err(|e| e.to_string())
}

fn resolve(t: &PowerTable) -> Result<ChainComplex, String> {
    build_resolution_on(t).map_err(|e| e.to_string())
}

fn label(inst: &Instance, og: &OrderedGenerators, r: u32) -> String {
    format!("{} tau {:?} r {r}", inst.name, og.tau())
}

fn mono(og: &OrderedGenerators, text: &str) -> Monomial {
    let mut vars = og.vars().clone();
    Monomial::parse(text, &mut vars, false).expect("known variables")
}

/// Every `(instance, τ)` pair of the corpus with `q ≤ max_q`.
fn desk(max_q: usize) -> Vec<(Instance, OrderedGenerators)> {
    corpus()
        .into_iter()
        .filter(|i| i.q() <= max_q)
        .flat_map(|i| {
            let og = i.og();
            all_taus(&og).into_iter().map(move |t| (i.clone(), t))
        })
        .collect()
}

/// `β_i = Σ_s C(q−1, s)·C(r, s)·C(s, i)`: the vectors with `s` movable
/// support entries number `C(q−1, s)·C(r, s)`.
fn betti_oracle(q: usize, r: u32) -> Vec<u128> {
    let top = (q - 1).min(r as usize);
    (0..=top)
        .map(|i| {
            (i..=top)
                .map(|s| {
                    binomial(q as u64 - 1, s as u64) * binomial(r as u64, s as u64) * binomial(s as u64, i as u64)
                })
                .sum()
        })
        .collect()
}

fn running_end_to_end() -> Check {
    let og = running_example().og();
    let t = table(&og, 2)?;
    let f: Vec<usize> = enumerate_critical(&t).iter().map(Vec::len).collect();
    ensure(f == [6, 6, 1], || format!("f-vector {f:?}"))?;
    let c = resolve(&t)?;
    let b = betti(&c).total;
    ensure(b == [6, 6, 1], || format!("betti {b:?}"))?;
    ensure(pd_computed(&c) == 2 && pd_formula(3, 2) == 2, || format!("pd {}", pd_computed(&c)))?;
    Ok("f-vector (6,6,1), betti (6,6,1), pd 2".into())
}

fn tree_at_r1() -> Check {
    let og = running_example().og();
    let t = table(&og, 1)?;
    let c = resolve(&t)?;
    ensure(c.ranks() == [3, 2], || format!("ranks {:?}", c.ranks()))?;
    let labels: BTreeSet<Monomial> = c.bases[1].iter().map(|b| b.lcm.clone()).collect();
    let expected: BTreeSet<Monomial> = [mono(&og, "x*y*z"), mono(&og, "y*z*u")].into();
    ensure(labels == expected, || "edge labels differ from xyz, yzu".into())?;
    ensure(verify_minimality(&c), || "not minimal".into())?;
    for ch in [0, 2] {
        let field = FieldChoice::from_char(ch).map_err(|e| e.to_string())?;
        ensure(verify_strand_acyclicity(&c, field).map_err(|e| e.to_string())?, || {
            format!("strand fails in char {ch}")
        })?;
    }
    Ok("ranks (3,2), labels xyz and yzu, minimal, acyclic in char 0 and 2".into())
}

/// Cycle search in the face digraph, all edges down except matched pairs.
fn has_cycle(n: usize, partner: &[Option<u64>]) -> bool {
    let size = 1usize << n;
    let mut color = vec![0u8; size];
    let children = |m: u64| -> Vec<u64> {
        let mut out: Vec<u64> = (0..n)
            .filter(|&v| m >> v & 1 == 1)
            .map(|v| m & !(1 << v))
            .filter(|&l| l != 0 && partner[l as usize] != Some(m))
            .collect();
        if let Some(p) = partner[m as usize] {
            if p & m == m && p != m {
                out.push(p);
            }
        }
        out
    };
    for root in 1..size as u64 {
        if color[root as usize] != 0 {
            continue;
        }
        let mut stack = vec![(root, children(root), 0usize)];
        color[root as usize] = 1;
        while let Some((node, kids, pos)) = stack.last_mut() {
            if *pos == kids.len() {
                color[*node as usize] = 2;
                stack.pop();
                continue;
            }
            let next = kids[*pos];
            *pos += 1;
            match color[next as usize] {
                1 => return true,
                0 => {
                    color[next as usize] = 1;
                    let k = children(next);
                    stack.push((next, k, 0));
                }
                _ => {}
            }
        }
    }
    false
}

fn matching_instance(t: &PowerTable) -> Result<(), String> {
    let n = t.len();
    let classified = enumerate_matching(t, 1 << 16).map_err(|e| e.to_string())?;
    let mut partner: Vec<Option<u64>> = vec![None; 1 << n];
    let mut critical: BTreeSet<Face> = BTreeSet::new();
    for (face, arrow) in &classified {
        let m = face_mask(face);
        match arrow {
            MatchArrow::Critical => {
                critical.insert(face.clone());
            }
            MatchArrow::MatchedUp(p) | MatchArrow::MatchedDown(p) => {
                let pm = face_mask(p);
                ensure((pm ^ m).count_ones() == 1, || format!("{face:?} and {p:?} do not cover"))?;
                partner[m as usize] = Some(pm);
            }
        }
    }
    for (m, p) in partner.iter().enumerate() {
        if let Some(p) = *p {
            ensure(partner[p as usize] == Some(m as u64), || format!("pairing of mask {m} is not symmetric"))?;
            if p as usize > m {
                let (lo, hi) = (lemmas::mask_face(m as u64), lemmas::mask_face(p));
                ensure(face_lcm(t, &lo).ok() == face_lcm(t, &hi).ok(), || format!("{lo:?} and {hi:?} differ in lcm"))?;
            }
        }
    }
    ensure(!has_cycle(n, &partner), || "matching has a cycle".into())?;
    let closed: BTreeSet<Face> = enumerate_critical(t).iter().flatten().map(|c| c.as_face(t)).collect();
    ensure(critical == closed, || "critical faces differ from σ(a, D)".into())
}

fn matching_bruteforce() -> Check {
    let limit = Duration::from_secs(30);
    let mut count = 0;
    let mut slowest = Duration::ZERO;
    for (inst, og) in desk(usize::MAX) {
        for r in 1..=6 {
            let t = table(&og, r)?;
            if t.len() > 16 {
                break;
            }
            let start = Instant::now();
            matching_instance(&t).map_err(|e| format!("{}: {e}", label(&inst, &og, r)))?;
            let took = start.elapsed();
            ensure(took <= limit, || format!("{} took {took:?}", label(&inst, &og, r)))?;
            slowest = slowest.max(took);
            count += 1;
        }
    }
    Ok(format!("{count} instances, slowest {:.3}s", slowest.as_secs_f64()))
}

fn cell_order(t: &PowerTable) -> Result<usize, String> {
    let mut paths = 0;
    for c in enumerate_critical(t).into_iter().flatten().filter(|c| c.dim() >= 1) {
        let face = c.as_face(t);
        let mut reached: BTreeSet<Face> = BTreeSet::new();
        for &v in &face {
            let facet: Face = face.iter().copied().filter(|&w| w != v).collect();
            let found = gradient_paths_from(t, &facet, None, PATH_CAP).map_err(|e| e.to_string())?;
            paths += found.len();
            reached.extend(found.into_iter().map(|p| p.end().clone()));
        }
        let predicted: BTreeSet<Face> = closure_facets(&c, t.tau()).iter().map(|x| x.as_face(t)).collect();
        ensure(reached == predicted, || format!("cell {} {:?}: reached {reached:?}", c.a, c.d))?;
        if c.dim() >= 2 {
            for &k in &c.d {
                let explicit = gradient_path_explicit(t, &c, k).map_err(|e| e.to_string())?;
                let target = CriticalCell::new(c.a.pi(k, t.tau()).map_err(|e| e.to_string())?, {
                    c.d.iter().copied().filter(|&i| i != k).collect()
                })
                .map_err(|e| e.to_string())?;
                ensure(explicit.end() == &target.as_face(t), || format!("explicit path to the wrong cell for k {k}"))?;
                let all = gradient_paths_from(t, explicit.start(), Some(explicit.end()), PATH_CAP)
                    .map_err(|e| e.to_string())?;
                ensure(all.contains(&explicit), || format!("explicit path for {} {:?} k {k} missing", c.a, c.d))?;
            }
        }
    }
    Ok(paths)
}

fn cell_order_paths() -> Check {
    let mut paths = 0;
    for inst in [running_example(), path_complement(4)] {
        let og = inst.og();
        paths += cell_order(&table(&og, 2)?).map_err(|e| format!("{}: {e}", inst.name))?;
    }
    Ok(format!("{paths} gradient paths on the running example and the q=4 path, r=2"))
}

fn resolution_validity() -> Check {
    let mut count = 0;
    for (inst, og) in desk(4) {
        for r in 1..=3 {
            let t = table(&og, r)?;
            let c = resolve(&t)?;
            let name = label(&inst, &og, r);
            ensure(verify_d2(&c), || format!("{name}: ∂² ≠ 0"))?;
            for ch in [0, 2] {
                let field = FieldChoice::from_char(ch).map_err(|e| e.to_string())?;
                let ok = verify_strand_acyclicity(&c, field).map_err(|e| format!("{name}: {e}"))?;
                ensure(ok, || format!("{name}: strand not acyclic in char {ch}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} instances with q ≤ 4, r ≤ 3"))
}

fn minimality() -> Check {
    let mut count = 0;
    for (inst, og) in desk(4) {
        for r in 1..=3 {
            let c = resolve(&table(&og, r)?)?;
            ensure(verify_minimality(&c), || format!("{}: not minimal", label(&inst, &og, r)))?;
            count += 1;
        }
    }
    let c = resolve(&table(&running_example().og(), 2)?)?;
    let mut controls = 0;
    for deg in 1..c.maps.len() {
        for k in 0..c.maps[deg].len() {
            ensure(!verify_minimality(&c.with_unit_shift(deg, k)), || {
                format!("unit shift at degree {deg} entry {k} accepted")
            })?;
            controls += 1;
        }
    }
    Ok(format!("{count} minimal complexes, {controls} unit-shift controls rejected"))
}

fn pd_formulas() -> Check {
    let mut cases = 0;
    for q in 1..=5 {
        let og = path_complement(q).og();
        let mut seq = Vec::new();
        for r in 1..=6u32 {
            let pd = pd_computed(&resolve(&table(&og, r)?)?);
            ensure(pd == (r as usize).min(q - 1) && pd == pd_formula(q, r), || {
                format!("q {q} r {r}: pd {pd}")
            })?;
            seq.push(pd);
            cases += 1;
        }
        let settles = (0..seq.len()).find(|&i| seq[i..].iter().all(|&p| p == seq[i])).unwrap() + 1;
        ensure(dstab(q) == q - 1, || format!("dstab({q}) = {}", dstab(q)))?;
        ensure(settles == (q - 1).max(1), || format!("q {q}: sequence {seq:?} settles at {settles}"))?;
        let formula = pd_sequence(q);
        ensure(seq[..formula.len()] == formula[..], || format!("q {q}: pd_sequence {formula:?} vs {seq:?}"))?;
    }
    Ok(format!("{cases} (q, r) pairs, dstab = q - 1"))
}

fn betti_closed_forms() -> Check {
    let mut jobs: Vec<(Instance, OrderedGenerators, u32)> = Vec::new();
    for (inst, og) in desk(usize::MAX) {
        for r in 1..=3 {
            jobs.push((inst.clone(), og.clone(), r));
        }
    }
    for q in 1..=5 {
        for r in 4..=6 {
            jobs.push((path_complement(q), path_complement(q).og(), r));
        }
    }
    for (inst, og, r) in &jobs {
        let t = table(og, *r)?;
        let b = betti(&resolve(&t)?);
        let name = label(inst, og, *r);
        let computed: Vec<u128> = b.total.iter().map(|&x| x as u128).collect();
        let oracle = betti_oracle(og.q(), *r);
        ensure(computed == oracle, || format!("{name}: {computed:?} vs oracle {oracle:?}"))?;
        ensure(betti_closed_form(&t) == oracle, || format!("{name}: closed form differs"))?;
        ensure(b.euler_characteristic() == 1, || format!("{name}: Euler characteristic {}", b.euler_characteristic()))?;
    }
    Ok(format!("{} instances", jobs.len()))
}

fn lemma_suites() -> Check {
    let mut cases = 0;
    for q in 1..=4 {
        for r in 1..=3 {
            cases += lemmas::pi_order(q, r).map_err(|e| format!("π order: {e}"))?;
            cases += lemmas::still(q, r).map_err(|e| format!("stillness: {e}"))?;
        }
    }
    for (inst, og) in desk(4) {
        for r in 1..=3 {
            let t = table(&og, r)?;
            let name = label(&inst, &og, r);
            cases += lemmas::absorption(&t).map_err(|e| format!("{name} absorption: {e}"))?;
            cases += lemmas::critical_k(&t).map_err(|e| format!("{name} critical-k: {e}"))?;
            cases += lemmas::partition_monotone(&t).map_err(|e| format!("{name} partition: {e}"))?;
        }
    }
    Ok(format!("{cases} cases, no counterexample"))
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "running example end to end", secs(1), running_end_to_end),
        criterion(2, "r = 1 recovers the tree", secs(1), tree_at_r1),
        criterion(3, "brute-force matching checks, |N_r| ≤ 16, 30s per instance", secs(600), matching_bruteforce),
        criterion(4, "cell order from gradient paths", secs(60), cell_order_paths),
        criterion(5, "∂² = 0 and strand acyclicity", secs(120), resolution_validity),
        criterion(6, "minimality and unit-shift control", secs(120), minimality),
        criterion(7, "pd and dstab formulas", secs(120), pd_formulas),
        criterion(8, "closed-form Betti numbers", secs(120), betti_closed_forms),
        criterion(9, "exhaustive lemma suites", secs(300), lemma_suites),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
