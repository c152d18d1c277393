//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p sgx-core --test acceptance`. Exits nonzero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sgx_core::forbidden::{book_count, count_unbalanced_triangles, friendship_count};
use sgx_core::iso::is_switching_isomorphic_with_limit;
use sgx_core::search::{enumerate_extremal_with, enumerate_naive, SearchReport};
use sgx_core::spectra::char_poly_exact;
use sgx_core::verify::{
    c3_free_radius_bound, verify_c3_bound, verify_extremal_top, verify_gamma_index, verify_identities,
    verify_index_crossing, verify_second_maximum, verify_u1_gap, VerifyReport,
};
use sgx_core::{Execution, ForbiddenSpec, Sign, SignedGraph, SwitchSet};

const SEED: u64 = 42;
const RESTARTS: usize = 1000;
const MARGIN: f64 = 1e-6;
const INDEX_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn report_outcome(r: &VerifyReport) -> Outcome {
    match r.failures().next() {
        None => Ok(r.summary.clone()),
        Some(f) => Err(format!("n={} t={:?} {}: {} {}", f.n, f.t, f.check, f.value, f.detail)),
    }
}

fn ac1() -> Outcome {
    let r = verify_identities(9, 20).map_err(|e| e.to_string())?;
    report_outcome(&r)
}

fn ac2() -> Outcome {
    let r = verify_gamma_index(4, 40).map_err(|e| e.to_string())?;
    report_outcome(&r)
}

fn ac3() -> Outcome {
    let r = verify_index_crossing(9, 40).map_err(|e| e.to_string())?;
    report_outcome(&r)?;
    let worst = r
        .rows
        .iter()
        .map(|x| {
            let gamma_side = x.t.unwrap() <= x.n / 2;
            if gamma_side {
                -x.value
            } else {
                x.value
            }
        })
        .fold(f64::INFINITY, f64::min);
    if worst > MARGIN {
        Ok(format!("min margin {worst:.3e} > {MARGIN:e}"))
    } else {
        Err(format!("min margin {worst:.3e} <= {MARGIN:e}"))
    }
}

fn ac4() -> Outcome {
    let r = verify_u1_gap(9, 40).map_err(|e| e.to_string())?;
    report_outcome(&r)?;
    let worst = r.rows.iter().filter(|x| x.check.starts_with("index")).map(|x| x.value).fold(f64::INFINITY, f64::min);
    if worst > MARGIN {
        Ok(format!("min margin {worst:.3e} > {MARGIN:e}"))
    } else {
        Err(format!("min margin {worst:.3e} <= {MARGIN:e}"))
    }
}

fn extremal_top_at(n: usize) -> Outcome {
    let r = verify_extremal_top(n, n, Execution::default()).map_err(|e| e.to_string())?;
    report_outcome(&r)?;
    let worst = r.rows.iter().map(|x| x.value.abs()).fold(0.0, f64::max);
    let tags: Vec<String> = r
        .rows
        .iter()
        .map(|x| format!("t={}:{}", x.t.unwrap(), x.detail.split_whitespace().nth(1).unwrap_or("?")))
        .collect();
    Ok(format!("{}; max |diff| {worst:.1e}", tags.join(" ")))
}

fn ac5() -> Outcome {
    extremal_top_at(6)
}

fn ac6() -> Outcome {
    extremal_top_at(7)
}

/// Reports agree when each class in one is switching isomorphic to a class in
/// the other with the same index and multiplicity.
fn same_classes(a: &SearchReport, b: &SearchReport) -> Result<(), String> {
    if a.entries.len() != b.entries.len() {
        return Err(format!("{} vs {} classes", a.entries.len(), b.entries.len()));
    }
    let mut used = vec![false; b.entries.len()];
    for e in &a.entries {
        let hit = b.entries.iter().enumerate().position(|(j, f)| {
            !used[j]
                && (e.index - f.index).abs() <= ORACLE_TOL
                && is_switching_isomorphic_with_limit(&e.representative, &f.representative, 8).unwrap()
        });
        match hit {
            Some(j) if b.entries[j].multiplicity == e.multiplicity => used[j] = true,
            Some(j) => {
                return Err(format!(
                    "rank {}: multiplicity {} vs {}",
                    e.rank, e.multiplicity, b.entries[j].multiplicity
                ))
            }
            None => return Err(format!("rank {} (index {:.12}) has no counterpart", e.rank, e.index)),
        }
    }
    Ok(())
}

fn ac7() -> Outcome {
    let mut specs: Vec<ForbiddenSpec> = (1..=5).map(ForbiddenSpec::tc3).collect();
    specs.extend([ForbiddenSpec::book(2), ForbiddenSpec::book(3), ForbiddenSpec::friendship(2), ForbiddenSpec::c3()]);
    let mut cases = 0;
    for n in 3..=5 {
        for spec in &specs {
            let fast = enumerate_extremal_with(n, spec, 5, Execution::default()).map_err(|e| e.to_string())?;
            let slow = enumerate_naive(n, spec, 5).map_err(|e| e.to_string())?;
            same_classes(&fast, &slow).map_err(|e| format!("n={n} {spec}: {e}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, spec) cases, top-5 classes, indices within {ORACLE_TOL:e}, multiplicities equal"))
}

fn ac8() -> Outcome {
    let r = verify_c3_bound(6, 6).map_err(|e| e.to_string())?;
    report_outcome(&r)?;
    Ok(format!("bound {:.9} + {INDEX_TOL:e}; {}", c3_free_radius_bound(6), r.rows[0].detail))
}

fn ac9() -> Outcome {
    let mut parts = Vec::new();
    for t in 3..=8 {
        let (v, _) = verify_second_maximum(9, t, SEED, RESTARTS, Execution::default()).map_err(|e| e.to_string())?;
        report_outcome(&v).map_err(|e| format!("t={t}: {e}"))?;
        let best = v.rows[0].detail.split_whitespace().nth(1).unwrap_or("?").to_string();
        parts.push(format!("t={t}:{best}"));
    }
    Ok(format!("seed {SEED}, {RESTARTS} restarts each; {} (evidence, not proof)", parts.join(" ")))
}

fn random_graph(rng: &mut ChaCha8Rng) -> SignedGraph {
    let n = rng.random_range(3..=10);
    let p: f64 = rng.random_range(0.2..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v, if rng.random_bool(0.4) { Sign::Negative } else { Sign::Positive }));
            }
        }
    }
    SignedGraph::new(n, &edges).unwrap()
}

/// One cycle per non-tree edge of a BFS forest.
fn fundamental_cycles(g: &SignedGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for (u, v, _) in g.edges() {
        if parent[v] == Some(u) || parent[u] == Some(v) {
            continue;
        }
        let (mut a, mut b) = (u, v);
        let (mut left, mut right) = (vec![a], vec![b]);
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a].unwrap();
                left.push(a);
            } else {
                b = parent[b].unwrap();
                right.push(b);
            }
        }
        right.pop();
        right.reverse();
        left.extend(right);
        cycles.push(left);
    }
    cycles
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cycles_checked = 0;
    for case in 0..1000 {
        let g = random_graph(&mut rng);
        let set: Vec<usize> = (0..g.n()).filter(|_| rng.random_bool(0.5)).collect();
        let h = g.switch(&SwitchSet::new(set)).unwrap();
        let fail = |what: &str| Err(format!("case {case}: {what} changed"));
        if char_poly_exact(&g.adjacency()).unwrap() != char_poly_exact(&h.adjacency()).unwrap() {
            return fail("characteristic polynomial");
        }
        for c in fundamental_cycles(&g) {
            cycles_checked += 1;
            if g.cycle_sign(&c).unwrap() != h.cycle_sign(&c).unwrap() {
                return fail("cycle sign");
            }
        }
        if count_unbalanced_triangles(&g) != count_unbalanced_triangles(&h) {
            return fail("unbalanced triangle count");
        }
        if book_count(&g).count != book_count(&h).count {
            return fail("book count");
        }
        if friendship_count(&g).count != friendship_count(&h).count {
            return fail("friendship count");
        }
    }
    Ok(format!("1000 pairs, {cycles_checked} cycles, exact equality"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "exact identities, 9 <= n <= 20, zero tolerance", Duration::from_secs(1), ac1),
        ("AC2", "gamma index vs cubic root (1e-8) and n-2 <= index < n-1, n <= 40", Duration::from_secs(10), ac2),
        ("AC3", "sigma/gamma index crossing at floor(n/2), 9 <= n <= 40, margin > 1e-6", Duration::from_secs(30), ac3),
        ("AC4", "index(gamma(n,n-2)) - index(u1) > 1e-6, 9 <= n <= 40", Duration::from_secs(5), ac4),
        ("AC5", "exhaustive n=6 top class, index within 1e-9", Duration::from_secs(600), ac5),
        ("AC6", "exhaustive n=7 top class, index within 1e-9", Duration::from_secs(7200), ac6),
        ("AC7", "switching-reduced vs naive enumeration, n <= 5, top 5, 1e-10", Duration::from_secs(120), ac7),
        ("AC8", "C3-free radius bound at n=6, tolerance 1e-9", Duration::from_secs(600), ac8),
        ("AC9", "n=9 second maximum by local search, winner excluded", Duration::from_secs(1800), ac9),
        ("AC10", "switching invariance over 1000 random pairs, n <= 10", Duration::from_secs(60), ac10),
    ];

    let mut failed = 0;
    for (id, what, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > budget => Err(format!("over budget ({took:.2?} > {budget:?}); {msg}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("{id} PASS [{took:.2?}] {what}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{id} FAIL [{took:.2?}] {what}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
