//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Built with `harness = false` so the lines always print.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use raagfp::catalog::connected_graphs;
use raagfp::coabelian::{enumerate_patterns, fg_coabelian, fpn_coabelian, CoabelianSpec};
use raagfp::flag_homology::{flag_complex, link_complex, reduced_homology, simplicial_chain_complex};
use raagfp::fpcheck::{
    analyze, build_complex_c, decomposition_check, fp_via_complex, fp_via_links, is_fg, max_fp, Character, FpLevel,
};
use raagfp::graph::families::{complete, cone, cycle, octahedron};
use raagfp::graph::{SimplicialGraph, VertexSet};
use raagfp::random;
use raagfp::verify::{gog_instance, report_fingerprint};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Complexes built along the way, checked for d∘d = 0 by criterion 4.
#[derive(Default)]
struct ComplexLedger {
    checked: usize,
    violations: Vec<String>,
}

impl ComplexLedger {
    fn absorb(&mut self, other: ComplexLedger) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    /// C for `chi`, the flag complex of `g`, and every link of a clique
    /// outside the support.
    fn record(&mut self, g: &SimplicialGraph, chi: &Character) {
        let p = chi.prime();
        let mut check = |what: &str, c: raagfp::ChainComplexFp| {
            self.checked += 1;
            if let Err(v) = c.check_d_squared() {
                self.violations.push(format!("{what}: {v:?}"));
            }
        };
        check("C", build_complex_c(g, chi).expect("valid character"));
        check("flag", simplicial_chain_complex(&flag_complex(g), p, true).expect("prime"));
        let support = chi.support();
        let outside: VertexSet = g.all_vertices().difference(&support).copied().collect();
        for s in g.enumerate_cliques_within(&outside, g.vertex_count()).into_iter().flatten() {
            let link = link_complex(g, &support, &s).expect("clique");
            check("link", simplicial_chain_complex(&link, p, true).expect("prime"));
        }
    }
}

fn ones(p: u64, n: usize) -> Character {
    Character::constant(p, n, 1).unwrap()
}

fn criterion_1(ledger: &mut ComplexLedger) -> Outcome {
    let mut bad = Vec::new();
    for n in 4..=8 {
        for p in [2, 3, 5] {
            let g = cycle(n);
            let chi = ones(p, n);
            let complex = fp_via_complex(&g, &chi, 2).unwrap();
            let ok = is_fg(&g, &chi).unwrap()
                && !complex.fp
                && complex.dims[&2] == 1
                && !fp_via_links(&g, &chi, 2).unwrap().fp
                && max_fp(&g, &chi).unwrap() == FpLevel::Finite(1);
            if !ok {
                bad.push(format!("C_{n} p={p}"));
            }
            ledger.record(&g, &chi);
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("15 cases, mismatches: {bad:?}") }
}

fn criterion_2(ledger: &mut ComplexLedger) -> Outcome {
    let graphs = connected_graphs(6);
    let results: Vec<(usize, Vec<String>, ComplexLedger)> = graphs
        .par_iter()
        .map(|g| {
            let n = g.vertex_count();
            let mut local = ComplexLedger::default();
            let mut bad = Vec::new();
            for mask in 1u32..1 << n {
                let support: VertexSet = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                for p in [2, 3] {
                    let chi = Character::indicator(p, n, &support).unwrap();
                    let fg = is_fg(g, &chi).unwrap();
                    let complex = fp_via_complex(g, &chi, 1).unwrap().fp;
                    let links = fp_via_links(g, &chi, 1).unwrap().fp;
                    if fg != complex || fg != links {
                        bad.push(format!("{:?} support {support:?} p={p}", g.edges()));
                    }
                    local.record(g, &chi);
                }
            }
            ((1usize << n) - 1, bad, local)
        })
        .collect();
    let mut instances = 0;
    let mut bad = Vec::new();
    for (count, b, local) in results {
        instances += count;
        bad.extend(b);
        ledger.absorb(local);
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} graphs, {instances} supports x p in {{2,3}}, {} mismatches {:?}", graphs.len(), bad.len(), bad.first()),
    }
}

fn criterion_3(ledger: &mut ComplexLedger) -> Outcome {
    let results: Vec<(Vec<String>, ComplexLedger)> = (0..500u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (3 << 32) ^ i);
            let n = rng.gen_range(1..=8);
            let density = rng.gen_range(0.2..=0.8);
            let g = random::graph(&mut rng, n, density);
            let mut local = ComplexLedger::default();
            let mut bad = Vec::new();
            for _ in 0..3 {
                let values: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=4) }).collect();
                for p in [2, 3] {
                    let chi = Character::new(p, values.clone()).unwrap();
                    let d = decomposition_check(&g, &chi).unwrap();
                    if !d.pass {
                        bad.push(format!("{:?} chi={values:?} p={p}", g.edges()));
                    }
                    local.record(&g, &chi);
                }
            }
            (bad, local)
        })
        .collect();
    let mut bad = Vec::new();
    for (b, local) in results {
        bad.extend(b);
        ledger.absorb(local);
    }
    Outcome { pass: bad.is_empty(), detail: format!("3000 identities, {} failures {:?}", bad.len(), bad.first()) }
}

fn criterion_4(ledger: &ComplexLedger) -> Outcome {
    Outcome {
        pass: ledger.violations.is_empty() && ledger.checked > 0,
        detail: format!("{} complexes, {} violations {:?}", ledger.checked, ledger.violations.len(), ledger.violations.first()),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (5 << 32));
    let mut bad = Vec::new();
    let mut rescaled = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let density = rng.gen_range(0.2..=0.8);
        let g = random::graph(&mut rng, n, density);
        let p = [2, 3, 5][rng.gen_range(0..3)];
        let chi = random::indicator(&mut rng, p, n);
        let other = random::reweight(&mut rng, &chi, 9);
        let a = analyze(&g, &chi, n).unwrap();
        let b = analyze(&g, &other, n).unwrap();
        rescaled += usize::from(b.normalization.rescaled);
        if report_fingerprint(&a) != report_fingerprint(&b) {
            bad.push(format!("{:?} {:?} vs {:?}", g.edges(), chi.values(), other.values()));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("100 instances ({rescaled} needed rescaling), {} mismatches {:?}", bad.len(), bad.first()),
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (6 << 32));
    let mut bad = Vec::new();

    // rank-one matrices against the single-character analysis
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(1..=6);
        let density = rng.gen_range(0.2..=0.8);
        let g = random::graph(&mut rng, n, density);
        let p = [2, 3][rng.gen_range(0..2)];
        let m = random::matrix(&mut rng, p, 1, n, 3);
        if m.rows[0].iter().all(|&x| x == 0) {
            continue;
        }
        done += 1;
        let chi = Character::new(p, m.rows[0].clone()).unwrap();
        if fg_coabelian(&g, &m).unwrap().fg != is_fg(&g, &chi).unwrap() {
            bad.push(format!("fg {:?} {:?}", g.edges(), m.rows));
        }
        for k in 1..=g.clique_number() {
            if fpn_coabelian(&g, &m, k).unwrap().fp != fp_via_complex(&g, &chi, k).unwrap().fp {
                bad.push(format!("FP_{k} {:?} {:?}", g.edges(), m.rows));
            }
        }
    }

    let pair = SimplicialGraph::new(vec!["a", "b"], &[]).unwrap();
    let id = fg_coabelian(&pair, &CoabelianSpec::identity(2, 2).unwrap()).unwrap();
    let identity_ok = !id.fg && id.witness.as_ref().is_some_and(|w| w.zero_set.is_empty());
    if !identity_ok {
        bad.push(format!("identity on edgeless pair: {id:?}"));
    }

    let mut sampled_patterns = 0;
    for _ in 0..50 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=7);
        let m = random::matrix(&mut rng, 2, k, n, 2);
        let Ok(patterns) = enumerate_patterns(&m) else {
            if m.rank() == 0 {
                continue;
            }
            bad.push(format!("enumeration failed on {:?}", m.rows));
            continue;
        };
        if !patterns.iter().all(|z| z.verify(&m)) {
            bad.push(format!("bad certificate on {:?}", m.rows));
        }
        let known: BTreeSet<VertexSet> = patterns.iter().map(|z| z.zero_set.clone()).collect();
        let mut seen = BTreeSet::new();
        for _ in 0..10_000 {
            let lambda: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
            let values: Vec<i64> =
                (0..n).map(|v| (0..k).map(|r| lambda[r] * m.rows[r][v]).sum()).collect();
            if values.iter().all(|&x| x == 0) {
                continue;
            }
            seen.insert(values.iter().enumerate().filter(|(_, &x)| x == 0).map(|(v, _)| v).collect::<VertexSet>());
        }
        sampled_patterns += seen.len();
        if let Some(missing) = seen.difference(&known).next() {
            bad.push(format!("sampled zero set {missing:?} not enumerated for {:?}", m.rows));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "100 rank-one instances, identity pair ok={identity_ok}, {sampled_patterns} sampled patterns covered, {} failures {:?}",
            bad.len(),
            bad.first()
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (7 << 32));
    let mut bad = Vec::new();
    let mut bounded = 0;
    for _ in 0..1000 {
        let x = random::graph_of_groups(&mut rng, 6, 0.8);
        if x.is_reduced() && !x.is_dihedral_type() && x.free_rank(x.lcm_vertex_orders()).unwrap_or(0) >= 2 {
            bounded += 1;
        }
        if let Err(e) = gog_instance(&x) {
            bad.push(e);
        }
    }
    Outcome {
        pass: bad.is_empty() && bounded > 0,
        detail: format!("1000 inputs, {bounded} reduced non-dihedral with rank >= 2, {} failures {:?}", bad.len(), bad.first()),
    }
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for p in [2, 3, 5] {
        let h = reduced_homology(&flag_complex(&octahedron()), p).unwrap();
        if h.nonzero().into_iter().collect::<Vec<_>>() != vec![(2, 1)] {
            bad.push(format!("octahedron p={p}: {:?}", h.nonzero()));
        }
        for n in 1..=7 {
            if !reduced_homology(&flag_complex(&complete(n)), p).unwrap().is_zero() {
                bad.push(format!("K_{n} p={p}"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (8 << 32) ^ p);
        let bases = [cycle(5), octahedron(), random::graph(&mut rng, 6, 0.4), random::graph(&mut rng, 7, 0.3)];
        for base in &bases {
            if !reduced_homology(&flag_complex(&cone(base)), p).unwrap().is_zero() {
                bad.push(format!("cone over {:?} p={p}", base.edges()));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("octahedron, K_1..K_7, 4 cones, p in {{2,3,5}}; failures {bad:?}") }
}

fn report(id: usize, title: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let pass = outcome.pass && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    println!(
        "[{}] criterion {id}: {title} :: {} :: {:.2?}{budget}",
        if pass { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed
    );
    pass
}

fn main() -> ExitCode {
    let mut ledger = ComplexLedger::default();
    let secs = Duration::from_secs;
    let results = [
        report(1, "cycles are fg but not FP_2", Some(secs(1)), || criterion_1(&mut ledger)),
        report(2, "fg = FP_1 by both routes, connected graphs <= 6 vertices", Some(secs(60)), || criterion_2(&mut ledger)),
        report(3, "decomposition identity on random graphs", Some(secs(120)), || criterion_3(&mut ledger)),
        report(4, "d∘d = 0 for every complex built above", None, || criterion_4(&ledger)),
        report(5, "zero-pattern invariance", None, criterion_5),
        report(6, "coabelian aggregation", None, criterion_6),
        report(7, "graph-of-groups suite", Some(secs(10)), criterion_7),
        report(8, "topology sanity", None, criterion_8),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
