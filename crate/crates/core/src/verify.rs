//! Randomized cross-checks of every module's invariants.
//!
//! Each suite draws `trials` instances from a per-instance seed derived from
//! the master seed, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::flag_homology::{flag_complex, simplicial_chain_complex};
use crate::fpcheck::{analyze, build_complex_c, decomposition_check, fp_via_complex, fp_via_links, is_fg, FpnReport};
use crate::gog::GraphOfFiniteGroups;
use crate::graph::SimplicialGraph;
use crate::random;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub max_vertices: usize,
    /// Negative control: corrupt one boundary entry in the d∘d suite.
    pub inject_boundary_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0x5eed, trials: 200, max_vertices: 7, inject_boundary_fault: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// Smallest failing instance, if any.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

/// Outcome of one instance: `Err((size, description))` on failure.
type Trial = std::result::Result<(), (usize, String)>;

fn instance_rng(seed: u64, suite: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (i as u64).wrapping_mul(0xd6e8_feb8_6659_fd93))
}

fn describe(g: &SimplicialGraph, extra: impl std::fmt::Display) -> String {
    format!("graph={} {extra}", serde_json::to_string(&g.to_document()).expect("serializable"))
}

fn random_instance(rng: &mut ChaCha8Rng, max_vertices: usize) -> (SimplicialGraph, u64) {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let density = rng.gen_range(0.2..=0.8);
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    (random::graph(rng, n, density), p)
}

fn route_agreement(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Trial {
    let (g, p) = random_instance(rng, opts.max_vertices);
    let chi = random::indicator(rng, p, g.vertex_count());
    let fail = |msg: String| Err((g.vertex_count(), describe(&g, format!("chi={:?} p={p}: {msg}", chi.values()))));
    let fg = is_fg(&g, &chi).map_err(|e| (g.vertex_count(), e.to_string()))?;
    for n in 1..=g.vertex_count() {
        let links = fp_via_links(&g, &chi, n).map_err(|e| (g.vertex_count(), e.to_string()))?.fp;
        let complex = fp_via_complex(&g, &chi, n).map_err(|e| (g.vertex_count(), e.to_string()))?.fp;
        if links != complex {
            return fail(format!("n={n}: links={links} complex={complex}"));
        }
        if n == 1 && complex != fg {
            return fail(format!("fg={fg} but FP_1 via complex={complex}"));
        }
    }
    Ok(())
}

fn decomposition(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Trial {
    let (g, p) = random_instance(rng, opts.max_vertices);
    let values = (0..g.vertex_count()).map(|_| i64::from(rng.gen_bool(0.5))).collect();
    let chi = crate::fpcheck::Character::new(p, values).expect("small prime");
    let d = decomposition_check(&g, &chi).map_err(|e| (g.vertex_count(), e.to_string()))?;
    if d.pass {
        Ok(())
    } else {
        Err((g.vertex_count(), describe(&g, format!("chi={:?} p={p}: {:?}", chi.values(), d.degrees))))
    }
}

fn d_squared(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Trial {
    let (mut g, p) = random_instance(rng, opts.max_vertices);
    if opts.inject_boundary_fault && g.edge_count() == 0 {
        let n = g.vertex_count().max(2);
        g = SimplicialGraph::with_numbered_vertices(n, &[(0, 1)]).expect("two vertices");
    }
    let size = g.vertex_count();
    let mut simplicial = simplicial_chain_complex(&flag_complex(&g), p, true).map_err(|e| (size, e.to_string()))?;
    if opts.inject_boundary_fault {
        // first edge loses its first vertex; the augmentation then sees it
        simplicial.boundary_mut(1).expect("graph has an edge").set(0, 0, 0);
    }
    if let Err(v) = simplicial.check_d_squared() {
        return Err((size, describe(&g, format!("simplicial complex p={p}: {v:?}"))));
    }
    let chi = random::indicator(rng, p, size);
    let c = build_complex_c(&g, &chi).map_err(|e| (size, e.to_string()))?;
    if let Err(v) = c.check_d_squared() {
        return Err((size, describe(&g, format!("complex C chi={:?} p={p}: {v:?}", chi.values()))));
    }
    Ok(())
}

/// Booleans and dimensions of a report, without the normalization echo.
pub fn report_fingerprint(r: &FpnReport) -> String {
    let degrees: Vec<_> = r
        .degrees
        .iter()
        .map(|d| (d.n, d.fp_links, d.fp_complex, d.dim_h_c, d.per_clique.iter().map(|c| c.dim).collect::<Vec<_>>()))
        .collect();
    format!(
        "{:?}|{}|{}|{}|{:?}|{}|{:?}|{:?}",
        r.support, r.connected, r.dominant, r.fg, degrees, r.max_fp, r.routes_agree, r.decomposition
    )
}

fn zero_pattern_invariance(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Trial {
    let (g, p) = random_instance(rng, opts.max_vertices);
    let chi = random::indicator(rng, p, g.vertex_count());
    let other = random::reweight(rng, &chi, 9);
    let size = g.vertex_count();
    let a = analyze(&g, &chi, size).map_err(|e| (size, e.to_string()))?;
    let b = analyze(&g, &other, size).map_err(|e| (size, e.to_string()))?;
    if report_fingerprint(&a) == report_fingerprint(&b) {
        Ok(())
    } else {
        Err((size, describe(&g, format!("chi={:?} vs {:?} p={p}", chi.values(), other.values()))))
    }
}

/// Invariants of the graph-of-groups calculus on one random input.
pub fn gog_instance(x: &GraphOfFiniteGroups) -> std::result::Result<(), String> {
    let doc = || serde_json::to_string(&x.to_document()).expect("serializable");
    let reduced = x.reduce();
    if !reduced.is_reduced() || reduced.euler_characteristic() != x.euler_characteristic() {
        return Err(format!("reduction changed chi or did not reduce: {}", doc()));
    }
    let lcm = x.lcm_vertex_orders();
    for t in 1..=4 {
        let m = lcm * t;
        let rank = x.free_rank(m).map_err(|e| format!("{e}: {}", doc()))?;
        if x.is_reduced() && !x.is_dihedral_type() && rank >= 2 {
            let bounds = x.check_bounds(m).map_err(|e| format!("{e}: {}", doc()))?;
            if !bounds.all_hold() {
                return Err(format!("m={m} {:?}: {}", bounds.defects, doc()));
            }
        }
    }
    Ok(())
}

fn gog_bounds(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Trial {
    let x = random::graph_of_groups(rng, opts.max_vertices.min(6), 0.8);
    gog_instance(&x).map_err(|msg| (x.vertices().len(), msg))
}

type SuiteFn = fn(&mut ChaCha8Rng, &VerifyOptions) -> Trial;

const SUITES: [(&str, SuiteFn); 5] = [
    ("route_agreement", route_agreement),
    ("decomposition", decomposition),
    ("d_squared", d_squared),
    ("zero_pattern_invariance", zero_pattern_invariance),
    ("gog_bounds", gog_bounds),
];

/// Run every suite. Parallelism comes from the ambient rayon pool.
pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let suites: Vec<SuiteReport> = SUITES
        .iter()
        .enumerate()
        .map(|(s, (name, suite))| {
            let outcomes: Vec<Trial> = (0..opts.trials)
                .into_par_iter()
                .map(|i| suite(&mut instance_rng(opts.seed, s as u64, i), opts))
                .collect();
            let failures: Vec<(usize, String)> = outcomes.into_iter().filter_map(|o| o.err()).collect();
            let witness = failures.iter().min_by_key(|(size, _)| *size).map(|(_, w)| w.clone());
            SuiteReport { name: name.to_string(), instances: opts.trials, failures: failures.len(), witness }
        })
        .collect();
    let pass = suites.iter().all(|s| s.failures == 0);
    VerifyReport { options: opts.clone(), suites, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_run_passes() {
        let r = run(&VerifyOptions { trials: 10, max_vertices: 5, ..Default::default() });
        assert!(r.pass, "{r:?}");
        assert_eq!(r.suites.len(), 5);
    }

    #[test]
    fn injected_fault_is_reported() {
        let r = run(&VerifyOptions { trials: 5, max_vertices: 4, inject_boundary_fault: true, ..Default::default() });
        assert!(!r.pass);
        let d = r.suites.iter().find(|s| s.name == "d_squared").unwrap();
        assert_eq!(d.failures, 5);
        assert!(d.witness.as_deref().unwrap().contains("DSquaredViolation"));
        assert!(r.suites.iter().filter(|s| s.name != "d_squared").all(|s| s.failures == 0));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let opts = VerifyOptions { trials: 6, max_vertices: 5, ..Default::default() };
        assert_eq!(run(&opts), run(&opts));
    }
}
