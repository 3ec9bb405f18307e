//! Finiteness properties of `Ker(χ)` for a single character `χ: G_Γ → Z_p`.
//!
//! Two independent routes decide type `FP_n`:
//!
//! * the *complex route* builds the chain complex `C` whose degree-`n` basis
//!   is the size-`n` cliques of `Γ`, with `d(c_Σ) = Σ_{χ(v_i) ≠ 0}
//!   (-1)^{i-1} c_{Σ∖{v_i}}`, and asks for `H_i(C) = 0` for `1 ≤ i ≤ n`;
//! * the *link route* asks that for every clique `S` outside the support,
//!   `|S| ≤ n`, the link of `S` in `Δ(Γ(χ))` is `(n-1-|S|)`-acyclic.
//!
//! Finite generation (`n = 1`) is also decided directly: the support
//! subgraph must be connected and dominant.
//!
//! Degrees of `C` count clique *members*; degrees of link homology are
//! simplicial dimensions. Reports carry both to keep them apart.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flag_homology::{
    face_boundary, is_k_acyclic, link_complex, reduced_homology_through, ChainComplexFp, HomologyDims,
};
use crate::graph::{Clique, SimplicialGraph, VertexSet};
use crate::linalg::{check_prime, MatrixFp};

/// A character `χ: G_Γ → Z_p`, one integer value per vertex in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    p: u64,
    values: Vec<i64>,
}

/// JSON shape `{"p": int, "chi": {vertex: int, ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterDocument {
    pub p: u64,
    pub chi: BTreeMap<String, i64>,
}

impl Character {
    pub fn new(p: u64, values: Vec<i64>) -> Result<Self> {
        check_prime(p)?;
        Ok(Character { p, values })
    }

    /// The 0/1 character with the given support.
    pub fn indicator(p: u64, vertex_count: usize, support: &VertexSet) -> Result<Self> {
        Self::new(p, (0..vertex_count).map(|v| i64::from(support.contains(&v))).collect())
    }

    pub fn constant(p: u64, vertex_count: usize, value: i64) -> Result<Self> {
        Self::new(p, vec![value; vertex_count])
    }

    pub fn from_document(g: &SimplicialGraph, doc: &CharacterDocument) -> Result<Self> {
        for name in doc.chi.keys() {
            if g.index_of(name).is_none() {
                return Err(Error::UnknownVertex(name.clone()));
            }
        }
        let values = g
            .names()
            .iter()
            .map(|name| doc.chi.get(name).copied().ok_or_else(|| Error::MissingValue(name.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.p, values)
    }

    pub fn parse_json(g: &SimplicialGraph, text: &str) -> Result<Self> {
        let doc: CharacterDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_document(g, &doc)
    }

    pub fn to_document(&self, g: &SimplicialGraph) -> CharacterDocument {
        CharacterDocument {
            p: self.p,
            chi: g.names().iter().cloned().zip(self.values.iter().copied()).collect(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// Vertices with nonzero value. The zero test is exact integer zero.
    pub fn support(&self) -> VertexSet {
        self.values.iter().enumerate().filter(|(_, &x)| x != 0).map(|(v, _)| v).collect()
    }

    pub fn with_prime(&self, p: u64) -> Result<Self> {
        Self::new(p, self.values.clone())
    }

    fn check_against(&self, g: &SimplicialGraph) -> Result<()> {
        match self.values.len().cmp(&g.vertex_count()) {
            std::cmp::Ordering::Less => Err(Error::MissingValue(g.name(self.values.len()).to_string())),
            std::cmp::Ordering::Greater => Err(Error::Schema(format!(
                "character has {} values, graph has {} vertices",
                self.values.len(),
                g.vertex_count()
            ))),
            std::cmp::Ordering::Equal => Ok(()),
        }
    }
}

fn valuation(mut x: i64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let p = p as i64;
    let mut t = 0;
    while x % p == 0 {
        x /= p;
        t += 1;
    }
    t
}

/// Outcome of the surjectivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surjectivity {
    /// Some value is a p-adic unit.
    pub surjective: bool,
    /// `χ / p^t` for the minimal valuation `t`; equal to the input when
    /// `t = 0` or `χ ≡ 0`.
    pub normalized: Character,
    /// The exponent `t` divided out.
    pub rescale_exponent: u32,
}

impl Surjectivity {
    pub fn rescaled(&self) -> bool {
        self.rescale_exponent > 0
    }
}

/// Surjectivity onto `Z_p` plus p-power normalization. Dividing by `p^t`
/// leaves the kernel unchanged since `Z_p` is torsion-free.
pub fn check_surjective(chi: &Character) -> Surjectivity {
    let min_val = chi.values.iter().filter(|&&x| x != 0).map(|&x| valuation(x, chi.p)).min();
    match min_val {
        None => Surjectivity { surjective: false, normalized: chi.clone(), rescale_exponent: 0 },
        Some(0) => Surjectivity { surjective: true, normalized: chi.clone(), rescale_exponent: 0 },
        Some(t) => {
            let scale = (chi.p as i64).pow(t);
            let normalized = Character { p: chi.p, values: chi.values.iter().map(|&x| x / scale).collect() };
            Surjectivity { surjective: false, normalized, rescale_exponent: t }
        }
    }
}

/// Normalize and insist on a nonzero character.
fn epimorphism(g: &SimplicialGraph, chi: &Character) -> Result<Character> {
    chi.check_against(g)?;
    if chi.is_zero() {
        return Err(Error::NotEpimorphism);
    }
    Ok(check_surjective(chi).normalized)
}

/// `Γ(χ)`: the subgraph induced on the nonzero vertices.
pub fn support_graph(g: &SimplicialGraph, chi: &Character) -> Result<SimplicialGraph> {
    chi.check_against(g)?;
    g.induced_subgraph(&chi.support())
}

/// Finite generation of `Ker(χ)`: `Γ(χ)` connected and dominant.
pub fn is_fg(g: &SimplicialGraph, chi: &Character) -> Result<bool> {
    let chi = epimorphism(g, chi)?;
    let support = chi.support();
    Ok(g.is_connected_within(&support) && g.is_dominant(&support)?)
}

/// The complex `C` in degrees `-1..=top`. Degree `n ≥ 0` has one basis
/// vector per size-`n` clique; degree `-1` is a copy of F_p.
fn complex_c_through(g: &SimplicialGraph, chi: &Character, top: usize) -> Result<ChainComplexFp> {
    chi.check_against(g)?;
    let p = chi.p;
    check_prime(p)?;
    let support = chi.support();
    let cliques = g.enumerate_cliques(top);
    let mut labels = vec![vec![Clique::empty()]];
    labels.extend(cliques);
    let mut boundaries = Vec::with_capacity(labels.len() - 1);
    // c_∅ ↦ 1 only when that is a chain map, i.e. nothing maps onto c_∅.
    let mut augmentation = MatrixFp::zeros(1, 1, p);
    if support.is_empty() {
        augmentation.set(0, 0, 1);
    }
    boundaries.push(augmentation);
    for n in 1..labels.len() - 1 {
        boundaries.push(face_boundary(&labels[n + 1], &labels[n], p, |v| support.contains(&v)));
    }
    ChainComplexFp::from_parts(p, -1, labels, boundaries)
}

/// The complex `C` for `χ` over F_p, all degrees up to the clique number.
pub fn build_complex_c(g: &SimplicialGraph, chi: &Character) -> Result<ChainComplexFp> {
    complex_c_through(g, chi, g.vertex_count())
}

/// `dim H_i(C)` for `1 ≤ i ≤ top` (zero above the clique number).
fn complex_homology(g: &SimplicialGraph, chi: &Character, top: usize) -> Result<BTreeMap<usize, usize>> {
    let c = complex_c_through(g, chi, top + 1)?;
    let homology = c.homology();
    Ok((1..=top).map(|i| (i, homology.get(i as i64))).collect())
}

/// Verdict of the complex route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRoute {
    pub fp: bool,
    /// `dim H_i(C)` for `1 ≤ i ≤ n`.
    pub dims: BTreeMap<usize, usize>,
}

/// Type `FP_n` via `H_i(C) = 0` for `1 ≤ i ≤ n`.
pub fn fp_via_complex(g: &SimplicialGraph, chi: &Character, n: usize) -> Result<ComplexRoute> {
    let chi = epimorphism(g, chi)?;
    let dims = complex_homology(g, &chi, n)?;
    Ok(ComplexRoute { fp: dims.values().all(|&d| d == 0), dims })
}

/// One clique `S` outside the support and what the link route asks of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCheck {
    pub clique: Clique,
    /// Required acyclicity level `n - 1 - |S|`.
    pub level: i64,
    pub acyclic: bool,
    /// Reduced homology of the link in degrees `-1..=level`.
    pub homology: HomologyDims,
}

/// Verdict of the link route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRoute {
    pub fp: bool,
    pub checks: Vec<LinkCheck>,
}

/// Cliques `S` of `g` disjoint from `support`, `|S| ≤ max_size`, in
/// size-then-lexicographic order.
fn outside_cliques(g: &SimplicialGraph, support: &VertexSet, max_size: usize) -> Vec<Clique> {
    let outside: VertexSet = g.all_vertices().difference(support).copied().collect();
    g.enumerate_cliques_within(&outside, max_size).into_iter().flatten().collect()
}

/// Type `FP_n` via link acyclicity, for cliques `S` outside the support
/// with `|S| ≤ n` (the `|S| = n` case is the nonemptiness test).
pub fn fp_via_links(g: &SimplicialGraph, chi: &Character, n: usize) -> Result<LinkRoute> {
    let chi = epimorphism(g, chi)?;
    let support = chi.support();
    let mut checks = Vec::new();
    for s in outside_cliques(g, &support, n) {
        let level = n as i64 - 1 - s.len() as i64;
        let link = link_complex(g, &support, &s)?;
        let acyclic = is_k_acyclic(&link, chi.p, level)?;
        let homology = reduced_homology_through(&link, chi.p, level)?;
        checks.push(LinkCheck { clique: s, level, acyclic, homology });
    }
    Ok(LinkRoute { fp: checks.iter().all(|c| c.acyclic), checks })
}

/// Both sides of `dim H_n(C) = Σ_S dim H̃_{n-1-|S|}(lk(S))` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeIdentity {
    pub degree: usize,
    pub complex_dim: usize,
    pub link_sum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub degrees: Vec<DegreeIdentity>,
    pub pass: bool,
}

/// Reduced homology of every link `lk(S) ∩ Δ(Γ(χ))` for `S` outside the
/// support, through the degrees relevant up to `top`.
fn link_table(
    g: &SimplicialGraph,
    support: &VertexSet,
    p: u64,
    top: usize,
) -> Result<Vec<(Clique, HomologyDims)>> {
    outside_cliques(g, support, top)
        .into_iter()
        .map(|s| {
            let link = link_complex(g, support, &s)?;
            let h = reduced_homology_through(&link, p, top as i64 - 1 - s.len() as i64)?;
            Ok((s, h))
        })
        .collect()
}

fn link_sum(table: &[(Clique, HomologyDims)], n: usize) -> usize {
    table
        .iter()
        .filter(|(s, _)| s.len() <= n)
        .map(|(s, h)| h.get(n as i64 - 1 - s.len() as i64))
        .sum()
}

/// Degree-by-degree comparison of the complex route against the clique sum
/// of link homology, for `1 ≤ n ≤` clique number. Needs no surjectivity.
pub fn decomposition_check(g: &SimplicialGraph, chi: &Character) -> Result<DecompositionCheck> {
    chi.check_against(g)?;
    let omega = g.clique_number();
    let lhs = complex_homology(g, chi, omega)?;
    let table = link_table(g, &chi.support(), chi.p, omega)?;
    let degrees: Vec<DegreeIdentity> = (1..=omega)
        .map(|n| DegreeIdentity { degree: n, complex_dim: lhs[&n], link_sum: link_sum(&table, n) })
        .collect();
    let pass = degrees.iter().all(|d| d.complex_dim == d.link_sum);
    Ok(DecompositionCheck { degrees, pass })
}

/// The largest `n` for which `Ker(χ)` is of type `FP_n`, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FpLevel {
    Finite(usize),
    Infinite,
}

impl FpLevel {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            FpLevel::Finite(m) => m >= n,
            FpLevel::Infinite => true,
        }
    }
}

impl fmt::Display for FpLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpLevel::Finite(n) => write!(f, "{n}"),
            FpLevel::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for FpLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FpLevel::Finite(n) => s.serialize_u64(*n as u64),
            FpLevel::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for FpLevel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(usize),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(FpLevel::Finite(n)),
            Repr::Str(s) if s == "inf" => Ok(FpLevel::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("bad FP level `{s}`"))),
        }
    }
}

fn level_from_dims(dims: &BTreeMap<usize, usize>) -> FpLevel {
    match dims.iter().find(|(_, &d)| d != 0) {
        Some((&i, _)) => FpLevel::Finite(i - 1),
        None => FpLevel::Infinite,
    }
}

/// Largest `n` with `H_i(C) = 0` for all `1 ≤ i ≤ n`; infinite when every
/// degree up to the clique number vanishes (`C` is zero above it).
pub fn max_fp(g: &SimplicialGraph, chi: &Character) -> Result<FpLevel> {
    let chi = epimorphism(g, chi)?;
    let dims = complex_homology(g, &chi, g.clique_number())?;
    Ok(level_from_dims(&dims))
}

/// One row of the per-clique table: `dim H̃_{link_degree}(lk(S))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueContribution {
    pub clique: Vec<String>,
    pub link_degree: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    /// Degree in `C` (clique cardinality).
    pub n: usize,
    pub fp_links: bool,
    pub fp_complex: bool,
    pub dim_h_c: usize,
    pub per_clique: Vec<CliqueContribution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub rescaled: bool,
    pub exponent: u32,
    pub normalized: Vec<i64>,
}

/// Full single-character analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpnReport {
    pub p: u64,
    pub support: Vec<String>,
    pub normalization: Normalization,
    pub connected: bool,
    pub dominant: bool,
    pub fg: bool,
    pub clique_number: usize,
    pub degrees: Vec<DegreeReport>,
    pub max_fp: FpLevel,
    pub routes_agree: bool,
    pub decomposition: DecompositionCheck,
}

impl FpnReport {
    pub fn fp(&self, n: usize) -> bool {
        self.max_fp.at_least(n)
    }
}

/// Run every procedure on one character for degrees `1..=max_n`.
pub fn analyze(g: &SimplicialGraph, chi: &Character, max_n: usize) -> Result<FpnReport> {
    let surj = {
        chi.check_against(g)?;
        if chi.is_zero() {
            return Err(Error::NotEpimorphism);
        }
        check_surjective(chi)
    };
    let chi = &surj.normalized;
    let p = chi.p;
    let support = chi.support();
    let connected = g.is_connected_within(&support);
    let dominant = g.is_dominant(&support)?;
    let omega = g.clique_number();
    let top = max_n.max(omega);

    let complex_dims = complex_homology(g, chi, top)?;
    let table = link_table(g, &support, p, top)?;
    let by_clique: HashMap<&Clique, &HomologyDims> = table.iter().map(|(s, h)| (s, h)).collect();

    let mut degrees = Vec::with_capacity(max_n);
    let mut complex_ok = true;
    for n in 1..=max_n {
        complex_ok &= complex_dims[&n] == 0;
        let mut links_ok = true;
        let mut per_clique = Vec::new();
        for (s, h) in &table {
            if s.len() > n {
                continue;
            }
            let link_degree = n as i64 - 1 - s.len() as i64;
            // FP_n needs this link acyclic through link_degree
            let acyclic = (-1..=link_degree).all(|d| h.get(d) == 0);
            links_ok &= acyclic;
            per_clique.push(CliqueContribution {
                clique: s.names(g).into_iter().map(String::from).collect(),
                link_degree,
                dim: by_clique[s].get(link_degree),
            });
        }
        degrees.push(DegreeReport {
            n,
            fp_links: links_ok,
            fp_complex: complex_ok,
            dim_h_c: complex_dims[&n],
            per_clique,
        });
    }

    let decomposition = {
        let degrees: Vec<DegreeIdentity> = (1..=omega)
            .map(|n| DegreeIdentity { degree: n, complex_dim: complex_dims[&n], link_sum: link_sum(&table, n) })
            .collect();
        let pass = degrees.iter().all(|d| d.complex_dim == d.link_sum);
        DecompositionCheck { degrees, pass }
    };
    let fg = connected && dominant;
    let routes_agree = degrees.iter().all(|d| d.fp_links == d.fp_complex)
        && degrees.first().is_none_or(|d| d.fp_complex == fg);
    let max_fp = level_from_dims(&complex_dims.range(1..=omega.max(1)).map(|(&k, &v)| (k, v)).collect());

    Ok(FpnReport {
        p,
        support: support.iter().map(|&v| g.name(v).to_string()).collect(),
        normalization: Normalization {
            rescaled: surj.rescaled(),
            exponent: surj.rescale_exponent,
            normalized: chi.values.clone(),
        },
        connected,
        dominant,
        fg,
        clique_number: omega,
        degrees,
        max_fp,
        routes_agree,
        decomposition,
    })
}
