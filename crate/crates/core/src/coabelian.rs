//! Coabelian normal subgroups `N = ker(G → Z_p^k)` given by an integer
//! matrix, and the aggregation of single-character verdicts over every
//! rank-one quotient `G/N_0 ≅ Z_p` with `N ≤ N_0`.
//!
//! A rank-one quotient is `λ∘M` for a nonzero row vector `λ`; its support
//! is determined by the set `Z` of columns it annihilates. The realizable
//! sets `Z` are exactly the proper flats of the column matroid of `M`
//! (span-closed column sets other than all of `V`). All arithmetic here is
//! exact.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpcheck::{analyze, Character, FpnReport};
use crate::graph::{SimplicialGraph, VertexSet};
use crate::linalg::check_prime;

/// Integer matrix whose columns are the images of the vertices in `Z_p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoabelianSpec {
    pub p: u64,
    pub rows: Vec<Vec<i64>>,
}

impl CoabelianSpec {
    pub fn new(p: u64, rows: Vec<Vec<i64>>) -> Result<Self> {
        check_prime(p)?;
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::ColumnMismatch { expected: first.len(), found: bad.len() });
            }
        }
        Ok(CoabelianSpec { p, rows })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let raw: CoabelianSpec = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::new(raw.p, raw.rows)
    }

    /// `k × n` identity.
    pub fn identity(p: u64, n: usize) -> Result<Self> {
        Self::new(p, (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Column count must match the graph (an empty matrix matches anything
    /// and has rank 0).
    pub fn check_against(&self, g: &SimplicialGraph) -> Result<()> {
        if !self.rows.is_empty() && self.column_count() != g.vertex_count() {
            return Err(Error::ColumnMismatch { expected: g.vertex_count(), found: self.column_count() });
        }
        Ok(())
    }

    fn column(&self, v: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| BigInt::from(r[v])).collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> =
            self.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        bareiss_rank(rows)
    }

    /// Rank of the columns indexed by `set`.
    pub fn columns_rank(&self, set: &VertexSet) -> usize {
        bareiss_rank(set.iter().map(|&v| self.column(v)).collect())
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination: each
/// step divides exactly by the previous pivot, so entries stay integral and
/// equal to minors of the input.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, pr);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = &m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j];
                m[r][j] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Basis of `{x ∈ Q^cols : A x = 0}` from the reduced row echelon form.
fn nullspace(a: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] = &m[i][j] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[i][f].clone();
            }
            x
        })
        .collect()
}

fn dot(lambda: &[BigInt], column: &[BigInt]) -> BigInt {
    lambda.iter().zip(column).map(|(a, b)| a * b).sum()
}

/// Vertices whose column lies in the rational span of the columns of `z`.
pub fn span_closure(m: &CoabelianSpec, z: &VertexSet) -> VertexSet {
    let n = m.column_count();
    let base = m.columns_rank(z);
    (0..n)
        .filter(|v| {
            if z.contains(v) {
                return true;
            }
            let mut with_v = z.clone();
            with_v.insert(*v);
            m.columns_rank(&with_v) == base
        })
        .collect()
}

/// Big integers as decimal strings in JSON.
mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(BigInt::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }
}

/// A realizable zero set together with a direction `λ` realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroPattern {
    pub zero_set: VertexSet,
    /// Integer row vector, primitive; `λ·M_v = 0 ⇔ v ∈ zero_set`.
    #[serde(with = "decimal")]
    pub certificate: Vec<BigInt>,
}

impl ZeroPattern {
    /// Exact check of the certificate against `m`.
    pub fn verify(&self, m: &CoabelianSpec) -> bool {
        self.certificate.len() == m.row_count()
            && (0..m.column_count()).all(|v| dot(&self.certificate, &m.column(v)).is_zero() == self.zero_set.contains(&v))
    }

    pub fn support(&self, vertex_count: usize) -> VertexSet {
        (0..vertex_count).filter(|v| !self.zero_set.contains(v)).collect()
    }
}

/// A `λ` vanishing exactly on the flat `z`. `λ` ranges over the annihilator
/// of `span(z)`; along the curve `Σ s^j b_j` each outside column gives a
/// nonzero polynomial in `s`, so some small integer `s` avoids all roots.
fn certificate(m: &CoabelianSpec, z: &VertexSet) -> Vec<BigInt> {
    let k = m.row_count();
    let a: Vec<Vec<BigInt>> = z.iter().map(|&v| m.column(v)).collect();
    let basis = nullspace(&a, k);
    assert!(!basis.is_empty(), "proper flat has a nonzero annihilator");
    let outside: Vec<Vec<BigInt>> = (0..m.column_count()).filter(|v| !z.contains(v)).map(|v| m.column(v)).collect();
    let mut s = BigInt::one();
    loop {
        let mut lambda = vec![BigRational::zero(); k];
        let mut weight = BigRational::one();
        for b in &basis {
            for (l, x) in lambda.iter_mut().zip(b) {
                *l = &*l + &weight * x;
            }
            weight *= BigRational::from_integer(s.clone());
        }
        let denom = lambda.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = lambda.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            for x in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        if outside.iter().all(|c| !dot(&ints, c).is_zero()) {
            if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                for x in ints.iter_mut() {
                    *x = -&*x;
                }
            }
            return ints;
        }
        s += 1;
    }
}

/// Every proper flat of the column matroid, each with a verified
/// certificate. Flats are generated from `closure(∅)` by repeatedly adding
/// one column and closing; output is sorted by size, then lexicographically.
pub fn enumerate_patterns(m: &CoabelianSpec) -> Result<Vec<ZeroPattern>> {
    if m.rank() == 0 {
        return Err(Error::FiniteQuotient);
    }
    let n = m.column_count();
    let all: VertexSet = (0..n).collect();
    let bottom = span_closure(m, &VertexSet::new());
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(bottom.iter().copied().collect());
    queue.push_back(bottom);
    let mut flats = Vec::new();
    while let Some(flat) = queue.pop_front() {
        if flat == all {
            continue;
        }
        for v in 0..n {
            if flat.contains(&v) {
                continue;
            }
            let mut grown = flat.clone();
            grown.insert(v);
            let closed = span_closure(m, &grown);
            if seen.insert(closed.iter().copied().collect()) {
                queue.push_back(closed);
            }
        }
        flats.push(flat);
    }
    flats.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    let patterns: Vec<ZeroPattern> = flats
        .into_iter()
        .map(|z| {
            let certificate = certificate(m, &z);
            ZeroPattern { zero_set: z, certificate }
        })
        .collect();
    debug_assert!(patterns.iter().all(|p| p.verify(m)));
    Ok(patterns)
}

/// Finite generation of `N`, one verdict per rank-one quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoabelianFg {
    pub fg: bool,
    pub witness: Option<ZeroPattern>,
    pub pattern_count: usize,
}

fn support_is_fg(g: &SimplicialGraph, support: &VertexSet) -> Result<bool> {
    Ok(g.is_connected_within(support) && g.is_dominant(support)?)
}

pub fn fg_coabelian(g: &SimplicialGraph, m: &CoabelianSpec) -> Result<CoabelianFg> {
    m.check_against(g)?;
    let patterns = enumerate_patterns(m)?;
    let pattern_count = patterns.len();
    for pattern in patterns {
        if !support_is_fg(g, &pattern.support(g.vertex_count()))? {
            return Ok(CoabelianFg { fg: false, witness: Some(pattern), pattern_count });
        }
    }
    Ok(CoabelianFg { fg: true, witness: None, pattern_count })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternReport {
    pub pattern: ZeroPattern,
    pub zero_set_names: Vec<String>,
    pub fp: bool,
    pub report: FpnReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoabelianFpn {
    pub n: usize,
    pub fp: bool,
    pub witness: Option<ZeroPattern>,
    pub per_pattern: Vec<PatternReport>,
}

/// Type `FP_n` of `N`: every rank-one quotient kernel is `FP_n`. Each
/// pattern is analysed through the 0/1 character with that support.
pub fn fpn_coabelian(g: &SimplicialGraph, m: &CoabelianSpec, n: usize) -> Result<CoabelianFpn> {
    m.check_against(g)?;
    let patterns = enumerate_patterns(m)?;
    let mut per_pattern = Vec::with_capacity(patterns.len());
    for pattern in patterns {
        let chi = Character::indicator(m.p, g.vertex_count(), &pattern.support(g.vertex_count()))?;
        let report = analyze(g, &chi, n)?;
        let fp = report.fp(n);
        let zero_set_names = pattern.zero_set.iter().map(|&v| g.name(v).to_string()).collect();
        per_pattern.push(PatternReport { pattern, zero_set_names, fp, report });
    }
    let witness = per_pattern.iter().find(|r| !r.fp).map(|r| r.pattern.clone());
    Ok(CoabelianFpn { n, fp: witness.is_none(), witness, per_pattern })
}

pub const FINITE_BY_ABELIAN_MARKER: &str = "G/N is finite-by-abelian";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorVerdict {
    pub vertices: Vec<String>,
    pub is_clique: bool,
    pub restricted_rank: usize,
    pub meets_n: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullnessReport {
    pub full: bool,
    pub factors: Vec<FactorVerdict>,
    pub marker: Option<String>,
}

/// Whether `N` meets every join factor `G_{Γ_i}` nontrivially. A non-clique
/// factor contains a free subgroup of rank two whose derived subgroup lies
/// in `N`; a clique factor on `t` vertices is `Z_p^t` and meets `N` iff the
/// restricted columns have rank below `t`.
pub fn is_full(g: &SimplicialGraph, m: &CoabelianSpec) -> Result<FullnessReport> {
    m.check_against(g)?;
    if g.is_empty() {
        return Ok(FullnessReport { full: true, factors: Vec::new(), marker: None });
    }
    let mut factors = Vec::new();
    for factor in g.join_factors()? {
        let members: Vec<usize> = factor.iter().copied().collect();
        let is_clique = g.is_clique(&members);
        let restricted_rank = if m.rows.is_empty() { 0 } else { m.columns_rank(&factor) };
        let t = members.len();
        let (meets_n, reason) = if !is_clique {
            (true, "non-clique factor: its commutator subgroup lies in N".to_string())
        } else if restricted_rank < t {
            (true, format!("clique factor with restricted rank {restricted_rank} < {t}"))
        } else {
            (false, format!("clique factor with restricted rank {restricted_rank} = {t}: N meets it trivially"))
        };
        factors.push(FactorVerdict {
            vertices: members.iter().map(|&v| g.name(v).to_string()).collect(),
            is_clique,
            restricted_rank,
            meets_n,
            reason,
        });
    }
    let full = factors.iter().all(|f| f.meets_n);
    let marker = if full && m.rank() > 0 && fg_coabelian(g, m)?.fg {
        Some(FINITE_BY_ABELIAN_MARKER.to_string())
    } else {
        None
    };
    Ok(FullnessReport { full, factors, marker })
}
