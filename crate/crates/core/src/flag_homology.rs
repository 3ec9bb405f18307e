//! Flag complexes, links, chain complexes over F_p and reduced homology.
//!
//! Simplices are cliques of the ambient graph, written in the ambient vertex
//! order. A clique with `k` members is a `(k-1)`-simplex. Every boundary map
//! in this crate is built by [`face_boundary`]: deleting the member at
//! 1-based position `i` contributes the sign `(-1)^(i-1)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Clique, SimplicialGraph, VertexSet};
use crate::linalg::{check_prime, MatrixFp};

/// The flag complex of an induced subgraph: all nonempty cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    vertices: Vec<usize>,
    /// `simplices[k]` holds the cliques with `k + 1` members.
    simplices: Vec<Vec<Clique>>,
}

impl FlagComplex {
    /// Flag complex of the subgraph of `g` induced on `within`.
    pub fn on_vertices(g: &SimplicialGraph, within: &VertexSet) -> Self {
        let mut by_size = g.enumerate_cliques_within(within, within.len());
        by_size.remove(0);
        while by_size.last().is_some_and(Vec::is_empty) {
            by_size.pop();
        }
        FlagComplex { vertices: within.iter().copied().collect(), simplices: by_size }
    }

    pub fn empty() -> Self {
        FlagComplex { vertices: Vec::new(), simplices: Vec::new() }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Top simplex dimension; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    /// Simplices of dimension `dim` (cliques with `dim + 1` members).
    pub fn simplices(&self, dim: i64) -> &[Clique] {
        if dim < 0 {
            return &[];
        }
        self.simplices.get(dim as usize).map_or(&[], Vec::as_slice)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Euler characteristic of the reduced chain complex, `Σ (-1)^i f_i`
    /// over `i ≥ -1` with `f_{-1} = 1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1;
        for (d, faces) in self.simplices.iter().enumerate() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            chi += sign * faces.len() as i64;
        }
        chi
    }
}

/// `Δ(g)`: simplices are exactly the nonempty cliques of `g`.
pub fn flag_complex(g: &SimplicialGraph) -> FlagComplex {
    FlagComplex::on_vertices(g, &g.all_vertices())
}

/// Link of the clique `s` in `Δ(g)`, intersected with the flag complex on
/// `support`: the flag complex induced on the common neighbours of `s`
/// lying in `support`. For `s = ∅` this is `Δ` of the support itself.
pub fn link_complex(g: &SimplicialGraph, support: &VertexSet, s: &Clique) -> Result<FlagComplex> {
    if !g.is_clique(s.members()) {
        return Err(Error::NotAClique(s.to_string()));
    }
    for &v in support {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
    }
    let within: VertexSet = g.common_neighbors(s).intersection(support).copied().collect();
    Ok(FlagComplex::on_vertices(g, &within))
}

/// Dimensions of homology groups, indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyDims(BTreeMap<i64, usize>);

impl HomologyDims {
    pub fn from_map(map: BTreeMap<i64, usize>) -> Self {
        HomologyDims(map)
    }

    /// Dimension in `degree`; zero outside the computed range.
    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&d, &v)| (d, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|&v| v == 0)
    }

    /// Degrees carrying nonzero homology.
    pub fn nonzero(&self) -> BTreeMap<i64, usize> {
        self.0.iter().filter(|(_, &v)| v != 0).map(|(&d, &v)| (d, v)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(d, v)| if d.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum()
    }
}

/// A bounded chain complex of finite-dimensional F_p vector spaces whose
/// basis elements are labelled by cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexFp {
    p: u64,
    lo: i64,
    labels: Vec<Vec<Clique>>,
    /// `boundaries[i]` is `d_n : C_n → C_{n-1}` for `n = lo + 1 + i`.
    boundaries: Vec<MatrixFp>,
}

/// A degree where `d_{n-1} ∘ d_n` fails to vanish, with one offending entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSquaredViolation {
    pub degree: i64,
    pub row: usize,
    pub col: usize,
    pub value: u64,
}

impl ChainComplexFp {
    /// Assemble from per-degree bases and the boundary maps between them.
    pub fn from_parts(p: u64, lo: i64, labels: Vec<Vec<Clique>>, boundaries: Vec<MatrixFp>) -> Result<Self> {
        check_prime(p)?;
        assert!(!labels.is_empty(), "chain complex needs at least one degree");
        assert_eq!(boundaries.len() + 1, labels.len(), "one boundary per adjacent degree pair");
        for (i, d) in boundaries.iter().enumerate() {
            assert_eq!(d.rows(), labels[i].len(), "boundary row count");
            assert_eq!(d.cols(), labels[i + 1].len(), "boundary column count");
            assert_eq!(d.prime(), p, "boundary prime");
        }
        Ok(ChainComplexFp { p, lo, labels, boundaries })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lo
    }

    pub fn highest_degree(&self) -> i64 {
        self.lo + self.labels.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lowest_degree()..=self.highest_degree()
    }

    fn slot(&self, n: i64) -> Option<usize> {
        (self.degrees().contains(&n)).then(|| (n - self.lo) as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |i| self.labels[i].len())
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|n| (n, self.dim(n))).collect()
    }

    pub fn basis(&self, n: i64) -> &[Clique] {
        self.slot(n).map_or(&[], |i| self.labels[i].as_slice())
    }

    /// `d_n : C_n → C_{n-1}`, when both degrees are in range.
    pub fn boundary(&self, n: i64) -> Option<&MatrixFp> {
        if n <= self.lo {
            return None;
        }
        self.boundaries.get((n - self.lo - 1) as usize)
    }

    pub fn boundary_mut(&mut self, n: i64) -> Option<&mut MatrixFp> {
        if n <= self.lo {
            return None;
        }
        self.boundaries.get_mut((n - self.lo - 1) as usize)
    }

    pub fn boundary_rank(&self, n: i64) -> usize {
        self.boundary(n).map_or(0, MatrixFp::rank)
    }

    /// Checks `d_{n-1} d_n = 0` in every degree.
    pub fn check_d_squared(&self) -> std::result::Result<(), DSquaredViolation> {
        for n in self.lo + 2..=self.highest_degree() {
            let (Some(outer), Some(inner)) = (self.boundary(n - 1), self.boundary(n)) else { continue };
            let prod = outer.mul(inner);
            let first = prod.entries().next();
            if let Some((row, col, value)) = first {
                return Err(DSquaredViolation { degree: n, row, col, value });
            }
        }
        Ok(())
    }

    /// `dim H_n = dim C_n − rank d_n − rank d_{n+1}` for every degree.
    pub fn homology(&self) -> HomologyDims {
        let ranks: Vec<usize> = (self.lo..=self.highest_degree() + 1).map(|n| self.boundary_rank(n)).collect();
        let dims = self
            .degrees()
            .map(|n| {
                let i = (n - self.lo) as usize;
                (n, self.dim(n) - ranks[i] - ranks[i + 1])
            })
            .collect();
        HomologyDims(dims)
    }
}

/// Boundary matrix from `domain` (degree n) to `codomain` (degree n−1):
/// `c_Σ ↦ Σ_{i : include(v_i)} (-1)^{i-1} c_{Σ∖{v_i}}`.
pub fn face_boundary<F>(domain: &[Clique], codomain: &[Clique], p: u64, include: F) -> MatrixFp
where
    F: Fn(usize) -> bool,
{
    let index: HashMap<&Clique, usize> = codomain.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut entries = Vec::new();
    for (col, sigma) in domain.iter().enumerate() {
        for (pos, &v) in sigma.members().iter().enumerate() {
            if !include(v) {
                continue;
            }
            let face = sigma.without_position(pos);
            let row = *index.get(&face).expect("faces of a clique are cliques of the complex");
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            entries.push((row, col, sign));
        }
    }
    MatrixFp::from_entries(codomain.len(), domain.len(), p, entries)
}

/// Simplicial chain complex of `k` over F_p, optionally augmented by a copy
/// of F_p in degree −1 receiving every vertex with coefficient 1.
pub fn simplicial_chain_complex(k: &FlagComplex, p: u64, augmented: bool) -> Result<ChainComplexFp> {
    simplicial_chain_complex_through(k, p, augmented, k.dimension())
}

/// Truncation of [`simplicial_chain_complex`] at degree `top`.
pub fn simplicial_chain_complex_through(k: &FlagComplex, p: u64, augmented: bool, top: i64) -> Result<ChainComplexFp> {
    check_prime(p)?;
    let lo: i64 = if augmented { -1 } else { 0 };
    let top = top.min(k.dimension()).max(lo);
    let mut labels: Vec<Vec<Clique>> = Vec::new();
    for n in lo..=top {
        if n == -1 {
            labels.push(vec![Clique::empty()]);
        } else {
            labels.push(k.simplices(n).to_vec());
        }
    }
    let boundaries = (1..labels.len())
        .map(|i| face_boundary(&labels[i], &labels[i - 1], p, |_| true))
        .collect();
    ChainComplexFp::from_parts(p, lo, labels, boundaries)
}

/// Reduced homology `H̃_i(k; F_p)` for `-1 ≤ i ≤ dim k`.
pub fn reduced_homology(k: &FlagComplex, p: u64) -> Result<HomologyDims> {
    Ok(simplicial_chain_complex(k, p, true)?.homology())
}

/// Reduced homology in degrees `-1..=top` only.
pub fn reduced_homology_through(k: &FlagComplex, p: u64, top: i64) -> Result<HomologyDims> {
    let top = top.max(-1);
    // degree `top` needs d_{top+1}
    let complex = simplicial_chain_complex_through(k, p, true, top + 1)?;
    let full = complex.homology();
    Ok(HomologyDims(full.0.into_iter().filter(|&(d, _)| d <= top).collect()))
}

/// `H̃_i(k; F_p) = 0` for all `-1 ≤ i ≤ level`. Level `-1` means nonempty;
/// levels below `-1` are vacuous.
pub fn is_k_acyclic(k: &FlagComplex, p: u64, level: i64) -> Result<bool> {
    if level < -1 {
        check_prime(p)?;
        return Ok(true);
    }
    if level == -1 {
        check_prime(p)?;
        return Ok(!k.is_empty());
    }
    Ok(reduced_homology_through(k, p, level)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn dims(h: &HomologyDims) -> Vec<(i64, usize)> {
        h.iter().collect()
    }

    #[test]
    fn flag_complex_examples() {
        assert_eq!(flag_complex(&cycle(4)).face_counts(), vec![4, 4]);
        assert_eq!(flag_complex(&complete(3)).face_counts(), vec![3, 3, 1]);
        let empty = flag_complex(&edgeless(0));
        assert!(empty.is_empty());
        assert_eq!(empty.dimension(), -1);
    }

    #[test]
    fn link_examples() {
        let p3 = path(3);
        let support: VertexSet = [0, 2].into_iter().collect();
        let lk = link_complex(&p3, &support, &Clique::from_vertices([1])).unwrap();
        assert_eq!(lk.vertices(), &[0, 2]);
        assert_eq!(lk.face_counts(), vec![2]);

        let c4 = cycle(4);
        assert_eq!(link_complex(&c4, &c4.all_vertices(), &Clique::empty()).unwrap(), flag_complex(&c4));

        let lk = link_complex(&p3, &[1].into_iter().collect(), &Clique::from_vertices([0])).unwrap();
        assert_eq!(lk.vertices(), &[1]);

        let err = link_complex(&c4, &c4.all_vertices(), &Clique::from_vertices([0, 2]));
        assert!(matches!(err, Err(Error::NotAClique(_))));
    }

    #[test]
    fn chain_complex_dims() {
        let c4 = simplicial_chain_complex(&flag_complex(&cycle(4)), 2, true).unwrap();
        assert_eq!(c4.dims().into_iter().collect::<Vec<_>>(), vec![(-1, 1), (0, 4), (1, 4)]);
        let e = simplicial_chain_complex(&FlagComplex::empty(), 2, true).unwrap();
        assert_eq!(e.dims().into_iter().collect::<Vec<_>>(), vec![(-1, 1)]);
        let k3 = simplicial_chain_complex(&flag_complex(&complete(3)), 3, true).unwrap();
        assert_eq!(k3.dims().values().copied().collect::<Vec<_>>(), vec![1, 3, 3, 1]);
        assert!(simplicial_chain_complex(&FlagComplex::empty(), 6, true).is_err());
    }

    #[test]
    fn augmentation_sends_vertices_to_one() {
        let c = simplicial_chain_complex(&flag_complex(&path(3)), 5, true).unwrap();
        assert_eq!(c.boundary(0).unwrap().to_dense(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn signs_follow_vertex_order() {
        let c = simplicial_chain_complex(&flag_complex(&complete(3)), 7, false).unwrap();
        // d(v1 v2 v3) = (v2 v3) − (v1 v3) + (v1 v2); edges sorted as 12, 13, 23
        let d2 = c.boundary(2).unwrap().to_dense();
        assert_eq!(d2, vec![vec![1], vec![6], vec![1]]);
        assert!(c.check_d_squared().is_ok());
    }

    #[test]
    fn cycle_boundary_rank_is_three() {
        let c = simplicial_chain_complex(&flag_complex(&cycle(4)), 2, false).unwrap();
        assert_eq!(c.boundary(1).unwrap().rank(), 3);
    }

    #[test]
    fn reduced_homology_examples() {
        let h = reduced_homology(&flag_complex(&cycle(4)), 2).unwrap();
        assert_eq!(dims(&h), vec![(-1, 0), (0, 0), (1, 1)]);
        let point = reduced_homology(&flag_complex(&complete(1)), 3).unwrap();
        assert!(point.is_zero());
        let empty = reduced_homology(&FlagComplex::empty(), 2).unwrap();
        assert_eq!(dims(&empty), vec![(-1, 1)]);
    }

    #[test]
    fn euler_check() {
        for g in [cycle(5), octahedron(), path(4), complete_bipartite(2, 3), edgeless(3)] {
            let k = flag_complex(&g);
            let h = reduced_homology(&k, 3).unwrap();
            assert_eq!(h.euler_characteristic(), k.reduced_euler_characteristic());
        }
    }

    #[test]
    fn acyclicity_examples() {
        let two_points = flag_complex(&edgeless(2));
        assert!(!is_k_acyclic(&two_points, 2, 0).unwrap());
        assert!(is_k_acyclic(&two_points, 2, -1).unwrap());
        assert!(!is_k_acyclic(&FlagComplex::empty(), 2, -1).unwrap());
        assert!(is_k_acyclic(&FlagComplex::empty(), 2, -2).unwrap());
        assert!(is_k_acyclic(&flag_complex(&cycle(4)), 3, 0).unwrap());
        assert!(!is_k_acyclic(&flag_complex(&cycle(4)), 3, 1).unwrap());
    }

    #[test]
    fn truncated_homology_agrees() {
        let k = flag_complex(&octahedron());
        let full = reduced_homology(&k, 5).unwrap();
        for top in -1..=2 {
            let part = reduced_homology_through(&k, 5, top).unwrap();
            for d in -1..=top {
                assert_eq!(part.get(d), full.get(d));
            }
        }
    }

    #[test]
    fn corrupted_boundary_is_caught() {
        let mut c = simplicial_chain_complex(&flag_complex(&complete(3)), 2, true).unwrap();
        c.boundary_mut(1).unwrap().set(0, 0, 0);
        let err = c.check_d_squared().unwrap_err();
        assert_eq!(err.degree, 1);
    }
}
