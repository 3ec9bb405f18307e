//! Finite graphs of finite groups, described by group orders only.
//!
//! Everything computed here (reducedness, dihedral type, the fractional
//! Euler characteristic, the rank of a free subgroup of given index and the
//! index bounds) depends only on the orders `|G_v|`, `|G_e|` and the index
//! `[G : F]`, so the groups themselves are never materialized.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GogVertex {
    pub id: String,
    pub order: u64,
}

/// Edge with endpoint positions into the vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GogEdge {
    pub id: String,
    pub d0: usize,
    pub d1: usize,
    pub order: u64,
}

impl GogEdge {
    pub fn is_loop(&self) -> bool {
        self.d0 == self.d1
    }
}

/// JSON shape of a graph of groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GogDocument {
    pub vertices: Vec<GogVertex>,
    pub edges: Vec<GogEdgeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GogEdgeDocument {
    pub id: String,
    pub d0: String,
    pub d1: String,
    pub order: u64,
}

/// Connected finite multigraph with an order per vertex and edge; every
/// edge order divides both endpoint orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfFiniteGroups {
    vertices: Vec<GogVertex>,
    edges: Vec<GogEdge>,
}

impl GraphOfFiniteGroups {
    pub fn new(vertices: Vec<GogVertex>, edges: Vec<GogEdge>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidGraphOfGroups(msg));
        if vertices.is_empty() {
            return invalid("no vertices".into());
        }
        let mut ids = HashSet::new();
        for v in &vertices {
            if v.order == 0 {
                return invalid(format!("vertex `{}` has order 0", v.id));
            }
            if !ids.insert(v.id.as_str()) {
                return invalid(format!("duplicate vertex id `{}`", v.id));
            }
        }
        let mut edge_ids = HashSet::new();
        for e in &edges {
            if !edge_ids.insert(e.id.as_str()) {
                return invalid(format!("duplicate edge id `{}`", e.id));
            }
            if e.d0 >= vertices.len() || e.d1 >= vertices.len() {
                return invalid(format!("edge `{}` has an unknown endpoint", e.id));
            }
            if e.order == 0 {
                return invalid(format!("edge `{}` has order 0", e.id));
            }
            for end in [e.d0, e.d1] {
                if vertices[end].order % e.order != 0 {
                    return invalid(format!(
                        "edge `{}` order {} does not divide vertex `{}` order {}",
                        e.id, e.order, vertices[end].id, vertices[end].order
                    ));
                }
            }
        }
        let x = GraphOfFiniteGroups { vertices, edges };
        if !x.is_connected() {
            return invalid("underlying graph is not connected".into());
        }
        Ok(x)
    }

    pub fn from_document(doc: &GogDocument) -> Result<Self> {
        let index: HashMap<&str, usize> = doc.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let lookup = |id: &str, edge: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidGraphOfGroups(format!("edge `{edge}` references unknown vertex `{id}`")))
        };
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                Ok(GogEdge { id: e.id.clone(), d0: lookup(&e.d0, &e.id)?, d1: lookup(&e.d1, &e.id)?, order: e.order })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.vertices.clone(), edges)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: GogDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> GogDocument {
        GogDocument {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| GogEdgeDocument {
                    id: e.id.clone(),
                    d0: self.vertices[e.d0].id.clone(),
                    d1: self.vertices[e.d1].id.clone(),
                    order: e.order,
                })
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[GogVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GogEdge] {
        &self.edges
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.d0, e.d1), (e.d1, e.d0)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether the non-loop edge `e` has an edge group equal to an endpoint group.
    fn is_fictitious(&self, e: &GogEdge) -> bool {
        !e.is_loop() && (e.order == self.vertices[e.d0].order || e.order == self.vertices[e.d1].order)
    }

    pub fn fictitious_edges(&self) -> Vec<&str> {
        self.edges.iter().filter(|e| self.is_fictitious(e)).map(|e| e.id.as_str()).collect()
    }

    /// No non-loop edge group equals an endpoint group.
    pub fn is_reduced(&self) -> bool {
        self.fictitious_edges().is_empty()
    }

    /// Collapse fictitious edges, first in edge order, until reduced. When
    /// `o_e = o_{d0}` the merged vertex keeps `d1`'s group, otherwise `d0`'s.
    pub fn reduce(&self) -> GraphOfFiniteGroups {
        let mut x = self.clone();
        while let Some(pos) = x.edges.iter().position(|e| x.is_fictitious(e)) {
            let e = x.edges.remove(pos);
            let (keep, drop) = if e.order == x.vertices[e.d0].order { (e.d1, e.d0) } else { (e.d0, e.d1) };
            for other in x.edges.iter_mut() {
                for end in [&mut other.d0, &mut other.d1] {
                    if *end == drop {
                        *end = keep;
                    }
                    if *end > drop {
                        *end -= 1;
                    }
                }
            }
            x.vertices.remove(drop);
        }
        x
    }

    /// A single edge which is either a loop with `G_e = G_v` or joins two
    /// distinct vertices with both indices equal to 2.
    pub fn is_dihedral_type(&self) -> bool {
        let [e] = self.edges.as_slice() else { return false };
        let (ov, ow) = (self.vertices[e.d0].order, self.vertices[e.d1].order);
        if e.is_loop() {
            e.order == ov
        } else {
            ov == 2 * e.order && ow == 2 * e.order
        }
    }

    /// `χ(G) = Σ_v 1/|G_v| − Σ_e 1/|G_e|`, loops counted once.
    pub fn euler_characteristic(&self) -> BigRational {
        let unit = |o: u64| BigRational::new(BigInt::one(), BigInt::from(o));
        let vertices: BigRational = self.vertices.iter().map(|v| unit(v.order)).sum();
        let edges: BigRational = self.edges.iter().map(|e| unit(e.order)).sum();
        vertices - edges
    }

    pub fn lcm_vertex_orders(&self) -> u64 {
        self.vertices.iter().fold(1, |acc, v| acc.lcm(&v.order))
    }

    /// `rank(F) = 1 − m·χ(G)` for a free subgroup `F` of index `m`.
    pub fn free_rank(&self, m: u64) -> Result<i64> {
        let lcm = self.lcm_vertex_orders();
        if m == 0 || m % lcm != 0 {
            return Err(Error::IndexNotMultiple { index: m, lcm });
        }
        let rank = BigRational::one() - BigRational::from_integer(BigInt::from(m)) * self.euler_characteristic();
        if !rank.is_integer() {
            return Err(Error::NonIntegralRank(rank.to_string()));
        }
        rank.to_integer().to_i64().ok_or_else(|| Error::NonIntegralRank(rank.to_string()))
    }

    pub fn euler_report(&self, multiples: u64) -> Result<EulerReport> {
        let lcm = self.lcm_vertex_orders();
        let ranks = (1..=multiples)
            .map(|t| Ok(RankEntry { index: lcm * t, rank: self.free_rank(lcm * t)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(EulerReport { chi: self.euler_characteristic().to_string(), lcm_orders: lcm, ranks })
    }

    /// Evaluate the index bounds at free-subgroup index `m`:
    /// (a) `[G_v : G_e] < 3·rank + 2` for every edge and endpoint,
    /// (b) `[G : F G_e] = m/|G_e| < 6·rank` when reduced and not dihedral.
    /// Both always hold for reduced input, so a violation there is reported
    /// as a defect.
    pub fn check_bounds(&self, m: u64) -> Result<BoundsReport> {
        let rank = self.free_rank(m)?;
        let reduced = self.is_reduced();
        let dihedral = self.is_dihedral_type();
        let skip_b = if !reduced {
            Some("graph is not reduced".to_string())
        } else if dihedral {
            Some("graph is of dihedral type".to_string())
        } else {
            None
        };
        let mut defects = Vec::new();
        let edges: Vec<EdgeBounds> = self
            .edges
            .iter()
            .map(|e| {
                let mut ends = vec![e.d0];
                if !e.is_loop() {
                    ends.push(e.d1);
                }
                let vertex_index: Vec<VertexIndexBound> = ends
                    .into_iter()
                    .map(|v| {
                        let index = self.vertices[v].order / e.order;
                        let holds = (index as i128) < 3 * rank as i128 + 2;
                        VertexIndexBound { vertex: self.vertices[v].id.clone(), index, holds }
                    })
                    .collect();
                let coset_index = m / e.order;
                let holds_b = skip_b.is_none().then(|| (coset_index as i128) < 6 * rank as i128);
                if reduced {
                    for b in vertex_index.iter().filter(|b| !b.holds) {
                        defects.push(format!("(a) fails at edge `{}`, vertex `{}`", e.id, b.vertex));
                    }
                }
                if holds_b == Some(false) {
                    defects.push(format!("(b) fails at edge `{}`", e.id));
                }
                EdgeBounds { edge: e.id.clone(), vertex_index, coset_index, holds_b }
            })
            .collect();
        Ok(BoundsReport {
            index: m,
            rank,
            reduced,
            dihedral,
            bound_b_skipped: skip_b,
            fictitious_edges: self.fictitious_edges().into_iter().map(String::from).collect(),
            edges,
            defects,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub index: u64,
    pub rank: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    /// Exact rational, `a/b` or an integer.
    pub chi: String,
    pub lcm_orders: u64,
    pub ranks: Vec<RankEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexIndexBound {
    pub vertex: String,
    /// `[G_v : G_e]`
    pub index: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBounds {
    pub edge: String,
    pub vertex_index: Vec<VertexIndexBound>,
    /// `[G : F G_e]`
    pub coset_index: u64,
    pub holds_b: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub index: u64,
    pub rank: i64,
    pub reduced: bool,
    pub dihedral: bool,
    pub bound_b_skipped: Option<String>,
    pub fictitious_edges: Vec<String>,
    pub edges: Vec<EdgeBounds>,
    pub defects: Vec<String>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Convenience constructor from `(id, order)` vertices and
/// `(id, d0, d1, order)` edges given by vertex position.
pub fn build(vertices: &[(&str, u64)], edges: &[(&str, usize, usize, u64)]) -> Result<GraphOfFiniteGroups> {
    GraphOfFiniteGroups::new(
        vertices.iter().map(|&(id, order)| GogVertex { id: id.into(), order }).collect(),
        edges.iter().map(|&(id, d0, d1, order)| GogEdge { id: id.into(), d0, d1, order }).collect(),
    )
}
