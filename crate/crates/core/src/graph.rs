//! Finite simplicial graphs with a pinned vertex order.
//!
//! Vertices are addressed by their position in the input order. Every
//! derived object (cliques, boundary matrices, reports) is expressed in
//! terms of these positions, so the order chosen at construction time is
//! the order used for every sign computation downstream.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of vertices, stored as positions in the ambient vertex order.
pub type VertexSet = BTreeSet<usize>;

/// Finite simple graph with a fixed total order on its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<bool>>,
    neighbors: Vec<Vec<usize>>,
}

/// JSON shape of a graph document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// A clique, members strictly increasing in vertex order. May be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clique(Vec<usize>);

impl Clique {
    pub fn empty() -> Self {
        Clique(Vec::new())
    }

    /// Build a clique from vertex positions; sorts and dedups but does not
    /// check adjacency (see [`SimplicialGraph::is_clique`]).
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut members: Vec<usize> = vertices.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Clique(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The face obtained by deleting the member at `position` (0-based).
    pub fn without_position(&self, position: usize) -> Clique {
        let mut members = self.0.clone();
        members.remove(position);
        Clique(members)
    }

    pub fn names<'a>(&self, g: &'a SimplicialGraph) -> Vec<&'a str> {
        self.0.iter().map(|&v| g.name(v)).collect()
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl SimplicialGraph {
    /// Build a graph from vertex names and edges given as position pairs.
    pub fn new<S: Into<String>>(names: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let n = names.len();
        let mut adjacency = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::SelfLoop(names[a].clone()));
            }
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }
        let neighbors = adjacency
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &x)| x).map(|(j, _)| j).collect())
            .collect();
        Ok(SimplicialGraph { names, index, adjacency, neighbors })
    }

    /// Graph on `n` vertices named `v1..vn`.
    pub fn with_numbered_vertices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, name) in doc.vertices.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (a, b) in &doc.edges {
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(Error::SelfLoop(a.clone()));
            }
            edges.push((ia.min(ib), ia.max(ib)));
        }
        edges.sort_unstable();
        edges.dedup();
        Self::new(doc.vertices.clone(), &edges)
    }

    /// Parse the graph JSON schema `{"vertices": [...], "edges": [[a,b],...]}`.
    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.vertex_count()).collect()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Edges as position pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for &b in &self.neighbors[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn check_vertices<'a, I: IntoIterator<Item = &'a usize>>(&self, set: I) -> Result<()> {
        for &v in set {
            if v >= self.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        Ok(())
    }

    /// Resolve vertex names to positions.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|n| self.index_of(n.as_ref()).ok_or_else(|| Error::UnknownVertex(n.as_ref().to_string())))
            .collect()
    }

    /// Induced subgraph on `keep`, original relative order preserved.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<SimplicialGraph> {
        self.check_vertices(keep)?;
        let kept: Vec<usize> = keep.iter().copied().collect();
        let position: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for &a in &kept {
            for &b in &self.neighbors[a] {
                if a < b {
                    if let Some(&pb) = position.get(&b) {
                        edges.push((position[&a], pb));
                    }
                }
            }
        }
        let names = kept.iter().map(|&v| self.names[v].clone()).collect();
        SimplicialGraph::new(names, &edges)
    }

    /// Neighbors of `v`, excluding `v`.
    pub fn vertex_link(&self, v: usize) -> Result<VertexSet> {
        self.check_vertices([&v])?;
        Ok(self.neighbors[v].iter().copied().collect())
    }

    /// Connectivity of the subgraph induced on `within` (empty ⇒ false).
    pub fn is_connected_within(&self, within: &VertexSet) -> bool {
        let Some(&start) = within.iter().next() else {
            return false;
        };
        let mut seen = VertexSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if within.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == within.len()
    }

    /// True iff nonempty with a single connected component.
    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&self.all_vertices())
    }

    /// Every vertex outside `sub` has a neighbor inside `sub`.
    pub fn is_dominant(&self, sub: &VertexSet) -> Result<bool> {
        self.check_vertices(sub)?;
        Ok((0..self.vertex_count())
            .filter(|v| !sub.contains(v))
            .all(|v| self.neighbors[v].iter().any(|w| sub.contains(w))))
    }

    /// Connected components of the complement graph: the indecomposable join
    /// factors. Each factor is listed in vertex order; factors are ordered by
    /// their smallest vertex.
    pub fn join_factors(&self) -> Result<Vec<VertexSet>> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut component = vec![usize::MAX; n];
        let mut factors = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let id = factors.len();
            let mut members = VertexSet::new();
            let mut stack = vec![start];
            component[start] = id;
            while let Some(v) = stack.pop() {
                members.insert(v);
                for w in 0..n {
                    if w != v && !self.adjacency[v][w] && component[w] == usize::MAX {
                        component[w] = id;
                        stack.push(w);
                    }
                }
            }
            factors.push(members);
        }
        Ok(factors)
    }

    /// Vertices adjacent to every other vertex.
    pub fn central_vertices(&self) -> VertexSet {
        let n = self.vertex_count();
        (0..n).filter(|&v| self.neighbors[v].len() + 1 == n).collect()
    }

    /// Union of the join factors lying entirely inside `sub`.
    pub fn core_subgraph(&self, sub: &VertexSet) -> Result<VertexSet> {
        self.check_vertices(sub)?;
        if self.is_empty() {
            return Ok(VertexSet::new());
        }
        Ok(self
            .join_factors()?
            .into_iter()
            .filter(|f| f.is_subset(sub))
            .flatten()
            .collect())
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().all(|&v| v < self.vertex_count())
            && members
                .iter()
                .enumerate()
                .all(|(i, &a)| members[i + 1..].iter().all(|&b| a != b && self.adjacency[a][b]))
    }

    /// All cliques with at most `max_size` members, grouped by size
    /// (`result[k]` holds the size-`k` cliques, lexicographically sorted).
    /// The empty clique is always present as `result[0]`.
    pub fn enumerate_cliques(&self, max_size: usize) -> Vec<Vec<Clique>> {
        self.enumerate_cliques_within(&self.all_vertices(), max_size)
    }

    /// Clique enumeration restricted to the induced subgraph on `within`.
    pub fn enumerate_cliques_within(&self, within: &VertexSet, max_size: usize) -> Vec<Vec<Clique>> {
        let mut by_size: Vec<Vec<Clique>> = vec![vec![Clique::empty()]];
        let candidates: Vec<usize> = within.iter().copied().filter(|&v| v < self.vertex_count()).collect();
        let mut current = Vec::new();
        self.extend_cliques(&candidates, max_size, &mut current, &mut by_size);
        for level in by_size.iter_mut() {
            level.sort();
        }
        by_size
    }

    // Ordered DFS: `candidates` are the common neighbors of `current` that
    // come after its last member, so each clique is produced exactly once.
    fn extend_cliques(
        &self,
        candidates: &[usize],
        max_size: usize,
        current: &mut Vec<usize>,
        by_size: &mut Vec<Vec<Clique>>,
    ) {
        if current.len() == max_size {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            current.push(v);
            if by_size.len() <= current.len() {
                by_size.push(Vec::new());
            }
            by_size[current.len()].push(Clique(current.clone()));
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&w| self.adjacency[v][w]).collect();
            self.extend_cliques(&next, max_size, current, by_size);
            current.pop();
        }
    }

    /// Size of a largest clique (0 for the empty graph).
    pub fn clique_number(&self) -> usize {
        self.enumerate_cliques(self.vertex_count()).len() - 1
    }

    /// Common neighbors of every member of `s`, or all vertices when `s` is empty.
    pub fn common_neighbors(&self, s: &Clique) -> VertexSet {
        match s.members().split_first() {
            None => self.all_vertices(),
            Some((&first, rest)) => self.neighbors[first]
                .iter()
                .copied()
                .filter(|&w| rest.iter().all(|&u| self.adjacency[u][w]))
                .collect(),
        }
    }

    /// Same vertices, same names, edges remapped through `perm`
    /// (`perm[i]` is the new position of old vertex `i`).
    pub fn permuted(&self, perm: &[usize]) -> Result<SimplicialGraph> {
        let n = self.vertex_count();
        let mut names = vec![String::new(); n];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.names[old].clone();
        }
        let edges: Vec<(usize, usize)> = self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        SimplicialGraph::new(names, &edges)
    }

    /// Join of two graphs: disjoint union plus every cross edge.
    pub fn join(&self, other: &SimplicialGraph) -> Result<SimplicialGraph> {
        let n = self.vertex_count();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(a, b)| (a + n, b + n)));
        for a in 0..n {
            for b in 0..other.vertex_count() {
                edges.push((a, n + b));
            }
        }
        SimplicialGraph::new(names, &edges)
    }

    pub fn complement(&self) -> SimplicialGraph {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.adjacency[a][b] {
                    edges.push((a, b));
                }
            }
        }
        SimplicialGraph::new(self.names.clone(), &edges).expect("complement of a valid graph")
    }
}

/// Small named families used by tests, the corpus and the verifier.
pub mod families {
    use super::SimplicialGraph;

    pub fn cycle(n: usize) -> SimplicialGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimplicialGraph::with_numbered_vertices(n, &edges).expect("cycle")
    }

    pub fn path(n: usize) -> SimplicialGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SimplicialGraph::with_numbered_vertices(n, &edges).expect("path")
    }

    pub fn complete(n: usize) -> SimplicialGraph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        SimplicialGraph::with_numbered_vertices(n, &edges).expect("complete")
    }

    pub fn edgeless(n: usize) -> SimplicialGraph {
        SimplicialGraph::with_numbered_vertices(n, &[]).expect("edgeless")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> SimplicialGraph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        SimplicialGraph::with_numbered_vertices(a + b, &edges).expect("complete bipartite")
    }

    /// Star with hub `v1` and `leaves` leaves.
    pub fn star(leaves: usize) -> SimplicialGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        SimplicialGraph::with_numbered_vertices(leaves + 1, &edges).expect("star")
    }

    /// Complement of three disjoint edges; its flag complex is the boundary
    /// of the octahedron.
    pub fn octahedron() -> SimplicialGraph {
        let mut edges = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if !(a % 2 == 0 && b == a + 1) {
                    edges.push((a, b));
                }
            }
        }
        SimplicialGraph::with_numbered_vertices(6, &edges).expect("octahedron")
    }

    /// Cone over `base`: a new last vertex adjacent to everything.
    pub fn cone(base: &SimplicialGraph) -> SimplicialGraph {
        let n = base.vertex_count();
        let mut names: Vec<String> = base.names().to_vec();
        names.push(format!("apex{n}"));
        let mut edges = base.edges();
        edges.extend((0..n).map(|v| (v, n)));
        SimplicialGraph::new(names, &edges).expect("cone")
    }
}
