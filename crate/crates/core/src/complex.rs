//! Finite simplicial complexes of dimension at most two.
//!
//! A [`Complex2`] stores its vertex labels in canonical (sorted) order and
//! refers to vertices by their position in that order. Edges and triangles are
//! sorted index tuples kept in lexicographic order, so a simplex's position in
//! its dimension's list is its canonical index. Every edit returns a new
//! complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A vertex label. Integers sort numerically and before all strings; strings
/// sort lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<i32> for Label {
    fn from(v: i32) -> Self {
        Label::Int(v.into())
    }
}

impl From<usize> for Label {
    fn from(v: usize) -> Self {
        Label::Int(v as i64)
    }
}

impl From<&str> for Label {
    fn from(v: &str) -> Self {
        Label::Str(v.to_owned())
    }
}

impl From<String> for Label {
    fn from(v: String) -> Self {
        Label::Str(v)
    }
}

/// Position of a simplex within its dimension's canonical order. Only valid
/// for the complex it was obtained from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub dimension: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn vertex(index: usize) -> Self {
        Self {
            dimension: 0,
            index,
        }
    }

    pub fn edge(index: usize) -> Self {
        Self {
            dimension: 1,
            index,
        }
    }

    pub fn triangle(index: usize) -> Self {
        Self {
            dimension: 2,
            index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("degenerate simplex {simplex}: repeated vertex")]
    DegenerateSimplex { simplex: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(Label),
    #[error("{id:?} is not a {expected} of this complex")]
    NotASimplex {
        id: SimplexId,
        expected: &'static str,
    },
    #[error("edge {edge} is not maximal: it lies in {degree} triangle(s)")]
    NotMaximal { edge: String, degree: usize },
    #[error("endpoints of edge {edge} are connected in the complex without it; delete it instead")]
    EndpointsConnected { edge: String },
    #[error("contracting edge {edge} does not give a simplicial complex")]
    NonSimplicialQuotient { edge: String },
}

pub type Edge = [usize; 2];
pub type Triangle = [usize; 3];

/// The graph of a vertex link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    pub vertices: Vec<Label>,
    pub edges: Vec<[Label; 2]>,
}

impl LinkGraph {
    /// Whether the graph is a single cycle (connected, every vertex of degree 2).
    pub fn is_cycle(&self) -> bool {
        if self.vertices.len() < 3 || self.edges.len() != self.vertices.len() {
            return false;
        }
        let mut adj: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
        for [a, b] in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if adj.len() != self.vertices.len() || adj.values().any(|n| n.len() != 2) {
            return false;
        }
        let start = &self.vertices[0];
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Complex2 {
    vertices: Vec<Label>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
}

fn sorted3<T: Ord + Clone>(t: &[T; 3]) -> [T; 3] {
    let mut s = t.clone();
    s.sort();
    s
}

fn show<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl Complex2 {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds the closure of the given simplices. Repeated simplices collapse
    /// to one; a simplex with a repeated vertex is rejected.
    pub fn from_triangles<L: Into<Label> + Clone>(
        triangles: &[[L; 3]],
        extra_edges: &[[L; 2]],
        extra_vertices: &[L],
    ) -> Result<Self, ComplexError> {
        let tris: Vec<[Label; 3]> = triangles
            .iter()
            .map(|t| t.clone().map(Into::into))
            .collect();
        let edges: Vec<[Label; 2]> = extra_edges
            .iter()
            .map(|e| e.clone().map(Into::into))
            .collect();
        let verts: Vec<Label> = extra_vertices.iter().cloned().map(Into::into).collect();
        Self::from_labeled(tris, edges, verts)
    }

    pub fn from_labeled(
        triangles: Vec<[Label; 3]>,
        extra_edges: Vec<[Label; 2]>,
        extra_vertices: Vec<Label>,
    ) -> Result<Self, ComplexError> {
        for t in &triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(ComplexError::DegenerateSimplex { simplex: show(t) });
            }
        }
        for e in &extra_edges {
            if e[0] == e[1] {
                return Err(ComplexError::DegenerateSimplex { simplex: show(e) });
            }
        }
        let mut labels: BTreeSet<Label> = extra_vertices.into_iter().collect();
        for t in &triangles {
            labels.extend(t.iter().cloned());
        }
        for e in &extra_edges {
            labels.extend(e.iter().cloned());
        }
        let vertices: Vec<Label> = labels.into_iter().collect();
        let pos = |l: &Label| vertices.binary_search(l).expect("label collected above");
        let tri_set: BTreeSet<Triangle> = triangles
            .iter()
            .map(|t| sorted3(&[pos(&t[0]), pos(&t[1]), pos(&t[2])]))
            .collect();
        let mut edge_set: BTreeSet<Edge> = extra_edges
            .iter()
            .map(|e| {
                let (a, b) = (pos(&e[0]), pos(&e[1]));
                [a.min(b), a.max(b)]
            })
            .collect();
        for &[a, b, c] in &tri_set {
            edge_set.extend([[a, b], [a, c], [b, c]]);
        }
        Ok(Self {
            vertices,
            edges: edge_set.into_iter().collect(),
            triangles: tri_set.into_iter().collect(),
        })
    }

    /// Builds from already-indexed simplices over a sorted, deduplicated label list.
    pub(crate) fn from_indexed(
        vertices: Vec<Label>,
        edges: BTreeSet<Edge>,
        triangles: BTreeSet<Triangle>,
    ) -> Self {
        let mut edges = edges;
        for &[a, b, c] in &triangles {
            edges.extend([[a, b], [a, c], [b, c]]);
        }
        Self {
            vertices,
            edges: edges.into_iter().collect(),
            triangles: triangles.into_iter().collect(),
        }
    }

    /// Keeps only the listed vertex indices (which must be closed under the
    /// given simplices) and renumbers.
    pub(crate) fn restrict(
        &self,
        keep_vertices: &BTreeSet<usize>,
        edges: &BTreeSet<Edge>,
        triangles: &BTreeSet<Triangle>,
    ) -> Self {
        let mut new_index = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::with_capacity(keep_vertices.len());
        for (n, &v) in keep_vertices.iter().enumerate() {
            new_index[v] = n;
            vertices.push(self.vertices[v].clone());
        }
        let map = |v: usize| {
            let n = new_index[v];
            debug_assert!(n != usize::MAX, "simplex uses a removed vertex");
            n
        };
        Self::from_indexed(
            vertices,
            edges.iter().map(|e| e.map(map)).collect(),
            triangles.iter().map(|t| t.map(map)).collect(),
        )
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Number of simplices of each dimension (α₀, α₁, α₂).
    pub fn counts(&self) -> [usize; 3] {
        [self.vertices.len(), self.edges.len(), self.triangles.len()]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        if !self.triangles.is_empty() {
            Some(2)
        } else if !self.edges.is_empty() {
            Some(1)
        } else if !self.vertices.is_empty() {
            Some(0)
        } else {
            None
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &Label) -> Result<usize, ComplexError> {
        self.vertices
            .binary_search(label)
            .map_err(|_| ComplexError::UnknownVertex(label.clone()))
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        let e = [e[0].min(e[1]), e[0].max(e[1])];
        self.edges.binary_search(&e).ok()
    }

    pub fn triangle_index(&self, t: Triangle) -> Option<usize> {
        self.triangles.binary_search(&sorted3(&t)).ok()
    }

    pub fn edge_labels(&self, e: Edge) -> [Label; 2] {
        e.map(|v| self.vertices[v].clone())
    }

    pub fn triangle_labels(&self, t: Triangle) -> [Label; 3] {
        t.map(|v| self.vertices[v].clone())
    }

    /// Looks up a triangle by labels in any order.
    pub fn find_triangle(&self, t: &[Label; 3]) -> Result<Option<usize>, ComplexError> {
        let idx = [
            self.vertex_index(&t[0])?,
            self.vertex_index(&t[1])?,
            self.vertex_index(&t[2])?,
        ];
        Ok(self.triangle_index(idx))
    }

    pub fn find_edge(&self, e: &[Label; 2]) -> Result<Option<usize>, ComplexError> {
        Ok(self.edge_index([self.vertex_index(&e[0])?, self.vertex_index(&e[1])?]))
    }

    fn edge_name(&self, e: Edge) -> String {
        show(&self.edge_labels(e))
    }

    /// Number of triangles containing each edge, indexed like [`Self::edges`].
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.edges.len()];
        for &[a, b, c] in &self.triangles {
            for e in [[a, b], [a, c], [b, c]] {
                deg[self.edge_index(e).expect("closure")] += 1;
            }
        }
        deg
    }

    pub fn edge_degree(&self, e: SimplexId) -> Result<usize, ComplexError> {
        let edge = self.checked_edge(e)?;
        Ok(self
            .triangles
            .iter()
            .filter(|t| t.contains(&edge[0]) && t.contains(&edge[1]))
            .count())
    }

    fn checked_edge(&self, e: SimplexId) -> Result<Edge, ComplexError> {
        if e.dimension != 1 || e.index >= self.edges.len() {
            return Err(ComplexError::NotASimplex {
                id: e,
                expected: "edge",
            });
        }
        Ok(self.edges[e.index])
    }

    fn checked_triangle(&self, t: SimplexId) -> Result<Triangle, ComplexError> {
        if t.dimension != 2 || t.index >= self.triangles.len() {
            return Err(ComplexError::NotASimplex {
                id: t,
                expected: "triangle",
            });
        }
        Ok(self.triangles[t.index])
    }

    /// Vertex adjacency lists of the 1-skeleton.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn link_of_vertex(&self, v: &Label) -> Result<LinkGraph, ComplexError> {
        let idx = self.vertex_index(v)?;
        Ok(self.link_by_index(idx))
    }

    pub(crate) fn link_by_index(&self, v: usize) -> LinkGraph {
        let mut verts = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for &[a, b] in &self.edges {
            if a == v {
                verts.insert(b);
            } else if b == v {
                verts.insert(a);
            }
        }
        for t in &self.triangles {
            if t.contains(&v) {
                let rest: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
                edges.insert([rest[0], rest[1]]);
            }
        }
        LinkGraph {
            vertices: verts
                .into_iter()
                .map(|x| self.vertices[x].clone())
                .collect(),
            edges: edges
                .into_iter()
                .map(|e: Edge| self.edge_labels(e))
                .collect(),
        }
    }

    /// Component index of every vertex (by 1-skeleton connectivity) and the
    /// number of components. Components are numbered by smallest vertex.
    pub(crate) fn component_ids(&self) -> (Vec<usize>, usize) {
        let adj = self.neighbors();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut count = 0;
        for s in 0..self.vertices.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn connected_components(&self) -> Vec<Vec<Label>> {
        let (comp, count) = self.component_ids();
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(self.vertices[v].clone());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().1 == 1
    }

    /// Removes the open 2-simplex, keeping its boundary.
    pub fn remove_open_triangle(&self, t: SimplexId) -> Result<Complex2, ComplexError> {
        self.checked_triangle(t)?;
        let mut out = self.clone();
        out.triangles.remove(t.index);
        Ok(out)
    }

    /// Removes a triangle-free edge, keeping its endpoints.
    pub fn delete_maximal_edge(&self, e: SimplexId) -> Result<Complex2, ComplexError> {
        let edge = self.checked_edge(e)?;
        let degree = self.edge_degree(e)?;
        if degree != 0 {
            return Err(ComplexError::NotMaximal {
                edge: self.edge_name(edge),
                degree,
            });
        }
        let mut out = self.clone();
        out.edges.remove(e.index);
        Ok(out)
    }

    /// Identifies the endpoints of a triangle-free edge whose endpoints lie in
    /// different components once the edge is removed. The smaller label survives.
    pub fn contract_maximal_edge(&self, e: SimplexId) -> Result<Complex2, ComplexError> {
        let edge = self.checked_edge(e)?;
        let degree = self.edge_degree(e)?;
        if degree != 0 {
            return Err(ComplexError::NotMaximal {
                edge: self.edge_name(edge),
                degree,
            });
        }
        let [keep, gone] = edge;
        let without = self.delete_maximal_edge(e)?;
        let (comp, _) = without.component_ids();
        if comp[keep] == comp[gone] {
            return Err(ComplexError::EndpointsConnected {
                edge: self.edge_name(edge),
            });
        }
        let map = |v: usize| if v == gone { keep } else { v };
        let edges: BTreeSet<Edge> = without
            .edges
            .iter()
            .map(|&[a, b]| {
                let (a, b) = (map(a), map(b));
                [a.min(b), a.max(b)]
            })
            .collect();
        let triangles: BTreeSet<Triangle> = without
            .triangles
            .iter()
            .map(|t| sorted3(&t.map(map)))
            .collect();
        if edges.len() != without.edges.len()
            || triangles.len() != without.triangles.len()
            || edges.iter().any(|e| e[0] == e[1])
            || triangles.iter().any(|t| t[0] == t[1] || t[1] == t[2])
        {
            return Err(ComplexError::NonSimplicialQuotient {
                edge: self.edge_name(edge),
            });
        }
        let keep_vertices: BTreeSet<usize> =
            (0..self.vertices.len()).filter(|&v| v != gone).collect();
        Ok(self.restrict(&keep_vertices, &edges, &triangles))
    }

    /// Renames vertices; the map must be injective on this complex's labels.
    pub fn relabel<F: FnMut(&Label) -> Label>(&self, mut f: F) -> Complex2 {
        let new: Vec<Label> = self.vertices.iter().map(&mut f).collect();
        let tris = self
            .triangles
            .iter()
            .map(|t| t.map(|v| new[v].clone()))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| e.map(|v| new[v].clone()))
            .collect();
        let out = Complex2::from_labeled(tris, edges, new.clone()).expect("relabel is injective");
        assert_eq!(
            out.vertices.len(),
            self.vertices.len(),
            "relabel map is not injective"
        );
        out
    }

    /// Labels not yet used by this complex: consecutive integers after the
    /// largest integer label, or fresh strings when integers are absent.
    pub fn fresh_labels(&self, count: usize) -> Vec<Label> {
        let all_int = self.vertices.iter().all(|l| matches!(l, Label::Int(_)));
        if all_int {
            let start = self
                .vertices
                .iter()
                .filter_map(|l| match l {
                    Label::Int(i) => Some(*i),
                    Label::Str(_) => None,
                })
                .max()
                .map_or(0, |m| m + 1);
            return (0..count as i64).map(|i| Label::Int(start + i)).collect();
        }
        let mut out = Vec::with_capacity(count);
        let mut n = 0usize;
        while out.len() < count {
            let l = Label::Str(format!("_v{n}"));
            if self.vertices.binary_search(&l).is_err() {
                out.push(l);
            }
            n += 1;
        }
        out
    }

    /// Full structural re-scan of the closure and ordering invariants.
    pub fn check_invariants(&self) -> bool {
        let sorted_unique = |v: &[Label]| v.windows(2).all(|w| w[0] < w[1]);
        let n = self.vertices.len();
        sorted_unique(&self.vertices)
            && self.edges.windows(2).all(|w| w[0] < w[1])
            && self.triangles.windows(2).all(|w| w[0] < w[1])
            && self.edges.iter().all(|e| e[0] < e[1] && e[1] < n)
            && self
                .triangles
                .iter()
                .all(|&[a, b, c]| a < b && b < c && c < n)
            && self.triangles.iter().all(|&[a, b, c]| {
                [[a, b], [a, c], [b, c]]
                    .iter()
                    .all(|e| self.edges.binary_search(e).is_ok())
            })
    }
}

impl fmt::Debug for Complex2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2] = self.counts();
        write!(f, "Complex2(α=({a0},{a1},{a2}); triangles: ")?;
        let tris: Vec<String> = self
            .triangles
            .iter()
            .map(|&t| show(&self.triangle_labels(t)))
            .collect();
        write!(f, "{})", tris.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> Complex2 {
        Complex2::from_triangles(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]], &[], &[]).unwrap()
    }

    fn torus7() -> Complex2 {
        let mut t = Vec::new();
        for i in 0..7 {
            t.push([i, (i + 1) % 7, (i + 3) % 7]);
            t.push([i, (i + 2) % 7, (i + 3) % 7]);
        }
        Complex2::from_triangles(&t, &[], &[]).unwrap()
    }

    fn id_of_edge(k: &Complex2, a: i64, b: i64) -> SimplexId {
        SimplexId::edge(
            k.find_edge(&[Label::Int(a), Label::Int(b)])
                .unwrap()
                .unwrap(),
        )
    }

    #[test]
    fn closure_counts() {
        let k = Complex2::from_triangles(&[[1, 2, 3]], &[], &[]).unwrap();
        assert_eq!(k.counts(), [3, 3, 1]);
        let t = tetra();
        assert_eq!(t.counts(), [4, 6, 4]);
        assert_eq!(t.euler_characteristic(), 2);
        assert!(t.check_invariants());
    }

    #[test]
    fn degenerate_simplex_rejected() {
        let err = Complex2::from_triangles(&[[1, 1, 2]], &[], &[]).unwrap_err();
        assert_eq!(
            err,
            ComplexError::DegenerateSimplex {
                simplex: "[1, 1, 2]".into()
            }
        );
        assert!(Complex2::from_triangles::<i64>(&[], &[[3, 3]], &[]).is_err());
    }

    #[test]
    fn duplicate_triangles_collapse() {
        let k = Complex2::from_triangles(&[[1, 2, 3], [3, 2, 1]], &[], &[]).unwrap();
        assert_eq!(k.num_triangles(), 1);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(tetra().euler_characteristic(), 2);
        let t = torus7();
        assert_eq!(t.counts(), [7, 21, 14]);
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(Complex2::empty().euler_characteristic(), 0);
    }

    #[test]
    fn edge_degree_examples() {
        let k = Complex2::from_triangles(&[[1, 2, 3]], &[], &[]).unwrap();
        for i in 0..3 {
            assert_eq!(k.edge_degree(SimplexId::edge(i)).unwrap(), 1);
        }
        let t = tetra();
        assert!(t.edge_degrees().iter().all(|&d| d == 2));
        let book = Complex2::from_triangles(&[[1, 2, 3], [1, 2, 4], [1, 2, 5]], &[], &[]).unwrap();
        assert_eq!(book.edge_degree(id_of_edge(&book, 1, 2)).unwrap(), 3);
        assert!(matches!(
            book.edge_degree(SimplexId::triangle(0)),
            Err(ComplexError::NotASimplex { .. })
        ));
    }

    #[test]
    fn link_examples() {
        let t = tetra();
        let l = t.link_of_vertex(&Label::Int(1)).unwrap();
        assert_eq!(l.vertices.len(), 3);
        assert_eq!(l.edges.len(), 3);
        assert!(l.is_cycle());

        let k = Complex2::from_triangles(&[[1, 2, 3]], &[], &[]).unwrap();
        let l = k.link_of_vertex(&Label::Int(1)).unwrap();
        assert_eq!(l.edges, vec![[Label::Int(2), Label::Int(3)]]);

        let w = Complex2::from_triangles(&[[1, 2, 3], [1, 4, 5]], &[], &[]).unwrap();
        let l = w.link_of_vertex(&Label::Int(1)).unwrap();
        assert_eq!(l.edges.len(), 2);
        assert_eq!(l.vertices.len(), 4);
        assert!(!l.is_cycle());

        assert!(matches!(
            t.link_of_vertex(&Label::Int(9)),
            Err(ComplexError::UnknownVertex(_))
        ));
    }

    #[test]
    fn component_examples() {
        assert_eq!(tetra().connected_components().len(), 1);
        let two = Complex2::from_triangles(&[[1, 2, 3], [4, 5, 6]], &[], &[]).unwrap();
        assert_eq!(two.connected_components().len(), 2);
        assert!(Complex2::empty().connected_components().is_empty());
    }

    #[test]
    fn remove_open_triangle_examples() {
        let t = tetra()
            .remove_open_triangle(SimplexId::triangle(0))
            .unwrap();
        assert_eq!(t.counts(), [4, 6, 3]);
        assert_eq!(t.euler_characteristic(), 1);

        let k = Complex2::from_triangles(&[[1, 2, 3]], &[], &[]).unwrap();
        let hollow = k.remove_open_triangle(SimplexId::triangle(0)).unwrap();
        assert_eq!(hollow.euler_characteristic(), 0);
        assert!(hollow.check_invariants());
        assert!(hollow.remove_open_triangle(SimplexId::triangle(0)).is_err());
    }

    #[test]
    fn contract_examples() {
        let k = Complex2::from_triangles(&[[1, 2, 3], [4, 5, 6]], &[[3, 4]], &[]).unwrap();
        let e = id_of_edge(&k, 3, 4);
        let c = k.contract_maximal_edge(e).unwrap();
        assert_eq!(c.euler_characteristic(), k.euler_characteristic());
        assert_eq!(c.counts(), [5, 6, 2]);
        assert!(c.check_invariants());
        assert_eq!(c.link_of_vertex(&Label::Int(3)).unwrap().edges.len(), 2);

        let path = Complex2::from_triangles::<i64>(&[], &[[1, 2]], &[]).unwrap();
        let p = path.contract_maximal_edge(SimplexId::edge(0)).unwrap();
        assert_eq!(p.counts(), [1, 0, 0]);

        let t = tetra();
        assert!(matches!(
            t.contract_maximal_edge(SimplexId::edge(0)),
            Err(ComplexError::NotMaximal { degree: 2, .. })
        ));

        let cyc = Complex2::from_triangles::<i64>(&[], &[[1, 2], [2, 3], [1, 3]], &[]).unwrap();
        assert!(matches!(
            cyc.contract_maximal_edge(SimplexId::edge(0)),
            Err(ComplexError::EndpointsConnected { .. })
        ));
    }

    #[test]
    fn chi_bookkeeping_for_edits() {
        let k = Complex2::from_triangles(&[[1, 2, 3]], &[[3, 4], [4, 1]], &[]).unwrap();
        let e = id_of_edge(&k, 3, 4);
        let d = k.delete_maximal_edge(e).unwrap();
        assert_eq!(d.euler_characteristic(), k.euler_characteristic() + 1);
        assert!(d.check_invariants());
    }

    #[test]
    fn vertex_degree_sums_are_even() {
        let k = Complex2::from_triangles(
            &[[1, 2, 3], [1, 2, 4], [1, 2, 5], [2, 3, 6], [4, 5, 6]],
            &[],
            &[],
        )
        .unwrap();
        let deg = k.edge_degrees();
        for v in 0..k.num_vertices() {
            let sum: usize = k
                .edges()
                .iter()
                .zip(&deg)
                .filter(|(e, _)| e.contains(&v))
                .map(|(_, d)| d)
                .sum();
            assert_eq!(sum % 2, 0);
        }
    }

    #[test]
    fn label_order_ints_before_strings() {
        let mut v = vec![
            Label::from("b"),
            Label::Int(10),
            Label::from("a"),
            Label::Int(2),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Label::Int(2),
                Label::Int(10),
                Label::from("a"),
                Label::from("b")
            ]
        );
    }

    #[test]
    fn fresh_labels_avoid_existing() {
        let t = tetra();
        assert_eq!(t.fresh_labels(2), vec![Label::Int(5), Label::Int(6)]);
        let s = Complex2::from_triangles(&[["a", "b", "_v0"]], &[], &[]).unwrap();
        assert_eq!(s.fresh_labels(1), vec![Label::from("_v1")]);
    }
}
