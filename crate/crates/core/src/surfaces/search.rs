//! Exhaustive enumeration of small 2-complexes in which every edge lies in
//! exactly two triangles (or, for the parity check, two triangles except one
//! edge in three).
//!
//! Complexes are grown from a seed by repeatedly closing the least edge that
//! lies in exactly one triangle, branching over every admissible third
//! vertex. Unused vertices are interchangeable, so only the least unused one
//! is ever introduced. Completed complexes are deduplicated by canonical form.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_triangles, Encoding};
use super::{classify, SurfaceError, SurfaceId};
use crate::complex::Complex2;

pub const MAX_SEARCH_VERTICES: usize = 8;
const N: usize = MAX_SEARCH_VERTICES;
const FRONTIER_DEPTH: usize = 5;

#[derive(Clone, Copy, Debug)]
pub struct SearchProgress {
    pub phase: &'static str,
    pub done: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub target: SurfaceId,
    pub max_vertices: usize,
    /// Least triangle count among complexes classified as the target.
    pub min_triangles: Option<usize>,
    /// Canonical triangle list of a minimal witness.
    pub witness: Option<Vec<[usize; 3]>>,
    /// Isomorphism classes of closed surfaces met, of any type.
    pub surface_classes: usize,
    /// Isomorphism classes classified as the target.
    pub target_classes: usize,
    pub nodes: u64,
}

impl SearchResult {
    pub fn witness_complex(&self) -> Option<Complex2> {
        self.witness
            .as_ref()
            .map(|t| Complex2::from_triangles(t, &[], &[]).expect("witness triangles"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParitySearchResult {
    pub max_vertices: usize,
    /// Canonical triangle lists of every complex found (expected: none).
    pub found: Vec<Vec<[usize; 3]>>,
    pub nodes: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Closed surfaces: all edge degrees 2, vertex links single cycles.
    Surface,
    /// All edge degrees 2 except the seed edge {0, 1}, whose degree is given.
    Exceptional(u8),
}

#[derive(Clone)]
struct State {
    n: usize,
    mode: Mode,
    deg: [[u8; N]; N],
    // link adjacency: link_adj[v][u] has bit w iff {v, u, w} is a triangle
    link_adj: [[u8; N]; N],
    tris: Vec<[usize; 3]>,
    used: u8,
}

impl State {
    fn new(n: usize, mode: Mode) -> Self {
        Self {
            n,
            mode,
            deg: [[0; N]; N],
            link_adj: [[0; N]; N],
            tris: Vec::new(),
            used: 0,
        }
    }

    fn cap(&self, a: usize, b: usize) -> u8 {
        match self.mode {
            Mode::Exceptional(d) if a.min(b) == 0 && a.max(b) == 1 => d,
            _ => 2,
        }
    }

    fn has_triangle(&self, [a, b, c]: [usize; 3]) -> bool {
        self.link_adj[a][b] & (1 << c) != 0
    }

    fn toggle(&mut self, t: [usize; 3], add: bool) {
        let [a, b, c] = t;
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            if add {
                self.deg[x][y] += 1;
                self.deg[y][x] += 1;
            } else {
                self.deg[x][y] -= 1;
                self.deg[y][x] -= 1;
            }
            // z sees the link edge {x, y}
            self.link_adj[z][x] ^= 1 << y;
            self.link_adj[z][y] ^= 1 << x;
        }
        if add {
            self.tris.push(t);
            self.used |= (1 << a) | (1 << b) | (1 << c);
        } else {
            self.tris.pop();
            self.used = self.tris.iter().flatten().fold(0, |m, &v| m | (1 << v));
        }
    }

    fn link_vertices(&self, v: usize) -> u8 {
        (0..self.n)
            .filter(|&u| self.deg[v][u] > 0)
            .fold(0, |m, u| m | (1 << u))
    }

    /// Component of `start` in the link graph of `v`.
    fn link_component(&self, v: usize, start: usize) -> u8 {
        let mut comp = 1u8 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let next = self.link_adj[v][u] & !comp;
            comp |= next;
            frontier |= next;
        }
        comp
    }

    /// A closed cycle in a vertex link must be the entire link.
    fn link_prefix_ok(&self, v: usize) -> bool {
        let all = self.link_vertices(v);
        let mut rest = all;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            let comp = self.link_component(v, s);
            rest &= !comp;
            let closed = (0..self.n)
                .filter(|&u| comp & (1 << u) != 0)
                .all(|u| self.deg[v][u] == 2);
            if closed && comp != all {
                return false;
            }
        }
        true
    }

    fn link_is_cycle(&self, v: usize) -> bool {
        let all = self.link_vertices(v);
        all != 0
            && (0..self.n)
                .filter(|&u| all & (1 << u) != 0)
                .all(|u| self.deg[v][u] == 2)
            && self.link_component(v, all.trailing_zeros() as usize) == all
    }

    fn open_edge(&self) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.deg[a][b] == 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn children(&self, a: usize, b: usize) -> Vec<[usize; 3]> {
        let first_unused = (0..self.n).find(|&v| self.used & (1 << v) == 0);
        (0..self.n)
            .filter(|&w| w != a && w != b)
            .filter(|&w| self.used & (1 << w) != 0 || Some(w) == first_unused)
            .filter(|&w| self.deg[a][w] < self.cap(a, w) && self.deg[b][w] < self.cap(b, w))
            .map(|w| {
                let mut t = [a, b, w];
                t.sort_unstable();
                t
            })
            .filter(|&t| !self.has_triangle(t))
            .collect()
    }

    fn complete(&self) -> bool {
        match self.mode {
            Mode::Surface => (0..self.n)
                .filter(|&v| self.used & (1 << v) != 0)
                .all(|v| self.link_is_cycle(v)),
            Mode::Exceptional(_) => true,
        }
    }

    /// Depth-first closing search. With `frontier`, stops at `depth` added
    /// triangles and records the open states instead of descending.
    fn dfs(
        &mut self,
        found: &mut Vec<Encoding>,
        nodes: &mut u64,
        frontier: Option<(&mut Vec<State>, usize)>,
    ) {
        *nodes += 1;
        let Some((a, b)) = self.open_edge() else {
            if self.complete() {
                found.push(canonical_triangles(&self.tris));
            }
            return;
        };
        let (mut frontier, depth) = match frontier {
            Some((f, d)) => (Some(f), d),
            None => (None, usize::MAX),
        };
        if depth == 0 {
            frontier.expect("depth implies frontier").push(self.clone());
            return;
        }
        for t in self.children(a, b) {
            self.toggle(t, true);
            if self.mode != Mode::Surface || t.iter().all(|&v| self.link_prefix_ok(v)) {
                let sub = frontier.as_mut().map(|f| (&mut **f, depth - 1));
                self.dfs(found, nodes, sub);
            }
            self.toggle(t, false);
        }
    }
}

/// Runs the closing search from `seed` in parallel over a shallow frontier.
/// Returns canonical forms of completed complexes (sorted, deduplicated) and
/// the node count. The result is independent of scheduling.
fn run(seed: State, progress: Option<&(dyn Fn(SearchProgress) + Sync)>) -> (Vec<Encoding>, u64) {
    let mut found = Vec::new();
    let mut nodes = 0;
    let mut frontier = Vec::new();
    let mut root = seed;
    root.dfs(
        &mut found,
        &mut nodes,
        Some((&mut frontier, FRONTIER_DEPTH)),
    );
    let total = frontier.len();
    let done = std::sync::atomic::AtomicUsize::new(0);
    let parts: Vec<(Vec<Encoding>, u64)> = frontier
        .into_par_iter()
        .map(|mut s| {
            let mut f = Vec::new();
            let mut n = 0;
            s.dfs(&mut f, &mut n, None);
            f.sort_unstable();
            f.dedup();
            let d = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            if let Some(p) = progress {
                p(SearchProgress {
                    phase: "closing",
                    done: d,
                    total,
                });
            }
            (f, n)
        })
        .collect();
    for (f, n) in parts {
        found.extend(f);
        nodes += n;
    }
    found.sort_unstable();
    found.dedup();
    (found, nodes)
}

fn check_guard(max_vertices: usize) -> Result<(), SurfaceError> {
    if max_vertices > MAX_SEARCH_VERTICES {
        return Err(SurfaceError::SearchGuard {
            requested: max_vertices,
            limit: MAX_SEARCH_VERTICES,
        });
    }
    Ok(())
}

/// Least number of triangles of a triangulation of `target` on at most
/// `max_vertices` vertices, by exhaustive enumeration of closed surfaces.
pub fn desk_search(
    max_vertices: usize,
    target: SurfaceId,
    progress: Option<&(dyn Fn(SearchProgress) + Sync)>,
) -> Result<SearchResult, SurfaceError> {
    check_guard(max_vertices)?;
    let mut result = SearchResult {
        target,
        max_vertices,
        min_triangles: None,
        witness: None,
        surface_classes: 0,
        target_classes: 0,
        nodes: 0,
    };
    if max_vertices < 4 {
        return Ok(result);
    }
    let mut seed = State::new(max_vertices, Mode::Surface);
    seed.toggle([0, 1, 2], true);
    let (found, nodes) = run(seed, progress);
    result.nodes = nodes;
    result.surface_classes = found.len();

    let chi = target.euler_characteristic();
    let mut hits: BTreeMap<(usize, Encoding), ()> = BTreeMap::new();
    for enc in found {
        let tris: Vec<[usize; 3]> = enc.iter().map(|t| t.map(usize::from)).collect();
        let k = Complex2::from_triangles(
            &tris.iter().map(|t| t.map(|v| v as i64)).collect::<Vec<_>>(),
            &[],
            &[],
        )
        .expect("search triangles");
        if k.euler_characteristic() != chi {
            continue;
        }
        if classify(&k).surface == Some(target) {
            hits.insert((k.num_triangles(), enc), ());
        }
    }
    result.target_classes = hits.len();
    if let Some(((count, enc), ())) = hits.into_iter().next() {
        result.min_triangles = Some(count);
        result.witness = Some(enc.iter().map(|t| t.map(usize::from)).collect());
    }
    Ok(result)
}

/// Exhaustive search for complexes on at most `max_vertices` vertices in
/// which every edge lies in two triangles except one edge lying in three.
/// Such a complex cannot exist: the link of an endpoint of the exceptional
/// edge would be a graph with exactly one vertex of odd degree.
pub fn parity_obstruction_search(
    max_vertices: usize,
    progress: Option<&(dyn Fn(SearchProgress) + Sync)>,
) -> Result<ParitySearchResult, SurfaceError> {
    exceptional_edge_search(max_vertices, 3, progress)
}

/// Complexes in which one edge lies in `degree` triangles and every other
/// edge in two.
pub fn exceptional_edge_search(
    max_vertices: usize,
    degree: u8,
    progress: Option<&(dyn Fn(SearchProgress) + Sync)>,
) -> Result<ParitySearchResult, SurfaceError> {
    check_guard(max_vertices)?;
    let mut result = ParitySearchResult {
        max_vertices,
        found: Vec::new(),
        nodes: 0,
    };
    let apexes = usize::from(degree);
    if max_vertices < apexes + 2 {
        return Ok(result);
    }
    // w.l.o.g. the exceptional edge is {0, 1} with apexes 2, 3, ...
    let mut seed = State::new(max_vertices, Mode::Exceptional(degree));
    for apex in 2..apexes + 2 {
        seed.toggle([0, 1, apex], true);
    }
    let (found, nodes) = run(seed, progress);
    result.nodes = nodes;
    result.found = found
        .into_iter()
        .map(|enc| enc.iter().map(|t| t.map(usize::from)).collect())
        .collect();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_on_four_vertices() {
        let r = desk_search(4, SurfaceId::SPHERE, None).unwrap();
        assert_eq!(r.min_triangles, Some(4));
        assert_eq!(r.target_classes, 1);
    }

    #[test]
    fn five_vertices_only_spheres() {
        let r = desk_search(5, SurfaceId::PROJECTIVE_PLANE, None).unwrap();
        assert_eq!(r.min_triangles, None);
        // tetrahedron boundary and the bipyramid
        assert_eq!(r.surface_classes, 2);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            desk_search(9, SurfaceId::TORUS, None),
            Err(SurfaceError::SearchGuard { .. })
        ));
        assert!(parity_obstruction_search(9, None).is_err());
    }

    #[test]
    fn tiny_inputs() {
        assert_eq!(
            desk_search(3, SurfaceId::SPHERE, None)
                .unwrap()
                .min_triangles,
            None
        );
        assert!(parity_obstruction_search(4, None).unwrap().found.is_empty());
    }

    #[test]
    fn even_exceptional_degree_is_found() {
        // two tetrahedron boundaries sharing an edge
        let r = exceptional_edge_search(6, 4, None).unwrap();
        for tris in &r.found {
            let k = Complex2::from_triangles(tris, &[], &[]).unwrap();
            let mut d = k.edge_degrees();
            d.sort_unstable();
            assert_eq!(d.pop(), Some(4));
            assert!(d.iter().all(|&x| x == 2));
        }
        assert!(r.found.iter().any(|t| t.len() == 8));
        assert!(!exceptional_edge_search(8, 4, None)
            .unwrap()
            .found
            .is_empty());
    }

    #[test]
    fn parity_six_vertices_empty() {
        let r = parity_obstruction_search(6, None).unwrap();
        assert!(r.found.is_empty());
        assert!(r.nodes > 1);
    }
}
