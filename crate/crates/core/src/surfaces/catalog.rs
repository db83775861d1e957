use std::collections::BTreeSet;

use super::{classify, SurfaceError, SurfaceId};
use crate::bounds::delta_surface;
use crate::complex::Complex2;

/// Largest genus the generic construction will build.
const MAX_GENERIC_GENUS: u32 = 64;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub surface: SurfaceId,
    pub complex: Complex2,
    /// Whether the entry has the minimum possible number of triangles.
    pub minimal: bool,
    pub source: &'static str,
}

const SPHERE: &[[i64; 3]] = &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];

// Six-vertex projective plane (quotient of the icosahedron by the antipodal map).
const PROJECTIVE_PLANE: &[[i64; 3]] = &[
    [1, 2, 3],
    [1, 3, 4],
    [1, 4, 5],
    [1, 5, 6],
    [1, 2, 6],
    [2, 3, 5],
    [3, 4, 6],
    [2, 4, 5],
    [3, 5, 6],
    [2, 4, 6],
];

const KLEIN_BOTTLE: &[[i64; 3]] = &[
    [0, 1, 2],
    [0, 1, 4],
    [0, 2, 5],
    [0, 4, 5],
    [1, 2, 7],
    [1, 3, 4],
    [1, 3, 6],
    [1, 5, 6],
    [1, 5, 7],
    [2, 3, 4],
    [2, 3, 7],
    [2, 4, 6],
    [2, 5, 6],
    [3, 6, 7],
    [4, 5, 7],
    [4, 6, 7],
];

const N3: &[[i64; 3]] = &[
    [0, 1, 2],
    [0, 1, 7],
    [0, 2, 3],
    [0, 3, 8],
    [0, 4, 5],
    [0, 4, 8],
    [0, 5, 6],
    [0, 6, 7],
    [1, 2, 5],
    [1, 3, 5],
    [1, 3, 8],
    [1, 7, 8],
    [2, 3, 4],
    [2, 4, 8],
    [2, 5, 8],
    [3, 4, 6],
    [3, 5, 6],
    [4, 5, 7],
    [4, 6, 7],
    [5, 7, 8],
];

const GENUS_TWO: &[[i64; 3]] = &[
    [0, 1, 2],
    [0, 1, 7],
    [0, 2, 9],
    [0, 7, 9],
    [1, 2, 8],
    [1, 3, 5],
    [1, 3, 9],
    [1, 4, 6],
    [1, 4, 7],
    [1, 5, 6],
    [1, 8, 9],
    [2, 3, 4],
    [2, 3, 8],
    [2, 4, 7],
    [2, 6, 7],
    [2, 6, 9],
    [3, 4, 5],
    [3, 6, 7],
    [3, 6, 8],
    [3, 7, 9],
    [4, 5, 8],
    [4, 6, 9],
    [4, 8, 9],
    [5, 6, 8],
];

fn torus7() -> Vec<[i64; 3]> {
    (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

/// The stored triangulation with the minimum number of triangles, for the
/// surfaces that have one here: S2, N1, M1, N2, N3, M2.
pub fn minimal_triangulation(s: SurfaceId) -> Option<Complex2> {
    let triangles: Vec<[i64; 3]> = match (s.is_orientable(), s.genus()) {
        (true, 0) => SPHERE.to_vec(),
        (true, 1) => torus7(),
        (true, 2) => GENUS_TWO.to_vec(),
        (false, 1) => PROJECTIVE_PLANE.to_vec(),
        (false, 2) => KLEIN_BOTTLE.to_vec(),
        (false, 3) => N3.to_vec(),
        _ => return None,
    };
    Some(
        Complex2::from_triangles(&triangles, &[], &[])
            .expect("catalog triangles are non-degenerate"),
    )
}

/// A validated triangulation of `s`: the minimal one when stored, otherwise
/// the generic polygon construction.
pub fn catalog(s: SurfaceId) -> Result<CatalogEntry, SurfaceError> {
    let entry = match minimal_triangulation(s) {
        Some(complex) => CatalogEntry {
            surface: s,
            complex,
            minimal: true,
            source: "stored minimal triangulation",
        },
        None => CatalogEntry {
            surface: s,
            complex: generic_triangulation(s)?,
            minimal: false,
            source: "double barycentric subdivision of the polygon identification scheme",
        },
    };
    validate(&entry)?;
    Ok(entry)
}

fn validate(entry: &CatalogEntry) -> Result<(), SurfaceError> {
    let fail = |reason: String| SurfaceError::CatalogValidation {
        surface: entry.surface,
        reason,
    };
    let c = classify(&entry.complex);
    if c.surface != Some(entry.surface) {
        return Err(fail(format!(
            "classified as {:?} ({:?})",
            c.surface, c.failure_reason
        )));
    }
    if entry.minimal {
        let delta = delta_surface(entry.surface);
        if entry.complex.num_triangles() as i64 != delta {
            return Err(fail(format!(
                "{} triangles, expected {delta}",
                entry.complex.num_triangles()
            )));
        }
    }
    Ok(())
}

/// A Δ-complex: edges may be loops and several cells may share a vertex set.
/// Each triangle records its three vertices and, for each side, the edge cell
/// together with which local corners are that edge's tail and head.
#[derive(Clone, Debug)]
struct DeltaComplex {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<DeltaTriangle>,
}

#[derive(Clone, Copy, Debug)]
struct DeltaTriangle {
    corners: [usize; 3],
    sides: [(usize, [usize; 2]); 3],
}

impl DeltaComplex {
    /// Polygon with the given side word glued up, coned from a central vertex.
    /// Letters are `(symbol, forward)`; each symbol appears exactly twice.
    fn polygon(word: &[(usize, bool)]) -> Self {
        let n = word.len();
        // corner classes via union-find over side identifications
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let ends = |i: usize| {
            let (_, fwd) = word[i];
            let (from, to) = (i, (i + 1) % n);
            if fwd {
                [from, to]
            } else {
                [to, from]
            }
        };
        let symbols = word.iter().map(|w| w.0).max().map_or(0, |m| m + 1);
        let mut first_side = vec![None; symbols];
        for (i, &(sym, _)) in word.iter().enumerate() {
            match first_side[sym] {
                None => first_side[sym] = Some(i),
                Some(j) => {
                    let (a, b) = (ends(i), ends(j));
                    for k in 0..2 {
                        let (x, y) = (find(&mut parent, a[k]), find(&mut parent, b[k]));
                        parent[x] = y;
                    }
                }
            }
        }
        let roots: BTreeSet<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let roots: Vec<usize> = roots.into_iter().collect();
        let corner_vertex =
            |p: &mut Vec<usize>, i: usize| roots.binary_search(&find(p, i)).expect("root") + 1;
        let centre = 0;
        let vertices = roots.len() + 1;

        let mut edges = Vec::new();
        // boundary edge cells, one per symbol
        let mut symbol_edge = vec![usize::MAX; symbols];
        for (i, &(sym, _)) in word.iter().enumerate() {
            if symbol_edge[sym] == usize::MAX {
                let [t, h] = ends(i);
                symbol_edge[sym] = edges.len();
                edges.push([corner_vertex(&mut parent, t), corner_vertex(&mut parent, h)]);
            }
        }
        // spokes from the centre to each corner
        let spoke0 = edges.len();
        for i in 0..n {
            edges.push([centre, corner_vertex(&mut parent, i)]);
        }
        let triangles = (0..n)
            .map(|i| {
                let next = (i + 1) % n;
                let (sym, fwd) = word[i];
                DeltaTriangle {
                    corners: [
                        centre,
                        corner_vertex(&mut parent, i),
                        corner_vertex(&mut parent, next),
                    ],
                    sides: [
                        (spoke0 + i, [0, 1]),
                        (spoke0 + next, [0, 2]),
                        (symbol_edge[sym], if fwd { [1, 2] } else { [2, 1] }),
                    ],
                }
            })
            .collect();
        Self {
            vertices,
            edges,
            triangles,
        }
    }

    /// Barycentric subdivision. New vertices are the barycentres of the
    /// vertices, then edges, then triangles.
    fn subdivide(&self) -> Self {
        let bv = |v: usize| v;
        let be = |e: usize| self.vertices + e;
        let bt = |t: usize| self.vertices + self.edges.len() + t;
        let vertices = self.vertices + self.edges.len() + self.triangles.len();

        let mut edges = Vec::new();
        // half edges: (edge, end) -> id
        let half = |e: usize, end: usize| 2 * e + end;
        for (e, &[tail, head]) in self.edges.iter().enumerate() {
            edges.push([bv(tail), be(e)]);
            edges.push([bv(head), be(e)]);
        }
        let mut triangles = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            let corner_edge = edges.len();
            for &v in &tri.corners {
                edges.push([bv(v), bt(t)]);
            }
            let side_edge = edges.len();
            for &(e, _) in &tri.sides {
                edges.push([be(e), bt(t)]);
            }
            for (k, &(e, local)) in tri.sides.iter().enumerate() {
                for (end, &corner) in local.iter().enumerate() {
                    // flag: corner ⊂ side k ⊂ t
                    triangles.push(DeltaTriangle {
                        corners: [bv(tri.corners[corner]), be(e), bt(t)],
                        sides: [
                            (half(e, end), [0, 1]),
                            (side_edge + k, [1, 2]),
                            (corner_edge + corner, [0, 2]),
                        ],
                    });
                }
            }
        }
        Self {
            vertices,
            edges,
            triangles,
        }
    }

    /// Converts to a simplicial complex, failing if two cells share a vertex
    /// set or a cell has a repeated vertex.
    fn to_simplicial(&self) -> Option<Complex2> {
        let tris: Vec<[i64; 3]> = self
            .triangles
            .iter()
            .map(|t| t.corners.map(|v| v as i64))
            .collect();
        let edge_set: BTreeSet<[usize; 2]> = self
            .edges
            .iter()
            .map(|&[a, b]| [a.min(b), a.max(b)])
            .collect();
        if edge_set.len() != self.edges.len() || self.edges.iter().any(|e| e[0] == e[1]) {
            return None;
        }
        let k = Complex2::from_triangles(&tris, &[], &[]).ok()?;
        (k.num_triangles() == tris.len()
            && k.num_edges() == self.edges.len()
            && k.num_vertices() == self.vertices)
            .then_some(k)
    }
}

fn polygon_word(s: SurfaceId) -> Vec<(usize, bool)> {
    let g = s.genus() as usize;
    if s.is_orientable() {
        (0..g)
            .flat_map(|i| {
                let (a, b) = (2 * i, 2 * i + 1);
                [(a, true), (b, true), (a, false), (b, false)]
            })
            .collect()
    } else {
        (0..g).flat_map(|i| [(i, true), (i, true)]).collect()
    }
}

/// Triangulation of `s` from its standard polygon scheme (`a₁b₁a₁⁻¹b₁⁻¹…` or
/// `a₁a₁a₂a₂…`) coned from the centre, after two barycentric subdivisions.
/// Not minimal. The sphere is returned as the tetrahedron boundary.
pub fn generic_triangulation(s: SurfaceId) -> Result<Complex2, SurfaceError> {
    if s.is_sphere() {
        return Ok(Complex2::from_triangles(SPHERE, &[], &[]).expect("tetrahedron"));
    }
    if s.genus() > MAX_GENERIC_GENUS {
        return Err(SurfaceError::Unsupported(s));
    }
    let delta = DeltaComplex::polygon(&polygon_word(s))
        .subdivide()
        .subdivide();
    delta
        .to_simplicial()
        .ok_or_else(|| SurfaceError::CatalogValidation {
            surface: s,
            reason: "double subdivision is not simplicial".into(),
        })
}
