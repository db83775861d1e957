//! Independent reference computations for the integration tests: dense
//! boolean elimination, Betti numbers by rank counting, and brute-force
//! property (A) over every nonzero H¹ class. Nothing here calls the
//! library's linear algebra.

#![allow(dead_code)]

use std::collections::HashMap;

use kappa_core::surfaces::{attach_circle, minimal_triangulation, wedge};
use kappa_core::{Complex2, Label, SurfaceId};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Null space of a matrix given by rows, as a list of vectors.
pub fn nullspace(rows: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![false; cols];
            v[free] = true;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = m[i][free];
            }
            v
        })
        .collect()
}

pub struct Tables {
    pub vertices: Vec<Label>,
    pub edges: Vec<[Label; 2]>,
    pub triangles: Vec<[Label; 3]>,
    pub edge_pos: HashMap<[Label; 2], usize>,
}

/// Simplices by label, in whatever order the complex lists them. Only the
/// label tuples are used, not indices.
pub fn tables(k: &Complex2) -> Tables {
    let vertices = k.vertices().to_vec();
    let edges: Vec<[Label; 2]> = k.edges().iter().map(|&e| k.edge_labels(e)).collect();
    let triangles: Vec<[Label; 3]> = k
        .triangles()
        .iter()
        .map(|&t| k.triangle_labels(t))
        .collect();
    let edge_pos = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    Tables {
        vertices,
        edges,
        triangles,
        edge_pos,
    }
}

fn edge(t: &Tables, a: &Label, b: &Label) -> usize {
    let key = if a < b {
        [a.clone(), b.clone()]
    } else {
        [b.clone(), a.clone()]
    };
    t.edge_pos[&key]
}

/// Rows of δ¹ (one per triangle, over edges).
pub fn delta1_rows(t: &Tables) -> Vec<Vec<bool>> {
    t.triangles
        .iter()
        .map(|[a, b, c]| {
            let mut row = vec![false; t.edges.len()];
            for i in [edge(t, a, b), edge(t, a, c), edge(t, b, c)] {
                row[i] = true;
            }
            row
        })
        .collect()
}

/// Rows of δ⁰ (one per edge, over vertices).
pub fn delta0_rows(t: &Tables) -> Vec<Vec<bool>> {
    t.edges
        .iter()
        .map(|[a, b]| {
            let mut row = vec![false; t.vertices.len()];
            row[t.vertices.iter().position(|v| v == a).unwrap()] = true;
            row[t.vertices.iter().position(|v| v == b).unwrap()] = true;
            row
        })
        .collect()
}

fn transpose(rows: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    (0..cols)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect()
}

fn components(t: &Tables) -> usize {
    let n = t.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let pos: HashMap<&Label, usize> = t.vertices.iter().enumerate().map(|(i, l)| (l, i)).collect();
    for [a, b] in &t.edges {
        let (x, y) = (find(&mut parent, pos[a]), find(&mut parent, pos[b]));
        parent[x] = y;
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// Reduced F2 Betti numbers by rank counting.
pub fn betti(k: &Complex2) -> (usize, usize, usize) {
    let t = tables(k);
    let r2 = rank(delta1_rows(&t));
    let r1 = rank(delta0_rows(&t));
    let b0 = components(&t).saturating_sub(1);
    (b0, t.edges.len() - r1 - r2, t.triangles.len() - r2)
}

/// Alexander–Whitney product on label-sorted triangles.
pub fn cup(t: &Tables, a: &[bool], b: &[bool]) -> Vec<bool> {
    t.triangles
        .iter()
        .map(|[x, y, z]| a[edge(t, x, y)] && b[edge(t, y, z)])
        .collect()
}

/// Whether a 2-cochain lies outside im δ¹.
pub fn nontrivial2(t: &Tables, c: &[bool]) -> bool {
    let cols = transpose(&delta1_rows(t), t.edges.len());
    let base = rank(cols.clone());
    let mut with = cols;
    with.push(c.to_vec());
    rank(with) > base
}

/// Cocycles forming a basis of H¹ modulo coboundaries.
pub fn h1_basis(t: &Tables) -> Vec<Vec<bool>> {
    let cocycles = nullspace(&delta1_rows(t), t.edges.len());
    let mut span = transpose(&delta0_rows(t), t.vertices.len());
    let mut basis = Vec::new();
    for z in cocycles {
        let before = rank(span.clone());
        span.push(z.clone());
        if rank(span.clone()) > before {
            basis.push(z);
        } else {
            span.pop();
        }
    }
    basis
}

/// Property (A) by enumerating every nonzero H¹ class.
pub fn property_a_brute(k: &Complex2) -> bool {
    let t = tables(k);
    let basis = h1_basis(&t);
    let n = basis.len();
    assert!(n <= 16, "brute force over 2^{n} classes");
    (1u32..1 << n).all(|mask| {
        let mut x = vec![false; t.edges.len()];
        for (i, b) in basis.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi ^= *bi;
                }
            }
        }
        basis.iter().any(|beta| nontrivial2(&t, &cup(&t, &x, beta)))
    })
}

/// Rank of the scalar cup form on H¹ when dim H² = 1: the form is
/// evaluated against a cochain that is nonzero on the single class.
pub fn scalar_cup_rank(k: &Complex2) -> usize {
    let t = tables(k);
    let basis = h1_basis(&t);
    let rows = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| nontrivial2(&t, &cup(&t, a, b)))
                .collect()
        })
        .collect();
    rank(rows)
}

pub fn relabel(k: &Complex2, rng: &mut impl Rng) -> Complex2 {
    let mut perm: Vec<i64> = (0..k.num_vertices() as i64).collect();
    perm.shuffle(rng);
    let labels = k.vertices().to_vec();
    k.relabel(|l| Label::Int(1000 + perm[labels.binary_search(l).unwrap()]))
}

pub const MINIMAL: [&str; 6] = ["S2", "N1", "M1", "N2", "N3", "M2"];

pub fn minimal(s: &str) -> Complex2 {
    minimal_triangulation(s.parse::<SurfaceId>().unwrap()).unwrap()
}

/// A random surface (one of the stored minimal triangulations other than
/// the sphere) with spheres and circles wedged on at random vertices,
/// staying within `max_triangles`. Returns the complex and one triangle of
/// the surface part.
pub fn random_wedge(rng: &mut impl Rng, max_triangles: usize) -> (Complex2, [Label; 3]) {
    let base = minimal(["N1", "M1", "N2", "N3", "M2"].choose(rng).unwrap());
    let surface_triangle =
        base.triangle_labels(base.triangles()[rng.gen_range(0..base.num_triangles())]);
    let sphere = minimal("S2");
    let mut k = base;
    let spheres = rng.gen_range(0..=4);
    for _ in 0..spheres {
        if k.num_triangles() + 4 > max_triangles {
            break;
        }
        let v = k.vertices().choose(rng).unwrap().clone();
        let w = sphere.vertices().choose(rng).unwrap().clone();
        k = wedge(&k, &v, &sphere, &w).unwrap();
    }
    for _ in 0..rng.gen_range(0..=2) {
        let v = k.vertices().choose(rng).unwrap().clone();
        k = attach_circle(&k, &v).unwrap();
    }
    (k, surface_triangle)
}

/// Random small complex: a random set of triangles on `n` vertices plus a
/// few random edges.
pub fn random_complex(rng: &mut impl Rng, n: i64, triangles: usize, edges: usize) -> Complex2 {
    let mut tris = Vec::new();
    for _ in 0..triangles {
        let mut v: Vec<i64> = (0..n).collect();
        v.shuffle(rng);
        tris.push([v[0], v[1], v[2]]);
    }
    let mut es = Vec::new();
    for _ in 0..edges {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        es.push([a, b]);
    }
    Complex2::from_triangles(&tris, &es, &[]).unwrap()
}

/// Random relabelling that also maps a tracked triangle.
pub fn relabel_keep(k: &Complex2, rng: &mut impl Rng, t: &[Label; 3]) -> (Complex2, [Label; 3]) {
    let mut perm: Vec<i64> = (0..k.num_vertices() as i64).collect();
    perm.shuffle(rng);
    let labels = k.vertices().to_vec();
    let map = |l: &Label| Label::Int(1000 + perm[labels.binary_search(l).unwrap()]);
    let mut mapped = t.clone().map(|l| map(&l));
    mapped.sort();
    (k.relabel(map), mapped)
}

/// Whether the functionals (given by triangle supports) map the 2-cycles
/// of `k` onto F2^r, by rank of the evaluation matrix on a cycle basis.
pub fn functionals_surjective(k: &Complex2, spec: &kappa_core::PreservationSpec) -> bool {
    let t = tables(k);
    let d2 = transpose(&delta1_rows(&t), t.edges.len());
    let cycles = nullspace(&d2, t.triangles.len());
    let rows: Vec<Vec<bool>> = spec
        .functionals
        .iter()
        .map(|f| {
            cycles
                .iter()
                .map(|z| {
                    t.triangles
                        .iter()
                        .zip(z)
                        .filter(|(tri, &on)| on && f.contains(*tri))
                        .count()
                        % 2
                        == 1
                })
                .collect()
        })
        .collect();
    rows.is_empty() || rank(rows) == spec.functionals.len()
}
