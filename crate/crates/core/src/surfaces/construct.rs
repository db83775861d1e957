use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Complex2, ComplexError, Label};

/// The one-vertex complex.
pub fn point<L: Into<Label>>(label: L) -> Complex2 {
    Complex2::from_labeled(vec![], vec![], vec![label.into()]).expect("single vertex")
}

fn all_simplices(
    k: &Complex2,
    rename: impl Fn(&Label) -> Label,
) -> (Vec<[Label; 3]>, Vec<[Label; 2]>, Vec<Label>) {
    let tris = k
        .triangles()
        .iter()
        .map(|&t| k.triangle_labels(t).map(|l| rename(&l)))
        .collect();
    let edges = k
        .edges()
        .iter()
        .map(|&e| k.edge_labels(e).map(|l| rename(&l)))
        .collect();
    let verts = k.vertices().iter().map(&rename).collect();
    (tris, edges, verts)
}

/// Disjoint union of `k1` and `k2` with `v1` identified to `v2`. The glued
/// vertex keeps the label `v1`; labels of `k2` that clash with `k1` are
/// replaced by fresh ones.
pub fn wedge(
    k1: &Complex2,
    v1: &Label,
    k2: &Complex2,
    v2: &Label,
) -> Result<Complex2, ComplexError> {
    k1.vertex_index(v1)?;
    k2.vertex_index(v2)?;
    let taken: BTreeSet<Label> = k1.vertices().iter().chain(k2.vertices()).cloned().collect();
    let clashes: Vec<&Label> = k2
        .vertices()
        .iter()
        .filter(|&l| l != v2 && k1.vertex_index(l).is_ok())
        .collect();
    let all = Complex2::from_labeled(vec![], vec![], taken.into_iter().collect())?;
    let fresh = all.fresh_labels(clashes.len());
    let mut rename: BTreeMap<Label, Label> = clashes.into_iter().cloned().zip(fresh).collect();
    rename.insert(v2.clone(), v1.clone());

    let (mut tris, mut edges, mut verts) = all_simplices(k1, Label::clone);
    let (t2, e2, w2) = all_simplices(k2, |l| rename.get(l).cloned().unwrap_or_else(|| l.clone()));
    tris.extend(t2);
    edges.extend(e2);
    verts.extend(w2);
    Complex2::from_labeled(tris, edges, verts)
}

/// Attaches a simplicial circle at `v` through two fresh vertices.
pub fn attach_circle(k: &Complex2, v: &Label) -> Result<Complex2, ComplexError> {
    k.vertex_index(v)?;
    let fresh = k.fresh_labels(2);
    let (a, b) = (fresh[0].clone(), fresh[1].clone());
    let (tris, mut edges, verts) = all_simplices(k, Label::clone);
    edges.extend([[v.clone(), a.clone()], [a, b.clone()], [b, v.clone()]]);
    Complex2::from_labeled(tris, edges, verts)
}
