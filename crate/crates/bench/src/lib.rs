//! Inputs shared by the benchmarks.

use kappa_core::surfaces::{attach_circle, catalog, minimal_triangulation, wedge};
use kappa_core::{Complex2, Label, SurfaceId};

/// The minimal triangulation of `s` with `spheres` tetrahedron boundaries
/// and `circles` circles wedged on at its least vertex.
pub fn decorated_surface(s: SurfaceId, spheres: usize, circles: usize) -> Complex2 {
    let mut k = catalog(s).expect("catalog surface").complex;
    let base = k.vertices()[0].clone();
    let sphere = minimal_triangulation(SurfaceId::SPHERE).expect("sphere");
    for _ in 0..spheres {
        k = wedge(&k, &base, &sphere, &Label::Int(1)).expect("wedge");
    }
    for _ in 0..circles {
        k = attach_circle(&k, &base).expect("circle");
    }
    k
}
