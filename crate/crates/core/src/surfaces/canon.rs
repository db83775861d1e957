//! Canonical labelling of small triangle sets by colour refinement with
//! individualisation and backtracking.

use crate::complex::Complex2;

pub(crate) type Encoding = Vec<[u8; 3]>;

/// Canonical form of the triangle set of `k`: the lexicographically least
/// sorted triangle list over all labellings reached by refinement. Two
/// complexes have the same canonical form iff their triangle sets are
/// isomorphic. Vertices and edges outside triangles are ignored.
pub fn canonical_form(k: &Complex2) -> Vec<[usize; 3]> {
    canonical_triangles(k.triangles())
        .into_iter()
        .map(|t| t.map(usize::from))
        .collect()
}

pub(crate) fn canonical_triangles(triangles: &[[usize; 3]]) -> Encoding {
    // compact the used vertices
    let mut used: Vec<usize> = triangles.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    assert!(
        used.len() <= 255,
        "canonical form supports at most 255 vertices"
    );
    let tris: Vec<[usize; 3]> = triangles
        .iter()
        .map(|t| t.map(|v| used.binary_search(&v).expect("collected")))
        .collect();
    let n = used.len();
    let mut incident = vec![Vec::new(); n];
    for &[a, b, c] in &tris {
        incident[a].push([b, c]);
        incident[b].push([a, c]);
        incident[c].push([a, b]);
    }
    let graph = Graph { incident, tris };
    let mut best = None;
    graph.search(vec![0; n], &mut best);
    best.unwrap_or_default()
}

struct Graph {
    incident: Vec<Vec<[usize; 2]>>,
    tris: Vec<[usize; 3]>,
}

impl Graph {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..colors.len())
                .map(|v| {
                    let mut around: Vec<(u32, u32)> = self.incident[v]
                        .iter()
                        .map(|&[a, b]| {
                            let (x, y) = (colors[a], colors[b]);
                            (x.min(y), x.max(y))
                        })
                        .collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<(u32, u32)>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            colors = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).expect("present") as u32)
                .collect();
            let now = distinct.len();
            if now == classes {
                return colors;
            }
            classes = now;
        }
    }

    fn search(&self, colors: Vec<u32>, best: &mut Option<Encoding>) {
        let colors = self.refine(colors);
        let n = colors.len();
        if count_classes(&colors) == n {
            let mut enc: Encoding = self
                .tris
                .iter()
                .map(|t| {
                    let mut r = t.map(|v| colors[v] as u8);
                    r.sort_unstable();
                    r
                })
                .collect();
            enc.sort_unstable();
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        // first non-singleton cell
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let cell = (0..n).find(|&c| sizes[c] > 1).expect("not discrete") as u32;
        for v in (0..n).filter(|&v| colors[v] == cell) {
            let next = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| {
                    if c > cell || (c == cell && u != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            self.search(next, best);
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Label;
    use crate::surfaces::{minimal_triangulation, SurfaceId};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s in ["S2", "N1", "M1", "N2"] {
            let k = minimal_triangulation(s.parse::<SurfaceId>().unwrap()).unwrap();
            let base = canonical_form(&k);
            for _ in 0..5 {
                let mut perm: Vec<i64> = (0..k.num_vertices() as i64).collect();
                perm.shuffle(&mut rng);
                let labels = k.vertices().to_vec();
                let r = k.relabel(|l| {
                    Label::Int(100 + perm[labels.iter().position(|x| x == l).unwrap()])
                });
                assert_eq!(canonical_form(&r), base, "{s}");
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let a = Complex2::from_triangles(&[[0, 1, 2], [0, 1, 3]], &[], &[]).unwrap();
        let b = Complex2::from_triangles(&[[0, 1, 2], [0, 3, 4]], &[], &[]).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&b));
        let t = minimal_triangulation(SurfaceId::TORUS).unwrap();
        let k = minimal_triangulation(SurfaceId::PROJECTIVE_PLANE).unwrap();
        assert_ne!(canonical_form(&t), canonical_form(&k));
    }
}
