//! Simplification of a 2-complex: removing triangles to kill excess H₂
//! while keeping prescribed H₂ functionals surjective, elementary collapses,
//! and elimination of edges that lie in no triangle.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{Complex2, ComplexError, Edge, Label, SimplexId, Triangle};
use crate::gf2::{self, Gf2Matrix, Gf2Vector};
use crate::homology::{self, betti_numbers, Betti, CochainVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("dim H2 = {b2} does not exceed the target rank {target_rank}; nothing to kill")]
    NoExcessH2 { b2: usize, target_rank: usize },
    #[error("functionals have rank {rank} on H2, need {target_rank}")]
    NotSurjective { rank: usize, target_rank: usize },
    #[error("target rank {target_rank} exceeds dim H2 = {b2}")]
    TargetTooLarge { target_rank: usize, b2: usize },
    #[error("functional {index} names triangle {triangle:?} which is not in the complex")]
    UnknownTriangle { index: usize, triangle: [Label; 3] },
    #[error("input complex has {0} connected components")]
    NotConnected(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A list of 2-cochains, each given by its support as labelled triangles.
/// Supports are stored by label so they restrict to subcomplexes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PreservationSpec {
    pub functionals: Vec<BTreeSet<[Label; 3]>>,
}

fn sorted3(mut t: [Label; 3]) -> [Label; 3] {
    t.sort();
    t
}

impl PreservationSpec {
    pub fn new(functionals: Vec<Vec<[Label; 3]>>) -> Self {
        Self {
            functionals: functionals
                .into_iter()
                .map(|f| f.into_iter().map(sorted3).collect())
                .collect(),
        }
    }

    pub fn from_cochains(k: &Complex2, cochains: &[CochainVector]) -> Self {
        Self {
            functionals: cochains
                .iter()
                .map(|c| {
                    c.coefficients
                        .ones()
                        .map(|i| k.triangle_labels(k.triangles()[i]))
                        .collect()
                })
                .collect(),
        }
    }

    /// The first `r` representatives of the H² coordinate basis of `k`.
    pub fn first_h2_classes(k: &Complex2, r: usize) -> Result<Self, ReduceError> {
        let reps = homology::h2_coordinates(k).representatives;
        if r > reps.len() {
            return Err(ReduceError::TargetTooLarge {
                target_rank: r,
                b2: reps.len(),
            });
        }
        let cochains: Vec<CochainVector> = reps
            .into_iter()
            .take(r)
            .map(|v| CochainVector::new(2, v))
            .collect();
        Ok(Self::from_cochains(k, &cochains))
    }

    pub fn target_rank(&self) -> usize {
        self.functionals.len()
    }

    /// Every named triangle must exist in `k`.
    pub fn check_support(&self, k: &Complex2) -> Result<(), ReduceError> {
        for (index, f) in self.functionals.iter().enumerate() {
            for t in f {
                if !matches!(k.find_triangle(t), Ok(Some(_))) {
                    return Err(ReduceError::UnknownTriangle {
                        index,
                        triangle: t.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The functionals as cochains on `k`; triangles absent from `k` are dropped.
    pub fn cochains(&self, k: &Complex2) -> Vec<Gf2Vector> {
        self.functionals
            .iter()
            .map(|f| {
                Gf2Vector::from_support(
                    k.num_triangles(),
                    f.iter().filter_map(|t| k.find_triangle(t).ok().flatten()),
                )
            })
            .collect()
    }

    /// Rows are functionals, columns the given 2-cycles.
    fn evaluation(&self, k: &Complex2, cycles: &[Gf2Vector]) -> Gf2Matrix {
        let fs = self.cochains(k);
        let mut m = Gf2Matrix::zeros(fs.len(), cycles.len());
        for (i, f) in fs.iter().enumerate() {
            for (j, z) in cycles.iter().enumerate() {
                m.set(i, j, f.dot(z));
            }
        }
        m
    }

    /// Rank of the evaluation map H₂(k) → F2^target_rank.
    pub fn rank_on(&self, k: &Complex2) -> usize {
        let z = gf2::kernel_basis(&homology::boundary_matrix(k, 2));
        gf2::rank(&self.evaluation(k, &z))
    }

    pub fn is_surjective_on(&self, k: &Complex2) -> bool {
        self.rank_on(k) == self.target_rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KillStep {
    pub triangle: [Label; 3],
    pub before: Betti,
    pub after: Betti,
}

/// Removes one open triangle from the support of an H₂ class on which all
/// functionals vanish. b0 and b1 are unchanged, b2 drops by one, and the
/// functionals stay surjective; all three are re-checked.
pub fn kill_step(
    m: &Complex2,
    spec: &PreservationSpec,
) -> Result<(Complex2, KillStep), ReduceError> {
    let z = gf2::kernel_basis(&homology::boundary_matrix(m, 2));
    let target_rank = spec.target_rank();
    if z.len() <= target_rank {
        return Err(ReduceError::NoExcessH2 {
            b2: z.len(),
            target_rank,
        });
    }
    let eval = spec.evaluation(m, &z);
    let rank = gf2::rank(&eval);
    if rank < target_rank {
        return Err(ReduceError::NotSurjective { rank, target_rank });
    }
    let combo = gf2::kernel_basis(&eval)
        .into_iter()
        .next()
        .expect("more cycles than functionals");
    let mut cycle = Gf2Vector::zeros(m.num_triangles());
    for j in combo.ones() {
        cycle.add_assign(&z[j]);
    }
    let sigma = cycle.first_one().expect("nonzero cycle");
    let triangle = m.triangle_labels(m.triangles()[sigma]);
    let before = betti_numbers(m);
    let out = m.remove_open_triangle(SimplexId::triangle(sigma))?;
    let after = betti_numbers(&out);
    if (after.b0, after.b1) != (before.b0, before.b1) || after.b2 + 1 != before.b2 {
        return Err(ReduceError::Invariant(format!(
            "removing {triangle:?} changed Betti numbers {:?} -> {:?}",
            before.as_tuple(),
            after.as_tuple()
        )));
    }
    if !spec.is_surjective_on(&out) {
        return Err(ReduceError::Invariant(format!(
            "functionals no longer surjective after removing {triangle:?}"
        )));
    }
    Ok((
        out,
        KillStep {
            triangle,
            before,
            after,
        },
    ))
}

/// An elementary collapse: `face` has `coface` as its only proper coface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collapse {
    pub face: Vec<Label>,
    pub coface: Vec<Label>,
}

/// Collapses free edges (in one triangle) until none remain, then free
/// vertices (in one edge), always taking the least free face.
pub fn collapse_all(k: &Complex2) -> (Complex2, Vec<Collapse>) {
    let mut tris: BTreeSet<Triangle> = k.triangles().iter().copied().collect();
    let mut edges: BTreeSet<Edge> = k.edges().iter().copied().collect();
    let mut verts: BTreeSet<usize> = (0..k.num_vertices()).collect();
    let mut cofaces: BTreeMap<Edge, BTreeSet<Triangle>> =
        edges.iter().map(|&e| (e, BTreeSet::new())).collect();
    for &t in &tris {
        for e in triangle_edges(t) {
            cofaces.get_mut(&e).expect("closure").insert(t);
        }
    }
    let mut free: BTreeSet<Edge> = cofaces
        .iter()
        .filter(|(_, ts)| ts.len() == 1)
        .map(|(&e, _)| e)
        .collect();
    let mut log = Vec::new();
    while let Some(e) = free.pop_first() {
        let t = *cofaces[&e].first().expect("free edge has a coface");
        for f in triangle_edges(t) {
            let ts = cofaces.get_mut(&f).expect("closure");
            ts.remove(&t);
            match ts.len() {
                1 => {
                    free.insert(f);
                }
                _ => {
                    free.remove(&f);
                }
            }
        }
        tris.remove(&t);
        edges.remove(&e);
        cofaces.remove(&e);
        log.push(Collapse {
            face: k.edge_labels(e).to_vec(),
            coface: k.triangle_labels(t).to_vec(),
        });
    }

    let mut incident: BTreeMap<usize, BTreeSet<Edge>> =
        verts.iter().map(|&v| (v, BTreeSet::new())).collect();
    for &e in &edges {
        for v in e {
            incident.get_mut(&v).expect("vertex").insert(e);
        }
    }
    let mut free: BTreeSet<usize> = incident
        .iter()
        .filter(|(_, es)| es.len() == 1)
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = free.pop_first() {
        let e = *incident[&v].first().expect("free vertex has an edge");
        debug_assert!(cofaces.get(&e).is_none_or(BTreeSet::is_empty));
        let w = if e[0] == v { e[1] } else { e[0] };
        let es = incident.get_mut(&w).expect("vertex");
        es.remove(&e);
        if es.len() == 1 {
            free.insert(w);
        } else {
            free.remove(&w);
        }
        incident.remove(&v);
        edges.remove(&e);
        verts.remove(&v);
        log.push(Collapse {
            face: vec![k.label(v).clone()],
            coface: k.edge_labels(e).to_vec(),
        });
    }
    (k.restrict(&verts, &edges, &tris), log)
}

fn triangle_edges([a, b, c]: Triangle) -> [Edge; 3] {
    [[a, b], [a, c], [b, c]]
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EliminationLog {
    pub contractions: Vec<[Label; 2]>,
    pub deleted_edges: Vec<[Label; 2]>,
    pub collapses: Vec<Collapse>,
}

impl EliminationLog {
    /// Number of circle wedge summands split off, one per deleted edge.
    pub fn circle_summands(&self) -> usize {
        self.deleted_edges.len()
    }
}

fn connected_without(k: &Complex2, skip: usize) -> bool {
    let [a, b] = k.edges()[skip];
    let mut adj = vec![Vec::new(); k.num_vertices()];
    for (i, &[x, y]) in k.edges().iter().enumerate() {
        if i != skip {
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    let mut seen = vec![false; k.num_vertices()];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(v) = stack.pop() {
        if v == b {
            return true;
        }
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Removes every edge lying in no triangle: contracted when it separates
/// its endpoints, deleted (one circle summand) otherwise. Collapses are
/// re-run after each sweep until nothing changes.
pub fn eliminate_maximal_edges(k: &Complex2) -> Result<(Complex2, EliminationLog), ReduceError> {
    let mut k = k.clone();
    let mut log = EliminationLog::default();
    loop {
        while let Some(e) = k.edge_degrees().iter().position(|&d| d == 0) {
            let labels = k.edge_labels(k.edges()[e]);
            if connected_without(&k, e) {
                k = k.delete_maximal_edge(SimplexId::edge(e))?;
                log.deleted_edges.push(labels);
            } else {
                k = k.contract_maximal_edge(SimplexId::edge(e))?;
                log.contractions.push(labels);
            }
        }
        let (next, collapses) = collapse_all(&k);
        k = next;
        if collapses.is_empty() {
            return Ok((k, log));
        }
        log.collapses.extend(collapses);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snapshot {
    pub stage: String,
    pub counts: [usize; 3],
    pub betti: Betti,
}

impl Snapshot {
    fn of(stage: &str, k: &Complex2) -> Self {
        Self {
            stage: stage.to_owned(),
            counts: k.counts(),
            betti: betti_numbers(k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub target_rank: usize,
    pub input_counts: [usize; 3],
    pub output_counts: [usize; 3],
    pub input_euler: i64,
    pub output_euler: i64,
    pub killed_triangles: Vec<[Label; 3]>,
    pub kill_steps: Vec<KillStep>,
    pub collapses: Vec<Collapse>,
    pub contractions: Vec<[Label; 2]>,
    pub deleted_edges: Vec<[Label; 2]>,
    pub circle_summands: usize,
    /// Connected components of the output.
    pub output_components: usize,
    /// Whether the output has no triangles.
    pub output_trivial: bool,
    /// Per-stage snapshots, filled only in verbose runs.
    pub stages: Vec<Snapshot>,
}

impl ReductionTrace {
    /// χ(out) = χ(in) − killed + m.
    pub fn euler_balanced(&self) -> bool {
        self.output_euler
            == self.input_euler - self.killed_triangles.len() as i64 + self.circle_summands as i64
    }
}

/// Kills H₂ down to the spec's rank, collapses, and eliminates maximal
/// edges. In the output every edge lies in at least two triangles.
pub fn simplify_pipeline(
    k: &Complex2,
    spec: &PreservationSpec,
    verbose: bool,
) -> Result<(Complex2, ReductionTrace), ReduceError> {
    let components = k.component_ids().1;
    if components > 1 {
        return Err(ReduceError::NotConnected(components));
    }
    spec.check_support(k)?;
    let target_rank = spec.target_rank();
    let b2 = betti_numbers(k).b2;
    if target_rank > b2 {
        return Err(ReduceError::TargetTooLarge { target_rank, b2 });
    }
    let rank = spec.rank_on(k);
    if rank < target_rank {
        return Err(ReduceError::NotSurjective { rank, target_rank });
    }

    let mut stages = Vec::new();
    if verbose {
        stages.push(Snapshot::of("input", k));
    }
    let mut m = k.clone();
    let mut kill_steps = Vec::new();
    for _ in target_rank..b2 {
        let (next, step) = kill_step(&m, spec)?;
        m = next;
        kill_steps.push(step);
    }
    if verbose {
        stages.push(Snapshot::of("killed", &m));
    }
    let (m, mut collapses) = collapse_all(&m);
    if verbose {
        stages.push(Snapshot::of("collapsed", &m));
    }
    let (l, elim) = eliminate_maximal_edges(&m)?;
    collapses.extend(elim.collapses.iter().cloned());
    if verbose {
        stages.push(Snapshot::of("output", &l));
    }

    if let Some(d) = l.edge_degrees().into_iter().min() {
        if d < 2 {
            return Err(ReduceError::Invariant(format!(
                "output has an edge of degree {d}"
            )));
        }
    }
    let trace = ReductionTrace {
        target_rank,
        input_counts: k.counts(),
        output_counts: l.counts(),
        input_euler: k.euler_characteristic(),
        output_euler: l.euler_characteristic(),
        killed_triangles: kill_steps.iter().map(|s| s.triangle.clone()).collect(),
        kill_steps,
        collapses,
        circle_summands: elim.circle_summands(),
        contractions: elim.contractions,
        deleted_edges: elim.deleted_edges,
        output_components: l.component_ids().1,
        output_trivial: l.num_triangles() == 0,
        stages,
    };
    if !trace.euler_balanced() {
        return Err(ReduceError::Invariant(
            "euler characteristic bookkeeping".to_owned(),
        ));
    }
    Ok((l, trace))
}
