//! End-to-end certificate: simplify a complex, check the Euler floors on the
//! result, classify it, and compare triangle counts with the lower bound.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{
    euler_bounds_check, kappa_certificate, lower_bound_free_product, BoundReport,
    EulerBoundsReport, GroupProfile, KappaCertificate,
};
use crate::complex::Complex2;
use crate::homology::{betti_numbers, has_property_a, Betti};
use crate::reduce::{simplify_pipeline, PreservationSpec, ReduceError};
use crate::surfaces::{classify, ClassificationResult, SurfaceId};

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    /// Expected surface type of the simplified complex.
    pub surface: Option<SurfaceId>,
    pub spec: Option<PreservationSpec>,
    pub target_rank: Option<usize>,
    pub verbose: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub name: String,
    pub counts: [usize; 3],
    pub euler_characteristic: i64,
    pub betti: Betti,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceSummary {
    pub target_rank: usize,
    pub killed_triangles: usize,
    pub collapses: usize,
    pub contractions: usize,
    pub circle_summands: usize,
    pub output_counts: [usize; 3],
    pub output_euler: i64,
    pub output_betti: Betti,
    pub output_components: usize,
    pub output_trivial: bool,
    pub euler_balanced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub input: InputSummary,
    pub trace: TraceSummary,
    pub euler_bounds: EulerBoundsReport,
    pub classification: ClassificationResult,
    pub bound: BoundReport,
    pub kappa: Option<KappaCertificate>,
    pub verdicts: Vec<Verdict>,
    /// Whether the requested certification succeeded.
    pub success: bool,
}

fn verdict(out: &mut Vec<Verdict>, certified: bool, claim: String) {
    out.push(Verdict { claim, certified });
}

/// Runs the pipeline on `k` and assembles the certificate. Without an
/// explicit spec or target rank every H₂ class is preserved.
pub fn run_report(
    name: &str,
    k: &Complex2,
    options: &ReportOptions,
) -> Result<CertificateReport, ReduceError> {
    let input_betti = betti_numbers(k);
    let spec = match (&options.spec, options.target_rank) {
        (Some(s), _) => s.clone(),
        (None, r) => PreservationSpec::first_h2_classes(k, r.unwrap_or(input_betti.b2))?,
    };
    let (l, trace) = simplify_pipeline(k, &spec, options.verbose)?;
    let euler = euler_bounds_check(&l);
    let classification = classify(&l);
    let alpha2_in = k.num_triangles() as i64;

    let group = match classification.surface {
        Some(s) => GroupProfile::surface(s),
        None => {
            let b = betti_numbers(&l);
            GroupProfile::new(
                format!("pi1({})", if name.is_empty() { "L" } else { name }),
                b.b1 as u64,
                b.b2 as u64,
                has_property_a(&l).holds,
                "Betti numbers and property (A) of the simplified complex",
            )
        }
    };
    let bound = lower_bound_free_product(&group);
    let kappa = classification
        .surface
        .and_then(|s| kappa_certificate(s).ok());

    let mut verdicts = Vec::new();
    verdict(
        &mut verdicts,
        l.num_triangles() <= k.num_triangles() && trace.euler_balanced(),
        format!(
            "simplified complex has {} <= {} triangles; chi {} = {} - {} + {}",
            l.num_triangles(),
            k.num_triangles(),
            trace.output_euler,
            trace.input_euler,
            trace.killed_triangles.len(),
            trace.circle_summands
        ),
    );
    if euler.applicable {
        verdict(
            &mut verdicts,
            euler.holds(),
            format!(
                "vertex floor {} >= rho({}) = {}; triangle floor {} >= {}",
                euler.alpha0,
                euler.euler_characteristic,
                euler.rho_value.unwrap_or_default(),
                euler.alpha2,
                euler.alpha2_floor.unwrap_or_default()
            ),
        );
    }
    let free = format!("F{}", trace.circle_summands);
    match bound.lower_bound {
        Some(lb) => {
            verdict(
                &mut verdicts,
                true,
                format!(
                    "kappa({} * T) >= {lb} for every finitely presentable T",
                    group.name
                ),
            );
            if lb == alpha2_in {
                verdict(
                    &mut verdicts,
                    true,
                    format!(
                        "kappa({} * {free}) = {lb}: input attains the lower bound",
                        group.name
                    ),
                );
            }
        }
        None => verdict(
            &mut verdicts,
            false,
            format!(
                "lower bound inapplicable for {}: {}",
                group.name, bound.reason
            ),
        ),
    }
    if let Some(c) = &kappa {
        verdict(
            &mut verdicts,
            c.upper_bound_witness.is_none_or(|w| w as i64 == c.kappa),
            format!(
                "kappa(pi1({})) = delta = {} (lower bound {}{})",
                c.surface,
                c.kappa,
                c.lower_bound,
                if c.exceptional {
                    ", exceptional gap 2"
                } else {
                    ""
                }
            ),
        );
        if alpha2_in == c.kappa {
            verdict(
                &mut verdicts,
                true,
                format!(
                    "kappa(pi1({}) * {free}) = {} = kappa(pi1({}))",
                    c.surface, c.kappa, c.surface
                ),
            );
        }
    }

    let success = match options.surface {
        None => true,
        Some(s) => {
            classification.surface == Some(s)
                && kappa.as_ref().map_or(s.is_sphere(), |c| c.surface == s)
                && verdicts.iter().take(2).all(|v| v.certified)
        }
    };
    let output_betti = betti_numbers(&l);
    Ok(CertificateReport {
        input: InputSummary {
            name: name.to_owned(),
            counts: k.counts(),
            euler_characteristic: k.euler_characteristic(),
            betti: input_betti,
        },
        trace: TraceSummary {
            target_rank: trace.target_rank,
            killed_triangles: trace.killed_triangles.len(),
            collapses: trace.collapses.len(),
            contractions: trace.contractions.len(),
            circle_summands: trace.circle_summands,
            output_counts: trace.output_counts,
            output_euler: trace.output_euler,
            output_betti,
            output_components: trace.output_components,
            output_trivial: trace.output_trivial,
            euler_balanced: trace.euler_balanced(),
        },
        euler_bounds: euler,
        classification,
        bound,
        kappa,
        verdicts,
        success,
    })
}

impl CertificateReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let i = &self.input;
        let t = &self.trace;
        let _ = writeln!(
            s,
            "input {}: counts {:?}, chi {}, betti {:?}",
            if i.name.is_empty() { "-" } else { &i.name },
            i.counts,
            i.euler_characteristic,
            i.betti.as_tuple()
        );
        let _ = writeln!(
            s,
            "pipeline: killed {}, collapses {}, contractions {}, circle summands {}",
            t.killed_triangles, t.collapses, t.contractions, t.circle_summands
        );
        let _ = writeln!(
            s,
            "output: counts {:?}, chi {}, betti {:?}{}",
            t.output_counts,
            t.output_euler,
            t.output_betti.as_tuple(),
            if t.output_trivial {
                " (no triangles)"
            } else {
                ""
            }
        );
        match self.classification.surface {
            Some(sf) => {
                let _ = writeln!(s, "classified: {sf}");
            }
            None => {
                let _ = writeln!(s, "classified: not a closed surface");
            }
        }
        for v in &self.verdicts {
            let _ = writeln!(s, "[{}] {}", if v.certified { "ok" } else { "--" }, v.claim);
        }
        let _ = writeln!(
            s,
            "result: {}",
            if self.success {
                "certified"
            } else {
                "not certified"
            }
        );
        s
    }
}
