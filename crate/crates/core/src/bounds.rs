//! Vertex and triangle floors for 2-complexes, minimal triangle counts of
//! closed surfaces, and the free-product lower bound for simplicial
//! complexity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Complex2;
use crate::surfaces::{catalog, SurfaceId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("rho is only defined for k <= 2, got {0}")]
    RhoDomain(i64),
    #[error("the sphere is simply connected; no certificate is issued for it")]
    Sphere,
    #[error("no triangulation available for {0}")]
    NoCatalog(SurfaceId),
}

/// ⌊√n⌋ for n ≥ 0, exactly.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    // correct the float estimate in both directions
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// ρ(k) = ⌈(7 + √(49 − 24k)) / 2⌉ for k ≤ 2, in exact integer arithmetic.
pub fn rho(k: i64) -> Result<i64, BoundsError> {
    if k > 2 {
        return Err(BoundsError::RhoDomain(k));
    }
    let d = 49 - 24 * i128::from(k);
    let d = u64::try_from(d).map_err(|_| BoundsError::RhoDomain(k))?;
    let s = isqrt(d) as i64;
    // √d = s exactly, or s < √d < s + 1
    Ok(if s * s == d as i64 {
        (7 + s + 1) / 2
    } else {
        (7 + s) / 2 + 1
    })
}

/// F2 Betti data of a finitely presentable group, with an asserted property
/// (A) flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupProfile {
    pub name: String,
    pub h1: u64,
    pub h2: u64,
    pub property_a: bool,
    #[serde(default)]
    pub presentation_note: String,
}

impl GroupProfile {
    pub fn new(
        name: impl Into<String>,
        h1: u64,
        h2: u64,
        property_a: bool,
        note: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            h1,
            h2,
            property_a,
            presentation_note: note.into(),
        }
    }

    /// Fundamental group of a closed surface other than the sphere.
    pub fn surface(s: SurfaceId) -> Self {
        if s.is_sphere() {
            return Self::trivial();
        }
        let h1 = if s.is_orientable() {
            2 * s.genus()
        } else {
            s.genus()
        };
        Self::new(
            format!("pi1({s})"),
            u64::from(h1),
            1,
            true,
            "closed surface group; cup product form nondegenerate by Poincare duality",
        )
    }

    /// Baumslag–Solitar group BS(m, n) with m, n odd.
    pub fn baumslag_solitar_odd(m: u64, n: u64) -> Self {
        assert!(
            m % 2 == 1 && n % 2 == 1,
            "BS(m, n) preset needs m and n odd"
        );
        Self::new(
            format!("BS({m},{n})"),
            2,
            1,
            true,
            "one-relator <a,t | t a^m t^-1 = a^n>, m and n odd; F2 cohomology agrees with the torus",
        )
    }

    pub fn free(rank: u64) -> Self {
        Self::new(
            if rank == 1 {
                "Z".to_owned()
            } else {
                format!("F{rank}")
            },
            rank,
            0,
            rank == 0,
            "free group; H2 = 0",
        )
    }

    pub fn trivial() -> Self {
        Self::new("1", 0, 0, true, "trivial group")
    }

    /// 2-truncated Euler characteristic h2 − h1 + 1.
    pub fn chi_trunc(&self) -> i64 {
        self.h2 as i64 - self.h1 as i64 + 1
    }
}

pub fn chi_trunc(g: &GroupProfile) -> i64 {
    g.chi_trunc()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub group: GroupProfile,
    pub chi_trunc: i64,
    /// ρ(χ≤2) when χ≤2 ≤ 2.
    pub rho_value: Option<i64>,
    pub lower_bound: Option<i64>,
    pub applicable: bool,
    pub reason: String,
}

/// Lower bound 2ρ(χ≤2) − 2χ≤2 for κ(G ∗ T), valid for every finitely
/// presentable T (in particular T = 1), when G has property (A), χ≤2 ≤ 2 and
/// H₂ ≠ 0. Otherwise reports why it does not apply.
pub fn lower_bound_free_product(g: &GroupProfile) -> BoundReport {
    let chi = g.chi_trunc();
    let rho_value = rho(chi).ok();
    let mut failures = Vec::new();
    if !g.property_a {
        failures.push("property (A) not asserted");
    }
    if g.h2 == 0 {
        failures.push("h2 = 0");
    }
    if chi > 2 {
        failures.push("chi_trunc > 2");
    }
    let applicable = failures.is_empty();
    BoundReport {
        group: g.clone(),
        chi_trunc: chi,
        rho_value,
        lower_bound: applicable.then(|| 2 * rho_value.expect("chi <= 2") - 2 * chi),
        applicable,
        reason: if applicable {
            "property (A), h2 > 0 and chi_trunc <= 2".to_owned()
        } else {
            failures.join("; ")
        },
    }
}

/// Minimum number of triangles in a triangulation of `s`.
pub fn delta_surface(s: SurfaceId) -> i64 {
    let chi = s.euler_characteristic();
    let base = 2 * rho(chi).expect("surface chi <= 2") - 2 * chi;
    if s.is_exceptional() {
        base + 2
    } else {
        base
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerBoundsReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub alpha0: usize,
    pub alpha2: usize,
    pub euler_characteristic: i64,
    pub rho_value: Option<i64>,
    pub alpha0_ok: Option<bool>,
    /// 2α₀ − 2χ.
    pub alpha2_floor: Option<i64>,
    pub alpha2_ok: Option<bool>,
    /// 2ρ(χ) − 2χ, the floor with α₀ replaced by its own minimum.
    pub alpha2_rho_floor: Option<i64>,
}

impl EulerBoundsReport {
    /// α₂ − (2ρ(χ) − 2χ).
    pub fn rho_slack(&self) -> Option<i64> {
        self.alpha2_rho_floor.map(|f| self.alpha2 as i64 - f)
    }

    /// α₂ − (2α₀ − 2χ).
    pub fn alpha2_slack(&self) -> Option<i64> {
        self.alpha2_floor.map(|f| self.alpha2 as i64 - f)
    }

    pub fn holds(&self) -> bool {
        self.alpha0_ok == Some(true) && self.alpha2_ok == Some(true)
    }
}

/// Checks α₀ ≥ ρ(χ) and α₂ ≥ 2α₀ − 2χ on a connected 2-complex whose edges
/// all lie in at least two triangles. Other inputs are reported as
/// inapplicable.
pub fn euler_bounds_check(l: &Complex2) -> EulerBoundsReport {
    let chi = l.euler_characteristic();
    let [alpha0, _, alpha2] = l.counts();
    let mut report = EulerBoundsReport {
        applicable: false,
        reason: None,
        alpha0,
        alpha2,
        euler_characteristic: chi,
        rho_value: None,
        alpha0_ok: None,
        alpha2_floor: None,
        alpha2_ok: None,
        alpha2_rho_floor: None,
    };
    let reason = if l.dimension() != Some(2) {
        Some("not 2-dimensional")
    } else if !l.is_connected() {
        Some("not connected")
    } else if l.edge_degrees().iter().any(|&d| d < 2) {
        Some("some edge lies in fewer than two triangles")
    } else if chi > 2 {
        Some("euler characteristic exceeds 2")
    } else {
        None
    };
    if let Some(r) = reason {
        report.reason = Some(r.to_owned());
        return report;
    }
    let r = rho(chi).expect("chi <= 2");
    let floor = 2 * alpha0 as i64 - 2 * chi;
    report.applicable = true;
    report.rho_value = Some(r);
    report.alpha0_ok = Some(alpha0 as i64 >= r);
    report.alpha2_floor = Some(floor);
    report.alpha2_ok = Some(alpha2 as i64 >= floor);
    report.alpha2_rho_floor = Some(2 * r - 2 * chi);
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaCertificate {
    pub surface: SurfaceId,
    pub delta: i64,
    pub lower_bound: i64,
    pub exceptional: bool,
    pub kappa: i64,
    /// Triangle count of the stored triangulation attaining κ, if any.
    pub upper_bound_witness: Option<usize>,
}

/// κ(π₁(S)) = δ(S), with the free-product lower bound and the catalog
/// triangulation as the two sides.
pub fn kappa_certificate(s: SurfaceId) -> Result<KappaCertificate, BoundsError> {
    if s.is_sphere() {
        return Err(BoundsError::Sphere);
    }
    let delta = delta_surface(s);
    let bound = lower_bound_free_product(&GroupProfile::surface(s));
    let lower_bound = bound
        .lower_bound
        .expect("surface groups satisfy the hypotheses");
    let exceptional = s.is_exceptional();
    let gap = if exceptional { 2 } else { 0 };
    assert_eq!(
        delta,
        lower_bound + gap,
        "delta and lower bound disagree for {s}"
    );
    let witness = catalog(s)
        .ok()
        .filter(|e| e.minimal)
        .map(|e| e.complex.num_triangles());
    if let Some(w) = witness {
        assert_eq!(
            w as i64, delta,
            "catalog triangulation of {s} is not minimal"
        );
    }
    Ok(KappaCertificate {
        surface: s,
        delta,
        lower_bound,
        exceptional,
        kappa: delta,
        upper_bound_witness: witness,
    })
}
