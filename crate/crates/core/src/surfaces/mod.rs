//! Closed-surface recognition and classification, a validated catalog of
//! surface triangulations, wedge constructions, and small exhaustive searches.

mod canon;
mod catalog;
mod construct;
mod search;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{Complex2, ComplexError};
use crate::homology::{self, Betti};

pub use canon::canonical_form;
pub use catalog::{catalog, generic_triangulation, minimal_triangulation, CatalogEntry};
pub use construct::{attach_circle, point, wedge};
pub use search::{
    desk_search, exceptional_edge_search, parity_obstruction_search, ParitySearchResult,
    SearchProgress, SearchResult, MAX_SEARCH_VERTICES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid surface id {0:?}: expected S2, M<g> or N<k>")]
    InvalidId(String),
    #[error("unsupported surface {0}")]
    Unsupported(SurfaceId),
    #[error("catalog entry for {surface} failed validation: {reason}")]
    CatalogValidation { surface: SurfaceId, reason: String },
    #[error("search is limited to at most {limit} vertices, got {requested}")]
    SearchGuard { requested: usize, limit: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A closed surface: the orientable surface of genus `g` or the
/// non-orientable surface of genus `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceId {
    orientable: bool,
    genus: u32,
}

impl SurfaceId {
    pub const SPHERE: SurfaceId = SurfaceId {
        orientable: true,
        genus: 0,
    };
    pub const TORUS: SurfaceId = SurfaceId {
        orientable: true,
        genus: 1,
    };
    pub const PROJECTIVE_PLANE: SurfaceId = SurfaceId {
        orientable: false,
        genus: 1,
    };
    pub const KLEIN_BOTTLE: SurfaceId = SurfaceId {
        orientable: false,
        genus: 2,
    };

    pub fn orientable(genus: u32) -> Self {
        Self {
            orientable: true,
            genus,
        }
    }

    /// Panics for `genus == 0`, which is not a non-orientable surface.
    pub fn non_orientable(genus: u32) -> Self {
        assert!(genus >= 1, "non-orientable genus must be at least 1");
        Self {
            orientable: false,
            genus,
        }
    }

    pub fn is_orientable(self) -> bool {
        self.orientable
    }

    pub fn genus(self) -> u32 {
        self.genus
    }

    pub fn is_sphere(self) -> bool {
        self == Self::SPHERE
    }

    pub fn euler_characteristic(self) -> i64 {
        if self.orientable {
            2 - 2 * i64::from(self.genus)
        } else {
            2 - i64::from(self.genus)
        }
    }

    /// The surfaces M₂, N₂ and N₃.
    pub fn is_exceptional(self) -> bool {
        matches!(
            (self.orientable, self.genus),
            (true, 2) | (false, 2) | (false, 3)
        )
    }

    /// Reduced F2 Betti numbers.
    pub fn betti(self) -> Betti {
        let b1 = if self.orientable {
            2 * self.genus
        } else {
            self.genus
        };
        Betti::new(0, b1 as usize, 1)
    }

    /// Surface with the given orientability and Euler characteristic.
    pub fn from_euler(orientable: bool, chi: i64) -> Option<Self> {
        if orientable {
            (chi <= 2 && chi % 2 == 0).then(|| Self::orientable(((2 - chi) / 2) as u32))
        } else {
            (chi <= 1).then(|| Self::non_orientable((2 - chi) as u32))
        }
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.orientable, self.genus) {
            (true, 0) => write!(f, "S2"),
            (true, g) => write!(f, "M{g}"),
            (false, k) => write!(f, "N{k}"),
        }
    }
}

impl FromStr for SurfaceId {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SurfaceError::InvalidId(s.to_owned());
        match s {
            "S2" | "sphere" => return Ok(Self::SPHERE),
            "T2" | "torus" => return Ok(Self::TORUS),
            "RP2" => return Ok(Self::PROJECTIVE_PLANE),
            "K" | "klein" => return Ok(Self::KLEIN_BOTTLE),
            _ => {}
        }
        let (kind, digits) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let genus: u32 = digits.parse().map_err(|_| bad())?;
        match kind {
            "M" => Ok(Self::orientable(genus)),
            "N" if genus >= 1 => Ok(Self::non_orientable(genus)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for SurfaceId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    BadEdgeDegree,
    BadLink,
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub is_surface: bool,
    pub failure_reason: Option<FailureReason>,
    pub surface: Option<SurfaceId>,
    pub euler_characteristic: i64,
    /// `+1`/`-1` per triangle relative to its sorted vertex order, present
    /// exactly when the surface is orientable.
    pub orientation_witness: Option<Vec<i8>>,
}

impl ClassificationResult {
    fn failure(k: &Complex2, reason: FailureReason) -> Self {
        Self {
            is_surface: false,
            failure_reason: Some(reason),
            surface: None,
            euler_characteristic: k.euler_characteristic(),
            orientation_witness: None,
        }
    }
}

/// Recognition only: connected, every edge in exactly two triangles, every
/// vertex link a single cycle. `surface` is left unset.
pub fn is_closed_surface(k: &Complex2) -> ClassificationResult {
    if k.edge_degrees().iter().any(|&d| d != 2) {
        return ClassificationResult::failure(k, FailureReason::BadEdgeDegree);
    }
    if (0..k.num_vertices()).any(|v| !k.link_by_index(v).is_cycle()) {
        return ClassificationResult::failure(k, FailureReason::BadLink);
    }
    if !k.is_connected() {
        return ClassificationResult::failure(k, FailureReason::Disconnected);
    }
    ClassificationResult {
        is_surface: true,
        failure_reason: None,
        surface: None,
        euler_characteristic: k.euler_characteristic(),
        orientation_witness: None,
    }
}

/// Sign of the orientation a triangle `[v0 < v1 < v2]` with sign `+1`
/// induces on its edge `[a < b]`.
fn induced_sign(t: [usize; 3], edge: [usize; 2]) -> i8 {
    if edge == [t[0], t[2]] {
        -1
    } else {
        1
    }
}

fn triangles_by_edge(k: &Complex2) -> HashMap<[usize; 2], Vec<usize>> {
    let mut map: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    for (i, &[a, b, c]) in k.triangles().iter().enumerate() {
        for e in [[a, b], [a, c], [b, c]] {
            map.entry(e).or_default().push(i);
        }
    }
    map
}

/// Propagates triangle orientations over the dual graph. Returns the witness
/// if a globally consistent choice exists. Requires every edge degree ≤ 2.
fn propagate_orientation(k: &Complex2) -> Option<Vec<i8>> {
    let by_edge = triangles_by_edge(k);
    let tris = k.triangles();
    let mut sign = vec![0i8; tris.len()];
    for start in 0..tris.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let [a, b, c] = tris[i];
            for e in [[a, b], [a, c], [b, c]] {
                for &j in &by_edge[&e] {
                    if j == i {
                        continue;
                    }
                    // j must induce the opposite orientation on e
                    let want = -sign[i] * induced_sign(tris[i], e) * induced_sign(tris[j], e);
                    if sign[j] == 0 {
                        sign[j] = want;
                        stack.push(j);
                    } else if sign[j] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some(sign)
}

/// Independent re-check of an orientation witness: every edge shared by two
/// triangles receives opposite induced orientations.
pub fn verify_orientation(k: &Complex2, witness: &[i8]) -> bool {
    if witness.len() != k.num_triangles() || witness.iter().any(|&s| s != 1 && s != -1) {
        return false;
    }
    // directed edge count: each oriented edge (u→v) may appear at most once
    let mut seen = std::collections::HashSet::new();
    for (&[a, b, c], &s) in k.triangles().iter().zip(witness) {
        let cycle = if s == 1 {
            [(a, b), (b, c), (c, a)]
        } else {
            [(b, a), (c, b), (a, c)]
        };
        for d in cycle {
            if !seen.insert(d) {
                return false;
            }
        }
    }
    true
}

pub fn classify(k: &Complex2) -> ClassificationResult {
    let mut result = is_closed_surface(k);
    if !result.is_surface {
        return result;
    }
    let chi = k.euler_characteristic();
    let witness = propagate_orientation(k);
    result.surface = SurfaceId::from_euler(witness.is_some(), chi);
    result.orientation_witness = witness;
    debug_assert!(
        result.surface.is_some(),
        "closed surface with impossible χ = {chi}"
    );
    result
}

#[derive(Clone, Debug, Serialize)]
pub struct HomeosurfReport {
    pub surface: SurfaceId,
    pub edge_degrees_exactly_two: bool,
    pub betti: Betti,
    pub expected_betti: Betti,
    pub betti_match: bool,
    pub property_a: bool,
    pub all_hypotheses_hold: bool,
    /// Whether `classify` agrees with the target; only evaluated when all
    /// hypotheses hold.
    pub classify_agrees: Option<bool>,
    pub classified_as: Option<SurfaceId>,
}

/// Checks the hypotheses of the surface-recognition criterion separately
/// (edge degrees, F2 Betti numbers, property (A)) and, when they all hold,
/// compares against [`classify`].
pub fn homeosurf_hypotheses(k: &Complex2, s: SurfaceId) -> HomeosurfReport {
    let edge_ok = k.num_edges() > 0 && k.edge_degrees().iter().all(|&d| d == 2);
    let betti = homology::betti_numbers(k);
    let expected = s.betti();
    let property_a = homology::has_property_a(k).holds;
    let all = edge_ok && betti == expected && property_a;
    let classified = classify(k).surface;
    HomeosurfReport {
        surface: s,
        edge_degrees_exactly_two: edge_ok,
        betti,
        expected_betti: expected,
        betti_match: betti == expected,
        property_a,
        all_hypotheses_hold: all,
        classify_agrees: all.then_some(classified == Some(s)),
        classified_as: classified,
    }
}
