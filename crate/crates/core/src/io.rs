//! JSON reading and canonical writing of complexes, preservation specs and
//! group profiles.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use thiserror::Error;

use crate::bounds::GroupProfile;
use crate::complex::{Complex2, ComplexError, Label};
use crate::reduce::PreservationSpec;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {origin}: {source}")]
    Read {
        origin: String,
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Json {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: duplicate vertex label {label}")]
    DuplicateVertex { origin: String, label: Label },
    #[error("{origin}: {source}")]
    Complex {
        origin: String,
        source: ComplexError,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    #[serde(default)]
    name: String,
    #[serde(default)]
    vertices: Vec<Label>,
    #[serde(default)]
    triangles: Vec<[Label; 3]>,
    #[serde(default)]
    edges: Vec<[Label; 2]>,
}

/// A complex together with the name stored in its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedComplex {
    pub name: String,
    pub complex: Complex2,
}

fn from_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json {
        origin: origin.to_owned(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        origin: path.display().to_string(),
        source,
    })
}

/// Parses a complex; missing faces are filled in by closure.
pub fn parse_complex_str(text: &str, origin: &str) -> Result<NamedComplex, IoError> {
    let raw: RawComplex = from_json(text, origin)?;
    let mut seen = BTreeSet::new();
    for v in &raw.vertices {
        if !seen.insert(v) {
            return Err(IoError::DuplicateVertex {
                origin: origin.to_owned(),
                label: v.clone(),
            });
        }
    }
    let complex =
        Complex2::from_labeled(raw.triangles, raw.edges, raw.vertices).map_err(|source| {
            IoError::Complex {
                origin: origin.to_owned(),
                source,
            }
        })?;
    Ok(NamedComplex {
        name: raw.name,
        complex,
    })
}

pub fn parse_complex(path: &Path) -> Result<NamedComplex, IoError> {
    parse_complex_str(&read(path)?, &path.display().to_string())
}

fn label_json(l: &Label) -> String {
    serde_json::to_string(l).expect("labels serialize")
}

fn tuple_json(t: &[Label]) -> String {
    let parts: Vec<String> = t.iter().map(label_json).collect();
    format!("[{}]", parts.join(", "))
}

fn block(out: &mut String, key: &str, rows: &[String], last: bool) {
    let comma = if last { "" } else { "," };
    if rows.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{comma}");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, r) in rows.iter().enumerate() {
        let sep = if i + 1 == rows.len() { "" } else { "," };
        let _ = writeln!(out, "    {r}{sep}");
    }
    let _ = writeln!(out, "  ]{comma}");
}

/// Canonical text: full closure, sorted tuples and lists, one simplex per
/// line. Equal complexes give byte-identical output.
pub fn emit_complex(name: &str, k: &Complex2) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(
        out,
        "  \"name\": {},",
        serde_json::to_string(name).expect("string serializes")
    );
    let vertices: Vec<String> = k.vertices().iter().map(label_json).collect();
    let _ = writeln!(out, "  \"vertices\": [{}],", vertices.join(", "));
    let triangles: Vec<String> = k
        .triangles()
        .iter()
        .map(|&t| tuple_json(&k.triangle_labels(t)))
        .collect();
    let edges: Vec<String> = k
        .edges()
        .iter()
        .map(|&e| tuple_json(&k.edge_labels(e)))
        .collect();
    block(&mut out, "triangles", &triangles, false);
    block(&mut out, "edges", &edges, true);
    out.push_str("}\n");
    out
}

/// A preservation file: a list of functionals, each a list of triangles.
pub fn parse_preservation_str(text: &str, origin: &str) -> Result<PreservationSpec, IoError> {
    let raw: Vec<Vec<[Label; 3]>> = from_json(text, origin)?;
    for t in raw.iter().flatten() {
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return Err(IoError::Complex {
                origin: origin.to_owned(),
                source: ComplexError::DegenerateSimplex {
                    simplex: tuple_json(t),
                },
            });
        }
    }
    Ok(PreservationSpec::new(raw))
}

pub fn parse_preservation(path: &Path) -> Result<PreservationSpec, IoError> {
    parse_preservation_str(&read(path)?, &path.display().to_string())
}

pub fn parse_profile_str(text: &str, origin: &str) -> Result<GroupProfile, IoError> {
    from_json(text, origin)
}

pub fn parse_profile(path: &Path) -> Result<GroupProfile, IoError> {
    parse_profile_str(&read(path)?, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_canonical_output() {
        let nc = parse_complex_str(r#"{"name": "t", "triangles": [[3, 1, 2]]}"#, "inline").unwrap();
        assert_eq!(nc.complex.counts(), [3, 3, 1]);
        let text = emit_complex(&nc.name, &nc.complex);
        assert_eq!(
            text,
            "{\n  \"name\": \"t\",\n  \"vertices\": [1, 2, 3],\n  \"triangles\": [\n    [1, 2, 3]\n  ],\n  \"edges\": [\n    [1, 2],\n    [1, 3],\n    [2, 3]\n  ]\n}\n"
        );
        let again = parse_complex_str(&text, "again").unwrap();
        assert_eq!(again, nc);
        assert_eq!(emit_complex(&again.name, &again.complex), text);
    }

    #[test]
    fn empty_and_string_labels() {
        let nc = parse_complex_str("{}", "inline").unwrap();
        assert!(nc.complex.is_empty());
        assert!(emit_complex("", &nc.complex).contains("\"triangles\": [],"));
        let nc = parse_complex_str(r#"{"edges": [["b", "a"]], "vertices": [7]}"#, "x").unwrap();
        assert_eq!(nc.complex.counts(), [3, 1, 0]);
        assert!(emit_complex("", &nc.complex).contains(r#"["a", "b"]"#));
    }

    #[test]
    fn errors() {
        let e = parse_complex_str(r#"{"triangles": [[1, 1, 2]]}"#, "f.json").unwrap_err();
        assert!(e.to_string().contains("[1, 1, 2]"), "{e}");
        let e = parse_complex_str("{\n  \"triangles\": [[1, 2]]\n}", "f.json").unwrap_err();
        assert!(matches!(e, IoError::Json { line: 2, .. }), "{e}");
        let e = parse_complex_str(r#"{"vertices": [1, 2, 1]}"#, "f.json").unwrap_err();
        assert!(matches!(e, IoError::DuplicateVertex { .. }));
        assert!(parse_complex_str(r#"{"faces": []}"#, "f.json").is_err());
    }

    #[test]
    fn preservation_and_profile() {
        let spec = parse_preservation_str("[[[3, 2, 1], [1, 2, 4]], []]", "p").unwrap();
        assert_eq!(spec.target_rank(), 2);
        assert!(spec.functionals[0].contains(&[1.into(), 2.into(), 3.into()]));
        assert!(parse_preservation_str("[[[1, 1, 2]]]", "p").is_err());
        let g = parse_profile_str(
            r#"{"name": "BS(3,5)", "h1": 2, "h2": 1, "property_a": true}"#,
            "g",
        )
        .unwrap();
        assert_eq!(g.chi_trunc(), 0);
    }
}
