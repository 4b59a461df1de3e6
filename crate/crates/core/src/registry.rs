//! Pinned instances of the worked examples. Each entry carries the parameter
//! constraints of its family, checked by [`ExampleEntry::check`], and the
//! theorem that is expected to cover it.

use crate::dimension::{theorem_dimension, Theorem};
use crate::model::{AffineIfs, Number, SystemDocument, TriangularMap};
use crate::separation::polygons_intersect;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug)]
pub struct ExampleEntry {
    pub name: &'static str,
    pub expected_theorem: Theorem,
    pub constraints: &'static [&'static str],
    source: &'static str,
    checker: fn(&SystemDocument) -> Vec<ConstraintCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("unknown example {0:?}; known: j49, j29, j48, j33")]
    Unknown(String),
    #[error("example {name} violates {failed:?}")]
    Constraint { name: &'static str, failed: Vec<&'static str> },
    #[error("example {name} selects theorem {got}, expected {expected}")]
    Theorem { name: &'static str, got: Theorem, expected: Theorem },
}

impl ExampleEntry {
    pub fn document(&self) -> SystemDocument {
        SystemDocument::parse(self.source).expect("registry literal")
    }

    pub fn system(&self) -> AffineIfs<f64> {
        self.document().float()
    }

    pub fn check(&self) -> Vec<ConstraintCheck> {
        (self.checker)(&self.document())
    }

    /// Constraint and theorem-selection check of the pinned instance.
    pub fn validate(&self) -> Result<(), RegistryError> {
        validate_document(self, &self.document())
    }
}

fn validate_document(entry: &ExampleEntry, doc: &SystemDocument) -> Result<(), RegistryError> {
    let failed: Vec<&'static str> =
        (entry.checker)(doc).into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if !failed.is_empty() {
        return Err(RegistryError::Constraint { name: entry.name, failed });
    }
    let got = theorem_dimension(&doc.float()).theorem;
    if got != entry.expected_theorem {
        return Err(RegistryError::Theorem { name: entry.name, got, expected: entry.expected_theorem });
    }
    Ok(())
}

const J49: &str = r#"{"label": "j49", "maps": [
    {"c": "0.7", "b": "0.3", "d": "-0.2", "u": "0", "v": "0.45"},
    {"c": "0.7", "b": "0.3", "d": "0.2", "u": "0.3", "v": "0.25"}
]}"#;

const J29: &str = r#"{"label": "j29", "maps": [
    {"c": "0.4", "b": "0.1", "d": "0", "u": "0.05", "v": "0.1"},
    {"c": "0.4", "b": "0.1", "d": "0.2", "u": "0.3", "v": "0.05"},
    {"c": "0.4", "b": "0.1", "d": "0.1", "u": "0.55", "v": "0.6"}
]}"#;

const J48: &str = r#"{"label": "j48", "maps": [
    {"c": "8/9", "b": "0.35", "d": "0", "u": "0", "v": "0.03"},
    {"c": "8/9", "b": "0.35", "d": "0.2", "u": "1/18", "v": "0.01"},
    {"c": "8/9", "b": "0.35", "d": "0.1", "u": "1/9", "v": "0.35"}
]}"#;

const J33: &str = r#"{"label": "j33", "maps": [
    {"c": "1/4", "b": "3/8", "d": "0", "u": "0", "v": "0.3"},
    {"c": "1/4", "b": "3/8", "d": "1/2", "u": "3/8", "v": "1/16"},
    {"c": "1/4", "b": "3/8", "d": "sqrt(2)/8", "u": "sqrt(2)/2", "v": "0.2"}
]}"#;

static REGISTRY: [ExampleEntry; 4] = [
    ExampleEntry {
        name: "j49",
        expected_theorem: Theorem::ThmA,
        constraints: &["N = 2", "1/2 < c < 1", "0 < b < c/2", "u_1 != u_2", "d_1 != d_2"],
        source: J49,
        checker: check_j49,
    },
    ExampleEntry {
        name: "j29",
        expected_theorem: Theorem::ThmA,
        constraints: &[
            "N = 3",
            "1/3 < c < 1",
            "0 < b < min(c/2, 1/3)",
            "u pairwise distinct",
            "d_1 < d_2",
            "d_3 strictly between d_2(2-c/b)+d_1(c/b-1) and d_1(2-c/b)+d_2(c/b-1)",
            "S_3 square disjoint from S_1 and S_2 squares",
        ],
        source: J29,
        checker: check_j29,
    },
    ExampleEntry {
        name: "j48",
        expected_theorem: Theorem::ThmB,
        constraints: &[
            "N = 3",
            "1/sqrt(3) < c < 1",
            "0 < b < c/2",
            "u arithmetic progression",
            "d_1 < d_2",
            "d_3 strictly between d_2(2-c/b)+d_1(c/b-1) and d_1(2-c/b)+d_2(c/b-1)",
        ],
        source: J48,
        checker: check_j48,
    },
    ExampleEntry {
        name: "j33",
        expected_theorem: Theorem::ThmC,
        constraints: &[
            "N = 3",
            "c, b rational",
            "c < min(1/3, b), b < 1",
            "b < min(sqrt(c), c^(1 + log 3/(2 log 3c)))",
            "exactly two rational d",
            "exactly two rational u",
        ],
        source: J33,
        checker: check_j33,
    },
];

pub fn examples() -> &'static [ExampleEntry] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static ExampleEntry, RegistryError> {
    REGISTRY.iter().find(|e| e.name == name).ok_or_else(|| RegistryError::Unknown(name.to_string()))
}

/// Run every entry's checks. Callers do this once at startup.
pub fn validate_registry() -> Result<(), RegistryError> {
    REGISTRY.iter().try_for_each(ExampleEntry::validate)
}

/// The j48 instance with its shared `b` replaced, validated against the same
/// constraints and the expected theorem.
pub fn j48_with_b(b: f64) -> Result<AffineIfs<f64>, RegistryError> {
    let entry = lookup("j48")?;
    let mut doc = entry.document();
    for m in &mut doc.maps {
        m.b = Number::from_f64(b);
    }
    validate_document(entry, &doc)?;
    Ok(doc.float())
}

struct Params {
    c: Vec<f64>,
    b: Vec<f64>,
    d: Vec<f64>,
    u: Vec<f64>,
}

fn params(doc: &SystemDocument) -> Params {
    let col = |f: fn(&crate::model::MapLiterals) -> &Number| doc.maps.iter().map(|m| f(m).to_f64()).collect();
    Params { c: col(|m| &m.c), b: col(|m| &m.b), d: col(|m| &m.d), u: col(|m| &m.u) }
}

fn all_equal(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

fn ck(name: &'static str, passed: bool) -> ConstraintCheck {
    ConstraintCheck { name, passed }
}

fn homogeneous_checks(doc: &SystemDocument, n: usize) -> (Vec<ConstraintCheck>, Params) {
    let p = params(doc);
    let out = vec![
        ck("N", doc.maps.len() == n),
        ck("homogeneous", all_equal(&p.c) && all_equal(&p.b)),
        ck("containment", AffineIfs::new(doc.float().maps().to_vec(), None).is_ok()),
    ];
    (out, p)
}

/// Window for `d_3` shared by the three-map families.
fn d3_window(p: &Params) -> bool {
    let (c, b) = (p.c[0], p.b[0]);
    let r = c / b;
    let (d1, d2, d3) = (p.d[0], p.d[1], p.d[2]);
    let lo = d2 * (2.0 - r) + d1 * (r - 1.0);
    let hi = d1 * (2.0 - r) + d2 * (r - 1.0);
    lo.min(hi) < d3 && d3 < lo.max(hi)
}

fn check_j49(doc: &SystemDocument) -> Vec<ConstraintCheck> {
    let (mut out, p) = homogeneous_checks(doc, 2);
    if out[0].passed {
        let (c, b) = (p.c[0], p.b[0]);
        out.extend([
            ck("1/2 < c < 1", 0.5 < c && c < 1.0),
            ck("0 < b < c/2", 0.0 < b && b < c / 2.0),
            ck("u_1 != u_2", p.u[0] != p.u[1]),
            ck("d_1 != d_2", p.d[0] != p.d[1]),
        ]);
    }
    out
}

fn check_j29(doc: &SystemDocument) -> Vec<ConstraintCheck> {
    let (mut out, p) = homogeneous_checks(doc, 3);
    if out[0].passed {
        let (c, b) = (p.c[0], p.b[0]);
        let sq: Vec<[(f64, f64); 4]> = doc.float().maps().iter().map(TriangularMap::square_image).collect();
        out.extend([
            ck("1/3 < c < 1", 1.0 / 3.0 < c && c < 1.0),
            ck("0 < b < min(c/2, 1/3)", 0.0 < b && b < (c / 2.0).min(1.0 / 3.0)),
            ck("u pairwise distinct", p.u[0] != p.u[1] && p.u[1] != p.u[2] && p.u[0] != p.u[2]),
            ck("d_1 < d_2", p.d[0] < p.d[1]),
            ck("d_3 window", d3_window(&p)),
            ck(
                "S_3 square disjoint",
                !polygons_intersect(&sq[2], &sq[0]) && !polygons_intersect(&sq[2], &sq[1]),
            ),
        ]);
    }
    out
}

fn check_j48(doc: &SystemDocument) -> Vec<ConstraintCheck> {
    let (mut out, p) = homogeneous_checks(doc, 3);
    if out[0].passed {
        let (c, b) = (p.c[0], p.b[0]);
        let mut u = p.u.clone();
        u.sort_by(f64::total_cmp);
        out.extend([
            ck("1/sqrt(3) < c < 1", 1.0 / 3f64.sqrt() < c && c < 1.0),
            ck("0 < b < c/2", 0.0 < b && b < c / 2.0),
            ck("u arithmetic progression", ((u[1] - u[0]) - (u[2] - u[1])).abs() <= 1e-12 && u[1] > u[0]),
            ck("d_1 < d_2", p.d[0] < p.d[1]),
            ck("d_3 window", d3_window(&p)),
        ]);
    }
    out
}

fn check_j33(doc: &SystemDocument) -> Vec<ConstraintCheck> {
    let (mut out, p) = homogeneous_checks(doc, 3);
    if out[0].passed {
        let (c, b) = (p.c[0], p.b[0]);
        let rational = |f: fn(&crate::model::MapLiterals) -> &Number| doc.maps.iter().filter(|m| f(m).is_exact()).count();
        let exponent = 1.0 + 3f64.ln() / (2.0 * (3.0 * c).ln());
        out.extend([
            ck("c, b rational", doc.maps[0].c.is_exact() && doc.maps[0].b.is_exact()),
            ck("c < min(1/3, b), b < 1", c < (1.0 / 3.0f64).min(b) && b < 1.0),
            ck("b < min(sqrt c, c^e)", b < c.sqrt().min(c.powf(exponent))),
            ck("two rational d", rational(|m| &m.d) == 2),
            ck("two rational u", rational(|m| &m.u) == 2),
        ]);
    }
    out
}
