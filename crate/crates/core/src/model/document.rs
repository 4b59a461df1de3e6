//! System-description documents.
//!
//! ```json
//! {
//!   "label": "two-map example",
//!   "maps": [
//!     { "c": "0.7", "b": "0.3", "d": "-0.2", "u": "0",   "v": "0.45" },
//!     { "c": "0.7", "b": "0.3", "d": "0.2",  "u": "0.3", "v": "0.25" }
//!   ]
//! }
//! ```
//!
//! Numbers are strings (`"0.125"`, `"3/8"`, `"sqrt(2)/8"`); bare JSON numbers
//! are accepted too. Decimal and fraction literals are kept exactly.

use serde::{Deserialize, Serialize};

use super::number::{Number, NumberError};
use super::system::{AffineIfs, TriangularMap, ValidationError};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad number in map {map} field {field}: {source}")]
    Number {
        map: usize,
        field: &'static str,
        source: NumberError,
    },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Literal {
    Text(String),
    Json(serde_json::Number),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Text(s) => s.clone(),
            Literal::Json(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    c: Literal,
    b: Literal,
    d: Literal,
    u: Literal,
    v: Literal,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    maps: Vec<RawMap>,
}

/// Coefficients of one map as written in the document.
#[derive(Debug, Clone, PartialEq)]
pub struct MapLiterals {
    pub c: Number,
    pub b: Number,
    pub d: Number,
    pub u: Number,
    pub v: Number,
}

impl MapLiterals {
    fn fields(&self) -> [&Number; 5] {
        [&self.c, &self.b, &self.d, &self.u, &self.v]
    }

    fn exact(&self) -> Option<TriangularMap<Rational>> {
        Some(TriangularMap::new(
            self.c.exact()?.clone(),
            self.b.exact()?.clone(),
            self.d.exact()?.clone(),
            self.u.exact()?.clone(),
            self.v.exact()?.clone(),
        ))
    }

    fn float(&self) -> TriangularMap<f64> {
        TriangularMap::new(
            self.c.to_f64(),
            self.b.to_f64(),
            self.d.to_f64(),
            self.u.to_f64(),
            self.v.to_f64(),
        )
    }
}

/// A parsed and validated system description, keeping every literal.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDocument {
    pub label: Option<String>,
    pub maps: Vec<MapLiterals>,
}

impl SystemDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut maps = Vec::with_capacity(raw.maps.len());
        for (i, m) in raw.maps.iter().enumerate() {
            let field = |name: &'static str, lit: &Literal| {
                lit.text().parse::<Number>().map_err(|source| DocumentError::Number {
                    map: i + 1,
                    field: name,
                    source,
                })
            };
            maps.push(MapLiterals {
                c: field("c", &m.c)?,
                b: field("b", &m.b)?,
                d: field("d", &m.d)?,
                u: field("u", &m.u)?,
                v: field("v", &m.v)?,
            });
        }
        let doc = Self { label: raw.label, maps };
        doc.validate()?;
        Ok(doc)
    }

    /// Validates exactly where every coefficient of a map is rational, in
    /// double precision otherwise.
    fn validate(&self) -> Result<(), ValidationError> {
        if self.maps.is_empty() {
            return Err(ValidationError::Empty);
        }
        let mut violations = Vec::new();
        for (i, m) in self.maps.iter().enumerate() {
            let result = match m.exact() {
                Some(exact) => AffineIfs::new(vec![exact], None).map(|_| ()),
                None => AffineIfs::new(vec![m.float()], None).map(|_| ()),
            };
            if let Err(e) = result {
                violations.extend(e.violations().iter().cloned().map(|mut v| {
                    v.map = i;
                    v
                }));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError::Violations(violations))
        }
    }

    pub fn is_exact(&self) -> bool {
        self.maps.iter().all(|m| m.fields().iter().all(|n| n.is_exact()))
    }

    pub fn float(&self) -> AffineIfs<f64> {
        AffineIfs::new(self.maps.iter().map(MapLiterals::float).collect(), self.label.clone())
            .expect("document was validated")
    }

    /// Exact system, available when no literal is irrational.
    pub fn exact(&self) -> Option<AffineIfs<Rational>> {
        let maps = self.maps.iter().map(MapLiterals::exact).collect::<Option<Vec<_>>>()?;
        AffineIfs::new(maps, self.label.clone()).ok()
    }

    pub fn from_system<T: Scalar + ToLiteral>(system: &AffineIfs<T>) -> Self {
        Self {
            label: system.label().map(str::to_string),
            maps: system
                .maps()
                .iter()
                .map(|m| MapLiterals {
                    c: m.c.to_literal(),
                    b: m.b.to_literal(),
                    d: m.d.to_literal(),
                    u: m.u.to_literal(),
                    v: m.v.to_literal(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            label: self.label.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| {
                    let t = |n: &Number| Literal::Text(n.text().to_string());
                    RawMap {
                        c: t(&m.c),
                        b: t(&m.b),
                        d: t(&m.d),
                        u: t(&m.u),
                        v: t(&m.v),
                    }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("document serializes")
    }
}

/// Scalars that can be written back as document literals.
pub trait ToLiteral {
    fn to_literal(&self) -> Number;
}

impl ToLiteral for f64 {
    fn to_literal(&self) -> Number {
        Number::from_f64(*self)
    }
}

impl ToLiteral for Rational {
    fn to_literal(&self) -> Number {
        Number::from_rational(self.clone())
    }
}

/// Parses and validates a system description into its double-precision form.
pub fn parse_system(text: &str) -> Result<AffineIfs<f64>, DocumentError> {
    SystemDocument::parse(text).map(|d| d.float())
}

/// Serializes a system; every coefficient parses back to the same bits.
pub fn serialize_system(system: &AffineIfs<f64>) -> String {
    SystemDocument::from_system(system).to_json()
}
