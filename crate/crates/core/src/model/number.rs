//! Numeric literals of system documents.
//!
//! A literal is either an exact rational (finite decimals and fractions) or a
//! tagged irrational built from a square root. Irrationals carry a rational
//! approximation with an explicit error bound so the separation code can
//! work with them at well beyond double precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Rational;

/// Bits of precision used for square-root literals.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// A real number known through a rational approximation and an error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct HighPrecision {
    approx: Rational,
    error: Rational,
    label: String,
}

impl HighPrecision {
    /// `sqrt(radicand)` to within `2^-bits`.
    pub fn sqrt(radicand: &Rational, bits: u32) -> Self {
        assert!(!radicand.is_negative(), "square root of a negative rational");
        // sqrt(p/q) = sqrt(p*q)/q
        let p = radicand.numer();
        let q = radicand.denom();
        let scale = BigInt::one() << (2 * bits as usize);
        let root = (p * q * scale).sqrt();
        let denom = q * (BigInt::one() << bits as usize);
        let approx = Rational::new(root, denom.clone());
        let error = Rational::new(BigInt::one(), denom);
        Self {
            approx,
            error,
            label: format!("sqrt({radicand})"),
        }
    }

    /// Wraps an exact value; used to probe what happens when the "irrational"
    /// offset is in fact rational.
    pub fn exact(value: Rational) -> Self {
        let label = value.to_string();
        Self {
            approx: value,
            error: Rational::zero(),
            label,
        }
    }

    /// Multiplies by an exact rational; the error bound scales with it.
    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            approx: &self.approx * k,
            error: &self.error * k.abs(),
            label: format!("{}*({})", k, self.label),
        }
    }

    pub fn approx(&self) -> &Rational {
        &self.approx
    }

    /// Upper bound on `|value - approx|`.
    pub fn error_bound(&self) -> &Rational {
        &self.error
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn to_f64(&self) -> f64 {
        self.approx.to_f64().unwrap_or(f64::NAN)
    }
}

/// A parsed numeric literal.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact { value: Rational, text: String },
    Irrational { value: HighPrecision, text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid number literal {text:?}: {reason}")]
pub struct NumberError {
    pub text: String,
    pub reason: String,
}

impl Number {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Number::Exact { value, .. } => Some(value),
            Number::Irrational { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact { .. })
    }

    /// Nearest double. Decimal literals go through the correctly rounded
    /// std parser so they round-trip bit-exactly.
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact { value, text } => text
                .parse::<f64>()
                .ok()
                .unwrap_or_else(|| value.to_f64().unwrap_or(f64::NAN)),
            Number::Irrational { value, .. } => value.to_f64(),
        }
    }

    pub fn text(&self) -> &str {
        match self {
            Number::Exact { text, .. } | Number::Irrational { text, .. } => text,
        }
    }

    /// Shortest decimal that parses back to `x`.
    pub fn from_f64(x: f64) -> Self {
        let text = format!("{x}");
        let value = Rational::from_float(x).unwrap_or_else(Rational::zero);
        Number::Exact { value, text }
    }

    pub fn from_rational(value: Rational) -> Self {
        let text = value.to_string();
        Number::Exact { value, text }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

impl FromStr for Number {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim().to_string();
        let err = |reason: &str| NumberError {
            text: text.clone(),
            reason: reason.to_string(),
        };
        if text.is_empty() {
            return Err(err("empty"));
        }
        if let Some(pos) = text.find("sqrt(") {
            return parse_sqrt(&text, pos).map_err(|r| err(&r));
        }
        let value = parse_rational(&text).map_err(|r| err(&r))?;
        Ok(Number::Exact { value, text })
    }
}

// [coef*]sqrt(arg)[/den]
fn parse_sqrt(text: &str, pos: usize) -> Result<Number, String> {
    let head = text[..pos].trim();
    let coef = if head.is_empty() {
        Rational::one()
    } else if head == "-" {
        -Rational::one()
    } else {
        let h = head
            .strip_suffix('*')
            .ok_or_else(|| "expected '*' before sqrt".to_string())?;
        parse_rational(h.trim())?
    };
    let rest = &text[pos + "sqrt(".len()..];
    let close = rest.find(')').ok_or_else(|| "unclosed sqrt(".to_string())?;
    let radicand = parse_rational(rest[..close].trim())?;
    if radicand.is_negative() {
        return Err("negative radicand".into());
    }
    let tail = rest[close + 1..].trim();
    let divisor = if tail.is_empty() {
        Rational::one()
    } else {
        let d = tail
            .strip_prefix('/')
            .ok_or_else(|| format!("unexpected trailing text {tail:?}"))?;
        let d = parse_rational(d.trim())?;
        if d.is_zero() {
            return Err("division by zero".into());
        }
        d
    };
    let k = coef / divisor;
    if let Some(root) = exact_sqrt(&radicand) {
        return Ok(Number::Exact {
            value: root * k,
            text: text.to_string(),
        });
    }
    Ok(Number::Irrational {
        value: HighPrecision::sqrt(&radicand, DEFAULT_PRECISION_BITS).scale(&k),
        text: text.to_string(),
    })
}

fn exact_sqrt(r: &Rational) -> Option<Rational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Parses a decimal (`-0.125`, `3e-2`) or a fraction (`3/8`).
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n.trim())?;
        let d = parse_rational(d.trim())?;
        if d.is_zero() {
            return Err("division by zero".into());
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (
            &s[..i],
            s[i + 1..]
                .parse::<i32>()
                .map_err(|_| "bad exponent".to_string())?,
        ),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err("no digits".into());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err("not a decimal number".into());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().map_err(|e| e.to_string())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if negative { -value } else { value })
}
