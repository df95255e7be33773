//! Long Weierstrass models over a quadratic field and their invariants.

use std::fmt;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::number_field::{FieldElement, QuadraticField};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    field: QuadraticField,
    coeffs: [FieldElement; 5],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub b2: FieldElement,
    pub b4: FieldElement,
    pub b6: FieldElement,
    pub b8: FieldElement,
    pub c4: FieldElement,
    pub c6: FieldElement,
    pub discriminant: FieldElement,
    pub j: FieldElement,
}

fn weierstrass(coeffs: &[FieldElement; 5]) -> [FieldElement; 7] {
    let [a1, a2, a3, a4, a6] = coeffs;
    let f = a1.field();
    let k = |n: i64| f.int(n);
    let b2 = a1 * a1 + k(4) * a2;
    let b4 = k(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + k(4) * a6;
    let b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - k(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + k(36) * &b2 * &b4 - k(216) * &b6;
    let disc = -(&b2 * &b2 * &b8) - k(8) * &b4 * &b4 * &b4 - k(27) * &b6 * &b6 + k(9) * &b2 * &b4 * &b6;
    [b2, b4, b6, b8, c4, c6, disc]
}

impl EllipticCurve {
    pub fn new(coeffs: [FieldElement; 5]) -> Result<Self> {
        let field = coeffs[0].field();
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if weierstrass(&coeffs)[6].is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(Self { field, coeffs })
    }

    /// `y² = x³ + a4·x + a6`, stored in long form.
    pub fn short(a4: FieldElement, a6: FieldElement) -> Result<Self> {
        let z = a4.field().zero();
        Self::new([z.clone(), z.clone(), z, a4, a6])
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn coefficients(&self) -> &[FieldElement; 5] {
        &self.coeffs
    }

    /// `(a1, a2, a3, a4, a6)` with the Weierstrass weights `1, 2, 3, 4, 6`.
    pub fn weights() -> [u32; 5] {
        [1, 2, 3, 4, 6]
    }

    pub fn invariants(&self) -> CurveInvariants {
        let [b2, b4, b6, b8, c4, c6, discriminant] = weierstrass(&self.coeffs);
        let j = &(&c4 * &c4 * &c4) / &discriminant;
        CurveInvariants { b2, b4, b6, b8, c4, c6, discriminant, j }
    }

    pub fn discriminant(&self) -> FieldElement {
        weierstrass(&self.coeffs)[6].clone()
    }

    pub fn j_invariant(&self) -> FieldElement {
        self.invariants().j
    }

    /// The model with `a_i` replaced by `u^i·a_i`; `c4, c6, Δ` pick up `u⁴, u⁶, u¹²`.
    pub fn scaled(&self, u: &FieldElement) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let coeffs = std::array::from_fn(|i| &self.coeffs[i] * &u.pow(Self::weights()[i]));
        Self::new(coeffs)
    }

    /// Scaling by the least common denominator `D` of all coordinates gives an integral model.
    pub fn integral_model(&self) -> (Self, BigRational) {
        let den = self
            .coeffs
            .iter()
            .map(|c| c.denominator())
            .fold(num_bigint::BigInt::from(1), |acc, d| num_integer::Integer::lcm(&acc, &d));
        let u = BigRational::from_integer(den);
        let model = self
            .scaled(&FieldElement::from_rational(self.field, u.clone()))
            .expect("scaling by a nonzero rational keeps the model nonsingular");
        (model, u)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_integral)
    }

    /// Parses `[a1; a2; a3; a4; a6]`, or the short form `[a4; a6]`.
    pub fn parse(field: QuadraticField, s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [a1; a2; a3; a4; a6], got {t:?}")))?;
        let parts = inner
            .split(';')
            .map(|p| field.parse_element(p))
            .collect::<Result<Vec<_>>>()?;
        match <[FieldElement; 5]>::try_from(parts) {
            Ok(coeffs) => Self::new(coeffs),
            Err(parts) if parts.len() == 2 => {
                let [a4, a6]: [FieldElement; 2] = parts.try_into().expect("length 2");
                Self::short(a4, a6)
            }
            Err(parts) => Err(Error::Parse(format!("expected 5 or 2 coefficients, got {}", parts.len()))),
        }
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

impl Serialize for EllipticCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter())
    }
}
