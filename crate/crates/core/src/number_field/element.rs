use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{Basis, QuadraticField};
use crate::error::{Error, Result};

/// `c0 + c1·ω` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: QuadraticField,
    c0: BigRational,
    c1: BigRational,
}

impl FieldElement {
    pub fn new(field: QuadraticField, c0: BigRational, c1: BigRational) -> Self {
        Self { field, c0, c1 }
    }

    pub fn from_int(field: QuadraticField, n: i64) -> Self {
        Self::from_ints(field, n, 0)
    }

    pub fn from_ints(field: QuadraticField, c0: i64, c1: i64) -> Self {
        Self::new(field, BigRational::from_integer(c0.into()), BigRational::from_integer(c1.into()))
    }

    pub fn from_rational(field: QuadraticField, c0: BigRational) -> Self {
        Self::new(field, c0, BigRational::zero())
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn c0(&self) -> &BigRational {
        &self.c0
    }

    pub fn c1(&self) -> &BigRational {
        &self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    /// Integral over `Z` exactly when both coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.c0.is_integer() && self.c1.is_integer()
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    /// Least positive integer `D` with `D·self` integral.
    pub fn denominator(&self) -> BigInt {
        self.c0.denom().lcm(self.c1.denom())
    }

    pub fn conjugate(&self) -> Self {
        match self.field.basis() {
            Basis::Sqrt => Self::new(self.field, self.c0.clone(), -&self.c1),
            // ω̄ = 1 − ω
            Basis::HalfInteger => Self::new(self.field, &self.c0 + &self.c1, -&self.c1),
        }
    }

    pub fn trace(&self) -> BigRational {
        let two = BigRational::from_integer(2.into());
        match self.field.basis() {
            Basis::Sqrt => &self.c0 * two,
            Basis::HalfInteger => &self.c0 * two + &self.c1,
        }
    }

    pub fn norm(&self) -> BigRational {
        let (s0, s1) = self.field.omega_square();
        let s0 = BigRational::from_integer(s0.into());
        // (a + bω)(a + bω̄) = a² + ab·tr(ω) + b²·N(ω), with tr(ω) = s1 and N(ω) = −s0
        let s1 = BigRational::from_integer(s1.into());
        &self.c0 * &self.c0 + &self.c0 * &self.c1 * s1 - &self.c1 * &self.c1 * s0
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let bar = self.conjugate();
        Ok(Self::new(self.field, bar.c0 / &n, bar.c1 / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::from_int(self.field, 1);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_signed(&self, exp: i64) -> Result<Self> {
        let p = self.pow(exp.unsigned_abs() as u32);
        if exp < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.field, &self.c0 * r, &self.c1 * r)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub(crate) fn parse(field: QuadraticField, s: &str) -> Result<Self> {
        let t = s.trim();
        let parse_rat = |x: &str| -> Result<BigRational> {
            let x = x.trim();
            let r = BigRational::from_str(x).map_err(|e| Error::Parse(format!("{x:?}: {e}")))?;
            Ok(r)
        };
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let mut parts = inner.split(',');
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("expected (c0,c1), got {t:?}")));
            };
            Ok(Self::new(field, parse_rat(a)?, parse_rat(b)?))
        } else {
            Ok(Self::from_rational(field, parse_rat(t)?))
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", fmt_rat(&self.c0), fmt_rat(&self.c1))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(self.field, -&self.c0, -&self.c1)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        FieldElement::new(self.field, &self.c0 + &rhs.c0, &self.c1 + &rhs.c1)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        FieldElement::new(self.field, &self.c0 - &rhs.c0, &self.c1 - &rhs.c1)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let (s0, s1) = self.field.omega_square();
        let bd = &self.c1 * &rhs.c1;
        let c0 = &self.c0 * &rhs.c0 + &bd * BigRational::from_integer(s0.into());
        let c1 = &self.c0 * &rhs.c1 + &self.c1 * &rhs.c0 + bd * BigRational::from_integer(s1.into());
        FieldElement::new(self.field, c0, c1)
    }
}

/// Panics on a zero divisor; use [`FieldElement::checked_div`] to get an error instead.
impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero or across fields")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement { (&self).$m(rhs) }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);
