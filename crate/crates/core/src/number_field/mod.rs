//! Exact arithmetic in quadratic fields `Q(√d)`.
//!
//! Elements are stored over the integral basis `{1, ω}` where `ω = √d` when
//! `d ≢ 1 (mod 4)` and `ω = (1 + √d)/2` otherwise, so that the ring of
//! integers is exactly the set of elements with integer coordinates.

mod element;
mod prime;

pub use element::FieldElement;
pub use prime::{PrimeIdeal, Splitting, Valuation};
pub(crate) use prime::rat_mod;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::arith::{self, DEFAULT_FACTOR_BOUND};
use crate::error::{Error, Result};

/// The nine `d` with `Q(√d)` imaginary of class number one.
pub const CLASS_NUMBER_ONE: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `ω = √d`
    Sqrt,
    /// `ω = (1 + √d)/2`
    HalfInteger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d: i64,
    disc: i64,
    basis: Basis,
}

impl Serialize for QuadraticField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.d)
    }
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidField { d, reason: "d must not be 0 or 1".into() });
        }
        if !arith::is_squarefree(d) {
            return Err(Error::InvalidField { d, reason: "d is not squarefree".into() });
        }
        if d.rem_euclid(4) == 1 {
            Ok(Self { d, disc: d, basis: Basis::HalfInteger })
        } else {
            let disc = d
                .checked_mul(4)
                .ok_or_else(|| Error::InvalidField { d, reason: "discriminant overflows".into() })?;
            Ok(Self { d, disc, basis: Basis::Sqrt })
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        2
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    pub fn is_class_number_one_imaginary(&self) -> bool {
        CLASS_NUMBER_ONE.contains(&self.d)
    }

    /// `ω² = omega_sq.0 + omega_sq.1 · ω`.
    pub(crate) fn omega_square(&self) -> (i64, i64) {
        match self.basis {
            Basis::Sqrt => (self.d, 0),
            Basis::HalfInteger => ((self.d - 1) / 4, 1),
        }
    }

    /// Coefficients `(c1, c0)` of the minimal polynomial `x² + c1 x + c0` of `ω`.
    pub(crate) fn omega_min_poly(&self) -> (i64, i64) {
        let (s0, s1) = self.omega_square();
        (-s1, -s0)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_int(*self, 0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_int(*self, 1)
    }

    pub fn omega(&self) -> FieldElement {
        FieldElement::from_ints(*self, 0, 1)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement::from_int(*self, n)
    }

    /// `√d` as an element of the field.
    pub fn sqrt_d(&self) -> FieldElement {
        match self.basis {
            Basis::Sqrt => self.omega(),
            Basis::HalfInteger => FieldElement::from_ints(*self, -1, 2),
        }
    }

    /// Decides how the rational prime `q` splits.
    pub fn splitting_type(&self, q: u64) -> Result<Splitting> {
        if !arith::is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if self.disc.rem_euclid(q as i64) == 0 {
            return Ok(Splitting::Ramified);
        }
        if q == 2 {
            return Ok(if self.disc.rem_euclid(8) == 1 { Splitting::Split } else { Splitting::Inert });
        }
        Ok(match arith::legendre(arith::reduce_i64(self.disc, q), q) {
            1 => Splitting::Split,
            _ => Splitting::Inert,
        })
    }

    /// The prime ideals above `q`, ordered by the residue of `ω`.
    pub fn primes_above(&self, q: u64) -> Result<Vec<PrimeIdeal>> {
        prime::primes_above(*self, q)
    }

    /// An element of norm `±q` generating the `root_choice`-th prime above `q`.
    pub fn prime_generator(&self, q: u64, root_choice: usize) -> Result<FieldElement> {
        if !self.is_class_number_one_imaginary() {
            return Err(Error::Unsupported(format!(
                "prime generators need an imaginary class-number-one field, got d = {}",
                self.d
            )));
        }
        if self.splitting_type(q)? == Splitting::Inert {
            return Err(Error::InertPrime { q });
        }
        let primes = self.primes_above(q)?;
        let prime = primes.get(root_choice).ok_or_else(|| {
            Error::Invalid(format!("root choice {root_choice} out of range for {} primes", primes.len()))
        })?;
        prime.generator.clone().ok_or_else(|| Error::Unsupported("no generator".into()))
    }

    /// The torsion units of an imaginary quadratic field.
    pub fn units(&self) -> Result<Vec<FieldElement>> {
        if !self.is_imaginary() {
            return Err(Error::Unsupported("unit group of a real quadratic field is infinite".into()));
        }
        let f = *self;
        Ok(match self.d {
            -1 => vec![f.int(1), f.int(-1), f.omega(), -f.omega()],
            -3 => {
                // ω = (1 + √−3)/2 is a primitive sixth root of unity
                let w = f.omega();
                (0..6).map(|k| w.pow(k)).collect()
            }
            _ => vec![f.int(1), f.int(-1)],
        })
    }

    pub fn is_unit(&self, x: &FieldElement) -> bool {
        x.is_integral() && x.norm().abs().is_one()
    }

    /// Whether no prime ideal divides both `x` and `y`.
    pub fn are_coprime(&self, x: &FieldElement, y: &FieldElement) -> Result<bool> {
        self.are_coprime_with_bound(x, y, DEFAULT_FACTOR_BOUND)
    }

    pub fn are_coprime_with_bound(&self, x: &FieldElement, y: &FieldElement, bound: u64) -> Result<bool> {
        for z in [x, y] {
            if z.is_zero() {
                return Err(Error::Invalid("coprimality needs nonzero elements".into()));
            }
            if !z.is_integral() {
                return Err(Error::Invalid(format!("{z} is not an algebraic integer")));
            }
        }
        let g: BigInt = x.norm().numer().gcd(y.norm().numer());
        for l in arith::prime_support(&g, bound)? {
            for prime in self.primes_above(l)? {
                if prime.valuation(x).is_positive() && prime.valuation(y).is_positive() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parses an element literal `(c0,c1)`; a bare rational is accepted as `(c0,0)`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        FieldElement::parse(*self, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let gauss = QuadraticField::new(-1).unwrap();
        assert_eq!(gauss.discriminant(), -4);
        assert_eq!(gauss.basis(), Basis::Sqrt);
        let eis = QuadraticField::new(-3).unwrap();
        assert_eq!(eis.discriminant(), -3);
        assert_eq!(eis.basis(), Basis::HalfInteger);
        assert!(matches!(QuadraticField::new(12), Err(Error::InvalidField { .. })));
        assert!(QuadraticField::new(0).is_err());
        assert!(QuadraticField::new(1).is_err());
        assert_eq!(QuadraticField::new(5).unwrap().discriminant(), 5);
        assert_eq!(QuadraticField::new(2).unwrap().discriminant(), 8);
    }

    #[test]
    fn disc_is_zero_or_one_mod_four() {
        for d in -200i64..200 {
            if let Ok(f) = QuadraticField::new(d) {
                assert!(matches!(f.discriminant().rem_euclid(4), 0 | 1));
            }
        }
    }

    // Splitting via factoring the minimal polynomial of ω modulo q by brute force.
    fn splitting_by_roots(f: &QuadraticField, q: u64) -> Splitting {
        let (c1, c0) = f.omega_min_poly();
        let roots: Vec<u64> = (0..q)
            .filter(|&x| {
                let v = x as i128 * x as i128 + c1 as i128 * x as i128 + c0 as i128;
                v.rem_euclid(q as i128) == 0
            })
            .collect();
        match roots.len() {
            0 => Splitting::Inert,
            2 => Splitting::Split,
            1 => Splitting::Ramified,
            _ => unreachable!(),
        }
    }

    #[test]
    fn splitting_matches_polynomial_factorization() {
        for d in [-1, -2, -3, -7, -11, -19, -43, -67, -163, 2, 3, 5, 13, -5, -6] {
            let f = QuadraticField::new(d).unwrap();
            for q in arith::primes_up_to(200) {
                assert_eq!(f.splitting_type(q).unwrap(), splitting_by_roots(&f, q), "d = {d}, q = {q}");
            }
        }
    }

    #[test]
    fn splitting_examples() {
        let f11 = QuadraticField::new(-11).unwrap();
        assert_eq!(f11.splitting_type(2).unwrap(), Splitting::Inert);
        let gauss = QuadraticField::new(-1).unwrap();
        assert_eq!(gauss.splitting_type(2).unwrap(), Splitting::Ramified);
        let eis = QuadraticField::new(-3).unwrap();
        // 3² − 3 + 1 = 7: x² − x + 1 has roots 3 and 5 mod 7
        assert_eq!(eis.splitting_type(7).unwrap(), Splitting::Split);
        assert_eq!(eis.splitting_type(6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn units_examples() {
        let eis = QuadraticField::new(-3).unwrap();
        let u = eis.units().unwrap();
        assert_eq!(u.len(), 6);
        let eps = eis.omega() - eis.one();
        assert!((&eps * &eps + &eps + eis.one()).is_zero());
        assert!(u.contains(&eps));
        assert_eq!(QuadraticField::new(-11).unwrap().units().unwrap().len(), 2);
        assert_eq!(QuadraticField::new(-1).unwrap().units().unwrap().len(), 4);
        assert!(QuadraticField::new(5).unwrap().units().is_err());
    }

    #[test]
    fn units_are_closed_and_norm_one() {
        for d in CLASS_NUMBER_ONE {
            let f = QuadraticField::new(d).unwrap();
            let units = f.units().unwrap();
            for a in &units {
                assert!(f.is_unit(a));
                assert!(a.inv().unwrap().is_integral());
                for b in &units {
                    assert!(units.contains(&(a * b)));
                }
            }
            // no other integral element of norm 1 with small coordinates
            for c0 in -3..=3 {
                for c1 in -3..=3 {
                    let x = FieldElement::from_ints(f, c0, c1);
                    if f.is_unit(&x) {
                        assert!(units.contains(&x), "d = {d}: {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn coprimality_examples() {
        let gauss = QuadraticField::new(-1).unwrap();
        let x = gauss.parse_element("(1,1)").unwrap();
        assert!(gauss.are_coprime(&x, &gauss.int(3)).unwrap());
        let eis = QuadraticField::new(-3).unwrap();
        let two_w = eis.int(2) * eis.omega();
        assert!(!eis.are_coprime(&eis.int(2), &two_w).unwrap());
        assert!(eis.are_coprime(&eis.one(), &two_w).unwrap());
        // 2 + i and 2 − i share no prime although both norms are 5
        let a = gauss.parse_element("(2,1)").unwrap();
        let b = gauss.parse_element("(2,-1)").unwrap();
        assert!(gauss.are_coprime(&a, &b).unwrap());
        assert!(!gauss.are_coprime(&a, &(a.clone() * gauss.int(3))).unwrap());
        assert!(gauss.are_coprime(&gauss.zero(), &a).is_err());
        assert!(gauss.are_coprime(&gauss.parse_element("(1/2,0)").unwrap(), &a).is_err());
    }
}
