use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::{Serialize, Serializer};

use super::{FieldElement, QuadraticField};
use crate::arith;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

/// A discrete valuation; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_positive(self) -> bool {
        self > Valuation::Finite(0)
    }

    pub fn is_negative(self) -> bool {
        self < Valuation::Finite(0)
    }

    pub fn at_least(self, n: i64) -> bool {
        self >= Valuation::Finite(n)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A prime of a quadratic field above the rational prime `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeIdeal {
    #[serde(skip)]
    pub field: QuadraticField,
    pub q: u64,
    pub splitting: Splitting,
    pub residue_degree: u32,
    pub ramification: u32,
    /// Image of `ω` in the residue field `F_q` (split and ramified primes).
    pub omega_residue: Option<u64>,
    /// A generator of the ideal, known in imaginary class-number-one fields.
    pub generator: Option<FieldElement>,
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.omega_residue {
            Some(r) if self.splitting == Splitting::Split => {
                write!(f, "({}, ω − {}) [{}]", self.q, r, self.splitting)
            }
            _ => write!(f, "prime above {} [{}]", self.q, self.splitting),
        }
    }
}

pub(super) fn primes_above(field: QuadraticField, q: u64) -> Result<Vec<PrimeIdeal>> {
    let splitting = field.splitting_type(q)?;
    let (f, e) = match splitting {
        Splitting::Split => (1, 1),
        Splitting::Inert => (2, 1),
        Splitting::Ramified => (1, 2),
    };
    let roots = omega_roots(field, q);
    let make = |omega_residue: Option<u64>| {
        let mut p = PrimeIdeal {
            field,
            q,
            splitting,
            residue_degree: f,
            ramification: e,
            omega_residue,
            generator: None,
        };
        if field.is_class_number_one_imaginary() {
            p.generator = Some(match splitting {
                Splitting::Inert => field.int(q as i64),
                _ => search_generator(field, q, omega_residue.expect("root present"))
                    .expect("class number one: every split or ramified prime is principal"),
            });
        }
        p
    };
    Ok(match splitting {
        Splitting::Inert => vec![make(None)],
        Splitting::Ramified => vec![make(Some(roots[0]))],
        Splitting::Split => roots.iter().map(|&r| make(Some(r))).collect(),
    })
}

/// Roots of the minimal polynomial of `ω` modulo `q`, ascending and distinct.
fn omega_roots(field: QuadraticField, q: u64) -> Vec<u64> {
    let (c1, c0) = field.omega_min_poly();
    if q == 2 {
        return (0..2u64)
            .filter(|&x| (x as i64 * x as i64 + c1 * x as i64 + c0).rem_euclid(2) == 0)
            .collect();
    }
    let disc = arith::reduce_i64(field.discriminant(), q);
    let Some(s) = arith::sqrt_mod(disc, q) else {
        return Vec::new();
    };
    let half = arith::inv_mod(2, q).expect("q odd");
    let minus_c1 = arith::reduce_i64(-c1, q);
    let mut roots = vec![
        arith::mul_mod((minus_c1 + s) % q, half, q),
        arith::mul_mod((minus_c1 + q - s) % q, half, q),
    ];
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Norm-form search for `a + bω` of norm `q` vanishing at the prime with `ω ≡ r`.
///
/// Ties break on the smallest `(|b|, |a|)`, preferring nonnegative `a`, then `b`.
fn search_generator(field: QuadraticField, q: u64, r: u64) -> Option<FieldElement> {
    let d = field.d() as i128;
    let q = q as i128;
    let mut candidates: Vec<(i128, i128)> = Vec::new();
    match field.basis() {
        super::Basis::Sqrt => {
            // a² − d b² = q
            let bmax = isqrt((q / -d) as u128) as i128;
            for b in -bmax..=bmax {
                let rest = q + d * b * b;
                if rest < 0 {
                    continue;
                }
                let a = isqrt(rest as u128) as i128;
                if a * a == rest {
                    candidates.push((a, b));
                    candidates.push((-a, b));
                }
            }
        }
        super::Basis::HalfInteger => {
            // a² + ab − m b² = q  ⟺  (2a + b)² = 4q + d b²
            let bmax = isqrt((4 * q / -d) as u128) as i128;
            for b in -bmax..=bmax {
                let rest = 4 * q + d * b * b;
                if rest < 0 {
                    continue;
                }
                let s = isqrt(rest as u128) as i128;
                if s * s != rest {
                    continue;
                }
                for t in [s, -s] {
                    if (t - b).rem_euclid(2) == 0 {
                        candidates.push(((t - b) / 2, b));
                    }
                }
            }
        }
    }
    candidates
        .into_iter()
        .filter(|&(a, b)| (a + b * r as i128).rem_euclid(q) == 0)
        .min_by_key(|&(a, b)| (b.abs(), a.abs(), a < 0, b < 0))
        .map(|(a, b)| FieldElement::from_ints(field, a as i64, b as i64))
}

/// `x mod m` for a rational whose denominator is a unit modulo `m`.
pub(crate) fn rat_mod(x: &BigRational, m: &BigInt) -> Option<BigInt> {
    let den = x.denom().mod_floor(m);
    let inv = den.modinv(m)?;
    Some((x.numer() * inv).mod_floor(m))
}

impl PrimeIdeal {
    pub fn residue_characteristic(&self) -> u64 {
        self.q
    }

    /// Absolute norm `q^f`.
    pub fn norm(&self) -> u128 {
        (self.q as u128).pow(self.residue_degree)
    }

    /// An element of valuation exactly one at this prime.
    pub fn uniformizer(&self) -> FieldElement {
        if let Some(g) = &self.generator {
            return g.clone();
        }
        let f = self.field;
        match self.splitting {
            Splitting::Inert => f.int(self.q as i64),
            Splitting::Ramified => {
                if f.d().rem_euclid(self.q as i64) == 0 {
                    f.sqrt_d()
                } else {
                    f.one() + f.sqrt_d()
                }
            }
            Splitting::Split => {
                // N(ω − r) = minpoly(r); shift r by q when q² divides it
                let r = self.omega_residue.expect("split prime has a root") as i64;
                let (c1, c0) = f.omega_min_poly();
                let q = self.q as i128;
                let value = |x: i128| x * x + c1 as i128 * x + c0 as i128;
                let lift = if value(r as i128).rem_euclid(q * q) == 0 { r + self.q as i64 } else { r };
                f.omega() - f.int(lift)
            }
        }
    }

    /// The valuation of `x` at this prime.
    pub fn valuation(&self, x: &FieldElement) -> Valuation {
        assert_eq!(x.field(), self.field, "field mismatch");
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let vn = arith::val_rat(&x.norm(), self.q).expect("nonzero norm");
        Valuation::Finite(match self.splitting {
            Splitting::Inert => vn / 2,
            Splitting::Ramified => vn,
            Splitting::Split => match &self.generator {
                Some(g) => self.split_valuation_by_division(g, x),
                None => self.split_valuation_adic(x),
            },
        })
    }

    pub fn valuation_of_rational(&self, r: &BigRational) -> Valuation {
        match arith::val_rat(r, self.q) {
            None => Valuation::Infinite,
            Some(v) => Valuation::Finite(v * self.ramification as i64),
        }
    }

    /// Multiplicity of the generator `g` in `x`, by repeated exact division.
    fn split_valuation_by_division(&self, g: &FieldElement, x: &FieldElement) -> i64 {
        let den = x.denominator();
        let mut num = x.scale(&BigRational::from_integer(den.clone()));
        let g_norm = g.norm();
        let g_bar = g.conjugate();
        let mut v = 0i64;
        loop {
            let next = (&num * &g_bar).scale(&g_norm.recip());
            if !next.is_integral() {
                break;
            }
            num = next;
            v += 1;
        }
        v - arith::val_int(&den, self.q) as i64
    }

    /// Valuation through the `q`-adic embedding `ω ↦ ω̂ ∈ Z_q` attached to this prime.
    pub(crate) fn split_valuation_adic(&self, x: &FieldElement) -> i64 {
        let shift = coordinate_shift(x, self.q);
        let qb = BigInt::from(self.q);
        let y = x.scale(&BigRational::from_integer(qb.clone()).pow(-shift as i32));
        let n = arith::val_rat(&y.norm(), self.q).expect("nonzero") as u32;
        let modulus = Pow::pow(&qb, n + 1);
        let w = self.omega_adic(n + 1);
        let z = (rat_mod(y.c0(), &modulus).expect("q-integral")
            + rat_mod(y.c1(), &modulus).expect("q-integral") * w)
            .mod_floor(&modulus);
        debug_assert!(!z.is_zero());
        shift + arith::val_int(&z, self.q) as i64
    }

    /// Root of the minimal polynomial of `ω` modulo `q^k` lifting the residue.
    pub(crate) fn omega_adic(&self, k: u32) -> BigInt {
        let r = self.omega_residue.expect("split prime has a root");
        let (c1, c0) = self.field.omega_min_poly();
        let (c1, c0) = (BigInt::from(c1), BigInt::from(c0));
        let modulus = Pow::pow(&BigInt::from(self.q), k);
        let mut w = BigInt::from(r);
        for _ in 0..(2 * k + 2) {
            let value = (&w * &w + &c1 * &w + &c0).mod_floor(&modulus);
            if value.is_zero() {
                break;
            }
            let deriv = (BigInt::from(2) * &w + &c1).mod_floor(&modulus);
            let inv = deriv.modinv(&modulus).expect("simple root");
            w = (&w - value * inv).mod_floor(&modulus);
        }
        w
    }

    /// Image in `F_q` of a `P`-integral element at a split or ramified prime.
    pub(crate) fn residue_in_prime_field(&self, x: &FieldElement) -> Result<u64> {
        let q = self.q;
        let qb = BigInt::from(q);
        match self.splitting {
            Splitting::Inert => Err(Error::Invalid("inert primes have residue field F_{q²}".into())),
            Splitting::Ramified => {
                let r = BigInt::from(self.omega_residue.expect("ramified prime has a root"));
                let a = rat_mod(x.c0(), &qb);
                let b = rat_mod(x.c1(), &qb);
                match (a, b) {
                    (Some(a), Some(b)) => Ok(arith::reduce_big(&(a + b * r), q)),
                    _ => Err(Error::Invalid(format!("{x} is not integral at {self}"))),
                }
            }
            Splitting::Split if x.is_zero() => Ok(0),
            Splitting::Split => {
                let shift = coordinate_shift(x, q).min(0);
                let m = (-shift) as u32;
                let y = x.scale(&BigRational::from_integer(Pow::pow(&qb, m)));
                let modulus = Pow::pow(&qb, m + 1);
                let w = self.omega_adic(m + 1);
                let z = (rat_mod(y.c0(), &modulus).expect("q-integral")
                    + rat_mod(y.c1(), &modulus).expect("q-integral") * w)
                    .mod_floor(&modulus);
                let scale = Pow::pow(&qb, m);
                if !z.mod_floor(&scale).is_zero() {
                    return Err(Error::Invalid(format!("{x} is not integral at {self}")));
                }
                Ok(arith::reduce_big(&(z / scale), q))
            }
        }
    }
}

/// `min(v_q(c0), v_q(c1))` over the nonzero coordinates.
fn coordinate_shift(x: &FieldElement, q: u64) -> i64 {
    [x.c0(), x.c1()]
        .into_iter()
        .filter_map(|c| arith::val_rat(c, q))
        .min()
        .expect("nonzero element")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn field(d: i64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    #[test]
    fn prime_data_is_consistent() {
        for d in [-1, -2, -3, -7, -11, -163, 2, 3, 5, -5, -6, 10] {
            let f = field(d);
            for q in arith::primes_up_to(60) {
                let primes = f.primes_above(q).unwrap();
                for p in &primes {
                    assert_eq!(p.ramification * p.residue_degree * primes.len() as u32, 2);
                    assert_eq!(p.norm(), (q as u128).pow(p.residue_degree));
                    if let Some(g) = &p.generator {
                        let n = g.norm().abs();
                        assert_eq!(n, BigRational::from_integer(BigInt::from(p.norm())));
                    }
                    assert_eq!(p.valuation(&p.uniformizer()), Valuation::Finite(1), "d={d} q={q}");
                }
                if primes.len() == 2 {
                    // the two generators are not associates
                    if let (Some(a), Some(b)) = (&primes[0].generator, &primes[1].generator) {
                        assert!(!f.is_unit(&(a / b)));
                    }
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let gauss = field(-1);
        let g: Vec<_> = (0..2).map(|i| gauss.prime_generator(5, i).unwrap()).collect();
        let two_plus_i = FieldElement::from_ints(gauss, 2, 1);
        assert!(g.contains(&two_plus_i));
        assert!(g.iter().all(|x| x.norm() == BigRational::from_integer(5.into())));
        assert_eq!(gauss.prime_generator(3, 0), Err(Error::InertPrime { q: 3 }));
        assert_eq!(gauss.prime_generator(2, 0).unwrap(), FieldElement::from_ints(gauss, 1, 1));

        let eis = field(-3);
        let target = FieldElement::from_ints(eis, 1, 2);
        assert_eq!(target.norm(), BigRational::from_integer(7.into()));
        let gens: Vec<_> = (0..2).map(|i| eis.prime_generator(7, i).unwrap()).collect();
        // one of the two generators is associate to 1 + 2ω, the other to its conjugate
        assert!(gens.iter().any(|g| eis.is_unit(&(&target / g))));
        assert!(gens.iter().any(|g| eis.is_unit(&(target.conjugate() / g))));

        assert!(field(-5).prime_generator(3, 0).is_err());
    }

    #[test]
    fn valuation_examples() {
        let gauss = field(-1);
        let inert3 = &gauss.primes_above(3).unwrap()[0];
        assert_eq!(inert3.valuation(&FieldElement::from_ints(gauss, 3, 3)), Valuation::Finite(1));
        let ram2 = &gauss.primes_above(2).unwrap()[0];
        assert_eq!(ram2.splitting, Splitting::Ramified);
        assert_eq!(ram2.valuation(&FieldElement::from_ints(gauss, 1, 1)), Valuation::Finite(1));
        assert_eq!(ram2.valuation(&gauss.int(8)), Valuation::Finite(6));
        assert_eq!(inert3.valuation(&gauss.one()), Valuation::Finite(0));
        assert_eq!(inert3.valuation(&gauss.zero()), Valuation::Infinite);
        let p5 = gauss.primes_above(5).unwrap();
        let x = FieldElement::from_ints(gauss, 2, 1).pow(3) * FieldElement::from_ints(gauss, 2, -1);
        let vals: Vec<_> = p5.iter().map(|p| p.valuation(&x)).collect();
        assert!(vals.contains(&Valuation::Finite(3)) && vals.contains(&Valuation::Finite(1)));
        let inv = x.inv().unwrap();
        let vals: Vec<_> = p5.iter().map(|p| p.valuation(&inv)).collect();
        assert!(vals.contains(&Valuation::Finite(-3)) && vals.contains(&Valuation::Finite(-1)));
    }

    #[test]
    fn residues_at_split_primes_respect_ring_maps() {
        let f = field(-7);
        for q in [2u64, 11, 23] {
            for p in f.primes_above(q).unwrap() {
                let g = p.generator.clone().unwrap();
                assert_eq!(p.residue_in_prime_field(&g).unwrap(), 0);
                // a P-unit with q in its coordinate denominators
                let other = f.primes_above(q).unwrap().into_iter().find(|o| o != &p).unwrap();
                let h = other.generator.clone().unwrap();
                let x = &g.inv().unwrap().conjugate() * &h.pow(2);
                let rx = p.residue_in_prime_field(&x).unwrap();
                let rh = p.residue_in_prime_field(&h).unwrap();
                let rgbar = p.residue_in_prime_field(&g.conjugate()).unwrap();
                assert_eq!(arith::mul_mod(rx, rgbar, q), arith::mul_mod(rh, rh, q));
                assert!(p.residue_in_prime_field(&h.inv().unwrap()).is_ok());
                assert!(p.residue_in_prime_field(&g.inv().unwrap()).is_err());
            }
        }
    }

    fn any_elem() -> impl Strategy<Value = (i64, i64, i64)> {
        (-60i64..60, -60i64..60, 1i64..40).prop_filter("nonzero", |(a, b, _)| *a != 0 || *b != 0)
    }

    proptest! {
        #[test]
        fn valuations_are_additive_and_sum_to_norm(
            d in prop::sample::select(vec![-1i64, -2, -3, -7, -11, -19, -43]),
            x in any_elem(), y in any_elem(),
            q in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17]),
        ) {
            let f = field(d);
            let x = FieldElement::new(f, BigRational::new(x.0.into(), x.2.into()), BigRational::from_integer(x.1.into()));
            let y = FieldElement::new(f, BigRational::from_integer(y.0.into()), BigRational::new(y.1.into(), y.2.into()));
            let xy = &x * &y;
            let primes = f.primes_above(q).unwrap();
            let mut weighted = 0i64;
            for p in &primes {
                let (vx, vy, vxy) = (p.valuation(&x), p.valuation(&y), p.valuation(&xy));
                prop_assert_eq!(vxy.finite().unwrap(), vx.finite().unwrap() + vy.finite().unwrap());
                if p.splitting == Splitting::Split {
                    prop_assert_eq!(vx.finite().unwrap(), p.split_valuation_adic(&x));
                }
                weighted += p.residue_degree as i64 * vx.finite().unwrap();
            }
            prop_assert_eq!(weighted, arith::val_rat(&x.norm(), q).unwrap());
            // rational integers: v = e · v_q(n)
            let n = BigRational::from_integer(BigInt::from(q * q * 3));
            for p in &primes {
                prop_assert_eq!(p.valuation(&FieldElement::from_rational(f, n.clone())),
                                p.valuation_of_rational(&n));
            }
        }
    }
}
