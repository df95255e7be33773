//! One-sided irreducibility test from Frobenius traces.
//!
//! If the mod-`p` representation of `E` is reducible over `F_p`, then for
//! every prime `P ∤ p` of good reduction the polynomial `x² − a_P·x + N_P`
//! splits modulo `p`. A single good prime where `a_P² − 4·N_P` is a
//! non-residue mod `p` therefore proves irreducibility over `F_p`. The traces
//! come from naive point counts over the residue fields.

mod finite_field;

pub use finite_field::{Fe, ResidueField};

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::elliptic::EllipticCurve;
use crate::error::{Error, Result};
use crate::number_field::{Basis, FieldElement, PrimeIdeal, QuadraticField, Splitting};
use crate::reduction;

/// Largest residue field counted by default.
pub const DEFAULT_COUNT_BUDGET: u64 = 10_000;

/// A curve reduced at a prime of good reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCurve {
    pub prime: PrimeIdeal,
    pub field: ResidueField,
    pub coeffs: [Fe; 5],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    pub prime: PrimeIdeal,
    pub a_p: i64,
    pub n_p: u64,
}

impl FrobeniusData {
    /// `a_P² − 4·N_P`, the discriminant of the Frobenius characteristic polynomial.
    pub fn char_poly_discriminant(&self) -> i128 {
        self.a_p as i128 * self.a_p as i128 - 4 * self.n_p as i128
    }
}

fn residue_of_rational(r: &BigRational, l: u64) -> Option<u64> {
    let m = BigInt::from(l);
    crate::number_field::rat_mod(r, &m).map(|x| arith::reduce_big(&x, l))
}

fn map_coefficient(prime: &PrimeIdeal, field: &ResidueField, x: &FieldElement) -> Result<Fe> {
    match prime.splitting {
        Splitting::Inert => {
            let l = prime.q;
            let not_integral = || Error::Invalid(format!("{x} is not integral at {prime}"));
            let a = residue_of_rational(x.c0(), l).ok_or_else(not_integral)?;
            let b = residue_of_rational(x.c1(), l).ok_or_else(not_integral)?;
            Ok(match prime.field.basis() {
                Basis::Sqrt => field.from_pair(a, b),
                Basis::HalfInteger => {
                    // ω = (1 + t)/2
                    let half = arith::inv_mod(2, l).expect("odd characteristic");
                    let hb = arith::mul_mod(b, half, l);
                    field.from_pair(a + hb, hb)
                }
            })
        }
        _ => Ok(field.from_u64(prime.residue_in_prime_field(x)?)),
    }
}

fn residue_field_at(prime: &PrimeIdeal) -> Result<ResidueField> {
    if prime.q == 2 {
        return Err(Error::Unsupported("residue characteristic 2".into()));
    }
    Ok(match prime.splitting {
        Splitting::Inert => ResidueField::quadratic(prime.q, arith::reduce_i64(prime.field.d(), prime.q)),
        _ => ResidueField::prime(prime.q),
    })
}

/// Reduces `curve` modulo `prime`, which must be odd and of good reduction.
pub fn reduce_at_good_prime(curve: &EllipticCurve, prime: &PrimeIdeal) -> Result<ResidueCurve> {
    let field = residue_field_at(prime)?;
    let (integral, _) = curve.integral_model();
    let model = if prime.valuation(&integral.discriminant()).finite() == Some(0) {
        integral
    } else {
        reduction::good_model_at(curve, prime).ok_or(Error::BadReduction { q: prime.q })?
    };
    let mut coeffs = [field.zero(); 5];
    for (slot, a) in coeffs.iter_mut().zip(model.coefficients()) {
        *slot = map_coefficient(prime, &field, a)?;
    }
    let rc = ResidueCurve { prime: prime.clone(), field, coeffs };
    if rc.discriminant() == field.zero() {
        return Err(Error::BadReduction { q: prime.q });
    }
    Ok(rc)
}

impl ResidueCurve {
    fn b_invariants(&self) -> [Fe; 4] {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = self.coeffs;
        let k = |n: u64| f.from_u64(n);
        let b2 = f.add(f.mul(a1, a1), f.mul(k(4), a2));
        let b4 = f.add(f.mul(k(2), a4), f.mul(a1, a3));
        let b6 = f.add(f.mul(a3, a3), f.mul(k(4), a6));
        let b8 = {
            let t1 = f.mul(f.mul(a1, a1), a6);
            let t2 = f.mul(f.mul(k(4), a2), a6);
            let t3 = f.mul(f.mul(a1, a3), a4);
            let t4 = f.mul(a2, f.mul(a3, a3));
            let t5 = f.mul(a4, a4);
            f.sub(f.add(f.sub(f.add(t1, t2), t3), t4), t5)
        };
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> Fe {
        let f = &self.field;
        let [b2, b4, b6, b8] = self.b_invariants();
        let k = |n: u64| f.from_u64(n);
        let t1 = f.neg(f.mul(f.mul(b2, b2), b8));
        let t2 = f.mul(k(8), f.mul(b4, f.mul(b4, b4)));
        let t3 = f.mul(k(27), f.mul(b6, b6));
        let t4 = f.mul(k(9), f.mul(b2, f.mul(b4, b6)));
        f.add(f.sub(f.sub(t1, t2), t3), t4)
    }

    /// `#E` over the residue field, by summing the quadratic character of
    /// `4x³ + b2·x² + 2b4·x + b6` over all `x`, plus the point at infinity.
    pub fn count_points(&self) -> u64 {
        let f = &self.field;
        let [b2, b4, b6, _] = self.b_invariants();
        let four = f.from_u64(4);
        let two_b4 = f.mul(f.from_u64(2), b4);
        let affine: i64 = f
            .elements()
            .map(|x| {
                // Horner: ((4x + b2)x + 2b4)x + b6
                let r = f.add(f.mul(f.add(f.mul(f.add(f.mul(four, x), b2), x), two_b4), x), b6);
                1 + f.chi(r) as i64
            })
            .sum();
        1 + affine as u64
    }
}

/// `a_P = N_P + 1 − #E(k_P)` by naive counting.
pub fn trace_of_frobenius(curve: &EllipticCurve, prime: &PrimeIdeal, count_budget: u64) -> Result<FrobeniusData> {
    let size = prime.norm();
    if size > count_budget as u128 {
        return Err(Error::CountBudget { size: size.min(u64::MAX as u128) as u64, budget: count_budget });
    }
    let rc = reduce_at_good_prime(curve, prime)?;
    let n_p = rc.field.size();
    let count = rc.count_points();
    let a_p = n_p as i64 + 1 - count as i64;
    assert!(
        (a_p as i128).pow(2) <= 4 * n_p as i128,
        "Hasse bound violated at {prime}: a = {a_p}, N = {n_p}"
    );
    Ok(FrobeniusData { prime: prime.clone(), a_p, n_p })
}

/// Frobenius data at every odd good prime with residue characteristic `<= prime_budget`
/// not dividing `Norm(Δ)·disc`, skipping residue fields larger than `count_budget`.
pub fn frobenius_table(curve: &EllipticCurve, prime_budget: u64, count_budget: u64) -> Result<Vec<FrobeniusData>> {
    let field = curve.field();
    let disc_norm = reduction::discriminant_norm(curve);
    let candidates: Vec<u64> = arith::primes_up_to(prime_budget)
        .into_iter()
        .filter(|&l| l != 2)
        .filter(|&l| field.discriminant().rem_euclid(l as i64) != 0)
        .filter(|&l| !(&disc_norm % BigInt::from(l)).is_zero())
        .collect();
    let per_prime: Vec<Result<Vec<FrobeniusData>>> = candidates
        .par_iter()
        .map(|&l| {
            let mut out = Vec::new();
            for p in field.primes_above(l)? {
                if p.norm() > count_budget as u128 {
                    continue;
                }
                out.push(trace_of_frobenius(curve, &p, count_budget)?);
            }
            Ok(out)
        })
        .collect();
    let mut table = Vec::new();
    for chunk in per_prime {
        table.extend(chunk?);
    }
    Ok(table)
}

fn witness_in(table: &[FrobeniusData], p: u64) -> Option<&FrobeniusData> {
    table.iter().find(|fd| {
        fd.prime.q != p && arith::legendre(arith::reduce_i64(fd.char_poly_discriminant() as i64, p), p) == -1
    })
}

fn check_p(p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::Invalid(format!("p = {p}: the Frobenius test needs p >= 5")));
    }
    Ok(())
}

/// The first good prime whose Frobenius polynomial is irreducible mod `p`, if any.
pub fn irreducibility_witness(curve: &EllipticCurve, p: u64, prime_budget: u64) -> Result<Option<PrimeIdeal>> {
    check_p(p)?;
    let table = frobenius_table(curve, prime_budget, DEFAULT_COUNT_BUDGET)?;
    Ok(witness_in(&table, p).map(|fd| fd.prime.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub curve: EllipticCurve,
    pub field: QuadraticField,
    pub budget: u64,
    pub p_max: u64,
    pub surviving: Vec<u64>,
    /// `p ↦` residue characteristic of the witnessing prime.
    pub witnesses: BTreeMap<u64, u64>,
}

pub fn frobenius_scan(curve: &EllipticCurve, prime_budget: u64, p_max: u64, count_budget: u64) -> Result<ScanReport> {
    if p_max < 5 {
        return Err(Error::Invalid(format!("p_max = {p_max} must be at least 5")));
    }
    let table = frobenius_table(curve, prime_budget, count_budget)?;
    let mut surviving = Vec::new();
    let mut witnesses = BTreeMap::new();
    for p in arith::primes_up_to(p_max).into_iter().filter(|&p| p >= 5) {
        match witness_in(&table, p) {
            Some(fd) => {
                witnesses.insert(p, fd.prime.q);
            }
            None => surviving.push(p),
        }
    }
    Ok(ScanReport { curve: curve.clone(), field: curve.field(), budget: prime_budget, p_max, surviving, witnesses })
}

/// Primes `5 <= p <= p_max` for which no witness was found within `prime_budget`.
pub fn possibly_reducible_primes(curve: &EllipticCurve, prime_budget: u64, p_max: u64) -> Result<BTreeSet<u64>> {
    Ok(frobenius_scan(curve, prime_budget, p_max, DEFAULT_COUNT_BUDGET)?.surviving.into_iter().collect())
}
