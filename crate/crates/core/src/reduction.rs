//! Good / multiplicative / additive classification at a single prime.
//!
//! Only residue characteristic `>= 5` is classified, via a minimal model and
//! the valuations of `c4` and `Δ`. At characteristic 2 and 3 the report is
//! `unclassified` unless some scaled integral model has unit discriminant.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith;
use crate::elliptic::EllipticCurve;
use crate::error::{Error, Result};
use crate::number_field::{PrimeIdeal, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
    Unclassified,
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionType::Good => "good",
            ReductionType::Multiplicative => "multiplicative",
            ReductionType::Additive => "additive",
            ReductionType::Unclassified => "unclassified",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub prime: PrimeIdeal,
    pub v_c4: Valuation,
    pub v_c6: Valuation,
    pub v_disc: Valuation,
    /// Valuation of the j-invariant of the curve as given.
    pub v_j: Valuation,
    #[serde(rename = "type")]
    pub reduction_type: ReductionType,
    pub potentially_multiplicative: bool,
    pub minimal_scaling_exponent: u32,
}

/// Divides out `π⁴, π⁶` from `(c4, c6)` while the model is non-minimal at `prime`.
///
/// Returns the resulting model, `y² = x³ − 27c4·x − 54c6` when any step was
/// taken and the integral input model otherwise, together with the number
/// of steps.
pub fn minimalize_at(curve: &EllipticCurve, prime: &PrimeIdeal) -> Result<(EllipticCurve, u32)> {
    if prime.q < 5 {
        return Err(Error::Unsupported(format!(
            "minimal models at residue characteristic {} are not computed",
            prime.q
        )));
    }
    let (model, _) = curve.integral_model();
    let inv = model.invariants();
    let (mut c4, mut c6, mut disc) = (inv.c4, inv.c6, inv.discriminant);
    let pi = prime.uniformizer();
    let (pi4, pi6, pi12) = (pi.pow(4), pi.pow(6), pi.pow(12));
    let mut steps = 0;
    while prime.valuation(&c4).at_least(4)
        && prime.valuation(&c6).at_least(6)
        && prime.valuation(&disc).at_least(12)
    {
        c4 = &c4 / &pi4;
        c6 = &c6 / &pi6;
        disc = &disc / &pi12;
        steps += 1;
    }
    if steps == 0 {
        return Ok((model, 0));
    }
    let f = curve.field();
    let short = EllipticCurve::short(-(f.int(27) * &c4), -(f.int(54) * &c6))?;
    Ok((short, steps))
}

fn classify(v_c4: Valuation, v_disc: Valuation) -> ReductionType {
    match v_disc {
        Valuation::Finite(0) => ReductionType::Good,
        _ if v_c4 == Valuation::Finite(0) => ReductionType::Multiplicative,
        _ => ReductionType::Additive,
    }
}

/// Largest scaling `a_i ↦ a_i/π^i` of the integral model that stays integral at `prime`.
fn reduce_scaling_small_char(curve: &EllipticCurve, prime: &PrimeIdeal) -> (EllipticCurve, u32) {
    let (mut model, _) = curve.integral_model();
    let pi_inv = prime.uniformizer().inv().expect("uniformizer is nonzero");
    let mut steps = 0;
    loop {
        let divisible = model
            .coefficients()
            .iter()
            .zip(EllipticCurve::weights())
            .all(|(a, w)| prime.valuation(a).at_least(w as i64));
        if !divisible {
            return (model, steps);
        }
        model = model.scaled(&pi_inv).expect("nonzero scaling");
        steps += 1;
    }
}

pub fn reduction_type(curve: &EllipticCurve, prime: &PrimeIdeal) -> ReductionReport {
    let v_j = prime.valuation(&curve.j_invariant());
    let potentially_multiplicative = v_j.is_negative();
    if prime.q >= 5 {
        let (model, k) = minimalize_at(curve, prime).expect("residue characteristic >= 5");
        let inv = model.invariants();
        let v_c4 = prime.valuation(&inv.c4);
        let v_disc = prime.valuation(&inv.discriminant);
        ReductionReport {
            prime: prime.clone(),
            v_c4,
            v_c6: prime.valuation(&inv.c6),
            v_disc,
            v_j,
            reduction_type: classify(v_c4, v_disc),
            potentially_multiplicative,
            minimal_scaling_exponent: k,
        }
    } else {
        let (model, k) = reduce_scaling_small_char(curve, prime);
        let inv = model.invariants();
        let v_disc = prime.valuation(&inv.discriminant);
        let reduction_type =
            if v_disc == Valuation::Finite(0) { ReductionType::Good } else { ReductionType::Unclassified };
        ReductionReport {
            prime: prime.clone(),
            v_c4: prime.valuation(&inv.c4),
            v_c6: prime.valuation(&inv.c6),
            v_disc,
            v_j,
            reduction_type,
            potentially_multiplicative,
            minimal_scaling_exponent: k,
        }
    }
}

/// A model with unit discriminant and `P`-integral coefficients, when the reduction is good.
pub fn good_model_at(curve: &EllipticCurve, prime: &PrimeIdeal) -> Option<EllipticCurve> {
    let model = if prime.q >= 5 {
        minimalize_at(curve, prime).ok()?.0
    } else {
        reduce_scaling_small_char(curve, prime).0
    };
    (prime.valuation(&model.discriminant()) == Valuation::Finite(0)).then_some(model)
}

pub fn is_potentially_multiplicative(curve: &EllipticCurve, prime: &PrimeIdeal) -> bool {
    prime.valuation(&curve.j_invariant()).is_negative()
}

/// `|Norm(Δ)|` of the integral model; every prime of bad reduction divides it.
pub fn discriminant_norm(curve: &EllipticCurve) -> BigInt {
    let (model, _) = curve.integral_model();
    let n = model.discriminant().norm();
    debug_assert!(n.is_integer());
    n.numer().clone()
}

/// Rational primes dividing [`discriminant_norm`], ascending.
pub fn bad_prime_candidates(curve: &EllipticCurve, bound: u64) -> Result<Vec<u64>> {
    arith::prime_support(&discriminant_norm(curve), bound)
}

/// Reports at every prime above each candidate bad rational prime.
pub fn bad_reduction_reports(curve: &EllipticCurve, bound: u64) -> Result<Vec<ReductionReport>> {
    let field = curve.field();
    let mut out = Vec::new();
    for q in bad_prime_candidates(curve, bound)? {
        for p in field.primes_above(q)? {
            out.push(reduction_type(curve, &p));
        }
    }
    Ok(out)
}
