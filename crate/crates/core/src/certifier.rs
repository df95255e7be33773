//! Irreducibility certificates from an inert prime of multiplicative reduction.
//!
//! Over a quadratic field, multiplicative reduction at a prime above an
//! inert rational prime `q > 5` forces the mod-`p` representation to be
//! irreducible for all primes `p > 71`. For degree `d > 2`, the bound
//! becomes `65·(2d)⁶` and the condition on `q` becomes `q > max(d − 1, 5)`. Only the bound
//! formulas are provided in that case.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::elliptic::EllipticCurve;
use crate::error::{Error, Result};
use crate::number_field::{PrimeIdeal, QuadraticField, Splitting, Valuation};
use crate::reduction::{self, ReductionReport, ReductionType};

pub const STATEMENT: &str = "for every prime p > B, the mod-p representation of E is irreducible";

/// `71` for quadratic fields, `65·(2d)⁶` beyond.
pub fn bound_for_degree(d: u32) -> Result<u64> {
    match d {
        0 | 1 => Err(Error::Unsupported(format!("no certificate bound for degree {d}"))),
        2 => Ok(71),
        _ => (2 * d as u64)
            .checked_pow(6)
            .and_then(|x| x.checked_mul(65))
            .ok_or_else(|| Error::Overflow(format!("65·(2·{d})⁶ does not fit in 64 bits"))),
    }
}

/// Witness primes must satisfy `q >` this value.
pub fn witness_threshold(d: u32) -> Result<u64> {
    match d {
        0 | 1 => Err(Error::Unsupported(format!("no witness threshold for degree {d}"))),
        2 => Ok(5),
        _ => Ok((d as u64 - 1).max(5)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    #[serde(rename = "quadratic_71")]
    Quadratic71,
    #[serde(rename = "degree_d_bound")]
    DegreeDBound,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::Quadratic71 => "quadratic_71",
            TheoremId::DegreeDBound => "degree_d_bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub field: QuadraticField,
    pub curve: EllipticCurve,
    pub field_degree: u32,
    pub witness_q: u64,
    pub witness_prime: PrimeIdeal,
    pub reduction_report: ReductionReport,
    pub bound: u64,
    pub theorem: TheoremId,
    pub statement: &'static str,
}

#[derive(Serialize)]
struct Valuations {
    c4: Valuation,
    disc: Valuation,
    j: Valuation,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    field: &'a QuadraticField,
    curve: &'a EllipticCurve,
    witness_q: u64,
    valuations: Valuations,
    bound: u64,
    theorem_id: TheoremId,
    statement: &'a str,
}

impl Serialize for IrreducibilityCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = &self.reduction_report;
        CertificateJson {
            field: &self.field,
            curve: &self.curve,
            witness_q: self.witness_q,
            valuations: Valuations { c4: r.v_c4, disc: r.v_disc, j: r.v_j },
            bound: self.bound,
            theorem_id: self.theorem,
            statement: self.statement,
        }
        .serialize(s)
    }
}

impl IrreducibilityCertificate {
    /// Recomputes every claim from the echoed curve and field.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Invalid(format!("certificate check failed: {what}")));
        if self.curve.field() != self.field {
            return fail("curve is not defined over the stated field");
        }
        if self.field_degree != self.field.degree() {
            return fail("field degree");
        }
        if self.bound != bound_for_degree(self.field_degree)? {
            return fail("bound");
        }
        let expected_theorem = if self.field_degree == 2 { TheoremId::Quadratic71 } else { TheoremId::DegreeDBound };
        if self.theorem != expected_theorem {
            return fail("theorem id");
        }
        if self.witness_q <= witness_threshold(self.field_degree)? || !arith::is_prime(self.witness_q) {
            return fail("witness prime too small or not prime");
        }
        let primes = self.field.primes_above(self.witness_q)?;
        let [prime] = primes.as_slice() else {
            return fail("witness prime is not inert");
        };
        if prime.splitting != Splitting::Inert || prime.residue_degree != self.field_degree || *prime != self.witness_prime {
            return fail("witness prime is not inert");
        }
        let report = reduction::reduction_type(&self.curve, prime);
        if report.reduction_type != ReductionType::Multiplicative {
            return fail("reduction at the witness is not multiplicative");
        }
        if report != self.reduction_report {
            return fail("reduction report does not match");
        }
        if self.statement != STATEMENT {
            return fail("statement");
        }
        Ok(())
    }

    /// Whether the certificate covers the prime `p`, i.e. `p > B`.
    pub fn is_guaranteed_irreducible(&self, p: u64) -> Result<bool> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(p > self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certificate(Box<IrreducibilityCertificate>),
    NotApplicable(String),
}

pub const NO_WITNESS: &str = "no inert multiplicative prime q > 5";

/// The smallest inert `q > 5` dividing `Norm(Δ)` with multiplicative reduction.
///
/// Trial division runs up to `search_budget`. The search is inconclusive
/// only when no witness was found and part of the norm was left unfactored.
pub fn find_witness(curve: &EllipticCurve, search_budget: u64) -> Result<Option<(PrimeIdeal, ReductionReport)>> {
    let field = curve.field();
    if field.degree() != 2 {
        return Err(Error::Unsupported("certification needs a quadratic field".into()));
    }
    let threshold = witness_threshold(2)?;
    let norm: BigInt = reduction::discriminant_norm(curve);
    let (factors, cofactor) = arith::partial_factor(&norm, search_budget)?;
    let candidates: Vec<u64> = factors.iter().map(|&(q, _)| q).filter(|&q| q > threshold).collect();
    let reports: Vec<Option<(PrimeIdeal, ReductionReport)>> = candidates
        .par_iter()
        .map(|&q| -> Result<_> {
            if field.splitting_type(q)? != Splitting::Inert {
                return Ok(None);
            }
            let prime = field.primes_above(q)?.remove(0);
            let report = reduction::reduction_type(curve, &prime);
            Ok((report.reduction_type == ReductionType::Multiplicative).then_some((prime, report)))
        })
        .collect::<Result<_>>()?;
    // candidates are ascending, so the first hit is the smallest witness
    if let Some(hit) = reports.into_iter().flatten().next() {
        return Ok(Some(hit));
    }
    match cofactor {
        Some(rest) => Err(Error::FactorBudget { bound: search_budget, cofactor: rest.to_string() }),
        None => Ok(None),
    }
}

pub fn certify(curve: &EllipticCurve) -> Result<CertifyOutcome> {
    certify_with_budget(curve, arith::DEFAULT_FACTOR_BOUND)
}

pub fn certify_with_budget(curve: &EllipticCurve, search_budget: u64) -> Result<CertifyOutcome> {
    let Some((prime, report)) = find_witness(curve, search_budget)? else {
        return Ok(CertifyOutcome::NotApplicable(NO_WITNESS.into()));
    };
    let field = curve.field();
    let cert = IrreducibilityCertificate {
        field,
        curve: curve.clone(),
        field_degree: field.degree(),
        witness_q: prime.q,
        witness_prime: prime,
        reduction_report: report,
        bound: bound_for_degree(field.degree())?,
        theorem: TheoremId::Quadratic71,
        statement: STATEMENT,
    };
    debug_assert_eq!(cert.validate(), Ok(()));
    Ok(CertifyOutcome::Certificate(Box::new(cert)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert_for(d: i64, curve: &str) -> CertifyOutcome {
        let f = QuadraticField::new(d).unwrap();
        certify(&EllipticCurve::parse(f, curve).unwrap()).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(bound_for_degree(2), Ok(71));
        assert_eq!(bound_for_degree(3), Ok(65 * 6u64.pow(6)));
        assert_eq!(bound_for_degree(3), Ok(3_032_640));
        assert!(bound_for_degree(1).is_err());
        assert!(matches!(bound_for_degree(u32::MAX), Err(Error::Overflow(_))));
        assert_eq!(witness_threshold(2), Ok(5));
        assert_eq!(witness_threshold(3), Ok(5));
        assert_eq!(witness_threshold(8), Ok(7));
    }

    #[test]
    fn legendre_curve_is_certified_at_seven() {
        let CertifyOutcome::Certificate(cert) = cert_for(-1, "[0; 6; 0; -7; 0]") else { panic!("expected a certificate") };
        assert_eq!(cert.witness_q, 7);
        assert_eq!(cert.bound, 71);
        assert_eq!(cert.theorem, TheoremId::Quadratic71);
        assert_eq!(cert.validate(), Ok(()));
        assert_eq!(cert.is_guaranteed_irreducible(73), Ok(true));
        assert_eq!(cert.is_guaranteed_irreducible(71), Ok(false));
        assert_eq!(cert.is_guaranteed_irreducible(75), Err(Error::NotPrime(75)));

        let json = serde_json::to_value(&*cert).unwrap();
        assert_eq!(json["field"], -1);
        assert_eq!(json["witness_q"], 7);
        assert_eq!(json["bound"], 71);
        assert_eq!(json["theorem_id"], "quadratic_71");
        assert_eq!(json["valuations"]["c4"], 0);
        assert_eq!(json["valuations"]["disc"], 2);
        assert_eq!(json["valuations"]["j"], -2);
    }

    #[test]
    fn tampered_certificates_fail_validation() {
        let CertifyOutcome::Certificate(cert) = cert_for(-1, "[0; 6; 0; -7; 0]") else { panic!() };
        let mut c = (*cert).clone();
        c.bound = 70;
        assert!(c.validate().is_err());
        let mut c = (*cert).clone();
        c.curve = EllipticCurve::parse(c.field, "[1; 0]").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn not_applicable_cases() {
        let na = CertifyOutcome::NotApplicable(NO_WITNESS.into());
        assert_eq!(cert_for(-1, "[1; 0]"), na);
        // Δ = −432 = −2⁴·3³; CM by the field itself
        assert_eq!(cert_for(-3, "[0; 1]"), na);
        // y² = x(x − 1)(x + 5): the only candidates 2, 3, 5 are below the threshold or split
        assert_eq!(cert_for(-1, "[0; 4; 0; -5; 0]"), na);
    }

    #[test]
    fn split_multiplicative_prime_is_not_a_witness() {
        // y² = x(x − 1)(x + 12): Δ = 16·(12·13)², and 13 splits in Q(i)
        let f = QuadraticField::new(-1).unwrap();
        let e = EllipticCurve::parse(f, "[0; 11; 0; -12; 0]").unwrap();
        for p in f.primes_above(13).unwrap() {
            assert_eq!(reduction::reduction_type(&e, &p).reduction_type, ReductionType::Multiplicative);
        }
        assert_eq!(certify(&e).unwrap(), CertifyOutcome::NotApplicable(NO_WITNESS.into()));
        // the same curve over Q(√−2), where 13 is inert (13 ≡ 5 mod 8), is certified
        let g = QuadraticField::new(-2).unwrap();
        let e = EllipticCurve::parse(g, "[0; 11; 0; -12; 0]").unwrap();
        let CertifyOutcome::Certificate(c) = certify(&e).unwrap() else { panic!() };
        assert_eq!(c.witness_q, 13);
    }

    #[test]
    fn unfactored_norm_is_inconclusive() {
        let f = QuadraticField::new(-1).unwrap();
        // Δ = 16·(1013·1014)² with 1014 = 2·3·13²; a trial bound of 100 leaves 1013⁴ unfactored
        let e = EllipticCurve::parse(f, "[0; 1012; 0; -1013; 0]").unwrap();
        assert!(matches!(find_witness(&e, 100), Err(Error::FactorBudget { .. })));
        assert!(find_witness(&e, 2000).is_ok());
    }

    #[test]
    fn large_bound_primality() {
        let cert_bound = bound_for_degree(3).unwrap();
        let p = 3_032_651u64;
        let naive = (2..).take_while(|k| k * k <= p).all(|k| p % k != 0);
        assert_eq!(arith::is_prime(p), naive);
        assert_eq!(naive && p > cert_bound, arith::is_prime(p) && p > cert_bound);
    }
}
