//! Hypothesis checks for `a^p + b^p + c^p = 0` over the imaginary quadratic
//! fields of class number one, and the attached Frey curve.

use serde::Serialize;

use crate::arith;
use crate::elliptic::EllipticCurve;
use crate::error::{Error, Result};
use crate::number_field::{FieldElement, QuadraticField, Splitting};

/// Floor for the configured constant `C_S`.
pub const MIN_C_S: u64 = 163;

/// `ε = ω − 1 = (−1 + √−3)/2` in `Q(√−3)`.
pub fn third_root_of_unity(field: QuadraticField) -> Result<FieldElement> {
    if field.d() != -3 {
        return Err(Error::Unsupported(format!("no primitive cube root of unity in Q(√{})", field.d())));
    }
    Ok(field.omega() - field.one())
}

/// `y² = x(x − a^p)(x + b^p)`.
///
/// When `a^p + b^p + c^p = 0` this has `Δ = 2⁴(abc)^{2p}` and
/// `j = 2⁸(b^{2p} − a^p c^p)³ / (abc)^{2p}`; note the cube and the factor `2⁸`.
pub fn frey_curve(a: &FieldElement, b: &FieldElement, p: u32) -> Result<EllipticCurve> {
    let (ap, bp) = (a.pow(p), b.pow(p));
    let z = a.field().zero();
    EllipticCurve::new([z.clone(), &bp - &ap, z.clone(), -(&ap * &bp), z])
}

/// `p ≡ 1 (mod 3)`, or `p` splits in `K` with `p ≡ 3 (mod 4)`.
pub fn exponent_class(field: QuadraticField, p: u64) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p % 3 == 1 || (p % 4 == 3 && field.splitting_type(p)? == Splitting::Split))
}

/// Whether every prime factor of `Norm(abc)` outside `S` is inert, with the violators.
pub fn support_check(field: QuadraticField, s: &[u64], triple: &[FieldElement; 3]) -> Result<(bool, Vec<u64>)> {
    let [a, b, c] = triple;
    let n = (a * b * c).norm();
    if !n.is_integer() {
        return Err(Error::Invalid("a, b, c must be integral".into()));
    }
    let factors = arith::factor(n.numer(), arith::DEFAULT_FACTOR_BOUND)?;
    let mut offenders = Vec::new();
    for (l, _) in factors {
        if !s.contains(&l) && field.splitting_type(l)? != Splitting::Inert {
            offenders.push(l);
        }
    }
    Ok((offenders.is_empty(), offenders))
}

/// Whether `(a, b, c)` is a unit multiple of a permutation of `(1, ε, ε²)`.
pub fn is_trivial_triple(triple: &[FieldElement; 3]) -> bool {
    let [a, b, c] = triple;
    let field = a.field();
    let Ok(eps) = third_root_of_unity(field) else { return false };
    if !field.is_unit(a) {
        return false;
    }
    let eps2 = eps.pow(2);
    let (Ok(rb), Ok(rc)) = (b.checked_div(a), c.checked_div(a)) else { return false };
    (rb == eps && rc == eps2) || (rb == eps2 && rc == eps)
}

/// Representatives of the trivial family, normalised to `a = 1`, when they solve the equation for `p`.
///
/// The unit multiples of the six permutations of `(1, ε, ε²)` form two classes,
/// `(1, ε, ε²)` and `(1, ε², ε)`. Both are solutions exactly when `3 ∤ p`.
pub fn known_solutions(field: QuadraticField, p: u64) -> Result<Vec<[FieldElement; 3]>> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let Ok(eps) = third_root_of_unity(field) else { return Ok(Vec::new()) };
    let exp = u32::try_from(p).map_err(|_| Error::Overflow(format!("exponent {p}")))?;
    let eps2 = eps.pow(2);
    let candidates = [[field.one(), eps.clone(), eps2.clone()], [field.one(), eps2, eps]];
    Ok(candidates.into_iter().filter(|t| is_solution(t, exp)).collect())
}

fn is_solution(triple: &[FieldElement; 3], p: u32) -> bool {
    let [a, b, c] = triple;
    (a.pow(p) + b.pow(p) + c.pow(p)).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatInstance {
    pub field: QuadraticField,
    pub s: Vec<u64>,
    pub triple: [FieldElement; 3],
    pub p: u64,
    pub c_s: u64,
}

impl FermatInstance {
    /// `C_S` is taken as `max(163, c_s)`.
    pub fn new(field: QuadraticField, s: &[u64], triple: [FieldElement; 3], p: u64, c_s: Option<u64>) -> Result<Self> {
        if !field.is_class_number_one_imaginary() {
            return Err(Error::Unsupported(format!(
                "d = {} is not an imaginary quadratic field of class number one",
                field.d()
            )));
        }
        let mut s: Vec<u64> = s.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&l) = s.iter().find(|&&l| !arith::is_prime(l)) {
            return Err(Error::NotPrime(l));
        }
        if ![2, 3, 5].iter().all(|l| s.contains(l)) {
            return Err(Error::Invalid("S must contain 2, 3 and 5".into()));
        }
        if triple.iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if triple.iter().any(|x| x.is_zero() || !x.is_integral()) {
            return Err(Error::Invalid("a, b, c must be nonzero algebraic integers".into()));
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if u32::try_from(p).is_err() {
            return Err(Error::Overflow(format!("exponent {p}")));
        }
        Ok(Self { field, s, triple, p, c_s: c_s.unwrap_or(MIN_C_S).max(MIN_C_S) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    TrivialSolutionClass,
    HypothesesViolated(Vec<String>),
    ContradictionWithTheorem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub field: QuadraticField,
    pub s: Vec<u64>,
    pub triple: [FieldElement; 3],
    pub p: u64,
    pub c_s: u64,
    pub is_fermat_solution: bool,
    pub coprime: bool,
    pub h1_exponent_class: bool,
    pub h3_inert_support: bool,
    pub h3_offending_primes: Vec<u64>,
    #[serde(rename = "p_above_CS")]
    pub p_above_cs: bool,
    /// `None` when `a^p + b^p = 0` or `a^p = b^p`, where the model is singular.
    pub frey_curve: Option<EllipticCurve>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

pub fn check_instance(inst: &FermatInstance) -> Result<HypothesisReport> {
    let field = inst.field;
    let [a, b, c] = &inst.triple;
    let p32 = inst.p as u32;
    let is_fermat_solution = is_solution(&inst.triple, p32);
    let coprime = field.are_coprime(a, b)? && field.are_coprime(b, c)? && field.are_coprime(a, c)?;
    let h1 = exponent_class(field, inst.p)?;
    let (h3, offenders) = support_check(field, &inst.s, &inst.triple)?;
    let p_above_cs = inst.p > inst.c_s;
    let frey = match frey_curve(a, b, p32) {
        Ok(e) => Some(e),
        Err(Error::SingularModel) => None,
        Err(e) => return Err(e),
    };

    let mut notes = Vec::new();
    if !p_above_cs {
        notes.push(format!("p = {} does not exceed C_S = {}; no conclusion is claimed below C_S", inst.p, inst.c_s));
    }
    let abc_norm = (a * b * c).norm();
    if arith::val_rat(&abc_norm, 2).is_some_and(|v| v > 0) {
        notes.push(
            "a prime above 2 divides abc; coprime solutions of this shape are conditionally excluded for p >= 19"
                .into(),
        );
    }
    if field.d() == -3 && inst.p % 3 != 1 && is_trivial_triple(&inst.triple) {
        notes.push(format!(
            "the triple is in the (1, ε, ε²) family but p = {} is not 1 mod 3; it {} a solution",
            inst.p,
            if is_fermat_solution { "is still" } else { "is not" }
        ));
    }

    let trivial = field.d() == -3 && inst.p % 3 == 1 && is_trivial_triple(&inst.triple);
    let verdict = if trivial {
        debug_assert!(is_fermat_solution);
        Verdict::TrivialSolutionClass
    } else {
        let mut violated = Vec::new();
        if !is_fermat_solution {
            violated.push("not a solution".to_string());
        }
        if !coprime {
            violated.push("not coprime".into());
        }
        if !h1 {
            violated.push("exponent class".into());
        }
        if !h3 {
            let list: Vec<String> = offenders.iter().map(u64::to_string).collect();
            violated.push(format!("inert support (offending primes {})", list.join(", ")));
        }
        if !p_above_cs {
            violated.push("p <= C_S".into());
        }
        if violated.is_empty() {
            Verdict::ContradictionWithTheorem
        } else {
            Verdict::HypothesesViolated(violated)
        }
    };

    Ok(HypothesisReport {
        field,
        s: inst.s.clone(),
        triple: inst.triple.clone(),
        p: inst.p,
        c_s: inst.c_s,
        is_fermat_solution,
        coprime,
        h1_exponent_class: h1,
        h3_inert_support: h3,
        h3_offending_primes: offenders,
        p_above_cs,
        frey_curve: frey,
        notes,
        verdict,
    })
}

/// Parses `"a;b;c"`.
pub fn parse_triple(field: QuadraticField, s: &str) -> Result<[FieldElement; 3]> {
    let parts = s.split(';').map(|x| field.parse_element(x)).collect::<Result<Vec<_>>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<_>| Error::Parse(format!("expected three elements a;b;c, got {}", v.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn eis() -> QuadraticField {
        QuadraticField::new(-3).unwrap()
    }

    fn trivial_triple() -> [FieldElement; 3] {
        let e = third_root_of_unity(eis()).unwrap();
        [eis().one(), e.clone(), e.pow(2)]
    }

    #[test]
    fn cube_root_of_unity() {
        let e = third_root_of_unity(eis()).unwrap();
        assert!((e.pow(2) + &e + eis().one()).is_zero());
        assert!(e.pow(3).is_one());
        assert!(third_root_of_unity(QuadraticField::new(-1).unwrap()).is_err());
    }

    #[test]
    fn exponent_classes() {
        let f = QuadraticField::new(-11).unwrap();
        assert_eq!(exponent_class(f, 7), Ok(true));
        assert_eq!(exponent_class(f, 13), Ok(true));
        // (−11 | 23) = (12 | 23) = (3 | 23) = 1, so 23 splits, and 23 ≡ 3 mod 4
        assert_eq!(arith::legendre(arith::reduce_i64(-11, 23), 23), 1);
        assert_eq!(exponent_class(f, 23), Ok(true));
        // 11 ≡ 2 mod 3 and ramifies
        assert_eq!(exponent_class(f, 11), Ok(false));
        assert_eq!(exponent_class(QuadraticField::new(-1).unwrap(), 11), Ok(false));
        assert_eq!(exponent_class(f, 21), Err(Error::NotPrime(21)));
    }

    #[test]
    fn support_examples() {
        assert_eq!(support_check(eis(), &[2, 3, 5], &trivial_triple()), Ok((true, vec![])));
        let g = QuadraticField::new(-1).unwrap();
        let t = [g.parse_element("(2,1)").unwrap(), g.one(), g.one()];
        assert_eq!(support_check(g, &[2, 3, 5], &t), Ok((true, vec![])));
        let t = [g.parse_element("(3,2)").unwrap(), g.one(), g.int(7)];
        assert_eq!(support_check(g, &[2, 3, 5], &t), Ok((false, vec![13])));
        // 5 splits in Q(i) but lies in S here
        let t = [g.parse_element("(2,1)").unwrap(), g.one(), g.one()];
        assert_eq!(support_check(g, &[2, 3], &t), Ok((false, vec![5])));
        // Q(√−11): Norm(1 + ω) = 1 + 1 + 3 = 5, and 5 splits since (−11 | 5) = 1
        let f = QuadraticField::new(-11).unwrap();
        let t = [f.parse_element("(1,1)").unwrap(), f.one(), f.one()];
        assert_eq!(f.parse_element("(1,1)").unwrap().norm(), BigRational::from_integer(5.into()));
        assert_eq!(support_check(f, &[2, 3], &t), Ok((false, vec![5])));
    }

    #[test]
    fn frey_curve_of_trivial_triple() {
        let t = trivial_triple();
        let e = frey_curve(&t[0], &t[1], 7).unwrap();
        assert_eq!(e.discriminant(), eis().int(16));
        let abc = &t[0] * &t[1] * &t[2];
        assert!(abc.is_one());
        let (ap, bp, cp) = (t[0].pow(7), t[1].pow(7), t[2].pow(7));
        let closed = eis().int(256) * (bp.pow(2) - &ap * &cp).pow(3) / abc.pow(14);
        assert_eq!(e.j_invariant(), closed);
        assert!(e.j_invariant().is_zero());
        // a = b = 1, c³ = −2: j = 2⁸·3³/2² = 1728, not 2⁴·3/2² = 12
        let g = QuadraticField::new(-1).unwrap();
        let e = frey_curve(&g.one(), &g.one(), 3).unwrap();
        assert_eq!(e.j_invariant(), g.int(1728));
        assert_eq!(e.discriminant(), g.int(16 * 4));
    }

    #[test]
    fn trivial_instance() {
        let inst = FermatInstance::new(eis(), &[2, 3, 5], trivial_triple(), 7, None).unwrap();
        let r = check_instance(&inst).unwrap();
        assert!(r.is_fermat_solution && r.coprime && r.h1_exponent_class && r.h3_inert_support);
        assert!(!r.p_above_cs);
        assert_eq!(r.c_s, 163);
        assert_eq!(r.verdict, Verdict::TrivialSolutionClass);
        assert!(r.notes.iter().any(|n| n.contains("C_S")));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["verdict"], "trivial_solution_class");
        assert_eq!(json["p_above_CS"], false);
    }

    #[test]
    fn non_solution_instance() {
        let f = eis();
        let inst = FermatInstance::new(f, &[2, 3, 5], [f.one(), f.one(), f.one()], 7, None).unwrap();
        let r = check_instance(&inst).unwrap();
        assert!(!r.is_fermat_solution);
        assert!(r.frey_curve.is_some());
        let Verdict::HypothesesViolated(v) = &r.verdict else { panic!() };
        assert_eq!(v[0], "not a solution");
    }

    #[test]
    fn even_support_is_noted() {
        let g = QuadraticField::new(-1).unwrap();
        let t = [g.parse_element("(1,1)").unwrap(), g.one(), g.one()];
        let r = check_instance(&FermatInstance::new(g, &[2, 3, 5], t, 19, Some(10)).unwrap()).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("above 2")));
        assert_eq!(r.c_s, 163);
    }

    #[test]
    fn instance_validation() {
        let f = eis();
        let t = trivial_triple();
        assert!(FermatInstance::new(f, &[2, 3], t.clone(), 7, None).is_err());
        assert_eq!(FermatInstance::new(f, &[2, 3, 5], t.clone(), 9, None), Err(Error::NotPrime(9)));
        let half = f.parse_element("1/2").unwrap();
        assert!(FermatInstance::new(f, &[2, 3, 5], [half, f.one(), f.one()], 7, None).is_err());
        let r = QuadraticField::new(-5).unwrap();
        assert!(FermatInstance::new(r, &[2, 3, 5], [r.one(), r.one(), r.one()], 7, None).is_err());
        assert_eq!(FermatInstance::new(f, &[2, 3, 5], t, 7, Some(1000)).unwrap().c_s, 1000);
    }

    #[test]
    fn known_solution_family() {
        let f = eis();
        for p in [7u64, 13, 19, 31] {
            let sols = known_solutions(f, p).unwrap();
            assert_eq!(sols.len(), 2);
            for t in sols {
                assert!(is_solution(&t, p as u32));
                let r = check_instance(&FermatInstance::new(f, &[2, 3, 5], t, p, None).unwrap()).unwrap();
                assert_eq!(r.verdict, Verdict::TrivialSolutionClass);
            }
        }
        // 1 + ε⁵ + ε¹⁰ = 1 + ε² + ε = 0
        let five = known_solutions(f, 5).unwrap();
        assert_eq!(five.len(), 2);
        let t = five[0].clone();
        let r = check_instance(&FermatInstance::new(f, &[2, 3, 5], t, 5, None).unwrap()).unwrap();
        assert!(r.is_fermat_solution && !r.h1_exponent_class);
        assert!(matches!(r.verdict, Verdict::HypothesesViolated(_)));
        // 1 + 1 + 1 ≠ 0
        assert!(known_solutions(f, 3).unwrap().is_empty());
        assert!(known_solutions(QuadraticField::new(-1).unwrap(), 7).unwrap().is_empty());
    }

    #[test]
    fn trivial_class_up_to_units_and_order() {
        let f = eis();
        let [one, e, e2] = trivial_triple();
        let u = f.omega();
        let perms = [
            [one.clone(), e.clone(), e2.clone()],
            [e2.clone(), one.clone(), e.clone()],
            [e.clone(), one.clone(), e2.clone()],
            [e2.clone(), e.clone(), one.clone()],
        ];
        for t in perms {
            let scaled = t.map(|x| &x * &u);
            assert!(is_trivial_triple(&scaled));
        }
        assert!(!is_trivial_triple(&[one.clone(), one.clone(), e.clone()]));
        assert!(!is_trivial_triple(&[f.int(2), &e * &f.int(2), &e2 * &f.int(2)]));
    }

    #[test]
    fn parse_triples() {
        let f = eis();
        let t = parse_triple(f, "1;(-1,1);(0,-1)").unwrap();
        assert_eq!(t, trivial_triple());
        assert!(parse_triple(f, "1;2").is_err());
    }
}
