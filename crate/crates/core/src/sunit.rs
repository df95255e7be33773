//! Bounded search for solutions of `x + y = 1` in `S`-units.
//!
//! Over an imaginary quadratic field of class number one every prime above
//! `S` is principal, so an `S`-unit is `ζ·Π gᵢ^eᵢ` with `ζ` a root of unity
//! and `gᵢ` the prime generators. The search is complete only for
//! `|eᵢ| <= bound` on both `x` and `y`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::number_field::{FieldElement, PrimeIdeal, QuadraticField};

pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SUnitBasis {
    pub field: QuadraticField,
    pub s: Vec<u64>,
    pub torsion: Vec<FieldElement>,
    /// Per rational prime in `S`, the generators of the primes above it.
    pub prime_generators: Vec<(u64, Vec<FieldElement>)>,
    #[serde(skip)]
    primes: Vec<PrimeIdeal>,
}

/// `ζ = torsion[torsion_index]` and one exponent per generator, in basis order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Exponents {
    pub torsion_index: usize,
    pub e: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SUnitSolution {
    pub x: FieldElement,
    pub y: FieldElement,
    pub x_exponents: Exponents,
    pub y_exponents: Exponents,
}

impl std::fmt::Display for SUnitSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x = {} ; y = {}", self.x, self.y)
    }
}

pub fn s_unit_basis(field: QuadraticField, s: &[u64]) -> Result<SUnitBasis> {
    if !field.is_class_number_one_imaginary() {
        return Err(Error::Unsupported(format!(
            "S-units are only implemented over imaginary quadratic fields of class number one, not d = {}",
            field.d()
        )));
    }
    let set: BTreeSet<u64> = s.iter().copied().collect();
    let mut prime_generators = Vec::new();
    let mut primes = Vec::new();
    for &l in &set {
        if !arith::is_prime(l) {
            return Err(Error::NotPrime(l));
        }
        let above = field.primes_above(l)?;
        let gens = above
            .iter()
            .map(|p| p.generator.clone().expect("class number one"))
            .collect();
        prime_generators.push((l, gens));
        primes.extend(above);
    }
    Ok(SUnitBasis { field, s: set.into_iter().collect(), torsion: field.units()?, prime_generators, primes })
}

impl SUnitBasis {
    pub fn generators(&self) -> impl Iterator<Item = &FieldElement> {
        self.prime_generators.iter().flat_map(|(_, g)| g.iter())
    }

    pub fn rank(&self) -> usize {
        self.primes.len()
    }

    /// Whether `x` is nonzero, `S`-integral and has norm supported on `S`.
    pub fn is_s_unit(&self, x: &FieldElement) -> bool {
        !x.is_zero()
            && arith::supported_on(&num_rational::BigRational::from_integer(x.denominator()), &self.s)
            && arith::supported_on(&x.norm(), &self.s)
    }

    /// The representation `x = ζ·Π gᵢ^eᵢ` of an `S`-unit.
    pub fn exponents(&self, x: &FieldElement) -> Option<Exponents> {
        if !self.is_s_unit(x) {
            return None;
        }
        let e: Vec<i64> = self.primes.iter().map(|p| p.valuation(x).finite().expect("nonzero")).collect();
        let mut rest = x.clone();
        for (g, &k) in self.generators().zip(&e) {
            rest = rest.checked_div(&g.pow_signed(k).ok()?).ok()?;
        }
        let torsion_index = self.torsion.iter().position(|z| *z == rest)?;
        Some(Exponents { torsion_index, e })
    }

    fn element(&self, powers: &[Vec<FieldElement>], bound: i64, idx: u64) -> (FieldElement, Exponents) {
        let t = self.torsion.len() as u64;
        let width = 2 * bound as u64 + 1;
        let torsion_index = (idx % t) as usize;
        let mut rest = idx / t;
        let mut x = self.torsion[torsion_index].clone();
        let mut e = Vec::with_capacity(powers.len());
        for table in powers {
            let k = (rest % width) as usize;
            rest /= width;
            x = &x * &table[k];
            e.push(k as i64 - bound);
        }
        (x, Exponents { torsion_index, e })
    }
}

pub fn solve_s_unit_equation(field: QuadraticField, s: &[u64], exponent_bound: u32) -> Result<Vec<SUnitSolution>> {
    solve_with_cap(field, s, exponent_bound, DEFAULT_ENUMERATION_CAP)
}

/// All `(x, y)` with `x + y = 1`, both `S`-units with exponents at most `exponent_bound` in absolute value.
pub fn solve_with_cap(field: QuadraticField, s: &[u64], exponent_bound: u32, cap: u64) -> Result<Vec<SUnitSolution>> {
    let basis = s_unit_basis(field, s)?;
    let bound = exponent_bound as i64;
    let width = 2 * exponent_bound as u64 + 1;
    let required = (0..basis.rank())
        .try_fold(basis.torsion.len() as u64, |acc, _| acc.checked_mul(width))
        .unwrap_or(u64::MAX);
    if required > cap {
        return Err(Error::EnumerationCap { cap, required });
    }
    let powers: Vec<Vec<FieldElement>> = basis
        .generators()
        .map(|g| (-bound..=bound).map(|k| g.pow_signed(k).expect("generators are nonzero")).collect())
        .collect();
    let one = field.one();
    let mut found: Vec<SUnitSolution> = (0..required)
        .into_par_iter()
        .filter_map(|idx| {
            let (x, x_exponents) = basis.element(&powers, bound, idx);
            let y = &one - &x;
            let y_exponents = basis.exponents(&y)?;
            y_exponents.e.iter().all(|k| k.abs() <= bound).then_some(SUnitSolution { x, y, x_exponents, y_exponents })
        })
        .collect();
    found.sort_by(|a, b| {
        (&a.x_exponents.e, a.x_exponents.torsion_index).cmp(&(&b.x_exponents.e, b.x_exponents.torsion_index))
    });
    found.dedup_by(|a, b| a.x == b.x);
    Ok(found)
}
