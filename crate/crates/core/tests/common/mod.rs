#![allow(dead_code)]

use galois_irred::elliptic::EllipticCurve;
use galois_irred::QuadraticField;

/// `(d, model)` pairs covering split, inert and ramified behaviour, CM and non-CM curves.
pub const CORPUS: &[(i64, &str)] = &[
    (-1, "[0; 6; 0; -7; 0]"),
    (-1, "[1; 0]"),
    (-3, "[0; 1]"),
    (-1, "[0; 4; 0; -5; 0]"),
    (-1, "[0; 11; 0; -12; 0]"),
    (-2, "[0; 11; 0; -12; 0]"),
    (-3, "[(0,1); 0; 1; -1; (2,-1)]"),
    (-7, "[1; (0,1); 0; (2,-1); 3]"),
    (-11, "[0; 0; 1; -1; 0]"),
    (-1, "[(0,1); 0]"),
    (-19, "[1; -1; 1; 0; 1]"),
    (-43, "[0; (1,1); 0; -2; 1/2]"),
    (5, "[0; 1; 0; 2; 1]"),
    (2, "[(1,1); 0; 0; 3; (0,1)]"),
];

pub fn corpus() -> Vec<EllipticCurve> {
    CORPUS
        .iter()
        .map(|&(d, s)| EllipticCurve::parse(QuadraticField::new(d).unwrap(), s).unwrap())
        .collect()
}

pub fn curve(d: i64, s: &str) -> EllipticCurve {
    EllipticCurve::parse(QuadraticField::new(d).unwrap(), s).unwrap()
}
