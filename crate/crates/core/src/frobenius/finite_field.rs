//! `F_l` and `F_{l²} = F_l[t]/(t² − n)` for odd `l` and a non-residue `n`.

use crate::arith::mul_mod;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe {
    pub u: u64,
    pub v: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueField {
    l: u64,
    /// `t² = t_sq` in the quadratic extension; `None` for the prime field.
    t_sq: Option<u64>,
}

impl ResidueField {
    pub fn prime(l: u64) -> Self {
        Self { l, t_sq: None }
    }

    pub fn quadratic(l: u64, t_sq: u64) -> Self {
        Self { l, t_sq: Some(t_sq % l) }
    }

    pub fn characteristic(&self) -> u64 {
        self.l
    }

    pub fn t_square(&self) -> Option<u64> {
        self.t_sq
    }

    pub fn size(&self) -> u64 {
        match self.t_sq {
            None => self.l,
            Some(_) => self.l * self.l,
        }
    }

    pub fn zero(&self) -> Fe {
        Fe { u: 0, v: 0 }
    }

    pub fn one(&self) -> Fe {
        Fe { u: 1 % self.l, v: 0 }
    }

    pub fn from_u64(&self, x: u64) -> Fe {
        Fe { u: x % self.l, v: 0 }
    }

    pub fn from_i64(&self, x: i64) -> Fe {
        Fe { u: crate::arith::reduce_i64(x, self.l), v: 0 }
    }

    pub fn from_pair(&self, u: u64, v: u64) -> Fe {
        debug_assert!(self.t_sq.is_some() || v == 0);
        Fe { u: u % self.l, v: v % self.l }
    }

    /// Every element, in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let l = self.l;
        let vmax = if self.t_sq.is_some() { l } else { 1 };
        (0..vmax).flat_map(move |v| (0..l).map(move |u| Fe { u, v }))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe { u: (a.u + b.u) % self.l, v: (a.v + b.v) % self.l }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        Fe { u: (self.l - a.u) % self.l, v: (self.l - a.v) % self.l }
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let l = self.l;
        match self.t_sq {
            None => Fe { u: mul_mod(a.u, b.u, l), v: 0 },
            Some(n) => {
                let vv = mul_mod(mul_mod(a.v, b.v, l), n, l);
                Fe {
                    u: (mul_mod(a.u, b.u, l) + vv) % l,
                    v: (mul_mod(a.u, b.v, l) + mul_mod(a.v, b.u, l)) % l,
                }
            }
        }
    }

    pub fn pow(&self, mut base: Fe, mut exp: u64) -> Fe {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == self.zero() {
            return None;
        }
        // a^(q − 2) = a^(−1)
        Some(self.pow(a, self.size() - 2))
    }

    /// Quadratic character: `a^((q − 1)/2)` read as `0`, `1` or `−1`.
    pub fn chi(&self, a: Fe) -> i8 {
        if a == self.zero() {
            return 0;
        }
        let r = self.pow(a, (self.size() - 1) / 2);
        if r == self.one() {
            1
        } else {
            debug_assert_eq!(r, self.neg(self.one()));
            -1
        }
    }
}
