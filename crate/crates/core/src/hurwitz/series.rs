//! Truncated Laurent series in `z_1, …, z_b` with a degree cap per variable.

use std::collections::HashMap;

use num::{One, Zero};

use crate::exact::rational::{factorial, int, pow};
use crate::exact::Rational;

const BITS: u32 = 4;
const MAX_VARS: usize = 16;

/// Exponents are packed four bits per variable with an offset of one, so a
/// single simple pole per variable is representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    caps: Vec<i32>,
    terms: HashMap<u64, Rational>,
}

fn pack(exps: &[i32]) -> u64 {
    exps.iter().enumerate().fold(0u64, |k, (j, &e)| k | (((e + 1) as u64) << (BITS * j as u32)))
}

fn unpack(key: u64, n: usize) -> Vec<i32> {
    (0..n).map(|j| ((key >> (BITS * j as u32)) & 0xf) as i32 - 1).collect()
}

impl TruncatedSeries {
    pub fn zero(caps: Vec<i32>) -> Self {
        assert!(caps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        assert!(caps.iter().all(|&c| (0..14).contains(&c)));
        TruncatedSeries { caps, terms: HashMap::new() }
    }

    pub fn constant(caps: Vec<i32>, c: Rational) -> Self {
        let n = caps.len();
        let mut s = TruncatedSeries::zero(caps);
        s.add_term(&vec![0; n], c);
        s
    }

    pub fn one(caps: Vec<i32>) -> Self {
        TruncatedSeries::constant(caps, Rational::one())
    }

    pub fn n_vars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[i32] {
        &self.caps
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        assert_eq!(exps.len(), self.n_vars());
        if exps.iter().any(|&e| !(-1..=14).contains(&e)) {
            return Rational::zero();
        }
        self.terms.get(&pack(exps)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms sorted by exponent vector.
    pub fn terms(&self) -> Vec<(Vec<i32>, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&k, c)| (unpack(k, self.n_vars()), c.clone())).collect();
        v.sort();
        v
    }

    pub fn add_term(&mut self, exps: &[i32], c: Rational) {
        if c.is_zero() || exps.iter().zip(&self.caps).any(|(&e, &cap)| e > cap) {
            return;
        }
        assert!(exps.iter().all(|&e| e >= -1), "pole of order above one");
        let key = pack(exps);
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (&k, c) in &other.terms {
            s.add_term(&unpack(k, self.n_vars()), c.clone());
        }
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = TruncatedSeries::zero(self.caps.clone());
        if !c.is_zero() {
            for (&k, v) in &self.terms {
                s.terms.insert(k, v * c);
            }
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_within(other, &self.caps.clone())
    }

    /// Product keeping only exponents up to `bounds`, which lie below the caps.
    pub fn mul_within(&self, other: &Self, bounds: &[i32]) -> Self {
        assert_eq!(self.caps, other.caps, "series with different caps");
        let n = self.n_vars();
        let mut s = TruncatedSeries::zero(self.caps.clone());
        let a: Vec<_> = self.terms.iter().map(|(&k, c)| (unpack(k, n), c)).collect();
        let b: Vec<_> = other.terms.iter().map(|(&k, c)| (unpack(k, n), c)).collect();
        let mut e = vec![0; n];
        for (ea, ca) in &a {
            'inner: for (eb, cb) in &b {
                for j in 0..n {
                    e[j] = ea[j] + eb[j];
                    if e[j] > bounds[j] || e[j] < -1 {
                        continue 'inner;
                    }
                }
                s.add_term(&e, *ca * *cb);
            }
        }
        s
    }

    /// Renames variable `c` to `perm[c]`; caps must agree along the renaming.
    pub fn rename(&self, perm: &[usize]) -> Self {
        let n = self.n_vars();
        let mut caps = vec![0; n];
        for (c, &p) in perm.iter().enumerate() {
            caps[p] = self.caps[c];
        }
        let mut s = TruncatedSeries::zero(caps);
        let mut e = vec![0; n];
        for (&k, v) in &self.terms {
            for (c, x) in unpack(k, n).into_iter().enumerate() {
                e[perm[c]] = x;
            }
            s.terms.insert(pack(&e), v.clone());
        }
        s
    }

    /// Keeps only the terms with exponent `e` in variable `j`.
    pub fn retain_exponent(&mut self, j: usize, e: i32) {
        let shift = BITS * j as u32;
        self.terms.retain(|&k, _| ((k >> shift) & 0xf) as i32 - 1 == e);
    }

    /// Re-truncates at smaller caps.
    pub fn truncate(&self, caps: Vec<i32>) -> Self {
        let mut s = TruncatedSeries::zero(caps);
        for (&k, c) in &self.terms {
            s.add_term(&unpack(k, self.n_vars()), c.clone());
        }
        s
    }

    /// Homogeneous part of lowest total degree.
    pub fn lowest_part(&self) -> Self {
        let n = self.n_vars();
        let deg = |k: u64| unpack(k, n).iter().sum::<i32>();
        let Some(low) = self.terms.keys().map(|&k| deg(k)).min() else {
            return self.clone();
        };
        let mut s = TruncatedSeries::zero(self.caps.clone());
        for (&k, c) in &self.terms {
            if deg(k) == low {
                s.terms.insert(k, c.clone());
            }
        }
        s
    }

    /// `Σ_k f_k L^k` for a linear form `L` with integer coefficients.
    pub fn substitute(caps: Vec<i32>, f: &[Rational], form: &[i64]) -> Self {
        let n = caps.len();
        let mut lin = TruncatedSeries::zero(caps.clone());
        for (j, &c) in form.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            lin.add_term(&e, int(c));
        }
        let mut out = TruncatedSeries::zero(caps.clone());
        let mut power = TruncatedSeries::one(caps);
        for (k, fk) in f.iter().enumerate() {
            if k > 0 {
                power = power.mul(&lin);
            }
            if power.is_zero() {
                break;
            }
            if !fk.is_zero() {
                out = out.add(&power.scale(fk));
            }
        }
        out
    }
}

/// Univariate coefficients of `2 sinh(t/2)` up to `t^order`.
pub fn sinh_coefficients(scale: &Rational, order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|k| {
            if k % 2 == 1 {
                pow(scale, k as i64) * int(2) / (pow(&int(2), k as i64) * factorial(k as u64))
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// `a(t) / b(t)` truncated, with `b(0) ≠ 0`.
pub fn divide(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut q = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = a.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k {
            if let Some(bj) = b.get(j) {
                acc -= bj * &q[k - j];
            }
        }
        q.push(acc / &b[0]);
    }
    q
}

/// `ς(a t) / ς(t)` with `ς(t) = 2 sinh(t/2)`.
pub fn sinh_ratio_coefficients(a: i64, order: usize) -> Vec<Rational> {
    let num = sinh_coefficients(&int(a), order + 1);
    let den = sinh_coefficients(&Rational::one(), order + 1);
    divide(&num[1..], &den[1..], order)
}

/// `t / ς(t)`.
pub fn inverse_sinh_coefficients(order: usize) -> Vec<Rational> {
    let den = sinh_coefficients(&Rational::one(), order + 1);
    divide(&[Rational::one()], &den[1..], order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn sinh_ratio_at_zero() {
        let f = sinh_ratio_coefficients(2, 4);
        // sinh(t)/sinh(t/2) = 2 cosh(t/2)
        assert_eq!(f, vec![int(2), int(0), frac(1, 4), int(0), frac(1, 192)]);
        let g = inverse_sinh_coefficients(3);
        assert_eq!(g, vec![int(1), int(0), frac(-1, 24), int(0)]);
    }

    #[test]
    fn substitution_respects_caps() {
        let caps = vec![2, 2];
        let s = TruncatedSeries::substitute(caps, &[int(0), int(0), int(0), int(1)], &[1, 1]);
        // (z1 + z2)^3 keeps 3 z1^2 z2 + 3 z1 z2^2
        assert_eq!(s.coeff(&[2, 1]), int(3));
        assert_eq!(s.coeff(&[1, 2]), int(3));
        assert_eq!(s.n_terms(), 2);
    }

    #[test]
    fn laurent_terms() {
        let mut s = TruncatedSeries::zero(vec![2]);
        s.add_term(&[-1], int(1));
        let t = TruncatedSeries::substitute(vec![2], &[int(0), int(1)], &[1]);
        assert_eq!(s.mul(&t), TruncatedSeries::one(vec![2]));
        assert_eq!(s.coeff(&[-1]), int(1));
        assert_eq!(s.lowest_part(), s);
    }
}
