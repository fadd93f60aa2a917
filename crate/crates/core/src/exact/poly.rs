use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use super::rational::{self, Rational};

/// Univariate polynomial over the rationals, coefficients low to high.
///
/// Canonical form has no trailing zero coefficient; the zero polynomial has
/// no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// `∏ (x - root)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots.into_iter().fold(UniPoly::constant(Rational::one()), |acc, root| {
            acc * UniPoly::new(vec![-root.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exponent of the largest power of `x` dividing the polynomial.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// `p(c·x)`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        UniPoly::new(out)
    }

    /// Exact division by `x - root`; `None` when there is a remainder.
    pub fn divide_by_root(&self, root: &Rational) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + carry * root;
            quotient[k - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] + carry * root;
        remainder.is_zero().then(|| UniPoly::new(quotient))
    }

    /// Multiplicity of `root`.
    pub fn root_multiplicity(&self, root: &Rational) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            match p.divide_by_root(root) {
                Some(q) => {
                    p = q;
                    m += 1;
                }
                None => break,
            }
        }
        m
    }

    /// Rational roots with multiplicities, ascending, by the rational root
    /// test. `None` when a coefficient is too large to factor by trial
    /// division.
    pub fn rational_roots(&self) -> Option<Vec<(Rational, usize)>> {
        let Some(v) = self.x_valuation() else { return Some(Vec::new()) };
        let mut out = Vec::new();
        if v > 0 {
            out.push((Rational::zero(), v));
        }
        let rest = UniPoly::new(self.coeffs[v..].to_vec());
        let lcm = rest.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rest.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let ps = divisors(ints.first()?)?;
        let qs = divisors(ints.last()?)?;
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                let c = Rational::new(p.clone(), q.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            let m = rest.root_multiplicity(&c);
            if m > 0 {
                out.push((c, m));
            }
        }
        out.sort();
        Some(out)
    }

    /// Coefficients as `"p/q"` strings, low to high.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::to_string).collect()
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if d > 2_000_000 {
            return None;
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rational::to_string(c))?,
                1 => write!(f, "({})*x", rational::to_string(c))?,
                _ => write!(f, "({})*x^{}", rational::to_string(c), k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        let p = UniPoly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.coeffs().len(), 1);
        assert!(UniPoly::new(vec![int(0)]).is_zero());
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn roots_and_division() {
        let p = UniPoly::from_roots(&[int(1), int(3), int(0)]);
        assert_eq!(p, UniPoly::from_ints(&[0, 3, -4, 1]));
        assert_eq!(p.root_multiplicity(&int(3)), 1);
        assert_eq!(p.root_multiplicity(&int(2)), 0);
        let q = UniPoly::from_roots(&[int(2), int(2)]).shift(1);
        assert_eq!(q.root_multiplicity(&int(2)), 2);
        assert_eq!(q.x_valuation(), Some(1));
        assert_eq!(p.eval(&int(3)), int(0));
    }

    #[test]
    fn rescaling() {
        let p = UniPoly::from_ints(&[1, 1, 1]);
        let q = p.rescale_variable(&frac(1, 2));
        assert_eq!(q.coeffs(), &[int(1), frac(1, 2), frac(1, 4)]);
    }

    #[test]
    fn rational_roots_found() {
        let roots = [int(0), int(0), frac(9, 2), int(-3)];
        let p = UniPoly::from_roots(&roots).scale(&frac(1, 13 * 13));
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![(int(-3), 1), (int(0), 2), (frac(9, 2), 1)]
        );
        // x^2 + 1 has none
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).rational_roots().unwrap(), vec![]);
    }
}
