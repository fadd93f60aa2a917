//! Truncated multivariate polynomials in ψ- and κ-generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, Rational};

/// A generator of the local ring at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// ψ-class at a local slot (a leg or a half-edge), degree 1.
    Psi(usize),
    /// κ_m at a vertex, degree m.
    Kappa { vertex: usize, m: u32 },
}

impl Generator {
    pub fn weight(self) -> u32 {
        match self {
            Generator::Psi(_) => 1,
            Generator::Kappa { m, .. } => m,
        }
    }
}

/// Polynomial truncated at a weighted degree bound. No stored term exceeds
/// the bound, and every product is truncated again.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    gens: Arc<[Generator]>,
    terms: BTreeMap<Vec<u32>, Rational>,
    bound: u32,
}

impl GradedPoly {
    pub fn zero(gens: Arc<[Generator]>, bound: u32) -> Self {
        GradedPoly { gens, terms: BTreeMap::new(), bound }
    }

    pub fn constant(gens: Arc<[Generator]>, bound: u32, c: Rational) -> Self {
        let mut p = GradedPoly::zero(gens, bound);
        p.add_term(vec![0; p.gens.len()], c);
        p
    }

    pub fn one(gens: Arc<[Generator]>, bound: u32) -> Self {
        GradedPoly::constant(gens, bound, Rational::one())
    }

    /// `c · ∏ g_i^{exps_i}`, or zero if it exceeds the bound.
    pub fn monomial(gens: Arc<[Generator]>, bound: u32, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), gens.len());
        let mut p = GradedPoly::zero(gens, bound);
        p.add_term(exps, c);
        p
    }

    pub fn generator(gens: Arc<[Generator]>, bound: u32, index: usize) -> Self {
        let mut exps = vec![0; gens.len()];
        exps[index] = 1;
        GradedPoly::monomial(gens, bound, exps, Rational::one())
    }

    pub fn gens(&self) -> &Arc<[Generator]> {
        &self.gens
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(self.gens.iter()).map(|(&e, g)| e * g.weight()).sum()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.gens.len()])
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() || self.weighted_degree(&exps) > self.bound {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Re-truncates at a smaller bound.
    pub fn truncate(&self, bound: u32) -> Self {
        let mut p = GradedPoly::zero(self.gens.clone(), bound.min(self.bound));
        for (k, v) in &self.terms {
            p.add_term(k.clone(), v.clone());
        }
        p
    }

    /// Homogeneous part of weighted degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        let mut p = GradedPoly::zero(self.gens.clone(), self.bound);
        for (k, v) in &self.terms {
            if self.weighted_degree(k) == d {
                p.add_term(k.clone(), v.clone());
            }
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut p = self.clone();
        for (k, v) in &other.terms {
            p.add_term(k.clone(), v.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = GradedPoly::zero(self.gens.clone(), self.bound);
        for (k, v) in &self.terms {
            p.add_term(k.clone(), v * c);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let bound = self.bound.min(other.bound);
        let mut p = GradedPoly::zero(self.gens.clone(), bound);
        for (ka, va) in &self.terms {
            let da = self.weighted_degree(ka);
            for (kb, vb) in &other.terms {
                if da + self.weighted_degree(kb) > bound {
                    continue;
                }
                let k: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                p.add_term(k, va * vb);
            }
        }
        p
    }

    /// `exp(self)` truncated; requires a zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.constant_term().is_zero(), "exp needs a nilpotent argument");
        let mut result = GradedPoly::one(self.gens.clone(), self.bound);
        let mut power = result.clone();
        for k in 1..=self.bound as u64 {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            result = result.add(&power.scale(&factorial(k).recip()));
        }
        result
    }

    /// Exact quotient by `g_i + g_j` for two degree-one generators; an error
    /// if the division leaves a remainder.
    pub fn divide_by_sum(&self, i: usize, j: usize) -> Result<Self> {
        assert!(self.gens[i].weight() == 1 && self.gens[j].weight() == 1);
        let mut rem = self.terms.clone();
        let mut q = GradedPoly::zero(self.gens.clone(), self.bound.saturating_sub(1));
        // lex division with g_i leading: peel off the highest g_i power first
        loop {
            let key = rem
                .iter()
                .filter(|(k, _)| k[i] > 0)
                .max_by_key(|(k, _)| k[i])
                .map(|(k, _)| k.clone());
            let Some(k) = key else { break };
            let c = rem.remove(&k).unwrap();
            let mut qk = k.clone();
            qk[i] -= 1;
            let mut other = qk.clone();
            other[j] += 1;
            let e = rem.entry(other).or_insert_with(Rational::zero);
            *e -= &c;
            if e.is_zero() {
                let mut other = qk.clone();
                other[j] += 1;
                rem.remove(&other);
            }
            q.add_term(qk, c);
        }
        if rem.values().any(|v| !v.is_zero()) {
            return Err(Error::InvalidInput("edge numerator not divisible by ψ_h + ψ_h'".into()));
        }
        Ok(q)
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.gens, &other.gens) || self.gens == other.gens,
            "graded polynomials over different generators"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};
    use proptest::prelude::*;

    fn universe() -> Arc<[Generator]> {
        Arc::from(vec![
            Generator::Psi(0),
            Generator::Psi(1),
            Generator::Kappa { vertex: 0, m: 1 },
            Generator::Kappa { vertex: 0, m: 2 },
        ])
    }

    fn arb_poly() -> impl Strategy<Value = GradedPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2, 0u32..2), -5i64..5, 1i64..4), 0..6)
            .prop_map(|terms| {
                let gens = universe();
                let mut p = GradedPoly::zero(gens.clone(), 4);
                for ((a, b, c, d), num, den) in terms {
                    p = p.add(&GradedPoly::monomial(gens.clone(), 4, vec![a, b, c, d], frac(num, den)));
                }
                p
            })
    }

    proptest! {
        #[test]
        fn mul_associative_commutative(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
        }

        #[test]
        fn truncation_respected(f in arb_poly(), g in arb_poly()) {
            let p = f.mul(&g);
            for (k, _) in p.terms() {
                prop_assert!(p.weighted_degree(k) <= p.bound());
            }
        }
    }

    #[test]
    fn monomials_past_bound_vanish() {
        let p = GradedPoly::monomial(universe(), 3, vec![0, 0, 0, 2], int(1));
        assert!(p.is_zero());
    }

    #[test]
    fn exp_of_generator() {
        let x = GradedPoly::generator(universe(), 3, 0);
        let e = x.exp();
        assert_eq!(e.coeff(&[3, 0, 0, 0]), frac(1, 6));
        assert_eq!(e.coeff(&[0, 0, 0, 0]), int(1));
    }

    #[test]
    fn exact_division() {
        let gens = universe();
        let u = GradedPoly::generator(gens.clone(), 4, 0);
        let v = GradedPoly::generator(gens.clone(), 4, 1);
        // u^3 + v^3 = (u + v)(u^2 - uv + v^2)
        let num = u.mul(&u).mul(&u).add(&v.mul(&v).mul(&v));
        let q = num.divide_by_sum(0, 1).unwrap();
        assert_eq!(q.coeff(&[2, 0, 0, 0]), int(1));
        assert_eq!(q.coeff(&[1, 1, 0, 0]), int(-1));
        assert_eq!(q.coeff(&[0, 2, 0, 0]), int(1));
        assert_eq!(q.n_terms(), 3);
        // u^2 is not divisible by u + v
        assert!(u.mul(&u).divide_by_sum(0, 1).is_err());
    }
}
