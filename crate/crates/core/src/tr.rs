//! Vanishing relations among genus-zero Chiodo integrals with descendants.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::combinat::{falling_factorial, multiset_partition_tuples, partition_automorphisms};
use crate::exact::rational::{factorial, frac, Rational};
use crate::omega::{OmegaEngine, OmegaSpec};
use crate::par::Execution;

/// Data `(r; μ_1..μ_n; b_1..b_ℓ)` of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInput {
    pub r: u32,
    pub mu: Vec<u32>,
    pub b: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionFlags {
    pub negativity: bool,
    pub boundedness: bool,
    pub strong_negativity: bool,
}

/// One summand of the relation, grouped by the sizes of its blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    /// Sizes `|ρ^(κ)|` in tuple order.
    pub block_sizes: Vec<u32>,
    pub coefficient: Rational,
}

impl RelationInput {
    pub fn new(r: u32, mu: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidInput("relations need r ≥ 2".into()));
        }
        if mu.is_empty() || mu.contains(&0) {
            return Err(Error::InvalidInput("μ needs at least one part, all positive".into()));
        }
        if b.is_empty() || b.iter().any(|&x| x == 0 || x >= r) {
            return Err(Error::InvalidInput(format!("b needs at least one part, all in 1..={}", r - 1)));
        }
        let input = RelationInput { r, mu, b };
        if (input.b_sum() - input.mu_sum()).rem_euclid(r as i64) != 0 {
            return Err(Error::ModularConstraint(format!(
                "sum of b = {} is not congruent to |μ| = {} mod {r}",
                input.b_sum(),
                input.mu_sum()
            )));
        }
        Ok(input)
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn ell(&self) -> usize {
        self.b.len()
    }

    pub fn mu_sum(&self) -> i64 {
        self.mu.iter().map(|&m| m as i64).sum()
    }

    pub fn b_sum(&self) -> i64 {
        self.b.iter().map(|&m| m as i64).sum()
    }

    /// `δ = (|b| - |μ|) / r`.
    pub fn delta(&self) -> i64 {
        (self.b_sum() - self.mu_sum()) / self.r as i64
    }

    /// `b∨ = (r - b_1, …, r - b_ℓ)`.
    pub fn b_dual(&self) -> Vec<u32> {
        self.b.iter().map(|&x| self.r - x).collect()
    }

    /// Representative of `-μ_i` in `0..r`.
    pub fn neg_mu_bar(&self, i: usize) -> i64 {
        (-(self.mu[i] as i64)).rem_euclid(self.r as i64)
    }

    fn integrand_spec(&self, block_sizes: &[u32]) -> Result<OmegaSpec> {
        let mut a: Vec<i64> = (0..self.n()).map(|i| self.neg_mu_bar(i)).collect();
        a.extend(block_sizes.iter().map(|&s| self.r as i64 - s as i64));
        OmegaSpec::new(self.r, 0, a)
    }

    fn descendant_weights(&self, extra: usize) -> Vec<Rational> {
        let mut c: Vec<Rational> = self.mu.iter().map(|&m| frac(m as i64, self.r as i64)).collect();
        c.resize(self.n() + extra, Rational::zero());
        c
    }
}

pub fn condition_flags(input: &RelationInput) -> ConditionFlags {
    let (mu, b) = (input.mu_sum(), input.b_sum());
    let mut boundedness = true;
    for i in 0..input.ell() {
        for j in 0..input.ell() {
            if i != j && input.b[i] + input.b[j] > input.r {
                boundedness = false;
            }
        }
    }
    ConditionFlags {
        negativity: mu < b,
        boundedness,
        strong_negativity: mu + input.delta() < input.ell() as i64,
    }
}

/// The summands of the relation, with equal block-size tuples merged. Tuples
/// whose blocks exceed `r - 1` never appear.
pub fn relation_terms(input: &RelationInput) -> Vec<RelationTerm> {
    let r = input.r;
    let ell = input.ell();
    let dual = input.b_dual();
    let mut merged: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for t in 1..=ell {
        let sign = if (ell - t).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let pre = sign / factorial(t as u64);
        for tuple in multiset_partition_tuples(&dual, t, r - 1) {
            let mut c = pre.clone();
            for rho in &tuple.blocks {
                let x = frac((r - rho.size()) as i64, r as i64);
                c *= falling_factorial(&x, rho.len() as u32 - 1);
                c /= Rational::from_integer(partition_automorphisms(rho));
            }
            let sizes: Vec<u32> = tuple.blocks.iter().map(|p| p.size()).collect();
            *merged.entry(sizes).or_insert_with(Rational::zero) += c;
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(block_sizes, coefficient)| RelationTerm { block_sizes, coefficient })
        .collect()
}

/// Left-hand side of the relation; vanishes under negativity.
pub fn tr_relation_lhs(input: &RelationInput) -> Result<Rational> {
    tr_relation_lhs_with(input, Execution::default())
}

pub fn tr_relation_lhs_with(input: &RelationInput, execution: Execution) -> Result<Rational> {
    let terms = relation_terms(input);
    for term in &terms {
        let points = input.n() + term.block_sizes.len();
        if points < 3 {
            return Err(Error::UnstableRelationTerm(format!(
                "term with blocks of sizes {:?} lives on {points} points",
                term.block_sizes
            )));
        }
    }
    // integrals depend only on the multiset of block sizes
    let mut keys: Vec<Vec<u32>> = terms
        .iter()
        .map(|t| {
            let mut k = t.block_sizes.clone();
            k.sort_unstable();
            k
        })
        .collect();
    keys.sort();
    keys.dedup();
    let values = execution.map(&keys, |k| -> Result<Rational> {
        let spec = input.integrand_spec(k)?;
        OmegaEngine::new(spec)?
            .execution(Execution::Sequential)
            .geometric_integral(&input.descendant_weights(k.len()))
    });
    let mut integrals = BTreeMap::new();
    for (k, v) in keys.into_iter().zip(values) {
        integrals.insert(k, v?);
    }
    let mut total = Rational::zero();
    for term in terms {
        let mut k = term.block_sizes.clone();
        k.sort_unstable();
        total += term.coefficient * &integrals[&k];
    }
    Ok(total)
}

/// `∫ Ω(r, 0; -μ̄, b) / ∏ (1 - (μ_i/r) ψ_i)`, the one summand left when
/// boundedness holds.
pub fn single_vanishing_integral(input: &RelationInput) -> Result<Rational> {
    if !condition_flags(input).boundedness {
        return Err(Error::BoundednessViolated(format!(
            "max b_i + b_j exceeds r = {}",
            input.r
        )));
    }
    let mut a: Vec<i64> = (0..input.n()).map(|i| input.neg_mu_bar(i)).collect();
    a.extend(input.b.iter().map(|&x| x as i64));
    let spec = OmegaSpec::new(input.r, 0, a)?;
    OmegaEngine::new(spec)?.geometric_integral(&input.descendant_weights(input.ell()))
}

/// `∏_v m_v!` over the multiplicities of the values of `b`: under
/// boundedness the relation equals the single integral divided by this.
pub fn bounded_normalization(input: &RelationInput) -> Rational {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for &x in &input.b {
        *counts.entry(x).or_insert(0) += 1;
    }
    counts.values().fold(Rational::one(), |acc, &m| acc * factorial(m))
}
