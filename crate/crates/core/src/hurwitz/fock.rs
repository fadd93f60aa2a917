//! Vacuum expectations of products of `E_a(z)` operators, computed by
//! commuting positive-energy operators to the right.
//!
//! `[E_a(z), E_b(w)] = ς(aw - bz) E_{a+b}(z + w)` with `ς(t) = 2 sinh(t/2)`,
//! `⟨E_0(z)⟩ = 1/ς(z)`, `E_k|0⟩ = 0` and `⟨0|E_{-k} = 0` for `k > 0`.

use std::collections::HashMap;

use num::Zero;

use super::series::{inverse_sinh_coefficients, sinh_coefficients, sinh_ratio_coefficients, TruncatedSeries};
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Exact,
    /// Every `ς(X)` replaced by `X`.
    Linearized,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EOperator {
    pub energy: i64,
    /// Integer coefficients of the argument in `z_1, …, z_b`.
    pub arg: Vec<i64>,
    /// `Some(a)` on an `E_0(M)` produced by `[E_a, E_{-a}]`: it carries the
    /// commutator factor and stands for `ς(aM) E_0(M)`, whose expectation
    /// `ς(aM)/ς(M)` is regular even at `M = 0`.
    pub paired: Option<i64>,
}

impl EOperator {
    pub fn new(energy: i64, arg: Vec<i64>) -> Self {
        EOperator { energy, arg, paired: None }
    }

    pub fn at_zero(energy: i64, n_vars: usize) -> Self {
        EOperator::new(energy, vec![0; n_vars])
    }

    /// `E_0(z_j)`.
    pub fn zero_mode(j: usize, n_vars: usize) -> Self {
        let mut arg = vec![0; n_vars];
        arg[j] = 1;
        EOperator::new(0, arg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    pub n_vars: usize,
    pub ops: Vec<EOperator>,
}

impl OperatorWord {
    pub fn new(n_vars: usize, ops: Vec<EOperator>) -> Result<Self> {
        if ops.iter().any(|o| o.arg.len() != n_vars) {
            return Err(Error::InvalidInput(format!("every argument needs {n_vars} coefficients")));
        }
        Ok(OperatorWord { n_vars, ops })
    }

    pub fn energy(&self) -> i64 {
        self.ops.iter().map(|o| o.energy).sum()
    }
}

/// Memoizing evaluator for words over a fixed set of variables and caps.
pub struct FockEvaluator {
    mode: Mode,
    caps: Vec<i32>,
    memo: HashMap<Vec<EOperator>, TruncatedSeries>,
    sigma: HashMap<Vec<i64>, TruncatedSeries>,
    extraction: bool,
}

impl FockEvaluator {
    /// Internal caps leave room for one simple pole per `E_0(z_j)` factor.
    pub fn new(mode: Mode, caps: Vec<i32>) -> Self {
        FockEvaluator { mode, caps, memo: HashMap::new(), sigma: HashMap::new(), extraction: false }
    }

    /// Only the coefficient of `∏ z_j^{cap}` is wanted, for even `cap`, and
    /// each `z_j` occurs in exactly one `E_0(z_j)`. A word where such an
    /// operator can no longer be reached by a positive-energy one is dropped:
    /// `1/ς(z_j)` is odd. While `E_0(z_j)` is untouched no earlier factor
    /// involves `z_j`, so only terms with `z_j^{cap}` are kept.
    pub fn for_extraction(mode: Mode, caps: Vec<i32>) -> Self {
        FockEvaluator { extraction: true, ..FockEvaluator::new(mode, caps) }
    }

    fn stranded_zero_mode(ops: &[EOperator]) -> bool {
        for o in ops {
            if o.energy > 0 {
                return false;
            }
            if o.energy == 0 && o.paired.is_none() {
                return true;
            }
        }
        false
    }

    fn order(&self) -> usize {
        self.caps.iter().map(|&c| c.max(0) as usize).sum::<usize>() + 2
    }

    fn sigma(&mut self, form: &[i64]) -> TruncatedSeries {
        if let Some(s) = self.sigma.get(form) {
            return s.clone();
        }
        let f = match self.mode {
            Mode::Exact => sinh_coefficients(&Rational::from_integer(1.into()), self.order()),
            Mode::Linearized => vec![Rational::zero(), int(1)],
        };
        let s = TruncatedSeries::substitute(self.caps.clone(), &f, form);
        self.sigma.insert(form.to_vec(), s.clone());
        s
    }

    fn lone_zero_mode(&mut self, op: &EOperator) -> Result<TruncatedSeries> {
        if let Some(a) = op.paired {
            let f = match self.mode {
                Mode::Exact => sinh_ratio_coefficients(a, self.order()),
                Mode::Linearized => vec![int(a)],
            };
            return Ok(TruncatedSeries::substitute(self.caps.clone(), &f, &op.arg));
        }
        let support: Vec<usize> = (0..op.arg.len()).filter(|&j| op.arg[j] != 0).collect();
        if support.len() != 1 {
            return Err(Error::NonRemovableSingularity(format!("⟨E_0⟩ at argument {:?}", op.arg)));
        }
        let (j, c) = (support[0], op.arg[support[0]]);
        // 1/ς(c z_j) = (c z_j)^{-1} · (t/ς(t))|_{t = c z_j}
        let g = match self.mode {
            Mode::Exact => inverse_sinh_coefficients(self.order()),
            Mode::Linearized => vec![int(1)],
        };
        let regular = TruncatedSeries::substitute(self.caps.clone(), &g, &op.arg);
        let mut pole = TruncatedSeries::zero(self.caps.clone());
        let mut e = vec![0; self.caps.len()];
        e[j] = -1;
        pole.add_term(&e, Rational::new(1.into(), c.into()));
        Ok(pole.mul(&regular))
    }

    /// Relabels variables by first appearance; returns the relabeled word and
    /// the map from new labels to old ones.
    fn canonical(ops: &[EOperator], n: usize) -> (Vec<EOperator>, Vec<usize>) {
        let mut new_of = vec![usize::MAX; n];
        let mut old_of = Vec::with_capacity(n);
        for o in ops {
            for (j, &c) in o.arg.iter().enumerate() {
                if c != 0 && new_of[j] == usize::MAX {
                    new_of[j] = old_of.len();
                    old_of.push(j);
                }
            }
        }
        for j in 0..n {
            if new_of[j] == usize::MAX {
                new_of[j] = old_of.len();
                old_of.push(j);
            }
        }
        let canon = ops
            .iter()
            .map(|o| {
                let mut arg = vec![0; n];
                for (j, &c) in o.arg.iter().enumerate() {
                    arg[new_of[j]] = c;
                }
                EOperator { energy: o.energy, arg, paired: o.paired }
            })
            .collect();
        (canon, old_of)
    }

    pub fn eval(&mut self, ops: &[EOperator]) -> Result<TruncatedSeries> {
        let n = self.caps.len();
        if n > 1 && self.caps.iter().all(|&c| c == self.caps[0]) {
            let (canon, old_of) = Self::canonical(ops, n);
            if old_of.iter().enumerate().any(|(i, &j)| i != j) {
                return Ok(self.eval_raw(&canon)?.rename(&old_of));
            }
        }
        self.eval_raw(ops)
    }

    /// Per-variable bounds on the exponents still needed from a word: in
    /// extraction mode an absorbed `z_j` already received its linear factor.
    fn bounds(&self, ops: &[EOperator]) -> Vec<i32> {
        if !self.extraction {
            return self.caps.clone();
        }
        let mut b = vec![0; self.caps.len()];
        for o in ops {
            let untouched = o.energy == 0 && o.paired.is_none();
            for (j, &c) in o.arg.iter().enumerate() {
                if c != 0 {
                    b[j] = if untouched { self.caps[j] } else { self.caps[j] - 1 };
                }
            }
        }
        b
    }

    fn eval_raw(&mut self, ops: &[EOperator]) -> Result<TruncatedSeries> {
        let zero = || TruncatedSeries::zero(self.caps.clone());
        if ops.is_empty() {
            return Ok(TruncatedSeries::one(self.caps.clone()));
        }
        let mut suffix = 0;
        for o in ops.iter().rev() {
            suffix += o.energy;
            if suffix > 0 {
                return Ok(zero());
            }
        }
        if suffix != 0 {
            return Ok(zero());
        }
        if self.extraction && Self::stranded_zero_mode(ops) {
            return Ok(zero());
        }
        if let Some(s) = self.memo.get(ops) {
            return Ok(s.clone());
        }
        let bounds = self.bounds(ops);
        let mut result = match ops.iter().rposition(|o| o.energy > 0) {
            None => {
                let mut acc = TruncatedSeries::one(self.caps.clone());
                for o in ops {
                    acc = acc.mul_within(&self.lone_zero_mode(o)?, &bounds);
                }
                acc
            }
            Some(i) => {
                let (x, y) = (&ops[i], &ops[i + 1]);
                let mut swapped = ops.to_vec();
                swapped.swap(i, i + 1);
                let mut total = self.eval(&swapped)?;

                let (a, b) = (x.energy, y.energy);
                let sum: Vec<i64> = x.arg.iter().zip(&y.arg).map(|(z, w)| z + w).collect();
                let mut coef = TruncatedSeries::one(self.caps.clone());
                if let Some(q) = y.paired {
                    let f: Vec<i64> = y.arg.iter().map(|w| q * w).collect();
                    coef = coef.mul_within(&self.sigma(&f), &bounds);
                }
                let merged = if a + b == 0 {
                    EOperator { energy: 0, arg: sum, paired: Some(a) }
                } else if self.extraction && b == 0 && y.paired.is_none() {
                    // ς(a z_j): only the linear term survives the cap on z_j
                    let j = y.arg.iter().position(|&c| c != 0).expect("E_0 at a variable");
                    let mut e = vec![0; self.caps.len()];
                    e[j] = 1;
                    coef = TruncatedSeries::zero(self.caps.clone());
                    coef.add_term(&e, int(a * y.arg[j]));
                    EOperator::new(a, sum)
                } else {
                    let form: Vec<i64> = x.arg.iter().zip(&y.arg).map(|(z, w)| a * w - b * z).collect();
                    coef = coef.mul_within(&self.sigma(&form), &bounds);
                    EOperator::new(a + b, sum)
                };
                if !coef.is_zero() {
                    let mut rest = ops[..i].to_vec();
                    rest.push(merged);
                    rest.extend_from_slice(&ops[i + 2..]);
                    total = total.add(&coef.mul_within(&self.eval(&rest)?, &bounds));
                }
                total
            }
        };
        if self.extraction {
            for o in ops {
                if o.energy == 0 && o.paired.is_none() {
                    if let Some(j) = o.arg.iter().position(|&c| c != 0) {
                        result.retain_exponent(j, self.caps[j]);
                    }
                }
            }
        }
        self.memo.insert(ops.to_vec(), result.clone());
        Ok(result)
    }
}

/// `⟨word⟩` with every `z_j` truncated at degree `cap`.
pub fn vacuum_expectation(word: &OperatorWord, mode: Mode, cap: i32) -> Result<TruncatedSeries> {
    let mut caps = vec![cap; word.n_vars];
    for o in &word.ops {
        if o.energy == 0 && o.paired.is_none() {
            for (j, &c) in o.arg.iter().enumerate() {
                if c != 0 {
                    caps[j] += 1;
                }
            }
        }
    }
    let mut ev = FockEvaluator::new(mode, caps);
    Ok(ev.eval(&word.ops)?.truncate(vec![cap; word.n_vars]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn lone_zero_mode() {
        let w = OperatorWord::new(1, vec![EOperator::zero_mode(0, 1)]).unwrap();
        let s = vacuum_expectation(&w, Mode::Exact, 3).unwrap();
        assert_eq!(s.coeff(&[-1]), int(1));
        assert_eq!(s.coeff(&[0]), int(0));
        assert_eq!(s.coeff(&[1]), frac(-1, 24));
    }

    #[test]
    fn paired_modes() {
        let w = OperatorWord::new(0, vec![EOperator::at_zero(2, 0), EOperator::at_zero(-2, 0)]).unwrap();
        assert_eq!(vacuum_expectation(&w, Mode::Exact, 2).unwrap().coeff(&[]), int(2));
        let w = OperatorWord::new(0, vec![EOperator::at_zero(2, 0), EOperator::at_zero(-1, 0)]).unwrap();
        assert!(vacuum_expectation(&w, Mode::Exact, 2).unwrap().is_zero());
    }

    #[test]
    fn divergent_zero_mode() {
        let w = OperatorWord::new(1, vec![EOperator::at_zero(0, 1)]).unwrap();
        assert!(matches!(vacuum_expectation(&w, Mode::Exact, 2), Err(Error::NonRemovableSingularity(_))));
    }
}
