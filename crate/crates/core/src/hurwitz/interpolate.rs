//! Sample, interpolate and validate the polynomial behind connected counts
//! in fixed residue classes.

use num::Zero;

use super::{connected_hurwitz, elsv_prefactor, HurwitzMethod, HurwitzSpec};
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::Rational;
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub r: u32,
    /// Weights `-μ̄_i`; parts run over `μ_i ≡ r - residue` with `μ_i ≥ 1`.
    pub residues: Vec<u32>,
    pub degree: usize,
    /// Monomial exponents in `μ_1, …, μ_n` with coefficients.
    pub coeffs: Vec<(Vec<u32>, Rational)>,
    pub samples: Vec<(Vec<u32>, Rational)>,
    pub held_out: Vec<(Vec<u32>, Rational)>,
}

impl QuasiPolynomial {
    pub fn eval(&self, mu: &[u32]) -> Rational {
        self.coeffs.iter().map(|(e, c)| c * monomial(e, mu)).sum()
    }
}

fn monomial(exps: &[u32], mu: &[u32]) -> Rational {
    exps.iter().zip(mu).fold(int(1), |acc, (&e, &m)| acc * int((m as i64).pow(e)))
}

/// Exponent vectors of total degree at most `deg` in `n` variables.
fn simplex(n: usize, deg: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e as u32);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

fn solve(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !m[i][col].is_zero())
            .ok_or_else(|| Error::InvalidInput("interpolation nodes are not unisolvent".into()))?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[col][col];
                for j in col..n {
                    let v = &f * &m[col][j];
                    m[i][j] -= v;
                }
                let v = &f * &rhs[col];
                rhs[i] -= v;
            }
        }
    }
    Ok((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Interpolates `h°(μ) / (r^{n-2+d/r} ∏ (μ_i/r)^{[μ_i]}/[μ_i]!)` with a
/// polynomial of total degree `n - 3` on the nodes `base + r k`, `|k| ≤ n-3`,
/// and checks it on two nodes with `|k| = n - 2`.
pub fn interpolate_quasi_polynomial(r: u32, residues: &[u32], method: HurwitzMethod) -> Result<QuasiPolynomial> {
    let n = residues.len();
    if n < 3 {
        return Err(Error::Unstable(n));
    }
    if r == 0 || residues.iter().any(|&a| a >= r) {
        return Err(Error::InvalidInput(format!("residues must lie in 0..{r}")));
    }
    if residues.iter().sum::<u32>() % r != 0 {
        return Err(Error::ModularConstraint(format!("sum of residues {:?} is not divisible by {r}", residues)));
    }
    let deg = n - 3;
    let base: Vec<u32> = residues.iter().map(|&a| r - a).collect();
    let at = |k: &[u32]| -> Vec<u32> { base.iter().zip(k).map(|(b, k)| b + r * k).collect() };
    let value = |mu: &Vec<u32>| -> Result<Rational> {
        let spec = HurwitzSpec::new(r, mu.clone())?;
        Ok(connected_hurwitz(&spec, method)? / elsv_prefactor(&spec))
    };

    let exps = simplex(n, deg);
    let nodes: Vec<Vec<u32>> = exps.iter().map(|k| at(k)).collect();
    let mut held: Vec<Vec<u32>> = Vec::new();
    let mut k = vec![0u32; n];
    k[0] = deg as u32 + 1;
    held.push(at(&k));
    k[0] -= 1;
    k[1] += 1;
    held.push(at(&k));

    let exec = Execution::default();
    let values: Vec<Rational> = exec.map(&nodes, value).into_iter().collect::<Result<_>>()?;
    let matrix: Vec<Vec<Rational>> = nodes.iter().map(|mu| exps.iter().map(|e| monomial(e, mu)).collect()).collect();
    let c = solve(matrix, values.clone())?;
    let poly = QuasiPolynomial {
        r,
        residues: residues.to_vec(),
        degree: deg,
        coeffs: exps.into_iter().zip(c).filter(|(_, c)| !c.is_zero()).collect(),
        samples: nodes.into_iter().zip(values).collect(),
        held_out: Vec::new(),
    };
    let held_values: Vec<Rational> = exec.map(&held, value).into_iter().collect::<Result<_>>()?;
    for (mu, v) in held.iter().zip(&held_values) {
        let p = poly.eval(mu);
        if &p != v {
            return Err(Error::QuasiPolynomiality(format!("at mu = {mu:?} the sample is {v} but the interpolant gives {p}")));
        }
    }
    Ok(QuasiPolynomial { held_out: held.into_iter().zip(held_values).collect(), ..poly })
}
