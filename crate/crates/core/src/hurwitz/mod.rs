//! Genus-zero double Hurwitz numbers with one `(r, …, r)` fiber, three ways:
//! the Fock-space operator formula, a direct count in the symmetric group,
//! and the Ω-integral formula.

mod fock;
mod interpolate;
mod oracle;
mod series;

use std::collections::HashMap;

use num::Zero;

pub use fock::{vacuum_expectation, EOperator, FockEvaluator, Mode, OperatorWord};
pub use interpolate::{interpolate_quasi_polynomial, QuasiPolynomial};
pub use oracle::{factorization_count, factorization_count_with, DEFAULT_CAP};
pub use series::TruncatedSeries;

use crate::error::{Error, Result};
use crate::exact::combinat::{for_each_set_partition, partition_automorphisms, Partition};
use crate::exact::rational::{factorial, frac, int, pow};
use crate::exact::Rational;
use crate::omega::{OmegaEngine, OmegaSpec};

/// Cap on each `z_j` in Fock computations; the extraction reads `z_j^2`.
pub const Z_CAP: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HurwitzSpec {
    pub r: u32,
    pub mu: Vec<u32>,
}

impl HurwitzSpec {
    pub fn new(r: u32, mu: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("r must be positive".into()));
        }
        if mu.is_empty() || mu.contains(&0) {
            return Err(Error::InvalidInput("mu must be a nonempty list of positive parts".into()));
        }
        let d: u32 = mu.iter().sum();
        if !d.is_multiple_of(r) {
            return Err(Error::InvalidInput(format!("r = {r} does not divide |mu| = {d}")));
        }
        Ok(HurwitzSpec { r, mu })
    }

    pub fn degree(&self) -> u32 {
        self.mu.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    /// `b = n + d/r - 2`.
    pub fn simple_branch_points(&self) -> u32 {
        self.n() as u32 + self.degree() / self.r - 2
    }

    fn aut(&self) -> Rational {
        Rational::from_integer(partition_automorphisms(&Partition::new(self.mu.clone())))
    }

    fn fock_normalization(&self) -> Rational {
        let k = self.degree() / self.r;
        let prod: u64 = self.mu.iter().map(|&m| m as u64).product();
        int(prod as i64) * pow(&int(self.r as i64), k as i64) * factorial(k as u64) * self.aut()
    }
}

impl std::fmt::Display for HurwitzSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "r={} mu={:?}", self.r, self.mu)
    }
}

/// `E_{μ_1}(0) ⋯ E_{μ_n}(0) E_0(z_1) ⋯ E_0(z_t) E_{-r}(0)^{k}` on the parts in `subset`.
pub fn hurwitz_word(spec: &HurwitzSpec, subset: &[usize], t: usize) -> OperatorWord {
    let r = spec.r as i64;
    let k = subset.iter().map(|&i| spec.mu[i] as i64).sum::<i64>() / r;
    let mut ops: Vec<EOperator> = subset.iter().map(|&i| EOperator::at_zero(spec.mu[i] as i64, t)).collect();
    ops.extend((0..t).map(|j| EOperator::zero_mode(j, t)));
    ops.extend((0..k).map(|_| EOperator::at_zero(-r, t)));
    OperatorWord { n_vars: t, ops }
}

fn extract(series: &TruncatedSeries) -> Rational {
    series.coeff(&vec![Z_CAP; series.n_vars()])
}

/// `[z_1^2 ⋯ z_t^2] ⟨word⟩` for words built by `hurwitz_word`.
pub fn extracted_expectation(word: &OperatorWord, mode: Mode) -> Result<Rational> {
    let mut ev = FockEvaluator::for_extraction(mode, vec![Z_CAP; word.n_vars]);
    Ok(extract(&ev.eval(&word.ops)?))
}

/// `[z_1^2 ⋯ z_b^2] ⟨word⟩` before normalization.
pub fn fock_coefficient(spec: &HurwitzSpec, mode: Mode) -> Result<Rational> {
    let all: Vec<usize> = (0..spec.n()).collect();
    let word = hurwitz_word(spec, &all, spec.simple_branch_points() as usize);
    extracted_expectation(&word, mode)
}

/// Disconnected count from the operator formula, normalized by
/// `∏ μ_i · r^{d/r} · (d/r)! · |Aut μ|`.
pub fn disconnected_hurwitz_fock(spec: &HurwitzSpec) -> Result<Rational> {
    Ok(fock_coefficient(spec, Mode::Exact)? / spec.fock_normalization())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HurwitzMethod {
    Oracle,
    Moebius,
    Elsv,
}

impl std::str::FromStr for HurwitzMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(HurwitzMethod::Oracle),
            "moebius" | "mobius" => Ok(HurwitzMethod::Moebius),
            "elsv" => Ok(HurwitzMethod::Elsv),
            _ => Err(Error::Parse(format!("unknown method {s:?} (oracle, moebius, elsv)"))),
        }
    }
}

pub fn connected_hurwitz(spec: &HurwitzSpec, method: HurwitzMethod) -> Result<Rational> {
    match method {
        HurwitzMethod::Oracle => factorization_count(spec, true),
        HurwitzMethod::Moebius => connected_by_moebius(spec),
        HurwitzMethod::Elsv => connected_by_elsv(spec),
    }
}

/// Connected correlator: the full expectation is the sum over set partitions
/// of the insertions of products of connected ones. Blocks without a
/// positive-energy insertion contribute nothing to the extracted
/// coefficient, so blocks are indexed by subsets of the parts; the `z_j`
/// are interchangeable after extraction and the `E_{-r}` are identical.
fn connected_by_moebius(spec: &HurwitzSpec) -> Result<Rational> {
    let n = spec.n();
    let b = spec.simple_branch_points() as usize;
    let r = spec.r;
    let full = (1u32 << n) - 1;
    let mask_sum = |m: u32| -> u32 { (0..n).filter(|&i| m >> i & 1 == 1).map(|i| spec.mu[i]).sum() };
    let admissible: Vec<u32> = (1..=full).filter(|&m| mask_sum(m) % r == 0).collect();

    let mut plain: HashMap<(u32, usize), Rational> = HashMap::new();
    for t in 0..=b {
        let mut ev = FockEvaluator::for_extraction(Mode::Exact, vec![Z_CAP; t]);
        for &m in &admissible {
            let subset: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            let word = hurwitz_word(spec, &subset, t);
            plain.insert((m, t), extract(&ev.eval(&word.ops)?));
        }
    }

    let mut connected: HashMap<(u32, usize), Rational> = HashMap::new();
    let mut order = admissible.clone();
    order.sort_by_key(|m| m.count_ones());
    for &m in &order {
        let items: Vec<u32> = (0..n as u32).filter(|&i| m >> i & 1 == 1).map(|i| 1 << i).collect();
        for t in 0..=b {
            let mut acc = plain[&(m, t)].clone();
            for_each_set_partition(&items, |blocks| {
                if blocks.len() < 2 {
                    return;
                }
                let masks: Vec<u32> = blocks.iter().map(|bl| bl.iter().fold(0, |a, x| a | x)).collect();
                if masks.iter().any(|&x| mask_sum(x) % r != 0) {
                    return;
                }
                let ks: Vec<u64> = masks.iter().map(|&x| (mask_sum(x) / r) as u64).collect();
                let k_total: u64 = ks.iter().sum();
                let mut k_mult = factorial(k_total);
                for &k in &ks {
                    k_mult /= factorial(k);
                }
                let mut sub = Rational::zero();
                for_each_composition(t, masks.len(), |ts| {
                    let mut term = factorial(t as u64);
                    for (x, &tb) in masks.iter().zip(ts) {
                        term /= factorial(tb as u64);
                        term *= &connected[&(*x, tb)];
                        if term.is_zero() {
                            return;
                        }
                    }
                    sub += term;
                });
                acc -= sub * &k_mult;
            });
            connected.insert((m, t), acc);
        }
    }
    Ok(connected[&(full, b)].clone() / spec.fock_normalization())
}

fn for_each_composition(total: usize, parts: usize, mut f: impl FnMut(&[usize])) {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() + 1 == parts {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, parts, cur, f);
            cur.pop();
        }
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut f);
}

/// `⟨μ⟩ ∈ {1, …, r}` and `[μ]` with `μ = ⟨μ⟩ + r[μ]`.
pub fn residue_split(r: u32, mu: u32) -> (u32, u32) {
    let rem = (mu - 1) % r + 1;
    (rem, (mu - rem) / r)
}

/// `b!/|Aut μ| · r^{n-2+d/r} ∏ (μ_i/r)^{[μ_i]}/[μ_i]!`. The count with
/// ordered branch points and unlabeled parts carries `b!/|Aut μ|`.
pub fn elsv_prefactor(spec: &HurwitzSpec) -> Rational {
    let r = spec.r as i64;
    let mut p = factorial(spec.simple_branch_points() as u64) / spec.aut();
    p *= pow(&int(r), spec.n() as i64 - 2 + (spec.degree() as i64) / r);
    for &m in &spec.mu {
        let (_, q) = residue_split(spec.r, m);
        p *= pow(&frac(m as i64, r), q as i64) / factorial(q as u64);
    }
    p
}

/// The Ω-class spec `Ω(r, 0; r - ⟨μ_1⟩, …)` attached to `μ`.
pub fn elsv_omega_spec(spec: &HurwitzSpec) -> Result<OmegaSpec> {
    let a = spec.mu.iter().map(|&m| (spec.r - residue_split(spec.r, m).0) as i64).collect();
    OmegaSpec::new(spec.r, 0, a)
}

/// `∫ Ω / ∏ (1 - (μ_i/r) ψ_i)`.
pub fn elsv_integral(spec: &HurwitzSpec) -> Result<Rational> {
    let engine = OmegaEngine::new(elsv_omega_spec(spec)?)?;
    let c: Vec<Rational> = spec.mu.iter().map(|&m| frac(m as i64, spec.r as i64)).collect();
    engine.geometric_integral(&c)
}

fn connected_by_elsv(spec: &HurwitzSpec) -> Result<Rational> {
    if spec.n() < 3 {
        return Err(Error::Unstable(spec.n()));
    }
    Ok(elsv_prefactor(spec) * elsv_integral(spec)?)
}

/// Pins the fock normalization against the oracle on the three smallest specs.
pub fn normalization_check() -> Result<Vec<(HurwitzSpec, Rational, Rational)>> {
    let specs = [HurwitzSpec::new(2, vec![2])?, HurwitzSpec::new(2, vec![1, 1])?, HurwitzSpec::new(1, vec![1, 1])?];
    specs
        .into_iter()
        .map(|s| Ok((s.clone(), disconnected_hurwitz_fock(&s)?, factorization_count(&s, false)?)))
        .collect()
}
