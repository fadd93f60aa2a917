use std::fmt;

use num::One;

use crate::error::{Error, Result};
use crate::exact::rational::{frac, pow};
use crate::exact::{Rational, UniPoly};

use super::{OmegaEngine, OmegaSpec};

/// Normalization of the descendant denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Denominator {
    /// `1 / (1 - (x/r) ψ)`
    RScaled,
    /// `1 / (1 - x ψ)`
    Plain,
}

impl Denominator {
    /// `RScaled` for the unscaled class, `Plain` once `xscale ≠ 1`.
    pub fn default_for(spec: &OmegaSpec) -> Self {
        if spec.xscale.is_one() {
            Denominator::RScaled
        } else {
            Denominator::Plain
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rscaled" | "r-scaled" => Ok(Denominator::RScaled),
            "plain" => Ok(Denominator::Plain),
            _ => Err(Error::Parse(format!("unknown denominator {s:?}, expected rscaled or plain"))),
        }
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Denominator::RScaled => "rscaled",
            Denominator::Plain => "plain",
        })
    }
}

/// `P(x) = ∫ Ω / (1 - c x ψ_point)` with `c = 1/r` or `c = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendantPolynomial {
    pub poly: UniPoly,
    pub spec: OmegaSpec,
    pub point: usize,
    pub denominator: Denominator,
}

/// Descendant polynomial at marking `point` (0-based) with the default
/// denominator for the spec.
pub fn descendant_polynomial(spec: &OmegaSpec, point: usize) -> Result<DescendantPolynomial> {
    let engine = OmegaEngine::new(spec.clone())?;
    descendant_polynomial_with(&engine, point, Denominator::default_for(spec))
}

/// The geometric series stops at `ψ^{n-3}`, so `P` has degree at most `n - 3`.
pub fn descendant_polynomial_with(
    engine: &OmegaEngine,
    point: usize,
    denominator: Denominator,
) -> Result<DescendantPolynomial> {
    let spec = engine.spec();
    let n = spec.n();
    if point >= n {
        return Err(Error::InvalidInput(format!("marking {} out of range 1..={n}", point + 1)));
    }
    let c = match denominator {
        Denominator::RScaled => frac(1, spec.r as i64),
        Denominator::Plain => Rational::one(),
    };
    let mut coeffs = Vec::with_capacity(spec.dim() + 1);
    let mut psi = vec![0u32; n];
    for k in 0..=spec.dim() {
        psi[point] = k as u32;
        coeffs.push(engine.integral(&psi)? * pow(&c, k as i64));
    }
    Ok(DescendantPolynomial {
        poly: UniPoly::new(coeffs),
        spec: spec.clone(),
        point,
        denominator,
    })
}
