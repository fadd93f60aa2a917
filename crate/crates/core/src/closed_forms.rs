//! Closed-form one-descendant polynomials and drivers comparing them with
//! the tree-sum engine.

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exact::combinat::elementary_symmetric;
use crate::exact::rational::{frac, int, pow, to_string};
use crate::exact::{Rational, UniPoly};
use crate::omega::{descendant_polynomial_with, Denominator, OmegaEngine, OmegaSpec};
use crate::tr::{tr_relation_lhs, RelationInput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Weierstrass,
    NonWeierstrass,
}

/// `x^{g-1+a} / 2^{2g+a} ∏_{k=1}^g (x - (2k-1))` or
/// `x^{g+a} / 2^{2g+1+a} ∏_{k=1}^g (x - 2k)`, the descendant polynomials of
/// `Ω(2, 0; 1^{2g+2}, 0^a)` and `Ω(2, 0; 0, 1^{2g+2}, 0^a)` at the first point
/// with denominator `1 - (x/2) ψ`.
pub fn afandi_polynomial(g: u32, variant: Variant, a_extra: u32) -> Result<UniPoly> {
    let (shift, two_power, roots): (i64, i64, Vec<Rational>) = match variant {
        Variant::Weierstrass => {
            if g == 0 {
                return Err(Error::InvalidInput("the Weierstrass family starts at g = 1".into()));
            }
            (g as i64 - 1, 2 * g as i64, (1..=g as i64).map(|k| int(2 * k - 1)).collect())
        }
        Variant::NonWeierstrass => (g as i64, 2 * g as i64 + 1, (1..=g as i64).map(|k| int(2 * k)).collect()),
    };
    let p = UniPoly::from_roots(&roots)
        .shift((shift + a_extra as i64) as usize)
        .scale(&pow(&frac(1, 2), two_power + a_extra as i64));
    Ok(p)
}

/// `½ e_i(½, 3/2, …, g-½)` or `½ e_i(1, …, g)`.
pub fn afandi_rhs(g: u32, i: u32, variant: Variant) -> Result<Rational> {
    if i > g {
        return Err(Error::InvalidInput(format!("i = {i} exceeds g = {g}")));
    }
    let values: Vec<Rational> = match variant {
        Variant::Weierstrass => (0..g as i64).map(|k| frac(2 * k + 1, 2)).collect(),
        Variant::NonWeierstrass => (1..=g as i64).map(int).collect(),
    };
    Ok(elementary_symmetric(i as usize, &values) / int(2))
}

/// The spec whose descendant polynomial at the first point is the family above.
pub fn afandi_spec(g: u32, variant: Variant, a_extra: u32) -> Result<OmegaSpec> {
    let mut a = Vec::new();
    if variant == Variant::NonWeierstrass {
        a.push(0);
    }
    a.extend(std::iter::repeat_n(1, 2 * g as usize + 2));
    a.extend(std::iter::repeat_n(0, a_extra as usize));
    OmegaSpec::new(2, 0, a)
}

fn sum_and_carry(r: u32, b: &[u32]) -> (i64, i64) {
    let total: i64 = b.iter().map(|&x| x as i64).sum();
    (total.div_euclid(r as i64), total.rem_euclid(r as i64))
}

/// `x^{ℓ-2-[b]} / r^{ℓ-1} ∏_{k<[b]} (x - (⟨μ⟩ + r k))` with `|b| = [b] r + ⟨b⟩`
/// and `⟨μ⟩ = ⟨b⟩`, in the `1 - (x/r) ψ` convention.
pub fn higher_r_polynomial(r: u32, mu_bar: u32, b: &[u32]) -> Result<UniPoly> {
    if r < 2 || b.is_empty() || b.iter().any(|&x| x == 0 || x >= r) {
        return Err(Error::InvalidInput(format!("parts of b must lie in 1..={}", r.saturating_sub(1))));
    }
    if mu_bar >= r {
        return Err(Error::InvalidInput(format!("first weight {mu_bar} must lie in 0..{r}")));
    }
    for i in 0..b.len() {
        for j in 0..b.len() {
            if i != j && b[i] + b[j] > r {
                return Err(Error::BoundednessViolated(format!("b_{} + b_{} = {} > {r}", i + 1, j + 1, b[i] + b[j])));
            }
        }
    }
    let (_, carry) = sum_and_carry(r, b);
    if (carry + mu_bar as i64) % r as i64 != 0 {
        return Err(Error::ModularConstraint(format!(
            "first weight {mu_bar} plus sum of b is not divisible by {r}"
        )));
    }
    Ok(higher_r_formula(r, b))
}

/// The closed form without its hypotheses, for comparison past them.
pub fn higher_r_formula(r: u32, b: &[u32]) -> UniPoly {
    let ell = b.len() as i64;
    let (whole, carry) = sum_and_carry(r, b);
    let roots: Vec<Rational> = (0..whole).map(|k| int(carry + r as i64 * k)).collect();
    let mut p = UniPoly::from_roots(&roots).scale(&pow(&frac(1, r as i64), ell - 1));
    let e = ell - 2 - whole;
    if e >= 0 {
        p = p.shift(e as usize);
    } else {
        for _ in e..0 {
            p = p.divide_by_root(&Rational::zero()).expect("root at zero cancels the negative power");
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(Rational),
    Poly(UniPoly),
}

impl Value {
    fn sub(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a - b),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a - b),
            _ => panic!("residual between a number and a polynomial"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(a) => a.is_zero(),
            Value::Poly(p) => p.is_zero(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(a) => f.write_str(&to_string(a)),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// Engine output against the prediction; `matches` iff the residual vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: String,
    pub computed: Value,
    pub predicted: Value,
    pub matches: bool,
    pub residual: Value,
    /// Rational roots of a computed polynomial, with multiplicities.
    pub computed_roots: Option<Vec<(Rational, usize)>>,
}

impl VerificationReport {
    fn new(case: String, computed: Value, predicted: Value) -> Self {
        let residual = computed.sub(&predicted);
        let computed_roots = match &computed {
            Value::Poly(p) => p.rational_roots(),
            Value::Rational(_) => None,
        };
        VerificationReport { case, matches: residual.is_zero(), computed, predicted, residual, computed_roots }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Afandi { g: u32, a_extra: u32 },
    NonWeierstrass { g: u32, a_extra: u32 },
    /// `mu_bar` is the first weight `-μ̄`.
    HigherR { r: u32, mu_bar: u32, b: Vec<u32> },
    TrVanishing(RelationInput),
    /// Appends a point of weight `s` and compares descendant polynomials.
    String { spec: OmegaSpec, point: usize },
    /// Lifts `a_i` by `r` and compares with the `1 + (a_i/r) ψ_i` correction.
    Shift { spec: OmegaSpec, index: usize, point: usize },
    /// Divisibility of the descendant polynomial by `x^{n-3-B}`.
    Jkv { spec: OmegaSpec, point: usize },
}

fn rscaled(spec: &OmegaSpec, point: usize) -> Result<UniPoly> {
    let engine = OmegaEngine::new(spec.clone())?;
    Ok(descendant_polynomial_with(&engine, point, Denominator::RScaled)?.poly)
}

pub fn verify(kind: &VerifyKind) -> Result<VerificationReport> {
    match kind {
        VerifyKind::Afandi { g, a_extra } | VerifyKind::NonWeierstrass { g, a_extra } => {
            let variant = if matches!(kind, VerifyKind::Afandi { .. }) { Variant::Weierstrass } else { Variant::NonWeierstrass };
            let spec = afandi_spec(*g, variant, *a_extra)?;
            let computed = rscaled(&spec, 0)?;
            let predicted = afandi_polynomial(*g, variant, *a_extra)?;
            Ok(VerificationReport::new(
                format!("{variant:?} g={g} a={a_extra}: {spec}"),
                Value::Poly(computed),
                Value::Poly(predicted),
            ))
        }
        VerifyKind::HigherR { r, mu_bar, b } => {
            let mut a = vec![*mu_bar as i64];
            a.extend(b.iter().map(|&x| x as i64));
            let spec = OmegaSpec::new(*r, 0, a)?;
            let computed = rscaled(&spec, 0)?;
            let predicted = higher_r_formula(*r, b);
            let mut case = format!("higher r: {spec}");
            if let Err(e) = higher_r_polynomial(*r, *mu_bar, b) {
                case.push_str(&format!(" (outside hypotheses: {e})"));
            }
            Ok(VerificationReport::new(case, Value::Poly(computed), Value::Poly(predicted)))
        }
        VerifyKind::TrVanishing(input) => {
            let computed = tr_relation_lhs(input)?;
            Ok(VerificationReport::new(
                format!("relation r={} mu={:?} b={:?}", input.r, input.mu, input.b),
                Value::Rational(computed),
                Value::Rational(Rational::zero()),
            ))
        }
        VerifyKind::String { spec, point } => {
            let mut a = spec.a.clone();
            a.push(spec.s as i64);
            let bigger = OmegaSpec::new(spec.r, spec.s, a)?.with_xscale(spec.xscale.clone());
            let computed = rscaled(&bigger, *point)?;
            let x_over_r = UniPoly::new(vec![Rational::zero(), frac(1, spec.r as i64)]);
            let predicted = &rscaled(spec, *point)? * &x_over_r;
            Ok(VerificationReport::new(
                format!("string: {bigger} vs {spec}"),
                Value::Poly(computed),
                Value::Poly(predicted),
            ))
        }
        VerifyKind::Shift { spec, index, point } => {
            let (i, p) = (*index, *point);
            if i >= spec.n() || p >= spec.n() {
                return Err(Error::InvalidInput("marking out of range".into()));
            }
            let mut a = spec.a.clone();
            a[i] += spec.r as i64;
            let lifted = OmegaSpec::new(spec.r, spec.s, a)?.with_xscale(spec.xscale.clone());
            let computed = rscaled(&lifted, p)?;
            let engine = OmegaEngine::new(spec.clone())?;
            let c = frac(1, spec.r as i64);
            let ai = frac(spec.a[i], spec.r as i64);
            let mut coeffs = Vec::new();
            for k in 0..=spec.dim() {
                let mut psi = vec![0u32; spec.n()];
                psi[p] = k as u32;
                let plain = engine.integral(&psi)?;
                psi[i] += 1;
                let bumped = engine.integral(&psi)?;
                coeffs.push(pow(&c, k as i64) * (plain + &ai * bumped));
            }
            Ok(VerificationReport::new(
                format!("shift a_{} -> a_{} + r: {lifted}", i + 1, i + 1),
                Value::Poly(computed),
                Value::Poly(UniPoly::new(coeffs)),
            ))
        }
        VerifyKind::Jkv { spec, point } => {
            let bound = spec
                .degree_bound()
                .ok_or_else(|| Error::InvalidInput(format!("{spec} is outside the vanishing hypotheses")))?;
            let computed = rscaled(spec, *point)?;
            let low = (spec.dim() as i64 - bound).max(0) as usize;
            let kept: Vec<Rational> = computed
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if k < low { Rational::zero() } else { c.clone() })
                .collect();
            Ok(VerificationReport::new(
                format!("degree bound {bound}: {spec} divisible by x^{low}"),
                Value::Poly(computed),
                Value::Poly(UniPoly::new(kept)),
            ))
        }
    }
}

/// `[x^{top-j}] P = (-1)^j 2^{j+1} afandi_rhs(g, j) / 4^g` (one more factor
/// of 2 in the denominator for the second family):
/// the polynomial read as a generating function of the right-hand sides.
pub fn afandi_polynomial_from_rhs(g: u32, variant: Variant) -> Result<UniPoly> {
    let (top, norm) = match variant {
        Variant::Weierstrass => (2 * g as usize - 1, pow(&frac(1, 2), 2 * g as i64)),
        Variant::NonWeierstrass => (2 * g as usize, pow(&frac(1, 2), 2 * g as i64 + 1)),
    };
    let mut coeffs = vec![Rational::zero(); top + 1];
    for j in 0..=g {
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        coeffs[top - j as usize] = sign * pow(&int(2), j as i64) * afandi_rhs(g, j, variant)? * int(2) * &norm;
    }
    Ok(UniPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn afandi_examples() {
        let p = afandi_polynomial(1, Variant::Weierstrass, 0).unwrap();
        assert_eq!(p, UniPoly::new(vec![frac(-1, 4), frac(1, 4)]));
        let p = afandi_polynomial(2, Variant::Weierstrass, 0).unwrap();
        assert_eq!(p, UniPoly::from_roots(&[int(0), int(1), int(3)]).scale(&frac(1, 16)));
        let p = afandi_polynomial(1, Variant::NonWeierstrass, 0).unwrap();
        assert_eq!(p, UniPoly::from_roots(&[int(0), int(2)]).scale(&frac(1, 8)));
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(afandi_rhs(2, 1, Variant::Weierstrass).unwrap(), int(1));
        assert_eq!(afandi_rhs(5, 0, Variant::NonWeierstrass).unwrap(), frac(1, 2));
        assert_eq!(afandi_rhs(2, 2, Variant::NonWeierstrass).unwrap(), int(1));
    }

    #[test]
    fn rhs_generates_polynomial() {
        for g in 1..=5 {
            for v in [Variant::Weierstrass, Variant::NonWeierstrass] {
                assert_eq!(afandi_polynomial_from_rhs(g, v).unwrap(), afandi_polynomial(g, v, 0).unwrap());
            }
        }
    }

    #[test]
    fn higher_r_examples() {
        let p = higher_r_polynomial(13, 4, &[4, 3, 6, 2, 7]).unwrap();
        let expect = UniPoly::from_roots(&[int(0), int(0), int(9)]).scale(&pow(&frac(1, 13), 4));
        assert_eq!(p, expect);
        for g in 1..=3u32 {
            let b = vec![1; 2 * g as usize + 1];
            assert_eq!(higher_r_polynomial(2, 1, &b).unwrap(), afandi_polynomial(g, Variant::Weierstrass, 0).unwrap());
            let b = vec![1; 2 * g as usize + 2];
            assert_eq!(higher_r_polynomial(2, 0, &b).unwrap(), afandi_polynomial(g, Variant::NonWeierstrass, 0).unwrap());
        }
        assert_eq!(higher_r_polynomial(7, 4, &[1, 2]).unwrap(), UniPoly::monomial(0).scale(&frac(1, 7)));
        assert!(matches!(higher_r_polynomial(13, 5, &[4, 3, 6, 1, 8]), Err(Error::BoundednessViolated(_))));
        assert!(matches!(higher_r_polynomial(13, 5, &[4, 3, 6, 2, 7]), Err(Error::ModularConstraint(_))));
    }
}
