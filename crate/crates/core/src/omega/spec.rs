use std::fmt;

use num::One;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Parameters `(r, s; a_1..a_n)` of a genus-zero Chiodo class, with the
/// degree parameter `x` stored as `xscale`.
///
/// `a` may hold values outside `0..r`; the constraint is checked modulo `r`
/// and Bernoulli polynomials are evaluated at the unreduced `a_i / r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpec {
    pub r: u32,
    pub s: u32,
    pub a: Vec<i64>,
    pub xscale: Rational,
}

impl OmegaSpec {
    pub fn new(r: u32, s: u32, a: Vec<i64>) -> Result<Self> {
        let spec = OmegaSpec { r, s, a, xscale: Rational::one() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_xscale(mut self, xscale: Rational) -> Self {
        self.xscale = xscale;
        self
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Moduli dimension `n - 3`.
    pub fn dim(&self) -> usize {
        self.n() - 3
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidInput("r must be positive".into()));
        }
        if self.s > self.r {
            return Err(Error::InvalidInput(format!("s = {} exceeds r = {}", self.s, self.r)));
        }
        if self.n() < 3 {
            return Err(Error::Unstable(self.n()));
        }
        if self.n() > 24 {
            return Err(Error::InvalidInput(format!("{} markings is beyond the engine", self.n())));
        }
        let r = self.r as i64;
        let sum: i64 = self.a.iter().sum();
        let target = (self.n() as i64 - 2) * self.s as i64;
        if (sum - target).rem_euclid(r) != 0 {
            return Err(Error::ModularConstraint(format!(
                "sum of a = {sum} is not congruent to (n-2)s = {target} mod {r} (residues {} vs {})",
                sum.rem_euclid(r),
                target.rem_euclid(r)
            )));
        }
        Ok(())
    }

    /// Bound on the cohomological degree when the root bundle has no
    /// sections: `Σa/r - 1` for `s ∈ {0, r}` with every `a_i > 0` except at
    /// most one equal to `0` or `-1`. `None` outside these hypotheses.
    pub fn degree_bound(&self) -> Option<i64> {
        if !self.s.is_multiple_of(self.r) || self.n() < 3 {
            return None;
        }
        let exceptional = self.a.iter().filter(|&&ai| ai <= 0).count();
        if exceptional > 1 || self.a.iter().any(|&ai| ai < -1) {
            return None;
        }
        let sum: i64 = self.a.iter().sum();
        Some(sum / self.r as i64 - 1)
    }
}

impl fmt::Display for OmegaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(i64::to_string).collect();
        write!(f, "Omega(r={}, s={}; {})", self.r, self.s, a.join(","))?;
        if !self.xscale.is_one() {
            write!(f, "[x={}]", crate::exact::rational::to_string(&self.xscale))?;
        }
        Ok(())
    }
}

/// Degree bound of a spec, see [`OmegaSpec::degree_bound`].
pub fn omega_degree_bound(spec: &OmegaSpec) -> Option<i64> {
    spec.degree_bound()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint() {
        assert!(OmegaSpec::new(13, 0, vec![4, 4, 3, 6, 2, 7]).is_ok());
        let err = OmegaSpec::new(13, 0, vec![4, 1, 2, 9, 2, 7]).unwrap_err();
        assert!(matches!(err, Error::ModularConstraint(_)));
        assert!(err.to_string().starts_with("class undefined for these parameters"));
        assert!(OmegaSpec::new(3, 0, vec![1, 2, 2, 2, 2, 2]).is_err());
        assert!(OmegaSpec::new(2, 2, vec![1, 1, 1, 1]).is_ok());
        assert!(OmegaSpec::new(2, 0, vec![3, 1, 1, 1]).is_ok());
        assert!(matches!(OmegaSpec::new(2, 0, vec![1, 1]), Err(Error::Unstable(2))));
    }

    #[test]
    fn bounds() {
        for g in 1..4 {
            let s = OmegaSpec::new(2, 0, vec![1; 2 * g + 2]).unwrap();
            assert_eq!(s.degree_bound(), Some(g as i64));
        }
        assert_eq!(OmegaSpec::new(13, 0, vec![4, 4, 3, 6, 2, 7]).unwrap().degree_bound(), Some(1));
        assert_eq!(OmegaSpec::new(2, 0, vec![0, 0, 1, 1]).unwrap().degree_bound(), None);
        assert_eq!(OmegaSpec::new(2, 1, vec![1, 1, 1, 1]).unwrap().degree_bound(), None);
        assert_eq!(OmegaSpec::new(2, 2, vec![-1, 1, 1, 1]).unwrap().degree_bound(), Some(0));
    }
}
