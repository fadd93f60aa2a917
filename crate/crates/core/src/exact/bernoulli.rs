use std::sync::Mutex;

use num::{One, Zero};

use super::poly::UniPoly;
use super::rational::{factorial, Rational};

static CACHE: Mutex<Vec<UniPoly>> = Mutex::new(Vec::new());

/// Bernoulli polynomial `B_m(y)`, read off the generating series
/// `t e^{ty} / (e^t - 1) = Σ B_m(y) t^m / m!`.
///
/// The series is divided out exactly: `t / (e^t - 1)` is the reciprocal of
/// `Σ t^k / (k+1)!`, and multiplying by `e^{ty}` gives the coefficients as
/// polynomials in `y`. Results are memoized.
pub fn bernoulli_polynomial(m: usize) -> UniPoly {
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() <= m {
        *cache = expand_generating_series(m.max(2 * cache.len()).max(16));
    }
    cache[m].clone()
}

/// `B_m(y)` evaluated at a rational point.
pub fn bernoulli_at(m: usize, y: &Rational) -> Rational {
    bernoulli_polynomial(m).eval(y)
}

fn expand_generating_series(order: usize) -> Vec<UniPoly> {
    let d: Vec<Rational> = (0..=order).map(|k| factorial(k as u64 + 1).recip()).collect();
    let mut inv = vec![Rational::one()];
    for m in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=m {
            acc -= &d[k] * &inv[m - k];
        }
        inv.push(acc);
    }
    (0..=order)
        .map(|m| {
            // [t^m] e^{ty}·inv = Σ_j y^j/j! · inv[m-j]
            let coeffs: Vec<Rational> =
                (0..=m).map(|j| &inv[m - j] / factorial(j as u64)).collect();
            UniPoly::new(coeffs).scale(&factorial(m as u64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    #[test]
    fn low_orders() {
        assert_eq!(bernoulli_polynomial(0), UniPoly::from_ints(&[1]));
        assert_eq!(bernoulli_polynomial(1), UniPoly::new(vec![frac(-1, 2), int(1)]));
        assert_eq!(bernoulli_polynomial(2), UniPoly::new(vec![frac(1, 6), int(-1), int(1)]));
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_at(4, &int(0)), frac(-1, 30));
        assert_eq!(bernoulli_at(12, &int(0)), frac(-691, 2730));
        assert_eq!(bernoulli_at(3, &int(0)), int(0));
    }

    #[test]
    fn grows_past_initial_cache() {
        let p = bernoulli_polynomial(40);
        assert_eq!(p.degree(), Some(40));
    }
}
