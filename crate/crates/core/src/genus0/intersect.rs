//! ψ/κ intersection numbers on genus-zero moduli of stable curves.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;

use dashmap::DashMap;
use num::Zero;

use crate::error::{Error, Result};
use crate::exact::combinat::{for_each_set_partition, multinomial};
use crate::exact::rational::{parse, to_string, Rational};

/// `∫ ∏ ψ_i^{e_i}` over the `n`-pointed genus-zero space: the multinomial
/// `(n-3)! / ∏ e_i!` when the degrees add up to `n - 3`, zero otherwise.
pub fn psi_integral(n: usize, exponents: &[u32]) -> Rational {
    assert_eq!(exponents.len(), n, "one exponent per marking");
    if n < 3 {
        return Rational::zero();
    }
    let total: u32 = exponents.iter().sum();
    if total as usize != n - 3 {
        return Rational::zero();
    }
    Rational::from_integer(multinomial(exponents))
}

/// Key of the intersection-number cache: `(n, sorted ψ-exponents, sorted κ-multiset)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionKey {
    pub n: usize,
    pub psi: Vec<u32>,
    pub kappa: Vec<u32>,
}

impl IntersectionKey {
    pub fn new(n: usize, psi: &[u32], kappa: &[u32]) -> Self {
        let mut psi = psi.to_vec();
        psi.sort_unstable();
        let mut kappa = kappa.to_vec();
        kappa.sort_unstable();
        IntersectionKey { n, psi, kappa }
    }

    /// One cache record: `n;e1,e2,…;k1,k2,…;p/q`.
    pub fn to_record(&self, value: &Rational) -> String {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        format!("{};{};{};{}", self.n, join(&self.psi), join(&self.kappa), to_string(value))
    }

    pub fn from_record(line: &str) -> Result<(Self, Rational)> {
        let fields: Vec<&str> = line.trim().split(';').collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("cache record needs 4 fields: {line:?}")));
        }
        let n: usize = fields[0].parse().map_err(|_| Error::Parse(format!("bad n in {line:?}")))?;
        let list = |s: &str| -> Result<Vec<u32>> {
            if s.is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad entry in {line:?}"))))
                .collect()
        };
        let psi = list(fields[1])?;
        let kappa = list(fields[2])?;
        if psi.len() != n {
            return Err(Error::Parse(format!("exponent count differs from n in {line:?}")));
        }
        Ok((IntersectionKey::new(n, &psi, &kappa), parse(fields[3])?))
    }
}

/// Process-wide memo of ψ/κ intersection numbers. Values are deterministic,
/// so concurrent writers racing on a key store the same value.
pub struct IntersectionCache {
    map: DashMap<IntersectionKey, Rational>,
    enabled: AtomicBool,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: u64,
    pub hits: u64,
    pub misses: u64,
}

impl IntersectionCache {
    fn new() -> Self {
        IntersectionCache {
            map: DashMap::new(),
            enabled: AtomicBool::new(true),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn global() -> &'static IntersectionCache {
        static CACHE: OnceLock<IntersectionCache> = OnceLock::new();
        CACHE.get_or_init(IntersectionCache::new)
    }

    pub fn set_enabled(&self, on: bool) {
        self.enabled.store(on, Ordering::Relaxed);
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled.load(Ordering::Relaxed)
    }

    pub fn get_or_compute(&self, key: IntersectionKey, f: impl FnOnce() -> Rational) -> Rational {
        if !self.is_enabled() {
            return f();
        }
        if let Some(v) = self.map.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = f();
        self.map.insert(key, v.clone());
        v
    }

    pub fn insert(&self, key: IntersectionKey, value: Rational) {
        self.map.insert(key, value);
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.map.len() as u64,
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// All entries, sorted by key.
    pub fn snapshot(&self) -> Vec<(IntersectionKey, Rational)> {
        let mut v: Vec<_> = self.map.iter().map(|e| (e.key().clone(), e.value().clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn clear(&self) {
        self.map.clear();
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }
}

fn degree_matches(n: usize, exponents: &[u32], kappas: &[u32]) -> bool {
    let total: u32 = exponents.iter().sum::<u32>() + kappas.iter().sum::<u32>();
    n >= 3 && total as usize == n - 3
}

/// `∫ ∏ ψ_i^{e_i} ∏ κ_{b_j}` on the `n`-pointed genus-zero space, memoized.
pub fn psi_kappa_integral(n: usize, exponents: &[u32], kappas: &[u32]) -> Rational {
    assert_eq!(exponents.len(), n, "one exponent per marking");
    if !degree_matches(n, exponents, kappas) {
        return Rational::zero();
    }
    if kappas.is_empty() {
        return psi_integral(n, exponents);
    }
    let key = IntersectionKey::new(n, exponents, kappas);
    IntersectionCache::global().get_or_compute(key, || psi_kappa_by_set_partitions(n, exponents, kappas))
}

/// Reduction of a κ-monomial to pure ψ-integrals: every set partition of the
/// κ-factors adds one marking per block, a block of size `m` carrying sign
/// `(-1)^{m-1}` and ψ-exponent (sum of its weights) + 1.
///
/// The signs invert `π_*(∏ ψ^{b_j+1}) = Σ_{σ} ∏_{cycles} κ`, whose block
/// weights `(m-1)!` have exponential generating function `-log(1-y)`; the
/// inverse series is `1 - e^{-x}`.
pub fn psi_kappa_by_set_partitions(n: usize, exponents: &[u32], kappas: &[u32]) -> Rational {
    if !degree_matches(n, exponents, kappas) {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for_each_set_partition(kappas, |blocks| {
        let mut exps = exponents.to_vec();
        let mut negative = false;
        for b in blocks {
            negative ^= b.len() % 2 == 0;
            exps.push(b.iter().sum::<u32>() + 1);
        }
        let v = psi_integral(exps.len(), &exps);
        if negative {
            total -= v;
        } else {
            total += v;
        }
    });
    total
}

/// One κ at a time: `κ_b · K = π_*(ψ_{n+1}^{b+1} · π^*K)` with the
/// pullback correction `π^*κ_c = κ_c − ψ_{n+1}^c` on the remaining factors.
pub fn psi_kappa_by_recursion(n: usize, exponents: &[u32], kappas: &[u32]) -> Rational {
    if !degree_matches(n, exponents, kappas) {
        return Rational::zero();
    }
    let Some((&first, rest)) = kappas.split_first() else {
        return psi_integral(n, exponents);
    };
    let mut total = Rational::zero();
    for subset in 0u32..(1 << rest.len()) {
        let mut extra = first + 1;
        let mut remaining = Vec::new();
        for (j, &b) in rest.iter().enumerate() {
            if subset >> j & 1 == 1 {
                extra += b;
            } else {
                remaining.push(b);
            }
        }
        let mut exps = exponents.to_vec();
        exps.push(extra);
        let v = psi_kappa_by_recursion(n + 1, &exps, &remaining);
        if subset.count_ones() % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    /// String-equation recursion, independent of the multinomial formula:
    /// `<τ_0 ∏ τ_{k_i}> = Σ_j <∏ τ_{k_i - δ_ij}>`, base `<τ_0^3> = 1`.
    fn string_oracle(exps: &[u32]) -> Rational {
        let n = exps.len();
        if n < 3 || exps.iter().sum::<u32>() as usize != n - 3 {
            return Rational::zero();
        }
        if n == 3 {
            return int(1);
        }
        let zero = exps.iter().position(|&e| e == 0).expect("some exponent vanishes");
        let mut rest = exps.to_vec();
        rest.remove(zero);
        let mut total = Rational::zero();
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut e = rest.clone();
                e[j] -= 1;
                total += string_oracle(&e);
            }
        }
        total
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_integral(3, &[0, 0, 0]), int(1));
        assert_eq!(psi_integral(4, &[1, 0, 0, 0]), string_oracle(&[1, 0, 0, 0]));
        assert_eq!(psi_integral(4, &[1, 0, 0, 0]), int(1));
        assert_eq!(psi_integral(6, &[1, 1, 1, 0, 0, 0]), string_oracle(&[1, 1, 1, 0, 0, 0]));
        assert_eq!(psi_integral(6, &[1, 1, 1, 0, 0, 0]), int(6));
        assert_eq!(psi_integral(5, &[1, 0, 0, 0, 0]), int(0));
    }

    #[test]
    fn psi_matches_string_oracle_exhaustively() {
        for n in 3..=7usize {
            let d = (n - 3) as u32;
            let mut exps = vec![0u32; n];
            loop {
                if exps.iter().sum::<u32>() == d {
                    assert_eq!(psi_integral(n, &exps), string_oracle(&exps), "{exps:?}");
                }
                let mut i = 0;
                while i < n {
                    if exps[i] < d {
                        exps[i] += 1;
                        break;
                    }
                    exps[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(psi_kappa_integral(4, &[0; 4], &[1]), int(1));
        assert_eq!(psi_kappa_by_recursion(4, &[0; 4], &[1]), int(1));
        assert_eq!(psi_kappa_by_set_partitions(5, &[0; 5], &[1, 1]), int(5));
        assert_eq!(psi_kappa_by_recursion(5, &[0; 5], &[1, 1]), int(5));
        // Weil–Petersson volume of the 6-pointed space
        assert_eq!(psi_kappa_by_recursion(6, &[0; 6], &[1, 1, 1]), int(61));
        assert_eq!(psi_kappa_by_set_partitions(6, &[0; 6], &[1, 1, 1]), int(61));
        assert_eq!(psi_kappa_integral(5, &[1, 0, 0, 0, 0], &[1]), int(3));
    }

    #[test]
    fn cache_records_round_trip() {
        let key = IntersectionKey::new(5, &[0, 1, 0, 0, 0], &[1]);
        let rec = key.to_record(&int(3));
        assert_eq!(rec, "5;0,0,0,0,1;1;3");
        let (k2, v) = IntersectionKey::from_record(&rec).unwrap();
        assert_eq!(k2, key);
        assert_eq!(v, int(3));
        let (k3, _) = IntersectionKey::from_record("3;0,0,0;;1").unwrap();
        assert!(k3.kappa.is_empty());
        assert!(IntersectionKey::from_record("3;0,0;;1").is_err());
    }
}
