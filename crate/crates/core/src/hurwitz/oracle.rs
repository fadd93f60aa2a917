//! Direct count of factorizations in the symmetric group.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::rational::factorial_int;
use crate::exact::Rational;
use crate::par::Execution;

use super::HurwitzSpec;

pub const DEFAULT_CAP: u32 = 8;

/// Permutation of at most 8 letters and the orbit labels of the group
/// generated so far, packed as 3-bit fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State(u64);

impl State {
    fn image(self, i: usize) -> usize {
        ((self.0 >> (3 * i)) & 7) as usize
    }

    fn label(self, i: usize) -> usize {
        ((self.0 >> (24 + 3 * i)) & 7) as usize
    }

    fn build(perm: &[usize], labels: &[usize]) -> State {
        let mut k = 0u64;
        for (i, &p) in perm.iter().enumerate() {
            k |= (p as u64) << (3 * i);
        }
        // relabel by first appearance so equal partitions pack equally
        let mut map = [usize::MAX; 8];
        let mut next = 0;
        for (i, &l) in labels.iter().enumerate() {
            if map[l] == usize::MAX {
                map[l] = next;
                next += 1;
            }
            k |= (map[l] as u64) << (24 + 3 * i);
        }
        State(k)
    }
}

fn cycle_type(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let (mut x, mut len) = (s, 0);
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// `#{(α, τ_1, …, τ_b, β) : α τ_1 ⋯ τ_b β = 1}` over `d!`, with `α` of type
/// `(r, …, r)`, `τ_j` transpositions and `β` of type `μ`. With `transitive`
/// only tuples generating a transitive subgroup count.
pub fn factorization_count(spec: &HurwitzSpec, transitive: bool) -> Result<Rational> {
    factorization_count_with(spec, transitive, DEFAULT_CAP, Execution::default())
}

pub fn factorization_count_with(spec: &HurwitzSpec, transitive: bool, cap: u32, exec: Execution) -> Result<Rational> {
    let d = spec.degree() as usize;
    if d as u32 > cap.min(8) {
        return Err(Error::CapExceeded { degree: d as u32, cap: cap.min(8) });
    }
    let r = spec.r as usize;
    let alpha: Vec<usize> = (0..d).map(|i| if (i + 1) % r == 0 { i + 1 - r } else { i + 1 }).collect();
    let labels: Vec<usize> = (0..d).map(|i| if transitive { i / r } else { 0 }).collect();
    let start = State::build(&alpha, &labels);
    let mut target = spec.mu.clone();
    target.sort_unstable();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();

    let step = |layer: &HashMap<State, u128>, (i, j): (usize, usize), next: &mut HashMap<State, u128>| {
        let mut perm = vec![0; d];
        let mut lab = vec![0; d];
        for (&s, &c) in layer {
            for k in 0..d {
                perm[k] = s.image(k);
                lab[k] = s.label(k);
            }
            perm.swap(i, j);
            let (keep, drop) = (lab[i].min(lab[j]), lab[i].max(lab[j]));
            for l in lab.iter_mut() {
                if *l == drop {
                    *l = keep;
                }
            }
            *next.entry(State::build(&perm, &lab)).or_insert(0) += c;
        }
    };

    let b = spec.simple_branch_points() as usize;
    let count: u128 = if b == 0 {
        finish(&HashMap::from([(start, 1u128)]), d, &target, transitive)
    } else {
        let parts = exec.map(&pairs, |&first| {
            let mut layer = HashMap::new();
            step(&HashMap::from([(start, 1u128)]), first, &mut layer);
            for _ in 1..b {
                let mut next = HashMap::with_capacity(layer.len());
                for &p in &pairs {
                    step(&layer, p, &mut next);
                }
                layer = next;
            }
            finish(&layer, d, &target, transitive)
        });
        parts.into_iter().sum()
    };
    // |class of α| / d! = 1 / (r^{d/r} (d/r)!)
    let k = (d / r) as u64;
    let den = num::BigInt::from(r).pow(k as u32) * factorial_int(k);
    Ok(Rational::new(count.into(), den))
}

fn finish(layer: &HashMap<State, u128>, d: usize, target: &[u32], transitive: bool) -> u128 {
    let mut perm = vec![0; d];
    layer
        .iter()
        .filter(|(s, _)| {
            for (k, p) in perm.iter_mut().enumerate() {
                *p = s.image(k);
            }
            (!transitive || (0..d).all(|k| s.label(k) == 0)) && cycle_type(&perm) == target
        })
        .map(|(_, &c)| c)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn smallest_counts() {
        let s = HurwitzSpec::new(2, vec![1, 1]).unwrap();
        assert_eq!(factorization_count(&s, true).unwrap(), frac(1, 2));
        let s = HurwitzSpec::new(2, vec![2]).unwrap();
        assert_eq!(factorization_count(&s, true).unwrap(), frac(1, 2));
        let s = HurwitzSpec::new(1, vec![1, 1]).unwrap();
        // identity α and the same transposition twice
        assert_eq!(factorization_count(&s, false).unwrap(), frac(1, 2));
    }

    #[test]
    fn cap_enforced() {
        let s = HurwitzSpec::new(3, vec![3, 3, 3]).unwrap();
        assert!(matches!(factorization_count(&s, true), Err(Error::CapExceeded { degree: 9, cap: 8 })));
    }
}
