use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::rational::{factorial_int, int, Rational};
use num::bigint::BigInt;

/// Integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts; panics on a zero part.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of each part value.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ordered tuple of partitions whose parts together exhaust a ground multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultisetPartitionTuple {
    pub blocks: Vec<Partition>,
}

/// `e_i(values)`, the coefficient of `t^i` in `∏ (1 + t v)`.
pub fn elementary_symmetric(i: usize, values: &[Rational]) -> Rational {
    if i > values.len() {
        return Rational::zero();
    }
    // e[k] after processing a prefix of the values
    let mut e = vec![Rational::zero(); i + 1];
    e[0] = Rational::one();
    for v in values {
        for k in (1..=i).rev() {
            let add = &e[k - 1] * v;
            e[k] += add;
        }
    }
    e[i].clone()
}

/// Descending factorial `x (x-1) ⋯ (x-a+1)`.
pub fn falling_factorial(x: &Rational, a: u32) -> Rational {
    (0..a).fold(Rational::one(), |acc, j| acc * (x - int(j as i64)))
}

/// Coefficient of `t^k` in `∏_{j<n} (t - (x + j))`.
///
/// This fixes a sign and offset convention: `s(n, n-i, x) = (-1)^i e_i(x, …, x+n-1)`.
pub fn generalized_stirling(n: usize, k: usize, x: &Rational) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut c = vec![Rational::one()];
    for j in 0..n {
        let root = x + int(j as i64);
        let mut next = vec![Rational::zero(); c.len() + 1];
        for (d, a) in c.iter().enumerate() {
            next[d + 1] += a;
            next[d] -= a * &root;
        }
        c = next;
    }
    c[k].clone()
}

/// All nonempty partitions of size at most `max_size`, by size, and within
/// one size in decreasing lexicographic order.
pub fn partitions_bounded(max_size: u32) -> Vec<Partition> {
    (1..=max_size).flat_map(partitions_of).collect()
}

/// Partitions of exactly `n`, decreasing lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `∏_v m_v!` over the distinct part values.
pub fn partition_automorphisms(p: &Partition) -> BigInt {
    p.multiplicities()
        .values()
        .fold(BigInt::one(), |acc, &m| acc * factorial_int(m as u64))
}

/// All ordered `t`-tuples of nonempty partitions, each of size (sum of parts)
/// at most `max_block_size`, whose multiset union is `ground`. Tuples are
/// distinct as values.
pub fn multiset_partition_tuples(
    ground: &[u32],
    t: usize,
    max_block_size: u32,
) -> Vec<MultisetPartitionTuple> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &g in ground {
        *counts.entry(g).or_insert(0) += 1;
    }
    let values: Vec<u32> = counts.keys().copied().collect();
    let remaining: Vec<usize> = counts.values().copied().collect();

    fn rec(
        values: &[u32],
        remaining: &mut Vec<usize>,
        t: usize,
        max: u32,
        cur: &mut Vec<Partition>,
        out: &mut Vec<MultisetPartitionTuple>,
    ) {
        let left: usize = remaining.iter().sum();
        if t == 0 {
            if left == 0 {
                out.push(MultisetPartitionTuple { blocks: cur.clone() });
            }
            return;
        }
        if left < t {
            return;
        }
        // enumerate sub-multisets as count vectors
        let mut take = vec![0usize; values.len()];
        loop {
            // advance odometer
            let mut i = 0;
            loop {
                if i == values.len() {
                    return;
                }
                if take[i] < remaining[i] {
                    take[i] += 1;
                    break;
                }
                take[i] = 0;
                i += 1;
            }
            let size: u32 = take.iter().zip(values).map(|(&c, &v)| c as u32 * v).sum();
            if size > max {
                continue;
            }
            let mut parts = Vec::new();
            for (&c, &v) in take.iter().zip(values) {
                parts.extend(std::iter::repeat_n(v, c));
            }
            for (r, &c) in remaining.iter_mut().zip(&take) {
                *r -= c;
            }
            cur.push(Partition::new(parts));
            rec(values, remaining, t - 1, max, cur, out);
            cur.pop();
            for (r, &c) in remaining.iter_mut().zip(&take) {
                *r += c;
            }
        }
    }

    let mut out = Vec::new();
    let mut remaining = remaining;
    rec(&values, &mut remaining, t, max_block_size, &mut Vec::new(), &mut out);
    out
}

/// Calls `f` on every set partition of `items`, blocks in order of their
/// smallest element.
pub fn for_each_set_partition<T: Clone>(items: &[T], mut f: impl FnMut(&[Vec<T>])) {
    fn rec<T: Clone>(
        items: &[T],
        i: usize,
        blocks: &mut Vec<Vec<T>>,
        f: &mut dyn FnMut(&[Vec<T>]),
    ) {
        if i == items.len() {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[i].clone());
            rec(items, i + 1, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![items[i].clone()]);
        rec(items, i + 1, blocks, f);
        blocks.pop();
    }
    rec(items, 0, &mut Vec::new(), &mut f);
}

/// Set partitions of the bits of `mask`, each block as a sub-mask.
pub fn mask_set_partitions(mask: u32) -> Vec<Vec<u32>> {
    let bits: Vec<u32> = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| 1u32 << b).collect();
    let mut out = Vec::new();
    for_each_set_partition(&bits, |blocks| {
        out.push(blocks.iter().map(|b| b.iter().fold(0, |acc, x| acc | x)).collect());
    });
    out
}

/// Multinomial coefficient `(Σk)! / ∏ k_i!`.
pub fn multinomial(ks: &[u32]) -> BigInt {
    let total: u64 = ks.iter().map(|&k| k as u64).sum();
    ks.iter()
        .fold(factorial_int(total), |acc, &k| acc / factorial_int(k as u64))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial_int(n) / (factorial_int(k) * factorial_int(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elementary_symmetric(0, &[int(5), int(7)]), int(1));
        assert_eq!(elementary_symmetric(0, &[]), int(1));
        assert_eq!(
            elementary_symmetric(1, &[frac(1, 2), frac(3, 2), frac(5, 2)]),
            frac(9, 2)
        );
        assert_eq!(elementary_symmetric(2, &[int(1), int(2)]), int(2));
        assert_eq!(elementary_symmetric(3, &[int(1), int(2)]), int(0));
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(&int(3), 2), int(6));
        assert_eq!(falling_factorial(&frac(1, 3), 1), frac(1, 3));
        assert_eq!(falling_factorial(&int(5), 0), int(1));
        assert_eq!(falling_factorial(&frac(1, 3), 2), frac(-2, 9));
    }

    #[test]
    fn bounded_partitions() {
        assert_eq!(partitions_bounded(1), vec![p(&[1])]);
        assert_eq!(partitions_bounded(2), vec![p(&[1]), p(&[2]), p(&[1, 1])]);
        // brute force: count weakly decreasing tuples with sum ≤ 3
        let mut brute = 0;
        for a in 1..=3u32 {
            brute += 1;
            for b in 1..=a {
                if a + b <= 3 {
                    brute += 1;
                }
                for c in 1..=b {
                    if a + b + c <= 3 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(brute, 6);
        assert_eq!(partitions_bounded(3).len(), brute);
    }

    #[test]
    fn tuples_examples() {
        let t = multiset_partition_tuples(&[1, 1], 2, 2);
        assert_eq!(t, vec![MultisetPartitionTuple { blocks: vec![p(&[1]), p(&[1])] }]);
        let t = multiset_partition_tuples(&[1, 1, 1, 1], 2, 2);
        assert_eq!(t, vec![MultisetPartitionTuple { blocks: vec![p(&[1, 1]), p(&[1, 1])] }]);
        let t = multiset_partition_tuples(&[1, 2], 1, 3);
        assert_eq!(t, vec![MultisetPartitionTuple { blocks: vec![p(&[2, 1])] }]);
        assert!(multiset_partition_tuples(&[1, 2], 1, 2).is_empty());
        assert!(multiset_partition_tuples(&[1], 2, 5).is_empty());
    }

    #[test]
    fn automorphisms() {
        assert_eq!(partition_automorphisms(&p(&[1, 1])), BigInt::from(2));
        assert_eq!(partition_automorphisms(&p(&[2, 1])), BigInt::from(1));
        assert_eq!(partition_automorphisms(&p(&[3, 3, 3, 1])), BigInt::from(6));
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(generalized_stirling(1, 1, &frac(7, 3)), int(1));
        assert_eq!(generalized_stirling(1, 0, &frac(1, 2)), frac(-1, 2));
        // brute-force expansion of t(t-1)(t-2): coefficient of t is 2
        assert_eq!(generalized_stirling(3, 1, &int(0)), int(2));
        assert_eq!(
            generalized_stirling(3, 1, &int(0)),
            elementary_symmetric(2, &[int(0), int(1), int(2)])
        );
    }

    #[test]
    fn set_partition_counts() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            let items: Vec<usize> = (0..n).collect();
            let mut count = 0;
            for_each_set_partition(&items, |_| count += 1);
            assert_eq!(count, b);
        }
        assert_eq!(mask_set_partitions(0b1011).len(), 5);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1]), BigInt::from(6));
        assert_eq!(multinomial(&[2, 0, 1]), BigInt::from(3));
        assert_eq!(binomial(5, 2), BigInt::from(10));
    }
}
