//! Genus-zero stable graphs with labeled legs.
//!
//! A stable tree is stored with explicit half-edges: edge `e` consists of
//! half-edges `2e` and `2e + 1`. Legs are labeled `0..n` internally.

use std::collections::HashMap;
use std::sync::Arc;

use num::bigint::BigInt;
use num::Zero;

use crate::error::{Error, Result};
use crate::exact::combinat::{binomial, mask_set_partitions};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableTree {
    leg_vertex: Vec<u8>,
    half_edge_vertex: Vec<u8>,
    n_vertices: usize,
}

impl StableTree {
    pub fn n_legs(&self) -> usize {
        self.leg_vertex.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.half_edge_vertex.len() / 2
    }

    pub fn leg_vertex(&self, leg: usize) -> usize {
        self.leg_vertex[leg] as usize
    }

    pub fn half_edge_vertex(&self, h: usize) -> usize {
        self.half_edge_vertex[h] as usize
    }

    pub fn partner(h: usize) -> usize {
        h ^ 1
    }

    /// Edges as pairs of half-edges.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_edges()).map(|e| (2 * e, 2 * e + 1))
    }

    pub fn legs_at(&self, v: usize) -> Vec<usize> {
        (0..self.n_legs()).filter(|&i| self.leg_vertex(i) == v).collect()
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.half_edge_vertex.len())
            .filter(|&h| self.half_edge_vertex(h) == v)
            .collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.leg_vertex.iter().filter(|&&w| w as usize == v).count()
            + self.half_edge_vertex.iter().filter(|&&w| w as usize == v).count()
    }

    /// Legs on the side of `h` once its edge is cut, as a bitmask.
    pub fn side_legs(&self, h: usize) -> u32 {
        let blocked = self.half_edge_vertex(Self::partner(h));
        let start = self.half_edge_vertex(h);
        let mut seen = vec![false; self.n_vertices];
        seen[blocked] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut mask = 0u32;
        while let Some(v) = stack.pop() {
            for leg in self.legs_at(v) {
                mask |= 1 << leg;
            }
            for g in self.half_edges_at(v) {
                if g == h {
                    continue;
                }
                let w = self.half_edge_vertex(Self::partner(g));
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        mask
    }

    /// Checks connectivity, acyclicity and stability.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(format!("stable tree: {m}")));
        if self.n_edges() + 1 != self.n_vertices {
            return bad("edge count is not vertices - 1");
        }
        for v in 0..self.n_vertices {
            if self.valence(v) < 3 {
                return bad("vertex of valence below 3");
            }
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in self.half_edges_at(v) {
                let w = self.half_edge_vertex(Self::partner(h));
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("not connected");
        }
        Ok(())
    }

    /// The set of splits `{side_legs(h)}` normalized to not contain leg 0;
    /// two trees are isomorphic exactly when these sets agree.
    pub fn splits(&self) -> Vec<u32> {
        let full = if self.n_legs() == 32 { u32::MAX } else { (1u32 << self.n_legs()) - 1 };
        let mut s: Vec<u32> = self
            .edges()
            .map(|(h, _)| {
                let m = self.side_legs(h);
                if m & 1 == 1 {
                    full & !m
                } else {
                    m
                }
            })
            .collect();
        s.sort_unstable();
        s
    }
}

/// Rooted subtree over a set of legs: the legs attached directly to its top
/// vertex and the subtrees hanging below it.
#[derive(Debug)]
pub(crate) struct Subtree {
    pub legs: u32,
    pub children: Vec<Arc<Subtree>>,
}

/// Enumerates stable trees by rooting them at leg 0.
///
/// A tree is a set partition of the remaining legs into at least two blocks
/// at the root vertex, each block of size two or more recursively carrying
/// a rooted subtree.
pub struct TreeEnumerator {
    n: usize,
    memo: HashMap<u32, Vec<Arc<Subtree>>>,
}

impl TreeEnumerator {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Unstable(n));
        }
        if n > 24 {
            return Err(Error::InvalidInput(format!("{n} markings is beyond tree enumeration")));
        }
        Ok(TreeEnumerator { n, memo: HashMap::new() })
    }

    /// Block decompositions of the root vertex.
    pub fn root_partitions(&self) -> Vec<Vec<u32>> {
        let rest = ((1u32 << self.n) - 1) & !1;
        mask_set_partitions(rest).into_iter().filter(|p| p.len() >= 2).collect()
    }

    pub(crate) fn subtrees(&mut self, mask: u32) -> Vec<Arc<Subtree>> {
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let mut out = Vec::new();
        for blocks in mask_set_partitions(mask) {
            if blocks.len() < 2 {
                continue;
            }
            let legs = blocks.iter().filter(|b| b.count_ones() == 1).fold(0, |a, b| a | b);
            let inner: Vec<u32> = blocks.iter().copied().filter(|b| b.count_ones() > 1).collect();
            let options: Vec<Vec<Arc<Subtree>>> = inner.iter().map(|&b| self.subtrees(b)).collect();
            for_each_product(&options, |choice| {
                out.push(Arc::new(Subtree { legs, children: choice.to_vec() }));
            });
        }
        self.memo.insert(mask, out.clone());
        out
    }

    /// Expands one root decomposition into its trees.
    pub fn expand(&mut self, root_blocks: &[u32], mut f: impl FnMut(StableTree)) {
        let legs = root_blocks.iter().filter(|b| b.count_ones() == 1).fold(1, |a, b| a | b);
        let inner: Vec<u32> = root_blocks.iter().copied().filter(|b| b.count_ones() > 1).collect();
        let options: Vec<Vec<Arc<Subtree>>> = inner.iter().map(|&b| self.subtrees(b)).collect();
        let n = self.n;
        for_each_product(&options, |choice| {
            let root = Subtree { legs, children: choice.to_vec() };
            f(flatten(n, &root));
        });
    }

    pub fn for_each(&mut self, mut f: impl FnMut(StableTree)) {
        for blocks in self.root_partitions() {
            self.expand(&blocks, &mut f);
        }
    }
}

fn for_each_product<T: Clone>(options: &[Vec<T>], mut f: impl FnMut(&[T])) {
    fn rec<T: Clone>(options: &[Vec<T>], cur: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        if cur.len() == options.len() {
            f(cur);
            return;
        }
        for o in &options[cur.len()] {
            cur.push(o.clone());
            rec(options, cur, f);
            cur.pop();
        }
    }
    rec(options, &mut Vec::with_capacity(options.len()), &mut f);
}

fn flatten(n: usize, root: &Subtree) -> StableTree {
    let mut leg_vertex = vec![0u8; n];
    let mut half_edge_vertex = Vec::new();
    let mut n_vertices = 0usize;
    fn visit(
        node: &Subtree,
        leg_vertex: &mut [u8],
        half_edge_vertex: &mut Vec<u8>,
        n_vertices: &mut usize,
    ) -> usize {
        let v = *n_vertices;
        *n_vertices += 1;
        for (leg, slot) in leg_vertex.iter_mut().enumerate() {
            if node.legs >> leg & 1 == 1 {
                *slot = v as u8;
            }
        }
        for child in &node.children {
            let e = half_edge_vertex.len() / 2;
            half_edge_vertex.push(v as u8);
            half_edge_vertex.push(0);
            let w = visit(child, leg_vertex, half_edge_vertex, n_vertices);
            half_edge_vertex[2 * e + 1] = w as u8;
        }
        v
    }
    visit(root, &mut leg_vertex, &mut half_edge_vertex, &mut n_vertices);
    StableTree { leg_vertex, half_edge_vertex, n_vertices }
}

/// Complete duplicate-free list of genus-zero stable trees with `n` legs.
pub fn enumerate_stable_trees(n: usize) -> Result<Vec<StableTree>> {
    let mut en = TreeEnumerator::new(n)?;
    let mut out = Vec::new();
    en.for_each(|t| out.push(t));
    Ok(out)
}

/// Number of boundary strata of the `n`-pointed genus-zero space, from the
/// gluing recursion on rooted trees (independent of the enumerator).
pub fn count_strata(n: usize) -> BigInt {
    if n < 3 {
        return BigInt::zero();
    }
    let m = n - 1;
    // a(k): rooted trees with k labeled leaves; b(k): forests of them
    let mut a = vec![BigInt::zero(); m + 1];
    let mut b = vec![BigInt::zero(); m + 1];
    b[0] = BigInt::from(1);
    a[1] = BigInt::from(1);
    b[1] = BigInt::from(1);
    for k in 2..=m {
        let mut s = BigInt::zero();
        for j in 1..k {
            s += binomial((k - 1) as u64, (j - 1) as u64) * &a[j] * &b[k - j];
        }
        a[k] = s.clone();
        b[k] = s * 2;
    }
    a[m].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_stable_trees(3).unwrap().len(), 1);
        assert_eq!(enumerate_stable_trees(4).unwrap().len(), 4);
        assert_eq!(enumerate_stable_trees(5).unwrap().len(), 26);
        assert!(matches!(enumerate_stable_trees(2), Err(Error::Unstable(2))));
    }

    #[test]
    fn counts_match_strata_recursion() {
        for n in 3..=8 {
            let trees = enumerate_stable_trees(n).unwrap();
            assert_eq!(BigInt::from(trees.len()), count_strata(n), "n = {n}");
        }
        assert_eq!(count_strata(9), BigInt::from(660032));
    }

    #[test]
    fn trees_are_valid_and_distinct() {
        for n in 3..=7 {
            let trees = enumerate_stable_trees(n).unwrap();
            let mut seen = HashSet::new();
            for t in &trees {
                t.validate().unwrap();
                assert!(seen.insert(t.splits()), "duplicate tree for n = {n}");
                // labeled legs leave no automorphisms: every split is a distinct proper subset
                let s = t.splits();
                let distinct: HashSet<_> = s.iter().collect();
                assert_eq!(distinct.len(), s.len());
            }
        }
    }

    #[test]
    fn four_point_splits() {
        let trees = enumerate_stable_trees(4).unwrap();
        let mut splits: Vec<Vec<u32>> = trees.iter().map(|t| t.splits()).collect();
        splits.sort();
        assert_eq!(splits, vec![vec![], vec![0b0110], vec![0b1010], vec![0b1100]]);
    }
}
