//! Genus-zero stable trees and ψ/κ intersection numbers.

pub mod graded;
pub mod intersect;
pub mod trees;

pub use graded::{GradedPoly, Generator};
pub use intersect::{
    psi_integral, psi_kappa_by_recursion, psi_kappa_by_set_partitions, psi_kappa_integral,
    CacheStats, IntersectionCache, IntersectionKey,
};
pub use trees::{count_strata, enumerate_stable_trees, StableTree, TreeEnumerator};

use num::{One, Zero};

use crate::exact::Rational;

/// Where the ψ-slots of a graded polynomial live: slot `i` sits at vertex
/// `slot_vertex[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeContext {
    slot_vertex: Vec<usize>,
    local_index: Vec<usize>,
    valence: Vec<usize>,
}

impl TreeContext {
    pub fn new(slot_vertex: Vec<usize>) -> Self {
        let n_vertices = slot_vertex.iter().map(|v| v + 1).max().unwrap_or(1);
        let mut valence = vec![0; n_vertices];
        let local_index = slot_vertex
            .iter()
            .map(|&v| {
                valence[v] += 1;
                valence[v] - 1
            })
            .collect();
        TreeContext { slot_vertex, local_index, valence }
    }

    /// A single vertex carrying `n` slots.
    pub fn single(n: usize) -> Self {
        TreeContext::new(vec![0; n])
    }

    /// Legs occupy slots `0..n`, half-edge `h` occupies slot `n + h`.
    pub fn of_tree(tree: &StableTree) -> Self {
        let mut slots: Vec<usize> = (0..tree.n_legs()).map(|i| tree.leg_vertex(i)).collect();
        slots.extend((0..2 * tree.n_edges()).map(|h| tree.half_edge_vertex(h)));
        TreeContext::new(slots)
    }

    pub fn n_vertices(&self) -> usize {
        self.valence.len()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.valence[v]
    }
}

/// Integrates over the product of the vertex moduli spaces: every term is
/// split by vertex and paired with the intersection numbers there. Terms
/// whose degree at some vertex differs from its dimension contribute zero.
pub fn integrate_graded(ctx: &TreeContext, poly: &GradedPoly) -> Rational {
    let gens = poly.gens();
    let nv = ctx.n_vertices();
    let mut total = Rational::zero();
    let mut psi: Vec<Vec<u32>> = (0..nv).map(|v| vec![0; ctx.valence(v)]).collect();
    let mut kappa: Vec<Vec<u32>> = vec![Vec::new(); nv];
    let mut degree = vec![0u32; nv];
    'terms: for (exps, c) in poly.terms() {
        for v in 0..nv {
            psi[v].iter_mut().for_each(|e| *e = 0);
            kappa[v].clear();
            degree[v] = 0;
        }
        for (g, &e) in gens.iter().zip(exps) {
            if e == 0 {
                continue;
            }
            match *g {
                Generator::Psi(slot) => {
                    let v = ctx.slot_vertex[slot];
                    psi[v][ctx.local_index[slot]] += e;
                    degree[v] += e;
                }
                Generator::Kappa { vertex, m } => {
                    kappa[vertex].extend(std::iter::repeat_n(m, e as usize));
                    degree[vertex] += m * e;
                }
            }
        }
        for v in 0..nv {
            if degree[v] as usize + 3 != ctx.valence(v) {
                continue 'terms;
            }
        }
        let mut value = c.clone();
        for v in 0..nv {
            let i = psi_kappa_integral(ctx.valence(v), &psi[v], &kappa[v]);
            if i.is_zero() {
                continue 'terms;
            }
            if !i.is_one() {
                value *= i;
            }
        }
        total += value;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use std::sync::Arc;

    fn vertex_gens(n: usize) -> Arc<[Generator]> {
        let mut g: Vec<Generator> = (0..n).map(Generator::Psi).collect();
        g.extend((1..=n.saturating_sub(3) as u32).map(|m| Generator::Kappa { vertex: 0, m }));
        Arc::from(g)
    }

    #[test]
    fn integrate_examples() {
        let g3 = vertex_gens(3);
        assert_eq!(integrate_graded(&TreeContext::single(3), &GradedPoly::one(g3, 0)), int(1));

        let g6 = vertex_gens(6);
        let mut e = vec![0; g6.len()];
        e[2] = 3;
        let p = GradedPoly::monomial(g6, 3, e, int(1));
        assert_eq!(integrate_graded(&TreeContext::single(6), &p), int(1));

        let g5 = vertex_gens(5);
        let psi = GradedPoly::generator(g5.clone(), 2, 0);
        let k1 = GradedPoly::generator(g5.clone(), 2, 5);
        let v = integrate_graded(&TreeContext::single(5), &psi.mul(&k1));
        assert_eq!(v, psi_kappa_integral(5, &[1, 0, 0, 0, 0], &[1]));
        assert_eq!(v, int(3));
    }

    #[test]
    fn integrate_on_two_vertices() {
        // split {0,1,h} | {h',2,3,4}: ψ on the 4-valent side only
        let ctx = TreeContext::new(vec![0, 0, 1, 1, 1, 0, 1]);
        let gens: Arc<[Generator]> = Arc::from((0..7).map(Generator::Psi).collect::<Vec<_>>());
        let p = GradedPoly::generator(gens.clone(), 2, 6);
        assert_eq!(integrate_graded(&ctx, &p), int(1));
        let q = GradedPoly::generator(gens, 2, 0);
        assert_eq!(integrate_graded(&ctx, &q), int(0));
    }
}
