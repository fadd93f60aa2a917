use std::sync::Arc;

use num::{One, Zero};

use crate::exact::bernoulli_at;
use crate::exact::rational::{frac, Rational};
use crate::genus0::{Generator, GradedPoly, StableTree};

use super::{EdgeWeighting, OmegaSpec};

/// `c_m = (-1)^{m-1} x^m B_{m+1}(y) / (m(m+1))` for `m = 1..=bound`, index 0 unused.
pub fn chern_coefficients(y: &Rational, xscale: &Rational, bound: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    let mut xm = Rational::one();
    for m in 1..=bound {
        xm *= xscale;
        let mut c = bernoulli_at(m + 1, y) * &xm / Rational::from_integer((m * (m + 1)).into());
        if m % 2 == 0 {
            c = -c;
        }
        out.push(c);
    }
    out
}

fn ratio(num: i64, r: u32) -> Rational {
    frac(num, r as i64)
}

/// Generators of a tree's local ring: ψ at every leg (slots `0..n`) and every
/// half-edge (slot `n + h`), then κ_m at each vertex for `m ≤ valence - 3`.
pub fn tree_generators(tree: &StableTree) -> Arc<[Generator]> {
    let n = tree.n_legs();
    let mut gens: Vec<Generator> = (0..n + 2 * tree.n_edges()).map(Generator::Psi).collect();
    for v in 0..tree.n_vertices() {
        for m in 1..=tree.valence(v).saturating_sub(3) as u32 {
            gens.push(Generator::Kappa { vertex: v, m });
        }
    }
    Arc::from(gens)
}

/// `exp(Σ_m c_m g^m)` for a degree-one generator `g`.
fn exp_power_sum(gens: &Arc<[Generator]>, bound: u32, index: usize, c: &[Rational]) -> GradedPoly {
    let g = GradedPoly::generator(gens.clone(), bound, index);
    let mut arg = GradedPoly::zero(gens.clone(), bound);
    let mut power = g.clone();
    for cm in c.iter().skip(1) {
        arg = arg.add(&power.scale(cm));
        power = power.mul(&g);
    }
    arg.exp()
}

/// `(1 - exp(Σ_m c_m [ψ_h^m - (-ψ_h')^m])) / (ψ_h + ψ_h')` with `c` taken at
/// the weight of `h`. The division is exact.
pub fn edge_factor(gens: &Arc<[Generator]>, bound: u32, h: usize, hp: usize, c: &[Rational]) -> GradedPoly {
    let top = bound + 1;
    let u = GradedPoly::generator(gens.clone(), top, h);
    let v = GradedPoly::generator(gens.clone(), top, hp).scale(&-Rational::one());
    let mut arg = GradedPoly::zero(gens.clone(), top);
    let (mut um, mut vm) = (u.clone(), v.clone());
    for cm in c.iter().skip(1).take(top as usize) {
        arg = arg.add(&um.sub(&vm).scale(cm));
        um = um.mul(&u);
        vm = vm.mul(&v);
    }
    let num = GradedPoly::one(gens.clone(), top).sub(&arg.exp());
    num.divide_by_sum(h, hp).expect("edge numerator divisible by ψ_h + ψ_h'")
}

/// The integrand of one tree: vertex, leg and edge factors multiplied out and
/// truncated at `n - 3`, times the global `1/r`.
pub fn omega_local_integrand(tree: &StableTree, weighting: &EdgeWeighting, spec: &OmegaSpec) -> GradedPoly {
    let n = spec.n();
    let bound = spec.dim() as u32;
    let gens = tree_generators(tree);
    let x = &spec.xscale;
    let mut total = GradedPoly::constant(gens.clone(), bound, ratio(1, spec.r));

    let cs = chern_coefficients(&ratio(spec.s as i64, spec.r), x, bound as usize);
    let mut arg = GradedPoly::zero(gens.clone(), bound);
    for (i, g) in gens.iter().enumerate() {
        if let Generator::Kappa { m, .. } = *g {
            arg = arg.sub(&GradedPoly::generator(gens.clone(), bound, i).scale(&cs[m as usize]));
        }
    }
    total = total.mul(&arg.exp());

    for (i, &ai) in spec.a.iter().enumerate() {
        let c = chern_coefficients(&ratio(ai, spec.r), x, bound as usize);
        total = total.mul(&exp_power_sum(&gens, bound, i, &c));
    }
    for (h, hp) in tree.edges() {
        let c = chern_coefficients(&ratio(weighting.weight(h) as i64, spec.r), x, bound as usize + 1);
        total = total.mul(&edge_factor(&gens, bound, n + h, n + hp, &c));
    }
    total
}
