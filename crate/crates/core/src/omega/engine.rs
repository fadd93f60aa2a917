use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, frac, Rational};
use crate::genus0::{
    integrate_graded, psi_kappa_integral, Generator, GradedPoly, StableTree, TreeContext, TreeEnumerator,
};
use crate::par::Execution;

use super::local::{chern_coefficients, edge_factor, omega_local_integrand};
use super::weights::{edge_weights, side_weight};
use super::OmegaSpec;

/// How the sum over stable trees is organized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Subset recursion: every rooted subtree over a leg set is summed once.
    #[default]
    Factorized,
    /// One evaluation per stable tree, by message passing towards leg 0.
    TreeSum,
    /// One graded polynomial per tree, integrated vertex by vertex.
    Graded,
}

type Series = Vec<Rational>;

/// Coefficient tables shared by the factorized and tree-sum strategies.
///
/// A vertex of valence `k` integrates `∏ ψ_j^{e_j} exp(-Σ c_m κ_m)` to
/// `vertex[k][D] / ∏ e_j!` with `D = Σ e_j`, so slot weights combine as
/// exponential generating series in one variable.
struct Tables {
    dim: usize,
    inv_fact: Vec<Rational>,
    vertex: Vec<Vec<Rational>>,
    leg: Vec<Series>,
    edge: BTreeMap<u32, Vec<Series>>,
}

impl Tables {
    fn build(spec: &OmegaSpec) -> Tables {
        let n = spec.n();
        let dim = spec.dim();
        let inv_fact: Vec<Rational> = (0..=dim as u64 + 1).map(|k| factorial(k).recip()).collect();
        let cs = chern_coefficients(&frac(spec.s as i64, spec.r as i64), &spec.xscale, dim);
        let vertex = (0..=n).map(|k| vertex_row(k, &cs)).collect();
        let leg = spec
            .a
            .iter()
            .map(|&ai| {
                let c = chern_coefficients(&frac(ai, spec.r as i64), &spec.xscale, dim);
                exp_series(&c, dim)
            })
            .collect();
        let mut weights: Vec<u32> = (1u32..1 << n)
            .filter(|s| s & 1 == 0 && s.count_ones() >= 2 && s.count_ones() as usize <= n - 2)
            .map(|s| side_weight(spec, s))
            .collect();
        weights.sort_unstable();
        weights.dedup();
        let edge = weights.into_iter().map(|w| (w, edge_table(spec, w, dim))).collect();
        Tables { dim, inv_fact, vertex, leg, edge }
    }

    fn len(&self) -> usize {
        self.dim + 1
    }

    /// Leg `i` carrying `Σ_e ins[e] ψ^e`, as an exponential generating series.
    fn leg_slot(&self, i: usize, ins: &[Rational]) -> Series {
        let mut s = mul_trunc(&self.leg[i], &pad(ins, self.len()));
        for (q, v) in s.iter_mut().enumerate() {
            *v *= &self.inv_fact[q];
        }
        s
    }

    fn vertex(&self, k: usize, d: usize) -> Option<&Rational> {
        self.vertex.get(k).and_then(|row| row.get(d))
    }

    /// Top vertex of a subtree with `k` slots below it: weights `W(p)` of the
    /// exponent `p` at the upward half-edge.
    fn upward(&self, k: usize, prod: &Series, out: &mut Series) {
        for p in 0..self.len() {
            for d in p..self.len() {
                if let Some(h) = self.vertex(k + 1, d) {
                    if !h.is_zero() && !prod[d - p].is_zero() {
                        out[p] += h * &prod[d - p] * &self.inv_fact[p];
                    }
                }
            }
        }
    }

    /// `Msg(q) = Σ_p E_w(p, q) W(p)`, returned as a series in the parent slot.
    fn across_edge(&self, w: u32, up: &Series) -> Series {
        let e = &self.edge[&w];
        let mut out = vec![Rational::zero(); self.len()];
        for (p, wp) in up.iter().enumerate() {
            if wp.is_zero() {
                continue;
            }
            for (q, c) in e[p].iter().enumerate() {
                if !c.is_zero() {
                    out[q] += c * wp;
                }
            }
        }
        for (q, v) in out.iter_mut().enumerate() {
            *v *= &self.inv_fact[q];
        }
        out
    }

    fn close(&self, k: usize, prod: &Series) -> Rational {
        let mut total = Rational::zero();
        for (d, c) in prod.iter().enumerate() {
            if let Some(h) = self.vertex(k, d) {
                total += h * c;
            }
        }
        total
    }
}

/// `vertex[k][D] = D! ∫ ψ_1^D exp(-Σ c_m κ_m)` on the `k`-pointed space.
fn vertex_row(k: usize, cs: &[Rational]) -> Vec<Rational> {
    if k < 3 {
        return Vec::new();
    }
    let dim = k - 3;
    let gens: Arc<[Generator]> = Arc::from((1..=dim as u32).map(|m| Generator::Kappa { vertex: 0, m }).collect::<Vec<_>>());
    let mut arg = GradedPoly::zero(gens.clone(), dim as u32);
    for (i, m) in (1..=dim).enumerate() {
        arg = arg.sub(&GradedPoly::generator(gens.clone(), dim as u32, i).scale(&cs[m]));
    }
    let e = arg.exp();
    let mut row = vec![Rational::zero(); dim + 1];
    let mut psi = vec![0u32; k];
    for (exps, c) in e.terms() {
        let kdeg = e.weighted_degree(exps) as usize;
        let kappas: Vec<u32> = exps
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| std::iter::repeat_n(i as u32 + 1, x as usize))
            .collect();
        let d = dim - kdeg;
        psi[0] = d as u32;
        row[d] += c * psi_kappa_integral(k, &psi, &kappas) * factorial(d as u64);
    }
    row
}

/// Coefficients of `exp(Σ_m c_m t^m)` up to `t^dim`.
fn exp_series(c: &[Rational], dim: usize) -> Series {
    // f' = (Σ m c_m t^{m-1}) f
    let mut f = vec![Rational::zero(); dim + 1];
    f[0] = Rational::one();
    for j in 1..=dim {
        let mut acc = Rational::zero();
        for m in 1..=j {
            if m < c.len() {
                acc += Rational::from_integer(m.into()) * &c[m] * &f[j - m];
            }
        }
        f[j] = acc / Rational::from_integer(j.into());
    }
    f
}

/// `edge[p][q] = [ψ_h^p ψ_h'^q]` of the edge factor, `h` carrying weight `w`.
fn edge_table(spec: &OmegaSpec, w: u32, dim: usize) -> Vec<Series> {
    let gens: Arc<[Generator]> = Arc::from(vec![Generator::Psi(0), Generator::Psi(1)]);
    let c = chern_coefficients(&frac(w as i64, spec.r as i64), &spec.xscale, dim + 1);
    let f = edge_factor(&gens, dim as u32, 0, 1, &c);
    let mut t = vec![vec![Rational::zero(); dim + 1]; dim + 1];
    for (exps, v) in f.terms() {
        t[exps[0] as usize][exps[1] as usize] = v.clone();
    }
    t
}

fn mul_trunc(a: &Series, b: &Series) -> Series {
    let len = a.len();
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn pad(v: &[Rational], len: usize) -> Series {
    let mut out: Series = v.iter().take(len).cloned().collect();
    out.resize(len, Rational::zero());
    out
}

fn add_assign(a: &mut Series, b: &Series) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Evaluates `∫ Ω · ∏ ψ_i^{e_i}` over the genus-zero moduli space.
pub struct OmegaEngine {
    spec: OmegaSpec,
    strategy: Strategy,
    execution: Execution,
    tables: OnceLock<Tables>,
}

impl OmegaEngine {
    pub fn new(spec: OmegaSpec) -> Result<Self> {
        spec.validate()?;
        Ok(OmegaEngine { spec, strategy: Strategy::default(), execution: Execution::default(), tables: OnceLock::new() })
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn spec(&self) -> &OmegaSpec {
        &self.spec
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| Tables::build(&self.spec))
    }

    /// `∫ Ω ∏ ψ_i^{e_i}`.
    pub fn integral(&self, psi: &[u32]) -> Result<Rational> {
        let n = self.spec.n();
        if psi.len() != n {
            return Err(Error::InvalidInput(format!("{} ψ-exponents for {n} markings", psi.len())));
        }
        if psi.iter().map(|&e| e as usize).sum::<usize>() > self.spec.dim() {
            return Ok(Rational::zero());
        }
        let ins: Vec<Series> = psi
            .iter()
            .map(|&e| {
                let mut v = vec![Rational::zero(); e as usize + 1];
                v[e as usize] = Rational::one();
                v
            })
            .collect();
        self.weighted_integral(&ins)
    }

    /// `∫ Ω ∏_i f_i(ψ_i)` where `insertions[i][e]` is the coefficient of
    /// `ψ_i^e` in `f_i`; terms past the dimension drop out.
    pub fn weighted_integral(&self, insertions: &[Vec<Rational>]) -> Result<Rational> {
        let n = self.spec.n();
        if insertions.len() != n {
            return Err(Error::InvalidInput(format!("{} insertions for {n} markings", insertions.len())));
        }
        let len = self.spec.dim() + 1;
        let ins: Vec<Series> = insertions.iter().map(|v| pad(v, len)).collect();
        Ok(match self.strategy {
            Strategy::Factorized => self.factorized(&ins),
            Strategy::TreeSum => self.tree_sum(&ins),
            Strategy::Graded => self.graded(&ins),
        })
    }

    /// `∫ Ω / ∏ (1 - c_i ψ_i)`.
    pub fn geometric_integral(&self, c: &[Rational]) -> Result<Rational> {
        let len = self.spec.dim() + 1;
        let ins: Vec<Series> = c
            .iter()
            .map(|ci| {
                let mut v = Vec::with_capacity(len);
                let mut p = Rational::one();
                for _ in 0..len {
                    v.push(p.clone());
                    p *= ci;
                }
                v
            })
            .collect();
        self.weighted_integral(&ins)
    }

    fn factorized(&self, ins: &[Series]) -> Rational {
        let t = self.tables();
        let n = self.spec.n();
        let m = n - 1;
        let full: usize = (1 << m) - 1;
        let legs: Vec<Series> = (0..n).map(|i| t.leg_slot(i, &ins[i])).collect();
        // slot[S]: the series contributed by block S (a leg or a subtree);
        // part[S][k]: set partitions of S into k blocks
        let mut slot: Vec<Option<Series>> = vec![None; full + 1];
        let mut part: Vec<Vec<Series>> = vec![Vec::new(); full + 1];
        for j in 0..m {
            slot[1 << j] = Some(legs[j + 1].clone());
            part[1 << j] = vec![Vec::new(), legs[j + 1].clone()];
        }
        for size in 2..=m {
            let layer: Vec<usize> = (1..=full).filter(|s| s.count_ones() as usize == size).collect();
            let results = self.execution.map(&layer, |&s| {
                let low = s & s.wrapping_neg();
                let rest = s ^ low;
                let mut parts = vec![Vec::new(); size + 1];
                let mut sub = rest;
                loop {
                    let b = low | sub;
                    if b != s {
                        let slot_b = slot[b].as_ref().expect("smaller block computed");
                        let other = &part[s ^ b];
                        for k in 1..other.len() {
                            if other[k].is_empty() {
                                continue;
                            }
                            let prod = mul_trunc(slot_b, &other[k]);
                            if parts[k + 1].is_empty() {
                                parts[k + 1] = prod;
                            } else {
                                add_assign(&mut parts[k + 1], &prod);
                            }
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
                let own = if s == full {
                    None
                } else {
                    let mut up = vec![Rational::zero(); t.len()];
                    for (k, prod) in parts.iter().enumerate().skip(2) {
                        if !prod.is_empty() {
                            t.upward(k, prod, &mut up);
                        }
                    }
                    Some(t.across_edge(side_weight(&self.spec, (s as u32) << 1), &up))
                };
                if let Some(o) = &own {
                    parts[1] = o.clone();
                }
                (parts, own)
            });
            for (&s, (parts, own)) in layer.iter().zip(results) {
                part[s] = parts;
                slot[s] = own;
            }
        }
        let mut total = Rational::zero();
        for (k, prod) in part[full].iter().enumerate().skip(2) {
            if !prod.is_empty() {
                total += t.close(k + 1, &mul_trunc(&legs[0], prod));
            }
        }
        total / Rational::from_integer(self.spec.r.into())
    }

    fn tree_sum(&self, ins: &[Series]) -> Rational {
        let t = self.tables();
        let n = self.spec.n();
        let legs: Vec<Series> = (0..n).map(|i| t.leg_slot(i, &ins[i])).collect();
        let roots = TreeEnumerator::new(n).expect("validated spec").root_partitions();
        let total = self.execution.map_sum(&roots, Rational::zero(), |blocks| {
            let mut en = TreeEnumerator::new(n).expect("validated spec");
            let mut acc = Rational::zero();
            en.expand(blocks, |tree| acc += self.tree_value(t, &tree, &legs));
            acc
        });
        total / Rational::from_integer(self.spec.r.into())
    }

    fn tree_value(&self, t: &Tables, tree: &StableTree, legs: &[Series]) -> Rational {
        let weights = edge_weights(tree, &self.spec);
        // slot product at `v`, entered through half-edge `from` (at `v`)
        fn gather(t: &Tables, tree: &StableTree, w: &[u32], legs: &[Series], v: usize, from: Option<usize>) -> Series {
            let mut prod = vec![Rational::zero(); t.len()];
            prod[0] = Rational::one();
            for i in tree.legs_at(v) {
                prod = mul_trunc(&prod, &legs[i]);
            }
            for g in tree.half_edges_at(v) {
                if Some(g) == from {
                    continue;
                }
                let h = StableTree::partner(g);
                let c = tree.half_edge_vertex(h);
                let below = gather(t, tree, w, legs, c, Some(h));
                let mut up = vec![Rational::zero(); t.len()];
                t.upward(tree.valence(c) - 1, &below, &mut up);
                prod = mul_trunc(&prod, &t.across_edge(w[h], &up));
            }
            prod
        }
        let root = tree.leg_vertex(0);
        let prod = gather(t, tree, weights.as_slice(), legs, root, None);
        t.close(tree.valence(root), &prod)
    }

    fn graded(&self, ins: &[Series]) -> Rational {
        let n = self.spec.n();
        let roots = TreeEnumerator::new(n).expect("validated spec").root_partitions();
        self.execution.map_sum(&roots, Rational::zero(), |blocks| {
            let mut en = TreeEnumerator::new(n).expect("validated spec");
            let mut acc = Rational::zero();
            en.expand(blocks, |tree| {
                let w = edge_weights(&tree, &self.spec);
                let mut p = omega_local_integrand(&tree, &w, &self.spec);
                let (gens, bound) = (p.gens().clone(), p.bound());
                for (i, f) in ins.iter().enumerate() {
                    let mut fi = GradedPoly::zero(gens.clone(), bound);
                    for (e, c) in f.iter().enumerate() {
                        let mut exps = vec![0u32; gens.len()];
                        exps[i] = e as u32;
                        fi = fi.add(&GradedPoly::monomial(gens.clone(), bound, exps, c.clone()));
                    }
                    p = p.mul(&fi);
                }
                acc += integrate_graded(&TreeContext::of_tree(&tree), &p);
            });
            acc
        })
    }
}

/// `∫ Ω(r, s; a) ∏ ψ_i^{e_i}` on the `n`-pointed genus-zero space.
pub fn omega_psi_integral(spec: &OmegaSpec, psi: &[u32]) -> Result<Rational> {
    OmegaEngine::new(spec.clone())?.integral(psi)
}
