//! Subcommand bodies. Each returns its inputs and outputs, or the first
//! error, and flags verification mismatches.

use std::collections::BTreeMap;

use omega_core::closed_forms::{verify, VerificationReport, Value, VerifyKind};
use omega_core::exact::rational::to_string;
use omega_core::exact::{Rational, UniPoly};
use omega_core::hurwitz::{
    connected_hurwitz, factorization_count_with, interpolate_quasi_polynomial, HurwitzMethod, HurwitzSpec,
};
use omega_core::omega::{descendant_polynomial_with, Denominator, OmegaEngine, OmegaSpec};
use omega_core::par::Execution;
use omega_core::tr::{condition_flags, relation_terms, single_vanishing_integral, tr_relation_lhs, RelationInput};
use omega_core::{Error, Result};

use crate::args::{Command, DenominatorArg, MethodArg, OmegaArgs, RelationArgs, VerifyCommand};
use crate::document::{Field, Output};

#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<Output>,
    pub mismatch: bool,
}

impl Outcome {
    fn input(&mut self, name: &str, value: impl ToString) {
        self.inputs.insert(name.to_string(), value.to_string());
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn roots_text(roots: &[(Rational, usize)]) -> String {
    roots
        .iter()
        .map(|(x, m)| if *m == 1 { to_string(x) } else { format!("{}^{m}", to_string(x)) })
        .collect::<Vec<_>>()
        .join(", ")
}

fn omega_spec(args: &OmegaArgs, out: &mut Outcome) -> Result<OmegaSpec> {
    out.input("r", args.r);
    out.input("s", args.s);
    out.input("a", join(&args.a));
    out.input("xscale", to_string(&args.xscale));
    Ok(OmegaSpec::new(args.r, args.s, args.a.clone())?.with_xscale(args.xscale.clone()))
}

fn relation(args: &RelationArgs, out: &mut Outcome) -> Result<RelationInput> {
    out.input("r", args.r);
    out.input("mu", join(&args.mu));
    out.input("b", join(&args.b));
    RelationInput::new(args.r, args.mu.clone(), args.b.clone())
}

fn marking(point: usize, n: usize) -> Result<usize> {
    if point == 0 || point > n {
        return Err(Error::InvalidInput(format!("marking {point} out of range 1..={n}")));
    }
    Ok(point - 1)
}

fn value_field(v: &Value) -> Field {
    match v {
        Value::Rational(q) => Field::rational(q),
        Value::Poly(p) => Field::poly(p),
    }
}

fn report_output(rep: &VerificationReport) -> Output {
    let mut o = Output::new(rep.case.clone())
        .with("computed", value_field(&rep.computed))
        .with("predicted", value_field(&rep.predicted))
        .with("residual", value_field(&rep.residual))
        .with("match", Field::Bool(rep.matches));
    if let Some(roots) = &rep.computed_roots {
        o = o.with("roots", Field::Text(roots_text(roots)));
    }
    o
}

fn polynomial_output(label: String, p: &UniPoly) -> Output {
    let mut o = Output::new(label).with("coefficients", Field::poly(p));
    if let Some(roots) = p.rational_roots() {
        o = o.with("roots", Field::Text(roots_text(&roots)));
    }
    o
}

pub fn execute(command: &Command, oracle_cap: u32) -> (Outcome, Result<()>) {
    let mut out = Outcome::default();
    let res = dispatch(command, oracle_cap, &mut out);
    (out, res)
}

fn dispatch(command: &Command, oracle_cap: u32, out: &mut Outcome) -> Result<()> {
    match command {
        Command::OmegaIntegral { omega, psi } => {
            let spec = omega_spec(omega, out)?;
            out.input("psi", join(psi));
            let v = OmegaEngine::new(spec)?.integral(psi)?;
            out.outputs.push(Output::new("integral").with("value", Field::rational(&v)));
        }
        Command::DescendantPoly { omega, point, denominator } => {
            let spec = omega_spec(omega, out)?;
            out.input("point", point);
            let p = marking(*point, spec.n())?;
            let denominator = match denominator {
                Some(DenominatorArg::Rscaled) => Denominator::RScaled,
                Some(DenominatorArg::Plain) => Denominator::Plain,
                None => Denominator::default_for(&spec),
            };
            out.input("denominator", denominator);
            let engine = OmegaEngine::new(spec)?;
            let poly = descendant_polynomial_with(&engine, p, denominator)?.poly;
            out.outputs.push(polynomial_output("descendant polynomial".into(), &poly));
        }
        Command::TrRelation { relation: args } => {
            let input = relation(args, out)?;
            let flags = condition_flags(&input);
            let mut o = Output::new("relation")
                .with("negativity", Field::Bool(flags.negativity))
                .with("boundedness", Field::Bool(flags.boundedness))
                .with("strong_negativity", Field::Bool(flags.strong_negativity))
                .with("lhs", Field::rational(&tr_relation_lhs(&input)?));
            if flags.boundedness {
                o = o.with("single_integral", Field::rational(&single_vanishing_integral(&input)?));
            }
            out.outputs.push(o);
            for term in relation_terms(&input) {
                out.outputs.push(
                    Output::new(format!("term {}", join(&term.block_sizes)))
                        .with("blocks", Field::Exponents(term.block_sizes.clone()))
                        .with("coefficient", Field::rational(&term.coefficient)),
                );
            }
        }
        Command::Verify { kind } => {
            for k in verify_kinds(kind, out)? {
                let rep = verify(&k)?;
                out.mismatch |= !rep.matches;
                out.outputs.push(report_output(&rep));
            }
        }
        Command::Hurwitz { r, mu, method } => {
            out.input("r", r);
            out.input("mu", join(mu));
            out.input("method", format!("{method:?}").to_lowercase());
            let spec = HurwitzSpec::new(*r, mu.clone())?;
            let oracle = || factorization_count_with(&spec, true, oracle_cap, Execution::default());
            let mut values = Vec::new();
            if matches!(method, MethodArg::Fock | MethodArg::All) {
                values.push(("fock", connected_hurwitz(&spec, HurwitzMethod::Moebius)?));
            }
            if matches!(method, MethodArg::Oracle | MethodArg::All) {
                values.push(("oracle", oracle()?));
            }
            if matches!(method, MethodArg::Elsv | MethodArg::All) {
                values.push(("elsv", connected_hurwitz(&spec, HurwitzMethod::Elsv)?));
            }
            let mut o = Output::new(spec.to_string());
            for (name, v) in &values {
                o = o.with(name, Field::rational(v));
            }
            if values.len() > 1 {
                let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
                out.mismatch |= !agree;
                o = o.with("agree", Field::Bool(agree));
            }
            out.outputs.push(o);
        }
        Command::Interpolate { r, residues, method } => {
            out.input("r", r);
            out.input("residues", join(residues));
            let m = match method {
                MethodArg::Oracle => HurwitzMethod::Oracle,
                MethodArg::Fock => HurwitzMethod::Moebius,
                MethodArg::Elsv => HurwitzMethod::Elsv,
                MethodArg::All => return Err(Error::InvalidInput("interpolate takes a single method".into())),
            };
            out.input("method", format!("{method:?}").to_lowercase());
            let q = interpolate_quasi_polynomial(*r, residues, m)?;
            out.outputs.push(
                Output::new("interpolant")
                    .with("degree", Field::Integer(q.degree as i64))
                    .with("samples", Field::Integer(q.samples.len() as i64))
                    .with("held_out", Field::Integer(q.held_out.len() as i64)),
            );
            for (e, c) in &q.coeffs {
                out.outputs.push(
                    Output::new(format!("coefficient {}", join(e)))
                        .with("exponents", Field::Exponents(e.clone()))
                        .with("value", Field::rational(c)),
                );
            }
            for (mu, v) in &q.held_out {
                out.outputs.push(
                    Output::new(format!("held out mu={}", join(mu)))
                        .with("mu", Field::Exponents(mu.clone()))
                        .with("value", Field::rational(v))
                        .with("predicted", Field::rational(&q.eval(mu))),
                );
            }
        }
        Command::Reproduce { section } => {
            out.input("section", section);
            if *section != 4 {
                return Err(Error::InvalidInput(format!("section {section} has no worked examples, try 4")));
            }
            reproduce_examples(out)?;
        }
    }
    Ok(())
}

fn verify_kinds(kind: &VerifyCommand, out: &mut Outcome) -> Result<Vec<VerifyKind>> {
    Ok(match kind {
        VerifyCommand::Afandi { gmax, a_extra } => {
            out.input("gmax", gmax);
            out.input("a_extra", a_extra);
            (1..=*gmax).map(|g| VerifyKind::Afandi { g, a_extra: *a_extra }).collect()
        }
        VerifyCommand::NonWeierstrass { gmax, a_extra } => {
            out.input("gmax", gmax);
            out.input("a_extra", a_extra);
            (1..=*gmax).map(|g| VerifyKind::NonWeierstrass { g, a_extra: *a_extra }).collect()
        }
        VerifyCommand::HigherR { r, b, mu_bar } => {
            out.input("r", r);
            out.input("b", join(b));
            if *r < 2 {
                return Err(Error::InvalidInput("r must be at least 2".into()));
            }
            let mu_bar = mu_bar.unwrap_or_else(|| (r - b.iter().sum::<u32>() % r) % r);
            out.input("mu_bar", mu_bar);
            vec![VerifyKind::HigherR { r: *r, mu_bar, b: b.clone() }]
        }
        VerifyCommand::TrVanishing { relation: args } => vec![VerifyKind::TrVanishing(relation(args, out)?)],
        VerifyCommand::String { omega, point } => {
            let spec = omega_spec(omega, out)?;
            out.input("point", point);
            let point = marking(*point, spec.n())?;
            vec![VerifyKind::String { spec, point }]
        }
        VerifyCommand::Shift { omega, index, point } => {
            let spec = omega_spec(omega, out)?;
            out.input("index", index);
            out.input("point", point);
            let index = marking(*index, spec.n())?;
            let point = marking(*point, spec.n())?;
            vec![VerifyKind::Shift { spec, index, point }]
        }
        VerifyCommand::Jkv { omega, point } => {
            let spec = omega_spec(omega, out)?;
            out.input("point", point);
            let point = marking(*point, spec.n())?;
            vec![VerifyKind::Jkv { spec, point }]
        }
    })
}

/// The worked examples: the r = 2 six- and seven-point polynomials, the
/// r = 13 and r = 3 ones, and the two weight vectors that break the
/// congruence.
fn reproduce_examples(out: &mut Outcome) -> Result<()> {
    let two = Rational::from_integer(2.into());
    let one = Rational::from_integer(1.into());
    let cases: [(u32, Vec<i64>, &Rational); 8] = [
        (2, vec![1, 1, 1, 1, 1, 1], &two),
        (2, vec![1, 1, 1, 1, 1, 1, 0], &two),
        (13, vec![4, 4, 3, 6, 2, 7], &one),
        (13, vec![4, 4, 3, 6, 1, 8], &one),
        (13, vec![4, 1, 2, 9, 2, 7], &one),
        (3, vec![2, 1, 2, 2, 1, 1], &one),
        (3, vec![1, 2, 2, 2, 1, 1], &one),
        (3, vec![1, 2, 2, 2, 2, 2], &one),
    ];
    for (r, a, xscale) in cases {
        let label = format!("r={r} s=0 a=({}) xscale={}", join(&a), to_string(xscale));
        match OmegaSpec::new(r, 0, a) {
            Ok(spec) => {
                let spec = spec.with_xscale(xscale.clone());
                let denominator = Denominator::default_for(&spec);
                let poly = descendant_polynomial_with(&OmegaEngine::new(spec)?, 0, denominator)?.poly;
                out.outputs.push(
                    polynomial_output(label, &poly).with("denominator", Field::Text(denominator.to_string())),
                );
            }
            Err(e @ Error::ModularConstraint(_)) => {
                out.outputs.push(Output::new(label).with("skipped", Field::Text(e.to_string())));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
