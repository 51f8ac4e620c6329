//! Executing a parsed session against the builtin instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dilation::suites::{bar_suite, collapse_check, frac_suite, lim_suite, phi_verify};
use crate::dilation::Dilation;
use crate::ktheory_examples::ktheory_report;
use crate::monoid::{builtin_monoid, CommutativeMonoid};
use crate::report::{CheckRecord, Report};
use crate::ring::{
    parse_q, Action, DiagQ, Endomorphism, GeneratorAction, IdemEndo, IdemQ2, Leavitt, LeavittEndo, MatEndo,
    MatQ, Notation, PermutationEndo, SampleRing, Uhf, UhfEndo, UnitalRing,
};
use crate::skewring::relations::{arithmetic_suite, grading_suite, relation_suite, rewriting_suite, SuiteAction};
use crate::skewring::{transport, transport_suite, Elem, QuotientAction, SkewRing};

use super::expr::Expr;
use super::session::{Check, RingSpec, Session, Stmt};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 50;

/// The kernel check of `ktheory` always uses at least this many samples.
const KTHEORY_MIN_TRIALS: usize = 1000;

type TransportCheck = Box<dyn Fn(u64, usize) -> Vec<CheckRecord>>;

trait Engine {
    fn bind(&mut self, name: &str, expr: &Expr) -> Result<(), String>;
    fn show(&self, name: &str) -> Option<String>;
    fn check(&mut self, c: &Check, seed: u64, trials: usize) -> Vec<CheckRecord>;
    fn dilate(&mut self, seed: u64, trials: usize, report: &mut Report);
    fn quotient(&self) -> Result<Box<dyn Engine>, String>;
}

struct Ctx<A: SuiteAction> {
    skew: SkewRing<A>,
    vars: BTreeMap<String, Elem<A>>,
    dilation: Option<Result<Arc<Dilation<A>>, String>>,
    transport: Option<TransportCheck>,
}

impl<A: SuiteAction> Ctx<A> {
    fn new(action: Arc<A>) -> Result<Self, String> {
        let skew = SkewRing::new(action).map_err(|e| e.to_string())?;
        Ok(Ctx { skew, vars: BTreeMap::new(), dilation: None, transport: None })
    }
}

/// How an action is passed to its kernel quotient.
trait MakeQuotient: SuiteAction<Monoid = CommutativeMonoid> + Sized + 'static {
    fn quotient(ctx: &Ctx<Self>) -> Result<Box<dyn Engine>, String>;
}

impl<R, E> MakeQuotient for GeneratorAction<R, E>
where
    R: UnitalRing + SampleRing + Notation + 'static,
    E: Endomorphism<R> + 'static,
{
    fn quotient(ctx: &Ctx<Self>) -> Result<Box<dyn Engine>, String> {
        let inner = ctx.skew.action().clone();
        let q = Arc::new(QuotientAction::new(inner.clone()).map_err(|e| e.to_string())?);
        let mut out = Ctx::new(q.clone())?;
        for (k, v) in &ctx.vars {
            out.vars.insert(k.clone(), transport(&ctx.skew, &out.skew, v));
        }
        let from = SkewRing::new(inner).map_err(|e| e.to_string())?;
        let to = SkewRing::new(q).map_err(|e| e.to_string())?;
        out.transport = Some(Box::new(move |seed, trials| transport_suite(&from, &to, seed, trials)));
        Ok(Box::new(out))
    }
}

impl<A> MakeQuotient for QuotientAction<A>
where
    A: Action<Monoid = CommutativeMonoid> + 'static,
    QuotientAction<A>: SuiteAction<Monoid = CommutativeMonoid>,
{
    fn quotient(_: &Ctx<Self>) -> Result<Box<dyn Engine>, String> {
        Err("the action is already quotiented".into())
    }
}

impl<A: MakeQuotient> Ctx<A> {
    fn eval(&self, e: &Expr) -> Result<Elem<A>, String> {
        let r = &self.skew;
        let m = r.monoid();
        let ring = r.ring();
        Ok(match e {
            Expr::Num(s) => {
                let c = parse_q(s).ok_or_else(|| format!("`{s}` is not a rational"))?;
                r.coeff(ring.scalar(&c).ok_or_else(|| format!("{} has no scalar {s}", ring.describe()))?)
            }
            Expr::Name(n, col) => match self.vars.get(n) {
                Some(x) => x.clone(),
                None => r.coeff(ring.parse_atom(n).map_err(|e| format!("column {col}: {e}"))?),
            },
            Expr::Sm(c, col) => {
                let s = m.elem(c).map_err(|e| format!("column {col}: {e}"))?;
                r.sm(s).map_err(|e| format!("column {col}: {e}"))?
            }
            Expr::Sp(c, col) => r.sp(m.elem(c).map_err(|e| format!("column {col}: {e}"))?),
            Expr::Neg(a) => r.neg(&self.eval(a)?),
            Expr::Add(a, b) => r.add(&self.eval(a)?, &self.eval(b)?),
            Expr::Sub(a, b) => r.sub(&self.eval(a)?, &self.eval(b)?),
            Expr::Mul(a, b) => r.mul(&self.eval(a)?, &self.eval(b)?),
        })
    }

    fn dilation(&mut self) -> Result<Arc<Dilation<A>>, String> {
        if self.dilation.is_none() {
            let d = Dilation::new(self.skew.action().clone()).map(Arc::new).map_err(|e| e.to_string());
            self.dilation = Some(d);
        }
        self.dilation.clone().expect("just set")
    }

    fn var(&self, name: &str) -> Result<&Elem<A>, String> {
        self.vars.get(name).ok_or_else(|| format!("`{name}` has no value (its `let` failed)"))
    }

    fn decide(&self, c: &Check) -> Result<bool, String> {
        let r = &self.skew;
        let res = match c {
            Check::Zero(x) => r.is_zero(self.var(x)?),
            Check::Nonzero(x) => r.is_zero(self.var(x)?).map(|z| !z),
            Check::Equal(x, y) => r.equal(self.var(x)?, self.var(y)?),
            _ => unreachable!("only element checks are decided here"),
        };
        res.map_err(|e| e.to_string())
    }
}

impl<A: MakeQuotient> Engine for Ctx<A> {
    fn bind(&mut self, name: &str, expr: &Expr) -> Result<(), String> {
        let v = self.eval(expr);
        match v {
            Ok(v) => {
                self.vars.insert(name.to_string(), v);
                Ok(())
            }
            Err(e) => {
                self.vars.remove(name);
                Err(e)
            }
        }
    }

    fn show(&self, name: &str) -> Option<String> {
        self.vars.get(name).map(|x| self.skew.format(x))
    }

    fn check(&mut self, c: &Check, seed: u64, trials: usize) -> Vec<CheckRecord> {
        let r = &self.skew;
        let suite = |f: fn(&Dilation<A>, u64, usize) -> Vec<CheckRecord>, this: &mut Self| match this.dilation() {
            Ok(d) => f(&d, seed, trials),
            Err(e) => vec![CheckRecord::failed_with("dilation", "S₋AS₊ → S⁻¹(S₋AS₊)", e)],
        };
        match c {
            Check::Relations => relation_suite(r, seed, trials),
            Check::Rewriting => rewriting_suite(r, seed, trials),
            Check::Grading => grading_suite(r, seed, trials),
            Check::Arithmetic => arithmetic_suite(r, seed, trials),
            Check::Limit => suite(lim_suite, self),
            Check::Bar => suite(bar_suite, self),
            Check::Fractions => suite(frac_suite, self),
            Check::Phi => suite(phi_verify, self),
            Check::Transport => match &self.transport {
                Some(t) => t(seed, trials),
                None => vec![CheckRecord::failed_with("transport", "π(x·y) = π(x)·π(y)", "no quotient in scope")],
            },
            Check::Zero(_) | Check::Nonzero(_) | Check::Equal(..) => {
                let (name, anchor) = match c {
                    Check::Zero(x) => (format!("zero {x}"), format!("{x} = 0")),
                    Check::Nonzero(x) => (format!("nonzero {x}"), format!("{x} ≠ 0")),
                    Check::Equal(x, y) => (format!("equal {x} {y}"), format!("{x} = {y}")),
                    _ => unreachable!(),
                };
                let mut rec = CheckRecord::new(name, anchor);
                match self.decide(c) {
                    Ok(ok) => rec.record(ok, || "the identity does not hold".into()),
                    Err(e) => rec.error = Some(e),
                }
                vec![rec]
            }
        }
    }

    fn dilate(&mut self, seed: u64, trials: usize, report: &mut Report) {
        let d = match self.dilation() {
            Ok(d) => d,
            Err(e) => {
                report.check(CheckRecord::failed_with("dilation", "S₋AS₊ → S⁻¹(S₋AS₊)", e));
                return;
            }
        };
        let quotiented = self.transport.is_some();
        let stages = if quotiented {
            "A/I → S₋(A/I)S₊ → S⁻¹(S₋(A/I)S₊) → e·(S⁻¹(S₋(A/I)S₊) ∗ G)·e"
        } else {
            "S₋AS₊ → S⁻¹(S₋AS₊) → e·(S⁻¹(S₋AS₊) ∗ G)·e"
        };
        report.value("dilate stages", stages);
        report.value("dilate e", d.frac().format(&d.e()));
        report.value("dilate unital", d.unital().to_string());
        match collapse_check(&d, seed, trials) {
            Ok(c) => {
                report.value("dilate collapsed", c.collapsed.to_string());
                if let Some(w) = c.witness {
                    report.value("dilate collapse witness", w);
                }
            }
            Err(e) => report.check(CheckRecord::failed_with("collapse", "[t,a] = [1,b]", e)),
        }
        report.checks(lim_suite(&d, seed, trials));
        report.checks(bar_suite(&d, seed, trials));
        report.checks(frac_suite(&d, seed, trials));
        report.checks(phi_verify(&d, seed, trials));
    }

    fn quotient(&self) -> Result<Box<dyn Engine>, String> {
        A::quotient(self)
    }
}

fn build<R, E>(m: CommutativeMonoid, ring: R, endos: Vec<E>) -> Result<Box<dyn Engine>, String>
where
    R: UnitalRing + SampleRing + Notation + 'static,
    E: Endomorphism<R> + 'static,
{
    Ok(Box::new(Ctx::new(Arc::new(GeneratorAction::new(m, ring, endos)))?))
}

fn engine(m: CommutativeMonoid, spec: RingSpec, names: &[String]) -> Result<Box<dyn Engine>, String> {
    let names: Vec<&str> = if names.len() == 1 {
        vec![names[0].as_str(); m.rank()]
    } else {
        names.iter().map(String::as_str).collect()
    };
    let e = |x: &str| format!("unknown action `{x}`");
    match spec {
        RingSpec::MatQ(k) => {
            let endos = names
                .iter()
                .map(|&n| match n {
                    "identity" => Ok(MatEndo::Identity),
                    "cyclic" => Ok(MatEndo::cyclic(k)),
                    x => Err(e(x)),
                })
                .collect::<Result<_, _>>()?;
            build(m, MatQ::new(k).map_err(|e| e.to_string())?, endos)
        }
        RingSpec::DiagQ(k) => {
            let endos = names
                .iter()
                .map(|&n| match n {
                    "identity" => Ok(PermutationEndo::identity(k)),
                    "swap" if k == 2 => Ok(PermutationEndo::swap()),
                    "cyclic" => Ok(PermutationEndo::cyclic(k)),
                    x => Err(e(x)),
                })
                .collect::<Result<_, _>>()?;
            build(m, DiagQ::new(k).map_err(|e| e.to_string())?, endos)
        }
        RingSpec::Uhf(n) => {
            let endos = names
                .iter()
                .map(|&x| match x {
                    "corner" => Ok(UhfEndo::Corner),
                    "identity" => Ok(UhfEndo::Identity),
                    x => Err(e(x)),
                })
                .collect::<Result<_, _>>()?;
            build(m, Uhf::new(n).map_err(|e| e.to_string())?, endos)
        }
        RingSpec::Leavitt(n) => {
            let endos = names
                .iter()
                .map(|&x| match x {
                    "diagonal" => Ok(LeavittEndo::Diagonal),
                    "identity" => Ok(LeavittEndo::Identity),
                    x => Err(e(x)),
                })
                .collect::<Result<_, _>>()?;
            build(m, Leavitt::new(n.into()).map_err(|e| e.to_string())?, endos)
        }
        RingSpec::IdemQ2 => {
            let endos = names
                .iter()
                .map(|&x| match x {
                    "collapse" => Ok(IdemEndo::Collapse),
                    "identity" => Ok(IdemEndo::Identity),
                    x => Err(e(x)),
                })
                .collect::<Result<_, _>>()?;
            build(m, IdemQ2, endos)
        }
    }
}

/// Runs every statement in order. Runtime failures (gates, bad atoms, refused
/// constructions) become failed records; the report is always complete.
pub fn run(session: &Session, seed: u64, trials: usize) -> Report {
    let mut report = Report::new(seed, trials);
    let mut monoid: Option<CommutativeMonoid> = None;
    let mut ring: Option<RingSpec> = None;
    let mut eng: Option<Box<dyn Engine>> = None;
    let mut context = String::new();
    for l in &session.lines {
        let at = |what: &str| format!("line {}: {what}", l.line);
        match &l.stmt {
            Stmt::Seed(_) | Stmt::Trials(_) | Stmt::Format(_) => {}
            Stmt::Monoid { name, params } => {
                monoid = builtin_monoid(name, params).ok();
                eng = None;
                context = format!("monoid {}", session_words(name, params));
            }
            Stmt::Ring(spec) => {
                ring = Some(*spec);
                eng = None;
            }
            Stmt::Action(names) => {
                let (Some(m), Some(spec)) = (monoid.clone(), ring) else {
                    report.check(CheckRecord::failed_with(at("action"), "", "no monoid or ring in scope"));
                    continue;
                };
                let label = format!("{context}; ring {}; action {}", spec.render(), names.join(" "));
                report.value("context", label);
                match engine(m, spec, names) {
                    Ok(e) => eng = Some(e),
                    Err(err) => {
                        eng = None;
                        report.check(CheckRecord::failed_with(at("action"), "", err));
                    }
                }
            }
            Stmt::Ktheory(n) => {
                if let Err(e) = ktheory_report(*n, seed, trials.max(KTHEORY_MIN_TRIALS), &mut report) {
                    report.check(CheckRecord::failed_with(format!("ktheory {n}"), "", e.to_string()));
                }
            }
            stmt => {
                let Some(e) = eng.as_mut() else {
                    report.check(CheckRecord::failed_with(at("statement"), "", "no usable action in scope"));
                    continue;
                };
                match stmt {
                    Stmt::Quotient => match e.quotient() {
                        Ok(q) => {
                            report.value("quotient", "A/I with I = ⋃ ker α_s");
                            eng = Some(q);
                        }
                        Err(err) => report.check(CheckRecord::failed_with(at("quotient"), "", err)),
                    },
                    Stmt::Let { name, expr, .. } => {
                        if let Err(err) = e.bind(name, expr) {
                            report.check(CheckRecord::failed_with(format!("let {name}"), "", err));
                        }
                    }
                    Stmt::Print(x) => match e.show(x) {
                        Some(v) => report.value(x.clone(), v),
                        None => report.check(CheckRecord::failed_with(format!("print {x}"), "", "no value")),
                    },
                    Stmt::Check(c) => report.checks(e.check(c, seed, trials)),
                    Stmt::Dilate => e.dilate(seed, trials, &mut report),
                    _ => unreachable!("handled above"),
                }
            }
        }
    }
    report
}

fn session_words(name: &str, params: &[u32]) -> String {
    let mut w = vec![name.to_string()];
    w.extend(params.iter().map(u32::to_string));
    w.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::session::parse_session;

    fn go(text: &str) -> Report {
        run(&parse_session(text).unwrap(), 1, 20)
    }

    #[test]
    fn gate_becomes_a_failed_record() {
        let rep = go("monoid nat\nring idemq2\naction collapse\nlet x = u2\ncheck zero x\n");
        assert!(!rep.all_passed());
        let f: Vec<_> = rep.records().filter(|r| !r.passed()).collect();
        assert_eq!(f.len(), 1);
        assert!(f[0].error.as_deref().unwrap().contains("kernel quotient"), "{:?}", f[0]);
    }

    #[test]
    fn quotient_decides_zero() {
        let rep = go("monoid nat\nring idemq2\naction collapse\nlet x = sm(1) * u2 * sp(3)\nquotient\ncheck zero x\n\
                      let y = u1 - 2\ncheck nonzero y\nlet z = u1 - 1\ncheck zero z\ncheck transport\n");
        assert!(rep.all_passed(), "{}", rep.render_text());
    }

    #[test]
    fn expressions_evaluate() {
        let rep = go("monoid nat\nring leavitt 2\naction diagonal\nlet x = sm(1) * y1*x2 * sp(2)\n\
                      let y = sm(1) * sp(1)\nlet one = 1\ncheck equal y one\ncheck nonzero x\nprint x\n");
        assert!(rep.all_passed(), "{}", rep.render_text());
        assert!(rep.render_text().contains("x = sm(1) * (y1*x2) * sp(2)"));
    }

    #[test]
    fn bad_atom_is_a_record() {
        let rep = go("monoid nat\nring matq 2\naction identity\nlet x = e13\n");
        let f: Vec<_> = rep.records().filter(|r| !r.passed()).collect();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].name, "let x");
    }

    #[test]
    fn ktheory_four() {
        let rep = go("ktheory 4\n");
        assert!(rep.all_passed());
        assert!(rep.render_structured().contains("value key=\"ktheory 4 cokernel\" value=\"Z/3\""));
    }
}
