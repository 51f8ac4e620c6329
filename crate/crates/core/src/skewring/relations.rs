//! Sampled verification of the defining relations, the `t₊s₋` rewriting
//! identities, the grading law and the ring axioms.
//!
//! In relations (1), (2), (2') one side pushes `a` past the generator factors
//! of `t` one at a time while the other uses `α_t` in one step, so they only
//! agree when the action really is a monoid homomorphism.

use super::{Elem, SkewError, SkewRing};
use crate::monoid::{canonical, fraction_mul, OreMonoid, SampleMonoid};
use crate::report::CheckRecord;
use crate::ring::{Action, Notation, Ring, SampleRing};
use crate::sampling::trial_rng;

/// Every action usable by the suites: sampled monoid, sampled and printable ring.
pub trait SuiteAction: Action<Monoid: SampleMonoid, Ring: SampleRing + Notation> {}

impl<A> SuiteAction for A where A: Action<Monoid: SampleMonoid, Ring: SampleRing + Notation> {}

/// Runs `body` once per trial, collecting failures and gate errors.
pub(crate) fn run_check<F>(name: &str, anchor: &str, seed: u64, trials: usize, salt: u64, mut body: F) -> CheckRecord
where
    F: FnMut(&mut crate::sampling::SampleRng) -> Result<Option<String>, String>,
{
    let mut rec = CheckRecord::new(name, anchor);
    for trial in 0..trials as u64 {
        let mut rng = trial_rng(seed ^ salt.rotate_left(17), trial);
        match body(&mut rng) {
            Ok(None) => rec.record(true, String::new),
            Ok(Some(cx)) => rec.record(false, || cx),
            Err(e) => {
                rec.error = Some(e);
                break;
            }
        }
    }
    rec
}

fn eq_or_report<A: SuiteAction>(
    r: &SkewRing<A>,
    lhs: &Elem<A>,
    rhs: &Elem<A>,
    context: impl FnOnce() -> String,
) -> Result<Option<String>, String> {
    match r.equal(lhs, rhs) {
        Ok(true) => Ok(None),
        Ok(false) => Ok(Some(format!("{}: lhs = {}, rhs = {}", context(), r.format(lhs), r.format(rhs)))),
        Err(e) => Err(e.to_string()),
    }
}

fn err(e: SkewError) -> String {
    e.to_string()
}

/// Relations (1), (2), (2'), (3), (4).
pub fn relation_suite<A: SuiteAction>(r: &SkewRing<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    let m = r.monoid();
    let ring = r.ring();
    let act = r.action();
    vec![
        run_check("relation (1)", "t₊·a = α_t(a)·t₊", seed, trials, 1, |rng| {
            let t = m.sample_numerator(rng);
            let a = ring.sample(rng);
            let lhs = r.sp_left(&t, &r.coeff(a.clone()));
            let rhs = r.mul(&r.coeff(act.apply(&t, &a)), &r.sp(t.clone()));
            eq_or_report(r, &lhs, &rhs, || format!("t = {}, a = {}", m.format_elem(&t), ring.format(&a)))
        }),
        run_check("relation (2)", "a·s₋ = s₋·α_s(a)", seed, trials, 2, |rng| {
            let s = m.sample_denominator(rng);
            let a = ring.sample(rng);
            let lhs = r.sm_right(&r.coeff(a.clone()), &s).map_err(err)?;
            let rhs = r.mul(&r.sm(s.clone()).map_err(err)?, &r.coeff(act.apply(&s, &a)));
            eq_or_report(r, &lhs, &rhs, || format!("s = {}, a = {}", m.format_elem(&s), ring.format(&a)))
        }),
        run_check("relation (2')", "s₊·a·s₋ = α_s(a)", seed, trials, 3, |rng| {
            let s = m.sample_denominator(rng);
            let a = ring.sample(rng);
            let lhs = r.conj_factored(&s, &r.coeff(a.clone())).map_err(err)?;
            let rhs = r.coeff(act.apply(&s, &a));
            eq_or_report(r, &lhs, &rhs, || format!("s = {}, a = {}", m.format_elem(&s), ring.format(&a)))
        }),
        run_check("relation (3)", "s₋·s₊ = 1", seed, trials, 4, |rng| {
            let s = m.sample_denominator(rng);
            let lhs = r.mul(&r.sm_factored(&s).map_err(err)?, &r.sp_factored(&s));
            eq_or_report(r, &lhs, &r.one(), || format!("s = {}", m.format_elem(&s)))
        }),
        run_check("relation (4)", "s₊·s₋ = p_s", seed, trials, 5, |rng| {
            let s = m.sample_denominator(rng);
            let lhs = r.mul(&r.sp_factored(&s), &r.sm_factored(&s).map_err(err)?);
            let rhs = r.coeff(act.idempotent(&s));
            eq_or_report(r, &lhs, &rhs, || format!("s = {}", m.format_elem(&s)))
        }),
    ]
}

/// `t₊s₋ = ŝ₋t̂₊p_s` and `s₊t₋ = p_s t̂₋ŝ₊` for `ŝt = t̂s`, with `s, t ∈ S`.
pub fn rewriting_suite<A: SuiteAction>(r: &SkewRing<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    let m = r.monoid();
    let act = r.action();
    let ctx = |s: &_, t: &_| format!("s = {}, t = {}", m.format_elem(s), m.format_elem(t));
    vec![
        run_check("rewrite t₊s₋", "t₊·s₋ = ŝ₋·t̂₊·p_s", seed, trials, 11, |rng| {
            let s = m.sample_denominator(rng);
            let t = m.sample_denominator(rng);
            let (sh, th) = r.ore(&s, &t).map_err(err)?;
            let lhs = r.mul(&r.sp_factored(&t), &r.sm_factored(&s).map_err(err)?);
            let rhs = r.mul(
                &r.mul(&r.sm_factored(&sh).map_err(err)?, &r.sp_factored(&th)),
                &r.coeff(act.idempotent(&s)),
            );
            eq_or_report(r, &lhs, &rhs, || ctx(&s, &t))
        }),
        run_check("rewrite s₊t₋", "s₊·t₋ = p_s·t̂₋·ŝ₊", seed, trials, 12, |rng| {
            let s = m.sample_denominator(rng);
            let t = m.sample_denominator(rng);
            let (sh, th) = r.ore(&s, &t).map_err(err)?;
            let lhs = r.mul(&r.sp_factored(&s), &r.sm_factored(&t).map_err(err)?);
            let rhs = r.mul(
                &r.coeff(act.idempotent(&s)),
                &r.mul(&r.sm_factored(&th).map_err(err)?, &r.sp_factored(&sh)),
            );
            eq_or_report(r, &lhs, &rhs, || ctx(&s, &t))
        }),
    ]
}

/// `deg(xy) = deg(x)·deg(y)` for homogeneous `x, y`, and merging of equal degrees.
pub fn grading_suite<A: SuiteAction>(r: &SkewRing<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    let m = r.monoid();
    vec![
        run_check("grading law", "deg(x·y) = deg(x)·deg(y)", seed, trials, 21, |rng| {
            let u = r.sample_term(rng);
            let v = r.sample_term(rng);
            let p = r.term_mul(&u, &v);
            let expect = fraction_mul(m, &r.degree(&u.s, &u.t), &r.degree(&v.s, &v.t)).map_err(|e| e.to_string())?;
            let expect = canonical(m, &expect);
            let ok = match r.grade(&p).as_slice() {
                [] => true,
                [(d, _)] => *d == expect,
                _ => false,
            };
            Ok((!ok).then(|| format!("x = {}, y = {}, xy = {}", r.format_term(&u), r.format_term(&v), r.format(&p))))
        }),
        run_check("degree merge", "s₋at₊ + (us)₋b(ut)₊ is homogeneous", seed, trials, 22, |rng| {
            let u = r.sample_term(rng);
            let k = m.sample_denominator(rng);
            let b = r.ring().sample(rng);
            let lifted = r.term(m.mul(&k, &u.s), b, m.mul(&k, &u.t)).map_err(err)?;
            let sum = r.add(&r.term_elem(&u), &lifted);
            let deg = r.degree(&u.s, &u.t);
            let ok = sum.len() <= 1 && sum.terms().all(|(d, _)| *d == deg);
            Ok((!ok).then(|| format!("x = {}, sum = {}", r.format_term(&u), r.format(&sum))))
        }),
        run_check("witness independence", "term_mul with (kŵ, kt̂) agrees", seed, trials, 23, |rng| {
            let u = r.sample_term(rng);
            let v = r.sample_term(rng);
            let (w, th) = r.ore(&v.s, &u.t).map_err(err)?;
            let k = m.sample_denominator(rng);
            let other = r.term_mul_with(&u, &v, &m.mul(&k, &w), &m.mul(&k, &th)).map_err(err)?;
            eq_or_report(r, &r.term_mul(&u, &v), &other, || {
                format!("x = {}, y = {}, k = {}", r.format_term(&u), r.format_term(&v), m.format_elem(&k))
            })
        }),
    ]
}

/// Associativity, distributivity and the unit on sampled triples.
pub fn arithmetic_suite<A: SuiteAction>(r: &SkewRing<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    vec![
        run_check("associativity", "(xy)z = x(yz)", seed, trials, 31, |rng| {
            let (x, y, z) = (r.sample(rng), r.sample(rng), r.sample(rng));
            let lhs = r.mul(&r.mul(&x, &y), &z);
            let rhs = r.mul(&x, &r.mul(&y, &z));
            eq_or_report(r, &lhs, &rhs, || format!("x = {}, y = {}, z = {}", r.format(&x), r.format(&y), r.format(&z)))
        }),
        run_check("distributivity", "x(y+z) = xy + xz, (x+y)z = xz + yz", seed, trials, 32, |rng| {
            let (x, y, z) = (r.sample(rng), r.sample(rng), r.sample(rng));
            let l1 = r.mul(&x, &r.add(&y, &z));
            let r1 = r.add(&r.mul(&x, &y), &r.mul(&x, &z));
            let l2 = r.mul(&r.add(&x, &y), &z);
            let r2 = r.add(&r.mul(&x, &z), &r.mul(&y, &z));
            let ctx = || format!("x = {}, y = {}, z = {}", r.format(&x), r.format(&y), r.format(&z));
            match eq_or_report(r, &l1, &r1, ctx)? {
                Some(cx) => Ok(Some(cx)),
                None => eq_or_report(r, &l2, &r2, || format!("right law, x = {}", r.format(&x))),
            }
        }),
        run_check("unit", "1·x = x = x·1", seed, trials, 33, |rng| {
            let x = r.sample(rng);
            let one = r.one();
            match eq_or_report(r, &r.mul(&one, &x), &x, || format!("x = {}", r.format(&x)))? {
                Some(cx) => Ok(Some(cx)),
                None => eq_or_report(r, &r.mul(&x, &one), &x, || format!("x = {}", r.format(&x))),
            }
        }),
        run_check("zero criterion", "s₋at₊ = 0 iff p_s·a·p_t = 0", seed, trials, 34, |rng| {
            let m = r.monoid();
            let ring = r.ring();
            let (s, t, a) = (m.sample_denominator(rng), m.sample_numerator(rng), ring.sample(rng));
            let x = r.term(s.clone(), a.clone(), t.clone()).map_err(err)?;
            let pa = ring.mul(&ring.mul(&r.action().idempotent(&s), &a), &r.action().idempotent(&t));
            let zero = r.is_zero(&x).map_err(err)?;
            Ok((zero != ring.is_zero(&pa)).then(|| format!("term = {}", r.format(&x))))
        }),
    ]
}
