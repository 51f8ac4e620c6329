//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use skewdil::dilation::suites::{bar_suite, collapse_check, frac_suite, phi_verify};
use skewdil::dilation::Dilation;
use skewdil::ktheory_examples::{ktheory_report, pv_cokernel, pv_kernel, pv_map, LocalizedInt};
use skewdil::monoid::{CommutativeMonoid, NatVec};
use skewdil::report::{CheckRecord, Report};
use skewdil::ring::{
    q, Action, ActionFlags, DiagQ, GeneratorAction, IdemEndo, IdemQ2, Leavitt, LeavittElem, LeavittEndo,
    MatEndo, MatQ, Monomial, PermutationEndo, QMatrix, Ring, Uhf, UhfEndo, UnitalRing,
};
use skewdil::sampling::trial_rng;
use skewdil::skewring::relations::{grading_suite, relation_suite, rewriting_suite, SuiteAction};
use skewdil::skewring::{transport, transport_suite, QuotientAction, SkewRing};

const SEED: u64 = 0x5eed;

type Q = BigRational;

fn nat(k: u32) -> NatVec {
    NatVec(vec![k])
}

fn failures(label: &str, recs: &[CheckRecord]) -> Result<(), String> {
    let bad: Vec<String> = recs
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let why = r.error.clone().or_else(|| r.counterexample.clone()).unwrap_or_default();
            format!("{label}: {} ({}/{} failed) {why}", r.name, r.failures, r.trials)
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join("; "))
    }
}

fn require(recs: &[CheckRecord], name: &str) -> Result<(), String> {
    match recs.iter().find(|r| r.name == name) {
        Some(r) if r.passed() && r.trials > 0 => Ok(()),
        Some(r) => Err(format!("`{name}` did not pass: {r:?}")),
        None => Err(format!("`{name}` was not run")),
    }
}

fn skew<A: Action>(a: A) -> Result<SkewRing<A>, String> {
    SkewRing::new(Arc::new(a)).map_err(|e| e.to_string())
}

trait Visit {
    fn visit<A: SuiteAction>(&mut self, label: &str, r: &SkewRing<A>) -> Result<(), String>;
}

/// The six shipped instances over `ℕ`.
fn each_instance(v: &mut impl Visit) -> Result<(), String> {
    let m = CommutativeMonoid::nat;
    v.visit("identity on MatQ(2)", &skew(GeneratorAction::uniform(m(), MatQ::new(2).unwrap(), MatEndo::Identity))?)?;
    v.visit("DiagQ(2) swap", &skew(GeneratorAction::uniform(m(), DiagQ::new(2).unwrap(), PermutationEndo::swap()))?)?;
    v.visit("UHF(2) corner", &skew(GeneratorAction::uniform(m(), Uhf::new(2).unwrap(), UhfEndo::Corner))?)?;
    v.visit("Leavitt(2)", &skew(GeneratorAction::uniform(m(), Leavitt::new(2).unwrap(), LeavittEndo::Diagonal))?)?;
    v.visit("Leavitt(3)", &skew(GeneratorAction::uniform(m(), Leavitt::new(3).unwrap(), LeavittEndo::Diagonal))?)?;
    let idem = Arc::new(GeneratorAction::uniform(m(), IdemQ2, IdemEndo::Collapse));
    v.visit("IdemQ2 after quotient", &skew(QuotientAction::new(idem).map_err(|e| e.to_string())?)?)
}

/// Actions of `ℕ²` and of the diagonal `S ⊂ ℕ²`.
fn each_rank_two(v: &mut impl Visit) -> Result<(), String> {
    let m = || CommutativeMonoid::nat_k(2);
    v.visit(
        "MatQ(2) cyclic × identity",
        &skew(GeneratorAction::new(m(), MatQ::new(2).unwrap(), vec![MatEndo::cyclic(2), MatEndo::Identity]))?,
    )?;
    v.visit("DiagQ(2) swap × swap", &skew(GeneratorAction::uniform(m(), DiagQ::new(2).unwrap(), PermutationEndo::swap()))?)?;
    v.visit("UHF(2) corner × corner", &skew(GeneratorAction::uniform(m(), Uhf::new(2).unwrap(), UhfEndo::Corner))?)?;
    v.visit(
        "UHF(2) corner × identity",
        &skew(GeneratorAction::new(m(), Uhf::new(2).unwrap(), vec![UhfEndo::Corner, UhfEndo::Identity]))?,
    )?;
    v.visit("Leavitt(2) diagonal × diagonal", &skew(GeneratorAction::uniform(m(), Leavitt::new(2).unwrap(), LeavittEndo::Diagonal))?)?;
    v.visit(
        "Leavitt(3) diagonal × identity",
        &skew(GeneratorAction::new(m(), Leavitt::new(3).unwrap(), vec![LeavittEndo::Diagonal, LeavittEndo::Identity]))?,
    )?;
    let idem = Arc::new(GeneratorAction::uniform(m(), IdemQ2, IdemEndo::Collapse));
    v.visit("IdemQ2 collapse² after quotient", &skew(QuotientAction::new(idem).map_err(|e| e.to_string())?)?)?;
    v.visit(
        "MatQ(2) cyclic, S diagonal",
        &skew(GeneratorAction::uniform(CommutativeMonoid::diagonal_in_nat2(), MatQ::new(2).unwrap(), MatEndo::cyclic(2)))?,
    )
}

// every shipped instance through one suite
struct RunSuite {
    which: &'static str,
    trials: usize,
    instances: usize,
}

impl Visit for RunSuite {
    fn visit<A: SuiteAction>(&mut self, label: &str, r: &SkewRing<A>) -> Result<(), String> {
        let recs = match self.which {
            "relations" => relation_suite(r, SEED, self.trials),
            "rewriting" => rewriting_suite(r, SEED, self.trials),
            "grading" => grading_suite(r, SEED, self.trials),
            _ => unreachable!(),
        };
        if recs.iter().any(|x| x.trials != self.trials) {
            return Err(format!("{label}: a check stopped early"));
        }
        self.instances += 1;
        failures(label, &recs)
    }
}

/// `apply(t, ·)` conjugates by the swap for every `t ≠ 0`, so `α_1∘α_1 ≠ α_2`.
struct Corrupted {
    m: CommutativeMonoid,
    r: MatQ,
}

impl Action for Corrupted {
    type Monoid = CommutativeMonoid;
    type Ring = MatQ;

    fn monoid(&self) -> &CommutativeMonoid {
        &self.m
    }

    fn ring(&self) -> &MatQ {
        &self.r
    }

    fn apply(&self, t: &NatVec, a: &QMatrix) -> QMatrix {
        if t.0[0] == 0 {
            a.clone()
        } else {
            a.conjugate_by_permutation(&[1, 0])
        }
    }

    fn flags(&self) -> ActionFlags {
        ActionFlags { injective: true, unital: true, corner_iso: true }
    }
}

fn criterion_1() -> Result<String, String> {
    let mut s = RunSuite { which: "relations", trials: 200, instances: 0 };
    each_instance(&mut s)?;
    // negative control
    let bad = SkewRing::new(Arc::new(Corrupted { m: CommutativeMonoid::nat(), r: MatQ::new(2).unwrap() }))
        .map_err(|e| e.to_string())?;
    let recs = relation_suite(&bad, SEED, 200);
    if recs.iter().find(|r| r.name == "relation (1)").is_none_or(|r| r.passed()) {
        return Err("negative control: the corrupted action passed relation (1)".into());
    }
    Ok(format!("{} instances × 200 samples, corrupted control rejected", s.instances))
}

fn criterion_2() -> Result<String, String> {
    let mut s = RunSuite { which: "rewriting", trials: 100, instances: 0 };
    each_rank_two(&mut s)?;
    Ok(format!("{} actions of ℕ² / diagonal × 100 samples", s.instances))
}

fn criterion_3() -> Result<String, String> {
    let mut s = RunSuite { which: "grading", trials: 500, instances: 0 };
    each_instance(&mut s)?;
    Ok(format!("{} instances × 500 samples", s.instances))
}

// Laurent polynomials over Q as exponent -> coefficient, no zeros stored
type Laurent = BTreeMap<i64, Q>;

fn laurent_add(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(*k).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            out = laurent_add(&out, &BTreeMap::from([(i + j, x * y)]));
        }
    }
    out
}

fn criterion_4() -> Result<String, String> {
    let act = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), IdemQ2, IdemEndo::Collapse));
    let quot = Arc::new(QuotientAction::new(act.clone()).map_err(|e| e.to_string())?);
    let r = SkewRing::new(act).map_err(|e| e.to_string())?;
    let rq = SkewRing::new(quot).map_err(|e| e.to_string())?;
    failures("transport", &transport_suite(&r, &rq, SEED, 200))?;

    // s₋·(c, 0)·t₊ ↦ c·x^{t−s}
    let to_laurent = |x: &skewdil::skewring::Elem<QuotientAction<GeneratorAction<IdemQ2, IdemEndo>>>| {
        let mut out = Laurent::new();
        for (_, term) in x.terms() {
            let (c, d) = &term.a;
            assert!(d.is_zero(), "representatives are reduced");
            let k = term.t.0[0] as i64 - term.s.0[0] as i64;
            out = laurent_add(&out, &BTreeMap::from([(k, c.clone())]));
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    for trial in 0..200 {
        let mut rng = trial_rng(SEED, trial);
        let (x, y) = (r.sample(&mut rng), r.sample(&mut rng));
        let (tx, ty) = (transport(&r, &rq, &x), transport(&r, &rq, &y));
        let (lx, ly) = (to_laurent(&tx), to_laurent(&ty));
        if to_laurent(&rq.add(&tx, &ty)) != laurent_add(&lx, &ly) {
            return Err(format!("Laurent map not additive at {}", r.format(&x)));
        }
        if to_laurent(&rq.mul(&tx, &ty)) != laurent_mul(&lx, &ly) {
            return Err(format!("Laurent map not multiplicative at {} · {}", r.format(&x), r.format(&y)));
        }
        let zero = rq.is_zero(&tx).map_err(|e| e.to_string())?;
        if zero != lx.is_empty() {
            return Err(format!("Laurent map not injective at {}", rq.format(&tx)));
        }
    }
    // generators: x, x⁻¹ and the scalars are hit, and x·x⁻¹ = 1
    let x = rq.sp(nat(1));
    let xi = rq.sm(nat(1)).map_err(|e| e.to_string())?;
    let c = q(7);
    let gens = [
        (to_laurent(&x), BTreeMap::from([(1, Q::one())])),
        (to_laurent(&xi), BTreeMap::from([(-1, Q::one())])),
        (to_laurent(&rq.coeff((c.clone(), Q::zero()))), BTreeMap::from([(0, c)])),
        (to_laurent(&rq.mul(&x, &xi)), BTreeMap::from([(0, Q::one())])),
        (to_laurent(&rq.mul(&xi, &x)), BTreeMap::from([(0, Q::one())])),
    ];
    if gens.iter().any(|(a, b)| a != b) {
        return Err("Laurent generators are not matched".into());
    }
    Ok("transport exact on 200 samples; quotient ≅ Q[x, x⁻¹] on 200 samples".into())
}

/// `target ∈ span(vectors)` over Q, by elimination on sparse rows.
fn in_span(vectors: &[BTreeMap<Monomial, Q>], target: &BTreeMap<Monomial, Q>) -> bool {
    let mut basis: Vec<(Monomial, BTreeMap<Monomial, Q>)> = Vec::new();
    let reduce = |v: &mut BTreeMap<Monomial, Q>, basis: &[(Monomial, BTreeMap<Monomial, Q>)]| {
        for (pivot, row) in basis {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in row {
                    let e = v.entry(k.clone()).or_insert_with(Q::zero);
                    *e -= &c * x;
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
    };
    for vec in vectors {
        let mut v = vec.clone();
        v.retain(|_, x| !x.is_zero());
        reduce(&mut v, &basis);
        if let Some((p, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            for x in v.values_mut() {
                *x /= &c;
            }
            for (_, row) in basis.iter_mut() {
                if let Some(d) = row.get(&p).cloned() {
                    for (k, x) in &v {
                        let e = row.entry(k.clone()).or_insert_with(Q::zero);
                        *e -= &d * x;
                    }
                    row.retain(|_, x| !x.is_zero());
                }
            }
            basis.push((p, v));
        }
    }
    let mut t = target.clone();
    reduce(&mut t, &basis);
    t.is_empty()
}

fn words(n: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.iter().flat_map(|w| (1..=n).map(move |i| [w.clone(), vec![i]].concat())).collect();
    }
    out
}

fn criterion_5() -> Result<String, String> {
    let uhf = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Uhf::new(2).unwrap(), UhfEndo::Corner));
    let d = Dilation::new(uhf).map_err(|e| e.to_string())?;
    let c = collapse_check(&d, SEED, 100)?;
    if !c.collapsed || c.checked != 100 {
        return Err(format!("UHF(2) did not collapse: {c:?}"));
    }

    let ring = Leavitt::new(2).unwrap();
    let act = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), ring.clone(), LeavittEndo::Diagonal));
    let d = Dilation::new(act.clone()).map_err(|e| e.to_string())?;
    let a = ring.mul(&ring.y(1), &ring.x(2));
    // [1, a] = [0, b] iff a = α(b)
    if d.lim().level_zero(&d.lim().make(nat(1), &a)).map_err(|e| e.to_string())?.is_some() {
        return Err("the library found a level-0 representative of [1, y1x2]".into());
    }
    let as_map = |e: &LeavittElem| e.terms().map(|(m, c)| (m.clone(), c.clone())).collect::<BTreeMap<_, _>>();
    let mut images = Vec::new();
    for total in 0..=4 {
        for k in 0..=total {
            for yw in words(2, k) {
                for xw in words(2, total - k) {
                    let mut b = ring.one();
                    for &i in &yw {
                        b = ring.mul(&b, &ring.y(i));
                    }
                    for &i in &xw {
                        b = ring.mul(&b, &ring.x(i));
                    }
                    let img = (1..=2).fold(ring.zero(), |acc, i| {
                        ring.add(&acc, &ring.mul(&ring.mul(&ring.y(i), &b), &ring.x(i)))
                    });
                    if !ring.equal(&img, &act.apply(&nat(1), &b)) {
                        return Err("the diagonal endomorphism disagrees with Σ y_i b x_i".into());
                    }
                    images.push(as_map(&img));
                }
            }
        }
    }
    if in_span(&images, &as_map(&a)) {
        return Err("y1x2 lies in α(span of words of length ≤ 4)".into());
    }
    // sanity: the solver does find α(y1x2)
    if !in_span(&images, &as_map(&act.apply(&nat(1), &a))) {
        return Err("span solver missed α(y1x2)".into());
    }
    Ok(format!(
        "UHF(2): 100/100 level-0 representatives; Leavitt(2): y1x2 ∉ α(span of {} words, length ≤ 4)",
        images.len()
    ))
}

fn criterion_6() -> Result<String, String> {
    let uhf = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Uhf::new(2).unwrap(), UhfEndo::Corner));
    let recs = bar_suite(&Dilation::new(uhf).map_err(|e| e.to_string())?, SEED, 200);
    failures("UHF(2)", &recs)?;
    for n in ["ᾱ monoid law", "ᾱ injective", "ᾱ image ⊆ corner", "ᾱ image ⊇ corner"] {
        require(&recs, n)?;
    }
    let lv = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Leavitt::new(2).unwrap(), LeavittEndo::Diagonal));
    let recs = bar_suite(&Dilation::new(lv).map_err(|e| e.to_string())?, SEED, 200);
    failures("Leavitt(2)", &recs)?;
    require(&recs, "ᾱ bijective")?;
    Ok("UHF(2) and Leavitt(2), 200 samples; Leavitt(2) ᾱ_s bijective with explicit preimages".into())
}

fn criterion_7() -> Result<String, String> {
    let uhf = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Uhf::new(2).unwrap(), UhfEndo::Corner));
    let lv = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Leavitt::new(2).unwrap(), LeavittEndo::Diagonal));
    let a = frac_suite(&Dilation::new(uhf).map_err(|e| e.to_string())?, SEED, 300);
    let b = frac_suite(&Dilation::new(lv).map_err(|e| e.to_string())?, SEED, 300);
    failures("UHF(2)", &a)?;
    failures("Leavitt(2)", &b)?;
    for n in ["frac_eq equivalence", "frac arithmetic well-defined", "α̂ inverse", "α̂ group law", "e idempotent", "α̂_s(e) ≤ e"] {
        require(&a, n)?;
        require(&b, n)?;
    }
    Ok("UHF(2) and Leavitt(2), 300 samples".into())
}

fn criterion_8() -> Result<String, String> {
    let core = ["Φ additive", "Φ multiplicative", "Φ graded", "Φ zero-faithful"];
    let uhf = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Uhf::new(2).unwrap(), UhfEndo::Corner));
    let recs = phi_verify(&Dilation::new(uhf).map_err(|e| e.to_string())?, SEED, 200);
    failures("UHF(2)", &recs)?;
    for n in core.iter().chain(&["e ≠ 1"]) {
        require(&recs, n)?;
    }
    for k in [2, 3] {
        let lv = Arc::new(GeneratorAction::uniform(CommutativeMonoid::nat(), Leavitt::new(k).unwrap(), LeavittEndo::Diagonal));
        let recs = phi_verify(&Dilation::new(lv).map_err(|e| e.to_string())?, SEED, 200);
        failures(&format!("Leavitt({k})"), &recs)?;
        for n in core.iter().chain(&["e = 1"]) {
            require(&recs, n)?;
        }
    }
    Ok("UHF(2) e ≠ 1; Leavitt(2), Leavitt(3) e = 1; 200 samples each".into())
}

/// Least `r ≥ 0` with `(n−1) | (num − r·nᵏ)`.
fn brute_residue(n: u64, x: &LocalizedInt) -> u64 {
    let scale = BigInt::from(n).pow(x.exponent());
    (0..n - 1)
        .find(|&r| (x.numerator() - BigInt::from(r) * &scale).is_multiple_of(&BigInt::from(n - 1)))
        .expect("a residue exists")
}

fn criterion_9() -> Result<String, String> {
    for n in 2..=10u64 {
        let ker = pv_kernel(n).map_err(|e| e.to_string())?;
        let coker = pv_cokernel(n).map_err(|e| e.to_string())?;
        if !ker.group.is_trivial() || coker.group.order != n - 1 {
            return Err(format!("n = {n}: kernel {}, cokernel {}", ker.group, coker.group));
        }
        for t in 0..1000 {
            let x = LocalizedInt::sample(n, &mut trial_rng(SEED ^ n, t));
            let fx = pv_map(n, &x).map_err(|e| e.to_string())?;
            if !x.is_zero() && fx.is_zero() {
                return Err(format!("n = {n}: {x} ↦ 0"));
            }
            if coker.class(&x).map_err(|e| e.to_string())? != brute_residue(n, &x) {
                return Err(format!("n = {n}: class of {x} disagrees with the brute-force residue"));
            }
            if coker.class(&fx).map_err(|e| e.to_string())? != 0 {
                return Err(format!("n = {n}: (1−n)·{x} is not in the zero class"));
            }
        }
        let mut rep = Report::new(SEED, 200);
        ktheory_report(n, SEED, 200, &mut rep).map_err(|e| e.to_string())?;
        if !rep.all_passed() {
            return Err(rep.render_text());
        }
    }
    if !pv_cokernel(2).unwrap().group.is_trivial() {
        return Err("n = 2 cokernel is not trivial".into());
    }
    Ok("n = 2..10: kernel 0, cokernel Z/(n−1), n = 2 trivial; 1000 brute-force residues per n".into())
}

fn criterion_10() -> Result<String, String> {
    let session = concat!(env!("CARGO_MANIFEST_DIR"), "/sessions/full_suite.session");
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_skewdil"))
            .args(["--session", session, "--format", "structured", "--seed", "99"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (go()?, go()?);
    if !a.status.success() {
        return Err(format!("full suite failed: {}", String::from_utf8_lossy(&a.stdout)));
    }
    if a.stdout != b.stdout {
        return Err("two runs differ".into());
    }
    let lines = a.stdout.iter().filter(|&&c| c == b'\n').count();
    Ok(format!("two runs of the full suite, {lines} identical structured lines"))
}

type Criterion = (&'static str, fn() -> Result<String, String>, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("relation suite", criterion_1, Some(Duration::from_secs(10))),
        ("rewriting identities", criterion_2, None),
        ("grading", criterion_3, None),
        ("kernel quotient", criterion_4, None),
        ("dilation collapse", criterion_5, None),
        ("dilated action", criterion_6, None),
        ("fraction ring", criterion_7, None),
        ("main theorem pipeline", criterion_8, Some(Duration::from_secs(60))),
        ("K-theory", criterion_9, Some(Duration::from_secs(1))),
        ("determinism", criterion_10, None),
    ];
    let mut failed = 0;
    for (i, (title, f, bound)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = f();
        let took = start.elapsed();
        if let (Ok(_), Some(b)) = (&result, bound) {
            if took > *b {
                result = Err(format!("took {took:.2?}, bound {b:?}"));
            }
        }
        match result {
            Ok(msg) => println!("PASS {:>2} {title}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
