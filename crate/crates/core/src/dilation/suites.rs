//! Sampled checks for each stage of the dilation.

use crate::monoid::{Fraction, OreMonoid, SampleMonoid};
use crate::report::CheckRecord;
use crate::ring::{Action, Notation, Ring, SampleRing, UnitalRing};
use crate::sampling::SampleRng;
use crate::skewring::relations::{run_check, SuiteAction};

use super::fraction::FracOf;
use super::limit::{BarAction, LimOf};
use super::pipeline::Dilation;

fn lim_lift<A: SuiteAction>(d: &Dilation<A>, x: &LimOf<A>, u: &crate::ring::MonoidElem<A>) -> LimOf<A> {
    let act = d.skew().action();
    super::LimElem { t: act.monoid().mul(u, &x.t), a: act.apply(u, &x.a) }
}

fn frac_lift<A: SuiteAction>(
    d: &Dilation<A>,
    x: &FracOf<BarAction<A>>,
    u: &crate::ring::MonoidElem<A>,
) -> FracOf<BarAction<A>> {
    super::FracElem { s: d.skew().monoid().mul(u, &x.s), a: d.bar().apply(u, &x.a) }
}

fn group_sample<A: SuiteAction>(d: &Dilation<A>, rng: &mut SampleRng) -> Fraction<crate::ring::MonoidElem<A>> {
    let m = d.skew().monoid();
    Fraction::new(m.sample_denominator(rng), m.sample_denominator(rng))
}

fn fail(ok: bool, cx: impl FnOnce() -> String) -> Result<Option<String>, String> {
    Ok((!ok).then(cx))
}

/// Equivalence and well-definedness in `S₋AS₊`.
pub fn lim_suite<A: SuiteAction>(d: &Dilation<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    let lim = d.lim();
    let m = d.skew().monoid();
    vec![
        run_check("lim_eq equivalence", "[t,a] = [ut, α_u(a)], symmetric, transitive", seed, trials, 41, |rng| {
            let x = lim.sample(rng);
            let y = lim.sample(rng);
            let x1 = lim_lift(d, &x, &m.sample_denominator(rng));
            let x2 = lim_lift(d, &x1, &m.sample_denominator(rng));
            let ok = lim.equal(&x, &x)
                && lim.equal(&x, &x1)
                && lim.equal(&x1, &x)
                && lim.equal(&x1, &x2)
                && lim.equal(&x, &x2)
                && lim.equal(&x, &y) == lim.equal(&y, &x);
            fail(ok, || format!("x = {}, y = {}", lim.format(&x), lim.format(&y)))
        }),
        run_check("lim arithmetic well-defined", "x ~ x', y ~ y' ⟹ xy ~ x'y', x+y ~ x'+y'", seed, trials, 42, |rng| {
            let x = lim.sample(rng);
            let y = lim.sample(rng);
            let x1 = lim_lift(d, &x, &m.sample_denominator(rng));
            let y1 = lim_lift(d, &y, &m.sample_denominator(rng));
            let ok = lim.equal(&lim.mul(&x, &y), &lim.mul(&x1, &y1)) && lim.equal(&lim.add(&x, &y), &lim.add(&x1, &y1));
            fail(ok, || format!("x = {}, y = {}", lim.format(&x), lim.format(&y)))
        }),
        run_check("lim ring laws", "(xy)z = x(yz), x(y+z) = xy+xz", seed, trials, 43, |rng| {
            let (x, y, z) = (lim.sample(rng), lim.sample(rng), lim.sample(rng));
            let ok = lim.equal(&lim.mul(&lim.mul(&x, &y), &z), &lim.mul(&x, &lim.mul(&y, &z)))
                && lim.equal(&lim.mul(&x, &lim.add(&y, &z)), &lim.add(&lim.mul(&x, &y), &lim.mul(&x, &z)));
            fail(ok, || format!("x = {}, y = {}, z = {}", lim.format(&x), lim.format(&y), lim.format(&z)))
        }),
    ]
}

/// The extended action `ᾱ` on `S₋AS₊`.
pub fn bar_suite<A: SuiteAction>(d: &Dilation<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    let lim = d.lim();
    let bar = d.bar();
    let m = d.skew().monoid();
    let mut out = vec![
        run_check("ᾱ monoid law", "ᾱ_{st} = ᾱ_s∘ᾱ_t, ᾱ_1 = id", seed, trials, 51, |rng| {
            let (s, t) = (m.sample_denominator(rng), m.sample_denominator(rng));
            let x = lim.sample(rng);
            let ok = lim.equal(&bar.apply(&m.mul(&s, &t), &x), &bar.apply(&s, &bar.apply(&t, &x)))
                && lim.equal(&bar.apply(&m.identity(), &x), &x);
            fail(ok, || format!("s = {}, t = {}, x = {}", m.format_elem(&s), m.format_elem(&t), lim.format(&x)))
        }),
        run_check("ᾱ homomorphism", "ᾱ_s(xy) = ᾱ_s(x)ᾱ_s(y), ᾱ_s(x+y) = ᾱ_s(x)+ᾱ_s(y)", seed, trials, 52, |rng| {
            let s = m.sample_denominator(rng);
            let (x, y) = (lim.sample(rng), lim.sample(rng));
            let (fx, fy) = (bar.apply(&s, &x), bar.apply(&s, &y));
            let ok = lim.equal(&bar.apply(&s, &lim.mul(&x, &y)), &lim.mul(&fx, &fy))
                && lim.equal(&bar.apply(&s, &lim.add(&x, &y)), &lim.add(&fx, &fy));
            fail(ok, || format!("s = {}, x = {}, y = {}", m.format_elem(&s), lim.format(&x), lim.format(&y)))
        }),
        run_check("ᾱ injective", "ᾱ_s⁻¹(ᾱ_s(x)) = x", seed, trials, 53, |rng| {
            let s = m.sample_denominator(rng);
            let x = lim.sample(rng);
            let fx = bar.apply(&s, &x);
            let back = bar.preimage(&s, &fx).map_err(|e| e.to_string())?;
            let ok = back.is_some_and(|b| lim.equal(&b, &x)) && (lim.is_zero(&fx) == lim.is_zero(&x));
            fail(ok, || format!("s = {}, x = {}", m.format_elem(&s), lim.format(&x)))
        }),
        run_check("ᾱ image ⊆ corner", "p̄_s·ᾱ_s(x)·p̄_s = ᾱ_s(x)", seed, trials, 54, |rng| {
            let s = m.sample_denominator(rng);
            let x = lim.sample(rng);
            let p = bar.idempotent(&s);
            let fx = bar.apply(&s, &x);
            fail(lim.equal(&lim.mul(&lim.mul(&p, &fx), &p), &fx), || {
                format!("s = {}, x = {}", m.format_elem(&s), lim.format(&x))
            })
        }),
        run_check("ᾱ image ⊇ corner", "p̄_s·y·p̄_s = ᾱ_s([s·t_y, a_y])", seed, trials, 55, |rng| {
            let s = m.sample_denominator(rng);
            let y = lim.sample(rng);
            let p = bar.idempotent(&s);
            let z = lim.mul(&lim.mul(&p, &y), &p);
            let pre = bar.preimage(&s, &z).map_err(|e| e.to_string())?;
            let ok = pre.is_some_and(|w| lim.equal(&bar.apply(&s, &w), &z));
            fail(ok, || format!("s = {}, y = {}", m.format_elem(&s), lim.format(&y)))
        }),
    ];
    if d.unital() {
        out.push(run_check("ᾱ bijective", "every y has an explicit ᾱ_s-preimage", seed, trials, 56, |rng| {
            let s = m.sample_denominator(rng);
            let y = lim.sample(rng);
            let pre = bar.preimage(&s, &y).map_err(|e| e.to_string())?;
            let ok = pre.is_some_and(|w| lim.equal(&bar.apply(&s, &w), &y));
            fail(ok, || format!("s = {}, y = {}", m.format_elem(&s), lim.format(&y)))
        }));
    }
    out
}

/// Outcome of looking for level-zero representatives in `S₋AS₊`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub collapsed: bool,
    pub checked: usize,
    /// A sampled class with no level-zero representative.
    pub witness: Option<String>,
}

/// Whether every sampled `[t, a]` equals some `[1, b]`.
pub fn collapse_check<A: SuiteAction>(d: &Dilation<A>, seed: u64, trials: usize) -> Result<Collapse, String> {
    let lim = d.lim();
    let rec = run_check("collapse", "[t,a] = [1,b]", seed, trials, 61, |rng| {
        let x = lim.sample(rng);
        let b = lim.level_zero(&x).map_err(|e| e.to_string())?;
        fail(b.is_some(), || lim.format(&x))
    });
    if let Some(e) = rec.error {
        return Err(e);
    }
    Ok(Collapse { collapsed: rec.failures == 0, checked: rec.trials, witness: rec.counterexample })
}

/// The ring `S⁻¹(S₋AS₊)`, the automorphisms `α̂` and the idempotent `e`.
pub fn frac_suite<A: SuiteAction>(d: &Dilation<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    let f = d.frac();
    let m = d.skew().monoid();
    let bar = d.bar();
    let e = d.e();
    vec![
        run_check("frac_eq equivalence", "[s,a] = [us, ᾱ_u(a)], symmetric, transitive", seed, trials, 71, |rng| {
            let x = f.sample(rng);
            let y = f.sample(rng);
            let x1 = frac_lift(d, &x, &m.sample_denominator(rng));
            let x2 = frac_lift(d, &x1, &m.sample_denominator(rng));
            let ok = f.equal(&x, &x)
                && f.equal(&x, &x1)
                && f.equal(&x1, &x)
                && f.equal(&x1, &x2)
                && f.equal(&x, &x2)
                && f.equal(&x, &y) == f.equal(&y, &x);
            fail(ok, || format!("x = {}, y = {}", f.format(&x), f.format(&y)))
        }),
        run_check("frac arithmetic well-defined", "x ~ x', y ~ y' ⟹ xy ~ x'y', x+y ~ x'+y'", seed, trials, 72, |rng| {
            let (x, y) = (f.sample(rng), f.sample(rng));
            let x1 = frac_lift(d, &x, &m.sample_denominator(rng));
            let y1 = frac_lift(d, &y, &m.sample_denominator(rng));
            let ok = f.equal(&f.mul(&x, &y), &f.mul(&x1, &y1)) && f.equal(&f.add(&x, &y), &f.add(&x1, &y1));
            fail(ok, || format!("x = {}, y = {}", f.format(&x), f.format(&y)))
        }),
        run_check("α̂ inverse", "α̂_s∘α̂_s⁻¹ = id = α̂_s⁻¹∘α̂_s", seed, trials, 73, |rng| {
            let s = m.sample_denominator(rng);
            let x = f.sample(rng);
            let ok = f.equal(&f.hat_alpha(&s, &f.hat_alpha_inv(&s, &x)), &x)
                && f.equal(&f.hat_alpha_inv(&s, &f.hat_alpha(&s, &x)), &x);
            fail(ok, || format!("s = {}, x = {}", m.format_elem(&s), f.format(&x)))
        }),
        run_check("α̂ ring automorphism", "α̂_s(xy) = α̂_s(x)α̂_s(y), α̂_s(x+y) = α̂_s(x)+α̂_s(y)", seed, trials, 74, |rng| {
            let s = m.sample_denominator(rng);
            let (x, y) = (f.sample(rng), f.sample(rng));
            let (fx, fy) = (f.hat_alpha(&s, &x), f.hat_alpha(&s, &y));
            let ok = f.equal(&f.hat_alpha(&s, &f.mul(&x, &y)), &f.mul(&fx, &fy))
                && f.equal(&f.hat_alpha(&s, &f.add(&x, &y)), &f.add(&fx, &fy));
            fail(ok, || format!("s = {}, x = {}, y = {}", m.format_elem(&s), f.format(&x), f.format(&y)))
        }),
        run_check("α̂ group law", "α̂_{gh} = α̂_g∘α̂_h", seed, trials, 75, |rng| {
            let (g, h) = (group_sample(d, rng), group_sample(d, rng));
            let x = f.sample(rng);
            let gh = crate::monoid::fraction_mul(m, &g, &h).map_err(|e| e.to_string())?;
            let ok = f.equal(&f.hat_alpha_group(&gh, &x), &f.hat_alpha_group(&g, &f.hat_alpha_group(&h, &x)));
            fail(ok, || format!("g = {g:?}, h = {h:?}, x = {}", f.format(&x)))
        }),
        run_check("α̂ representative independence", "α̂_{s⁻¹t} = α̂_{(us)⁻¹(ut)}", seed, trials, 76, |rng| {
            let g = group_sample(d, rng);
            let u = m.sample_denominator(rng);
            let g2 = Fraction::new(m.mul(&u, &g.den), m.mul(&u, &g.num));
            let x = f.sample(rng);
            fail(f.equal(&f.hat_alpha_group(&g, &x), &f.hat_alpha_group(&g2, &x)), || {
                format!("g = {g:?}, u = {}, x = {}", m.format_elem(&u), f.format(&x))
            })
        }),
        run_check("S-equivariant embedding", "α̂_s([1,b]) = [1, ᾱ_s(b)]", seed, trials, 77, |rng| {
            let s = m.sample_denominator(rng);
            let b = d.lim().sample(rng);
            fail(f.equal(&f.hat_alpha(&s, &f.embed(&b)), &f.embed(&bar.apply(&s, &b))), || {
                format!("s = {}, b = {}", m.format_elem(&s), d.lim().format(&b))
            })
        }),
        run_check("e idempotent", "e·e = e", seed, 1, 78, |_| fail(f.equal(&f.mul(&e, &e), &e), || f.format(&e))),
        run_check("α̂_s(e) ≤ e", "e·α̂_s(e) = α̂_s(e) = α̂_s(e)·e", seed, trials, 79, |rng| {
            let s = m.sample_denominator(rng);
            let es = f.hat_alpha(&s, &e);
            let ok = f.equal(&f.mul(&e, &es), &es) && f.equal(&f.mul(&es, &e), &es);
            fail(ok, || format!("s = {}", m.format_elem(&s)))
        }),
        run_check("corner is the embedded copy", "e·y·e = [1,b] for some b", seed, trials, 80, |rng| {
            let y = f.sample(rng);
            let z = f.mul(&f.mul(&e, &y), &e);
            let ok = f.level_zero(&z).is_some_and(|b| {
                let x = f.embed(&b);
                f.equal(&f.mul(&f.mul(&e, &x), &e), &x)
            });
            fail(ok, || format!("y = {}", f.format(&y)))
        }),
    ]
}

/// `Φ` is an injective graded homomorphism onto the corner, certified by `Ψ`.
pub fn phi_verify<A: SuiteAction>(d: &Dilation<A>, seed: u64, trials: usize) -> Vec<CheckRecord> {
    let r = d.skew();
    let g = d.group();
    let f = d.frac();
    let m = r.monoid();
    let mut out = vec![
        run_check("Φ additive", "Φ(x+y) = Φ(x)+Φ(y)", seed, trials, 81, |rng| {
            let (x, y) = (r.sample(rng), r.sample(rng));
            fail(g.equal(&d.phi(&r.add(&x, &y)), &g.add(&d.phi(&x), &d.phi(&y))), || {
                format!("x = {}, y = {}", r.format(&x), r.format(&y))
            })
        }),
        run_check("Φ multiplicative", "Φ(xy) = Φ(x)Φ(y)", seed, trials, 82, |rng| {
            let (x, y) = (r.sample(rng), r.sample(rng));
            fail(g.equal(&d.phi(&r.mul(&x, &y)), &g.mul(&d.phi(&x), &d.phi(&y))), || {
                format!("x = {}, y = {}", r.format(&x), r.format(&y))
            })
        }),
        run_check("Φ graded", "Φ(R_x) ⊆ (S⁻¹B)·u_x", seed, trials, 83, |rng| {
            let x = r.sample_term(rng);
            let deg = r.degree(&x.s, &x.t);
            let img = d.phi_term(&x);
            let ok = img.terms().all(|(k, _)| *k == deg);
            fail(ok, || format!("x = {}", r.format_term(&x)))
        }),
        run_check("Φ zero-faithful", "Φ(x) = 0 ⟺ x = 0", seed, trials, 84, |rng| {
            let x = r.sample(rng);
            // the same element with every term rewritten over a larger denominator
            let mut x1 = r.zero();
            for (_, t) in x.terms() {
                let u = m.sample_denominator(rng);
                x1 = r.add(&x1, &r.term_elem(&r.lift(t, &u)));
            }
            let z = r.sub(&x, &x1);
            let zx = r.is_zero(&x).map_err(|e| e.to_string())?;
            let zz = r.is_zero(&z).map_err(|e| e.to_string())?;
            let ok = zz && g.is_zero(&d.phi(&z)) && zx == g.is_zero(&d.phi(&x));
            fail(ok, || format!("x = {}", r.format(&x)))
        }),
        run_check("Φ lands in the corner", "e·Φ(x)·e = Φ(x)", seed, trials, 85, |rng| {
            let x = r.sample(rng);
            let y = d.phi(&x);
            fail(g.equal(&d.compress(&y), &y), || format!("x = {}", r.format(&x)))
        }),
        run_check("Ψ∘Φ = id", "Ψ(Φ(x)) = x", seed, trials, 86, |rng| {
            let x = r.sample(rng);
            let back = d.psi(&d.phi(&x)).map_err(|e| e.to_string())?;
            let ok = r.equal(&back, &x).map_err(|e| e.to_string())?;
            fail(ok, || format!("x = {}, Ψ(Φ(x)) = {}", r.format(&x), r.format(&back)))
        }),
        run_check("Φ∘Ψ = id on the corner", "Φ(Ψ(e·b·u_g·e)) = e·b·u_g·e", seed, trials, 87, |rng| {
            let key = group_sample(d, rng);
            let c = d.compress(&g.single(&key, f.sample(rng)));
            let x = d.psi(&c).map_err(|e| e.to_string())?;
            fail(g.equal(&d.phi(&x), &c), || format!("c = {}", g.format(&c)))
        }),
        run_check("Φ on generators", "Φ(s₋)Φ(s₊) = e, Φ(s₊)Φ(s₋) = Φ(p_s)", seed, trials, 88, |rng| {
            let s = m.sample_denominator(rng);
            let sm = d.phi(&r.sm(s.clone()).map_err(|e| e.to_string())?);
            let sp = d.phi(&r.sp(s.clone()));
            let ps = d.phi(&r.coeff(r.action().idempotent(&s)));
            let ok = g.equal(&g.mul(&sm, &sp), &d.e_group()) && g.equal(&g.mul(&sp, &sm), &ps);
            fail(ok, || format!("s = {}", m.format_elem(&s)))
        }),
    ];
    let e = d.e();
    if d.unital() {
        out.push(run_check("e = 1", "e·y = y = y·e", seed, trials, 89, |rng| {
            let y = f.sample(rng);
            fail(f.equal(&f.mul(&e, &y), &y) && f.equal(&f.mul(&y, &e), &y), || format!("y = {}", f.format(&y)))
        }));
    } else {
        // e·[s,1] = [s, p̄_s], which differs from [s,1] as soon as p_s ≠ 1
        let mut rec = CheckRecord::new("e ≠ 1", "e·[s,1] ≠ [s,1] for some s");
        let mut found = None;
        for trial in 0..trials.max(1) as u64 {
            let mut rng = crate::sampling::trial_rng(seed ^ 90, trial);
            let s = m.sample_denominator(&mut rng);
            let x = f.make(s.clone(), d.lim().one());
            if !f.equal(&f.mul(&e, &x), &x) {
                found = Some(m.format_elem(&s));
                break;
            }
        }
        rec.record(found.is_some(), || "no sampled s with p_s ≠ 1".into());
        if let Some(s) = found {
            rec.anchor = format!("e·[s,1] ≠ [s,1] at s = {s}");
        }
        out.push(rec);
    }
    out
}
