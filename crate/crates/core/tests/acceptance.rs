//! The ten acceptance criteria. Each prints one PASS/FAIL line; run with
//! `cargo test -p cobord --test acceptance -- --nocapture` to see them.

use std::time::{Duration, Instant};

use cobord::actions::{filtration_family, GroupDescriptor};
use cobord::bounds::{apply_functional, d_alpha, fixed_dim_lower_bound};
use cobord::equivariant::{p_class, p_expansion, to_a_basis, to_p_basis, verify_presentation_lemmas, MPoly, Var};
use cobord::lazard::IdealLevel;
use cobord::partitions::{partitions_of, Partition};
use cobord::verify::{all_witnesses, fgl_suite};
use cobord::{prime_power_base, Dim, Lazard, VarietyExpr, DEFAULT_TRUNCATION};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn group(p: u64, e: &[u32]) -> GroupDescriptor {
    GroupDescriptor::new(p, e.to_vec()).unwrap()
}

fn lazard() -> Lazard {
    Lazard::new(DEFAULT_TRUNCATION)
}

fn c_top(l: &Lazard, e: VarietyExpr) -> Result<BigInt, String> {
    let n = e.dimension().ok_or("no pure dimension")?;
    let z = l.evaluate(&e).map_err(|err| err.to_string())?;
    Ok(z.c_alpha(&Partition::single(n)))
}

fn criterion_1() -> Outcome {
    let l = lazard();
    for n in 1..=8u32 {
        for d in 1..=5i64 {
            let got = c_top(&l, VarietyExpr::Hyp(d as u32, n))?;
            let expect = BigInt::from(d) * (BigInt::from(d).pow(n) - n - 2);
            ensure(got == expect, || format!("Hyp({d},{n}): {got} != {expect}"))?;
        }
    }
    for n in 2..=5u32 {
        for m in 2..=n {
            let got = c_top(&l, VarietyExpr::Milnor(m, n))?;
            let expect = binom((m + n) as u64, m as u64);
            ensure(got == expect, || format!("H_{{{m},{n}}}: {got} != {expect}"))?;
        }
    }
    for n in 2..=9u32 {
        let got = c_top(&l, VarietyExpr::Milnor(0, n))?;
        ensure(got == BigInt::from(-(n as i64)), || format!("H_{{0,{n}}}: {got}"))?;
    }
    for c in 1..=3usize {
        for n in 1..=6u32 {
            for degrees in multisets(&[1, 2, 3], c) {
                let got = c_top(&l, VarietyExpr::CompInt(degrees.clone(), n))?;
                let prod: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
                let sum: BigInt = degrees.iter().map(|&d| BigInt::from(d).pow(n)).sum();
                let expect = prod * (sum - n - c as u32 - 1);
                ensure(got == expect, || format!("CI({degrees:?},{n}): {got} != {expect}"))?;
            }
        }
    }
    Ok(())
}

fn multisets(values: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        for mut rest in multisets(&values[i..], k - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let l = lazard();
    for i in 1..=10u32 {
        let (gen, _) = l.base_generator(i).map_err(|e| e.to_string())?;
        let c = gen.c_alpha(&Partition::single(i));
        let expect = prime_power_base(i as u64 + 1).unwrap_or(1);
        let gcd = (1..=(i as u64).div_ceil(2)).fold(BigInt::zero(), |g, j| g.gcd(&binom(i as u64 + 1, j)));
        ensure(c.magnitude() == &expect.into(), || format!("c_({i})(l_{i}) = {c}, expected +-{expect}"))?;
        ensure(c.magnitude() == gcd.magnitude(), || format!("c_({i})(l_{i}) = {c}, binomial gcd {gcd}"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let l = lazard();
    for (p, max_n) in [(2u64, 3u32), (3, 2)] {
        for n in 0..=max_n {
            let level = IdealLevel::Finite(n);
            for m in 0..(p.pow(n) - 1) as u32 {
                let u = l.u(p, m).ok_or("u_m beyond truncation")?;
                ensure(l.in_ipn(&u, p, level).unwrap(), || format!("u_{m} not in I_{p}({n})"))?;
            }
            let v = l.v(p, n).ok_or("v_n beyond truncation")?;
            ensure(!l.in_ipn(&v, p, level).unwrap(), || format!("v_{n} in I_{p}({n})"))?;
            if n >= 1 {
                ensure(v.is_indec_mod_p(p).unwrap(), || format!("v_{n} decomposable mod {p}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let l = lazard();
    for (p, s) in [(2u64, 0u32), (2, 1), (2, 2), (3, 0), (3, 1)] {
        let y = l
            .evaluate(&VarietyExpr::Hyp(p as u32, p.pow(s) as u32 - 1))
            .map_err(|e| e.to_string())?;
        ensure(l.in_ipn(&y, p, IdealLevel::Finite(s + 1)).unwrap(), || format!("Y_{s} (p={p}) not in I(s+1)"))?;
        ensure(!l.in_ipn(&y, p, IdealLevel::Finite(s)).unwrap(), || format!("Y_{s} (p={p}) in I(s)"))?;
        ensure(y.image().divisible_by(p), || format!("Y_{s} (p={p}) has a Chern number prime to p"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let l = lazard();
    let groups = [group(2, &[1]), group(2, &[2]), group(2, &[1, 1]), group(3, &[1])];
    for g in &groups {
        for w in all_witnesses(&l, g, 8).map_err(|e| e.to_string())? {
            let z = w.class(&l).map_err(|e| e.to_string())?;
            let bound = fixed_dim_lower_bound(&l, &z, g).map_err(|e| e.to_string())?.lower_bound;
            ensure(bound <= w.fixed_dim, || {
                format!("{g}: {} has bound {bound} > fixed dim {}", w.variety, w.fixed_dim)
            })?;
        }
        for d in 0..=8 / g.q() {
            for w in filtration_family(&l, d, g, 8).map_err(|e| e.to_string())? {
                let z = w.class(&l).map_err(|e| e.to_string())?;
                let bound = fixed_dim_lower_bound(&l, &z, g).map_err(|e| e.to_string())?.lower_bound;
                ensure(bound <= Dim::Finite(d) && bound <= w.fixed_dim, || {
                    format!("{g}: level {d} member {} has bound {bound}", w.variety)
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let l = lazard();
    for (p, a, n, d) in [(2u64, 1u32, 4u32, 3u32), (2, 2, 6, 3), (3, 1, 7, 2)] {
        let g = group(p, &[a]);
        let z = l.evaluate(&VarietyExpr::Hyp(d, n)).map_err(|e| e.to_string())?;
        let bound = fixed_dim_lower_bound(&l, &z, &g).map_err(|e| e.to_string())?.lower_bound;
        let expect = Dim::Finite(n as u64 / g.q());
        ensure(bound == expect, || format!("Hyp({d},{n}) under {g}: {bound} != {expect}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let l = lazard();
    for (p, cases) in [(2u64, vec![(1u32, 1u32), (2, 1)]), (3, vec![(1, 1)])] {
        let report = verify_presentation_lemmas(&l, p, &cases).map_err(|e| e.to_string())?;
        ensure(report.ok(), || format!("{report:?}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let l = lazard();
    let trunc = l.trunc();
    for i in 0..=6u32 {
        let pushed = p_class(&l, i, &[1]).map_err(|e| e.to_string())?;
        let mut formula = MPoly::zero(trunc);
        for j in 0..=i {
            let proj = l.evaluate(&VarietyExpr::Proj(i - j)).unwrap();
            formula = &formula + &MPoly::a(j, "g(1)", trunc).scale(proj.image());
        }
        ensure(pushed == formula, || format!("p_{i} = {pushed}"))?;
        ensure(p_expansion(&l, i, "g(1)").unwrap() == formula, || format!("expansion of p_{i}"))?;
        let a = MPoly::a(i, "g(1)", trunc);
        let back = to_a_basis(&l, &to_p_basis(&l, &a).unwrap()).unwrap();
        ensure(back == a, || format!("a_{i} round trip gave {back}"))?;
        let p = MPoly::var(Var::P(i, "g(1)".into()), trunc);
        let back = to_p_basis(&l, &to_a_basis(&l, &p).unwrap()).unwrap();
        ensure(back == p, || format!("p_{i} round trip gave {back}"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let l = lazard();
    let basis = l.base_basis();
    for w in 0..=6 {
        for alpha in partitions_of(w) {
            let f = d_alpha(&alpha, &basis);
            for beta in partitions_of(w) {
                let v = apply_functional(&f, basis.monomial_image(&beta));
                ensure(v.is_zero() == (alpha != beta), || format!("d_{alpha}(l_{beta}) = {v}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let fgl = fgl_suite(6, 4);
    ensure(fgl.ok(), || fgl.to_string())?;

    for w in 0..=10 {
        let parts = partitions_of(w);
        for a in &parts {
            ensure(a.refines(a), || format!("{a} does not refine itself"))?;
            for b in &parts {
                let ab = a.refines(b);
                if ab && a != b {
                    ensure(!b.refines(a), || format!("{a} and {b} refine each other"))?;
                }
                if ab {
                    for q in 1..=5 {
                        ensure(a.pi_q(q) <= b.pi_q(q), || format!("pi_{q} not monotone on {a} > {b}"))?;
                    }
                    for c in &parts {
                        if b.refines(c) {
                            ensure(a.refines(c), || format!("transitivity fails on {a} {b} {c}"))?;
                        }
                    }
                }
            }
            ensure(a.pi_q(1) == w as u64, || format!("pi_1({a}) != |{a}|"))?;
            for q in 1..=5 {
                ensure(a.pi_q(q) <= w as u64 / q, || format!("pi_{q}({a}) too large"))?;
            }
        }
    }
    for w1 in 0..=5 {
        for w2 in 0..=5 {
            for a in partitions_of(w1) {
                for b in partitions_of(w2) {
                    for q in 1..=4 {
                        let u = a.union(&b);
                        ensure(u.pi_q(q) == a.pi_q(q) + b.pi_q(q), || format!("pi_{q} not additive on {a}, {b}"))?;
                    }
                }
            }
        }
    }

    let l = lazard();
    let basis = l.base_basis();
    for w in 0..=8 {
        let parts = partitions_of(w);
        for alpha in &parts {
            for beta in &parts {
                if !alpha.refines(beta) {
                    let c = basis.c_matrix(alpha, beta);
                    ensure(c.is_zero(), || format!("c_{alpha}(l_{beta}) = {c}"))?;
                }
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("1 Chern-number formulas", criterion_1, Some(Duration::from_secs(10))),
        ("2 generator criterion", criterion_2, None),
        ("3 Landweber chain", criterion_3, None),
        ("4 Y_s witnesses", criterion_4, None),
        ("5 main-theorem soundness", criterion_5, Some(Duration::from_secs(60))),
        ("6 hypersurface bound", criterion_6, None),
        ("7 presentation lemma", criterion_7, None),
        ("8 M-ring", criterion_8, None),
        ("9 d_alpha orthogonality", criterion_9, None),
        ("10 property suites", criterion_10, Some(Duration::from_secs(120))),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&outcome, limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        match &outcome {
            Ok(()) => println!("criterion {name}: PASS ({elapsed:.2?})"),
            Err(why) => {
                println!("criterion {name}: FAIL ({elapsed:.2?}): {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
