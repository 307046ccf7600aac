//! Self-check suites exposed through `cobord verify`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::actions::{
    filtration_family, generator_action, landweber_variety, milnor_witness, ActionWitness,
    GroupDescriptor,
};
use crate::bounds::fixed_dim_lower_bound;
use crate::equivariant::verify_presentation_lemmas;
use crate::fgl::FglContext;
use crate::geometry::VarietyExpr;
use crate::lazard::{IdealLevel, Lazard};
use crate::series::{SeriesRing, TruncSeries};
use crate::{Dim, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let verdict = if self.ok() { "OK" } else { "FAILED" };
        write!(f, "{}: {verdict} ({passed}/{} checks)", self.suite, self.checks.len())?;
        for c in self.failures() {
            write!(f, "\n  failed: {}", c.name)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fgl,
    Ideals,
    Presentation,
    Soundness,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fgl" => Ok(Suite::Fgl),
            "ideals" => Ok(Suite::Ideals),
            "presentation" => Ok(Suite::Presentation),
            "soundness" => Ok(Suite::Soundness),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidExpr(format!("unknown suite {other:?}"))),
        }
    }
}

/// Formal group law identities: commutativity and associativity up to
/// total degree `degree`, and `[a]([b](t)) = [ab](t)` for `a, b <= max_mult`.
pub fn fgl_suite(degree: u32, max_mult: i64) -> SuiteReport {
    let mut report = SuiteReport::new("fgl");
    let ctx = FglContext::with_degree(degree - 1, degree);
    let f = ctx.fgl_sum();
    let symmetric = f
        .coeffs()
        .iter()
        .all(|(e, c)| f.coeff(&[e[1], e[0]]) == *c);
    report.check(format!("F(x,y) = F(y,x) to degree {degree}"), symmetric);

    let ring3 = SeriesRing::new(&[("x", degree), ("y", degree), ("z", degree)], degree, degree - 1);
    let [x, y, z] = [0, 1, 2].map(|j| TruncSeries::var(&ring3, j));
    let assoc = (|| -> Result<bool> {
        let left = f.compose2(&f.compose2(&x, &y)?, &z)?;
        let right = f.compose2(&x, &f.compose2(&y, &z)?)?;
        Ok(left == right)
    })()
    .unwrap_or(false);
    report.check(format!("F(F(x,y),z) = F(x,F(y,z)) to degree {degree}"), assoc);

    let t = TruncSeries::var(ctx.ring(), 0);
    let unit = f.compose2(&t, &TruncSeries::zero(ctx.ring())).ok() == Some(t);
    report.check("F(t,0) = t", unit);

    for a in 1..=max_mult {
        for b in 1..=max_mult {
            let composed = ctx.n_series(a).compose(&ctx.n_series(b));
            report.check(
                format!("[{a}]([{b}](t)) = [{}](t)", a * b),
                composed.ok() == Some(ctx.n_series(a * b)),
            );
        }
    }
    report
}

/// The chain `I_p(0) < I_p(1) < ...`: `u_m` in `I_p(n)` for `m < p^n - 1`,
/// `v_n` outside `I_p(n)` but inside `I_p(n+1)` and indecomposable mod `p`;
/// plus the fixed-point-free hypersurfaces `Y_s` in `I_p(s+1)` minus `I_p(s)`.
pub fn ideals_suite(lazard: &Lazard, p: u64, max_n: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("ideals");
    for n in 0..=max_n {
        let Some(vn) = lazard.v(p, n) else { continue };
        let level = IdealLevel::Finite(n);
        let pn = p.pow(n);
        for m in 0..(pn - 1) as u32 {
            if let Some(u) = lazard.u(p, m) {
                report.check(
                    format!("u_{m} in I_{p}({n})"),
                    lazard.in_ipn(&u, p, level)?,
                );
            }
        }
        report.check(format!("v_{n} not in I_{p}({n})"), !lazard.in_ipn(&vn, p, level)?);
        report.check(
            format!("v_{n} in I_{p}({})", n + 1),
            lazard.in_ipn(&vn, p, IdealLevel::Finite(n + 1))?,
        );
        if n >= 1 {
            report.check(format!("v_{n} indecomposable mod {p}"), vn.is_indec_mod_p(p)?);
            report.check(
                format!("v_{n} in I_{p}(infinity)"),
                lazard.in_ipn(&vn, p, IdealLevel::Infinite)?,
            );
        }
    }
    for s in 0..=max_n {
        let dim = p.pow(s) - 1;
        if dim > lazard.trunc() as u64 {
            break;
        }
        let y = lazard.evaluate(&VarietyExpr::Hyp(p as u32, dim as u32))?;
        report.check(
            format!("Y_{s} in I_{p}({})", s + 1),
            lazard.in_ipn(&y, p, IdealLevel::Finite(s + 1))?,
        );
        report.check(
            format!("Y_{s} not in I_{p}({s})"),
            !lazard.in_ipn(&y, p, IdealLevel::Finite(s))?,
        );
        report.check(
            format!("Chern numbers of Y_{s} divisible by {p}"),
            y.image().divisible_by(p),
        );
    }
    Ok(report)
}

/// Default `(a, n)` cases for the leading-term identity of `[p^a](t)`.
pub fn presentation_cases(p: u64) -> Vec<(u32, u32)> {
    if p == 2 {
        vec![(1, 1), (2, 1)]
    } else {
        vec![(1, 1)]
    }
}

pub fn presentation_suite(lazard: &Lazard, p: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("presentation");
    let result = verify_presentation_lemmas(lazard, p, &presentation_cases(p))?;
    for c in &result.cases {
        report.check(
            format!("[{}](t): coefficients below t^{} lie in I_{p}({})", c.p.pow(c.a), c.p.pow(c.a * c.n), c.n),
            c.lower_coeffs_vanish,
        );
        report.check(
            format!(
                "[{}](t): t^{} coefficient is v_{}^{} mod I_{p}({})",
                c.p.pow(c.a),
                c.p.pow(c.a * c.n),
                c.n,
                c.exponent,
                c.n
            ),
            c.leading_matches,
        );
    }
    for (n, m, ok) in result.u_membership {
        report.check(format!("u_{m} in I_{p}({n})"), ok);
    }
    Ok(report)
}

/// The groups exercised by the soundness suite.
pub fn default_groups() -> Vec<GroupDescriptor> {
    [(2, vec![1]), (2, vec![2]), (2, vec![1, 1]), (3, vec![1])]
        .into_iter()
        .map(|(p, e)| GroupDescriptor::new(p, e).expect("valid group"))
        .collect()
}

/// Every witness of dimension at most `max_dim` for the given group.
pub fn all_witnesses(lazard: &Lazard, group: &GroupDescriptor, max_dim: u32) -> Result<Vec<ActionWitness>> {
    let mut out = Vec::new();
    for n in 1..=max_dim + 1 {
        for m in std::iter::once(0).chain(2..=n) {
            if m + n - 1 <= max_dim {
                out.push(milnor_witness(m, n, group)?);
            }
        }
    }
    for i in 1..=max_dim {
        let (plus, minus) = generator_action(lazard, i, group)?;
        out.extend([plus, minus].into_iter().filter(|w| w.fixed_dim.is_finite()));
    }
    for s in 0..group.r() {
        if let Ok(w) = landweber_variety(lazard, s, group) {
            if w.variety.dimension().is_some_and(|d| d <= max_dim) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Realized fixed-locus dimensions never fall below the computed bound,
/// and members of the generating family for level `d` have bound `<= d`.
pub fn soundness_suite(lazard: &Lazard, groups: &[GroupDescriptor], max_dim: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("soundness");
    for group in groups {
        let mut bad = Vec::new();
        let witnesses = all_witnesses(lazard, group, max_dim)?;
        for w in &witnesses {
            let bound = fixed_dim_lower_bound(lazard, &w.class(lazard)?, group)?.lower_bound;
            if bound > w.fixed_dim {
                bad.push(w.variety.to_string());
            }
        }
        report.check(
            format!("{group}: bound <= fixed_dim for {} witnesses {bad:?}", witnesses.len()),
            bad.is_empty(),
        );
        let q = group.q();
        for d in 0..=(max_dim as u64 / q) {
            let family = filtration_family(lazard, d, group, max_dim)?;
            let mut bad = Vec::new();
            for w in &family {
                let bound = fixed_dim_lower_bound(lazard, &w.class(lazard)?, group)?.lower_bound;
                if bound > Dim::Finite(d) || bound > w.fixed_dim || w.fixed_dim > Dim::Finite(d) {
                    bad.push(w.variety.to_string());
                }
            }
            report.check(
                format!("{group}: level {d} family of {} products has bound <= {d} {bad:?}", family.len()),
                bad.is_empty(),
            );
        }
    }
    Ok(report)
}

/// Runs a suite (or all of them) for the prime `p`.
pub fn run(lazard: &Lazard, suite: Suite, p: u64, max_n: u32) -> Result<Vec<SuiteReport>> {
    Ok(match suite {
        Suite::Fgl => vec![fgl_suite(6, 4)],
        Suite::Ideals => vec![ideals_suite(lazard, p, max_n)?],
        Suite::Presentation => vec![presentation_suite(lazard, p)?],
        Suite::Soundness => vec![soundness_suite(lazard, &default_groups(), lazard.trunc().min(8))?],
        Suite::All => {
            let mut out = run(lazard, Suite::Fgl, p, max_n)?;
            out.extend(run(lazard, Suite::Ideals, p, max_n)?);
            out.extend(run(lazard, Suite::Presentation, p, max_n)?);
            out.extend(run(lazard, Suite::Soundness, p, max_n)?);
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fgl_identities_hold() {
        let r = fgl_suite(5, 2);
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn small_ideal_chain() {
        let lazard = Lazard::new(6);
        let r = ideals_suite(&lazard, 2, 2).unwrap();
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }
}
