//! The ring `M = L[a_{i,g}]` of character-graded bundles and the classes
//! `[E -> X]` of split bundles over products of projective spaces.
//!
//! For `E = sum L_k (x) chi_(g_k)` with no trivial summand,
//! `Q(E) = prod_k sum_i c_1(L_k)^i a_{i,g_k}` in the cobordism ring of the
//! base, and `[E -> X] = p_*(Q(E))` with `p_*(h^j) = [P^(n-j)]` on `P^n`.
//! First Chern classes of line bundles are taken with the formal group law:
//! `c_1(O(k_1, ..., k_s)) = exp(sum_j k_j log h_j)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::actions::GroupDescriptor;
use crate::lazard::{IdealLevel, Lazard};
use crate::series::{BPoly, SeriesRing, TruncSeries};
use crate::{Error, Result};

/// A polynomial variable: `a_{i,g}` or `p_{i,g}` with `g` a character label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    A(u32, String),
    P(u32, String),
}

impl Var {
    /// Degree is `-i`; this returns `i`.
    pub fn weight(&self) -> u32 {
        match self {
            Var::A(i, _) | Var::P(i, _) => *i,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A(i, g) => write!(f, "a[{i},{g}]"),
            Var::P(i, g) => write!(f, "p[{i},{g}]"),
        }
    }
}

/// A monomial as a sorted list of `(variable, exponent)`.
pub type Monomial = Vec<(Var, u32)>;

fn monomial_mul(x: &Monomial, y: &Monomial) -> Monomial {
    let mut map: BTreeMap<Var, u32> = x.iter().cloned().collect();
    for (v, e) in y {
        *map.entry(v.clone()).or_insert(0) += e;
    }
    map.into_iter().collect()
}

fn monomial_weight(m: &Monomial) -> u32 {
    m.iter().map(|(v, e)| v.weight() * e).sum()
}

/// A polynomial in [`Var`]s with coefficients in `Z[b]`. Equality ignores
/// the truncation weight.
#[derive(Clone, Debug)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BPoly>,
    trunc: u32,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero(trunc: u32) -> Self {
        MPoly {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn constant(c: BPoly) -> Self {
        let trunc = c.trunc();
        let mut out = MPoly::zero(trunc);
        out.add_term(Vec::new(), c);
        out
    }

    pub fn one(trunc: u32) -> Self {
        MPoly::constant(BPoly::one(trunc))
    }

    pub fn var(v: Var, trunc: u32) -> Self {
        let mut out = MPoly::zero(trunc);
        out.add_term(vec![(v, 1)], BPoly::one(trunc));
        out
    }

    pub fn a(i: u32, g: &str, trunc: u32) -> Self {
        MPoly::var(Var::A(i, g.to_string()), trunc)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BPoly> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> BPoly {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| BPoly::zero(self.trunc, None))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(m.clone())
            .or_insert_with(|| BPoly::zero(self.trunc, None));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BPoly) -> MPoly {
        let mut out = MPoly::zero(self.trunc);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    /// Substitutes every variable by a polynomial.
    pub fn substitute(&self, f: &dyn Fn(&Var) -> MPoly) -> MPoly {
        let mut out = MPoly::zero(self.trunc);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for (v, e) in m {
                let image = f(v);
                for _ in 0..*e {
                    term = &term * &image;
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Every term has `b`-weight plus variable weight equal to `d`, i.e.
    /// the polynomial is homogeneous of degree `-d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.iter().all(|(m, c)| {
            let w = monomial_weight(m);
            w <= d && c.is_homogeneous_of(d - w)
        })
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.trunc.min(rhs.trunc));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(monomial_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in m {
                match e {
                    1 => write!(f, "*{v}")?,
                    e => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MTermJson {
    monomial: Vec<(Var, u32)>,
    coeff: BPoly,
}

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    terms: Vec<MTermJson>,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyJson {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| MTermJson {
                    monomial: m.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MPolyJson::deserialize(d)?;
        let trunc = raw
            .terms
            .iter()
            .map(|t| t.coeff.trunc())
            .min()
            .unwrap_or(crate::DEFAULT_TRUNCATION);
        let mut out = MPoly::zero(trunc);
        for t in raw.terms {
            let mut m = BTreeMap::new();
            for (v, e) in t.monomial {
                *m.entry(v).or_insert(0) += e;
            }
            out.add_term(m.into_iter().collect(), t.coeff.with_trunc(trunc));
        }
        Ok(out)
    }
}

/// Label of a character `g`, given by its coordinates in
/// `Z/p^a_1 x ... x Z/p^a_r`.
pub fn character_label(g: &[u32]) -> String {
    let parts: Vec<String> = g.iter().map(u32::to_string).collect();
    format!("g({})", parts.join(","))
}

/// All nontrivial characters of the group, in lexicographic order.
pub fn nontrivial_characters(group: &GroupDescriptor) -> Vec<Vec<u32>> {
    let orders: Vec<u32> = group
        .exponents
        .iter()
        .map(|&a| group.p.pow(a) as u32)
        .collect();
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &o in &orders {
        out = out
            .into_iter()
            .flat_map(|g| {
                (0..o).map(move |x| {
                    let mut h = g.clone();
                    h.push(x);
                    h
                })
            })
            .collect();
    }
    out.retain(|g| g.iter().any(|&x| x != 0));
    out
}

/// `O(degrees) (x) chi_character` on the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub degrees: Vec<i64>,
    pub character: Vec<u32>,
}

/// A sum of line bundles twisted by nontrivial characters over
/// `P^(n_1) x ... x P^(n_s)`, `s <= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBundleDescriptor {
    pub base: Vec<u32>,
    pub summands: Vec<Summand>,
}

impl SplitBundleDescriptor {
    fn validate(&self, trunc: u32) -> Result<()> {
        if self.base.len() > 3 {
            return Err(Error::InvalidExpr("at most three projective factors".into()));
        }
        let dim: u32 = self.base.iter().sum();
        if dim > trunc {
            return Err(Error::TruncationExceeded { dim, trunc });
        }
        for s in &self.summands {
            if s.degrees.len() != self.base.len() {
                return Err(Error::InvalidExpr(format!(
                    "summand has {} degrees for {} factors",
                    s.degrees.len(),
                    self.base.len()
                )));
            }
            if s.character.iter().all(|&x| x == 0) {
                return Err(Error::TrivialCharacter);
            }
        }
        Ok(())
    }
}

/// An element of `Omega(base) (x) M`: coefficients indexed by the exponent
/// vector of `h_1^(e_1) ... h_s^(e_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    pub base: Vec<u32>,
    pub coeffs: BTreeMap<Vec<u32>, MPoly>,
}

impl ChowClass {
    fn unit(base: &[u32], trunc: u32) -> Self {
        ChowClass {
            base: base.to_vec(),
            coeffs: BTreeMap::from([(vec![0; base.len()], MPoly::one(trunc))]),
        }
    }

    fn mul(&self, other: &ChowClass) -> ChowClass {
        let mut coeffs: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
        for (e1, m1) in &self.coeffs {
            for (e2, m2) in &other.coeffs {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if e.iter().zip(&self.base).any(|(x, n)| x > n) {
                    continue;
                }
                let prod = m1 * m2;
                let slot = coeffs.remove(&e).unwrap_or_else(|| MPoly::zero(prod.trunc));
                let sum = &slot + &prod;
                if !sum.is_zero() {
                    coeffs.insert(e, sum);
                }
            }
        }
        ChowClass {
            base: self.base.clone(),
            coeffs,
        }
    }
}

fn chow_ring(base: &[u32], trunc: u32) -> SeriesRing {
    let names = ["h1", "h2", "h3"];
    let vars: Vec<(&str, u32)> = base.iter().enumerate().map(|(j, &n)| (names[j], n)).collect();
    SeriesRing::new(&vars, base.iter().sum(), trunc)
}

/// `c_1(O(k_1, ..., k_s)) = exp(sum k_j log h_j)`.
fn first_chern_class(lazard: &Lazard, ring: &SeriesRing, degrees: &[i64]) -> TruncSeries {
    let fgl = lazard.fgl();
    let mut sum = TruncSeries::zero(ring);
    for (j, &k) in degrees.iter().enumerate() {
        let h = TruncSeries::var(ring, j);
        let log_h = fgl.log().compose(&h).expect("variable has no constant term");
        sum = &sum + &log_h.scale_int(k);
    }
    fgl.exp().compose(&sum).expect("log has no constant term")
}

/// `Q(E)` in the cobordism ring of the base, with coefficients in `M`.
pub fn q_class(lazard: &Lazard, e: &SplitBundleDescriptor) -> Result<ChowClass> {
    let trunc = lazard.trunc();
    e.validate(trunc)?;
    let ring = chow_ring(&e.base, trunc);
    let top: u32 = e.base.iter().sum();
    let mut acc = ChowClass::unit(&e.base, trunc);
    for s in &e.summands {
        let g = character_label(&s.character);
        let c1 = first_chern_class(lazard, &ring, &s.degrees);
        let mut factor = ChowClass {
            base: e.base.clone(),
            coeffs: BTreeMap::new(),
        };
        let mut power = TruncSeries::one(&ring);
        for i in 0..=top {
            let a = MPoly::a(i, &g, trunc);
            for (exps, c) in power.coeffs() {
                let exps = if exps.is_empty() { vec![0; e.base.len()] } else { exps.clone() };
                let slot = factor
                    .coeffs
                    .remove(&exps)
                    .unwrap_or_else(|| MPoly::zero(trunc));
                let sum = &slot + &a.scale(c);
                if !sum.is_zero() {
                    factor.coeffs.insert(exps, sum);
                }
            }
            power = &power * &c1;
        }
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// `[E -> X] = p_*(Q(E))`.
pub fn push_class(lazard: &Lazard, e: &SplitBundleDescriptor) -> Result<MPoly> {
    let q = q_class(lazard, e)?;
    let trunc = lazard.trunc();
    let mut out = MPoly::zero(trunc);
    for (exps, m) in &q.coeffs {
        let mut factor = BPoly::one(trunc);
        for (&x, &n) in exps.iter().zip(&e.base) {
            let proj = lazard.evaluate(&crate::VarietyExpr::Proj(n - x))?;
            factor = &factor * proj.image();
        }
        out = &out + &m.scale(&factor);
    }
    Ok(out)
}

/// `p_{i,g} = [O(1) (x) chi_g -> P^i]`, expanded in the `a`-variables.
pub fn p_class(lazard: &Lazard, i: u32, g: &[u32]) -> Result<MPoly> {
    push_class(
        lazard,
        &SplitBundleDescriptor {
            base: vec![i],
            summands: vec![Summand {
                degrees: vec![1],
                character: g.to_vec(),
            }],
        },
    )
}

/// `sum_{j <= i} [P^(i-j)] a_{j,g}`.
pub fn p_expansion(lazard: &Lazard, i: u32, g: &str) -> Result<MPoly> {
    let trunc = lazard.trunc();
    let mut out = MPoly::zero(trunc);
    for j in 0..=i {
        let proj = lazard.evaluate(&crate::VarietyExpr::Proj(i - j))?;
        out = &out + &MPoly::a(j, g, trunc).scale(proj.image());
    }
    Ok(out)
}

/// `a_{i,g}` written in the `p`-variables, from
/// `a_i = p_i - sum_{j < i} [P^(i-j)] a_j`.
pub fn a_in_p(lazard: &Lazard, i: u32, g: &str) -> Result<MPoly> {
    let trunc = lazard.trunc();
    let mut solved: Vec<MPoly> = Vec::new();
    for k in 0..=i {
        let mut a = MPoly::var(Var::P(k, g.to_string()), trunc);
        for (j, aj) in solved.iter().enumerate() {
            let proj = lazard.evaluate(&crate::VarietyExpr::Proj(k - j as u32))?;
            a = &a - &aj.scale(proj.image());
        }
        solved.push(a);
    }
    Ok(solved.pop().expect("at least one step"))
}

/// Rewrites `a`-variables in terms of `p`-variables.
pub fn to_p_basis(lazard: &Lazard, f: &MPoly) -> Result<MPoly> {
    let mut images = BTreeMap::new();
    for m in f.terms().keys() {
        for (v, _) in m {
            if let Var::A(i, g) = v {
                if !images.contains_key(v) {
                    images.insert(v.clone(), a_in_p(lazard, *i, g)?);
                }
            }
        }
    }
    let trunc = lazard.trunc();
    Ok(f.substitute(&|v| images.get(v).cloned().unwrap_or_else(|| MPoly::var(v.clone(), trunc))))
}

/// Rewrites `p`-variables in terms of `a`-variables.
pub fn to_a_basis(lazard: &Lazard, f: &MPoly) -> Result<MPoly> {
    let mut images = BTreeMap::new();
    for m in f.terms().keys() {
        for (v, _) in m {
            if let Var::P(i, g) = v {
                if !images.contains_key(v) {
                    images.insert(v.clone(), p_expansion(lazard, *i, g)?);
                }
            }
        }
    }
    let trunc = lazard.trunc();
    Ok(f.substitute(&|v| images.get(v).cloned().unwrap_or_else(|| MPoly::var(v.clone(), trunc))))
}

/// Result of checking the leading term of `[p^a](t)` modulo `I_p(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationCase {
    pub p: u64,
    pub a: u32,
    pub n: u32,
    /// `(q^n - 1) / (p^n - 1)`.
    pub exponent: u64,
    pub lower_coeffs_vanish: bool,
    pub leading_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub cases: Vec<PresentationCase>,
    /// `(n, m, u_m in I_p(n))` for `m < p^n - 1`.
    pub u_membership: Vec<(u32, u32, bool)>,
}

impl PresentationReport {
    pub fn ok(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.lower_coeffs_vanish && c.leading_matches)
            && self.u_membership.iter().all(|&(_, _, ok)| ok)
    }
}

/// For each `(a, n)`: with `q = p^a`, the coefficients of `t, ..., t^(q^n - 1)`
/// in `[q](t)` lie in `I_p(n)` and the coefficient of `t^(q^n)` agrees with
/// `v_n^((q^n - 1)/(p^n - 1))` modulo `I_p(n)`.
pub fn verify_presentation_lemmas(
    lazard: &Lazard,
    p: u64,
    cases: &[(u32, u32)],
) -> Result<PresentationReport> {
    let fgl = lazard.fgl();
    let mut report = PresentationReport {
        cases: Vec::new(),
        u_membership: Vec::new(),
    };
    for &(a, n) in cases {
        let q = p.pow(a);
        let qn = q.pow(n);
        let pn = p.pow(n);
        if qn - 1 > lazard.trunc() as u64 || qn > fgl.degree() as u64 {
            return Err(Error::TruncationExceeded {
                dim: (qn - 1) as u32,
                trunc: lazard.trunc(),
            });
        }
        let series = fgl.n_series(q as i64);
        let coeff_class = |k: u64| {
            crate::CobordismClass::new(series.coeff1(k as u32), Some(k as u32 - 1))
        };
        let mut lower = true;
        for k in 1..qn {
            lower &= lazard.in_ipn(&coeff_class(k), p, IdealLevel::Finite(n))?;
        }
        let exponent = (qn - 1) / (pn - 1);
        let v = lazard.v(p, n).expect("v_n within truncation");
        let mut power = crate::CobordismClass::new(BPoly::one(lazard.trunc()), Some(0));
        for _ in 0..exponent {
            power = power.mul(&v);
        }
        let lead = lazard.reduce_mod_ipr(&coeff_class(qn), p, n)?;
        let expect = lazard.reduce_mod_ipr(&power, p, n)?;
        report.cases.push(PresentationCase {
            p,
            a,
            n,
            exponent,
            lower_coeffs_vanish: lower,
            leading_matches: lead == expect,
        });
        for m in 0..(pn - 1) as u32 {
            if let Some(u) = lazard.u(p, m) {
                let inside = lazard.in_ipn(&u, p, IdealLevel::Finite(n))?;
                if !report.u_membership.contains(&(n, m, inside)) {
                    report.u_membership.push((n, m, inside));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::LazyLock;

    const N: u32 = 8;
    static LAZ: LazyLock<Lazard> = LazyLock::new(|| Lazard::new(N));

    fn bundle(base: &[u32], summands: &[(&[i64], &[u32])]) -> SplitBundleDescriptor {
        SplitBundleDescriptor {
            base: base.to_vec(),
            summands: summands
                .iter()
                .map(|(d, g)| Summand {
                    degrees: d.to_vec(),
                    character: g.to_vec(),
                })
                .collect(),
        }
    }

    fn proj(n: u32) -> BPoly {
        LAZ.evaluate(&crate::VarietyExpr::Proj(n)).unwrap().image().clone()
    }

    #[test]
    fn over_a_point() {
        let e = bundle(&[], &[(&[], &[1])]);
        let q = q_class(&LAZ, &e).unwrap();
        assert_eq!(q.coeffs[&Vec::<u32>::new()], MPoly::a(0, "g(1)", N));
        assert_eq!(push_class(&LAZ, &e).unwrap(), MPoly::a(0, "g(1)", N));
    }

    #[test]
    fn line_bundle_on_the_projective_line() {
        let q = q_class(&LAZ, &bundle(&[1], &[(&[1], &[1])])).unwrap();
        assert_eq!(q.coeffs[&vec![0]], MPoly::a(0, "g(1)", N));
        assert_eq!(q.coeffs[&vec![1]], MPoly::a(1, "g(1)", N));
        let trivial = push_class(&LAZ, &bundle(&[1], &[(&[0], &[1])])).unwrap();
        assert_eq!(trivial, MPoly::a(0, "g(1)", N).scale(&proj(1)));
    }

    #[test]
    fn two_summands_multiply() {
        let both = q_class(&LAZ, &bundle(&[2], &[(&[1], &[1]), (&[2], &[2])])).unwrap();
        let first = q_class(&LAZ, &bundle(&[2], &[(&[1], &[1])])).unwrap();
        let second = q_class(&LAZ, &bundle(&[2], &[(&[2], &[2])])).unwrap();
        assert_eq!(both, first.mul(&second));
    }

    #[test]
    fn p_classes_and_basis_change() {
        for i in 0..=5 {
            let p = p_class(&LAZ, i, &[1]).unwrap();
            assert_eq!(p, p_expansion(&LAZ, i, "g(1)").unwrap());
            assert!(p.is_homogeneous_of(i));
            let a = MPoly::a(i, "g(1)", N);
            let back = to_a_basis(&LAZ, &to_p_basis(&LAZ, &a).unwrap()).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn product_base_push_is_multiplicative() {
        let over_product = push_class(&LAZ, &bundle(&[1, 2], &[(&[1, 0], &[1]), (&[0, 1], &[2])])).unwrap();
        let left = push_class(&LAZ, &bundle(&[1], &[(&[1], &[1])])).unwrap();
        let right = push_class(&LAZ, &bundle(&[2], &[(&[1], &[2])])).unwrap();
        assert_eq!(over_product, &left * &right);
        assert!(over_product.is_homogeneous_of(3));
    }

    #[test]
    fn trivial_character_is_rejected() {
        assert_eq!(
            q_class(&LAZ, &bundle(&[1], &[(&[1], &[0])])),
            Err(Error::TrivialCharacter)
        );
    }

    #[test]
    fn characters() {
        let g = GroupDescriptor::new(2, vec![1, 1]).unwrap();
        let chars = nontrivial_characters(&g);
        assert_eq!(chars, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(character_label(&chars[2]), "g(1,1)");
    }

    #[test]
    fn presentation_lemma() {
        let r = verify_presentation_lemmas(&LAZ, 2, &[(1, 1), (2, 1)]).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.cases[1].exponent, 3);
        let r = verify_presentation_lemmas(&LAZ, 3, &[(1, 1)]).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn json_round_trip() {
        let p = p_class(&LAZ, 2, &[1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains(r#"{"a":[2,"g(1)"]}"#));
        let back: MPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back.terms(), p.terms());
    }
}
