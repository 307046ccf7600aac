//! Sparse polynomials in `b_1, b_2, ...` and truncated power series over them.
//!
//! `b_i` has degree `-i`, so a monomial `b_alpha` has weight `|alpha|`.
//! Every [`BPoly`] carries a truncation weight `N`: terms of weight above `N`
//! are discarded by all operations. Coefficients are arbitrary-precision
//! integers, optionally reduced modulo a prime.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::partitions::Partition;
use crate::{Error, Result};

/// Equality and hashing ignore the truncation weight.
#[derive(Clone, Debug)]
pub struct BPoly {
    terms: BTreeMap<Partition, BigInt>,
    modulus: Option<u64>,
    trunc: u32,
}

impl PartialEq for BPoly {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.terms == other.terms
    }
}

impl Eq for BPoly {}

impl std::hash::Hash for BPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
        self.modulus.hash(state);
    }
}

impl BPoly {
    pub fn zero(trunc: u32, modulus: Option<u64>) -> Self {
        BPoly {
            terms: BTreeMap::new(),
            modulus,
            trunc,
        }
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(BigInt::one(), trunc)
    }

    pub fn constant(c: impl Into<BigInt>, trunc: u32) -> Self {
        Self::monomial(Partition::empty(), c, trunc)
    }

    /// The generator `b_i`; `b_0 = 1`.
    pub fn b(i: u32, trunc: u32) -> Self {
        Self::monomial(Partition::single(i), 1, trunc)
    }

    pub fn monomial(alpha: Partition, c: impl Into<BigInt>, trunc: u32) -> Self {
        let mut out = Self::zero(trunc, None);
        out.add_term(alpha, c.into());
        out
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Partition, BigInt)>,
        trunc: u32,
        modulus: Option<u64>,
    ) -> Self {
        let mut out = Self::zero(trunc, modulus);
        for (alpha, c) in terms {
            out.add_term(alpha, c);
        }
        out
    }

    /// Adds `c * b_alpha`, dropping it if the weight exceeds the truncation.
    pub fn add_term(&mut self, alpha: Partition, c: BigInt) {
        if alpha.weight() > self.trunc || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if let Some(p) = self.modulus {
            *entry = entry.mod_floor(&BigInt::from(p));
        }
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `b_alpha` coefficient.
    pub fn coeff(&self, alpha: &Partition) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Partition::empty())
    }

    /// Returns the common weight of all terms, or `None` for zero or mixed weights.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(Partition::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Zero counts as homogeneous of every weight.
    pub fn is_homogeneous_of(&self, weight: u32) -> bool {
        self.terms.keys().all(|a| a.weight() == weight)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Partition::weight).max()
    }

    /// The homogeneous piece of the given weight.
    pub fn piece(&self, weight: u32) -> BPoly {
        BPoly {
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.weight() == weight)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
            modulus: self.modulus,
            trunc: self.trunc,
        }
    }

    pub fn with_trunc(&self, trunc: u32) -> BPoly {
        BPoly::from_terms(
            self.terms.iter().map(|(a, c)| (a.clone(), c.clone())),
            trunc,
            self.modulus,
        )
    }

    /// Image in `F_p[b]`.
    pub fn reduce_mod(&self, p: u64) -> BPoly {
        BPoly::from_terms(
            self.terms.iter().map(|(a, c)| (a.clone(), c.clone())),
            self.trunc,
            Some(p),
        )
    }

    /// Whether every coefficient is divisible by `p`.
    pub fn divisible_by(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.terms.values().all(|c| c.is_multiple_of(&p))
    }

    fn check_modulus(&self, other: &BPoly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &BPoly) -> Result<BPoly> {
        self.check_modulus(other)?;
        let mut out = self.with_trunc(self.trunc.min(other.trunc));
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &BPoly) -> Result<BPoly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &BPoly) -> Result<BPoly> {
        self.check_modulus(other)?;
        let mut out = BPoly::zero(self.trunc.min(other.trunc), self.modulus);
        out.add_product(self, other);
        Ok(out)
    }

    /// `self += x * y`, truncated at `self`'s weight.
    pub fn add_product(&mut self, x: &BPoly, y: &BPoly) {
        let trunc = self.trunc;
        let mut touched = false;
        for (a, c) in &x.terms {
            let wa = a.weight();
            if wa > trunc {
                continue;
            }
            for (b, d) in &y.terms {
                if wa + b.weight() > trunc {
                    continue;
                }
                let entry = self.terms.entry(a.union(b)).or_insert_with(BigInt::zero);
                *entry += c * d;
                touched = true;
            }
        }
        if touched {
            self.normalize();
        }
    }

    fn normalize(&mut self) {
        if let Some(p) = self.modulus {
            let p = BigInt::from(p);
            for c in self.terms.values_mut() {
                *c = c.mod_floor(&p);
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn neg(&self) -> BPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> BPoly {
        let mut out = BPoly {
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * k)).collect(),
            modulus: self.modulus,
            trunc: self.trunc,
        };
        out.normalize();
        out
    }

    /// Exact division of every coefficient; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<BPoly> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.insert(a.clone(), q);
        }
        Some(BPoly {
            terms,
            modulus: self.modulus,
            trunc: self.trunc,
        })
    }

    pub fn pow(&self, e: u32) -> BPoly {
        let mut out = BPoly::one(self.trunc);
        out.modulus = self.modulus;
        out.normalize();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Inverse of a unit of the truncated ring, i.e. of an element whose
    /// constant term is `+1` or `-1` (or a unit mod p).
    pub fn inverse(&self) -> Result<BPoly> {
        let c = self.constant_term();
        let c_inv = match self.modulus {
            None if c.abs().is_one() => c.clone(),
            None => return Err(Error::NotInvertible),
            Some(p) => {
                let p = BigInt::from(p);
                let e = c.extended_gcd(&p);
                if !e.gcd.is_one() {
                    return Err(Error::NotInvertible);
                }
                e.x.mod_floor(&p)
            }
        };
        // self = c (1 - x)  =>  self^-1 = c^-1 (1 + x + x^2 + ...)
        let mut x = self.scale(&c_inv).neg();
        x.add_term(Partition::empty(), BigInt::one());
        let mut one = BPoly::one(self.trunc);
        one.modulus = self.modulus;
        one.normalize();
        let mut sum = one.clone();
        let mut power = one;
        for _ in 0..self.trunc {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&c_inv))
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter(), "b")
    }
}

/// Writes `sum c_alpha x_alpha` with `x` the given variable prefix,
/// lower weights first.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Partition, &'a BigInt)>,
    var: &str,
) -> fmt::Result {
    let mut terms: Vec<_> = terms.collect();
    if terms.is_empty() {
        return write!(f, "0");
    }
    terms.sort_by(|(a, _), (b, _)| a.weight().cmp(&b.weight()).then(a.cmp(b)));
    for (i, (alpha, c)) in terms.into_iter().enumerate() {
        let abs = c.abs();
        match (i, c.is_negative()) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if alpha.is_empty() {
            write!(f, "{abs}")?;
            continue;
        }
        if !abs.is_one() {
            write!(f, "{abs}*")?;
        }
        write!(f, "{}", monomial_string(alpha, var))?;
    }
    Ok(())
}

fn monomial_string(alpha: &Partition, var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    let ps = alpha.parts();
    while i < ps.len() {
        let mut j = i;
        while j < ps.len() && ps[j] == ps[i] {
            j += 1;
        }
        let e = j - i;
        if e == 1 {
            parts.push(format!("{var}{}", ps[i]));
        } else {
            parts.push(format!("{var}{}^{}", ps[i], e));
        }
        i = j;
    }
    parts.join("*")
}

impl std::ops::Add for &BPoly {
    type Output = BPoly;
    fn add(self, rhs: &BPoly) -> BPoly {
        self.checked_add(rhs).expect("BPoly addition")
    }
}

impl std::ops::Sub for &BPoly {
    type Output = BPoly;
    fn sub(self, rhs: &BPoly) -> BPoly {
        self.checked_sub(rhs).expect("BPoly subtraction")
    }
}

impl std::ops::Mul for &BPoly {
    type Output = BPoly;
    fn mul(self, rhs: &BPoly) -> BPoly {
        self.checked_mul(rhs).expect("BPoly multiplication")
    }
}

impl std::ops::Neg for &BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        BPoly::neg(self)
    }
}

/// One `{"partition": [...], "coeff": "..."}` entry of the JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Partition,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
struct BPolyJson {
    modulus: Option<u64>,
    terms: Vec<TermJson>,
}

pub(crate) fn terms_to_json<'a>(
    terms: impl Iterator<Item = (&'a Partition, &'a BigInt)>,
) -> Vec<TermJson> {
    terms
        .map(|(a, c)| TermJson {
            partition: a.clone(),
            coeff: c.to_string(),
        })
        .collect()
}

pub(crate) fn terms_from_json(terms: &[TermJson]) -> std::result::Result<Vec<(Partition, BigInt)>, String> {
    terms
        .iter()
        .map(|t| {
            t.coeff
                .parse::<BigInt>()
                .map(|c| (t.partition.clone(), c))
                .map_err(|e| format!("bad coefficient {:?}: {e}", t.coeff))
        })
        .collect()
}

impl Serialize for BPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BPolyJson {
            modulus: self.modulus,
            terms: terms_to_json(self.terms.iter()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BPolyJson::deserialize(d)?;
        let terms = terms_from_json(&raw.terms).map_err(serde::de::Error::custom)?;
        let trunc = terms
            .iter()
            .map(|(a, _)| a.weight())
            .max()
            .unwrap_or(0)
            .max(crate::DEFAULT_TRUNCATION);
        Ok(BPoly::from_terms(terms, trunc, raw.modulus))
    }
}

/// The ambient ring of a [`TruncSeries`]: variable names, per-variable
/// degree caps, a cap on the total degree, and the coefficient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesRing {
    pub names: Vec<String>,
    pub caps: Vec<u32>,
    pub total: u32,
    pub trunc: u32,
    pub modulus: Option<u64>,
}

impl SeriesRing {
    /// One variable `t` with degrees up to `total`.
    pub fn univariate(name: &str, total: u32, trunc: u32) -> Self {
        SeriesRing {
            names: vec![name.to_string()],
            caps: vec![total],
            total,
            trunc,
            modulus: None,
        }
    }

    pub fn new(vars: &[(&str, u32)], total: u32, trunc: u32) -> Self {
        assert!(vars.len() <= 3, "at most three auxiliary variables");
        SeriesRing {
            names: vars.iter().map(|(n, _)| n.to_string()).collect(),
            caps: vars.iter().map(|(_, c)| (*c).min(total)).collect(),
            total,
            trunc,
            modulus: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn admits(&self, exps: &[u32]) -> bool {
        exps.iter().zip(&self.caps).all(|(e, c)| e <= c) && exps.iter().sum::<u32>() <= self.total
    }
}

/// A truncated power series with [`BPoly`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    ring: SeriesRing,
    coeffs: BTreeMap<Vec<u32>, BPoly>,
}

impl TruncSeries {
    pub fn zero(ring: &SeriesRing) -> Self {
        TruncSeries {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &SeriesRing, c: BPoly) -> Self {
        let mut out = Self::zero(ring);
        out.add_coeff(vec![0; ring.nvars()], c);
        out
    }

    pub fn one(ring: &SeriesRing) -> Self {
        Self::constant(ring, BPoly::one(ring.trunc))
    }

    /// The `j`-th variable.
    pub fn var(ring: &SeriesRing, j: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[j] = 1;
        let mut out = Self::zero(ring);
        out.add_coeff(e, BPoly::one(ring.trunc));
        out
    }

    /// A univariate series from its coefficient list `c_0, c_1, ...`.
    pub fn from_coeffs(ring: &SeriesRing, coeffs: impl IntoIterator<Item = BPoly>) -> Self {
        assert_eq!(ring.nvars(), 1);
        let mut out = Self::zero(ring);
        for (k, c) in coeffs.into_iter().enumerate() {
            out.add_coeff(vec![k as u32], c);
        }
        out
    }

    pub fn ring(&self) -> &SeriesRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, BPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> BPoly {
        self.coeffs
            .get(exps)
            .cloned()
            .unwrap_or_else(|| BPoly::zero(self.ring.trunc, self.ring.modulus))
    }

    /// Coefficient of `t^k` in a univariate series.
    pub fn coeff1(&self, k: u32) -> BPoly {
        self.coeff(&[k])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_coeff(&mut self, exps: Vec<u32>, c: BPoly) {
        if !self.ring.admits(&exps) || c.is_zero() {
            return;
        }
        let c = c.with_trunc(self.ring.trunc);
        let c = match self.ring.modulus {
            Some(p) if c.modulus().is_none() => c.reduce_mod(p),
            _ => c,
        };
        match self.coeffs.get_mut(&exps) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.coeffs.remove(&exps);
                }
            }
            None => {
                if !c.is_zero() {
                    self.coeffs.insert(exps, c);
                }
            }
        }
    }

    fn check_ring(&self, other: &TruncSeries) -> Result<()> {
        if self.ring.names != other.ring.names {
            return Err(Error::VariableMismatch(
                self.ring.names.clone(),
                other.ring.names.clone(),
            ));
        }
        if self.ring.modulus != other.ring.modulus {
            return Err(Error::ModulusMismatch(self.ring.modulus, other.ring.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_coeff(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let mut acc: BTreeMap<Vec<u32>, BPoly> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if !ring.admits(&e) {
                    continue;
                }
                acc.entry(e)
                    .or_insert_with(|| BPoly::zero(ring.trunc, ring.modulus))
                    .add_product(c1, c2);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncSeries {
            ring: ring.clone(),
            coeffs: acc,
        })
    }

    pub fn scale(&self, c: &BPoly) -> TruncSeries {
        let mut out = Self::zero(&self.ring);
        for (e, d) in &self.coeffs {
            out.add_coeff(e.clone(), d * c);
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> TruncSeries {
        let k = BigInt::from(k);
        let mut out = Self::zero(&self.ring);
        for (e, d) in &self.coeffs {
            out.add_coeff(e.clone(), d.scale(&k));
        }
        out
    }

    pub fn neg(&self) -> TruncSeries {
        self.scale_int(-1)
    }

    pub fn constant_term(&self) -> BPoly {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| e.iter().sum()).min()
    }

    /// `self^e` for `e >= 0`.
    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut out = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `self^e` for any integer `e`; negative powers need a unit constant term.
    pub fn pow_i64(&self, e: i64) -> Result<TruncSeries> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs() as u32))
        }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c = self.constant_term();
        let c_inv = c.inverse()?;
        // self = c (1 - x) with x of positive order
        let normalized = self.scale(&c_inv);
        let x = (&Self::one(&self.ring) - &normalized).truncated_positive();
        let mut sum = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        for _ in 0..self.ring.total {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&c_inv))
    }

    fn truncated_positive(mut self) -> TruncSeries {
        let zero = vec![0; self.ring.nvars()];
        self.coeffs.remove(&zero);
        self
    }

    /// Re-expresses a univariate series in the ring `target`, with its
    /// variable mapped to the `j`-th variable of `target`.
    pub fn embed(&self, target: &SeriesRing, j: usize) -> TruncSeries {
        assert_eq!(self.ring.nvars(), 1);
        let mut out = Self::zero(target);
        for (e, c) in &self.coeffs {
            let mut exps = vec![0; target.nvars()];
            exps[j] = e[0];
            out.add_coeff(exps, c.clone());
        }
        out
    }

    /// `self(g)` for a univariate `self`, evaluated by Horner's rule; the
    /// result lives in `g`'s ring. `g` must have zero constant term.
    pub fn compose(&self, g: &TruncSeries) -> Result<TruncSeries> {
        assert_eq!(self.ring.nvars(), 1, "outer series must be univariate");
        if !g.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let top = self.coeffs.keys().map(|e| e[0]).max().unwrap_or(0);
        let top = top.min(g.ring.total);
        let mut acc = TruncSeries::zero(&g.ring);
        for k in (0..=top).rev() {
            acc = &acc * g;
            let c = self.coeff1(k);
            if !c.is_zero() {
                acc.add_coeff(vec![0; g.ring.nvars()], c);
            }
        }
        Ok(acc)
    }

    /// `self(a, b)` for a bivariate `self`; `a`, `b` share a ring and have
    /// zero constant terms.
    pub fn compose2(&self, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
        assert_eq!(self.ring.nvars(), 2, "outer series must be bivariate");
        if !a.constant_term().is_zero() || !b.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let total = a.ring.total;
        let a_pows: Vec<_> = std::iter::successors(Some(TruncSeries::one(&a.ring)), |x| {
            Some(x * a)
        })
        .take(total as usize + 1)
        .collect();
        let b_pows: Vec<_> = std::iter::successors(Some(TruncSeries::one(&b.ring)), |x| {
            Some(x * b)
        })
        .take(total as usize + 1)
        .collect();
        let mut acc = TruncSeries::zero(&a.ring);
        for (e, c) in &self.coeffs {
            let (i, j) = (e[0] as usize, e[1] as usize);
            if i + j > total as usize {
                continue;
            }
            let term = (&a_pows[i] * &b_pows[j]).scale(c);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Compositional inverse of a univariate `f = u t + O(t^2)` with `u` a
    /// unit, found one degree at a time.
    pub fn comp_inverse(&self) -> Result<TruncSeries> {
        assert_eq!(self.ring.nvars(), 1);
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let u_inv = self.coeff1(1).inverse()?;
        let ring = &self.ring;
        let mut g = TruncSeries::zero(ring);
        g.add_coeff(vec![1], u_inv.clone());
        for k in 2..=ring.total {
            let err = self.compose(&g)?.coeff1(k);
            if err.is_zero() {
                continue;
            }
            g.add_coeff(vec![k], (&err * &u_inv).neg());
        }
        Ok(g)
    }

    /// Whether the coefficient of every monomial of total degree `k` is
    /// homogeneous of degree `degree - k`, i.e. of weight `k - degree`.
    pub fn is_graded_homogeneous(&self, degree: i64) -> bool {
        self.coeffs.iter().all(|(e, c)| {
            let k: i64 = e.iter().map(|&x| x as i64).sum();
            let w = k - degree;
            if w < 0 {
                return c.is_zero();
            }
            c.is_homogeneous_of(w as u32)
        })
    }

    /// Univariate coefficient list up to the total cap.
    pub fn coeff_list(&self) -> Vec<BPoly> {
        (0..=self.ring.total).map(|k| self.coeff1(k)).collect()
    }

    /// Largest `|coefficient|` among the integer coefficients, for diagnostics.
    pub fn max_abs_coeff(&self) -> Option<i64> {
        self.coeffs
            .values()
            .flat_map(|c| c.terms().values())
            .map(|c| c.abs().to_i64().unwrap_or(i64::MAX))
            .max()
    }
}

impl std::ops::Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_add(rhs).expect("series addition")
    }
}

impl std::ops::Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_add(&rhs.neg()).expect("series subtraction")
    }
}

impl std::ops::Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_mul(rhs).expect("series multiplication")
    }
}
