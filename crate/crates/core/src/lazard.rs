//! Polynomial generators of the Lazard ring, coordinates with respect to
//! them, and the Landweber ideals `I_p(n)`.
//!
//! Generators are integral combinations of Milnor hypersurfaces `H_{m,n}`
//! (with `m != 1`). The matrix `c_alpha(l_beta)` is triangular for the
//! refinement order, so coordinates come from back-substitution.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fgl::FglContext;
use crate::geometry::{Evaluator, VarietyExpr};
use crate::partitions::{partitions_of, partitions_up_to, Partition};
use crate::series::{fmt_terms, terms_from_json, terms_to_json, BPoly, TermJson};
use crate::{is_prime, prime_power_base, Dim, Error, Result};

/// An element of the Lazard ring, stored as its image in `Z[b]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CobordismClass {
    /// Pure dimension, when known.
    dim: Option<u32>,
    image: BPoly,
    #[serde(skip)]
    coords: OnceLock<GenPoly>,
}

impl PartialEq for CobordismClass {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.dim == other.dim
    }
}

impl Eq for CobordismClass {}

impl CobordismClass {
    /// Wraps an image without checking integrality; see [`Lazard::checked_class`].
    pub fn new(image: BPoly, dim: Option<u32>) -> Self {
        CobordismClass {
            image,
            dim,
            coords: OnceLock::new(),
        }
    }

    /// A homogeneous class, with dimension read off the image.
    pub fn from_image(image: BPoly) -> Self {
        let dim = image.homogeneous_weight();
        Self::new(image, dim)
    }

    pub fn image(&self) -> &BPoly {
        &self.image
    }

    pub fn dim(&self) -> Option<u32> {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.image.trunc()
    }

    pub fn is_zero(&self) -> bool {
        self.image.is_zero()
    }

    /// The Chern number `c_alpha`.
    pub fn c_alpha(&self, alpha: &Partition) -> BigInt {
        self.image.coeff(alpha)
    }

    /// All nonzero Chern numbers in the crate's partition order.
    pub fn chern_numbers(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.image.iter()
    }

    pub fn mul(&self, other: &CobordismClass) -> CobordismClass {
        let dim = match (self.dim, other.dim) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        CobordismClass::new(&self.image * &other.image, dim)
    }

    pub fn add(&self, other: &CobordismClass) -> CobordismClass {
        let image = &self.image + &other.image;
        let dim = if self.dim == other.dim {
            self.dim
        } else {
            image.homogeneous_weight()
        };
        CobordismClass::new(image, dim)
    }

    pub fn scale(&self, k: i64) -> CobordismClass {
        CobordismClass::new(self.image.scale(&BigInt::from(k)), self.dim)
    }

    /// Weight `n` of a homogeneous class of positive degree.
    fn positive_degree(&self) -> Result<u32> {
        match self.image.homogeneous_weight().or(self.dim) {
            Some(n) if n > 0 && self.image.is_homogeneous_of(n) => Ok(n),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Decomposable in the Lazard ring iff `c_(n) = 0`.
    pub fn is_decomposable(&self) -> Result<bool> {
        let n = self.positive_degree()?;
        Ok(self.c_alpha(&Partition::single(n)).is_zero())
    }

    /// Indecomposable in `Lazard / p`: `c_(n)` prime to `p`, or prime to
    /// `p^2` when `n + 1` is a power of `p`.
    pub fn is_indec_mod_p(&self, p: u64) -> Result<bool> {
        let n = self.positive_degree()?;
        let c = self.c_alpha(&Partition::single(n));
        let modulus = if prime_power_base(n as u64 + 1) == Some(p) {
            p * p
        } else {
            p
        };
        Ok(!c.is_multiple_of(&BigInt::from(modulus)))
    }
}

/// Which generator basis a [`GenPoly`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FlavorJson", try_from = "FlavorJson")]
pub enum BasisFlavor {
    Base,
    /// `l_(p^i - 1)` replaced by a lift of `v_i` for `1 <= i <= r - 1`.
    LandweberAdapted { p: u64, r: u32 },
}

#[derive(Serialize, Deserialize)]
struct FlavorJson {
    flavor: String,
    p: Option<u64>,
    r: Option<u32>,
}

impl From<BasisFlavor> for FlavorJson {
    fn from(f: BasisFlavor) -> Self {
        match f {
            BasisFlavor::Base => FlavorJson {
                flavor: "base".into(),
                p: None,
                r: None,
            },
            BasisFlavor::LandweberAdapted { p, r } => FlavorJson {
                flavor: "landweber-adapted".into(),
                p: Some(p),
                r: Some(r),
            },
        }
    }
}

impl TryFrom<FlavorJson> for BasisFlavor {
    type Error = String;

    fn try_from(j: FlavorJson) -> std::result::Result<Self, String> {
        match (j.flavor.as_str(), j.p, j.r) {
            ("base", _, _) => Ok(BasisFlavor::Base),
            ("landweber-adapted", Some(p), Some(r)) => Ok(BasisFlavor::LandweberAdapted { p, r }),
            (other, _, _) => Err(format!("unknown basis flavor {other:?}")),
        }
    }
}

impl fmt::Display for BasisFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisFlavor::Base => write!(f, "base"),
            BasisFlavor::LandweberAdapted { p, r } => write!(f, "landweber-adapted(p={p}, r={r})"),
        }
    }
}

/// A polynomial in the generators `l_i`, possibly reduced mod `p`.
///
/// Monomials `l_alpha` multiply like `b_alpha`, so the coefficients live in
/// a [`BPoly`] whose variables are read as `l_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPoly {
    coords: BPoly,
    basis: BasisFlavor,
}

impl GenPoly {
    pub fn new(coords: BPoly, basis: BasisFlavor) -> Self {
        GenPoly { coords, basis }
    }

    pub fn zero(trunc: u32, modulus: Option<u64>, basis: BasisFlavor) -> Self {
        GenPoly::new(BPoly::zero(trunc, modulus), basis)
    }

    pub fn monomial(alpha: Partition, c: impl Into<BigInt>, trunc: u32, basis: BasisFlavor) -> Self {
        GenPoly::new(BPoly::monomial(alpha, c, trunc), basis)
    }

    pub fn basis(&self) -> BasisFlavor {
        self.basis
    }

    pub fn modulus(&self) -> Option<u64> {
        self.coords.modulus()
    }

    pub fn trunc(&self) -> u32 {
        self.coords.trunc()
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        self.coords.terms()
    }

    pub fn coeff(&self, alpha: &Partition) -> BigInt {
        self.coords.coeff(alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// The coordinates as a polynomial in formal variables.
    pub fn as_bpoly(&self) -> &BPoly {
        &self.coords
    }

    pub fn reduce_mod(&self, p: u64) -> GenPoly {
        GenPoly::new(self.coords.reduce_mod(p), self.basis)
    }

    fn check_basis(&self, other: &GenPoly) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(
                self.basis.to_string(),
                other.basis.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &GenPoly) -> Result<GenPoly> {
        self.check_basis(other)?;
        Ok(GenPoly::new(self.coords.checked_add(&other.coords)?, self.basis))
    }

    pub fn checked_sub(&self, other: &GenPoly) -> Result<GenPoly> {
        self.check_basis(other)?;
        Ok(GenPoly::new(self.coords.checked_sub(&other.coords)?, self.basis))
    }

    pub fn checked_mul(&self, other: &GenPoly) -> Result<GenPoly> {
        self.check_basis(other)?;
        Ok(GenPoly::new(self.coords.checked_mul(&other.coords)?, self.basis))
    }

    /// `max pi_q(alpha)` over the monomials present; `-inf` for zero.
    pub fn q_degree(&self, q: u64) -> Dim {
        self.coords
            .terms()
            .keys()
            .map(|a| Dim::Finite(a.pi_q(q)))
            .max()
            .unwrap_or(Dim::NegInfinity)
    }

    /// The first monomial (in the crate's order) achieving the q-degree.
    pub fn top_q_monomial(&self, q: u64) -> Option<(Partition, BigInt)> {
        let top = match self.q_degree(q) {
            Dim::Finite(d) => d,
            Dim::NegInfinity => return None,
        };
        self.coords
            .iter()
            .find(|(a, _)| a.pi_q(q) == top)
            .map(|(a, c)| (a.clone(), c.clone()))
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coords.iter(), "l")?;
        if let Some(p) = self.modulus() {
            write!(f, " (mod {p})")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GenPolyJson {
    modulus: Option<u64>,
    basis: BasisFlavor,
    terms: Vec<TermJson>,
}

impl Serialize for GenPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GenPolyJson {
            modulus: self.modulus(),
            basis: self.basis,
            terms: terms_to_json(self.coords.iter()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GenPolyJson::deserialize(d)?;
        let terms = terms_from_json(&raw.terms).map_err(serde::de::Error::custom)?;
        let trunc = terms
            .iter()
            .map(|(a, _)| a.weight())
            .max()
            .unwrap_or(0)
            .max(crate::DEFAULT_TRUNCATION);
        Ok(GenPoly::new(
            BPoly::from_terms(terms, trunc, raw.modulus),
            raw.basis,
        ))
    }
}

/// One Milnor hypersurface `H_{m,n}` with its integer multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorTerm {
    pub m: u32,
    pub n: u32,
    pub coeff: BigInt,
}

/// The ideal level `n` of `I_p(n)`, including `n = infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealLevel {
    Finite(u32),
    Infinite,
}

/// Generators `l_1, ..., l_N` and the images of all monomials `l_beta`
/// with `|beta| <= N`.
#[derive(Debug)]
pub struct GeneratorBasis {
    flavor: BasisFlavor,
    trunc: u32,
    generators: Vec<CobordismClass>,
    milnor: Vec<Vec<MilnorTerm>>,
    monomials: HashMap<Partition, BPoly>,
}

impl GeneratorBasis {
    fn build(
        flavor: BasisFlavor,
        trunc: u32,
        generators: Vec<CobordismClass>,
        milnor: Vec<Vec<MilnorTerm>>,
    ) -> Self {
        let mut monomials: HashMap<Partition, BPoly> = HashMap::new();
        for beta in partitions_up_to(trunc) {
            let image = match beta.parts().split_first() {
                None => BPoly::one(trunc),
                Some((&first, rest)) => {
                    let rest = Partition::new(rest.to_vec());
                    &monomials[&rest] * generators[first as usize - 1].image()
                }
            };
            monomials.insert(beta, image);
        }
        GeneratorBasis {
            flavor,
            trunc,
            generators,
            milnor,
            monomials,
        }
    }

    pub fn flavor(&self) -> BasisFlavor {
        self.flavor
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// `l_i` for `1 <= i <= N`.
    pub fn generator(&self, i: u32) -> &CobordismClass {
        &self.generators[i as usize - 1]
    }

    /// The Milnor combination behind `l_i` in the base basis.
    pub fn milnor_combination(&self, i: u32) -> &[MilnorTerm] {
        &self.milnor[i as usize - 1]
    }

    /// `c_(i)(l_i)`, with the sign produced by the construction.
    pub fn leading_chern_number(&self, i: u32) -> BigInt {
        self.generator(i).c_alpha(&Partition::single(i))
    }

    /// Image of `l_beta` in `Z[b]`.
    pub fn monomial_image(&self, beta: &Partition) -> &BPoly {
        &self.monomials[beta]
    }

    /// `c_alpha(l_beta)`.
    pub fn c_matrix(&self, alpha: &Partition, beta: &Partition) -> BigInt {
        self.monomials
            .get(beta)
            .map(|img| img.coeff(alpha))
            .unwrap_or_default()
    }

    /// Indices `p^i - 1` (`1 <= i <= r - 1`) whose generators lie in `I_p(r)`.
    pub fn killed_indices(&self) -> Vec<u32> {
        match self.flavor {
            BasisFlavor::Base => Vec::new(),
            BasisFlavor::LandweberAdapted { p, r } => killed_indices(p, r, self.trunc),
        }
    }

    /// Checks the leading Chern numbers, and for adapted bases that the
    /// replaced generators are divisible by `p` with `c_(n) = -p`.
    pub fn validate(&self) -> Result<()> {
        for i in 1..=self.trunc {
            let c = self.leading_chern_number(i);
            let expect = prime_power_base(i as u64 + 1).unwrap_or(1);
            if c.abs() != BigInt::from(expect) {
                return Err(Error::BasisValidation(format!(
                    "c_({i})(l_{i}) = {c}, expected +-{expect}"
                )));
            }
        }
        if let BasisFlavor::LandweberAdapted { p, .. } = self.flavor {
            for n in self.killed_indices() {
                let l = self.generator(n);
                if !l.image().divisible_by(p) {
                    return Err(Error::BasisValidation(format!(
                        "l_{n} is not divisible by {p}"
                    )));
                }
                if self.leading_chern_number(n) != BigInt::from(-(p as i64)) {
                    return Err(Error::BasisValidation(format!(
                        "c_({n})(l_{n}) = {}, expected -{p}",
                        self.leading_chern_number(n)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coordinates of `z` in this basis, by back-substitution weight by
    /// weight. Fails if some coordinate is not an integer.
    pub fn to_gen_coords(&self, z: &CobordismClass) -> Result<GenPoly> {
        let image = z.image();
        if let Some(w) = image.max_weight() {
            if w > self.trunc {
                return Err(Error::TruncationExceeded {
                    dim: w,
                    trunc: self.trunc,
                });
            }
        }
        let mut coords = BPoly::zero(self.trunc, None);
        let top = image.max_weight().unwrap_or(0);
        for w in 0..=top {
            let mut solved: Vec<(Partition, BigInt)> = Vec::new();
            for alpha in partitions_of(w) {
                let mut rest = image.coeff(&alpha);
                for (beta, lambda) in &solved {
                    let c = self.c_matrix(&alpha, beta);
                    if !c.is_zero() {
                        rest -= lambda * c;
                    }
                }
                if rest.is_zero() {
                    continue;
                }
                let diag = self.c_matrix(&alpha, &alpha);
                let (lambda, rem) = rest.div_rem(&diag);
                if !rem.is_zero() {
                    return Err(Error::NotInLazard {
                        partition: alpha.to_string(),
                    });
                }
                coords.add_term(alpha.clone(), lambda.clone());
                solved.push((alpha, lambda));
            }
        }
        Ok(GenPoly::new(coords, self.flavor))
    }

    /// Image in `Z[b]` (or `F_p[b]`) of a polynomial in the generators.
    pub fn from_gen_coords(&self, g: &GenPoly) -> BPoly {
        let mut out = BPoly::zero(self.trunc, g.modulus());
        for (beta, lambda) in g.terms() {
            for (alpha, c) in self.monomial_image(beta).iter() {
                out.add_term(alpha.clone(), lambda * c);
            }
        }
        out
    }

    /// Generator of the subgroup `c_alpha(Lazard)` of `Z`: the gcd of
    /// `c_alpha(l_beta)` over all `beta` of weight `|alpha|`.
    pub fn c_alpha_image_gcd(&self, alpha: &Partition) -> BigInt {
        partitions_of(alpha.weight())
            .iter()
            .fold(BigInt::zero(), |g, beta| g.gcd(&self.c_matrix(alpha, beta)))
    }
}

fn killed_indices(p: u64, r: u32, trunc: u32) -> Vec<u32> {
    (1..r)
        .map_while(|i| p.checked_pow(i).map(|q| q - 1))
        .take_while(|&n| n <= trunc as u64)
        .map(|n| n as u32)
        .collect()
}

/// `(g, x)` with `g = gcd(values) > 0` and `sum x_j values_j = g`.
pub fn extended_gcd(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(values.len());
    for v in values {
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
    }
    (g, coeffs)
}

/// The Milnor hypersurfaces `H_{m,n}` of dimension `i` used to build
/// `l_i`: `m = 0` or `2 <= m <= n`.
pub fn generator_candidates(i: u32) -> Vec<(u32, u32)> {
    std::iter::once((0, i + 1))
        .chain((2..).take_while(|&m| 2 * m <= i + 1).map(|m| (m, i + 1 - m)))
        .collect()
}

/// Shared state: truncation, formal group law and cached bases.
#[derive(Debug)]
pub struct Lazard {
    trunc: u32,
    fgl: FglContext,
    eval: Evaluator,
    base: OnceLock<Arc<GeneratorBasis>>,
    adapted: Mutex<HashMap<(u64, u32), Arc<GeneratorBasis>>>,
}

impl Lazard {
    pub fn new(trunc: u32) -> Self {
        Lazard {
            trunc,
            fgl: FglContext::new(trunc),
            eval: Evaluator::new(trunc),
            base: OnceLock::new(),
            adapted: Mutex::new(HashMap::new()),
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn fgl(&self) -> &FglContext {
        &self.fgl
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.eval
    }

    pub fn evaluate(&self, expr: &VarietyExpr) -> Result<CobordismClass> {
        self.eval.evaluate(expr)
    }

    /// Wraps an arbitrary image, rejecting it unless it has integral
    /// coordinates in the generators.
    pub fn checked_class(&self, image: BPoly) -> Result<CobordismClass> {
        let z = CobordismClass::from_image(image);
        self.coords(&z)?;
        Ok(z)
    }

    /// `l_i = sum lambda_{m,n} H_{m,n}` with `lambda` from the extended gcd
    /// of the `c_(i)(H_{m,n})`.
    pub fn base_generator(&self, i: u32) -> Result<(CobordismClass, Vec<MilnorTerm>)> {
        if i == 0 || i > self.trunc {
            return Err(Error::TruncationExceeded {
                dim: i,
                trunc: self.trunc,
            });
        }
        let top = Partition::single(i);
        let candidates = generator_candidates(i);
        let classes = candidates
            .iter()
            .map(|&(m, n)| self.eval.evaluate(&VarietyExpr::Milnor(m, n)))
            .collect::<Result<Vec<_>>>()?;
        let values: Vec<BigInt> = classes.iter().map(|c| c.c_alpha(&top)).collect();
        let (_, lambdas) = extended_gcd(&values);
        let mut image = BPoly::zero(self.trunc, None);
        let mut terms = Vec::new();
        for ((&(m, n), class), lambda) in candidates.iter().zip(&classes).zip(lambdas) {
            if lambda.is_zero() {
                continue;
            }
            image = &image + &class.image().scale(&lambda);
            terms.push(MilnorTerm { m, n, coeff: lambda });
        }
        Ok((CobordismClass::new(image, Some(i)), terms))
    }

    pub fn base_basis(&self) -> Arc<GeneratorBasis> {
        self.base
            .get_or_init(|| {
                let (generators, milnor): (Vec<_>, Vec<_>) = (1..=self.trunc)
                    .map(|i| self.base_generator(i).expect("i within truncation"))
                    .unzip();
                let basis = GeneratorBasis::build(BasisFlavor::Base, self.trunc, generators, milnor);
                basis.validate().expect("base generators");
                Arc::new(basis)
            })
            .clone()
    }

    /// Basis with `l_(p^i - 1)` replaced by `v_i - sigma p^(p^i - 1) l_(p^i - 1)`
    /// for `1 <= i <= r - 1`, where `sigma` is the sign of `c(l_(p^i - 1))`.
    /// Indices beyond the truncation are left alone.
    pub fn adapted_basis(&self, p: u64, r: u32) -> Result<Arc<GeneratorBasis>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(hit) = self.adapted.lock().unwrap().get(&(p, r)) {
            return Ok(hit.clone());
        }
        let base = self.base_basis();
        let mut generators = base.generators.clone();
        for (i, n) in killed_indices(p, r, self.trunc).into_iter().enumerate() {
            let v = self.v(p, i as u32 + 1).expect("index within truncation");
            let l = base.generator(n);
            let sigma = base.leading_chern_number(n).signum();
            let correction = l.image().scale(&(sigma * BigInt::from(p).pow(n)));
            generators[n as usize - 1] = CobordismClass::new(v.image() - &correction, Some(n));
        }
        let basis = GeneratorBasis::build(
            BasisFlavor::LandweberAdapted { p, r },
            self.trunc,
            generators,
            base.milnor.clone(),
        );
        basis.validate()?;
        let basis = Arc::new(basis);
        self.adapted
            .lock()
            .unwrap()
            .insert((p, r), basis.clone());
        Ok(basis)
    }

    /// Coordinates in the base basis, cached on the class.
    pub fn coords(&self, z: &CobordismClass) -> Result<GenPoly> {
        if let Some(hit) = z.coords.get() {
            return Ok(hit.clone());
        }
        let g = self.base_basis().to_gen_coords(z)?;
        let _ = z.coords.set(g.clone());
        Ok(g)
    }

    pub fn to_gen_coords(&self, z: &CobordismClass, basis: &GeneratorBasis) -> Result<GenPoly> {
        if basis.flavor() == BasisFlavor::Base {
            return self.coords(z);
        }
        basis.to_gen_coords(z)
    }

    /// `u_m`, the coefficient of `t^(m+1)` in `[p](t)`.
    pub fn u(&self, p: u64, m: u32) -> Option<CobordismClass> {
        self.fgl
            .landweber_coeffs(p)
            .get(m as usize)
            .map(|u| CobordismClass::new(u.clone(), Some(m)))
    }

    /// `v_n = u_(p^n - 1)`.
    pub fn v(&self, p: u64, n: u32) -> Option<CobordismClass> {
        let dim = p.checked_pow(n)? - 1;
        self.fgl
            .v(p, n)
            .map(|v| CobordismClass::new(v, Some(dim as u32)))
    }

    /// Membership in `I_p(n)`.
    pub fn in_ipn(&self, z: &CobordismClass, p: u64, n: IdealLevel) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = match n {
            IdealLevel::Infinite => return Ok(z.image().divisible_by(p)),
            IdealLevel::Finite(0) => return Ok(z.is_zero()),
            IdealLevel::Finite(n) => n,
        };
        Ok(self.reduce_mod_ipr(z, p, n)?.is_zero())
    }

    /// The class of `z` in `Lazard / I_p(r)`: adapted coordinates with
    /// killed generators dropped and coefficients mod `p`. For `r = 0`
    /// this is just the integral coordinates.
    pub fn reduce_mod_ipr(&self, z: &CobordismClass, p: u64, r: u32) -> Result<GenPoly> {
        let basis = self.adapted_basis(p, r)?;
        let coords = self.to_gen_coords(z, &basis)?;
        if r == 0 {
            return Ok(coords);
        }
        Ok(reduce_coords(&coords, p, &basis.killed_indices()))
    }

    pub fn c_alpha_image_gcd(&self, alpha: &Partition) -> BigInt {
        self.base_basis().c_alpha_image_gcd(alpha)
    }
}

/// Drops monomials containing a killed generator and reduces mod `p`.
pub fn reduce_coords(g: &GenPoly, p: u64, killed: &[u32]) -> GenPoly {
    let kept = g
        .terms()
        .iter()
        .filter(|(a, _)| !killed.iter().any(|&k| a.contains_part(k)))
        .map(|(a, c)| (a.clone(), c.clone()));
    GenPoly::new(BPoly::from_terms(kept, g.trunc(), Some(p)), g.basis())
}
