//! Hurewicz images of standard varieties.
//!
//! The class of `X` is `deg P(-T_X)` where `P(L) = sum_i c_1(L)^i b_i` for a
//! line bundle and `P` is multiplicative. All tangent bundles below are
//! restrictions of split virtual bundles on `P^m` or `P^m x P^n`, so the
//! computation happens in truncated Chow rings `Z[b][h]/(h^(m+1))` (one or
//! two hyperplane classes). Restriction to a hypersurface of degree `d` is
//! multiplication by `d h` before taking the top coefficient.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::lazard::CobordismClass;
use crate::partitions::{partitions_of, Partition};
use crate::series::{BPoly, SeriesRing, TruncSeries};
use crate::{Error, Result};

/// A variety built from standard constructors.
///
/// JSON form: `"point"`, `{"proj":n}`, `{"hyp":[d,n]}` (degree `d`
/// hypersurface of dimension `n` in `P^(n+1)`), `{"ci":[[d_1,...],n]}`,
/// `{"milnor":[m,n]}`, `{"prod":[...]}`, `{"union":[...]}`,
/// `{"scaled":[k, expr]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyExpr {
    Point,
    Proj(u32),
    Hyp(u32, u32),
    #[serde(rename = "ci")]
    CompInt(Vec<u32>, u32),
    Milnor(u32, u32),
    #[serde(rename = "prod")]
    Product(Vec<VarietyExpr>),
    #[serde(rename = "union")]
    DisjointUnion(Vec<VarietyExpr>),
    Scaled(i64, Box<VarietyExpr>),
}

impl VarietyExpr {
    /// Pure dimension, or `None` for an empty union or mixed dimensions.
    pub fn dimension(&self) -> Option<u32> {
        match self {
            VarietyExpr::Point => Some(0),
            VarietyExpr::Proj(n) | VarietyExpr::Hyp(_, n) | VarietyExpr::CompInt(_, n) => Some(*n),
            VarietyExpr::Milnor(m, n) => Some(m + n - 1),
            VarietyExpr::Product(xs) => xs.iter().map(VarietyExpr::dimension).sum(),
            VarietyExpr::DisjointUnion(xs) => {
                let mut dims = xs.iter().map(VarietyExpr::dimension);
                let first = dims.next()??;
                dims.all(|d| d == Some(first)).then_some(first)
            }
            VarietyExpr::Scaled(_, x) => x.dimension(),
        }
    }

    /// Largest dimension of any component, used for truncation checks.
    pub fn max_dimension(&self) -> u32 {
        match self {
            VarietyExpr::Product(xs) => xs.iter().map(VarietyExpr::max_dimension).sum(),
            VarietyExpr::DisjointUnion(xs) => {
                xs.iter().map(VarietyExpr::max_dimension).max().unwrap_or(0)
            }
            VarietyExpr::Scaled(_, x) => x.max_dimension(),
            other => other.dimension().unwrap_or(0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            VarietyExpr::Hyp(d, _) if *d == 0 => {
                Err(Error::InvalidExpr("hypersurface degree must be >= 1".into()))
            }
            VarietyExpr::CompInt(ds, _) if ds.contains(&0) => {
                Err(Error::InvalidExpr("complete intersection degrees must be >= 1".into()))
            }
            VarietyExpr::Milnor(m, n) if *n == 0 || m > n => Err(Error::InvalidExpr(format!(
                "Milnor hypersurface needs 0 <= m <= n, n >= 1 (got m={m}, n={n})"
            ))),
            VarietyExpr::Product(xs) | VarietyExpr::DisjointUnion(xs) => {
                xs.iter().try_for_each(VarietyExpr::validate)
            }
            VarietyExpr::Scaled(_, x) => x.validate(),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VarietyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyExpr::Point => write!(f, "pt"),
            VarietyExpr::Proj(n) => write!(f, "P^{n}"),
            VarietyExpr::Hyp(d, n) => write!(f, "Hyp({d},{n})"),
            VarietyExpr::CompInt(ds, n) => {
                let ds: Vec<String> = ds.iter().map(u32::to_string).collect();
                write!(f, "CI([{}],{n})", ds.join(","))
            }
            VarietyExpr::Milnor(m, n) => write!(f, "H_{{{m},{n}}}"),
            VarietyExpr::Product(xs) => {
                let xs: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "({})", xs.join(" x "))
            }
            VarietyExpr::DisjointUnion(xs) if xs.is_empty() => write!(f, "empty"),
            VarietyExpr::DisjointUnion(xs) => {
                let xs: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "({})", xs.join(" + "))
            }
            VarietyExpr::Scaled(k, x) => write!(f, "{k}*{x}"),
        }
    }
}

impl FromStr for VarietyExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let expr: VarietyExpr =
            serde_json::from_str(s.trim()).map_err(|e| Error::InvalidExpr(e.to_string()))?;
        expr.validate()?;
        Ok(expr)
    }
}

/// `P(x) = sum_i b_i x^i` evaluated at a linear form `x` of the Chow ring.
fn cf_class(lin: &TruncSeries) -> TruncSeries {
    let ring = lin.ring();
    let outer = SeriesRing::univariate("t", ring.total, ring.trunc);
    let coeffs = (0..=ring.total).map(|i| match i {
        0 => BPoly::one(ring.trunc),
        i => BPoly::b(i, ring.trunc),
    });
    TruncSeries::from_coeffs(&outer, coeffs)
        .compose(lin)
        .expect("linear forms have no constant term")
}

fn proj_image(n: u32, trunc: u32) -> BPoly {
    let ring = SeriesRing::new(&[("h", n)], n, trunc);
    let h = TruncSeries::var(&ring, 0);
    let neg_tangent = cf_class(&h).pow_i64(-(n as i64 + 1)).expect("P(h) is a unit");
    neg_tangent.coeff(&[n])
}

/// Complete intersection of the given degrees, of dimension `n`, in
/// `P^(n + c)`.
fn complete_intersection_image(degrees: &[u32], n: u32, trunc: u32) -> BPoly {
    let c = degrees.len() as u32;
    let ambient = n + c;
    let ring = SeriesRing::new(&[("h", ambient)], ambient, trunc);
    let h = TruncSeries::var(&ring, 0);
    let mut integrand = cf_class(&h)
        .pow_i64(-(ambient as i64 + 1))
        .expect("P(h) is a unit");
    for &d in degrees {
        let dh = h.scale_int(d as i64);
        // normal bundle O(d) contributes P(O(d)); i_*(1) contributes d h
        integrand = &integrand * &cf_class(&dh);
        integrand = &integrand * &dh;
    }
    integrand.coeff(&[ambient])
}

/// `H_{m,n}`: the bidegree (1,1) hypersurface in `P^m x P^n`.
fn milnor_image(m: u32, n: u32, trunc: u32) -> BPoly {
    let ring = SeriesRing::new(&[("h1", m), ("h2", n)], m + n, trunc);
    let h1 = TruncSeries::var(&ring, 0);
    let h2 = TruncSeries::var(&ring, 1);
    let sum = &h1 + &h2;
    let ambient = &cf_class(&h1)
        .pow_i64(-(m as i64 + 1))
        .expect("unit")
        * &cf_class(&h2).pow_i64(-(n as i64 + 1)).expect("unit");
    let integrand = &(&ambient * &cf_class(&sum)) * &sum;
    integrand.coeff(&[m, n])
}

/// Evaluates expressions to cobordism classes, memoizing the leaf
/// constructors.
#[derive(Debug)]
pub struct Evaluator {
    trunc: u32,
    cache: Mutex<HashMap<VarietyExpr, BPoly>>,
}

impl Evaluator {
    pub fn new(trunc: u32) -> Self {
        Evaluator {
            trunc,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn evaluate(&self, expr: &VarietyExpr) -> Result<CobordismClass> {
        expr.validate()?;
        let top = expr.max_dimension();
        if top > self.trunc {
            return Err(Error::TruncationExceeded {
                dim: top,
                trunc: self.trunc,
            });
        }
        Ok(CobordismClass::new(self.image(expr), expr.dimension()))
    }

    fn image(&self, expr: &VarietyExpr) -> BPoly {
        let trunc = self.trunc;
        match expr {
            VarietyExpr::Point => BPoly::one(trunc),
            VarietyExpr::Product(xs) => xs
                .iter()
                .fold(BPoly::one(trunc), |acc, x| &acc * &self.image(x)),
            VarietyExpr::DisjointUnion(xs) => xs
                .iter()
                .fold(BPoly::zero(trunc, None), |acc, x| &acc + &self.image(x)),
            VarietyExpr::Scaled(k, x) => self.image(x).scale(&BigInt::from(*k)),
            leaf => {
                if let Some(hit) = self.cache.lock().unwrap().get(leaf) {
                    return hit.clone();
                }
                let image = match leaf {
                    VarietyExpr::Proj(n) => proj_image(*n, trunc),
                    VarietyExpr::Hyp(d, n) => complete_intersection_image(&[*d], *n, trunc),
                    VarietyExpr::CompInt(ds, n) => complete_intersection_image(ds, *n, trunc),
                    VarietyExpr::Milnor(m, n) => milnor_image(*m, *n, trunc),
                    _ => unreachable!(),
                };
                self.cache
                    .lock()
                    .unwrap()
                    .insert(leaf.clone(), image.clone());
                image
            }
        }
    }
}

/// Evaluates with a throwaway [`Evaluator`].
pub fn evaluate(expr: &VarietyExpr, trunc: u32) -> Result<CobordismClass> {
    Evaluator::new(trunc).evaluate(expr)
}

/// Outcome of [`euler_like_checks`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SanityReport {
    /// Partitions with `c_alpha != 0` whose weight differs from the dimension.
    pub stray_terms: Vec<Partition>,
    /// Product nodes checked against the `c_alpha(xy)` convolution formula.
    pub products_checked: usize,
    /// `(product, alpha)` pairs where the two routes disagree.
    pub product_mismatches: Vec<(String, Partition)>,
}

impl SanityReport {
    pub fn ok(&self) -> bool {
        self.stray_terms.is_empty() && self.product_mismatches.is_empty()
    }
}

/// `c_alpha(xy) = sum over beta ∪ gamma = alpha of c_beta(x) c_gamma(y)`,
/// evaluated directly from the Chern numbers of the factors.
pub fn product_chern_number(x: &BPoly, y: &BPoly, alpha: &Partition) -> BigInt {
    alpha
        .sub_multisets()
        .into_iter()
        .map(|beta| {
            let gamma = alpha.difference(&beta).expect("sub-multiset");
            x.coeff(&beta) * y.coeff(&gamma)
        })
        .sum()
}

/// Checks that Chern numbers live in the right degree and that products
/// match the convolution formula.
pub fn euler_like_checks(expr: &VarietyExpr, eval: &Evaluator) -> Result<SanityReport> {
    let mut report = SanityReport::default();
    let class = eval.evaluate(expr)?;
    if let Some(dim) = expr.dimension() {
        report.stray_terms = class
            .image()
            .terms()
            .keys()
            .filter(|a| a.weight() != dim)
            .cloned()
            .collect();
    }
    check_products(expr, eval, &mut report)?;
    Ok(report)
}

fn check_products(expr: &VarietyExpr, eval: &Evaluator, report: &mut SanityReport) -> Result<()> {
    match expr {
        VarietyExpr::Product(xs) if !xs.is_empty() => {
            let direct = eval.evaluate(expr)?;
            let mut acc = BPoly::one(eval.trunc());
            let mut acc_dim = 0;
            for x in xs {
                let factor = eval.evaluate(x)?;
                let next_dim = acc_dim + x.max_dimension();
                let mut next = BPoly::zero(eval.trunc(), None);
                for w in 0..=next_dim.min(eval.trunc()) {
                    for alpha in partitions_of(w) {
                        let c = product_chern_number(&acc, factor.image(), &alpha);
                        next.add_term(alpha, c);
                    }
                }
                acc = next;
                acc_dim = next_dim;
            }
            report.products_checked += 1;
            for w in 0..=acc_dim.min(eval.trunc()) {
                for alpha in partitions_of(w) {
                    if acc.coeff(&alpha) != direct.image().coeff(&alpha) {
                        report.product_mismatches.push((expr.to_string(), alpha));
                    }
                }
            }
            xs.iter().try_for_each(|x| check_products(x, eval, report))
        }
        VarietyExpr::DisjointUnion(xs) | VarietyExpr::Product(xs) => {
            xs.iter().try_for_each(|x| check_products(x, eval, report))
        }
        VarietyExpr::Scaled(_, x) => check_products(x, eval, report),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 10;

    fn c(expr: &VarietyExpr, parts: &[u32]) -> BigInt {
        evaluate(expr, N)
            .unwrap()
            .image()
            .coeff(&Partition::new(parts.to_vec()))
    }

    fn binom(n: u64, k: u64) -> i64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
    }

    #[test]
    fn projective_line() {
        let p1 = VarietyExpr::Proj(1);
        assert_eq!(c(&p1, &[1]), BigInt::from(-2));
        assert_eq!(c(&p1, &[]), BigInt::from(0));
        assert_eq!(c(&p1, &[2]), BigInt::from(0));
    }

    #[test]
    fn top_chern_number_of_projective_space() {
        for n in 1..=8 {
            assert_eq!(c(&VarietyExpr::Proj(n), &[n]), BigInt::from(-(n as i64) - 1));
        }
        // P^2 = -3 b2 + 6 b1^2
        assert_eq!(c(&VarietyExpr::Proj(2), &[1, 1]), BigInt::from(6));
    }

    #[test]
    fn hypersurface_and_milnor_examples() {
        assert_eq!(c(&VarietyExpr::Hyp(3, 2), &[2]), BigInt::from(15));
        assert_eq!(c(&VarietyExpr::Milnor(2, 2), &[3]), BigInt::from(6));
        assert_eq!(c(&VarietyExpr::CompInt(vec![2, 2], 2), &[2]), BigInt::from(12));
        for n in 2..=5 {
            assert_eq!(c(&VarietyExpr::Milnor(0, n), &[n - 1]), BigInt::from(-(n as i64)));
        }
        for n in 2..=5u32 {
            for m in 2..=n {
                let expect = binom((m + n) as u64, m as u64);
                assert_eq!(c(&VarietyExpr::Milnor(m, n), &[m + n - 1]), BigInt::from(expect));
            }
        }
    }

    #[test]
    fn milnor_zero_is_a_projective_space() {
        let a = evaluate(&VarietyExpr::Milnor(0, 4), N).unwrap();
        let b = evaluate(&VarietyExpr::Proj(3), N).unwrap();
        assert_eq!(a.image(), b.image());
    }

    #[test]
    fn degree_one_hypersurface_is_projective_space() {
        let a = evaluate(&VarietyExpr::Hyp(1, 4), N).unwrap();
        let b = evaluate(&VarietyExpr::Proj(4), N).unwrap();
        assert_eq!(a.image(), b.image());
    }

    #[test]
    fn plane_cubic_has_zero_class() {
        let cubic = evaluate(&VarietyExpr::Hyp(3, 1), N).unwrap();
        assert!(cubic.image().is_zero());
    }

    #[test]
    fn sanity_checks_on_products_and_unions() {
        let eval = Evaluator::new(N);
        let p1 = VarietyExpr::Proj(1);
        let prod = VarietyExpr::Product(vec![p1.clone(), p1.clone()]);
        let report = euler_like_checks(&prod, &eval).unwrap();
        assert!(report.ok());
        assert_eq!(report.products_checked, 1);
        assert_eq!(c(&prod, &[1, 1]), BigInt::from(4));

        let union = VarietyExpr::DisjointUnion(vec![p1.clone(), p1.clone()]);
        let doubled = evaluate(&p1, N).unwrap().image().scale(&BigInt::from(2));
        assert_eq!(evaluate(&union, N).unwrap().image(), &doubled);
        assert_eq!(evaluate(&VarietyExpr::Point, N).unwrap().image(), &BPoly::one(N));

        let nested = VarietyExpr::Product(vec![
            VarietyExpr::Hyp(3, 2),
            VarietyExpr::Milnor(2, 3),
            VarietyExpr::Proj(1),
        ]);
        assert!(euler_like_checks(&nested, &eval).unwrap().ok());
    }

    #[test]
    fn parse_and_errors() {
        let e: VarietyExpr = r#"{"prod":[{"proj":2},{"hyp":[3,4]}]}"#.parse().unwrap();
        assert_eq!(
            e,
            VarietyExpr::Product(vec![VarietyExpr::Proj(2), VarietyExpr::Hyp(3, 4)])
        );
        assert_eq!(e.dimension(), Some(6));
        let m: VarietyExpr = r#"{"milnor":[2,3]}"#.parse().unwrap();
        assert_eq!(m, VarietyExpr::Milnor(2, 3));
        let p: VarietyExpr = r#""point""#.parse().unwrap();
        assert_eq!(p, VarietyExpr::Point);
        assert!("{\"milnor\":[3,2]}".parse::<VarietyExpr>().is_err());
        assert!("{not json".parse::<VarietyExpr>().is_err());
        assert_eq!(
            evaluate(&VarietyExpr::Proj(11), N),
            Err(Error::TruncationExceeded { dim: 11, trunc: N })
        );
    }
}
