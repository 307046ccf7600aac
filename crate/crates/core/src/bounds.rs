//! Lower bounds on fixed-locus dimensions.
//!
//! For a diagonalizable p-group `G` of rank `r` and order `q`, a class `z`
//! is realized by a `G`-variety with `dim X^G <= d` only if its image in
//! `Lazard / I_p(r)` has q-degree at most `d`. The reported bound is that
//! q-degree, `-inf` when the class lies in `I_p(r)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::actions::GroupDescriptor;
use crate::lazard::{CobordismClass, GenPoly, GeneratorBasis, IdealLevel, Lazard};
use crate::partitions::{in_admissible_class, partitions_of, Partition};
use crate::series::BPoly;
use crate::{Dim, Result};

/// A monomial of the reduced polynomial reaching the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub monomial: Partition,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub class: CobordismClass,
    pub group: GroupDescriptor,
    pub q: u64,
    pub r: u32,
    pub in_ipr: bool,
    pub reduced: GenPoly,
    pub lower_bound: Dim,
    pub certificate: Option<Certificate>,
}

/// Every action of `group` on a variety with class `z` has a fixed point.
pub fn has_forced_fixed_point(lazard: &Lazard, z: &CobordismClass, group: &GroupDescriptor) -> Result<bool> {
    Ok(!lazard.in_ipn(z, group.p, IdealLevel::Finite(group.r()))?)
}

/// The q-degree of `z` modulo `I_p(r)`. For the trivial group this is the
/// top dimension of `z` over the integers.
pub fn fixed_dim_lower_bound(
    lazard: &Lazard,
    z: &CobordismClass,
    group: &GroupDescriptor,
) -> Result<BoundReport> {
    let q = group.q();
    let reduced = lazard.reduce_mod_ipr(z, group.p, group.r())?;
    let lower_bound = reduced.q_degree(q);
    let certificate = reduced.top_q_monomial(q).map(|(monomial, c)| Certificate {
        monomial,
        coeff: c.to_string(),
    });
    Ok(BoundReport {
        class: z.clone(),
        group: group.clone(),
        q,
        r: group.r(),
        in_ipr: reduced.is_zero(),
        reduced,
        lower_bound,
        certificate,
    })
}

/// Bound `pi_q(alpha)` read off a single Chern number: either `c_alpha(z)`
/// is prime to `p`, or `alpha` is admissible for `r` and `c_alpha(z)` is
/// not in `p c_alpha(Lazard)`.
pub fn chern_bound(
    lazard: &Lazard,
    z: &CobordismClass,
    alpha: &Partition,
    group: &GroupDescriptor,
) -> Option<u64> {
    let p = BigInt::from(group.p);
    let c = z.c_alpha(alpha);
    let bound = alpha.pi_q(group.q());
    if !c.is_multiple_of(&p) {
        return Some(bound);
    }
    if !in_admissible_class(alpha, group.p, group.r()) {
        return None;
    }
    let step = &p * lazard.c_alpha_image_gcd(alpha);
    let in_lattice = if step.is_zero() {
        c.is_zero()
    } else {
        c.is_multiple_of(&step)
    };
    (!in_lattice).then_some(bound)
}

/// A linear combination `sum_beta w_beta c_beta` of Chern numbers.
pub type Functional = BTreeMap<Partition, BigInt>;

pub fn apply_functional(f: &Functional, image: &BPoly) -> BigInt {
    f.iter().map(|(beta, w)| w * image.coeff(beta)).sum()
}

/// `d_alpha`: a combination of the `c_beta` with `alpha` refining `beta`
/// that vanishes on every `l_gamma` of weight `|alpha|` except `l_alpha`.
pub fn d_alpha(alpha: &Partition, basis: &GeneratorBasis) -> Functional {
    let mut memo = HashMap::new();
    d_alpha_memo(alpha, basis, &mut memo)
}

fn d_alpha_memo(
    alpha: &Partition,
    basis: &GeneratorBasis,
    memo: &mut HashMap<Partition, (Functional, BigInt)>,
) -> Functional {
    if let Some((f, _)) = memo.get(alpha) {
        return f.clone();
    }
    let coarser: Vec<Partition> = partitions_of(alpha.weight())
        .into_iter()
        .filter(|beta| beta != alpha && alpha.refines(beta))
        .filter(|beta| !basis.c_matrix(alpha, beta).is_zero())
        .collect();
    let mut subs = Vec::new();
    for beta in &coarser {
        d_alpha_memo(beta, basis, memo);
        subs.push((beta, memo[beta].clone()));
    }
    let u = subs
        .iter()
        .fold(BigInt::from(1), |acc, (_, (_, value))| acc.lcm(value));
    let mut f: Functional = BTreeMap::new();
    f.insert(alpha.clone(), u.clone());
    for (beta, (g, value)) in subs {
        let factor = basis.c_matrix(alpha, beta) * (&u / value);
        for (delta, w) in g {
            let entry = f.entry(delta).or_insert_with(BigInt::zero);
            *entry -= &factor * w;
        }
    }
    f.retain(|_, w| !w.is_zero());
    let value = apply_functional(&f, basis.monomial_image(alpha)).abs();
    memo.insert(alpha.clone(), (f.clone(), value));
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::landweber_variety;
    use crate::geometry::VarietyExpr;
    use std::sync::LazyLock;

    static LAZ: LazyLock<Lazard> = LazyLock::new(|| Lazard::new(8));

    fn group(p: u64, e: &[u32]) -> GroupDescriptor {
        GroupDescriptor::new(p, e.to_vec()).unwrap()
    }

    fn class(e: VarietyExpr) -> CobordismClass {
        LAZ.evaluate(&e).unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn forced_fixed_points() {
        let g = group(2, &[1, 1]);
        assert!(has_forced_fixed_point(&LAZ, &class(VarietyExpr::Point), &g).unwrap());
        assert!(has_forced_fixed_point(&LAZ, &class(VarietyExpr::Proj(2)), &g).unwrap());
        let y1 = landweber_variety(&LAZ, 1, &g).unwrap();
        assert!(!has_forced_fixed_point(&LAZ, &y1.class(&LAZ).unwrap(), &g).unwrap());
    }

    #[test]
    fn projective_four_space() {
        let r = fixed_dim_lower_bound(&LAZ, &class(VarietyExpr::Proj(4)), &group(2, &[1])).unwrap();
        assert_eq!(r.lower_bound, Dim::Finite(2));
        assert!(!r.in_ipr);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.monomial.pi_q(2), 2);
        assert_eq!(chern_bound(&LAZ, &class(VarietyExpr::Proj(4)), &part(&[4]), &group(2, &[1])), Some(2));
    }

    #[test]
    fn ideal_classes_have_no_bound() {
        let two = class(VarietyExpr::Hyp(2, 0));
        for e in [&[1][..], &[1, 1], &[2]] {
            let r = fixed_dim_lower_bound(&LAZ, &two, &group(2, e)).unwrap();
            assert_eq!(r.lower_bound, Dim::NegInfinity);
            assert!(r.in_ipr && r.certificate.is_none());
        }
        let p1 = class(VarietyExpr::Proj(1));
        let r = fixed_dim_lower_bound(&LAZ, &p1, &group(2, &[1, 1])).unwrap();
        assert_eq!(r.lower_bound, Dim::NegInfinity);
    }

    #[test]
    fn trivial_group_gives_dimension() {
        let z = class(VarietyExpr::Hyp(3, 5));
        let r = fixed_dim_lower_bound(&LAZ, &z, &group(2, &[])).unwrap();
        assert_eq!(r.lower_bound, Dim::Finite(5));
    }

    #[test]
    fn hypersurface_bound() {
        let z = class(VarietyExpr::Hyp(3, 4));
        let r = fixed_dim_lower_bound(&LAZ, &z, &group(2, &[1])).unwrap();
        assert_eq!(r.lower_bound, Dim::Finite(2));
    }

    #[test]
    fn chern_bound_cases() {
        let g = group(2, &[2]);
        let p2 = class(VarietyExpr::Proj(2));
        // c_(1,1) = 6 is even but not in 4Z
        assert_eq!(chern_bound(&LAZ, &p2, &part(&[1, 1]), &g), Some(0));
        assert_eq!(chern_bound(&LAZ, &p2, &part(&[2]), &g), Some(0));
        let curves = class(VarietyExpr::Product(vec![VarietyExpr::Proj(1), VarietyExpr::Proj(1)]));
        assert_eq!(chern_bound(&LAZ, &curves, &part(&[1, 1]), &group(2, &[1])), None);
    }

    #[test]
    fn d_alpha_orthogonality() {
        let basis = LAZ.base_basis();
        assert_eq!(
            d_alpha(&Partition::empty(), &basis),
            BTreeMap::from([(Partition::empty(), BigInt::from(1))])
        );
        for w in 1..=5 {
            for alpha in partitions_of(w) {
                let f = d_alpha(&alpha, &basis);
                for beta in partitions_of(w) {
                    let v = apply_functional(&f, basis.monomial_image(&beta));
                    assert_eq!(v.is_zero(), beta != alpha, "alpha={alpha} beta={beta}");
                }
            }
        }
        let f = d_alpha(&part(&[1, 1]), &basis);
        assert!(apply_functional(&f, basis.monomial_image(&part(&[2]))).is_zero());
    }
}
