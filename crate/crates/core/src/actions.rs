//! Explicit actions of diagonalizable p-groups with known fixed-locus
//! dimensions.
//!
//! A witness records a variety, a group and the dimension of the fixed
//! locus of an explicit action; the dimension comes from a closed formula,
//! the action itself is never simulated.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::VarietyExpr;
use crate::lazard::{CobordismClass, Lazard};
use crate::{is_prime, Dim, Error, Result};

/// `mu_(p^a_1) x ... x mu_(p^a_r)`. The empty exponent list is the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub p: u64,
    pub exponents: Vec<u32>,
}

impl GroupDescriptor {
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidExpr("group exponents must be >= 1".into()));
        }
        Ok(GroupDescriptor { p, exponents })
    }

    /// Parses a comma separated exponent list such as `"1,1"`; an empty
    /// string gives the trivial group.
    pub fn parse(p: u64, exponents: &str) -> Result<Self> {
        let exps = exponents
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|e| Error::InvalidExpr(format!("bad group exponent {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, exps)
    }

    /// The rank `r`.
    pub fn r(&self) -> u32 {
        self.exponents.len() as u32
    }

    /// The order `q = p^(a_1 + ... + a_r)`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.exponents.iter().sum())
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "trivial (p={})", self.p);
        }
        let factors: Vec<String> = self
            .exponents
            .iter()
            .map(|a| format!("mu_{}", self.p.pow(*a)))
            .collect();
        write!(f, "{}", factors.join(" x "))
    }
}

/// Where a witness comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    /// Action on a Milnor hypersurface.
    #[serde(rename = "prop-3.3.3")]
    Milnor,
    /// Positive or negative part of a generator.
    #[serde(rename = "prop-3.3.4")]
    Generator,
    /// Fixed-point-free action on a degree `p` hypersurface.
    #[serde(rename = "prop-3.2.1")]
    Landweber,
    /// Product of generator witnesses.
    #[serde(rename = "prop-3.4.8")]
    Filtration,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Milnor => "prop-3.3.3",
            Provenance::Generator => "prop-3.3.4",
            Provenance::Landweber => "prop-3.2.1",
            Provenance::Filtration => "prop-3.4.8",
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.into()))
            .map_err(|_| Error::InvalidExpr(format!("unknown provenance {s:?}")))
    }
}

/// A variety with a group action whose fixed locus has dimension
/// `fixed_dim` (`-inf` when there are no fixed points).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionWitness {
    pub variety: VarietyExpr,
    pub group: GroupDescriptor,
    pub fixed_dim: Dim,
    pub provenance: Provenance,
}

impl ActionWitness {
    pub fn class(&self, lazard: &Lazard) -> Result<CobordismClass> {
        lazard.evaluate(&self.variety)
    }
}

/// Fixed-locus dimension of the standard action on `H_{m,n}` for a group
/// of order `q`.
pub fn milnor_fixed_dim(m: u32, n: u32, q: u64) -> u64 {
    let (m, n) = (m as u64, n as u64);
    if m % q == 0 && n % q == 0 {
        (m + n - 1) / q
    } else {
        m / q + n / q
    }
}

/// `H_{m,n}` with the action of [`milnor_fixed_dim`].
pub fn milnor_witness(m: u32, n: u32, group: &GroupDescriptor) -> Result<ActionWitness> {
    let variety = VarietyExpr::Milnor(m, n);
    variety.validate()?;
    Ok(ActionWitness {
        variety,
        group: group.clone(),
        fixed_dim: Dim::Finite(milnor_fixed_dim(m, n, group.q())),
        provenance: Provenance::Milnor,
    })
}

fn milnor_part(terms: &[(u32, u32, i64)], group: &GroupDescriptor) -> ActionWitness {
    let q = group.q();
    let components: Vec<VarietyExpr> = terms
        .iter()
        .map(|&(m, n, k)| match k {
            1 => VarietyExpr::Milnor(m, n),
            k => VarietyExpr::Scaled(k, Box::new(VarietyExpr::Milnor(m, n))),
        })
        .collect();
    let fixed_dim = terms
        .iter()
        .map(|&(m, n, _)| Dim::Finite(milnor_fixed_dim(m, n, q)))
        .max()
        .unwrap_or(Dim::NegInfinity);
    let variety = match <[VarietyExpr; 1]>::try_from(components) {
        Ok([single]) => single,
        Err(components) => VarietyExpr::DisjointUnion(components),
    };
    ActionWitness {
        variety,
        group: group.clone(),
        fixed_dim,
        provenance: Provenance::Generator,
    }
}

/// `(X_i^+, X_i^-)`: the Milnor hypersurfaces entering `l_i` with positive
/// and negative coefficients, each as a disjoint union with multiplicities.
/// `[X_i^+] - [X_i^-] = l_i`.
pub fn generator_action(
    lazard: &Lazard,
    i: u32,
    group: &GroupDescriptor,
) -> Result<(ActionWitness, ActionWitness)> {
    if i == 0 || i > lazard.trunc() {
        return Err(Error::TruncationExceeded {
            dim: i,
            trunc: lazard.trunc(),
        });
    }
    let basis = lazard.base_basis();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for t in basis.milnor_combination(i) {
        let k: i64 = t.coeff.abs().try_into().map_err(|_| {
            Error::InvalidExpr(format!("multiplicity {} does not fit in i64", t.coeff))
        })?;
        if t.coeff.is_positive() {
            plus.push((t.m, t.n, k));
        } else if !t.coeff.is_zero() {
            minus.push((t.m, t.n, k));
        }
    }
    Ok((milnor_part(&plus, group), milnor_part(&minus, group)))
}

/// `Y_s`, a degree `p` hypersurface in `P^(p^s)` with a fixed-point-free
/// action of any group of rank at least `s + 1`.
pub fn landweber_variety(lazard: &Lazard, s: u32, group: &GroupDescriptor) -> Result<ActionWitness> {
    let p = group.p;
    let needed = s as usize + 1;
    if group.exponents.len() < needed {
        return Err(Error::GroupTooSmall {
            rank: group.exponents.len(),
            s,
            needed,
        });
    }
    let dim = p
        .checked_pow(s)
        .map(|x| x - 1)
        .filter(|&d| d <= lazard.trunc() as u64)
        .ok_or(Error::TruncationExceeded {
            dim: u32::MAX,
            trunc: lazard.trunc(),
        })?;
    Ok(ActionWitness {
        variety: VarietyExpr::Hyp(p as u32, dim as u32),
        group: group.clone(),
        fixed_dim: Dim::NegInfinity,
        provenance: Provenance::Landweber,
    })
}

/// Products of generator witnesses `X_(i_1)^+- x ... x X_(i_m)^+-` with
/// `sum floor(i_j / q) <= d` and `sum i_j <= max_dim`, including the empty
/// product (a point). Empty factors are skipped.
pub fn filtration_family(
    lazard: &Lazard,
    d: u64,
    group: &GroupDescriptor,
    max_dim: u32,
) -> Result<Vec<ActionWitness>> {
    if max_dim > lazard.trunc() {
        return Err(Error::TruncationExceeded {
            dim: max_dim,
            trunc: lazard.trunc(),
        });
    }
    let q = group.q();
    let mut factors: Vec<(u32, ActionWitness)> = Vec::new();
    for i in 1..=max_dim {
        if i as u64 / q > d {
            continue;
        }
        let (plus, minus) = generator_action(lazard, i, group)?;
        for w in [plus, minus] {
            if w.fixed_dim.is_finite() {
                factors.push((i, w));
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect_products(&factors, 0, d, max_dim, q, &mut chosen, &mut out, group);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn collect_products(
    factors: &[(u32, ActionWitness)],
    start: usize,
    d_left: u64,
    dim_left: u32,
    q: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<ActionWitness>,
    group: &GroupDescriptor,
) {
    let members: Vec<&ActionWitness> = chosen.iter().map(|&k| &factors[k].1).collect();
    out.push(match members.as_slice() {
        [] => ActionWitness {
            variety: VarietyExpr::Point,
            group: group.clone(),
            fixed_dim: Dim::Finite(0),
            provenance: Provenance::Filtration,
        },
        [single] => ActionWitness {
            provenance: Provenance::Filtration,
            ..(*single).clone()
        },
        many => ActionWitness {
            variety: VarietyExpr::Product(many.iter().map(|w| w.variety.clone()).collect()),
            group: group.clone(),
            fixed_dim: many
                .iter()
                .fold(Dim::Finite(0), |acc, w| acc.plus(w.fixed_dim)),
            provenance: Provenance::Filtration,
        },
    });
    for k in start..factors.len() {
        let i = factors[k].0;
        let cost = i as u64 / q;
        if i > dim_left || cost > d_left {
            continue;
        }
        chosen.push(k);
        collect_products(factors, k, d_left - cost, dim_left - i, q, chosen, out, group);
        chosen.pop();
    }
}
