//! Exact arithmetic in the Lazard ring and its Landweber ideals.
//!
//! Cobordism classes of smooth projective varieties are represented by their
//! Hurewicz images in `Z[b_1, b_2, ...]`, i.e. by the full collection of their
//! Chern numbers. On top of that the crate provides
//!
//! - the universal formal group law and its `[n]`-series ([`fgl`]),
//! - polynomial generators of the Lazard ring built from Milnor hypersurfaces,
//!   their Landweber-adapted variants and membership in the ideals `I_p(n)`
//!   ([`lazard`]),
//! - Chern numbers of projective spaces, hypersurfaces, complete
//!   intersections and Milnor hypersurfaces ([`geometry`]),
//! - explicit group actions with small fixed loci ([`actions`]),
//! - lower bounds on the fixed-locus dimension of actions of finite
//!   diagonalizable p-groups ([`bounds`]),
//! - the ring of graded bundles over the point ([`equivariant`]).

pub mod actions;
pub mod bounds;
pub mod equivariant;
mod error;
pub mod fgl;
pub mod geometry;
pub mod lazard;
pub mod partitions;
pub mod series;
pub mod verify;

pub use actions::{ActionWitness, GroupDescriptor};
pub use bounds::BoundReport;
pub use error::{Error, Result};
pub use fgl::FglContext;
pub use geometry::VarietyExpr;
pub use lazard::{CobordismClass, GenPoly, GeneratorBasis, IdealLevel, Lazard};
pub use partitions::Partition;
pub use series::{BPoly, TruncSeries};

/// Default truncation weight for `Z[b]`.
pub const DEFAULT_TRUNCATION: u32 = 12;

/// Trial division; the primes involved here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some(p)` when `n` is a positive power of the prime `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// A dimension that may be `-inf` (the empty variety, or "no constraint").
///
/// `NegInfinity` sorts below every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    NegInfinity,
    Finite(u64),
}

impl Dim {
    pub fn is_finite(self) -> bool {
        matches!(self, Dim::Finite(_))
    }

    /// Sum of dimensions, as for a product of varieties.
    pub fn plus(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::NegInfinity,
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::NegInfinity => write!(f, "-inf"),
            Dim::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl serde::Serialize for Dim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::NegInfinity => s.serialize_str("-inf"),
            Dim::Finite(d) => s.serialize_u64(*d),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Dim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "-inf" => Ok(Dim::NegInfinity),
            serde_json::Value::Number(n) if n.is_u64() => Ok(Dim::Finite(n.as_u64().unwrap())),
            other => Err(serde::de::Error::custom(format!("bad dimension {other}"))),
        }
    }
}
