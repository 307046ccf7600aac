//! The universal formal group law over `Z[b]`.
//!
//! With `exp(t) = sum_{i>=0} b_i t^{i+1}` (and `b_0 = 1`), the formal group
//! law is `x +_F y = exp(log x + log y)` where `log` is the compositional
//! inverse of `exp`. Formal multiplication by `n >= 0` is `exp(n log t)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::series::{BPoly, SeriesRing, TruncSeries};

/// Truncation data plus cached exp/log/FGL series. Immutable once built;
/// the caches fill in lazily behind locks.
#[derive(Debug)]
pub struct FglContext {
    trunc: u32,
    degree: u32,
    exp: TruncSeries,
    log: TruncSeries,
    sum: OnceLock<TruncSeries>,
    inverse: OnceLock<TruncSeries>,
    n_series: Mutex<HashMap<i64, TruncSeries>>,
}

impl FglContext {
    /// Weights truncated at `trunc`, series truncated at degree `trunc + 2`.
    pub fn new(trunc: u32) -> Self {
        Self::with_degree(trunc, trunc + 2)
    }

    pub fn with_degree(trunc: u32, degree: u32) -> Self {
        let ring = SeriesRing::univariate("t", degree, trunc);
        let coeffs = (0..=degree).map(|k| match k {
            0 => BPoly::zero(trunc, None),
            1 => BPoly::one(trunc),
            k => BPoly::b(k - 1, trunc),
        });
        let exp = TruncSeries::from_coeffs(&ring, coeffs);
        let log = exp
            .comp_inverse()
            .expect("exp has unit linear coefficient");
        FglContext {
            trunc,
            degree,
            exp,
            log,
            sum: OnceLock::new(),
            inverse: OnceLock::new(),
            n_series: Mutex::new(HashMap::new()),
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ring(&self) -> &SeriesRing {
        self.exp.ring()
    }

    pub fn exp(&self) -> &TruncSeries {
        &self.exp
    }

    pub fn log(&self) -> &TruncSeries {
        &self.log
    }

    /// The ring `Z[b][[x, y]]` used for the two-variable law.
    pub fn ring2(&self) -> SeriesRing {
        SeriesRing::new(&[("x", self.degree), ("y", self.degree)], self.degree, self.trunc)
    }

    /// `x +_F y = exp(log x + log y)`.
    pub fn fgl_sum(&self) -> &TruncSeries {
        self.sum.get_or_init(|| {
            let ring2 = self.ring2();
            let logs = &self.log.embed(&ring2, 0) + &self.log.embed(&ring2, 1);
            self.exp.compose(&logs).expect("log has no constant term")
        })
    }

    /// The formal inverse `[-1](t)`, solved from `t +_F i(t) = 0` one
    /// degree at a time.
    pub fn formal_inverse(&self) -> &TruncSeries {
        self.inverse.get_or_init(|| {
            let ring = self.ring();
            let t = TruncSeries::var(ring, 0);
            let mut inv = t.neg();
            for k in 2..=self.degree {
                let err = self
                    .fgl_sum()
                    .compose2(&t, &inv)
                    .expect("zero constant terms")
                    .coeff1(k);
                if !err.is_zero() {
                    let mut e = vec![BPoly::zero(self.trunc, None); k as usize + 1];
                    e[k as usize] = err;
                    inv = &inv - &TruncSeries::from_coeffs(ring, e);
                }
            }
            inv
        })
    }

    /// `[n]_F(t)`: `exp(n log t)` for `n >= 0`, and `[-1]([-n](t))` for `n < 0`.
    pub fn n_series(&self, n: i64) -> TruncSeries {
        if let Some(hit) = self.n_series.lock().unwrap().get(&n) {
            return hit.clone();
        }
        let series = if n >= 0 {
            self.exp
                .compose(&self.log.scale_int(n))
                .expect("log has no constant term")
        } else {
            self.formal_inverse()
                .compose(&self.n_series(-n))
                .expect("[n] has no constant term")
        };
        self.n_series.lock().unwrap().insert(n, series.clone());
        series
    }

    /// `[n]_F(t)` computed as `exp(n log t)` for any sign of `n`.
    pub fn n_series_via_log(&self, n: i64) -> TruncSeries {
        self.exp
            .compose(&self.log.scale_int(n))
            .expect("log has no constant term")
    }

    /// The coefficients `u_0, ..., u_N` of `[p](t) = sum u_m t^(m+1)`.
    pub fn landweber_coeffs(&self, p: u64) -> Vec<BPoly> {
        let series = self.n_series(p as i64);
        (0..=self.trunc.min(self.degree - 1))
            .map(|m| series.coeff1(m + 1))
            .collect()
    }

    /// `v_n = u_(p^n - 1)`, when it lies within the truncation.
    pub fn v(&self, p: u64, n: u32) -> Option<BPoly> {
        let m = p.checked_pow(n)? - 1;
        if m > self.trunc as u64 || m + 1 > self.degree as u64 {
            return None;
        }
        Some(self.n_series(p as i64).coeff1(m as u32 + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use num_bigint::BigInt;

    fn ctx() -> FglContext {
        FglContext::new(8)
    }

    #[test]
    fn unit_and_symmetry() {
        let c = ctx();
        let f = c.fgl_sum();
        assert_eq!(f.coeff(&[1, 0]), BPoly::one(8));
        assert_eq!(f.coeff(&[0, 1]), BPoly::one(8));
        for (e, v) in f.coeffs() {
            assert_eq!(&f.coeff(&[e[1], e[0]]), v);
            // F(x, 0) = x
            if e[1] == 0 {
                assert_eq!(e[0], 1);
            }
        }
        assert!(f.is_graded_homogeneous(1));
    }

    #[test]
    fn diagonal_is_the_two_series() {
        let c = ctx();
        let t = TruncSeries::var(c.ring(), 0);
        let diag = c.fgl_sum().compose2(&t, &t).unwrap();
        assert_eq!(diag, c.n_series(2));
    }

    #[test]
    fn small_n_series() {
        let c = ctx();
        assert!(c.n_series(0).is_zero());
        assert_eq!(c.n_series(1), TruncSeries::var(c.ring(), 0));
        let two = c.n_series(2);
        assert_eq!(two.coeff1(1), BPoly::constant(2, 8));
        assert_eq!(two.coeff1(2), BPoly::b(1, 8).scale(&BigInt::from(2)));
    }

    #[test]
    fn formal_inverse_cancels() {
        let c = ctx();
        let t = TruncSeries::var(c.ring(), 0);
        let minus = c.n_series(-1);
        assert!(c.fgl_sum().compose2(&t, &minus).unwrap().is_zero());
        for n in 1..=3 {
            assert_eq!(c.n_series(-n), c.n_series_via_log(-n));
        }
    }

    #[test]
    fn landweber_coefficients_small() {
        let c = ctx();
        let u = c.landweber_coeffs(2);
        assert_eq!(u[0], BPoly::constant(2, 8));
        assert_eq!(u[1], BPoly::b(1, 8).scale(&BigInt::from(2)));
        assert_eq!(c.v(2, 1).unwrap(), u[1]);
        for p in [2u64, 3, 5] {
            for m in c.landweber_coeffs(p).iter().skip(1) {
                assert!(m.divisible_by(p));
            }
        }
        // c_(i)(u_i) = p (p^i - 1)
        let u3 = c.landweber_coeffs(3);
        assert_eq!(u3[2].coeff(&Partition::single(2)), BigInt::from(3 * 8));
    }
}
