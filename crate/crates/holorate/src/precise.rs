//! Arbitrary-precision classification of the code-rate bound against 1.
//!
//! Near the upper end of the QEC range the bound crosses 1 with slope
//! `~2/(q·a)` per unit `q`, which is below double-precision resolution once
//! `q` passes `~10^15` (already at `p = 23` the adjacent integers straddle
//! the crossing by less than an ulp). The searches therefore re-evaluate
//! `χ(p,q) - 1` here, at a precision that scales with the bit length of `q`,
//! whenever double precision leaves the sign in doubt.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;
use std::cmp::Ordering;

const RM: RoundingMode = RoundingMode::None;

pub(crate) struct HighPrecision {
    cc: Consts,
}

impl HighPrecision {
    pub fn new() -> Self {
        HighPrecision {
            cc: Consts::new().expect("constants cache"),
        }
    }

    /// Working precision that comfortably resolves the crossing for a given
    /// `q`: the gap between adjacent integers scales like `1/q`, so a fixed
    /// margin past `log2(q)` bits suffices.
    pub fn bits_for(q: &BigUint) -> usize {
        128 + 4 * q.bits() as usize
    }

    /// Sign of `χ(p,q) - 1` at `bits` of working precision, or `None` if the
    /// difference is indistinguishable from zero at that precision.
    pub fn bound_cmp_one(&mut self, p: u64, q: &BigUint, bits: usize) -> Option<Ordering> {
        let prec = bits.max(q.bits() as usize + 64);
        let cc = &mut self.cc;
        let pi = cc.pi(prec, RM);
        let one = BigFloat::from_u64(1, prec);
        let two = BigFloat::from_u64(2, prec);
        let pf = BigFloat::from_u64(p, prec);
        let qf = BigFloat::parse(&q.to_string(), Radix::Dec, prec, RM, cc);

        let cos_p = pi.div(&pf, prec, RM).cos(prec, RM, cc);
        let sin_q = pi.div(&qf, prec, RM).sin(prec, RM, cc);
        let x = cos_p.div(&sin_q, prec, RM);
        let side = two.mul(&x.acosh(prec, RM, cc), prec, RM);

        let half = one.div(&two, prec, RM);
        let inner = half
            .sub(&one.div(&pf, prec, RM), prec, RM)
            .sub(&one.div(&qf, prec, RM), prec, RM);
        let area = two.mul(&pi, prec, RM).mul(&pf, prec, RM).mul(&inner, prec, RM);

        let diff = side.div(&area, prec, RM).sub(&one, prec, RM);
        if diff.is_zero() || diff.is_nan() {
            None
        } else if diff.is_negative() {
            Some(Ordering::Less)
        } else {
            Some(Ordering::Greater)
        }
    }
}
