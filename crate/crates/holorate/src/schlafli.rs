//! Schläfli symbols `{p,q}` and their curvature class.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SchlafliError {
    #[error("invalid Schläfli symbol {{{p},{q}}}: p and q must both be at least 3")]
    OutOfRange { p: u64, q: u64 },
}

/// A validated `{p,q}` pair: regular `p`-sided tiles, `q` meeting per vertex.
///
/// Construction enforces `p >= 3` and `q >= 3`; non-hyperbolic pairs are
/// representable so that range scans can probe the flat boundary
/// `1/p + 1/q = 1/2`, but metric operations reject them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchlafliPair {
    p: u64,
    q: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Hyperbolic,
    Euclidean,
    Spherical,
}

impl Curvature {
    /// Curvature sign used by the isoperimetric inequality in this crate:
    /// `+1` hyperbolic, `0` Euclidean, `-1` spherical. This is the opposite
    /// of the Gaussian-curvature sign most geometry texts use.
    pub fn isoperimetric_sign(self) -> i32 {
        match self {
            Curvature::Hyperbolic => 1,
            Curvature::Euclidean => 0,
            Curvature::Spherical => -1,
        }
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curvature::Hyperbolic => "hyperbolic",
            Curvature::Euclidean => "euclidean",
            Curvature::Spherical => "spherical",
        })
    }
}

impl SchlafliPair {
    pub fn new(p: u64, q: u64) -> Result<Self, SchlafliError> {
        if p < 3 || q < 3 {
            return Err(SchlafliError::OutOfRange { p, q });
        }
        Ok(SchlafliPair { p, q })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn q(self) -> u64 {
        self.q
    }

    /// The dual symbol `{q,p}`.
    pub fn dual(self) -> Self {
        SchlafliPair { p: self.q, q: self.p }
    }

    /// Curvature class of the tessellation, decided exactly in integers:
    /// `1/p + 1/q < 1/2` is equivalent to `(p-2)(q-2) > 4`.
    pub fn classify(self) -> Curvature {
        let lhs = (self.p as u128 - 2) * (self.q as u128 - 2);
        match lhs.cmp(&4) {
            std::cmp::Ordering::Greater => Curvature::Hyperbolic,
            std::cmp::Ordering::Equal => Curvature::Euclidean,
            std::cmp::Ordering::Less => Curvature::Spherical,
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        self.classify() == Curvature::Hyperbolic
    }
}

impl fmt::Display for SchlafliPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_symbols() {
        assert!(SchlafliPair::new(2, 7).is_err());
        assert!(SchlafliPair::new(3, 2).is_err());
        assert!(SchlafliPair::new(0, 0).is_err());
        assert!(SchlafliPair::new(3, 3).is_ok());
    }

    #[test]
    fn classifies_known_pairs() {
        let c = |p, q| SchlafliPair::new(p, q).unwrap().classify();
        assert_eq!(c(4, 4), Curvature::Euclidean);
        assert_eq!(c(3, 7), Curvature::Hyperbolic);
        assert_eq!(c(3, 5), Curvature::Spherical);
        assert_eq!(c(3, 6), Curvature::Euclidean);
        assert_eq!(c(6, 3), Curvature::Euclidean);
        assert_eq!(c(5, 4), Curvature::Hyperbolic);
    }

    #[test]
    fn classify_symmetric_under_swap() {
        for p in 3..60u64 {
            for q in 3..60u64 {
                let a = SchlafliPair::new(p, q).unwrap();
                assert_eq!(a.classify(), a.dual().classify(), "{p},{q}");
            }
        }
    }

    #[test]
    fn display_forms() {
        let pq = SchlafliPair::new(5, 4).unwrap();
        assert_eq!(pq.to_string(), "{5,4}");
        assert_eq!(Curvature::Euclidean.to_string(), "euclidean");
    }
}
