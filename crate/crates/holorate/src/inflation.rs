//! Tile-completion growth algebra.
//!
//! Growing a patch by tile completion (add every tile that shares a vertex
//! with the patch) turns the boundary into a quasi-crystal with two cell
//! types after a finite transient. The per-layer counts of the two types
//! then obey an exact integer linear recurrence `u' = M·u` with
//! `det M = 1`, and everything about the code follows from `M`:
//! the growth rate is its Perron eigenvalue, the asymptotic cell mix is the
//! matching eigenvector, and summing the geometric series of layer sizes
//! gives the closed-form code rate.

use crate::schlafli::{Curvature, SchlafliPair};
use crate::Real;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InflationError {
    #[error("{pair} is {curvature}; tile completion is defined on hyperbolic tilings")]
    NotHyperbolic { pair: SchlafliPair, curvature: Curvature },
    #[error("triangle code rate requires q >= 7, got {0}")]
    TriangleRange(u64),
    #[error("family parameter must be at least 3, got {0}")]
    FamilyRange(u64),
    #[error("{pair} exceeds the supported integer range for growth matrices")]
    TooLarge { pair: SchlafliPair },
    #[error(transparent)]
    Schlafli(#[from] crate::schlafli::SchlafliError),
}

/// Which of the three growth-matrix cases applies. Hyperbolic pairs are
/// exhausted by them: `p = 3` forces `q > 6`, `q = 3` forces `p > 6`, and
/// everything else has both parameters above 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthFamily {
    /// `p > 3` and `q > 3`; cell types carry `p-3` and `p-2` dangling edges.
    Generic,
    /// `p = 3`; cell types carry `0` and `1` dangling edges.
    Triangle,
    /// `q = 3`; cell types carry `p-4` and `p-3` dangling edges.
    DualTriangle,
}

impl GrowthFamily {
    /// Classify a hyperbolic pair.
    pub fn of(pq: SchlafliPair) -> Self {
        if pq.p() == 3 {
            GrowthFamily::Triangle
        } else if pq.q() == 3 {
            GrowthFamily::DualTriangle
        } else {
            GrowthFamily::Generic
        }
    }
}

/// The 2x2 integer growth matrix of tile completion on `{p,q}`, together
/// with its basis tag. Entries may be negative (the triangle case has a
/// `-1`); the determinant is always 1 and the trace is `(p-2)(q-2) - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthMatrix {
    pub entries: [[i64; 2]; 2],
    pub family: GrowthFamily,
}

impl GrowthMatrix {
    pub fn det(&self) -> i64 {
        let m = &self.entries;
        let d = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
        d as i64
    }

    pub fn trace(&self) -> i64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Half the trace as an exact rational; a half-integer whenever
    /// `(p-2)(q-2)` is odd.
    pub fn half_trace(&self) -> Ratio<i64> {
        Ratio::new(self.trace(), 2)
    }
}

fn require_hyperbolic(pq: SchlafliPair) -> Result<(), InflationError> {
    match pq.classify() {
        Curvature::Hyperbolic => Ok(()),
        curvature => Err(InflationError::NotHyperbolic { pair: pq, curvature }),
    }
}

fn to_i64(v: i128, pq: SchlafliPair) -> Result<i64, InflationError> {
    i64::try_from(v).map_err(|_| InflationError::TooLarge { pair: pq })
}

/// Growth matrix of tile completion on a hyperbolic pair, in the basis whose
/// tile vector is `(1,1)` and whose edge vector is the family's dangling-edge
/// pair in increasing order.
pub fn growth_matrix(pq: SchlafliPair) -> Result<GrowthMatrix, InflationError> {
    require_hyperbolic(pq)?;
    let p = pq.p() as i128;
    let q = pq.q() as i128;
    let (family, m) = match GrowthFamily::of(pq) {
        GrowthFamily::Triangle => {
            // hyperbolic with p = 3 implies q > 6
            assert!(q > 6, "unreachable: hyperbolic {{3,q}} must have q > 6");
            (GrowthFamily::Triangle, [[0, 1], [-1, q - 4]])
        }
        GrowthFamily::DualTriangle => {
            assert!(p > 6, "unreachable: hyperbolic {{p,3}} must have p > 6");
            (GrowthFamily::DualTriangle, [[1, p - 6], [1, p - 5]])
        }
        GrowthFamily::Generic => (
            GrowthFamily::Generic,
            [
                [p - 3, (p - 3) * (q - 3) - 1],
                [p - 2, (p - 2) * (q - 3) - 1],
            ],
        ),
    };
    let entries = [
        [to_i64(m[0][0], pq)?, to_i64(m[0][1], pq)?],
        [to_i64(m[1][0], pq)?, to_i64(m[1][1], pq)?],
    ];
    Ok(GrowthMatrix { entries, family })
}

/// Edge vector: dangling-edge counts of the two cell types, increasing.
pub fn edge_vector(pq: SchlafliPair) -> Result<[u64; 2], InflationError> {
    require_hyperbolic(pq)?;
    let p = pq.p();
    Ok(match GrowthFamily::of(pq) {
        GrowthFamily::Triangle => [0, 1],
        GrowthFamily::DualTriangle => [p - 4, p - 3],
        GrowthFamily::Generic => [p - 3, p - 2],
    })
}

/// Tile vector: one tile per cell of either type.
pub const TILE_VECTOR: [u64; 2] = [1, 1];

fn trace_of(pq: SchlafliPair) -> Result<i128, InflationError> {
    let p = pq.p() as i128;
    let q = pq.q() as i128;
    (p - 2)
        .checked_mul(q - 2)
        .and_then(|v| v.checked_sub(2))
        .ok_or(InflationError::TooLarge { pair: pq })
}

/// Perron growth rate `λ = γ + sqrt(γ² - 1)` where `γ` is half the trace.
/// Exceeds 1, is irrational, and is symmetric in `p` and `q`.
pub fn growth_rate<F: Real>(pq: SchlafliPair) -> Result<F, InflationError> {
    require_hyperbolic(pq)?;
    let t = trace_of(pq)?;
    // discriminant of the characteristic polynomial, exact in integers
    let disc = t
        .checked_mul(t)
        .and_then(|v| v.checked_sub(4))
        .ok_or(InflationError::TooLarge { pair: pq })?;
    let two = F::one() + F::one();
    let tf = F::from_i128(t).unwrap();
    let df = F::from_i128(disc).unwrap();
    Ok((tf + df.sqrt()) / two)
}

/// Perron eigenvector of the growth matrix, normalized the way the layer
/// censuses converge: `(1, λ)` for triangles, `(p-6, λ-1)` for dual
/// triangles, `((p-3)(q-3)-1, λ-(p-3))` otherwise.
pub fn growth_vector<F: Real>(pq: SchlafliPair) -> Result<[F; 2], InflationError> {
    let rate: F = growth_rate(pq)?;
    let p = pq.p();
    let q = pq.q();
    Ok(match GrowthFamily::of(pq) {
        GrowthFamily::Triangle => [F::one(), rate],
        GrowthFamily::DualTriangle => [F::from_u64(p - 6).unwrap(), rate - F::one()],
        GrowthFamily::Generic => [
            F::from_u64((p - 3) * (q - 3) - 1).unwrap(),
            rate - F::from_u64(p - 3).unwrap(),
        ],
    })
}

/// The full growth description of tile completion on one tiling.
#[derive(Debug, Clone)]
pub struct GrowthSystem<F> {
    pub pair: SchlafliPair,
    pub matrix: GrowthMatrix,
    pub tile_vector: [u64; 2],
    pub edge_vector: [u64; 2],
    pub growth_rate: F,
    pub growth_vector: [F; 2],
}

pub fn growth_system<F: Real>(pq: SchlafliPair) -> Result<GrowthSystem<F>, InflationError> {
    Ok(GrowthSystem {
        pair: pq,
        matrix: growth_matrix(pq)?,
        tile_vector: TILE_VECTOR,
        edge_vector: edge_vector(pq)?,
        growth_rate: growth_rate(pq)?,
        growth_vector: growth_vector(pq)?,
    })
}

impl<F: Real> GrowthSystem<F> {
    /// Relative residual of the eigen equation `M·u = λ·u`.
    pub fn eigen_residual(&self) -> F {
        let m = &self.matrix.entries;
        let u = &self.growth_vector;
        let lam = self.growth_rate;
        let mu = [
            F::from_i64(m[0][0]).unwrap() * u[0] + F::from_i64(m[0][1]).unwrap() * u[1],
            F::from_i64(m[1][0]).unwrap() * u[0] + F::from_i64(m[1][1]).unwrap() * u[1],
        ];
        let num = ((mu[0] - lam * u[0]).powi(2) + (mu[1] - lam * u[1]).powi(2)).sqrt();
        let den = (u[0].powi(2) + u[1].powi(2)).sqrt();
        num / den
    }
}

/// Closed-form code rate of tile completion: `[λ/(λ-1)] · (u·t)/(u·e)`.
/// This single generic path covers all three families.
pub fn code_rate<F: Real>(pq: SchlafliPair) -> Result<F, InflationError> {
    let sys = growth_system::<F>(pq)?;
    let lam = sys.growth_rate;
    let u = sys.growth_vector;
    let ut = u[0] + u[1];
    let ue = u[0] * F::from_u64(sys.edge_vector[0]).unwrap()
        + u[1] * F::from_u64(sys.edge_vector[1]).unwrap();
    Ok(lam / (lam - F::one()) * ut / ue)
}

/// Triangle code rate in the reduced form `(λ+1)/(λ-1)`. Redundant with
/// [`code_rate`] on `{3,q}`; kept as an independent cross-check route.
pub fn triangle_code_rate<F: Real>(q: u64) -> Result<F, InflationError> {
    if q < 7 {
        return Err(InflationError::TriangleRange(q));
    }
    let lam: F = growth_rate(SchlafliPair::new(3, q)?)?;
    Ok((lam + F::one()) / (lam - F::one()))
}

/// A one-parameter family of tilings: all hyperbolic `{p,q}` with the given
/// `p` (or the given `q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFamily {
    FixedP(u64),
    FixedQ(u64),
}

impl CodeFamily {
    pub fn value(self) -> u64 {
        match self {
            CodeFamily::FixedP(v) | CodeFamily::FixedQ(v) => v,
        }
    }

    pub fn label(self) -> String {
        match self {
            CodeFamily::FixedP(v) => format!("p={v}"),
            CodeFamily::FixedQ(v) => format!("q={v}"),
        }
    }
}

/// Least growth rate attained within a family — the slowest-growing member,
/// used to normalize the figure abscissa. Since `λ` grows in each argument
/// and is symmetric, the slowest member pairs the family value with the
/// smallest admissible partner.
pub fn growth_rate_lower_bound<F: Real>(family: CodeFamily) -> Result<F, InflationError> {
    let v = family.value();
    if v < 3 {
        return Err(InflationError::FamilyRange(v));
    }
    let pair = match (family, v) {
        (_, 3) => (3, 7),
        (_, 4) => (4, 5),
        (_, 5) => (5, 4),
        (_, 6) => (6, 4),
        (CodeFamily::FixedP(p), _) => (p, 3),
        (CodeFamily::FixedQ(q), _) => (3, q),
    };
    growth_rate(SchlafliPair::new(pair.0, pair.1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(p: u64, q: u64) -> SchlafliPair {
        SchlafliPair::new(p, q).unwrap()
    }

    #[test]
    fn matrices_for_the_three_families() {
        assert_eq!(
            growth_matrix(pair(5, 4)).unwrap().entries,
            [[2, 1], [3, 2]]
        );
        assert_eq!(
            growth_matrix(pair(3, 7)).unwrap().entries,
            [[0, 1], [-1, 3]]
        );
        assert_eq!(
            growth_matrix(pair(7, 3)).unwrap().entries,
            [[1, 1], [1, 2]]
        );
        assert!(growth_matrix(pair(4, 4)).is_err());
        assert!(growth_matrix(pair(3, 6)).is_err());
    }

    #[test]
    fn determinant_and_trace_on_a_grid() {
        for p in 3..=40u64 {
            for q in 3..=40u64 {
                let pq = pair(p, q);
                if !pq.is_hyperbolic() {
                    continue;
                }
                let m = growth_matrix(pq).unwrap();
                assert_eq!(m.det(), 1, "({p},{q})");
                assert_eq!(m.trace(), ((p - 2) * (q - 2)) as i64 - 2, "({p},{q})");
                assert_eq!(m.half_trace() * 2, Ratio::from_integer(m.trace()));
            }
        }
    }

    #[test]
    fn growth_rate_reference_values() {
        // {3,7}: half-trace 3/2, rate (3+sqrt 5)/2
        let lam: f64 = growth_rate(pair(3, 7)).unwrap();
        assert!((lam - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        // {4,5}: half-trace 2, rate 2+sqrt 3
        let lam: f64 = growth_rate(pair(4, 5)).unwrap();
        assert!((lam - (2.0 + 3f64.sqrt())).abs() < 1e-14);
        // symmetry
        let a: f64 = growth_rate(pair(5, 4)).unwrap();
        let b: f64 = growth_rate(pair(4, 5)).unwrap();
        assert_eq!(a, b);
        assert!(growth_rate::<f64>(pair(4, 4)).is_err());
    }

    #[test]
    fn growth_vectors_are_eigenvectors() {
        let u: [f64; 2] = growth_vector(pair(3, 7)).unwrap();
        assert!((u[0] - 1.0).abs() < 1e-12 && (u[1] - 2.6180339887).abs() < 1e-9);
        let u: [f64; 2] = growth_vector(pair(7, 3)).unwrap();
        assert!((u[0] - 1.0).abs() < 1e-12 && (u[1] - 1.6180339887).abs() < 1e-9);
        let u: [f64; 2] = growth_vector(pair(5, 4)).unwrap();
        assert!((u[0] - 1.0).abs() < 1e-12 && (u[1] - 3f64.sqrt()).abs() < 1e-12);

        for p in 3..=30u64 {
            for q in 3..=30u64 {
                let pq = pair(p, q);
                if !pq.is_hyperbolic() {
                    continue;
                }
                let sys = growth_system::<f64>(pq).unwrap();
                assert!(sys.eigen_residual() <= 1e-9, "({p},{q})");
            }
        }
    }

    #[test]
    fn code_rate_reference_values() {
        for &(p, q, want) in &[
            (3u64, 7u64, 2.2360679775),
            (4, 5, 0.7886751346),
            (5, 4, 0.5186176928),
            (7, 3, 0.4472135955),
        ] {
            let r: f64 = code_rate(pair(p, q)).unwrap();
            assert!((r - want).abs() < 1e-9, "({p},{q}): {r}");
        }
    }

    #[test]
    fn triangle_rate_cross_checks_generic_path() {
        for q in 7..=60u64 {
            let a: f64 = triangle_code_rate(q).unwrap();
            let b: f64 = code_rate(pair(3, q)).unwrap();
            assert!((a - b).abs() <= 1e-12 * b, "q={q}");
            assert!(a > 1.0);
        }
        // q = 8 collapses to sqrt 3 exactly
        let r: f64 = triangle_code_rate(8).unwrap();
        assert!((r - 3f64.sqrt()).abs() < 1e-12);
        // rate tends to 1 from above
        let r: f64 = triangle_code_rate(1_000_000).unwrap();
        assert!(r > 1.0 && r - 1.0 < 1e-5);
        assert!(triangle_code_rate::<f64>(6).is_err());
    }

    #[test]
    fn family_growth_bounds() {
        let b = |f| growth_rate_lower_bound::<f64>(f).unwrap();
        let lam = |p, q| growth_rate::<f64>(pair(p, q)).unwrap();
        assert_eq!(b(CodeFamily::FixedP(3)), lam(3, 7));
        assert_eq!(b(CodeFamily::FixedQ(3)), lam(3, 7));
        assert_eq!(b(CodeFamily::FixedP(4)), lam(4, 5));
        assert_eq!(b(CodeFamily::FixedP(5)), lam(5, 4));
        assert_eq!(b(CodeFamily::FixedP(6)), lam(6, 4));
        assert_eq!(b(CodeFamily::FixedP(9)), lam(9, 3));
        assert_eq!(b(CodeFamily::FixedQ(9)), lam(3, 9));
        assert!(growth_rate_lower_bound::<f64>(CodeFamily::FixedP(2)).is_err());
    }

    #[test]
    fn rate_discriminant_never_a_perfect_square() {
        // trace² - 4 strictly between (t-1)² and t² for t >= 3, so λ is
        // irrational on every hyperbolic pair; spot-check the integer gap.
        for p in 3..=25u64 {
            for q in 3..=25u64 {
                let pq = pair(p, q);
                if !pq.is_hyperbolic() {
                    continue;
                }
                let t = growth_matrix(pq).unwrap().trace() as i128;
                let disc = t * t - 4;
                let root = disc.isqrt();
                assert_ne!(root * root, disc, "({p},{q})");
            }
        }
    }
}
