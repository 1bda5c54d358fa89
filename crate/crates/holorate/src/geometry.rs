//! Closed-form hyperbolic geometry of regular tiles.
//!
//! All lengths are in units of the curvature radius, areas in the same units
//! squared. For a hyperbolic `{p,q}` pair the regular tile has side length
//! `ℓ = 2·arccosh(cos(π/p) / sin(π/q))` and area `a = 2πp(1/2 - 1/p - 1/q)`;
//! the ratio `ℓ/a` is the isoperimetric upper bound on the code rate of any
//! layer-grown code on that tessellation.

use crate::schlafli::{Curvature, SchlafliPair};
use crate::Real;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("{pair} is {curvature}; this operation requires a hyperbolic tiling")]
    NotHyperbolic { pair: SchlafliPair, curvature: Curvature },
    #[error("negative {name}: {value}")]
    NegativeInput { name: &'static str, value: f64 },
    #[error("curvature sign must be -1, 0 or +1, got {0}")]
    BadCurvatureSign(i32),
    #[error("{name} must be at least 1")]
    ZeroCount { name: &'static str },
}

/// Absolute slack on the isoperimetric comparison, so that exactly
/// saturating curves (circles) pass under floating-point rounding.
pub const ISOPERIMETRIC_TOLERANCE: f64 = 1e-9;

/// Side length, area and their ratio for the regular tile of a hyperbolic
/// pair. `bound` is `side_length / area` by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TileGeometry<F> {
    pub side_length: F,
    pub area: F,
    pub bound: F,
}

fn require_hyperbolic(pq: SchlafliPair) -> Result<(), GeometryError> {
    match pq.classify() {
        Curvature::Hyperbolic => Ok(()),
        curvature => Err(GeometryError::NotHyperbolic { pair: pq, curvature }),
    }
}

/// `arccosh` in logarithmic form: `ln(x + sqrt((x-1)(x+1)))`, switching to
/// `ln(2x)` once `x > 1e8`. The factored radicand keeps accuracy near `x = 1`,
/// and beyond the switch point the dropped `1/(4x^2)` term is below one ulp
/// of the result. Arguments reach `~1e19` when scanning the upper end of the
/// QEC range in `q`, where `cos(π/p)/sin(π/q)` grows like `q`.
pub fn stable_acosh<F: Real>(x: F) -> F {
    let one = F::one();
    let big = F::from_f64(1e8).unwrap();
    if x > big {
        (x + x).ln()
    } else {
        (x + ((x - one) * (x + one)).sqrt()).ln()
    }
}

/// Tile side length, area and code-rate bound for a hyperbolic pair.
pub fn tile_geometry<F: Real>(pq: SchlafliPair) -> Result<TileGeometry<F>, GeometryError> {
    require_hyperbolic(pq)?;
    let pi = F::PI();
    let p = F::from_u64(pq.p()).unwrap();
    let q = F::from_u64(pq.q()).unwrap();
    let one = F::one();
    let two = one + one;
    let half = one / two;

    let x = (pi / p).cos() / (pi / q).sin();
    let side_length = two * stable_acosh(x);
    let area = two * pi * p * (half - one / p - one / q);
    Ok(TileGeometry { side_length, area, bound: side_length / area })
}

/// Code-rate bound `ℓ/a` alone.
pub fn bound<F: Real>(pq: SchlafliPair) -> Result<F, GeometryError> {
    tile_geometry(pq).map(|t| t.bound)
}

/// Circumference and area of the hyperbolic circle of geodesic radius `s`:
/// `L = 2π·sinh(s)`, `A = 4π·sinh²(s/2)`. The pair saturates the
/// isoperimetric inequality with curvature sign `+1`.
pub fn circle_geometry<F: Real>(radius: F) -> Result<(F, F), GeometryError> {
    if radius < F::zero() {
        return Err(GeometryError::NegativeInput {
            name: "radius",
            value: radius.to_f64().unwrap_or(f64::NAN),
        });
    }
    let pi = F::PI();
    let two = F::one() + F::one();
    let four = two + two;
    let circumference = two * pi * radius.sinh();
    let half_sinh = (radius / two).sinh();
    let area = four * pi * half_sinh * half_sinh;
    Ok((circumference, area))
}

/// Whether a region of area `A` bounded by a curve of length `L` satisfies
/// the isoperimetric inequality `A(4π + kA) <= L²` on the plane of constant
/// curvature, within [`ISOPERIMETRIC_TOLERANCE`]. The sign convention is
/// `k = +1` hyperbolic, `0` Euclidean, `-1` spherical.
pub fn isoperimetric_holds<F: Real>(area: F, length: F, k: i32) -> Result<bool, GeometryError> {
    if !(-1..=1).contains(&k) {
        return Err(GeometryError::BadCurvatureSign(k));
    }
    if area < F::zero() {
        return Err(GeometryError::NegativeInput {
            name: "area",
            value: area.to_f64().unwrap_or(f64::NAN),
        });
    }
    if length < F::zero() {
        return Err(GeometryError::NegativeInput {
            name: "length",
            value: length.to_f64().unwrap_or(f64::NAN),
        });
    }
    let pi = F::PI();
    let four = F::from_u64(4).unwrap();
    let kf = F::from_i32(k).unwrap();
    let lhs = area * (four * pi + kf * area);
    let eps = F::from_f64(ISOPERIMETRIC_TOLERANCE).unwrap();
    Ok(lhs <= length * length + eps)
}

/// Left-hand side of the finite-patch form of the code-rate bound:
/// `(N_bulk/N_boundary) · sqrt(1 + 4π/(N_bulk·a))`. For counts realized by a
/// simply connected patch this never exceeds `bound(p,q)`, and it tends to
/// the bulk/boundary ratio itself as the patch grows.
pub fn finite_layer_lhs<F: Real>(
    pq: SchlafliPair,
    n_bulk: u128,
    n_boundary: u128,
) -> Result<F, GeometryError> {
    require_hyperbolic(pq)?;
    if n_bulk == 0 {
        return Err(GeometryError::ZeroCount { name: "n_bulk" });
    }
    if n_boundary == 0 {
        return Err(GeometryError::ZeroCount { name: "n_boundary" });
    }
    let area = tile_geometry::<F>(pq)?.area;
    let pi = F::PI();
    let four = F::from_u64(4).unwrap();
    let bulk = F::from_u128(n_bulk).unwrap();
    let boundary = F::from_u128(n_boundary).unwrap();
    Ok(bulk / boundary * (F::one() + four * pi / (bulk * area)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(p: u64, q: u64) -> SchlafliPair {
        SchlafliPair::new(p, q).unwrap()
    }

    #[test]
    fn stable_acosh_matches_std() {
        for &x in &[1.0, 1.0 + 1e-12, 1.5, 2.0, 10.0, 1e6, 1e8, 2e8, 1e15, 1e19] {
            let got = stable_acosh(x);
            let want = f64::acosh(x);
            assert!(
                (got - want).abs() <= 1e-13 * want.max(1.0),
                "x={x}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn tile_geometry_reference_values() {
        // chi values from the four benchmark tilings, each to ±5e-4.
        for &(p, q, chi) in &[(3, 7, 2.430), (4, 5, 0.998), (5, 4, 0.676), (7, 3, 0.541)] {
            let t = tile_geometry::<f64>(pair(p, q)).unwrap();
            assert!((t.bound - chi).abs() < 5e-4, "({p},{q}): {}", t.bound);
        }
        // {4,5} closed forms evaluated at high precision.
        let t = tile_geometry::<f64>(pair(4, 5)).unwrap();
        assert!((t.side_length - 1.2537393258).abs() < 1e-9);
        assert!((t.area - 1.2566370614).abs() < 1e-9);
        // {5,4} tile area is exactly pi/2.
        let t = tile_geometry::<f64>(pair(5, 4)).unwrap();
        assert!((t.area - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn tile_geometry_rejects_flat_and_spherical() {
        let err = tile_geometry::<f64>(pair(4, 4)).unwrap_err();
        assert!(matches!(
            err,
            GeometryError::NotHyperbolic { curvature: Curvature::Euclidean, .. }
        ));
        assert!(tile_geometry::<f64>(pair(3, 5)).is_err());
    }

    #[test]
    fn bound_consistent_across_scalar_types() {
        let b64 = bound::<f64>(pair(5, 4)).unwrap();
        let b32 = bound::<f32>(pair(5, 4)).unwrap();
        assert!((b64 - b32 as f64).abs() < 1e-5);
    }

    #[test]
    fn bound_is_ratio_over_grid() {
        for p in 3..=50u64 {
            for q in 3..=50u64 {
                let pq = pair(p, q);
                if !pq.is_hyperbolic() {
                    continue;
                }
                let t = tile_geometry::<f64>(pq).unwrap();
                assert!(t.side_length > 0.0 && t.area > 0.0, "({p},{q})");
                let ratio = t.side_length / t.area;
                assert!((t.bound - ratio).abs() <= 1e-12 * ratio.abs(), "({p},{q})");
            }
        }
    }

    #[test]
    fn circle_examples() {
        let (l, a) = circle_geometry::<f64>(0.0).unwrap();
        assert_eq!((l, a), (0.0, 0.0));
        let (l, a) = circle_geometry::<f64>(1.0).unwrap();
        let pi = std::f64::consts::PI;
        assert!((l - 2.0 * pi * 1f64.sinh()).abs() < 1e-12);
        assert!((a - 4.0 * pi * 0.5f64.sinh().powi(2)).abs() < 1e-12);
        assert!(circle_geometry::<f64>(-0.1).is_err());
    }

    #[test]
    fn circles_saturate_isoperimetric() {
        for &s in &[0.1, 1.0, 5.0, 10.0] {
            let (l, a) = circle_geometry::<f64>(s).unwrap();
            let residual = (l * l - a * (4.0 * std::f64::consts::PI + a)).abs();
            assert!(residual <= 1e-9 * (l * l).max(1.0), "s={s}: {residual}");
            assert!(isoperimetric_holds(a, l, 1).unwrap());
        }
    }

    #[test]
    fn isoperimetric_cases() {
        let pi = std::f64::consts::PI;
        // Euclidean unit circle holds with equality.
        assert!(isoperimetric_holds(pi, 2.0 * pi, 0).unwrap());
        // Wildly impossible region fails.
        assert!(!isoperimetric_holds(100.0, 1.0, 1).unwrap());
        assert!(isoperimetric_holds(-1.0, 1.0, 1).is_err());
        assert!(isoperimetric_holds(1.0, -1.0, 0).is_err());
        assert!(isoperimetric_holds(1.0, 1.0, 2).is_err());
    }

    #[test]
    fn finite_layer_reference_values() {
        // Single pentagon of {5,4}: a = pi/2 so the lhs is (1/5)*sqrt(9) = 3/5.
        let lhs = finite_layer_lhs::<f64>(pair(5, 4), 1, 5).unwrap();
        assert!((lhs - 0.6).abs() < 1e-12, "{lhs}");
        assert!(lhs <= bound::<f64>(pair(5, 4)).unwrap());
        // Single triangle of {3,7}.
        let lhs = finite_layer_lhs::<f64>(pair(3, 7), 1, 3).unwrap();
        assert!((lhs - 1.795055).abs() < 1e-5, "{lhs}");
        assert!(lhs <= bound::<f64>(pair(3, 7)).unwrap());
        assert!(finite_layer_lhs::<f64>(pair(5, 4), 0, 5).is_err());
        assert!(finite_layer_lhs::<f64>(pair(5, 4), 5, 0).is_err());
    }

    #[test]
    fn finite_layer_tends_to_ratio() {
        // At fixed ratio the sqrt factor decays to 1 from above.
        let pq = pair(5, 4);
        let mut prev = f64::INFINITY;
        for k in 1..=6u32 {
            let n = 10u128.pow(k);
            let v = finite_layer_lhs::<f64>(pq, n, 2 * n).unwrap();
            assert!(v < prev && v >= 0.5);
            prev = v;
        }
        assert!((prev - 0.5).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn finite_layer_monotone_in_boundary(nb in 1u128..10_000, extra in 1u128..10_000) {
            let pq = pair(5, 4);
            let small = finite_layer_lhs::<f64>(pq, nb, 100).unwrap();
            let large = finite_layer_lhs::<f64>(pq, nb, 100 + extra).unwrap();
            prop_assert!(large < small);
        }

        #[test]
        fn circles_saturate_for_random_radii(s in 0.01f64..12.0) {
            let (l, a) = circle_geometry::<f64>(s).unwrap();
            let residual = (l * l - a * (4.0 * std::f64::consts::PI + a)).abs();
            prop_assert!(residual <= 1e-9 * (l * l).max(1.0));
        }
    }
}
