//! Per-layer censuses and the verification checks built on them.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::map::{CombinatorialMap, SeedKind};
use super::SimError;
use crate::geometry;
use crate::inflation::GrowthSystem;
use crate::schlafli::SchlafliPair;

/// What one growth layer added. Counts are arbitrary precision: layer sizes
/// grow geometrically and the same type also carries matrix-extrapolated
/// censuses far past any materialized patch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerCensus {
    pub layer: u32,
    pub new_tiles: BigUint,
    /// dangling-edge count -> number of new tiles in that class
    pub class_counts: BTreeMap<u64, BigUint>,
    pub perimeter_edges: BigUint,
    /// total tiles in the patch through this layer (`N_bulk`)
    pub cumulative_tiles: BigUint,
}

impl LayerCensus {
    /// `N_bulk / N_boundary` at this layer.
    pub fn empirical_rate(&self) -> f64 {
        self.cumulative_tiles.to_f64().unwrap_or(f64::INFINITY)
            / self.perimeter_edges.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Grow a patch from the given seed, recording one census per layer
/// (index 0 is the seed itself). Stops after `max_layers` grown layers, or
/// before growing once the perimeter already exceeds `max_boundary` — so the
/// final census may overshoot `max_boundary` but no growth starts beyond it.
/// The structural audit runs after every layer.
pub fn run(
    pq: SchlafliPair,
    kind: SeedKind,
    max_layers: u32,
    max_boundary: u64,
) -> Result<Vec<LayerCensus>, SimError> {
    if max_layers < 1 {
        return Err(SimError::InvalidArgument(
            "max_layers must be at least 1".into(),
        ));
    }
    let mut map = CombinatorialMap::seed(pq, kind)?;
    map.validate()?;
    let mut censuses = vec![map.current_layer_census()];
    let cap = BigUint::from(max_boundary);
    while (censuses.len() as u32) <= max_layers {
        if censuses.last().unwrap().perimeter_edges > cap {
            break;
        }
        let census = map.grow_layer()?;
        map.validate()?;
        censuses.push(census);
    }
    Ok(censuses)
}

/// Empirical code rate of a run: bulk over boundary at the last layer.
pub fn empirical_code_rate(censuses: &[LayerCensus]) -> Result<f64, SimError> {
    if censuses.len() < 2 {
        return Err(SimError::TooFewLayers { have: censuses.len(), need: 2 });
    }
    Ok(censuses.last().unwrap().empirical_rate())
}

/// Outcome of checking the integer census recurrence `u' = M·u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixVerdict {
    /// The recurrence holds exactly from layer `transient` through the end
    /// of the series, over `verified_steps` consecutive layer transitions.
    Verified { transient: u32, verified_steps: u32 },
    Failed { reason: String },
}

impl MatrixVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, MatrixVerdict::Verified { .. })
    }

    pub fn transient(&self) -> Option<u32> {
        match self {
            MatrixVerdict::Verified { transient, .. } => Some(*transient),
            MatrixVerdict::Failed { .. } => None,
        }
    }
}

/// Check a census series against a growth system: find the first layer from
/// which the class-count vector satisfies `u_{n+1} = M·u_n` exactly in
/// integers through the end of the series, with class labels drawn from the
/// family's edge-vector entries. The transient is measured, never assumed.
pub fn verify_growth_matrix(
    censuses: &[LayerCensus],
    system: &GrowthSystem<f64>,
) -> Result<MatrixVerdict, SimError> {
    if censuses.len() < 4 {
        return Err(SimError::TooFewLayers { have: censuses.len(), need: 4 });
    }
    let [e0, e1] = system.edge_vector;
    let class_vec = |c: &LayerCensus| -> Option<[BigInt; 2]> {
        if c.class_counts.keys().any(|&k| k != e0 && k != e1) {
            return None;
        }
        let get = |k: u64| {
            c.class_counts
                .get(&k)
                .map(|v| BigInt::from(v.clone()))
                .unwrap_or_default()
        };
        Some([get(e0), get(e1)])
    };
    let vecs: Vec<Option<[BigInt; 2]>> = censuses.iter().map(class_vec).collect();
    let m = system.matrix.entries;
    let step_holds = |a: &[BigInt; 2], b: &[BigInt; 2]| {
        b[0] == &a[0] * m[0][0] + &a[1] * m[0][1] && b[1] == &a[0] * m[1][0] + &a[1] * m[1][1]
    };

    let mut transient = None;
    for n in (0..censuses.len() - 1).rev() {
        let ok = matches!(
            (&vecs[n], &vecs[n + 1]),
            (Some(a), Some(b)) if step_holds(a, b)
        );
        if ok {
            transient = Some(n);
        } else {
            break;
        }
    }
    Ok(match transient {
        Some(k) => MatrixVerdict::Verified {
            transient: k as u32,
            verified_steps: (censuses.len() - 1 - k) as u32,
        },
        None => MatrixVerdict::Failed {
            reason: format!(
                "census classes or counts do not follow the {:?}-family recurrence over the final step",
                system.matrix.family
            ),
        },
    })
}

/// Finite-layer form of the code-rate bound at one census:
/// `(N_bulk/N_boundary)·sqrt(1 + 4π/(N_bulk·a)) <= ℓ/a` within 1e-9.
/// Holds for every census of a real simply connected patch.
pub fn verify_isoperimetric(census: &LayerCensus, pq: SchlafliPair) -> Result<bool, SimError> {
    let bulk = census.cumulative_tiles.to_u128().ok_or_else(|| {
        SimError::InvalidArgument("census tile count exceeds u128".into())
    })?;
    let boundary = census.perimeter_edges.to_u128().ok_or_else(|| {
        SimError::InvalidArgument("census perimeter exceeds u128".into())
    })?;
    let lhs: f64 = geometry::finite_layer_lhs(pq, bulk, boundary)?;
    let bound: f64 = geometry::bound(pq)?;
    Ok(lhs <= bound + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inflation::growth_system;

    fn pair(p: u64, q: u64) -> SchlafliPair {
        SchlafliPair::new(p, q).unwrap()
    }

    #[test]
    fn run_stops_immediately_with_zero_boundary_budget() {
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 10, 0).unwrap();
        assert_eq!(censuses.len(), 1);
        assert_eq!(censuses[0].layer, 0);
        assert_eq!(censuses[0].class_counts[&5], BigUint::from(1u32));
    }

    #[test]
    fn run_respects_layer_budget() {
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 3, u64::MAX).unwrap();
        assert_eq!(censuses.len(), 4);
        assert!(run(pair(5, 4), SeedKind::SingleTile, 0, 10).is_err());
    }

    #[test]
    fn pentagon_matrix_iteration_oracle() {
        // (5,5) -> (15,25) -> (55,95) -> (205,355): at layer 4 the patch has
        // 1+10+40+150+560 = 761 tiles and 2*205+3*355 = 1475 perimeter edges.
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 4, u64::MAX).unwrap();
        let last = censuses.last().unwrap();
        assert_eq!(last.cumulative_tiles, BigUint::from(761u32));
        assert_eq!(last.perimeter_edges, BigUint::from(1475u32));
        let rate = empirical_code_rate(&censuses).unwrap();
        assert!((rate - 761.0 / 1475.0).abs() < 1e-12);
    }

    #[test]
    fn empirical_rate_needs_two_layers() {
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 1, 0).unwrap();
        assert!(empirical_code_rate(&censuses).is_err());
        assert!(empirical_code_rate(&[]).is_err());
    }

    #[test]
    fn empirical_rate_approaches_closed_form() {
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 64, 10_000).unwrap();
        assert!(censuses.last().unwrap().perimeter_edges > BigUint::from(10_000u32));
        let emp = empirical_code_rate(&censuses).unwrap();
        let closed: f64 = crate::inflation::code_rate(pair(5, 4)).unwrap();
        assert!((emp - closed).abs() <= 0.01 * closed, "{emp} vs {closed}");
    }

    #[test]
    fn matrix_verification_measures_the_transient() {
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 6, u64::MAX).unwrap();
        let system = growth_system::<f64>(pair(5, 4)).unwrap();
        match verify_growth_matrix(&censuses, &system).unwrap() {
            MatrixVerdict::Verified { transient, verified_steps } => {
                assert!(transient <= 2, "transient {transient}");
                assert!(verified_steps >= 4);
            }
            MatrixVerdict::Failed { reason } => panic!("{reason}"),
        }
    }

    #[test]
    fn matrix_verification_rejects_mismatched_system() {
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 5, u64::MAX).unwrap();
        let wrong = growth_system::<f64>(pair(4, 5)).unwrap();
        assert!(!verify_growth_matrix(&censuses, &wrong).unwrap().is_verified());
    }

    #[test]
    fn isoperimetric_check_on_runs_and_fabrications() {
        let censuses = run(pair(5, 4), SeedKind::SingleTile, 5, u64::MAX).unwrap();
        for census in &censuses {
            assert!(verify_isoperimetric(census, pair(5, 4)).unwrap());
        }
        // not realizable by any simply connected patch
        let fake = LayerCensus {
            layer: 1,
            new_tiles: BigUint::from(1_000_000u64),
            class_counts: BTreeMap::new(),
            perimeter_edges: BigUint::from(1u32),
            cumulative_tiles: BigUint::from(1_000_000u64),
        };
        assert!(!verify_isoperimetric(&fake, pair(5, 4)).unwrap());
    }
}
