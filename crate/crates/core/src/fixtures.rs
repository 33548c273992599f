//! Shared scenario constructions for unit and integration tests.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::base_space::{FiniteGroup, GroupAction, MeasureSpace};
use crate::operators::DiscreteSystem;

/// Z_n rotating n uniform points.
pub fn uniform_cyclic(n: usize) -> DiscreteSystem {
    let (group, action) = GroupAction::cyclic_rotation(n);
    DiscreteSystem::new(MeasureSpace::uniform(n), group, action, 4096).unwrap()
}

/// Z_2 swapping two points of masses (1/3, 2/3) — the minimal
/// measure-scaling scenario.
pub fn skew_z2() -> DiscreteSystem {
    let group = FiniteGroup::cyclic(2);
    let action = GroupAction::new(&group, 2, vec![0, 1, 1, 0]).unwrap();
    let space = MeasureSpace::new(
        vec!["x1".to_string(), "x2".to_string()],
        vec![1.0 / 3.0, 2.0 / 3.0],
    )
    .unwrap();
    DiscreteSystem::new(space, group, action, 4096).unwrap()
}

/// The symmetric group S_3 acting on itself by left translation,
/// uniform masses.
pub fn s3_regular() -> DiscreteSystem {
    let table = vec![
        0, 1, 2, 3, 4, 5, //
        1, 0, 5, 4, 3, 2, //
        2, 4, 0, 5, 1, 3, //
        3, 5, 4, 0, 2, 1, //
        4, 2, 3, 1, 5, 0, //
        5, 3, 1, 2, 0, 4,
    ];
    let group = FiniteGroup::new((0..6).map(|i| format!("g{i}")).collect(), table).unwrap();
    let action = GroupAction::left_translation(&group);
    DiscreteSystem::new(MeasureSpace::uniform(6), group, action, 4096).unwrap()
}

/// The Klein four-group acting on itself, uniform masses.
pub fn klein4() -> DiscreteSystem {
    let table = vec![
        0, 1, 2, 3, //
        1, 0, 3, 2, //
        2, 3, 0, 1, //
        3, 2, 1, 0,
    ];
    let group = FiniteGroup::new((0..4).map(|i| format!("k{i}")).collect(), table).unwrap();
    let action = GroupAction::left_translation(&group);
    DiscreteSystem::new(MeasureSpace::uniform(4), group, action, 4096).unwrap()
}

/// Z_n with masses proportional to (1, 2, …, n) — free and ergodic but
/// not measure-invariant for n ≥ 2.
pub fn weighted_cycle(n: usize) -> DiscreteSystem {
    let (group, action) = GroupAction::cyclic_rotation(n);
    let total: f64 = (1..=n).map(|k| k as f64).sum();
    let masses: Vec<f64> = (1..=n).map(|k| k as f64 / total).collect();
    let space = MeasureSpace::new((0..n).map(|i| format!("x{i}")).collect(), masses).unwrap();
    DiscreteSystem::new(space, group, action, 4096).unwrap()
}

/// Z_2 acting on 4 uniform points as two disjoint swaps — free but not
/// ergodic.
pub fn two_orbit_z2() -> DiscreteSystem {
    let group = FiniteGroup::cyclic(2);
    let action = GroupAction::new(&group, 4, vec![0, 1, 2, 3, 1, 0, 3, 2]).unwrap();
    DiscreteSystem::new(MeasureSpace::uniform(4), group, action, 4096).unwrap()
}
