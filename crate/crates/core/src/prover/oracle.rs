//! Exhaustive countermodel search over small frames.
//!
//! Shares nothing with the tableau: frames are enumerated directly and the
//! formula is evaluated with the model checker. Relations are enumerated as
//! sets of unordered pairs, so every candidate is symmetric by construction;
//! reflexive loops are forced for KTB and serial frames filtered for KDB.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::Logic;
use crate::formula::Formula;
use crate::kripke::{Frame, Model, PointedModel};

/// Default cap on the number of (frame, valuation) candidates.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 23;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("max_states must be at least 1")]
    NoStates,
    #[error("search space of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

pub fn brute_force_countermodel(
    logic: Logic,
    f: &Formula,
    max_states: usize,
) -> Result<Option<PointedModel>, OracleError> {
    brute_force_countermodel_with_budget(logic, f, max_states, DEFAULT_ORACLE_BUDGET)
}

fn choosable_pairs(logic: Logic, n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(logic == Logic::Ktb && i == j))
        .collect()
}

pub fn brute_force_countermodel_with_budget(
    logic: Logic,
    f: &Formula,
    max_states: usize,
    budget: u64,
) -> Result<Option<PointedModel>, OracleError> {
    if max_states == 0 {
        return Err(OracleError::NoStates);
    }
    let atoms: Vec<_> = f.atoms().into_iter().collect();
    let mut needed: u128 = 0;
    for n in 1..=max_states {
        let bits = choosable_pairs(logic, n).len() + n * atoms.len();
        needed = needed.saturating_add(1u128.checked_shl(bits as u32).unwrap_or(u128::MAX));
    }
    if needed > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }

    for n in 1..=max_states {
        let pairs = choosable_pairs(logic, n);
        for rel_mask in 0u64..(1u64 << pairs.len()) {
            let mut edges = Vec::new();
            if logic == Logic::Ktb {
                edges.extend((0..n).map(|i| (i, i)));
            }
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if rel_mask >> bit & 1 == 1 {
                    edges.push((i, j));
                    edges.push((j, i));
                }
            }
            let frame = Frame::new(n, edges).expect("pairs are in range");
            if logic == Logic::Kdb && !frame.is_serial() {
                continue;
            }
            for val_mask in 0u64..(1u64 << (n * atoms.len())) {
                let mut valuation = BTreeMap::new();
                for (a, atom) in atoms.iter().enumerate() {
                    let states: BTreeSet<usize> = (0..n)
                        .filter(|s| val_mask >> (a * n + s) & 1 == 1)
                        .collect();
                    valuation.insert(atom.clone(), states);
                }
                let model = Model::new(frame.clone(), valuation).expect("states are in range");
                if let Some(point) = model.extension(f).iter().position(|&b| !b) {
                    return Ok(Some(
                        PointedModel::new(model, point).expect("point in range"),
                    ));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Atom};

    #[test]
    fn top_has_no_countermodel() {
        assert_eq!(
            brute_force_countermodel(Logic::Kb, &Formula::top(), 3),
            Ok(None)
        );
    }

    #[test]
    fn single_parameter_fails_on_one_state() {
        let m = brute_force_countermodel(Logic::Kb, &Formula::p(), 1)
            .unwrap()
            .expect("countermodel");
        assert_eq!(m.model().len(), 1);
        assert!(!m.model().holds(&Atom::p(), m.point()));
    }

    #[test]
    fn b_instance_has_no_small_countermodel() {
        let f = parse("x -> [] (<> x)").unwrap();
        assert_eq!(brute_force_countermodel(Logic::Kb, &f, 3), Ok(None));
    }

    #[test]
    fn respects_frame_classes() {
        let t = parse("[] #p -> #p").unwrap();
        let m = brute_force_countermodel(Logic::Kb, &t, 2).unwrap().unwrap();
        assert!(m.model().frame().is_symmetric());
        assert_eq!(brute_force_countermodel(Logic::Ktb, &t, 3), Ok(None));
        let d = parse("~[] false").unwrap();
        assert!(brute_force_countermodel(Logic::Kb, &d, 1)
            .unwrap()
            .is_some());
        assert_eq!(brute_force_countermodel(Logic::Kdb, &d, 3), Ok(None));
    }

    #[test]
    fn budget_and_bounds() {
        assert_eq!(
            brute_force_countermodel(Logic::Kb, &Formula::top(), 0),
            Err(OracleError::NoStates)
        );
        let f = parse("x & y & z & w & #p").unwrap();
        assert!(matches!(
            brute_force_countermodel_with_budget(Logic::Kb, &f, 4, 1000),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }
}
