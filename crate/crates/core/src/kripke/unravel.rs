use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Frame, KripkeError, Model, PointedModel, State, DEFAULT_STATE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnravelMode {
    Plain,
    /// Adds a loop at every path state.
    Reflexive,
}

/// A depth-bounded symmetric unravelling. State `i` of the result is the
/// path `paths[i]` of the host model; state 0 is the root path `(s)`.
///
/// The root satisfies exactly the formulas of degree at most `depth` that the
/// host satisfies at `s`; a state at distance `d` from the root agrees with
/// the last state of its path on formulas of degree at most `depth - d`.
#[derive(Debug, Clone)]
pub struct Unravelling {
    pub pointed: PointedModel,
    pub paths: Vec<Vec<State>>,
    index: HashMap<Vec<State>, State>,
}

impl Unravelling {
    pub fn state_of(&self, path: &[State]) -> Option<State> {
        self.index.get(path).copied()
    }

    pub fn model(&self) -> &Model {
        self.pointed.model()
    }

    pub fn root(&self) -> State {
        self.pointed.point()
    }
}

pub fn symmetric_unravelling(
    m: &Model,
    s: State,
    depth: usize,
    mode: UnravelMode,
) -> Result<Unravelling, KripkeError> {
    symmetric_unravelling_with_budget(m, s, depth, mode, DEFAULT_STATE_BUDGET)
}

pub fn symmetric_unravelling_with_budget(
    m: &Model,
    s: State,
    depth: usize,
    mode: UnravelMode,
    budget: usize,
) -> Result<Unravelling, KripkeError> {
    m.check_state(s)?;
    if !m.frame().is_symmetric() {
        return Err(KripkeError::NotSymmetric);
    }
    let mut paths: Vec<Vec<State>> = vec![vec![s]];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &parent in &frontier {
            let last = *paths[parent].last().expect("paths are nonempty");
            for &t in m.frame().successors(last) {
                if paths.len() >= budget {
                    return Err(KripkeError::BudgetExceeded(budget));
                }
                let mut path = paths[parent].clone();
                path.push(t);
                let child = paths.len();
                paths.push(path);
                edges.push((parent, child));
                edges.push((child, parent));
                next.push(child);
            }
        }
        frontier = next;
    }
    if mode == UnravelMode::Reflexive {
        edges.extend((0..paths.len()).map(|i| (i, i)));
    }
    let mut valuation: BTreeMap<_, BTreeSet<State>> = BTreeMap::new();
    for (i, path) in paths.iter().enumerate() {
        let last = *path.last().expect("paths are nonempty");
        for (atom, states) in m.valuation() {
            if states.contains(&last) {
                valuation.entry(atom.clone()).or_default().insert(i);
            }
        }
    }
    let frame = Frame::new(paths.len(), edges)?;
    let model = Model::new(frame, valuation)?;
    let index = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    Ok(Unravelling {
        pointed: PointedModel::new(model, 0)?,
        paths,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{boxplus, Atom, Formula};
    use crate::kripke::chain_model;

    fn two_cycle() -> Model {
        let frame = Frame::new(2, [(0, 1), (1, 0)]).unwrap();
        let val = BTreeMap::from([(Atom::variable("x"), BTreeSet::from([0]))]);
        Model::new(frame, val).unwrap()
    }

    #[test]
    fn depth_zero_is_a_single_root() {
        let u = symmetric_unravelling(&two_cycle(), 0, 0, UnravelMode::Plain).unwrap();
        assert_eq!(u.paths, vec![vec![0]]);
        assert_eq!(u.model().frame().edge_count(), 0);
        assert!(u.model().holds(&Atom::variable("x"), 0));
        let u = symmetric_unravelling(&two_cycle(), 0, 0, UnravelMode::Reflexive).unwrap();
        assert!(u.model().frame().has_edge(0, 0));
    }

    #[test]
    fn two_cycle_paths() {
        let u = symmetric_unravelling(&two_cycle(), 0, 2, UnravelMode::Plain).unwrap();
        assert_eq!(u.paths, vec![vec![0], vec![0, 1], vec![0, 1, 0]]);
        let f = u.model().frame();
        assert!(f.is_symmetric());
        assert!(f.has_edge(0, 1) && f.has_edge(1, 2));
        assert!(!f.has_edge(0, 2));
        assert_eq!(u.state_of(&[0, 1, 0]), Some(2));
        assert!(u.model().holds(&Atom::variable("x"), 2));
        assert!(!u.model().holds(&Atom::variable("x"), 1));
    }

    #[test]
    fn preserves_boxplus_at_root() {
        let m = chain_model(1);
        let f = boxplus(&Formula::bot());
        for depth in 3..=5 {
            let u = symmetric_unravelling(&m, 0, depth, UnravelMode::Plain).unwrap();
            assert_eq!(u.pointed.satisfies(&f), m.satisfies(0, &f).unwrap());
        }
    }

    #[test]
    fn rejects_asymmetric_hosts_and_budget_overruns() {
        let m = Model::new(Frame::new(2, [(0, 1)]).unwrap(), BTreeMap::new()).unwrap();
        assert_eq!(
            symmetric_unravelling(&m, 0, 2, UnravelMode::Plain).unwrap_err(),
            KripkeError::NotSymmetric
        );
        assert_eq!(
            symmetric_unravelling_with_budget(&chain_model(2), 0, 8, UnravelMode::Plain, 100)
                .unwrap_err(),
            KripkeError::BudgetExceeded(100)
        );
    }
}
