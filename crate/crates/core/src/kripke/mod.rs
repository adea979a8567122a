//! Finite Kripke frames and models.
//!
//! States are dense indices `0..n`. Satisfaction is computed extensionally:
//! each subformula is evaluated once over all states, with shared subterms
//! memoised by address.

mod json;
mod unravel;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use thiserror::Error;

use crate::formula::{Atom, Formula, Node};

pub use json::ModelJson;
pub use unravel::{
    symmetric_unravelling, symmetric_unravelling_with_budget, UnravelMode, Unravelling,
};

pub type State = usize;

/// Default cap on the number of states a construction may materialise.
pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("a frame needs at least one state")]
    EmptyFrame,
    #[error("unknown state {0}")]
    UnknownState(i64),
    #[error("duplicate state {0}")]
    DuplicateState(i64),
    #[error("frame is not symmetric")]
    NotSymmetric,
    #[error("construction would exceed the state budget of {0}")]
    BudgetExceeded(usize),
    #[error("bad atom name in valuation: {0}")]
    BadAtom(String),
    #[error("malformed model JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Precondition(String),
}

/// A finite frame. Successor lists are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    succ: Vec<Vec<State>>,
}

impl Frame {
    pub fn new<I>(len: usize, edges: I) -> Result<Frame, KripkeError>
    where
        I: IntoIterator<Item = (State, State)>,
    {
        if len == 0 {
            return Err(KripkeError::EmptyFrame);
        }
        let mut succ = vec![Vec::new(); len];
        for (s, t) in edges {
            if s >= len {
                return Err(KripkeError::UnknownState(s as i64));
            }
            if t >= len {
                return Err(KripkeError::UnknownState(t as i64));
            }
            succ[s].push(t);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Frame { succ })
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn states(&self) -> std::ops::Range<State> {
        0..self.succ.len()
    }

    pub fn successors(&self, s: State) -> &[State] {
        &self.succ[s]
    }

    pub fn has_edge(&self, s: State, t: State) -> bool {
        self.succ
            .get(s)
            .is_some_and(|list| list.binary_search(&t).is_ok())
    }

    pub fn edges(&self) -> impl Iterator<Item = (State, State)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, list)| list.iter().map(move |&t| (s, t)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(s, t)| self.has_edge(t, s))
    }

    pub fn is_serial(&self) -> bool {
        self.succ.iter().all(|list| !list.is_empty())
    }

    pub fn is_reflexive(&self) -> bool {
        self.states().all(|s| self.has_edge(s, s))
    }
}

/// A frame with a valuation. Atoms missing from the valuation are false everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<Atom, BTreeSet<State>>,
}

impl Model {
    pub fn new(
        frame: Frame,
        valuation: BTreeMap<Atom, BTreeSet<State>>,
    ) -> Result<Model, KripkeError> {
        for states in valuation.values() {
            if let Some(&s) = states.iter().find(|&&s| s >= frame.len()) {
                return Err(KripkeError::UnknownState(s as i64));
            }
        }
        let valuation = valuation
            .into_iter()
            .filter(|(_, v)| !v.is_empty())
            .collect();
        Ok(Model { frame, valuation })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    pub fn valuation(&self) -> &BTreeMap<Atom, BTreeSet<State>> {
        &self.valuation
    }

    pub fn holds(&self, atom: &Atom, s: State) -> bool {
        self.valuation.get(atom).is_some_and(|v| v.contains(&s))
    }

    fn check_state(&self, s: State) -> Result<(), KripkeError> {
        if s < self.len() {
            Ok(())
        } else {
            Err(KripkeError::UnknownState(s as i64))
        }
    }

    /// `M, s ⊨ f`.
    pub fn satisfies(&self, s: State, f: &Formula) -> Result<bool, KripkeError> {
        self.check_state(s)?;
        Ok(self.extension(f)[s])
    }

    /// True at every state.
    pub fn is_true(&self, f: &Formula) -> bool {
        self.extension(f).iter().all(|&b| b)
    }

    /// The truth value of `f` at every state.
    pub fn extension(&self, f: &Formula) -> Vec<bool> {
        let mut memo = HashMap::new();
        let ext = self.eval(f, &mut memo);
        Rc::try_unwrap(ext).unwrap_or_else(|rc| (*rc).clone())
    }

    fn eval(&self, f: &Formula, memo: &mut HashMap<*const Node, Rc<Vec<bool>>>) -> Rc<Vec<bool>> {
        if let Some(hit) = memo.get(&f.ptr()) {
            return hit.clone();
        }
        let n = self.len();
        let ext: Vec<bool> = match f.node() {
            Node::Bot => vec![false; n],
            Node::Atom(a) => {
                let mut v = vec![false; n];
                if let Some(states) = self.valuation.get(a) {
                    for &s in states {
                        v[s] = true;
                    }
                }
                v
            }
            Node::Not(g) => self.eval(g, memo).iter().map(|b| !b).collect(),
            Node::Or(a, b) => {
                let (ea, eb) = (self.eval(a, memo), self.eval(b, memo));
                ea.iter().zip(eb.iter()).map(|(x, y)| *x || *y).collect()
            }
            Node::Box(g) => {
                let eg = self.eval(g, memo);
                self.frame
                    .states()
                    .map(|s| self.frame.successors(s).iter().all(|&t| eg[t]))
                    .collect()
            }
        };
        let ext = Rc::new(ext);
        memo.insert(f.ptr(), ext.clone());
        ext
    }
}

/// A model with a distinguished state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    model: Model,
    point: State,
}

impl PointedModel {
    pub fn new(model: Model, point: State) -> Result<PointedModel, KripkeError> {
        model.check_state(point)?;
        Ok(PointedModel { model, point })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn point(&self) -> State {
        self.point
    }

    pub fn into_parts(self) -> (Model, State) {
        (self.model, self.point)
    }

    pub fn satisfies(&self, f: &Formula) -> bool {
        self.model.extension(f)[self.point]
    }
}

/// States `0..=3k`, neighbours at distance at most one (loops included),
/// `p` true at indices `≡ 1 (mod 3)` and `q` at indices `≡ 2 (mod 3)`.
pub fn chain_model(k: usize) -> Model {
    let n = 3 * k + 1;
    let edges = (0..n).flat_map(|i| {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(n - 1);
        (lo..=hi).map(move |j| (i, j))
    });
    let frame = Frame::new(n, edges).expect("chain frame is well formed");
    let mut valuation = BTreeMap::new();
    valuation.insert(Atom::p(), (0..n).filter(|i| i % 3 == 1).collect());
    valuation.insert(Atom::q(), (0..n).filter(|i| i % 3 == 2).collect());
    Model::new(frame, valuation).expect("chain valuation is in range")
}

/// Renaming of one summand's states into the union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Injection {
    offset: usize,
    len: usize,
}

impl Injection {
    pub fn map(&self, s: State) -> State {
        assert!(
            s < self.len,
            "state {s} outside summand of size {}",
            self.len
        );
        self.offset + s
    }

    pub fn range(&self) -> std::ops::Range<State> {
        self.offset..self.offset + self.len
    }
}

/// Disjoint union: summand `i` occupies a contiguous block of states.
pub fn disjoint_union(models: &[Model]) -> Result<(Model, Vec<Injection>), KripkeError> {
    if models.is_empty() {
        return Err(KripkeError::EmptyFrame);
    }
    let mut injections = Vec::with_capacity(models.len());
    let mut edges = Vec::new();
    let mut valuation: BTreeMap<Atom, BTreeSet<State>> = BTreeMap::new();
    let mut offset = 0;
    for m in models {
        edges.extend(m.frame.edges().map(|(s, t)| (s + offset, t + offset)));
        for (atom, states) in &m.valuation {
            valuation
                .entry(atom.clone())
                .or_default()
                .extend(states.iter().map(|s| s + offset));
        }
        injections.push(Injection {
            offset,
            len: m.len(),
        });
        offset += m.len();
    }
    let model = Model::new(Frame::new(offset, edges)?, valuation)?;
    Ok((model, injections))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{boxminus_iter, boxplus_iter};

    fn bot() -> Formula {
        Formula::bot()
    }

    #[test]
    fn chain_shapes() {
        let m0 = chain_model(0);
        assert_eq!(m0.len(), 1);
        assert_eq!(m0.frame().edges().collect::<Vec<_>>(), vec![(0, 0)]);
        assert!(m0.valuation().is_empty());

        let m1 = chain_model(1);
        assert_eq!(m1.len(), 4);
        assert_eq!(m1.valuation()[&Atom::p()], BTreeSet::from([1]));
        assert_eq!(m1.valuation()[&Atom::q()], BTreeSet::from([2]));
        assert!(m1.frame().is_symmetric());
        assert!(m1.frame().is_reflexive());
        assert!(m1.frame().is_serial());
    }

    #[test]
    fn chain_falsifies_guarded_boxes() {
        let m = chain_model(1);
        assert!(!m.satisfies(0, &boxplus_iter(1, &bot())).unwrap());
        assert!(!m.satisfies(3, &boxminus_iter(1, &bot())).unwrap());
        assert!(!m.is_true(&boxplus_iter(1, &bot())));
        // the converse direction is blocked by the labels
        assert!(m.satisfies(3, &boxplus_iter(1, &bot())).unwrap());

        let m = chain_model(1);
        let f = boxplus_iter(2, &bot()).implies(&boxplus_iter(1, &bot()));
        assert!(!m.satisfies(0, &f).unwrap());
    }

    #[test]
    fn top_holds_everywhere() {
        let m = chain_model(2);
        assert!(m.is_true(&Formula::top()));
        assert!(m.satisfies(6, &Formula::top()).unwrap());
        assert_eq!(
            m.satisfies(7, &Formula::top()),
            Err(KripkeError::UnknownState(7))
        );
    }

    #[test]
    fn frame_predicates() {
        let lonely = Frame::new(1, []).unwrap();
        assert!(!lonely.is_serial());
        assert!(lonely.is_symmetric());
        assert!(!lonely.is_reflexive());
        let one_way = Frame::new(2, [(0, 1)]).unwrap();
        assert!(!one_way.is_symmetric());
        assert_eq!(Frame::new(0, []), Err(KripkeError::EmptyFrame));
        assert_eq!(Frame::new(2, [(0, 2)]), Err(KripkeError::UnknownState(2)));
    }

    #[test]
    fn single_reflexive_state_with_x() {
        let frame = Frame::new(1, [(0, 0)]).unwrap();
        let val = BTreeMap::from([(Atom::variable("x"), BTreeSet::from([0]))]);
        let m = Model::new(frame, val).unwrap();
        assert!(m.is_true(&Formula::var("x")));
    }

    #[test]
    fn union_of_models() {
        let (u, inj) = disjoint_union(&[chain_model(1)]).unwrap();
        assert_eq!(u, chain_model(1));
        assert_eq!(inj[0].map(3), 3);

        let (u, inj) = disjoint_union(&[chain_model(1), chain_model(0)]).unwrap();
        assert_eq!(u.len(), 5);
        assert!(u.frame().is_symmetric());
        assert_eq!(inj[1].map(0), 4);
        assert!(!u.frame().has_edge(3, 4));
        assert!(u.holds(&Atom::p(), 1));
        assert!(disjoint_union(&[]).is_err());
    }
}
