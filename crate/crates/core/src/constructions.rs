//! The substitution families `σ_k`, `τ_k`, `λ_k`, `μ_k`, the formula
//! `φ = (x → ⊞x) ∧ (¬x → ⊟¬x)`, witness paths for `¬⊞^k⊥` and `¬⊟^k⊥`, and
//! the bridge model joining two unravellings through fresh states `t`, `u`.
//!
//! Every family acts on the single variable `x` and is the identity elsewhere.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{
    boxminus, boxminus_iter, boxplus, boxplus_iter, guard_labels, guarded_iter, Atom, Formula,
    Polarity,
};
use crate::kripke::{
    disjoint_union, symmetric_unravelling_with_budget, Frame, KripkeError, Model, PointedModel,
    State, UnravelMode, DEFAULT_STATE_BUDGET,
};
use crate::substitution::Substitution;

/// Name of the variable every family acts on.
pub const SUITE_VARIABLE: &str = "x";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// The suite variable as a formula.
pub fn x() -> Formula {
    Formula::var(SUITE_VARIABLE)
}

/// `σ_k(x)`: `⊥`, then `x ∧ ⊞σ_k(x)`.
pub fn sigma_image(k: usize) -> Formula {
    (0..k).fold(Formula::bot(), |acc, _| x().and(&boxplus(&acc)))
}

/// `τ_k(x)`: `⊤`, then `¬(¬x ∧ ⊟¬τ_k(x))`.
pub fn tau_image(k: usize) -> Formula {
    (0..k).fold(Formula::top(), |acc, _| {
        x().neg().and(&boxminus(&acc.neg())).neg()
    })
}

/// `λ_k(x) = x ∧ ⊞^k⊥`.
pub fn lambda_image(k: usize) -> Formula {
    x().and(&boxplus_iter(k, &Formula::bot()))
}

/// `μ_k(x) = ¬(¬x ∧ ⊟^k⊥)`.
pub fn mu_image(k: usize) -> Formula {
    x().neg().and(&boxminus_iter(k, &Formula::bot())).neg()
}

pub fn sigma_k(k: usize) -> Substitution {
    Substitution::single(SUITE_VARIABLE, sigma_image(k))
}

pub fn tau_k(k: usize) -> Substitution {
    Substitution::single(SUITE_VARIABLE, tau_image(k))
}

pub fn lambda_k(k: usize) -> Substitution {
    Substitution::single(SUITE_VARIABLE, lambda_image(k))
}

pub fn mu_k(k: usize) -> Substitution {
    Substitution::single(SUITE_VARIABLE, mu_image(k))
}

/// The four indexed substitution families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sigma,
    Tau,
    Lambda,
    Mu,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Sigma, Family::Tau, Family::Lambda, Family::Mu];

    pub fn image(self, k: usize) -> Formula {
        match self {
            Family::Sigma => sigma_image(k),
            Family::Tau => tau_image(k),
            Family::Lambda => lambda_image(k),
            Family::Mu => mu_image(k),
        }
    }

    pub fn substitution(self, k: usize) -> Substitution {
        Substitution::single(SUITE_VARIABLE, self.image(k))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sigma => "sigma",
            Family::Tau => "tau",
            Family::Lambda => "lambda",
            Family::Mu => "mu",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Family, String> {
        match s {
            "sigma" => Ok(Family::Sigma),
            "tau" => Ok(Family::Tau),
            "lambda" => Ok(Family::Lambda),
            "mu" => Ok(Family::Mu),
            _ => Err(format!(
                "unknown family `{s}` (expected sigma, tau, lambda or mu)"
            )),
        }
    }
}

/// `φ = (x → ⊞x) ∧ (¬x → ⊟¬x)`.
pub fn nullary_formula() -> Formula {
    let x = x();
    x.implies(&boxplus(&x))
        .and(&x.neg().implies(&boxminus(&x.neg())))
}

/// States `v₀, t₁, u₁, v₁, …, t_k, u_k, v_k` realising the guards of `⊞^k`
/// (plus) or `⊟^k` (minus) along consecutive edges of a host model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPath {
    pub states: Vec<State>,
    pub polarity: Polarity,
}

impl WitnessPath {
    pub fn k(&self) -> usize {
        self.states.len() / 3
    }

    pub fn start(&self) -> State {
        self.states[0]
    }

    pub fn end(&self) -> State {
        *self.states.last().expect("witness paths are nonempty")
    }
}

/// `(p, q)` label required at position `i` of a witness path.
fn expected_label(polarity: Polarity, i: usize) -> (bool, bool) {
    if i == 0 {
        (false, false)
    } else {
        guard_labels(polarity)[(i - 1) % 3 + 1]
    }
}

fn label_at(m: &Model, s: State) -> (bool, bool) {
    (m.holds(&Atom::p(), s), m.holds(&Atom::q(), s))
}

/// Finds a witness path of length `3k + 1` from `s`, preferring smaller
/// state ids at every step.
pub fn extract_witness_path(
    m: &Model,
    s: State,
    k: usize,
    polarity: Polarity,
) -> Result<WitnessPath, ConstructionError> {
    if !m.frame().is_symmetric() {
        return Err(KripkeError::NotSymmetric.into());
    }
    let target = guarded_iter(polarity, k, &Formula::bot());
    if m.satisfies(s, &target)? {
        return Err(ConstructionError::Precondition(format!(
            "state {s} satisfies {target}"
        )));
    }
    if label_at(m, s) != (false, false) {
        return Err(ConstructionError::Precondition(format!(
            "state {s} does not satisfy ~#p & ~#q"
        )));
    }
    let len = 3 * k + 1;
    let mut path = vec![s];
    let mut dead = HashSet::new();
    if dfs(m, polarity, len, &mut path, &mut dead) {
        Ok(WitnessPath {
            states: path,
            polarity,
        })
    } else {
        Err(ConstructionError::Precondition(format!(
            "no witness path from state {s} although {target} fails there"
        )))
    }
}

fn dfs(
    m: &Model,
    polarity: Polarity,
    len: usize,
    path: &mut Vec<State>,
    dead: &mut HashSet<(State, usize)>,
) -> bool {
    let pos = path.len();
    if pos == len {
        return true;
    }
    let last = *path.last().expect("path starts nonempty");
    if dead.contains(&(last, pos)) {
        return false;
    }
    let mut next: Vec<State> = m.frame().successors(last).to_vec();
    next.sort_unstable();
    next.dedup();
    for t in next {
        if label_at(m, t) != expected_label(polarity, pos) {
            continue;
        }
        path.push(t);
        if dfs(m, polarity, len, path, dead) {
            return true;
        }
        path.pop();
    }
    dead.insert((last, pos));
    false
}

/// The combined model of [`bridge_model`] and the states of interest in it.
#[derive(Debug, Clone)]
pub struct Bridge {
    pub model: Model,
    /// Root of the unravelling of the left input.
    pub root: State,
    /// Root of the unravelling of the right input.
    pub root_prime: State,
    /// Fresh state with `p` true and `q` false.
    pub t: State,
    /// Fresh state with `p` false and `q` true.
    pub u: State,
    /// End of the plus witness path, linked to `t`.
    pub plus_end: State,
    /// End of the minus witness path, linked to `u`.
    pub minus_end: State,
}

/// Unravelling depth used by [`bridge_model`] for a given `k`.
pub fn bridge_depth(k: usize) -> usize {
    6 * k + 2
}

pub fn bridge_model(
    left: &PointedModel,
    right: &PointedModel,
    k: usize,
    mode: UnravelMode,
) -> Result<Bridge, ConstructionError> {
    bridge_model_with(left, right, k, mode, bridge_depth(k), DEFAULT_STATE_BUDGET)
}

/// Joins the unravellings of `left` and `right` around their points: the end
/// of a plus witness path on the left is linked to a fresh `t`, the end of a
/// minus witness path on the right to a fresh `u`, and `t`, `u` are linked to
/// each other and to themselves.
pub fn bridge_model_with(
    left: &PointedModel,
    right: &PointedModel,
    k: usize,
    mode: UnravelMode,
    depth: usize,
    state_budget: usize,
) -> Result<Bridge, ConstructionError> {
    if depth < 3 * k {
        return Err(ConstructionError::Precondition(format!(
            "unravelling depth {depth} is shorter than the witness paths"
        )));
    }
    if mode == UnravelMode::Reflexive
        && !(left.model().frame().is_reflexive() && right.model().frame().is_reflexive())
    {
        return Err(ConstructionError::Precondition(
            "reflexive mode needs reflexive inputs".into(),
        ));
    }
    let plus = extract_witness_path(left.model(), left.point(), k, Polarity::Plus)?;
    let minus = extract_witness_path(right.model(), right.point(), k, Polarity::Minus)?;
    let ul =
        symmetric_unravelling_with_budget(left.model(), left.point(), depth, mode, state_budget)?;
    let ur =
        symmetric_unravelling_with_budget(right.model(), right.point(), depth, mode, state_budget)?;
    if ul.paths.len() + ur.paths.len() + 2 > state_budget {
        return Err(KripkeError::BudgetExceeded(state_budget).into());
    }
    let plus_path = ul
        .state_of(&plus.states)
        .expect("witness path is a path of the host");
    let minus_path = ur
        .state_of(&minus.states)
        .expect("witness path is a path of the host");

    let (union, inj) = disjoint_union(&[ul.model().clone(), ur.model().clone()])?;
    let n = union.len();
    let (t, u) = (n, n + 1);
    let plus_end = inj[0].map(plus_path);
    let minus_end = inj[1].map(minus_path);
    let mut edges: Vec<(State, State)> = union.frame().edges().collect();
    edges.extend([
        (t, t),
        (u, u),
        (t, u),
        (u, t),
        (plus_end, t),
        (t, plus_end),
        (minus_end, u),
        (u, minus_end),
    ]);
    let mut valuation: BTreeMap<Atom, BTreeSet<State>> = union.valuation().clone();
    valuation.entry(Atom::p()).or_default().insert(t);
    valuation.entry(Atom::q()).or_default().insert(u);
    let model = Model::new(Frame::new(n + 2, edges)?, valuation)?;
    Ok(Bridge {
        model,
        root: inj[0].map(ul.root()),
        root_prime: inj[1].map(ur.root()),
        t,
        u,
        plus_end,
        minus_end,
    })
}
