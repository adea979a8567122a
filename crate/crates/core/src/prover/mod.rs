//! Validity in KB, KDB and KTB.
//!
//! [`decide`] refutes `¬φ` with a tableau over symmetric trees. A `Valid`
//! verdict means every branch closed; an `Invalid` verdict carries the open
//! branch as a finite countermodel, and that countermodel is re-checked
//! against the frame class and the formula before it is returned.
//! [`brute_force_countermodel`] is an independent small-model search used to
//! cross-check the tableau.

mod nnf;
mod oracle;
mod tableau;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::formula::Formula;
use crate::kripke::{Frame, PointedModel};

pub use oracle::{
    brute_force_countermodel, brute_force_countermodel_with_budget, OracleError,
    DEFAULT_ORACLE_BUDGET,
};

/// Default cap on branch points plus created worlds per query.
pub const DEFAULT_MAX_NODES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Logic {
    /// Symmetric frames.
    #[serde(rename = "kb")]
    Kb,
    /// Serial symmetric frames.
    #[serde(rename = "kdb")]
    Kdb,
    /// Reflexive symmetric frames.
    #[serde(rename = "ktb")]
    Ktb,
}

impl Logic {
    pub const ALL: [Logic; 3] = [Logic::Kb, Logic::Kdb, Logic::Ktb];

    /// Whether `frame` belongs to the frame class of this logic.
    pub fn admits(self, frame: &Frame) -> bool {
        frame.is_symmetric()
            && match self {
                Logic::Kb => true,
                Logic::Kdb => frame.is_serial(),
                Logic::Ktb => frame.is_reflexive(),
            }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Kb => "KB",
            Logic::Kdb => "KDB",
            Logic::Ktb => "KTB",
        })
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Logic, String> {
        match s.to_ascii_lowercase().as_str() {
            "kb" => Ok(Logic::Kb),
            "kdb" => Ok(Logic::Kdb),
            "ktb" => Ok(Logic::Ktb),
            _ => Err(format!("unknown logic `{s}` (expected kb, kdb or ktb)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// A pointed model of the logic's frame class falsifying the formula at its point.
    Invalid(PointedModel),
    /// The search budget ran out. Never a claim either way.
    Unknown(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, Verdict::Invalid(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn countermodel(&self) -> Option<&PointedModel> {
        match self {
            Verdict::Invalid(m) => Some(m),
            _ => None,
        }
    }

    /// `Some(true)` for valid, `Some(false)` for invalid, `None` when unknown.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Valid => Some(true),
            Verdict::Invalid(_) => Some(false),
            Verdict::Unknown(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::Valid => serde_json::json!({ "verdict": "valid" }),
            Verdict::Invalid(m) => serde_json::json!({
                "verdict": "invalid",
                "countermodel": m.to_json(),
            }),
            Verdict::Unknown(reason) => serde_json::json!({
                "verdict": "unknown",
                "reason": reason,
            }),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Invalid(m) => write!(f, "invalid ({}-state countermodel)", m.model().len()),
            Verdict::Unknown(reason) => write!(f, "unknown ({reason})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverConfig {
    pub max_nodes: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

/// Whether `counter` is a countermodel to `f` in `logic`.
pub fn certify(logic: Logic, f: &Formula, counter: &PointedModel) -> bool {
    logic.admits(counter.model().frame()) && !counter.satisfies(f)
}

pub fn decide(logic: Logic, f: &Formula) -> Verdict {
    decide_with(logic, f, &ProverConfig::default())
}

pub fn decide_with(logic: Logic, f: &Formula, config: &ProverConfig) -> Verdict {
    let (arena, root) = nnf::Arena::for_refutation(f);
    let mut search = tableau::Search::new(&arena, logic, config.max_nodes);
    match search.run(root) {
        tableau::Outcome::Closed => Verdict::Valid,
        tableau::Outcome::Exhausted => {
            Verdict::Unknown(format!("node budget of {} exhausted", config.max_nodes))
        }
        tableau::Outcome::Open(counter) => {
            if certify(logic, f, &counter) {
                Verdict::Invalid(counter)
            } else {
                Verdict::Unknown(format!(
                    "open branch after {} steps failed certification",
                    search.spent()
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{boxplus_iter, parse};

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn b_axiom_is_valid_everywhere() {
        for logic in Logic::ALL {
            assert_eq!(decide(logic, &f("~#p -> [] ~ [] #p")), Verdict::Valid);
        }
    }

    #[test]
    fn t_axiom_only_in_ktb() {
        assert_eq!(decide(Logic::Ktb, &f("[] #p -> #p")), Verdict::Valid);
        let v = decide(Logic::Kb, &f("[] #p -> #p"));
        let counter = v.countermodel().expect("invalid in KB");
        assert!(certify(Logic::Kb, &f("[] #p -> #p"), counter));
        assert!(decide(Logic::Kdb, &f("[] #p -> #p")).is_invalid());
    }

    #[test]
    fn d_axiom_needs_seriality() {
        let d = f("[] x -> <> x");
        assert!(decide(Logic::Kb, &d).is_invalid());
        assert_eq!(decide(Logic::Kdb, &d), Verdict::Valid);
        assert_eq!(decide(Logic::Ktb, &d), Verdict::Valid);
        assert_eq!(decide(Logic::Kdb, &f("~[] false")), Verdict::Valid);
    }

    #[test]
    fn four_and_five_fail() {
        for logic in Logic::ALL {
            assert!(decide(logic, &f("[] x -> [] [] x")).is_invalid());
            assert!(decide(logic, &f("<> x -> [] <> x")).is_invalid());
        }
    }

    #[test]
    fn guarded_boxes() {
        assert!(decide(Logic::Kb, &boxplus_iter(1, &Formula::bot())).is_invalid());
        assert_eq!(
            decide(Logic::Kb, &boxplus_iter(2, &Formula::top())),
            Verdict::Valid
        );
    }

    #[test]
    fn propositional_sanity() {
        assert_eq!(decide(Logic::Kb, &f("x | ~x")), Verdict::Valid);
        assert_eq!(decide(Logic::Kb, &f("true")), Verdict::Valid);
        assert!(decide(Logic::Kb, &f("false")).is_invalid());
        assert!(decide(Logic::Kb, &f("x -> y")).is_invalid());
        assert_eq!(decide(Logic::Kb, &f("(x -> y) & x -> y")), Verdict::Valid);
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let hard = f("[+<2] x & [+^2] false -> x & [+] (x & [+] false)");
        let v = decide_with(Logic::Kb, &hard, &ProverConfig { max_nodes: 1 });
        assert!(v.is_unknown(), "{v}");
    }

    #[test]
    fn logic_names() {
        assert_eq!("KTB".parse::<Logic>().unwrap(), Logic::Ktb);
        assert!("s5".parse::<Logic>().is_err());
        assert_eq!(Logic::Kdb.to_string(), "KDB");
    }
}
