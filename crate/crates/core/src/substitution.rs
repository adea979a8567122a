//! Finite-support substitutions of formulas for variables.
//!
//! A [`Substitution`] stores only the variables it moves; every other
//! variable maps to itself and parameters are never replaced. Composition
//! follows the convention `compose(s, t)(x) = t(s(x))`: `s` acts first.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, Atom, Formula, FormulaError, Node};
use crate::prover::{decide_with, Logic, ProverConfig, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("`{0}` is not a variable; parameters cannot be substituted")]
    NotAVariable(String),
    #[error("invalid formula for `{variable}`: {source}")]
    Formula {
        variable: String,
        source: FormulaError,
    },
    #[error("invalid substitution JSON: {0}")]
    Json(String),
}

/// A semantic comparison the prover could not settle within its budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("indeterminate: {reason}")]
pub struct Indeterminate {
    pub reason: String,
}

/// `Ok(answer)` when the prover settled every obligation, `Err` otherwise.
pub type Judgement = Result<bool, Indeterminate>;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Atom, Formula>,
}

/// Wire form: `{"map":{"x":"<formula text>"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionJson {
    pub map: BTreeMap<String, String>,
}

impl Substitution {
    pub fn identity() -> Substitution {
        Substitution::default()
    }

    /// Builds a substitution from `(variable, image)` pairs; identity pairs are dropped.
    pub fn from_pairs<I>(pairs: I) -> Result<Substitution, SubstitutionError>
    where
        I: IntoIterator<Item = (Atom, Formula)>,
    {
        let mut s = Substitution::identity();
        for (atom, image) in pairs {
            s.insert(atom, image)?;
        }
        Ok(s)
    }

    /// `{name ↦ image}`. Panics if `name` is not a valid variable name.
    pub fn single(name: &str, image: Formula) -> Substitution {
        let mut s = Substitution::identity();
        s.insert(Atom::variable(name), image)
            .expect("Atom::variable yields a variable");
        s
    }

    /// Sets the image of `atom`, removing the entry if the image is the atom itself.
    pub fn insert(&mut self, atom: Atom, image: Formula) -> Result<(), SubstitutionError> {
        if !atom.is_variable() {
            return Err(SubstitutionError::NotAVariable(atom.to_string()));
        }
        if image == Formula::atom(atom.clone()) {
            self.map.remove(&atom);
        } else {
            self.map.insert(atom, image);
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Variables moved by the substitution.
    pub fn support(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.map.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Atom, &Formula)> + '_ {
        self.map.iter()
    }

    /// Image of an atom: the stored formula, or the atom itself.
    pub fn image(&self, atom: &Atom) -> Formula {
        self.map
            .get(atom)
            .cloned()
            .unwrap_or_else(|| Formula::atom(atom.clone()))
    }

    /// Simultaneous replacement of every variable by its image.
    pub fn apply(&self, f: &Formula) -> Formula {
        if self.map.is_empty() {
            return f.clone();
        }
        let mut memo = HashMap::new();
        self.apply_memo(f, &mut memo)
    }

    fn apply_memo(&self, f: &Formula, memo: &mut HashMap<*const Node, Formula>) -> Formula {
        if let Some(done) = memo.get(&f.ptr()) {
            return done.clone();
        }
        let out = match f.node() {
            Node::Bot => f.clone(),
            Node::Atom(a) => match self.map.get(a) {
                Some(image) => image.clone(),
                None => f.clone(),
            },
            Node::Not(g) => {
                let g2 = self.apply_memo(g, memo);
                if g2.ptr() == g.ptr() {
                    f.clone()
                } else {
                    g2.neg()
                }
            }
            Node::Box(g) => {
                let g2 = self.apply_memo(g, memo);
                if g2.ptr() == g.ptr() {
                    f.clone()
                } else {
                    g2.boxed()
                }
            }
            Node::Or(a, b) => {
                let (a2, b2) = (self.apply_memo(a, memo), self.apply_memo(b, memo));
                if a2.ptr() == a.ptr() && b2.ptr() == b.ptr() {
                    f.clone()
                } else {
                    a2.or(&b2)
                }
            }
        };
        memo.insert(f.ptr(), out.clone());
        out
    }

    /// `compose(self, then)(x) = then(self(x))`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::identity();
        let vars: BTreeSet<&Atom> = self.map.keys().chain(then.map.keys()).collect();
        for x in vars {
            let image = then.apply(&self.image(x));
            out.insert(x.clone(), image)
                .expect("supports hold variables only");
        }
        out
    }

    /// Agrees with `self` on the variables of `f` and is the identity elsewhere.
    pub fn restrict_to(&self, f: &Formula) -> Substitution {
        let vars = f.variables();
        Substitution {
            map: self
                .map
                .iter()
                .filter(|(x, _)| vars.contains(*x))
                .map(|(x, g)| (x.clone(), g.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> SubstitutionJson {
        SubstitutionJson {
            map: self
                .map
                .iter()
                .map(|(x, g)| (x.name().to_string(), g.to_string()))
                .collect(),
        }
    }

    pub fn from_json(raw: &SubstitutionJson) -> Result<Substitution, SubstitutionError> {
        let mut s = Substitution::identity();
        for (name, text) in &raw.map {
            let atom = Atom::from_concrete(name).map_err(|source| SubstitutionError::Formula {
                variable: name.clone(),
                source,
            })?;
            let image = parse(text).map_err(|source| SubstitutionError::Formula {
                variable: name.clone(),
                source,
            })?;
            s.insert(atom, image)?;
        }
        Ok(s)
    }

    pub fn from_json_str(text: &str) -> Result<Substitution, SubstitutionError> {
        let raw: SubstitutionJson =
            serde_json::from_str(text).map_err(|e| SubstitutionError::Json(e.to_string()))?;
        Substitution::from_json(&raw)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, g)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} := {g}")?;
        }
        f.write_str("}")
    }
}

fn judge(verdict: Verdict) -> Judgement {
    match verdict {
        Verdict::Valid => Ok(true),
        Verdict::Invalid(_) => Ok(false),
        Verdict::Unknown(reason) => Err(Indeterminate { reason }),
    }
}

/// `s ≃ t`: `s(x) ↔ t(x)` is valid for every variable in either support.
pub fn equivalent(logic: Logic, s: &Substitution, t: &Substitution) -> Judgement {
    equivalent_with(logic, s, t, &ProverConfig::default())
}

/// A definite `false` from any variable wins over an indeterminate one.
pub fn equivalent_with(
    logic: Logic,
    s: &Substitution,
    t: &Substitution,
    config: &ProverConfig,
) -> Judgement {
    let vars: BTreeSet<&Atom> = s.map.keys().chain(t.map.keys()).collect();
    let mut pending = None;
    for x in vars {
        let goal = s.image(x).iff(&t.image(x));
        match judge(decide_with(logic, &goal, config)) {
            Ok(true) => {}
            Ok(false) => return Ok(false),
            Err(e) => pending = pending.or(Some(e)),
        }
    }
    pending.map_or(Ok(true), Err)
}

/// Checks the claimed witness `w` for `s ⪯ t`, that is `compose(s, w) ≃ t`.
pub fn more_general_with_witness(
    logic: Logic,
    s: &Substitution,
    t: &Substitution,
    w: &Substitution,
) -> Judgement {
    equivalent(logic, &s.compose(w), t)
}

/// Whether `s(f)` is valid in `logic`.
pub fn is_unifier(logic: Logic, s: &Substitution, f: &Formula) -> Judgement {
    is_unifier_with(logic, s, f, &ProverConfig::default())
}

pub fn is_unifier_with(
    logic: Logic,
    s: &Substitution,
    f: &Formula,
    config: &ProverConfig,
) -> Judgement {
    judge(decide_with(logic, &s.apply(f), config))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn apply_replaces_variables_only() {
        let s = Substitution::single("x", Formula::top());
        assert_eq!(s.apply(&f("x & #p")), f("true & #p"));
        assert_eq!(
            Substitution::single("x", Formula::bot()).apply(&f("#p")),
            f("#p")
        );
        let t = Substitution::single("x", f("y"));
        assert_eq!(t.apply(&f("[] (x | ~z)")), f("[] (y | ~z)"));
    }

    #[test]
    fn apply_is_simultaneous() {
        let swap = Substitution::from_pairs([
            (Atom::variable("x"), f("y")),
            (Atom::variable("y"), f("x")),
        ])
        .unwrap();
        assert_eq!(swap.apply(&f("x -> y")), f("y -> x"));
    }

    #[test]
    fn identity_entries_are_dropped() {
        let s = Substitution::single("x", f("x"));
        assert!(s.is_identity());
        let mut t = Substitution::identity();
        assert_eq!(
            t.insert(Atom::p(), Formula::bot()),
            Err(SubstitutionError::NotAVariable("#p".into()))
        );
    }

    #[test]
    fn composition_order() {
        let s = Substitution::single("x", f("[] x"));
        let t = Substitution::single("x", Formula::bot());
        assert_eq!(s.compose(&t).image(&Atom::variable("x")), f("[] false"));
        assert_eq!(t.compose(&s).image(&Atom::variable("x")), Formula::bot());
        assert_eq!(Substitution::identity().compose(&t), t);
        assert_eq!(t.compose(&Substitution::identity()), t);
    }

    #[test]
    fn composition_can_cancel_to_identity() {
        let s = Substitution::single("x", f("y"));
        let t = Substitution::single("y", f("x"));
        let st = s.compose(&t);
        assert!(st.support().all(|v| v.name() == "y"));
        assert_eq!(st.image(&Atom::variable("x")), f("x"));
    }

    #[test]
    fn restriction() {
        let s = Substitution::from_pairs([
            (Atom::variable("x"), Formula::bot()),
            (Atom::variable("y"), Formula::top()),
        ])
        .unwrap();
        assert_eq!(
            s.restrict_to(&f("x")),
            Substitution::single("x", Formula::bot())
        );
        assert!(Substitution::identity()
            .restrict_to(&f("x & y"))
            .is_identity());
    }

    #[test]
    fn equivalence_and_unifiers() {
        let s = Substitution::single("x", f("y & ~~y"));
        let t = Substitution::single("x", f("y"));
        assert_eq!(equivalent(Logic::Kb, &s, &t), Ok(true));
        assert_eq!(equivalent(Logic::Kb, &s, &s), Ok(true));
        let bot = Substitution::single("x", Formula::bot());
        let top = Substitution::single("x", Formula::top());
        assert_eq!(equivalent(Logic::Kb, &bot, &top), Ok(false));
        assert_eq!(
            is_unifier(Logic::Kb, &Substitution::identity(), &Formula::bot()),
            Ok(false)
        );
        assert_eq!(is_unifier(Logic::Kb, &top, &f("x")), Ok(true));
        assert_eq!(
            more_general_with_witness(Logic::Kb, &t, &t, &Substitution::identity()),
            Ok(true)
        );
    }

    #[test]
    fn exhausted_budget_is_indeterminate() {
        let s = Substitution::single("x", f("[+] [+] (y & [+] false)"));
        let t = Substitution::single("x", f("[+] [+] (y & [+] ~~false)"));
        let tiny = ProverConfig { max_nodes: 0 };
        assert!(equivalent_with(Logic::Kb, &s, &t, &tiny).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = Substitution::single("x", f("x & [+] false"));
        let text = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(Substitution::from_json_str(&text).unwrap(), s);
        assert!(Substitution::from_json_str(r##"{"map":{"#p":"x"}}"##).is_err());
        assert!(Substitution::from_json_str(r#"{"map":{"x":"(("}}"#).is_err());
        assert!(Substitution::from_json_str("[]").is_err());
    }
}
