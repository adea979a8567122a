//! Modal formulas over variables and parameters.
//!
//! The core syntax is `⊥ | atom | ¬φ | φ ∨ ψ | □φ`. Every other connective
//! (`⊤`, `∧`, `→`, `↔`, `◇`, `⊞`, `⊟` and their iterated and bounded forms)
//! is expanded into the core on construction, so structural equality is
//! equality of the expansions. Subterms are reference counted and shared.

mod parser;
mod printer;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parser::parse;
pub use printer::print;

/// Names that always denote the two fixed parameters.
pub const RESERVED_PARAMETERS: [&str; 2] = ["p", "q"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("`{0}` is a reserved parameter name; write `#{0}`")]
    ReservedName(String),
    #[error("invalid atom name `{0}`")]
    InvalidName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Variable,
    Parameter,
}

/// A propositional atom. Variables are replaced by substitutions, parameters never are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    kind: AtomKind,
    name: Arc<str>,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

impl Atom {
    pub fn try_variable(name: &str) -> Result<Atom, FormulaError> {
        if RESERVED_PARAMETERS.contains(&name) {
            return Err(FormulaError::ReservedName(name.to_string()));
        }
        if !valid_identifier(name) {
            return Err(FormulaError::InvalidName(name.to_string()));
        }
        Ok(Atom {
            kind: AtomKind::Variable,
            name: name.into(),
        })
    }

    pub fn try_parameter(name: &str) -> Result<Atom, FormulaError> {
        if !valid_identifier(name) {
            return Err(FormulaError::InvalidName(name.to_string()));
        }
        Ok(Atom {
            kind: AtomKind::Parameter,
            name: name.into(),
        })
    }

    /// Panics on reserved or malformed names; use [`Atom::try_variable`] for user input.
    pub fn variable(name: &str) -> Atom {
        Atom::try_variable(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn parameter(name: &str) -> Atom {
        Atom::try_parameter(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn p() -> Atom {
        Atom::parameter("p")
    }

    pub fn q() -> Atom {
        Atom::parameter("q")
    }

    /// Parses the concrete spelling used in model files: `#name` or `name`.
    pub fn from_concrete(text: &str) -> Result<Atom, FormulaError> {
        match text.strip_prefix('#') {
            Some(name) => Atom::try_parameter(name),
            None => Atom::try_variable(text),
        }
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_variable(&self) -> bool {
        self.kind == AtomKind::Variable
    }

    pub fn is_parameter(&self) -> bool {
        self.kind == AtomKind::Parameter
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AtomKind::Variable => write!(f, "{}", self.name),
            AtomKind::Parameter => write!(f, "#{}", self.name),
        }
    }
}

/// One node of the core syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Bot,
    Atom(Atom),
    Not(Formula),
    Or(Formula, Formula),
    Box(Formula),
}

/// An immutable, structurally shared formula.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(Arc<Node>);

impl Formula {
    fn make(node: Node) -> Formula {
        Formula(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Address of the shared node, stable while `self` is alive. Used as a memo key.
    pub(crate) fn ptr(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    pub fn bot() -> Formula {
        Formula::make(Node::Bot)
    }

    pub fn top() -> Formula {
        Formula::bot().neg()
    }

    pub fn atom(atom: Atom) -> Formula {
        Formula::make(Node::Atom(atom))
    }

    pub fn var(name: &str) -> Formula {
        Formula::atom(Atom::variable(name))
    }

    pub fn param(name: &str) -> Formula {
        Formula::atom(Atom::parameter(name))
    }

    pub fn p() -> Formula {
        Formula::atom(Atom::p())
    }

    pub fn q() -> Formula {
        Formula::atom(Atom::q())
    }

    pub fn neg(&self) -> Formula {
        Formula::make(Node::Not(self.clone()))
    }

    pub fn or(&self, other: &Formula) -> Formula {
        Formula::make(Node::Or(self.clone(), other.clone()))
    }

    pub fn and(&self, other: &Formula) -> Formula {
        self.neg().or(&other.neg()).neg()
    }

    pub fn implies(&self, other: &Formula) -> Formula {
        self.neg().or(other)
    }

    pub fn iff(&self, other: &Formula) -> Formula {
        self.implies(other).and(&other.implies(self))
    }

    pub fn boxed(&self) -> Formula {
        Formula::make(Node::Box(self.clone()))
    }

    pub fn diamond(&self) -> Formula {
        self.neg().boxed().neg()
    }

    /// Conjunction of all items, `⊤` when empty. Left-nested.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Formula::top(),
            Some(first) => iter.fold(first, |acc, f| acc.and(&f)),
        }
    }

    /// Modal degree: nesting depth of `□`.
    pub fn degree(&self) -> usize {
        match self.node() {
            Node::Bot | Node::Atom(_) => 0,
            Node::Not(f) => f.degree(),
            Node::Or(a, b) => a.degree().max(b.degree()),
            Node::Box(f) => f.degree() + 1,
        }
    }

    /// Number of nodes when the formula is written out as a tree.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Bot | Node::Atom(_) => 1,
            Node::Not(f) | Node::Box(f) => 1 + f.size(),
            Node::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn variables(&self) -> BTreeSet<Atom> {
        self.atoms().into_iter().filter(Atom::is_variable).collect()
    }

    pub fn parameters(&self) -> BTreeSet<Atom> {
        self.atoms()
            .into_iter()
            .filter(Atom::is_parameter)
            .collect()
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self.node() {
            Node::Bot => {}
            Node::Atom(a) => {
                out.insert(a.clone());
            }
            Node::Not(f) | Node::Box(f) => f.collect_atoms(out),
            Node::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Matches `φ → ψ`, i.e. `¬φ ∨ ψ`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::Or(a, b) => match a.node() {
                Node::Not(a) => Some((a, b)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Matches `φ ∧ ψ`, i.e. `¬(¬φ ∨ ¬ψ)`.
    pub fn as_conjunction(&self) -> Option<(&Formula, &Formula)> {
        let Node::Not(inner) = self.node() else {
            return None;
        };
        let Node::Or(a, b) = inner.node() else {
            return None;
        };
        match (a.node(), b.node()) {
            (Node::Not(a), Node::Not(b)) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// Which of the two guarded three-step boxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub fn dual(self) -> Polarity {
        match self {
            Polarity::Plus => Polarity::Minus,
            Polarity::Minus => Polarity::Plus,
        }
    }
}

/// `p^a ∧ q^b` where `p^1 = p` and `p^0 = ¬p`.
pub fn label(p_true: bool, q_true: bool) -> Formula {
    let lit = |f: Formula, positive: bool| if positive { f } else { f.neg() };
    lit(Formula::p(), p_true).and(&lit(Formula::q(), q_true))
}

/// The `(p, q)` labels of the four guards of `⊞` (or `⊟`), outermost first.
pub fn guard_labels(polarity: Polarity) -> [(bool, bool); 4] {
    match polarity {
        Polarity::Plus => [(false, false), (true, false), (false, true), (false, false)],
        Polarity::Minus => [(false, false), (false, true), (true, false), (false, false)],
    }
}

/// `g0 → □(g1 → □(g2 → □(g3 → φ)))` with the guards of the given polarity.
pub fn guarded_box(polarity: Polarity, f: &Formula) -> Formula {
    let guards = guard_labels(polarity);
    let mut acc = label(guards[3].0, guards[3].1).implies(f);
    for &(p, q) in guards[..3].iter().rev() {
        acc = label(p, q).implies(&acc.boxed());
    }
    acc
}

pub fn boxplus(f: &Formula) -> Formula {
    guarded_box(Polarity::Plus, f)
}

pub fn boxminus(f: &Formula) -> Formula {
    guarded_box(Polarity::Minus, f)
}

pub fn guarded_iter(polarity: Polarity, k: usize, f: &Formula) -> Formula {
    (0..k).fold(f.clone(), |acc, _| guarded_box(polarity, &acc))
}

pub fn boxplus_iter(k: usize, f: &Formula) -> Formula {
    guarded_iter(Polarity::Plus, k, f)
}

pub fn boxminus_iter(k: usize, f: &Formula) -> Formula {
    guarded_iter(Polarity::Minus, k, f)
}

/// `⊞^{<k}φ`: `⊤` at `k = 0`, then `⊞^{<k}φ ∧ ⊞^kφ`. The iterates are shared.
pub fn guarded_bounded(polarity: Polarity, k: usize, f: &Formula) -> Formula {
    let mut acc = Formula::top();
    let mut iterate = f.clone();
    for _ in 0..k {
        acc = acc.and(&iterate);
        iterate = guarded_box(polarity, &iterate);
    }
    acc
}

pub fn boxplus_bounded(k: usize, f: &Formula) -> Formula {
    guarded_bounded(Polarity::Plus, k, f)
}

pub fn boxminus_bounded(k: usize, f: &Formula) -> Formula {
    guarded_bounded(Polarity::Minus, k, f)
}

/// Inverse of [`guarded_box`]: returns `φ` if `f` is literally `⊞φ` (or `⊟φ`).
pub fn strip_guarded_box(polarity: Polarity, f: &Formula) -> Option<Formula> {
    let guards = guard_labels(polarity);
    let mut cur = f;
    for (i, &(p, q)) in guards.iter().enumerate() {
        let (guard, rest) = cur.as_implication()?;
        if *guard != label(p, q) {
            return None;
        }
        if i == 3 {
            return Some(rest.clone());
        }
        match rest.node() {
            Node::Box(inner) => cur = inner,
            _ => return None,
        }
    }
    None
}
