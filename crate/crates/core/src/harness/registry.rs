//! The registry of checkable claims and the obligations each instance
//! reduces to.

use std::sync::Arc;

use crate::constructions::{
    bridge_model, lambda_k, mu_k, nullary_formula, sigma_image, sigma_k, tau_image, tau_k, x,
    Family,
};
use crate::formula::{
    boxminus, boxminus_bounded, boxminus_iter, boxplus, boxplus_bounded, boxplus_iter, parse, Atom,
    Formula, Polarity,
};
use crate::kripke::{chain_model, UnravelMode};
use crate::prover::Logic;
use crate::substitution::Substitution;

use super::random::{default_atoms, random_formula, random_witness_model, stream};
use super::{Coverage, Params, SuiteConfig};

/// One registered claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub id: &'static str,
    pub title: &'static str,
    pub statement: &'static str,
    pub coverage: Coverage,
    /// Parameters each instance carries.
    pub shape: &'static str,
}

pub const REGISTRY: &[Entry] = &[
    Entry {
        id: "lemma:degree",
        title: "degree arithmetic",
        statement: "deg(⊞φ) = deg(⊟φ) = deg(φ)+3; deg(⊞^kφ) = deg(⊟^kφ) = deg(φ)+3k; deg(⊞^{<k}φ) = deg(⊟^{<k}φ) is 0 if k = 0 and deg(φ)+3(k-1) otherwise",
        coverage: Coverage::InstanceEvidence,
        shape: "instance",
    },
    Entry {
        id: "easy:lemma:a",
        title: "guarded boxes of truth",
        statement: "⊞^k⊤, ⊟^k⊤, ⊞^{<k}⊤ and ⊟^{<k}⊤ are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k",
    },
    Entry {
        id: "easy:lemma:b",
        title: "guarded boxes of falsity",
        statement: "⊞^k⊥ and ⊟^k⊥ are not valid; the chain model falsifies them at 0 and 3k",
        coverage: Coverage::InstanceEvidence,
        shape: "k",
    },
    Entry {
        id: "lemma:about:box:less:than",
        title: "unfolding the bounded box",
        statement: "⊞^{<k+1}φ ↔ φ ∧ ⊞⊞^{<k}φ and ⊟^{<k+1}φ ↔ φ ∧ ⊟⊟^{<k}φ are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "instance, k",
    },
    Entry {
        id: "lemma:about:k:l:and:boxes",
        title: "strictness of the guarded hierarchy",
        statement: "if k > l then ⊞^k⊥ → ⊞^l⊥ and ⊟^k⊥ → ⊟^l⊥ are not valid; the chain model of size l falsifies them",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k > l)",
    },
    Entry {
        id: "proposition:tense:modalities",
        title: "duality of ⊞ and ⊟",
        statement: "φ → ⊞φ is valid iff ¬φ → ⊟¬φ is valid",
        coverage: Coverage::InstanceEvidence,
        shape: "instance",
    },
    Entry {
        id: "lemma:simeq:ref:sym:tra",
        title: "≃ is an equivalence and ⪯ a preorder",
        statement: "≃ is reflexive, symmetric and transitive; ⪯ is reflexive and transitive",
        coverage: Coverage::InstanceEvidence,
        shape: "part",
    },
    Entry {
        id: "normal:unifiers:are:enough",
        title: "unifiers may be restricted to the variables of the goal",
        statement: "every unifier σ of φ has a unifier τ ⪯ σ with τ(y) = y for every y not in φ",
        coverage: Coverage::InstanceEvidence,
        shape: "family, k",
    },
    Entry {
        id: "lemma:to:be:used:later",
        title: "lower bounds for σ_k and τ_k",
        statement: "⊞^{<k}x ∧ ⊞^k⊥ → σ_k(x) and ⊟^{<k}¬x ∧ ⊟^k⊥ → ¬τ_k(x) are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k",
    },
    Entry {
        id: "lemma:sigma:tau:imply:x",
        title: "σ_k(x) implies x",
        statement: "σ_k(x) → x and ¬τ_k(x) → ¬x are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k",
    },
    Entry {
        id: "lemma:sigma:tau:imply:box:x",
        title: "σ_k(x) is ⊞-persistent",
        statement: "σ_k(x) → ⊞σ_k(x) and ¬τ_k(x) → ⊟¬τ_k(x) are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k",
    },
    Entry {
        id: "lemma:sigma:tau:imply:box:bot:bot",
        title: "σ_k(x) bounds ⊞-depth",
        statement: "if k ≤ l then σ_k(x) → ⊞^l⊥ and ¬τ_k(x) → ⊟^l⊥ are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k ≤ l)",
    },
    Entry {
        id: "lemma:sigma:tau:imply:box:bot:bot:k:greater:than:l",
        title: "the depth bound is tight",
        statement: "if k > l then σ_k(x) → ⊞^l⊥ and ¬τ_k(x) → ⊟^l⊥ are not valid; ⊞^k⊥ → υ(σ_k(x)) is valid for υ = {x := ⊤}, ⊟^k⊥ → υ(¬τ_k(x)) for υ = {x := ⊥}",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k > l)",
    },
    Entry {
        id: "lemma:sigma:tau:imply:not:the:case:this:time",
        title: "mixed disjunctions fail",
        statement: "⊞^k⊥ ∨ ¬τ_l(x) and ⊟^k⊥ ∨ σ_l(x) are not valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l",
    },
    Entry {
        id: "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:1",
        title: "truncating σ_l",
        statement: "if k ≤ l then ⊞^k⊥ ∧ σ_l(x) ↔ σ_k(x) and ⊟^k⊥ ∧ ¬τ_l(x) ↔ ¬τ_k(x) are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k ≤ l)",
    },
    Entry {
        id: "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:2",
        title: "λ_l fixes σ_k below l",
        statement: "if k ≤ l then λ_l(σ_k(x)) ↔ σ_k(x) and μ_l(τ_k(x)) ↔ τ_k(x) are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k ≤ l)",
    },
    Entry {
        id: "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:3",
        title: "λ_l truncates σ_k above l",
        statement: "if k ≥ l then λ_l(σ_k(x)) ↔ σ_l(x) and μ_l(τ_k(x)) ↔ τ_l(x) are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k ≥ l)",
    },
    Entry {
        id: "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l",
        title: "composing with λ_k and μ_k",
        statement: "if k ≤ l then σ_l∘λ_k ≃ σ_k and τ_l∘μ_k ≃ τ_k",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k ≤ l)",
    },
    Entry {
        id: "lemma:0:K:q",
        title: "σ_l is more general than σ_k",
        statement: "if k ≤ l then σ_l ⪯ σ_k (witness λ_k) and τ_l ⪯ τ_k (witness μ_k)",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k ≤ l)",
    },
    Entry {
        id: "lemma:0:K:r",
        title: "σ_k is not more general than σ_l",
        statement: "if k < l then σ_k ⋠ σ_l and τ_k ⋠ τ_l; checked through the valid σ_k(x) → ⊞^k⊥ and the invalid σ_l(x) → ⊞^k⊥ (and duals)",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l (k < l)",
    },
    Entry {
        id: "lemma:0:K:qr",
        title: "σ and τ families are incomparable",
        statement: "σ_k ⋠ τ_l and τ_k ⋠ σ_l; checked through the valid σ_k(x) → ⊞^k⊥ and the invalid ⊞^k⊥ ∨ ¬τ_l(x) (and duals)",
        coverage: Coverage::InstanceEvidence,
        shape: "k, l",
    },
    Entry {
        id: "lemma:every:unifier:of:varphi:has:this:property:1",
        title: "unifiers of φ are ⊞-persistent to every depth",
        statement: "if σ unifies φ then σ(x) → ⊞^{<k}σ(x) and ¬σ(x) → ⊟^{<k}¬σ(x) are valid",
        coverage: Coverage::InstanceEvidence,
        shape: "family, l, k",
    },
    Entry {
        id: "lemma:0:K",
        title: "σ_k and τ_k unify φ",
        statement: "σ_k(φ) and τ_k(φ) are valid, where φ = (x → ⊞x) ∧ (¬x → ⊟¬x)",
        coverage: Coverage::InstanceEvidence,
        shape: "family, k",
    },
    Entry {
        id: "lemma:4:K",
        title: "characterising σ_k ⪯ υ",
        statement: "for a unifier υ of φ: σ_k∘υ ≃ υ iff υ(x) → ⊞^k⊥ is valid, and τ_k∘υ ≃ υ iff ¬υ(x) → ⊟^k⊥ is valid",
        coverage: Coverage::InstanceEvidence,
        shape: "part, family, k, l",
    },
    Entry {
        id: "lemma:6:K",
        title: "bridge locality",
        statement: "the bridge model preserves, at both unravelling roots, every formula of degree at most 3k true at the original points",
        coverage: Coverage::InstanceEvidence,
        shape: "k, sample",
    },
];

/// Claims about all substitutions or all unifiers, listed in reports but
/// never executed. The executable part of `lemma:6:K` lives in [`REGISTRY`].
pub const OUT_OF_SCOPE: &[Entry] = &[
    Entry {
        id: "lemma:6:K",
        title: "every unifier of φ lies below some σ_k or τ_k",
        statement: "for every unifier σ of φ there is k with σ_k ⪯ σ or τ_k ⪯ σ; the bridge model refutes the alternative for every σ with deg(σ(x)) ≤ 3k",
        coverage: Coverage::OutOfScope,
        shape: "",
    },
    Entry {
        id: "lemma:7:K",
        title: "φ is nullary",
        statement: "φ has no minimal complete set of unifiers",
        coverage: Coverage::OutOfScope,
        shape: "",
    },
];

/// Bridge samples per value of `k` in a suite run.
pub const BRIDGE_SAMPLES: usize = 6;
/// Largest `k` for bridge checks; unravellings grow exponentially in `6k + 2`.
pub const BRIDGE_K_MAX: usize = 1;

/// The executable entry for `id` if there is one, otherwise its out-of-scope entry.
pub fn entry(id: &str) -> Option<&'static Entry> {
    REGISTRY.iter().chain(OUT_OF_SCOPE).find(|e| e.id == id)
}

/// The shared pool of formula instances for universally quantified claims.
pub fn instance_pool(config: &SuiteConfig) -> Vec<String> {
    let mut pool: Vec<String> = ["false", "true", "x", "#p"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for j in 0..=config.k_max {
        pool.push(format!("sigma_{j}(x)"));
    }
    for j in 0..=config.k_max {
        pool.push(format!("tau_{j}(x)"));
    }
    pool
}

/// Resolves a pool name (`sigma_2(x)`, `tau_0(x)`) or formula text.
pub fn instance_formula(name: &str) -> Option<Formula> {
    for (prefix, family) in [("sigma_", Family::Sigma), ("tau_", Family::Tau)] {
        if let Some(rest) = name.strip_prefix(prefix) {
            let k = rest.strip_suffix("(x)")?.parse().ok()?;
            return Some(family.image(k));
        }
    }
    parse(name).ok()
}

/// Every instance of `entry` within the bounds of `config`.
pub fn instances(entry: &Entry, config: &SuiteConfig) -> Vec<Params> {
    let base = Params::new(config.logic);
    let ks = 0..=config.k_max;
    let kl = || {
        ks.clone()
            .flat_map(|k| (0..=config.l_max).map(move |l| (k, l)))
            .collect::<Vec<_>>()
    };
    let with_kl = |filter: &dyn Fn(usize, usize) -> bool| -> Vec<Params> {
        kl().into_iter()
            .filter(|&(k, l)| filter(k, l))
            .map(|(k, l)| base.clone().k(k).l(l))
            .collect()
    };
    match entry.id {
        "lemma:degree" | "proposition:tense:modalities" => instance_pool(config)
            .into_iter()
            .map(|i| base.clone().instance(i))
            .collect(),
        "lemma:about:box:less:than" => instance_pool(config)
            .into_iter()
            .flat_map(|i| ks.clone().map(move |k| (i.clone(), k)))
            .map(|(i, k)| base.clone().instance(i).k(k))
            .collect(),
        "easy:lemma:a"
        | "easy:lemma:b"
        | "lemma:to:be:used:later"
        | "lemma:sigma:tau:imply:x"
        | "lemma:sigma:tau:imply:box:x" => ks.map(|k| base.clone().k(k)).collect(),
        "lemma:about:k:l:and:boxes" | "lemma:sigma:tau:imply:box:bot:bot:k:greater:than:l" => {
            with_kl(&|k, l| k > l)
        }
        "lemma:sigma:tau:imply:box:bot:bot"
        | "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:1"
        | "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:2"
        | "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l"
        | "lemma:0:K:q" => with_kl(&|k, l| k <= l),
        "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:3" => with_kl(&|k, l| k >= l),
        "lemma:0:K:r" => with_kl(&|k, l| k < l),
        "lemma:sigma:tau:imply:not:the:case:this:time" | "lemma:0:K:qr" => with_kl(&|_, _| true),
        "lemma:simeq:ref:sym:tra" => vec![base.clone().part(1), base.clone().part(2)],
        "normal:unifiers:are:enough" | "lemma:0:K" => [Family::Sigma, Family::Tau]
            .into_iter()
            .flat_map(|f| ks.clone().map(move |k| (f, k)))
            .map(|(f, k)| base.clone().family(f).k(k))
            .collect(),
        "lemma:every:unifier:of:varphi:has:this:property:1" => [Family::Sigma, Family::Tau]
            .into_iter()
            .flat_map(|f| (0..=config.l_max).map(move |l| (f, l)))
            .flat_map(|(f, l)| ks.clone().map(move |k| (f, l, k)))
            .map(|(f, l, k)| base.clone().family(f).l(l).k(k))
            .collect(),
        "lemma:4:K" => {
            let mut out = Vec::new();
            for part in [1u8, 2] {
                for family in [Family::Sigma, Family::Tau] {
                    for (k, l) in kl() {
                        out.push(base.clone().part(part).family(family).k(k).l(l));
                    }
                }
            }
            out
        }
        "lemma:6:K" => (0..=config.k_max.min(BRIDGE_K_MAX))
            .flat_map(|k| (0..BRIDGE_SAMPLES).map(move |s| (k, s)))
            .map(|(k, s)| base.clone().k(k).sample(s as u64))
            .collect(),
        _ => Vec::new(),
    }
}

/// What a check instance reduces to.
#[derive(Debug, Clone)]
pub enum Obligation {
    /// The prover must return the expected verdict (`true` = valid).
    Decide {
        claim: String,
        formula: Formula,
        valid: bool,
    },
    /// Both formulas must be valid, or both invalid.
    Agree {
        claim: String,
        left: Formula,
        right: Formula,
    },
    /// A fact established without the prover.
    Fact {
        claim: String,
        holds: bool,
        detail: String,
    },
}

fn decide(claim: impl Into<String>, formula: Formula, valid: bool) -> Obligation {
    Obligation::Decide {
        claim: claim.into(),
        formula,
        valid,
    }
}

fn fact(claim: impl Into<String>, holds: bool, detail: impl Into<String>) -> Obligation {
    Obligation::Fact {
        claim: claim.into(),
        holds,
        detail: detail.into(),
    }
}

/// `s ≃ t` as one prover goal per variable in either support. With
/// `holds = false` every biconditional is expected to fail, which is exact
/// when both substitutions move the same single variable.
fn equivalence(claim: &str, s: &Substitution, t: &Substitution, holds: bool) -> Vec<Obligation> {
    let mut vars: Vec<Atom> = s.support().chain(t.support()).cloned().collect();
    vars.sort();
    vars.dedup();
    if vars.is_empty() {
        return vec![fact(claim, holds, "both substitutions are the identity")];
    }
    vars.into_iter()
        .map(|v| {
            decide(
                format!("{claim} at {v}"),
                s.image(&v).iff(&t.image(&v)),
                holds,
            )
        })
        .collect()
}

type Iterate = fn(usize, &Formula) -> Formula;

/// The iterated and bounded guarded boxes of one polarity.
fn guarded(pol: Polarity) -> (Iterate, Iterate) {
    match pol {
        Polarity::Plus => (boxplus_iter, boxplus_bounded),
        Polarity::Minus => (boxminus_iter, boxminus_bounded),
    }
}

fn family_sub(f: Family, k: usize) -> Substitution {
    f.substitution(k)
}

fn family_name(f: Family, k: usize) -> String {
    let greek = match f {
        Family::Sigma => "σ",
        Family::Tau => "τ",
        Family::Lambda => "λ",
        Family::Mu => "μ",
    };
    format!("{greek}_{k}")
}

/// Reduces one instance to obligations. `None` for missing parameters or
/// an unknown id.
pub fn plan(id: &str, p: &Params, seed: u64) -> Option<Vec<Obligation>> {
    let bot = Formula::bot();
    let top = Formula::top();
    let k = p.k;
    let l = p.l;
    let mut ob = Vec::new();
    match id {
        "lemma:degree" => {
            let f = instance_formula(p.instance.as_deref()?)?;
            let d = f.degree();
            ob.push(fact(
                "deg(⊞φ) = deg(φ)+3 and deg(⊟φ) = deg(φ)+3",
                boxplus(&f).degree() == d + 3 && boxminus(&f).degree() == d + 3,
                format!("deg(φ) = {d}"),
            ));
            for k in 0..=5usize {
                ob.push(fact(
                    format!("deg(⊞^{k}φ) = deg(⊟^{k}φ) = deg(φ)+{}", 3 * k),
                    boxplus_iter(k, &f).degree() == d + 3 * k
                        && boxminus_iter(k, &f).degree() == d + 3 * k,
                    format!("deg(⊞^{k}φ) = {}", boxplus_iter(k, &f).degree()),
                ));
                let want = if k == 0 { 0 } else { d + 3 * (k - 1) };
                ob.push(fact(
                    format!("deg(⊞^{{<{k}}}φ) = deg(⊟^{{<{k}}}φ) = {want}"),
                    boxplus_bounded(k, &f).degree() == want
                        && boxminus_bounded(k, &f).degree() == want,
                    format!("deg(⊞^{{<{k}}}φ) = {}", boxplus_bounded(k, &f).degree()),
                ));
            }
        }
        "easy:lemma:a" => {
            let k = k?;
            ob.push(decide(format!("⊞^{k}⊤ valid"), boxplus_iter(k, &top), true));
            ob.push(decide(
                format!("⊟^{k}⊤ valid"),
                boxminus_iter(k, &top),
                true,
            ));
            ob.push(decide(
                format!("⊞^{{<{k}}}⊤ valid"),
                boxplus_bounded(k, &top),
                true,
            ));
            ob.push(decide(
                format!("⊟^{{<{k}}}⊤ valid"),
                boxminus_bounded(k, &top),
                true,
            ));
        }
        "easy:lemma:b" => {
            let k = k?;
            let chain = chain_model(k);
            let plus = boxplus_iter(k, &bot);
            let minus = boxminus_iter(k, &bot);
            ob.push(decide(format!("⊞^{k}⊥ invalid"), plus.clone(), false));
            ob.push(decide(format!("⊟^{k}⊥ invalid"), minus.clone(), false));
            ob.push(fact(
                "chain model is symmetric and reflexive",
                chain.frame().is_symmetric() && chain.frame().is_reflexive(),
                format!("chain_model({k}), {} states", chain.len()),
            ));
            ob.push(fact(
                format!("chain_model({k}) falsifies ⊞^{k}⊥ at 0"),
                !chain.satisfies(0, &plus).expect("state 0 exists"),
                format!("chain_model({k}), state 0"),
            ));
            ob.push(fact(
                format!("chain_model({k}) falsifies ⊟^{k}⊥ at {}", 3 * k),
                !chain.satisfies(3 * k, &minus).expect("state 3k exists"),
                format!("chain_model({k}), state {}", 3 * k),
            ));
        }
        "lemma:about:box:less:than" => {
            let f = instance_formula(p.instance.as_deref()?)?;
            let k = k?;
            for pol in [Polarity::Plus, Polarity::Minus] {
                let (_, bounded) = guarded(pol);
                let step = match pol {
                    Polarity::Plus => boxplus(&bounded(k, &f)),
                    Polarity::Minus => boxminus(&bounded(k, &f)),
                };
                let sym = if pol == Polarity::Plus { "⊞" } else { "⊟" };
                ob.push(decide(
                    format!("{sym}^{{<{}}}φ ↔ φ ∧ {sym}{sym}^{{<{k}}}φ valid", k + 1),
                    bounded(k + 1, &f).iff(&f.and(&step)),
                    true,
                ));
            }
        }
        "lemma:about:k:l:and:boxes" => {
            let (k, l) = (k?, l?);
            let chain = chain_model(l);
            for pol in [Polarity::Plus, Polarity::Minus] {
                let (iter, _) = guarded(pol);
                let goal = iter(k, &bot).implies(&iter(l, &bot));
                let (sym, state) = match pol {
                    Polarity::Plus => ("⊞", 0),
                    Polarity::Minus => ("⊟", 3 * l),
                };
                ob.push(decide(
                    format!("{sym}^{k}⊥ → {sym}^{l}⊥ invalid"),
                    goal.clone(),
                    false,
                ));
                ob.push(fact(
                    format!("chain_model({l}) falsifies {sym}^{k}⊥ → {sym}^{l}⊥ at {state}"),
                    !chain.satisfies(state, &goal).expect("state exists"),
                    format!("chain_model({l}), state {state}"),
                ));
            }
        }
        "proposition:tense:modalities" => {
            let f = instance_formula(p.instance.as_deref()?)?;
            ob.push(Obligation::Agree {
                claim: "φ → ⊞φ and ¬φ → ⊟¬φ have the same verdict".into(),
                left: f.implies(&boxplus(&f)),
                right: f.neg().implies(&boxminus(&f.neg())),
            });
        }
        "lemma:simeq:ref:sym:tra" => match p.part? {
            1 => {
                let (s1, s2) = (sigma_k(1), sigma_k(2).compose(&lambda_k(1)));
                let s3 = sigma_k(1).compose(&lambda_k(1));
                let samples = [
                    sigma_k(0),
                    sigma_k(1),
                    tau_k(1),
                    lambda_k(1),
                    mu_k(2),
                    Substitution::identity(),
                ];
                for s in &samples {
                    ob.extend(equivalence(&format!("{s} ≃ itself"), s, s, true));
                }
                ob.extend(equivalence("σ_2∘λ_1 ≃ σ_1", &s2, &s1, true));
                ob.extend(equivalence("σ_1 ≃ σ_2∘λ_1", &s1, &s2, true));
                ob.extend(equivalence("σ_1 ≃ σ_1∘λ_1", &s1, &s3, true));
                ob.extend(equivalence(
                    "σ_2∘λ_1 ≃ σ_1∘λ_1 by transitivity",
                    &s2,
                    &s3,
                    true,
                ));
                ob.extend(equivalence("σ_0 ≄ τ_0", &sigma_k(0), &tau_k(0), false));
                ob.extend(equivalence("τ_0 ≄ σ_0", &tau_k(0), &sigma_k(0), false));
            }
            2 => {
                for s in [sigma_k(1), tau_k(2), lambda_k(0)] {
                    ob.extend(equivalence(
                        &format!("{s} ⪯ itself, witness identity"),
                        &s.compose(&Substitution::identity()),
                        &s,
                        true,
                    ));
                }
                ob.extend(equivalence(
                    "σ_2 ⪯ σ_0, witness λ_1∘λ_0",
                    &sigma_k(2).compose(&lambda_k(1).compose(&lambda_k(0))),
                    &sigma_k(0),
                    true,
                ));
                ob.extend(equivalence(
                    "τ_2 ⪯ τ_0, witness μ_1∘μ_0",
                    &tau_k(2).compose(&mu_k(1).compose(&mu_k(0))),
                    &tau_k(0),
                    true,
                ));
            }
            _ => return None,
        },
        "normal:unifiers:are:enough" => {
            let (family, k) = (p.family?, k?);
            let phi = nullary_formula();
            let mut sigma = family_sub(family, k);
            sigma
                .insert(Atom::variable("y"), Formula::var("z").and(&Formula::p()))
                .expect("y is a variable");
            sigma
                .insert(Atom::variable("z"), Formula::bot())
                .expect("z is a variable");
            let tau = sigma.restrict_to(&phi);
            let vars = phi.variables();
            let witness = Substitution::from_pairs(
                sigma
                    .entries()
                    .filter(|(v, _)| !vars.contains(*v))
                    .map(|(v, g)| (v.clone(), g.clone())),
            )
            .expect("entries are variables");
            ob.push(decide(
                format!("{sigma} unifies φ"),
                sigma.apply(&phi),
                true,
            ));
            ob.push(decide(format!("{tau} unifies φ"), tau.apply(&phi), true));
            ob.push(fact(
                "the restriction moves only variables of φ",
                tau.support().all(|v| vars.contains(v)),
                format!(
                    "support {:?}",
                    tau.support().map(|v| v.to_string()).collect::<Vec<_>>()
                ),
            ));
            ob.extend(equivalence(
                &format!("restriction ⪯ {sigma}, witness {witness}"),
                &tau.compose(&witness),
                &sigma,
                true,
            ));
        }
        "lemma:to:be:used:later" => {
            let k = k?;
            ob.push(decide(
                format!("⊞^{{<{k}}}x ∧ ⊞^{k}⊥ → σ_{k}(x) valid"),
                boxplus_bounded(k, &x())
                    .and(&boxplus_iter(k, &bot))
                    .implies(&sigma_image(k)),
                true,
            ));
            ob.push(decide(
                format!("⊟^{{<{k}}}¬x ∧ ⊟^{k}⊥ → ¬τ_{k}(x) valid"),
                boxminus_bounded(k, &x().neg())
                    .and(&boxminus_iter(k, &bot))
                    .implies(&tau_image(k).neg()),
                true,
            ));
        }
        "lemma:sigma:tau:imply:x" => {
            let k = k?;
            ob.push(decide(
                format!("σ_{k}(x) → x valid"),
                sigma_image(k).implies(&x()),
                true,
            ));
            ob.push(decide(
                format!("¬τ_{k}(x) → ¬x valid"),
                tau_image(k).neg().implies(&x().neg()),
                true,
            ));
        }
        "lemma:sigma:tau:imply:box:x" => {
            let k = k?;
            let s = sigma_image(k);
            let t = tau_image(k).neg();
            ob.push(decide(
                format!("σ_{k}(x) → ⊞σ_{k}(x) valid"),
                s.implies(&boxplus(&s)),
                true,
            ));
            ob.push(decide(
                format!("¬τ_{k}(x) → ⊟¬τ_{k}(x) valid"),
                t.implies(&boxminus(&t)),
                true,
            ));
        }
        "lemma:sigma:tau:imply:box:bot:bot"
        | "lemma:sigma:tau:imply:box:bot:bot:k:greater:than:l" => {
            let (k, l) = (k?, l?);
            let valid = id == "lemma:sigma:tau:imply:box:bot:bot";
            if valid != (k <= l) {
                return None;
            }
            let word = if valid { "valid" } else { "invalid" };
            ob.push(decide(
                format!("σ_{k}(x) → ⊞^{l}⊥ {word}"),
                sigma_image(k).implies(&boxplus_iter(l, &bot)),
                valid,
            ));
            ob.push(decide(
                format!("¬τ_{k}(x) → ⊟^{l}⊥ {word}"),
                tau_image(k).neg().implies(&boxminus_iter(l, &bot)),
                valid,
            ));
            if !valid {
                let up = Substitution::single("x", top.clone());
                let down = Substitution::single("x", bot.clone());
                ob.push(decide(
                    format!("⊞^{k}⊥ → υ(σ_{k}(x)) valid for υ = {up}"),
                    boxplus_iter(k, &bot).implies(&up.apply(&sigma_image(k))),
                    true,
                ));
                ob.push(decide(
                    format!("⊟^{k}⊥ → υ(¬τ_{k}(x)) valid for υ = {down}"),
                    boxminus_iter(k, &bot).implies(&down.apply(&tau_image(k).neg())),
                    true,
                ));
                ob.push(decide(
                    format!("⊞^{k}⊥ → ⊞^{l}⊥ invalid"),
                    boxplus_iter(k, &bot).implies(&boxplus_iter(l, &bot)),
                    false,
                ));
            }
        }
        "lemma:sigma:tau:imply:not:the:case:this:time" => {
            let (k, l) = (k?, l?);
            ob.push(decide(
                format!("⊞^{k}⊥ ∨ ¬τ_{l}(x) invalid"),
                boxplus_iter(k, &bot).or(&tau_image(l).neg()),
                false,
            ));
            ob.push(decide(
                format!("⊟^{k}⊥ ∨ σ_{l}(x) invalid"),
                boxminus_iter(k, &bot).or(&sigma_image(l)),
                false,
            ));
        }
        "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:1" => {
            let (k, l) = (k?, l?);
            ob.push(decide(
                format!("⊞^{k}⊥ ∧ σ_{l}(x) ↔ σ_{k}(x) valid"),
                boxplus_iter(k, &bot)
                    .and(&sigma_image(l))
                    .iff(&sigma_image(k)),
                true,
            ));
            ob.push(decide(
                format!("⊟^{k}⊥ ∧ ¬τ_{l}(x) ↔ ¬τ_{k}(x) valid"),
                boxminus_iter(k, &bot)
                    .and(&tau_image(l).neg())
                    .iff(&tau_image(k).neg()),
                true,
            ));
        }
        "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:2" => {
            let (k, l) = (k?, l?);
            ob.push(decide(
                format!("λ_{l}(σ_{k}(x)) ↔ σ_{k}(x) valid"),
                lambda_k(l).apply(&sigma_image(k)).iff(&sigma_image(k)),
                true,
            ));
            ob.push(decide(
                format!("μ_{l}(τ_{k}(x)) ↔ τ_{k}(x) valid"),
                mu_k(l).apply(&tau_image(k)).iff(&tau_image(k)),
                true,
            ));
        }
        "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:3" => {
            let (k, l) = (k?, l?);
            ob.push(decide(
                format!("λ_{l}(σ_{k}(x)) ↔ σ_{l}(x) valid"),
                lambda_k(l).apply(&sigma_image(k)).iff(&sigma_image(l)),
                true,
            ));
            ob.push(decide(
                format!("μ_{l}(τ_{k}(x)) ↔ τ_{l}(x) valid"),
                mu_k(l).apply(&tau_image(k)).iff(&tau_image(l)),
                true,
            ));
        }
        "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l" => {
            let (k, l) = (k?, l?);
            ob.extend(equivalence(
                &format!("σ_{l}∘λ_{k} ≃ σ_{k}"),
                &sigma_k(l).compose(&lambda_k(k)),
                &sigma_k(k),
                true,
            ));
            ob.extend(equivalence(
                &format!("τ_{l}∘μ_{k} ≃ τ_{k}"),
                &tau_k(l).compose(&mu_k(k)),
                &tau_k(k),
                true,
            ));
        }
        "lemma:0:K:q" => {
            let (k, l) = (k?, l?);
            ob.extend(equivalence(
                &format!("σ_{l} ⪯ σ_{k}, witness λ_{k}"),
                &sigma_k(l).compose(&lambda_k(k)),
                &sigma_k(k),
                true,
            ));
            ob.extend(equivalence(
                &format!("τ_{l} ⪯ τ_{k}, witness μ_{k}"),
                &tau_k(l).compose(&mu_k(k)),
                &tau_k(k),
                true,
            ));
        }
        "lemma:0:K:r" => {
            let (k, l) = (k?, l?);
            ob.push(decide(
                format!("σ_{k}(x) → ⊞^{k}⊥ valid"),
                sigma_image(k).implies(&boxplus_iter(k, &bot)),
                true,
            ));
            ob.push(decide(
                format!("σ_{l}(x) → ⊞^{k}⊥ invalid"),
                sigma_image(l).implies(&boxplus_iter(k, &bot)),
                false,
            ));
            ob.push(decide(
                format!("¬τ_{k}(x) → ⊟^{k}⊥ valid"),
                tau_image(k).neg().implies(&boxminus_iter(k, &bot)),
                true,
            ));
            ob.push(decide(
                format!("¬τ_{l}(x) → ⊟^{k}⊥ invalid"),
                tau_image(l).neg().implies(&boxminus_iter(k, &bot)),
                false,
            ));
            ob.extend(equivalence(
                &format!("λ_{l} is no witness for σ_{k} ⪯ σ_{l}"),
                &sigma_k(k).compose(&lambda_k(l)),
                &sigma_k(l),
                false,
            ));
        }
        "lemma:0:K:qr" => {
            let (k, l) = (k?, l?);
            ob.push(decide(
                format!("σ_{k}(x) → ⊞^{k}⊥ valid"),
                sigma_image(k).implies(&boxplus_iter(k, &bot)),
                true,
            ));
            ob.push(decide(
                format!("⊞^{k}⊥ ∨ ¬τ_{l}(x) invalid"),
                boxplus_iter(k, &bot).or(&tau_image(l).neg()),
                false,
            ));
            ob.push(decide(
                format!("¬τ_{k}(x) → ⊟^{k}⊥ valid"),
                tau_image(k).neg().implies(&boxminus_iter(k, &bot)),
                true,
            ));
            ob.push(decide(
                format!("⊟^{k}⊥ ∨ σ_{l}(x) invalid"),
                boxminus_iter(k, &bot).or(&sigma_image(l)),
                false,
            ));
        }
        "lemma:every:unifier:of:varphi:has:this:property:1" => {
            let (family, l, k) = (p.family?, l?, k?);
            let s = family.image(l);
            let name = family_name(family, l);
            ob.push(decide(
                format!("{name} unifies φ"),
                family_sub(family, l).apply(&nullary_formula()),
                true,
            ));
            ob.push(decide(
                format!("{name}(x) → ⊞^{{<{k}}}{name}(x) valid"),
                s.implies(&boxplus_bounded(k, &s)),
                true,
            ));
            ob.push(decide(
                format!("¬{name}(x) → ⊟^{{<{k}}}¬{name}(x) valid"),
                s.neg().implies(&boxminus_bounded(k, &s.neg())),
                true,
            ));
        }
        "lemma:0:K" => {
            let (family, k) = (p.family?, k?);
            if !matches!(family, Family::Sigma | Family::Tau) {
                return None;
            }
            ob.push(decide(
                format!("{} unifies φ", family_name(family, k)),
                family_sub(family, k).apply(&nullary_formula()),
                true,
            ));
        }
        "lemma:4:K" => {
            let (part, family, k, l) = (p.part?, p.family?, k?, l?);
            if !matches!(family, Family::Sigma | Family::Tau) {
                return None;
            }
            let upsilon = family_sub(family, l);
            let name = family_name(family, l);
            // Predicted: (a), (c) for σ_l and (d), (f) for τ_l hold iff l ≤ k; mixed pairings never hold.
            let same_side = matches!((part, family), (1, Family::Sigma) | (2, Family::Tau));
            let predicted = same_side && l <= k;
            ob.push(decide(
                format!("{name} unifies φ"),
                upsilon.apply(&nullary_formula()),
                true,
            ));
            let u = upsilon.image(&Atom::variable("x"));
            match part {
                1 => {
                    ob.extend(equivalence(
                        &format!("(a) σ_{k}∘{name} ≃ {name}"),
                        &sigma_k(k).compose(&upsilon),
                        &upsilon,
                        predicted,
                    ));
                    ob.push(decide(
                        format!("(c) {name}(x) → ⊞^{k}⊥"),
                        u.implies(&boxplus_iter(k, &bot)),
                        predicted,
                    ));
                }
                2 => {
                    ob.extend(equivalence(
                        &format!("(d) τ_{k}∘{name} ≃ {name}"),
                        &tau_k(k).compose(&upsilon),
                        &upsilon,
                        predicted,
                    ));
                    ob.push(decide(
                        format!("(f) ¬{name}(x) → ⊟^{k}⊥"),
                        u.neg().implies(&boxminus_iter(k, &bot)),
                        predicted,
                    ));
                }
                _ => return None,
            }
        }
        "lemma:6:K" => {
            let (k, sample) = (k?, p.sample?);
            let mut rng = stream(seed, &format!("bridge:{}:{k}", p.logic), sample);
            ob.extend(bridge_locality(&mut rng, p.logic, k));
        }
        _ => return None,
    }
    Some(ob)
}

/// Builds one random bridge and compares satisfaction at both roots with
/// the original points for random formulas of degree at most `3k`.
pub fn bridge_locality<R: rand::Rng>(rng: &mut R, logic: Logic, k: usize) -> Vec<Obligation> {
    const FORMULAS: usize = 8;
    let mode = if logic == Logic::Ktb {
        UnravelMode::Reflexive
    } else {
        UnravelMode::Plain
    };
    let left = random_witness_model(rng, k, Polarity::Plus, logic);
    let right = random_witness_model(rng, k, Polarity::Minus, logic);
    let bridge = match bridge_model(&left, &right, k, mode) {
        Ok(b) => b,
        Err(e) => return vec![fact("bridge construction succeeds", false, e.to_string())],
    };
    let model = Arc::new(bridge.model);
    let mut ob = vec![fact(
        format!("bridge frame belongs to {logic}"),
        logic.admits(model.frame()),
        format!(
            "{} + {} input states, {} bridge states",
            left.model().len(),
            right.model().len(),
            model.len()
        ),
    )];
    let atoms = default_atoms();
    for _ in 0..FORMULAS {
        let psi = random_formula(rng, &atoms, 3 * k, 6);
        let at_root = model.satisfies(bridge.root, &psi).expect("root exists");
        let at_prime = model
            .satisfies(bridge.root_prime, &psi)
            .expect("root' exists");
        ob.push(fact(
            format!("{psi} is preserved at both roots"),
            at_root == left.satisfies(&psi) && at_prime == right.satisfies(&psi),
            format!(
                "left {} / bridge {}, right {} / bridge {}",
                left.satisfies(&psi),
                at_root,
                right.satisfies(&psi),
                at_prime
            ),
        ));
    }
    ob
}
