//! Seeded generators for formulas and for pointed models that carry a
//! witness path at their point.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::SUITE_VARIABLE;
use crate::formula::{boxminus, boxplus, guard_labels, Atom, Formula, Polarity};
use crate::kripke::{Frame, Model, PointedModel, State};
use crate::prover::Logic;

/// Deterministic generator for one named stream of a seeded run.
pub fn stream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(index);
    rng
}

/// Atoms used by generated formulas: `x`, `y`, `#p`, `#q`.
pub fn default_atoms() -> Vec<Atom> {
    vec![
        Atom::variable(SUITE_VARIABLE),
        Atom::variable("y"),
        Atom::p(),
        Atom::q(),
    ]
}

/// A random formula over `atoms` with degree at most `max_degree` and
/// roughly `size` connectives.
pub fn random_formula<R: Rng>(
    rng: &mut R,
    atoms: &[Atom],
    max_degree: usize,
    size: usize,
) -> Formula {
    if size == 0 || rng.gen_bool(0.15) {
        return leaf(rng, atoms);
    }
    let choice = rng.gen_range(0..if max_degree >= 3 { 8 } else { 6 });
    match choice {
        0 => random_formula(rng, atoms, max_degree, size - 1).neg(),
        1 | 2 => {
            let split = rng.gen_range(0..size);
            let a = random_formula(rng, atoms, max_degree, split);
            let b = random_formula(rng, atoms, max_degree, size - 1 - split);
            if choice == 1 {
                a.or(&b)
            } else {
                a.and(&b)
            }
        }
        3 => {
            let split = rng.gen_range(0..size);
            let a = random_formula(rng, atoms, max_degree, split);
            let b = random_formula(rng, atoms, max_degree, size - 1 - split);
            a.implies(&b)
        }
        4 | 5 if max_degree >= 1 => {
            let inner = random_formula(rng, atoms, max_degree - 1, size - 1);
            if choice == 4 {
                inner.boxed()
            } else {
                inner.diamond()
            }
        }
        6 => boxplus(&random_formula(rng, atoms, max_degree - 3, size - 1)),
        7 => boxminus(&random_formula(rng, atoms, max_degree - 3, size - 1)),
        _ => leaf(rng, atoms),
    }
}

fn leaf<R: Rng>(rng: &mut R, atoms: &[Atom]) -> Formula {
    match rng.gen_range(0..atoms.len() + 2) {
        0 => Formula::bot(),
        1 => Formula::top(),
        i => Formula::atom(atoms[i - 2].clone()),
    }
}

/// Most neighbours (loops included) any generated state may have, which
/// keeps deep unravellings small.
const MAX_NEIGHBOURS: usize = 4;

/// A random model of `logic`'s frame class whose point `0` starts a
/// witness path for `¬⊞^k⊥` (plus) or `¬⊟^k⊥` (minus), so the point
/// satisfies `¬#p ∧ ¬#q`. Other atoms are valued at random.
pub fn random_witness_model<R: Rng>(
    rng: &mut R,
    k: usize,
    polarity: Polarity,
    logic: Logic,
) -> PointedModel {
    let spine = 3 * k + 1;
    let n = spine + rng.gen_range(1..=2);
    let mut adj: Vec<BTreeSet<State>> = vec![BTreeSet::new(); n];
    let link = |adj: &mut Vec<BTreeSet<State>>, a: State, b: State| {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    if logic == Logic::Ktb {
        for s in 0..n {
            link(&mut adj, s, s);
        }
    }
    for i in 1..spine {
        link(&mut adj, i - 1, i);
    }
    let mut pairs: Vec<(State, State)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    for (a, b) in pairs {
        let fresh = !adj[a].contains(&b);
        let room = adj[a].len() < MAX_NEIGHBOURS && adj[b].len() < MAX_NEIGHBOURS;
        if fresh && room && rng.gen_bool(0.3) {
            link(&mut adj, a, b);
        }
    }
    if logic == Logic::Kdb {
        for s in 0..n {
            if adj[s].is_empty() {
                link(&mut adj, s, s);
            }
        }
    }

    let labels = guard_labels(polarity);
    let mut valuation: BTreeMap<Atom, BTreeSet<State>> = BTreeMap::new();
    for s in 0..n {
        let (p, q) = if s == 0 {
            (false, false)
        } else if s < spine {
            labels[(s - 1) % 3 + 1]
        } else {
            (rng.gen_bool(0.4), rng.gen_bool(0.4))
        };
        if p {
            valuation.entry(Atom::p()).or_default().insert(s);
        }
        if q {
            valuation.entry(Atom::q()).or_default().insert(s);
        }
        for name in [SUITE_VARIABLE, "y"] {
            if rng.gen_bool(0.5) {
                valuation.entry(Atom::variable(name)).or_default().insert(s);
            }
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)));
    let frame = Frame::new(n, edges).expect("generated edges are in range");
    let model = Model::new(frame, valuation).expect("generated valuation is in range");
    PointedModel::new(model, 0).expect("state 0 exists")
}
