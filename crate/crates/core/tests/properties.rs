use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use symkb::constructions::{lambda_k, mu_k, sigma_k, tau_k};
use symkb::formula::{
    boxminus, boxminus_bounded, boxminus_iter, boxplus, boxplus_bounded, boxplus_iter, parse, Atom,
    Formula,
};
use symkb::harness::random::{default_atoms, random_formula, stream};
use symkb::kripke::{symmetric_unravelling, Frame, Model, ModelJson, PointedModel, UnravelMode};
use symkb::prover::{brute_force_countermodel, certify, decide, Logic, Verdict};
use symkb::substitution::{equivalent, is_unifier, Substitution};

fn formula(seed: u64, max_degree: usize, size: usize) -> Formula {
    random_formula(
        &mut stream(seed, "properties", 0),
        &default_atoms(),
        max_degree,
        size,
    )
}

fn small_formula(seed: u64) -> Formula {
    let atoms = [Atom::variable("x"), Atom::p()];
    random_formula(&mut stream(seed, "small", 0), &atoms, 2, 6)
}

/// A random symmetric model on up to five states. `edges` and `vals` are
/// bit patterns over unordered pairs and atoms respectively.
fn model(n: usize, edges: u64, vals: &[u8], reflexive: bool) -> Model {
    let mut pairs = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i..n {
            if (reflexive && i == j) || edges >> bit & 1 == 1 {
                pairs.push((i, j));
                pairs.push((j, i));
            }
            bit += 1;
        }
    }
    let mut valuation: BTreeMap<Atom, BTreeSet<usize>> = BTreeMap::new();
    for (a, atom) in default_atoms().into_iter().enumerate() {
        let states = (0..n).filter(|&s| vals[s] >> a & 1 == 1).collect();
        valuation.insert(atom, states);
    }
    Model::new(Frame::new(n, pairs).unwrap(), valuation).unwrap()
}

fn model_strategy(reflexive: bool) -> impl Strategy<Value = Model> {
    (
        1usize..=5,
        any::<u64>(),
        prop::collection::vec(any::<u8>(), 5),
    )
        .prop_map(move |(n, edges, vals)| model(n, edges, &vals, reflexive))
}

fn substitution(seed: u64) -> Substitution {
    let mut rng = stream(seed, "substitution", 0);
    let pairs = ["x", "y"].map(|v| {
        let image = random_formula(&mut rng, &default_atoms(), 3, 5);
        (Atom::variable(v), image)
    });
    Substitution::from_pairs(pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let f = formula(seed, 6, 14);
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn degree_identities(seed in any::<u64>(), k in 0usize..=5) {
        let f = formula(seed, 4, 10);
        let d = f.degree();
        prop_assert_eq!(boxplus(&f).degree(), d + 3);
        prop_assert_eq!(boxminus(&f).degree(), d + 3);
        prop_assert_eq!(boxplus_iter(k, &f).degree(), d + 3 * k);
        prop_assert_eq!(boxminus_iter(k, &f).degree(), d + 3 * k);
        let bounded = if k == 0 { 0 } else { d + 3 * (k - 1) };
        prop_assert_eq!(boxplus_bounded(k, &f).degree(), bounded);
        prop_assert_eq!(boxminus_bounded(k, &f).degree(), bounded);
    }

    #[test]
    fn extension_matches_satisfaction(m in model_strategy(false), seed in any::<u64>()) {
        let f = formula(seed, 3, 10);
        let ext = m.extension(&f);
        let neg = m.extension(&f.neg());
        for s in m.frame().states() {
            prop_assert_eq!(ext[s], m.satisfies(s, &f).unwrap());
            prop_assert_eq!(neg[s], !ext[s]);
        }
    }

    #[test]
    fn model_json_round_trips(m in model_strategy(false)) {
        let json = serde_json::to_string(&ModelJson::from_model(&m, Some(0))).unwrap();
        let (back, point) = ModelJson::into_model(serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, m);
        prop_assert_eq!(point, Some(0));
    }

    #[test]
    fn unravelling_preserves_root_satisfaction(
        m in model_strategy(false),
        seed in any::<u64>(),
        depth in 0usize..=3,
    ) {
        let s = (seed as usize) % m.len();
        let u = symmetric_unravelling(&m, s, depth, UnravelMode::Plain).unwrap();
        prop_assert!(u.model().frame().is_symmetric());
        for i in 0..4 {
            let f = formula(seed.wrapping_add(i), depth, 10);
            prop_assert_eq!(u.pointed.satisfies(&f), m.satisfies(s, &f).unwrap(), "{}", f);
        }
    }

    #[test]
    fn reflexive_unravelling_preserves_root_satisfaction(
        m in model_strategy(true),
        seed in any::<u64>(),
        depth in 0usize..=3,
    ) {
        let s = (seed as usize) % m.len();
        let u = symmetric_unravelling(&m, s, depth, UnravelMode::Reflexive).unwrap();
        prop_assert!(Logic::Ktb.admits(u.model().frame()));
        for i in 0..4 {
            let f = formula(seed.wrapping_add(i), depth, 10);
            prop_assert_eq!(u.pointed.satisfies(&f), m.satisfies(s, &f).unwrap(), "{}", f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prover_agrees_with_oracle(seed in any::<u64>()) {
        let f = small_formula(seed);
        for logic in Logic::ALL {
            let oracle = brute_force_countermodel(logic, &f, 3).unwrap();
            let verdict = decide(logic, &f);
            if let Some(m) = &oracle {
                prop_assert!(certify(logic, &f, m));
                prop_assert!(verdict.is_invalid(), "{} {}: {}", logic, f, verdict);
            }
            match &verdict {
                Verdict::Invalid(m) => prop_assert!(certify(logic, &f, m)),
                Verdict::Valid => prop_assert!(oracle.is_none()),
                Verdict::Unknown(r) => prop_assert!(false, "unknown: {}", r),
            }
        }
    }

    #[test]
    fn validity_is_monotone_across_logics(seed in any::<u64>()) {
        let f = formula(seed, 3, 10);
        if decide(Logic::Kb, &f).is_valid() {
            prop_assert!(decide(Logic::Kdb, &f).is_valid());
            prop_assert!(decide(Logic::Ktb, &f).is_valid());
        }
    }

    #[test]
    fn countermodels_are_in_the_frame_class(seed in any::<u64>()) {
        let f = formula(seed, 4, 12);
        for logic in Logic::ALL {
            if let Verdict::Invalid(m) = decide(logic, &f) {
                prop_assert!(logic.admits(m.model().frame()));
                prop_assert!(!m.satisfies(&f));
            }
        }
    }

    #[test]
    fn composition_is_sequential_application(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (s, t) = (substitution(a), substitution(b));
        let f = formula(c, 3, 8);
        prop_assert_eq!(s.compose(&t).apply(&f), t.apply(&s.apply(&f)));
    }

    #[test]
    fn composition_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), d in any::<u64>()) {
        let (r, s, t) = (substitution(a), substitution(b), substitution(c));
        let f = formula(d, 2, 6);
        prop_assert_eq!(r.compose(&s).compose(&t).apply(&f), r.compose(&s.compose(&t)).apply(&f));
    }

    #[test]
    fn parameters_are_never_substituted(a in any::<u64>()) {
        let s = substitution(a);
        for p in [Formula::p(), Formula::q(), Formula::param("r")] {
            prop_assert_eq!(s.apply(&p), p.clone());
        }
        prop_assert!(Substitution::from_pairs([(Atom::p(), Formula::top())]).is_err());
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let (s, t) = (substitution(a), substitution(b));
        prop_assert_eq!(equivalent(Logic::Kb, &s, &s), Ok(true));
        prop_assert_eq!(equivalent(Logic::Kb, &s, &t), equivalent(Logic::Kb, &t, &s));
    }

    #[test]
    fn unifiers_are_closed_under_equivalence(a in any::<u64>(), k in 0usize..=2) {
        let s = sigma_k(k);
        let t = s.compose(&lambda_k(k));
        prop_assert_eq!(equivalent(Logic::Kb, &s, &t), Ok(true));
        let f = formula(a, 3, 8);
        prop_assert_eq!(is_unifier(Logic::Kb, &s, &f), is_unifier(Logic::Kb, &t, &f));
        let u = tau_k(k);
        let v = u.compose(&mu_k(k));
        prop_assert_eq!(is_unifier(Logic::Kb, &u, &f), is_unifier(Logic::Kb, &v, &f));
    }

    #[test]
    fn substitution_json_round_trips(a in any::<u64>()) {
        let s = substitution(a);
        let text = serde_json::to_string(&s.to_json()).unwrap();
        prop_assert_eq!(Substitution::from_json_str(&text).unwrap(), s);
    }

    #[test]
    fn pointed_json_round_trips(m in model_strategy(true)) {
        let p = PointedModel::new(m, 0).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        prop_assert_eq!(PointedModel::from_json_str(&text).unwrap().point(), 0);
    }
}
