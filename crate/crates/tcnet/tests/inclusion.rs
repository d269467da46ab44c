use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tcnet::automata::{membership, Automaton, Guard, Rel, StoreOp, StoreSpec, TimedWord, VisiblyAlphabet};
use tcnet::fixtures::{anbm_net, inclusion_suite, region_pair};
use tcnet::inclusion::{
    check_inclusion, check_inclusion_with_stats, check_universality, concretize, InclusionError, InclusionOptions,
    Verdict,
};
use tcnet::regionwords::{Product, ProductError};
use tcnet::sample::{random_accepted_word, SampleOptions};

fn accepts(aut: &Automaton, w: &TimedWord) -> bool {
    membership(aut, w).unwrap().accepted
}

fn check(a: &Automaton, b: &Automaton) -> Verdict {
    check_inclusion(a, b, &InclusionOptions::default()).unwrap()
}

#[test]
fn suite_verdicts_and_witnesses() {
    for f in inclusion_suite() {
        let verdict = check(&f.a, &f.b);
        assert_eq!(verdict.is_included(), f.included, "{}", f.name);
        if let Some(cex) = verdict.counterexample() {
            assert!(accepts(&f.a, &cex.witness), "{}: {}", f.name, cex.witness);
            assert!(!accepts(&f.b, &cex.witness), "{}: {}", f.name, cex.witness);
            assert_eq!(cex.rendered.len(), cex.trace.len() + 1);
            assert_eq!(cex.witness.len(), cex.trace.len());
            let p = Product::new(&f.a, &f.b).unwrap();
            assert_eq!(concretize(&p, &cex.initial, &cex.trace).as_ref(), Ok(&cex.witness));
        }
    }
}

#[test]
fn included_pairs_survive_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for f in inclusion_suite().into_iter().filter(|f| f.included) {
        for _ in 0..100 {
            if let Some(w) = random_accepted_word(&f.a, &mut rng, &SampleOptions::default()) {
                assert!(accepts(&f.b, &w), "{}: {w}", f.name);
            }
        }
    }
}

#[test]
fn x_equals_1_witness() {
    let f = inclusion_suite().into_iter().find(|f| f.name == "x-equals-1").unwrap();
    let verdict = check(&f.a, &f.b);
    let cex = verdict.counterexample().unwrap();
    assert_eq!(cex.witness.to_string(), "(a,1)(a,1)");
}

#[test]
fn verdicts_are_deterministic() {
    for f in inclusion_suite() {
        let first = check_inclusion_with_stats(&f.a, &f.b, &InclusionOptions::default()).unwrap();
        let second = check_inclusion_with_stats(&f.a, &f.b, &InclusionOptions::default()).unwrap();
        assert_eq!(first, second, "{}", f.name);
    }
}

#[test]
fn larger_region_bounds_agree() {
    for f in inclusion_suite() {
        for cmax in [3, 5] {
            let v = check_inclusion(&f.a, &f.b, &InclusionOptions { cmax: Some(cmax), ..Default::default() }).unwrap();
            assert_eq!(v.is_included(), f.included, "{} cmax {cmax}", f.name);
        }
    }
}

#[test]
fn accepting_locations_are_monotone() {
    for f in inclusion_suite() {
        let mut b = f.b.clone();
        for l in 0..b.locations.len() {
            b.set_accepting(l);
        }
        if f.included {
            assert!(check(&f.a, &b).is_included(), "{}", f.name);
        }
        let mut a = f.a.clone();
        for l in 0..a.locations.len() {
            a.set_accepting(l);
        }
        if !f.included {
            assert!(!check(&a, &f.b).is_included(), "{}", f.name);
        }
    }
}

#[test]
fn budget_exhaustion() {
    let f = inclusion_suite().into_iter().find(|f| f.name == "anbm-ab").unwrap();
    let err = check_inclusion(&f.a, &f.b, &InclusionOptions { budget: 1, cmax: None }).unwrap_err();
    assert!(matches!(err, InclusionError::BudgetExhausted { explored: 1 }), "{err}");
    assert_eq!(err.to_string(), "budget exhausted after 1 nodes");
}

#[test]
fn shape_errors() {
    let (a, b) = region_pair();
    let other = Automaton::new(VisiblyAlphabet::flat(["a"]), StoreSpec::None);
    assert_eq!(
        check_inclusion(&other, &b, &InclusionOptions::default()).unwrap_err(),
        InclusionError::Product(ProductError::AlphabetMismatch)
    );
    assert_eq!(
        check_inclusion(&b, &b, &InclusionOptions::default()).unwrap_err(),
        InclusionError::Product(ProductError::NotTimedAutomaton)
    );
    assert!(check_inclusion(&a, &b, &InclusionOptions::default()).is_ok());
}

#[test]
fn anbm_is_not_universal() {
    let net = anbm_net();
    let v = check_universality(&net, &InclusionOptions::default()).unwrap();
    let cex = v.counterexample().unwrap();
    assert!(!accepts(&net, &cex.witness));
    assert_eq!(cex.witness.to_string(), "(a,1)(a,3/2)(b,3/2)(a,3/2)");
}

fn single_a(guard: Option<(Rel, u32)>, op: StoreOp, store: StoreSpec) -> Automaton {
    let mut a = Automaton::new(VisiblyAlphabet::flat(["a"]), store);
    let g = match guard {
        Some((rel, k)) => {
            let x = a.clock("x");
            Guard::atom(x, rel, k)
        }
        None => Guard::always(),
    };
    let [p, q] = ["p", "q"].map(|n| a.location(n));
    a.set_initial(p);
    a.set_accepting(q);
    a.add_edge(p, "a", g, op, vec![], q);
    a
}

#[test]
fn witness_timestamps() {
    let zero = || StoreOp::Update(vec![0]);
    let a = single_a(Some((Rel::Lt, 1)), StoreOp::Noop, StoreSpec::None);
    let b = single_a(Some((Rel::Eq, 0)), zero(), StoreSpec::Counters(1));
    assert_eq!(check(&a, &b).counterexample().unwrap().witness.to_string(), "(a,1/2)");
    let a = single_a(Some((Rel::Eq, 1)), StoreOp::Noop, StoreSpec::None);
    let b = single_a(Some((Rel::Lt, 1)), zero(), StoreSpec::Counters(1));
    assert_eq!(check(&a, &b).counterexample().unwrap().witness.to_string(), "(a,1)");
}

#[test]
fn universality_examples() {
    let mut all = Automaton::new(VisiblyAlphabet::flat(["a", "b"]), StoreSpec::Counters(1));
    let l = all.location("l");
    all.set_initial(l);
    all.set_accepting(l);
    all.add_edge(l, "a", Guard::always(), StoreOp::Update(vec![0]), vec![], l);
    all.add_edge(l, "b", Guard::always(), StoreOp::Update(vec![0]), vec![], l);
    assert!(check_universality(&all, &InclusionOptions::default()).unwrap().is_included());

    let mut dec = Automaton::new(VisiblyAlphabet::flat(["a"]), StoreSpec::Counters(1));
    let l = dec.location("l");
    dec.set_initial(l);
    dec.set_accepting(l);
    dec.add_edge(l, "a", Guard::always(), StoreOp::Update(vec![-1]), vec![], l);
    let v = check_universality(&dec, &InclusionOptions::default()).unwrap();
    let w = &v.counterexample().unwrap().witness;
    assert_eq!(w.len(), 1);
    assert!(!accepts(&dec, w));
}
