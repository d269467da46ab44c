use std::collections::BTreeSet;

use tcnet::automata::{membership, validate, TimedWord};
use tcnet::channel::{
    check_conditions, encode_computation, gen_complement_ta, gen_condition10_vonca, gen_exclusion_net,
    gen_universality_automaton, generate_corpus, infer_n, member_lc, member_lef, minimal_n, Bounds, ChannelConfig,
    ChannelMachine, Condition, CorpusTag, Label, Mode, TimestampStyle,
};
use tcnet::fixtures::{demo_encoding, demo_faulty_run, demo_machine, demo_variant_machine, wildcard_computation};
use tcnet::wqo::subword_leq;

fn label(s: &str) -> Label {
    s.parse().unwrap()
}

fn accepts(aut: &tcnet::Automaton, w: &TimedWord) -> bool {
    membership(aut, w).unwrap().accepted
}

#[test]
fn exact_steps() {
    let c = demo_machine();
    let got = c.step_exact(&ChannelConfig::new("s", &[]), &label("!m1"));
    assert_eq!(got, BTreeSet::from([ChannelConfig::new("s", &["m1"])]));
    let got = c.step_exact(&ChannelConfig::new("s_I", &[]), &label("empty?"));
    assert_eq!(got, BTreeSet::from([ChannelConfig::new("s", &[])]));
    assert!(c.step_exact(&ChannelConfig::new("s'", &["m2"]), &label("?m1")).is_empty());
}

#[test]
fn faulty_steps() {
    let c = demo_machine();
    assert!(c.step_faulty_check(
        &ChannelConfig::new("s'", &["m1", "m2"]),
        &label("?m1"),
        &ChannelConfig::new("s'", &["m3", "m2"])
    ));
    assert!(!c.step_faulty_check(
        &ChannelConfig::new("s'", &["m1", "m2"]),
        &label("?m1"),
        &ChannelConfig::new("s'", &["m3"])
    ));
    let d = ChannelMachine::new(
        vec!["s_I".into(), "s".into(), "s'".into()],
        "s_I".into(),
        "s'".into(),
        vec!["m1".into()],
        vec![("s_I".into(), label("empty?"), "s".into()), ("s".into(), label("empty?"), "s'".into())],
    )
    .unwrap();
    assert!(d.step_faulty_check(
        &ChannelConfig::new("s", &[]),
        &label("empty?"),
        &ChannelConfig::new("s'", &["m1", "m1"])
    ));
}

/// Every `x` with `x1 <= x` and `|x| <= bound`.
fn supersequences(x1: &[String], alphabet: &[String], bound: usize) -> Vec<Vec<String>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &layer {
            for m in alphabet {
                let mut v: Vec<String> = w.clone();
                v.push(m.clone());
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.into_iter().filter(|x| subword_leq(x1, x)).collect()
}

#[test]
fn faulty_step_matches_definition() {
    let c = demo_machine();
    let all = supersequences(&[], &c.messages, 4);
    for s1 in &c.states {
        for l in c.labels() {
            for x1 in &all {
                // Exact successors of every x >= x1, with |x|.
                let images: Vec<(usize, ChannelConfig)> = supersequences(x1, &c.messages, 5)
                    .into_iter()
                    .flat_map(|x| {
                        let n = x.len();
                        c.step_exact(&ChannelConfig { state: s1.clone(), channel: x }, &l)
                            .into_iter()
                            .map(move |y| (n, y))
                    })
                    .collect();
                for x2 in &all {
                    let a = ChannelConfig { state: s1.clone(), channel: x1.clone() };
                    for s2 in &c.states {
                        let b = ChannelConfig { state: s2.clone(), channel: x2.clone() };
                        let brute = images
                            .iter()
                            .any(|(n, y)| *n <= x2.len() + 1 && y.state == *s2 && subword_leq(&y.channel, x2));
                        assert_eq!(c.step_faulty_check(&a, &l, &b), brute, "{a} {l} {b}");
                    }
                }
            }
        }
    }
}

#[test]
fn reachability() {
    let c = demo_machine();
    assert!(c.reachable("s_F", Mode::Exact, Bounds { max_channel_len: 5, max_depth: 50 }).is_none());
    let found = c.reachable("s_F", Mode::Faulty, Bounds { max_channel_len: 3, max_depth: 10 }).unwrap();
    assert!(found.is_valid(&c));
    assert_eq!(found.last().state, "s_F");
    let trivial = c.reachable("s_I", Mode::Exact, Bounds { max_channel_len: 1, max_depth: 1 }).unwrap();
    assert!(trivial.steps.is_empty());
}

#[test]
fn encoding_classification() {
    let c = demo_machine();
    let w = demo_encoding();
    assert_eq!(infer_n(&w, &c), Some(2));
    assert_eq!(check_conditions(&w, &c, 2).unwrap(), BTreeSet::new());
    assert!(member_lc(&w, &c).unwrap());
    assert!(!member_lef(&w, &c).unwrap());
    assert!(accepts(&gen_condition10_vonca(&c), &w));
    assert!(!accepts(&gen_exclusion_net(&c), &w));
    assert!(!accepts(&gen_complement_ta(&c), &w));
    assert!(accepts(&gen_universality_automaton(&c), &w));
}

#[test]
fn condition_mutations() {
    let c = demo_machine();
    let w = demo_encoding();
    let mut events = w.events().to_vec();
    events.remove(3);
    let cut = TimedWord::new(events).unwrap();
    assert!(!check_conditions(&cut, &c, 2).unwrap().is_empty());
    let mut events = w.events().to_vec();
    events[2].1 = events[1].1;
    let equal = TimedWord::new(events).unwrap();
    assert!(check_conditions(&equal, &c, 2).unwrap().contains(&Condition::C1));
    let shifted = TimedWord::new(w.events()[1..].to_vec()).unwrap();
    assert!(!member_lc(&shifted, &c).unwrap());
    assert!(!member_lef(&shifted, &c).unwrap());
    let foreign = TimedWord::parse_pairs(&[("zz", "1")]);
    assert!(check_conditions(&foreign, &c, 0).is_err());
}

#[test]
fn encodings_satisfy_conditions() {
    let c = demo_machine();
    let gamma = demo_faulty_run();
    assert_eq!(minimal_n(&gamma), 2);
    for style in [TimestampStyle::Even, TimestampStyle::Seeded(7)] {
        let w = encode_computation(&c, &gamma, 2, style).unwrap();
        assert_eq!(w.untimed(), demo_encoding().untimed());
        assert_eq!(check_conditions(&w, &c, 2).unwrap(), BTreeSet::new(), "{w}");
        assert!(!accepts(&gen_exclusion_net(&c), &w));
    }
    assert!(encode_computation(&c, &gamma, 1, TimestampStyle::Even).is_err());
}

#[test]
fn wildcard_example() {
    let c = demo_variant_machine();
    let comp = wildcard_computation();
    assert!(comp.is_error_free(&c));
    let w = encode_computation(&c, &comp, 4, TimestampStyle::Even).unwrap();
    let text = w.untimed().join(" ");
    assert!(text.contains("s m1 m1 # # !m2 s' m1 m1 m2 # ?m1 s' m1 m2 # #"), "{text}");
    assert!(member_lef(&w, &c).unwrap());
    assert!(accepts(&gen_exclusion_net(&c), &w));
    assert!(!accepts(&gen_universality_automaton(&c), &w));
    let r = validate(&gen_exclusion_net(&c)).unwrap();
    assert!(r.is_deterministic_clockless_visibly_net, "{:?}", r.reasons);
}

fn oracle(c: &ChannelMachine, seed: u64, count: usize) {
    let complement = gen_complement_ta(c);
    let universality = gen_universality_automaton(c);
    let corpus = generate_corpus(c, seed, count);
    let mut tags = BTreeSet::new();
    for e in &corpus {
        tags.insert(e.tag);
        let in_lc = member_lc(&e.word, c).unwrap();
        assert_eq!(
            accepts(&complement, &e.word),
            !in_lc,
            "{} {} {:?}",
            e.tag,
            e.word,
            check_conditions(&e.word, c, infer_n(&e.word, c).unwrap_or(0))
        );
        assert_eq!(accepts(&universality, &e.word), !member_lef(&e.word, c).unwrap(), "{} {}", e.tag, e.word);
        if matches!(e.tag, CorpusTag::ValidEf | CorpusTag::ValidFaulty) {
            assert!(in_lc, "{}", e.word);
        }
    }
    assert!(tags.contains(&CorpusTag::Mutant) && tags.contains(&CorpusTag::Random));
}

#[test]
fn gadget_oracle_demo() {
    oracle(&demo_machine(), 1, 200);
}

#[test]
fn gadget_oracle_variant() {
    oracle(&demo_variant_machine(), 2, 200);
}

#[test]
fn condition10_counts_wildcards() {
    for c in [demo_machine(), demo_variant_machine()] {
        let vonca = gen_condition10_vonca(&c);
        for e in generate_corpus(&c, 3, 150) {
            if !member_lc(&e.word, &c).unwrap() {
                continue;
            }
            let n = infer_n(&e.word, &c).unwrap();
            let minus = e.word.untimed().iter().filter(|l| **l == "-").count();
            assert_eq!(accepts(&vonca, &e.word), minus > n, "{}", e.word);
        }
    }
}

#[test]
fn error_free_encodings_pass_the_net() {
    let c = demo_variant_machine();
    let net = gen_exclusion_net(&c);
    for e in generate_corpus(&c, 4, 150).into_iter().filter(|e| e.tag == CorpusTag::ValidEf) {
        assert!(accepts(&net, &e.word), "{}", e.word);
        assert!(member_lef(&e.word, &c).unwrap());
    }
}

#[test]
fn empty_computation() {
    let c = ChannelMachine::new(
        vec!["s_I".into(), "s_F".into()],
        "s_I".into(),
        "s_F".into(),
        vec!["m".into()],
        vec![("s_I".into(), label("empty?"), "s_F".into()), ("s_F".into(), label("empty?"), "s_F".into())],
    )
    .unwrap();
    let comp = c.reachable("s_F", Mode::Exact, Bounds { max_channel_len: 1, max_depth: 3 }).unwrap();
    assert_eq!(comp.steps.len(), 1);
    for n in 1..=3 {
        let w = encode_computation(&c, &comp, n, TimestampStyle::Even).unwrap();
        let untimed = w.untimed();
        assert_eq!(untimed[0], "s_I");
        assert!(untimed[1..=n].iter().all(|l| *l == "+"));
        assert_eq!(untimed[n + 1], "empty?");
        assert!(member_lef(&w, &c).unwrap(), "{w}");
        assert!(accepts(&gen_exclusion_net(&c), &w));
    }
}
