//! Ready-made automata, channel machines and words used by the examples,
//! the command-line tool and the test suites.

use std::collections::BTreeSet;

use crate::automata::{Automaton, Guard, Rel, StoreOp, StoreSpec, TimedWord, VisiblyAlphabet};
use crate::channel::{ChannelConfig, ChannelMachine, Computation, Label};
use crate::rational::Rational;
use crate::regionwords::{BState, JointConfiguration};

fn machine(extra: &[(&str, &str, &str)]) -> ChannelMachine {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut transitions =
        vec![("s_I", "empty?", "s"), ("s", "!m1", "s"), ("s", "!m2", "s'"), ("s'", "?m1", "s'"), ("s'", "?m3", "s_F")];
    transitions.extend_from_slice(extra);
    ChannelMachine::new(
        s(&["s_I", "s", "s'", "s_F"]),
        "s_I".into(),
        "s_F".into(),
        s(&["m1", "m2", "m3"]),
        transitions.into_iter().map(|(a, l, b)| (a.to_string(), l.parse().expect("label"), b.to_string())).collect(),
    )
    .expect("well-formed machine")
}

/// Sends `m1`s and one `m2`, receives `m1`s, and needs `m3` to finish:
/// `s_F` is reachable only with an insertion error.
pub fn demo_machine() -> ChannelMachine {
    machine(&[])
}

/// [`demo_machine`] with an extra `(s', ?m2, s_F)`, so that `s_F` is
/// reachable without errors.
pub fn demo_variant_machine() -> ChannelMachine {
    machine(&[("s'", "?m2", "s_F")])
}

fn cfg(state: &str, channel: &[&str]) -> ChannelConfig {
    ChannelConfig::new(state, channel)
}

fn computation(steps: &[(&str, ChannelConfig)]) -> Computation {
    Computation {
        start: cfg("s_I", &[]),
        steps: steps.iter().map(|(l, c)| (l.parse::<Label>().expect("label"), c.clone())).collect(),
    }
}

/// The faulty computation reaching `(s_F, m2)`: `m3` is inserted while `m1` is received.
pub fn demo_faulty_run() -> Computation {
    computation(&[
        ("empty?", cfg("s", &[])),
        ("!m1", cfg("s", &["m1"])),
        ("!m2", cfg("s'", &["m1", "m2"])),
        ("?m1", cfg("s'", &["m3", "m2"])),
        ("?m3", cfg("s_F", &["m2"])),
    ])
}

/// An error-free run of [`demo_variant_machine`] passing through
/// `(s, m1 m1) -!m2-> (s', m1 m1 m2) -?m1-> (s', m1 m2)`.
pub fn wildcard_computation() -> Computation {
    computation(&[
        ("empty?", cfg("s", &[])),
        ("!m1", cfg("s", &["m1"])),
        ("!m1", cfg("s", &["m1", "m1"])),
        ("!m2", cfg("s'", &["m1", "m1", "m2"])),
        ("?m1", cfg("s'", &["m1", "m2"])),
        ("?m1", cfg("s'", &["m2"])),
        ("?m2", cfg("s_F", &[])),
    ])
}

/// The encoding of [`demo_faulty_run`] with `n = 2` and hand-picked timestamps.
pub fn demo_encoding() -> TimedWord {
    TimedWord::parse_pairs(&[
        ("s_I", "1.0"),
        ("+", "1.2"),
        ("+", "1.8"),
        ("empty?", "2.0"),
        ("s", "3.0"),
        ("#", "3.2"),
        ("#", "3.8"),
        ("!m1", "4.0"),
        ("s", "5.0"),
        ("m1", "5.2"),
        ("#", "5.8"),
        ("!m2", "6.0"),
        ("s'", "7.0"),
        ("m1", "7.2"),
        ("m2", "7.8"),
        ("?m1", "8.0"),
        ("s'", "9.0"),
        ("m3", "9.1"),
        ("m2", "9.8"),
        ("#", "9.9"),
        ("?m3", "10.0"),
        ("s_F", "11.0"),
        ("-", "11.8"),
        ("-", "11.9"),
        ("-", "11.95"),
        ("*", "12.0"),
    ])
}

fn flat(letters: &[&str]) -> VisiblyAlphabet {
    VisiblyAlphabet::flat(letters.iter().copied())
}

fn up(dim: usize, k: usize, d: i8) -> StoreOp {
    let mut v = vec![0; dim];
    v[k] = d;
    StoreOp::Update(v)
}

/// The one-counter net over `{a, b}` accepting `a^n b^m` with `n >= m`, `n >= 1`.
pub fn anbm_net() -> Automaton {
    let mut b = Automaton::new(flat(&["a", "b"]), StoreSpec::Counters(1));
    let [n0, n1] = ["n0", "n1"].map(|n| b.location(n));
    b.set_initial(n0);
    b.set_accepting(n1);
    b.add_edge(n0, "a", Guard::always(), up(1, 0, 1), vec![], n0);
    b.add_edge(n0, "a", Guard::always(), up(1, 0, 1), vec![], n1);
    b.add_edge(n1, "b", Guard::always(), up(1, 0, -1), vec![], n1);
    b
}

/// A one-clock timed automaton `A` (clock `y`) and a two-dimensional
/// one-clock net `B` (clock `x`, locations `l1`, `l2`, `l3`) with `cmax = 2`.
pub fn region_pair() -> (Automaton, Automaton) {
    let ab = flat(&["a", "b"]);
    let mut a = Automaton::new(ab.clone(), StoreSpec::None);
    let y = a.clock("y");
    let l = a.location("l");
    a.set_initial(l);
    a.set_accepting(l);
    a.add_edge(l, "a", Guard::atom(y, Rel::Le, 1), StoreOp::Noop, vec![], l);
    a.add_edge(l, "b", Guard::atom(y, Rel::Ge, 1), StoreOp::Noop, vec![y], l);

    let mut b = Automaton::new(ab, StoreSpec::Counters(2));
    let x = b.clock("x");
    let [l1, l2, l3] = ["l1", "l2", "l3"].map(|n| b.location(n));
    b.set_initial(l1);
    b.set_accepting(l2);
    b.add_edge(l1, "a", Guard::atom(x, Rel::Le, 1), up(2, 0, 1), vec![], l2);
    b.add_edge(l2, "a", Guard::always(), up(2, 1, 1), vec![x], l3);
    b.add_edge(l3, "b", Guard::atom(x, Rel::Gt, 1), up(2, 0, -1), vec![], l1);
    b.add_edge(l1, "b", Guard::always(), StoreOp::Update(vec![0, 0]), vec![], l1);
    b.add_edge(l2, "b", Guard::atom(x, Rel::Eq, 1), up(2, 1, -1), vec![], l2);
    (a, b)
}

fn joint(a: &Automaton, b: &Automaton, y: &str, items: &[(&str, &str, [u32; 2])]) -> JointConfiguration {
    let set: BTreeSet<BState> = items
        .iter()
        .map(|(loc, v, c)| BState {
            loc: b.location_id(loc).expect("B location"),
            clock: v.parse().expect("rational"),
            counters: c.to_vec(),
        })
        .collect();
    JointConfiguration {
        a_loc: a.location_id("l").expect("A location"),
        a_clocks: vec![y.parse::<Rational>().expect("rational")],
        b: set,
    }
}

/// `C2` and `C3` over [`region_pair`]; they have the same encoding.
pub fn region_configs(a: &Automaton, b: &Automaton) -> (JointConfiguration, JointConfiguration) {
    let c2 = joint(
        a,
        b,
        "1.3",
        &[("l2", "0.7", [1, 1]), ("l1", "1.0", [1, 1]), ("l3", "0.5", [0, 1]), ("l1", "2.2", [0, 0])],
    );
    let c3 = joint(
        a,
        b,
        "1.1",
        &[("l2", "0.9", [1, 1]), ("l1", "1.0", [1, 1]), ("l3", "0.2", [0, 1]), ("l1", "9.2", [0, 0])],
    );
    (c2, c3)
}

/// `(name, A, B, L(A) ⊆ L(B))`.
pub struct InclusionFixture {
    pub name: &'static str,
    pub a: Automaton,
    pub b: Automaton,
    pub included: bool,
}

/// One accepting location with a self-loop on every letter.
fn loop_ta(letters: &[&str]) -> Automaton {
    let mut a = Automaton::new(flat(letters), StoreSpec::None);
    let u = a.location("u");
    a.set_initial(u);
    a.set_accepting(u);
    for l in letters {
        a.add_edge(u, l, Guard::always(), StoreOp::Noop, vec![], u);
    }
    a
}

/// Reads a single `a` under `guard` on clock `x`.
fn single_a(store: StoreSpec, guard: Option<(Rel, u32)>, op: StoreOp) -> Automaton {
    let mut a = Automaton::new(flat(&["a"]), store);
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

/// `a` then `b`, with the given clock constraints on one clock `x`
/// (reset on `a`), over the given store and operations.
fn a_then_b(store: StoreSpec, ga: Option<(Rel, u32)>, gb: Option<(Rel, u32)>, ops: (StoreOp, StoreOp)) -> Automaton {
    let mut a = Automaton::new(flat(&["a", "b"]), store);
    let x = a.clock("x");
    let guard = |g: Option<(Rel, u32)>| g.map_or(Guard::always(), |(r, k)| Guard::atom(x, r, k));
    let [p, q, r] = ["p", "q", "r"].map(|n| a.location(n));
    a.set_initial(p);
    a.set_accepting(r);
    a.add_edge(p, "a", guard(ga), ops.0, vec![x], q);
    a.add_edge(q, "b", guard(gb), ops.1, vec![], r);
    a
}

/// Words `(ab)^k`, or `(a|b)^k` when `b_first` is set, for any timing.
fn alternating(b_first: bool) -> Automaton {
    let mut a = Automaton::new(flat(&["a", "b"]), StoreSpec::None);
    let [p, q] = ["p", "q"].map(|n| a.location(n));
    a.set_initial(p);
    a.set_accepting(p);
    a.add_edge(p, "a", Guard::always(), StoreOp::Noop, vec![], q);
    a.add_edge(q, "b", Guard::always(), StoreOp::Noop, vec![], p);
    if b_first {
        a.add_edge(p, "b", Guard::always(), StoreOp::Noop, vec![], q);
    }
    a
}

/// One accepting location; `a` increments and `b` decrements the first counter.
fn balance_net() -> Automaton {
    let mut b = Automaton::new(flat(&["a", "b"]), StoreSpec::Counters(2));
    b.clock("x");
    let p = b.location("p");
    b.set_initial(p);
    b.set_accepting(p);
    b.add_edge(p, "a", Guard::always(), up(2, 0, 1), vec![], p);
    b.add_edge(p, "b", Guard::always(), up(2, 0, -1), vec![], p);
    b
}

/// A fixed suite of inclusion instances with known answers.
pub fn inclusion_suite() -> Vec<InclusionFixture> {
    let c1 = || StoreSpec::Counters(1);
    let zero = || StoreOp::Update(vec![0]);
    let inc = || StoreOp::Update(vec![1]);
    let dec = || StoreOp::Update(vec![-1]);
    let any_a = || loop_ta(&["a"]);
    let fx = |name, a, b, included| InclusionFixture { name, a, b, included };
    let ab_any = || a_then_b(StoreSpec::None, None, None, (StoreOp::Noop, StoreOp::Noop));
    let ab_one = || a_then_b(StoreSpec::None, Some((Rel::Eq, 1)), Some((Rel::Lt, 1)), (StoreOp::Noop, StoreOp::Noop));
    vec![
        fx(
            "self",
            single_a(StoreSpec::None, Some((Rel::Eq, 1)), StoreOp::Noop),
            single_a(c1(), Some((Rel::Eq, 1)), zero()),
            true,
        ),
        fx("x-equals-1", any_a(), single_a(c1(), Some((Rel::Eq, 1)), zero()), false),
        fx(
            "increment-superset",
            single_a(StoreSpec::None, Some((Rel::Lt, 1)), StoreOp::Noop),
            single_a(c1(), Some((Rel::Lt, 1)), inc()),
            true,
        ),
        fx(
            "narrowed-lt",
            single_a(StoreSpec::None, Some((Rel::Lt, 2)), StoreOp::Noop),
            single_a(c1(), Some((Rel::Lt, 1)), zero()),
            false,
        ),
        fx(
            "open-interval",
            single_a(StoreSpec::None, Some((Rel::Gt, 1)), StoreOp::Noop),
            single_a(c1(), Some((Rel::Ge, 1)), zero()),
            true,
        ),
        fx("universal-b", ab_one(), loop_ta(&["a", "b"]), true),
        fx("anbm-ab", ab_any(), anbm_net(), true),
        fx("anbm-a-star", loop_ta(&["a", "b"]), anbm_net(), false),
        fx(
            "anbm-a-only",
            {
                let mut a = any_a();
                a.alphabet = flat(&["a", "b"]);
                a
            },
            anbm_net(),
            true,
        ),
        fx("reset-chain", ab_one(), a_then_b(c1(), Some((Rel::Eq, 1)), Some((Rel::Lt, 1)), (zero(), zero())), true),
        fx(
            "reset-chain-narrowed",
            ab_one(),
            a_then_b(c1(), Some((Rel::Eq, 1)), Some((Rel::Eq, 0)), (zero(), zero())),
            false,
        ),
        fx("blocking-decrement", ab_any(), a_then_b(c1(), None, None, (zero(), dec())), false),
        fx("matched-decrement", ab_any(), a_then_b(c1(), None, None, (inc(), dec())), true),
        fx("balanced-alternation", alternating(false), balance_net(), true),
        fx("unbalanced-alternation", alternating(true), balance_net(), false),
    ]
}

/// Automata pairs used to exercise the region abstraction.
pub fn product_fixtures() -> Vec<(&'static str, Automaton, Automaton)> {
    let (a, b) = region_pair();
    let (a2, b2) = {
        let mut a = Automaton::new(flat(&["a", "b"]), StoreSpec::None);
        let [y, z] = ["y", "z"].map(|c| a.clock(c));
        let [p, q] = ["p", "q"].map(|n| a.location(n));
        a.set_initial(p);
        a.set_accepting(q);
        a.add_edge(p, "a", Guard::atom(y, Rel::Le, 1), StoreOp::Noop, vec![z], q);
        a.add_edge(q, "b", Guard::atom(z, Rel::Gt, 0), StoreOp::Noop, vec![y], p);
        a.add_edge(q, "a", Guard::atom(y, Rel::Eq, 2), StoreOp::Noop, vec![], q);
        (a, balance_net())
    };
    let mut f3 = anbm_net();
    f3.clock("x");
    let x = 0;
    f3.edges[0].guard = Guard::atom(x, Rel::Lt, 1);
    f3.edges[0].resets = vec![x];
    f3.edges[2].guard = Guard::atom(x, Rel::Ge, 1);
    vec![("region-pair", a, b), ("two-clock-a", a2, b2), ("anbm-timed", loop_ta(&["a", "b"]), f3)]
}
