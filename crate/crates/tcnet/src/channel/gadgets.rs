//! Automata built from a channel machine: the insertion-error filter, the
//! one-clock complement of `L(C)`, the condition-(10) automaton and their union.

use std::collections::{BTreeMap, BTreeSet};

use super::{ChannelMachine, Label, EMPTY, HASH, MINUS, PLUS, STAR};
use crate::automata::{union, visibly_lift, Automaton, Guard, LetterClass, Rel, StoreOp, StoreSpec};

struct Letters {
    all: Vec<String>,
    states: Vec<String>,
    non_final: Vec<String>,
    messages: Vec<String>,
    labels: Vec<String>,
    sends: Vec<(String, String)>,
    recvs: Vec<(String, String)>,
    content: Vec<String>,
    final_state: String,
}

impl Letters {
    fn new(c: &ChannelMachine) -> Letters {
        let labels = c.labels();
        let pick = |want: fn(&Label) -> Option<&String>| -> Vec<(String, String)> {
            labels.iter().filter_map(|l| want(l).map(|m| (l.to_string(), m.clone()))).collect()
        };
        let mut content = c.messages.clone();
        content.push(HASH.to_string());
        Letters {
            all: c.encoding_alphabet().letters(),
            states: c.states.clone(),
            non_final: c.states.iter().filter(|s| **s != c.final_state).cloned().collect(),
            messages: c.messages.clone(),
            labels: c.label_names(),
            sends: pick(|l| if let Label::Send(m) = l { Some(m) } else { None }),
            recvs: pick(|l| if let Label::Recv(m) = l { Some(m) } else { None }),
            content,
            final_state: c.final_state.clone(),
        }
    }

    fn except(&self, out: &[&str]) -> Vec<String> {
        self.all.iter().filter(|l| !out.contains(&l.as_str())).cloned().collect()
    }
}

/// Incrementally assembles the union of one-clock gadgets over one clock `x`.
struct Builder {
    aut: Automaton,
    x: usize,
    count: usize,
    gadget: usize,
}

impl Builder {
    fn new(c: &ChannelMachine) -> Builder {
        let mut aut = Automaton::new(c.encoding_alphabet(), StoreSpec::None);
        let x = aut.clock("x");
        Builder { aut, x, count: 0, gadget: 0 }
    }

    fn start(&mut self) -> usize {
        self.gadget += 1;
        self.count = 0;
        let l = self.loc();
        self.aut.set_initial(l);
        l
    }

    fn loc(&mut self) -> usize {
        let name = format!("g{}.{}", self.gadget, self.count);
        self.count += 1;
        self.aut.location(&name)
    }

    fn acc(&mut self) -> usize {
        let l = self.loc();
        self.aut.set_accepting(l);
        l
    }

    fn edges(&mut self, from: usize, letters: &[String], guard: Guard, reset: bool, to: usize) {
        let resets = if reset { vec![self.x] } else { vec![] };
        for l in letters {
            self.aut.add_edge(from, l, guard.clone(), StoreOp::Noop, resets.clone(), to);
        }
    }

    fn on(&mut self, from: usize, letters: &[String], to: usize) {
        self.edges(from, letters, Guard::always(), false, to);
    }

    fn reset(&mut self, from: usize, letters: &[String], to: usize) {
        self.edges(from, letters, Guard::always(), true, to);
    }

    fn x(&self, rel: Rel, k: u32) -> Guard {
        Guard::atom(self.x, rel, k)
    }

    /// An accepting sink looping on every letter.
    fn sink(&mut self, all: &[String]) -> usize {
        let a = self.acc();
        self.on(a, all, a);
        a
    }
}

/// A copy of the symbol read at the last reset must appear two time units
/// later; accepts if the letter at `x = 2` differs from `expect` or is absent.
fn copy_tail(b: &mut Builder, ls: &Letters, h1: usize, mid: &[String], labels: &[String], expect: &str) {
    let h2 = b.loc();
    b.on(h1, mid, h1);
    b.on(h1, labels, h2);
    let fin = std::slice::from_ref(&ls.final_state);
    for (next, exp) in [(&ls.non_final[..], expect), (fin, MINUS)] {
        let h3 = b.acc();
        b.on(h2, next, h3);
        let g = b.x(Rel::Lt, 2);
        b.edges(h3, &ls.all, g, false, h3);
        let done = b.sink(&ls.all);
        let g = b.x(Rel::Eq, 2);
        b.edges(h3, &ls.except(&[exp]), g, false, done);
        let g = b.x(Rel::Gt, 2);
        b.edges(h3, &ls.all, g, false, done);
    }
}

fn shape_gadget(b: &mut Builder, c: &ChannelMachine, ls: &Letters) {
    // Positions of an acceptor for s_I +* empty? (S M* #* L)* s_F -* *.
    const START: u8 = 0;
    const PLUSES: u8 = 1;
    const BLOCK: u8 = 2;
    const MSGS: u8 = 3;
    const HASHES: u8 = 4;
    const FINAL: u8 = 5;
    const DONE: u8 = 6;
    let step = |q: u8, a: &str| -> Vec<u8> {
        let is_state = ls.states.iter().any(|s| s == a);
        let is_label = ls.labels.iter().any(|l| l == a);
        let is_msg = ls.messages.iter().any(|m| m == a);
        let mut out = Vec::new();
        match q {
            START if a == c.initial => out.push(PLUSES),
            PLUSES if a == PLUS => out.push(PLUSES),
            PLUSES if a == EMPTY => out.push(BLOCK),
            BLOCK if is_state => {
                out.push(MSGS);
                if a == ls.final_state {
                    out.push(FINAL);
                }
            }
            MSGS if is_msg => out.push(MSGS),
            MSGS | HASHES if a == HASH => out.push(HASHES),
            MSGS | HASHES if is_label => out.push(BLOCK),
            FINAL if a == MINUS => out.push(FINAL),
            FINAL if a == STAR => out.push(DONE),
            _ => {}
        }
        out
    };
    let init: BTreeSet<u8> = BTreeSet::from([START]);
    let mut ids: BTreeMap<BTreeSet<u8>, usize> = BTreeMap::new();
    let mut todo = vec![init.clone()];
    b.gadget += 1;
    b.count = 0;
    while let Some(set) = todo.pop() {
        if ids.contains_key(&set) {
            continue;
        }
        let l = b.loc();
        if !set.contains(&DONE) {
            b.aut.set_accepting(l);
        }
        if set == init {
            b.aut.set_initial(l);
        }
        ids.insert(set.clone(), l);
        for a in &ls.all {
            let next: BTreeSet<u8> = set.iter().flat_map(|&q| step(q, a)).collect();
            if !ids.contains_key(&next) {
                todo.push(next);
            }
        }
    }
    for (set, &l) in &ids {
        for a in &ls.all {
            let next: BTreeSet<u8> = set.iter().flat_map(|&q| step(q, a)).collect();
            b.aut.add_edge(l, a, Guard::always(), StoreOp::Noop, vec![], ids[&next]);
        }
    }
}

/// A one-clock timed automaton accepting exactly the timed words outside `L(C)`.
pub fn gen_complement_ta(c: &ChannelMachine) -> Automaton {
    let ls = Letters::new(c);
    let all = ls.all.clone();
    let mut b = Builder::new(c);

    // (1) two letters at the same time.
    let g0 = b.start();
    b.on(g0, &all, g0);
    let g1 = b.loc();
    b.reset(g0, &all, g1);
    let g2 = b.sink(&all);
    let g = b.x(Rel::Eq, 0);
    b.edges(g1, &all, g, false, g2);

    // (2)
    shape_gadget(&mut b, c, &ls);

    // (3) a label and a state one and two units after s, not a transition.
    for s in &ls.states {
        for l in &ls.labels {
            let bad: Vec<String> = ls
                .states
                .iter()
                .filter(|t| !c.transitions.iter().any(|(a, x, b)| a == s && x.to_string() == *l && b == *t))
                .cloned()
                .collect();
            if bad.is_empty() {
                continue;
            }
            let g0 = b.start();
            b.on(g0, &all, g0);
            let g1 = b.loc();
            b.reset(g0, std::slice::from_ref(s), g1);
            b.on(g1, &all, g1);
            let g2 = b.loc();
            let g = b.x(Rel::Eq, 1);
            b.edges(g1, std::slice::from_ref(l), g, false, g2);
            b.on(g2, &all, g2);
            let g3 = b.sink(&all);
            let g = b.x(Rel::Eq, 2);
            b.edges(g2, &bad, g, false, g3);
        }
    }

    // (4)-(6) no letter of `m2` exactly `k` units after a letter of `m1`.
    let fin = vec![ls.final_state.clone()];
    for (m1, m2, k) in
        [(&ls.non_final, &ls.labels, 1), (&ls.non_final, &ls.states, 2), (&fin, &vec![STAR.to_string()], 1)]
    {
        let g0 = b.start();
        b.on(g0, &all, g0);
        let g1 = b.acc();
        b.reset(g0, m1, g1);
        let g = b.x(Rel::Lt, k);
        b.edges(g1, &all, g, false, g1);
        let others: Vec<String> = all.iter().filter(|a| !m2.contains(a)).cloned().collect();
        let g = b.x(Rel::Eq, k);
        b.edges(g1, &others, g, false, g1);
        let g2 = b.sink(&all);
        let g = b.x(Rel::Gt, k);
        b.edges(g1, &all, g, false, g2);
    }

    let content = ls.content.clone();
    let wild: Vec<String> = vec![PLUS.to_string(), HASH.to_string()];
    let hash = vec![HASH.to_string()];
    let send_labels: Vec<String> = ls.sends.iter().map(|(l, _)| l.clone()).collect();
    let recv_labels: Vec<String> = ls.recvs.iter().map(|(l, _)| l.clone()).collect();
    let empty = vec![EMPTY.to_string()];

    // (7a) a message in a block closed by empty?.
    let g0 = b.start();
    b.on(g0, &all, g0);
    let g1 = b.loc();
    b.on(g0, &ls.messages, g1);
    b.on(g1, &content, g1);
    let g2 = b.sink(&all);
    b.on(g1, &empty, g2);

    // (7b) a wildcard before empty? without its # copy.
    let g0 = b.start();
    b.on(g0, &all, g0);
    let h1 = b.loc();
    b.reset(g0, &wild, h1);
    copy_tail(&mut b, &ls, h1, &wild, &empty, HASH);

    // (8a) a send from a block without wildcards.
    let g0 = b.start();
    b.on(g0, &all, g0);
    let g1 = b.loc();
    b.on(g0, &ls.except(&[HASH]), g1);
    let g2 = b.sink(&all);
    b.on(g1, &send_labels, g2);

    // (8b) the first # is not replaced by the sent message.
    for (label, m) in &ls.sends {
        let g0 = b.start();
        b.on(g0, &all, g0);
        let p1 = b.loc();
        let before: Vec<String> = ls.states.iter().chain(&ls.messages).cloned().collect();
        b.on(g0, &before, p1);
        let h1 = b.loc();
        b.reset(p1, &hash, h1);
        copy_tail(&mut b, &ls, h1, &hash, std::slice::from_ref(label), m);
    }

    // (8c) other symbols before a send are not copied.
    for m in &ls.messages {
        let g0 = b.start();
        b.on(g0, &all, g0);
        let h1 = b.loc();
        b.reset(g0, std::slice::from_ref(m), h1);
        copy_tail(&mut b, &ls, h1, &content, &send_labels, m);
    }
    let g0 = b.start();
    b.on(g0, &all, g0);
    let p1 = b.loc();
    b.on(g0, &hash, p1);
    let h1 = b.loc();
    b.reset(p1, &hash, h1);
    copy_tail(&mut b, &ls, h1, &hash, &send_labels, HASH);

    // (9a) the received message is not at the head.
    for (label, m) in &ls.recvs {
        let g0 = b.start();
        b.on(g0, &all, g0);
        let g1 = b.loc();
        b.on(g0, &ls.states, g1);
        let acc = b.sink(&all);
        b.on(g1, std::slice::from_ref(label), acc);
        let g2 = b.loc();
        let others: Vec<String> = content.iter().filter(|s| *s != m).cloned().collect();
        b.on(g1, &others, g2);
        b.on(g2, &content, g2);
        b.on(g2, std::slice::from_ref(label), acc);
    }

    // (9b) no fresh wildcard at the end of the next block.
    let g0 = b.start();
    b.on(g0, &all, g0);
    let g1 = b.loc();
    b.reset(g0, &content, g1);
    let g2 = b.loc();
    b.on(g1, &recv_labels, g2);
    for (next, closing, fresh) in [(&ls.non_final, &ls.labels, HASH), (&fin, &vec![STAR.to_string()], MINUS)] {
        let u0 = b.loc();
        b.on(g2, next, u0);
        let acc = b.sink(&all);
        b.on(u0, closing, acc);
        let u2 = b.loc();
        let inner: Vec<String> = all.iter().filter(|a| !closing.contains(a)).cloned().collect();
        b.on(u0, &inner, u2);
        b.on(u2, &inner, u2);
        let u1 = b.loc();
        let not_fresh: Vec<String> = all.iter().filter(|a| !closing.contains(a) && *a != fresh).cloned().collect();
        let late = b.x(Rel::Le, 2);
        for from in [u0, u2] {
            b.on(from, &not_fresh, u1);
            b.edges(from, &[fresh.to_string()], late.clone(), false, u1);
        }
        b.on(u1, closing, acc);
    }

    // (9c) symbols after the head are not copied.
    for sym in &content {
        let g0 = b.start();
        b.on(g0, &all, g0);
        let p1 = b.loc();
        b.on(g0, &ls.states, p1);
        let p2 = b.loc();
        b.on(p1, &content, p2);
        b.on(p2, &content, p2);
        let h1 = b.loc();
        b.reset(p2, std::slice::from_ref(sym), h1);
        copy_tail(&mut b, &ls, h1, &content, &recv_labels, sym);
    }

    b.aut
}

/// The prefix shared by the insertion-error filter and the condition-(10)
/// automaton: count `s_I` and the `+` block, then skip to `s_F`.
fn counting_prefix(c: &ChannelMachine) -> (Automaton, usize) {
    let alphabet = c.encoding_alphabet();
    let mut a = Automaton::new(alphabet.clone(), StoreSpec::Stack(vec!["c".to_string()]));
    let [l0, l1, l2, l3] = ["l0", "l1", "l2", "l3"].map(|n| a.location(n));
    a.set_initial(l0);
    a.add_edge(l0, &c.initial, Guard::always(), StoreOp::Push(0), vec![], l1);
    a.add_edge(l1, PLUS, Guard::always(), StoreOp::Push(0), vec![], l1);
    for l in c.label_names() {
        a.add_edge(l1, &l, Guard::always(), StoreOp::Noop, vec![], l2);
    }
    for s in alphabet.internal.iter().filter(|s| **s != c.final_state) {
        a.add_edge(l2, s, Guard::always(), StoreOp::Noop, vec![], l2);
    }
    a.add_edge(l2, &c.final_state, Guard::always(), StoreOp::Noop, vec![], l3);
    a.add_edge(l3, MINUS, Guard::always(), StoreOp::Pop(0), vec![], l3);
    (a, l3)
}

/// The deterministic clockless visibly one-counter net rejecting encodings
/// whose last configuration outgrew the first.
pub fn gen_exclusion_net(c: &ChannelMachine) -> Automaton {
    let (mut a, l3) = counting_prefix(c);
    let l4 = a.location("l4");
    a.set_accepting(l4);
    a.add_edge(l3, STAR, Guard::always(), StoreOp::Pop(0), vec![], l4);
    a
}

/// A one-clock visibly one-counter automaton accepting the words with more
/// `-` than `+`.
pub fn gen_condition10_vonca(c: &ChannelMachine) -> Automaton {
    let (mut a, l3) = counting_prefix(c);
    a.clock("x");
    let l4 = a.location("l4");
    a.set_accepting(l4);
    for r in [MINUS, STAR] {
        a.add_edge(l3, r, Guard::always(), StoreOp::Empty, vec![], l4);
    }
    let alphabet = a.alphabet.clone();
    for letter in alphabet.letters() {
        match alphabet.class_of(&letter) {
            Some(LetterClass::Call) => a.add_edge(l4, &letter, Guard::always(), StoreOp::Push(0), vec![], l4),
            Some(LetterClass::Return) => {
                a.add_edge(l4, &letter, Guard::always(), StoreOp::Pop(0), vec![], l4);
                a.add_edge(l4, &letter, Guard::always(), StoreOp::Empty, vec![], l4);
            }
            _ => a.add_edge(l4, &letter, Guard::always(), StoreOp::Noop, vec![], l4),
        }
    }
    a
}

/// Accepts exactly the nonempty timed words outside `L_ef(C)`.
pub fn gen_universality_automaton(c: &ChannelMachine) -> Automaton {
    let lifted = visibly_lift(&gen_complement_ta(c)).expect("complement automaton has no store");
    union(&lifted, &gen_condition10_vonca(c)).expect("same alphabet and stack")
}
