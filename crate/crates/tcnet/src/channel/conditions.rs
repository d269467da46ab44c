//! Membership in `L(C, n)` and `L_ef(C, n)` decided directly on timed words.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{ChannelError, ChannelMachine, Label, EMPTY, HASH, MINUS, PLUS, STAR};
use crate::automata::TimedWord;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C7Prime,
    C8Prime,
    C9Prime,
    C10,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::C1 => "1",
            Condition::C2 => "2",
            Condition::C3 => "3",
            Condition::C4 => "4",
            Condition::C5 => "5",
            Condition::C6 => "6",
            Condition::C7 => "7",
            Condition::C8 => "8",
            Condition::C9 => "9",
            Condition::C7Prime => "7'",
            Condition::C8Prime => "8'",
            Condition::C9Prime => "9'",
            Condition::C10 => "10",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Initial,
    State,
    Message,
    Label,
    Plus,
    Minus,
    Hash,
    Star,
}

struct View<'a> {
    machine: &'a ChannelMachine,
    kinds: Vec<Kind>,
    letters: Vec<&'a str>,
    times: Vec<Rational>,
    at: HashMap<Rational, Vec<usize>>,
}

impl<'a> View<'a> {
    fn new(machine: &'a ChannelMachine, w: &'a TimedWord) -> Result<View<'a>, ChannelError> {
        let labels = machine.label_names();
        let mut kinds = Vec::with_capacity(w.len());
        for (letter, _) in w.events() {
            let l = letter.as_str();
            let kind = if l == machine.initial {
                Kind::Initial
            } else if machine.states.iter().any(|s| s == l) {
                Kind::State
            } else if machine.messages.iter().any(|m| m == l) {
                Kind::Message
            } else if labels.iter().any(|x| x == l) {
                Kind::Label
            } else {
                match l {
                    PLUS => Kind::Plus,
                    MINUS => Kind::Minus,
                    HASH => Kind::Hash,
                    STAR => Kind::Star,
                    _ => return Err(ChannelError::ForeignLetter(l.to_string())),
                }
            };
            kinds.push(kind);
        }
        let mut at: HashMap<Rational, Vec<usize>> = HashMap::new();
        for (i, (_, t)) in w.events().iter().enumerate() {
            at.entry(*t).or_default().push(i);
        }
        Ok(View {
            machine,
            kinds,
            letters: w.events().iter().map(|(l, _)| l.as_str()).collect(),
            times: w.events().iter().map(|(_, t)| *t).collect(),
            at,
        })
    }

    fn is_state(&self, i: usize) -> bool {
        matches!(self.kinds[i], Kind::Initial | Kind::State)
    }

    fn is_final(&self, i: usize) -> bool {
        self.letters[i] == self.machine.final_state
    }

    fn positions_at(&self, t: Rational) -> &[usize] {
        self.at.get(&t).map_or(&[], Vec::as_slice)
    }

    fn exists_after(&self, p: usize, delta: i64, pred: impl Fn(usize) -> bool) -> bool {
        self.positions_at(self.times[p] + Rational::from_int(delta)).iter().any(|&q| q > p && pred(q))
    }

    fn shape(&self, n: usize) -> bool {
        // 0 start, 1 reading +, 2 block start, 3 messages, 4 wildcards, 5 final block, 6 done.
        let mut current: BTreeSet<(u8, usize)> = BTreeSet::from([(0, 0)]);
        for (i, &k) in self.kinds.iter().enumerate() {
            let mut next = BTreeSet::new();
            for &(q, plus) in &current {
                match (q, k) {
                    (0, Kind::Initial) => {
                        next.insert((1, 0));
                    }
                    (1, Kind::Plus) if plus < n => {
                        next.insert((1, plus + 1));
                    }
                    (1, Kind::Label) if plus == n && self.letters[i] == EMPTY => {
                        next.insert((2, 0));
                    }
                    (2, Kind::State | Kind::Initial) => {
                        next.insert((3, 0));
                        if self.is_final(i) {
                            next.insert((5, 0));
                        }
                    }
                    (3, Kind::Message) => {
                        next.insert((3, 0));
                    }
                    (3 | 4, Kind::Hash) => {
                        next.insert((4, 0));
                    }
                    (3 | 4, Kind::Label) => {
                        next.insert((2, 0));
                    }
                    (5, Kind::Minus) => {
                        next.insert((5, 0));
                    }
                    (5, Kind::Star) => {
                        next.insert((6, 0));
                    }
                    _ => {}
                }
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.contains(&(6, 0))
    }
}

/// The configuration infix starting at a state position.
struct Infix {
    l: usize,
    sigma: Vec<usize>,
    next: usize,
    sigma2: Vec<usize>,
}

fn infix_at(v: &View<'_>, p: usize) -> Option<Infix> {
    let delta = v.times[p];
    let plus = |k: i64| delta + Rational::from_int(k);
    let len = v.times.len();
    let scan = |from: usize, limit: Rational| {
        let mut out = Vec::new();
        let mut j = from;
        while j < len && v.times[j] < limit && v.times[j] > v.times[j - 1] {
            out.push(j);
            j += 1;
        }
        (out, j)
    };
    let exact = |j: usize, t: Rational| j < len && v.times[j] == t && v.times[j] > v.times[j - 1];
    let (sigma, l) = scan(p + 1, plus(1));
    if !exact(l, plus(1)) || v.kinds[l] != Kind::Label {
        return None;
    }
    let next = l + 1;
    if !exact(next, plus(2)) || !v.is_state(next) {
        return None;
    }
    let (sigma2, l2) = scan(next + 1, plus(3));
    if !exact(l2, plus(3)) {
        return None;
    }
    let wanted = if v.is_final(next) { Kind::Star } else { Kind::Label };
    (v.kinds[l2] == wanted).then_some(Infix { l, sigma, next, sigma2 })
}

/// Checks (7)-(9) or their primed forms on one infix.
fn copies_ok(v: &View<'_>, infix: &Infix) -> bool {
    let primed = v.is_final(infix.next);
    let two = Rational::from_int(2);
    let copy = |i: usize| -> Option<&str> {
        let t = v.times[i] + two;
        infix.sigma2.iter().find(|&&j| v.times[j] == t).map(|&j| v.letters[j])
    };
    let expect = |sym: &'_ str| -> String {
        if primed {
            MINUS.to_string()
        } else {
            sym.to_string()
        }
    };
    let is_copy = |i: usize, sym: &str| copy(i) == Some(expect(sym).as_str());
    let label: Label = match v.letters[infix.l].parse() {
        Ok(l) => l,
        Err(_) => return false,
    };
    match label {
        Label::Empty => infix.sigma.iter().all(|&i| matches!(v.kinds[i], Kind::Plus | Kind::Hash) && is_copy(i, HASH)),
        Label::Send(m) => {
            let Some(&j) = infix.sigma.iter().find(|&&i| v.kinds[i] == Kind::Hash) else { return false };
            is_copy(j, &m) && infix.sigma.iter().filter(|&&i| i != j).all(|&i| is_copy(i, v.letters[i]))
        }
        Label::Recv(m) => {
            let (Some(&first), Some(&last2)) = (infix.sigma.first(), infix.sigma2.last()) else { return false };
            let last = *infix.sigma.last().expect("nonempty");
            v.letters[first] == m
                && v.letters[last2] == expect(HASH)
                && v.times[last2] > v.times[last] + two
                && infix.sigma[1..].iter().all(|&i| is_copy(i, v.letters[i]))
        }
    }
}

fn check_view(v: &View<'_>, n: usize) -> BTreeSet<Condition> {
    let machine = v.machine;
    let mut out = BTreeSet::new();
    let len = v.times.len();
    if (1..len).any(|i| v.times[i] == v.times[i - 1]) {
        out.insert(Condition::C1);
    }
    if !v.shape(n) {
        out.insert(Condition::C2);
    }
    for p in (0..len).filter(|&p| v.is_state(p)) {
        let s = v.letters[p];
        let t = v.times[p];
        let ls = v.positions_at(t + Rational::one()).iter().filter(|&&q| q > p && v.kinds[q] == Kind::Label);
        let ss: Vec<usize> =
            v.positions_at(t + Rational::from_int(2)).iter().copied().filter(|&r| r > p && v.is_state(r)).collect();
        for &q in ls {
            for &r in &ss {
                let ok = machine
                    .transitions
                    .iter()
                    .any(|(a, l, b)| a == s && l.to_string() == v.letters[q] && b == v.letters[r]);
                if !ok {
                    out.insert(Condition::C3);
                }
            }
        }
        if v.is_final(p) {
            if !v.exists_after(p, 1, |q| v.kinds[q] == Kind::Star) {
                out.insert(Condition::C6);
            }
            continue;
        }
        if !v.exists_after(p, 1, |q| v.kinds[q] == Kind::Label) {
            out.insert(Condition::C4);
        }
        if !v.exists_after(p, 2, |q| v.is_state(q)) {
            out.insert(Condition::C5);
        }
        if let Some(infix) = infix_at(v, p) {
            if !copies_ok(v, &infix) {
                let primed = v.is_final(infix.next);
                let c = match (v.letters[infix.l].parse::<Label>(), primed) {
                    (Ok(Label::Empty), false) => Condition::C7,
                    (Ok(Label::Send(_)), false) => Condition::C8,
                    (Ok(Label::Recv(_)), false) => Condition::C9,
                    (Ok(Label::Empty), true) => Condition::C7Prime,
                    (Ok(Label::Send(_)), true) => Condition::C8Prime,
                    (_, _) => Condition::C9Prime,
                };
                out.insert(c);
            }
        }
    }
    out
}

/// The conditions among (1)-(9) and (7')-(9') that `w` violates for `n`;
/// empty exactly when `w ∈ L(C, n)`.
pub fn check_conditions(
    w: &TimedWord,
    machine: &ChannelMachine,
    n: usize,
) -> Result<BTreeSet<Condition>, ChannelError> {
    Ok(check_view(&View::new(machine, w)?, n))
}

/// The length of the `+`-run right after a leading `s_I`.
pub fn infer_n(w: &TimedWord, machine: &ChannelMachine) -> Option<usize> {
    let u = w.untimed();
    if u.first() != Some(&machine.initial.as_str()) {
        return None;
    }
    Some(u[1..].iter().take_while(|l| **l == PLUS).count())
}

pub fn member_lc(w: &TimedWord, machine: &ChannelMachine) -> Result<bool, ChannelError> {
    let v = View::new(machine, w)?;
    Ok(infer_n(w, machine).is_some_and(|n| check_view(&v, n).is_empty()))
}

/// Membership in `L(C)` with the number of `-` equal to `n`.
pub fn member_lef(w: &TimedWord, machine: &ChannelMachine) -> Result<bool, ChannelError> {
    let v = View::new(machine, w)?;
    Ok(infer_n(w, machine)
        .is_some_and(|n| check_view(&v, n).is_empty() && w.untimed().iter().filter(|l| **l == MINUS).count() == n))
}

/// Like [`check_conditions`], also reporting condition (10).
pub fn check_conditions_ef(
    w: &TimedWord,
    machine: &ChannelMachine,
    n: usize,
) -> Result<BTreeSet<Condition>, ChannelError> {
    let mut out = check_conditions(w, machine, n)?;
    if w.untimed().iter().filter(|l| **l == MINUS).count() != n {
        out.insert(Condition::C10);
    }
    Ok(out)
}
