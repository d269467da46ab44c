//! Timed words and the unified automaton model: timed automata, timed pushdown
//! automata and timed counter nets, with their concrete semantics.

mod ops;
mod semantics;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use crate::rational::Rational;

pub use ops::{union, visibly_lift, LIFT_SYMBOL};
pub use semantics::{initial_states, membership, step, ConcreteState, Membership, Run, RunStep};
pub use validate::{check_structure, validate, ClassReport, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("store kinds differ")]
    StoreMismatch,
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterClass {
    Internal,
    Call,
    Return,
}

/// An alphabet partitioned into internal, call and return letters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VisiblyAlphabet {
    pub internal: BTreeSet<String>,
    pub call: BTreeSet<String>,
    pub ret: BTreeSet<String>,
}

impl VisiblyAlphabet {
    /// An unpartitioned alphabet: every letter internal.
    pub fn flat<I, S>(letters: I) -> VisiblyAlphabet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VisiblyAlphabet { internal: letters.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn partitioned<S: Into<String>>(
        internal: impl IntoIterator<Item = S>,
        call: impl IntoIterator<Item = S>,
        ret: impl IntoIterator<Item = S>,
    ) -> VisiblyAlphabet {
        VisiblyAlphabet {
            internal: internal.into_iter().map(Into::into).collect(),
            call: call.into_iter().map(Into::into).collect(),
            ret: ret.into_iter().map(Into::into).collect(),
        }
    }

    /// All letters in lexicographic order.
    pub fn letters(&self) -> Vec<String> {
        let all: BTreeSet<&String> = self.internal.iter().chain(&self.call).chain(&self.ret).collect();
        all.into_iter().cloned().collect()
    }

    pub fn class_of(&self, letter: &str) -> Option<LetterClass> {
        if self.internal.contains(letter) {
            Some(LetterClass::Internal)
        } else if self.call.contains(letter) {
            Some(LetterClass::Call)
        } else if self.ret.contains(letter) {
            Some(LetterClass::Return)
        } else {
            None
        }
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.class_of(letter).is_some()
    }

    pub fn same_letters(&self, other: &VisiblyAlphabet) -> bool {
        self.letters() == other.letters()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("a timed word needs at least one event")]
    Empty,
    #[error("timestamp {0} is negative")]
    Negative(Rational),
    #[error("timestamps decrease at position {0}")]
    Decreasing(usize),
}

/// A finite, nonempty timed word with nondecreasing timestamps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedWord {
    events: Vec<(String, Rational)>,
}

impl TimedWord {
    pub fn new(events: Vec<(String, Rational)>) -> Result<TimedWord, WordError> {
        if events.is_empty() {
            return Err(WordError::Empty);
        }
        for (i, (_, t)) in events.iter().enumerate() {
            if t.is_negative() {
                return Err(WordError::Negative(*t));
            }
            if i > 0 && *t < events[i - 1].1 {
                return Err(WordError::Decreasing(i + 1));
            }
        }
        Ok(TimedWord { events })
    }

    /// Builds a word from `(letter, "timestamp")` pairs; panics on bad input.
    pub fn parse_pairs(pairs: &[(&str, &str)]) -> TimedWord {
        let events =
            pairs.iter().map(|(a, t)| (a.to_string(), t.parse::<Rational>().expect("timestamp literal"))).collect();
        TimedWord::new(events).expect("well-formed timed word")
    }

    pub fn events(&self) -> &[(String, Rational)] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn letter(&self, i: usize) -> &str {
        &self.events[i].0
    }

    pub fn time(&self, i: usize) -> Rational {
        self.events[i].1
    }

    pub fn untimed(&self) -> Vec<&str> {
        self.events.iter().map(|(a, _)| a.as_str()).collect()
    }

    /// Adds `offset` to every timestamp.
    pub fn shifted(&self, offset: Rational) -> Result<TimedWord, WordError> {
        TimedWord::new(self.events.iter().map(|(a, t)| (a.clone(), *t + offset)).collect())
    }

    pub fn into_events(self) -> Vec<(String, Rational)> {
        self.events
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, t) in &self.events {
            write!(f, "({a},{t})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, value: Rational, bound: u32) -> bool {
        let c = Rational::from_int(bound as i64);
        match self {
            Rel::Lt => value < c,
            Rel::Le => value <= c,
            Rel::Eq => value == c,
            Rel::Ge => value >= c,
            Rel::Gt => value > c,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    pub fn parse(s: &str) -> Option<Rel> {
        Some(match s {
            "<" => Rel::Lt,
            "<=" | "≤" => Rel::Le,
            "=" | "==" => Rel::Eq,
            ">=" | "≥" => Rel::Ge,
            ">" => Rel::Gt,
            _ => return None,
        })
    }
}

/// One atom `x ~ c` of a clock constraint; the clock is an index into the owner's clocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClockAtom {
    pub clock: usize,
    pub rel: Rel,
    pub bound: u32,
}

/// A conjunction of clock atoms; empty means `true`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Guard(pub Vec<ClockAtom>);

impl Guard {
    pub fn always() -> Guard {
        Guard(Vec::new())
    }

    pub fn atom(clock: usize, rel: Rel, bound: u32) -> Guard {
        Guard(vec![ClockAtom { clock, rel, bound }])
    }

    pub fn holds(&self, valuation: &[Rational]) -> bool {
        self.0.iter().all(|a| a.rel.holds(valuation[a.clock], a.bound))
    }

    pub fn max_constant(&self) -> Option<u32> {
        self.0.iter().map(|a| a.bound).max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StoreSpec {
    None,
    Stack(Vec<String>),
    Counters(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StoreOp {
    Noop,
    Push(usize),
    Pop(usize),
    Empty,
    Update(Vec<i8>),
}

impl StoreOp {
    pub fn is_trivial(&self) -> bool {
        match self {
            StoreOp::Noop => true,
            StoreOp::Update(c) => c.iter().all(|&d| d == 0),
            _ => false,
        }
    }
}

/// Stack contents keep the top symbol at index 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StoreContent {
    Unit,
    Stack(Vec<usize>),
    Counters(Vec<u32>),
}

impl StoreContent {
    pub fn empty_for(spec: &StoreSpec) -> StoreContent {
        match spec {
            StoreSpec::None => StoreContent::Unit,
            StoreSpec::Stack(_) => StoreContent::Stack(Vec::new()),
            StoreSpec::Counters(n) => StoreContent::Counters(vec![0; *n]),
        }
    }

    /// Applies an operation; `None` when it blocks.
    pub fn apply(&self, op: &StoreOp) -> Option<StoreContent> {
        match (self, op) {
            (_, StoreOp::Noop) => Some(self.clone()),
            (StoreContent::Stack(u), StoreOp::Push(a)) => {
                let mut v = Vec::with_capacity(u.len() + 1);
                v.push(*a);
                v.extend_from_slice(u);
                Some(StoreContent::Stack(v))
            }
            (StoreContent::Stack(u), StoreOp::Pop(a)) => match u.first() {
                Some(top) if top == a => Some(StoreContent::Stack(u[1..].to_vec())),
                _ => None,
            },
            (StoreContent::Stack(u), StoreOp::Empty) => u.is_empty().then(|| self.clone()),
            (StoreContent::Counters(v), StoreOp::Update(c)) => {
                let mut out = Vec::with_capacity(v.len());
                for (x, d) in v.iter().zip(c) {
                    let y = *x as i64 + *d as i64;
                    if y < 0 {
                        return None;
                    }
                    out.push(y as u32);
                }
                Some(StoreContent::Counters(out))
            }
            (StoreContent::Unit, StoreOp::Update(c)) if c.is_empty() => Some(StoreContent::Unit),
            _ => None,
        }
    }

    /// Stack height or counter value of a one-counter store.
    pub fn height(&self) -> Option<usize> {
        match self {
            StoreContent::Stack(u) => Some(u.len()),
            StoreContent::Counters(v) if v.len() == 1 => Some(v[0] as usize),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub letter: String,
    pub guard: Guard,
    pub op: StoreOp,
    pub resets: Vec<usize>,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub alphabet: VisiblyAlphabet,
    pub store: StoreSpec,
    pub locations: Vec<String>,
    pub initial: BTreeSet<usize>,
    pub accepting: BTreeSet<usize>,
    pub clocks: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Automaton {
    pub fn new(alphabet: VisiblyAlphabet, store: StoreSpec) -> Automaton {
        Automaton {
            alphabet,
            store,
            locations: Vec::new(),
            initial: BTreeSet::new(),
            accepting: BTreeSet::new(),
            clocks: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Returns the index of the named location, creating it if needed.
    pub fn location(&mut self, name: &str) -> usize {
        match self.location_id(name) {
            Some(i) => i,
            None => {
                self.locations.push(name.to_string());
                self.locations.len() - 1
            }
        }
    }

    pub fn location_id(&self, name: &str) -> Option<usize> {
        self.locations.iter().position(|l| l == name)
    }

    pub fn clock(&mut self, name: &str) -> usize {
        match self.clock_id(name) {
            Some(i) => i,
            None => {
                self.clocks.push(name.to_string());
                self.clocks.len() - 1
            }
        }
    }

    pub fn clock_id(&self, name: &str) -> Option<usize> {
        self.clocks.iter().position(|c| c == name)
    }

    pub fn stack_symbol(&self, name: &str) -> Option<usize> {
        match &self.store {
            StoreSpec::Stack(g) => g.iter().position(|s| s == name),
            _ => None,
        }
    }

    pub fn set_initial(&mut self, loc: usize) {
        self.initial.insert(loc);
    }

    pub fn set_accepting(&mut self, loc: usize) {
        self.accepting.insert(loc);
    }

    pub fn add_edge(&mut self, from: usize, letter: &str, guard: Guard, op: StoreOp, resets: Vec<usize>, to: usize) {
        self.edges.push(Edge { from, letter: letter.to_string(), guard, op, resets, to });
    }

    /// Adds one edge per letter of `letters`.
    pub fn add_edges<'a>(
        &mut self,
        from: usize,
        letters: impl IntoIterator<Item = &'a String>,
        guard: &Guard,
        op: &StoreOp,
        resets: &[usize],
        to: usize,
    ) {
        for a in letters {
            self.add_edge(from, a, guard.clone(), op.clone(), resets.to_vec(), to);
        }
    }

    /// Largest constant in any guard.
    pub fn max_constant(&self) -> Option<u32> {
        self.edges.iter().filter_map(|e| e.guard.max_constant()).max()
    }

    pub fn describe_edge(&self, index: usize) -> String {
        let e = &self.edges[index];
        let name = |i: usize| self.locations.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        format!("edge {} ({} -{}-> {})", index, name(e.from), e.letter, name(e.to))
    }
}
