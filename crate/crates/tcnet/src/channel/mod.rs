//! Channel machines with exact and insertion-error semantics, the timed
//! encoding of their computations, and automata recognizing (non-)encodings.

mod conditions;
mod corpus;
mod encode;
mod gadgets;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::automata::VisiblyAlphabet;
use crate::wqo::subword_leq;

pub use conditions::{check_conditions, check_conditions_ef, infer_n, member_lc, member_lef, Condition};
pub use corpus::{generate_corpus, random_computation, CorpusEntry, CorpusTag};
pub use encode::{encode_computation, minimal_n, TimestampStyle};
pub use gadgets::{gen_complement_ta, gen_condition10_vonca, gen_exclusion_net, gen_universality_automaton};

pub const PLUS: &str = "+";
pub const MINUS: &str = "-";
pub const HASH: &str = "#";
pub const STAR: &str = "*";
pub const EMPTY: &str = "empty?";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChannelError {
    #[error("invalid channel machine: {0}")]
    InvalidMachine(String),
    #[error("letter `{0}` is not in the encoding alphabet")]
    ForeignLetter(String),
    #[error("invalid label `{0}`")]
    BadLabel(String),
    #[error("step {step}: n is too small, no wildcard left for a send")]
    NTooSmall { step: usize },
    #[error("step {step}: {reason}")]
    InvalidStep { step: usize, reason: String },
    #[error("the computation must end in the final state")]
    NotFinal,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Send(String),
    Recv(String),
    Empty,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Send(m) => write!(f, "!{m}"),
            Label::Recv(m) => write!(f, "?{m}"),
            Label::Empty => f.write_str(EMPTY),
        }
    }
}

impl FromStr for Label {
    type Err = ChannelError;
    fn from_str(s: &str) -> Result<Label, ChannelError> {
        if s == EMPTY {
            Ok(Label::Empty)
        } else if let Some(m) = s.strip_prefix('!').filter(|m| !m.is_empty()) {
            Ok(Label::Send(m.to_string()))
        } else if let Some(m) = s.strip_prefix('?').filter(|m| !m.is_empty()) {
            Ok(Label::Recv(m.to_string()))
        } else {
            Err(ChannelError::BadLabel(s.to_string()))
        }
    }
}

/// `(s, x)`: a control state and the channel contents, head first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChannelConfig {
    pub state: String,
    pub channel: Vec<String>,
}

impl ChannelConfig {
    pub fn new(state: &str, channel: &[&str]) -> ChannelConfig {
        ChannelConfig { state: state.to_string(), channel: channel.iter().map(|m| m.to_string()).collect() }
    }
}

impl fmt::Display for ChannelConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.channel.is_empty() {
            write!(f, "({},ε)", self.state)
        } else {
            write!(f, "({},{})", self.state, self.channel.join(" "))
        }
    }
}

/// A sequence of labelled steps from `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computation {
    pub start: ChannelConfig,
    pub steps: Vec<(Label, ChannelConfig)>,
}

impl Computation {
    pub fn configs(&self) -> impl Iterator<Item = &ChannelConfig> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|(_, c)| c))
    }

    pub fn last(&self) -> &ChannelConfig {
        self.steps.last().map_or(&self.start, |(_, c)| c)
    }

    pub fn is_error_free(&self, machine: &ChannelMachine) -> bool {
        let mut previous = &self.start;
        for (l, c) in &self.steps {
            if !machine.step_exact(previous, l).contains(c) {
                return false;
            }
            previous = c;
        }
        true
    }

    pub fn is_valid(&self, machine: &ChannelMachine) -> bool {
        let mut previous = &self.start;
        for (l, c) in &self.steps {
            if !machine.step_faulty_check(previous, l, c) {
                return false;
            }
            previous = c;
        }
        true
    }
}

impl fmt::Display for Computation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for (l, c) in &self.steps {
            write!(f, " -{l}-> {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Faulty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_channel_len: usize,
    pub max_depth: usize,
}

/// `(S, s_I, M, Δ)` together with the target state `s_F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelMachine {
    pub states: Vec<String>,
    pub initial: String,
    pub final_state: String,
    pub messages: Vec<String>,
    pub transitions: Vec<(String, Label, String)>,
}

impl ChannelMachine {
    pub fn new(
        states: Vec<String>,
        initial: String,
        final_state: String,
        messages: Vec<String>,
        transitions: Vec<(String, Label, String)>,
    ) -> Result<ChannelMachine, ChannelError> {
        let m = ChannelMachine { states, initial, final_state, messages, transitions };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), ChannelError> {
        let bad = |s: String| Err(ChannelError::InvalidMachine(s));
        let has_state = |s: &String| self.states.contains(s);
        if !has_state(&self.initial) || !has_state(&self.final_state) {
            return bad("initial and final states must be states".into());
        }
        if self.initial == self.final_state {
            return bad("initial and final states must differ".into());
        }
        let mut names: BTreeSet<String> = BTreeSet::new();
        let labels = self.labels().into_iter().map(|l| l.to_string());
        let fresh = [PLUS, MINUS, HASH, STAR].map(String::from);
        for name in self.states.iter().cloned().chain(self.messages.iter().cloned()).chain(labels).chain(fresh) {
            if name.is_empty() || !names.insert(name.clone()) {
                return bad(format!("symbol `{name}` is empty or used twice"));
            }
        }
        for (s, l, t) in &self.transitions {
            if !has_state(s) || !has_state(t) {
                return bad(format!("transition ({s},{l},{t}) uses an unknown state"));
            }
            if let Label::Send(m) | Label::Recv(m) = l {
                if !self.messages.contains(m) {
                    return bad(format!("transition ({s},{l},{t}) uses an unknown message"));
                }
            }
            if *t == self.initial {
                return bad("the initial state must not have incoming transitions".into());
            }
            if *s == self.initial && *l != Label::Empty {
                return bad("transitions leaving the initial state must be labelled empty?".into());
            }
        }
        Ok(())
    }

    /// All labels: `empty?`, then `!m` and `?m` for every message.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = vec![Label::Empty];
        out.extend(self.messages.iter().map(|m| Label::Send(m.clone())));
        out.extend(self.messages.iter().map(|m| Label::Recv(m.clone())));
        out
    }

    pub fn label_names(&self) -> Vec<String> {
        self.labels().iter().map(Label::to_string).collect()
    }

    /// Internal letters are states (except `s_I`), messages, labels and `#`;
    /// `s_I` and `+` are calls; `-` and `*` are returns.
    pub fn encoding_alphabet(&self) -> VisiblyAlphabet {
        let mut internal: BTreeSet<String> = self.states.iter().filter(|s| **s != self.initial).cloned().collect();
        internal.extend(self.messages.iter().cloned());
        internal.extend(self.label_names());
        internal.insert(HASH.to_string());
        VisiblyAlphabet {
            internal,
            call: [self.initial.clone(), PLUS.to_string()].into_iter().collect(),
            ret: [MINUS.to_string(), STAR.to_string()].into_iter().collect(),
        }
    }

    pub fn initial_config(&self) -> ChannelConfig {
        ChannelConfig { state: self.initial.clone(), channel: Vec::new() }
    }

    fn targets<'a>(&'a self, state: &'a str, label: &'a Label) -> impl Iterator<Item = &'a String> + 'a {
        self.transitions.iter().filter(move |(s, l, _)| s == state && l == label).map(|(_, _, t)| t)
    }

    /// `→_C`: the error-free successors.
    pub fn step_exact(&self, cfg: &ChannelConfig, label: &Label) -> BTreeSet<ChannelConfig> {
        let channel = match label {
            Label::Send(m) => {
                let mut x = cfg.channel.clone();
                x.push(m.clone());
                Some(x)
            }
            Label::Recv(m) => (cfg.channel.first() == Some(m)).then(|| cfg.channel[1..].to_vec()),
            Label::Empty => cfg.channel.is_empty().then(Vec::new),
        };
        let Some(channel) = channel else { return BTreeSet::new() };
        self.targets(&cfg.state, label).map(|t| ChannelConfig { state: t.clone(), channel: channel.clone() }).collect()
    }

    /// Decides `⟨cfg1, label, cfg2⟩ ∈ ⇝_C` without enumerating intermediate channels.
    pub fn step_faulty_check(&self, cfg1: &ChannelConfig, label: &Label, cfg2: &ChannelConfig) -> bool {
        if !self.targets(&cfg1.state, label).any(|t| *t == cfg2.state) {
            return false;
        }
        let (x1, x2) = (&cfg1.channel, &cfg2.channel);
        match label {
            Label::Send(m) => {
                let mut xm = x1.clone();
                xm.push(m.clone());
                subword_leq(&xm, x2)
            }
            Label::Recv(m) => {
                let mut mx = vec![m.clone()];
                mx.extend(x2.iter().cloned());
                subword_leq(x1, &mx)
            }
            Label::Empty => x1.is_empty(),
        }
    }

    fn words_up_to(&self, len: usize) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &frontier {
                for m in &self.messages {
                    let mut v: Vec<String> = w.clone();
                    v.push(m.clone());
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Breadth-first search for a computation from `(s_I, ε)` to `target`
    /// within the bounds; `None` means absent within bounds.
    pub fn reachable(&self, target: &str, mode: Mode, bounds: Bounds) -> Option<Computation> {
        let start = self.initial_config();
        if start.state == target {
            return Some(Computation { start, steps: Vec::new() });
        }
        let channels = match mode {
            Mode::Exact => Vec::new(),
            Mode::Faulty => self.words_up_to(bounds.max_channel_len),
        };
        let mut parent: HashMap<ChannelConfig, Option<(ChannelConfig, Label)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((cfg, depth)) = queue.pop_front() {
            if depth == bounds.max_depth {
                continue;
            }
            let mut successors: Vec<(Label, ChannelConfig)> = Vec::new();
            for label in self.labels() {
                match mode {
                    Mode::Exact => {
                        successors.extend(self.step_exact(&cfg, &label).into_iter().map(|c| (label.clone(), c)))
                    }
                    Mode::Faulty => {
                        for t in self.targets(&cfg.state, &label).collect::<BTreeSet<_>>() {
                            for x in &channels {
                                let c = ChannelConfig { state: t.clone(), channel: x.clone() };
                                if self.step_faulty_check(&cfg, &label, &c) {
                                    successors.push((label.clone(), c));
                                }
                            }
                        }
                    }
                }
            }
            for (label, next) in successors {
                if next.channel.len() > bounds.max_channel_len || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((cfg.clone(), label)));
                if next.state == target {
                    let mut steps = Vec::new();
                    let mut at = next;
                    while let Some(Some((prev, l))) = parent.get(&at) {
                        steps.push((l.clone(), at.clone()));
                        at = prev.clone();
                    }
                    steps.reverse();
                    return Some(Computation { start: at, steps });
                }
                queue.push_back((next, depth + 1));
            }
        }
        None
    }
}
