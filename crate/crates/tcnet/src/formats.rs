//! JSON documents for automata, timed words, channel machines, computations
//! and inclusion verdicts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::automata::{
    check_structure, validate, Automaton, ClockAtom, Edge, Guard, Rel, StoreOp, StoreSpec, TimedWord, VisiblyAlphabet,
};
use crate::channel::{ChannelConfig, ChannelMachine, Computation, Label};
use crate::inclusion::Verdict;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    /// Syntax and shape errors, positioned by the JSON reader.
    #[error("{0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> FormatError {
        FormatError::Json(e.to_string())
    }
}

fn invalid<T>(m: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Invalid(m.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphabetDoc {
    #[serde(default)]
    int: Vec<String>,
    #[serde(default)]
    call: Vec<String>,
    #[serde(default)]
    ret: Vec<String>,
}

/// `[clock, rel, bound]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "(String, String, u32)", into = "(String, String, u32)")]
struct AtomDoc {
    clock: String,
    rel: Rel,
    bound: u32,
}

impl TryFrom<(String, String, u32)> for AtomDoc {
    type Error = String;
    fn try_from((clock, rel, bound): (String, String, u32)) -> Result<AtomDoc, String> {
        let rel = Rel::parse(&rel).ok_or_else(|| format!("unknown relation `{rel}` in guard"))?;
        Ok(AtomDoc { clock, rel, bound })
    }
}

impl From<AtomDoc> for (String, String, u32) {
    fn from(a: AtomDoc) -> (String, String, u32) {
        (a.clock, a.rel.symbol().to_string(), a.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum OpDoc {
    Named(String),
    Update(Vec<i8>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    from: String,
    letter: String,
    #[serde(default)]
    guard: Vec<AtomDoc>,
    #[serde(default = "noop")]
    op: OpDoc,
    #[serde(default)]
    reset: Vec<String>,
    to: String,
}

fn noop() -> OpDoc {
    OpDoc::Named("noop".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonDoc {
    kind: String,
    alphabet: AlphabetDoc,
    #[serde(default)]
    clocks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stack_alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    locations: Vec<String>,
    initial: Vec<String>,
    accepting: Vec<String>,
    edges: Vec<EdgeDoc>,
}

/// The `kind` an automaton is written with.
pub fn kind_of(aut: &Automaton) -> String {
    let base = match &aut.store {
        StoreSpec::None => "ta",
        StoreSpec::Stack(g) if g.len() == 1 => "tocn",
        StoreSpec::Stack(_) => "tpda",
        StoreSpec::Counters(_) => "tcn",
    };
    let visibly = !aut.alphabet.call.is_empty() || !aut.alphabet.ret.is_empty();
    if visibly && !matches!(aut.store, StoreSpec::None) {
        format!("v{base}")
    } else {
        base.to_string()
    }
}

fn op_to_doc(aut: &Automaton, op: &StoreOp) -> OpDoc {
    let sym = |i: &usize| match &aut.store {
        StoreSpec::Stack(g) => g[*i].clone(),
        _ => i.to_string(),
    };
    match op {
        StoreOp::Noop => OpDoc::Named("noop".into()),
        StoreOp::Push(a) => OpDoc::Named(format!("push({})", sym(a))),
        StoreOp::Pop(a) => OpDoc::Named(format!("pop({})", sym(a))),
        StoreOp::Empty => OpDoc::Named("empty?".into()),
        StoreOp::Update(c) => OpDoc::Update(c.clone()),
    }
}

fn op_from_doc(store: &StoreSpec, op: &OpDoc, edge: usize) -> Result<StoreOp, FormatError> {
    let symbol = |name: &str| -> Result<usize, FormatError> {
        match store {
            StoreSpec::Stack(g) if name.is_empty() && g.len() == 1 => Ok(0),
            StoreSpec::Stack(g) => match g.iter().position(|s| s == name) {
                Some(i) => Ok(i),
                None => invalid(format!("edge {edge}: unknown stack symbol `{name}`")),
            },
            _ => invalid(format!("edge {edge}: stack operation without a stack")),
        }
    };
    let arg = |s: &str, head: &str| -> Option<String> {
        if s == head {
            return Some(String::new());
        }
        s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')').map(str::to_string)
    };
    match op {
        OpDoc::Update(c) => {
            if c.iter().any(|d| !(-1..=1).contains(d)) {
                return invalid(format!("edge {edge}: counter updates must be -1, 0 or 1"));
            }
            Ok(StoreOp::Update(c.clone()))
        }
        OpDoc::Named(s) if s == "noop" => Ok(StoreOp::Noop),
        OpDoc::Named(s) if s == "empty?" => Ok(StoreOp::Empty),
        OpDoc::Named(s) => {
            if let Some(a) = arg(s, "push") {
                Ok(StoreOp::Push(symbol(&a)?))
            } else if let Some(a) = arg(s, "pop") {
                Ok(StoreOp::Pop(symbol(&a)?))
            } else {
                invalid(format!("edge {edge}: unknown operation `{s}`"))
            }
        }
    }
}

fn to_doc(aut: &Automaton) -> AutomatonDoc {
    let names = |set: &BTreeSet<usize>| set.iter().map(|&l| aut.locations[l].clone()).collect();
    let edges = aut
        .edges
        .iter()
        .map(|e| EdgeDoc {
            from: aut.locations[e.from].clone(),
            letter: e.letter.clone(),
            guard: e
                .guard
                .0
                .iter()
                .map(|a| AtomDoc { clock: aut.clocks[a.clock].clone(), rel: a.rel, bound: a.bound })
                .collect(),
            op: op_to_doc(aut, &e.op),
            reset: e.resets.iter().map(|&x| aut.clocks[x].clone()).collect(),
            to: aut.locations[e.to].clone(),
        })
        .collect();
    AutomatonDoc {
        kind: kind_of(aut),
        alphabet: AlphabetDoc {
            int: aut.alphabet.internal.iter().cloned().collect(),
            call: aut.alphabet.call.iter().cloned().collect(),
            ret: aut.alphabet.ret.iter().cloned().collect(),
        },
        clocks: aut.clocks.clone(),
        stack_alphabet: match &aut.store {
            StoreSpec::Stack(g) => Some(g.clone()),
            _ => None,
        },
        dimension: match aut.store {
            StoreSpec::Counters(n) => Some(n),
            _ => None,
        },
        locations: aut.locations.clone(),
        initial: names(&aut.initial),
        accepting: names(&aut.accepting),
        edges,
    }
}

fn from_doc(doc: AutomatonDoc) -> Result<Automaton, FormatError> {
    let kind = doc.kind.as_str();
    let base = kind.strip_prefix('v').unwrap_or(kind);
    let store = match base {
        "ta" => StoreSpec::None,
        "tpda" | "tocn" => {
            let g = doc.stack_alphabet.clone().unwrap_or_else(|| vec!["c".into()]);
            if base == "tocn" && g.len() != 1 {
                return invalid("a one-counter automaton has exactly one stack symbol");
            }
            StoreSpec::Stack(g)
        }
        "tcn" => match doc.dimension {
            Some(n) => StoreSpec::Counters(n),
            None => return invalid("a counter net needs `dimension`"),
        },
        _ => return invalid(format!("unknown kind `{kind}`")),
    };
    let alphabet = VisiblyAlphabet::partitioned(doc.alphabet.int, doc.alphabet.call, doc.alphabet.ret);
    let mut aut = Automaton::new(alphabet, store);
    aut.locations = doc.locations;
    aut.clocks = doc.clocks;
    let loc = |aut: &Automaton, name: &str| match aut.location_id(name) {
        Some(l) => Ok(l),
        None => invalid(format!("unknown location `{name}`")),
    };
    for name in &doc.initial {
        aut.initial.insert(loc(&aut, name)?);
    }
    for name in &doc.accepting {
        aut.accepting.insert(loc(&aut, name)?);
    }
    for (i, e) in doc.edges.iter().enumerate() {
        let clock = |name: &str| match aut.clock_id(name) {
            Some(x) => Ok(x),
            None => invalid(format!("edge {i}: unknown clock `{name}`")),
        };
        let guard = e
            .guard
            .iter()
            .map(|a| Ok(ClockAtom { clock: clock(&a.clock)?, rel: a.rel, bound: a.bound }))
            .collect::<Result<Vec<_>, FormatError>>()?;
        let resets = e.reset.iter().map(|x| clock(x)).collect::<Result<Vec<_>, _>>()?;
        let edge = Edge {
            from: loc(&aut, &e.from)?,
            letter: e.letter.clone(),
            guard: Guard(guard),
            op: op_from_doc(&aut.store, &e.op, i)?,
            resets,
            to: loc(&aut, &e.to)?,
        };
        aut.edges.push(edge);
    }
    check_structure(&aut).map_err(|e| FormatError::Invalid(e.to_string()))?;
    if kind.starts_with('v') {
        let report = validate(&aut).map_err(|e| FormatError::Invalid(e.to_string()))?;
        if !report.is_visibly {
            return invalid(format!("kind `{kind}` requires a visibly automaton: {}", report.reasons.join("; ")));
        }
    }
    Ok(aut)
}

pub fn parse_automaton(text: &str) -> Result<Automaton, FormatError> {
    from_doc(serde_json::from_str(text)?)
}

/// One top-level field per line; lists of compound values get one element per line.
fn layout<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("serializable");
    let compact = |v: &serde_json::Value| serde_json::to_string(v).expect("serializable");
    let serde_json::Value::Object(fields) = &value else { return compact(&value) };
    let mut lines = Vec::new();
    for (k, v) in fields {
        let key = compact(&serde_json::Value::String(k.clone()));
        match v {
            serde_json::Value::Array(xs) if !xs.is_empty() && xs.iter().all(|x| x.is_array() || x.is_object()) => {
                let rows: Vec<String> = xs.iter().map(|x| format!("    {}", compact(x))).collect();
                lines.push(format!("  {key}: [\n{}\n  ]", rows.join(",\n")));
            }
            _ => lines.push(format!("  {key}: {}", compact(v))),
        }
    }
    format!("{{\n{}\n}}", lines.join(",\n"))
}

pub fn automaton_to_json(aut: &Automaton) -> String {
    layout(&to_doc(aut))
}

pub fn parse_word(text: &str) -> Result<TimedWord, FormatError> {
    let events: Vec<(String, Rational)> = serde_json::from_str(text)?;
    TimedWord::new(events).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Compact single-line rendering.
pub fn word_to_json(w: &TimedWord) -> String {
    serde_json::to_string(w.events()).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineDoc {
    states: Vec<String>,
    initial: String,
    #[serde(rename = "final")]
    final_state: String,
    messages: Vec<String>,
    transitions: Vec<(String, String, String)>,
}

pub fn parse_machine(text: &str) -> Result<ChannelMachine, FormatError> {
    let doc: MachineDoc = serde_json::from_str(text)?;
    let transitions = doc
        .transitions
        .into_iter()
        .map(|(s, l, t)| Ok((s, l.parse::<Label>().map_err(|e| FormatError::Invalid(e.to_string()))?, t)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    ChannelMachine::new(doc.states, doc.initial, doc.final_state, doc.messages, transitions)
        .map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn machine_to_json(c: &ChannelMachine) -> String {
    let doc = MachineDoc {
        states: c.states.clone(),
        initial: c.initial.clone(),
        final_state: c.final_state.clone(),
        messages: c.messages.clone(),
        transitions: c.transitions.iter().map(|(s, l, t)| (s.clone(), l.to_string(), t.clone())).collect(),
    };
    layout(&doc)
}

/// `[label, state, channel]`.
type StepDoc = (String, String, Vec<String>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComputationDoc {
    start: (String, Vec<String>),
    steps: Vec<StepDoc>,
}

pub fn parse_computation(text: &str) -> Result<Computation, FormatError> {
    let doc: ComputationDoc = serde_json::from_str(text)?;
    let steps = doc
        .steps
        .into_iter()
        .map(|(l, state, channel)| {
            let l = l.parse::<Label>().map_err(|e| FormatError::Invalid(e.to_string()))?;
            Ok((l, ChannelConfig { state, channel }))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(Computation { start: ChannelConfig { state: doc.start.0, channel: doc.start.1 }, steps })
}

pub fn computation_to_json(comp: &Computation) -> String {
    let doc = ComputationDoc {
        start: (comp.start.state.clone(), comp.start.channel.clone()),
        steps: comp.steps.iter().map(|(l, c)| (l.to_string(), c.state.clone(), c.channel.clone())).collect(),
    };
    layout(&doc)
}

/// The serialized form of an inclusion verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<(String, Rational)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub abstract_trace: Vec<String>,
}

impl VerdictDoc {
    pub fn from_verdict(v: &Verdict) -> VerdictDoc {
        match v {
            Verdict::Included => VerdictDoc { verdict: "included".into(), witness: None, abstract_trace: Vec::new() },
            Verdict::NotIncluded(c) => VerdictDoc {
                verdict: "not-included".into(),
                witness: Some(c.witness.events().to_vec()),
                abstract_trace: c.rendered.clone(),
            },
        }
    }

    pub fn witness(&self) -> Option<TimedWord> {
        self.witness.clone().and_then(|e| TimedWord::new(e).ok())
    }

    pub fn to_json(&self) -> String {
        layout(self)
    }

    pub fn parse(text: &str) -> Result<VerdictDoc, FormatError> {
        let doc: VerdictDoc = serde_json::from_str(text)?;
        match doc.verdict.as_str() {
            "included" | "not-included" => Ok(doc),
            other => invalid(format!("unknown verdict `{other}`")),
        }
    }
}
