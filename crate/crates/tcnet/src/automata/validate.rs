use std::collections::BTreeSet;
use std::fmt;

use super::{Automaton, LetterClass, StoreOp, StoreSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ValidationError {
    pub edge: Option<usize>,
    pub message: String,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.edge {
            Some(i) => write!(f, "edge {i}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn fail<T>(edge: Option<usize>, message: impl Into<String>) -> Result<T, ValidationError> {
    Err(ValidationError { edge, message: message.into() })
}

/// Which automaton classes an automaton belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassReport {
    pub is_timed_automaton: bool,
    pub is_tpda: bool,
    pub is_one_counter: bool,
    pub is_counter_net: bool,
    pub is_visibly: bool,
    pub is_deterministic_clockless_visibly_net: bool,
    pub is_one_clock: bool,
    pub reasons: Vec<String>,
}

/// Rejects dangling references and operations that do not fit the store.
pub fn check_structure(aut: &Automaton) -> Result<(), ValidationError> {
    let a = &aut.alphabet;
    if a.internal.iter().chain(&a.call).chain(&a.ret).next().is_none() {
        return fail(None, "alphabet is empty");
    }
    if a.internal.intersection(&a.call).next().is_some()
        || a.internal.intersection(&a.ret).next().is_some()
        || a.call.intersection(&a.ret).next().is_some()
    {
        return fail(None, "alphabet classes overlap");
    }
    let unique = |names: &[String]| names.iter().collect::<BTreeSet<_>>().len() == names.len();
    if !unique(&aut.locations) {
        return fail(None, "duplicate location name");
    }
    if !unique(&aut.clocks) {
        return fail(None, "duplicate clock name");
    }
    let n = aut.locations.len();
    if let Some(l) = aut.initial.iter().chain(&aut.accepting).find(|&&l| l >= n) {
        return fail(None, format!("unknown location #{l} in initial/accepting set"));
    }
    match &aut.store {
        StoreSpec::Stack(g) if g.is_empty() => return fail(None, "empty stack alphabet"),
        StoreSpec::Counters(0) => return fail(None, "counter dimension must be positive"),
        _ => {}
    }
    for (i, e) in aut.edges.iter().enumerate() {
        let at = Some(i);
        if e.from >= n || e.to >= n {
            return fail(at, "dangling location");
        }
        if !a.contains(&e.letter) {
            return fail(at, format!("letter `{}` not in alphabet", e.letter));
        }
        if let Some(x) =
            e.guard.0.iter().map(|g| g.clock).chain(e.resets.iter().copied()).find(|&x| x >= aut.clocks.len())
        {
            return fail(at, format!("unknown clock #{x}"));
        }
        let ok = match (&aut.store, &e.op) {
            (_, StoreOp::Noop) => true,
            (StoreSpec::Stack(g), StoreOp::Push(s) | StoreOp::Pop(s)) => *s < g.len(),
            (StoreSpec::Stack(_), StoreOp::Empty) => true,
            (StoreSpec::Counters(d), StoreOp::Update(c)) => c.len() == *d && c.iter().all(|x| (-1..=1).contains(x)),
            (StoreSpec::None, StoreOp::Update(c)) => c.is_empty(),
            _ => false,
        };
        if !ok {
            return fail(at, format!("operation {:?} does not fit the store", e.op));
        }
    }
    Ok(())
}

fn op_class(op: &StoreOp) -> Option<LetterClass> {
    match op {
        StoreOp::Noop => Some(LetterClass::Internal),
        StoreOp::Push(_) => Some(LetterClass::Call),
        StoreOp::Pop(_) | StoreOp::Empty => Some(LetterClass::Return),
        StoreOp::Update(c) => match c.as_slice() {
            c if c.iter().all(|&d| d == 0) => Some(LetterClass::Internal),
            [1] => Some(LetterClass::Call),
            [-1] => Some(LetterClass::Return),
            _ => None,
        },
    }
}

fn is_pop(op: &StoreOp) -> bool {
    matches!(op, StoreOp::Pop(_)) || *op == StoreOp::Update(vec![-1])
}

pub fn validate(aut: &Automaton) -> Result<ClassReport, ValidationError> {
    check_structure(aut)?;
    let mut r = ClassReport::default();
    let has_empty = aut.edges.iter().any(|e| e.op == StoreOp::Empty);

    r.is_timed_automaton = aut.edges.iter().all(|e| e.op.is_trivial());
    r.is_tpda = matches!(aut.store, StoreSpec::None | StoreSpec::Stack(_));
    r.is_one_counter = match &aut.store {
        StoreSpec::Stack(g) => g.len() == 1,
        StoreSpec::Counters(d) => *d == 1,
        StoreSpec::None => false,
    };
    r.is_counter_net = match &aut.store {
        StoreSpec::None | StoreSpec::Counters(_) => true,
        StoreSpec::Stack(g) => g.len() == 1 && !has_empty,
    };
    if !r.is_counter_net && has_empty {
        r.reasons.push("zero tests (empty?) are not allowed in nets".into());
    }

    let visibly_store = !matches!(aut.store, StoreSpec::Counters(d) if d > 1);
    let mismatch = aut.edges.iter().position(|e| aut.alphabet.class_of(&e.letter) != op_class(&e.op));
    r.is_visibly = visibly_store && mismatch.is_none();
    if let Some(i) = mismatch {
        r.reasons.push(format!("{} does not match its letter class", aut.describe_edge(i)));
    }
    r.is_one_clock = aut.clocks.len() == 1;

    r.is_deterministic_clockless_visibly_net = if !aut.clocks.is_empty() {
        r.reasons.push("determinism is only defined for clockless automata".into());
        false
    } else if !(r.is_visibly && r.is_one_counter) {
        r.reasons.push("determinism is only defined for visibly one-counter automata".into());
        false
    } else {
        let mut conflict = None;
        'outer: for (i, e) in aut.edges.iter().enumerate() {
            for (j, f) in aut.edges.iter().enumerate().skip(i + 1) {
                if e.from == f.from && e.letter == f.letter {
                    let pair = (is_pop(&e.op) && f.op == StoreOp::Empty) || (is_pop(&f.op) && e.op == StoreOp::Empty);
                    if !pair {
                        conflict = Some((i, j));
                        break 'outer;
                    }
                }
            }
        }
        if let Some((i, j)) = conflict {
            r.reasons.push(format!("{} and {} share source and letter", aut.describe_edge(i), aut.describe_edge(j)));
        }
        conflict.is_none()
    };
    Ok(r)
}
