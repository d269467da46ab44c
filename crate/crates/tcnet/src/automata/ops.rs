use std::collections::BTreeSet;

use super::{Automaton, AutomatonError, Edge, LetterClass, StoreOp, StoreSpec};

/// Stack symbol used by [`visibly_lift`].
pub const LIFT_SYMBOL: &str = "c";

/// Disjoint union. Location names are kept when they do not clash and are
/// prefixed with `1.` / `2.` otherwise; clocks are shared by name.
pub fn union(a1: &Automaton, a2: &Automaton) -> Result<Automaton, AutomatonError> {
    if a1.alphabet != a2.alphabet {
        return Err(AutomatonError::AlphabetMismatch);
    }
    let store = match (&a1.store, &a2.store) {
        (StoreSpec::None, StoreSpec::None) => StoreSpec::None,
        (StoreSpec::Stack(g1), StoreSpec::Stack(g2)) => {
            let mut g = g1.clone();
            g.extend(g2.iter().filter(|s| !g1.contains(s)).cloned());
            StoreSpec::Stack(g)
        }
        (StoreSpec::Counters(n1), StoreSpec::Counters(n2)) if n1 == n2 => StoreSpec::Counters(*n1),
        _ => return Err(AutomatonError::StoreMismatch),
    };
    let names1: BTreeSet<&String> = a1.locations.iter().collect();
    let clash = a2.locations.iter().any(|l| names1.contains(l));
    let mut out = Automaton::new(a1.alphabet.clone(), store);
    for (tag, part) in [("1.", a1), ("2.", a2)] {
        let base = out.locations.len();
        for l in &part.locations {
            out.locations.push(if clash { format!("{tag}{l}") } else { l.clone() });
        }
        let clocks: Vec<usize> = part.clocks.iter().map(|c| out.clock(c)).collect();
        let symbols: Vec<usize> = match &part.store {
            StoreSpec::Stack(g) => g.iter().map(|s| out.stack_symbol(s).expect("merged stack alphabet")).collect(),
            _ => Vec::new(),
        };
        out.initial.extend(part.initial.iter().map(|l| l + base));
        out.accepting.extend(part.accepting.iter().map(|l| l + base));
        for e in &part.edges {
            let op = match &e.op {
                StoreOp::Push(s) => StoreOp::Push(symbols[*s]),
                StoreOp::Pop(s) => StoreOp::Pop(symbols[*s]),
                other => other.clone(),
            };
            let mut guard = e.guard.clone();
            for atom in &mut guard.0 {
                atom.clock = clocks[atom.clock];
            }
            out.edges.push(Edge {
                from: e.from + base,
                letter: e.letter.clone(),
                guard,
                op,
                resets: e.resets.iter().map(|x| clocks[*x]).collect(),
                to: e.to + base,
            });
        }
    }
    Ok(out)
}

/// Turns a store-free automaton into a visibly one-counter automaton with the
/// same language: calls push, returns pop or test for emptiness.
pub fn visibly_lift(aut: &Automaton) -> Result<Automaton, AutomatonError> {
    if aut.store != StoreSpec::None {
        return Err(AutomatonError::Unsupported("visibly_lift needs an automaton without store".into()));
    }
    let mut out = aut.clone();
    out.store = StoreSpec::Stack(vec![LIFT_SYMBOL.to_string()]);
    out.edges.clear();
    for e in &aut.edges {
        match aut.alphabet.class_of(&e.letter) {
            Some(LetterClass::Call) => out.edges.push(Edge { op: StoreOp::Push(0), ..e.clone() }),
            Some(LetterClass::Return) => {
                out.edges.push(Edge { op: StoreOp::Pop(0), ..e.clone() });
                out.edges.push(Edge { op: StoreOp::Empty, ..e.clone() });
            }
            _ => out.edges.push(Edge { op: StoreOp::Noop, ..e.clone() }),
        }
    }
    Ok(out)
}
