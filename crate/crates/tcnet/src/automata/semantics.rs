use std::collections::{BTreeSet, HashMap};

use super::{Automaton, AutomatonError, StoreContent, TimedWord};
use crate::rational::Rational;

/// A state `(l, ν, u)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConcreteState {
    pub loc: usize,
    pub clocks: Vec<Rational>,
    pub store: StoreContent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStep {
    pub source: ConcreteState,
    pub delay: Rational,
    pub letter: String,
    pub edge: usize,
    pub target: ConcreteState,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Run {
    pub steps: Vec<RunStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub accepted: bool,
    pub witness: Option<Run>,
}

pub fn initial_states(aut: &Automaton) -> Vec<ConcreteState> {
    aut.initial
        .iter()
        .map(|&loc| ConcreteState {
            loc,
            clocks: vec![Rational::zero(); aut.clocks.len()],
            store: StoreContent::empty_for(&aut.store),
        })
        .collect()
}

fn fire(aut: &Automaton, state: &ConcreteState, delay: Rational, edge: usize) -> Option<ConcreteState> {
    let e = &aut.edges[edge];
    let mut clocks: Vec<Rational> = state.clocks.iter().map(|v| *v + delay).collect();
    if !e.guard.holds(&clocks) {
        return None;
    }
    let store = state.store.apply(&e.op)?;
    for &x in &e.resets {
        clocks[x] = Rational::zero();
    }
    Some(ConcreteState { loc: e.to, clocks, store })
}

/// All successors of `state` after waiting `delay` and reading `letter`.
pub fn step(aut: &Automaton, state: &ConcreteState, delay: Rational, letter: &str) -> BTreeSet<ConcreteState> {
    (0..aut.edges.len())
        .filter(|&i| aut.edges[i].from == state.loc && aut.edges[i].letter == letter)
        .filter_map(|i| fire(aut, state, delay, i))
        .collect()
}

fn edge_index(aut: &Automaton) -> HashMap<(usize, &str), Vec<usize>> {
    let mut index: HashMap<(usize, &str), Vec<usize>> = HashMap::new();
    for (i, e) in aut.edges.iter().enumerate() {
        index.entry((e.from, e.letter.as_str())).or_default().push(i);
    }
    index
}

struct Node {
    state: ConcreteState,
    back: Option<(usize, usize)>,
}

/// Breadth-first state-set simulation of `aut` on `word`.
pub fn membership(aut: &Automaton, word: &TimedWord) -> Result<Membership, AutomatonError> {
    for (a, _) in word.events() {
        if !aut.alphabet.contains(a) {
            return Err(AutomatonError::UnknownLetter(a.clone()));
        }
    }
    let index = edge_index(aut);
    let mut layers: Vec<Vec<Node>> = Vec::with_capacity(word.len() + 1);
    layers.push(initial_states(aut).into_iter().map(|state| Node { state, back: None }).collect());
    let mut previous_time = Rational::zero();
    for (letter, t) in word.events() {
        let delay = *t - previous_time;
        previous_time = *t;
        let current = layers.last().expect("nonempty layers");
        let mut next: Vec<Node> = Vec::new();
        let mut seen: HashMap<ConcreteState, usize> = HashMap::new();
        for (pi, node) in current.iter().enumerate() {
            let Some(edges) = index.get(&(node.state.loc, letter.as_str())) else { continue };
            for &ei in edges {
                if let Some(succ) = fire(aut, &node.state, delay, ei) {
                    if !seen.contains_key(&succ) {
                        seen.insert(succ.clone(), next.len());
                        next.push(Node { state: succ, back: Some((pi, ei)) });
                    }
                }
            }
        }
        let dead = next.is_empty();
        layers.push(next);
        if dead {
            return Ok(Membership { accepted: false, witness: None });
        }
    }
    let last = layers.last().expect("nonempty layers");
    let Some(mut at) = last.iter().position(|n| aut.accepting.contains(&n.state.loc)) else {
        return Ok(Membership { accepted: false, witness: None });
    };
    let mut steps = Vec::with_capacity(word.len());
    for depth in (1..layers.len()).rev() {
        let node = &layers[depth][at];
        let (pi, ei) = node.back.expect("non-initial node has a predecessor");
        let source = layers[depth - 1][pi].state.clone();
        let (letter, t) = &word.events()[depth - 1];
        let before = if depth >= 2 { word.time(depth - 2) } else { Rational::zero() };
        steps.push(RunStep {
            source,
            delay: *t - before,
            letter: letter.clone(),
            edge: ei,
            target: node.state.clone(),
        });
        at = pi;
    }
    steps.reverse();
    Ok(Membership { accepted: true, witness: Some(Run { steps }) })
}

impl Run {
    /// Checks that the run chains and that every step is a transition of `aut`.
    pub fn is_valid_for(&self, aut: &Automaton) -> bool {
        let mut previous: Option<&ConcreteState> = None;
        for s in &self.steps {
            if let Some(p) = previous {
                if p != &s.source {
                    return false;
                }
            } else if !initial_states(aut).contains(&s.source) {
                return false;
            }
            if !step(aut, &s.source, s.delay, &s.letter).contains(&s.target) {
                return false;
            }
            previous = Some(&s.target);
        }
        previous.is_some_and(|t| aut.accepting.contains(&t.loc))
    }
}
