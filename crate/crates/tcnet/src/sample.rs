//! Random timed words: uniform ones and ones read along accepting runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::{initial_states, step, Automaton, ConcreteState, TimedWord};
use crate::rational::Rational;

/// Timestamps are multiples of `1/denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleOptions {
    pub max_len: usize,
    pub denominator: i64,
    /// Largest delay between two letters.
    pub max_delay: i64,
}

impl Default for SampleOptions {
    fn default() -> SampleOptions {
        SampleOptions { max_len: 8, denominator: 8, max_delay: 3 }
    }
}

fn random_delay<R: Rng>(rng: &mut R, o: &SampleOptions) -> Rational {
    Rational::new(rng.gen_range(0..=o.max_delay * o.denominator), o.denominator)
}

/// A word of length `1..=max_len` with letters drawn uniformly.
pub fn random_word<R: Rng>(aut: &Automaton, rng: &mut R, o: &SampleOptions) -> TimedWord {
    let letters = aut.alphabet.letters();
    let len = rng.gen_range(1..=o.max_len);
    let mut t = Rational::zero();
    let mut events = Vec::with_capacity(len);
    for _ in 0..len {
        t = t + random_delay(rng, o);
        events.push((letters.choose(rng).expect("nonempty alphabet").clone(), t));
    }
    TimedWord::new(events).expect("monotone")
}

/// A word read along a random accepting run, if one is found in a few tries.
pub fn random_accepted_word<R: Rng>(aut: &Automaton, rng: &mut R, o: &SampleOptions) -> Option<TimedWord> {
    let letters = aut.alphabet.letters();
    let starts = initial_states(aut);
    for _ in 0..50 {
        let mut state = starts.choose(rng).cloned()?;
        let target = rng.gen_range(1..=o.max_len);
        let mut t = Rational::zero();
        let mut events = Vec::new();
        let mut last_accepting: Option<usize> = None;
        'walk: while events.len() < target {
            for _ in 0..40 {
                let delay = random_delay(rng, o);
                let letter = letters.choose(rng).expect("nonempty alphabet");
                let next: Vec<ConcreteState> = step(aut, &state, delay, letter).into_iter().collect();
                if let Some(n) = next.choose(rng) {
                    t = t + delay;
                    events.push((letter.clone(), t));
                    state = n.clone();
                    if aut.accepting.contains(&state.loc) {
                        last_accepting = Some(events.len());
                    }
                    continue 'walk;
                }
            }
            break;
        }
        if let Some(k) = last_accepting {
            events.truncate(k);
            return TimedWord::new(events).ok();
        }
    }
    None
}
