//! Seeded samples of timed words around `L(C)`: encodings, their mutants and
//! random words.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{encode_computation, minimal_n, ChannelConfig, ChannelMachine, Computation, Label, TimestampStyle};
use crate::automata::TimedWord;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorpusTag {
    ValidEf,
    ValidFaulty,
    Mutant,
    Random,
}

impl fmt::Display for CorpusTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusTag::ValidEf => "valid-ef",
            CorpusTag::ValidFaulty => "valid-faulty",
            CorpusTag::Mutant => "mutant",
            CorpusTag::Random => "random",
        })
    }
}

impl FromStr for CorpusTag {
    type Err = String;
    fn from_str(s: &str) -> Result<CorpusTag, String> {
        match s {
            "valid-ef" => Ok(CorpusTag::ValidEf),
            "valid-faulty" => Ok(CorpusTag::ValidFaulty),
            "mutant" => Ok(CorpusTag::Mutant),
            "random" => Ok(CorpusTag::Random),
            _ => Err(format!("unknown corpus tag `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub tag: CorpusTag,
    pub word: TimedWord,
}

/// A random computation from `(s_I, ε)` ending in `s_F`, with insertion
/// errors after some steps when `faults` is set.
pub fn random_computation<R: Rng>(
    c: &ChannelMachine,
    rng: &mut R,
    faults: bool,
    max_steps: usize,
) -> Option<Computation> {
    for _ in 0..200 {
        let mut cfg = c.initial_config();
        let start = cfg.clone();
        let mut steps: Vec<(Label, ChannelConfig)> = Vec::new();
        while steps.len() < max_steps {
            let mut options: Vec<(Label, ChannelConfig)> = Vec::new();
            for l in c.labels() {
                options.extend(c.step_exact(&cfg, &l).into_iter().map(|n| (l.clone(), n)));
            }
            let Some((l, mut next)) = options.choose(rng).cloned() else { break };
            if faults && !c.messages.is_empty() && rng.gen_bool(0.3) {
                for _ in 0..rng.gen_range(1..=2) {
                    let at = rng.gen_range(0..=next.channel.len());
                    next.channel.insert(at, c.messages.choose(rng).expect("messages").clone());
                }
            }
            steps.push((l, next.clone()));
            cfg = next;
            if cfg.state == c.final_state {
                return Some(Computation { start, steps });
            }
        }
    }
    None
}

fn encode_random<R: Rng>(c: &ChannelMachine, comp: &Computation, rng: &mut R) -> Option<TimedWord> {
    let n = minimal_n(comp) + rng.gen_range(0..=1);
    let style = if rng.gen_bool(0.5) { TimestampStyle::Even } else { TimestampStyle::Seeded(rng.gen()) };
    encode_computation(c, comp, n, style).ok()
}

fn mutate<R: Rng>(c: &ChannelMachine, w: &TimedWord, rng: &mut R) -> Option<TimedWord> {
    let letters = c.encoding_alphabet().letters();
    let mut ev = w.events().to_vec();
    let i = rng.gen_range(0..ev.len());
    match rng.gen_range(0..6) {
        0 => ev[i].0 = letters.choose(rng).expect("letters").clone(),
        1 => {
            ev.remove(i);
        }
        2 => {
            let e = ev[i].clone();
            ev.insert(i, e);
        }
        3 if i + 1 < ev.len() => {
            let (a, b) = (ev[i].0.clone(), ev[i + 1].0.clone());
            ev[i].0 = b;
            ev[i + 1].0 = a;
        }
        4 => {
            let shift = Rational::new(*[-1, 1].choose(rng).expect("sign"), *[20, 40, 1].choose(rng).expect("scale"));
            ev[i].1 = ev[i].1 + shift;
        }
        _ => {
            let at = rng.gen_range(0..=ev.len());
            let lo = if at == 0 { Rational::zero() } else { ev[at - 1].1 };
            let hi = ev.get(at).map_or(lo + Rational::one(), |e| e.1);
            ev.insert(at, (letters.choose(rng).expect("letters").clone(), Rational::midpoint(lo, hi)));
        }
    }
    if ev.is_empty() {
        return None;
    }
    TimedWord::new(ev).ok().filter(|m| m != w)
}

fn random_word<R: Rng>(c: &ChannelMachine, rng: &mut R) -> TimedWord {
    let letters = c.encoding_alphabet().letters();
    let len = rng.gen_range(1..=12);
    let mut t = Rational::new(rng.gen_range(0..4), 2);
    let mut ev = Vec::with_capacity(len);
    for _ in 0..len {
        ev.push((letters.choose(rng).expect("letters").clone(), t));
        t = t + Rational::new(rng.gen_range(0..=4), 4);
    }
    TimedWord::new(ev).expect("monotone by construction")
}

/// `count` tagged words drawn deterministically from `seed`.
pub fn generate_corpus(c: &ChannelMachine, seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut valid: Vec<TimedWord> = Vec::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let roll = rng.gen_range(0..20);
        let entry = if roll < 6 {
            let faults = roll >= 3;
            random_computation(c, &mut rng, faults, 12).and_then(|comp| {
                let tag = if comp.is_error_free(c) { CorpusTag::ValidEf } else { CorpusTag::ValidFaulty };
                encode_random(c, &comp, &mut rng).map(|word| CorpusEntry { tag, word })
            })
        } else if roll < 15 {
            valid
                .choose(&mut rng)
                .and_then(|w| mutate(c, w, &mut rng))
                .map(|word| CorpusEntry { tag: CorpusTag::Mutant, word })
        } else {
            Some(CorpusEntry { tag: CorpusTag::Random, word: random_word(c, &mut rng) })
        };
        if let Some(e) = entry {
            if matches!(e.tag, CorpusTag::ValidEf | CorpusTag::ValidFaulty) {
                valid.push(e.word.clone());
            }
            out.push(e);
        }
    }
    out
}
