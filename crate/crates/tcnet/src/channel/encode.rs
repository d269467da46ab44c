//! Timed encodings of computations in the fixed-length wildcard scheme.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ChannelError, ChannelMachine, Computation, Label, EMPTY, HASH, MINUS, PLUS, STAR};
use crate::automata::TimedWord;
use crate::rational::Rational;
use crate::wqo::subword_leq;

/// Placement of contents inside the unit interval after a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimestampStyle {
    /// Evenly spaced; new symbols bisect the gap they fall into.
    Even,
    /// Pseudo-random positions drawn from the seed.
    Seeded(u64),
}

/// The smallest `n` for which the computation is encodable.
pub fn minimal_n(comp: &Computation) -> usize {
    let mut balance: i64 = 0;
    let mut need: i64 = 0;
    for (l, _) in &comp.steps {
        match l {
            Label::Send(_) => {
                balance += 1;
                need = need.max(balance);
            }
            Label::Recv(_) => balance -= 1,
            Label::Empty => {}
        }
    }
    need as usize
}

struct Placer {
    rng: Option<ChaCha8Rng>,
}

impl Placer {
    /// `r` increasing points strictly inside `(lo, hi)`.
    fn points(&mut self, lo: Rational, hi: Rational, r: usize) -> Vec<Rational> {
        let width = hi - lo;
        match &mut self.rng {
            None => (1..=r).map(|i| lo + width * Rational::new(i as i64, r as i64 + 1)).collect(),
            Some(rng) => {
                let mut picks: Vec<i64> = Vec::new();
                while picks.len() < r {
                    let k = rng.gen_range(1..64);
                    if !picks.contains(&k) {
                        picks.push(k);
                    }
                }
                picks.sort_unstable();
                picks.into_iter().map(|k| lo + width * Rational::new(k, 64)).collect()
            }
        }
    }
}

type Content = Vec<(String, Rational)>;

/// Encodes a computation from `(s_I, ε)` to a configuration with state `s_F`
/// as a word of `L(C, n)`; configurations sit two time units apart from time 1.
pub fn encode_computation(
    machine: &ChannelMachine,
    comp: &Computation,
    n: usize,
    style: TimestampStyle,
) -> Result<TimedWord, ChannelError> {
    if comp.start != machine.initial_config() {
        return Err(ChannelError::InvalidStep { step: 0, reason: "the computation must start in (s_I, ε)".into() });
    }
    if comp.last().state != machine.final_state {
        return Err(ChannelError::NotFinal);
    }
    let mut placer = Placer {
        rng: match style {
            TimestampStyle::Even => None,
            TimestampStyle::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
    };
    let zero = Rational::zero();
    let one = Rational::one();
    let mut contents: Vec<Content> =
        vec![placer.points(zero, one, n).into_iter().map(|f| (HASH.to_string(), f)).collect()];
    let mut previous = &comp.start;
    for (index, (label, next)) in comp.steps.iter().enumerate() {
        let step = index + 1;
        let invalid = |reason: &str| ChannelError::InvalidStep { step, reason: reason.to_string() };
        if !machine.transitions.iter().any(|(s, l, t)| *s == previous.state && l == label && *t == next.state) {
            return Err(invalid("not a transition of the machine"));
        }
        let current = contents.last().expect("initial content");
        let k = previous.channel.len();
        let (msgs, hashes) = current.split_at(k);
        let mut image: Content = Vec::new();
        match label {
            Label::Send(m) => {
                let Some((first, rest)) = hashes.split_first() else { return Err(ChannelError::NTooSmall { step }) };
                image.extend(msgs.iter().cloned());
                image.push((m.clone(), first.1));
                image.extend(rest.iter().cloned());
            }
            Label::Recv(m) => {
                if previous.channel.first() != Some(m) {
                    return Err(invalid("the head of the channel is not the received message"));
                }
                let last = current.last().map_or(zero, |(_, f)| *f);
                image.extend(msgs[1..].iter().cloned());
                image.extend(hashes.iter().cloned());
                image.push((HASH.to_string(), placer.points(last, one, 1)[0]));
            }
            Label::Empty => {
                if !previous.channel.is_empty() {
                    return Err(invalid("empty? on a nonempty channel"));
                }
                image = current.clone();
            }
        }
        let split = image.iter().position(|(s, _)| s == HASH).unwrap_or(image.len());
        let (kept, wild) = image.split_at(split);
        let kept_syms: Vec<&String> = kept.iter().map(|(s, _)| s).collect();
        let target: Vec<&String> = next.channel.iter().collect();
        if !subword_leq(&kept_syms, &target) {
            return Err(invalid("the next channel does not extend the image of the transition"));
        }
        let mut placed: Vec<(String, Option<Rational>)> = Vec::with_capacity(target.len());
        let mut it = kept.iter().peekable();
        for sym in &target {
            match it.peek() {
                Some((s, f)) if s == *sym => {
                    placed.push(((*sym).clone(), Some(*f)));
                    it.next();
                }
                _ => placed.push(((*sym).clone(), None)),
            }
        }
        let ceiling = wild.first().map_or(one, |(_, f)| *f);
        let mut content: Content = Vec::with_capacity(placed.len() + wild.len());
        let mut i = 0;
        while i < placed.len() {
            if let Some(f) = placed[i].1 {
                content.push((placed[i].0.clone(), f));
                i += 1;
                continue;
            }
            let run_end = (i..placed.len()).find(|&j| placed[j].1.is_some()).unwrap_or(placed.len());
            let lo = content.last().map_or(zero, |(_, f)| *f);
            let hi = placed.get(run_end).and_then(|p| p.1).unwrap_or(ceiling);
            for (j, f) in (i..run_end).zip(placer.points(lo, hi, run_end - i)) {
                content.push((placed[j].0.clone(), f));
            }
            i = run_end;
        }
        content.extend(wild.iter().cloned());
        contents.push(content);
        previous = next;
    }
    let last = contents.len() - 1;
    let mut events: Vec<(String, Rational)> = Vec::new();
    for (j, (content, cfg)) in contents.iter().zip(comp.configs()).enumerate() {
        let t = Rational::from_int(1 + 2 * j as i64);
        events.push((cfg.state.clone(), t));
        for (sym, f) in content {
            let sym = if j == last {
                MINUS
            } else if j == 0 {
                PLUS
            } else {
                sym.as_str()
            };
            events.push((sym.to_string(), t + *f));
        }
        let label = if j == last { STAR.to_string() } else { comp.steps[j].0.to_string() };
        debug_assert!(j != 0 || label == EMPTY);
        events.push((label, t + one));
    }
    TimedWord::new(events).map_err(|e| ChannelError::InvalidStep { step: 0, reason: e.to_string() })
}
