//! Independent oracles and random generators shared by the test targets.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use tcnet::automata::TimedWord;
use tcnet::mtl::{Formula, Interval};
use tcnet::regionwords::{delay_grid, BState, Item, JointConfiguration, Product, RegionWord};
use tcnet::Rational;

/// All strictly increasing maps `0..k -> 0..n`.
pub fn increasing_maps(k: usize, n: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut m in increasing_maps(k - 1, last) {
            m.push(last);
            out.push(m);
        }
    }
    out
}

/// All injective maps `0..k -> 0..n`.
pub fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(k, n, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, n, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

pub fn brute_embed<T>(leq: &dyn Fn(&T, &T) -> bool, s: &[T], t: &[T]) -> bool {
    increasing_maps(s.len(), t.len()).iter().any(|f| f.iter().enumerate().all(|(i, &j)| leq(&s[i], &t[j])))
}

pub fn brute_subset<T>(leq: &dyn Fn(&T, &T) -> bool, a: &[T], b: &[T]) -> bool {
    injections(a.len(), b.len()).iter().any(|f| f.iter().enumerate().all(|(i, &j)| leq(&a[i], &b[j])))
}

/// The domination order on region words by exhaustive search.
pub fn brute_dominated(w1: &RegionWord, w2: &RegionWord) -> bool {
    if w1.cmax != w2.cmax || w1.a_loc != w2.a_loc {
        return false;
    }
    let item = |x: &Item, y: &Item| {
        x.owner == y.owner && x.reg == y.reg && x.counters.iter().zip(&y.counters).all(|(a, b)| a <= b)
    };
    let block = |s: &Vec<Item>, t: &Vec<Item>| brute_subset(&item, s, t);
    brute_embed(&block, &w1.blocks(), &w2.blocks())
}

/// A value `k/d` in `[0, max)` with `d <= 12`.
pub fn random_value<R: Rng>(rng: &mut R, max: i64) -> Rational {
    let d = rng.gen_range(1..=12);
    Rational::new(rng.gen_range(0..max * d), d)
}

pub fn random_joint<R: Rng>(p: &Product<'_>, rng: &mut R) -> JointConfiguration {
    let max = p.cmax as i64 + 2;
    let a_loc = rng.gen_range(0..p.a.locations.len());
    let a_clocks = (0..p.a.clocks.len()).map(|_| random_value(rng, max)).collect();
    let b = (0..rng.gen_range(0..=3))
        .map(|_| BState {
            loc: rng.gen_range(0..p.b.locations.len()),
            clock: random_value(rng, max),
            counters: (0..p.dim).map(|_| rng.gen_range(0..=2)).collect(),
        })
        .collect();
    JointConfiguration { a_loc, a_clocks, b }
}

/// A configuration with the same encoding as `c` but different clock values.
pub fn perturb<R: Rng>(c: &JointConfiguration, cmax: u32, rng: &mut R) -> JointConfiguration {
    let bound = Rational::from_int(cmax as i64);
    let values = c.a_clocks.iter().chain(c.b.iter().map(|s| &s.clock));
    let fracs: BTreeSet<Rational> = values.filter(|v| **v <= bound && !v.is_integer()).map(|v| v.fract()).collect();
    let rho = fracs.len() as i64;
    let d = rng.gen_range(rho + 1..=12.max(rho + 1));
    let mut numerators: Vec<i64> = (1..d).collect();
    numerators.shuffle(rng);
    let mut chosen: Vec<i64> = numerators[..rho as usize].to_vec();
    chosen.sort();
    let remap: BTreeMap<Rational, Rational> =
        fracs.iter().zip(&chosen).map(|(f, n)| (*f, Rational::new(*n, d))).collect();
    let mut moved = |v: Rational| {
        if v > bound {
            bound + Rational::new(rng.gen_range(1..=36), 12)
        } else if v.is_integer() {
            v
        } else {
            Rational::from_int(v.floor()) + remap[&v.fract()]
        }
    };
    let a_clocks = c.a_clocks.iter().map(|v| moved(*v)).collect();
    let b = c.b.iter().map(|s| BState { clock: moved(s.clock), ..s.clone() }).collect();
    JointConfiguration { a_loc: c.a_loc, a_clocks, b }
}

/// Encodings of all concrete successors over the boundary-midpoint delays.
pub fn grid_successors(p: &Product<'_>, c: &JointConfiguration, letter: &str) -> BTreeSet<RegionWord> {
    let mut out = BTreeSet::new();
    for delay in delay_grid(c, p.cmax) {
        for (next, _) in p.concrete_successors(c, delay, letter) {
            out.insert(p.encode(&next));
        }
    }
    out
}

/// Breadth-first exploration of the abstract graph, up to `limit` words.
pub fn reachable_words(p: &Product<'_>, limit: usize) -> Vec<RegionWord> {
    let mut seen: BTreeSet<RegionWord> = BTreeSet::new();
    let mut order = Vec::new();
    let mut queue: VecDeque<RegionWord> = p.initial_words().into_iter().collect();
    while let Some(w) = queue.pop_front() {
        if order.len() >= limit {
            break;
        }
        if !seen.insert(w.clone()) {
            continue;
        }
        order.push(w.clone());
        for a in &p.letters {
            queue.extend(p.successors(&w, a));
        }
    }
    order
}

pub fn random_timed_word<R: Rng>(rng: &mut R, letters: &[&str], max_len: usize) -> TimedWord {
    let len = rng.gen_range(1..=max_len);
    let mut t = Rational::zero();
    let mut events = Vec::new();
    for _ in 0..len {
        t = t + Rational::new(rng.gen_range(0..=8), 4);
        events.push((letters.choose(rng).unwrap().to_string(), t));
    }
    TimedWord::new(events).unwrap()
}

pub fn random_interval<R: Rng>(rng: &mut R) -> Interval {
    loop {
        let lo = rng.gen_range(0..=3);
        let hi = if rng.gen_bool(0.25) { None } else { Some(rng.gen_range(0..=4)) };
        let lo_closed = rng.gen_bool(0.5);
        let hi_closed = hi.is_some() && rng.gen_bool(0.5);
        if let Some(i) = Interval::new(lo, lo_closed, hi, hi_closed) {
            return i;
        }
    }
}

/// A random formula of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, letters: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.15) { Formula::True } else { Formula::atom(letters.choose(rng).unwrap()) };
    }
    let choice = rng.gen_range(0..4);
    let mut sub = || random_formula(rng, letters, depth - 1);
    match choice {
        0 => Formula::not(sub()),
        1 => {
            let f = sub();
            Formula::and(f, sub())
        }
        _ => {
            let f = sub();
            let g = sub();
            Formula::until(f, random_interval(rng), g)
        }
    }
}

fn in_interval(i: &Interval, d: Rational) -> bool {
    let lo = Rational::from_int(i.lo as i64);
    let lower = d > lo || (i.lo_closed && d == lo);
    let upper = match i.hi {
        None => true,
        Some(h) => {
            let h = Rational::from_int(h as i64);
            d < h || (i.hi_closed && d == h)
        }
    };
    lower && upper
}

/// `(w, i) |= f` by direct quantifier enumeration, positions from 1.
pub fn enumerate_mtl(w: &TimedWord, i: usize, f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::Atom(a) => w.letter(i - 1) == a,
        Formula::Not(g) => !enumerate_mtl(w, i, g),
        Formula::And(g, h) => enumerate_mtl(w, i, g) && enumerate_mtl(w, i, h),
        Formula::Until(g, interval, h) => (i + 1..=w.len()).any(|j| {
            in_interval(interval, w.time(j - 1) - w.time(i - 1))
                && enumerate_mtl(w, j, h)
                && (i + 1..j).all(|k| enumerate_mtl(w, k, g))
        }),
    }
}
