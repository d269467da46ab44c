//! Joint configurations of a timed automaton `A` and a one-clock timed counter
//! net `B`, their region-word encodings, the abstract transition relation and
//! the domination order on region words.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::automata::{validate, Automaton, AutomatonError, Guard, Rel, StoreOp, StoreSpec};
use crate::rational::Rational;
use crate::wqo::{embed_leq, subset_leq, vec_leq};

/// Integer part of a clock value up to `cmax`, or `Top` above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reg {
    Int(u32),
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Owner {
    A { loc: usize, clock: usize },
    B { loc: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item {
    pub owner: Owner,
    pub reg: Reg,
    pub counters: Vec<u32>,
}

impl Item {
    /// Equal owner and region, pointwise smaller counters.
    pub fn leq(&self, other: &Item) -> bool {
        self.owner == other.owner && self.reg == other.reg && vec_leq(&self.counters, &other.counters).unwrap_or(false)
    }
}

/// `enc(C)`: a zero block, fractional blocks in increasing fractional order,
/// and a block of values above `cmax`. The A-location is kept explicitly so
/// that clockless automata are encoded faithfully.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionWord {
    pub cmax: u32,
    pub a_loc: usize,
    pub zero: BTreeSet<Item>,
    pub fracs: Vec<BTreeSet<Item>>,
    pub top: BTreeSet<Item>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Zero,
    Frac(usize),
    Top,
}

impl RegionWord {
    /// The literal block sequence `B0 B1 .. Bρ B⊤`.
    pub fn blocks(&self) -> Vec<Vec<Item>> {
        let mut out = Vec::with_capacity(self.fracs.len() + 2);
        out.push(self.zero.iter().cloned().collect());
        out.extend(self.fracs.iter().map(|b| b.iter().cloned().collect()));
        out.push(self.top.iter().cloned().collect());
        out
    }

    pub fn items(&self) -> impl Iterator<Item = (Pos, &Item)> {
        self.zero
            .iter()
            .map(|i| (Pos::Zero, i))
            .chain(self.fracs.iter().enumerate().flat_map(|(k, b)| b.iter().map(move |i| (Pos::Frac(k), i))))
            .chain(self.top.iter().map(|i| (Pos::Top, i)))
    }

    pub fn b_items(&self) -> impl Iterator<Item = (Pos, &Item)> {
        self.items().filter(|(_, i)| matches!(i.owner, Owner::B { .. }))
    }

    fn assemble(cmax: u32, a_loc: usize, placed: Vec<(Pos, Item)>) -> RegionWord {
        let mut zero = BTreeSet::new();
        let mut top = BTreeSet::new();
        let mut fracs: BTreeMap<usize, BTreeSet<Item>> = BTreeMap::new();
        for (pos, item) in placed {
            match pos {
                Pos::Zero => zero.insert(item),
                Pos::Top => top.insert(item),
                Pos::Frac(k) => fracs.entry(k).or_default().insert(item),
            };
        }
        RegionWord { cmax, a_loc, zero, fracs: fracs.into_values().filter(|b| !b.is_empty()).collect(), top }
    }

    /// One infinitesimal time step, or `None` at the fixpoint.
    pub fn micro_elapse(&self) -> Option<RegionWord> {
        if !self.zero.is_empty() {
            let mut placed = Vec::new();
            for item in &self.zero {
                if item.reg == Reg::Int(self.cmax) {
                    placed.push((Pos::Top, Item { reg: Reg::Top, ..item.clone() }));
                } else {
                    placed.push((Pos::Frac(0), item.clone()));
                }
            }
            for (k, b) in self.fracs.iter().enumerate() {
                placed.extend(b.iter().map(|i| (Pos::Frac(k + 1), i.clone())));
            }
            placed.extend(self.top.iter().map(|i| (Pos::Top, i.clone())));
            Some(RegionWord::assemble(self.cmax, self.a_loc, placed))
        } else if let Some(last) = self.fracs.last() {
            let mut placed: Vec<(Pos, Item)> = last
                .iter()
                .map(|i| {
                    let Reg::Int(r) = i.reg else { unreachable!("fractional items are below cmax") };
                    (Pos::Zero, Item { reg: Reg::Int(r + 1), ..i.clone() })
                })
                .collect();
            for (k, b) in self.fracs[..self.fracs.len() - 1].iter().enumerate() {
                placed.extend(b.iter().map(|i| (Pos::Frac(k), i.clone())));
            }
            placed.extend(self.top.iter().map(|i| (Pos::Top, i.clone())));
            Some(RegionWord::assemble(self.cmax, self.a_loc, placed))
        } else {
            None
        }
    }

    /// The chain of time successors, starting with the word itself.
    pub fn time_successors(&self) -> Vec<RegionWord> {
        let mut chain = vec![self.clone()];
        while let Some(next) = chain.last().expect("nonempty").micro_elapse() {
            chain.push(next);
        }
        chain
    }
}

/// The order `⊑`: monotone domination over blocks, each block compared by the
/// injective subset order on items.
pub fn dominated(w1: &RegionWord, w2: &RegionWord) -> bool {
    if w1.cmax != w2.cmax || w1.a_loc != w2.a_loc {
        return false;
    }
    let block_leq = |s: &Vec<Item>, t: &Vec<Item>| subset_leq(&|a: &Item, b: &Item| a.leq(b), s, t);
    embed_leq(&block_leq, &w1.blocks(), &w2.blocks())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BState {
    pub loc: usize,
    pub clock: Rational,
    pub counters: Vec<u32>,
}

/// `(q, γ)`: one state of `A` and the set of states `B` can be in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JointConfiguration {
    pub a_loc: usize,
    pub a_clocks: Vec<Rational>,
    pub b: BTreeSet<BState>,
}

/// `(max guard constant) + 1`, or 1 without constants.
pub fn cmax_of(a: &Automaton, b: &Automaton) -> u32 {
    a.max_constant().into_iter().chain(b.max_constant()).max().map_or(1, |c| c + 1)
}

pub fn encode(c: &JointConfiguration, cmax: u32, dim: usize) -> RegionWord {
    let bound = Rational::from_int(cmax as i64);
    let mut values: Vec<(Rational, Item)> = Vec::new();
    for (clock, v) in c.a_clocks.iter().enumerate() {
        values.push((*v, Item { owner: Owner::A { loc: c.a_loc, clock }, reg: Reg::Int(0), counters: vec![0; dim] }));
    }
    for s in &c.b {
        values.push((s.clock, Item { owner: Owner::B { loc: s.loc }, reg: Reg::Int(0), counters: s.counters.clone() }));
    }
    let fracs: BTreeSet<Rational> =
        values.iter().filter(|(v, _)| *v <= bound && !v.is_integer()).map(|(v, _)| v.fract()).collect();
    let rank: HashMap<Rational, usize> = fracs.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let placed = values
        .into_iter()
        .map(|(v, item)| {
            if v > bound {
                (Pos::Top, Item { reg: Reg::Top, ..item })
            } else {
                let reg = Reg::Int(v.floor() as u32);
                let pos = if v.is_integer() { Pos::Zero } else { Pos::Frac(rank[&v.fract()]) };
                (pos, Item { reg, ..item })
            }
        })
        .collect();
    RegionWord::assemble(cmax, c.a_loc, placed)
}

pub fn equivalent(c1: &JointConfiguration, c2: &JointConfiguration, cmax: u32, dim: usize) -> bool {
    encode(c1, cmax, dim) == encode(c2, cmax, dim)
}

/// Does `x ~ c` hold for every value with region `reg` at position `pos`?
pub fn atom_holds(reg: Reg, pos: Pos, rel: Rel, c: u32) -> bool {
    match (pos, reg) {
        (Pos::Top, _) | (_, Reg::Top) => matches!(rel, Rel::Ge | Rel::Gt),
        (Pos::Zero, Reg::Int(r)) => rel.holds(Rational::from_int(r as i64), c),
        (Pos::Frac(_), Reg::Int(r)) => match rel {
            Rel::Eq => false,
            Rel::Lt | Rel::Le => r < c,
            Rel::Ge | Rel::Gt => r >= c,
        },
    }
}

fn guard_holds(guard: &Guard, info: &dyn Fn(usize) -> (Reg, Pos)) -> bool {
    guard.0.iter().all(|a| {
        let (reg, pos) = info(a.clock);
        atom_holds(reg, pos, a.rel, a.bound)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("A must be a timed automaton")]
    NotTimedAutomaton,
    #[error("B must be a timed counter net")]
    NotCounterNet,
    #[error("B must have at most one clock")]
    TooManyClocks,
    #[error("A and B must share their alphabet")]
    AlphabetMismatch,
}

/// One abstract successor, with how it was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successor {
    pub word: RegionWord,
    pub elapse: usize,
    pub edge: usize,
}

/// The pair `(A, B)` prepared for the abstraction: `B` in counter form with
/// exactly one clock (a never-tested clock is added when `B` has none).
#[derive(Debug, Clone)]
pub struct Product<'a> {
    pub a: &'a Automaton,
    pub b: &'a Automaton,
    pub cmax: u32,
    pub dim: usize,
    pub letters: Vec<String>,
    b_updates: Vec<Vec<i8>>,
    b_has_clock: bool,
    a_index: HashMap<(usize, String), Vec<usize>>,
    b_index: HashMap<(usize, String), Vec<usize>>,
}

fn index_edges(aut: &Automaton) -> HashMap<(usize, String), Vec<usize>> {
    let mut index: HashMap<(usize, String), Vec<usize>> = HashMap::new();
    for (i, e) in aut.edges.iter().enumerate() {
        index.entry((e.from, e.letter.clone())).or_default().push(i);
    }
    index
}

impl<'a> Product<'a> {
    pub fn new(a: &'a Automaton, b: &'a Automaton) -> Result<Product<'a>, ProductError> {
        Product::with_cmax(a, b, None)
    }

    pub fn with_cmax(a: &'a Automaton, b: &'a Automaton, cmax: Option<u32>) -> Result<Product<'a>, ProductError> {
        let ra = validate(a).map_err(AutomatonError::from)?;
        let rb = validate(b).map_err(AutomatonError::from)?;
        if !ra.is_timed_automaton {
            return Err(ProductError::NotTimedAutomaton);
        }
        if !rb.is_counter_net {
            return Err(ProductError::NotCounterNet);
        }
        if b.clocks.len() > 1 {
            return Err(ProductError::TooManyClocks);
        }
        if !a.alphabet.same_letters(&b.alphabet) {
            return Err(ProductError::AlphabetMismatch);
        }
        let dim = match &b.store {
            StoreSpec::None => 0,
            StoreSpec::Stack(_) => 1,
            StoreSpec::Counters(n) => *n,
        };
        let b_updates = b
            .edges
            .iter()
            .map(|e| match &e.op {
                StoreOp::Noop => vec![0; dim],
                StoreOp::Push(_) => vec![1],
                StoreOp::Pop(_) => vec![-1],
                StoreOp::Update(c) => c.clone(),
                StoreOp::Empty => unreachable!("nets have no zero tests"),
            })
            .collect();
        let natural = cmax_of(a, b);
        Ok(Product {
            a,
            b,
            cmax: cmax.unwrap_or(natural).max(natural),
            dim,
            letters: a.alphabet.letters(),
            b_updates,
            b_has_clock: !b.clocks.is_empty(),
            a_index: index_edges(a),
            b_index: index_edges(b),
        })
    }

    fn a_edges(&self, loc: usize, letter: &str) -> &[usize] {
        self.a_index.get(&(loc, letter.to_string())).map_or(&[], Vec::as_slice)
    }

    fn b_edges(&self, loc: usize, letter: &str) -> &[usize] {
        self.b_index.get(&(loc, letter.to_string())).map_or(&[], Vec::as_slice)
    }

    pub fn encode(&self, c: &JointConfiguration) -> RegionWord {
        encode(c, self.cmax, self.dim)
    }

    pub fn initial_words(&self) -> Vec<RegionWord> {
        self.initial_configurations().iter().map(|c| self.encode(c)).collect()
    }

    pub fn initial_configurations(&self) -> Vec<JointConfiguration> {
        let b: BTreeSet<BState> = self
            .b
            .initial
            .iter()
            .map(|&loc| BState { loc, clock: Rational::zero(), counters: vec![0; self.dim] })
            .collect();
        self.a
            .initial
            .iter()
            .map(|&a_loc| JointConfiguration {
                a_loc,
                a_clocks: vec![Rational::zero(); self.a.clocks.len()],
                b: b.clone(),
            })
            .collect()
    }

    pub fn is_bad(&self, w: &RegionWord) -> bool {
        self.a.accepting.contains(&w.a_loc)
            && !w.b_items().any(|(_, i)| matches!(i.owner, Owner::B { loc } if self.b.accepting.contains(&loc)))
    }

    /// Successors by one discrete step on `letter` without time elapse, one per enabled A-edge.
    pub fn discrete_successors(&self, w: &RegionWord, letter: &str) -> Vec<(RegionWord, usize)> {
        let mut a_info: HashMap<usize, (Reg, Pos)> = HashMap::new();
        let mut a_pos: HashMap<usize, (Pos, Item)> = HashMap::new();
        for (pos, item) in w.items() {
            if let Owner::A { clock, .. } = item.owner {
                a_info.insert(clock, (item.reg, pos));
                a_pos.insert(clock, (pos, item.clone()));
            }
        }
        let enabled: Vec<usize> = self
            .a_edges(w.a_loc, letter)
            .iter()
            .copied()
            .filter(|&e| guard_holds(&self.a.edges[e].guard, &|x| a_info[&x]))
            .collect();
        if enabled.is_empty() {
            return Vec::new();
        }
        let mut b_next: Vec<(Pos, Item)> = Vec::new();
        for (pos, item) in w.b_items() {
            let Owner::B { loc } = item.owner else { continue };
            for &e in self.b_edges(loc, letter) {
                let edge = &self.b.edges[e];
                if !guard_holds(&edge.guard, &|_| (item.reg, pos)) {
                    continue;
                }
                let mut counters = Vec::with_capacity(self.dim);
                let mut blocked = false;
                for (v, d) in item.counters.iter().zip(&self.b_updates[e]) {
                    let y = *v as i64 + *d as i64;
                    blocked |= y < 0;
                    counters.push(y.max(0) as u32);
                }
                if blocked {
                    continue;
                }
                let owner = Owner::B { loc: edge.to };
                if self.b_has_clock && edge.resets.contains(&0) {
                    b_next.push((Pos::Zero, Item { owner, reg: Reg::Int(0), counters }));
                } else {
                    b_next.push((pos, Item { owner, reg: item.reg, counters }));
                }
            }
        }
        enabled
            .into_iter()
            .map(|e| {
                let edge = &self.a.edges[e];
                let mut placed = b_next.clone();
                for clock in 0..self.a.clocks.len() {
                    let owner = Owner::A { loc: edge.to, clock };
                    if edge.resets.contains(&clock) {
                        placed.push((Pos::Zero, Item { owner, reg: Reg::Int(0), counters: vec![0; self.dim] }));
                    } else {
                        let (pos, item) = &a_pos[&clock];
                        placed.push((*pos, Item { owner, ..item.clone() }));
                    }
                }
                (RegionWord::assemble(self.cmax, edge.to, placed), e)
            })
            .collect()
    }

    /// All `letter`-successors, deduplicated, in canonical text order.
    pub fn successors_detailed(&self, w: &RegionWord, letter: &str) -> Vec<Successor> {
        let mut seen: HashMap<RegionWord, Successor> = HashMap::new();
        for (elapse, t) in w.time_successors().into_iter().enumerate() {
            for (word, edge) in self.discrete_successors(&t, letter) {
                seen.entry(word.clone()).or_insert(Successor { word, elapse, edge });
            }
        }
        let mut out: Vec<(String, Successor)> = seen.into_values().map(|s| (self.render(&s.word), s)).collect();
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out.into_iter().map(|(_, s)| s).collect()
    }

    pub fn successors(&self, w: &RegionWord, letter: &str) -> BTreeSet<RegionWord> {
        self.successors_detailed(w, letter).into_iter().map(|s| s.word).collect()
    }

    /// Concrete successors of `c` after `delay` and `letter`, one per enabled A-edge.
    pub fn concrete_successors(
        &self,
        c: &JointConfiguration,
        delay: Rational,
        letter: &str,
    ) -> Vec<(JointConfiguration, usize)> {
        let mut b = BTreeSet::new();
        for s in &c.b {
            let clock = s.clock + delay;
            for &e in self.b_edges(s.loc, letter) {
                let edge = &self.b.edges[e];
                if self.b_has_clock && !edge.guard.holds(&[clock]) {
                    continue;
                }
                let mut counters = Vec::with_capacity(self.dim);
                let mut blocked = false;
                for (v, d) in s.counters.iter().zip(&self.b_updates[e]) {
                    let y = *v as i64 + *d as i64;
                    blocked |= y < 0;
                    counters.push(y.max(0) as u32);
                }
                if !blocked {
                    let clock = if self.b_has_clock && edge.resets.contains(&0) { Rational::zero() } else { clock };
                    b.insert(BState { loc: edge.to, clock, counters });
                }
            }
        }
        let a_clocks: Vec<Rational> = c.a_clocks.iter().map(|v| *v + delay).collect();
        self.a_edges(c.a_loc, letter)
            .iter()
            .filter(|&&e| self.a.edges[e].guard.holds(&a_clocks))
            .map(|&e| {
                let edge = &self.a.edges[e];
                let mut clocks = a_clocks.clone();
                for &x in &edge.resets {
                    clocks[x] = Rational::zero();
                }
                (JointConfiguration { a_loc: edge.to, a_clocks: clocks, b: b.clone() }, e)
            })
            .collect()
    }

    /// Delays that realize each step of the time-successor chain of `enc(c)`:
    /// interval midpoints between consecutive region boundaries, and the
    /// boundaries themselves.
    pub fn delay_chain(&self, c: &JointConfiguration) -> Vec<(Rational, RegionWord)> {
        let mut out: Vec<(Rational, RegionWord)> = Vec::new();
        for delay in delay_grid(c, self.cmax) {
            let w = self.encode(&elapse(c, delay));
            if out.last().is_none_or(|(_, prev)| *prev != w) {
                out.push((delay, w));
            }
        }
        out
    }

    pub fn clock_name_b(&self) -> &str {
        self.b.clocks.first().map_or("x", String::as_str)
    }

    fn render_item(&self, item: &Item) -> String {
        let (loc, clock) = match item.owner {
            Owner::A { loc, clock } => (self.a.locations[loc].as_str(), self.a.clocks[clock].as_str()),
            Owner::B { loc } => (self.b.locations[loc].as_str(), self.clock_name_b()),
        };
        let reg = match item.reg {
            Reg::Int(r) => r.to_string(),
            Reg::Top => "⊤".to_string(),
        };
        let counters: Vec<String> = item.counters.iter().map(u32::to_string).collect();
        format!("({loc},{clock},{reg},({}))", counters.join(","))
    }

    fn render_block(&self, block: &BTreeSet<Item>) -> String {
        let mut items: Vec<String> = block.iter().map(|i| self.render_item(i)).collect();
        items.sort();
        format!("{{{}}}", items.join(","))
    }

    /// Canonical text: `[a-location] {B0}{B1}..{Bρ}|{B⊤}`.
    pub fn render(&self, w: &RegionWord) -> String {
        let mut s = format!("[{}] ", self.a.locations[w.a_loc]);
        s.push_str(&self.render_block(&w.zero));
        for b in &w.fracs {
            s.push_str(&self.render_block(b));
        }
        let _ = write!(s, "|{}", self.render_block(&w.top));
        s
    }

    /// Parses the canonical text produced by [`Product::render`].
    pub fn parse_word(&self, text: &str) -> Result<RegionWord, String> {
        let text = text.trim();
        let rest = text.strip_prefix('[').ok_or("expected `[a-location]`")?;
        let (loc_name, rest) = rest.split_once(']').ok_or("unterminated `[`")?;
        let a_loc = self.a.location_id(loc_name.trim()).ok_or_else(|| format!("unknown A-location `{loc_name}`"))?;
        let (body, top) = rest.rsplit_once('|').ok_or("missing `|` before the top block")?;
        let mut blocks = split_blocks(body)?;
        let top_blocks = split_blocks(top)?;
        if blocks.is_empty() || top_blocks.len() != 1 {
            return Err("expected `{B0}..|{B⊤}`".into());
        }
        let mut placed = Vec::new();
        let zero = blocks.remove(0);
        for item in zero {
            placed.push((Pos::Zero, self.parse_item(&item)?));
        }
        for (k, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err("fractional blocks must be nonempty".into());
            }
            for item in block {
                placed.push((Pos::Frac(k), self.parse_item(&item)?));
            }
        }
        for item in &top_blocks[0] {
            placed.push((Pos::Top, self.parse_item(item)?));
        }
        Ok(RegionWord::assemble(self.cmax, a_loc, placed))
    }

    fn parse_item(&self, text: &str) -> Result<Item, String> {
        let inner =
            text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| format!("bad item `{text}`"))?;
        let (head, counters) = inner.split_once(",(").ok_or_else(|| format!("bad item `{text}`"))?;
        let parts: Vec<&str> = head.split(',').map(str::trim).collect();
        let [loc, clock, reg] = parts.as_slice() else { return Err(format!("bad item `{text}`")) };
        let counters = counters.strip_suffix(')').ok_or_else(|| format!("bad counters in `{text}`"))?;
        let counters: Vec<u32> = if counters.trim().is_empty() {
            Vec::new()
        } else {
            counters
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| format!("bad counter in `{text}`")))
                .collect::<Result<_, _>>()?
        };
        if counters.len() != self.dim {
            return Err(format!("item `{text}` has the wrong counter dimension"));
        }
        let reg = match *reg {
            "⊤" | "top" | "T" => Reg::Top,
            r => Reg::Int(r.parse().map_err(|_| format!("bad region `{r}`"))?),
        };
        let owner = match (self.a.location_id(loc), self.a.clock_id(clock)) {
            (Some(l), Some(c)) => Owner::A { loc: l, clock: c },
            _ => match self.b.location_id(loc) {
                Some(l) if *clock == self.clock_name_b() => Owner::B { loc: l },
                _ => return Err(format!("unknown owner `{loc},{clock}`")),
            },
        };
        Ok(Item { owner, reg, counters })
    }
}

fn split_blocks(text: &str) -> Result<Vec<Vec<String>>, String> {
    let mut blocks = Vec::new();
    let mut depth = 0usize;
    let mut current: Option<Vec<String>> = None;
    let mut item = String::new();
    for ch in text.chars() {
        match ch {
            '{' if current.is_none() => current = Some(Vec::new()),
            '}' if depth == 0 => {
                let block = current.take().ok_or("unbalanced `}`")?;
                blocks.push(block);
            }
            '(' => {
                depth += 1;
                item.push(ch);
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or("unbalanced `)`")?;
                item.push(ch);
                if depth == 0 {
                    current.as_mut().ok_or("item outside a block")?.push(std::mem::take(&mut item));
                }
            }
            ',' if depth == 0 => {}
            c if c.is_whitespace() && depth == 0 => {}
            c => {
                if current.is_none() {
                    return Err(format!("unexpected `{c}`"));
                }
                item.push(c);
            }
        }
    }
    if current.is_some() || depth != 0 {
        return Err("unterminated block".into());
    }
    Ok(blocks)
}

/// Lets `delay` time units pass in every clock of `c`.
pub fn elapse(c: &JointConfiguration, delay: Rational) -> JointConfiguration {
    JointConfiguration {
        a_loc: c.a_loc,
        a_clocks: c.a_clocks.iter().map(|v| *v + delay).collect(),
        b: c.b.iter().map(|s| BState { clock: s.clock + delay, ..s.clone() }).collect(),
    }
}

/// Candidate delays: `0`, then for each gap between consecutive region
/// boundaries its midpoint followed by the boundary, then one step beyond.
pub fn delay_grid(c: &JointConfiguration, cmax: u32) -> Vec<Rational> {
    let limit = cmax as i64 + 1;
    let mut bounds: BTreeSet<Rational> = BTreeSet::new();
    let values = c.a_clocks.iter().copied().chain(c.b.iter().map(|s| s.clock));
    for v in values {
        for k in v.ceil().max(0)..=limit {
            let d = Rational::from_int(k) - v;
            if d > Rational::zero() {
                bounds.insert(d);
            }
        }
    }
    let mut grid = vec![Rational::zero()];
    let mut previous = Rational::zero();
    for b in bounds {
        grid.push(Rational::midpoint(previous, b));
        grid.push(b);
        previous = b;
    }
    grid.push(previous + Rational::one());
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_table() {
        assert!(atom_holds(Reg::Int(1), Pos::Zero, Rel::Eq, 1));
        assert!(!atom_holds(Reg::Int(1), Pos::Frac(0), Rel::Eq, 1));
        assert!(atom_holds(Reg::Int(0), Pos::Frac(0), Rel::Lt, 1));
        assert!(!atom_holds(Reg::Int(1), Pos::Frac(0), Rel::Le, 1));
        assert!(atom_holds(Reg::Int(1), Pos::Frac(0), Rel::Gt, 1));
        assert!(atom_holds(Reg::Top, Pos::Top, Rel::Gt, 3));
        assert!(!atom_holds(Reg::Top, Pos::Top, Rel::Le, 3));
    }

    #[test]
    fn grid_covers_boundaries() {
        let c = JointConfiguration { a_loc: 0, a_clocks: vec![Rational::new(1, 2)], b: BTreeSet::new() };
        let g = delay_grid(&c, 1);
        assert_eq!(
            g,
            vec![
                Rational::zero(),
                Rational::new(1, 4),
                Rational::new(1, 2),
                Rational::one(),
                Rational::new(3, 2),
                Rational::new(5, 2)
            ]
        );
    }
}
