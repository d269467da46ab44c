//! Deciding `L(A) ⊆ L(B)` for a timed automaton `A` and a one-clock timed
//! counter net `B` by a depth-first unfolding of region words, pruned by the
//! domination order along the current branch.

use std::collections::HashSet;

use crate::automata::{membership, Automaton, Guard, StoreOp, StoreSpec, TimedWord};
use crate::rational::Rational;
use crate::regionwords::{dominated, JointConfiguration, Product, ProductError, RegionWord};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionOptions {
    /// Maximum number of tree nodes to visit.
    pub budget: usize,
    /// Region bound; raised to the automata's natural bound when smaller.
    pub cmax: Option<u32>,
}

impl Default for InclusionOptions {
    fn default() -> InclusionOptions {
        InclusionOptions { budget: DEFAULT_BUDGET, cmax: None }
    }
}

/// One edge of an abstract branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub letter: String,
    pub word: RegionWord,
    /// Index into the time-successor chain of the previous word.
    pub elapse: usize,
    /// The A-edge taken.
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub initial: RegionWord,
    pub trace: Vec<TraceStep>,
    pub rendered: Vec<String>,
    pub witness: TimedWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Included,
    NotIncluded(Box<Counterexample>),
}

impl Verdict {
    pub fn is_included(&self) -> bool {
        matches!(self, Verdict::Included)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Included => None,
            Verdict::NotIncluded(c) => Some(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InclusionError {
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("budget exhausted after {explored} nodes")]
    BudgetExhausted { explored: usize },
    #[error("internal soundness failure: {0}")]
    Unsound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: usize,
    pub pruned: usize,
    pub memo_hits: usize,
}

struct Frame {
    word: RegionWord,
    via: Option<TraceStep>,
    children: Vec<TraceStep>,
    next: usize,
    /// Shallowest ancestor depth used to prune anywhere below this node.
    min_used: usize,
}

enum Visit {
    Bad(TraceStep),
    Done(usize),
    Expanded,
}

struct Search<'p, 'a> {
    product: &'p Product<'a>,
    budget: usize,
    stats: SearchStats,
    safe: HashSet<RegionWord>,
    stack: Vec<Frame>,
}

impl Search<'_, '_> {
    fn expand(&self, w: &RegionWord) -> Vec<TraceStep> {
        let mut children = Vec::new();
        for letter in &self.product.letters {
            for s in self.product.successors_detailed(w, letter) {
                children.push(TraceStep { letter: letter.clone(), word: s.word, elapse: s.elapse, edge: s.edge });
            }
        }
        children
    }

    fn visit(&mut self, word: RegionWord, via: Option<TraceStep>) -> Result<Visit, InclusionError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(InclusionError::BudgetExhausted { explored: self.stats.nodes - 1 });
        }
        if !self.stack.is_empty() && self.product.is_bad(&word) {
            return Ok(Visit::Bad(via.expect("non-root nodes have an incoming step")));
        }
        if self.safe.contains(&word) {
            self.stats.memo_hits += 1;
            return Ok(Visit::Done(usize::MAX));
        }
        if let Some(k) = self.stack.iter().position(|f| dominated(&f.word, &word)) {
            self.stats.pruned += 1;
            return Ok(Visit::Done(k));
        }
        let children = self.expand(&word);
        self.stack.push(Frame { word, via, children, next: 0, min_used: usize::MAX });
        Ok(Visit::Expanded)
    }

    /// Explores from `root`; returns the bad branch if one is found.
    fn run(&mut self, root: RegionWord) -> Result<Option<Vec<TraceStep>>, InclusionError> {
        self.stack.clear();
        self.visit(root, None)?;
        while let Some(top) = self.stack.last_mut() {
            if top.next < top.children.len() {
                let child = top.children[top.next].clone();
                top.next += 1;
                match self.visit(child.word.clone(), Some(child))? {
                    Visit::Bad(last) => {
                        let mut branch: Vec<TraceStep> = self.stack.iter().filter_map(|f| f.via.clone()).collect();
                        branch.push(last);
                        return Ok(Some(branch));
                    }
                    Visit::Done(dep) => {
                        let top = self.stack.last_mut().expect("parent frame");
                        top.min_used = top.min_used.min(dep);
                    }
                    Visit::Expanded => {}
                }
            } else {
                let depth = self.stack.len() - 1;
                let frame = self.stack.pop().expect("nonempty stack");
                if frame.min_used >= depth {
                    self.safe.insert(frame.word);
                }
                if let Some(parent) = self.stack.last_mut() {
                    parent.min_used = parent.min_used.min(frame.min_used);
                }
            }
        }
        Ok(None)
    }
}

pub fn check_inclusion(a: &Automaton, b: &Automaton, options: &InclusionOptions) -> Result<Verdict, InclusionError> {
    check_inclusion_with_stats(a, b, options).map(|(v, _)| v)
}

pub fn check_inclusion_with_stats(
    a: &Automaton,
    b: &Automaton,
    options: &InclusionOptions,
) -> Result<(Verdict, SearchStats), InclusionError> {
    let product = Product::with_cmax(a, b, options.cmax)?;
    let mut search = Search {
        product: &product,
        budget: options.budget,
        stats: SearchStats::default(),
        safe: HashSet::new(),
        stack: Vec::new(),
    };
    for root in product.initial_words() {
        if let Some(trace) = search.run(root.clone())? {
            let witness = concretize(&product, &root, &trace)?;
            let mut rendered = vec![product.render(&root)];
            rendered.extend(trace.iter().map(|s| format!("{} {}", s.letter, product.render(&s.word))));
            let cex = Counterexample { initial: root, trace, rendered, witness };
            return Ok((Verdict::NotIncluded(Box::new(cex)), search.stats));
        }
    }
    Ok((Verdict::Included, search.stats))
}

/// The automaton accepting every nonempty timed word over `b`'s alphabet.
pub fn universal_automaton(b: &Automaton) -> Automaton {
    let mut u = Automaton::new(b.alphabet.clone(), StoreSpec::None);
    let l = u.location("u");
    u.set_initial(l);
    u.set_accepting(l);
    for letter in b.alphabet.letters() {
        u.add_edge(l, &letter, Guard::always(), StoreOp::Noop, vec![], l);
    }
    u
}

pub fn check_universality(b: &Automaton, options: &InclusionOptions) -> Result<Verdict, InclusionError> {
    check_inclusion(&universal_automaton(b), b, options)
}

/// Replays an abstract branch on concrete configurations and returns the
/// timed word it reads, after checking it is in `L(A)` and not in `L(B)`.
pub fn concretize(product: &Product<'_>, root: &RegionWord, trace: &[TraceStep]) -> Result<TimedWord, InclusionError> {
    let unsound = |m: String| InclusionError::Unsound(m);
    let mut c: JointConfiguration = product
        .initial_configurations()
        .into_iter()
        .find(|c| product.encode(c) == *root)
        .ok_or_else(|| unsound("root is not an initial word".into()))?;
    let mut now = Rational::zero();
    let mut events = Vec::with_capacity(trace.len());
    let mut current = root.clone();
    for (i, step) in trace.iter().enumerate() {
        let chain = product.delay_chain(&c);
        let abstract_chain = current.time_successors();
        let (delay, reached) =
            chain.get(step.elapse).ok_or_else(|| unsound(format!("step {i}: elapse index out of range")))?;
        if abstract_chain.get(step.elapse) != Some(reached) {
            return Err(unsound(format!("step {i}: time elapse does not match the abstraction")));
        }
        let next = product
            .concrete_successors(&c, *delay, &step.letter)
            .into_iter()
            .find(|(_, e)| *e == step.edge)
            .ok_or_else(|| unsound(format!("step {i}: A-edge not enabled")))?
            .0;
        if product.encode(&next) != step.word {
            return Err(unsound(format!("step {i}: successor encoding differs")));
        }
        now = now + *delay;
        events.push((step.letter.clone(), now));
        c = next;
        current = step.word.clone();
    }
    let word = TimedWord::new(events).map_err(|e| unsound(e.to_string()))?;
    let in_a = membership(product.a, &word).map_err(|e| unsound(e.to_string()))?.accepted;
    let in_b = membership(product.b, &word).map_err(|e| unsound(e.to_string()))?.accepted;
    if !in_a || in_b {
        return Err(unsound(format!("witness {word} fails verification (in A: {in_a}, in B: {in_b})")));
    }
    Ok(word)
}
