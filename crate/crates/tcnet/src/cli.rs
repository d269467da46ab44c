//! The `tcnet` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::automata::{membership, Automaton, TimedWord};
use crate::channel::{
    check_conditions, check_conditions_ef, encode_computation, gen_complement_ta, gen_condition10_vonca,
    gen_exclusion_net, gen_universality_automaton, generate_corpus, infer_n, minimal_n, Bounds, ChannelMachine,
    Condition, Mode, TimestampStyle,
};
use crate::formats::{
    automaton_to_json, computation_to_json, parse_automaton, parse_computation, parse_machine, parse_word,
    word_to_json, VerdictDoc,
};
use crate::inclusion::{
    check_inclusion, check_universality, InclusionError, InclusionOptions, Verdict, DEFAULT_BUDGET,
};
use crate::mtl::{eval_at, parse_mtl};
use crate::regionwords::Product;

pub const DEFAULT_SEED: u64 = 20240521;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "tcnet", version, about = "Timed automata, timed counter nets and channel-machine encodings")]
pub struct Cli {
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Node budget for the inclusion search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Region bound override.
    #[arg(long, global = true)]
    pub cmax: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is a timed word accepted?
    Member {
        automaton: PathBuf,
        word: PathBuf,
        /// Print an accepting run.
        #[arg(long)]
        witness: bool,
    },
    /// Decide L(A) ⊆ L(B).
    Include { a: PathBuf, b: PathBuf },
    /// Decide whether B accepts every nonempty timed word.
    Universal { b: PathBuf },
    /// Evaluate an MTL formula on a timed word.
    Mtl {
        formula: String,
        word: PathBuf,
        #[arg(long, default_value_t = 1)]
        position: usize,
    },
    /// Channel machines.
    Cm {
        #[command(subcommand)]
        command: CmCommand,
    },
    /// Time and letter successors of a rendered region word.
    Regions {
        a: PathBuf,
        b: PathBuf,
        /// Rendered region word, e.g. `[l] {(l,y,0,())}|{}`.
        word: String,
        #[arg(long)]
        letter: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gadget {
    Net,
    Complement,
    Cond10,
    Universality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    Exact,
    Faulty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Even,
    Seeded,
}

#[derive(Debug, Subcommand)]
pub enum CmCommand {
    /// Bounded search for a computation reaching a state.
    Simulate {
        machine: PathBuf,
        /// Defaults to the final state.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = SearchMode::Exact)]
        mode: SearchMode,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value_t = 50)]
        max_depth: usize,
    },
    /// Classify a timed word against L(C) and L_ef(C).
    CheckEnc { machine: PathBuf, word: PathBuf },
    /// Encode a computation as a timed word.
    Encode {
        machine: PathBuf,
        computation: PathBuf,
        /// Defaults to the smallest admissible value.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Style::Even)]
        style: Style,
    },
    /// Emit one of the generated automata.
    Gen {
        machine: PathBuf,
        #[arg(long, value_enum)]
        gadget: Gadget,
    },
    /// Emit a tagged corpus of timed words.
    Corpus {
        machine: PathBuf,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

/// Exit status and the text written to stdout.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

type Res = Result<Outcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn in_file<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_automaton(path: &Path) -> Result<Automaton, Failure> {
    in_file(path, parse_automaton(&read(path)?))
}

fn load_word(path: &Path) -> Result<TimedWord, Failure> {
    in_file(path, parse_word(&read(path)?))
}

fn load_machine(path: &Path) -> Result<ChannelMachine, Failure> {
    in_file(path, parse_machine(&read(path)?))
}

fn ok(code: i32, stdout: String) -> Res {
    Ok(Outcome { code, stdout })
}

fn doc(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

impl Cli {
    /// Runs the command; errors map to exit status 2.
    pub fn execute(&self) -> (Outcome, Option<String>) {
        match self.dispatch() {
            Ok(o) => (o, None),
            Err(Failure(m)) => {
                let stdout = match self.output {
                    Output::Text => String::new(),
                    Output::Structured => doc(json!({ "error": m })),
                };
                (Outcome { code: 2, stdout }, Some(m))
            }
        }
    }

    fn options(&self) -> InclusionOptions {
        InclusionOptions { budget: usize::try_from(self.budget).unwrap_or(usize::MAX), cmax: self.cmax }
    }

    fn dispatch(&self) -> Res {
        match &self.command {
            Command::Member { automaton, word, witness } => self.member(automaton, word, *witness),
            Command::Include { a, b } => {
                let (a, b) = (load_automaton(a)?, load_automaton(b)?);
                self.verdict(check_inclusion(&a, &b, &self.options()))
            }
            Command::Universal { b } => self.verdict(check_universality(&load_automaton(b)?, &self.options())),
            Command::Mtl { formula, word, position } => {
                let f = parse_mtl(formula)?;
                let w = load_word(word)?;
                let holds = eval_at(&w, *position, &f)?;
                let out = match self.output {
                    Output::Text => format!("{holds}\n"),
                    Output::Structured => {
                        doc(json!({ "formula": f.to_string(), "position": position, "holds": holds }))
                    }
                };
                ok(if holds { 0 } else { 1 }, out)
            }
            Command::Cm { command } => self.cm(command),
            Command::Regions { a, b, word, letter } => self.regions(a, b, word, letter.as_deref()),
        }
    }

    fn member(&self, automaton: &Path, word: &Path, witness: bool) -> Res {
        let aut = load_automaton(automaton)?;
        let w = load_word(word)?;
        let m = membership(&aut, &w)?;
        let verdict = if m.accepted { "accepted" } else { "rejected" };
        let steps: Vec<String> = m
            .witness
            .iter()
            .flat_map(|run| &run.steps)
            .map(|s| {
                format!("{} -{},{}-> {}", aut.locations[s.source.loc], s.delay, s.letter, aut.locations[s.target.loc])
            })
            .collect();
        let out = match self.output {
            Output::Text if witness && m.accepted => format!("{verdict}\n{}\n", steps.join("\n")),
            Output::Text => format!("{verdict}\n"),
            Output::Structured => {
                doc(json!({ "result": verdict, "run": if witness { json!(steps) } else { json!(null) } }))
            }
        };
        ok(if m.accepted { 0 } else { 1 }, out)
    }

    fn verdict(&self, r: Result<Verdict, InclusionError>) -> Res {
        let v = match r {
            Ok(v) => v,
            Err(InclusionError::BudgetExhausted { explored }) => {
                return Err(Failure(format!("budget exhausted after {explored} nodes")));
            }
            Err(e) => return Err(e.into()),
        };
        let d = VerdictDoc::from_verdict(&v);
        let out = match self.output {
            Output::Structured => d.to_json() + "\n",
            Output::Text => match v.counterexample() {
                None => "Included\n".to_string(),
                Some(c) => {
                    let mut s = format!("NotIncluded\nwitness: {}\ntrace:\n", c.witness);
                    for line in &c.rendered {
                        s.push_str(&format!("  {line}\n"));
                    }
                    s
                }
            },
        };
        ok(if v.is_included() { 0 } else { 1 }, out)
    }

    fn cm(&self, command: &CmCommand) -> Res {
        match command {
            CmCommand::Simulate { machine, target, mode, max_len, max_depth } => {
                let c = load_machine(machine)?;
                let target = target.clone().unwrap_or_else(|| c.final_state.clone());
                if !c.states.contains(&target) {
                    return Err(Failure(format!("unknown state `{target}`")));
                }
                let mode = match mode {
                    SearchMode::Exact => Mode::Exact,
                    SearchMode::Faulty => Mode::Faulty,
                };
                let found = c.reachable(&target, mode, Bounds { max_channel_len: *max_len, max_depth: *max_depth });
                let out = match (&found, self.output) {
                    (Some(comp), Output::Text) => format!("{comp}\n"),
                    (None, Output::Text) => {
                        format!("absent within bounds (channel length {max_len}, depth {max_depth})\n")
                    }
                    (Some(comp), Output::Structured) => computation_to_json(comp) + "\n",
                    (None, Output::Structured) => {
                        doc(json!({ "found": false, "max_len": max_len, "max_depth": max_depth }))
                    }
                };
                ok(if found.is_some() { 0 } else { 1 }, out)
            }
            CmCommand::CheckEnc { machine, word } => self.check_enc(&load_machine(machine)?, &load_word(word)?),
            CmCommand::Encode { machine, computation, n, style } => {
                let c = load_machine(machine)?;
                let comp = in_file(computation, parse_computation(&read(computation)?))?;
                let n = n.unwrap_or_else(|| minimal_n(&comp));
                let style = match style {
                    Style::Even => TimestampStyle::Even,
                    Style::Seeded => TimestampStyle::Seeded(self.seed),
                };
                let w = encode_computation(&c, &comp, n, style)?;
                ok(0, word_to_json(&w) + "\n")
            }
            CmCommand::Gen { machine, gadget } => {
                let c = load_machine(machine)?;
                let aut = match gadget {
                    Gadget::Net => gen_exclusion_net(&c),
                    Gadget::Complement => gen_complement_ta(&c),
                    Gadget::Cond10 => gen_condition10_vonca(&c),
                    Gadget::Universality => gen_universality_automaton(&c),
                };
                ok(0, automaton_to_json(&aut) + "\n")
            }
            CmCommand::Corpus { machine, count } => {
                let c = load_machine(machine)?;
                let mut out = Vec::new();
                writeln!(out, "# seed {} count {}", self.seed, count)?;
                for e in generate_corpus(&c, self.seed, *count) {
                    writeln!(out, "{}\t{}", e.tag, word_to_json(&e.word))?;
                }
                ok(0, String::from_utf8(out)?)
            }
        }
    }

    fn check_enc(&self, c: &ChannelMachine, w: &TimedWord) -> Res {
        let names = |v: &std::collections::BTreeSet<Condition>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let plural = |v: &[String]| if v.len() == 1 { "condition" } else { "conditions" };
        let n = infer_n(w, c);
        let base = check_conditions(w, c, n.unwrap_or(0))?;
        let (text, in_lc, in_lef, violated) = if let (Some(n), true) = (n, base.is_empty()) {
            let ef = names(&check_conditions_ef(w, c, n)?);
            if ef.is_empty() {
                (format!("in L(C,{n}); in L_ef(C,{n})"), true, true, ef)
            } else {
                (
                    format!("in L(C,{n}); not in L_ef(C,{n}): {} {} violated", plural(&ef), ef.join(", ")),
                    true,
                    false,
                    ef,
                )
            }
        } else {
            let v = names(&base);
            (format!("not in L(C): {} {} violated", plural(&v), v.join(", ")), false, false, v)
        };
        let out = match self.output {
            Output::Text => text + "\n",
            Output::Structured => doc(json!({ "n": n, "in_lc": in_lc, "in_lef": in_lef, "violated": violated })),
        };
        ok(if in_lc { 0 } else { 1 }, out)
    }

    fn regions(&self, a: &Path, b: &Path, word: &str, letter: Option<&str>) -> Res {
        let (a, b) = (load_automaton(a)?, load_automaton(b)?);
        let product = Product::with_cmax(&a, &b, self.cmax)?;
        let w = product.parse_word(word).map_err(Failure)?;
        let time: Vec<String> = w.time_successors().iter().map(|t| product.render(t)).collect();
        let succ: Option<Vec<String>> =
            letter.map(|l| product.successors(&w, l).iter().map(|t| product.render(t)).collect());
        let out = match self.output {
            Output::Structured => {
                doc(json!({ "word": product.render(&w), "time_successors": time, "successors": succ }))
            }
            Output::Text => {
                let mut s = format!("word: {}\ntime successors:\n", product.render(&w));
                for t in &time {
                    s.push_str(&format!("  {t}\n"));
                }
                if let (Some(l), Some(succ)) = (letter, &succ) {
                    s.push_str(&format!("{l}-successors:\n"));
                    for t in succ {
                        s.push_str(&format!("  {t}\n"));
                    }
                }
                s
            }
        };
        ok(0, out)
    }
}
