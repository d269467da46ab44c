//! Metric temporal logic over finite timed words with the pointwise semantics.

use std::fmt;

use crate::automata::TimedWord;
use crate::rational::Rational;

/// An interval with natural endpoints; `hi = None` stands for infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: u64,
    pub lo_closed: bool,
    pub hi: Option<u64>,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: u64, lo_closed: bool, hi: Option<u64>, hi_closed: bool) -> Option<Interval> {
        match hi {
            None if hi_closed => None,
            Some(h) if h < lo || (h == lo && !(lo_closed && hi_closed)) => None,
            _ => Some(Interval { lo, lo_closed, hi, hi_closed }),
        }
    }

    /// `[0, ∞)`.
    pub fn unbounded() -> Interval {
        Interval { lo: 0, lo_closed: true, hi: None, hi_closed: false }
    }

    pub fn contains(&self, d: Rational) -> bool {
        let lo = Rational::from_int(self.lo as i64);
        let above = if self.lo_closed { d >= lo } else { d > lo };
        let below = match self.hi {
            None => true,
            Some(h) => {
                let h = Rational::from_int(h as i64);
                if self.hi_closed {
                    d <= h
                } else {
                    d < h
                }
            }
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        match self.hi {
            Some(h) => write!(f, "{open}{},{h}{close}", self.lo),
            None => write!(f, "{open}{},inf{close}", self.lo),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Until(Box<Formula>, Interval, Box<Formula>),
}

impl Formula {
    pub fn atom(a: &str) -> Formula {
        Formula::Atom(a.to_string())
    }

    pub fn falsum() -> Formula {
        Formula::not(Formula::True)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(f), Formula::not(g)))
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::not(Formula::and(f, Formula::not(g)))
    }

    pub fn until(f: Formula, i: Interval, g: Formula) -> Formula {
        Formula::Until(Box::new(f), i, Box::new(g))
    }

    pub fn eventually(i: Interval, f: Formula) -> Formula {
        Formula::until(Formula::True, i, f)
    }

    pub fn globally(i: Interval, f: Formula) -> Formula {
        Formula::not(Formula::eventually(i, Formula::not(f)))
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(f, g) | Formula::Until(f, _, g) => 1 + f.depth().max(g.depth()),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Formula::And(..) => 2,
            Formula::Until(..) => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::True => f.write_str("true"),
            Formula::Atom(a) if is_identifier(a) => f.write_str(a),
            Formula::Atom(a) => write!(f, "\"{}\"", a.replace('\\', "\\\\").replace('"', "\\\"")),
            Formula::Not(g) => {
                f.write_str("!")?;
                g.write_at(f, 4)
            }
            Formula::And(g, h) => {
                g.write_at(f, 2)?;
                f.write_str(" & ")?;
                h.write_at(f, 3)
            }
            Formula::Until(g, i, h) => {
                g.write_at(f, 4)?;
                write!(f, " U{i} ")?;
                h.write_at(f, 3)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

const KEYWORDS: [&str; 6] = ["true", "false", "U", "F", "G", "inf"];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MtlError {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, MtlError> {
    let err = |position: usize, message: &str| MtlError::Parse { position, message: message.to_string() };
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Num(s.parse().map_err(|_| err(pos, "number too large"))?)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '_' || bytes[i].1 == '\'') {
                i += 1;
            }
            out.push((pos, Tok::Ident(bytes[start..i].iter().map(|p| p.1).collect())));
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match bytes.get(i) {
                    None => return Err(err(pos, "unterminated quoted atom")),
                    Some((_, '"')) => break,
                    Some((_, '\\')) => {
                        let (_, e) = bytes.get(i + 1).ok_or_else(|| err(pos, "unterminated quoted atom"))?;
                        s.push(*e);
                        i += 2;
                    }
                    Some((_, ch)) => {
                        s.push(*ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push((pos, Tok::Ident(format!("\"{s}"))));
        } else {
            let two: String = bytes[i..bytes.len().min(i + 2)].iter().map(|p| p.1).collect();
            if two == "->" {
                out.push((pos, Tok::Sym("->")));
                i += 2;
                continue;
            }
            let sym = match c {
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                ',' => ",",
                '!' => "!",
                '&' => "&",
                '|' => "|",
                _ => return Err(err(pos, &format!("unexpected character `{c}`"))),
            };
            out.push((pos, Tok::Sym(sym)));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, message: &str) -> Result<T, MtlError> {
        Err(MtlError::Parse { position: self.pos(), message: message.to_string() })
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == k)
    }

    fn implication(&mut self) -> Result<Formula, MtlError> {
        let lhs = self.disjunction()?;
        if self.eat_sym("->") {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, MtlError> {
        let mut f = self.conjunction()?;
        while self.eat_sym("|") {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, MtlError> {
        let mut f = self.until()?;
        while self.eat_sym("&") {
            f = Formula::and(f, self.until()?);
        }
        Ok(f)
    }

    fn until(&mut self) -> Result<Formula, MtlError> {
        let lhs = self.unary()?;
        if self.is_keyword("U") {
            self.at += 1;
            let i = self.interval()?;
            let rhs = self.until()?;
            return Ok(Formula::until(lhs, i, rhs));
        }
        Ok(lhs)
    }

    fn bound(&mut self) -> Result<Option<u64>, MtlError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Some(n))
            }
            Some(Tok::Ident(s)) if s == "inf" => {
                self.at += 1;
                Ok(None)
            }
            _ => self.fail("expected a natural number or `inf`"),
        }
    }

    fn interval(&mut self) -> Result<Interval, MtlError> {
        let start = self.pos();
        let lo_closed = if self.eat_sym("[") {
            true
        } else if self.eat_sym("(") {
            false
        } else {
            return self.fail("expected an interval");
        };
        let Some(lo) = self.bound()? else { return self.fail("lower bound cannot be `inf`") };
        if !self.eat_sym(",") {
            return self.fail("expected `,`");
        }
        let hi = self.bound()?;
        let hi_closed = if self.eat_sym("]") {
            true
        } else if self.eat_sym(")") {
            false
        } else {
            return self.fail("expected `]` or `)`");
        };
        Interval::new(lo, lo_closed, hi, hi_closed)
            .ok_or(MtlError::Parse { position: start, message: "empty interval or closed at `inf`".into() })
    }

    fn unary(&mut self) -> Result<Formula, MtlError> {
        if self.eat_sym("!") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat_sym("(") {
            let f = self.implication()?;
            if !self.eat_sym(")") {
                return self.fail("expected `)`");
            }
            return Ok(f);
        }
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.at += 1;
                match s.as_str() {
                    "true" => Ok(Formula::True),
                    "false" => Ok(Formula::falsum()),
                    "F" => {
                        let i = self.interval()?;
                        Ok(Formula::eventually(i, self.unary()?))
                    }
                    "G" => {
                        let i = self.interval()?;
                        Ok(Formula::globally(i, self.unary()?))
                    }
                    "U" | "inf" => {
                        self.at -= 1;
                        self.fail("unexpected keyword")
                    }
                    _ => Ok(Formula::Atom(s.strip_prefix('"').unwrap_or(&s).to_string())),
                }
            }
            _ => self.fail("expected a formula"),
        }
    }
}

pub fn parse_mtl(text: &str) -> Result<Formula, MtlError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, end: text.len() };
    let f = p.implication()?;
    if p.at != p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(f)
}

/// Truth value of `f` at every position of `w` (0-based).
fn table(w: &TimedWord, f: &Formula) -> Vec<bool> {
    let n = w.len();
    match f {
        Formula::True => vec![true; n],
        Formula::Atom(a) => (0..n).map(|i| w.letter(i) == a).collect(),
        Formula::Not(g) => table(w, g).into_iter().map(|b| !b).collect(),
        Formula::And(g, h) => table(w, g).into_iter().zip(table(w, h)).map(|(x, y)| x && y).collect(),
        Formula::Until(g, interval, h) => {
            let left = table(w, g);
            let right = table(w, h);
            (0..n)
                .map(|i| {
                    for j in i + 1..n {
                        if right[j] && interval.contains(w.time(j) - w.time(i)) {
                            return true;
                        }
                        if !left[j] {
                            return false;
                        }
                    }
                    false
                })
                .collect()
        }
    }
}

/// `(w, i) ⊨ f` with positions counted from 1.
pub fn eval_at(w: &TimedWord, i: usize, f: &Formula) -> Result<bool, MtlError> {
    if i == 0 || i > w.len() {
        return Err(MtlError::PositionOutOfRange { position: i, len: w.len() });
    }
    Ok(table(w, f)[i - 1])
}

pub fn models(w: &TimedWord, f: &Formula) -> bool {
    table(w, f)[0]
}
