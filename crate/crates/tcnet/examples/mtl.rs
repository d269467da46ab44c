//! Evaluates a few MTL formulas at every position of a timed word.

use tcnet::automata::TimedWord;
use tcnet::mtl::{eval_at, parse_mtl};

fn main() {
    let w = TimedWord::parse_pairs(&[("req", "0"), ("idle", "1/2"), ("ack", "3/2"), ("req", "4"), ("ack", "7")]);
    println!("word: {w}");
    for text in ["req -> F[0,2] ack", "idle U(0,2] ack", "G[0,inf) (req -> F(0,3] ack)", "!ack U[1,1] ack"] {
        let f = parse_mtl(text).expect("well formed");
        let values: Vec<&str> = (1..=w.len()).map(|i| if eval_at(&w, i, &f).unwrap() { "T" } else { "." }).collect();
        println!("{text:<32} {}", values.join(" "));
    }
}
