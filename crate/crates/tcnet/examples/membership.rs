//! Runs timed words through the one-counter net of `a^n b^m`, `n >= m`.

use tcnet::automata::{membership, TimedWord};
use tcnet::fixtures::anbm_net;

fn main() {
    let net = anbm_net();
    let words = [
        TimedWord::parse_pairs(&[("a", "1"), ("a", "2"), ("b", "3")]),
        TimedWord::parse_pairs(&[("a", "1"), ("b", "2"), ("b", "3")]),
        TimedWord::parse_pairs(&[("a", "0"), ("a", "1/3"), ("b", "1/2"), ("b", "7")]),
    ];
    for w in &words {
        let m = membership(&net, w).expect("letters are in the alphabet");
        println!("{w}: {}", if m.accepted { "accepted" } else { "rejected" });
        if let Some(run) = m.witness {
            for s in &run.steps {
                println!(
                    "  {} --{}/{}--> {} {:?}",
                    net.locations[s.source.loc], s.letter, s.delay, net.locations[s.target.loc], s.target.store
                );
            }
        }
    }
}
