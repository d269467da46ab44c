//! Decides every instance of the built-in inclusion suite.

use tcnet::fixtures::inclusion_suite;
use tcnet::inclusion::{check_inclusion_with_stats, InclusionOptions, Verdict};

fn main() {
    for f in inclusion_suite() {
        let (verdict, stats) = check_inclusion_with_stats(&f.a, &f.b, &InclusionOptions::default()).expect("decidable");
        match verdict {
            Verdict::Included => println!("{:<24} included      ({} nodes)", f.name, stats.nodes),
            Verdict::NotIncluded(cex) => {
                println!("{:<24} not included  ({} nodes) witness {}", f.name, stats.nodes, cex.witness);
                for line in &cex.rendered {
                    println!("    {line}");
                }
            }
        }
    }
}
