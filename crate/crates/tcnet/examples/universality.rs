//! Universality of a one-counter net, and of the net from a channel machine.

use tcnet::channel::{gen_exclusion_net, gen_universality_automaton};
use tcnet::fixtures::{anbm_net, demo_machine};
use tcnet::inclusion::{check_universality, InclusionOptions};

fn main() {
    let options = InclusionOptions::default();
    match check_universality(&anbm_net(), &options).expect("decidable") {
        tcnet::inclusion::Verdict::Included => println!("a^n b^m net: universal"),
        tcnet::inclusion::Verdict::NotIncluded(cex) => println!("a^n b^m net: not universal, e.g. {}", cex.witness),
    }
    match check_universality(&gen_exclusion_net(&demo_machine()), &options) {
        Ok(v) => println!("exclusion net of the demo machine: universal = {}", v.is_included()),
        Err(e) => println!("exclusion net of the demo machine: {e}"),
    }
    // The full universality automaton tests for zero, which the region search does not support.
    if let Err(e) = check_universality(&gen_universality_automaton(&demo_machine()), &options) {
        println!("universality automaton of the demo machine: {e}");
    }
}
