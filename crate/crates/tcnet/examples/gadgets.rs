//! Builds the automata for a channel machine and checks them on a corpus.

use tcnet::automata::{membership, validate};
use tcnet::channel::{
    gen_complement_ta, gen_condition10_vonca, gen_exclusion_net, gen_universality_automaton, generate_corpus,
    member_lc, member_lef,
};
use tcnet::fixtures::demo_machine;

fn main() {
    let c = demo_machine();
    let gadgets = [
        ("exclusion net", gen_exclusion_net(&c)),
        ("complement", gen_complement_ta(&c)),
        ("condition 10", gen_condition10_vonca(&c)),
        ("universality", gen_universality_automaton(&c)),
    ];
    for (name, aut) in &gadgets {
        let r = validate(aut).expect("well formed");
        println!(
            "{name:<14} {:>3} locations {:>4} edges  visibly {}  one-counter {}  timed automaton {}",
            aut.locations.len(),
            aut.edges.len(),
            r.is_visibly,
            r.is_one_counter,
            r.is_timed_automaton
        );
    }
    let corpus = generate_corpus(&c, 5, 200);
    let mut agree = 0;
    for e in &corpus {
        let complement = membership(&gadgets[1].1, &e.word).unwrap().accepted;
        let universality = membership(&gadgets[3].1, &e.word).unwrap().accepted;
        if complement != member_lc(&e.word, &c).unwrap() && universality != member_lef(&e.word, &c).unwrap() {
            agree += 1;
        }
    }
    println!("{agree} of {} corpus words classified consistently", corpus.len());
}
