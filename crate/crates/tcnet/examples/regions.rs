//! Region-word encodings, time successors and letter successors.

use tcnet::fixtures::{region_configs, region_pair};
use tcnet::regionwords::{dominated, Product};

fn main() {
    let (a, b) = region_pair();
    let p = Product::new(&a, &b).expect("A is a timed automaton, B a one-clock net");
    let (c2, c3) = region_configs(&a, &b);
    let w = p.encode(&c2);
    println!("cmax = {}", p.cmax);
    println!("enc(C2) = {}", p.render(&w));
    println!("enc(C3) = {}", p.render(&p.encode(&c3)));
    println!("time successors:");
    for t in w.time_successors() {
        println!("  {}", p.render(&t));
    }
    for letter in &p.letters {
        for s in p.successors(&w, letter) {
            println!("{letter}: {}  dominates enc(C2): {}", p.render(&s), dominated(&w, &s));
        }
    }
}
