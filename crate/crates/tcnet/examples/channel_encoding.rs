//! Encodes a channel-machine computation as a timed word and classifies it.

use tcnet::channel::{check_conditions, encode_computation, member_lc, member_lef, minimal_n, TimestampStyle};
use tcnet::fixtures::{demo_faulty_run, demo_machine};

fn main() {
    let c = demo_machine();
    let gamma = demo_faulty_run();
    println!("computation: {gamma}");
    let n = minimal_n(&gamma);
    for style in [TimestampStyle::Even, TimestampStyle::Seeded(3)] {
        let w = encode_computation(&c, &gamma, n, style).expect("n is large enough");
        println!("{w}");
        println!("  violated: {:?}", check_conditions(&w, &c, n).expect("alphabet matches"));
        println!("  in L(C): {}  in L_ef(C): {}", member_lc(&w, &c).unwrap(), member_lef(&w, &c).unwrap());
    }
}
