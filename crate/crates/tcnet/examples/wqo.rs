//! The orders behind termination: vectors, subwords, and their liftings.

use tcnet::wqo::{embed_leq, subset_leq, subword_leq, vec_leq};

fn main() {
    let le = |u: &Vec<u32>, v: &Vec<u32>| vec_leq(u, v).unwrap();
    println!("(1,2) <= (1,3): {}", vec_leq(&[1, 2], &[1, 3]).unwrap());
    println!("ac <= abc: {}", subword_leq(&['a', 'c'], &['a', 'b', 'c']));
    let s = vec![vec![1, 0], vec![0, 2]];
    let t = vec![vec![0, 2], vec![1, 1], vec![0, 3]];
    println!("{s:?} embeds into {t:?}: {}", embed_leq(&le, &s, &t));
    println!("{s:?} injects into {t:?}: {}", subset_leq(&le, &s, &t));

    // The first increasing pair in a sequence over N^2.
    let seq: Vec<Vec<u32>> = (0..20u32).map(|i| vec![(7 * i) % 5, 9u32.saturating_sub(i / 2)]).collect();
    'outer: for j in 0..seq.len() {
        for i in 0..j {
            if le(&seq[i], &seq[j]) {
                println!("first good pair: #{i} {:?} <= #{j} {:?}", seq[i], seq[j]);
                break 'outer;
            }
        }
    }
}
