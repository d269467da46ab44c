//! The acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tcnet::automata::{initial_states, membership, step, Automaton, Guard, StoreOp, StoreSpec, VisiblyAlphabet};
use tcnet::channel::{
    check_conditions_ef, gen_complement_ta, gen_condition10_vonca, gen_exclusion_net, gen_universality_automaton,
    generate_corpus, infer_n, member_lc, member_lef, Bounds, ChannelConfig, ChannelMachine, Condition, CorpusTag, Mode,
};
use tcnet::fixtures::{
    anbm_net, demo_encoding, demo_machine, demo_variant_machine, inclusion_suite, product_fixtures, region_configs,
    region_pair,
};
use tcnet::inclusion::{check_inclusion, check_universality, InclusionOptions, Verdict};
use tcnet::mtl::eval_at;
use tcnet::regionwords::{dominated, Product};
use tcnet::sample::{random_accepted_word, SampleOptions};
use tcnet::wqo::{embed_leq, subset_leq, subword_leq, vec_leq};

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn accepts(aut: &Automaton, w: &tcnet::TimedWord) -> bool {
    membership(aut, w).expect("letters in alphabet").accepted
}

fn encoding_example() -> Outcome {
    let (a, b) = region_pair();
    let p = Product::new(&a, &b).map_err(|e| e.to_string())?;
    ensure(p.cmax == 2, format!("cmax is {}", p.cmax))?;
    let (c2, c3) = region_configs(&a, &b);
    let rendered = p.render(&p.encode(&c2));
    let word: String = rendered.trim_start_matches("[l] ").replace('|', "");
    let expected = "{(l1,x,1,(1,1))}{(l,y,1,(0,0))}{(l3,x,0,(0,1))}{(l2,x,0,(1,1))}{(l1,x,⊤,(0,0))}";
    ensure(word == expected, format!("enc(C2) = {word}"))?;
    ensure(p.encode(&c2) == p.encode(&c3), "C2 and C3 differ")?;
    let w1 = p.parse_word("[l] {(l1,x,1,(1,0))}{(l,y,1,(0,0))}{(l2,x,0,(1,1))}|{}")?;
    let w2 = p.encode(&c2);
    ensure(dominated(&w1, &w2) && brute_dominated(&w1, &w2), "w1 is not dominated by w2")?;
    ensure(!dominated(&w2, &w1) && !brute_dominated(&w2, &w1), "w2 is dominated by w1")?;
    Ok(format!("enc(C2) = {word}"))
}

fn exclusion_net_replay() -> Outcome {
    let c = demo_machine();
    let net = gen_exclusion_net(&c);
    let w = demo_encoding();
    let mut states = initial_states(&net);
    let mut heights = Vec::new();
    let mut previous = tcnet::Rational::zero();
    for (letter, t) in w.events() {
        let next: BTreeSet<_> = states.iter().flat_map(|s| step(&net, s, *t - previous, letter)).collect();
        previous = *t;
        if next.is_empty() {
            heights.push(None);
            break;
        }
        ensure(next.len() == 1, "the net is not deterministic on this word")?;
        heights.push(next.iter().next().and_then(|s| s.store.height()));
        states = next.into_iter().collect();
    }
    let seq: Vec<String> = heights.iter().map(|h| h.map_or("blocked".to_string(), |h| h.to_string())).collect();
    ensure(heights[..3] == [Some(1), Some(2), Some(3)], format!("prefix counters {seq:?}"))?;
    let sf = w.untimed().iter().position(|a| *a == "s_F").expect("s_F in word");
    ensure(heights[sf] == Some(3), format!("counter at s_F is {:?}", heights[sf]))?;
    ensure(heights[sf + 1..] == [Some(2), Some(1), Some(0), None], format!("suffix counters {seq:?}"))?;
    ensure(!accepts(&net, &w), "membership accepted")?;
    Ok(format!("counters {}", seq.join(",")))
}

fn encoding_classification() -> Outcome {
    let c = demo_machine();
    let w = demo_encoding();
    ensure(infer_n(&w, &c) == Some(2), "n is not 2")?;
    ensure(member_lc(&w, &c).map_err(|e| e.to_string())?, "not in L(C)")?;
    ensure(!member_lef(&w, &c).map_err(|e| e.to_string())?, "in L_ef(C)")?;
    let violated = check_conditions_ef(&w, &c, 2).map_err(|e| e.to_string())?;
    ensure(violated == BTreeSet::from([Condition::C10]), format!("violated {violated:?}"))?;
    ensure(accepts(&gen_condition10_vonca(&c), &w), "condition-10 automaton rejects")?;
    ensure(!accepts(&gen_exclusion_net(&c), &w), "exclusion net accepts")?;
    Ok("in L(C,2), not in L_ef(C,2) by condition 10".into())
}

fn bisimulation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fixtures = product_fixtures();
    let mut checked = 0;
    for k in 0..200 {
        let (name, a, b) = &fixtures[k % fixtures.len()];
        let p = Product::new(a, b).map_err(|e| e.to_string())?;
        let c1 = random_joint(&p, &mut rng);
        let c2 = perturb(&c1, p.cmax, &mut rng);
        ensure(p.encode(&c1) == p.encode(&c2), format!("{name}: perturbation changed the encoding"))?;
        for letter in &p.letters {
            let s1 = grid_successors(&p, &c1, letter);
            let s2 = grid_successors(&p, &c2, letter);
            ensure(s1 == s2, format!("{name}: {c1:?} and {c2:?} disagree on {letter}"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} pairs"))
}

fn downward_compatibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pools = Vec::new();
    for (name, a, b) in product_fixtures() {
        let p = Product::new(&a, &b).map_err(|e| e.to_string())?;
        let words = reachable_words(&p, 600);
        let mut strict = Vec::new();
        for w1 in &words {
            for w2 in &words {
                if w1 != w2 && dominated(w1, w2) {
                    strict.push((name, a.clone(), b.clone(), w1.clone(), w2.clone()));
                }
            }
        }
        strict.shuffle(&mut rng);
        pools.push(strict);
    }
    // An even share per fixture, topped up from the larger pools.
    let mut pairs = Vec::new();
    for pool in &mut pools {
        let k = pool.len().min(67);
        pairs.extend(pool.drain(..k));
    }
    for pool in &mut pools {
        let k = pool.len().min(200usize.saturating_sub(pairs.len()));
        pairs.extend(pool.drain(..k));
    }
    let mut counts = std::collections::BTreeMap::new();
    for (name, ..) in &pairs {
        *counts.entry(*name).or_insert(0) += 1;
    }
    let counts: Vec<String> = counts.iter().map(|(n, k)| format!("{n} {k}")).collect();
    ensure(pairs.len() == 200, format!("only {} dominated pairs", pairs.len()))?;
    for (name, a, b, w1, w2) in pairs.iter().take(200) {
        let p = Product::new(a, b).map_err(|e| e.to_string())?;
        for letter in &p.letters {
            let s1 = p.successors(w1, letter);
            for v2 in p.successors(w2, letter) {
                if !s1.iter().any(|v1| dominated(v1, &v2)) {
                    return Err(format!(
                        "{name}: {} -{letter}-> {} is not matched from {}",
                        p.render(w2),
                        p.render(&v2),
                        p.render(w1)
                    ));
                }
            }
        }
    }
    Ok(format!("200 pairs ({})", counts.join(", ")))
}

fn abstraction_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, a, b) in product_fixtures() {
        let p = Product::new(&a, &b).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let c = random_joint(&p, &mut rng);
            let w = p.encode(&c);
            for letter in &p.letters {
                if p.successors(&w, letter) != grid_successors(&p, &c, letter) {
                    return Err(format!("{name}: successors of {} on {letter} differ", p.render(&w)));
                }
            }
        }
    }
    Ok("300 configurations".into())
}

fn all_words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..alphabet {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn wqo_oracles() -> Outcome {
    // 0 and 1 are incomparable, both below 2.
    let base = |x: &usize, y: &usize| x == y || *y == 2;
    let words = all_words(3, 6);
    let mut n = 0u64;
    for s in &words {
        for t in &words {
            if embed_leq(&base, s, t) != brute_embed(&base, s, t) {
                return Err(format!("embed_leq({s:?}, {t:?})"));
            }
            if subword_leq(s, t) != brute_embed(&|x: &usize, y: &usize| x == y, s, t) {
                return Err(format!("subword_leq({s:?}, {t:?})"));
            }
            n += 1;
        }
    }
    let universe: Vec<[u32; 2]> = (0..3).flat_map(|a| (0..3).map(move |b| [a, b])).collect();
    let sets: Vec<Vec<[u32; 2]>> = (0u32..1 << universe.len())
        .filter(|m| m.count_ones() <= 5)
        .map(|m| universe.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| *v).collect())
        .collect();
    let leq = |x: &[u32; 2], y: &[u32; 2]| vec_leq(x, y).expect("same dimension");
    for a in &sets {
        for b in &sets {
            if subset_leq(&leq, a, b) != brute_subset(&leq, a, b) {
                return Err(format!("subset_leq({a:?}, {b:?})"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn inclusion_end_to_end() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let suite = inclusion_suite();
    ensure(suite.len() >= 10, "fewer than 10 fixtures")?;
    let options = SampleOptions::default();
    for f in &suite {
        let verdict =
            check_inclusion(&f.a, &f.b, &InclusionOptions::default()).map_err(|e| format!("{}: {e}", f.name))?;
        ensure(verdict.is_included() == f.included, format!("{}: wrong verdict", f.name))?;
        match verdict {
            Verdict::NotIncluded(cex) => {
                ensure(
                    accepts(&f.a, &cex.witness) && !accepts(&f.b, &cex.witness),
                    format!("{}: bad witness", f.name),
                )?;
            }
            Verdict::Included => {
                let mut sampled = 0;
                for _ in 0..20_000 {
                    if sampled == 1000 {
                        break;
                    }
                    if let Some(w) = random_accepted_word(&f.a, &mut rng, &options) {
                        sampled += 1;
                        ensure(accepts(&f.b, &w), format!("{}: {w} is in L(A) but not in L(B)", f.name))?;
                    }
                }
                ensure(sampled == 1000, format!("{}: only {sampled} samples", f.name))?;
            }
        }
    }
    Ok(format!("{} fixtures", suite.len()))
}

fn universality() -> Outcome {
    let options = InclusionOptions::default();
    let mut universal = Automaton::new(VisiblyAlphabet::flat(["a", "b"]), StoreSpec::Counters(1));
    let u = universal.location("u");
    universal.set_initial(u);
    universal.set_accepting(u);
    for l in ["a", "b"] {
        universal.add_edge(u, l, Guard::always(), StoreOp::Update(vec![0]), vec![], u);
    }
    let mut blocking = Automaton::new(VisiblyAlphabet::flat(["a"]), StoreSpec::Counters(1));
    let p = blocking.location("p");
    blocking.set_initial(p);
    blocking.set_accepting(p);
    blocking.add_edge(p, "a", Guard::always(), StoreOp::Update(vec![-1]), vec![], p);
    let v = check_universality(&universal, &options).map_err(|e| e.to_string())?;
    ensure(v.is_included(), "trivial net is not universal")?;
    let mut witnesses = Vec::new();
    for (name, b) in [("anbm", anbm_net()), ("blocking-decrement", blocking)] {
        let v = check_universality(&b, &options).map_err(|e| format!("{name}: {e}"))?;
        let cex = v.counterexample().ok_or(format!("{name}: reported universal"))?;
        ensure(!accepts(&b, &cex.witness), format!("{name}: witness accepted"))?;
        witnesses.push(format!("{name} {}", cex.witness));
    }
    Ok(witnesses.join("; "))
}

fn oracle_corpus(c: &ChannelMachine, seed: u64) -> Result<BTreeSet<CorpusTag>, String> {
    let complement = gen_complement_ta(c);
    let universality = gen_universality_automaton(c);
    let mut tags = BTreeSet::new();
    for e in generate_corpus(c, seed, 500) {
        tags.insert(e.tag);
        let lc = member_lc(&e.word, c).map_err(|e| e.to_string())?;
        let lef = member_lef(&e.word, c).map_err(|e| e.to_string())?;
        ensure(accepts(&complement, &e.word) != lc, format!("complement mismatch on {} {}", e.tag, e.word))?;
        ensure(accepts(&universality, &e.word) != lef, format!("universality mismatch on {} {}", e.tag, e.word))?;
    }
    Ok(tags)
}

fn gadget_oracle() -> Outcome {
    let tags = oracle_corpus(&demo_machine(), 10)?;
    for t in [CorpusTag::ValidFaulty, CorpusTag::Mutant, CorpusTag::Random] {
        ensure(tags.contains(&t), format!("no {t} words"))?;
    }
    let variant = oracle_corpus(&demo_variant_machine(), 11)?;
    ensure(variant.contains(&CorpusTag::ValidEf), "no error-free encodings for the variant machine")?;
    Ok("2 x 500 words, 0 mismatches".into())
}

fn channel_search() -> Outcome {
    let c = demo_machine();
    ensure(
        c.reachable("s_F", Mode::Exact, Bounds { max_channel_len: 5, max_depth: 50 }).is_none(),
        "exact search found s_F",
    )?;
    let found = c
        .reachable("s_F", Mode::Faulty, Bounds { max_channel_len: 3, max_depth: 10 })
        .ok_or("faulty search found nothing")?;
    ensure(found.is_valid(&c), "found computation does not step-check")?;
    Ok(found.to_string())
}

fn faulty_characterization() -> Outcome {
    let c = demo_machine();
    let channels = all_words(3, 4);
    let word = |v: &Vec<usize>| -> Vec<String> { v.iter().map(|&i| c.messages[i].clone()).collect() };
    let all: Vec<Vec<String>> = channels.iter().map(word).collect();
    let long: Vec<Vec<String>> = all_words(3, 5).iter().map(word).collect();
    let mut checked = 0u64;
    for s1 in &c.states {
        for l in c.labels() {
            for x1 in &all {
                let images: Vec<(usize, ChannelConfig)> = long
                    .iter()
                    .filter(|x| subword_leq(x1, x))
                    .flat_map(|x| {
                        let cfg = ChannelConfig { state: s1.clone(), channel: x.clone() };
                        c.step_exact(&cfg, &l).into_iter().map(move |y| (x.len(), y))
                    })
                    .collect();
                let a = ChannelConfig { state: s1.clone(), channel: x1.clone() };
                for x2 in &all {
                    for s2 in &c.states {
                        let b = ChannelConfig { state: s2.clone(), channel: x2.clone() };
                        let brute = images
                            .iter()
                            .any(|(n, y)| *n <= x2.len() + 1 && y.state == *s2 && subword_leq(&y.channel, x2));
                        if c.step_faulty_check(&a, &l, &b) != brute {
                            return Err(format!("{a} -{l}-> {b}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} triples"))
}

fn mtl_differential() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let letters = ["a", "b", "c"];
    for _ in 0..1000 {
        let w = random_timed_word(&mut rng, &letters, 6);
        let f = random_formula(&mut rng, &letters, 4);
        let i = rng.gen_range(1..=w.len());
        let got = eval_at(&w, i, &f).map_err(|e| e.to_string())?;
        ensure(got == enumerate_mtl(&w, i, &f), format!("({w}, {i}) |= {f}"))?;
    }
    Ok("1000 pairs".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 13] = [
        ("encoding example", encoding_example),
        ("exclusion-net replay", exclusion_net_replay),
        ("encoding classification", encoding_classification),
        ("bisimulation", bisimulation),
        ("downward compatibility", downward_compatibility),
        ("abstraction oracle", abstraction_oracle),
        ("WQO oracles", wqo_oracles),
        ("inclusion end-to-end", inclusion_end_to_end),
        ("universality", universality),
        ("gadget oracle equivalence", gadget_oracle),
        ("channel search", channel_search),
        ("faulty-step characterization", faulty_characterization),
        ("MTL differential", mtl_differential),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
