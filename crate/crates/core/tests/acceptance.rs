//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints its PASS/FAIL line even when all of them pass.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wcoalg::automaton::{StateVector, WeightedAutomaton};
use wcoalg::bloom::{check_factorization_along, check_functoriality_axiom, check_solution_axiom, SeriesInstance};
use wcoalg::determinize::{concretize_locally_finite, determinize, NondetAutomaton};
use wcoalg::equivalence::{decide_equivalence, Verdict};
use wcoalg::gen;
use wcoalg::io::{automaton_to_value, to_canonical_string};
use wcoalg::lab::{self, search_chains, term_behavior, SearchBounds, UBound, UnarySignatureTerm};
use wcoalg::semiring::{semiring_laws_check, Boolean, CheckMode, Integer, Natural, Rational, Semiring, Tropical};
use wcoalg::simulation::{apply_simulation, check_simulation, SimulationMatrix};
use wcoalg::zigzag::{construct_zigzag, verify_zigzag, verify_zigzag_relates, ZigZagWitness};

use common::{first_difference, nfa_accepts, rational_path_sum, seed_from_env};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn laws(seed: u64) -> Outcome {
    let b = semiring_laws_check::<Boolean>(0, seed);
    ensure(b.mode == CheckMode::Exhaustive, || "boolean check was not exhaustive".into())?;
    let reports = [
        b,
        semiring_laws_check::<Natural>(1000, seed),
        semiring_laws_check::<Integer>(1000, seed),
        semiring_laws_check::<Rational>(1000, seed),
        semiring_laws_check::<Tropical>(1000, seed),
    ];
    for r in &reports {
        ensure(r.is_clean(), || format!("{r}"))?;
    }
    Ok("B exhaustive; N, Z, Q, tropical 1000 triples each; no violations".into())
}

fn behavior_oracle(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = gen::letters(2);
    let words = sigma.words_up_to(6);
    for i in 0..200 {
        let n = rng.gen_range(1..=4);
        let dense = rng.gen_bool(0.5);
        let aut = gen::rational_automaton(&mut rng, n, &sigma, dense);
        let v = gen::rational_vector(&mut rng, n, false);
        for w in &words {
            let got = aut.behavior(&v, w).map_err(|e| e.to_string())?;
            let want = rational_path_sum(&aut, &v, w);
            ensure(got == want, || format!("automaton {i} word {:?}: {got} vs oracle {want}", sigma.format_word(w)))?;
        }
    }
    Ok(format!("200 automata x {} words match the path-sum oracle", words.len()))
}

fn equivalence(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = gen::letters(2);
    let (mut eq, mut neq) = (0, 0);
    for i in 0..200 {
        let p = if i % 2 == 0 {
            let n = rng.gen_range(1..=3);
            gen::conjugate_pair(&mut rng, n, &sigma, false)
        } else {
            gen::independent_pair(&mut rng, 3, &sigma, false)
        };
        let verdict = decide_equivalence(&p.left, &p.v1, &p.right, &p.v2).map_err(|e| e.to_string())?;
        let depth = p.left.states() + p.right.states();
        let oracle = first_difference(&p.left, &p.v1, &p.right, &p.v2, depth);
        ensure(verdict.is_equivalent() == oracle.is_none(), || {
            format!("pair {i}: verdict {} but truncated comparison found {oracle:?}", verdict.verdict.as_str())
        })?;
        match verdict.verdict {
            Verdict::Equivalent => eq += 1,
            Verdict::Inequivalent => {
                neq += 1;
                let cx = verdict.counterexample.as_ref().ok_or("inequivalent verdict without counterexample")?;
                let l = p.left.behavior(&p.v1, &cx.word).map_err(|e| e.to_string())?;
                let r = p.right.behavior(&p.v2, &cx.word).map_err(|e| e.to_string())?;
                ensure(l != r && l == cx.lhs && r == cx.rhs, || format!("pair {i}: counterexample does not reconfirm"))?;
            }
            Verdict::Unsupported => return Err(format!("pair {i}: unsupported")),
        }
    }
    Ok(format!("{eq} equivalent, {neq} inequivalent, all agree with the oracle"))
}

fn mutated(w: &ZigZagWitness<Rational>) -> Vec<(String, ZigZagWitness<Rational>)> {
    let bump = |x: &Rational| x.add(&Rational::one());
    let mut out = Vec::new();
    for (j, arrow) in w.arrows.iter().enumerate() {
        for r in 0..arrow.matrix.rows() {
            for c in 0..arrow.matrix.cols() {
                let mut bad = w.clone();
                let x = bump(bad.arrows[j].matrix.get(r, c));
                bad.arrows[j].matrix.set(r, c, x);
                out.push((format!("arrow {j} entry ({r},{c})"), bad));
            }
        }
    }
    for (k, aut) in w.automata.iter().enumerate() {
        for a in 0..aut.alphabet().len() {
            for r in 0..aut.states() {
                for c in 0..aut.states() {
                    let mut bad = w.clone();
                    let m = &mut bad.automata[k].transitions_mut()[a];
                    let x = bump(m.get(r, c));
                    m.set(r, c, x);
                    out.push((format!("automaton {k} letter {a} entry ({r},{c})"), bad));
                }
            }
        }
        for r in 0..aut.states() {
            let mut bad = w.clone();
            let o = &mut bad.automata[k].output_mut()[r];
            *o = bump(o);
            out.push((format!("automaton {k} output {r}"), bad));
        }
    }
    out
}

fn zigzag_round_trip(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = gen::letters(2);
    let mut mutations = 0;
    for i in 0..100 {
        let p = gen::equivalent_pair(&mut rng, 3, &sigma, true);
        let w = construct_zigzag(&p.left, &p.v1, &p.right, &p.v2).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(w.arrows.len() == 4, || format!("pair {i}: {} arrows", w.arrows.len()))?;
        verify_zigzag(&w).map_err(|v| format!("pair {i}: {v}"))?;
        verify_zigzag_relates(&w, &p.v1, &p.v2).map_err(|v| format!("pair {i}: {v}"))?;
        for (what, bad) in mutated(&w) {
            mutations += 1;
            ensure(verify_zigzag(&bad).is_err(), || format!("pair {i}: mutation of {what} still verifies"))?;
        }
    }
    Ok(format!("100 witnesses verify; {mutations} single-entry mutations all rejected"))
}

fn transport(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = gen::letters(2);
    let words = sigma.words_up_to(5);
    let mut sims = Vec::new();
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let aut = gen::rational_automaton(&mut rng, n, &sigma, false);
        for s in gen::simulations_from(&mut rng, &aut) {
            sims.push((s.kind.to_string(), s.source, s.target, s.matrix));
        }
        let p = gen::equivalent_pair(&mut rng, 3, &sigma, false);
        let w = construct_zigzag(&p.left, &p.v1, &p.right, &p.v2).map_err(|e| e.to_string())?;
        for (j, a) in w.arrows.iter().enumerate() {
            sims.push((format!("zig-zag arrow {j}"), w.automata[a.from].clone(), w.automata[a.to].clone(), a.matrix.clone()));
        }
    }
    for (kind, src, tgt, h) in &sims {
        ensure(check_simulation(src, tgt, h).map_err(|e| e.to_string())?.passed(), || format!("{kind} is not a simulation"))?;
        for _ in 0..20 {
            let v = gen::rational_vector(&mut rng, src.states(), false);
            let moved = apply_simulation(h, &v).map_err(|e| e.to_string())?;
            for w in &words {
                ensure(rational_path_sum(src, &v, w) == rational_path_sum(tgt, &moved, w), || format!("{kind}: transport fails on {:?}", sigma.format_word(w)))?;
            }
        }
    }
    Ok(format!("{} simulations x 20 vectors x {} words", sims.len(), words.len()))
}

fn subset_construction(seed: u64) -> Outcome {
    let sigma = gen::letters(2);
    let mut ends_in_a = NondetAutomaton::without_transitions(sigma.clone(), vec![Boolean(false), Boolean(true)]);
    for (x, a, y) in [(0, 0, 0), (0, 0, 1), (0, 1, 0)] {
        ends_in_a.add_edge(x, a, y, Boolean(true)).map_err(|e| e.to_string())?;
    }
    let start = StateVector(vec![Boolean(true), Boolean(false)]);
    let dfa = concretize_locally_finite(&determinize(&ends_in_a), &start).map_err(|e| e.to_string())?;
    ensure(dfa.len() == 2, || format!("ends-in-a has {} states", dfa.len()))?;
    ensure(dfa.outputs == vec![Boolean(false), Boolean(true)], || "ends-in-a outputs".into())?;
    ensure(dfa.delta == vec![vec![1, 0], vec![1, 0]], || format!("ends-in-a delta {:?}", dfa.delta))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = sigma.words_up_to(8);
    for i in 0..50 {
        let n = rng.gen_range(1..=4);
        let nd = gen::boolean_nfa(&mut rng, n, &sigma, 0.35);
        let start: Vec<bool> = (0..n).map(|x| x == 0 || rng.gen_bool(0.25)).collect();
        let v = StateVector(start.iter().map(|&b| Boolean(b)).collect());
        let dfa = concretize_locally_finite(&determinize(&nd), &v).map_err(|e| e.to_string())?;
        for w in &words {
            ensure(dfa.run(w).0 == nfa_accepts(&nd, &start, w), || format!("nfa {i} disagrees on {:?}", sigma.format_word(w)))?;
        }
    }
    Ok(format!("ends-in-a gives the 2-state DFA; 50 NFAs agree on {} words", words.len()))
}

fn bloom(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = gen::letters(2);
    let inst = SeriesInstance::new(2);
    let mut sims = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=3);
        let aut = gen::rational_automaton(&mut rng, n, &sigma, false);
        let r = check_solution_axiom(&inst, &aut, 8, 2, seed + i).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
        for s in gen::simulations_from(&mut rng, &aut) {
            let h = SimulationMatrix::new(&s.source, &s.target, s.matrix.clone()).map_err(|e| e.to_string())?;
            let r = check_functoriality_axiom(&inst, &h, 8, 2, seed + i).map_err(|e| e.to_string())?;
            ensure(r.passed(), || r.to_string())?;
            sims += 1;
        }
    }
    for i in 0..20 {
        let p = gen::equivalent_pair(&mut rng, 3, &sigma, false);
        let w = construct_zigzag(&p.left, &p.v1, &p.right, &p.v2).map_err(|e| e.to_string())?;
        let r = check_factorization_along(&inst, &w, 8).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
        let s1 = p.left.truncated_behavior(&p.v1, 8).map_err(|e| e.to_string())?;
        let s2 = p.right.truncated_behavior(&p.v2, 8).map_err(|e| e.to_string())?;
        ensure(s1 == s2, || format!("zig-zag pair {i}: series differ at depth 8"))?;
    }
    Ok(format!("100 automata, {sims} simulations, 20 zig-zag pairs at depth 8"))
}

fn stream_values() -> Outcome {
    let a = lab::successor_u();
    let t = |s: &str| UnarySignatureTerm::parse(s).map_err(|e| e.to_string());
    let x = term_behavior(&a, &t("x")?, 5).map_err(|e| e.to_string())?;
    let u = term_behavior(&a, &t("u(x)")?, 4).map_err(|e| e.to_string())?;
    let v = term_behavior(&a, &t("v(x)")?, 4).map_err(|e| e.to_string())?;
    ensure(x == [0, 1, 2, 3, 4], || format!("x gives {x:?}"))?;
    ensure(u == [1, 2, 3, 4] && v == [1, 2, 3, 4], || format!("u(x) gives {u:?}, v(x) gives {v:?}"))?;
    Ok("x -> (0,1,2,3,4); u(x), v(x) -> (1,2,3,4)".into())
}

fn separation(seed: u64) -> Outcome {
    let (a, b) = (lab::successor_u(), lab::successor_v());
    let (x, y) = (UnarySignatureTerm::generator("x"), UnarySignatureTerm::generator("y"));
    let ua = lab::u_bounded(&a, &x).map_err(|e| e.to_string())?;
    let ub = lab::u_bounded(&b, &y).map_err(|e| e.to_string())?;
    ensure(ua == UBound::Unbounded, || format!("a,x: {ua:?}"))?;
    ensure(ub == UBound::Bounded(0), || format!("b,y: {ub:?}"))?;
    let bounds = SearchBounds::default();
    ensure(bounds == SearchBounds { max_generators: 2, max_word: 2, max_chain: 2 }, || format!("default bounds {bounds:?}"))?;
    let s = search_chains(&a, &x, &b, &y, bounds).map_err(|e| e.to_string())?;
    ensure(s.found.is_none(), || format!("chain found: {:?}", s.found))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..200 {
        let m = lab::random_morphism(&mut rng, 2);
        let inv = lab::check_u_boundedness_invariance(&m.source, &m.target, &m.map, &m.term).map_err(|e| format!("morphism {i}: {e}"))?;
        ensure(inv.holds(), || format!("morphism {i}: {inv:?}"))?;
    }
    Ok(format!(
        "no chain among {} coalgebras / {} morphisms; invariance holds on 200 morphisms",
        s.coalgebras, s.morphisms
    ))
}

fn gating() -> Outcome {
    let dir = std::env::temp_dir().join(format!("wcoalg-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let aut = WeightedAutomaton::new(gen::letters(1), vec![Tropical::finite(0)], vec![wcoalg::linalg::Matrix::identity(1)], None)
        .map_err(|e| e.to_string())?;
    let f = dir.join("tropical.json");
    std::fs::write(&f, to_canonical_string(&automaton_to_value(&aut))).map_err(|e| e.to_string())?;
    let f = f.to_str().unwrap();
    let mut seen = Vec::new();
    for (cmd, flag) in [("equiv", "supports_equivalence_decision"), ("witness", "supports_witness_construction")] {
        let o = Command::new(env!("CARGO_BIN_EXE_wcoalg")).args([cmd, f, f]).output().map_err(|e| e.to_string())?;
        let err = String::from_utf8_lossy(&o.stderr);
        ensure(o.status.code() == Some(2), || format!("{cmd} exited {:?}", o.status.code()))?;
        ensure(o.stdout.is_empty(), || format!("{cmd} printed a verdict"))?;
        ensure(err.contains("unsupported") && err.contains(flag), || format!("{cmd}: {err}"))?;
        seen.push(cmd);
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} exit 2 naming the capability flag", seen.join(" and ")))
}

fn main() -> ExitCode {
    let seed = seed_from_env(20261016);
    type Criterion<'a> = (&'a str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("semiring laws", Some(Duration::from_secs(1)), Box::new(|| laws(seed))),
        ("behavior oracle", Some(Duration::from_secs(30)), Box::new(|| behavior_oracle(seed))),
        ("equivalence correctness", Some(Duration::from_secs(60)), Box::new(|| equivalence(seed))),
        ("zig-zag round trip", Some(Duration::from_secs(60)), Box::new(|| zigzag_round_trip(seed))),
        ("simulation transport", None, Box::new(|| transport(seed))),
        ("subset construction", None, Box::new(|| subset_construction(seed))),
        ("bloom axioms", None, Box::new(|| bloom(seed))),
        ("stream values", None, Box::new(stream_values)),
        ("separation evidence", Some(Duration::from_secs(120)), Box::new(|| separation(seed))),
        ("capability gating", None, Box::new(gating)),
    ];
    println!("acceptance seed={seed}");
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut result = run();
        let elapsed = t.elapsed();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if elapsed > *limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match result {
            Ok(msg) => println!("PASS criterion {}: {name} ({elapsed:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
