//! End-to-end acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so that the report is always
//! printed; the process fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use involution::bench::{gen_benchmark, Benchmark};
use involution::buchberger::buchberger_reduced_gb;
use involution::division::{compute_separation, find_involutive_divisor_scan};
use involution::engine::{involutive_basis_v1_traced, involutive_basis_v2, involutivity_witness, Completion};
use involution::hilbert::{hf_bruteforce, hf_eval, hp_eval, HilbertInput};
use involution::input::parse_system;
use involution::janet_tree::JanetTree;
use involution::monomial_completion::{complete_monomial_set, MonomialSet};
use involution::{Criteria, Division, EngineConfig, Error, Monomial, MonomialOrder, Polynomial, Selection, VarSet};

use MonomialOrder::{DegRevLex, Lex};

/// A basis produced by one of the completion criteria, kept for the
/// certificate and Hilbert checks.
struct Produced {
    label: String,
    order: MonomialOrder,
    division: Division,
    basis: Vec<Polynomial>,
}

#[derive(Default)]
struct Ctx {
    produced: Vec<Produced>,
}

impl Ctx {
    fn keep(&mut self, label: impl Into<String>, order: MonomialOrder, division: Division, basis: &[Polynomial]) {
        self.produced.push(Produced {
            label: label.into(),
            order,
            division,
            basis: basis.to_vec(),
        });
    }
}

fn poly(vars: &[&str], order: MonomialOrder, text: &str) -> Polynomial {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    involution::input::parse_polynomial(text, &vars, order).unwrap()
}

fn polys(vars: &[&str], order: MonomialOrder, texts: &[&str]) -> Vec<Polynomial> {
    texts.iter().map(|t| poly(vars, order, t)).collect()
}

fn m(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn vs(one_based: &[usize]) -> VarSet {
    VarSet::from_indices(one_based.iter().map(|i| i - 1))
}

fn within(limit: Duration, start: Instant, what: &str) {
    let took = start.elapsed();
    assert!(took < limit, "{what} took {took:?}, limit {limit:?}");
}

fn sorted(mut v: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    v.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    v
}

fn janet(order: MonomialOrder) -> EngineConfig {
    EngineConfig::new(order, Division::Janet)
}

fn cubic_pair() -> Vec<Polynomial> {
    polys(&["x", "y"], Lex, &["x^2*y - 1", "x*y^2 - 1"])
}

fn criterion_1(ctx: &mut Ctx) {
    let start = Instant::now();
    let r = involutive_basis_v2(&cubic_pair(), &janet(Lex)).unwrap();
    within(Duration::from_secs(1), start, "cubic pair");
    let want = polys(&["x", "y"], Lex, &["x - y", "y^3 - 1"]);
    assert_eq!(r.basis, want);
    assert_eq!(r.groebner, want);
    assert_eq!(buchberger_reduced_gb(&cubic_pair(), Lex).unwrap(), want);
    ctx.keep("cubic pair", Lex, Division::Janet, &r.basis);
}

fn criterion_2(ctx: &mut Ctx) {
    let start = Instant::now();
    let cfg = EngineConfig {
        selection: Selection::Smallest,
        ..janet(Lex)
    };
    let (c, rows) = involutive_basis_v1_traced(&cubic_pair(), &cfg).unwrap();
    within(Duration::from_secs(1), start, "trajectory");
    let v = ["x", "y"];
    let q = |t: &str| poly(&v, Lex, t);
    let x = vs(&[1]);
    let e = VarSet::EMPTY;
    let want: Vec<(Vec<(Polynomial, VarSet)>, Vec<Polynomial>)> = vec![
        (vec![(q("x*y^2 - 1"), e)], vec![q("x^2*y - 1")]),
        (
            vec![(q("x^2*y - 1"), e), (q("x*y^2 - 1"), x)],
            vec![q("x^2*y^2 - x")],
        ),
        (vec![(q("x - y"), e)], vec![q("x*y^2 - 1"), q("x^2*y - 1")]),
        (
            vec![(q("x - y"), e), (q("y^3 - 1"), x)],
            vec![q("x^2*y - 1"), q("x*y^3 - x")],
        ),
        (vec![(q("x - y"), e), (q("y^3 - 1"), x)], vec![]),
    ];
    assert_eq!(rows.len(), want.len(), "row count");
    for (i, (row, (g, queue))) in rows.iter().zip(want).enumerate() {
        assert_eq!(row.basis, g, "row {i} basis");
        assert_eq!(sorted(row.queue.clone(), Lex), sorted(queue, Lex), "row {i} queue");
    }
    ctx.keep("cubic pair (simple algorithm)", Lex, Division::Janet, &c.basis);
}

fn criterion_3(_: &mut Ctx) {
    let u = [m(&[2, 0, 1]), m(&[1, 1, 0]), m(&[1, 0, 2])];
    let j = compute_separation(Division::Janet, &u).unwrap();
    let janet_m = [vs(&[1, 2, 3]), vs(&[2, 3]), vs(&[3])];
    let janet_nm = [vs(&[]), vs(&[1]), vs(&[1, 2])];
    let l = compute_separation(Division::LexInduced, &u).unwrap();
    let lex_m = [vs(&[1]), vs(&[1, 2]), vs(&[1, 2, 3])];
    let lex_nm = [vs(&[2, 3]), vs(&[3]), vs(&[])];
    for i in 0..3 {
        assert_eq!(j.multiplicative(i), janet_m[i], "Janet M of {}", u[i]);
        assert_eq!(j.non_multiplicative(i), janet_nm[i], "Janet NM of {}", u[i]);
        assert_eq!(l.multiplicative(i), lex_m[i], "lex induced M of {}", u[i]);
        assert_eq!(l.non_multiplicative(i), lex_nm[i], "lex induced NM of {}", u[i]);
    }
    // Pommaret cells except x1*x3^2
    let p = compute_separation(Division::Pommaret, &u).unwrap();
    assert_eq!(p.multiplicative(0), vs(&[3]));
    assert_eq!(p.non_multiplicative(0), vs(&[1, 2]));
    assert_eq!(p.multiplicative(1), vs(&[2, 3]));
    assert_eq!(p.non_multiplicative(1), vs(&[1]));
}

fn criterion_4(_: &mut Ctx) {
    let u = MonomialSet::from_vec(vec![m(&[2, 0, 1]), m(&[1, 1, 0]), m(&[1, 0, 2])]).unwrap();
    let added = |d: Division| -> Vec<Monomial> {
        let c = complete_monomial_set(d, &u, MonomialOrder::DegLex, 12).unwrap();
        c.as_slice().iter().filter(|w| !u.contains(w)).cloned().collect()
    };
    assert_eq!(added(Division::Janet), vec![m(&[2, 1, 0])]);
    assert_eq!(added(Division::LexInduced), vec![m(&[1, 1, 1])]);
    let r = complete_monomial_set(Division::Pommaret, &u, MonomialOrder::DegLex, 12);
    assert!(matches!(r, Err(Error::BoundExceeded { bound: 12, .. })), "{r:?}");
}

fn criterion_5(ctx: &mut Ctx) {
    let f = parse_system(
        "vars: x y z\norder: degrevlex\n\
         8*x^2*y^2 + 5*x*y^3 + 3*x^3*z + x^2*y*z\n\
         x^5 + 2*y^3*z^2 + 13*y^2*z^3 + 5*y*z^4\n\
         8*x^3 + 12*y^3 + x*z^2 + 3\n\
         7*x^2*y^4 + 18*x*y^3*z^2 + y^3*z^3\n",
    )
    .unwrap();
    let start = Instant::now();
    let r = involutive_basis_v2(&f.polys, &janet(DegRevLex)).unwrap();
    within(Duration::from_secs(5), start, "mixed system");
    let v = ["x", "y", "z"];
    let gb = polys(&v, DegRevLex, &["4*y^3 + 1", "z^2", "x"]);
    assert_eq!(sorted(r.groebner.clone(), DegRevLex), sorted(gb.clone(), DegRevLex));
    let mut full = gb;
    full.extend(polys(&v, DegRevLex, &["y*z^2", "y^2*z^2"]));
    assert_eq!(r.basis, sorted(full, DegRevLex));
    let digits = r.stats.max_intermediate_digits();
    assert!(digits <= 1000, "intermediate coefficients reached {digits} digits");
    println!("    mixed system: {digits} digits at most, {:?}", start.elapsed());
    ctx.keep("mixed system", DegRevLex, Division::Janet, &r.basis);
}

fn benchmark_systems() -> Vec<Benchmark> {
    let mut out = Vec::new();
    for k in 3..=6 {
        out.push(Benchmark::cyclic(k));
        out.push(Benchmark::katsura(k));
    }
    out
}

fn criterion_6(ctx: &mut Ctx) {
    for b in benchmark_systems() {
        let f = gen_benchmark(b, DegRevLex).unwrap();
        let start = Instant::now();
        let r = involutive_basis_v2(&f.polys, &janet(DegRevLex)).unwrap();
        let took = start.elapsed();
        if b == Benchmark::cyclic(6) {
            within(Duration::from_secs(120), start, "cyclic-6");
        }
        let oracle = buchberger_reduced_gb(&f.polys, DegRevLex).unwrap();
        assert_eq!(
            sorted(r.groebner.clone(), DegRevLex),
            sorted(oracle, DegRevLex),
            "{b}: reduced Groebner bases differ"
        );
        println!("    {b}: {} basis elements, {} in the reduced basis, {took:?}", r.basis.len(), r.groebner.len());
        ctx.keep(b.to_string(), DegRevLex, Division::Janet, &r.basis);
    }
}

fn criterion_7(ctx: &mut Ctx) {
    assert_eq!(ctx.produced.len(), 11, "bases from criteria 1, 2, 5 and 6");
    for p in &ctx.produced {
        let w = involutivity_witness(&p.basis, p.order, p.division).unwrap();
        assert_eq!(w, None, "{}: prolongation with nonzero normal form", p.label);
    }
}

fn criterion_8(_: &mut Ctx) {
    let mut systems = vec![("cubic pair".to_string(), Lex, cubic_pair())];
    for b in [Benchmark::cyclic(4), Benchmark::cyclic(5), Benchmark::katsura(4)] {
        systems.push((b.to_string(), DegRevLex, gen_benchmark(b, DegRevLex).unwrap().polys));
    }
    for (label, order, f) in systems {
        let mut previous: Option<Completion> = None;
        for k in 0..=4 {
            let cfg = EngineConfig {
                criteria: Criteria::prefix(k),
                ..janet(order)
            };
            let r = involutive_basis_v2(&f, &cfg).unwrap();
            if let Some(prev) = &previous {
                assert_eq!(r.basis, prev.basis, "{label}: basis changed with {} criteria", k);
                assert!(
                    r.stats.total_steps() <= prev.stats.total_steps(),
                    "{label}: steps grew from {} to {} when adding criterion {k}",
                    prev.stats.total_steps(),
                    r.stats.total_steps()
                );
            }
            previous = Some(r);
        }
    }
}

fn criterion_9(_: &mut Ctx) {
    let v = ["x", "y", "z"];
    let f = polys(&v, DegRevLex, &["x*y - 1", "x*z - 1", "y*z - 1"]);
    let cfg = EngineConfig {
        seed_whole_input: true,
        record_prolongations: true,
        ..janet(DegRevLex)
    };
    let r = involutive_basis_v2(&f, &cfg).unwrap();
    let first: Vec<(Polynomial, usize)> = r
        .stats
        .prolongation_log
        .iter()
        .filter(|rec| rec.generation == 0)
        .map(|rec| (rec.parent.clone(), rec.var))
        .collect();
    assert_eq!(first, vec![(f[1].clone(), 1), (f[2].clone(), 0)]);
    assert_eq!(r.stats.pair_count(f[1].lm(), f[2].lm()), 0);
    assert_eq!(r.stats.pair_count(f[1].lm(), f[0].lm()), 1);
    assert_eq!(r.stats.pair_count(f[2].lm(), f[0].lm()), 1);
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    for _ in 0..rng.gen_range(0..=max_degree) {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

fn criterion_10(_: &mut Ctx) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ops = 0usize;
    let mut queries = 0usize;
    for nvars in 1..=6usize {
        let mut tree = JanetTree::new(nvars);
        let mut leaves: Vec<Monomial> = Vec::new();
        let cap = 40 * nvars;
        for _ in 0..100_000 / 6 + 1 {
            ops += 1;
            match rng.gen_range(0..10) {
                0..=3 => {
                    let u = random_monomial(&mut rng, nvars, 12);
                    if !tree.contains(&u) && leaves.len() < cap {
                        tree.insert(u.clone(), ()).unwrap();
                        leaves.push(u);
                    }
                }
                4..=5 if !leaves.is_empty() => {
                    let u = leaves.swap_remove(rng.gen_range(0..leaves.len()));
                    tree.remove(&u).unwrap();
                }
                _ => {
                    queries += 1;
                    let w = random_monomial(&mut rng, nvars, 12);
                    let q = tree.query(&w).unwrap();
                    let want = if leaves.is_empty() {
                        None
                    } else {
                        find_involutive_divisor_scan(Division::Janet, &leaves, &w)
                            .unwrap()
                            .map(|i| &leaves[i])
                    };
                    assert_eq!(q.divisor.map(|(u, _)| u), want, "query {w} in {nvars} variables");
                    let bound = 2 * (tree.max_leaf_degree() as usize + nvars) + 3;
                    assert!(q.visits <= bound, "{} visits, bound {bound}", q.visits);
                }
            }
        }
        tree.check_invariants().unwrap();
        assert_eq!(tree.len(), leaves.len());
    }
    assert!(ops >= 100_000);
    within(Duration::from_secs(30), start, "tree workload");
    println!("    {ops} operations, {queries} queries, {:?}", start.elapsed());
}

fn criterion_11(ctx: &mut Ctx) {
    assert_eq!(ctx.produced.len(), 11, "bases from criteria 1, 2, 5 and 6");
    for p in &ctx.produced {
        let nvars = p.basis[0].nvars();
        let lms: Vec<Monomial> = p.basis.iter().map(|g| g.lm().clone()).collect();
        let input = HilbertInput::from_leading_monomials(nvars, &lms, p.division).unwrap();
        for s in 0..=10 {
            assert_eq!(
                hf_eval(&input, s).unwrap(),
                hf_bruteforce(&lms, nvars, s).unwrap(),
                "{}: HF({s})",
                p.label
            );
        }
        let s0 = input.stabilization_degree() as i64;
        for s in s0..s0 + 15 {
            assert_eq!(hp_eval(&input, s).unwrap(), hf_eval(&input, s).unwrap(), "{}: HP({s})", p.label);
        }
    }
}

fn criterion_12(_: &mut Ctx) {
    for b in [Benchmark::cyclic(5), Benchmark::katsura(5)] {
        let f = gen_benchmark(b, DegRevLex).unwrap();
        let runs: Vec<Completion> = [1, 2, 4]
            .into_iter()
            .map(|w| {
                let cfg = EngineConfig {
                    workers: w,
                    ..janet(DegRevLex)
                };
                involutive_basis_v2(&f.polys, &cfg).unwrap()
            })
            .collect();
        let text = |c: &Completion| -> String {
            c.basis.iter().map(|p| format!("{p}\n")).collect()
        };
        for r in &runs[1..] {
            assert_eq!(text(r), text(&runs[0]), "{b}: basis differs");
            assert_eq!(r.stats, runs[0].stats, "{b}: statistics differ");
        }
    }
}

type Check = fn(&mut Ctx);

fn main() {
    let checks: [(&str, Check); 12] = [
        ("cubic pair minimal Janet basis", criterion_1),
        ("simple algorithm trajectory", criterion_2),
        ("separations of a three-element set", criterion_3),
        ("monomial completions", criterion_4),
        ("mixed system basis and coefficient growth", criterion_5),
        ("oracle equivalence on cyclic and katsura", criterion_6),
        ("involutivity certificates", criterion_7),
        ("criteria do not change the basis", criterion_8),
        ("avoided critical pair", criterion_9),
        ("Janet tree against linear scan", criterion_10),
        ("Hilbert function and polynomial", criterion_11),
        ("worker count does not change results", criterion_12),
    ];
    // failures are reported on their PASS/FAIL line
    std::panic::set_hook(Box::new(|_| {}));
    let mut ctx = Ctx::default();
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let label = format!("criterion {:>2}: {name}", i + 1);
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut ctx)));
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS {label} ({took:.2?})"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL {label} ({took:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", checks.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", checks.len());
}
