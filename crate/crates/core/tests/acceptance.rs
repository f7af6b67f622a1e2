//! Acceptance gate: ten criteria, one pass/fail line each.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidrep::braid::{normal_form, pair_transport, shift_check, swap_word, ascending_run, words_equal, BraidWord};
use braidrep::cyclotomic::CycNumber;
use braidrep::fusion::{self, FusionRing};
use braidrep::image::{
    closure_enumerate, closure_of_matrices, derived_series, rootbound_threshold, solvable_constancy_audit,
    sporadic_threshold, ImageLabel,
};
use braidrep::matrix::{CMatrix, CycMatrix, Matrix};
use braidrep::projective::{lift, obstruction, ProjRep};
use braidrep::rep::{builtin_corpus, burau_reduced, jones_tl_rep, GenRep, RepParams};
use braidrep::spectral::{
    generator_spectrum, intersection_sequence, is_weakly_convex, level_of, mean_slope_witness, window_disjointness,
    eigenspace_translation_defect, Level, LevelQuery,
};
use braidrep::subspace::Subspace;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Outcome {
    ensure(elapsed.as_secs_f64() < limit_s, || format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit_s))
}

/// Reduced Burau at `t = 2` over the rationals, used as a second witness for word identities.
fn burau_image(w: &BraidWord) -> CycMatrix {
    let rep = burau_reduced(w.strands(), &CycNumber::from_integer(2)).expect("t = 2");
    match rep.evaluate_word(w).expect("matching strands") {
        Matrix::Exact(m) => m,
        Matrix::Float(_) => unreachable!("rational parameter"),
    }
}

fn same_braid(a: &BraidWord, b: &BraidWord) -> bool {
    normal_form(a) == normal_form(b) && words_equal(a, b).unwrap_or(false) && burau_image(a) == burau_image(b)
}

fn gen(n: usize, i: usize) -> BraidWord {
    BraidWord::generator(n, i).expect("valid generator")
}

fn conj(z: &BraidWord, g: &BraidWord) -> BraidWord {
    z.compose(g).and_then(|w| w.compose(&z.invert())).expect("matching strands")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 4..=8 {
        for k in 3..n {
            for i in 1..=k - 2 {
                ensure(shift_check(k, i, n).map_err(|e| e.to_string())?, || format!("shift_check({}, {}, {})", k, i, n))?;
                let run = ascending_run(1, k, n).map_err(|e| e.to_string())?;
                ensure(same_braid(&conj(&run, &gen(n, i)), &gen(n, i + 1)), || {
                    format!("shift identity k={} i={} n={}", k, i, n)
                })?;
            }
        }
    }
    for n in [4, 6] {
        for a in 1..=n - 3 {
            let y = swap_word(a, n).map_err(|e| e.to_string())?;
            ensure(same_braid(&conj(&y, &gen(n, a)), &gen(n, a + 2)), || format!("swap x_{} in B_{}", a, n))?;
            ensure(same_braid(&conj(&y, &gen(n, a + 2)), &gen(n, a)), || format!("swap x_{} in B_{}", a + 2, n))?;
        }
    }
    within(start.elapsed(), 5.0)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let n = 6;
    let pairs: Vec<(usize, usize)> =
        (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).filter(|&(i, j): &(usize, usize)| i.abs_diff(j) >= 2).collect();
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            let z = pair_transport(i, j, k, l, n).map_err(|e| format!("({},{})->({},{}): {}", i, j, k, l, e))?;
            ensure(same_braid(&conj(&z, &gen(n, i)), &gen(n, k)), || format!("first certificate ({},{})->({},{})", i, j, k, l))?;
            ensure(same_braid(&conj(&z, &gen(n, j)), &gen(n, l)), || format!("second certificate ({},{})->({},{})", i, j, k, l))?;
        }
    }
    within(start.elapsed(), 30.0)
}

fn random_unitary(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    a.qr().q()
}

fn random_invertible(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    loop {
        let a = CMatrix::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        if a.clone().try_inverse().is_some() {
            return a;
        }
    }
}

/// A random instance: either a structured one (a permuted coordinate subspace
/// under a permutation operator, disguised by a common change of basis) or a
/// generic random subspace with a random invertible operator.
fn random_instance(rng: &mut ChaCha8Rng) -> (Subspace, CMatrix) {
    let d = rng.random_range(1..=12usize);
    if rng.random_bool(0.7) {
        let mut perm: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let p = CMatrix::from_fn(d, d, |r, c| if perm[c] == r { Complex64::one() } else { Complex64::new(0.0, 0.0) });
        let axes: Vec<usize> = (0..d).filter(|_| rng.random_bool(0.6)).collect();
        let u = random_unitary(d, rng);
        let basis = Subspace::coordinate(d, &axes);
        let w = Subspace::span(&(&u * basis.basis()), 1e-10);
        let t = &u * p * u.adjoint();
        (w, t)
    } else {
        let k = rng.random_range(0..=d);
        let vecs = CMatrix::from_fn(d, k, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        (Subspace::span(&vecs, 1e-10), random_invertible(d, rng))
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    for trial in 0..200 {
        let (w, t) = random_instance(&mut rng);
        let k_max = w.ambient() + 2;
        let s = intersection_sequence(&w, &t, k_max, 1e-8).map_err(|e| e.to_string())?;
        ensure(is_weakly_convex(&s), || format!("trial {}: sequence {} is not weakly convex", trial, s))?;
        // independent convexity check on the raw differences
        let d: Vec<i64> = s.dims.iter().map(|&x| x as i64).collect();
        let diffs: Vec<i64> = d[1..].windows(2).map(|p| p[1] - p[0]).collect();
        ensure(diffs.windows(2).all(|p| p[0] <= p[1]), || format!("trial {}: increments of {} decrease", trial, s))?;
        let kk = s.len_k();
        for i in 1..=kk {
            for j in i + 1..=kk {
                for k in j + 1..=kk {
                    let slope = mean_slope_witness(&s, i, j, k).map_err(|e| format!("trial {} ({},{},{}): {}", trial, i, j, k, e))?;
                    let ok = (d[j] - d[i]) <= slope * (j - i) as i64 && slope * (k - j) as i64 <= d[k] - d[j];
                    ensure(ok, || format!("trial {}: slope {} fails bounds at ({},{},{})", trial, slope, i, j, k))?;
                }
            }
        }
    }
    within(start.elapsed(), 60.0)
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for rep in builtin_corpus().iter().filter(|r| r.strands() <= 7 && r.is_unitary()) {
        for lambda in generator_spectrum(rep).map_err(|e| e.to_string())? {
            let defect = eigenspace_translation_defect(rep, lambda).map_err(|e| e.to_string())?;
            ensure(defect < 1e-8, || format!("{} at {}: defect {:e}", rep.params(), lambda, defect))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no unitary built-ins".into())
}

fn criterion_5() -> Outcome {
    let q = |n, m, l| LevelQuery::new(n, m, l).map_err(|e| e.to_string());
    ensure(level_of(&q(20, 1, 4)?) == Level::Level(0), || "level_of(20, 1)".into())?;
    for m in 18..=20 {
        ensure(level_of(&q(20, m, 4)?) == Level::Level(1), || format!("level_of(20, {})", m))?;
    }
    for n in 16..=60 {
        let got = level_of(&q(n, n + 1, 4)?);
        ensure(got == Level::None, || format!("level_of({}, {}) = {}", n, n + 1, got))?;
    }
    ensure(window_disjointness(50, 5), || "windows at n = 50, l = 5 overlap".into())
}

fn round_trip(rep: &GenRep, tol: f64) -> Outcome {
    let p = ProjRep::projectivize(rep);
    if rep.strands() >= 4 {
        let obs = obstruction(&p).map_err(|e| e.to_string())?;
        ensure(obs == 1, || format!("{}: obstruction {}", rep.params(), obs))?;
    }
    let lifted = lift(&p).map_err(|e| format!("{}: {}", rep.params(), e))?;
    ensure(lifted.verify_braid_relations(tol), || format!("{}: lifted relations fail", rep.params()))?;
    let again = ProjRep::projectivize(&lifted);
    ensure(p.projectively_equal(&again, 1e-9), || format!("{}: round trip changes the class", rep.params()))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for rep in builtin_corpus().iter().filter(|r| r.strands() <= 6 && r.is_unitary()) {
        round_trip(rep, 0.0)?;
        let frame = rep.unitary_images().ok_or("missing unitary frame")?;
        let float = GenRep::new(rep.strands(), frame.into_iter().map(Matrix::Float).collect(), RepParams::named("frame"))
            .map_err(|e| e.to_string())?;
        round_trip(&float, 1e-9)?;
        count += 1;
    }
    ensure(count > 0, || "no unitary built-ins".into())
}

fn factor_out_two(mut x: u128) -> u128 {
    while x % 2 == 0 {
        x /= 2;
    }
    x
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let q = CycNumber::root_of_unity(4, 1);
    for (n, shape) in [(4, (2, 2)), (4, (3, 1)), (5, (3, 2))] {
        let rep = jones_tl_rep(n, &q, shape).map_err(|e| e.to_string())?;
        let g = closure_enumerate(&rep, 1_000_000).map_err(|e| e.to_string())?;
        let again = closure_enumerate(&rep, 1_000_000).map_err(|e| e.to_string())?;
        ensure(g.order() == again.order() && g.element_keys() == again.element_keys(), || {
            format!("B_{} {:?}: rerun differs", n, shape)
        })?;
        let gens: Vec<CycMatrix> = rep
            .images()
            .iter()
            .rev()
            .map(|m| match m {
                Matrix::Exact(x) => x.clone(),
                Matrix::Float(_) => unreachable!("exact family"),
            })
            .collect();
        let reversed = closure_of_matrices(&gens, 1_000_000).map_err(|e| e.to_string())?;
        ensure(reversed.element_keys() == g.element_keys(), || format!("B_{} {:?}: generator order matters", n, shape))?;
        let odd = factor_out_two(g.order() as u128);
        let fact: u128 = (1..=n as u128).product();
        ensure(fact % odd == 0, || format!("B_{} {:?}: order {} has odd part {} not dividing {}!", n, shape, g.order(), odd, n))?;
    }
    within(start.elapsed(), 120.0)
}

const AUDIT_CAP: usize = 200_000;

fn criterion_8() -> Outcome {
    let mut complete = 0;
    for rep in builtin_corpus().iter().filter(|r| r.strands() >= 6 && r.is_exact()) {
        let g = match closure_enumerate(rep, AUDIT_CAP) {
            Ok(g) => g,
            Err(braidrep::Error::CapExceeded(_)) => continue,
            Err(e) => return Err(format!("{}: {}", rep.params(), e)),
        };
        let report = derived_series(&g).map_err(|e| e.to_string())?;
        let audit = solvable_constancy_audit(rep, &report);
        ensure(audit.passed, || format!("{}: {:?}", rep.params(), audit.note))?;
        ensure(!(report.solvable && !rep.is_constant()), || format!("{}: solvable and nonconstant", rep.params()))?;
        complete += 1;
    }
    ensure(complete > 0, || "no complete closures".into())?;
    let small = jones_tl_rep(4, &CycNumber::root_of_unity(4, 1), (2, 2)).map_err(|e| e.to_string())?;
    let report = derived_series(&closure_enumerate(&small, 1_000_000).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(report.solvable && !small.is_constant() && report.label == ImageLabel::SolvableNonconstant, || {
        "B_4 at q = i is not solvable and nonconstant".into()
    })
}

/// Counts weighted walks `i = k_1 → k_2 → ⋯ → k_n = j`, one step being fusion with `X_i`.
fn walk_count(rules: &HashMap<(usize, usize), Vec<usize>>, i: usize, from: usize, steps: usize, target: usize) -> u64 {
    if steps == 0 {
        return u64::from(from == target);
    }
    rules.get(&(i, from)).map_or(0, |outs| outs.iter().map(|&k| walk_count(rules, i, k, steps - 1, target)).sum())
}

fn rules_table(rank: usize, products: &[(usize, usize, &[usize])]) -> HashMap<(usize, usize), Vec<usize>> {
    let mut t: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..rank {
        t.insert((0, x), vec![x]);
        t.insert((x, 0), vec![x]);
    }
    for &(a, b, out) in products {
        t.insert((a, b), out.to_vec());
        t.insert((b, a), out.to_vec());
    }
    t
}

fn random_ring(rng: &mut ChaCha8Rng) -> FusionRing {
    loop {
        let factors = rng.random_range(1..=3);
        let mut ring = fusion::cyclic(1).expect("trivial ring");
        for _ in 0..factors {
            let next = match rng.random_range(0..4) {
                0 => fusion::fibonacci(),
                1 => fusion::ising(),
                2 => fusion::rep_s3(),
                _ => fusion::cyclic(rng.random_range(2..=5)).expect("n >= 1"),
            };
            ring = ring.tensor(&next).expect("products of rings are rings");
        }
        if ring.rank() <= 12 {
            return ring;
        }
    }
}

fn criterion_9() -> Outcome {
    let fib_rules = rules_table(2, &[(1, 1, &[0, 1])]);
    let ising_rules = rules_table(3, &[(1, 1, &[0, 2]), (1, 2, &[1]), (2, 2, &[0])]);
    for (ring, rules) in [(fusion::fibonacci(), &fib_rules), (fusion::ising(), &ising_rules)] {
        for i in 0..ring.rank() {
            for n in 1..=20 {
                for j in 0..ring.rank() {
                    let got = fusion::hom_dim(&ring, j, i, n).map_err(|e| e.to_string())?;
                    let want = BigUint::from(walk_count(rules, i, i, n - 1, j));
                    ensure(got == want, || format!("hom_dim({}, {}, {}) = {} but walks give {}", j, i, n, got, want))?;
                }
            }
        }
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let d_tau = fusion::pf_dimension(&fusion::fibonacci(), 1, fusion::PF_TOL).map_err(|e| e.to_string())?;
    ensure((d_tau - phi).abs() < 1e-10, || format!("d_tau = {}", d_tau))?;
    let d_sigma = fusion::pf_dimension(&fusion::ising(), 1, fusion::PF_TOL).map_err(|e| e.to_string())?;
    ensure((d_sigma - 2f64.sqrt()).abs() < 1e-10, || format!("d_sigma = {}", d_sigma))?;
    let mut rings = vec![fusion::fibonacci(), fusion::ising(), fusion::rep_s3()];
    rings.extend((1..=6).map(|n| fusion::cyclic(n).expect("n >= 1")));
    let builtin_count = rings.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF05E);
    rings.extend((0..50).map(|_| random_ring(&mut rng)));
    for (idx, ring) in rings.iter().enumerate() {
        for i in 0..ring.rank() {
            for j in 0..ring.rank() {
                let ok = fusion::growth_bound_check(ring, i, j, 30).map_err(|e| e.to_string())?;
                ensure(ok, || format!("ring {} (builtin: {}): bound fails for ({}, {})", idx, idx < builtin_count, i, j))?;
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    // smallest n with n ≥ 6√dim + 3, i.e. (n - 3)² ≥ 36·dim
    let root_direct = |dim: u64| (3u64..).find(|&n| (n - 3) * (n - 3) >= 36 * dim).expect("unbounded search");
    // smallest n with n ≥ 3·log₂(k·h), i.e. 2^n ≥ (k·h)³
    let sporadic_direct = |k: u64, h: u64| {
        let target = BigUint::from(k * h).pow(3);
        (0u64..).find(|&n| BigUint::one() << n >= target).expect("unbounded search")
    };
    let dims = [1u64, 3, 4, 8, 10, 14, 15, 21, 24, 28, 35, 36, 45, 52, 63, 78, 99, 120, 133, 248];
    for d in dims {
        ensure(rootbound_threshold(d) == root_direct(d), || format!("rootbound({}) = {} vs {}", d, rootbound_threshold(d), root_direct(d)))?;
    }
    let spots = [
        (1u64, 1u64), (1, 2), (1, 3), (2, 2), (1, 60), (2, 60), (3, 60), (1, 168), (2, 168), (1, 360),
        (1, 504), (1, 660), (1, 1092), (1, 2520), (1, 7920), (2, 7920), (1, 95040), (5, 95040), (1, 20160), (4, 175560),
    ];
    for (k, h) in spots {
        ensure(sporadic_threshold(k, h) == sporadic_direct(k, h), || {
            format!("sporadic({}, {}) = {} vs {}", k, h, sporadic_threshold(k, h), sporadic_direct(k, h))
        })?;
    }
    let real = |d: u64| (6.0 * (d as f64).sqrt() + 3.0).ceil().to_u64().expect("finite");
    ensure(dims.iter().all(|&d| rootbound_threshold(d) == real(d)), || "float ceiling disagrees".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("word identities", criterion_1),
        ("pair transport", criterion_2),
        ("convexity", criterion_3),
        ("eigenspace translation", criterion_4),
        ("level classifier", criterion_5),
        ("lift round trip", criterion_6),
        ("finite images at q = i", criterion_7),
        ("solvable constancy audit", criterion_8),
        ("fusion growth", criterion_9),
        ("threshold calculators", criterion_10),
    ];
    let mut failures = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} {}: pass ({:.2} s)", idx + 1, name, secs),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} {}: FAIL ({:.2} s): {}", idx + 1, name, secs, msg);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
