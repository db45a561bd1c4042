//! The ten acceptance criteria, each against an oracle computed here rather than
//! taken from the library. Prints one line per criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use turangap_core::constructions::{
    gr_part_sizes, make_f, make_f_plus_k, make_gr, make_turan, petersen, BlowupSpec, RecursiveSpec,
};
use turangap_core::homomorphism::{collapse_map, find_homomorphism, wheel};
use turangap_core::lemmas::bounds::general_upper_bound;
use turangap_core::lemmas::{b2, b_general, verify_general_upper, verify_lll, wheel_max, LemmaReport, LllParams, Status, Value};
use turangap_core::solvers::{
    extend_partition, greedy_partition, krfree_from_parts, max_kcut_exact, max_krfree_exact, peel, PartialAssignment,
};
use turangap_core::{Fraction, Graph};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn exact_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn computed(rep: &LemmaReport, name: &str) -> Result<f64, String> {
    let c = rep
        .checks
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("report has no check {name:?}"))?;
    match &c.computed {
        Value::Float(v) => Ok(*v),
        Value::Exact(s) => Err(format!("{name}: expected a float, got {s}")),
    }
}

const DELTA: f64 = 0.9415;
const EPS: f64 = 1e-6;

/// γ(t) written out directly.
fn gamma_of(t: f64) -> f64 {
    let a = 2.0 * DELTA - 1.0;
    (6.0 * t - 2.0 * a * a) / (9.0 + 9.0 * t - 12.0 * DELTA) - EPS
}

fn g1(g: f64) -> f64 {
    (325.0 * g * g - 400.0 * g + 124.0) / 3.0
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0) == (flo <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn criterion_1() -> Outcome {
    let rep = verify_lll(DELTA, EPS, 1e-5).map_err(|e| e.to_string())?;
    ensure(rep.status == Status::Pass, || {
        let bad: Vec<&str> = rep.failed().map(|c| c.name.as_str()).collect();
        format!("lll report not passing: {bad:?}")
    })?;

    let t0 = DELTA / 3.0;
    let gamma0 = gamma_of(t0);
    // γ is linear-fractional in t, so γ(t') = c has a closed form
    let a = 2.0 * DELTA - 1.0;
    let c = 8.0 / 13.0 + EPS;
    let t_prime = (2.0 * a * a + c * (9.0 - 12.0 * DELTA)) / (6.0 - 9.0 * c);
    let t_star = ((31.0 - 32.0 * DELTA).powi(2) + 15.0) / 48.0;
    // r1 = 1 means t = 12γ² − 15γ + 5
    let root = bisect(
        |t| {
            let g = gamma_of(t);
            12.0 * g * g - 15.0 * g + 5.0 - t
        },
        (2.0 * DELTA - 1.0) / 3.0 + 1e-6,
        t_star,
    );
    let gap0 = t0 - g1(gamma0);
    let gap_prime = t_prime - g1(8.0 / 13.0);

    let pairs = [
        ("gamma(delta/3)", gamma0),
        ("t' with gamma(t') = 8/13", t_prime),
        ("root of r1 = 1", root),
        ("delta/3 - g1(gamma(delta/3))", gap0),
        ("t' - g1(8/13)", gap_prime),
    ];
    for (name, oracle) in pairs {
        let got = computed(&rep, name)?;
        ensure((got - oracle).abs() <= 1e-6, || format!("{name}: library {got} vs oracle {oracle}"))?;
    }
    ensure(gamma0 > 0.6145 && gamma0 < 0.6148, || format!("gamma(delta/3) = {gamma0}"))?;
    ensure((t_prime - 0.3146).abs() <= 0.0002, || format!("t' = {t_prime}"))?;
    ensure((root - 0.31379).abs() <= 0.00005, || format!("r1 root = {root}"))?;
    ensure((gap0 - 0.0060).abs() <= 0.0002, || format!("delta/3 - g1 = {gap0}"))?;
    ensure((gap_prime - 0.0069).abs() <= 0.0002, || format!("t' - g1(8/13) = {gap_prime}"))?;
    Ok(format!(
        "gamma(d/3)={gamma0:.7} t'={t_prime:.7} root={root:.7} d/3-g1={gap0:.7} t'-g1={gap_prime:.7}"
    ))
}

fn criterion_2() -> Outcome {
    let rep = verify_general_upper(1000).map_err(|e| e.to_string())?;
    ensure(rep.status == Status::Pass, || "general upper report not passing".into())?;
    ensure(general_upper_bound(4) == q(61, 64), || format!("bound at r=4 is {}", general_upper_bound(4)))?;
    for r in 4..=1000i64 {
        let delta = q(4 * (3 * r - 7) * (r - 1) + 1, 4 * (r - 2) * (3 * r - 4));
        ensure(general_upper_bound(r as usize) == delta, || format!("bound differs at r={r}"))?;
        let radicand = &delta * big((r - 2) * (3 * r - 4)) - big((3 * r - 7) * (r - 1));
        let rhs = big(2 * (r - 1) * (3 * r - 4))
            * ((q(1, 2) - &delta) * q(r - 2, r - 1) + q(3 * r - 7, 2 * (3 * r - 4)));
        let holds = !radicand.is_negative() && (rhs.is_negative() || radicand >= &rhs * &rhs);
        ensure(holds, || format!("inequality fails at r={r}"))?;
    }
    Ok("r = 4..=1000 exact; bound(4) = 61/64".into())
}

/// Forced weights at the threshold, and their energy summed over the wheel's edges.
fn forced_energy(d: usize) -> BigRational {
    let thr = q(3 * d as i64 - 1, 5 * d as i64 - 2);
    let rim = &thr * big(5) - big(3);
    let apex = big(1) - &thr;
    let g = make_f_plus_k(d, 1).unwrap();
    let weight = |v: usize| if v == 3 * d - 1 { apex.clone() } else { rim.clone() };
    g.edges()
        .iter()
        .fold(BigRational::zero(), |acc, &(u, v)| acc + weight(u) * weight(v))
}

fn criterion_3() -> Outcome {
    let lo = q(11, 20);
    let mut worst = f64::NEG_INFINITY;
    let mut points = 0;
    for d in 2..=4usize {
        let thr = q(3 * d as i64 - 1, 5 * d as i64 - 2);
        for i in 0..50i64 {
            let gamma = &lo + (&thr - &lo) * q(i, 49);
            let w = wheel_max(d, &gamma, 200, 1000 + i as u64, 1e-12).map_err(|e| e.to_string())?;
            ensure(w.feasible, || format!("d={d} gamma={gamma} reported infeasible"))?;
            let e = w.e_hat.ok_or("no energy")?;
            let bound = b_general(d, &gamma);
            let bound_f = turangap_core::rational::big_to_f64(&bound);
            ensure(e <= bound_f + 1e-6, || format!("d={d} gamma={gamma}: e_hat {e} > bound {bound_f}"))?;
            if d == 2 {
                let b = turangap_core::rational::big_to_f64(&b2(&gamma));
                ensure(e <= b + 1e-6, || format!("gamma={gamma}: e_hat {e} > B2 {b}"))?;
            }
            worst = worst.max(e - bound_f);
            points += 1;
        }
        let forced = forced_energy(d);
        ensure(forced == b_general(d, &thr), || format!("d={d}: forced energy {forced} differs from the bound"))?;
        let at = wheel_max(d, &thr, 200, 7, 1e-12).map_err(|e| e.to_string())?;
        let e = at.e_hat.ok_or("no energy at threshold")?;
        let b = turangap_core::rational::big_to_f64(&b_general(d, &thr));
        ensure((e - b).abs() <= 1e-9, || format!("d={d}: e_hat {e} at threshold vs bound {b}"))?;
    }
    ensure(b2(&q(5, 8)) == q(5, 16) && forced_energy(2) == q(5, 16), || "B2(5/8) is not 5/16".into())?;
    Ok(format!("{points} points, max e_hat - bound = {worst:.3e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    for trial in 0..50 {
        let n = rng.random_range(1..=7);
        let p = rng.random_range(25..=85);
        let g = random_graph(&mut rng, n, p);
        for k in [2, 3] {
            let got = max_kcut_exact(&g, k).map_err(|e| e.to_string())?;
            let want = brute_kcut(&g, k);
            ensure(got.value == want && got.verify(&g), || {
                format!("trial {trial} k={k}: solver {} vs enumeration {want}", got.value)
            })?;
        }
        for r in [3, 4] {
            let got = max_krfree_exact(&g, r).map_err(|e| e.to_string())?;
            let want = brute_krfree(&g, r);
            ensure(got.value == want && got.verify(&g), || {
                format!("trial {trial} r={r}: solver {} vs enumeration {want}", got.value)
            })?;
        }
    }
    Ok("50 graphs, k in {2,3}, r in {3,4}".into())
}

fn criterion_5() -> Outcome {
    for r in [3usize, 4] {
        for n in 1..=10 {
            let g = Graph::complete(n);
            let want = balanced_multipartite_edges(n, r - 1);
            let p = max_kcut_exact(&g, r - 1).map_err(|e| e.to_string())?.value;
            let f = max_krfree_exact(&g, r).map_err(|e| e.to_string())?.value;
            let t = make_turan(n, r - 1).map_err(|e| e.to_string())?.graph.edge_count();
            ensure(p == want && f == want && t == want, || {
                format!("K_{n}, r={r}: P={p} K_rf={f} Turan={t} expected {want}")
            })?;
        }
    }
    Ok("K_1..K_10, r in {3,4}".into())
}

fn criterion_6() -> Outcome {
    let c5 = Graph::cycle(5);
    let pet = petersen();
    let vals = [
        (max_kcut_exact(&c5, 2), max_krfree_exact(&c5, 3), 4, 5, "C5"),
        (max_kcut_exact(&pet, 2), max_krfree_exact(&pet, 3), 12, 15, "Petersen"),
    ];
    for (p, f, wp, wf, name) in vals {
        let (p, f) = (p.map_err(|e| e.to_string())?.value, f.map_err(|e| e.to_string())?.value);
        ensure(p == wp && f == wf, || format!("{name}: P2={p} K3f={f}"))?;
    }
    Ok("C5: 4 < 5; Petersen: 12 < 15".into())
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for r in [4usize, 5] {
        let smallest = 5 + (r - 3);
        for total in smallest..=60 {
            let (base, apex_sizes) = gr_part_sizes(r, total);
            let spec = RecursiveSpec {
                r,
                base: BlowupSpec::new(base, Fraction::new(1, 8)).with_seed(total as u64),
                apex_sizes,
            };
            let pg = make_gr(&spec).map_err(|e| e.to_string())?;
            let n = pg.graph.n();
            ensure(n == total, || format!("r={r}: built {n} vertices, asked {total}"))?;
            let plain = pg.without_theta_edges();
            let cert = krfree_from_parts(&plain, &pg.part_of, r).map_err(|e| format!("r={r} n={n}: {e}"))?;
            let kept = cert.kept_graph(n).ok_or("bad kept edges")?;
            ensure(!has_clique(&kept, r), || format!("r={r} n={n}: independent search finds a K_{r}"))?;
            for j in 5..pg.part_count() {
                let size = pg.part_sizes[j];
                for v in pg.part(j) {
                    ensure(pg.graph.degree(v) == n - size, || {
                        format!("r={r} n={n}: apex vertex {v} has degree {}", pg.graph.degree(v))
                    })?;
                }
            }
            // last apex part: degree = n − |V_last|, and |V_last| ≈ 15n / (5(3r−1))
            let last = *pg.part_sizes.last().unwrap();
            let deg = (n - last) as i64;
            let (num, den) = (3 * r as i64 - 4, 3 * r as i64 - 1);
            let off = (deg * den - num * n as i64).abs();
            ensure(off < den, || format!("r={r} n={n}: apex degree {deg} off the ratio"))?;
            if n % (5 * den as usize) == 0 {
                ensure(off == 0, || format!("r={r} n={n}: apex degree {deg} not exactly {num}/{den} n"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} instances"))
}

/// Backtracking clique search over common neighbourhoods, independent of the library's.
fn has_clique(g: &Graph, r: usize) -> bool {
    fn extend(g: &Graph, cand: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if cand.len() < need {
            return false;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            if extend(g, &next, need - 1) {
                return true;
            }
        }
        false
    }
    let all: Vec<usize> = (0..g.n()).collect();
    extend(g, &all, r)
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    for trial in 0..200 {
        let n = rng.random_range(1..=30);
        let p = rng.random_range(10..=90);
        let g = random_graph(&mut rng, n, p);
        let k = rng.random_range(2..=4);
        let e = g.edge_count();
        let greedy = greedy_partition(&g, k).map_err(|e| e.to_string())?;
        let floor = ((k - 1) * e).div_ceil(k);
        ensure(greedy.verify(&g) && greedy.value >= floor, || {
            format!("trial {trial}: greedy {} < {floor}", greedy.value)
        })?;
        let parts: Vec<Option<usize>> = (0..n)
            .map(|_| rng.random_bool(0.4).then(|| rng.random_range(0..k)))
            .collect();
        let partial = PartialAssignment { k, parts: parts.clone() };
        let ext = extend_partition(&g, &partial).map_err(|e| e.to_string())?;
        let (mut inside, mut touching) = (0, 0);
        for (u, v) in g.edges() {
            match (parts[u], parts[v]) {
                (Some(a), Some(b)) => inside += usize::from(a != b),
                _ => touching += 1,
            }
        }
        let stated = inside + ((k - 1) * touching).div_ceil(k);
        let kept_placed = (0..n).all(|v| parts[v].is_none_or(|p| ext.assignment[v] == p));
        ensure(ext.verify(&g) && kept_placed && ext.value >= stated, || {
            format!("trial {trial}: extension {} < {stated}", ext.value)
        })?;
    }
    for trial in 0..100 {
        let n = rng.random_range(1..=30);
        let p = rng.random_range(10..=90);
        let g = random_graph(&mut rng, n, p);
        let den = rng.random_range(2..=12i64);
        let gamma = Fraction::new(rng.random_range(0..den), den);
        let trace = peel(&g, gamma);
        let f = &trace.final_graph;
        let ok = match f.min_degree() {
            None => true,
            Some(dmin) => dmin as i64 * gamma.denom() > gamma.numer() * f.n() as i64,
        };
        ensure(ok, || format!("trial {trial}: final min degree not above {gamma} v(final)"))?;
        ensure(trace.replay(&g).as_ref() == Some(f), || format!("trial {trial}: replay differs"))?;
    }
    Ok("200 partition instances, 100 peel instances".into())
}

fn criterion_9() -> Outcome {
    for d in 1..=10 {
        let f = make_f(d).map_err(|e| e.to_string())?;
        let n = if d == 1 { 2 } else { 3 * d - 1 };
        ensure(f.n() == n && f.degrees().iter().all(|&x| x == d), || format!("F_{d} not {d}-regular on {n}"))?;
        ensure(brute_cliques(&f, 3).is_empty(), || format!("F_{d} has a triangle"))?;
    }
    for d in 2..=4 {
        let source = wheel(d).map_err(|e| e.to_string())?;
        let target = wheel(d - 1).map_err(|e| e.to_string())?;
        for missing in 0..3 * d {
            let m = collapse_map(d, missing).map_err(|e| e.to_string())?;
            let ok = source
                .edges()
                .iter()
                .filter(|&&(u, v)| u != missing && v != missing)
                .all(|&(u, v)| target.has_edge(m.map[u], m.map[v]));
            ensure(ok && m.map.iter().all(|&x| x < target.n()), || {
                format!("collapse d={d} missing={missing} breaks an edge")
            })?;
        }
    }
    let mut rng = rng(9);
    let mut found = 0;
    for trial in 0..50 {
        let gn = rng.random_range(1..=7);
        let hn = rng.random_range(1..=5);
        let (gp, hp) = (rng.random_range(20..=70), rng.random_range(30..=90));
        let g = random_graph(&mut rng, gn, gp);
        let h = random_graph(&mut rng, hn, hp);
        let got = find_homomorphism(&g, &h).map_err(|e| e.to_string())?;
        let want = brute_hom_exists(&g, &h);
        ensure(got.is_some() == want, || format!("pair {trial}: search {} vs enumeration {want}", got.is_some()))?;
        if let Some(m) = got {
            ensure(preserves_edges(&g, &h, &m.map), || format!("pair {trial}: map breaks an edge"))?;
            found += 1;
        }
    }
    Ok(format!("F_1..F_10, collapse d=2..4, 50 pairs ({found} with a map)"))
}

fn criterion_10() -> Outcome {
    let params = LllParams {
        delta: DELTA,
        epsilon: EPS,
    };
    let (delta, eps) = (exact_f64(DELTA), exact_f64(EPS));
    let a = &delta * big(2) - big(1);
    let t0 = DELTA / 3.0;
    let steps = ((1.0 - t0) / 1e-5).ceil() as usize;
    let mut worst = 0.0f64;
    for i in 0..=steps {
        let t = if i == steps { 1.0 } else { t0 + (1.0 - t0) * i as f64 / steps as f64 };
        let tx = exact_f64(t);
        let s = big(3) + big(3) * &tx - big(4) * &delta;
        let gamma = (big(6) * &tx - big(2) * &a * &a) / (big(3) * &s) - &eps;
        let g3 = big(3) * &gamma;
        let b = &g3 - big(4) * &delta + big(2);
        let lhs = (big(6) * &tx - &g3) * (big(2) - &g3) - &b * &b;
        let rhs = big(6) * &s * &eps;
        ensure(lhs == rhs, || format!("t={t}: exact sides differ"))?;
        let want = turangap_core::rational::big_to_f64(&rhs);
        let got = params.quadratic_gap(t);
        let rel = ((got - want) / want).abs();
        worst = worst.max(rel).max(((params.six_s_epsilon(t) - want) / want).abs());
        ensure(rel <= 1e-9, || format!("t={t}: residual {got} vs 6 s eps {want}"))?;
    }
    Ok(format!("{} grid points, max relative error {worst:.2e}", steps + 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("lemma constants", criterion_1, Duration::from_secs(5)),
        ("general upper bound", criterion_2, Duration::from_secs(5)),
        ("weighted wheel oracle", criterion_3, Duration::from_secs(120)),
        ("solver oracle equivalence", criterion_4, Duration::from_secs(300)),
        ("Turan equality", criterion_5, Duration::from_secs(120)),
        ("strict-gap witnesses", criterion_6, Duration::from_secs(10)),
        ("construction structure", criterion_7, Duration::from_secs(60)),
        ("guarantee inequalities", criterion_8, Duration::from_secs(60)),
        ("homomorphism suite", criterion_9, Duration::from_secs(120)),
        ("quadratic identity", criterion_10, Duration::from_secs(10)),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
