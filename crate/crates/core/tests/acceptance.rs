//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines appear in ordinary `cargo test` output.
//!
//! The full degree-9 corpus count is slow and only runs with
//! `ENERGY_BOUNDS_STRETCH=1` or `cargo test --test acceptance -- --stretch`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use energy_bounds::bounds::siegel_constants;
use energy_bounds::oracle::{extrema_search_with, extrema_trace_norm_with, SearchOptions};
use energy_bounds::poly::{
    diffsq_poly, enumerate_corpus_with, hermite_family, parse_polynomial, verify_theorem2, CorpusConfig, PruneConfig,
};
use energy_bounds::{
    a_factor_log, energy_lower_from_log_disc, energy_max_power, energy_min_power, energy_min_trace_norm,
    extrema_two_value, hyperfactorial, reverse_amgm, uv_values, Config64, IntPolynomial, PowerSums64, TraceNorm64,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let stretch = std::env::args().any(|a| a == "--stretch")
        || std::env::var("ENERGY_BOUNDS_STRETCH").is_ok_and(|v| v == "1");
    let criteria = [
        Criterion { id: "1", name: "siegel constant", budget: secs(1), run: siegel },
        Criterion { id: "2", name: "hyperfactorial and A(n)", budget: secs(1), run: hyperfactorials },
        Criterion { id: "3", name: "power-sum bounds vs oracles", budget: secs(120), run: power_sum_oracles },
        Criterion { id: "4", name: "exact witness n=3 r=3", budget: secs(1), run: exact_witness },
        Criterion { id: "5", name: "trace/norm bound and converse", budget: secs(30), run: trace_norm },
        Criterion { id: "6", name: "discriminant equality witnesses", budget: secs(10), run: equality_witnesses },
        Criterion { id: "7", name: "discriminant inequality sampling", budget: secs(30), run: inequality_sampling },
        Criterion { id: "8", name: "squared-difference hypothesis checker", budget: secs(1), run: diffsq_checker },
        Criterion { id: "9", name: "corpus", budget: secs(60), run: corpus },
        Criterion { id: "10", name: "branch-function monotonicity", budget: secs(10), run: lemma_grid },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let o = (c.run)();
        let dt = t.elapsed();
        let in_time = dt <= c.budget;
        let pass = o.pass && in_time;
        failed += usize::from(!pass);
        let time_note = if in_time { String::new() } else { format!(" [over budget {:?}]", c.budget) };
        println!(
            "{} {:>3} {}: {} ({:.2?}){}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            o.detail,
            dt,
            time_note
        );
    }
    if stretch {
        let t = Instant::now();
        let o = corpus_stretch();
        failed += usize::from(!o.pass);
        println!("{}  9s corpus 896 stretch: {} ({:.2?})", if o.pass { "PASS" } else { "FAIL" }, o.detail, t.elapsed());
    } else {
        println!("SKIP  9s corpus 896 stretch: set ENERGY_BOUNDS_STRETCH=1 or pass --stretch");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn siegel() -> Outcome {
    let c = siegel_constants();
    let dl = (c.lambda0 - 1.7336105).abs();
    outcome(
        dl <= 1e-6 && c.theta_residual.abs() <= 1e-12,
        format!("lambda0 = {:.10}, |lambda0 - 1.7336105| = {dl:.1e}, theta = {:.12}, residual = {:.1e}", c.lambda0, c.theta, c.theta_residual),
    )
}

fn hyperfactorials() -> Outcome {
    let exact = [(2u32, 4u64), (3, 108), (4, 27648)].iter().all(|&(n, y)| hyperfactorial(n).unwrap() == BigUint::from(y));
    let a2 = a_factor_log::<f64>(2);
    let positive = (3..=64).all(|n| a_factor_log::<f64>(n) > 0.0);
    let ratio = a_factor_log::<f64>(512) / (512.0 * 512.0 / 2.0);
    let in_window = (0.19..=0.197).contains(&ratio);
    outcome(
        exact && a2.abs() < 1e-12 && positive && in_window,
        format!(
            "Y(2..4) exact: {exact}, log A(2) = {a2:.1e}, log A(n) > 0 on 3..=64: {positive}, \
             log A(512)/(512^2/2) = {ratio:.4} (window [0.19, 0.197]: {in_window})"
        ),
    )
}

/// Feasible `(S_1, S_r)` with ñ spread uniformly over `(1, n)`.
fn random_power_sums(rng: &mut ChaCha8Rng, n: usize, r: u32) -> PowerSums64 {
    let s1: f64 = rng.gen_range(0.5..5.0);
    let nt: f64 = rng.gen_range(1.0 + 1e-6..n as f64 - 1e-6);
    let sr = s1.powi(r as i32) / nt.powi(r as i32 - 1);
    PowerSums64::new(n, r, s1, sr).unwrap()
}

fn power_sum_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_bound, mut worst_agree, mut cases, mut bad) = (0.0f64, 0.0f64, 0, 0);
    for n in 3..=6 {
        for r in 3..=5 {
            for i in 0..100 {
                let ps = random_power_sums(&mut rng, n, r);
                let scale = ps.s1() * ps.s1();
                let lo = energy_min_power(&ps).unwrap().value;
                let hi = energy_max_power(&ps).unwrap().value;
                let tv = extrema_two_value(&ps).unwrap();
                let se = extrema_search_with(&ps, &SearchOptions::new(16, i)).unwrap();
                let omin = tv.min.min(se.min);
                let omax = tv.max.max(se.max);
                let b = ((lo - omin) / scale).max((omax - hi) / scale);
                let a = ((tv.min - se.min).abs() / scale).max((tv.max - se.max).abs() / scale);
                worst_bound = worst_bound.max(b);
                worst_agree = worst_agree.max(a);
                bad += usize::from(b > 1e-6 || a > 1e-4);
                cases += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!(
            "{cases} cases, {bad} violations; worst bound excess {worst_bound:.1e} S1^2 (tol 1e-6), \
             worst oracle disagreement {worst_agree:.1e} S1^2 (tol 1e-4)"
        ),
    )
}

/// Root of `a^3 + 3a^2 - 1` in `(0, 1)` by plain bisection.
fn bisect_cubic() -> f64 {
    let h = |a: f64| a * a * a + 3.0 * a * a - 1.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn exact_witness() -> Outcome {
    let ps = PowerSums64::new(3, 3, 3.0, 9.0).unwrap();
    let emin = energy_min_power(&ps).unwrap().value;
    let emax = energy_max_power(&ps).unwrap().value;
    // (1 + 2a, 1 - a, 1 - a) has S_1 = 3, S_3 = 9 iff a^3 + 3a^2 = 1, and E = 18 a^2.
    let a = bisect_cubic();
    let reference = 18.0 * a * a;
    let w = Config64::new(vec![1.0, 2.0, 0.0]).unwrap();
    let witness = w.power_sum(1) == 3.0 && w.power_sum(3) == 9.0 && w.energy() == 6.0;
    let pass = (emin - reference).abs() <= 1e-6 && (emax - 6.0).abs() <= 1e-9 && witness;
    outcome(
        pass,
        format!(
            "E_min = {emin:.9} vs bisection 18a^2 = {reference:.9} (a = {a:.9}); \
             printed approximation 5.09573 differs by {:.1e}; E_max = {emax:.12}, (1,2,0) attains it: {witness}",
            (reference - 5.09573f64).abs()
        ),
    )
}

fn trace_norm() -> Outcome {
    let mut ok = true;
    let mut worst_n2 = 0.0f64;
    for &(s, p) in &[(1.0, 0.5), (2.0, 3.0), (3.0, 8.99), (0.7, 0.01), (5.0, 1.0)] {
        let e = energy_min_trace_norm(&TraceNorm64::new(2, s, p).unwrap()).unwrap().value;
        let want = 4.0 * (s * s - p);
        worst_n2 = worst_n2.max((e - want).abs() / want);
        let back = reverse_amgm(2, s, want).unwrap().value;
        worst_n2 = worst_n2.max((back - s * s / p).abs() / (s * s / p));
    }
    ok &= worst_n2 <= 1e-12;

    let b3 = energy_min_trace_norm(&TraceNorm64::new(3, 2.0, 6.0).unwrap()).unwrap().value;
    let e123 = Config64::new(vec![1.0, 2.0, 3.0]).unwrap().energy();
    // (x, y, y) with x + 2y = 6 and x y^2 = 6: y is the larger root of 2y^3 - 6y^2 + 6 = 0 below 3.
    let y = {
        let h = |y: f64| 2.0 * y * y * y - 6.0 * y * y + 6.0;
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let direct = Config64::new(vec![6.0 - 2.0 * y, y, y]).unwrap().energy();
    ok &= b3 <= e123 && (b3 - direct).abs() <= 1e-9;
    let amgm = reverse_amgm(3, 2.0, 6.0).unwrap().value;
    ok &= amgm >= 8.0 / 6.0;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = rng.gen_range(2..=6);
        let s: f64 = rng.gen_range(0.5..3.0);
        let p = s.powi(n as i32) * rng.gen_range(0.02..0.999);
        let tn = TraceNorm64::new(n, s, p).unwrap();
        let b = energy_min_trace_norm(&tn).unwrap().value;
        let o = extrema_trace_norm_with(&tn, &SearchOptions::new(16, i)).unwrap();
        worst = worst.max((o.search.min - b).abs());
    }
    ok &= worst <= 1e-6;
    outcome(
        ok,
        format!(
            "n=2 worst rel error {worst_n2:.1e}; (3,2,6) bound {b3:.7} (direct {direct:.7}, printed 5.0957) <= E(1,2,3) = {e123}; \
             reverse AM-GM {amgm:.5} (printed 1.4251) >= 8/6; search min vs bound worst {worst:.1e} over 50"
        ),
    )
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn equality_witnesses() -> Outcome {
    let f = IntPolynomial::from_roots(&[1, 2, 3].map(BigInt::from));
    let rep = verify_theorem2(&f).unwrap();
    let b = 3u32;
    let y = BigInt::from(hyperfactorial(3).unwrap());
    let lhs = (rat(&rep.energy) / rat(&BigInt::from(b))).pow(b as i32);
    let rhs = rat(&BigInt::from(6)).pow(b as i32) * rat(&rep.discriminant) / rat(&y);
    let eight = rat(&BigInt::from(8));
    let mut ok = lhs == eight && rhs == eight && rep.thm2_equality;

    let lambdas = ["1", "3/2", "2/7", "5"];
    let mus = ["0", "3", "-1/2", "7/3"];
    let mut families = 0;
    for n in 2..=8 {
        for l in lambdas {
            for m in mus {
                let fam = hermite_family(n, l.parse().unwrap(), m.parse().unwrap()).unwrap();
                let r = fam.report();
                ok &= r.discriminant_identity && r.energy_identity;
                families += 1;
            }
        }
    }
    outcome(ok, format!("roots (1,2,3): lhs {lhs} = rhs {rhs}; {families} extremal families n <= 8 satisfy both identities: {ok}"))
}

fn inequality_sampling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut checked, mut bad, mut a_bad, mut draws) = (0, 0, 0, 0);
    let mut min_margin = f64::INFINITY;
    for n in 3..=7usize {
        let b = (n * (n - 1) / 2) as f64;
        let log_y: f64 = (2..=n).map(|k| k as f64 * (k as f64).ln()).sum();
        let mut accepted = 0;
        while accepted < 1000 {
            draws += 1;
            let c: f64 = rng.gen_range(0.0..6.0);
            let xs: Vec<f64> = (0..n).map(|_| c + rng.gen_range(0.0..1.0)).collect();
            let s1: f64 = xs.iter().sum();
            let s2: f64 = xs.iter().map(|x| x * x).sum();
            let nf = n as f64;
            if !((nf - 1.0) * s2 < s1 * s1 && s1 * s1 < nf * s2) {
                continue;
            }
            accepted += 1;
            let e = Config64::new(xs.clone()).unwrap().energy();
            let mut log_delta = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    log_delta += 2.0 * (xs[i] - xs[j]).abs().ln();
                }
            }
            // b log(E/b) >= b log(2n) + log Delta - log Y(n), and that rhs >= log Delta.
            let lhs = b * (e / b).ln();
            let rhs = b * (2.0 * nf).ln() + log_delta - log_y;
            let margin = lhs - rhs;
            min_margin = min_margin.min(margin);
            bad += usize::from(margin < -1e-9 * lhs.abs().max(1.0));
            a_bad += usize::from(rhs < log_delta);
            let bound = energy_lower_from_log_disc(n, log_delta).unwrap().value;
            bad += usize::from(bound > e * (1.0 + 1e-10));
            checked += 1;
        }
    }
    outcome(
        bad == 0 && a_bad == 0,
        format!("{checked} configurations ({draws} draws), {bad} violations, smallest log margin {min_margin:.2e}, A(n) ordering violations {a_bad}"),
    )
}

fn diffsq_checker() -> Outcome {
    let q = |c: &str| parse_polynomial(c).unwrap();
    let counter = q("1 -4 2").mul(&q("1 -4 1"));
    let c1 = verify_theorem2(&counter).unwrap().diffsq_squarefree;
    let (d2, s2) = diffsq_poly(&q("1 -3 1"));
    let (_, s3) = diffsq_poly(&q("1 -6 11 -6"));
    let r3 = verify_theorem2(&q("1 -6 11 -6")).unwrap().diffsq_squarefree;
    let ok = c1 == Some(false) && s2 && d2 == q("1 -5") && !s3 && r3 == Some(false);
    outcome(
        ok,
        format!("((x-2)^2-2)((x-2)^2-3): squarefree {c1:?}; x^2-3x+1 -> x-5 squarefree {s2}; (1,2,3) squared differences {{1,4,1}} squarefree {s3}"),
    )
}

fn corpus() -> Outcome {
    let two = enumerate_corpus_with(&CorpusConfig { min_degree: 2, ..CorpusConfig::up_to(2) }).unwrap();
    let only = two.members.len() == 1 && two.members[0].poly == parse_polynomial("1 -3 1").unwrap();
    let a = enumerate_corpus_with(&CorpusConfig::up_to(6)).unwrap();
    let b = enumerate_corpus_with(&CorpusConfig { prune: PruneConfig::exact(), ..CorpusConfig::up_to(6) }).unwrap();
    let polys = |c: &energy_bounds::poly::Corpus| c.members.iter().map(|m| m.poly.clone()).collect::<Vec<_>>();
    let same = a.counts == b.counts && polys(&a) == polys(&b);
    outcome(
        only && same,
        format!("degree 2 is exactly {{x^2-3x+1}}: {only}; counts per degree <= 6 {:?} identical under both pruning configs: {same}", a.counts),
    )
}

fn corpus_stretch() -> Outcome {
    let c = enumerate_corpus_with(&CorpusConfig::up_to(9)).unwrap();
    let with_linear = c.total();
    let without = c.total_nonlinear();
    outcome(
        without == 896,
        format!("counts {:?}; degrees 2..9 total {without}, with degree 1 {with_linear} (paper: 896)", c.counts),
    )
}

fn lemma_grid() -> Outcome {
    const TOL: f64 = 1e-12;
    let le = |a: f64, b: f64| a <= b + TOL * b.abs().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut checks, mut bad) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(3..=10usize);
        let r = rng.gen_range(3..=6u32);
        let k = rng.gen_range(1..n);
        let nt: f64 = rng.gen_range(1.0 + 1e-6..n as f64);
        if (nt - nt.round()).abs() < 1e-6 {
            continue;
        }
        let uv = |n: usize, k: usize| uv_values(n, k, r, (n as f64).powi(r as i32) * nt.powi(1 - r as i32)).unwrap();
        let here = uv(n, k);
        if k + 1 < n {
            let next = uv(n, k + 1);
            if let (Some(a), Some(b)) = (here.u, next.u) {
                checks += 1;
                bad += usize::from(!le(b, a));
            }
            if let (Some(a), Some(b)) = (here.v, next.v) {
                checks += 1;
                bad += usize::from(!le(a, b));
            }
        }
        if let (Some(f0), Some(f1)) = (here.f, uv(n + 1, k).f) {
            if (n as f64) > nt {
                checks += 1;
                bad += usize::from(!le(f1, f0));
            }
        }
        if let (Some(g0), Some(g1)) = (here.g, uv(n + 1, k + 1).g) {
            checks += 1;
            bad += usize::from(!le(g1, g0));
        }
        if 2 * k <= n {
            if let (Some(a1), Some(a2)) = (here.alpha_neg, here.alpha_pos) {
                checks += 1;
                bad += usize::from(!le(a2, -a1));
            }
        }
    }
    outcome(bad == 0, format!("{checks} comparisons over 500 grid points, {bad} violations at tolerance 1e-12"))
}
