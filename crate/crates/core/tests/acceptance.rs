//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use etrees::alpha::{alpha, asymptotic_gap};
use etrees::coulson::{energy_coulson, QuadratureConfig};
use etrees::enumerate::{brute_force_matchings, enumerate_trees, EnumerationParams};
use etrees::matching::{exchange_identity_check, free_matching_polynomial, matching_polynomial};
use etrees::qpoly::{matching_poly_complete_factored, tau_complete_closed_form, tau_complete_recursion};
use etrees::spectral::{eigenvalue_list, eigenvalues, energy_complete_closed, energy_from_spectrum, spectrum_complete};
use etrees::tree::{random_free_tree, random_rooted_tree};
use etrees::verify::{default_x_samples, parse_rational, verify_minimizer, verify_tau_bounds, verify_tau_monotonicity, Status};
use etrees::{complete_dary, extremal_tree, FreeTree, RootedTree, TreeClassParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: String, fail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail())
    }
}

const ALPHA_TABLE: [(usize, f64); 12] = [
    (2, 1.102947505597),
    (3, 0.970541979946),
    (4, 0.874794345784),
    (5, 0.802215758706),
    (6, 0.744941364903),
    (7, 0.698315075830),
    (8, 0.659425329682),
    (9, 0.626356806404),
    (10, 0.597794680849),
    (20, 0.434553264777),
    (50, 0.279574397741),
    (100, 0.198836515295),
];

fn alpha_table() -> Outcome {
    let mut worst: f64 = 0.0;
    for (d, expected) in ALPHA_TABLE {
        let a = alpha(d, 1e-10).map_err(|e| e.to_string())?;
        let diff = (a.value - expected).abs();
        worst = worst.max(diff);
        if diff >= 1e-9 {
            return Err(format!("d={d}: {} vs {expected}", a.value));
        }
    }
    Ok(format!("12 values, max |diff| = {worst:.2e} < 1e-9"))
}

fn minimality(d: usize, n_max: usize) -> Outcome {
    let xs = default_x_samples();
    let mut trees = 0;
    let mut min_sep = f64::INFINITY;
    for n in 1..=n_max {
        let r = verify_minimizer(n, d, &xs).map_err(|e| format!("n={n}: {e}"))?;
        trees += r.tree_count;
        if r.status != Status::Pass {
            let bad: Vec<_> = r.criteria.iter().filter(|c| c.status != Status::Pass).map(|c| &c.criterion).collect();
            return Err(format!("n={n}: status {:?} on {bad:?}", r.status));
        }
        if !r.criteria.iter().all(|c| c.unique && c.matches_extremal) || !r.x_independent {
            return Err(format!("n={n}: minimizer not unique or not extremal"));
        }
        if let Some(s) = r.criteria.last().and_then(|c| c.separation) {
            min_sep = min_sep.min(s);
        }
    }
    Ok(format!("d={d}, n<={n_max}: {trees} trees, min energy separation {min_sep:.3e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for n in 1..=12 {
        for t in enumerate_trees(&EnumerationParams::new(n, 3)).map_err(|e| e.to_string())? {
            let brute = brute_force_matchings(&t).map_err(|e| e.to_string())?;
            if brute != free_matching_polynomial(&t) {
                return Err(format!("mismatch on\n{}", t.to_edge_list()));
            }
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.gen_range(1..=20);
        let max_degree = rng.gen_range(2..=n.max(2));
        let t = random_free_tree(&mut rng, n, max_degree);
        let brute = brute_force_matchings(&t).map_err(|e| e.to_string())?;
        if brute != free_matching_polynomial(&t) {
            return Err(format!("mismatch on\n{}", t.to_edge_list()));
        }
    }
    Ok(format!("{count} enumerated trees and 200 random trees, exact equality"))
}

fn cross_method_energy() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    let mut compare = |t: &FreeTree| -> Result<(), String> {
        let a = energy_coulson(t, &cfg).map_err(|e| e.to_string())?.value;
        let b = energy_from_spectrum(&eigenvalues(t)).value;
        worst = worst.max((a - b).abs());
        if (a - b).abs() >= 1e-8 {
            return Err(format!("n={}: coulson {a} vs spectrum {b}", t.len()));
        }
        Ok(())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=20);
        let max_degree = rng.gen_range(2..=5);
        let t = random_free_tree(&mut rng, n, max_degree);
        compare(&t)?;
    }
    for d in 2..=4 {
        for n in 1..=200 {
            compare(&extremal_tree(TreeClassParams::new(n, d).unwrap()).unwrap())?;
        }
    }
    Ok(format!("100 random + 600 extremal trees, max |diff| = {worst:.2e} < 1e-8"))
}

fn complete_spectrum() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in 2..=3 {
        for h in 1..=4 {
            let t = complete_dary(d, h).to_free().unwrap();
            let dense = eigenvalue_list(&t);
            let mut closed: Vec<f64> = spectrum_complete(d, h).values();
            closed.sort_by(|a, b| b.total_cmp(a));
            if closed.len() != dense.len() {
                return Err(format!("d={d} h={h}: {} vs {} eigenvalues", closed.len(), dense.len()));
            }
            for (a, b) in closed.iter().zip(&dense) {
                worst = worst.max((a - b).abs());
            }
            let e = energy_complete_closed(d, h).value;
            let dense_e: f64 = dense.iter().map(|l| l.abs()).sum();
            worst = worst.max((e - dense_e).abs());
        }
    }
    check(worst < 1e-9, format!("d in {{2,3}}, h<=4, max |diff| = {worst:.2e} < 1e-9"), || {
        format!("max |diff| = {worst:.2e}")
    })
}

fn q_factorization() -> Outcome {
    let mut cases = 0;
    for d in 1..=4 {
        for h in 1..=5 {
            let factored = matching_poly_complete_factored(d, h).map_err(|e| e.to_string())?.expand();
            let direct = matching_polynomial(&complete_dary(d, h)).total().coeffs;
            if factored != direct {
                return Err(format!("d={d} h={h}: coefficients differ"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases (d<=4, h<=5), exact integer equality"))
}

fn tau_laws() -> Outcome {
    let mut worst: f64 = 0.0;
    for d in 1..=5 {
        for h in 0..=30 {
            for x in [0.1, 1.0, 10.0] {
                let a = tau_complete_closed_form(d, h, x);
                let b = tau_complete_recursion(d, h, x);
                let rel = if b == 0.0 { a.abs() } else { ((a - b) / b).abs() };
                worst = worst.max(rel);
                if rel >= 1e-12 {
                    return Err(format!("d={d} h={h} x={x}: closed {a} vs recursion {b}"));
                }
            }
        }
    }
    let xs: Vec<BigRational> = ["1/10", "1", "10"].iter().map(|s| parse_rational(s).unwrap()).collect();
    let mut chain_checks = 0;
    for d in 1..=5 {
        let r = verify_tau_monotonicity(d, 30, &xs).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(format!("chain, d={d}: {:?}", r.failures));
        }
        chain_checks += r.checks;
    }
    let mut bound_checks = 0;
    for (d, seed) in [(2, 8), (3, 9)] {
        let r = verify_tau_bounds(500, 40, d, &xs, seed).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(format!("bounds, d={d}: {:?}", r.failures));
        }
        bound_checks += r.checks;
    }
    Ok(format!(
        "closed form max rel diff {worst:.2e} < 1e-12; {chain_checks} strict chain checks; {bound_checks} exact bound checks on 2x500 random trees"
    ))
}

fn asymptotic_growth() -> Outcome {
    let mut lines = Vec::new();
    for d in [2, 3] {
        let rows = asymptotic_gap(d, &[100, 1000, 10_000], &QuadratureConfig::default()).map_err(|e| e.to_string())?;
        let ratios: Vec<f64> = rows.iter().map(|r| r.gap_over_log_n.unwrap().abs()).collect();
        let mut running = ratios[0];
        for (r, &q) in rows.iter().zip(&ratios).skip(1) {
            if q > running {
                return Err(format!("d={d}: |gap|/ln n grows to {q:.6} at n={} (previous max {running:.6})", r.n));
            }
            running = running.max(q);
        }
        lines.push(format!("d={d}: {}", ratios.iter().map(|q| format!("{q:.4}")).collect::<Vec<_>>().join(", ")));
    }
    Ok(format!("|gap|/ln n at n=1e2,1e3,1e4: {}", lines.join("; ")))
}

fn random_branches(rng: &mut ChaCha8Rng, d: usize, slots: usize) -> Vec<RootedTree> {
    (0..d)
        .map(|i| {
            if i < slots && rng.gen_bool(0.8) {
                let n = rng.gen_range(1..=5);
                random_rooted_tree(rng, n, d)
            } else {
                RootedTree::empty()
            }
        })
        .collect()
}

fn exchange_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..200 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(2..=10);
        let t0 = random_free_tree(&mut rng, n, d + 1);
        let v = rng.gen_range(0..n);
        let w = (v + rng.gen_range(1..n)) % n;
        let left = random_branches(&mut rng, d, d + 1 - t0.degree(v));
        let right = random_branches(&mut rng, d, d + 1 - t0.degree(w));
        let x = BigRational::new(BigInt::from(rng.gen_range(1..=40)), BigInt::from(rng.gen_range(1..=8)));
        let ok = exchange_identity_check(&t0, v, w, &left, &right, d, &x).map_err(|e| format!("config {i}: {e}"))?;
        if !ok {
            return Err(format!("config {i}: identity fails (d={d}, v={v}, w={w}, x={x})\n{}", t0.to_edge_list()));
        }
    }
    Ok("200 random configurations, exact equality".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 alpha table", alpha_table),
        ("2 exhaustive minimality d=2", || minimality(2, 16)),
        ("3 exhaustive minimality d=3,4", || {
            let a = minimality(3, 13)?;
            let b = minimality(4, 12)?;
            Ok(format!("{a}; {b}"))
        }),
        ("4 oracle equivalence", oracle_equivalence),
        ("5 cross-method energy", cross_method_energy),
        ("6 complete tree spectrum", complete_spectrum),
        ("7 Q factorization", q_factorization),
        ("8 tau laws", tau_laws),
        ("9 asymptotic growth", asymptotic_growth),
        ("10 exchange identity", exchange_identity),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
