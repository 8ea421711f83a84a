//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dmkit::classify::census;
use dmkit::ops::{self, direct_sum, element_kind, is_connected, twist};
use dmkit::{
    delta_matroid_of_matrix, intersection_graph, is_monomial, principal_nonsingular,
    reconstruct_matrix, restriction_width_table, twist_polynomial_fast, twist_polynomial_naive, verify_lemmas,
    DeltaMatroid, Gf2SymMatrix, SubsetMask, TwistPolynomial,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binary(c: &Gf2SymMatrix) -> DeltaMatroid {
    delta_matroid_of_matrix(c).expect("n within cap")
}

fn mask(n: usize, bits: u64) -> SubsetMask {
    SubsetMask::new(bits, n).unwrap()
}

fn loop_vertex_anchor() -> Check {
    let d = DeltaMatroid::numbered(1, &[&[], &[1]]).unwrap();
    let start = Instant::now();
    let naive = twist_polynomial_naive(&d).unwrap();
    let fast = twist_polynomial_fast(&d).unwrap();
    let elapsed = start.elapsed();
    let expected = TwistPolynomial::from_terms([(1, 2)]);
    ensure(naive == expected && fast == expected, || format!("got naive {naive}, fast {fast}"))?;
    ensure(naive.to_string() == "2*z", || format!("rendered as {naive}"))?;
    ensure(elapsed < Duration::from_millis(1), || format!("took {elapsed:?}"))?;
    Ok(format!("2*z in {elapsed:?}"))
}

fn prediction_exhaustive() -> Check {
    let expected_counts = [2u64, 8, 64, 1024, 32768];
    let start = Instant::now();
    let mut single = Vec::new();
    for n in 1..=5 {
        single.push(census(n, 1).map_err(|e| e.to_string())?);
    }
    let single_time = start.elapsed();
    let start = Instant::now();
    let mut parallel = Vec::new();
    for n in 1..=5 {
        parallel.push(census(n, 8).map_err(|e| e.to_string())?);
    }
    let parallel_time = start.elapsed();

    for (r, &count) in single.iter().zip(&expected_counts) {
        ensure(r.matrices_checked == count, || format!("n={}: checked {} matrices", r.n, r.matrices_checked))?;
        ensure(r.counterexamples.is_empty(), || format!("n={}: counterexamples {:?}", r.n, r.counterexamples))?;
    }
    ensure(single == parallel, || "report depends on the worker count".into())?;
    ensure(single[0].monomial_count == 2, || format!("n=1 monomial {}", single[0].monomial_count))?;
    ensure(single[1].monomial_count == 4, || format!("n=2 monomial {}", single[1].monomial_count))?;
    ensure(single_time < Duration::from_secs(60), || format!("single-threaded run took {single_time:?}"))?;
    ensure(parallel_time < Duration::from_secs(10), || format!("8-worker run took {parallel_time:?}"))?;
    let total: u64 = single.iter().map(|r| r.matrices_checked).sum();
    let monomial: Vec<String> = single.iter().map(|r| r.monomial_count.to_string()).collect();
    Ok(format!(
        "{total} matrices, 0 counterexamples, monomial per n = [{}], {single_time:.2?} (1 worker) / {parallel_time:.2?} (8 workers)",
        monomial.join(", ")
    ))
}

fn connected_odd_monomial() -> Check {
    let mut connected_odd = 0;
    let mut monomial = 0;
    for n in 1..=5 {
        for c in all_matrices(n) {
            let d = binary(&c);
            if !d.flags().odd() || !is_connected(&d).unwrap() {
                continue;
            }
            connected_odd += 1;
            if is_monomial(&twist_polynomial_fast(&d).unwrap()).is_some() {
                monomial += 1;
                ensure(n == 1 && d.feasible_bits() == [0, 1], || format!("violation:\n{c}"))?;
            }
        }
    }
    ensure(monomial == 1, || format!("{monomial} connected odd monomial cases"))?;
    Ok(format!("{connected_odd} connected odd cases, only ({{1}}, {{∅,{{1}}}}) is monomial"))
}

fn twist_invariance_and_products() -> Check {
    let mut twists = 0;
    for n in 0..=4 {
        for c in all_matrices(n) {
            let d = binary(&c);
            let p = twist_polynomial_naive(&d).unwrap();
            for a in 0..1u64 << n {
                let q = twist_polynomial_naive(&twist(&d, mask(n, a)).unwrap()).unwrap();
                ensure(p == q, || format!("twist by {a:#b} changes {p} to {q} for\n{c}"))?;
                twists += 1;
            }
        }
    }
    let by_order: Vec<Vec<DeltaMatroid>> = (0..=4).map(|n| all_matrices(n).map(|c| binary(&c)).collect()).collect();
    let polys: Vec<Vec<TwistPolynomial>> =
        by_order.iter().map(|ds| ds.iter().map(|d| twist_polynomial_naive(d).unwrap()).collect()).collect();
    let mut pairs = 0;
    for n1 in 1..=4 {
        for n2 in 1..=5 - n1 {
            for (d1, p1) in by_order[n1].iter().zip(&polys[n1]) {
                for (d2, p2) in by_order[n2].iter().zip(&polys[n2]) {
                    let sum = direct_sum(d1, d2, true).unwrap();
                    let p = twist_polynomial_naive(&sum).unwrap();
                    ensure(p == p1 * p2, || format!("{p} != ({p1})({p2})"))?;
                    pairs += 1;
                }
            }
        }
    }
    // loop vertex ⊕ K3, each side brute-forced by the set oracle as well
    let looped = DeltaMatroid::numbered(1, &[&[], &[1]]).unwrap();
    let k3 = DeltaMatroid::new(
        "elements: a b c\nfeasible: {}\nfeasible: {a,b}\nfeasible: {a,c}\nfeasible: {b,c}\n".parse().unwrap(),
    )
    .unwrap();
    let sum = direct_sum(&looped, &k3, false).unwrap();
    let lhs = twist_poly(&family_of(&sum), 4);
    let rhs = poly_product(&twist_poly(&family_of(&looped), 1), &twist_poly(&family_of(&k3), 3));
    let lib = twist_polynomial_naive(&sum).unwrap();
    ensure(lhs == rhs && lhs.len() == 1 && lhs.get(&3) == Some(&16), || format!("{lhs:?} vs {rhs:?}"))?;
    ensure(lib.to_string() == "16*z^3", || format!("library gives {lib}"))?;
    Ok(format!("{twists} twists, {pairs} ordered sums, 2*z · 8*z^2 = 16*z^3"))
}

fn width_decomposition() -> Check {
    let mut checked = 0;
    for n in 0..=4 {
        for c in all_matrices(n) {
            let d = binary(&c);
            let fam = family_of(&d);
            let table = restriction_width_table(&d).unwrap();
            let full = (1u64 << n) - 1;
            for a in 0..=full {
                let set: Set = (0..n).filter(|i| a >> i & 1 == 1).collect();
                ensure(maxcard(&fam, &set) == Some(table.get_bits(a)), || format!("maxcard({a:#b}) for\n{c}"))?;
                let direct = ops::width(&twist(&d, mask(n, a)).unwrap());
                let split = table.get_bits(a) + table.get_bits(full ^ a);
                ensure(direct == split, || format!("A={a:#b}: width {direct} vs {split} for\n{c}"))?;
                checked += 1;
            }
        }
    }
    let mut compared = 0;
    for n in 0..=5 {
        for c in all_matrices(n) {
            let d = binary(&c);
            let (fast, naive) = (twist_polynomial_fast(&d).unwrap(), twist_polynomial_naive(&d).unwrap());
            ensure(fast == naive, || format!("fast {fast} vs naive {naive} for\n{c}"))?;
            compared += 1;
        }
    }
    Ok(format!("{checked} (D, A) pairs decompose; fast = naive on {compared} matrices"))
}

fn lemma_suites() -> Check {
    let mut matrices = 0;
    let mut non_orientable = 0;
    for n in 0..=4 {
        for c in all_matrices(n) {
            let failures = verify_lemmas(&c).map_err(|e| e.to_string())?;
            ensure(failures.is_empty(), || format!("{failures:?} for\n{c}"))?;
            matrices += 1;
            let d = binary(&c);
            for a in 0..1u64 << n {
                let t = twist(&d, mask(n, a)).unwrap();
                non_orientable +=
                    (0..n).filter(|&e| element_kind(&t, e).unwrap().is_non_orientable_ribbon_loop()).count();
            }
        }
    }
    ensure(non_orientable > 0, || "hypotheses never instantiated".into())?;
    Ok(format!("{matrices} matrices, {non_orientable} non-orientable ribbon loops across all twists, 0 failures"))
}

fn gf2_kernel() -> Check {
    let mut minors = 0;
    for n in 0..=5 {
        for c in all_matrices(n) {
            let m = entries(&c);
            for a in all_subsets(n) {
                let bits = a.iter().map(|&i| 1u64 << i).sum();
                let lib = principal_nonsingular(&c, mask(n, bits)).unwrap();
                let oracle = det_gf2(&principal(&m, &a)) == 1;
                ensure(lib == oracle, || format!("C[{a:?}] disagrees for\n{c}"))?;
                minors += 1;
            }
        }
    }
    let mut round_trips = 0;
    for n in 0..=4 {
        for c in all_matrices(n) {
            let d = binary(&c);
            ensure(family_of(&d) == d_of_c(&c), || format!("D(C) differs from determinant oracle for\n{c}"))?;
            let back = reconstruct_matrix(&d).unwrap();
            ensure(back == c, || format!("round trip gives\n{back}for\n{c}"))?;
            round_trips += 1;
        }
    }
    Ok(format!("{minors} principal minors match, {round_trips} round trips"))
}

fn parity_and_connectivity() -> Check {
    let mut parity = 0;
    for n in 0..=5 {
        for c in all_matrices(n) {
            let even = binary(&c).flags().even;
            ensure(even == (c.diagonal() == 0), || format!("parity law fails for\n{c}"))?;
            parity += 1;
        }
    }
    let mut connectivity = 0;
    for n in 1..=4 {
        for c in all_matrices(n) {
            let dm = is_connected(&binary(&c)).unwrap();
            let graph = graph_connected(&c);
            ensure(dm == graph, || format!("delta-matroid connected {dm}, graph {graph} for\n{c}"))?;
            ensure(dmkit::classify::is_connected_graph(&intersection_graph(&c)) == graph, || format!("{c}"))?;
            connectivity += 1;
        }
    }
    Ok(format!("parity on {parity} matrices, connectivity on {connectivity}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("twist polynomial of ({1},{∅,{1}}) is 2z", loop_vertex_anchor),
        ("monomial prediction matches the polynomial for every matrix, n ≤ 5", prediction_exhaustive),
        ("connected odd monomial cases are exactly ({1},{∅,{1}}), n ≤ 5", connected_odd_monomial),
        ("twist invariance and direct-sum multiplicativity", twist_invariance_and_products),
        ("width decomposition and fast/naive agreement", width_decomposition),
        ("lemma property suites, n ≤ 4", lemma_suites),
        ("GF(2) principal minors and matrix round trip", gf2_kernel),
        ("parity law and connectivity transfer", parity_and_connectivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
