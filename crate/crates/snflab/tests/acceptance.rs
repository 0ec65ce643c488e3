//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! wall-clock limit. Exits nonzero when any criterion fails.

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use snflab::harness::singer_prediction;
use snflab_core::cayley::{cayley_spectrum, integral_spectrum};
use snflab_core::divisors::profile_of_factors;
use snflab_core::formulas::{
    binomial, chandler_diagonal, composite_eldiv, eigenvalue_divisibility_check, hamming_snf_prediction,
    point_subspace_eldiv, skew_lines_eldiv, srg_eldiv_check, strongly_regular_parameters, wilson_diagonal,
};
use snflab_core::incidence::mixed_radix_element;
use snflab_core::{
    build, diagonal_form_to_invariant_factors, invariant_factors_via_minor_gcds, smith_normal_form, verify_equivalence,
    IncidenceSpec, IntegerMatrix, PrimePower,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn spec(s: &str) -> IncidenceSpec {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn gen(s: &str) -> IntegerMatrix {
    build(&spec(s)).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn snf(a: &IntegerMatrix) -> Vec<BigUint> {
    smith_normal_form(a, false).expect("snf").invariant_factors().to_vec()
}

fn small(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().expect("fits u64")).collect()
}

fn pp(q: u64) -> PrimePower {
    PrimePower::new(q).unwrap()
}

fn profile(chain: &[BigUint], p: u64) -> Vec<u64> {
    profile_of_factors(chain, p).unwrap().multiplicities().to_vec()
}

fn repeated(parts: &[(u64, usize)]) -> Vec<u64> {
    parts.iter().flat_map(|&(v, m)| std::iter::repeat_n(v, m)).collect()
}

fn from_rows(rows: &[[i64; 3]]) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows).unwrap()
}

fn golden() -> Outcome {
    let fano = gen("subspace-inclusion dim=3 d=1 e=2 q=2");
    let want = [1, 1, 1, 1, 2, 2, 6];
    ensure!(small(&snf(&fano)) == want, "Fano SNF {:?}", small(&snf(&fano)));
    ensure!(small(&invariant_factors_via_minor_gcds(&fano).unwrap()) == want, "Fano minor gcds disagree");
    let d = smith_normal_form(&fano, true).unwrap();
    let ok = verify_equivalence(&fano, d.left_transform().unwrap(), d.right_transform().unwrap(), &d.diagonal()).unwrap();
    ensure!(ok, "Fano transforms do not verify");

    let tri = gen("subset-inclusion n=3 t=1 k=2");
    ensure!(small(&snf(&tri)) == [1, 1, 2], "triangle SNF {:?}", small(&snf(&tri)));

    let cases = [
        (from_rows(&[[2, 0, 0], [0, 2, 0], [0, 0, 2]]), [2, 2, 2]),
        (from_rows(&[[2, 1, 0], [0, 2, 0], [0, 0, 2]]), [1, 2, 4]),
        (from_rows(&[[2, 1, 0], [0, 2, 1], [0, 0, 2]]), [1, 1, 8]),
    ];
    for (a, want) in &cases {
        ensure!(small(&snf(a)) == want, "3x3 case gives {:?}, want {want:?}", small(&snf(a)));
        ensure!(small(&invariant_factors_via_minor_gcds(a).unwrap()) == want, "minor gcds disagree on {want:?}");
    }
    Ok("Fano (1,1,1,1,2,2,6) by elimination and minors; triangle (1,1,2); (2,2,2)/(1,2,4)/(1,1,8)".into())
}

fn wilson_sweep() -> Outcome {
    let mut count = 0;
    for n in 0..=8usize {
        for k in 0..=n {
            for t in 0..=k {
                let a = gen(&format!("subset-inclusion n={n} t={t} k={k}"));
                let pred = diagonal_form_to_invariant_factors(&wilson_diagonal(n as u64, t as u64, k as u64).unwrap()).unwrap();
                ensure!(pred == snf(&a), "n={n} t={t} k={k}: predicted {:?}, computed {:?}", small(&pred), small(&snf(&a)));
                count += 1;
            }
        }
    }
    Ok(format!("{count} (n,t,k) with n <= 8 equal exactly"))
}

fn point_subspace() -> Outcome {
    for (n, r, q) in [(2u64, 2u64, 2u64), (2, 2, 3), (2, 2, 4), (3, 2, 2), (3, 3, 2), (3, 2, 3)] {
        let a = gen(&format!("subspace-inclusion dim={} d=1 e={r} q={q}", n + 1));
        let pred = point_subspace_eldiv(n, r, pp(q)).unwrap();
        let computed = snf(&a);
        ensure!(
            pred.invariant_factors() == computed,
            "(n,r,q)=({n},{r},{q}): predicted {:?}, computed {:?}",
            small(&pred.invariant_factors()),
            small(&computed)
        );
        if (n, r, q) == (2, 2, 4) {
            ensure!(small(&computed) == repeated(&[(1, 10), (2, 2), (4, 8), (20, 1)]), "PG(2,4) chain {:?}", small(&computed));
        }
    }
    Ok("6 (n,r,q) match; PG(2,4) chain is 1^10 2^2 4^8 20".into())
}

fn pure_powers(p: u64, e: &[u64]) -> Vec<BigUint> {
    let p = BigUint::from(p);
    e.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(p.pow(i as u32), m as usize)).collect()
}

fn skew_lines() -> Outcome {
    let a2 = gen("subspace-zero-meet dim=4 d=2 e=2 q=2");
    ensure!(a2.shape() == (35, 35), "q=2 shape {:?}", a2.shape());
    let c2 = snf(&a2);
    ensure!(profile(&c2, 2) == [6, 14, 8, 6, 1], "q=2 computed profile {:?}", profile(&c2, 2));
    let p2 = skew_lines_eldiv(pp(2)).unwrap();
    ensure!(p2.multiplicities() == [6, 14, 8, 6, 1], "q=2 predicted {:?}", p2.multiplicities());
    ensure!(pure_powers(2, p2.multiplicities()) == c2, "q=2 chain has a p'-part");

    let a3 = gen("subspace-zero-meet dim=4 d=2 e=2 q=3");
    ensure!(a3.shape() == (130, 130), "q=3 shape {:?}", a3.shape());
    let c3 = snf(&a3);
    let e = profile(&c3, 3);
    let p3 = skew_lines_eldiv(pp(3)).unwrap();
    ensure!(p3.multiplicities() == e.as_slice(), "q=3 predicted {:?}, computed {e:?}", p3.multiplicities());
    ensure!(e[0] + e[1] == 90 && e[2] + e[3] == 39 && e[4] == 1, "q=3 totals wrong in {e:?}");
    ensure!(pure_powers(3, &e) == c3, "q=3 chain has a p'-part");
    Ok(format!("q=2 (6,14,8,6,1); q=3 ({}) with totals 90/39/1", e.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
}

fn composite() -> Outcome {
    // Points x 2-subspaces of F_2^4, incident when meeting trivially.
    let points_lines = gen("subspace-zero-meet dim=4 d=1 e=2 q=2");
    let product = points_lines.transpose().mul(&points_lines).unwrap();
    let computed = snf(&product);
    let pred = composite_eldiv(3, 2, 2, pp(2)).unwrap();
    ensure!(pred.profile.multiplicities() == [6, 8, 0, 0, 1], "predicted {:?}", pred.profile.multiplicities());
    ensure!(profile(&computed, 2) == [6, 8, 0, 0, 1], "computed {:?}", profile(&computed, 2));
    ensure!(computed.len() == 15, "rank {}", computed.len());
    Ok(format!("35x35 product {} has 2-profile (6,8,0,0,1)", report_chain(&computed)))
}

fn report_chain(v: &[BigUint]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let j = (i..v.len()).find(|&j| v[j] != v[i]).unwrap_or(v.len());
        parts.push(format!("{}^{}", v[i], j - i));
        i = j;
    }
    parts.join(" ")
}

fn numeric_eigenvalues(a: &IntegerMatrix) -> Vec<f64> {
    let n = a.rows();
    let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j).to_f64().unwrap());
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn expand_spectrum(s: &[(BigInt, u64)]) -> Vec<f64> {
    let mut v: Vec<f64> = s.iter().flat_map(|(x, m)| std::iter::repeat_n(x.to_f64().unwrap(), *m as usize)).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn hamming() -> Outcome {
    for m in 1..=3usize {
        for n in 2..=4usize {
            let a = gen(&format!("hamming-max-distance m={m} n={n}"));
            let h = hamming_snf_prediction(m as u64, n as u64).unwrap();
            let pred = diagonal_form_to_invariant_factors(&h.diagonal).unwrap();
            ensure!(pred == snf(&a), "m={m} n={n}: predicted {:?}, computed {:?}", small(&pred), small(&snf(&a)));

            let orders = vec![n as u64; m];
            let size: u64 = orders.iter().product();
            let set: Vec<Vec<u64>> =
                (0..size).map(|i| mixed_radix_element(&orders, i)).filter(|g| g.iter().all(|&x| x != 0)).collect();
            let exact = integral_spectrum(&cayley_spectrum(&orders, &set).unwrap())
                .ok_or_else(|| format!("m={m} n={n}: non-integral character value"))?;
            // (n-1)^r coincide for n = 2, so merge equal values.
            let mut merged = std::collections::BTreeMap::new();
            for (v, k) in &h.eigenvalues {
                *merged.entry(v.to_i64().unwrap()).or_insert(0u64) += k;
            }
            let closed: Vec<(i64, u64)> = merged.into_iter().collect();
            ensure!(exact == closed, "m={m} n={n}: characters {exact:?}, closed form {closed:?}");

            let numeric = numeric_eigenvalues(&a);
            let expected = expand_spectrum(&h.eigenvalues);
            let worst = numeric.iter().zip(&expected).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            ensure!(worst < 1e-6, "m={m} n={n}: numeric eigenvalues differ by {worst}");
        }
    }
    Ok("m <= 3, n <= 4: SNF, exact characters and numeric eigenvalues agree".into())
}

fn strip(v: &[BigUint], p: u64) -> Vec<BigUint> {
    let p = BigUint::from(p);
    let mut out: Vec<BigUint> = v
        .iter()
        .map(|x| {
            let mut x = x.clone();
            while (&x % &p).is_zero() {
                x /= &p;
            }
            x
        })
        .collect();
    out.sort();
    out
}

fn chandler() -> Outcome {
    for (n, r, s, q) in [(2u64, 2u64, 1u64, 2u64), (3, 2, 1, 2), (3, 2, 2, 2), (3, 2, 1, 3)] {
        let a = gen(&format!("subspace-inclusion dim={} d={s} e={r} q={q}", n + 1));
        let pq = pp(q);
        let pred = diagonal_form_to_invariant_factors(&chandler_diagonal(n, r, s, pq).unwrap()).unwrap();
        let computed = snf(&a);
        ensure!(pred.len() == computed.len(), "({n},{r},{s},{q}): rank {} vs {}", pred.len(), computed.len());
        let (x, y) = (strip(&pred, pq.p()), strip(&computed, pq.p()));
        ensure!(x == y, "({n},{r},{s},{q}): p'-parts {:?} vs {:?}", small(&x), small(&y));
    }
    Ok("4 (n,r,s,q): every prime other than p agrees".into())
}

fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        BigInt::zero()
    } else {
        BigInt::from(binomial(a as u64, b as u64))
    }
}

fn w_identities(max_n: usize) -> Result<usize, String> {
    let mut count = 0;
    for n in 0..=max_n {
        let w = |i: usize, j: usize| gen(&format!("subset-inclusion n={n} t={i} k={j}"));
        let wbar = |i: usize, j: usize| gen(&format!("subset-disjointness n={n} t={i} k={j}"));
        for t in 0..=n {
            for j in 0..=t {
                for i in 0..=j {
                    let lhs = w(i, j).mul(&w(j, t)).unwrap();
                    let rhs = w(i, t).scale(&binom((t - i) as i64, (j - i) as i64));
                    ensure!(lhs == rhs, "W_{i},{j} W_{j},{t} != C(t-i,j-i) W_{i},{t} at n={n}");
                    let lhs = w(i, j).mul(&wbar(j, t)).unwrap();
                    let rhs = wbar(i, t).scale(&binom(n as i64 - t as i64 - i as i64, (j - i) as i64));
                    ensure!(lhs == rhs, "W_{i},{j} Wbar_{j},{t} != C(n-t-i,j-i) Wbar_{i},{t} at n={n}");
                    count += 2;
                }
            }
        }
        for k in 0..=n {
            for t in 0..=k {
                let mut inc = IntegerMatrix::zeros(binomial(n as u64, t as u64).to_usize().unwrap(), binomial(n as u64, k as u64).to_usize().unwrap());
                let mut dis = inc.clone();
                for i in 0..=t {
                    let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                    let wt = w(i, t).transpose();
                    inc = inc.add(&wt.mul(&wbar(i, k)).unwrap().scale(&sign)).unwrap();
                    dis = dis.add(&wt.mul(&w(i, k)).unwrap().scale(&sign)).unwrap();
                }
                ensure!(inc == w(t, k).without_labels(), "alternating sum for W_{t},{k} fails at n={n}");
                ensure!(dis == wbar(t, k).without_labels(), "alternating sum for Wbar_{t},{k} fails at n={n}");
                count += 2;
            }
        }
    }
    Ok(count)
}

fn random_matrix(rng: &mut StdRng) -> IntegerMatrix {
    let (r, c) = (rng.random_range(1..=7), rng.random_range(1..=7));
    IntegerMatrix::from_fn(r, c, |_, _| BigInt::from(rng.random_range(-3i64..=3)))
}

fn identities() -> Outcome {
    let n_identities = w_identities(8)?;

    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..50 {
        let a = random_matrix(&mut rng);
        let base = snf(&a);
        ensure!(base == invariant_factors_via_minor_gcds(&a).unwrap(), "case {case}: minor gcds disagree");
        let mut rows: Vec<usize> = (0..a.rows()).collect();
        let mut cols: Vec<usize> = (0..a.cols()).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        ensure!(snf(&a.permute(&rows, &cols).unwrap()) == base, "case {case}: permutation changes the SNF");
        ensure!(snf(&a.transpose()) == base, "case {case}: transpose changes the SNF");
    }

    let a = gen("subspace-zero-meet dim=4 d=2 e=2 q=2");
    let d = smith_normal_form(&a, false).unwrap();
    let params = strongly_regular_parameters(&a).map_err(|e| e.to_string())?;
    ensure!((params.v, params.k, params.lambda, params.mu) == (35, 16, 6, 8), "skew-lines SRG {params:?}");
    // Eigenvalue multiplicities from an independent numeric decomposition.
    let numeric = numeric_eigenvalues(&a);
    for ev in [params.k as i64, params.r, params.s] {
        let m = numeric.iter().filter(|x| (**x - ev as f64).abs() < 1e-6).count() as u64;
        ensure!(m > 0, "eigenvalue {ev} not found numerically");
        ensure!(eigenvalue_divisibility_check(&BigInt::from(ev), m, &d), "divisibility fails for {ev} (x{m})");
    }
    let prof = profile_of_factors(d.invariant_factors(), 2).unwrap();
    let violations = srg_eldiv_check(&params, 2, &prof).map_err(|e| e.to_string())?;
    ensure!(violations.is_empty(), "SRG constraints violated: {violations:?}");
    Ok(format!("{n_identities} W-identities for n <= 8; 50 random permutation/transpose cases; skew-lines divisibility and SRG constraints"))
}

fn singer() -> Outcome {
    for q in [2u64, 3, 4] {
        for n in [2u64, 3] {
            let s = singer_prediction(n, pp(q)).unwrap();
            let p = point_subspace_eldiv(n, n, pp(q)).unwrap();
            ensure!(s == p, "n={n} q={q}: singer {:?}/{} vs point-subspace {:?}/{}", s.profile.multiplicities(), s.p_prime_factor, p.profile.multiplicities(), p.p_prime_factor);
            let computed = snf(&gen(&format!("point-hyperplane n={n} q={q}")));
            ensure!(s.invariant_factors() == computed, "n={n} q={q}: singer chain differs from the computed SNF");
        }
    }
    Ok("q in {2,3,4}, n in {2,3}: Singer multiplicities equal the point-hyperplane profile and the computed SNF".into())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("1 golden SNFs", Duration::from_secs(1), golden),
        ("2 Wilson sweep", Duration::from_secs(60), wilson_sweep),
        ("3 point-subspace profiles", Duration::from_secs(300), point_subspace),
        ("4 skew lines", Duration::from_secs(300), skew_lines),
        ("5 composite", Duration::from_secs(60), composite),
        ("6 Hamming", Duration::from_secs(120), hamming),
        ("7 Chandler local parts", Duration::from_secs(300), chandler),
        ("8 identity suite", Duration::from_secs(600), identities),
        ("9 Singer consistency", Duration::from_secs(600), singer),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (tag, detail) = match result {
            Ok(msg) if elapsed <= limit => ("PASS", msg),
            Ok(msg) => ("FAIL", format!("{msg}; over time limit")),
            Err(msg) => ("FAIL", msg),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("{tag} criterion {name} [{:.2}s, limit {}s]: {detail}", elapsed.as_secs_f64(), limit.as_secs());
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
