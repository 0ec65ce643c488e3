use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use snflab_core::cayley::cayley_spectrum;
use snflab_core::formulas::kneser_spectrum;
use snflab_core::incidence::mixed_radix_element;
use snflab_core::{build, IncidenceSpec, IntegerMatrix};

fn numeric_eigenvalues(a: &IntegerMatrix) -> Vec<f64> {
    let n = a.rows();
    let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j).to_f64().unwrap());
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[test]
fn kneser_spectrum_matches_numeric_eigenvalues() {
    for n in 1..=8u64 {
        for k in 1..=n / 2 {
            let a = build(&IncidenceSpec::Kneser { n: n as usize, k: k as usize }).unwrap();
            let exact = kneser_spectrum(n, k).unwrap();
            assert_eq!(exact.iter().map(|(_, m)| *m).sum::<u64>() as usize, a.rows());
            let mut expanded: Vec<f64> = exact
                .iter()
                .flat_map(|(x, m)| std::iter::repeat_n(x.to_f64().unwrap(), *m as usize))
                .collect();
            expanded.sort_by(f64::total_cmp);
            let numeric = numeric_eigenvalues(&a);
            for (x, y) in expanded.iter().zip(&numeric) {
                assert!((x - y).abs() < 1e-6, "n={n} k={k}: {expanded:?} vs {numeric:?}");
            }
        }
    }
}

/// `A chi = chi(E) chi` for every character, with `chi(E)` evaluated at
/// `exp(2 pi i / L)` from its exact coefficients.
#[test]
fn cayley_values_are_eigenvalues() {
    let cases: &[(&[u64], &[&[u64]])] = &[
        (&[5], &[&[1], &[4]]),
        (&[7], &[&[1], &[2], &[4]]),
        (&[4, 6], &[&[1, 0], &[0, 1], &[3, 5]]),
        (&[3, 3, 2], &[&[1, 2, 1], &[0, 1, 0], &[2, 0, 1]]),
    ];
    for (orders, set) in cases {
        let set: Vec<Vec<u64>> = set.iter().map(|e| e.to_vec()).collect();
        let spec = IncidenceSpec::AbelianCayley { orders: orders.to_vec(), connecting_set: set.clone() };
        let a = build(&spec).unwrap();
        let values = cayley_spectrum(orders, &set).unwrap();
        let size = a.rows();
        assert_eq!(values.len(), size);
        for cv in &values {
            let l = cv.value.order() as f64;
            let turn = 2.0 * std::f64::consts::PI / l;
            let (mut lr, mut li) = (0.0, 0.0);
            for (i, &c) in cv.value.coeffs().iter().enumerate() {
                lr += c as f64 * (turn * i as f64).cos();
                li += c as f64 * (turn * i as f64).sin();
            }
            let chi = |g: &[u64]| {
                let phase: f64 =
                    cv.character.iter().zip(g).zip(*orders).map(|((&j, &x), &o)| (j * x) as f64 / o as f64).sum();
                let angle = 2.0 * std::f64::consts::PI * phase;
                (angle.cos(), angle.sin())
            };
            for gi in 0..size {
                let (mut sr, mut si) = (0.0, 0.0);
                for hi in 0..size {
                    if *a.get(gi, hi) == BigInt::from(1) {
                        let (r, i) = chi(&mixed_radix_element(orders, hi as u64));
                        sr += r;
                        si += i;
                    }
                }
                let (cr, ci) = chi(&mixed_radix_element(orders, gi as u64));
                let (er, ei) = (cr * lr - ci * li, cr * li + ci * lr);
                assert!((sr - er).abs() < 1e-9 && (si - ei).abs() < 1e-9, "{orders:?} character {}", cv.label);
            }
        }
    }
}

#[test]
fn cross_check_is_idempotent() {
    for s in [
        "subspace-inclusion dim=3 d=1 e=2 q=3",
        "abelian-cayley orders=3,3 set=1.1,1.2,2.1,2.2",
        "abelian-cayley orders=5 set=1,4",
        "kneser n=7 k=3",
        "subset-intersection n=6 t=2 k=3 s=1",
    ] {
        let spec: IncidenceSpec = s.parse().unwrap();
        let first = snflab::report::json(&snflab::cross_check(&spec)).unwrap();
        let second = snflab::report::json(&snflab::cross_check(&spec)).unwrap();
        assert_eq!(first, second, "{s}");
    }
}
