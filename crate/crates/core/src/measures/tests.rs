use super::*;
use crate::partition::{plancherel_factor, HalfInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn plancherel_three() {
    let spec = MeasureSpec::Plancherel { n: 3 };
    let table = weight_table(&spec, 0).unwrap();
    let want = [("3", q(1, 6)), ("2,1", q(2, 3)), ("1,1,1", q(1, 6))];
    assert_eq!(table.len(), 3);
    for ((l, w), (s, v)) in table.iter().zip(want) {
        assert_eq!(l, &p(s));
        assert_eq!(w, &Weight::Exact(v));
    }
    assert!(weight(&spec, &p("2")).is_err());
}

#[test]
fn plancherel_sums_to_one() {
    for n in 0..=12 {
        let s: Rational = weight_table(&MeasureSpec::Plancherel { n }, 0)
            .unwrap()
            .into_iter()
            .map(|(_, w)| w.exact().unwrap().clone())
            .sum();
        assert_eq!(s, Rational::one());
    }
}

#[test]
fn poissonized_plancherel() {
    let spec = MeasureSpec::PoissonizedPlancherel { xi: 2.5 };
    assert!((weight(&spec, &Partition::empty()).unwrap().to_f64() - (-2.5f64).exp()).abs() < 1e-16);
    let total: f64 = weight_table(&spec, 30).unwrap().iter().map(|(_, w)| w.to_f64()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert!(weight(&MeasureSpec::PoissonizedPlancherel { xi: -1.0 }, &Partition::empty()).is_err());
}

#[test]
fn jack_collapses_to_hooks() {
    for d in 0..=7 {
        let spec = MeasureSpec::Jack { eps1: q(1, 1), eps2: q(1, 1), d };
        for l in enumerate_partitions(d).unwrap() {
            let h = Rational::from_integer(BigInt::from(l.hook_product()));
            assert_eq!(weight(&spec, &l).unwrap(), Weight::Exact((&h * &h).recip()));
        }
    }
}

#[test]
fn jack_normalization_and_symmetry() {
    for (e1, e2) in [(q(1, 1), q(1, 1)), (q(2, 1), q(1, 1)), (q(1, 1), q(3, 1)), (q(-1, 2), q(5, 3))] {
        for d in 0..=8 {
            let spec = MeasureSpec::Jack { eps1: e1.clone(), eps2: e2.clone(), d };
            match partition_function(&spec, 0) {
                Ok(z) => assert_eq!(Some(z.value), z.closed_form),
                // opposite signs can produce vanishing factors
                Err(e) => assert!(matches!(e, crate::Error::Domain(_))),
            }
        }
        for d in 0..=10 {
            let a = MeasureSpec::Jack { eps1: e1.clone(), eps2: e2.clone(), d };
            let b = MeasureSpec::Jack { eps1: e2.clone(), eps2: e1.clone(), d };
            for l in enumerate_partitions(d).unwrap() {
                if let Ok(w) = weight(&a, &l) {
                    assert_eq!(w, weight(&b, &l.transpose()).unwrap());
                }
            }
        }
    }
    assert!(weight(&MeasureSpec::Jack { eps1: q(0, 1), eps2: q(1, 1), d: 1 }, &p("1")).is_err());
}

#[test]
fn schur_specialization_is_poissonized_plancherel() {
    let xi: f64 = 1.7;
    let s = xi.sqrt();
    let spec = MeasureSpec::Schur { t: vec![s], t_bar: vec![s] };
    let z = partition_function(&spec, 0).unwrap().value.to_f64();
    assert!((z - xi.exp()).abs() < 1e-12);
    for (l, w) in weight_table(&spec, 10).unwrap() {
        let want = xi.powi(l.size() as i32) * plancherel_factor(&l);
        assert!((w.to_f64() * z - want).abs() < 1e-12 * (1.0 + want), "{l}");
        assert!((weight(&spec, &l).unwrap().to_f64() - w.to_f64()).abs() < 1e-14);
    }
    assert!(!spec.is_formal());
    assert!(MeasureSpec::Schur { t: vec![1.0], t_bar: vec![-1.0] }.is_formal());
}

#[test]
fn schur_expected_size() {
    assert_eq!(expected_size_schur(&[], &[]), 0.0);
    assert!((expected_size_schur(&[3f64.sqrt()], &[3f64.sqrt()]) - 3.0).abs() < 1e-12);
    // direct truncated expectation
    for (t, want) in [(vec![0.0, 0.6], 4.0 * 0.36), (vec![0.5, 0.3, -0.2], 0.25 + 4.0 * 0.09 + 9.0 * 0.04)] {
        let spec = MeasureSpec::Schur { t: t.clone(), t_bar: t.clone() };
        let table = weight_table(&spec, 22).unwrap();
        let mass: f64 = table.iter().map(|(_, w)| w.to_f64()).sum();
        let mean: f64 = table.iter().map(|(l, w)| l.size() as f64 * w.to_f64()).sum();
        assert!((mass - 1.0).abs() < 1e-9, "mass {mass}");
        assert!((mean - want).abs() < 1e-8, "{mean} vs {want}");
        assert!((expected_size_schur(&t, &t) - want).abs() < 1e-12);
    }
}

#[test]
fn energy_examples() {
    let u = vec![q(3, 4), q(-3, 4)];
    assert_eq!(energy_u(&u, &Partition::empty(), 0).unwrap(), q(0, 1));
    assert_eq!(energy_u(&u, &p("1"), 0).unwrap(), q(3, 2));
    assert!(energy_u(&[q(1, 1)], &p("1"), 0).is_err());
    assert_eq!(HalfInt::from_floor(-1).residue(2), 1);
}

#[test]
fn energy_is_cutoff_independent_and_bounded() {
    let u = vec![q(1, 2), q(-2, 3), q(1, 6)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.gen_range(0..=30);
        let l = sample_plancherel(n, rng.gen()).unwrap();
        let base = energy_u(&u, &l, 0).unwrap();
        for m in [20, 21, 40] {
            assert_eq!(energy_u(&u, &l, m).unwrap(), base);
        }
        assert!(base.abs() <= energy_bound(&u, &l));
    }
}

#[test]
fn periodic_reduces_to_unnormalized_poissonized() {
    let xi = 1.3;
    let flat = MeasureSpec::PeriodicPlancherel { u: vec![q(0, 1); 3], xi, hbar: 0.4 };
    let pp = MeasureSpec::PoissonizedPlancherel { xi };
    for l in partitions_up_to(8).unwrap().into_iter().flatten() {
        let a = weight(&flat, &l).unwrap().to_f64();
        let b = weight(&pp, &l).unwrap().to_f64() * xi.exp();
        assert!((a - b).abs() < 1e-13 * (1.0 + b));
    }
    let z = partition_function(&flat, 12).unwrap();
    assert!((z.value.to_f64() + z.tail_bound - xi.exp()).abs() <= 1e-12);
    assert!(z.value.to_f64() < xi.exp());
}

#[test]
fn periodic_tail_bound_holds() {
    let spec = MeasureSpec::PeriodicPlancherel { u: vec![q(1, 1), q(-1, 1)], xi: 0.8, hbar: 1.0 };
    let small = partition_function(&spec, 6).unwrap();
    let big = partition_function(&spec, 20).unwrap();
    let diff = big.value.to_f64() - small.value.to_f64();
    assert!(diff >= 0.0 && diff <= small.tail_bound);
    assert!(big.tail_bound < 1e-9);
}

#[test]
fn samples() {
    assert_eq!(sample_plancherel(1, 3).unwrap(), p("1"));
    assert_eq!(sample_plancherel(0, 3).unwrap(), Partition::empty());
    assert_eq!(sample_plancherel(50, 11).unwrap(), sample_plancherel(50, 11).unwrap());
    assert!(sample_plancherel(MAX_SAMPLE_SIZE + 1, 0).is_err());
    for n in 1..=50usize {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let perm = random_permutation(n, &mut rng);
        let shape = rsk_shape(&perm);
        assert_eq!(shape.size(), n);
        assert_eq!(shape.part(1) as usize, longest_increasing_subsequence(&perm));
        // the column count of RSK is the longest decreasing subsequence
        let rev: Vec<u32> = perm.iter().rev().copied().collect();
        assert_eq!(shape.len(), longest_increasing_subsequence(&rev));
    }
}

#[test]
fn plancherel_three_frequencies() {
    let trials = 100_000;
    let mut counts = std::collections::BTreeMap::new();
    for seed in 0..trials {
        *counts.entry(sample_plancherel(3, seed).unwrap()).or_insert(0usize) += 1;
    }
    for (s, pr) in [("3", 1.0 / 6.0), ("2,1", 2.0 / 3.0), ("1,1,1", 1.0 / 6.0)] {
        let f = counts[&p(s)] as f64 / trials as f64;
        let sigma = (pr * (1.0 - pr) / trials as f64).sqrt();
        assert!((f - pr).abs() < 3.0 * sigma, "{s}: {f}");
    }
}

#[test]
fn poisson_sampler_moments() {
    for xi in [0.3, 4.0, 250.0, 2000.0] {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let m = 20_000;
        let xs: Vec<f64> = (0..m).map(|_| sample_poisson(xi, &mut rng).unwrap() as f64).collect();
        let mean = xs.iter().sum::<f64>() / m as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
        assert!((mean - xi).abs() < 5.0 * (xi / m as f64).sqrt(), "mean {mean} for ξ={xi}");
        assert!((var / xi - 1.0).abs() < 0.1, "var {var} for ξ={xi}");
    }
    let l = sample_poissonized(5.0, 1).unwrap();
    assert_eq!(l, sample_poissonized(5.0, 1).unwrap());
}
