use super::*;
use crate::partition::{dimension, enumerate_partitions, factorial, partitions_up_to};
use num::One;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn basis(s: &str, e_max: usize) -> FockVector<Rational> {
    FockVector::basis(p(s), e_max)
}

#[test]
fn alpha_examples() {
    let v = apply_alpha(-1, &basis("", 5)).unwrap();
    assert_eq!(v, basis("1", 5));
    let v = apply_alpha(-1, &basis("1", 5)).unwrap();
    assert_eq!(v, basis("2", 5).add(&basis("1,1", 5)));
    assert_eq!(apply_alpha(1, &basis("1", 5)).unwrap(), basis("", 5));
    assert!(apply_alpha(0, &basis("", 5)).is_err());
    // α_{-2} v_∅ = v_(2) − v_(1,1)
    let v = apply_alpha(-2, &basis("", 5)).unwrap();
    assert_eq!(v, basis("2", 5).add(&basis("1,1", 5).scale(&q(-1, 1))));
}

#[test]
fn alpha_minus_one_adds_every_corner() {
    for n in 0..=8 {
        for l in enumerate_partitions(n).unwrap() {
            let v = apply_alpha(-1, &FockVector::<Rational>::basis(l.clone(), 20)).unwrap();
            let mut want = FockVector::zero(20);
            for mu in l.grow() {
                want.add_term(mu, Rational::one());
            }
            assert_eq!(v, want, "{l}");
        }
    }
}

#[test]
fn truncation_is_flagged() {
    let v = apply_alpha(-1, &basis("2", 2)).unwrap();
    assert!(v.is_empty());
    assert!(v.was_truncated());
}

#[test]
fn commutation_relation() {
    let e_max = 20;
    for size in 0..=10 {
        for l in enumerate_partitions(size).unwrap() {
            let v = FockVector::<Rational>::basis(l.clone(), e_max);
            for n in -4i64..=4 {
                for m in -4i64..=4 {
                    if n == 0 || m == 0 {
                        continue;
                    }
                    let ab = apply_alpha(n, &apply_alpha(m, &v).unwrap()).unwrap();
                    let ba = apply_alpha(m, &apply_alpha(n, &v).unwrap()).unwrap();
                    assert!(!ab.was_truncated() && !ba.was_truncated());
                    let mut comm = ab.add(&ba.scale(&q(-1, 1)));
                    if n + m == 0 {
                        comm = comm.add(&v.scale(&q(-n, 1)));
                    }
                    assert!(comm.is_empty(), "[α_{n}, α_{m}] on {l}");
                }
            }
        }
    }
}

#[test]
fn adjointness() {
    let e_max = 9;
    let all: Vec<Partition> = partitions_up_to(e_max).unwrap().into_iter().flatten().collect();
    for n in [-3i64, -2, -1, 1, 2, 3] {
        for a in &all {
            let au = apply_alpha(n, &FockVector::<Rational>::basis(a.clone(), e_max)).unwrap();
            for b in &all {
                let w = FockVector::<Rational>::basis(b.clone(), e_max);
                let lhs = au.inner(&w);
                let rhs = FockVector::basis(a.clone(), e_max).inner(&apply_alpha(-n, &w).unwrap());
                assert_eq!(lhs, rhs, "n={n}, {a}, {b}");
            }
        }
    }
}

#[test]
fn vacuum_expectations() {
    let w: OperatorWord = "a1 a-1".parse().unwrap();
    assert_eq!(vacuum_expectation(&w, 4).unwrap().value, Coefficient::Exact(q(1, 1)));
    let w: OperatorWord = "a1 a1 a-1 a-1".parse().unwrap();
    assert_eq!(vacuum_expectation(&w, 4).unwrap().value, Coefficient::Exact(q(2, 1)));
    let e = vacuum_expectation(&OperatorWord::default(), 0).unwrap();
    assert_eq!(e.value, Coefficient::Exact(q(1, 1)));
    assert!(e.warning.is_none());
    for d in 1..=5usize {
        let mut atoms = vec![Atom::Alpha(1); d];
        atoms.extend(vec![Atom::Alpha(-1); d]);
        let got = vacuum_expectation(&OperatorWord::new(atoms).unwrap(), d).unwrap();
        assert_eq!(got.value, Coefficient::Exact(Rational::from_integer(BigInt::from(factorial(d)))));
    }
}

#[test]
fn truncation_warning_when_e_max_too_small() {
    let w: OperatorWord = "a1 a1 a-1 a-1".parse().unwrap();
    let e = vacuum_expectation(&w, 1).unwrap();
    assert_eq!(e.value, Coefficient::Exact(q(0, 1)));
    assert!(e.warning.is_some());
}

#[test]
fn e_on_vacuum_and_pole() {
    let z = Complex64::new(0.7, 0.2);
    let v = apply_e(z, &FockVector::vacuum(3)).unwrap();
    let want = 1.0 / (2.0 * (z / 2.0).sinh());
    assert!((v.coefficient(&Partition::empty()) - want).norm() < 1e-14);
    assert!(apply_e(Complex64::new(0.0, 0.0), &FockVector::vacuum(3)).is_err());
    let w = OperatorWord::new(vec![Atom::E(z)]).unwrap();
    match vacuum_expectation(&w, 2).unwrap().value {
        Coefficient::Float(c) => assert!((c - want).norm() < 1e-14),
        other => panic!("expected a float, got {other:?}"),
    }
}

#[test]
fn e_is_linear() {
    let z = Complex64::new(-0.4, 1.1);
    let a = FockVector::<Complex64>::basis(Partition::empty(), 3);
    let b = FockVector::<Complex64>::basis(p("1"), 3);
    let lhs = apply_e(z, &a.add(&b)).unwrap();
    let rhs = apply_e(z, &a).unwrap().add(&apply_e(z, &b).unwrap());
    for l in [Partition::empty(), p("1")] {
        assert!((lhs.coefficient(&l) - rhs.coefficient(&l)).norm() < 1e-14);
    }
}

#[test]
fn traces() {
    // Euler: Π (1 − q^m)^{−1} coefficients by the usual DP
    let e_max = 15;
    let mut euler = vec![0u64; e_max + 1];
    euler[0] = 1;
    for m in 1..=e_max {
        for d in m..=e_max {
            euler[d] += euler[d - m];
        }
    }
    let t = trace_weighted(&[], e_max).unwrap();
    for d in 0..=e_max {
        assert_eq!(t.coefficients[d], Complex64::new(euler[d] as f64, 0.0));
    }
    let z = Complex64::new(0.9, 0.3);
    let t = trace_weighted(&[z], 4).unwrap();
    assert!((t.coefficients[0] - 1.0 / (2.0 * (z / 2.0).sinh())).norm() < 1e-14);
    let t0 = trace_weighted(&[z, z], 0).unwrap();
    assert_eq!(t0.coefficients.len(), 1);
    assert!((t0.coefficients[0] - (1.0 / (2.0 * (z / 2.0).sinh())).powi(2)).norm() < 1e-13);
}

#[test]
fn formal_trace_matches_power_sums() {
    use crate::partition::power_sum;
    let t = trace_weighted_formal(1, 3, 3).unwrap();
    // coefficient of q^d z^1 is Σ_{|λ|=d} p_1(λ)
    for d in 0..=3 {
        let want: Rational = enumerate_partitions(d).unwrap().iter().map(|l| power_sum(1, l).unwrap()).sum();
        assert_eq!(t.coefficients[d].coefficient(&[1]), want);
        assert_eq!(t.coefficients[d].coefficient(&[-1]), q(enumerate_partitions(d).unwrap().len() as i64, 1));
    }
}

/// `h_n` from `exp(Σ t_k z^k) = Σ h_n z^n`, then Jacobi-Trudi `det h_{λ_i − i + j}`.
fn jacobi_trudi(lambda: &Partition, t: &[Rational]) -> Rational {
    let n = lambda.size() + lambda.len();
    let mut h = vec![Rational::zero(); n + 1];
    h[0] = Rational::one();
    // m h_m = Σ_k k t_k h_{m−k}
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (k, tk) in t.iter().enumerate() {
            let k = k + 1;
            if k <= m {
                acc += Rational::from_integer(BigInt::from(k)) * tk * &h[m - k];
            }
        }
        h[m] = acc / Rational::from_integer(BigInt::from(m));
    }
    let l = lambda.len();
    let entry = |i: usize, j: usize| {
        let idx = lambda.part(i + 1) as i64 - (i as i64 + 1) + (j as i64 + 1);
        if idx < 0 {
            Rational::zero()
        } else {
            h[idx as usize].clone()
        }
    };
    let mut m: Vec<Vec<Rational>> = (0..l).map(|i| (0..l).map(|j| entry(i, j)).collect()).collect();
    // exact Gaussian elimination
    let mut det = Rational::one();
    for c in 0..l {
        let Some(piv) = (c..l).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..l {
            let f = &m[r][c] / &m[c][c];
            for k in c..l {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

#[test]
fn schur_examples() {
    let t = vec![q(3, 2), q(-1, 3)];
    assert_eq!(schur_function(&Partition::empty(), &t).unwrap(), q(1, 1));
    assert_eq!(schur_function(&p("1"), &t).unwrap(), q(3, 2));
    assert_eq!(schur_function(&p("2"), &t).unwrap(), q(9, 8) - q(1, 3));
}

#[test]
fn schur_matches_jacobi_trudi() {
    let ts = [
        vec![q(1, 1), q(0, 1), q(0, 1)],
        vec![q(2, 3), q(-1, 2), q(5, 7)],
        vec![q(-3, 1), q(1, 4), q(-2, 5)],
    ];
    for t in &ts {
        let v = schur_vector(t, 8).unwrap();
        for n in 0..=8 {
            for l in enumerate_partitions(n).unwrap() {
                assert_eq!(v.coefficient(&l), jacobi_trudi(&l, t), "{l}");
            }
        }
    }
}

#[test]
fn poissonized_plancherel_from_vector() {
    // exp(√ξ α_{-1}) v_∅ with √ξ = s rational: coefficient of v_λ is s^{|λ|} dim λ/|λ|!
    let s = q(3, 5);
    let e_max = 10;
    let v = schur_vector(&[s.clone()], e_max).unwrap();
    for n in 0..=e_max {
        for l in enumerate_partitions(n).unwrap() {
            let want = num::pow(s.clone(), n)
                * Rational::new(BigInt::from(dimension(&l)), BigInt::from(factorial(n)));
            assert_eq!(v.coefficient(&l), want);
        }
    }
    // ‖v‖² over |λ| ≤ E_max is the truncated Σ ξ^n/n!, the e^{ξ} that e^{−ξ} cancels
    let m = measure_from_vector_exact(&v).unwrap();
    let xi = &s * &s;
    let exp_trunc: Rational = (0..=e_max)
        .map(|n| num::pow(xi.clone(), n) / Rational::from_integer(BigInt::from(factorial(n))))
        .sum();
    assert_eq!(m.norm_sqr, exp_trunc);
    assert!(m.truncated);
}

#[test]
fn measures_from_simple_vectors() {
    let m = measure_from_vector_exact(&basis("2,1", 4)).unwrap();
    assert_eq!(m.probabilities.len(), 1);
    assert_eq!(m.probabilities[&p("2,1")], q(1, 1));
    let m = measure_from_vector_exact(&basis("", 4).add(&basis("1", 4))).unwrap();
    assert_eq!(m.probabilities[&Partition::empty()], q(1, 2));
    assert_eq!(m.probabilities[&p("1")], q(1, 2));
    assert!(measure_from_vector_exact(&FockVector::zero(3)).is_err());
    let c = FockVector::<Complex64>::basis(p("1"), 2).scale(&Complex64::new(0.0, 2.0));
    let m = measure_from_vector(&c).unwrap();
    assert_eq!(m.probabilities[&p("1")], 1.0);
}
