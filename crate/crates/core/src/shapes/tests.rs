use std::f64::consts::PI;

use num::complex::Complex64;

use super::*;
use crate::kernels::{kernel_eval, KernelSpec};
use crate::HalfInt;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn g_examples() {
    for phi in [0.0, 0.4, 2.0, 5.5] {
        assert!((g_of_phi(&[c(1.0)], &[c(1.0)], phi).unwrap() - 2.0 * phi.cos()).abs() < 1e-14);
        let s = 0.7;
        let g = g_of_phi(&[c(0.0), c(s)], &[c(0.0), c(s)], phi).unwrap();
        assert!((g - 4.0 * s * (2.0 * phi).cos()).abs() < 1e-14);
    }
    let t = [Complex64::new(0.3, 0.2), Complex64::new(-0.1, 0.5)];
    let tb: Vec<Complex64> = t.iter().map(|z| z.conj()).collect();
    assert!(g_of_phi(&t, &tb, 1.0).is_ok());
    assert!(g_of_phi(&t, &t, 1.0).is_err());
}

#[test]
fn plancherel_bands() {
    let t = [c(1.0)];
    let b = bands_at_level(&t, &t, 0.0).unwrap();
    assert_eq!(b.intervals.len(), 1);
    let (a, e) = b.intervals[0];
    assert!((a - 1.5 * PI).abs() < 1e-12 && (e - 2.5 * PI).abs() < 1e-12, "{a} {e}");
    assert!((b.density() - 0.5).abs() < 1e-12);
    assert!(bands_at_level(&t, &t, 2.5).unwrap().intervals.is_empty());
    assert_eq!(bands_at_level(&t, &t, -2.5).unwrap().intervals, vec![(0.0, 2.0 * PI)]);
    assert!(bands_at_level(&t, &t, 2.0).unwrap().warning.is_some());
    assert!(b.warning.is_none());
    for x in [-1.9, -1.0, 0.3, 1.5, 1.99] {
        let d = limit_density(&t, &t, x).unwrap();
        assert!((d - (x / 2.0f64).acos() / PI).abs() < 1e-12);
        assert!((1.0 - 2.0 * d - vkls_slope(x)).abs() < 1e-12);
    }
}

#[test]
fn band_endpoints_solve_the_level_equation() {
    let t = [c(1.0), c(0.0), c(0.4)];
    for level in [-2.0, -0.5, 0.1, 1.3, 2.4] {
        let b = bands_at_level(&t, &t, level).unwrap();
        for (a, e) in &b.intervals {
            if e - a < 2.0 * PI {
                assert!((g_of_phi(&t, &t, *a).unwrap() - level).abs() < 1e-10);
                assert!((g_of_phi(&t, &t, *e).unwrap() - level).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn densities_decrease_and_shapes_are_convex() {
    for t in [vec![c(1.0)], vec![c(1.0), c(0.0), c(0.45)]] {
        let mut prev = 1.0;
        let mut two_bands = false;
        for i in 0..=400 {
            let x = -4.0 + 8.0 * i as f64 / 400.0;
            let b = bands_at_level(&t, &t, x).unwrap();
            two_bands |= b.intervals.len() >= 2;
            let d = b.density();
            assert!(d <= prev + 1e-12 && (0.0..=1.0).contains(&d));
            prev = d;
        }
        if t.len() == 3 {
            assert!(two_bands);
        }
    }
}

#[test]
fn single_band_kernel_is_sine() {
    let t = [c(1.0)];
    for level in [-1.2, 0.0, 0.7] {
        let a = (level / 2.0f64).acos();
        for dx in -5..=5 {
            let k = limit_kernel(&t, &t, level, dx).unwrap();
            let s = kernel_eval(&KernelSpec::Sine { a }, HalfInt::from_floor(dx), HalfInt::from_floor(0)).unwrap();
            assert!((k - s).abs() < 1e-12);
        }
    }
}

#[test]
fn vkls_closed_forms() {
    assert_eq!(vkls_slope(0.0), 0.0);
    assert_eq!(vkls_slope(2.0), 1.0);
    assert_eq!(vkls_slope(-2.0), -1.0);
    for x in [-2.5, -1.3, 0.0, 0.2, 1.9, 3.0] {
        let want = 1.0 - 2.0 * (x / 2.0f64).clamp(-1.0, 1.0).acos() / PI;
        assert!((vkls_slope(x) - want).abs() < 1e-14);
        assert!((integrate_slope(vkls_slope, x).unwrap() - vkls_height(x)).abs() < 1e-9);
    }
    let area = 2.0 * crate::special::integrate(|x| vkls_height(x) - x.abs(), 0.0, 2.0, 1e-13).unwrap();
    assert!((area - 2.0).abs() < 1e-10);
}

#[test]
fn hook_energy_basics() {
    let flat = DiscreteProfile::new(-1.0, 1.0, (0..64).map(|i| if i < 32 { -1.0 } else { 1.0 }).collect()).unwrap();
    assert!(hook_energy(&flat).abs() < 1e-14);
    // translation invariance: shift a shape by whole cells inside a larger window
    let shape = |shift: usize| {
        let mut s = vec![-1.0; 200];
        for (i, v) in s.iter_mut().enumerate().skip(40 + shift).take(60) {
            *v = -1.0 + 2.0 * (i - 40 - shift) as f64 / 59.0;
        }
        for v in s.iter_mut().skip(100 + shift) {
            *v = 1.0;
        }
        DiscreteProfile::new(-2.0, 2.0, s).unwrap()
    };
    assert!((hook_energy(&shape(0)) - hook_energy(&shape(30))).abs() < 1e-12);
}

#[test]
fn hook_energy_matches_direct_double_sum() {
    let slopes: Vec<f64> = (0..40).map(|i| ((i as f64) * 0.37).sin()).collect();
    let f = DiscreteProfile::new(-1.0, 3.0, slopes.clone()).unwrap();
    let h = f.step();
    let g = |x: f64| if x == 0.0 { 0.0 } else { 0.5 * x * x * x.abs().ln() - 0.75 * x * x };
    let mut e = 0.0;
    for i in 0..40 {
        e += (1.0 + slopes[i]) * (1.0 - slopes[i]) * g(h);
        for j in i + 1..40 {
            let k = (j - i) as f64;
            e += (1.0 + slopes[i]) * (1.0 - slopes[j]) * (g((k + 1.0) * h) - 2.0 * g(k * h) + g((k - 1.0) * h));
        }
    }
    assert!((hook_energy(&f) - 0.5 * e).abs() < 1e-12);
}

#[test]
fn hook_energy_of_the_limit_shape() {
    let e = hook_energy_refined(vkls_height, -2.0, 2.0, 1e-6).unwrap();
    assert!((e + 1.0).abs() < 1e-4, "{e}");
}

#[test]
fn hook_energy_midpoint_convexity() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let random_profile = |rng: &mut rand_chacha::ChaCha8Rng| {
        // random slopes with zero charge: pair each left cell with its mirror
        let n = 128;
        let mut s = vec![0.0; n];
        for i in 0..n / 2 {
            let v: f64 = rng.gen_range(-1.0..=1.0);
            s[i] = v.min(0.0);
            s[n - 1 - i] = -s[i];
        }
        DiscreteProfile::new(-2.0, 2.0, s).unwrap()
    };
    for _ in 0..20 {
        let (a, b) = (random_profile(&mut rng), random_profile(&mut rng));
        let mid = DiscreteProfile::new(-2.0, 2.0, a.slopes.iter().zip(&b.slopes).map(|(x, y)| 0.5 * (x + y)).collect()).unwrap();
        assert!(hook_energy(&mid) <= 0.5 * (hook_energy(&a) + hook_energy(&b)) + 1e-12);
    }
}

#[test]
fn surface_tension_examples() {
    let s = surface_tension(&[4.0, 1.0, -2.0, -3.0]).unwrap();
    assert_eq!(s.slopes(), &[-3.0, -2.0, 1.0, 4.0]);
    assert_eq!(s.breakpoints(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    let bp = s.breakpoints();
    for k in 0..4 {
        let (a, b) = (bp[k] + 0.1, bp[k] + 0.3);
        let m = (s.eval(b).unwrap() - s.eval(a).unwrap()) / 0.2;
        assert!((m - s.slopes()[k]).abs() < 1e-12);
    }
    assert_eq!(s.eval(-1.0).unwrap(), 0.0);
    assert!(s.eval(1.0).unwrap().abs() < 1e-12);
    let zero = surface_tension(&[0.0]).unwrap();
    assert_eq!(zero.eval(0.3).unwrap(), 0.0);
    assert!(surface_tension(&[1.0, 1.0]).is_err());
    let two = surface_tension(&[1.0, -1.0]).unwrap();
    for x in [-1.0, -0.4, 0.0, 0.7] {
        assert!((two.eval(x).unwrap() - (x.abs() - 1.0)).abs() < 1e-12);
    }
}

#[test]
fn plancherel_maximizer_is_the_limit_shape() {
    let r = maximize_action(&[0.0], 1.0, -3.0, 3.0, 512).unwrap();
    let vkls = DiscreteProfile::vkls(-3.0, 3.0, 512).unwrap();
    let d = r.profile.slope_distance(&vkls, -2.0, 2.0).unwrap();
    assert!(d < 0.02, "distance {d}, iterations {}", r.iterations);
    assert!(r.profile.charge().abs() < 1e-9);
}

#[test]
fn two_phase_maximizer_has_a_facet() {
    let r = maximize_action(&[1.0, -1.0], 1.0, -3.5, 3.5, 512).unwrap();
    let flat = r.profile.slopes.iter().filter(|s| s.abs() < 1e-9).count();
    assert!(flat as f64 * r.profile.step() > 0.2, "facet cells {flat}");
    let sigma = surface_tension(&[1.0, -1.0]).unwrap();
    let vkls = DiscreteProfile::vkls(-3.5, 3.5, 512).unwrap();
    assert!(r.action >= action(&sigma, 1.0, &vkls).unwrap());
}

fn quadratic(c: f64) -> SwCurve {
    SwCurve::new(vec![-c, 0.0, 1.0]).unwrap()
}

#[test]
fn sw_map_single_band_is_the_limit_shape() {
    let curve = SwCurve::new(vec![0.0, 1.0]).unwrap();
    for x in [-1.99, -1.2, -0.3, 0.0, 0.8, 1.7] {
        let (_, phi) = sw_map(&curve, c(x)).unwrap();
        assert!((phi.re - 2.0 / PI * (x / 2.0f64).asin()).abs() < 1e-13);
        assert_eq!(phi.im, 0.0);
    }
    for x in [-50.0, -3.0, 3.0, 50.0] {
        assert_eq!(sw_map(&curve, c(x)).unwrap().1.re, x.signum());
    }
    let map = maximizer_from_map(&curve, -3.0, 3.0, 300).unwrap();
    let vkls = DiscreteProfile::vkls(-3.0, 3.0, 300).unwrap();
    assert!(map.slope_distance(&vkls, -3.0, 3.0).unwrap() < 1e-8);
    assert!(sw_map(&curve, Complex64::new(0.0, -1.0)).is_err());
}

#[test]
fn sw_map_off_axis_matches_boundary_values() {
    let curves = [quadratic(4.0), SwCurve::chebyshev(3, 1.3).unwrap(), SwCurve::new(vec![4.6, -11.3, 0.0, 1.0]).unwrap()];
    for curve in &curves {
        let (lo, hi) = (curve.roots()[0] - 1.0, curve.roots()[curve.roots().len() - 1] + 1.0);
        for i in 0..=40 {
            let x = lo + (hi - lo) * i as f64 / 40.0;
            let (w0, p0) = sw_map(curve, c(x)).unwrap();
            let (w1, p1) = sw_map(curve, Complex64::new(x, 1e-9)).unwrap();
            assert!((p0 - p1).norm() < 1e-4, "x = {x}: {p0} vs {p1}");
            assert!((w0 - w1).norm() < 1e-3 * w0.norm());
            assert!((w0 + 1.0 / w0 - poly_b(curve, x)).norm() < 1e-9 * (1.0 + w0.norm()));
            assert!(w0.norm() >= 1.0 - 1e-12 && p0.re.abs() <= 1.0 + 1e-12);
        }
        // a dense path in the upper half-plane
        let mut prev = sw_map(curve, Complex64::new(lo, 0.5)).unwrap().1;
        for i in 1..=2000 {
            let z = Complex64::new(lo + (hi - lo) * i as f64 / 2000.0, 0.5);
            let phi = sw_map(curve, z).unwrap().1;
            assert!((phi - prev).norm() < 0.05);
            prev = phi;
        }
    }
}

fn poly_b(curve: &SwCurve, x: f64) -> Complex64 {
    c(curve.coeffs().iter().rev().fold(0.0, |acc, k| acc * x + k))
}

#[test]
fn bands_are_where_b_is_small() {
    let curve = SwCurve::new(vec![4.6, -11.3, 0.0, 1.0]).unwrap();
    let n = 3.0;
    let gaps = curve.gaps();
    assert_eq!(gaps.len(), 2);
    for i in 0..=2000 {
        let x = -5.0 + 10.0 * i as f64 / 2000.0;
        let on_band = poly_b(&curve, x).re.abs() <= 2.0;
        let (_, phi) = sw_map(&curve, c(x)).unwrap();
        let h = 1e-6;
        let moving = (sw_map(&curve, c(x + h)).unwrap().1.re - sw_map(&curve, c(x - h)).unwrap().1.re).abs() > 1e-9;
        if poly_b(&curve, x).re.abs() < 1.99 {
            assert!(moving && on_band && phi.im == 0.0);
        } else if poly_b(&curve, x).re.abs() > 2.01 {
            assert!(!moving && phi.im > 0.0);
            if let Some(k) = gaps.iter().position(|(a, b)| x > *a && x < *b) {
                assert!((phi.re - (-1.0 + 2.0 * (k + 1) as f64 / n)).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn chebyshev_curves() {
    for n in 1..6 {
        let curve = SwCurve::chebyshev(n, 1.2).unwrap();
        assert_eq!(curve.coeffs()[n], 1.0);
        if n >= 2 {
            assert!(curve.coeffs()[n - 1].abs() < 1e-14);
        }
        assert_eq!(curve.roots().len(), 2 * n);
        assert_eq!(curve.gaps().len(), n - 1);
    }
    assert!(SwCurve::new(vec![2.0, 0.0, 1.0]).is_err());
    assert!(SwCurve::new(vec![-1.0, 1.0, 1.0]).is_err());
}

#[test]
fn periods_grow_with_the_gap() {
    assert!(sw_periods(&SwCurve::new(vec![0.0, 1.0]).unwrap()).unwrap().is_empty());
    let mut prev = 0.0;
    for i in 1..=30 {
        let p = sw_periods(&quadratic(2.0 + 0.2 * i as f64)).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0] > prev);
        prev = p[0];
    }
    assert!(sw_periods(&quadratic(2.0 + 1e-8)).unwrap()[0] < 1e-6);
    // integrating by parts: ∫_gap x d(Im Φ) = −∫_gap Im Φ
    let curve = quadratic(3.1);
    let (a, b) = curve.gaps()[0];
    let im = |x: f64| sw_map(&curve, c(x)).unwrap().1.im;
    let h = 1e-5;
    let (a1, b1) = (a + 1e-3, b - 1e-3);
    let stieltjes = crate::special::integrate(|x| x * (im(x + h) - im(x - h)) / (2.0 * h), a1, b1, 1e-9).unwrap();
    let inner = crate::special::integrate(im, a1, b1, 1e-12).unwrap();
    assert!((stieltjes - (b1 * im(b1) - a1 * im(a1) - inner)).abs() < 1e-6);
    assert!((inner - sw_periods(&curve).unwrap()[0]).abs() < 1e-3);
}

#[test]
fn conformal_map_and_direct_maximizer_agree() {
    let cal = calibrate_period_constant(-3.0, 3.0, 256).unwrap();
    assert!(cal.residual < 0.02, "{cal:?}");
    for u in [vec![1.0, -1.0], vec![2.0, 0.5, -2.5]] {
        let m = match_periods(&u, 1.0, cal.constant).unwrap();
        assert!(m.residual < 1e-9);
        let map = maximizer_from_map(&m.curve, -4.0, 4.0, 512).unwrap();
        let direct = maximize_action(&u, 1.0, -4.0, 4.0, 512).unwrap().profile;
        let d = map.slope_distance(&direct, -4.0, 4.0).unwrap();
        assert!(d < 0.02, "u = {u:?}: {d}");
        let facet = map.slopes.iter().filter(|s| s.abs() < 1e-12).count();
        if u.len() == 2 {
            assert!(facet as f64 * map.step() > 0.5);
        }
    }
}

#[test]
fn period_matching_is_stable() {
    let u = [1.5, 0.2, -0.4, -1.3];
    let a = match_periods(&u, 0.8, PI / 2.0).unwrap();
    let b = match_periods_from(&u, 0.8, PI / 2.0, &SwCurve::chebyshev(4, 1.6).unwrap()).unwrap();
    for (x, y) in a.curve.coeffs().iter().zip(b.curve.coeffs()) {
        assert!((x - y).abs() < 1e-8);
    }
    // closing gaps: B tends to 2T_2(z/2) = z² − 2
    let small = match_periods(&[1e-4, -1e-4], 1.0, PI / 2.0).unwrap();
    assert!((small.curve.coeffs()[0] + 2.0).abs() < 1e-2, "{:?}", small.curve);
    assert!(match_periods(&[1.0], 1.0, 1.0).is_err());
    assert!(match_periods(&[-1.0, 1.0], 1.0, 1.0).is_err());
}
