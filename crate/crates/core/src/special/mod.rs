//! Special functions, quadrature and polynomial roots used by the numerical modules.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{bail, Result};

/// `J_0(x), …, J_{n_max}(x)` by Miller's backward recurrence, normalized with
/// `J_0 + 2 Σ_k J_{2k} = 1`. Accurate to near machine precision relative to the
/// largest value for every order.
pub fn bessel_j_orders(x: f64, n_max: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let top = {
        let base = (n_max as f64).max(ax);
        let m = base + 30.0 + (40.0 * base).sqrt();
        2 * ((m as usize) / 2 + 1)
    };
    let mut j_next = 0.0;
    let mut j_cur = 1e-300;
    let mut norm = 0.0;
    for k in (1..=top).rev() {
        let j_prev = 2.0 * k as f64 / ax * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let order = k - 1;
        if order <= n_max {
            out[order] = j_cur;
        }
        if order > 0 && order % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += j_cur;
    for (n, v) in out.iter_mut().enumerate() {
        *v /= norm;
        if x < 0.0 && n % 2 == 1 {
            *v = -*v;
        }
    }
    out
}

/// `J_n(x)` for any integer `n`, using `J_{−n} = (−1)^n J_n`.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs() as usize;
    let v = bessel_j_orders(x, m)[m];
    if n < 0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `∫_a^b f` by tanh-sinh quadrature, which tolerates integrable endpoint singularities.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let out = quadrature::double_exponential::integrate(f, a, b, tol);
    if !out.integral.is_finite() {
        bail!(Numeric, "quadrature on [{a}, {b}] produced {}", out.integral);
    }
    if out.error_estimate > 1e3 * tol.max(1e-15 * out.integral.abs()) {
        bail!(Numeric, "quadrature on [{a}, {b}] did not converge (error estimate {:e})", out.error_estimate);
    }
    Ok(out.integral)
}

/// Evaluates `Σ c_k x^k` (coefficients in increasing degree).
pub fn poly_eval(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// All complex roots of `Σ c_k x^k` via companion-matrix eigenvalues, polished by Newton steps.
pub fn poly_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut c = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        bail!(Argument, "polynomial has no roots (degree 0)");
    }
    let lead = c[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i] / lead;
    }
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, &v)| k as f64 * v).collect();
    let seeds: Vec<Complex64> = match comp.try_schur(f64::EPSILON, 10_000) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => aberth(&c, &deriv)?,
    };
    let roots = seeds
        .into_iter()
        .map(|r| {
            let mut z = r;
            for _ in 0..4 {
                let d = poly_eval(&deriv, z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = poly_eval(&c, z) / d;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect();
    Ok(roots)
}

/// Simultaneous Aberth iteration from points on a circle bounding the roots.
fn aberth(c: &[f64], deriv: &[f64]) -> Result<Vec<Complex64>> {
    let deg = c.len() - 1;
    let lead = c[deg];
    let radius = 1.0 + c[..deg].iter().map(|v| (v / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let ratio = poly_eval(c, z[i]) / poly_eval(deriv, z[i]);
            let repulsion: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    bail!(Numeric, "polynomial root iteration did not converge")
}

/// Real roots of `Σ c_k x^k` (imaginary part below `tol` relative to scale), sorted.
pub fn real_roots(coeffs: &[f64], tol: f64) -> Result<Vec<f64>> {
    let mut r: Vec<f64> = poly_roots(coeffs)?
        .into_iter()
        .filter(|z| z.im.abs() <= tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    r.sort_by(f64::total_cmp);
    Ok(r)
}

/// Root of a continuous `f` on `[a, b]` with a sign change, by bisection.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        bail!(Numeric, "no sign change on [{a}, {b}]");
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a <= tol {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
