//! Numeric check against the theta-function integrand, evaluated in floating point
//! at a sample point of the upper half-plane.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use torimod::arith::QSeries;
use torimod::forms::toric_form_lattice_sum;
use torimod::geom::{examples, DegreeFunction};

const TAU: C = C::new(0.1, 0.6);

/// θ(z,τ) = −i Σ (−1)^n e^{πiτ(n+½)²} e^{πiz(2n+1)} and its z-derivative.
fn theta(z: C) -> (C, C) {
    let i = C::i();
    let (mut v, mut d) = (C::new(0.0, 0.0), C::new(0.0, 0.0));
    for n in -30..=30 {
        let h = n as f64 + 0.5;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let t = sign * (i * PI * TAU * h * h).exp() * (i * PI * z * (2.0 * h)).exp();
        v += t;
        d += t * i * PI * 2.0 * h;
    }
    (-i * v, -i * d)
}

/// u θ(u − α) θ'(0) / (θ(u) θ(−α)).
fn factor(u: C, alpha: f64) -> C {
    let a = C::new(alpha, 0.0);
    u * theta(u - a).0 * theta(C::new(0.0, 0.0)).1 / (theta(u).0 * theta(-a).0)
}

/// Taylor coefficient [u^k] of g at 0 by a discrete Cauchy integral.
fn taylor(g: impl Fn(C) -> C, k: i32) -> C {
    let (n, rho) = (64, 0.05);
    let mut acc = C::new(0.0, 0.0);
    for j in 0..n {
        let w = C::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
        acc += g(w * rho) * w.powi(-k);
    }
    acc / (n as f64 * rho.powi(k))
}

fn numeric(f: &QSeries) -> C {
    let q = (C::i() * 2.0 * PI * TAU).exp();
    (0..=f.prec())
        .map(|n| {
            let (re, im) = f.coeff(n).to_complex();
            C::new(re, im) * q.powi(n as i32)
        })
        .sum()
}

fn close(a: C, b: C) -> bool {
    (a - b).norm() <= 1e-8 * (1.0 + b.norm())
}

#[test]
fn projective_line_matches_theta_quotient() {
    for (l, vals) in [(5u32, [1i64, 1]), (5, [2, 3]), (7, [3, 5])] {
        let deg = DegreeFunction::new(&examples::p1(), l, vals.to_vec()).unwrap();
        let exact = numeric(&toric_form_lattice_sum(&deg, 60).unwrap());
        let al: Vec<f64> = vals.iter().map(|&a| a as f64 / l as f64).collect();
        // both divisors are the point class
        let want = taylor(|u| factor(u, al[0]) * factor(u, al[1]), 1) / (2.0 * PI * C::i());
        assert!(close(exact, want), "l={l} {vals:?}: {exact} vs {want}");
    }
}

#[test]
fn projective_plane_matches_theta_quotient() {
    for (l, vals) in [(5u32, [1i64, 2, 3]), (7, [1, 1, 4]), (7, [6, 2, 5])] {
        let deg = DegreeFunction::new(&examples::p2(), l, vals.to_vec()).unwrap();
        let exact = numeric(&toric_form_lattice_sum(&deg, 60).unwrap());
        let al: Vec<f64> = vals.iter().map(|&a| a as f64 / l as f64).collect();
        // all three divisors are the hyperplane class H with ∫H² = 1
        let want =
            taylor(|u| al.iter().map(|&a| factor(u, a)).product(), 2) / (2.0 * PI * C::i()).powi(2);
        assert!(close(exact, want), "l={l} {vals:?}: {exact} vs {want}");
    }
}
