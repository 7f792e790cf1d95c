mod common;

use common::r;
use num_complex::Complex64 as C64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use ultraradical::*;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn rel(got: C64, want: C64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}

fn y(n: i64, a: f64, b: f64, x: C64) -> C64 {
    ultra(n, r(a), r(b), x, &opts()).unwrap().y
}

#[test]
fn residual_suite() {
    for a in [2.0, 3.0, 5.0] {
        for b in [1.0, 2.0] {
            if a == b {
                continue;
            }
            let rad = convergence_radius(r(a), r(b)).value;
            let grid = [0.8, -0.8, 0.5, -0.3, 0.05].iter().map(|&s| r(s * rad)).chain([
                C64::from_polar(0.8 * rad, 1.0),
                C64::from_polar(0.6 * rad, -2.0),
                C64::from_polar(0.7 * rad, 2.8),
            ]);
            for x in grid {
                for n in 0..a as i64 {
                    let bv = ultra(n, r(a), r(b), x, &opts()).unwrap();
                    let w = bv.y;
                    let raw = (w.powf(a) - 1.0 - a * x * w.powf(b)).norm();
                    assert!(bv.residual < 1e-10, "({a},{b}) x={x} n={n}: {}", bv.residual);
                    assert!(raw < 1e-10, "({a},{b}) x={x} n={n}: raw {raw}");
                }
            }
        }
    }
}

#[test]
fn quadratic_closed_form() {
    // y^2 = 1 + 2 x y
    for x in [0.2, 0.9, 3.0, -2.0] {
        let s = (x * x + 1.0f64).sqrt();
        let y0 = y(0, 2.0, 1.0, r(x));
        let y1 = y(1, 2.0, 1.0, r(x));
        assert!((y0 - (x + s)).norm() < 1e-12, "x={x} {y0}");
        assert!((y1 - (x - s)).norm() < 1e-12, "x={x} {y1}");
    }
}

#[test]
fn equal_exponents_closed_form() {
    let bv = ultra(0, r(2.0), r(2.0), r(0.1), &opts()).unwrap();
    assert_eq!(bv.route, Route::ClosedForm);
    assert!((bv.y.re - (1.0f64 / 0.8).sqrt()).abs() < 1e-15);
    let bv1 = ultra(1, r(2.0), r(2.0), r(0.1), &opts()).unwrap();
    assert!((bv1.y + bv.y).norm() < 1e-15);
}

#[test]
fn principal_branch_is_real() {
    for (a, b) in [(5.0, 2.0), (4.0, 1.0), (3.0, 2.0), (2.0, 1.0), (3.0, 1.0)] {
        let rad = convergence_radius(r(a), r(b)).value;
        for s in [-0.9, -0.5, 0.1, 0.5, 0.95, 1.05, 2.0, 10.0] {
            let w = y(0, a, b, r(s * rad));
            assert!(w.im.abs() < 1e-10, "({a},{b}) s={s}: {w}");
            assert!(w.re > 0.0);
        }
    }
}

#[test]
fn u_is_strict_minimum_for_fractional_exponents() {
    for (a, b) in [(2.5, 1.0), (1.5, 0.5), (7.0 / 3.0, 2.0 / 3.0)] {
        let eq_x = C64::new(0.05, 0.02);
        let eq = TrinomialEq::canonical(r(a), r(b), eq_x);
        for n in 0..3 {
            let bv = ultra(n, r(a), r(b), eq_x, &opts()).unwrap();
            if bv.y.im.abs() <= 1e-6 {
                continue;
            }
            let at = verify_root(&eq, bv.y, bv.u).unwrap();
            for du in [-1, 1] {
                let other = verify_root(&eq, bv.y, bv.u + du).unwrap();
                assert!(other > at, "({a},{b}) n={n} u={} du={du}", bv.u);
            }
        }
    }
}

#[test]
fn derivative_matches_central_differences() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let pairs = [(2.0, 1.0), (3.0, 1.0), (3.0, 2.0), (5.0, 2.0), (2.5, 1.0)];
    for _ in 0..20 {
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        let rad = convergence_radius(r(a), r(b)).value;
        let x = C64::from_polar(rng.gen_range(0.05..0.7) * rad, rng.gen_range(-3.0..3.0));
        let n = rng.gen_range(0..a.floor() as i64);
        let h = 1e-6 * rad;
        let fd = (y(n, a, b, x + h) - y(n, a, b, x - h)) / (2.0 * h);
        let d = ultra_derivative(n, r(a), r(b), x, &opts()).unwrap();
        assert!(rel(d, fd) < 1e-6, "({a},{b}) n={n} x={x}: {d} vs {fd}");
    }
}

#[test]
fn master_derivative_identity() {
    // d/dx M(1;a;b;x) = M(1;a;b;x) d/dx M(0;a;b;x)
    let so = SeriesOptions::default();
    let ev =
        |m: f64, a: f64, b: f64, x: f64| master_series_eval(&MasterParams::real(m, a, b), r(x), 0, &so).unwrap().value;
    let h = 1e-5;
    for (a, b) in [(2.0, 1.0), (5.0, 2.0), (-1.0, 0.5)] {
        let x = 0.3 * convergence_radius(r(a), r(b)).value;
        let d1 = (ev(1.0, a, b, x + h) - ev(1.0, a, b, x - h)) / (2.0 * h);
        let d0 = (ev(0.0, a, b, x + h) - ev(0.0, a, b, x - h)) / (2.0 * h);
        assert!(rel(d1, ev(1.0, a, b, x) * d0) < 1e-6);
    }
}

#[test]
fn normalized_integral_differentiates_back() {
    let h = 1e-5;
    for (a, b) in [(2.0, 1.0), (3.0, 2.0), (5.0, 2.0), (4.0, 1.0), (2.5, 0.5)] {
        let rad = convergence_radius(r(a), r(b)).value;
        assert!(ultra_integral(0, r(a), r(b), r(0.0), true, &opts()).unwrap().norm() < 1e-14, "({a},{b})");
        for s in [0.2, 0.6, -0.4] {
            let x = r(s * rad);
            let up = ultra_integral(0, r(a), r(b), x + h, true, &opts()).unwrap();
            let dn = ultra_integral(0, r(a), r(b), x - h, true, &opts()).unwrap();
            assert!(rel((up - dn) / (2.0 * h), y(0, a, b, x)) < 1e-6, "({a},{b}) s={s}");
        }
    }
    assert_eq!(ultra_integral(1, r(2.0), r(1.0), r(0.1), true, &opts()), Err(Error::NormalizedNeedsPrincipal));
}

#[test]
fn cubic_integral_closed_form() {
    // a = 3, b = 2: x y - y^2/6 - 1/(3 y)
    for x in [-0.4, -0.1, 0.15, 0.3, 0.5] {
        let w = y(0, 3.0, 2.0, r(x));
        let want = x * w - w * w / 6.0 - 1.0 / (3.0 * w);
        let got = ultra_integral(0, r(3.0), r(2.0), r(x), false, &opts()).unwrap();
        assert!((got - want).norm() < 1e-10, "x={x}");
    }
}

#[test]
fn ultralog_exponentiates_to_ultra() {
    for (a, b) in [(5.0, 2.0), (2.0, 1.0), (3.0, 2.0), (2.5, 1.0)] {
        let rad = convergence_radius(r(a), r(b)).value;
        for s in [0.1, 0.5, -0.6, 0.9, 1.5, 4.0] {
            let x = r(s * rad);
            let l = ultralog(0, r(a), r(b), x, &opts()).unwrap().value;
            assert!(rel(l.exp(), y(0, a, b, x)) < 1e-10, "({a},{b}) s={s}");
        }
        let x = C64::from_polar(0.4 * rad, 2.0);
        for n in 1..3 {
            let l = ultralog(n, r(a), r(b), x, &opts()).unwrap().value;
            assert!(rel(l.exp(), y(n, a, b, x)) < 1e-10, "({a},{b}) n={n}");
        }
    }
}

#[test]
fn ultralog_special_rows() {
    for x in [-0.5, 0.2, 0.7] {
        let l = ultralog(0, r(1.0), r(0.0), r(x), &opts()).unwrap().value;
        assert!((l.re - (1.0 + x).ln()).abs() < 1e-12);
        let s = ultralog(0, r(2.0), r(1.0), r(x), &opts()).unwrap().value;
        assert!((s.re - x.asinh()).abs() < 1e-12);
    }
    // a = 0 is the Lambert-type row
    let w = ultralog(0, r(0.0), r(-1.0), r(0.2), &opts()).unwrap().value;
    assert!((w.re - common::lambert_w0(0.2)).abs() < 1e-12);
}

#[test]
fn ulog_derivative_matches_differences() {
    let h = 1e-5;
    for b in [0.5, 2.0, -1.0, 0.0] {
        for x in [0.05, 0.15, -0.1] {
            let f = |x: f64| ultralog(0, r(1.0), r(b), r(x), &opts()).unwrap().value;
            let fd = (f(x + h) - f(x - h)) / (2.0 * h);
            let d = ulog_derivative(r(b), r(x), &opts()).unwrap();
            assert!(rel(d, fd) < 1e-6, "b={b} x={x}: {d} vs {fd}");
        }
    }
}

#[test]
fn ode_solution() {
    assert_eq!(ultra_from_ode(r(-1.0), r(1.0)), (r(2.0), r(1.0)));
    assert_eq!(ultra_from_ode(r(-3.0), r(2.0)), (r(5.0), r(2.0)));
    // y' = y^(c+1)/(1 - b x y^c) with c = -1, b = 1
    let (a, b) = ultra_from_ode(r(-1.0), r(1.0));
    let h = 1e-6;
    for i in 0..=6 {
        let x = 0.05 * i as f64;
        let w = ultra(0, a, b, r(x), &opts()).unwrap().y;
        let yp =
            (ultra(0, a, b, r(x + h), &opts()).unwrap().y - ultra(0, a, b, r(x - h), &opts()).unwrap().y) / (2.0 * h);
        let rhs = r(1.0) / (1.0 - x / w);
        assert!((yp - rhs).norm() < 1e-8, "x={x}");
    }
}
