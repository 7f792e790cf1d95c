//! Independent reference computations that share no code with the library.

#![allow(dead_code)]

use num_complex::Complex64 as C64;

pub fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Roots of sum_k coeffs[k] z^k (coeffs[deg] != 0) by Durand-Kerner iteration.
pub fn durand_kerner(coeffs: &[C64]) -> Vec<C64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: C64| monic.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..deg).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = C64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-17 {
            break;
        }
    }
    // Newton polish on the original polynomial
    let d: Vec<C64> = (1..=deg).map(|k| monic[k] * k as f64).collect();
    let deval = |z: C64| d.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c);
    for z in roots.iter_mut() {
        for _ in 0..5 {
            let dz = deval(*z);
            if dz.norm() > 0.0 {
                *z -= eval(*z) / dz;
            }
        }
    }
    roots
}

/// Every element of `got` is within `tol` of a distinct element of `want`.
pub fn same_root_set(got: &[C64], want: &[C64], tol: f64) -> bool {
    if got.len() != want.len() {
        return false;
    }
    let mut used = vec![false; want.len()];
    for g in got {
        let best = want
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|x, y| (x.1 - g).norm().total_cmp(&(y.1 - g).norm()));
        match best {
            Some((i, w)) if (w - g).norm() <= tol => used[i] = true,
            _ => return false,
        }
    }
    true
}

/// Principal Lambert W on (-1/e, inf) by Newton iteration on w e^w = x.
pub fn lambert_w0(x: f64) -> f64 {
    let mut w = if x < 1.0 { x - x * x } else { x.ln() };
    for _ in 0..100 {
        let e = w.exp();
        let step = (w * e - x) / (e * (w + 1.0));
        w -= step;
        if step.abs() < 1e-17 {
            break;
        }
    }
    w
}

/// Direct Pochhammer sum of 2F1 run until the terms vanish.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let mut t = 1.0;
    let mut s = 0.0;
    for k in 0..100_000 {
        s += t;
        t *= (a + k as f64) * (b + k as f64) / ((c + k as f64) * (k + 1) as f64) * x;
        if t.abs() < 1e-18 * s.abs() {
            break;
        }
    }
    s
}

/// Radius of y^a = 1 + a x y^b for real a, b from the branch-point system
/// F = 0, dF/dy = 0: y^a = b/(b-a) and x = y^(a-b)/b.
pub fn radius_from_branch_point(a: f64, b: f64) -> f64 {
    let ya = (b / (b - a)).abs();
    ya.powf((a - b) / a) / b.abs()
}
