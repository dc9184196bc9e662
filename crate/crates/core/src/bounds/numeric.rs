use crate::error::{Error, Result};

const BERNOULLI_2J: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{j ≥ 0} (a + j)^{-s}` for `s > 1`, `a > 0`,
/// by direct summation of the first terms and an Euler–Maclaurin remainder.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0, "hurwitz_zeta needs s > 1 and a > 0");
    const N: usize = 12;
    let head: f64 = (0..N).map(|j| (a + j as f64).powf(-s)).sum();
    let x = a + N as f64;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2) / (2j)!
    let mut factor = s / 2.0;
    let mut power = x.powf(-s - 1.0);
    for (j, b) in BERNOULLI_2J.iter().enumerate() {
        tail += b * factor * power;
        let j = j as f64 + 1.0;
        factor *= (s + 2.0 * j - 1.0) * (s + 2.0 * j) / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
        power /= x * x;
    }
    head + tail
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

const MAX_PANELS: usize = 4000;

/// Adaptive double-exponential quadrature over the panels between
/// consecutive `breakpoints`, bisecting the worst panel until the summed
/// error estimate drops below `rel_tol · |value| + abs_tol`.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadratureResult> {
    let mut evaluations = 0u64;
    let mut eval = |a: f64, b: f64| {
        let out = quadrature::integrate(&f, a, b, 0.0);
        evaluations += out.num_function_evaluations as u64;
        Panel {
            a,
            b,
            value: out.integral,
            error: out.error_estimate.abs(),
        }
    };
    let mut panels: Vec<Panel> = breakpoints
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| eval(w[0], w[1]))
        .collect();
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= rel_tol * value.abs() + abs_tol {
            return Ok(QuadratureResult {
                value,
                error,
                evaluations,
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::Quadrature(format!(
                "no convergence after {} panels: value {value:e}, error {error:e}",
                panels.len()
            )));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(Error::Quadrature(format!("panel [{}, {}] cannot be split", p.a, p.b)));
        }
        panels.push(eval(p.a, mid));
        panels.push(eval(mid, p.b));
    }
}

/// Breakpoints `0, top·2^{-levels}, ..., top/2, top`.
pub fn geometric_breakpoints(top: f64, levels: u32) -> Vec<f64> {
    let mut v = vec![0.0];
    v.extend((0..=levels).rev().map(|j| top * 0.5f64.powi(j as i32)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((hurwitz_zeta(2.0, 1.0) - z2).abs() < 1e-13);
        assert!((hurwitz_zeta(2.0, 3.0) - (z2 - 1.0 - 0.25)).abs() < 1e-13);
        // ζ(3/2) = 2.612375348685488
        assert!((hurwitz_zeta(1.5, 1.0) - 2.612_375_348_685_488).abs() < 1e-12);
        let a: f64 = 1e6;
        let approx = a.powf(-0.5) / 0.5;
        assert!((hurwitz_zeta(1.5, a) / approx - 1.0).abs() < 1e-5);
    }

    #[test]
    fn panels_integrate() {
        let r = integrate_panels(|x: f64| (-x).exp(), &geometric_breakpoints(50.0, 40), 1e-10, 0.0).unwrap();
        assert!((r.value - (1.0 - (-50.0f64).exp())).abs() < 1e-9);
        let r = integrate_panels(|x: f64| x.sqrt(), &[0.0, 1.0], 1e-10, 0.0).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-9);
    }
}
