//! Gauss–Legendre and Gauss–Laguerre nodes and weights.

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = vec![(0.0, 0.0); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = (-x, w);
        rule[n - 1 - i] = (x, w);
    }
    rule
}

// P_n(x) and P_n'(x)
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Nodes and weights of the `n`-point Gauss–Laguerre rule for
/// `∫₀^∞ e^{-x} f(x) dx`, by Newton iteration from the usual asymptotic
/// starting guesses.
pub fn gauss_laguerre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let nf = n as f64;
    let mut rule: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut x = 0.0;
    for i in 0..n {
        x = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => x + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                let x2: f64 = rule[i - 2].0;
                x + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (x - x2)
            }
        };
        for _ in 0..100 {
            let (p, d) = laguerre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.max(1.0) {
                break;
            }
        }
        let (_, d) = laguerre(n, x);
        let w = 1.0 / (x * d * d);
        rule.push((x, w));
    }
    rule
}

// L_n(x) and L_n'(x)
fn laguerre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 0.0;
    let mut p1 = 1.0;
    for k in 1..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0 - x) * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (p1 - p0) / x;
    (p1, d)
}
