//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library's numerical code, so agreement is meaningful.
#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::PI;

pub fn phi(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

pub fn big_phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Skew-normal direct parameters `(ξ, ω, α)` of the unit-variance,
/// zero-mean law with skewness `γ`, derived from the moments: with
/// `q = μ_z/σ_z`, skewness is `(4-π)/2 · q³`.
pub fn csn_direct(gamma: f64) -> (f64, f64, f64) {
    if gamma == 0.0 {
        return (0.0, 1.0, 0.0);
    }
    let q = gamma.signum() * (2.0 * gamma.abs() / (4.0 - PI)).powf(1.0 / 3.0);
    let mu_z = q / (1.0 + q * q).sqrt();
    let delta = mu_z / (2.0 / PI).sqrt();
    let alpha = delta / (1.0 - delta * delta).sqrt();
    let omega = (1.0 + q * q).sqrt();
    (-omega * mu_z, omega, alpha)
}

pub fn csn_pdf(u: f64, gamma: f64) -> f64 {
    let (xi, omega, alpha) = csn_direct(gamma);
    let z = (u - xi) / omega;
    2.0 / omega * phi(z) * big_phi(alpha * z)
}

/// Standard (non-centred) skew-normal density with shape `α`.
pub fn sn_pdf(x: f64, alpha: f64) -> f64 {
    2.0 * phi(x) * big_phi(alpha * x)
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod (7, 15) quadrature to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, tol * 0.5, depth - 1) + rec(f, m, b, tol * 0.5, depth - 1)
    }
    rec(&f, a, b, tol, 40)
}

/// `∫_{-∞}^{u}` of a density whose mass below `u - 40` is negligible.
pub fn lower_integral<F: Fn(f64) -> f64>(f: F, u: f64, tol: f64) -> f64 {
    let lo = u.min(0.0) - 40.0;
    let mut total = 0.0;
    // split at the origin and a few unit points so each piece is smooth
    let mut knots = vec![lo];
    for k in [-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0] {
        if k > lo && k < u {
            knots.push(k);
        }
    }
    knots.push(u);
    for w in knots.windows(2) {
        total += integrate(&f, w[0], w[1], tol / knots.len() as f64);
    }
    total
}

/// `n`-point Gauss–Legendre nodes and weights on `[-1, 1]` by Newton
/// iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

pub fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Pearson chi-square statistic of `counts` against cell probabilities
/// `probs`, with the 99% critical value for `cells - 1` degrees of freedom.
pub fn chi_square(counts: &[usize], probs: &[f64]) -> (f64, f64) {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let n: usize = counts.iter().sum();
    let stat = counts
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = p * n as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let crit = ChiSquared::new((counts.len() - 1) as f64)
        .unwrap()
        .inverse_cdf(0.99);
    (stat, crit)
}

/// Index of the bin of `x` given ascending inner edges.
pub fn bin(x: f64, edges: &[f64]) -> usize {
    edges.iter().take_while(|&&e| x >= e).count()
}
