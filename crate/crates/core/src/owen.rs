//! Owen's T function
//!
//! `T(h, a) = (1/2π) ∫₀^a exp(-h²(1+x²)/2) / (1+x²) dx`
//!
//! Evaluated with the region-based method selection of Patefield & Tandy
//! (2000): the `(h, a)` plane is cut into rectangles and each one is served
//! by the cheapest series or quadrature rule that reaches double precision
//! there. Their Chebyshev-weighted series (method T3) is replaced by the
//! 13-point quadrature rule, which is exact to well below 1e-16 in that
//! region as well.

use std::sync::OnceLock;

use crate::normal::{INV_2PI, INV_SQRT_2PI};
use libm::{erf, erfc};

const H_RANGE: [f64; 14] = [
    0.02, 0.06, 0.09, 0.125, 0.26, 0.4, 0.6, 1.6, 1.7, 2.33, 2.4, 3.36, 3.4, 4.8,
];
const A_RANGE: [f64; 7] = [0.025, 0.09, 0.15, 0.36, 0.5, 0.9, 0.99999];

#[rustfmt::skip]
const SELECT: [u8; 120] = [
    0, 0, 1, 12, 12, 12, 12, 12, 12, 12, 12, 15, 15, 15, 8,
    0, 1, 1, 2, 2, 4, 4, 13, 13, 14, 14, 15, 15, 15, 8,
    1, 1, 2, 2, 2, 4, 4, 14, 14, 14, 14, 15, 15, 15, 9,
    1, 1, 2, 4, 4, 4, 4, 6, 6, 15, 15, 15, 15, 15, 9,
    1, 2, 2, 4, 4, 5, 5, 7, 7, 16, 16, 16, 11, 11, 10,
    1, 2, 4, 4, 4, 5, 5, 7, 7, 16, 16, 16, 11, 11, 11,
    1, 2, 3, 3, 5, 5, 7, 7, 16, 16, 16, 16, 16, 11, 11,
    1, 2, 3, 3, 5, 5, 17, 17, 17, 17, 16, 16, 16, 11, 11,
];

#[derive(Clone, Copy)]
enum Method {
    PowerSeries(u32),
    Asymptotic(u32),
    Quadrature,
    Chebyshev(u32),
    NearUnitSlope,
}

const METHODS: [Method; 18] = [
    Method::PowerSeries(2),
    Method::PowerSeries(3),
    Method::PowerSeries(4),
    Method::PowerSeries(5),
    Method::PowerSeries(7),
    Method::PowerSeries(10),
    Method::PowerSeries(12),
    Method::PowerSeries(18),
    Method::Asymptotic(10),
    Method::Asymptotic(20),
    Method::Asymptotic(30),
    Method::Quadrature,
    Method::Chebyshev(4),
    Method::Chebyshev(7),
    Method::Chebyshev(8),
    Method::Chebyshev(20),
    Method::Quadrature,
    Method::NearUnitSlope,
];

/// Owen's T function for arbitrary finite `h` and `a`.
pub fn owens_t(h: f64, a: f64) -> f64 {
    let h_abs = h.abs();
    let a_abs = a.abs();
    let ah = a_abs * h_abs;

    let t = if a_abs <= 1.0 {
        dispatch(h_abs, a_abs, ah)
    } else if h_abs <= 0.67 {
        0.25 - half_erf(h_abs) * half_erf(ah) - dispatch(ah, 1.0 / a_abs, h_abs)
    } else {
        let nh = half_erfc(h_abs);
        let nah = half_erfc(ah);
        0.5 * (nh + nah) - nh * nah - dispatch(ah, 1.0 / a_abs, h_abs)
    };

    if a < 0.0 {
        -t
    } else {
        t
    }
}

/// `Φ(x) - 1/2`
#[inline]
fn half_erf(x: f64) -> f64 {
    0.5 * erf(x * std::f64::consts::FRAC_1_SQRT_2)
}

/// `1 - Φ(x)`
#[inline]
fn half_erfc(x: f64) -> f64 {
    0.5 * erfc(x * std::f64::consts::FRAC_1_SQRT_2)
}

// 0 <= a <= 1, h >= 0
fn dispatch(h: f64, a: f64, ah: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let ih = H_RANGE.iter().position(|&v| h <= v).unwrap_or(14);
    let ia = A_RANGE.iter().position(|&v| a <= v).unwrap_or(7);
    match METHODS[SELECT[ia * 15 + ih] as usize] {
        Method::PowerSeries(m) => power_series(h, a, m),
        Method::Asymptotic(m) => asymptotic(h, a, ah, m),
        Method::Quadrature => quadrature(h, a),
        Method::Chebyshev(m) => chebyshev(h, a, m),
        Method::NearUnitSlope => near_unit_slope(h, a),
    }
}

fn power_series(h: f64, a: f64, m: u32) -> f64 {
    let hs = -0.5 * h * h;
    let dhs = hs.exp();
    let as_ = a * a;
    let mut j = 1u32;
    let mut jj = 1.0;
    let mut aj = a * INV_2PI;
    let mut dj = hs.exp_m1();
    let mut gj = hs * dhs;
    let mut val = a.atan() * INV_2PI;
    loop {
        val += dj * aj / jj;
        if m <= j {
            break;
        }
        j += 1;
        jj += 2.0;
        aj *= as_;
        dj = gj - dj;
        gj *= hs / j as f64;
    }
    val
}

fn asymptotic(h: f64, a: f64, ah: f64, m: u32) -> f64 {
    let max_ii = 2 * m + 1;
    let hs = h * h;
    let as_ = -a * a;
    let y = 1.0 / hs;
    let mut ii = 1u32;
    let mut val = 0.0;
    let mut vi = a * (-0.5 * ah * ah).exp() * INV_SQRT_2PI;
    let mut z = half_erf(ah) / h;
    loop {
        val += z;
        if max_ii <= ii {
            return val * (-0.5 * hs).exp() * INV_SQRT_2PI;
        }
        z = y * (vi - ii as f64 * z);
        vi *= as_;
        ii += 2;
    }
}

fn chebyshev(h: f64, a: f64, m: u32) -> f64 {
    let max_ii = 2 * m + 1;
    let hs = h * h;
    let as_ = -a * a;
    let mut ii = 1u32;
    let mut ai = a * (-0.5 * hs * (1.0 - as_)).exp() * INV_2PI;
    let mut yi = 1.0;
    let mut val = 0.0;
    loop {
        val += ai * yi;
        if max_ii <= ii {
            return val;
        }
        ii += 2;
        yi = (1.0 - hs * yi) / ii as f64;
        ai *= as_;
    }
}

/// Squared positive nodes of the 26-point Gauss–Legendre rule and the
/// matching weights divided by 2π.
fn quadrature_rule() -> &'static [(f64, f64); 13] {
    static RULE: OnceLock<[(f64, f64); 13]> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut rule = [(0.0, 0.0); 13];
        for (k, (x, w)) in crate::quad::gauss_legendre(26)
            .into_iter()
            .filter(|(x, _)| *x > 0.0)
            .enumerate()
        {
            rule[k] = (x * x, w * INV_2PI);
        }
        rule
    })
}

fn quadrature(h: f64, a: f64) -> f64 {
    let as_ = a * a;
    let hs = -0.5 * h * h;
    let val: f64 = quadrature_rule()
        .iter()
        .map(|&(p, w)| {
            let r = 1.0 + as_ * p;
            w * (hs * r).exp() / r
        })
        .sum();
    val * a
}

fn near_unit_slope(h: f64, a: f64) -> f64 {
    let normh = half_erfc(h);
    let y = 1.0 - a;
    let r = y.atan2(1.0 + a);
    let mut val = 0.5 * normh * (1.0 - normh);
    if r != 0.0 {
        val -= r * (-0.5 * y * h * h / r).exp() * INV_2PI;
    }
    val
}
