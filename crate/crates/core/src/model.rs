//! Item and ability state, priors, and likelihood of the centred
//! skew-probit models.
//!
//! An item's ICC is `c + (1 - c)·Φ_CSN(a(θ - b), γ)`. The skewness `γ` is
//! selected by a one-of-three indicator `Z` from `{0, γ₋, γ₊}`, with
//! mixture weights `w ~ Dirichlet(α₀, α₁, α₂)`.

use std::collections::HashSet;

use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::gamma::ln_gamma;

use crate::csn::{Csn, Skewness, GAMMA_MAX};
use crate::error::{Error, Result};
use crate::normal;

/// Symmetry status of an item: which mixture component is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Component {
    #[default]
    Symmetric = 0,
    Negative = 1,
    Positive = 2,
}

impl Component {
    pub const ALL: [Component; 3] = [
        Component::Symmetric,
        Component::Negative,
        Component::Positive,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(k: usize) -> Option<Component> {
        Component::ALL.get(k).copied()
    }

    /// The indicator triple `(Z₀, Z₁, Z₂)`.
    pub fn one_hot(self) -> [u8; 3] {
        let mut z = [0; 3];
        z[self.index()] = 1;
        z
    }

    pub fn label(self) -> &'static str {
        match self {
            Component::Symmetric => "symmetric",
            Component::Negative => "negative",
            Component::Positive => "positive",
        }
    }
}

/// Parameters of one test item.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItemState {
    /// Discrimination, `a > 0`.
    pub a: f64,
    /// Difficulty.
    pub b: f64,
    /// Guessing floor in `[0, 1)`; zero for two-parameter models.
    pub c: f64,
    /// Skewness of the negative component, in `(-GAMMA_MAX, 0)`.
    pub gamma_neg: f64,
    /// Skewness of the positive component, in `(0, GAMMA_MAX)`.
    pub gamma_pos: f64,
    pub z: Component,
    /// Mixture weights on the simplex.
    pub w: [f64; 3],
}

impl ItemState {
    /// Effective skewness `Z₀·0 + Z₁·γ₋ + Z₂·γ₊`.
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.component_gamma(self.z)
    }

    #[inline]
    pub fn component_gamma(&self, z: Component) -> f64 {
        match z {
            Component::Symmetric => 0.0,
            Component::Negative => self.gamma_neg,
            Component::Positive => self.gamma_pos,
        }
    }

    pub fn skewness(&self) -> Skewness {
        Skewness::new(self.gamma()).expect("item skewness within bounds")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Domain(format!("item state: {what}")));
        if !(self.a > 0.0 && self.a.is_finite()) {
            return bad("discrimination must be positive");
        }
        if !self.b.is_finite() {
            return bad("difficulty must be finite");
        }
        if !(0.0..1.0).contains(&self.c) {
            return bad("guessing must lie in [0, 1)");
        }
        if !(self.gamma_neg < 0.0 && self.gamma_neg > -GAMMA_MAX) {
            return bad("negative skewness out of range");
        }
        if !(self.gamma_pos > 0.0 && self.gamma_pos < GAMMA_MAX) {
            return bad("positive skewness out of range");
        }
        check_simplex(&self.w, 1e-12)
    }
}

fn check_simplex(w: &[f64; 3], tol: f64) -> Result<()> {
    if w.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
        return Err(Error::Domain(format!("weights {w:?} not on the simplex")));
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(Error::Domain(format!("weights {w:?} sum to {total}")));
    }
    Ok(())
}

/// Latent traits of the `J` respondents.
#[derive(Debug, Clone, PartialEq)]
pub struct Abilities {
    pub theta: Vec<f64>,
}

impl Abilities {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Domain("abilities must be finite".into()));
        }
        Ok(Abilities { theta })
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }
}

/// Complete `I × J` binary response matrix, stored item-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseMatrix {
    n_items: usize,
    n_subjects: usize,
    y: Vec<u8>,
    item_ids: Vec<String>,
    subject_ids: Vec<String>,
}

impl ResponseMatrix {
    /// Builds a matrix from item-major cells (`y[i * J + j]`).
    pub fn new(item_ids: Vec<String>, subject_ids: Vec<String>, y: Vec<u8>) -> Result<Self> {
        let (n_items, n_subjects) = (item_ids.len(), subject_ids.len());
        if n_items == 0 || n_subjects == 0 {
            return Err(Error::Data("response matrix is empty".into()));
        }
        if y.len() != n_items * n_subjects {
            return Err(Error::Data(format!(
                "expected {} cells for {n_items} items x {n_subjects} subjects, got {}",
                n_items * n_subjects,
                y.len()
            )));
        }
        if let Some(pos) = y.iter().position(|&v| v > 1) {
            return Err(Error::Data(format!(
                "non-binary response at item {}, subject {}",
                item_ids[pos / n_subjects],
                subject_ids[pos % n_subjects]
            )));
        }
        check_unique(&item_ids, "item")?;
        check_unique(&subject_ids, "subject")?;
        Ok(ResponseMatrix {
            n_items,
            n_subjects,
            y,
            item_ids,
            subject_ids,
        })
    }

    /// Matrix with generated ids `item1..` and `subject1..`.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n_items = rows.len();
        let n_subjects = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_subjects) {
            return Err(Error::Data("ragged response rows".into()));
        }
        ResponseMatrix::new(
            (1..=n_items).map(|i| format!("item{i}")).collect(),
            (1..=n_subjects).map(|j| format!("subject{j}")).collect(),
            rows.concat(),
        )
    }

    #[inline]
    pub fn n_items(&self) -> usize {
        self.n_items
    }

    #[inline]
    pub fn n_subjects(&self) -> usize {
        self.n_subjects
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.y[i * self.n_subjects + j]
    }

    /// Responses of all subjects to item `i`.
    #[inline]
    pub fn item(&self, i: usize) -> &[u8] {
        &self.y[i * self.n_subjects..(i + 1) * self.n_subjects]
    }

    pub fn item_ids(&self) -> &[String] {
        &self.item_ids
    }

    pub fn subject_ids(&self) -> &[String] {
        &self.subject_ids
    }

    /// Proportion of correct answers per item.
    pub fn facility(&self) -> Vec<f64> {
        (0..self.n_items)
            .map(|i| self.item(i).iter().map(|&v| v as f64).sum::<f64>() / self.n_subjects as f64)
            .collect()
    }

    /// Number of correct answers per subject.
    pub fn subject_scores(&self) -> Vec<u32> {
        let mut scores = vec![0u32; self.n_subjects];
        for i in 0..self.n_items {
            for (s, &v) in scores.iter_mut().zip(self.item(i)) {
                *s += v as u32;
            }
        }
        scores
    }

    /// Copy of the matrix without the listed items.
    pub fn without_items(&self, exclude: &[String]) -> Result<ResponseMatrix> {
        for id in exclude {
            if !self.item_ids.contains(id) {
                return Err(Error::Data(format!("cannot exclude unknown item {id}")));
            }
        }
        let keep: Vec<usize> = (0..self.n_items)
            .filter(|&i| !exclude.contains(&self.item_ids[i]))
            .collect();
        ResponseMatrix::new(
            keep.iter().map(|&i| self.item_ids[i].clone()).collect(),
            self.subject_ids.clone(),
            keep.iter()
                .flat_map(|&i| self.item(i).iter().copied())
                .collect(),
        )
    }
}

fn check_unique(ids: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::Data(format!("duplicate {what} id {id:?}")));
        }
    }
    Ok(())
}

/// Guessing indicators `D`; `D_ij = 1` marks a response answered by chance.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxIndicators {
    n_subjects: usize,
    d: Vec<u8>,
}

impl AuxIndicators {
    pub fn zeros(n_items: usize, n_subjects: usize) -> Self {
        AuxIndicators {
            n_subjects,
            d: vec![0; n_items * n_subjects],
        }
    }

    /// Item-major cells, checked against `y`.
    pub fn new(y: &ResponseMatrix, d: Vec<u8>) -> Result<Self> {
        let aux = AuxIndicators {
            n_subjects: y.n_subjects(),
            d,
        };
        aux.check_against(y)?;
        Ok(aux)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.d[i * self.n_subjects + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.d[i * self.n_subjects + j] = v;
    }

    #[inline]
    pub fn item(&self, i: usize) -> &[u8] {
        &self.d[i * self.n_subjects..(i + 1) * self.n_subjects]
    }

    #[inline]
    pub fn item_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.d[i * self.n_subjects..(i + 1) * self.n_subjects]
    }

    /// `Σ_j D_ij`.
    pub fn item_count(&self, i: usize) -> u32 {
        self.item(i).iter().map(|&v| v as u32).sum()
    }

    pub fn check_against(&self, y: &ResponseMatrix) -> Result<()> {
        if self.d.len() != y.n_items() * y.n_subjects() || self.n_subjects != y.n_subjects() {
            return Err(Error::Data(
                "guessing indicators do not match responses".into(),
            ));
        }
        for i in 0..y.n_items() {
            for (j, (&d, &yv)) in self.item(i).iter().zip(y.item(i)).enumerate() {
                if d > 1 || (d == 1 && yv == 0) {
                    return Err(Error::Data(format!(
                        "guessing indicator set on incorrect response ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Hyperparameters of the prior.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorConfig {
    /// Dirichlet concentration `(α₀, α₁, α₂)` for the mixture weights.
    pub dirichlet: [f64; 3],
    /// Beta `(α, β)` for `γ₊` and `-γ₋`, truncated to `(0, GAMMA_MAX)`.
    pub beta_skew: (f64, f64),
    pub mu_a: f64,
    pub sigma_a: f64,
    pub mu_b: f64,
    pub sigma_b: f64,
    /// Beta `(α_c, β_c)` for the guessing parameters.
    pub beta_guess: (f64, f64),
}

impl Default for PriorConfig {
    fn default() -> Self {
        PriorConfig {
            dirichlet: [0.1, 0.01, 0.01],
            beta_skew: (1.0, 1.0),
            mu_a: 1.0,
            sigma_a: 0.7,
            mu_b: 0.0,
            sigma_b: 1.0,
            beta_guess: (5.0, 17.0),
        }
    }
}

impl PriorConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !self.dirichlet.iter().all(|&x| positive(x)) {
            return Err(Error::Config(
                "dirichlet concentrations must be positive".into(),
            ));
        }
        if !(positive(self.beta_skew.0) && positive(self.beta_skew.1)) {
            return Err(Error::Config(
                "beta_skew parameters must be positive".into(),
            ));
        }
        if !(positive(self.beta_guess.0) && positive(self.beta_guess.1)) {
            return Err(Error::Config(
                "beta_guess parameters must be positive".into(),
            ));
        }
        if !(positive(self.sigma_a) && positive(self.sigma_b)) {
            return Err(Error::Config("prior scales must be positive".into()));
        }
        if !(self.mu_a.is_finite() && self.mu_b.is_finite()) {
            return Err(Error::Config("prior means must be finite".into()));
        }
        Ok(())
    }

    pub fn dirichlet_mean(&self) -> [f64; 3] {
        let total: f64 = self.dirichlet.iter().sum();
        self.dirichlet.map(|x| x / total)
    }

    pub fn guess_mean(&self) -> f64 {
        self.beta_guess.0 / (self.beta_guess.0 + self.beta_guess.1)
    }

    /// Log density of the discrimination prior, `N(μ_a, σ_a²)` truncated to
    /// `a > 0`.
    pub fn ln_prior_a(&self, a: f64) -> f64 {
        if a <= 0.0 || !a.is_finite() {
            return f64::NEG_INFINITY;
        }
        normal::ln_pdf((a - self.mu_a) / self.sigma_a)
            - self.sigma_a.ln()
            - normal::cdf(self.mu_a / self.sigma_a).ln()
    }

    pub fn ln_prior_b(&self, b: f64) -> f64 {
        normal::ln_pdf((b - self.mu_b) / self.sigma_b) - self.sigma_b.ln()
    }

    /// Log density of the truncated Beta prior of `|γ|` on `(0, GAMMA_MAX)`.
    pub fn ln_prior_skew_magnitude(&self, g: f64) -> f64 {
        if !(g > 0.0 && g < GAMMA_MAX) {
            return f64::NEG_INFINITY;
        }
        let (al, be) = self.beta_skew;
        ln_beta_density(g, al, be) - beta_reg(al, be, GAMMA_MAX).ln()
    }

    pub fn ln_prior_guess(&self, c: f64) -> f64 {
        if !(c > 0.0 && c < 1.0) {
            return f64::NEG_INFINITY;
        }
        ln_beta_density(c, self.beta_guess.0, self.beta_guess.1)
    }

    pub fn ln_prior_weights(&self, w: &[f64; 3]) -> f64 {
        if w.iter().any(|&x| x <= 0.0) {
            return f64::NEG_INFINITY;
        }
        let total: f64 = self.dirichlet.iter().sum();
        ln_gamma(total)
            + self
                .dirichlet
                .iter()
                .zip(w)
                .map(|(&al, &x)| (al - 1.0) * x.ln() - ln_gamma(al))
                .sum::<f64>()
    }
}

fn ln_beta_density(x: f64, a: f64, b: f64) -> f64 {
    let mut v = -ln_beta(a, b);
    if a != 1.0 {
        v += (a - 1.0) * x.ln();
    }
    if b != 1.0 {
        v += (b - 1.0) * (-x).ln_1p();
    }
    v
}

/// Linear predictor `a(θ - b)`.
#[inline]
pub fn predictor(a: f64, b: f64, theta: f64) -> f64 {
    a * (theta - b)
}

/// Item characteristic curve `c + (1 - c)·Φ_CSN(m, γ)`.
pub fn icc(m: f64, gamma: Skewness, c: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::Domain(format!("guessing {c} outside [0, 1)")));
    }
    Ok(c + (1.0 - c) * Csn::new(gamma).cdf(m))
}

/// ICC with the skewness indicator integrated out:
/// `w₀Φ_CSN(m, 0) + w₁Φ_CSN(m, γ₋) + w₂Φ_CSN(m, γ₊)`.
pub fn mixture_icc(m: f64, w: [f64; 3], gamma_neg: f64, gamma_pos: f64) -> Result<f64> {
    check_simplex(&w, 1e-9)?;
    if !(gamma_neg < 0.0 && gamma_pos > 0.0) {
        return Err(Error::Domain(
            "mixture needs gamma_neg < 0 < gamma_pos".into(),
        ));
    }
    let neg = Csn::new(Skewness::new(gamma_neg)?);
    let pos = Csn::new(Skewness::new(gamma_pos)?);
    Ok(w[0] * normal::cdf(m) + w[1] * neg.cdf(m) + w[2] * pos.cdf(m))
}

fn check_dims(items: &[ItemState], theta: &Abilities, y: &ResponseMatrix) -> Result<()> {
    if items.len() != y.n_items() || theta.len() != y.n_subjects() {
        return Err(Error::Data(format!(
            "dimension mismatch: {} items / {} abilities vs {}x{} responses",
            items.len(),
            theta.len(),
            y.n_items(),
            y.n_subjects()
        )));
    }
    Ok(())
}

/// Log-likelihood of the responses not attributed to guessing:
/// `Σ_{D_ij = 0} y log Φ_CSN(m, γ) + (1-y) log(1 - Φ_CSN(m, γ))`.
///
/// Evaluates to `-∞` when an observed response has probability exactly 0.
pub fn loglik(
    items: &[ItemState],
    theta: &Abilities,
    y: &ResponseMatrix,
    d: &AuxIndicators,
) -> Result<f64> {
    check_dims(items, theta, y)?;
    d.check_against(y)?;
    let mut total = 0.0;
    for (i, item) in items.iter().enumerate() {
        let law = Csn::new(item.skewness());
        for (j, (&yv, &dv)) in y.item(i).iter().zip(d.item(i)).enumerate() {
            if dv == 1 {
                continue;
            }
            let m = predictor(item.a, item.b, theta.theta[j]);
            let p = if yv == 1 { law.cdf(m) } else { law.sf(m) };
            total += p.ln();
        }
    }
    Ok(total)
}

/// `Σ log P(D_ij | c_i)` under `D_ij ~ Bernoulli(c_i)`.
pub fn aux_log_prior(items: &[ItemState], d: &AuxIndicators) -> f64 {
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let ones = d.item_count(i) as f64;
            let zeros = d.item(i).len() as f64 - ones;
            let mut v = 0.0;
            if ones > 0.0 {
                v += ones * item.c.ln();
            }
            if zeros > 0.0 {
                v += zeros * (-item.c).ln_1p();
            }
            v
        })
        .sum()
}

/// Joint log prior density of item parameters and abilities. Out-of-support
/// values give `-∞`.
pub fn log_prior(
    items: &[ItemState],
    theta: &Abilities,
    config: &PriorConfig,
    guessing_estimated: bool,
) -> f64 {
    let mut total: f64 = theta.theta.iter().map(|&t| normal::ln_pdf(t)).sum();
    for item in items {
        total += config.ln_prior_a(item.a);
        total += config.ln_prior_b(item.b);
        total += config.ln_prior_weights(&item.w);
        // log P(Z | w)
        total += item.w[item.z.index()].ln();
        total += config.ln_prior_skew_magnitude(item.gamma_pos);
        total += config.ln_prior_skew_magnitude(-item.gamma_neg);
        if guessing_estimated {
            total += config.ln_prior_guess(item.c);
        }
        if total == f64::NEG_INFINITY {
            break;
        }
    }
    total
}
