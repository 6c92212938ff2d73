//! Integral means of `theta^(d)` over circles and discs: Hardy means,
//! weighted Bergman integrals and Nevanlinna means, with a growth classifier
//! that decides bounded versus diverging from the radial profile.
//!
//! Radii follow the geometric grid `r_j = 1 - 2^-j`. Node counts on a circle
//! of radius `r` never start below `8 / max(1 - r, w)`, where `w` is the
//! smallest feature width of the function (0 when its spectrum is non-empty),
//! so peaks near the boundary are always resolved.

mod quadrature;

pub use quadrature::{gauss_legendre, integrate, periodic_mean, MeanEstimate, AGREEMENT, MAX_NODES};

use std::f64::consts::TAU;
use std::fmt;

use crate::criteria::{CriterionResult, Verdict};
use crate::error::{Error, Result};
use crate::{Inner, Spec, C64};

/// Largest truncation bound tolerated on a quadrature circle.
pub const NORM_TRUNCATION_TOL: f64 = 1e-6;
/// Deepest radius index of the geometric grid.
pub const MAX_RADIUS_INDEX: u32 = 20;
/// Smallest starting node count.
pub const MIN_NODES: usize = 64;
/// Node-count floor per unit of `1 / (1 - r)`.
pub const NODES_PER_DEPTH: f64 = 8.0;

/// Thresholds of the growth classifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRule {
    /// Last increment below this fraction of the value counts as converged.
    pub cauchy: f64,
    /// Increment ratios must clear `1 +- margin` on every inspected step.
    pub ratio_margin: f64,
    /// Growth by this factor over `steps` steps counts as diverging.
    pub growth_factor: f64,
    pub steps: usize,
    /// "Bounded" needs the profile to reach at least this radius.
    pub min_radius: f64,
}

impl Default for GrowthRule {
    fn default() -> Self {
        Self {
            cauchy: 1e-3,
            ratio_margin: 0.03,
            growth_factor: 1.5,
            steps: 3,
            min_radius: 1.0 - 2f64.powi(-8),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    Bounded,
    Diverging,
    Inconclusive,
}

impl Growth {
    pub fn as_str(self) -> &'static str {
        match self {
            Growth::Bounded => "bounded",
            Growth::Diverging => "diverging",
            Growth::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl GrowthRule {
    /// Classifies a non-decreasing sequence from its increments.
    pub fn classify(&self, seq: &[f64]) -> Growth {
        let n = seq.len();
        if n < self.steps + 2 {
            return Growth::Inconclusive;
        }
        let last = seq[n - 1];
        if last == 0.0 {
            return Growth::Bounded;
        }
        if !last.is_finite() {
            return Growth::Diverging;
        }
        let inc: Vec<f64> = seq.windows(2).map(|w| w[1] - w[0]).collect();
        if inc[inc.len() - 1].abs() < self.cauchy * last.abs() {
            return Growth::Bounded;
        }
        let tail = &inc[inc.len() - self.steps - 1..];
        let ratios: Vec<f64> = tail.windows(2).map(|w| w[1] / w[0]).collect();
        let positive = tail.iter().all(|&d| d > 0.0);
        if (positive && ratios.iter().all(|&q| q >= 1.0 + self.ratio_margin))
            || last >= self.growth_factor * seq[n - 1 - self.steps]
        {
            return Growth::Diverging;
        }
        if positive && ratios.iter().all(|&q| q <= 1.0 - self.ratio_margin) {
            return Growth::Bounded;
        }
        Growth::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormEstimate {
    /// Hardy: `M_p` at the last radius. Bergman: the weighted integral of `|f|^p`.
    pub value: f64,
    pub classification: Growth,
    /// Hardy: `(r, M_p(r))`. Bergman: `(r, integral over |z| < r)`.
    pub r_profile: Vec<(f64, f64)>,
    /// Largest node count used on any circle.
    pub quadrature_points: usize,
    pub deriv_order: usize,
    /// Largest radius with an admissible truncation and converged quadrature.
    pub max_radius: f64,
    /// Why the profile stopped before the deepest radius, if it did.
    pub ceiling: Option<String>,
}

fn check_order(deriv: usize) -> Result<()> {
    if deriv > 2 {
        return Err(Error::Parameter {
            name: "deriv",
            value: deriv as f64,
            reason: "derivative order is limited to 2",
        });
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Parameter { name: "p", value: p, reason: "p must be positive" });
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0 && alpha.is_finite()) {
        return Err(Error::Parameter {
            name: "alpha",
            value: alpha,
            reason: "alpha must exceed -1",
        });
    }
    Ok(())
}

fn check_radius(spec: &Spec, r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Parameter { name: "r", value: r, reason: "radius must lie in [0, 1)" });
    }
    let bound = spec.truncation_bound(r);
    if !(bound < NORM_TRUNCATION_TOL) {
        return Err(Error::InsufficientTruncation { radius: r, bound });
    }
    Ok(())
}

/// Starting node count on the circle of radius `r` for feature width `width`.
pub fn start_nodes(k: usize, r: f64, width: f64) -> usize {
    let floor = (NODES_PER_DEPTH / (1.0 - r).max(width)).ceil() as usize;
    k.max(floor.next_power_of_two()).min(MAX_NODES)
}

/// Smallest zero defect for functions with empty spectrum, else 0.
fn feature_width(f: &Inner) -> f64 {
    if !f.spectrum().is_empty() {
        return 0.0;
    }
    f.zeros()
        .iter()
        .flatten()
        .map(|p| p.defect)
        .fold(1.0, f64::min)
}

fn circle_mean<G>(f: &Inner, deriv: usize, r: f64, k: usize, g: G) -> Result<MeanEstimate>
where
    G: Fn(f64) -> f64 + Sync,
{
    periodic_mean(
        |t| {
            let jet = f.eval(C64::from_polar(r, t))?;
            Ok(g(jet.derivative(deriv).expect("order checked").norm()))
        },
        start_nodes(k, r, feature_width(f)),
    )
}

/// `(1/2pi) int |f^(deriv)(r e^{it})|^p dt`, the p-th power mean.
fn power_mean(f: &Inner, deriv: usize, p: f64, r: f64, k: usize) -> Result<MeanEstimate> {
    circle_mean(f, deriv, r, k, |m| m.powf(p))
}

/// Hardy mean `M_p(r, theta^(deriv))`, the p-th root of the power mean.
pub fn hardy_mean(spec: &Spec, deriv: usize, p: f64, r: f64, k: usize) -> Result<MeanEstimate> {
    check_order(deriv)?;
    check_p(p)?;
    if k < MIN_NODES || !k.is_power_of_two() {
        return Err(Error::Parameter {
            name: "k",
            value: k as f64,
            reason: "node count must be a power of two, at least 64",
        });
    }
    check_radius(spec, r)?;
    let f = Inner::new(spec)?;
    let m = power_mean(&f, deriv, p, r, k)?;
    Ok(MeanEstimate { value: m.value.powf(p.recip()), ..m })
}

/// `(1/2pi) int log+ |f^(deriv)(r e^{it})| dt`.
pub fn nevanlinna_mean(spec: &Spec, deriv: usize, r: f64) -> Result<MeanEstimate> {
    check_order(deriv)?;
    check_radius(spec, r)?;
    let f = Inner::new(spec)?;
    circle_mean(&f, deriv, r, MIN_NODES, |m| m.ln().max(0.0))
}

/// Radius `1 - 2^-j`.
pub fn grid_radius(j: u32) -> f64 {
    1.0 - 2f64.powi(-(j as i32))
}

struct Profile {
    /// `(r, power mean)` from `r = 0` outward.
    points: Vec<(f64, f64)>,
    nodes: usize,
    ceiling: Option<String>,
}

fn power_profile(spec: &Spec, deriv: usize, p: f64) -> Result<Profile> {
    let f = Inner::new(spec)?;
    let mut points = Vec::new();
    let mut nodes = 0;
    let mut ceiling = None;
    for j in 0..=MAX_RADIUS_INDEX {
        let r = grid_radius(j);
        let bound = spec.truncation_bound(r);
        if !(bound < NORM_TRUNCATION_TOL) {
            ceiling = Some(format!("truncation bound {bound:e} at r = {r}"));
            break;
        }
        let m = power_mean(&f, deriv, p, r, MIN_NODES)?;
        if !m.converged {
            ceiling = Some(format!("quadrature did not converge at r = {r}"));
            break;
        }
        nodes = nodes.max(m.nodes);
        points.push((r, m.value));
    }
    Ok(Profile { points, nodes, ceiling })
}

fn downgrade(c: Growth, max_radius: f64, rule: &GrowthRule) -> Growth {
    if c == Growth::Bounded && max_radius < rule.min_radius {
        Growth::Inconclusive
    } else {
        c
    }
}

/// Classifies `theta^(deriv)` in `H^p` from means on `r_j = 1 - 2^-j`.
pub fn hardy_classification(spec: &Spec, deriv: usize, p: f64) -> Result<NormEstimate> {
    check_order(deriv)?;
    check_p(p)?;
    let rule = GrowthRule::default();
    let prof = power_profile(spec, deriv, p)?;
    let powered: Vec<f64> = prof.points.iter().map(|&(_, m)| m).collect();
    let max_radius = prof.points.last().map_or(0.0, |&(r, _)| r);
    let classification = downgrade(rule.classify(&powered), max_radius, &rule);
    let r_profile: Vec<(f64, f64)> = prof
        .points
        .iter()
        .map(|&(r, m)| (r, m.powf(p.recip())))
        .collect();
    Ok(NormEstimate {
        value: r_profile.last().map_or(0.0, |&(_, m)| m),
        classification,
        r_profile,
        quadrature_points: prof.nodes,
        deriv_order: deriv,
        max_radius,
        ceiling: prof.ceiling,
    })
}

/// `int_a^b (1-r)^alpha r dr` as a function of `s = 1 - r`, integrated
/// against `1` and against `s`.
fn annulus_moments(alpha: f64, s_hi: f64, s_lo: f64) -> (f64, f64) {
    let f = |s: f64| s.powf(alpha + 1.0) / (alpha + 1.0) - s.powf(alpha + 2.0) / (alpha + 2.0);
    let g = |s: f64| s.powf(alpha + 2.0) / (alpha + 2.0) - s.powf(alpha + 3.0) / (alpha + 3.0);
    (f(s_hi) - f(s_lo), g(s_hi) - g(s_lo))
}

/// Weighted Bergman integral `int_D |theta^(deriv)|^p (1-|z|)^alpha dA`.
/// Means are interpolated linearly between grid radii and integrated against
/// the exact weight on each annulus.
pub fn bergman_norm(spec: &Spec, deriv: usize, p: f64, alpha: f64) -> Result<NormEstimate> {
    check_order(deriv)?;
    check_p(p)?;
    check_alpha(alpha)?;
    let rule = GrowthRule::default();
    let prof = power_profile(spec, deriv, p)?;
    let mut cumulative = Vec::with_capacity(prof.points.len());
    let mut total = 0.0;
    if let Some(&(r0, _)) = prof.points.first() {
        cumulative.push((r0, 0.0));
    }
    for w in prof.points.windows(2) {
        let ((ra, ma), (rb, mb)) = (w[0], w[1]);
        let (sa, sb) = (1.0 - ra, 1.0 - rb);
        let (m0, m1) = annulus_moments(alpha, sa, sb);
        // mean linear in s: ma at sa, mb at sb
        let slope = (mb - ma) / (sb - sa);
        let c = TAU * ((ma - slope * sa) * m0 + slope * m1);
        total += c.max(0.0);
        cumulative.push((rb, total));
    }
    let seq: Vec<f64> = cumulative.iter().skip(1).map(|&(_, v)| v).collect();
    let max_radius = cumulative.last().map_or(0.0, |&(r, _)| r);
    let classification = downgrade(rule.classify(&seq), max_radius, &rule);
    Ok(NormEstimate {
        value: total,
        classification,
        r_profile: cumulative,
        quadrature_points: prof.nodes,
        deriv_order: deriv,
        max_radius,
        ceiling: prof.ceiling,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub p: f64,
    /// `theta'` in `H^p`.
    pub hardy_first: NormEstimate,
    /// `theta'` in `A^{2p}_{p-1}`.
    pub bergman_first: NormEstimate,
    /// `theta''` in `A^p_{p-1}`.
    pub bergman_second: NormEstimate,
    /// `theta'` in `A^{p+alpha+1}_alpha`, per alpha.
    pub alpha_family: Vec<(f64, NormEstimate)>,
}

impl EquivalenceReport {
    /// The three main classifications coincide.
    pub fn triple_agrees(&self) -> bool {
        let c = self.hardy_first.classification;
        self.bergman_first.classification == c && self.bergman_second.classification == c
    }

    /// All classifications, including the alpha family, coincide.
    pub fn all_agree(&self) -> bool {
        let c = self.hardy_first.classification;
        self.triple_agrees() && self.alpha_family.iter().all(|(_, e)| e.classification == c)
    }
}

/// Runs the membership triple and the alpha family side by side. Disagreement
/// is reported as data.
pub fn equivalence_report(spec: &Spec, p: f64, alphas: &[f64]) -> Result<EquivalenceReport> {
    check_p(p)?;
    let alpha_family = alphas
        .iter()
        .map(|&a| Ok((a, bergman_norm(spec, 1, p + a + 1.0, a)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivalenceReport {
        p,
        hardy_first: hardy_classification(spec, 1, p)?,
        bergman_first: bergman_norm(spec, 1, 2.0 * p, p - 1.0)?,
        bergman_second: bergman_norm(spec, 2, p, p - 1.0)?,
        alpha_family,
    })
}

/// Gauss-Legendre orders compared by [`lemma1_check`].
pub const LEMMA_ORDERS: (usize, usize) = (32, 64);
/// Relative change under quadrature doubling accepted as stable.
pub const LEMMA_STABILITY: f64 = 0.1;

/// Ratios `int_0^1 |theta'(r e^{it})|^{p+alpha+1} (1-r)^alpha dr / |theta'(e^{it})|^p`.
/// The radial integral is taken in `u = (1-r)^{alpha+1}` and stops at the
/// truncation ceiling for infinite specs.
pub fn lemma1_check(
    spec: &Spec,
    p: f64,
    alpha: f64,
    thetas: &[f64],
    exclusion: f64,
) -> Result<CriterionResult> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter { name: "p", value: p, reason: "p must lie in (0, 1)" });
    }
    check_alpha(alpha)?;
    let f = Inner::new(spec)?;
    let mut rmax = 1.0;
    if !spec.is_finite() {
        rmax = (1..=52)
            .map(grid_radius)
            .take_while(|&r| spec.truncation_bound(r) < NORM_TRUNCATION_TOL)
            .last()
            .unwrap_or(0.0);
    }
    let a1 = alpha + 1.0;
    let umin = (1.0 - rmax).powf(a1);
    let q = p + a1;
    let radial = |t: f64, n: usize| -> Result<f64> {
        let v = integrate(
            |u| {
                let r = 1.0 - u.powf(a1.recip());
                Ok(f.eval(C64::from_polar(r, t))?.df.norm().powf(q))
            },
            umin,
            1.0,
            n,
        )?;
        Ok(v / a1)
    };
    let mut coarse = Vec::with_capacity(thetas.len());
    let mut fine = Vec::with_capacity(thetas.len());
    for &t in thetas {
        let rhs = f
            .boundary_derivative_modulus(C64::from_polar(1.0, t), exclusion)?
            .powf(p);
        coarse.push(radial(t, LEMMA_ORDERS.0)? / rhs);
        fine.push(radial(t, LEMMA_ORDERS.1)? / rhs);
    }
    let change = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| ((b - a) / b).abs())
        .fold(0.0, f64::max);
    let statistic = fine.iter().copied().fold(0.0, f64::max);
    let verdict = if statistic.is_finite() && change < LEMMA_STABILITY {
        Verdict::Satisfied
    } else {
        Verdict::Inconclusive
    };
    let coarse_max = coarse.iter().copied().fold(0.0, f64::max);
    Ok(CriterionResult::new("lemma1_check", fine, statistic, verdict)
        .note("p", p)
        .note("alpha", alpha)
        .note("angles", thetas.len())
        .note("max_coarse", coarse_max)
        .note("relative_change", change)
        .note("radial_ceiling", rmax))
}
