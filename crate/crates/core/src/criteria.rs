//! Numerical checkers for the structural conditions on zero sequences, atom
//! sequences and boundary behaviour.
//!
//! A finite truncation cannot decide a limit, so every checker reduces its
//! sequence to a windowed statistic and maps it to a [`Verdict`] through the
//! thresholds in [`Thresholds`].

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::point_distance;
use crate::inner::{AtomFamily, ZeroFamily, ZeroKind};
use crate::{Inner, Point, Spec, C64};

pub use crate::inner::{spectrum, SpectrumEstimate, SpectrumKind, SpectrumPoint};

/// Fewest zeros the ratio checkers accept.
pub const MIN_ZEROS: usize = 4;
/// Fewest atoms the gap checker accepts.
pub const MIN_ATOMS: usize = 4;
/// Tolerance for `|xi| = 1`.
pub const CIRCLE_TOL: f64 = 1e-12;
/// Schwarz-Pick points with `1 - |theta(z)|` below this are skipped.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub name: String,
    pub values: Vec<f64>,
    pub statistic: f64,
    pub verdict: Verdict,
    pub metadata: BTreeMap<String, String>,
}

impl CriterionResult {
    pub(crate) fn new(name: &str, values: Vec<f64>, statistic: f64, verdict: Verdict) -> Self {
        Self {
            name: name.to_string(),
            values,
            statistic,
            verdict,
            metadata: BTreeMap::new(),
        }
    }

    pub(crate) fn note(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }
}

/// Decision thresholds shared by the checkers.
#[derive(Debug, Clone, PartialEq)]
pub struct Thresholds {
    /// Liminf-type statistics above this are satisfied.
    pub liminf_satisfied: f64,
    /// Liminf-type statistics at or below this are violated.
    pub liminf_violated: f64,
    /// Thinness: window minimum above this is satisfied.
    pub thin_satisfied: f64,
    /// Thinness: window minimum below this is violated.
    pub thin_violated: f64,
    /// Refinement growth factor below which a maximum counts as stable.
    pub stability_factor: f64,
    /// Frostman tail bound must be below this fraction of the partial sum.
    pub frostman_tail_fraction: f64,
    /// Frostman terms whose tail maximum stays above this fraction of the head maximum do not decay.
    pub frostman_decay_fraction: f64,
    /// Gap values: log-log slope at or above this is violated.
    pub gap_slope_violated: f64,
    /// Gap values: bounded when the window maximum is within this multiple of its median.
    pub gap_median_factor: f64,
    /// Largest truncation bound accepted for Schwarz-Pick points.
    pub schwarz_pick_truncation: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            liminf_satisfied: 0.05,
            liminf_violated: 0.001,
            thin_satisfied: 0.9,
            thin_violated: 0.5,
            stability_factor: 2.0,
            frostman_tail_fraction: 0.01,
            frostman_decay_fraction: 0.5,
            gap_slope_violated: 0.5,
            gap_median_factor: 10.0,
            schwarz_pick_truncation: 1e-3,
        }
    }
}

/// Indices `[len/2, 3 len/4]`, clamped to the sequence.
pub fn tail_window(len: usize) -> RangeInclusive<usize> {
    let lo = (len / 2).min(len.saturating_sub(1));
    let hi = (3 * len / 4).clamp(lo, len.saturating_sub(1));
    lo..=hi
}

fn window_min(values: &[f64]) -> f64 {
    values[tail_window(values.len())]
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

fn window_max(values: &[f64]) -> f64 {
    values[tail_window(values.len())]
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

fn finite_max(values: &[f64]) -> f64 {
    values
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max)
}

fn growth(base: f64, refined: f64) -> f64 {
    if base == refined {
        1.0
    } else if base > 0.0 && refined > 0.0 {
        (refined / base).max(base / refined)
    } else {
        f64::INFINITY
    }
}

fn check_circle(xi: C64) -> Result<()> {
    if (xi.norm() - 1.0).abs() > CIRCLE_TOL || !xi.re.is_finite() {
        return Err(Error::NotOnCircle { re: xi.re, im: xi.im });
    }
    Ok(())
}

fn window_note(len: usize) -> String {
    let w = tail_window(len);
    format!("{}..={}", w.start(), w.end())
}

impl Thresholds {
    fn liminf_verdict(&self, statistic: f64) -> Verdict {
        if statistic > self.liminf_satisfied {
            Verdict::Satisfied
        } else if statistic <= self.liminf_violated {
            Verdict::Violated
        } else {
            Verdict::Inconclusive
        }
    }

    fn stable(&self, factor: f64) -> Verdict {
        if factor < self.stability_factor {
            Verdict::Satisfied
        } else {
            Verdict::Inconclusive
        }
    }

    /// Ratios `sum_{|z_j| > |z_n|} (1 - |z_j|) / (1 - |z_n|)`, with `tail_mass`
    /// standing in for the zeros beyond the truncation.
    pub fn thm1_ratio(&self, zeros: &[Point], tail_mass: f64) -> Result<CriterionResult> {
        if zeros.len() < MIN_ZEROS {
            return Err(Error::TooFewZeros { needed: MIN_ZEROS, got: zeros.len() });
        }
        let mut defects: Vec<f64> = zeros.iter().map(|p| p.defect).collect();
        defects.sort_by(|a, b| b.partial_cmp(a).expect("finite defects"));
        let n = defects.len();
        // suffix[i] = tail_mass + sum of defects[i..], accumulated smallest first
        let mut suffix = vec![0.0; n + 1];
        suffix[n] = tail_mass;
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] + defects[i];
        }
        let mut values = vec![0.0; n];
        let mut j = n;
        for i in (0..n).rev() {
            // first index past i whose defect is strictly smaller
            if i + 1 < n && defects[i + 1] < defects[i] {
                j = i + 1;
            } else if i + 1 == n {
                j = n;
            }
            values[i] = suffix[j] / defects[i];
        }
        let statistic = window_min(&values);
        Ok(
            CriterionResult::new("thm1_ratio", values, statistic, self.liminf_verdict(statistic))
                .note("window", window_note(n))
                .note("count", n)
                .note("tail_mass", tail_mass),
        )
    }

    pub fn thm1_ratio_family(&self, family: &ZeroFamily) -> Result<CriterionResult> {
        self.thm1_ratio(&family.generate()?, family.tail_bound())
    }

    /// Consecutive defect ratios `(1 - |z_{n+1}|) / (1 - |z_n|)`.
    pub fn strict_ratio(&self, zeros: &[Point]) -> Result<CriterionResult> {
        if zeros.len() < MIN_ZEROS {
            return Err(Error::TooFewZeros { needed: MIN_ZEROS, got: zeros.len() });
        }
        if let Some(index) = zeros.windows(2).position(|w| !(w[1].defect < w[0].defect)) {
            return Err(Error::NonStrictModuli { index: index + 1 });
        }
        let values: Vec<f64> = zeros.windows(2).map(|w| w[1].defect / w[0].defect).collect();
        let statistic = window_min(&values);
        Ok(
            CriterionResult::new("strict_ratio", values.clone(), statistic, self.liminf_verdict(statistic))
                .note("window", window_note(values.len())),
        )
    }

    /// Partial sums of `(1 - |z_n|) / |xi - z_n|`.
    pub fn frostman_sum(
        &self,
        zeros: &[Point],
        xi: C64,
        tail_bound: Option<f64>,
    ) -> Result<CriterionResult> {
        check_circle(xi)?;
        let terms: Vec<f64> = zeros.iter().map(|p| p.defect / p.distance_to(xi)).collect();
        let mut acc = 0.0;
        let values: Vec<f64> = terms
            .iter()
            .map(|t| {
                acc += t;
                acc
            })
            .collect();
        let partial = values.last().copied().unwrap_or(0.0);
        let n = terms.len();
        let non_decaying = if n >= 4 {
            let q = n / 4;
            let head = finite_max(&terms[..q]);
            let tail = terms[n - q..].iter().copied().fold(0.0, f64::max);
            tail > 0.0 && tail >= self.frostman_decay_fraction * head
        } else {
            false
        };
        let verdict = match tail_bound {
            Some(b) if b.is_finite() && b <= self.frostman_tail_fraction * partial => {
                Verdict::Satisfied
            }
            _ if non_decaying || partial.is_infinite() => Verdict::Violated,
            _ => Verdict::Inconclusive,
        };
        let bound_text = tail_bound.map_or("none".to_string(), |b| b.to_string());
        let estimate = tail_bound.map_or(partial, |b| partial + b);
        Ok(CriterionResult::new("frostman_sum", values, partial, verdict)
            .note("terms", n)
            .note("tail_bound", bound_text)
            .note("estimate_with_tail", estimate))
    }

    pub fn frostman_family(&self, family: &ZeroFamily, xi: C64) -> Result<CriterionResult> {
        self.frostman_sum(&family.generate()?, xi, frostman_tail_bound(family, xi)?)
    }

    /// Products of pseudohyperbolic distances to the other zeros.
    pub fn thin_test(&self, spec: &Spec) -> Result<CriterionResult> {
        if spec.blaschke_parts().len() != 1 || !spec.singular_parts().is_empty() {
            return Err(Error::UnsupportedSpec(
                "thinness needs exactly one zero family and no atoms".into(),
            ));
        }
        let zeros = spec.blaschke_parts()[0].generate()?;
        let values = separation_products(&zeros);
        let statistic = window_min(&values);
        let verdict = if statistic > self.thin_satisfied {
            Verdict::Satisfied
        } else if statistic < self.thin_violated {
            Verdict::Violated
        } else {
            Verdict::Inconclusive
        };
        Ok(CriterionResult::new("thin_test", values, statistic, verdict)
            .note("window", window_note(zeros.len())))
    }

    /// Ratios `|theta''| / |theta'|^2` at `samples` uniform boundary points off
    /// the spectrum, compared against doubled sampling and doubled truncation.
    pub fn aleksandrov_ratio(
        &self,
        spec: &Spec,
        samples: usize,
        exclusion: f64,
    ) -> Result<CriterionResult> {
        if samples < 256 {
            return Err(Error::Parameter {
                name: "samples",
                value: samples as f64,
                reason: "at least 256 boundary samples are needed",
            });
        }
        let f = Inner::new(spec)?;
        let values = aleksandrov_values(&f, &uniform_angles(samples), exclusion)?;
        let statistic = finite_max(&values);
        let dense = finite_max(&aleksandrov_values(&f, &uniform_angles(2 * samples), exclusion)?);
        let mut factor = growth(statistic, dense);
        let mut result = CriterionResult::new("aleksandrov_ratio", Vec::new(), statistic, Verdict::Inconclusive)
            .note("samples", samples)
            .note("exclusion", exclusion)
            .note("used_samples", values.len())
            .note("max_double_samples", dense);
        let mut refined = true;
        if !spec.is_finite() {
            match spec.with_counts_scaled(2).and_then(|s| Inner::new(&s)) {
                Ok(g) => {
                    let m = finite_max(&aleksandrov_values(&g, &uniform_angles(samples), exclusion)?);
                    factor = factor.max(growth(statistic, m));
                    result = result.note("max_double_count", m);
                }
                Err(e) => {
                    refined = false;
                    result = result.note("max_double_count", format!("unavailable: {e}"));
                }
            }
        }
        result = result
            .note("growth", factor)
            .note("approach_probe_max", approach_probe(&f));
        result.verdict = if refined { self.stable(factor) } else { Verdict::Inconclusive };
        result.values = values;
        Ok(result)
    }

    /// Ratios `sum w/|z - zeta|^3 / (sum w/|z - zeta|^2)^2` with
    /// `w = 1 - |z|^2`, compared against the family at doubled count.
    pub fn sum_condition(
        &self,
        family: &ZeroFamily,
        zetas: &[C64],
        exclusion: f64,
    ) -> Result<CriterionResult> {
        let est = Spec::blaschke(family.clone()).spectrum();
        for &z in zetas {
            check_circle(z)?;
            est.check_clear(z, exclusion)?;
        }
        let values = sum_condition_values(&family.generate()?, zetas);
        let refined = match &family.kind() {
            ZeroKind::Explicit(_) => Ok(values.clone()),
            _ => family
                .with_count(2 * family.count())
                .and_then(|g| g.generate())
                .map(|z| sum_condition_values(&z, zetas)),
        };
        Ok(self.doubling_result("sum_condition", values, refined, zetas.len(), exclusion))
    }

    /// Atom analogue of [`Thresholds::sum_condition`] with masses as weights.
    pub fn thm5_condition(
        &self,
        atoms: &AtomFamily,
        zetas: &[C64],
        exclusion: f64,
    ) -> Result<CriterionResult> {
        let est = Spec::singular(atoms.clone()).spectrum();
        for &z in zetas {
            check_circle(z)?;
            est.check_clear(z, exclusion)?;
        }
        let values = thm5_values(atoms, zetas);
        let refined = if atoms.is_explicit() {
            Ok(values.clone())
        } else {
            atoms
                .with_count(2 * atoms.count())
                .map(|a| thm5_values(&a, zetas))
        };
        Ok(self.doubling_result("thm5_condition", values, refined, zetas.len(), exclusion))
    }

    fn doubling_result(
        &self,
        name: &str,
        values: Vec<f64>,
        refined: Result<Vec<f64>>,
        points: usize,
        exclusion: f64,
    ) -> CriterionResult {
        let statistic = finite_max(&values);
        let result = CriterionResult::new(name, values, statistic, Verdict::Inconclusive)
            .note("points", points)
            .note("exclusion", exclusion);
        match refined {
            Ok(r) => {
                let m = finite_max(&r);
                let factor = growth(statistic, m);
                let mut out = result.note("max_double_count", m).note("growth", factor);
                out.verdict = self.stable(factor);
                out
            }
            Err(e) => result.note("max_double_count", format!("unavailable: {e}")),
        }
    }

    /// Gap ratios `|theta_{n-1} - theta_{n+1}| / gamma_n^2` along the atoms
    /// that decrease to the accumulation angle.
    pub fn thm1b_gap(&self, atoms: &AtomFamily) -> Result<CriterionResult> {
        let rot = atoms.rotation();
        let seq: Vec<(f64, f64)> = atoms
            .generate()
            .into_iter()
            .map(|a| (a.theta - rot, a.gamma))
            .filter(|&(t, _)| t != 0.0)
            .collect();
        if seq.len() < MIN_ATOMS {
            return Err(Error::AtomOrdering(format!(
                "need at least {MIN_ATOMS} atoms off the accumulation angle, got {}",
                seq.len()
            )));
        }
        if let Some(i) = seq
            .windows(2)
            .position(|w| !(w[0].0 > w[1].0 && w[1].0 > 0.0))
        {
            return Err(Error::AtomOrdering(format!(
                "angles must decrease strictly to the accumulation angle (position {})",
                i + 1
            )));
        }
        let values: Vec<f64> = seq
            .windows(3)
            .map(|w| (w[0].0 - w[2].0).abs() / (w[1].1 * w[1].1))
            .collect();
        let window = tail_window(values.len());
        let statistic = window_max(&values);
        // least-squares slope of ln(value) against ln(position)
        let pts: Vec<(f64, f64)> = window
            .clone()
            .map(|i| (((i + 2) as f64).ln(), values[i].ln()))
            .collect();
        let slope = ls_slope(&pts);
        let mut sorted: Vec<f64> = values[window.clone()].to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite gap values"));
        let median = sorted[sorted.len() / 2];
        let verdict = if slope >= self.gap_slope_violated {
            Verdict::Violated
        } else if slope <= 0.0 || statistic <= self.gap_median_factor * median {
            Verdict::Satisfied
        } else {
            Verdict::Inconclusive
        };
        Ok(CriterionResult::new("thm1b_gap", values, statistic, verdict)
            .note("window", format!("{}..={}", window.start(), window.end()))
            .note("loglog_slope", slope)
            .note("window_median", median))
    }

    /// Empirical constants `|theta^(n)(z)| (1-|z|)^n / (1-|theta(z)|)^n`.
    pub fn schwarz_pick_ratio(
        &self,
        spec: &Spec,
        order: usize,
        points: &[C64],
    ) -> Result<CriterionResult> {
        if !(1..=2).contains(&order) {
            return Err(Error::Parameter {
                name: "order",
                value: order as f64,
                reason: "derivative order must be 1 or 2",
            });
        }
        let rmax = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if rmax >= 1.0 {
            let z = points.iter().find(|z| z.norm() >= 1.0).expect("point at max modulus");
            return Err(Error::OutsideDisc { re: z.re, im: z.im });
        }
        let bound = spec.truncation_bound(rmax);
        if !(bound <= self.schwarz_pick_truncation) {
            return Err(Error::InsufficientTruncation { radius: rmax, bound });
        }
        let f = Inner::new(spec)?;
        let (values, skipped) = schwarz_pick_values(&f, order, points)?;
        let statistic = finite_max(&values);
        let half = finite_max(&schwarz_pick_values(&f, order, &points[..points.len() / 2])?.0);
        let mut factor = growth(half.max(f64::MIN_POSITIVE), statistic);
        let mut result = CriterionResult::new("schwarz_pick_ratio", Vec::new(), statistic, Verdict::Inconclusive)
            .note("order", order)
            .note("points", points.len())
            .note("skipped", skipped)
            .note("max_half_points", half)
            .note("truncation_bound", bound);
        let mut refined = true;
        if !spec.is_finite() {
            match spec.with_counts_scaled(2).and_then(|s| Inner::new(&s)) {
                Ok(g) => {
                    let m = finite_max(&schwarz_pick_values(&g, order, points)?.0);
                    factor = factor.max(growth(statistic, m));
                    result = result.note("max_double_count", m);
                }
                Err(e) => {
                    refined = false;
                    result = result.note("max_double_count", format!("unavailable: {e}"));
                }
            }
        }
        result = result.note("growth", factor);
        result.verdict = if refined { self.stable(factor) } else { Verdict::Inconclusive };
        result.values = values;
        Ok(result)
    }
}

fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Angles `2 pi k / samples`.
pub fn uniform_angles(samples: usize) -> Vec<f64> {
    (0..samples).map(|k| TAU * k as f64 / samples as f64).collect()
}

/// `|theta''| / |theta'|^2` at the given boundary angles, skipping points
/// within `exclusion` of the spectrum.
pub fn aleksandrov_values(f: &Inner, angles: &[f64], exclusion: f64) -> Result<Vec<f64>> {
    let kept: Vec<C64> = angles
        .iter()
        .map(|&t| C64::from_polar(1.0, t))
        .filter(|&z| f.spectrum().is_clear(z, exclusion))
        .collect();
    if kept.is_empty() {
        return Err(Error::AllPointsExcluded);
    }
    let jets: Vec<_> = kept.par_iter().map(|&z| f.eval(z)).collect::<Result<_>>()?;
    Ok(jets
        .iter()
        .map(|j| j.d2f.norm() / j.df.norm_sqr())
        .filter(|v| v.is_finite())
        .collect())
}

/// Largest boundary ratio over `samples` uniform angles off the spectrum.
pub fn aleksandrov_max(spec: &Spec, samples: usize, exclusion: f64) -> Result<f64> {
    let f = Inner::new(spec)?;
    Ok(finite_max(&aleksandrov_values(&f, &uniform_angles(samples), exclusion)?))
}

/// Largest boundary ratio along angles `2^-k` away from each spectrum point.
fn approach_probe(f: &Inner) -> f64 {
    let mut best: f64 = 0.0;
    for p in &f.spectrum().points {
        let base = p.point.arg();
        for k in 10..=40 {
            for side in [-1.0, 1.0] {
                let z = C64::from_polar(1.0, base + side * 2f64.powi(-k));
                if let Ok(j) = f.eval(z) {
                    let v = j.d2f.norm() / j.df.norm_sqr();
                    if v.is_finite() {
                        best = best.max(v);
                    }
                }
            }
        }
    }
    best
}

/// Per-zero products of pseudohyperbolic distances to all other zeros.
pub fn separation_products(zeros: &[Point]) -> Vec<f64> {
    (0..zeros.len())
        .into_par_iter()
        .map(|n| {
            zeros
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != n)
                .map(|(_, p)| point_distance(p, &zeros[n]))
                .product()
        })
        .collect()
}

/// Infimum of the separation products; 1 for fewer than two zeros.
pub fn uniform_separation(zeros: &[Point]) -> f64 {
    separation_products(zeros).into_iter().fold(1.0, f64::min)
}

/// Bound on the Frostman tail beyond the generated zeros, when one is known.
pub fn frostman_tail_bound(family: &ZeroFamily, xi: C64) -> Result<Option<f64>> {
    check_circle(xi)?;
    let Some(w) = family.accumulation_point() else {
        return Ok(Some(0.0));
    };
    let n = family.last_index() as f64;
    if (xi - w).norm() < CIRCLE_TOL {
        return Ok(match family.kind() {
            ZeroKind::Tangential { alpha, gamma } => {
                let s = alpha - alpha / gamma;
                (s > 1.0).then(|| n.powf(1.0 - s) / (s - 1.0))
            }
            _ => None,
        });
    }
    let zeros = family.generate()?;
    let chord = zeros.last().map_or(0.0, |p| p.distance_to(w));
    let gap = (xi - w).norm() - chord;
    Ok((gap > 0.0).then(|| family.tail_bound() / gap))
}

/// Sum-condition ratios for explicit zeros.
pub fn sum_condition_values(zeros: &[Point], zetas: &[C64]) -> Vec<f64> {
    let weighted: Vec<(f64, Point)> = zeros.iter().map(|p| (p.one_minus_mod_sq(), *p)).collect();
    zetas
        .par_iter()
        .map(|&zeta| {
            let (mut s3, mut s2) = (0.0, 0.0);
            for (w, p) in weighted.iter().rev() {
                let d = p.distance_to(zeta);
                s3 += w / (d * d * d);
                s2 += w / (d * d);
            }
            s3 / (s2 * s2)
        })
        .collect()
}

fn thm5_values(atoms: &AtomFamily, zetas: &[C64]) -> Vec<f64> {
    let pts: Vec<(f64, C64)> = atoms
        .generate()
        .into_iter()
        .map(|a| (a.gamma, C64::from_polar(1.0, a.theta)))
        .collect();
    zetas
        .par_iter()
        .map(|&zeta| {
            let (mut s3, mut s2) = (0.0, 0.0);
            for (g, e) in pts.iter().rev() {
                let d = (zeta - e).norm();
                s3 += g / (d * d * d);
                s2 += g / (d * d);
            }
            s3 / (s2 * s2)
        })
        .collect()
}

fn schwarz_pick_values(f: &Inner, order: usize, points: &[C64]) -> Result<(Vec<f64>, usize)> {
    let jets: Vec<_> = points.par_iter().map(|&z| f.eval(z)).collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(points.len());
    let mut skipped = 0;
    for (z, j) in points.iter().zip(&jets) {
        let den = 1.0 - j.f.norm();
        if den < DEGENERATE_DENOMINATOR {
            skipped += 1;
            continue;
        }
        let d = j.derivative(order).expect("order checked").norm();
        values.push(d * ((1.0 - z.norm()) / den).powi(order as i32));
    }
    Ok((values, skipped))
}

pub fn thm1_ratio(zeros: &[Point], tail_mass: f64) -> Result<CriterionResult> {
    Thresholds::default().thm1_ratio(zeros, tail_mass)
}

pub fn thm1_ratio_family(family: &ZeroFamily) -> Result<CriterionResult> {
    Thresholds::default().thm1_ratio_family(family)
}

pub fn strict_ratio(zeros: &[Point]) -> Result<CriterionResult> {
    Thresholds::default().strict_ratio(zeros)
}

pub fn frostman_sum(zeros: &[Point], xi: C64, tail_bound: Option<f64>) -> Result<CriterionResult> {
    Thresholds::default().frostman_sum(zeros, xi, tail_bound)
}

pub fn frostman_family(family: &ZeroFamily, xi: C64) -> Result<CriterionResult> {
    Thresholds::default().frostman_family(family, xi)
}

pub fn thin_test(spec: &Spec) -> Result<CriterionResult> {
    Thresholds::default().thin_test(spec)
}

pub fn aleksandrov_ratio(spec: &Spec, samples: usize, exclusion: f64) -> Result<CriterionResult> {
    Thresholds::default().aleksandrov_ratio(spec, samples, exclusion)
}

pub fn sum_condition(family: &ZeroFamily, zetas: &[C64], exclusion: f64) -> Result<CriterionResult> {
    Thresholds::default().sum_condition(family, zetas, exclusion)
}

pub fn thm5_condition(atoms: &AtomFamily, zetas: &[C64], exclusion: f64) -> Result<CriterionResult> {
    Thresholds::default().thm5_condition(atoms, zetas, exclusion)
}

pub fn thm1b_gap(atoms: &AtomFamily) -> Result<CriterionResult> {
    Thresholds::default().thm1b_gap(atoms)
}

pub fn schwarz_pick_ratio(spec: &Spec, order: usize, points: &[C64]) -> Result<CriterionResult> {
    Thresholds::default().schwarz_pick_ratio(spec, order, points)
}
