//! Periodic trapezoid means with node doubling, and Gauss-Legendre rules.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::Result;
use crate::sum::pairwise;

/// Largest trapezoid node count.
pub const MAX_NODES: usize = 1 << 20;
/// Relative agreement between successive doublings.
pub const AGREEMENT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub value: f64,
    pub nodes: usize,
    /// False when the node cap was reached before agreement.
    pub converged: bool,
}

/// Mean of `g(theta)` over `[0, 2 pi)` by the trapezoid rule, starting at
/// `start` nodes and doubling until two estimates agree.
pub fn periodic_mean<G>(g: G, start: usize) -> Result<MeanEstimate>
where
    G: Fn(f64) -> Result<f64> + Sync,
{
    let batch = |k: usize, offset: f64| -> Result<f64> {
        let vals = (0..k)
            .into_par_iter()
            .map(|m| g(TAU * (m as f64 + offset) / k as f64))
            .collect::<Result<Vec<f64>>>()?;
        Ok(pairwise(&vals))
    };
    let mut k = start.min(MAX_NODES);
    let mut total = batch(k, 0.0)?;
    let mut est = total / k as f64;
    while k < MAX_NODES {
        total += batch(k, 0.5)?;
        k *= 2;
        let next = total / k as f64;
        let agreed = next == est || (next - est).abs() <= AGREEMENT * next.abs();
        est = next;
        if agreed {
            return Ok(MeanEstimate { value: est, nodes: k, converged: true });
        }
    }
    Ok(MeanEstimate { value: est, nodes: k, converged: false })
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // three-term recurrence for P_n and its derivative
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
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
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integral of `g` over `[a, b]` with an `n`-point Gauss-Legendre rule.
pub fn integrate<G: Fn(f64) -> Result<f64>>(g: G, a: f64, b: f64, n: usize) -> Result<f64> {
    let (x, w) = gauss_legendre(n);
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let terms = x
        .iter()
        .zip(&w)
        .map(|(xi, wi)| Ok(wi * g(mid + half * xi)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(half * pairwise(&terms))
}
