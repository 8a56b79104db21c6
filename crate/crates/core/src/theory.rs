//! Mean-field closed forms for the directed growth process.
//!
//! A node born at time `t_i` has expected in-degree `k` and out-degree `y`
//! obeying, with `s = ln(t / t_i)`,
//!
//! ```text
//! dk/ds = p(m-1)/(m(1+p)) k + 1/(1+p) y
//! dy/ds = (m-1)/(m(1+p)) k + p/(1+p) y
//! k(0) = p, y(0) = 1
//! ```
//!
//! The eigenvalues of that 2x2 system are `lambda1 > 0 >= lambda2`; the degree
//! exponent is `1 + 1/lambda1`. Neither the locality parameter nor the region
//! distribution enters any of these quantities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryConstants {
    pub m: f64,
    pub p: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub g: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    /// Degree-density exponent `1 + 1/lambda1`.
    pub gamma: f64,
    /// CCDF exponent `gamma - 1`.
    pub eta: f64,
    pub leaf_fraction: f64,
    pub max_in_degree: Option<f64>,
    pub max_out_degree: Option<f64>,
}

fn check_domain(m: f64, p: f64) -> Result<()> {
    if !(m.is_finite() && m > 1.0) {
        return Err(Error::Domain(format!("m must be > 1, got {m}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    Ok(())
}

pub fn constants(m: f64, p: f64) -> Result<TheoryConstants> {
    check_domain(m, p)?;
    let a = (p * p + 4.0 * m * (m - 1.0)).sqrt();
    let b = 2.0 * (1.0 + p) * m - p * p;
    let c = b / a;
    let d = p / (4.0 * m * (1.0 + p));
    let g = d * c + 0.5 + d * a;
    let denom = 2.0 * m * (1.0 + p);
    let lambda1 = (p * (2.0 * m - 1.0) + a) / denom;
    let lambda2 = if p == 1.0 {
        // p(2m-1) = A exactly when p = 1; avoid a rounding residue.
        0.0
    } else {
        (p * (2.0 * m - 1.0) - a) / denom
    };
    Ok(TheoryConstants {
        m,
        p,
        a,
        b,
        c,
        d,
        g,
        lambda1,
        lambda2,
    })
}

impl TheoryConstants {
    pub fn gamma(&self) -> f64 {
        1.0 + 1.0 / self.lambda1
    }

    pub fn eta(&self) -> f64 {
        1.0 / self.lambda1
    }

    /// Coefficient matrix `[[a11, a12], [a21, a22]]` of the degree system in
    /// logarithmic time.
    pub fn system_matrix(&self) -> [[f64; 2]; 2] {
        let (m, p) = (self.m, self.p);
        [
            [p * (m - 1.0) / (m * (1.0 + p)), 1.0 / (1.0 + p)],
            [(m - 1.0) / (m * (1.0 + p)), p / (1.0 + p)],
        ]
    }

    /// Modal decomposition of the solution with initial state `(p, 1)`:
    /// `(k, y)(tau) = sum_j tau^lambda_j * coeff_j * v_j`, returned as the
    /// per-mode contributions `[(k1, y1), (k2, y2)]` at `tau = 1`.
    pub fn modes(&self) -> [(f64, f64); 2] {
        let [[a11, a12], _] = self.system_matrix();
        // (M - lambda I) v = 0 gives v = (a12, lambda - a11).
        let v1 = (a12, self.lambda1 - a11);
        let v2 = (a12, self.lambda2 - a11);
        let (k0, y0) = (self.p, 1.0);
        let det = v1.0 * v2.1 - v2.0 * v1.1;
        let c1 = (k0 * v2.1 - v2.0 * y0) / det;
        let c2 = (v1.0 * y0 - k0 * v1.1) / det;
        [(c1 * v1.0, c1 * v1.1), (c2 * v2.0, c2 * v2.1)]
    }

    /// Expected `(in_degree, out_degree)` of a node aged by `t / t_i = tau`.
    pub fn trajectory(&self, tau: f64) -> Result<(f64, f64)> {
        if tau.is_nan() || tau < 1.0 {
            return Err(Error::Domain(format!("t/t_i must be >= 1, got {tau}")));
        }
        let [(k1, y1), (k2, y2)] = self.modes();
        let g1 = tau.powf(self.lambda1);
        let g2 = tau.powf(self.lambda2);
        Ok((k1 * g1 + k2 * g2, y1 * g1 + y2 * g2))
    }

    pub fn predict(&self, nodes: Option<f64>) -> Result<Prediction> {
        let max = nodes.map(|t| self.trajectory(t)).transpose()?;
        Ok(Prediction {
            gamma: self.gamma(),
            eta: self.eta(),
            leaf_fraction: leaf_fraction(self.p),
            max_in_degree: max.map(|(k, _)| k),
            max_out_degree: max.map(|(_, y)| y),
        })
    }
}

/// Mean-field `(k, y)` for a node aged by `t_over_ti`.
pub fn degree_trajectory(m: f64, p: f64, t_over_ti: f64) -> Result<(f64, f64)> {
    constants(m, p)?.trajectory(t_over_ti)
}

/// Expected maximal in- and out-degree at time `t` (the node born at time 1).
pub fn expected_max_degrees(m: f64, p: f64, t: f64) -> Result<(f64, f64)> {
    degree_trajectory(m, p, t)
}

/// Expected fraction of leaves (in-degree 0, out-degree 1).
pub fn leaf_fraction(p: f64) -> f64 {
    (1.0 + p) * (1.0 - p) / (2.0 + p)
}

/// Expected `(I_j, O_j)` in- and out-degree sums of each region at time `t`.
pub fn region_degree_sums(m: f64, p: f64, t: f64, region_weights: &[f64]) -> Vec<(f64, f64)> {
    let total: f64 = region_weights.iter().sum();
    region_weights
        .iter()
        .map(|w| {
            let s = if total > 0.0 { w / total } else { 0.0 } * (1.0 + p) * m * t;
            (s, s)
        })
        .collect()
}
