//! Gauss-Legendre and composite Simpson rules on a mapped interval.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MAX_GL_NODES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadratureKind {
    GaussLegendre { nodes: usize },
    CompositeSimpson { panels: usize },
}

/// A quadrature rule with its nodes and weights already mapped onto `(lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    lo: f64,
    hi: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(kind: QuadratureKind, lo: f64, hi: f64) -> Result<Self> {
        if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Parameter(format!("invalid interval ({lo}, {hi})")));
        }
        let (ref_nodes, ref_weights) = match kind {
            QuadratureKind::GaussLegendre { nodes } => {
                if nodes == 0 || nodes > MAX_GL_NODES {
                    return Err(Error::Parameter(format!(
                        "Gauss-Legendre node count must be in 1..={MAX_GL_NODES}, got {nodes}"
                    )));
                }
                gauss_legendre(nodes)
            }
            QuadratureKind::CompositeSimpson { panels } => {
                if panels == 0 {
                    return Err(Error::Parameter("Simpson rule needs at least one panel".into()));
                }
                simpson(panels)
            }
        };
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let rule = QuadratureRule {
            kind,
            lo,
            hi,
            nodes: ref_nodes.iter().map(|t| mid + half * t).collect(),
            weights: ref_weights.iter().map(|w| half * w).collect(),
        };
        rule.self_check()?;
        Ok(rule)
    }

    pub fn gauss_legendre(nodes: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(QuadratureKind::GaussLegendre { nodes }, lo, hi)
    }

    pub fn simpson(panels: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(QuadratureKind::CompositeSimpson { panels }, lo, hi)
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Same kind of rule with twice the resolution.
    pub fn refined(&self) -> Result<Self> {
        let kind = match self.kind {
            QuadratureKind::GaussLegendre { nodes } => QuadratureKind::GaussLegendre {
                nodes: (2 * nodes).min(MAX_GL_NODES),
            },
            QuadratureKind::CompositeSimpson { panels } => {
                QuadratureKind::CompositeSimpson { panels: 2 * panels }
            }
        };
        Self::new(kind, self.lo, self.hi)
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Polynomial exactness on three monomials (degrees 0, d/2 and d, with
    /// d the rule's guaranteed degree).
    fn self_check(&self) -> Result<()> {
        let degree = match self.kind {
            QuadratureKind::GaussLegendre { nodes } => (2 * nodes - 1).min(40),
            QuadratureKind::CompositeSimpson { .. } => 3,
        };
        // shift to the interval midpoint so the monomial stays well scaled
        let mid = 0.5 * (self.lo + self.hi);
        let half = 0.5 * (self.hi - self.lo);
        for d in [0, degree / 2, degree] {
            let exact = if d % 2 == 1 {
                0.0
            } else {
                2.0 * half.powi(d as i32 + 1) / (d as f64 + 1.0)
            };
            let got = self.integrate(|x| (x - mid).powi(d as i32));
            let scale = 2.0 * half.powi(d as i32 + 1);
            if (got - exact).abs() > 1e-12 * scale {
                return Err(Error::Solver(format!(
                    "quadrature rule fails exactness on degree {d}: {got} vs {exact}"
                )));
            }
        }
        Ok(())
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess
        let mut x = ((i as f64 + 0.75) / (nf + 0.5) * PI).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

fn simpson(panels: usize) -> (Vec<f64>, Vec<f64>) {
    let m = 2 * panels;
    let h = 2.0 / m as f64;
    let nodes = (0..=m).map(|i| -1.0 + h * i as f64).collect();
    let weights = (0..=m)
        .map(|i| {
            let c = if i == 0 || i == m {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect();
    (nodes, weights)
}

/// Composite Gauss-Legendre: `panels` equal panels of `order` nodes each.
pub fn composite_gauss_legendre(order: usize, panels: usize, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    let (t, w) = gauss_legendre(order);
    let width = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(order * panels);
    let mut weights = Vec::with_capacity(order * panels);
    for p in 0..panels {
        let a = lo + width * p as f64;
        let mid = a + 0.5 * width;
        for (ti, wi) in t.iter().zip(&w) {
            nodes.push(mid + 0.5 * width * ti);
            weights.push(0.5 * width * wi);
        }
    }
    (nodes, weights)
}
