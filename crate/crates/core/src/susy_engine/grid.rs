use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MIN_GRID_POINTS: usize = 64;

/// Which endpoints carry an infinite wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    HardWallBoth,
    HardWallLeft,
    /// Truncated domain; the function has decayed at both ends.
    Free,
}

impl Boundary {
    pub fn left_wall(self) -> bool {
        matches!(self, Boundary::HardWallBoth | Boundary::HardWallLeft)
    }

    pub fn right_wall(self) -> bool {
        matches!(self, Boundary::HardWallBoth)
    }
}

/// A real function sampled on `N` uniform points of `[x0, x1]`.
///
/// Endpoints that sit on a hard wall hold exactly 0. For potentials that
/// value is a placeholder: the wall itself lives in the boundary metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    x0: f64,
    x1: f64,
    values: Vec<f64>,
    boundary: Boundary,
}

impl GridFunction {
    pub fn new(x0: f64, x1: f64, values: Vec<f64>, boundary: Boundary) -> Result<Self> {
        if !(x1 > x0) || !x0.is_finite() || !x1.is_finite() {
            return Err(Error::Parameter(format!("invalid grid interval [{x0}, {x1}]")));
        }
        if values.len() < MIN_GRID_POINTS {
            return Err(Error::Parameter(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("grid value {i} is not finite")));
        }
        let last = values.len() - 1;
        if boundary.left_wall() && values[0] != 0.0 {
            return Err(Error::Parameter(format!(
                "left hard wall requires value 0, got {}",
                values[0]
            )));
        }
        if boundary.right_wall() && values[last] != 0.0 {
            return Err(Error::Parameter(format!(
                "right hard wall requires value 0, got {}",
                values[last]
            )));
        }
        Ok(GridFunction {
            x0,
            x1,
            values,
            boundary,
        })
    }

    /// Samples `f` at every grid point, replacing wall endpoints by 0.
    pub fn from_fn<F: Fn(f64) -> f64>(
        x0: f64,
        x1: f64,
        n: usize,
        boundary: Boundary,
        f: F,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("grid needs at least {MIN_GRID_POINTS} points")));
        }
        let h = (x1 - x0) / (n - 1) as f64;
        let values = (0..n)
            .map(|i| {
                let wall = (i == 0 && boundary.left_wall()) || (i == n - 1 && boundary.right_wall());
                if wall {
                    0.0
                } else {
                    f(x0 + h * i as f64)
                }
            })
            .collect();
        Self::new(x0, x1, values, boundary)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn dx(&self) -> f64 {
        (self.x1 - self.x0) / (self.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + self.dx() * i as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.x(i)).collect()
    }

    pub fn same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.len() != other.len() || self.x0 != other.x0 || self.x1 != other.x1 {
            return Err(Error::GridMismatch(format!(
                "[{}, {}] x {} vs [{}, {}] x {}",
                self.x0,
                self.x1,
                self.len(),
                other.x0,
                other.x1,
                other.len()
            )));
        }
        Ok(())
    }

    /// Same grid and boundary, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {}",
                values.len(),
                self.len()
            )));
        }
        Self::new(self.x0, self.x1, values, self.boundary)
    }

    /// `sum f_i^2 dx`
    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() * self.dx()
    }

    /// `sum f_i g_i dx`
    pub fn inner(&self, other: &GridFunction) -> Result<f64> {
        self.same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * self.dx())
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_squared().sqrt();
        if !(n > 0.0) {
            return Err(Error::Parameter("cannot normalize the zero function".into()));
        }
        self.with_values(self.values.iter().map(|v| v / n).collect())
    }

    /// First derivative with second-order stencils: centered inside,
    /// three-point one-sided at the ends.
    pub fn derivative2(&self) -> Vec<f64> {
        let y = &self.values;
        let n = y.len() - 1;
        let h = self.dx();
        let mut d = vec![0.0; n + 1];
        for i in 1..n {
            d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
        }
        d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
        d[n] = (3.0 * y[n] - 4.0 * y[n - 1] + y[n - 2]) / (2.0 * h);
        d
    }

    /// First derivative with fourth-order stencils: five-point centered
    /// inside, shifted five-point stencils at the two outermost points of
    /// each end.
    pub fn derivative4(&self) -> Vec<f64> {
        let y = &self.values;
        let n = y.len() - 1;
        let h12 = 12.0 * self.dx();
        let mut d = vec![0.0; n + 1];
        for i in 2..n - 1 {
            d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / h12;
        }
        d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / h12;
        d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / h12;
        d[n - 1] = (3.0 * y[n] + 10.0 * y[n - 1] - 18.0 * y[n - 2] + 6.0 * y[n - 3] - y[n - 4]) / h12;
        d[n] = (25.0 * y[n] - 48.0 * y[n - 1] + 36.0 * y[n - 2] - 16.0 * y[n - 3] + 3.0 * y[n - 4])
            / h12;
        d
    }

    /// Index of the grid point nearest `x`, clamped to the grid.
    pub fn index_of(&self, x: f64) -> usize {
        let i = ((x - self.x0) / self.dx()).round();
        (i.max(0.0) as usize).min(self.len() - 1)
    }
}
