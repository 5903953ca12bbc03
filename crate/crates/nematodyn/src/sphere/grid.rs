//! Quadrature grid on the unit sphere and plain grid-sampled fields.

use nalgebra::Vector3;

use super::gauss::gauss_legendre;
use crate::error::{Error, Result};

/// Product quadrature grid: Gauss-Legendre in z = cos(theta), uniform in phi.
///
/// Integrates band-limited integrands exactly: z-polynomials of degree
/// <= 2*n_theta - 1 and trigonometric polynomials in phi of degree
/// <= n_phi - 1.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub n_theta: usize,
    pub n_phi: usize,
    pub nodes_z: Vec<f64>,
    pub weights_z: Vec<f64>,
    pub phi_step: f64,
}

impl SphereGrid {
    pub fn build(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 {
            return Err(Error::InvalidGrid(format!(
                "n_theta must be >= 2 (got {n_theta})"
            )));
        }
        if n_phi < 4 || n_phi % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "n_phi must be even and >= 4 (got {n_phi})"
            )));
        }
        let (nodes_z, weights_z) = gauss_legendre(n_theta);
        Ok(Self {
            n_theta,
            n_phi,
            nodes_z,
            weights_z,
            phi_step: 2.0 * std::f64::consts::PI / n_phi as f64,
        })
    }

    /// Grid sized so that transforms of degree `l_max` are exact and
    /// pointwise products up to total degree `product_degree` alias-free.
    pub fn for_degree(l_max: usize, product_degree: usize) -> Result<Self> {
        let deg = product_degree.max(l_max);
        let n_theta = (deg + 2).div_ceil(2).max(l_max + 1).max(2);
        let mut n_phi = (2 * deg + 2).max(2 * l_max + 2).max(4);
        if n_phi % 2 == 1 {
            n_phi += 1;
        }
        Self::build(n_theta, n_phi)
    }

    pub fn phi(&self, j: usize) -> f64 {
        self.phi_step * j as f64
    }

    /// Unit vector m at node (i, j).
    pub fn direction(&self, i: usize, j: usize) -> Vector3<f64> {
        let z = self.nodes_z[i];
        let s = (1.0 - z * z).sqrt();
        let phi = self.phi(j);
        Vector3::new(s * phi.cos(), s * phi.sin(), z)
    }

    /// Quadrature weight of node (i, j) for surface integrals.
    pub fn weight(&self, i: usize) -> f64 {
        self.weights_z[i] * self.phi_step
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Real scalar field sampled on a [`SphereGrid`], row-major over (theta, phi).
#[derive(Debug, Clone)]
pub struct GridField {
    pub n_theta: usize,
    pub n_phi: usize,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn zeros(grid: &SphereGrid) -> Self {
        Self {
            n_theta: grid.n_theta,
            n_phi: grid.n_phi,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_fn(grid: &SphereGrid, mut f: impl FnMut(Vector3<f64>) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.n_theta {
            for j in 0..grid.n_phi {
                values.push(f(grid.direction(i, j)));
            }
        }
        Self {
            n_theta: grid.n_theta,
            n_phi: grid.n_phi,
            values,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_phi + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.values[i * self.n_phi + j]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn check_same_shape(&self, other: &GridField) -> Result<()> {
        if self.n_theta != other.n_theta || self.n_phi != other.n_phi {
            return Err(Error::InvalidGrid(format!(
                "grid shape mismatch: {}x{} vs {}x{}",
                self.n_theta, self.n_phi, other.n_theta, other.n_phi
            )));
        }
        Ok(())
    }

    /// Pointwise product, consuming neither input.
    pub fn product(&self, other: &GridField) -> Result<GridField> {
        self.check_same_shape(other)?;
        Ok(GridField {
            n_theta: self.n_theta,
            n_phi: self.n_phi,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// Surface integral of a grid field.
pub fn integrate_grid(f: &GridField, grid: &SphereGrid) -> f64 {
    let mut acc = 0.0;
    for i in 0..grid.n_theta {
        let mut row = 0.0;
        for j in 0..grid.n_phi {
            row += f.at(i, j);
        }
        acc += grid.weights_z[i] * row;
    }
    acc * grid.phi_step
}

/// Quadrature inner product of two grid fields.
pub fn inner_grid(f: &GridField, g: &GridField, grid: &SphereGrid) -> Result<f64> {
    f.check_same_shape(g)?;
    let mut acc = 0.0;
    for i in 0..grid.n_theta {
        let mut row = 0.0;
        for j in 0..grid.n_phi {
            row += f.at(i, j) * g.at(i, j);
        }
        acc += grid.weights_z[i] * row;
    }
    Ok(acc * grid.phi_step)
}
