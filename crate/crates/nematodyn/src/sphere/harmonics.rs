//! Truncated spherical-harmonic representation of real functions on the
//! sphere and the forward/backward transforms against a quadrature grid.
//!
//! Basis: complex orthonormal spherical harmonics with the Condon-Shortley
//! phase. Real fields keep the conjugation symmetry
//! `c_{l,-m} = (-1)^m conj(c_{l,m})`, which every operation here preserves
//! exactly (negative-m entries are mirrored from the non-negative ones).

use num_complex::Complex64;

use super::grid::{GridField, SphereGrid};
use crate::error::{Error, Result};

pub const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Packed index of (l, m), m in [-l, l]: `l^2 + l + m`.
#[inline]
pub fn pack(l: usize, m: i64) -> usize {
    (l * l) as usize + (l as i64 + m) as usize
}

/// Coefficients of a function over harmonics of degree <= l_max.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicField {
    l_max: usize,
    coeffs: Vec<Complex64>,
}

impl HarmonicField {
    pub fn zeros(l_max: usize) -> Self {
        Self {
            l_max,
            coeffs: vec![Complex64::new(0.0, 0.0); (l_max + 1) * (l_max + 1)],
        }
    }

    /// The constant density 1/(4 pi).
    pub fn uniform_density(l_max: usize) -> Self {
        let mut f = Self::zeros(l_max);
        f.coeffs[0] = Complex64::new(1.0 / FOUR_PI.sqrt(), 0.0);
        f
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn get(&self, l: usize, m: i64) -> Complex64 {
        if l > self.l_max || m.unsigned_abs() as usize > l {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[pack(l, m)]
        }
    }

    #[inline]
    pub fn set(&mut self, l: usize, m: i64, v: Complex64) {
        self.coeffs[pack(l, m)] = v;
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Mirror m < 0 entries from m > 0 so conjugation symmetry holds at the
    /// bit level; the m = 0 imaginary parts are dropped.
    pub fn symmetrize(&mut self) {
        for l in 0..=self.l_max {
            let c0 = self.coeffs[pack(l, 0)];
            self.coeffs[pack(l, 0)] = Complex64::new(c0.re, 0.0);
            for m in 1..=(l as i64) {
                let c = self.coeffs[pack(l, m)];
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                self.coeffs[pack(l, -m)] = Complex64::new(sign * c.re, -sign * c.im);
            }
        }
    }

    /// Largest violation of the real-field conjugation symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for l in 0..=self.l_max {
            worst = worst.max(self.coeffs[pack(l, 0)].im.abs());
            for m in 1..=(l as i64) {
                let c = self.coeffs[pack(l, m)];
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let mirror = Complex64::new(sign * c.re, -sign * c.im);
                worst = worst.max((self.coeffs[pack(l, -m)] - mirror).norm());
            }
        }
        worst
    }

    /// Copy into a (possibly) different truncation degree.
    pub fn resized(&self, l_max: usize) -> Self {
        let mut out = Self::zeros(l_max);
        for l in 0..=l_max.min(self.l_max) {
            for m in -(l as i64)..=(l as i64) {
                out.set(l, m, self.get(l, m));
            }
        }
        out
    }

    pub fn scale(&mut self, a: f64) {
        for c in &mut self.coeffs {
            *c *= a;
        }
    }

    pub fn axpy(&mut self, a: f64, x: &HarmonicField) {
        assert_eq!(self.l_max, x.l_max, "degree mismatch in axpy");
        for (c, xc) in self.coeffs.iter_mut().zip(&x.coeffs) {
            *c += a * xc;
        }
    }

    /// Surface integral (exact): sqrt(4 pi) * c_{0,0}.
    pub fn integral(&self) -> f64 {
        (self.coeffs[0] * FOUR_PI.sqrt()).re
    }

    /// L2 norm over the sphere (Parseval).
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// L2 inner product of two real fields (Parseval; exact on coefficients).
    pub fn inner(&self, other: &HarmonicField) -> f64 {
        let lmin = self.l_max.min(other.l_max);
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..=lmin {
            for m in -(l as i64)..=(l as i64) {
                acc += self.get(l, m).conj() * other.get(l, m);
            }
        }
        acc.re
    }

    /// Energy per degree l (sum of |c_{l,m}|^2 over m).
    pub fn degree_energy(&self) -> Vec<f64> {
        (0..=self.l_max)
            .map(|l| {
                (-(l as i64)..=(l as i64))
                    .map(|m| self.get(l, m).norm_sqr())
                    .sum()
            })
            .collect()
    }
}

/// Tables of normalized associated Legendre values on a grid, plus phi
/// Fourier factors; owns everything needed to move between coefficients and
/// grid samples.
#[derive(Debug, Clone)]
pub struct ShTransform {
    pub grid: SphereGrid,
    pub l_max: usize,
    /// plm[m] is a (l_max+1-m) x n_theta table of P-bar_l^m(z_i), l = m..=l_max.
    plm: Vec<Vec<f64>>,
    cos_mphi: Vec<Vec<f64>>,
    sin_mphi: Vec<Vec<f64>>,
}

impl ShTransform {
    pub fn new(grid: SphereGrid, l_max: usize) -> Result<Self> {
        if grid.n_phi < 2 * l_max + 1 {
            return Err(Error::GridTooCoarse {
                l_max,
                detail: format!("n_phi = {} < 2*l_max+1", grid.n_phi),
            });
        }
        if grid.n_theta < l_max + 1 {
            return Err(Error::GridTooCoarse {
                l_max,
                detail: format!("n_theta = {} < l_max+1", grid.n_theta),
            });
        }
        let plm = legendre_tables(l_max, &grid.nodes_z);
        let mut cos_mphi = Vec::with_capacity(l_max + 1);
        let mut sin_mphi = Vec::with_capacity(l_max + 1);
        for m in 0..=l_max {
            let mut cm = Vec::with_capacity(grid.n_phi);
            let mut sm = Vec::with_capacity(grid.n_phi);
            for j in 0..grid.n_phi {
                let a = m as f64 * grid.phi(j);
                cm.push(a.cos());
                sm.push(a.sin());
            }
            cos_mphi.push(cm);
            sin_mphi.push(sm);
        }
        Ok(Self {
            grid,
            l_max,
            plm,
            cos_mphi,
            sin_mphi,
        })
    }

    /// Convenience: transform sized for `l_max` with alias-free products up
    /// to `product_degree`.
    pub fn for_degree(l_max: usize, product_degree: usize) -> Result<Self> {
        Self::new(SphereGrid::for_degree(l_max, product_degree)?, l_max)
    }

    #[inline]
    pub fn plm_at(&self, l: usize, m: usize, i: usize) -> f64 {
        self.plm[m][(l - m) * self.grid.n_theta + i]
    }

    /// Point values of a real field from its coefficients.
    pub fn synthesize(&self, f: &HarmonicField) -> GridField {
        let l_used = f.l_max().min(self.l_max);
        let nt = self.grid.n_theta;
        let np = self.grid.n_phi;
        let mut out = vec![0.0; nt * np];
        // theta part: g_m(i) = sum_l c_{l,m} Pbar_l^m(z_i) for m >= 0
        for m in 0..=l_used {
            let mut g_re = vec![0.0; nt];
            let mut g_im = vec![0.0; nt];
            for l in m..=l_used {
                let c = f.get(l, m as i64);
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                for i in 0..nt {
                    let p = self.plm_at(l, m, i);
                    g_re[i] += c.re * p;
                    g_im[i] += c.im * p;
                }
            }
            let cm = &self.cos_mphi[m];
            let sm = &self.sin_mphi[m];
            let scale = if m == 0 { 1.0 } else { 2.0 };
            for i in 0..nt {
                if g_re[i] == 0.0 && g_im[i] == 0.0 {
                    continue;
                }
                let row = &mut out[i * np..(i + 1) * np];
                for j in 0..np {
                    row[j] += scale * (g_re[i] * cm[j] - g_im[i] * sm[j]);
                }
            }
        }
        GridField {
            n_theta: nt,
            n_phi: np,
            values: out,
        }
    }

    /// Quadrature projection of a real grid field onto harmonics of degree
    /// <= `l_out`; exact for band-limited input.
    pub fn analyze(&self, g: &GridField, l_out: usize) -> Result<HarmonicField> {
        if l_out > self.l_max {
            return Err(Error::GridTooCoarse {
                l_max: l_out,
                detail: format!("transform prepared only up to degree {}", self.l_max),
            });
        }
        if g.n_theta != self.grid.n_theta || g.n_phi != self.grid.n_phi {
            return Err(Error::InvalidGrid(
                "field shape does not match transform grid".into(),
            ));
        }
        let nt = self.grid.n_theta;
        let np = self.grid.n_phi;
        let dphi = self.grid.phi_step;
        let mut out = HarmonicField::zeros(l_out);
        for m in 0..=l_out {
            let cm = &self.cos_mphi[m];
            let sm = &self.sin_mphi[m];
            // ghat_m(i) = dphi * sum_j f(i,j) e^{-i m phi_j}
            let mut gh_re = vec![0.0; nt];
            let mut gh_im = vec![0.0; nt];
            for i in 0..nt {
                let row = &g.values[i * np..(i + 1) * np];
                let mut re = 0.0;
                let mut im = 0.0;
                for j in 0..np {
                    re += row[j] * cm[j];
                    im -= row[j] * sm[j];
                }
                gh_re[i] = re * dphi;
                gh_im[i] = im * dphi;
            }
            for l in m..=l_out {
                let mut re = 0.0;
                let mut im = 0.0;
                for i in 0..nt {
                    let pw = self.plm_at(l, m, i) * self.grid.weights_z[i];
                    re += pw * gh_re[i];
                    im += pw * gh_im[i];
                }
                out.set(l, m as i64, Complex64::new(re, im));
            }
        }
        out.symmetrize();
        Ok(out)
    }
}

/// Normalized associated Legendre functions P-bar_l^m(z) (Condon-Shortley
/// phase, orthonormal over the sphere) tabulated at the given nodes.
fn legendre_tables(l_max: usize, nodes: &[f64]) -> Vec<Vec<f64>> {
    let nt = nodes.len();
    let mut tables: Vec<Vec<f64>> = Vec::with_capacity(l_max + 1);
    // P-bar_m^m by upward recurrence in m
    let mut pmm: Vec<f64> = nodes.iter().map(|_| (1.0 / FOUR_PI).sqrt()).collect();
    for m in 0..=l_max {
        let rows = l_max + 1 - m;
        let mut tab = vec![0.0; rows * nt];
        tab[..nt].copy_from_slice(&pmm);
        if rows > 1 {
            let c = (2.0 * m as f64 + 3.0).sqrt();
            for i in 0..nt {
                tab[nt + i] = c * nodes[i] * pmm[i];
            }
        }
        for l in (m + 2)..=l_max {
            let lf = l as f64;
            let mf = m as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = -(((2.0 * lf + 1.0) * ((lf - 1.0) * (lf - 1.0) - mf * mf))
                / ((2.0 * lf - 3.0) * (lf * lf - mf * mf)))
                .sqrt();
            let (head, tail) = tab.split_at_mut((l - m) * nt);
            let p1 = &head[(l - 1 - m) * nt..(l - m) * nt];
            let p2 = &head[(l - 2 - m) * nt..(l - 1 - m) * nt];
            for i in 0..nt {
                tail[i] = a * nodes[i] * p1[i] + b * p2[i];
            }
        }
        tables.push(tab);
        // seed for next m
        if m < l_max {
            let c = (1.0 + 1.0 / (2.0 * (m as f64 + 1.0))).sqrt();
            for (i, p) in pmm.iter_mut().enumerate() {
                let s = (1.0 - nodes[i] * nodes[i]).sqrt();
                *p *= -c * s;
            }
        }
    }
    tables
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::grid::integrate_grid;

    fn transform(l: usize) -> ShTransform {
        ShTransform::for_degree(l, 2 * l).unwrap()
    }

    #[test]
    fn constant_analysis() {
        let t = transform(8);
        let g = GridField::from_fn(&t.grid, |_| 1.0 / FOUR_PI.sqrt());
        let c = t.analyze(&g, 8).unwrap();
        assert!((c.get(0, 0).re - 1.0).abs() < 1e-13);
        for l in 1..=8usize {
            for m in -(l as i64)..=(l as i64) {
                assert!(c.get(l, m).norm() < 1e-13, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn constant_synthesis_and_y10() {
        let t = transform(6);
        let mut f = HarmonicField::zeros(6);
        f.set(0, 0, Complex64::new(FOUR_PI.sqrt(), 0.0));
        let g = t.synthesize(&f);
        for v in &g.values {
            assert!((v - 1.0).abs() < 1e-13);
        }
        // Y_{1,0} = sqrt(3/4pi) cos(theta)
        let mut f1 = HarmonicField::zeros(6);
        f1.set(1, 0, Complex64::new(1.0, 0.0));
        let g1 = t.synthesize(&f1);
        for i in 0..t.grid.n_theta {
            let expect = (3.0 / FOUR_PI).sqrt() * t.grid.nodes_z[i];
            assert!((g1.at(i, 0) - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn y21_orthonormality() {
        let t = transform(5);
        // grid samples of the real combination carried by (2,1)/(2,-1)
        let mut f = HarmonicField::zeros(5);
        f.set(2, 1, Complex64::new(0.5, -0.25));
        f.symmetrize();
        let g = t.synthesize(&f);
        let c = t.analyze(&g, 5).unwrap();
        assert!((c.get(2, 1) - f.get(2, 1)).norm() < 1e-12);
        for l in 0..=5usize {
            for m in -(l as i64)..=(l as i64) {
                if !(l == 2 && m.abs() == 1) {
                    assert!(c.get(l, m).norm() < 1e-12);
                }
            }
        }
        // unit norm of each basis function via Parseval vs quadrature
        let sq = GridField {
            n_theta: g.n_theta,
            n_phi: g.n_phi,
            values: g.values.iter().map(|v| v * v).collect(),
        };
        let quad = integrate_grid(&sq, &t.grid);
        assert!((quad - f.norm().powi(2)).abs() < 1e-13);
    }

    #[test]
    fn round_trip_identity_l32() {
        let t = transform(32);
        let mut f = HarmonicField::zeros(32);
        // deterministic pseudo-random coefficients
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for l in 0..=32usize {
            for m in 0..=(l as i64) {
                f.set(l, m, Complex64::new(rng(), if m == 0 { 0.0 } else { rng() }));
            }
        }
        f.symmetrize();
        let c2 = t.analyze(&t.synthesize(&f), 32).unwrap();
        let mut worst: f64 = 0.0;
        for (a, b) in f.coeffs().iter().zip(c2.coeffs()) {
            worst = worst.max((a - b).norm());
        }
        assert!(worst < 1e-12, "round trip defect {worst}");
        assert_eq!(c2.symmetry_defect(), 0.0);
    }

    #[test]
    fn axisymmetric_exponential_parity() {
        // g = e^{eta z^2}/Z at eta = 1: only even-l, m=0 coefficients survive,
        // and they match 1-D Legendre moments computed by quadrature.
        let eta = 1.0;
        let t = transform(12);
        let (zq, wq) = crate::sphere::gauss::gauss_legendre(200);
        let zline: f64 = zq.iter().zip(&wq).map(|(z, w)| w * (eta * z * z).exp()).sum();
        let znorm = zline * 2.0 * std::f64::consts::PI;
        let g = GridField::from_fn(&t.grid, |m| (eta * m.z * m.z).exp() / znorm);
        let c = t.analyze(&g, 12).unwrap();
        for l in 0..=12usize {
            for m in -(l as i64)..=(l as i64) {
                if m != 0 || l % 2 == 1 {
                    assert!(c.get(l, m).norm() < 1e-12, "l={l} m={m}");
                }
            }
        }
        // oracle: c_{l,0} = 2 pi / Z * int P-bar_l^0(z) e^{eta z^2} dz
        for l in [0usize, 2, 4, 6] {
            let tab = legendre_tables(l, &zq);
            let moment: f64 = zq
                .iter()
                .enumerate()
                .map(|(i, z)| wq[i] * tab[0][l * zq.len() + i] * (eta * z * z).exp())
                .sum();
            let expect = moment * 2.0 * std::f64::consts::PI / znorm;
            assert!(
                (c.get(l, 0).re - expect).abs() < 1e-12,
                "l={l}: {} vs {expect}",
                c.get(l, 0).re
            );
        }
    }
}
