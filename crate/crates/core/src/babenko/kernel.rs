//! Pseudo-spectral evaluation of the Babenko residual, its linearisation and
//! the reduced energy on a grid padded by two.
//!
//! A band-limited `U` (`|k| < n/2`) is interpolated to `m = 2n` nodes, all
//! pointwise products and the Jacobian are formed there, derivatives are
//! applied on the padded grid, and the result is truncated back to
//! `|k| < n/2`. Polynomial terms up to cubic are then exact, and the
//! truncated residual is the exact gradient of the padded-grid energy, so the
//! discrete linearisation is symmetric.

use rustfft::num_complex::Complex64;

use crate::spectral::{self, PeriodicGrid};
use crate::{Error, PhysicalParams, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `J = |1 + W_α|²` is never negative; profiles whose `J` comes this close to
/// zero are treated as outside the small-amplitude regime.
pub(crate) const JACOBIAN_FLOOR: f64 = 1e-8;

/// Padded-grid machinery for one base grid.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    pub grid: PeriodicGrid,
    pub m: usize,
    /// Signed wavenumbers on the padded grid, Nyquist slot set to zero.
    xi: Vec<f64>,
}

/// Quantities at `U` reused by every directional derivative.
#[derive(Debug, Clone)]
pub(crate) struct State {
    pub u: Vec<f64>,
    pub ua: Vec<f64>,
    pub du: Vec<f64>,
    /// `J^{-1/2}`
    pub s: Vec<f64>,
    pub j_min: f64,
    /// `|D|(U²)`
    pub du2: Vec<f64>,
    /// Base-grid spectrum of `U`.
    pub spec: Vec<Complex64>,
}

impl Kernel {
    pub fn new(grid: PeriodicGrid) -> Self {
        let m = 2 * grid.n;
        let padded = PeriodicGrid { n: m, length: grid.length };
        let xi = (0..m).map(|k| if k == m / 2 { 0.0 } else { padded.wavenumber(k) }).collect();
        Self { grid, m, xi }
    }

    /// Padded-grid spectrum from a base-grid spectrum (Nyquist dropped).
    pub fn pad(&self, spec: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.n;
        let scale = self.m as f64 / n as f64;
        let mut out = vec![ZERO; self.m];
        out[0] = spec[0] * scale;
        for k in 1..n / 2 {
            out[k] = spec[k] * scale;
            out[self.m - k] = spec[n - k] * scale;
        }
        out
    }

    /// Base-grid spectrum keeping `|k| < n/2`.
    pub fn truncate(&self, spec: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.n;
        let scale = n as f64 / self.m as f64;
        let mut out = vec![ZERO; n];
        out[0] = spec[0] * scale;
        for k in 1..n / 2 {
            out[k] = spec[k] * scale;
            out[n - k] = spec[self.m - k] * scale;
        }
        out
    }

    fn to_values(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        spectral::inverse(&mut spec);
        spec.into_iter().map(|z| z.re).collect()
    }

    fn to_spec(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        spectral::forward(&mut buf);
        buf
    }

    fn multiplied(&self, spec: &[Complex64], m: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        spec.iter().zip(&self.xi).map(|(&z, &xi)| z * m(xi)).collect()
    }

    /// Padded values of `(f, ∂f, |D|f)` from a base-grid spectrum.
    fn triple(&self, spec: &[Complex64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let p = self.pad(spec);
        let fa = self.to_values(self.multiplied(&p, |xi| Complex64::new(0.0, xi)));
        let fd = self.to_values(self.multiplied(&p, |xi| Complex64::new(xi.abs(), 0.0)));
        (self.to_values(p), fa, fd)
    }

    fn abs_d_values(&self, values: &[f64]) -> Vec<f64> {
        let s = self.to_spec(values);
        self.to_values(self.multiplied(&s, |xi| Complex64::new(xi.abs(), 0.0)))
    }

    /// Combines `F(p0) + iξF(p2) + |ξ|F(p1) − c²|ξ|F(u)` and truncates.
    fn assemble(
        &self,
        p0: &[f64],
        p1: &[f64],
        p2: &[f64],
        c2: f64,
        u_pad_spec: &[Complex64],
    ) -> Vec<Complex64> {
        let (f0, f1, f2) = (self.to_spec(p0), self.to_spec(p1), self.to_spec(p2));
        let total: Vec<Complex64> = (0..self.m)
            .map(|k| {
                let xi = self.xi[k];
                f0[k] + Complex64::new(0.0, xi) * f2[k] + xi.abs() * (f1[k] - c2 * u_pad_spec[k])
            })
            .collect();
        self.truncate(&total)
    }

    /// Evaluates everything needed at `U`, given its base-grid spectrum.
    pub fn state(&self, spec: Vec<Complex64>) -> State {
        let (u, ua, du) = self.triple(&spec);
        let mut j_min = f64::INFINITY;
        let s = du
            .iter()
            .zip(&ua)
            .map(|(&d, &a)| {
                let j = (1.0 + d) * (1.0 + d) + a * a;
                j_min = j_min.min(j);
                1.0 / j.sqrt()
            })
            .collect();
        let u2: Vec<f64> = u.iter().map(|v| v * v).collect();
        let du2 = self.abs_d_values(&u2);
        State { u, ua, du, s, j_min, du2, spec }
    }

    pub fn check_jacobian(st: &State) -> Result<()> {
        if !(st.j_min > JACOBIAN_FLOOR) || !st.j_min.is_finite() {
            return Err(Error::NonPositiveJacobian(st.j_min));
        }
        Ok(())
    }

    /// Base-grid spectrum of the residual at `st`.
    pub fn residual(&self, p: &PhysicalParams, c: f64, st: &State) -> Vec<Complex64> {
        let (g, sg, gm) = (p.g, p.sigma, p.gamma);
        let gm2 = gm * gm;
        let n = self.m;
        let (mut p0, mut p1, mut p2) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        for i in 0..n {
            let (u, ua, du, s, du2) = (st.u[i], st.ua[i], st.du[i], st.s[i], st.du2[i]);
            p0[i] = (g + c * gm) * u + 0.5 * gm2 * u * u + g * u * du - 0.5 * gm2 * u * du2
                + 0.5 * gm2 * u * u * du;
            p1[i] = sg * (1.0 + du) * s + 0.5 * g * u * u + gm2 / 6.0 * u * u * u;
            p2[i] = -sg * ua * s;
        }
        let up = self.pad(&st.spec);
        self.assemble(&p0, &p1, &p2, c * c, &up)
    }

    /// Capillary terms alone: `−σ∂(U_α/√J) + σ|D|((1 + |D|U)/√J)`.
    pub fn capillary(&self, sigma: f64, st: &State) -> Vec<Complex64> {
        let n = self.m;
        let zero = vec![0.0; n];
        let p1: Vec<f64> = (0..n).map(|i| sigma * (1.0 + st.du[i]) * st.s[i]).collect();
        let p2: Vec<f64> = (0..n).map(|i| -sigma * st.ua[i] * st.s[i]).collect();
        self.assemble(&zero, &p1, &p2, 0.0, &vec![ZERO; n])
    }

    /// Base-grid spectrum of the linearisation at `st` applied to `v`.
    pub fn frechet(
        &self,
        p: &PhysicalParams,
        c: f64,
        st: &State,
        v_spec: &[Complex64],
    ) -> Vec<Complex64> {
        let (g, sg, gm) = (p.g, p.sigma, p.gamma);
        let gm2 = gm * gm;
        let n = self.m;
        let (v, va, dv) = self.triple(v_spec);
        let uv: Vec<f64> = st.u.iter().zip(&v).map(|(a, b)| a * b).collect();
        let duv = self.abs_d_values(&uv);
        let (mut l0, mut l1, mut l2) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        for i in 0..n {
            let (u, ua, du, s, du2) = (st.u[i], st.ua[i], st.du[i], st.s[i], st.du2[i]);
            let (vi, vai, dvi) = (v[i], va[i], dv[i]);
            let dj = 2.0 * (1.0 + du) * dvi + 2.0 * ua * vai;
            let ds = -0.5 * s * s * s * dj;
            l0[i] = (g + c * gm) * vi + gm2 * u * vi + g * (vi * du + u * dvi)
                - 0.5 * gm2 * (vi * du2 + 2.0 * u * duv[i])
                + 0.5 * gm2 * (2.0 * u * vi * du + u * u * dvi);
            l1[i] = sg * (dvi * s + (1.0 + du) * ds) + g * uv[i] + 0.5 * gm2 * u * uv[i];
            l2[i] = -sg * (vai * s + ua * ds);
        }
        let vp = self.pad(v_spec);
        self.assemble(&l0, &l1, &l2, c * c, &vp)
    }

    /// `(ℰ, 𝒫)` with `Im Q = −(γ/2)U² − cU`, trapezoid rule on the padded grid.
    pub fn functionals(&self, p: &PhysicalParams, c: f64, st: &State) -> (f64, f64) {
        let (g, sg, gm) = (p.g, p.sigma, p.gamma);
        let q: Vec<f64> = st.u.iter().map(|&u| -0.5 * gm * u * u - c * u).collect();
        let dq = self.abs_d_values(&q);
        let h = self.grid.length / self.m as f64;
        let (mut e, mut mom) = (0.0, 0.0);
        for i in 0..self.m {
            let (u, du) = (st.u[i], st.du[i]);
            let root_j = 1.0 / st.s[i];
            e += q[i] * dq[i] + g * u * u * (1.0 + du) + gm * dq[i] * u * u
                + gm * gm / 3.0 * u * u * u * (1.0 + du)
                + 2.0 * sg * (root_j - 1.0 - du);
            mom += dq[i] * u + 0.5 * gm * u * u * (1.0 + du);
        }
        (0.5 * e * h, -mom * h)
    }

    /// Base-grid values from a base-grid spectrum.
    pub fn base_values(&self, spec: Vec<Complex64>) -> Vec<f64> {
        let mut s = spec;
        spectral::inverse(&mut s);
        s.into_iter().map(|z| z.re).collect()
    }
}

/// Cosine coefficients from a base-grid spectrum of an even field.
pub(crate) fn spec_to_cosine(spec: &[Complex64]) -> Vec<f64> {
    let n = spec.len();
    (0..n / 2)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            if k == 0 { spec[0].re / n as f64 } else { 2.0 * s * spec[k].re / n as f64 }
        })
        .collect()
}

pub(crate) use crate::spectral::cosine_spectrum;
