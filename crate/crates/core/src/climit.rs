//! Lattice Dirac operators on the periodic unit circle and their continuum
//! limit. Sites are `xₖ = k/n`, the spacing is `ħ = 1/n`, and
//! `D_ħ = −i(S − S*)/(2ħ)` with `(Sf)ₖ = f_{k+1}`.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matops::{complex_vec_norm, ComplexMatrix, C64, I, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeConfig {
    n: usize,
}

impl LatticeConfig {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Input(format!("lattice needs at least 4 sites, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hbar(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn site(&self, k: usize) -> f64 {
        k as f64 / self.n as f64
    }
}

/// Named test functions on the circle, parsed from `name[:k]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `c`.
    Constant(f64),
    /// `sin(2πkx)`.
    Sine(i64),
    /// `e^{2πikx}`.
    PlaneWave(i64),
    /// Raw samples; no analytic derivative.
    Tabulated(Vec<C64>),
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let bad = |what: &str| Error::Input(format!("profile {s:?}: {what}"));
        match name {
            "constant" => {
                let c = arg.map_or(Ok(1.0), |a| a.parse::<f64>().map_err(|_| bad("expected a real constant")))?;
                if !c.is_finite() {
                    return Err(bad("constant must be finite"));
                }
                Ok(Self::Constant(c))
            }
            "sine" | "plane_wave" => {
                let k = arg.map_or(Ok(1), |a| a.parse::<i64>().map_err(|_| bad("expected an integer wave number")))?;
                Ok(if name == "sine" { Self::Sine(k) } else { Self::PlaneWave(k) })
            }
            "tabulated" => Err(bad("tabulated profiles are built from samples, not named")),
            _ => Err(bad("unknown profile; use constant[:c], sine[:k] or plane_wave[:k]")),
        }
    }
}

impl Profile {
    pub fn name(&self) -> String {
        match self {
            Self::Constant(c) => format!("constant:{c}"),
            Self::Sine(k) => format!("sine:{k}"),
            Self::PlaneWave(k) => format!("plane_wave:{k}"),
            Self::Tabulated(v) => format!("tabulated[{}]", v.len()),
        }
    }

    fn value(&self, x: f64) -> C64 {
        match *self {
            Self::Constant(c) => C64::new(c, 0.0),
            Self::Sine(k) => C64::new((TAU * k as f64 * x).sin(), 0.0),
            Self::PlaneWave(k) => C64::from_polar(1.0, TAU * k as f64 * x),
            Self::Tabulated(_) => unreachable!("tabulated values are stored"),
        }
    }

    /// Analytic `f′(x)`, when there is one.
    pub fn derivative(&self, x: f64) -> Option<C64> {
        match *self {
            Self::Constant(_) => Some(C64::new(0.0, 0.0)),
            Self::Sine(k) => {
                let w = TAU * k as f64;
                Some(C64::new(w * (w * x).cos(), 0.0))
            }
            Self::PlaneWave(k) => {
                let w = TAU * k as f64;
                Some(I * w * C64::from_polar(1.0, w * x))
            }
            Self::Tabulated(_) => None,
        }
    }

    pub fn sample(&self, cfg: LatticeConfig) -> Result<SampledProfile> {
        let values = match self {
            Self::Tabulated(v) if v.len() != cfg.n() => {
                return Err(Error::Shape(format!("{} samples for {} sites", v.len(), cfg.n())))
            }
            Self::Tabulated(v) => v.clone(),
            _ => (0..cfg.n()).map(|k| self.value(cfg.site(k))).collect(),
        };
        Ok(SampledProfile {
            kind: self.clone(),
            values,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub kind: Profile,
    pub values: Vec<C64>,
}

/// Cyclic shift `(Sf)ₖ = f_{k+1}`.
pub fn shift_operator(cfg: LatticeConfig) -> ComplexMatrix {
    let n = cfg.n();
    ComplexMatrix::from_fn(n, n, |i, j| if j == (i + 1) % n { ONE } else { C64::new(0.0, 0.0) })
}

/// `D_ħ = −i(S − S*)/(2ħ)`.
pub fn flat_lattice_dirac(cfg: LatticeConfig) -> ComplexMatrix {
    let s = shift_operator(cfg);
    (&s - &s.adjoint()).scale(-I / (2.0 * cfg.hbar()))
}

/// `(D_ħ f)ₖ = −i(f_{k+1} − f_{k−1})/(2ħ)` without forming the matrix.
fn apply_flat(cfg: LatticeConfig, f: &[C64]) -> Vec<C64> {
    let n = cfg.n();
    let c = -I / (2.0 * cfg.hbar());
    (0..n).map(|k| c * (f[(k + 1) % n] - f[(k + n - 1) % n])).collect()
}

fn phases(theta: &SampledProfile) -> Result<Vec<C64>> {
    theta
        .values
        .iter()
        .map(|z| {
            if z.im != 0.0 {
                Err(Error::Input(format!("gauge angle must be real, got {z}")))
            } else {
                Ok(C64::from_polar(1.0, z.re))
            }
        })
        .collect()
}

/// `U = diag(e^{iθ(xₖ)})`.
pub fn gauge_unitary(theta: &SampledProfile, cfg: LatticeConfig) -> Result<ComplexMatrix> {
    if theta.values.len() != cfg.n() {
        return Err(Error::Shape(format!("{} samples for {} sites", theta.values.len(), cfg.n())));
    }
    Ok(ComplexMatrix::diag(&phases(theta)?))
}

/// `‖(U D_ħ U*)(U f) − U(D_ħ f)‖` relative to `max(1, ‖D_ħ f‖)`.
pub fn gauge_covariance_check(cfg: LatticeConfig, theta: &Profile, f: &Profile) -> Result<f64> {
    let u = gauge_unitary(&theta.sample(cfg)?, cfg)?;
    let d = flat_lattice_dirac(cfg);
    let fv = f.sample(cfg)?.values;
    let ud = &(&u * &d) * &u.adjoint();
    let lhs = ud.apply(&u.apply(&fv)?)?;
    let df = d.apply(&fv)?;
    let rhs = u.apply(&df)?;
    let diff: Vec<C64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    Ok(complex_vec_norm(&diff) / complex_vec_norm(&df).max(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub flat_error: f64,
    pub fluct_error: Option<f64>,
    /// `log₂(eₙ / e_{2n})` against the next row; `None` on the last row or
    /// when the error has reached zero.
    pub order: Option<f64>,
    pub fluct_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub profile: String,
    pub theta: Option<String>,
    pub rows: Vec<ConvergenceRow>,
}

fn max_err(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn observed_order(e: f64, next: f64, ratio: f64) -> Option<f64> {
    (e > 0.0 && next > 0.0).then(|| (e / next).ln() / ratio.ln())
}

/// Max-norm errors of `D_ħ f` against `−i f′`, and with `θ` of
/// `U D_ħ U* f` against `−i f′ − θ′ f`, for every `n` in `ns`.
pub fn convergence_report(profile: &Profile, theta: Option<&Profile>, ns: &[usize]) -> Result<ConvergenceReport> {
    if ns.is_empty() {
        return Err(Error::Input("no lattice sizes given".into()));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 8) {
        return Err(Error::Input(format!("lattice size {n} is below the minimum of 8")));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input(format!("lattice sizes must be strictly increasing, got {ns:?}")));
    }
    for p in std::iter::once(profile).chain(theta) {
        if matches!(p, Profile::Tabulated(_)) {
            return Err(Error::Unsupported("tabulated profiles have no analytic derivative".into()));
        }
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let cfg = LatticeConfig::new(n)?;
        let f = profile.sample(cfg)?.values;
        let xs: Vec<f64> = (0..n).map(|k| cfg.site(k)).collect();
        let target: Vec<C64> = xs.iter().map(|&x| -I * profile.derivative(x).expect("analytic")).collect();
        let flat_error = max_err(&apply_flat(cfg, &f), &target);
        let fluct_error = match theta {
            None => None,
            Some(th) => {
                let u = phases(&th.sample(cfg)?)?;
                // U D U* f with diagonal U
                let uf: Vec<C64> = f.iter().zip(&u).map(|(a, b)| a * b.conj()).collect();
                let got: Vec<C64> = apply_flat(cfg, &uf).iter().zip(&u).map(|(a, b)| a * b).collect();
                let want: Vec<C64> = xs
                    .iter()
                    .zip(&target)
                    .zip(&f)
                    .map(|((&x, t), fv)| t - th.derivative(x).expect("analytic").re * fv)
                    .collect();
                Some(max_err(&got, &want))
            }
        };
        rows.push(ConvergenceRow {
            n,
            flat_error,
            fluct_error,
            order: None,
            fluct_order: None,
        });
    }
    for k in 0..rows.len().saturating_sub(1) {
        let ratio = rows[k + 1].n as f64 / rows[k].n as f64;
        let (a, b) = (rows[k], rows[k + 1]);
        rows[k].order = observed_order(a.flat_error, b.flat_error, ratio);
        rows[k].fluct_order = a.fluct_error.zip(b.fluct_error).and_then(|(x, y)| observed_order(x, y, ratio));
    }
    Ok(ConvergenceReport {
        profile: profile.name(),
        theta: theta.map(Profile::name),
        rows,
    })
}

impl ConvergenceReport {
    pub fn to_text(&self) -> String {
        let opt = |x: Option<f64>, p: usize| x.map_or("-".to_string(), |v| format!("{v:.p$e}"));
        let ord = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.3}"));
        let mut out = format!(
            "profile {}{}\n{:>8}  {:>12}  {:>7}  {:>12}  {:>7}\n",
            self.profile,
            self.theta.as_ref().map_or(String::new(), |t| format!(", theta {t}")),
            "n",
            "flat_error",
            "order",
            "fluct_error",
            "order"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>8}  {:>12}  {:>7}  {:>12}  {:>7}",
                r.n,
                format!("{:.4e}", r.flat_error),
                ord(r.order),
                opt(r.fluct_error, 4),
                ord(r.fluct_order)
            );
        }
        out
    }
}
