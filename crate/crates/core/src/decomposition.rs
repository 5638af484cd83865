//! Splitting a fitted action-on-environment line into utility and norm lines.
//!
//! Measurements of the chosen action against an environment variable trace a
//! line `action ~ alpha * env + beta`. Under the crossing hypothesis the same
//! measurements are generated by an affine utility function and an affine
//! norm function of the action whose slopes themselves vary linearly with the
//! environment. Two thresholds identify the split: `eps_u0`, the environment
//! at which the utility slope vanishes (acting brings no further benefit),
//! and `eps_n0`, at which the norm slope vanishes (the constraint loses its
//! force). A free positive scale `lambda` fixes the value units.
//!
//! With the thresholds in hand the slope coefficients solve in closed form,
//! the utility line passes through the origin, and the norm line carries the
//! whole fitted intercept: `u(x) = a_u(eps) * x` and
//! `n(x) = a_n(eps) * x + lambda * (alpha * eps + beta)`. Their crossing at
//! any environment reproduces the fitted line, which is the self-consistency
//! every test here leans on. The difference `a_u - a_n` equals `lambda`
//! identically, so the crossing always exists.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::model::{xpoint, AffineFunction};
use crate::scalar::{to_f64, Real};

/// Ordinary-least-squares line of action on environment, with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit<T> {
    /// Slope, in action units per environment unit.
    pub alpha: T,
    /// Intercept, in action units.
    pub beta: T,
    /// Fraction of action variance the line explains, in `[0, 1]`.
    pub r_squared: T,
    /// Sum of squared residuals.
    pub residual_sse: T,
    /// Number of samples behind the fit; 0 marks coefficients taken as given.
    pub n_samples: usize,
}

impl<T: Real> LinearFit<T> {
    /// A line taken as exact, e.g. published coefficients with no raw data.
    pub fn exact(alpha: T, beta: T) -> Self {
        Self {
            alpha,
            beta,
            r_squared: T::one(),
            residual_sse: T::zero(),
            n_samples: 0,
        }
    }

    pub fn predict(&self, eps: T) -> T {
        self.alpha * eps + self.beta
    }
}

/// Least-squares fit of action on environment.
///
/// Needs at least two samples with at least two distinct environment values;
/// otherwise the slope is unidentifiable. By construction the residuals are
/// orthogonal to the constant and to the environment regressor.
pub fn fit_linear<T: Real>(dataset: &Dataset<T>) -> Result<LinearFit<T>> {
    let n = dataset.samples.len();
    if n < 2 {
        return Err(Error::InsufficientData { n });
    }
    for s in &dataset.samples {
        if !s.env.is_finite() {
            return Err(Error::NonFinite {
                name: "environment sample",
                value: to_f64(s.env),
            });
        }
        if !s.action.is_finite() {
            return Err(Error::NonFinite {
                name: "action sample",
                value: to_f64(s.action),
            });
        }
    }
    let first = dataset.samples[0].env;
    if dataset.samples.iter().all(|s| s.env == first) {
        return Err(Error::DegenerateDesign { n });
    }

    let count = T::from_usize(n).expect("sample count fits the scalar type");
    let mean_env = dataset.samples.iter().fold(T::zero(), |acc, s| acc + s.env) / count;
    let mean_action = dataset
        .samples
        .iter()
        .fold(T::zero(), |acc, s| acc + s.action)
        / count;

    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for s in &dataset.samples {
        let de = s.env - mean_env;
        sxx = sxx + de * de;
        sxy = sxy + de * (s.action - mean_action);
    }
    let alpha = sxy / sxx;
    let beta = mean_action - alpha * mean_env;

    let mut sse = T::zero();
    let mut sst = T::zero();
    for s in &dataset.samples {
        let r = s.action - (alpha * s.env + beta);
        sse = sse + r * r;
        let dy = s.action - mean_action;
        sst = sst + dy * dy;
    }
    let r_squared = if sst > T::zero() {
        (T::one() - sse / sst).max(T::zero()).min(T::one())
    } else {
        // constant actions: the flat line fits them exactly
        T::one()
    };

    Ok(LinearFit {
        alpha,
        beta,
        r_squared,
        residual_sse: sse,
        n_samples: n,
    })
}

/// The two identifying thresholds and the value scale.
///
/// `eps_u0` and `eps_n0` may come in either order; the algebra stays
/// sign-correct. They must differ, or the utility and norm shares of the
/// measured slope cannot be told apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraints<T> {
    eps_u0: T,
    eps_n0: T,
    lambda: T,
}

impl<T: Real> Constraints<T> {
    /// Thresholds with the scale at its conventional value of 1.
    pub fn new(eps_u0: T, eps_n0: T) -> Result<Self> {
        Self::with_lambda(eps_u0, eps_n0, T::one())
    }

    pub fn with_lambda(eps_u0: T, eps_n0: T, lambda: T) -> Result<Self> {
        for (name, v) in [
            ("utility threshold eps_u0", eps_u0),
            ("norm threshold eps_n0", eps_n0),
            ("scale lambda", lambda),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name,
                    value: to_f64(v),
                });
            }
        }
        if eps_u0 == eps_n0 {
            return Err(Error::IndistinguishableConstraints {
                eps: to_f64(eps_u0),
            });
        }
        if lambda <= T::zero() {
            return Err(Error::NonPositiveScale {
                lambda: to_f64(lambda),
            });
        }
        Ok(Self {
            eps_u0,
            eps_n0,
            lambda,
        })
    }

    /// Environment at which the utility slope vanishes.
    pub fn eps_u0(&self) -> T {
        self.eps_u0
    }

    /// Environment at which the norm slope vanishes.
    pub fn eps_n0(&self) -> T {
        self.eps_n0
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }
}

/// Environment-linear slope coefficients of the two lines:
/// `a_u(eps) = kappa_u * eps + lambda_u`, `a_n(eps) = kappa_n * eps + lambda_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet<T> {
    pub kappa_u: T,
    pub lambda_u: T,
    pub kappa_n: T,
    pub lambda_n: T,
    /// Intercept counterparts (`b_u`, `b_n` as lines in the environment).
    /// The measurement procedure identifies only their differences, never the
    /// individual values, so these stay unset unless supplied from elsewhere.
    pub intercepts: Option<InterceptCoefficients<T>>,
}

/// Individually unidentified intercept coefficients, carried for callers that
/// obtain them some other way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterceptCoefficients<T> {
    pub mu_u: T,
    pub nu_u: T,
    pub mu_n: T,
    pub nu_n: T,
}

impl<T: Real> CoefficientSet<T> {
    pub fn utility_slope_at(&self, eps: T) -> T {
        self.kappa_u * eps + self.lambda_u
    }

    pub fn norm_slope_at(&self, eps: T) -> T {
        self.kappa_n * eps + self.lambda_n
    }
}

/// Splits the measured slope differences into the four individual slope
/// coefficients.
///
/// `kappa` and `lambda` are the differences `kappa_u - kappa_n` and
/// `lambda_u - lambda_n` observed from the data; the zero-slope conditions
/// `a_u(eps_u0) = 0` and `a_n(eps_n0) = 0` close the system:
///
/// ```text
/// kappa_u = (kappa * eps_n0 + lambda) / (eps_n0 - eps_u0)    lambda_u = -eps_u0 * kappa_u
/// kappa_n = (kappa * eps_u0 + lambda) / (eps_n0 - eps_u0)    lambda_n = -eps_n0 * kappa_n
/// ```
///
/// The output reproduces the input differences and satisfies both zero
/// conditions exactly. The scale argument here is the measured difference;
/// [`decompose`] passes the constraints' own scale with `kappa = 0`.
pub fn solve_coefficients<T: Real>(
    kappa: T,
    lambda: T,
    constraints: &Constraints<T>,
) -> CoefficientSet<T> {
    let span = constraints.eps_n0() - constraints.eps_u0();
    let kappa_u = (kappa * constraints.eps_n0() + lambda) / span;
    let kappa_n = (kappa * constraints.eps_u0() + lambda) / span;
    CoefficientSet {
        kappa_u,
        lambda_u: -constraints.eps_u0() * kappa_u,
        kappa_n,
        lambda_n: -constraints.eps_n0() * kappa_n,
        intercepts: None,
    }
}

/// A fitted line together with the constraints and the solved coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition<T> {
    pub fit: LinearFit<T>,
    pub constraints: Constraints<T>,
    pub coefficients: CoefficientSet<T>,
}

/// Splits a fitted line into utility and norm lines under the given
/// constraints.
///
/// The measured line is straight, so the slope-difference coefficient against
/// the environment is zero and the intercept difference is the line itself.
/// After shifting the common origin, the utility line passes through the
/// origin and the norm line carries the whole intercept
/// `lambda * alpha * eps + lambda * beta`.
pub fn decompose<T: Real>(
    fit: &LinearFit<T>,
    constraints: &Constraints<T>,
) -> Result<Decomposition<T>> {
    for (name, v) in [
        ("fitted slope alpha", fit.alpha),
        ("fitted intercept beta", fit.beta),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                name,
                value: to_f64(v),
            });
        }
    }
    Ok(Decomposition {
        fit: *fit,
        constraints: *constraints,
        coefficients: solve_coefficients(T::zero(), constraints.lambda(), constraints),
    })
}

impl<T: Real> Decomposition<T> {
    /// The utility/norm line pair at one environment value.
    pub fn affine_at(&self, eps: T) -> (AffineFunction<T>, AffineFunction<T>) {
        let lambda = self.constraints.lambda();
        let utility = AffineFunction {
            slope: self.coefficients.utility_slope_at(eps),
            intercept: T::zero(),
        };
        let norm = AffineFunction {
            slope: self.coefficients.norm_slope_at(eps),
            intercept: lambda * self.fit.alpha * eps + lambda * self.fit.beta,
        };
        (utility, norm)
    }

    /// Action selected at `eps`: the crossing of the pair from
    /// [`affine_at`](Self::affine_at). Coincides with the fitted line.
    pub fn predicted_action(&self, eps: T) -> T {
        let (u, n) = self.affine_at(eps);
        // the slope gap equals lambda > 0; it can only collapse through float
        // cancellation at extreme magnitudes, where the fitted line is the
        // same quantity by algebra
        xpoint(&u, &n).unwrap_or_else(|_| self.fit.predict(eps))
    }
}
