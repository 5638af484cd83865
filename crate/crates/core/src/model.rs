//! Evaluation primitives for the choice model.
//!
//! Three ingredients: expected utility over discrete lotteries, affine
//! utility/norm line pairs whose crossing point selects the action, and a
//! nonlinear value-maximisation model solved through its first-order
//! condition. Everything here is a pure function of immutable inputs.

use crate::error::{Error, Result};
use crate::scalar::{real, to_f64, Real};
use crate::tol;

/// One branch of a discrete lottery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome<T> {
    pub probability: T,
    pub utility: T,
}

/// A discrete lottery over outcomes. Probabilities must form a distribution:
/// each in `[0, 1]`, summing to 1 within [`tol::PROBABILITY_SUM`].
#[derive(Debug, Clone, PartialEq)]
pub struct Lottery<T> {
    outcomes: Vec<Outcome<T>>,
}

impl<T: Real> Lottery<T> {
    pub fn new(outcomes: Vec<Outcome<T>>) -> Result<Self> {
        let mut sum = T::zero();
        for o in &outcomes {
            if !o.probability.is_finite() {
                return Err(Error::NonFinite {
                    name: "probability",
                    value: to_f64(o.probability),
                });
            }
            if !o.utility.is_finite() {
                return Err(Error::NonFinite {
                    name: "outcome utility",
                    value: to_f64(o.utility),
                });
            }
            if o.probability < T::zero() || o.probability > T::one() {
                return Err(Error::ProbabilityOutOfRange {
                    probability: to_f64(o.probability),
                });
            }
            sum = sum + o.probability;
        }
        if (sum - T::one()).abs() > real::<T>(tol::PROBABILITY_SUM) {
            return Err(Error::InvalidLottery {
                sum: to_f64(sum),
                tolerance: tol::PROBABILITY_SUM,
            });
        }
        Ok(Self { outcomes })
    }

    pub fn from_pairs(pairs: &[(T, T)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(probability, utility)| Outcome {
                    probability,
                    utility,
                })
                .collect(),
        )
    }

    pub fn outcomes(&self) -> &[Outcome<T>] {
        &self.outcomes
    }

    /// Probability-weighted sum of the outcome utilities.
    pub fn expected_utility(&self) -> T {
        self.outcomes
            .iter()
            .fold(T::zero(), |acc, o| acc + o.probability * o.utility)
    }
}

/// A line `slope * x + intercept` on a common value scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineFunction<T> {
    pub slope: T,
    pub intercept: T,
}

impl<T: Real> AffineFunction<T> {
    pub fn new(slope: T, intercept: T) -> Result<Self> {
        if !slope.is_finite() {
            return Err(Error::NonFinite {
                name: "slope",
                value: to_f64(slope),
            });
        }
        if !intercept.is_finite() {
            return Err(Error::NonFinite {
                name: "intercept",
                value: to_f64(intercept),
            });
        }
        Ok(Self { slope, intercept })
    }

    pub fn eval(&self, x: T) -> T {
        self.slope * x + self.intercept
    }
}

/// Pointwise sum of the utility and norm lines at `x`.
pub fn value_sum<T: Real>(u: &AffineFunction<T>, n: &AffineFunction<T>, x: T) -> T {
    u.eval(x) + n.eval(x)
}

/// Crossing point of the utility and norm lines: the action at which the two
/// values balance, `x = -(b_u - b_n) / (a_u - a_n)`.
///
/// Symmetric in its arguments. Errors with [`Error::ParallelLines`] when the
/// slopes coincide (no crossing, or infinitely many).
pub fn xpoint<T: Real>(u: &AffineFunction<T>, n: &AffineFunction<T>) -> Result<T> {
    if u.slope == n.slope {
        return Err(Error::ParallelLines {
            slope: to_f64(u.slope),
        });
    }
    Ok(-(u.intercept - n.intercept) / (u.slope - n.slope))
}

/// Utility, norm, and their sum at one action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueParts<T> {
    pub utility: T,
    pub norm: T,
    pub value: T,
}

/// Result of maximising the nonlinear value function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Argmax<T> {
    /// Action at which the value derivative changes sign.
    pub action: T,
    /// First-order condition evaluated at `action` (signed, unscaled).
    pub foc_residual: T,
    /// Bracket the bisection searched.
    pub bracket: (T, T),
}

/// Concave benefit `x^utility_exponent` plus a power-law constraint term,
/// maximised over a bounded action domain.
///
/// The constraint term is `-sign(x - shift) * |x - shift|^norm_exponent + offset`:
/// the real-valued continuation of `-(x - shift)^norm_exponent + offset` that
/// stays defined on both sides of the shift point for fractional exponents and
/// passes through `offset` at the shift point. Above the shift the two forms
/// coincide, which is the branch the maximiser works on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearChoiceModel<T> {
    utility_exponent: T,
    norm_exponent: T,
    norm_shift: T,
    norm_offset: T,
    lower: T,
    upper: T,
}

impl<T: Real> NonlinearChoiceModel<T> {
    /// Requires `0 < utility_exponent < 1` (diminishing benefit),
    /// `norm_exponent > 1` (accelerating constraint), and an action domain
    /// `0 <= lower < upper`.
    pub fn new(
        utility_exponent: T,
        norm_exponent: T,
        norm_shift: T,
        norm_offset: T,
        lower: T,
        upper: T,
    ) -> Result<Self> {
        for (name, v) in [
            ("utility exponent", utility_exponent),
            ("norm exponent", norm_exponent),
            ("norm shift", norm_shift),
            ("norm offset", norm_offset),
            ("domain lower bound", lower),
            ("domain upper bound", upper),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name,
                    value: to_f64(v),
                });
            }
        }
        if !(utility_exponent > T::zero() && utility_exponent < T::one()) {
            return Err(Error::InvalidChoiceModel {
                reason: format!("utility exponent must lie in (0, 1), got {utility_exponent}"),
            });
        }
        if norm_exponent <= T::one() {
            return Err(Error::InvalidChoiceModel {
                reason: format!("norm exponent must exceed 1, got {norm_exponent}"),
            });
        }
        if lower < T::zero() {
            return Err(Error::InvalidChoiceModel {
                reason: format!("domain lower bound must be non-negative, got {lower}"),
            });
        }
        if lower >= upper {
            return Err(Error::InvalidChoiceModel {
                reason: format!("domain must satisfy lower < upper, got [{lower}, {upper}]"),
            });
        }
        Ok(Self {
            utility_exponent,
            norm_exponent,
            norm_shift,
            norm_offset,
            lower,
            upper,
        })
    }

    pub fn utility_exponent(&self) -> T {
        self.utility_exponent
    }

    pub fn norm_exponent(&self) -> T {
        self.norm_exponent
    }

    pub fn norm_shift(&self) -> T {
        self.norm_shift
    }

    pub fn norm_offset(&self) -> T {
        self.norm_offset
    }

    pub fn domain(&self) -> (T, T) {
        (self.lower, self.upper)
    }

    /// Same model with a different norm offset; the maximiser is invariant to
    /// this, which tests exploit.
    pub fn with_norm_offset(mut self, norm_offset: T) -> Self {
        self.norm_offset = norm_offset;
        self
    }

    /// Utility, norm, and value at `x`. Errors when `x` leaves the domain.
    pub fn evaluate(&self, x: T) -> Result<ValueParts<T>> {
        if !(x >= self.lower && x <= self.upper) {
            return Err(Error::OutsideDomain {
                x: to_f64(x),
                lower: to_f64(self.lower),
                upper: to_f64(self.upper),
            });
        }
        let utility = x.powf(self.utility_exponent);
        let d = x - self.norm_shift;
        let norm = -d.signum() * d.abs().powf(self.norm_exponent) + self.norm_offset;
        Ok(ValueParts {
            utility,
            norm,
            value: utility + norm,
        })
    }

    /// Derivative of the value function above the norm shift.
    fn foc(&self, x: T) -> T {
        self.utility_exponent * x.powf(self.utility_exponent - T::one())
            - self.norm_exponent * (x - self.norm_shift).powf(self.norm_exponent - T::one())
    }

    /// Maximises the value function by bracketing bisection on the
    /// first-order condition.
    ///
    /// The derivative is singular at zero and at the norm shift, so the
    /// bracket starts at `max(shift, lower) + `[`tol::BRACKET_NUDGE`]. When the
    /// condition keeps one sign over the bracket there is no interior maximum
    /// and the caller should compare the endpoints instead. The norm offset
    /// never enters the derivative, so the result is bit-identical under
    /// offset shifts.
    pub fn argmax_value(&self) -> Result<Argmax<T>> {
        let lo0 = self.norm_shift.max(self.lower) + real::<T>(tol::BRACKET_NUDGE);
        let hi0 = self.upper;
        if lo0 >= hi0 {
            return Err(Error::NoInteriorMaximum {
                lower: to_f64(lo0),
                upper: to_f64(hi0),
            });
        }
        let finish = |action: T| Argmax {
            action,
            foc_residual: self.foc(action),
            bracket: (lo0, hi0),
        };
        let mut lo = lo0;
        let mut hi = hi0;
        let mut f_lo = self.foc(lo);
        let f_hi = self.foc(hi);
        if f_lo == T::zero() {
            return Ok(finish(lo));
        }
        if f_hi == T::zero() {
            return Ok(finish(hi));
        }
        if f_lo.signum() == f_hi.signum() {
            return Err(Error::NoInteriorMaximum {
                lower: to_f64(lo0),
                upper: to_f64(hi0),
            });
        }
        let half = real::<T>(0.5);
        let width_cap = real::<T>(tol::BISECT_WIDTH);
        for _ in 0..tol::BISECT_MAX_ITER {
            let mid = (lo + hi) * half;
            if mid <= lo || mid >= hi {
                break; // scalar resolution exhausted
            }
            let f_mid = self.foc(mid);
            if f_mid == T::zero() {
                return Ok(finish(mid));
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
            if hi - lo <= width_cap {
                break;
            }
        }
        Ok(finish((lo + hi) * half))
    }
}
