//! Model parameters and the constant coexistence equilibrium.
//!
//! The governing system on the interval (0, ell*pi), with no-flux boundaries,
//! is
//!
//! ```text
//! u_t = d1 u_xx + u (1 - (beta/(ell pi)) \int_0^{ell pi} u dy) - b u v/(u+1)
//! v_t = d2 v_xx + c v (1 - v/u)
//! ```
//!
//! where the prey's logistic competition acts through the spatial average of
//! u rather than its pointwise value. This nondimensional form is obtained
//! from raw rates by the rescaling implemented in
//! [`RawParams::nondimensionalize`]. The system has a unique constant
//! positive equilibrium (lambda, lambda) with lambda in (0, 1/beta) solving
//! `(1 - beta*lambda)(1 + lambda) = b*lambda`; lambda and b are equivalent
//! parametrizations and lambda is used as the canonical bifurcation parameter
//! throughout the crate.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dimensional rates of the unscaled model.
///
/// `a`, `c`: intrinsic growth rates of prey and predator; `k`: prey carrying
/// capacity; `b`, `e`: predation interaction strengths; `m`: evasion
/// parameter; `d1`, `d2`: diffusion rates; `domain_length`: spatial scale ell
/// of the nondimensional domain (0, ell*pi), carried through unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: f64,
    pub k: f64,
    pub m: f64,
    pub d1: f64,
    pub d2: f64,
    pub domain_length: f64,
}

impl RawParams {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("e", self.e),
            ("k", self.k),
            ("m", self.m),
            ("d1", self.d1),
            ("d2", self.d2),
            ("domain_length", self.domain_length),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(name, v, "(0, inf)"));
            }
        }
        Ok(())
    }

    /// Maps raw rates to the nondimensional parameter set:
    /// beta = m/k, b = b/(a e), c = c/a, d1 = d1/a, d2 = d2/a.
    pub fn nondimensionalize(&self) -> Result<ModelParams> {
        self.validate()?;
        ModelParams::new(
            self.d1 / self.a,
            self.d2 / self.a,
            self.m / self.k,
            self.b / (self.a * self.e),
            self.c / self.a,
            self.domain_length,
        )
    }
}

/// The six nondimensional parameters of the scaled system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    /// Prey diffusion rate.
    pub d1: f64,
    /// Predator diffusion rate.
    pub d2: f64,
    /// Nonlocal competition strength.
    pub beta: f64,
    /// Predation parameter (the bifurcation parameter in b-coordinates).
    pub b: f64,
    /// Predator growth rate.
    pub c: f64,
    /// Spatial scale; the domain is (0, ell*pi).
    pub ell: f64,
}

impl ModelParams {
    pub fn new(d1: f64, d2: f64, beta: f64, b: f64, c: f64, ell: f64) -> Result<Self> {
        let p = ModelParams { d1, d2, beta, b, c, ell };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("d1", self.d1),
            ("d2", self.d2),
            ("beta", self.beta),
            ("b", self.b),
            ("c", self.c),
            ("ell", self.ell),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(name, v, "(0, inf)"));
            }
        }
        Ok(())
    }

    /// Upper end of the admissible equilibrium range (0, 1/beta).
    pub fn lambda_max(&self) -> f64 {
        1.0 / self.beta
    }

    /// Same parameters with a different predation rate b.
    pub fn with_b(&self, b: f64) -> Result<Self> {
        ModelParams::new(self.d1, self.d2, self.beta, b, self.c, self.ell)
    }

    /// Same parameters with a different spatial scale ell.
    pub fn with_ell(&self, ell: f64) -> Result<Self> {
        ModelParams::new(self.d1, self.d2, self.beta, self.b, self.c, ell)
    }

    /// The unique constant coexistence equilibrium for this b.
    pub fn equilibrium(&self) -> Result<Equilibrium> {
        equilibrium_from_b(self)
    }
}

/// The constant coexistence state (lambda, lambda).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    /// Value in (0, 1/beta) with `(1 - beta*lambda)(1 + lambda) = b*lambda`.
    pub lambda: f64,
}

/// Solves `(1 - beta*lambda)(1 + lambda) = b*lambda` for the unique positive
/// root.
///
/// The defining relation rearranges to the quadratic
/// `beta*lambda^2 + (beta - 1 + b)*lambda - 1 = 0`, whose roots have product
/// -1/beta < 0; the positive one is computed in the cancellation-free form
/// `2/(B + sqrt(B^2 + 4 beta))` with `B = beta - 1 + b`.
pub fn equilibrium_from_b(params: &ModelParams) -> Result<Equilibrium> {
    params.validate()?;
    let big_b = params.beta - 1.0 + params.b;
    let lambda = 2.0 / (big_b + (big_b * big_b + 4.0 * params.beta).sqrt());
    Ok(Equilibrium { lambda })
}

/// The predation rate b for which (lambda, lambda) is the equilibrium:
/// `b = (1 - beta*lambda)(1 + lambda)/lambda`, strictly decreasing on
/// (0, 1/beta).
pub fn b_from_lambda(beta: f64, lambda: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain("beta", beta, "(0, inf)"));
    }
    check_lambda(lambda, beta)?;
    Ok((1.0 - beta * lambda) * (1.0 + lambda) / lambda)
}

/// Validates lambda in the open interval (0, 1/beta).
pub(crate) fn check_lambda(lambda: f64, beta: f64) -> Result<()> {
    if !lambda.is_finite() || lambda <= 0.0 || lambda >= 1.0 / beta {
        return Err(Error::domain(
            "lambda",
            lambda,
            format!("(0, {})", 1.0 / beta),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(beta: f64, b: f64) -> ModelParams {
        ModelParams::new(1.0, 1.0, beta, b, 1.0, 1.0).unwrap()
    }

    #[test]
    fn nondimensionalize_unit_rates_is_identity() {
        let raw = RawParams {
            a: 1.0,
            b: 1.0,
            c: 1.0,
            e: 1.0,
            k: 1.0,
            m: 1.0,
            d1: 1.0,
            d2: 1.0,
            domain_length: 1.0,
        };
        let p = raw.nondimensionalize().unwrap();
        assert_eq!((p.beta, p.b, p.c, p.d1, p.d2, p.ell), (1.0, 1.0, 1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn nondimensionalize_hand_arithmetic() {
        let raw = RawParams {
            a: 2.0,
            b: 4.0,
            c: 0.2,
            e: 1.0,
            k: 10.0,
            m: 15.0,
            d1: 1.6,
            d2: 2.0,
            domain_length: 10.0,
        };
        let p = raw.nondimensionalize().unwrap();
        assert_eq!(p.beta, 1.5);
        assert_eq!(p.b, 2.0);
        assert_eq!(p.c, 0.1);
        assert_eq!(p.d1, 0.8);
        assert_eq!(p.d2, 1.0);
        assert_eq!(p.ell, 10.0);
    }

    #[test]
    fn nondimensionalize_rejects_nonpositive() {
        let raw = RawParams {
            a: 0.0,
            b: 1.0,
            c: 1.0,
            e: 1.0,
            k: 1.0,
            m: 1.0,
            d1: 1.0,
            d2: 1.0,
            domain_length: 1.0,
        };
        assert!(matches!(raw.nondimensionalize(), Err(Error::Domain { .. })));
    }

    #[test]
    fn equilibrium_exact_case() {
        // (1 - 0.5)(1 + 1) = 1 exactly.
        let eq = equilibrium_from_b(&params(0.5, 1.0)).unwrap();
        assert!((eq.lambda - 1.0).abs() < 1e-14);
    }

    #[test]
    fn equilibrium_residual_is_small() {
        for &(beta, b) in &[(1.5, 1.0296), (0.2, 4.4785), (0.7, 0.013), (2.5, 40.0)] {
            let eq = equilibrium_from_b(&params(beta, b)).unwrap();
            let l = eq.lambda;
            let residual = (1.0 - beta * l) * (1.0 + l) - b * l;
            assert!(residual.abs() <= 1e-12, "residual {residual} at beta={beta} b={b}");
            assert!(l > 0.0 && l < 1.0 / beta);
        }
    }

    #[test]
    fn example_limit_lambdas() {
        // b values matching the two worked examples' limiting Hopf lambdas.
        let eq = equilibrium_from_b(&params(1.5, 1.0296)).unwrap();
        assert!((eq.lambda - 0.4528).abs() < 5e-4);
        let eq = equilibrium_from_b(&params(0.2, 4.4785)).unwrap();
        assert!((eq.lambda - 0.2679).abs() < 5e-4);
    }

    #[test]
    fn b_from_lambda_examples() {
        assert!((b_from_lambda(1.5, 0.4528).unwrap() - 1.0296).abs() < 5e-4);
        assert!((b_from_lambda(0.2, 3.7321).unwrap() - 0.3215).abs() < 5e-4);
        assert!((b_from_lambda(0.5, 1.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn b_from_lambda_domain_errors() {
        assert!(b_from_lambda(0.5, 0.0).is_err());
        assert!(b_from_lambda(0.5, 2.0).is_err());
        assert!(b_from_lambda(0.5, -0.1).is_err());
    }

    #[test]
    fn b_from_lambda_strictly_decreasing() {
        let beta = 0.8;
        let mut prev = f64::INFINITY;
        for i in 1..400 {
            let lambda = i as f64 / 400.0 * (1.0 / beta);
            if lambda >= 1.0 / beta {
                break;
            }
            let b = b_from_lambda(beta, lambda).unwrap();
            assert!(b < prev, "not decreasing at lambda={lambda}");
            prev = b;
        }
    }
}
