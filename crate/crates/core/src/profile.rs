//! Radial profiles: scalar functions of p = |p| used as deformation
//! coefficients. Profiles are small expression trees, closed under
//! differentiation, and evaluate at any scalar in the tower so dual-number
//! derivatives work through them. Quadrature- or ODE-defined profiles enter
//! as `custom` leaves carrying one registered analytic derivative level.

use crate::error::{Error, Result};
use crate::real::Real;
use std::fmt;
use std::sync::Arc;

/// Open-below momentum interval (0, upper]. `upper` may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub upper: f64,
}

impl Domain {
    pub fn unbounded() -> Self {
        Domain { upper: f64::INFINITY }
    }
    pub fn up_to(upper: f64) -> Self {
        Domain { upper }
    }
    pub fn contains(&self, p: f64) -> bool {
        p > 0.0 && p <= self.upper
    }
    pub fn intersect(&self, other: &Domain) -> Domain {
        Domain { upper: self.upper.min(other.upper) }
    }
}

pub struct CustomProfile {
    pub label: String,
    pub eval: Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>,
    pub deriv: Option<RadialProfile>,
}

enum Node {
    Const(f64),
    /// sum of c * p^k with integer k (negative powers allowed)
    Laurent(Vec<(i32, f64)>),
    /// sqrt(add + coef * p^2)
    SqrtAffineSq { add: f64, coef: f64 },
    Sum(Vec<RadialProfile>),
    Prod(RadialProfile, RadialProfile),
    Scale(f64, RadialProfile),
    Recip(RadialProfile),
    Custom(CustomProfile),
}

#[derive(Clone)]
pub struct RadialProfile {
    node: Arc<Node>,
    domain: Domain,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Const(c) => write!(f, "{c}"),
            Node::Laurent(t) => write!(f, "laurent{t:?}"),
            Node::SqrtAffineSq { add, coef } => write!(f, "sqrt({add} + {coef} p^2)"),
            Node::Sum(v) => write!(f, "sum({v:?})"),
            Node::Prod(a, b) => write!(f, "({a:?})*({b:?})"),
            Node::Scale(s, a) => write!(f, "{s}*({a:?})"),
            Node::Recip(a) => write!(f, "1/({a:?})"),
            Node::Custom(c) => write!(f, "<{}>", c.label),
        }
    }
}

impl RadialProfile {
    fn from_node(node: Node, domain: Domain) -> Self {
        RadialProfile { node: Arc::new(node), domain }
    }

    pub fn constant(v: f64) -> Self {
        Self::from_node(Node::Const(v), Domain::unbounded())
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// p itself.
    pub fn identity() -> Self {
        Self::laurent(vec![(1, 1.0)])
    }

    pub fn laurent(terms: Vec<(i32, f64)>) -> Self {
        Self::from_node(Node::Laurent(terms), Domain::unbounded())
    }

    /// c0 + c1 p + c2 p^2 + ...
    pub fn polynomial(coeffs: &[f64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| (k as i32, *c))
            .collect();
        Self::laurent(terms)
    }

    /// sqrt(add + coef p^2); the domain closes where the argument reaches zero.
    pub fn sqrt_affine_sq(add: f64, coef: f64) -> Result<Self> {
        if add <= 0.0 {
            return Err(Error::Parameter(format!(
                "sqrt profile needs a positive constant term, got {add}"
            )));
        }
        let domain = if coef < 0.0 {
            Domain::up_to((add / -coef).sqrt())
        } else {
            Domain::unbounded()
        };
        Ok(Self::from_node(Node::SqrtAffineSq { add, coef }, domain))
    }

    pub fn custom(
        label: impl Into<String>,
        eval: Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>,
        deriv: Option<RadialProfile>,
        domain: Domain,
    ) -> Self {
        Self::from_node(
            Node::Custom(CustomProfile { label: label.into(), eval, deriv }),
            domain,
        )
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn add(&self, other: &RadialProfile) -> RadialProfile {
        let d = self.domain.intersect(&other.domain);
        Self::from_node(Node::Sum(vec![self.clone(), other.clone()]), d)
    }

    pub fn sum(parts: Vec<RadialProfile>) -> RadialProfile {
        let d = parts
            .iter()
            .fold(Domain::unbounded(), |acc, p| acc.intersect(&p.domain));
        Self::from_node(Node::Sum(parts), d)
    }

    pub fn mul(&self, other: &RadialProfile) -> RadialProfile {
        let d = self.domain.intersect(&other.domain);
        Self::from_node(Node::Prod(self.clone(), other.clone()), d)
    }

    pub fn scale(&self, s: f64) -> RadialProfile {
        Self::from_node(Node::Scale(s, self.clone()), self.domain)
    }

    pub fn recip(&self) -> RadialProfile {
        Self::from_node(Node::Recip(self.clone()), self.domain)
    }

    /// Evaluate at any scalar in the tower; the domain check looks at the
    /// value part, so dual evaluation points inherit it.
    pub fn eval<T: Real>(&self, p: T) -> Result<T> {
        let v = p.value();
        if !v.is_finite() || !self.domain.contains(v) {
            return Err(Error::Domain(format!(
                "profile {:?} evaluated at p = {v}, outside (0, {}]",
                self, self.domain.upper
            )));
        }
        self.eval_unchecked(p)
    }

    fn eval_unchecked<T: Real>(&self, p: T) -> Result<T> {
        match &*self.node {
            Node::Const(c) => Ok(T::from_f64(*c)),
            Node::Laurent(terms) => {
                let mut acc = T::zero();
                for (k, c) in terms {
                    acc = acc + p.powi(*k) * T::from_f64(*c);
                }
                Ok(acc)
            }
            Node::SqrtAffineSq { add, coef } => {
                let arg = T::from_f64(*add) + p * p * T::from_f64(*coef);
                if arg.value() < 0.0 {
                    return Err(Error::Domain(format!(
                        "sqrt profile argument negative at p = {}",
                        p.value()
                    )));
                }
                Ok(arg.sqrt())
            }
            Node::Sum(parts) => {
                let mut acc = T::zero();
                for part in parts {
                    acc = acc + part.eval_unchecked(p)?;
                }
                Ok(acc)
            }
            Node::Prod(a, b) => Ok(a.eval_unchecked(p)? * b.eval_unchecked(p)?),
            Node::Scale(s, a) => Ok(a.eval_unchecked(p)? * T::from_f64(*s)),
            Node::Recip(a) => {
                let v = a.eval_unchecked(p)?;
                if v.value() == 0.0 {
                    return Err(Error::Domain(format!(
                        "profile reciprocal of zero at p = {}",
                        p.value()
                    )));
                }
                Ok(v.recip())
            }
            Node::Custom(c) => eval_custom(c, p),
        }
    }

    pub fn value(&self, p: f64) -> Result<f64> {
        self.eval::<f64>(p)
    }

    /// d/dp via one dual level; works through custom leaves that registered
    /// a derivative.
    pub fn slope(&self, p: f64) -> Result<f64> {
        Ok(self.eval(crate::real::Dual::variable(p))?.eps)
    }

    /// Structural derivative as a new profile. Custom leaves must carry one;
    /// going past their registered depth reports instead of guessing.
    pub fn derivative(&self) -> Result<RadialProfile> {
        let node = match &*self.node {
            Node::Const(_) => Node::Const(0.0),
            Node::Laurent(terms) => Node::Laurent(
                terms
                    .iter()
                    .filter(|(k, _)| *k != 0)
                    .map(|(k, c)| (k - 1, *k as f64 * c))
                    .collect(),
            ),
            Node::SqrtAffineSq { coef, .. } => {
                // d/dp sqrt(a + b p^2) = b p / sqrt(a + b p^2)
                return Ok(RadialProfile::laurent(vec![(1, *coef)]).mul(&self.recip()));
            }
            Node::Sum(parts) => {
                let mut ds = Vec::with_capacity(parts.len());
                for part in parts {
                    ds.push(part.derivative()?);
                }
                Node::Sum(ds)
            }
            Node::Prod(a, b) => {
                return Ok(a.derivative()?.mul(b).add(&a.mul(&b.derivative()?)));
            }
            Node::Scale(s, a) => return Ok(a.derivative()?.scale(*s)),
            Node::Recip(a) => {
                return Ok(a
                    .derivative()?
                    .mul(&a.mul(a).recip())
                    .scale(-1.0));
            }
            Node::Custom(c) => {
                return c.deriv.clone().ok_or_else(|| {
                    Error::DerivativeDepth(format!(
                        "profile <{}> has no registered derivative",
                        c.label
                    ))
                });
            }
        };
        Ok(RadialProfile { node: Arc::new(node), domain: self.domain })
    }
}

fn eval_custom<T: Real>(c: &CustomProfile, p: T) -> Result<T> {
    match p.split() {
        None => Ok(T::from_f64((c.eval)(p.value())?)),
        Some((re, eps)) => {
            let v = eval_custom::<T::Inner>(c, re)?;
            let dprof = c.deriv.as_ref().ok_or_else(|| {
                Error::DerivativeDepth(format!(
                    "profile <{}> differentiated past its registered depth",
                    c.label
                ))
            })?;
            let d = dprof.eval_unchecked::<T::Inner>(re)?;
            Ok(T::join(v, eps * d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn laurent_value_and_slope() {
        // f = 1 - 0.3 p + 0.09 p^2, f' = -0.3 + 0.18 p
        let f = RadialProfile::polynomial(&[1.0, -0.3, 0.09]);
        assert_relative_eq!(f.value(2.0).unwrap(), 1.0 - 0.6 + 0.36, max_relative = 1e-15);
        assert_relative_eq!(f.slope(2.0).unwrap(), -0.3 + 0.36, max_relative = 1e-15);
        // negative powers
        let g = RadialProfile::laurent(vec![(-1, -0.5), (0, 3.0)]);
        assert_relative_eq!(g.value(0.25).unwrap(), -2.0 + 3.0, max_relative = 1e-15);
        assert_relative_eq!(g.slope(0.25).unwrap(), 0.5 / 0.0625, max_relative = 1e-13);
    }

    #[test]
    fn sqrt_profile_closed_form() {
        let f = RadialProfile::sqrt_affine_sq(1.0, 1.0).unwrap();
        assert_relative_eq!(f.value(2.0).unwrap(), 5.0f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(
            f.slope(2.0).unwrap(),
            2.0 / 5.0f64.sqrt(),
            max_relative = 1e-14
        );
        // structural derivative agrees with the dual slope
        let fp = f.derivative().unwrap();
        assert_relative_eq!(fp.value(2.0).unwrap(), f.slope(2.0).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn shrinking_domain_detected() {
        let f = RadialProfile::sqrt_affine_sq(1.0, -1.0).unwrap();
        assert_relative_eq!(f.domain().upper, 1.0);
        assert!(f.value(0.999).is_ok());
        assert!(f.value(1.2).is_err());
        assert!(f.value(0.0).is_err());
        assert!(f.value(-0.5).is_err());
    }

    #[test]
    fn slope_matches_central_difference_at_second_order() {
        let f = RadialProfile::sqrt_affine_sq(1.0, 0.7).unwrap();
        let exact = f.slope(1.3).unwrap();
        let e1 = (central_diff(|x| f.value(x).unwrap(), 1.3, 1e-2) - exact).abs();
        let e2 = (central_diff(|x| f.value(x).unwrap(), 1.3, 5e-3) - exact).abs();
        // halving h shrinks the FD error ~4x
        let ratio = e1 / e2;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn custom_leaf_uses_registered_derivative_once() {
        // ln p as a custom leaf with derivative 1/p registered
        let f = RadialProfile::custom(
            "logp",
            Arc::new(|p| Ok(p.ln())),
            Some(RadialProfile::laurent(vec![(-1, 1.0)])),
            Domain::unbounded(),
        );
        assert_relative_eq!(f.value(2.0).unwrap(), 2.0f64.ln());
        assert_relative_eq!(f.slope(2.0).unwrap(), 0.5, max_relative = 1e-15);
        // second derivative still works because the registered derivative is
        // itself differentiable
        let d2 = f.derivative().unwrap().slope(2.0).unwrap();
        assert_relative_eq!(d2, -0.25, max_relative = 1e-15);

        // a custom leaf without a derivative reports depth exhaustion
        let bare = RadialProfile::custom(
            "opaque",
            Arc::new(|p| Ok(p * p)),
            None,
            Domain::unbounded(),
        );
        assert!(bare.value(1.0).is_ok());
        assert!(matches!(bare.slope(1.0), Err(Error::DerivativeDepth(_))));
        assert!(matches!(bare.derivative(), Err(Error::DerivativeDepth(_))));
    }

    #[test]
    fn product_and_recip_derivatives() {
        let f = RadialProfile::polynomial(&[1.0, 0.0, 0.2]);
        let g = RadialProfile::sqrt_affine_sq(2.0, 0.5).unwrap();
        let h = f.mul(&g).add(&g.recip());
        let p = 0.9;
        let exact = h.derivative().unwrap().value(p).unwrap();
        let fd = central_diff(|x| h.value(x).unwrap(), p, 1e-6);
        assert_relative_eq!(exact, fd, max_relative = 1e-7);
        assert_relative_eq!(exact, h.slope(p).unwrap(), max_relative = 1e-13);
    }
}
