//! Scalar fields over 3-momentum. Like profiles these are expression trees;
//! partial-derivative nodes evaluate by widening the scalar one dual level,
//! which keeps every derivative exact to roundoff. The zero vector is outside
//! every field's domain once a radial leaf is involved, since the radial
//! chain rule needs p > 0.

use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use crate::real::{at_depth_cap, Dual, Real};
use std::fmt;
use std::sync::Arc;

enum FNode {
    Const(f64),
    Coord(usize),
    Radius,
    Radial(RadialProfile),
    Sum(Vec<ScalarField>),
    Prod(ScalarField, ScalarField),
    Scale(f64, ScalarField),
    Recip(ScalarField),
    Partial(ScalarField, usize),
}

#[derive(Clone)]
pub struct ScalarField {
    node: Arc<FNode>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            FNode::Const(c) => write!(f, "{c}"),
            FNode::Coord(i) => write!(f, "p{}", i + 1),
            FNode::Radius => write!(f, "|p|"),
            FNode::Radial(r) => write!(f, "{r:?}"),
            FNode::Sum(v) => {
                write!(f, "(")?;
                for (k, s) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{s:?}")?;
                }
                write!(f, ")")
            }
            FNode::Prod(a, b) => write!(f, "{a:?}*{b:?}"),
            FNode::Scale(s, a) => write!(f, "{s}*{a:?}"),
            FNode::Recip(a) => write!(f, "1/({a:?})"),
            FNode::Partial(a, i) => write!(f, "d{}[{a:?}]", i + 1),
        }
    }
}

impl ScalarField {
    fn from_node(node: FNode) -> Self {
        ScalarField { node: Arc::new(node) }
    }

    pub fn constant(v: f64) -> Self {
        Self::from_node(FNode::Const(v))
    }
    pub fn zero() -> Self {
        Self::constant(0.0)
    }
    pub fn one() -> Self {
        Self::constant(1.0)
    }
    /// Momentum component p_i (0-based index).
    pub fn coord(i: usize) -> Self {
        assert!(i < 3, "coordinate index out of range");
        Self::from_node(FNode::Coord(i))
    }
    pub fn radius() -> Self {
        Self::from_node(FNode::Radius)
    }

    pub fn is_const_zero(&self) -> bool {
        matches!(&*self.node, FNode::Const(c) if *c == 0.0)
    }
    fn const_value(&self) -> Option<f64> {
        match &*self.node {
            FNode::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn add(&self, other: &ScalarField) -> ScalarField {
        if self.is_const_zero() {
            return other.clone();
        }
        if other.is_const_zero() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.const_value(), other.const_value()) {
            return ScalarField::constant(a + b);
        }
        Self::from_node(FNode::Sum(vec![self.clone(), other.clone()]))
    }

    pub fn mul(&self, other: &ScalarField) -> ScalarField {
        if self.is_const_zero() || other.is_const_zero() {
            return ScalarField::zero();
        }
        if let Some(a) = self.const_value() {
            if a == 1.0 {
                return other.clone();
            }
            return other.scale(a);
        }
        if let Some(b) = other.const_value() {
            if b == 1.0 {
                return self.clone();
            }
            return self.scale(b);
        }
        Self::from_node(FNode::Prod(self.clone(), other.clone()))
    }

    pub fn scale(&self, s: f64) -> ScalarField {
        if s == 0.0 || self.is_const_zero() {
            return ScalarField::zero();
        }
        if s == 1.0 {
            return self.clone();
        }
        if let Some(a) = self.const_value() {
            return ScalarField::constant(s * a);
        }
        Self::from_node(FNode::Scale(s, self.clone()))
    }

    pub fn neg(&self) -> ScalarField {
        self.scale(-1.0)
    }

    pub fn recip(&self) -> ScalarField {
        Self::from_node(FNode::Recip(self.clone()))
    }

    /// Exact partial derivative d/dp_i as a new field.
    pub fn partial(&self, i: usize) -> ScalarField {
        assert!(i < 3, "coordinate index out of range");
        match &*self.node {
            FNode::Const(_) => ScalarField::zero(),
            FNode::Coord(j) => ScalarField::constant(if *j == i { 1.0 } else { 0.0 }),
            FNode::Scale(s, a) => a.partial(i).scale(*s),
            FNode::Sum(parts) => parts
                .iter()
                .fold(ScalarField::zero(), |acc, part| acc.add(&part.partial(i))),
            _ => Self::from_node(FNode::Partial(self.clone(), i)),
        }
    }

    pub fn eval<T: Real>(&self, p: [T; 3]) -> Result<T> {
        match &*self.node {
            FNode::Const(c) => Ok(T::from_f64(*c)),
            FNode::Coord(i) => Ok(p[*i]),
            FNode::Radius => radius(p),
            FNode::Radial(prof) => prof.eval(radius(p)?),
            FNode::Sum(parts) => {
                let mut acc = T::zero();
                for part in parts {
                    acc = acc + part.eval(p)?;
                }
                Ok(acc)
            }
            FNode::Prod(a, b) => Ok(a.eval(p)? * b.eval(p)?),
            FNode::Scale(s, a) => Ok(a.eval(p)? * T::from_f64(*s)),
            FNode::Recip(a) => {
                let v = a.eval(p)?;
                if v.value() == 0.0 {
                    return Err(Error::Domain("field reciprocal of zero".into()));
                }
                Ok(v.recip())
            }
            FNode::Partial(f, i) => {
                if at_depth_cap::<T>() {
                    return Err(Error::DerivativeDepth(format!(
                        "field {self:?} needs more than {} derivative levels",
                        T::LEVEL
                    )));
                }
                let mut q = [p[0].widen(), p[1].widen(), p[2].widen()];
                q[*i] = p[*i].widen_var();
                Ok(T::narrow_eps(f.eval(q)?))
            }
        }
    }

    pub fn value(&self, p: [f64; 3]) -> Result<f64> {
        self.eval::<f64>(p)
    }

    pub fn grad(&self, p: [f64; 3]) -> Result<[f64; 3]> {
        let mut g = [0.0; 3];
        for (i, gi) in g.iter_mut().enumerate() {
            let mut q = [Dual::constant(p[0]), Dual::constant(p[1]), Dual::constant(p[2])];
            q[i] = Dual::variable(p[i]);
            *gi = self.eval(q)?.eps;
        }
        Ok(g)
    }

    pub fn hessian(&self, p: [f64; 3]) -> Result<[[f64; 3]; 3]> {
        let mut h = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut q = [
                    Dual::constant(Dual::constant(p[0])),
                    Dual::constant(Dual::constant(p[1])),
                    Dual::constant(Dual::constant(p[2])),
                ];
                for (k, qk) in q.iter_mut().enumerate() {
                    let inner = Dual::new(p[k], if k == j { 1.0 } else { 0.0 });
                    let eps = Dual::new(if k == i { 1.0 } else { 0.0 }, 0.0);
                    *qk = Dual::new(inner, eps);
                }
                h[i][j] = self.eval(q)?.eps.eps;
            }
        }
        Ok(h)
    }
}

fn radius<T: Real>(p: [T; 3]) -> Result<T> {
    let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    if r2.value() <= 0.0 {
        return Err(Error::Domain(
            "radial field evaluated at zero momentum".into(),
        ));
    }
    Ok(r2.sqrt())
}

/// Promote a profile F(p) to the field F(|p|).
pub fn lift_radial(prof: &RadialProfile) -> ScalarField {
    ScalarField::from_node(FNode::Radial(prof.clone()))
}
