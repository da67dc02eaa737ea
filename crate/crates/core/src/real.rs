//! Scalar tower: a `Real` trait for everything the workbench evaluates, plus
//! forward-mode dual numbers that nest to give exact higher derivatives.
//!
//! Derivatives are taken by evaluating the same generic code at a widened
//! type: `widen_var` seeds d/dx = 1, `narrow_eps` reads the derivative back.
//! The widening chain is finite (four levels over each base float); fourth
//! derivatives are the deepest anything here needs, and code that would go
//! past the cap checks `at_depth_cap` and reports instead of recursing.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Clone
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Same value domain with one more derivative slot. At the cap this is
    /// `Self`; check `at_depth_cap` before widening.
    type Wider: Real;
    /// One fewer derivative slot; `Self` at the base.
    type Inner: Real;

    const LEVEL: u8;

    fn from_f64(v: f64) -> Self;
    /// Real part all the way down.
    fn value(self) -> f64;

    fn widen(self) -> Self::Wider;
    fn widen_var(self) -> Self::Wider;
    fn narrow_eps(w: Self::Wider) -> Self;

    /// `None` for base floats, `Some((re, eps))` for duals.
    fn split(self) -> Option<(Self::Inner, Self::Inner)>;
    fn join(re: Self::Inner, eps: Self::Inner) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn recip(self) -> Self;
    fn sqrt(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn asin(self) -> Self;
    fn asinh(self) -> Self;
}

/// True when `T` cannot be widened further.
pub fn at_depth_cap<T: Real>() -> bool {
    T::LEVEL == <T::Wider as Real>::LEVEL
}

/// Forward-mode dual number: value plus one derivative slot.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }
    pub fn constant(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }
    pub fn variable(re: T) -> Self {
        Dual { re, eps: T::one() }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}
impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}
impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}
impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.re.recip();
        Dual::new(
            self.re * inv,
            (self.eps - self.re * inv * o.eps) * inv,
        )
    }
}
impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

macro_rules! impl_real_base {
    ($t:ty, $wider:ty) => {
        impl Real for $t {
            type Wider = $wider;
            type Inner = $t;
            const LEVEL: u8 = 0;

            fn from_f64(v: f64) -> Self {
                v as $t
            }
            fn value(self) -> f64 {
                self as f64
            }
            fn widen(self) -> Self::Wider {
                Dual::constant(self)
            }
            fn widen_var(self) -> Self::Wider {
                Dual::variable(self)
            }
            fn narrow_eps(w: Self::Wider) -> Self {
                w.eps
            }
            fn split(self) -> Option<(Self, Self)> {
                None
            }
            fn join(re: Self, _eps: Self) -> Self {
                re
            }

            fn recip(self) -> Self {
                <$t>::recip(self)
            }
            fn sqrt(self) -> Self {
                num_traits::Float::sqrt(self)
            }
            fn powi(self, n: i32) -> Self {
                num_traits::Float::powi(self, n)
            }
            fn sin(self) -> Self {
                num_traits::Float::sin(self)
            }
            fn cos(self) -> Self {
                num_traits::Float::cos(self)
            }
            fn sinh(self) -> Self {
                num_traits::Float::sinh(self)
            }
            fn cosh(self) -> Self {
                num_traits::Float::cosh(self)
            }
            fn exp(self) -> Self {
                num_traits::Float::exp(self)
            }
            fn ln(self) -> Self {
                num_traits::Float::ln(self)
            }
            fn asin(self) -> Self {
                num_traits::Float::asin(self)
            }
            fn asinh(self) -> Self {
                num_traits::Float::asinh(self)
            }
        }
    };
}

macro_rules! impl_real_dual {
    ($t:ty, $inner:ty, $wider:ty, $level:expr, widen) => {
        impl_real_dual!(@body $t, $inner, $wider, $level,
            fn widen(self) -> Self::Wider {
                Dual::constant(self)
            }
            fn widen_var(self) -> Self::Wider {
                Dual::variable(self)
            }
            fn narrow_eps(w: Self::Wider) -> Self {
                w.eps
            }
        );
    };
    // terminal level: Wider = Self; `at_depth_cap` guards every widening
    // site, so reaching these is a logic error worth a loud stop
    ($t:ty, $inner:ty, $wider:ty, $level:expr, capped) => {
        impl_real_dual!(@body $t, $inner, $wider, $level,
            fn widen(self) -> Self::Wider {
                panic!("scalar tower depth cap reached while widening")
            }
            fn widen_var(self) -> Self::Wider {
                panic!("scalar tower depth cap reached while widening")
            }
            fn narrow_eps(_w: Self::Wider) -> Self {
                panic!("scalar tower depth cap reached while narrowing")
            }
        );
    };
    (@body $t:ty, $inner:ty, $wider:ty, $level:expr, $($widenfns:item)*) => {
        impl Real for $t {
            type Wider = $wider;
            type Inner = $inner;
            const LEVEL: u8 = $level;

            fn from_f64(v: f64) -> Self {
                Dual::constant(<$inner>::from_f64(v))
            }
            fn value(self) -> f64 {
                self.re.value()
            }
            $($widenfns)*
            fn split(self) -> Option<($inner, $inner)> {
                Some((self.re, self.eps))
            }
            fn join(re: $inner, eps: $inner) -> Self {
                Dual::new(re, eps)
            }

            fn recip(self) -> Self {
                let inv = self.re.recip();
                Dual::new(inv, -(inv * inv) * self.eps)
            }
            fn sqrt(self) -> Self {
                let s = self.re.sqrt();
                Dual::new(s, self.eps / (s + s))
            }
            fn powi(self, n: i32) -> Self {
                let d = <$inner>::from_f64(n as f64) * self.re.powi(n - 1);
                Dual::new(self.re.powi(n), self.eps * d)
            }
            fn sin(self) -> Self {
                Dual::new(self.re.sin(), self.eps * self.re.cos())
            }
            fn cos(self) -> Self {
                Dual::new(self.re.cos(), -(self.eps * self.re.sin()))
            }
            fn sinh(self) -> Self {
                Dual::new(self.re.sinh(), self.eps * self.re.cosh())
            }
            fn cosh(self) -> Self {
                Dual::new(self.re.cosh(), self.eps * self.re.sinh())
            }
            fn exp(self) -> Self {
                let e = self.re.exp();
                Dual::new(e, self.eps * e)
            }
            fn ln(self) -> Self {
                Dual::new(self.re.ln(), self.eps / self.re)
            }
            fn asin(self) -> Self {
                let one = <$inner>::one();
                let d = (one - self.re * self.re).sqrt().recip();
                Dual::new(self.re.asin(), self.eps * d)
            }
            fn asinh(self) -> Self {
                let one = <$inner>::one();
                let d = (one + self.re * self.re).sqrt().recip();
                Dual::new(self.re.asinh(), self.eps * d)
            }
        }
    };
}

// Terminal level: `Wider = Self`. `at_depth_cap` flags it; widening there is a
// logic error upstream, so the seeded variants are never called at this level.
macro_rules! impl_real_chain {
    ($base:ty, $d1:ty, $d2:ty, $d3:ty, $d4:ty) => {
        impl_real_base!($base, $d1);
        impl_real_dual!($d1, $base, $d2, 1);
        impl_real_dual!($d2, $d1, $d3, 2);
        impl_real_dual!($d3, $d2, $d4, 3);
        impl_real_dual!($d4, $d3, $d4, 4);
    };
}

impl_real_chain!(
    f64,
    Dual<f64>,
    Dual<Dual<f64>>,
    Dual<Dual<Dual<f64>>>,
    Dual<Dual<Dual<Dual<f64>>>>
);
impl_real_chain!(
    f32,
    Dual<f32>,
    Dual<Dual<f32>>,
    Dual<Dual<Dual<f32>>>,
    Dual<Dual<Dual<Dual<f32>>>>
);

/// Complex pair over any scalar in the tower. Only the arithmetic the
/// operator algebra needs; converts down to `num_complex` at the f64 level.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Cplx<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Cplx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cplx { re, im }
    }
    pub fn real(re: T) -> Self {
        Cplx { re, im: T::zero() }
    }
    pub fn zero() -> Self {
        Cplx { re: T::zero(), im: T::zero() }
    }
    pub fn i() -> Self {
        Cplx { re: T::zero(), im: T::one() }
    }
    /// Multiplication by i.
    pub fn rot_i(self) -> Self {
        Cplx { re: -self.im, im: self.re }
    }
    pub fn scale(self, s: T) -> Self {
        Cplx { re: self.re * s, im: self.im * s }
    }
    pub fn from_f64_pair(re: f64, im: f64) -> Self {
        Cplx { re: T::from_f64(re), im: T::from_f64(im) }
    }
    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.value(), self.im.value())
    }
    pub fn norm_value(self) -> f64 {
        self.to_c64().norm()
    }
}

impl<T: Real> Add for Cplx<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cplx::new(self.re + o.re, self.im + o.im)
    }
}
impl<T: Real> Sub for Cplx<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cplx::new(self.re - o.re, self.im - o.im)
    }
}
impl<T: Real> Mul for Cplx<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cplx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}
impl<T: Real> Neg for Cplx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cplx::new(-self.re, -self.im)
    }
}

/// First derivative of `f` at `x`, seeded through one widening level.
pub fn derivative<T: Real, F>(f: F, x: T) -> T
where
    F: Fn(T::Wider) -> T::Wider,
{
    T::narrow_eps(f(x.widen_var()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dual_first_derivative_matches_hand_rule() {
        // d/dx [x^2 sin x] = 2x sin x + x^2 cos x at x = 1.3
        let x = 1.3_f64;
        let d = derivative(|t: Dual<f64>| t * t * t.sin(), x);
        assert_relative_eq!(d, 2.0 * x * x.sin() + x * x * x.cos(), max_relative = 1e-14);
    }

    #[test]
    fn nested_duals_give_second_and_third_derivatives() {
        // f = exp(sin x): f'' = exp(sin x)(cos^2 x - sin x)
        let x = 0.7_f64;
        let f2 = derivative(
            |t: Dual<f64>| derivative(|u: Dual<Dual<f64>>| u.sin().exp(), t),
            x,
        );
        let expect = (x.sin()).exp() * (x.cos().powi(2) - x.sin());
        assert_relative_eq!(f2, expect, max_relative = 1e-12);

        // third derivative of x^4 is 24 x
        let f3 = derivative(
            |t: Dual<f64>| {
                derivative(
                    |u: Dual<Dual<f64>>| derivative(|v: Dual<Dual<Dual<f64>>>| v.powi(4), u),
                    t,
                )
            },
            1.5,
        );
        assert_relative_eq!(f3, 24.0 * 1.5, max_relative = 1e-12);
    }

    #[test]
    fn asin_asinh_derivatives() {
        let x = 0.4_f64;
        let d = derivative(|t: Dual<f64>| t.asin(), x);
        assert_relative_eq!(d, 1.0 / (1.0 - x * x).sqrt(), max_relative = 1e-14);
        let d = derivative(|t: Dual<f64>| t.asinh(), x);
        assert_relative_eq!(d, 1.0 / (1.0 + x * x).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn f32_chain_works_too() {
        let d = derivative(|t: Dual<f32>| t * t, 3.0_f32);
        assert!((d - 6.0).abs() < 1e-5);
    }

    #[test]
    fn depth_cap_is_detected() {
        assert!(!at_depth_cap::<f64>());
        assert!(!at_depth_cap::<Dual<Dual<Dual<f64>>>>());
        assert!(at_depth_cap::<Dual<Dual<Dual<Dual<f64>>>>>());
    }

    #[test]
    fn complex_products() {
        let a: Cplx<f64> = Cplx::new(1.0, 2.0);
        let b = Cplx::new(-0.5, 0.25);
        let c = a * b;
        let r = num_complex::Complex64::new(1.0, 2.0) * num_complex::Complex64::new(-0.5, 0.25);
        assert_relative_eq!(c.re, r.re);
        assert_relative_eq!(c.im, r.im);
        assert_eq!(a.rot_i(), Cplx::new(-2.0, 1.0));
    }
}
