//! Adaptive Dormand-Prince 5(4) for scalar initial value problems, with a
//! Hermite-interpolated dense table so solutions can back a radial profile.

use crate::error::{Error, Result};

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
// 5th-order solution weights
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// embedded 4th-order weights
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

/// Dense solution of u' = f(x, u) on [x0, x1].
#[derive(Debug, Clone)]
pub struct OdeSolution {
    xs: Vec<f64>,
    us: Vec<f64>,
    dus: Vec<f64>,
}

impl OdeSolution {
    pub fn range(&self) -> (f64, f64) {
        (*self.xs.first().unwrap(), *self.xs.last().unwrap())
    }

    /// Cubic Hermite interpolation; clamps to the endpoints just outside the
    /// integrated range (callers keep queries inside up to roundoff).
    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if x < lo - 1e-9 * (1.0 + lo.abs()) || x > hi + 1e-9 * (1.0 + hi.abs()) {
            return Err(Error::Domain(format!(
                "ODE solution queried at {x}, outside [{lo}, {hi}]"
            )));
        }
        let x = x.clamp(lo, hi);
        let idx = match self.xs.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => return Ok(self.us[i]),
            Err(i) => i.clamp(1, self.xs.len() - 1),
        };
        let (x0, x1) = (self.xs[idx - 1], self.xs[idx]);
        let (u0, u1) = (self.us[idx - 1], self.us[idx]);
        let (d0, d1) = (self.dus[idx - 1], self.dus[idx]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        Ok(u0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + d0 * h * (t3 - 2.0 * t2 + t)
            + u1 * (-2.0 * t3 + 3.0 * t2)
            + d1 * h * (t3 - t2))
    }
}

/// Integrate u' = f(x, u) from (x0, u0) to x1 with the given tolerances.
pub fn integrate<F>(f: &F, x0: f64, u0: f64, x1: f64, rtol: f64, atol: f64) -> Result<OdeSolution>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    if !(x1 > x0) {
        return Err(Error::Parameter("ODE range must be increasing".into()));
    }
    let mut x = x0;
    let mut u = u0;
    let mut du = f(x, u)?;
    let mut h = ((x1 - x0) * 1e-3).min(0.1).max(1e-10);
    let mut xs = vec![x];
    let mut us = vec![u];
    let mut dus = vec![du];
    let mut steps = 0usize;
    const MAX_STEPS: usize = 200_000;

    while x < x1 {
        if steps > MAX_STEPS {
            return Err(Error::Ode(format!("step budget exhausted at x = {x}")));
        }
        steps += 1;
        if x + h > x1 {
            h = x1 - x;
        }

        let k1 = du;
        let k2 = f(x + A21 * h, u + h * (A21 * k1))?;
        let k3 = f(x + 0.3 * h, u + h * (A31 * k1 + A32 * k2))?;
        let k4 = f(x + 0.8 * h, u + h * (A41 * k1 + A42 * k2 + A43 * k3))?;
        let k5 = f(
            x + 8.0 / 9.0 * h,
            u + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4),
        )?;
        let k6 = f(
            x + h,
            u + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
        )?;
        let u5 = u + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
        let k7 = f(x + h, u5)?;
        let u4 = u + h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);

        let scale = atol + rtol * u.abs().max(u5.abs());
        let err = ((u5 - u4) / scale).abs();

        if err <= 1.0 {
            x += h;
            u = u5;
            du = k7;
            xs.push(x);
            us.push(u);
            dus.push(du);
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).min(x1 - x0);
        if h < 1e-14 * (1.0 + x.abs()) {
            return Err(Error::Ode(format!("step size underflow at x = {x}")));
        }
    }

    Ok(OdeSolution { xs, us, dus })
}
