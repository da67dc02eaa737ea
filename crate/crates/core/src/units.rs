use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Unit bookkeeping. Everything downstream works in whatever system this
/// carries; the default is natural units with a unit Planck mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub hbar: f64,
    pub c: f64,
    pub g_newton: f64,
}

impl UnitSystem {
    /// hbar = c = 1 with the Planck mass supplied directly (G = 1/M_P^2).
    pub fn natural(planck_mass: f64) -> Result<Self> {
        if !(planck_mass > 0.0) {
            return Err(Error::Parameter(format!(
                "planck mass must be positive, got {planck_mass}"
            )));
        }
        Ok(UnitSystem {
            hbar: 1.0,
            c: 1.0,
            g_newton: 1.0 / (planck_mass * planck_mass),
        })
    }

    /// SI values (CODATA-style constants).
    pub fn si() -> Self {
        UnitSystem {
            hbar: 1.054_571_817e-34,
            c: 2.997_924_58e8,
            g_newton: 6.674_30e-11,
        }
    }

    pub fn planck_mass(&self) -> f64 {
        (self.hbar * self.c / self.g_newton).sqrt()
    }

    pub fn planck_length(&self) -> f64 {
        (self.hbar * self.g_newton / self.c.powi(3)).sqrt()
    }

    /// Planck momentum M_P c, the natural horizontal scale for bound curves.
    pub fn planck_momentum(&self) -> f64 {
        self.planck_mass() * self.c
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem::natural(1.0).expect("unit planck mass")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn planck_identity_holds_in_both_systems() {
        // L_P * M_P * c = hbar is an identity of the definitions.
        for u in [UnitSystem::default(), UnitSystem::si(), UnitSystem::natural(3.7).unwrap()] {
            assert_relative_eq!(
                u.planck_length() * u.planck_mass() * u.c,
                u.hbar,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn natural_units_expose_supplied_mass() {
        let u = UnitSystem::natural(2.0).unwrap();
        assert_relative_eq!(u.planck_mass(), 2.0, max_relative = 1e-14);
        assert_eq!(u.hbar, 1.0);
        assert_eq!(u.c, 1.0);
    }

    #[test]
    fn rejects_nonpositive_mass() {
        assert!(UnitSystem::natural(0.0).is_err());
        assert!(UnitSystem::natural(-1.0).is_err());
    }
}
