//! Ideal-gas thermodynamics: state representations and conversions used by
//! every other module.

use crate::error::{Error, Result};
use crate::real::Real;

/// Ratio of specific heats, restricted to 1 < gamma < 3.
///
/// The endpoints are rejected because the jump relations divide by
/// `gamma - 1` and by `1 - k (gamma^2 - 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasGamma<T> {
    gamma: T,
}

impl<T: Real> GasGamma<T> {
    pub fn new(gamma: T) -> Result<Self> {
        if !(gamma > T::one() && gamma < T::of(3.0)) || !gamma.is_finite() {
            return Err(Error::InvalidGamma(gamma.as_f64()));
        }
        Ok(Self { gamma })
    }

    pub fn value(&self) -> T {
        self.gamma
    }

    /// gamma - 1
    pub fn gm1(&self) -> T {
        self.gamma - T::one()
    }

    /// gamma + 1
    pub fn gp1(&self) -> T {
        self.gamma + T::one()
    }

    /// (gamma - 1) / (gamma + 1)
    pub fn mu(&self) -> T {
        self.gm1() / self.gp1()
    }

    /// 2 / (gamma - 1)
    pub fn beta(&self) -> T {
        T::of(2.0) / self.gm1()
    }

    /// (gamma + 1) / (gamma - 1)
    pub fn tau(&self) -> T {
        self.gp1() / self.gm1()
    }
}

/// Gas state in primitive variables (density, velocity, pressure).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimitiveState<T> {
    pub rho: T,
    pub u: T,
    pub p: T,
}

/// Gas state in conserved variables (density, momentum density, total
/// energy density).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservedState<T> {
    pub rho: T,
    pub mom: T,
    pub energy: T,
}

impl<T: Real> PrimitiveState<T> {
    pub fn new(rho: T, u: T, p: T) -> Result<Self> {
        if !(rho > T::zero()) || !rho.is_finite() || !u.is_finite() {
            return Err(Error::NonPhysical(format!("rho = {rho}, u = {u}")));
        }
        if !(p > T::zero()) || !p.is_finite() {
            return Err(Error::NonPositivePressure(p.as_f64()));
        }
        Ok(Self { rho, u, p })
    }

    /// a = sqrt(gamma p / rho)
    pub fn sound_speed(&self, g: GasGamma<T>) -> T {
        (g.value() * self.p / self.rho).sqrt()
    }

    /// M = u / a; the sign follows the velocity.
    pub fn mach(&self, g: GasGamma<T>) -> T {
        self.u / self.sound_speed(g)
    }

    /// Specific enthalpy h = e + p/rho = gamma p / ((gamma - 1) rho).
    pub fn enthalpy(&self, g: GasGamma<T>) -> T {
        g.value() * self.p / (g.gm1() * self.rho)
    }

    /// Entropy indicator p / rho^gamma (constant along isentropes).
    pub fn entropy_index(&self, g: GasGamma<T>) -> T {
        self.p / self.rho.powf(g.value())
    }

    pub fn to_conserved(&self, g: GasGamma<T>) -> ConservedState<T> {
        ConservedState {
            rho: self.rho,
            mom: self.rho * self.u,
            energy: self.p / g.gm1() + (self.rho * self.u * self.u).half(),
        }
    }
}

impl<T: Real> ConservedState<T> {
    pub fn to_primitive(&self, g: GasGamma<T>) -> Result<PrimitiveState<T>> {
        if !(self.rho > T::zero()) {
            return Err(Error::NonPhysical(format!("rho = {}", self.rho)));
        }
        let u = self.mom / self.rho;
        let p = g.gm1() * (self.energy - (self.mom * u).half());
        if !(p > T::zero()) {
            return Err(Error::NonPhysical(format!("recovered p = {p}")));
        }
        Ok(PrimitiveState { rho: self.rho, u, p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g14() -> GasGamma<f64> {
        GasGamma::new(1.4).unwrap()
    }

    #[test]
    fn gamma_endpoints_rejected() {
        assert!(GasGamma::new(1.0).is_err());
        assert!(GasGamma::new(3.0).is_err());
        assert!(GasGamma::new(0.9).is_err());
        assert!(GasGamma::new(f64::NAN).is_err());
        assert!(GasGamma::new(1.0 + 1e-12).is_ok());
    }

    #[test]
    fn sound_speed_reference_values() {
        let s = PrimitiveState::new(1.0, 0.0, 1.0).unwrap();
        // oracle: direct evaluation, cross-checked by a^2 rho / gamma = p
        assert!((s.sound_speed(g14()) - 1.183_215_956_619_923_2).abs() < 1e-15);
        let a = s.sound_speed(g14());
        assert!((a * a * s.rho / 1.4 - s.p).abs() < 1e-15);

        // rho = gamma, p = 1 gives a = 1 for any gamma
        for gamma in [1.1f64, 1.4, 2.0, 2.9] {
            let g = GasGamma::new(gamma).unwrap();
            let s = PrimitiveState::new(gamma, 3.0, 1.0).unwrap();
            assert!((s.sound_speed(g) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn mach_reference_values() {
        let g = g14();
        let m = PrimitiveState::new(1.0, 0.8, 1.0).unwrap().mach(g);
        assert!((m - 0.676_123_403_782_813_3).abs() < 1e-15);
        assert_eq!(PrimitiveState::new(1.0, 0.0, 1.0).unwrap().mach(g), 0.0);
        let m4 = PrimitiveState::new(1.0, 2.8, 1.0).unwrap().mach(g);
        assert!((m4 - 2.366_431_913_239_846_4).abs() < 1e-14);
    }

    #[test]
    fn conversion_reference_values() {
        let g = g14();
        let c = PrimitiveState::new(1.0, 0.0, 1.0).unwrap().to_conserved(g);
        assert!((c.energy - 2.5).abs() < 1e-15);
        let c = PrimitiveState::new(1.0, 0.8, 1.0).unwrap().to_conserved(g);
        assert!((c.energy - 2.82).abs() < 1e-15);
        assert!((c.mom - 0.8).abs() < 1e-15);
    }

    #[test]
    fn cons_to_prim_rejects_nonphysical() {
        let g = g14();
        // internal energy <= 0
        let c = ConservedState { rho: 1.0, mom: 2.0, energy: 1.9 };
        assert!(matches!(c.to_primitive(g), Err(Error::NonPhysical(_))));
        let c = ConservedState { rho: -1.0, mom: 0.0, energy: 1.0 };
        assert!(c.to_primitive(g).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_identity(
            rho in 1e-3..1e3f64,
            u in -100.0..100.0f64,
            p in 1e-3..1e3f64,
            gamma in 1.05..2.95f64,
        ) {
            let g = GasGamma::new(gamma).unwrap();
            let s = PrimitiveState::new(rho, u, p).unwrap();
            let back = s.to_conserved(g).to_primitive(g).unwrap();
            prop_assert!((back.rho / rho - 1.0).abs() < 1e-14);
            prop_assert!((back.p / p - 1.0).abs() < 1e-14);
            prop_assert!((back.u - u).abs() <= 1e-14 * (1.0 + u.abs()));
        }

        #[test]
        fn scaling_leaves_a_and_mach_unchanged(
            rho in 1e-2..1e2f64,
            u in 0.01..50.0f64,
            p in 1e-2..1e2f64,
            lambda in 1e-2..1e2f64,
            gamma in 1.05..2.95f64,
        ) {
            let g = GasGamma::new(gamma).unwrap();
            let s = PrimitiveState::new(rho, u, p).unwrap();
            let scaled = PrimitiveState::new(rho * lambda, u, p * lambda).unwrap();
            prop_assert!((s.sound_speed(g) / scaled.sound_speed(g) - 1.0).abs() < 1e-14);
            prop_assert!((s.mach(g) / scaled.mach(g) - 1.0).abs() < 1e-14);
        }

        #[test]
        fn enthalpy_sound_speed_identity(
            rho in 1e-2..1e2f64,
            p in 1e-2..1e2f64,
            gamma in 1.05..2.95f64,
        ) {
            let g = GasGamma::new(gamma).unwrap();
            let s = PrimitiveState::new(rho, 0.0, p).unwrap();
            let a = s.sound_speed(g);
            prop_assert!((a * a / ((gamma - 1.0) * s.enthalpy(g)) - 1.0).abs() < 1e-13);
        }
    }
}
