//! Exact self-similar solutions of the 1D Euler equations for an ideal gas
//! heated by a steady point source at x = 0, plus a Godunov finite-volume
//! solver for cross-checking them numerically.
//!
//! The solution of this Riemann-type problem is one of three wave
//! patterns, decided by the ambient Mach number; see [`fan`] for the
//! construction and [`sim`] for the verifier. All numerics are generic
//! over the scalar type through [`Real`]; the aliases at the crate root
//! fix f64, the precision everything is specified and tested at.

pub mod error;
pub mod fan;
pub mod gas;
pub mod heating;
pub mod real;
mod roots;
pub mod sim;
pub mod waves;

pub use error::{Error, Result};
pub use real::Real;

/// f64 ratio of specific heats.
pub type Gamma = gas::GasGamma<f64>;
/// f64 primitive state.
pub type Prim = gas::PrimitiveState<f64>;
/// f64 conserved state.
pub type Cons = gas::ConservedState<f64>;
/// f64 heating context.
pub type Ctx = heating::HeatingContext<f64>;
/// f64 wave fan.
pub type Fan = fan::WaveFan<f64>;
/// f64 Riemann solution.
pub type Crp = waves::CrpSolution<f64>;

#[cfg(test)]
mod tests {
    use super::*;

    // the solvers stay usable at f32, at f32-appropriate accuracy
    #[test]
    fn f32_instantiation_smoke() {
        let g = gas::GasGamma::<f32>::new(1.4).unwrap();
        let ctx = heating::HeatingContext::new(g, 0.2f32).unwrap();
        let s = gas::PrimitiveState::new(1.0f32, 0.8, 1.0).unwrap();
        assert!((s.sound_speed(g) - 1.183_216).abs() < 1e-5);
        assert!((ctx.subsonic_critical() - 0.613_63).abs() < 1e-4);
        let j = heating::heat_jump(
            &gas::PrimitiveState::new(1.0f32, 0.5, 1.0).unwrap(),
            &ctx,
        )
        .unwrap();
        assert!(j.downstream.u > 0.5);
        let sol = waves::crp_solve(
            &gas::PrimitiveState::new(1.0f32, 0.0, 1.0).unwrap(),
            &gas::PrimitiveState::new(0.125f32, 0.0, 0.1).unwrap(),
            g,
        )
        .unwrap();
        assert!((sol.p_star - 0.303_13).abs() < 1e-3);
    }
}
