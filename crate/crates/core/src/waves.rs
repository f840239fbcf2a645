//! Elementary waves of the homogeneous Euler equations: the exact Riemann
//! solver, the two-branch pressure function, the shock ratio family, and
//! self-similar sampling with isentropic in-fan states.

use crate::error::{Error, Result};
use crate::gas::{GasGamma, PrimitiveState};
use crate::real::Real;
use crate::roots;

/// Two-branch pressure function of the exact Riemann solver: the velocity
/// change needed to connect `ref_state` to pressure `p` through a single
/// shock (p > p_ref) or rarefaction (p <= p_ref). Continuous and strictly
/// increasing in p, with matching slope at p = p_ref.
pub fn pressure_function<T: Real>(
    p: T,
    ref_state: &PrimitiveState<T>,
    g: GasGamma<T>,
) -> Result<T> {
    pressure_function_df(p, ref_state, g).map(|(f, _)| f)
}

pub(crate) fn pressure_function_df<T: Real>(
    p: T,
    ref_state: &PrimitiveState<T>,
    g: GasGamma<T>,
) -> Result<(T, T)> {
    if !(p > T::zero()) {
        return Err(Error::NonPositivePressure(p.as_f64()));
    }
    let (rho_r, p_r) = (ref_state.rho, ref_state.p);
    if p > p_r {
        let a_big = T::of(2.0) / (g.gp1() * rho_r);
        let b_big = g.mu() * p_r;
        let root = (a_big / (p + b_big)).sqrt();
        let f = (p - p_r) * root;
        let df = root * (T::one() - (p - p_r) / (T::of(2.0) * (b_big + p)));
        Ok((f, df))
    } else {
        let a_ref = ref_state.sound_speed(g);
        let expo = g.gm1() / (T::of(2.0) * g.value());
        let f = a_ref * g.beta() * ((p / p_r).powf(expo) - T::one());
        let df = (p / p_r).powf(-g.gp1() / (T::of(2.0) * g.value())) / (rho_r * a_ref);
        Ok((f, df))
    }
}

/// One side of a resolved Riemann problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Wave<T> {
    Shock { speed: T },
    Rarefaction { head: T, tail: T },
}

/// Solution of the classical Riemann problem between two states of the
/// same gas: star-region values plus both wave descriptors, all speeds in
/// the lab frame.
#[derive(Clone, Copy, Debug)]
pub struct CrpSolution<T> {
    pub left: PrimitiveState<T>,
    pub right: PrimitiveState<T>,
    pub gamma: GasGamma<T>,
    pub p_star: T,
    pub u_star: T,
    pub rho_star_left: T,
    pub rho_star_right: T,
    pub left_wave: Wave<T>,
    pub right_wave: Wave<T>,
}

/// Solve the classical Riemann problem.
///
/// The star pressure is the root of the monotone residual
/// f(p; left) + f(p; right) + (u_r - u_l), found by Newton iteration
/// safeguarded with bisection on a geometrically expanded bracket.
pub fn crp_solve<T: Real>(
    left: &PrimitiveState<T>,
    right: &PrimitiveState<T>,
    g: GasGamma<T>,
) -> Result<CrpSolution<T>> {
    let du = right.u - left.u;
    let a_l = left.sound_speed(g);
    let a_r = right.sound_speed(g);
    if du >= g.beta() * (a_l + a_r) {
        return Err(Error::VacuumGenerated);
    }

    let p_star = if du == T::zero() && left.p == right.p && left.rho == right.rho {
        left.p
    } else {
        let residual = |p: T| -> (T, T) {
            let (fl, dfl) = pressure_function_df(p, left, g).expect("p > 0 inside bracket");
            let (fr, dfr) = pressure_function_df(p, right, g).expect("p > 0 inside bracket");
            (fl + fr + du, dfl + dfr)
        };
        let lo = T::of(1e-12);
        let mut hi = T::of(10.0) * left.p.max(right.p);
        let mut tries = 0;
        while residual(hi).0 < T::zero() {
            hi = hi * T::of(10.0);
            tries += 1;
            if tries > 100 {
                return Err(Error::NoBracket("star pressure"));
            }
        }
        roots::newton_bisect(lo, hi, residual, T::zero(), 200)?
    };

    let f_l = pressure_function(p_star, left, g)?;
    let f_r = pressure_function(p_star, right, g)?;
    let u_star = (left.u + right.u).half() + (f_r - f_l).half();

    let mu = g.mu();
    let star_density = |side: &PrimitiveState<T>| -> T {
        let pr = p_star / side.p;
        if p_star > side.p {
            side.rho * (pr + mu) / (mu * pr + T::one())
        } else {
            side.rho * pr.powf(g.value().recip())
        }
    };
    let rho_star_left = star_density(left);
    let rho_star_right = star_density(right);

    let shock_speed_coeff = |pr: T| (g.gp1() / (T::of(2.0) * g.value()) * pr
        + g.gm1() / (T::of(2.0) * g.value()))
    .sqrt();
    let expo = g.gm1() / (T::of(2.0) * g.value());

    let left_wave = if p_star > left.p {
        Wave::Shock {
            speed: left.u - a_l * shock_speed_coeff(p_star / left.p),
        }
    } else {
        let a_star = a_l * (p_star / left.p).powf(expo);
        Wave::Rarefaction {
            head: left.u - a_l,
            tail: u_star - a_star,
        }
    };
    let right_wave = if p_star > right.p {
        Wave::Shock {
            speed: right.u + a_r * shock_speed_coeff(p_star / right.p),
        }
    } else {
        let a_star = a_r * (p_star / right.p).powf(expo);
        Wave::Rarefaction {
            head: right.u + a_r,
            tail: u_star + a_star,
        }
    };

    Ok(CrpSolution {
        left: *left,
        right: *right,
        gamma: g,
        p_star,
        u_star,
        rho_star_left,
        rho_star_right,
        left_wave,
        right_wave,
    })
}

impl<T: Real> CrpSolution<T> {
    /// Evaluate the self-similar solution at xi = x / t.
    pub fn sample(&self, xi: T) -> PrimitiveState<T> {
        let g = self.gamma;
        if xi <= self.u_star {
            match self.left_wave {
                Wave::Shock { speed } => {
                    if xi < speed {
                        self.left
                    } else {
                        self.star_left()
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi <= head {
                        self.left
                    } else if xi >= tail {
                        self.star_left()
                    } else {
                        in_fan_left(&self.left, xi, g)
                    }
                }
            }
        } else {
            match self.right_wave {
                Wave::Shock { speed } => {
                    if xi > speed {
                        self.right
                    } else {
                        self.star_right()
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi >= head {
                        self.right
                    } else if xi <= tail {
                        self.star_right()
                    } else {
                        in_fan_right(&self.right, xi, g)
                    }
                }
            }
        }
    }

    pub fn star_left(&self) -> PrimitiveState<T> {
        PrimitiveState {
            rho: self.rho_star_left,
            u: self.u_star,
            p: self.p_star,
        }
    }

    pub fn star_right(&self) -> PrimitiveState<T> {
        PrimitiveState {
            rho: self.rho_star_right,
            u: self.u_star,
            p: self.p_star,
        }
    }
}

pub(crate) fn in_fan_left<T: Real>(
    left: &PrimitiveState<T>,
    xi: T,
    g: GasGamma<T>,
) -> PrimitiveState<T> {
    let a_l = left.sound_speed(g);
    let c = T::of(2.0) / g.gp1();
    let u = c * (a_l + g.gm1().half() * left.u + xi);
    let a = c * (a_l + g.gm1().half() * (left.u - xi));
    let ratio = a / a_l;
    PrimitiveState {
        rho: left.rho * ratio.powf(g.beta()),
        u,
        p: left.p * ratio.powf(T::of(2.0) * g.value() / g.gm1()),
    }
}

fn in_fan_right<T: Real>(right: &PrimitiveState<T>, xi: T, g: GasGamma<T>) -> PrimitiveState<T> {
    let a_r = right.sound_speed(g);
    let c = T::of(2.0) / g.gp1();
    let u = c * (-a_r + g.gm1().half() * right.u + xi);
    let a = c * (a_r - g.gm1().half() * (right.u - xi));
    let ratio = a / a_r;
    PrimitiveState {
        rho: right.rho * ratio.powf(g.beta()),
        u,
        p: right.p * ratio.powf(T::of(2.0) * g.value() / g.gm1()),
    }
}

/// A left-facing shock described by the pre-shock Mach number `m1` and the
/// shock Mach number `m_sl` (shock speed over the pre-shock sound speed),
/// both in the lab frame. Admissible frames satisfy m1 - m_sl >= 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShockFrame<T> {
    pub m1: T,
    pub m_sl: T,
}

impl<T: Real> ShockFrame<T> {
    pub fn new(m1: T, m_sl: T) -> Result<Self> {
        if !(m1 > T::zero()) {
            return Err(Error::NonPositiveMach(m1.as_f64()));
        }
        if m1 - m_sl < T::one() {
            return Err(Error::LaxViolation((m1 - m_sl).as_f64()));
        }
        Ok(Self { m1, m_sl })
    }

    /// Relative Mach number of the flow entering the shock.
    pub fn relative(&self) -> T {
        self.m1 - self.m_sl
    }
}

/// Downstream/upstream ratios across a left-facing shock, all functions of
/// (m1, m_sl) alone.
#[derive(Clone, Copy, Debug)]
pub struct ShockRatios<T> {
    /// rho_down / rho_up
    pub density: T,
    /// p_down / p_up
    pub pressure: T,
    /// (u_down - s) / (u_up - s): velocity ratio in the shock frame,
    /// identically the inverse of the density ratio
    pub frame_velocity: T,
    /// u_down / u_up in the lab frame
    pub velocity: T,
    /// Mach number of the downstream flow in the lab frame
    pub downstream_mach: T,
}

impl<T: Real> ShockRatios<T> {
    /// a_down / a_up
    pub fn sound_speed(&self) -> T {
        (self.pressure / self.density).sqrt()
    }
}

/// Evaluate the shock ratio family for an admissible frame.
pub fn shock_family<T: Real>(frame: &ShockFrame<T>, g: GasGamma<T>) -> Result<ShockRatios<T>> {
    let x = frame.relative();
    if !(frame.m1 > T::zero()) {
        return Err(Error::NonPositiveMach(frame.m1.as_f64()));
    }
    if x < T::one() {
        return Err(Error::LaxViolation(x.as_f64()));
    }
    let x2 = x * x;
    let two = T::of(2.0);
    let density = g.gp1() * x2 / (g.gm1() * x2 + two);
    let pressure = (two * g.value() * x2 - g.gm1()) / g.gp1();
    let frame_velocity = density.recip();
    let velocity = frame_velocity + frame.m_sl / frame.m1 * (T::one() - frame_velocity);
    let downstream_mach = ((g.gm1() * frame.m1 + two * frame.m_sl) * x + two)
        / (((g.gm1() * x2 + two) * (two * g.value() * x2 - g.gm1())).sqrt());
    Ok(ShockRatios {
        density,
        pressure,
        frame_velocity,
        velocity,
        downstream_mach,
    })
}

/// Invert the downstream-Mach map: find the unique shock Mach number with
/// `shock_family(m1, m_sl).downstream_mach = m4` and m1 - m_sl >= 1.
///
/// In the relative Mach number x = m1 - m_sl the condition is the root of
/// a monotone increasing function on [1, inf) that starts non-positive, so
/// plain bisection is reliable.
pub fn solve_shock_mach<T: Real>(m1: T, m4: T, g: GasGamma<T>) -> Result<T> {
    if !(m1 > T::zero()) {
        return Err(Error::NonPositiveMach(m1.as_f64()));
    }
    if !(m4 > T::zero()) || m4 > m1 {
        return Err(Error::DomainViolation {
            m1: m1.as_f64(),
            m4: m4.as_f64(),
        });
    }
    let two = T::of(2.0);
    let sigma = |x: T| -> T {
        let x2 = x * x;
        m4 * ((g.gm1() * x2 + two) * (two * g.value() * x2 - g.gm1())).sqrt() / x + two * x
            - g.gp1() * m1
            - two / x
    };
    if m4 == m1 {
        // sigma(1) = (gamma + 1)(m4 - m1) = 0: degenerate shock
        return Ok(m1 - T::one());
    }
    let mut hi = T::of(2.0).max(m1 + two);
    let mut tries = 0;
    while sigma(hi) <= T::zero() {
        hi = hi * two;
        tries += 1;
        if tries > 60 {
            return Err(Error::NoBracket("shock Mach inversion"));
        }
    }
    let x = roots::bisect(T::one(), hi, sigma, T::zero())?;
    Ok(m1 - x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::ConservedState;
    use proptest::prelude::*;

    fn g14() -> GasGamma<f64> {
        GasGamma::new(1.4).unwrap()
    }

    fn prim(rho: f64, u: f64, p: f64) -> PrimitiveState<f64> {
        PrimitiveState::new(rho, u, p).unwrap()
    }

    #[test]
    fn pressure_function_reference_values() {
        let g = g14();
        let r = prim(1.0, 0.0, 1.0);
        assert_eq!(pressure_function(1.0, &r, g).unwrap(), 0.0);
        // oracle: independent high-precision evaluation of both branches
        assert!((pressure_function(2.0, &r, g).unwrap() - 0.620_173_672_946_042_28).abs() < 1e-15);
        assert!((pressure_function(0.5, &r, g).unwrap() + 0.557_746_323_873_013_6).abs() < 1e-15);
        assert!(pressure_function(0.0, &r, g).is_err());
        assert!(pressure_function(-1.0, &r, g).is_err());
    }

    #[test]
    fn pressure_function_smooth_at_reference_pressure() {
        let g = g14();
        let r = prim(1.3, 0.0, 0.7);
        let h = 1e-7;
        let below = (pressure_function(0.7, &r, g).unwrap()
            - pressure_function(0.7 - h, &r, g).unwrap())
            / h;
        let above = (pressure_function(0.7 + h, &r, g).unwrap()
            - pressure_function(0.7, &r, g).unwrap())
            / h;
        let (_, analytic) = pressure_function_df(0.7, &r, g).unwrap();
        assert!((below - analytic).abs() < 1e-5);
        assert!((above - analytic).abs() < 1e-5);
    }

    #[test]
    fn crp_identical_states_is_trivial() {
        let g = g14();
        let s = prim(1.0, 0.7, 2.0);
        let sol = crp_solve(&s, &s, g).unwrap();
        assert_eq!(sol.p_star, 2.0);
        assert_eq!(sol.u_star, 0.7);
        assert_eq!(sol.rho_star_left, 1.0);
        assert_eq!(sol.rho_star_right, 1.0);
    }

    #[test]
    fn crp_sod_star_values() {
        // oracle: brute-force bisection of the monotone pressure residual,
        // frozen at high precision
        let g = g14();
        let sol = crp_solve(&prim(1.0, 0.0, 1.0), &prim(0.125, 0.0, 0.1), g).unwrap();
        assert!((sol.p_star - 0.303_130_178_050_646_82).abs() < 1e-13);
        assert!((sol.u_star - 0.927_452_620_048_949_95).abs() < 1e-13);
        assert!((sol.rho_star_left - 0.426_319_428_178_495_19).abs() < 1e-13);
        assert!((sol.rho_star_right - 0.265_573_711_705_307_06).abs() < 1e-13);
        assert!(matches!(sol.left_wave, Wave::Rarefaction { .. }));
        assert!(matches!(sol.right_wave, Wave::Shock { .. }));
    }

    #[test]
    fn crp_symmetric_compression() {
        let g = g14();
        let sol = crp_solve(&prim(1.0, 2.0, 1.0), &prim(1.0, -2.0, 1.0), g).unwrap();
        assert!(sol.u_star.abs() < 1e-14);
        assert!(sol.p_star > 1.0);
        assert!(matches!(sol.left_wave, Wave::Shock { .. }));
        assert!(matches!(sol.right_wave, Wave::Shock { .. }));
    }

    #[test]
    fn crp_detects_vacuum() {
        let g = g14();
        let res = crp_solve(&prim(1.0, -20.0, 1.0), &prim(1.0, 20.0, 1.0), g);
        assert!(matches!(res, Err(Error::VacuumGenerated)));
    }

    #[test]
    fn crp_sample_piecewise_layout() {
        let g = g14();
        let left = prim(1.0, 0.0, 1.0);
        let right = prim(0.125, 0.0, 0.1);
        let sol = crp_solve(&left, &right, g).unwrap();

        assert_eq!(sol.sample(-10.0), left);
        assert_eq!(sol.sample(10.0), right);

        // across the contact the pressure is continuous, density jumps
        let eps = 1e-9;
        let just_left = sol.sample(sol.u_star - eps);
        let just_right = sol.sample(sol.u_star + eps);
        assert!((just_left.p - just_right.p).abs() < 1e-12);
        assert!((just_left.rho - just_right.rho).abs() > 0.1);

        // the rarefaction joins its adjacent constant state continuously
        if let Wave::Rarefaction { head, tail } = sol.left_wave {
            let at_head = sol.sample(head + 1e-14);
            assert!((at_head.rho - left.rho).abs() < 1e-12);
            let at_tail = sol.sample(tail - 1e-14);
            assert!((at_tail.rho - sol.rho_star_left).abs() < 1e-12);
        } else {
            panic!("Sod left wave must be a rarefaction");
        }
    }

    #[test]
    fn rarefaction_interior_preserves_invariants() {
        let g = g14();
        let left = prim(1.0, 0.0, 1.0);
        let right = prim(0.125, 0.0, 0.1);
        let sol = crp_solve(&left, &right, g).unwrap();
        let Wave::Rarefaction { head, tail } = sol.left_wave else {
            panic!("expected rarefaction");
        };
        let s_ref = left.entropy_index(g);
        let inv_ref = left.u + 2.0 * left.sound_speed(g) / 0.4;
        for i in 1..50 {
            let xi = head + (tail - head) * (i as f64) / 50.0;
            let s = sol.sample(xi);
            assert!((s.entropy_index(g) / s_ref - 1.0).abs() < 1e-10);
            let inv = s.u + 2.0 * s.sound_speed(g) / 0.4;
            assert!((inv / inv_ref - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn shock_family_degenerate_is_identity() {
        let g = g14();
        for m1 in [1.0, 1.7, 3.0] {
            let frame = ShockFrame::new(m1, m1 - 1.0).unwrap();
            let r = shock_family(&frame, g).unwrap();
            assert!((r.density - 1.0).abs() < 1e-14);
            assert!((r.pressure - 1.0).abs() < 1e-14);
            assert!((r.frame_velocity - 1.0).abs() < 1e-14);
            assert!((r.velocity - 1.0).abs() < 1e-14);
            assert!((r.downstream_mach - m1).abs() < 1e-13);
        }
    }

    #[test]
    fn shock_family_stationary_shock_values() {
        // stationary normal shock at M = 2.36643...; oracle = textbook
        // normal-shock relations evaluated at high precision
        let g = g14();
        let m1 = 2.8 / 1.4f64.sqrt();
        let frame = ShockFrame::new(m1, 0.0).unwrap();
        let r = shock_family(&frame, g).unwrap();
        assert!((r.density - 3.169_811_320_754_717).abs() < 1e-13);
        assert!((r.pressure - 6.366_666_666_666_666_7).abs() < 1e-13);
        assert!((r.downstream_mach - 0.526_770_263_962_160_64).abs() < 1e-13);
        assert!((r.density * r.frame_velocity - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shock_family_rejects_lax_violation() {
        let g = g14();
        assert!(ShockFrame::new(1.5, 0.6).is_err());
        let frame = ShockFrame { m1: 1.5, m_sl: 0.6 };
        assert!(matches!(
            shock_family(&frame, g),
            Err(Error::LaxViolation(_))
        ));
    }

    fn rankine_hugoniot_residual(
        up: &PrimitiveState<f64>,
        down: &PrimitiveState<f64>,
        speed: f64,
        g: GasGamma<f64>,
    ) -> f64 {
        let flux = |s: &PrimitiveState<f64>| {
            let c: ConservedState<f64> = s.to_conserved(g);
            [
                s.rho * s.u,
                s.rho * s.u * s.u + s.p,
                (c.energy + s.p) * s.u,
            ]
        };
        let cons = |s: &PrimitiveState<f64>| {
            let c = s.to_conserved(g);
            [c.rho, c.mom, c.energy]
        };
        let (fu, fd) = (flux(up), flux(down));
        let (cu, cd) = (cons(up), cons(down));
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let lhs = fd[i] - fu[i];
            let rhs = speed * (cd[i] - cu[i]);
            let scale = fu[i].abs().max(fd[i].abs()).max(1.0);
            worst = worst.max((lhs - rhs).abs() / scale);
        }
        worst
    }

    #[test]
    fn shock_family_satisfies_rankine_hugoniot() {
        let g = g14();
        // deterministic pseudo-random sweep over admissible frames
        for i in 0..200 {
            let t = i as f64 / 199.0;
            let m1 = 0.3 + 3.0 * t;
            let msl = m1 - 1.0 - 2.5 * ((1.3 * t).sin().abs());
            let frame = ShockFrame::new(m1, msl).unwrap();
            let r = shock_family(&frame, g).unwrap();
            let rho1 = 0.5 + t;
            let p1 = 0.4 + 2.0 * t;
            let a1 = (1.4 * p1 / rho1).sqrt();
            let up = prim(rho1, m1 * a1, p1);
            let down = prim(rho1 * r.density, up.u * r.velocity, p1 * r.pressure);
            let resid = rankine_hugoniot_residual(&up, &down, msl * a1, g);
            assert!(resid < 1e-12, "frame ({m1}, {msl}): residual {resid}");
            // entropy rises across an entropy-satisfying shock
            assert!(down.entropy_index(g) >= up.entropy_index(g));
            // downstream Mach consistency
            assert!((down.mach(g) - r.downstream_mach).abs() < 1e-12);
        }
    }

    #[test]
    fn solve_shock_mach_edge_cases() {
        let g = g14();
        // m4 = m1: the degenerate shock, root at the left end
        assert!((solve_shock_mach(1.7, 1.7, g).unwrap() - 0.7).abs() < 1e-14);
        // inverse of the stationary-shock example
        let m1 = 2.8 / 1.4f64.sqrt();
        let frame = ShockFrame::new(m1, 0.0).unwrap();
        let m4 = shock_family(&frame, g).unwrap().downstream_mach;
        assert!(solve_shock_mach(m1, m4, g).unwrap().abs() < 1e-8);
        // domain violations
        assert!(matches!(
            solve_shock_mach(1.0, 1.5, g),
            Err(Error::DomainViolation { .. })
        ));
        assert!(solve_shock_mach(1.0, -0.5, g).is_err());
    }

    #[test]
    fn solve_shock_mach_quartic_cross_check() {
        // the relative Mach number is also a root of the quartic
        // A x^4 + B x^3 + C x^2 + D x + E with the coefficients below
        let g = g14();
        let gamma = 1.4;
        let m1 = 2.0;
        let m4 = 0.613_629_160_700_074_9; // subsonic critical Mach at k = 0.2
        let msl = solve_shock_mach(m1, m4, g).unwrap();
        let x = m1 - msl;
        let a = 4.0 - 2.0 * gamma * (gamma - 1.0) * m4 * m4;
        let b = -4.0 * (gamma + 1.0) * m1;
        let c = (gamma + 1.0) * (gamma + 1.0) * m1 * m1
            - 8.0
            - (6.0 * gamma - gamma * gamma - 1.0) * m4 * m4;
        let d = 4.0 * (gamma + 1.0) * m1;
        let e = 4.0 + 2.0 * (gamma - 1.0) * m4 * m4;
        let resid = a * x.powi(4) + b * x.powi(3) + c * x * x + d * x + e;
        assert!(resid.abs() < 1e-8, "quartic residual {resid}");
        // frozen from the independent bisection oracle
        assert!((msl - 0.038_099_016_240_692_265).abs() < 1e-10);
        // round trip
        let frame = ShockFrame::new(m1, msl).unwrap();
        let back = shock_family(&frame, g).unwrap().downstream_mach;
        assert!((back - m4).abs() < 1e-10);
    }

    #[test]
    fn downstream_mach_increases_with_shock_mach() {
        let g = g14();
        let h = 1e-7;
        for i in 0..100 {
            let t = i as f64 / 99.0;
            let m1 = 0.5 + 2.5 * t;
            let msl = m1 - 1.1 - 1.5 * t;
            let f = |m: f64| {
                shock_family(&ShockFrame { m1, m_sl: m }, g)
                    .unwrap()
                    .downstream_mach
            };
            assert!((f(msl + h) - f(msl - h)) / (2.0 * h) > 0.0);
        }
    }

    proptest! {
        #[test]
        fn crp_residual_small_on_random_pairs(
            rho_l in 0.05..5.0f64, u_l in -3.0..3.0f64, p_l in 0.05..5.0f64,
            rho_r in 0.05..5.0f64, u_r in -3.0..3.0f64, p_r in 0.05..5.0f64,
            gamma in 1.05..2.9f64,
        ) {
            let g = GasGamma::new(gamma).unwrap();
            let left = prim(rho_l, u_l, p_l);
            let right = prim(rho_r, u_r, p_r);
            prop_assume!(u_r - u_l < g.beta() * (left.sound_speed(g) + right.sound_speed(g)) - 0.1);
            let sol = crp_solve(&left, &right, g).unwrap();
            let resid = pressure_function(sol.p_star, &left, g).unwrap()
                + pressure_function(sol.p_star, &right, g).unwrap()
                + (u_r - u_l);
            let scale = (u_r - u_l).abs().max(1.0);
            prop_assert!(resid.abs() < 1e-12 * scale, "residual {}", resid);
            // shocks produced by the solver satisfy the entropy condition
            if let Wave::Shock { .. } = sol.left_wave {
                prop_assert!(sol.p_star >= left.p);
                let star = sol.star_left();
                prop_assert!(star.entropy_index(g) >= left.entropy_index(g) * (1.0 - 1e-12));
            }
            if let Wave::Shock { .. } = sol.right_wave {
                prop_assert!(sol.p_star >= right.p);
                let star = sol.star_right();
                prop_assert!(star.entropy_index(g) >= right.entropy_index(g) * (1.0 - 1e-12));
            }
        }

        #[test]
        fn pressure_function_strictly_increasing(
            p1 in 0.01..20.0f64,
            dp in 0.001..5.0f64,
            rho in 0.05..5.0f64,
            p_ref in 0.05..5.0f64,
            gamma in 1.05..2.9f64,
        ) {
            let g = GasGamma::new(gamma).unwrap();
            let r = prim(rho, 0.0, p_ref);
            let lo = pressure_function(p1, &r, g).unwrap();
            let hi = pressure_function(p1 + dp, &r, g).unwrap();
            prop_assert!(hi > lo);
        }

        #[test]
        fn shock_mach_inversion_round_trips(
            m1 in 0.1..6.0f64,
            frac in 0.01..1.0f64,
        ) {
            let g = g14();
            let m4 = m1 * frac;
            let msl = solve_shock_mach(m1, m4, g).unwrap();
            prop_assert!(m1 - msl >= 1.0);
            let frame = ShockFrame::new(m1, msl).unwrap();
            let back = shock_family(&frame, g).unwrap().downstream_mach;
            prop_assert!((back - m4).abs() < 1e-10, "m1={} m4={} -> {}", m1, m4, back);
        }
    }
}
