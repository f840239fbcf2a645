//! Jump relations for the stationary heating discontinuity.
//!
//! A steady point source of heat in a moving ideal gas forces a jump in the
//! energy flux while mass and momentum fluxes stay continuous:
//!
//! ```text
//!   rho- u-                    = rho+ u+
//!   rho- u-^2 + p-             = rho+ u+^2 + p+
//!   (u-^2/2 + h-) (1 + k)      =  u+^2/2 + h+
//! ```
//!
//! `k` is the heat input normalized by the upstream flux of total enthalpy.
//! The physically admissible ("weak") solution branch reduces to the
//! identity as k -> 0. Heat addition is only possible while `k` stays below
//! a maximum that depends on the upstream Mach number; the two Mach numbers
//! at which the maximum equals `k` are the critical values M* (subsonic)
//! and M** (supersonic). Heating a flow at exactly the critical Mach number
//! chokes it: the downstream state is exactly sonic.

use crate::error::{Error, Result};
use crate::gas::{GasGamma, PrimitiveState};
use crate::real::Real;

/// Upstream Mach numbers closer to 1 than this are treated as sonic and
/// rejected; the admissible k there is too small to matter and the
/// discriminant is all cancellation.
const SONIC_GUARD: f64 = 1e-9;

/// If k exceeds k_max by no more than this (relative), the discriminant is
/// clamped to zero instead of erroring. Choked constructions operate
/// exactly on this boundary.
const CHOKE_CLAMP_REL: f64 = 1e-12;

/// Gas plus heating parameter; the context every jump relation needs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatingContext<T> {
    gamma: GasGamma<T>,
    k: T,
}

/// The supersonic critical Mach number M**, which stops existing once
/// k (gamma^2 - 1) >= 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CriticalMach<T> {
    Finite(T),
    Unbounded,
}

impl<T: Real> CriticalMach<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            CriticalMach::Finite(m) => Some(m),
            CriticalMach::Unbounded => None,
        }
    }
}

/// One resolved heating jump: upstream and downstream states plus the
/// quantities shared by diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct HeatJump<T> {
    pub upstream: PrimitiveState<T>,
    pub downstream: PrimitiveState<T>,
    pub m_minus: T,
    pub m_plus: T,
    /// Discriminant of the jump quadratic; zero exactly at choke.
    pub i_value: T,
}

impl<T: Real> HeatingContext<T> {
    pub fn new(gamma: GasGamma<T>, k: T) -> Result<Self> {
        if !(k > T::zero()) || !k.is_finite() {
            return Err(Error::InvalidHeating(k.as_f64()));
        }
        Ok(Self { gamma, k })
    }

    pub fn gamma(&self) -> GasGamma<T> {
        self.gamma
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// k (gamma^2 - 1), the quantity deciding whether M** exists.
    pub fn k_margin(&self) -> T {
        let g = self.gamma.value();
        self.k * (g * g - T::one())
    }

    /// Subsonic critical Mach number M*, the largest subsonic upstream Mach
    /// that still admits heating parameter k.
    ///
    /// Both critical values are roots of k_max(M) = k. Writing
    /// b = k(gamma+1)+1 and s = (gamma+1) sqrt(k(k+1)), the roots are
    /// (b -+ s)/(1 - k(gamma^2-1)); since (b-s)(b+s) = 1 - k(gamma^2-1),
    /// they rationalize to 1/sqrt(b+s) and 1/sqrt(b-s). The rationalized
    /// forms are free of cancellation and cover the k(gamma^2-1) = 1 case
    /// without a branch.
    pub fn subsonic_critical(&self) -> T {
        let (b, s) = self.critical_parts();
        (b + s).sqrt().recip()
    }

    /// Supersonic critical Mach number M**; unbounded when
    /// k (gamma^2 - 1) >= 1.
    pub fn supersonic_critical(&self) -> CriticalMach<T> {
        let (b, s) = self.critical_parts();
        if b <= s {
            CriticalMach::Unbounded
        } else {
            CriticalMach::Finite((b - s).sqrt().recip())
        }
    }

    fn critical_parts(&self) -> (T, T) {
        let gp1 = self.gamma.gp1();
        let b = self.k * gp1 + T::one();
        let s = gp1 * (self.k * (self.k + T::one())).sqrt();
        (b, s)
    }
}

/// Maximum admissible heating parameter for upstream Mach number `m`.
/// Zero exactly at M = 1: a sonic flow accepts no heat.
pub fn k_max<T: Real>(m: T, g: GasGamma<T>) -> Result<T> {
    if !(m > T::zero()) {
        return Err(Error::NonPositiveMach(m.as_f64()));
    }
    let m2 = m * m;
    let num = (T::one() - m2).sq();
    let den = T::of(2.0) * g.gp1() * m2 * (T::one() + g.gm1().half() * m2);
    Ok(num / den)
}

/// Discriminant of the jump quadratic,
/// I = sqrt((g + 1/M^2)^2 - 2 (g+1) (1/M^2 + (g-1)/2) (1+k)),
/// clamped to zero when k sits on the choke boundary up to roundoff.
fn discriminant<T: Real>(m: T, ctx: &HeatingContext<T>) -> Result<T> {
    let limit = k_max(m, ctx.gamma)?;
    if ctx.k > limit * (T::one() + T::of(CHOKE_CLAMP_REL)) {
        return Err(Error::MaxHeatExceeded {
            k: ctx.k.as_f64(),
            k_max: limit.as_f64(),
            mach: m.as_f64(),
        });
    }
    let g = ctx.gamma.value();
    let inv_m2 = (m * m).recip();
    let b = g + inv_m2;
    let i2 = b * b
        - T::of(2.0) * ctx.gamma.gp1() * (inv_m2 + ctx.gamma.gm1().half()) * (T::one() + ctx.k);
    Ok(i2.max(T::zero()).sqrt())
}

/// Branch-resolved ratios across the heating point:
/// (I, u+/u-, p+/p-, M+).
pub(crate) fn jump_ratios<T: Real>(m: T, ctx: &HeatingContext<T>) -> Result<(T, T, T, T)> {
    if (m - T::one()).abs() < T::of(SONIC_GUARD) {
        return Err(Error::SonicUpstream);
    }
    let i = discriminant(m, ctx)?;
    let g = ctx.gamma.value();
    let gp1 = ctx.gamma.gp1();
    let b = g + (m * m).recip();
    // The weak branch: -I subsonic, +I supersonic. It reduces to the
    // identity as k -> 0 on both sides of M = 1.
    let (num, den) = if m < T::one() {
        (b - i, b + g * i)
    } else {
        (b + i, b - g * i)
    };
    let u_ratio = num / gp1;
    let p_ratio = m * m * den / gp1;
    let m_plus = (num / den).sqrt();
    Ok((i, u_ratio, p_ratio, m_plus))
}

/// Resolve the heating jump for a given upstream state.
pub fn heat_jump<T: Real>(
    upstream: &PrimitiveState<T>,
    ctx: &HeatingContext<T>,
) -> Result<HeatJump<T>> {
    if !(upstream.u > T::zero()) {
        return Err(Error::BackflowUnsupported(upstream.u.as_f64()));
    }
    let m_minus = upstream.mach(ctx.gamma);
    let (i, u_ratio, p_ratio, m_plus) = jump_ratios(m_minus, ctx)?;
    let downstream = PrimitiveState {
        rho: upstream.rho / u_ratio,
        u: upstream.u * u_ratio,
        p: upstream.p * p_ratio,
    };
    Ok(HeatJump {
        upstream: *upstream,
        downstream,
        m_minus,
        m_plus,
        i_value: i,
    })
}

/// Velocity ratio u+/u- (equivalently rho-/rho+) across subsonic heating,
/// as a function of the upstream Mach number. Strictly increasing.
pub fn subsonic_velocity_ratio<T: Real>(m: T, ctx: &HeatingContext<T>) -> Result<T> {
    check_subsonic(m)?;
    jump_ratios(m, ctx).map(|r| r.1)
}

/// Pressure ratio p+/p- across subsonic heating. Strictly decreasing.
pub fn subsonic_pressure_ratio<T: Real>(m: T, ctx: &HeatingContext<T>) -> Result<T> {
    check_subsonic(m)?;
    jump_ratios(m, ctx).map(|r| r.2)
}

fn check_subsonic<T: Real>(m: T) -> Result<()> {
    if !(m > T::zero()) {
        return Err(Error::NonPositiveMach(m.as_f64()));
    }
    if m >= T::one() {
        return Err(Error::DomainViolation {
            m1: 1.0,
            m4: m.as_f64(),
        });
    }
    Ok(())
}

/// Residuals of the duality between the two critical Mach numbers: each is
/// the image of the other under the adiabatic normal-shock Mach map.
/// Available only while M** is finite.
pub fn prandtl_residuals<T: Real>(ctx: &HeatingContext<T>) -> Result<(T, T)> {
    let mss = match ctx.supersonic_critical() {
        CriticalMach::Finite(m) => m,
        CriticalMach::Unbounded => return Err(Error::BranchUnavailable),
    };
    let ms = ctx.subsonic_critical();
    let map = |m: T| {
        let m2 = m * m;
        ((ctx.gamma.gm1() * m2 + T::of(2.0))
            / (T::of(2.0) * ctx.gamma.value() * m2 - ctx.gamma.gm1()))
        .sqrt()
    };
    Ok(((ms - map(mss)).abs(), (mss - map(ms)).abs()))
}

/// Dimensional heat flux Q recovered from k and the upstream state:
/// Q = k rho u (u^2/2 + h).
pub fn heat_flux<T: Real>(upstream: &PrimitiveState<T>, ctx: &HeatingContext<T>) -> Result<T> {
    if !(upstream.u > T::zero()) {
        return Err(Error::BackflowUnsupported(upstream.u.as_f64()));
    }
    let total_enthalpy = (upstream.u * upstream.u).half() + upstream.enthalpy(ctx.gamma);
    Ok(ctx.k * upstream.rho * upstream.u * total_enthalpy)
}
