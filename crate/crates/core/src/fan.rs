//! Construction and classification of the self-similar wave fan produced
//! by a point heat source in an initially uniform flow.
//!
//! The flow left and right of the heating point each solve a classical
//! Riemann problem; the two halves are coupled through the heating jump at
//! x = 0. Three wave patterns exist (all velocities positive, left to
//! right in xi = x/t):
//!
//! ```text
//!   Type 1:  [1] left shock [4] heat [5]=[6] contact [7] right shock [8]
//!   Type 2:  [1] left shock [4] heat-to-choke [5] rarefaction [6]
//!            contact [7] right shock [8]
//!   Type 3:  [1] heat [5] rarefaction [6] contact [7] right shock [8]
//! ```
//!
//! Regions 1 and 8 are both the ambient state. Which pattern applies is
//! decided by the ambient Mach number against two thresholds: the root of
//! the choke coupling residual (Type 1 / Type 2) and the supersonic
//! critical Mach number M** (Type 2 / Type 3).

use crate::error::{Error, Result};
use crate::gas::{GasGamma, PrimitiveState};
use crate::heating::{
    heat_flux, heat_jump, jump_ratios, subsonic_pressure_ratio, subsonic_velocity_ratio,
    CriticalMach, HeatingContext,
};
use crate::real::Real;
use crate::roots;
use crate::waves::{
    crp_solve, in_fan_left, pressure_function, shock_family, solve_shock_mach, ShockFrame, Wave,
};

/// Classification ties narrower than this go to the choked / no-left-shock
/// branch; the boundary structures coincide, so either branch is valid and
/// a fixed rule keeps results deterministic.
const TIE_TOL: f64 = 1e-9;

/// Ambient sonic guard, matching the heating-side guard.
const SONIC_GUARD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionType {
    Type1,
    Type2,
    Type3,
}

impl std::fmt::Display for SolutionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolutionType::Type1 => write!(f, "Type1"),
            SolutionType::Type2 => write!(f, "Type2"),
            SolutionType::Type3 => write!(f, "Type3"),
        }
    }
}

/// The assembled self-similar solution. All speeds are lab-frame; the
/// heating discontinuity itself sits at speed zero.
#[derive(Clone, Copy, Debug)]
pub struct WaveFan<T> {
    pub kind: SolutionType,
    pub gamma: GasGamma<T>,
    pub k: T,
    /// Ambient state, regions 1 and 8.
    pub ambient: PrimitiveState<T>,
    /// Region 4, the upstream limit at x = 0-. `None` when the heating
    /// point sees the ambient flow directly (Type 3).
    pub pre_heat: Option<PrimitiveState<T>>,
    /// Region 5, the downstream limit at x = 0+.
    pub post_heat: PrimitiveState<T>,
    /// Region 6, between the rarefaction tail and the contact
    /// (equals `post_heat` for Type 1).
    pub contact_left: PrimitiveState<T>,
    /// Region 7, between the contact and the right shock.
    pub contact_right: PrimitiveState<T>,
    pub left_shock: Option<T>,
    pub raref_head: Option<T>,
    pub raref_tail: Option<T>,
    pub contact: T,
    pub right_shock: T,
}

/// A constant region of the fan in similarity coordinates.
#[derive(Clone, Copy, Debug)]
pub struct Region<T> {
    pub label: &'static str,
    pub lo: T,
    pub hi: T,
    pub state: PrimitiveState<T>,
}

/// Pressure ratios across the three nonlinear waves, each computable from
/// the ambient Mach number alone. Ratios of absent waves are 1.
#[derive(Clone, Copy, Debug)]
pub struct WaveStrengths<T> {
    /// p4 / p1 across the left shock.
    pub left_shock: T,
    /// p6 / p5 across the right-side rarefaction.
    pub rarefaction: T,
    /// p8 / p7 across the right shock.
    pub right_shock: T,
}

/// Coupling residual between the two half-problems: zero exactly when the
/// left shock bringing the flow to Mach `m4` makes the post-heating state
/// joinable to the ambient state by a contact and a right shock alone.
/// Strictly increasing in `m4`.
pub fn coupling_residual<T: Real>(m1: T, m4: T, ctx: &HeatingContext<T>) -> Result<T> {
    if !(m4 > T::zero()) || m4 > m1 {
        return Err(Error::DomainViolation {
            m1: m1.as_f64(),
            m4: m4.as_f64(),
        });
    }
    let g = ctx.gamma();
    let m_sl = solve_shock_mach(m1, m4, g)?;
    let ratios = shock_family(&ShockFrame { m1, m_sl }, g)?;
    let phi = subsonic_velocity_ratio(m4, ctx)?;
    let psi = subsonic_pressure_ratio(m4, ctx)?;
    let fp = ratios.pressure * psi;
    Ok(m1 * (ratios.velocity * phi - T::one())
        - (g.beta() / g.value()).sqrt() * (fp - T::one()) / (T::one() + g.tau() * fp).sqrt())
}

/// Coupling residual with the heating point at choke (m4 = M*). Its sign
/// separates Type 1 (>= 0) from Type 2 (< 0); defined for m1 >= M*.
pub fn choke_residual<T: Real>(m1: T, ctx: &HeatingContext<T>) -> Result<T> {
    coupling_residual(m1, ctx.subsonic_critical(), ctx)
}

/// The ambient Mach number at which the choke residual vanishes: the
/// Type 1 / Type 2 boundary.
pub fn choke_residual_root<T: Real>(ctx: &HeatingContext<T>) -> Result<T> {
    let ms = ctx.subsonic_critical();
    let y_lo = choke_residual(ms, ctx)?;
    if y_lo < T::zero() {
        return Err(Error::NoBracket("choke residual root"));
    }
    let mut hi = (ms + ms).max(ms + T::one());
    let mut tries = 0;
    while choke_residual(hi, ctx)? >= T::zero() {
        hi = hi + hi;
        tries += 1;
        if tries > 60 {
            return Err(Error::NoBracket("choke residual root"));
        }
    }
    // bisection; the residual falls through zero from y_lo >= 0
    let mut lo = if tries == 0 { ms } else { hi.half() };
    let mut hi = hi;
    loop {
        let mid = (lo + hi).half();
        if mid == lo || mid == hi {
            return Ok(mid);
        }
        if choke_residual(mid, ctx)? >= T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Decide which wave pattern the given ambient state produces.
pub fn classify<T: Real>(u1: &PrimitiveState<T>, ctx: &HeatingContext<T>) -> Result<SolutionType> {
    if !(u1.u > T::zero()) {
        return Err(Error::BackflowUnsupported(u1.u.as_f64()));
    }
    let m1 = u1.mach(ctx.gamma());
    if (m1 - T::one()).abs() < T::of(SONIC_GUARD) {
        return Err(Error::SonicUpstream);
    }
    let ms = ctx.subsonic_critical();
    if let CriticalMach::Finite(mss) = ctx.supersonic_critical() {
        if (m1 - mss).abs() <= T::of(TIE_TOL) * mss {
            return Ok(SolutionType::Type3);
        }
        if m1 > mss {
            // Type 3 territory; verify it does not overlap the Type 1
            // condition (possible only if the choke-residual root exceeded
            // M**, which no observed gas admits).
            if choke_residual(m1, ctx)? > T::of(TIE_TOL) {
                return Err(Error::AmbiguousClassification { m1: m1.as_f64() });
            }
            return Ok(SolutionType::Type3);
        }
    }
    if m1 <= ms {
        return Ok(SolutionType::Type1);
    }
    let y = choke_residual(m1, ctx)?;
    if y.abs() < T::of(TIE_TOL) {
        Ok(SolutionType::Type2)
    } else if y > T::zero() {
        Ok(SolutionType::Type1)
    } else {
        Ok(SolutionType::Type2)
    }
}

/// Classify and build the full fan.
pub fn solve<T: Real>(u1: &PrimitiveState<T>, ctx: &HeatingContext<T>) -> Result<WaveFan<T>> {
    match classify(u1, ctx)? {
        SolutionType::Type1 => build_type1(u1, ctx),
        SolutionType::Type2 => build_type2(u1, ctx),
        SolutionType::Type3 => build_type3(u1, ctx),
    }
}

/// Bisection over a fallible residual with f(lo) <= 0 <= f(hi).
fn bisect_increasing<T: Real>(
    mut lo: T,
    mut hi: T,
    f: impl Fn(T) -> Result<T>,
) -> Result<T> {
    loop {
        let mid = (lo + hi).half();
        if mid == lo || mid == hi {
            return Ok(mid);
        }
        if f(mid)? > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Type 1: a left shock decelerates the ambient flow to `m4`, heating
/// leaves the flow subsonic, and the downstream Riemann problem closes
/// with a contact and right shock only. The shock strength is the root of
/// the pressure-form coupling equation.
pub fn build_type1<T: Real>(u1: &PrimitiveState<T>, ctx: &HeatingContext<T>) -> Result<WaveFan<T>> {
    if !(u1.u > T::zero()) {
        return Err(Error::BackflowUnsupported(u1.u.as_f64()));
    }
    let g = ctx.gamma();
    let gamma = g.value();
    let m1 = u1.mach(g);
    let a1 = u1.sound_speed(g);
    let ms = ctx.subsonic_critical();
    let p1 = u1.p;

    let mach_at = |p4: T| -> Result<T> {
        let u4 = u1.u - pressure_function(p4, u1, g)?;
        let radical = u1.rho / gamma * (g.gp1() + g.gm1() * p1 / p4)
            / (g.gm1() * p4 + g.gp1() * p1);
        Ok(u4 * radical.sqrt())
    };
    let residual = |p4: T| -> Result<T> {
        let m4 = mach_at(p4)?;
        let phi = subsonic_velocity_ratio(m4, ctx)?;
        let psi = subsonic_pressure_ratio(m4, ctx)?;
        let u4 = u1.u - pressure_function(p4, u1, g)?;
        Ok(u1.u + pressure_function(p4 * psi, u1, g)? - phi * u4)
    };

    // Admissible pre-heat pressures: from the weakest shock that keeps
    // heating possible (no shock when m1 <= M*, the shock reaching M*
    // otherwise) up to the shock that stalls the flow entirely (m4 -> 0).
    let p_lo = if m1 > ms {
        let m_sl = solve_shock_mach(m1, ms, g)?;
        p1 * shock_family(&ShockFrame { m1, m_sl }, g)?.pressure
    } else {
        p1
    };
    let x_max = (g.gp1() * m1 + (g.gp1().sq() * m1 * m1 + T::of(16.0)).sqrt()) / T::of(4.0);
    let p_hi =
        p1 * (T::of(2.0) * gamma * x_max.sq() - g.gm1()) / g.gp1() * (T::one() - T::of(1e-12));

    let r_lo = residual(p_lo)?;
    let edge_tol = T::of(1e-11) * (u1.u + a1);
    let p4 = if r_lo >= T::zero() {
        if r_lo > edge_tol {
            return Err(Error::NoBracket("pre-heat pressure"));
        }
        p_lo // boundary structure: the root sits on the choke edge
    } else {
        if residual(p_hi)? <= T::zero() {
            return Err(Error::NoBracket("pre-heat pressure"));
        }
        bisect_increasing(p_lo, p_hi, residual)?
    };

    let u4 = u1.u - pressure_function(p4, u1, g)?;
    let rho4 = u1.rho * (g.gm1() * p1 + g.gp1() * p4) / (g.gm1() * p4 + g.gp1() * p1);
    let pre = PrimitiveState::new(rho4, u4, p4)?;
    let post = heat_jump(&pre, ctx)?.downstream;

    // lab-frame shock speed recovered from the pressure ratio
    let x = ((g.gp1() * p4 / p1 + g.gm1()) / (T::of(2.0) * gamma)).sqrt();
    let s_left = (m1 - x) * a1;

    assemble(
        SolutionType::Type1,
        u1,
        Some(pre),
        post,
        Some(s_left),
        ctx,
    )
}

/// Type 2: the left shock decelerates the flow to exactly M*, heating
/// chokes it (sonic downstream), and a rarefaction anchored at x = 0 opens
/// toward the contact and right shock.
pub fn build_type2<T: Real>(u1: &PrimitiveState<T>, ctx: &HeatingContext<T>) -> Result<WaveFan<T>> {
    if !(u1.u > T::zero()) {
        return Err(Error::BackflowUnsupported(u1.u.as_f64()));
    }
    let g = ctx.gamma();
    let m1 = u1.mach(g);
    let a1 = u1.sound_speed(g);
    let ms = ctx.subsonic_critical();
    let m_sl = solve_shock_mach(m1, ms, g)?;
    let ratios = shock_family(&ShockFrame { m1, m_sl }, g)?;
    let pre = PrimitiveState::new(
        u1.rho * ratios.density,
        u1.u * ratios.velocity,
        u1.p * ratios.pressure,
    )?;
    // Choke-point ratios evaluated at M* itself, where the discriminant is
    // exactly zero; the downstream state is exactly sonic.
    let phi = subsonic_velocity_ratio(ms, ctx)?;
    let psi = subsonic_pressure_ratio(ms, ctx)?;
    let u5 = pre.u * phi;
    let post = PrimitiveState::new(pre.rho * pre.u / u5, u5, pre.p * psi)?;

    assemble(
        SolutionType::Type2,
        u1,
        Some(pre),
        post,
        Some(m_sl * a1),
        ctx,
    )
}

/// Type 3: the ambient flow is fast enough (m1 >= M**) to take the heat
/// directly; no left-going wave exists.
pub fn build_type3<T: Real>(u1: &PrimitiveState<T>, ctx: &HeatingContext<T>) -> Result<WaveFan<T>> {
    if !(u1.u > T::zero()) {
        return Err(Error::BackflowUnsupported(u1.u.as_f64()));
    }
    let post = heat_jump(u1, ctx)?.downstream;
    assemble(SolutionType::Type3, u1, None, post, None, ctx)
}

/// Close the right half with CRP(post-heat, ambient), check the produced
/// pattern matches the requested type, assemble and validate the fan.
fn assemble<T: Real>(
    kind: SolutionType,
    ambient: &PrimitiveState<T>,
    pre_heat: Option<PrimitiveState<T>>,
    post_heat: PrimitiveState<T>,
    left_shock: Option<T>,
    ctx: &HeatingContext<T>,
) -> Result<WaveFan<T>> {
    let g = ctx.gamma();
    let crp = crp_solve(&post_heat, ambient, g)?;
    let a1 = ambient.sound_speed(g);

    // right wave must be a shock (possibly degenerate as k -> 0)
    let right_shock = match crp.right_wave {
        Wave::Shock { speed } => speed,
        Wave::Rarefaction { head, .. } => {
            if crp.p_star < ambient.p * (T::one() - T::of(1e-10)) {
                return Err(Error::StructureMismatch(format!(
                    "right wave is a rarefaction (p* = {} < p8 = {})",
                    crp.p_star, ambient.p
                )));
            }
            head
        }
    };

    let (contact_left, raref_head, raref_tail) = match kind {
        SolutionType::Type1 => {
            // the downstream Riemann problem must contribute no left wave
            let gap = (crp.p_star - post_heat.p).abs() / post_heat.p;
            if gap > T::of(1e-6) {
                return Err(Error::StructureMismatch(format!(
                    "left wave of the downstream Riemann problem has strength {gap}"
                )));
            }
            (post_heat, None, None)
        }
        SolutionType::Type2 | SolutionType::Type3 => {
            let (head, tail) = match crp.left_wave {
                Wave::Rarefaction { head, tail } => (head, tail),
                Wave::Shock { .. } => {
                    return Err(Error::StructureMismatch(
                        "downstream Riemann problem produced a left shock".into(),
                    ))
                }
            };
            if kind == SolutionType::Type2 && head.abs() > T::of(1e-6) * a1 {
                return Err(Error::StructureMismatch(format!(
                    "choked rarefaction head moves at {head}, expected 0"
                )));
            }
            if kind == SolutionType::Type3 && head < -T::of(1e-9) * a1 {
                return Err(Error::StructureMismatch(format!(
                    "supersonic rarefaction head moves left at {head}"
                )));
            }
            let contact_left = PrimitiveState::new(
                post_heat.rho * (crp.p_star / post_heat.p).powf(g.value().recip()),
                crp.u_star,
                crp.p_star,
            )?;
            // clamp the head of the choked fan to the heating point
            let head = if kind == SolutionType::Type2 { head.min(T::zero()) } else { head };
            (contact_left, Some(head), Some(tail))
        }
    };

    let contact_right = PrimitiveState::new(crp.rho_star_right, crp.u_star, crp.p_star)?;

    let fan = WaveFan {
        kind,
        gamma: g,
        k: ctx.k(),
        ambient: *ambient,
        pre_heat,
        post_heat,
        contact_left,
        contact_right,
        left_shock,
        raref_head,
        raref_tail,
        contact: crp.u_star,
        right_shock,
    };
    fan.validate()?;
    Ok(fan)
}

impl<T: Real> WaveFan<T> {
    /// The state feeding the heating point (region 4, or the ambient state
    /// for Type 3).
    pub fn pre_heat_state(&self) -> PrimitiveState<T> {
        self.pre_heat.unwrap_or(self.ambient)
    }

    /// Dimensional heat flux of this fan, from the pre-heating state.
    pub fn heat_flux(&self) -> T {
        let ctx = HeatingContext::new(self.gamma, self.k).expect("fan carries a valid context");
        heat_flux(&self.pre_heat_state(), &ctx).expect("pre-heat state has positive velocity")
    }

    /// All wave speeds present in the fan, labeled, in left-to-right order.
    /// The heating discontinuity itself is pinned at zero.
    pub fn wave_speeds(&self) -> Vec<(&'static str, T)> {
        let mut v = Vec::with_capacity(6);
        if let Some(s) = self.left_shock {
            v.push(("left_shock", s));
        }
        v.push(("heating", T::zero()));
        if let (Some(h), Some(t)) = (self.raref_head, self.raref_tail) {
            v.push(("raref_head", h));
            v.push(("raref_tail", t));
        }
        v.push(("contact", self.contact));
        v.push(("right_shock", self.right_shock));
        v
    }

    /// Largest wave-speed magnitude; bounds the spread of the fan.
    pub fn max_speed(&self) -> T {
        self.wave_speeds()
            .into_iter()
            .map(|(_, s)| s.abs())
            .fold(T::zero(), T::max)
    }

    /// Constant regions of the fan in xi = x/t, outermost bounds infinite.
    /// Zero-width regions (region 5 of Type 2) are included.
    pub fn constant_regions(&self) -> Vec<Region<T>> {
        let inf = T::infinity();
        let mut v = Vec::with_capacity(6);
        match self.kind {
            SolutionType::Type1 => {
                let sl = self.left_shock.expect("Type 1 has a left shock");
                v.push(Region { label: "1", lo: -inf, hi: sl, state: self.ambient });
                v.push(Region { label: "4", lo: sl, hi: T::zero(), state: self.pre_heat_state() });
                v.push(Region { label: "5", lo: T::zero(), hi: self.contact, state: self.post_heat });
            }
            SolutionType::Type2 => {
                let sl = self.left_shock.expect("Type 2 has a left shock");
                let tail = self.raref_tail.expect("Type 2 has a rarefaction");
                v.push(Region { label: "1", lo: -inf, hi: sl, state: self.ambient });
                v.push(Region { label: "4", lo: sl, hi: T::zero(), state: self.pre_heat_state() });
                v.push(Region { label: "5", lo: T::zero(), hi: T::zero(), state: self.post_heat });
                v.push(Region { label: "6", lo: tail, hi: self.contact, state: self.contact_left });
            }
            SolutionType::Type3 => {
                let head = self.raref_head.expect("Type 3 has a rarefaction");
                let tail = self.raref_tail.expect("Type 3 has a rarefaction");
                v.push(Region { label: "1", lo: -inf, hi: T::zero(), state: self.ambient });
                v.push(Region { label: "5", lo: T::zero(), hi: head, state: self.post_heat });
                v.push(Region { label: "6", lo: tail, hi: self.contact, state: self.contact_left });
            }
        }
        v.push(Region {
            label: "7",
            lo: self.contact,
            hi: self.right_shock,
            state: self.contact_right,
        });
        v.push(Region { label: "8", lo: self.right_shock, hi: inf, state: self.ambient });
        v
    }

    /// The six canonical region states in order 1, 4, 5, 6, 7, 8.
    pub fn region_states(&self) -> [(&'static str, PrimitiveState<T>); 6] {
        [
            ("1", self.ambient),
            ("4", self.pre_heat_state()),
            ("5", self.post_heat),
            ("6", self.contact_left),
            ("7", self.contact_right),
            ("8", self.ambient),
        ]
    }

    /// Evaluate the fan at similarity coordinate xi = x/t. At xi = 0 the
    /// post-heating limit is returned.
    pub fn sample_xi(&self, xi: T) -> PrimitiveState<T> {
        if xi < T::zero() {
            return match self.left_shock {
                Some(s) if xi < s => self.ambient,
                Some(_) => self.pre_heat_state(),
                None => self.ambient,
            };
        }
        if xi >= self.right_shock {
            return self.ambient;
        }
        if xi >= self.contact {
            return self.contact_right;
        }
        if let (Some(head), Some(tail)) = (self.raref_head, self.raref_tail) {
            if xi >= tail {
                self.contact_left
            } else if xi > head {
                in_fan_left(&self.post_heat, xi, self.gamma)
            } else {
                self.post_heat
            }
        } else {
            self.post_heat
        }
    }

    /// Evaluate the fan at position x and time t > 0.
    pub fn sample(&self, x: T, t: T) -> PrimitiveState<T> {
        assert!(t > T::zero(), "self-similar solution needs t > 0");
        self.sample_xi(x / t)
    }

    /// Re-run the full invariant suite on this fan.
    pub fn validate(&self) -> Result<()> {
        let g = self.gamma;
        let fail = |what: String| Err(Error::InvariantViolation(what));
        let a1 = self.ambient.sound_speed(g);
        let speed_tol = T::of(1e-8) * (a1 + self.ambient.u.abs());

        for (label, s) in self.region_states() {
            if !(s.rho > T::zero()) || !(s.p > T::zero()) {
                return fail(format!("region {label} is not physical: {s:?}"));
            }
        }

        // heating balance between the pre- and post-heating states
        let up = self.pre_heat_state();
        let dn = self.post_heat;
        let mass = (up.rho * up.u - dn.rho * dn.u).abs() / (up.rho * up.u).abs();
        let mom_up = up.rho * up.u * up.u + up.p;
        let mom = (mom_up - (dn.rho * dn.u * dn.u + dn.p)).abs() / mom_up;
        let e_up = ((up.u * up.u).half() + up.enthalpy(g)) * (T::one() + self.k);
        let e_dn = (dn.u * dn.u).half() + dn.enthalpy(g);
        let energy = (e_up - e_dn).abs() / e_up;
        let tol = T::of(1e-10);
        if mass > tol || mom > tol || energy > tol {
            return fail(format!(
                "heating balance residuals ({mass}, {mom}, {energy}) exceed 1e-10"
            ));
        }

        // contact continuity
        let (l, r) = (self.contact_left, self.contact_right);
        if (l.p - r.p).abs() / r.p > tol || (l.u - r.u).abs() / r.u.abs() > tol {
            return fail("pressure or velocity jumps across the contact".into());
        }
        if (self.contact - l.u).abs() > speed_tol {
            return fail("contact speed differs from the adjacent velocity".into());
        }

        // right shock: jump conditions against the ambient state
        let s = self.right_shock;
        let c7 = self.contact_right.to_conserved(g);
        let c8 = self.ambient.to_conserved(g);
        let f7 = [
            r.rho * r.u,
            r.rho * r.u * r.u + r.p,
            (c7.energy + r.p) * r.u,
        ];
        let amb = self.ambient;
        let f8 = [
            amb.rho * amb.u,
            amb.rho * amb.u * amb.u + amb.p,
            (c8.energy + amb.p) * amb.u,
        ];
        let u7v = [c7.rho, c7.mom, c7.energy];
        let u8v = [c8.rho, c8.mom, c8.energy];
        for i in 0..3 {
            let lhs = f8[i] - f7[i];
            let rhs = s * (u8v[i] - u7v[i]);
            let scale = f8[i].abs().max(f7[i].abs()).max(T::one());
            if (lhs - rhs).abs() / scale > tol {
                return fail(format!("right-shock jump residual in component {i}"));
            }
        }
        // entropy condition on the right shock
        if (s - amb.u) / a1 < T::one() - T::of(1e-7) {
            return fail("right shock violates the entropy condition".into());
        }

        // ordering
        if let Some(sl) = self.left_shock {
            if sl > speed_tol {
                return fail(format!("left shock speed {sl} is positive"));
            }
            if (up.u - sl) / a1 < T::one() - T::of(1e-7) {
                return fail("left shock violates the entropy condition".into());
            }
        }
        if let (Some(h), Some(t)) = (self.raref_head, self.raref_tail) {
            if h < -speed_tol {
                return fail(format!("rarefaction head speed {h} is negative"));
            }
            if t < h - speed_tol || self.contact < t - speed_tol {
                return fail("rarefaction is not ordered before the contact".into());
            }
        }
        if self.right_shock < self.contact - speed_tol {
            return fail("right shock is not the fastest right-going wave".into());
        }
        if !(self.contact > T::zero()) {
            return fail("contact does not move right".into());
        }

        // per-pattern Mach layout
        let m4 = up.mach(g);
        let m5 = dn.mach(g);
        match self.kind {
            SolutionType::Type1 => {
                if self.pre_heat.is_none() || self.raref_head.is_some() {
                    return fail("Type 1 layout requires a left shock and no rarefaction".into());
                }
                if !(m4 < m5 && m5 < T::one() + T::of(1e-9)) {
                    return fail(format!("Type 1 needs M4 < M5 < 1, got ({m4}, {m5})"));
                }
                if !(up.u > T::zero()) || dn.u < up.u * (T::one() - T::of(1e-12)) {
                    return fail("Type 1 needs u5 > u4 > 0".into());
                }
            }
            SolutionType::Type2 => {
                if (m5 - T::one()).abs() > T::of(1e-8) {
                    return fail(format!("Type 2 is choked: M5 = {m5} is not 1"));
                }
                let head = self.raref_head.expect("checked above");
                if head.abs() > T::of(1e-8) * a1.max(T::one()) {
                    return fail(format!("Type 2 rarefaction head {head} is not at 0"));
                }
                if !(m4 < m5) {
                    return fail(format!("Type 2 needs M4 < M5, got ({m4}, {m5})"));
                }
            }
            SolutionType::Type3 => {
                if self.pre_heat.is_some() || self.left_shock.is_some() {
                    return fail("Type 3 has no left-going waves".into());
                }
                if !(m5 >= T::one() - T::of(1e-9) && m4 > m5 - T::of(1e-9)) {
                    return fail(format!("Type 3 needs M4 > M5 >= 1, got ({m4}, {m5})"));
                }
            }
        }
        Ok(())
    }
}

/// Wave strengths recomputed from the ambient Mach number alone, through
/// the Mach-space coupling equations rather than the pressure-space
/// construction; an independent route for cross-checking built fans.
pub fn wave_strengths<T: Real>(
    m1: T,
    ctx: &HeatingContext<T>,
    kind: SolutionType,
) -> Result<WaveStrengths<T>> {
    let g = ctx.gamma();
    let ms = ctx.subsonic_critical();
    match kind {
        SolutionType::Type1 => {
            // root of the coupling residual in m4
            let hi = ms.min(m1);
            let mut lo = hi * T::of(1e-3);
            let mut tries = 0;
            while coupling_residual(m1, lo, ctx)? > T::zero() {
                lo = lo * T::of(0.1);
                tries += 1;
                if tries > 60 {
                    return Err(Error::NoBracket("coupling residual in m4"));
                }
            }
            let m4 = if coupling_residual(m1, hi, ctx)? <= T::zero() {
                hi // boundary: root at the choke edge
            } else {
                bisect_increasing(lo, hi, |m| coupling_residual(m1, m, ctx))?
            };
            let m_sl = solve_shock_mach(m1, m4, g)?;
            let f2 = shock_family(&ShockFrame { m1, m_sl }, g)?.pressure;
            let psi = subsonic_pressure_ratio(m4, ctx)?;
            Ok(WaveStrengths {
                left_shock: f2,
                rarefaction: T::one(),
                right_shock: (f2 * psi).recip(),
            })
        }
        SolutionType::Type2 => {
            let m_sl = solve_shock_mach(m1, ms, g)?;
            let ratios = shock_family(&ShockFrame { m1, m_sl }, g)?;
            let phi = subsonic_velocity_ratio(ms, ctx)?;
            let psi = subsonic_pressure_ratio(ms, ctx)?;
            let w = m1 * phi * ratios.velocity;
            let r = rarefaction_strength(
                m1,
                -g.beta() * w,
                g.tau() * w,
                g.gp1() * psi * ratios.pressure,
                g,
            )?;
            Ok(WaveStrengths {
                left_shock: ratios.pressure,
                rarefaction: r,
                right_shock: (ratios.pressure * psi * r).recip(),
            })
        }
        SolutionType::Type3 => {
            let (_, u_ratio, p_ratio, m5) = jump_ratios(m1, ctx)?;
            if m1 <= T::one() {
                return Err(Error::StructureMismatch(
                    "Type 3 requires a supersonic ambient flow".into(),
                ));
            }
            let w = m1 * u_ratio;
            let spread = g.beta() * (m1 / m5) * u_ratio;
            let r = rarefaction_strength(m1, -spread, w + spread, g.gp1() * p_ratio, g)?;
            Ok(WaveStrengths {
                left_shock: T::one(),
                rarefaction: r,
                right_shock: (p_ratio * r).recip(),
            })
        }
    }
}

/// Solve the scalar equation fixing the rarefaction strength r = p6/p5:
/// (A r^theta + B - m1) sqrt(C r + gamma - 1) = sqrt(2/gamma) (C r/(gamma+1) - 1),
/// with theta = (gamma-1)/(2 gamma). The left side collects the velocity
/// change through the rarefaction, the right side the right-shock jump.
fn rarefaction_strength<T: Real>(m1: T, a: T, b: T, c: T, g: GasGamma<T>) -> Result<T> {
    let gamma = g.value();
    let theta = g.gm1() / (T::of(2.0) * gamma);
    let h = |r: T| -> T {
        (a * r.powf(theta) + b - m1) * (c * r + g.gm1()).sqrt()
            - (T::of(2.0) / gamma).sqrt() * (c / g.gp1() * r - T::one())
    };
    let lo = T::of(1e-12);
    let hi = T::one();
    let h_hi = h(hi);
    if h_hi >= T::zero() {
        // degenerate rarefaction at a structure boundary
        if h_hi.abs() < T::of(1e-9) {
            return Ok(T::one());
        }
        return Err(Error::NoBracket("rarefaction strength"));
    }
    if h(lo) <= T::zero() {
        return Err(Error::NoBracket("rarefaction strength"));
    }
    roots::bisect(lo, hi, h, T::zero())
}
