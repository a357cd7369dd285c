//! Exact evaluation of the proof's constants.
//!
//! Most constants are small rationals. The connecting constant `ξ` is an
//! `(L+2)`-fold iterated power of `ξ_0` and stops being representable long
//! before it is useful; once a value would exceed [`EXACT_BIT_LIMIT`] bits it
//! is carried as a base-2 logarithm instead.

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{input, Result};
use crate::ratio::{choose2, factorial, Ratio};
use crate::walks::{delta_schedule, DeltaSchedule};

pub const EXACT_BIT_LIMIT: u64 = 1 << 14;

/// A positive constant, exact when small enough.
#[derive(Clone, Debug, PartialEq)]
pub enum Magnitude {
    Exact(Ratio),
    Log2(f64),
}

impl Magnitude {
    pub fn log2(&self) -> f64 {
        match self {
            Magnitude::Exact(r) => r.log2(),
            Magnitude::Log2(l) => *l,
        }
    }

    pub fn exact(&self) -> Option<&Ratio> {
        match self {
            Magnitude::Exact(r) => Some(r),
            Magnitude::Log2(_) => None,
        }
    }

    fn scale(&self, factor: &Ratio) -> Magnitude {
        match self {
            Magnitude::Exact(r) => Magnitude::Exact(Ratio(&r.0 * &factor.0)),
            Magnitude::Log2(l) => Magnitude::Log2(l + factor.log2()),
        }
    }

    fn min(a: Magnitude, b: Magnitude) -> Magnitude {
        match (&a, &b) {
            (Magnitude::Exact(x), Magnitude::Exact(y)) => {
                if x <= y {
                    a
                } else {
                    b
                }
            }
            _ if a.log2() <= b.log2() => a,
            _ => b,
        }
    }
}

impl std::fmt::Display for Magnitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Magnitude::Exact(r) => write!(f, "{r}"),
            Magnitude::Log2(l) => write!(f, "2^({l:.6e})"),
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Magnitude::Exact(r) => r.serialize(s),
            Magnitude::Log2(l) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("log2", l)?;
                m.end()
            }
        }
    }
}

fn bits(r: &Ratio) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Tight-path constants: `ρ = d^{C(k+1,2)}/(2k(k+1))`, `ζ = d^{C(k+1,2)}/(3(k+1))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathConstants {
    pub rho: Ratio,
    pub zeta: Ratio,
}

pub fn path_constants(d: &Ratio, k: usize) -> PathConstants {
    let kk = k as i64;
    let dk = d.pow(choose2(k as u32 + 1));
    PathConstants {
        rho: Ratio(&dk.0 / Ratio::from_integer(2 * kk * (kk + 1)).0),
        zeta: Ratio(dk.0 / Ratio::from_integer(3 * (kk + 1)).0),
    }
}

/// Connecting constants: `ξ_0 = ζ²c/(L+1)`, `ξ_{i+1} = d^{C(k,2)}/(2k!)·(ξ_i/2)^{k+1}`,
/// `ξ = ξ_{L+2}/2`, `ρ = d^{C(k,2)}ξ²/(8k²)`, `M = (L+2)k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectingConstants {
    pub levels: usize,
    pub c: Ratio,
    pub xi0: Ratio,
    pub xi_tower: Vec<Magnitude>,
    pub xi: Magnitude,
    pub rho: Magnitude,
    pub max_inner: usize,
}

pub fn connecting_constants(d: &Ratio, mu: &Ratio, zeta: &Ratio, k: usize) -> Result<ConnectingConstants> {
    check_unit("d", d)?;
    check_unit("zeta", zeta)?;
    if k == 0 {
        return input("k must be at least 1");
    }
    let schedule: DeltaSchedule = delta_schedule(mu)?;
    let l = schedule.levels;
    let xi0 = Ratio(zeta.pow(2).0 * &schedule.c.0 / Ratio::from_integer(l as i64 + 1).0);
    let dk = d.pow(choose2(k as u32));
    let coeff = Ratio(&dk.0 / Ratio::from_big(BigInt::from(2u32) * BigInt::from(factorial(k as u32)), BigInt::from(1)).0);
    let mut tower = vec![Magnitude::Exact(xi0.clone())];
    for _ in 0..l + 2 {
        let prev = tower.last().expect("nonempty");
        let next = match prev {
            Magnitude::Exact(x) if bits(x) * (k as u64 + 1) + bits(&coeff) <= EXACT_BIT_LIMIT => {
                let half = Ratio(&x.0 / Ratio::from_integer(2).0);
                Magnitude::Exact(Ratio(&coeff.0 * half.pow(k as u32 + 1).0))
            }
            _ => Magnitude::Log2(coeff.log2() + (k as f64 + 1.0) * (prev.log2() - 1.0)),
        };
        tower.push(next);
    }
    let xi = tower[l + 2].scale(&Ratio::new(1, 2));
    let rho_factor = Ratio(&dk.0 / Ratio::from_integer(8 * (k * k) as i64).0);
    let rho = match &xi {
        Magnitude::Exact(x) if 2 * bits(x) <= EXACT_BIT_LIMIT => Magnitude::Exact(Ratio(x.pow(2).0 * &rho_factor.0)),
        other => Magnitude::Log2(2.0 * other.log2() + rho_factor.log2()),
    };
    Ok(ConnectingConstants {
        levels: l,
        c: schedule.c,
        xi0,
        xi_tower: tower,
        xi,
        rho,
        max_inner: (l + 2) * k,
    })
}

/// Absorbing-path constants: `ζ = d^{C(2k+1,2)}μ^{2k+1}/2^{2k+3}`, connecting
/// constants for `(d, μ/2, ζ/2)`, `α = ζ²/(24(10k²+M))` and
/// `ρ = min(ρ'/4, d^{C(2k+1,2)}μ²/(8(2k+1)²))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbsorbingConstants {
    pub zeta: Ratio,
    pub connecting: ConnectingConstants,
    pub max_inner: usize,
    pub alpha: Ratio,
    pub rho: Magnitude,
}

impl AbsorbingConstants {
    /// Inclusion probability `p = ζ/(6(10k²+M)n^{2k−1})` of a single absorber.
    pub fn inclusion_probability(&self, k: usize, n: usize) -> Ratio {
        let denom = Ratio::from_integer(6 * (10 * (k * k) + self.max_inner) as i64).0
            * Ratio::from_integer(n as i64).pow(2 * k as u32 - 1).0;
        Ratio(&self.zeta.0 / denom)
    }
}

pub fn absorbing_constants(d: &Ratio, mu: &Ratio, k: usize) -> Result<AbsorbingConstants> {
    check_unit("d", d)?;
    check_unit("mu", mu)?;
    if k == 0 {
        return input("k must be at least 1");
    }
    let big = choose2(2 * k as u32 + 1);
    let zeta = Ratio(
        d.pow(big).0 * mu.pow(2 * k as u32 + 1).0 / Ratio::from_integer(2).pow(2 * k as u32 + 3).0,
    );
    let half = Ratio::new(1, 2);
    let connecting = connecting_constants(d, &Ratio(&mu.0 * &half.0), &Ratio(&zeta.0 * &half.0), k)?;
    let m = connecting.max_inner;
    let alpha = Ratio(zeta.pow(2).0 / Ratio::from_integer(24 * (10 * (k * k) + m) as i64).0);
    let second = Ratio(
        d.pow(big).0 * mu.pow(2).0 / Ratio::from_integer(8 * ((2 * k + 1) * (2 * k + 1)) as i64).0,
    );
    let rho = Magnitude::min(connecting.rho.scale(&Ratio::new(1, 4)), Magnitude::Exact(second));
    Ok(AbsorbingConstants {
        zeta,
        connecting,
        max_inner: m,
        alpha,
        rho,
    })
}

/// Constants of the main argument: `ζ_C = min(ζ_A/2, α_Aζ_P/2)`, connecting
/// constants for `(d, μ/2, ζ_C)`, `ρ = min(ρ_A, α_A²ρ_P/4, ρ_C/4)` and the
/// reservoir probability `α_A/4`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaperConstants {
    pub d: Ratio,
    pub mu: Ratio,
    pub k: usize,
    pub path: PathConstants,
    pub absorbing: AbsorbingConstants,
    pub zeta_c: Ratio,
    pub connecting: ConnectingConstants,
    pub rho: Magnitude,
    pub reservoir_probability: Ratio,
    /// `log2` of the smallest `n` with `2M_C²/(α_Aζ_P) < ξ_C/4·(α_A/8)^{M_C}·n`.
    pub log2_min_n: f64,
}

pub fn paper_constants(d: &Ratio, mu: &Ratio, k: usize) -> Result<PaperConstants> {
    let path = path_constants(d, k);
    let absorbing = absorbing_constants(d, mu, k)?;
    let half = Ratio::new(1, 2);
    let a = Ratio(&absorbing.zeta.0 * &half.0);
    let b = Ratio(&absorbing.alpha.0 * &path.zeta.0 * &half.0);
    let zeta_c = if a <= b { a } else { b };
    let connecting = connecting_constants(d, &Ratio(&mu.0 * &half.0), &zeta_c, k)?;
    let alpha_sq_rho = Ratio(absorbing.alpha.pow(2).0 * &path.rho.0 / Ratio::from_integer(4).0);
    let rho = Magnitude::min(
        Magnitude::min(absorbing.rho.clone(), Magnitude::Exact(alpha_sq_rho)),
        connecting.rho.scale(&Ratio::new(1, 4)),
    );
    let reservoir_probability = Ratio(&absorbing.alpha.0 / Ratio::from_integer(4).0);
    let mc = connecting.max_inner as f64;
    let lhs = 1.0 + 2.0 * mc.log2() - absorbing.alpha.log2() - path.zeta.log2();
    let rhs_no_n = connecting.xi.log2() - 2.0 + mc * (absorbing.alpha.log2() - 3.0);
    Ok(PaperConstants {
        d: d.clone(),
        mu: mu.clone(),
        k,
        path,
        absorbing,
        zeta_c,
        connecting,
        rho,
        reservoir_probability,
        log2_min_n: lhs - rhs_no_n,
    })
}

impl PaperConstants {
    /// Whether `n` is large enough for the proof's final size condition.
    pub fn admits(&self, n: usize) -> bool {
        (n as f64).log2() > self.log2_min_n
    }
}

fn check_unit(name: &str, r: &Ratio) -> Result<()> {
    if r.is_negative() || r.is_zero() || !r.in_unit_interval() {
        return input(format!("{name} = {r} must lie in (0, 1]"));
    }
    Ok(())
}
