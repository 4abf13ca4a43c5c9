//! Stability data, exact central charges and phase comparison.
//!
//! Two evaluation paths share one convention: a rational reference path
//! (`central_charge`, `is_nondegenerate`) and a scaled-integer path (`ChargeTable`,
//! `ScaledPoint`) used by the batch checks. Tests hold them equal.

use crate::error::{Error, Result};
use crate::num::{fmt_q, lcm_denoms, qi, Int, Q};
use crate::quiver_core::{CoxeterData, KClass, StarQuiver, WeightData};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A totally semi-stable datum: one partition of 1 per branch plus `z` in the closed upper half plane.
/// `z` is the charge of the anchor vertex (`P0` for A and D, `X0` for E).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tsd {
    weights: WeightData,
    mu: Vec<Vec<Q>>,
    z_re: Q,
    z_im: Q,
}

impl Tsd {
    pub fn new(weights: WeightData, mu: Vec<Vec<Q>>, z_re: Q, z_im: Q) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if mu.len() != weights.l() {
            return bad(format!("expected {} branches, got {}", weights.l(), mu.len()));
        }
        for (i, part) in mu.iter().enumerate() {
            let w = weights.weight(i + 1) as usize;
            if part.len() != w {
                return bad(format!("branch {}: expected {w} parts, got {}", i + 1, part.len()));
            }
            if let Some(j) = part.iter().position(|x| !x.is_positive()) {
                return bad(format!("branch {}: part {} = {} is not positive", i + 1, j + 1, fmt_q(&part[j])));
            }
            let total: Q = part.iter().sum();
            if !total.is_one() {
                return bad(format!("branch {}: partition sums to {}, expected 1", i + 1, fmt_q(&total)));
            }
        }
        if z_im.is_negative() {
            return bad(format!("Im z = {} is negative", fmt_q(&z_im)));
        }
        if z_re.is_zero() && z_im.is_zero() {
            return bad("z must be nonzero".into());
        }
        Ok(Self { weights, mu, z_re, z_im })
    }

    /// `μᵢʲ = 1/wᵢ`.
    pub fn uniform(weights: &WeightData, z_re: Q, z_im: Q) -> Result<Self> {
        let mu = weights.weights().iter().map(|&w| vec![Q::new(BigInt::one(), BigInt::from(w)); w as usize]).collect();
        Self::new(weights.clone(), mu, z_re, z_im)
    }

    pub fn weights(&self) -> &WeightData {
        &self.weights
    }

    /// `μᵢʲ` with the superscript read cyclically.
    pub fn mu(&self, i: usize, j: i64) -> &Q {
        &self.mu[i - 1][self.weights.wrap(i, j) as usize - 1]
    }

    pub fn branches(&self) -> &[Vec<Q>] {
        &self.mu
    }

    pub fn z_re(&self) -> &Q {
        &self.z_re
    }

    pub fn z_im(&self) -> &Q {
        &self.z_im
    }

    pub fn is_real(&self) -> bool {
        self.z_im.is_zero()
    }

    /// Values of the free variables `μᵢʲ`, `j < wᵢ`, in variable order.
    pub fn free_values(&self) -> Vec<Q> {
        self.mu.iter().flat_map(|part| part[..part.len() - 1].iter().cloned()).collect()
    }
}

/// `Z = r·z + s` with rational `r` and real constant `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCharge {
    #[serde(with = "crate::num::qstr")]
    pub r: Q,
    #[serde(with = "crate::num::qstr")]
    pub s: Q,
}

impl SplitCharge {
    pub fn value(&self, z_re: &Q, z_im: &Q) -> (Q, Q) {
        (&self.r * z_re + &self.s, &self.r * z_im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseOrd {
    Lt,
    Eq,
    Gt,
}

/// Charge of a class as an affine function of the free μ variables:
/// `Z = r·z + Σ lin[t]·μ_t + cst`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeForm {
    pub r: Q,
    pub lin: Vec<Q>,
    pub cst: Q,
}

/// Expands `v` in the charge basis `P₀, δ, Sᵢʲ` and applies `Z(Sᵢʲ) = −μᵢʲ`, `Z(δ) = −1`,
/// measuring the remainder against the anchor.
pub fn charge_form(cox: &CoxeterData, v: &KClass) -> Result<ChargeForm> {
    let n = cox.n();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    let c = cox.charge_coords(v);
    let a = cox.charge_coords(cox.anchor_class());
    let r = Q::new(BigInt::from(c[0]), BigInt::from(a[0]));
    let rest = |t: usize| qi(c[t]) - &r * qi(a[t]);
    let cst = -rest(1);
    let lin = (2..n).map(|t| -rest(t)).collect();
    Ok(ChargeForm { r, lin, cst })
}

pub fn central_charge(tsd: &Tsd, cox: &CoxeterData, v: &KClass) -> Result<SplitCharge> {
    if tsd.weights() != &cox.weights {
        return Err(Error::WeightMismatch);
    }
    let f = charge_form(cox, v)?;
    let s = tsd.free_values().iter().zip(&f.lin).fold(f.cst.clone(), |acc, (m, c)| acc + m * c);
    Ok(SplitCharge { r: f.r, s })
}

/// Orders the arguments of two nonzero values in the closed upper half plane.
pub fn cmp_values<T: Signed + Clone>(x: (&T, &T), y: (&T, &T)) -> Result<PhaseOrd> {
    let ((xr, xi), (yr, yi)) = (x, y);
    if (xr.is_zero() && xi.is_zero()) || (yr.is_zero() && yi.is_zero()) {
        return Err(Error::ZeroCharge);
    }
    if xi.is_negative() || yi.is_negative() {
        return Err(Error::LowerHalfPlane);
    }
    let cross = xr.clone() * yi.clone() - xi.clone() * yr.clone();
    Ok(if cross.is_positive() {
        PhaseOrd::Lt
    } else if cross.is_negative() {
        PhaseOrd::Gt
    } else if xi.is_zero() && yi.is_zero() && xr.is_positive() != yr.is_positive() {
        // opposite rays on the real line: phase 0 against phase 1
        if xr.is_positive() {
            PhaseOrd::Lt
        } else {
            PhaseOrd::Gt
        }
    } else {
        PhaseOrd::Eq
    })
}

pub fn cmp_phase(x: &SplitCharge, y: &SplitCharge, z_re: &Q, z_im: &Q) -> Result<PhaseOrd> {
    let (xr, xi) = x.value(z_re, z_im);
    let (yr, yi) = y.value(z_re, z_im);
    cmp_values((&xr, &xi), (&yr, &yi))
}

/// First vector bundle `τᵏ X_u` (smallest `k ≥ 0` residue representative per orbit) on which
/// `Z` vanishes, found exactly from the progression `Z(τ^{k+p}X) = Z(τᵏX) − κ·r(X)`.
pub fn degenerate_vertex(tsd: &Tsd, cox: &CoxeterData) -> Option<(i64, usize)> {
    if !tsd.is_real() {
        return None;
    }
    let p = cox.period as i64;
    for u in 0..cox.n() {
        let mut v = cox.section_classes[u].clone();
        for k0 in 0..p {
            let z = central_charge(tsd, cox, &v).expect("weights checked by caller");
            let value = &z.r * tsd.z_re() + &z.s;
            let step = qi(-cox.kappa * cox.rank(&v));
            let m = -(value / step);
            if m.is_integer() {
                let m = i64::try_from(m.to_integer()).unwrap_or(i64::MAX / (2 * p));
                return Some((k0 + m * p, u));
            }
            v = cox.apply_phi(&v);
        }
    }
    None
}

/// `Z(τᵏX) ≠ 0` for every section vertex `X` and every `k ∈ ℤ`.
pub fn is_nondegenerate(tsd: &Tsd, cox: &CoxeterData, section: &StarQuiver) -> bool {
    debug_assert_eq!(section.len(), cox.n());
    degenerate_vertex(tsd, cox).is_none()
}

/// Scaled integer charge of `τ^{k₀} X_u`: `L·Z = r·z + Σ lin·μ + cst` with `L` the anchor rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledCharge {
    pub r: i64,
    pub lin: Vec<i64>,
    pub cst: i64,
}

/// Charges of one τ-period of the vector-bundle component, scaled to integers.
/// Other periods follow from the progression: each period adds `shift[u]` to `L·Z(τᵏX_u)`.
#[derive(Debug, Clone)]
pub struct ChargeTable {
    pub period: i64,
    pub n: usize,
    pub scale: i64,
    pub entries: Vec<CompiledCharge>,
    pub shift: Vec<i64>,
}

/// Coefficient bound under which the `i128` kernels are safe for points of at most
/// `SMALL_POINT_BITS` bits.
const SMALL_COEF_BITS: u64 = 16;
const SMALL_POINT_BITS: u64 = 40;

impl ChargeTable {
    pub fn new(cox: &CoxeterData) -> Self {
        let n = cox.n();
        let period = cox.period as i64;
        let a = cox.charge_coords(cox.anchor_class());
        let scale = a[0];
        let mut entries = Vec::with_capacity(n * period as usize);
        let mut level: Vec<KClass> = cox.section_classes.clone();
        for _ in 0..period {
            for v in &level {
                let c = cox.charge_coords(v);
                let r = c[0];
                let rest = |t: usize| -(scale * c[t] - r * a[t]);
                entries.push(CompiledCharge { r, lin: (2..n).map(rest).collect(), cst: rest(1) });
            }
            level = level.iter().map(|v| cox.apply_phi(v)).collect();
        }
        let shift = (0..n).map(|u| -scale * cox.kappa * cox.rank(&cox.section_classes[u])).collect();
        Self { period, n, scale, entries, shift }
    }

    pub fn get(&self, k0: i64, u: usize) -> &CompiledCharge {
        &self.entries[k0 as usize * self.n + u]
    }

    fn coef_bits(&self) -> u64 {
        let m = self
            .entries
            .iter()
            .flat_map(|e| e.lin.iter().chain([&e.r, &e.cst]))
            .chain(&self.shift)
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0);
        64 - m.leading_zeros() as u64
    }

    pub fn small_ok(&self) -> bool {
        self.coef_bits() <= SMALL_COEF_BITS
    }
}

/// A datum with all coordinates multiplied by the common denominator `den`.
#[derive(Debug, Clone)]
pub struct ScaledPoint<T> {
    pub den: T,
    pub mu: Vec<T>,
    pub zr: T,
    pub zi: T,
}

/// Scaled point on the `i128` fast path or the `BigInt` fallback.
#[derive(Debug, Clone)]
pub enum Scaled {
    Small(ScaledPoint<i128>),
    Big(ScaledPoint<BigInt>),
}

/// Runs a generic body against whichever integer carrier a [`Scaled`] holds.
#[macro_export]
macro_rules! with_scaled {
    ($s:expr, $p:ident => $body:expr) => {
        match $s {
            $crate::charge::Scaled::Small($p) => $body,
            $crate::charge::Scaled::Big($p) => $body,
        }
    };
}

impl Scaled {
    /// `small_ok` comes from the coefficient tables that will be evaluated on the point.
    pub fn from_tsd(tsd: &Tsd, small_ok: bool) -> Self {
        let free = tsd.free_values();
        let den = lcm_denoms(free.iter().chain([tsd.z_re(), tsd.z_im()]));
        let scale = |x: &Q| (x * Q::from_integer(den.clone())).to_integer();
        let mu: Vec<BigInt> = free.iter().map(scale).collect();
        let zr = scale(tsd.z_re());
        let zi = scale(tsd.z_im());
        let max_bits = mu.iter().chain([&den, &zr, &zi]).map(|x| x.bits()).max().unwrap_or(0);
        if small_ok && max_bits <= SMALL_POINT_BITS {
            let c = |x: &BigInt| i128::from_big(x);
            Scaled::Small(ScaledPoint { den: c(&den), mu: mu.iter().map(c).collect(), zr: c(&zr), zi: c(&zi) })
        } else {
            Scaled::Big(ScaledPoint { den, mu, zr, zi })
        }
    }
}

impl<T: Int> ScaledPoint<T> {
    /// `den · (Σ lin·μ + cst)`.
    pub fn form(&self, lin: &[i64], cst: i64) -> T {
        lin.iter()
            .zip(&self.mu)
            .filter(|(c, _)| **c != 0)
            .fold(T::from(cst) * self.den.clone(), |acc, (c, m)| acc + T::from(*c) * m.clone())
    }

    /// `den · L · Z(τᵏ X_u)` as `(re, im)`.
    pub fn charge(&self, table: &ChargeTable, k: i64, u: usize) -> (T, T) {
        let k0 = k.rem_euclid(table.period);
        let m = k.div_euclid(table.period);
        let c = table.get(k0, u);
        let cst = T::from(c.cst) + T::from(m) * T::from(table.shift[u]);
        let lin = c.lin.iter().zip(&self.mu).filter(|(a, _)| **a != 0).fold(cst * self.den.clone(), |acc, (a, x)| {
            acc + T::from(*a) * x.clone()
        });
        (T::from(c.r) * self.zr.clone() + lin, T::from(c.r) * self.zi.clone())
    }

    pub fn is_real(&self) -> bool {
        self.zi.is_zero()
    }

    /// Exact zero search along each residue progression (real `z` only).
    pub fn degenerate_vertex(&self, table: &ChargeTable) -> Option<(i64, usize)> {
        if !self.is_real() {
            return None;
        }
        for u in 0..table.n {
            let step = T::from(table.shift[u]) * self.den.clone();
            for k0 in 0..table.period {
                let (re, _) = self.charge(table, k0, u);
                if (re.clone() % step.clone()).is_zero() {
                    let m = (-(re / step.clone())).saturating_i64();
                    return Some((k0 + m.saturating_mul(table.period), u));
                }
            }
        }
        None
    }

    /// For real non-degenerate `z` and each residue `k₀ < p`: the first `k ≡ k₀ (mod p)` with
    /// `Z(τᵏX_u) > 0`. Along a residue class the real part strictly increases.
    pub fn first_positive(&self, table: &ChargeTable, u: usize) -> Vec<i64> {
        let step = T::from(table.shift[u]) * self.den.clone();
        (0..table.period)
            .map(|k0| {
                let (re, _) = self.charge(table, k0, u);
                let m_first = (-re).div_floor(&step).saturating_i64().saturating_add(1);
                k0.saturating_add(m_first.saturating_mul(table.period))
            })
            .collect()
    }

    /// For real non-degenerate `z`: `(lo, hi)` with every `Z(τᵏX) < 0` for `k < lo`
    /// and every `Z(τᵏX) > 0` for `k > hi`.
    pub fn sign_transitions(&self, table: &ChargeTable) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for u in 0..table.n {
            for first_pos in self.first_positive(table, u) {
                lo = lo.min(first_pos);
                hi = hi.max(first_pos.saturating_sub(table.period));
            }
        }
        (lo, hi)
    }
}
