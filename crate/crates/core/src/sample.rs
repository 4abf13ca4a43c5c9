//! Seeded random stability data: raw data, members, and points on exactly one facet.

use crate::charge::Tsd;
use crate::error::{Error, Result};
use crate::num::{q, Q};
use crate::quiver_core::WeightData;
use crate::region::{contraction_flow, is_member, nondegenerate, CompiledRegion};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How far partitions may stray from uniform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spread {
    /// A random point on the segment from the uniform partition to a wide one, biased
    /// towards the uniform end.
    Narrow,
    /// Parts drawn from `[1, 60]` before normalization.
    Wide,
}

/// Where `z` lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Upper,
    Real,
}

/// A member on which exactly one facet of the listed system is tight. Several listed
/// instances may share that facet; all of them are named.
#[derive(Debug, Clone)]
pub struct Boundary {
    pub tsd: Tsd,
    pub tight: Vec<String>,
}

const MAX_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone)]
pub struct Sampler {
    w: WeightData,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(w: &WeightData, seed: u64) -> Self {
        Self { w: w.clone(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn weights(&self) -> &WeightData {
        &self.w
    }

    /// A normalized random composition of 1 into `len` positive rationals.
    pub fn partition(&mut self, len: u32, spread: Spread) -> Vec<Q> {
        let raw: Vec<i64> = (0..len).map(|_| self.rng.gen_range(1..=60)).collect();
        let total: i64 = raw.iter().sum();
        let wide = raw.iter().map(|&x| q(x, total));
        match spread {
            Spread::Wide => wide.collect(),
            Spread::Narrow => {
                // log-uniform-ish step length in [1/64, 1]
                let octave = self.rng.gen_range(0..=5);
                let lambda = q(self.rng.gen_range(8..=16), 16 << octave);
                let uniform = q(1, len as i64);
                wide.map(|x| &uniform + &lambda * (x - &uniform)).collect()
            }
        }
    }

    pub fn z(&mut self, axis: Axis) -> (Q, Q) {
        let d = self.rng.gen_range(1..=12);
        let mut re = self.rng.gen_range(-36..=36);
        let im = match axis {
            Axis::Upper => self.rng.gen_range(1..=36),
            Axis::Real => {
                while re == 0 {
                    re = self.rng.gen_range(-36..=36);
                }
                0
            }
        };
        (q(re, d), q(im, d))
    }

    fn raw(&mut self, spread: Spread, axis: Axis) -> Result<Tsd> {
        let mu = self.w.weights().to_vec().into_iter().map(|w| self.partition(w, spread)).collect();
        let (re, im) = self.z(axis);
        Tsd::new(self.w.clone(), mu, re, im)
    }

    fn retry<T>(&mut self, what: &str, mut f: impl FnMut(&mut Self) -> Result<Option<T>>) -> Result<T> {
        for _ in 0..MAX_ATTEMPTS {
            if let Some(x) = f(self)? {
                return Ok(x);
            }
        }
        Err(Error::Invariant(format!("no {what} found for {} after {MAX_ATTEMPTS} draws", self.w)))
    }

    /// A non-degenerate datum, member or not.
    pub fn datum(&mut self, spread: Spread, axis: Axis) -> Result<Tsd> {
        self.retry("non-degenerate datum", |s| {
            let t = s.raw(spread, axis)?;
            Ok(nondegenerate(&t)?.then_some(t))
        })
    }

    /// A non-degenerate member, by rejection from narrow data.
    pub fn member(&mut self, axis: Axis) -> Result<Tsd> {
        self.retry("member", |s| {
            let t = s.datum(Spread::Narrow, axis)?;
            Ok(is_member(&t)?.then_some(t))
        })
    }

    /// Walks from an interior member towards a random datum and stops at the first facet.
    /// Type A has no facets and yields `None`.
    pub fn boundary(&mut self, axis: Axis) -> Result<Option<Boundary>> {
        let reg = CompiledRegion::cached(&self.w);
        if reg.forms.is_empty() {
            return Ok(None);
        }
        self.retry("boundary point", |s| s.try_boundary(&reg, axis)).map(Some)
    }

    fn try_boundary(&mut self, reg: &CompiledRegion, axis: Axis) -> Result<Option<Boundary>> {
        let x = self.raw(Spread::Narrow, Axis::Upper)?;
        let (dx, fx) = reg.form_values(&x);
        if fx.iter().any(|v| !v.is_positive()) {
            return Ok(None);
        }
        let y = self.raw(Spread::Wide, Axis::Upper)?;
        let y = Tsd::new(self.w.clone(), y.branches().to_vec(), x.z_re().clone(), x.z_im().clone())?;
        let (dy, fy) = reg.form_values(&y);
        // the form is `a/dx` at x and `b/dy` at y; it vanishes at t = a·dy / (a·dy − b·dx)
        let exit = fx
            .iter()
            .zip(&fy)
            .filter(|(_, b)| b.is_negative())
            .map(|(a, b)| Q::new(a * &dy, a * &dy - b * &dx))
            .min();
        let Some(t) = exit else { return Ok(None) };
        let on = contraction_flow(&x, &y, &t)?;
        let (re, im) = match axis {
            Axis::Upper => (on.z_re().clone(), on.z_im().clone()),
            Axis::Real => (self.z(Axis::Real).0, Q::zero()),
        };
        let on = Tsd::new(self.w.clone(), on.branches().to_vec(), re, im)?;
        if !nondegenerate(&on)? {
            return Ok(None);
        }
        let (_, values) = reg.form_values(&on);
        let mut tight = values.iter().enumerate().filter(|(_, v)| v.is_zero());
        let (Some((g, _)), None) = (tight.next(), tight.next()) else { return Ok(None) };
        let tight = reg.groups[g].iter().map(|&i| reg.instances[i].id.clone()).collect();
        Ok(Some(Boundary { tight, tsd: on }))
    }
}
