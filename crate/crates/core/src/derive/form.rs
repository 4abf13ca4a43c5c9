use crate::num::{qi, Q};
use crate::quiver_core::WeightData;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Affine form `Σ coeffs[t]·μ_t + constant` over the free variables (`μᵢ^{wᵢ}` eliminated).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl LinearForm {
    pub fn zero(nv: usize) -> Self {
        Self { coeffs: vec![Q::zero(); nv], constant: Q::zero() }
    }

    pub fn constant(nv: usize, c: Q) -> Self {
        Self { coeffs: vec![Q::zero(); nv], constant: c }
    }

    /// The form of `μᵢʲ`, substituting `μᵢ^{wᵢ} = 1 − Σ_{j<wᵢ} μᵢʲ`; `j` is cyclic.
    pub fn mu(w: &WeightData, i: usize, j: i64) -> Self {
        let nv = w.free_vars();
        let wi = w.weight(i);
        let jj = w.wrap(i, j);
        let mut f = Self::zero(nv);
        if jj < wi {
            f.coeffs[w.var_index(i, jj)] = Q::one();
        } else {
            f.constant = Q::one();
            for t in 1..wi {
                f.coeffs[w.var_index(i, t)] = -Q::one();
            }
        }
        f
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &o.constant,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect(), constant: &self.constant * c }
    }

    pub fn scale_i(&self, c: i64) -> Self {
        self.scale(&qi(c))
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, v)| acc + a * v)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    /// Primitive integer multiple (positive factor only, so the half-space is unchanged).
    pub fn canonical(&self) -> IntForm {
        let den = self.coeffs.iter().chain([&self.constant]).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().chain([&self.constant]).map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let g = if g.is_zero() { BigInt::one() } else { g };
        let mut vals: Vec<i64> = ints.iter().map(|x| (x / &g).to_i64().expect("form coefficient fits i64")).collect();
        let constant = vals.pop().unwrap();
        IntForm { coeffs: vals, constant }
    }
}

/// Primitive integer affine form; the dedup key of a half-space `form ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntForm {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl IntForm {
    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn to_linear(&self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|c| qi(*c)).collect(), constant: qi(self.constant) }
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).fold(qi(self.constant), |acc, (a, v)| acc + qi(*a) * v)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), constant: -self.constant }
    }

    /// Renders `Σ c·var + const` with the type's variable names.
    pub fn pretty(&self, w: &WeightData) -> String {
        let mut out = String::new();
        for (t, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (i, j) = w.var_at(t);
            let name = w.var_name(i, j);
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                write!(out, " {sign} ").unwrap();
            }
            if c.abs() != 1 {
                write!(out, "{}", c.abs()).unwrap();
            }
            out.push_str(&name);
        }
        if self.constant != 0 || out.is_empty() {
            if out.is_empty() {
                write!(out, "{}", self.constant).unwrap();
            } else {
                write!(out, " {} {}", if self.constant < 0 { "-" } else { "+" }, self.constant.abs()).unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=0")]
    NonStrict,
    #[serde(rename = ">0")]
    Strict,
}

/// `form ≥ 0` (or `> 0`) with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub form: IntForm,
    pub sense: Sense,
    pub provenance: String,
}

impl Inequality {
    pub fn key(&self) -> (&IntForm, Sense) {
        (&self.form, self.sense)
    }

    /// Exact satisfaction at a point of free-variable values.
    pub fn holds(&self, x: &[Q]) -> bool {
        let v = self.form.eval(x);
        match self.sense {
            Sense::NonStrict => !v.is_negative(),
            Sense::Strict => v.is_positive(),
        }
    }
}
