//! Periodic r-adic integers `m + k/(1 − r^p)`.

use std::fmt;
use std::ops::{Add, Neg};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `m + k/(1 − r^p)` with `p` minimal and `0 ≤ k < r^p − 1`; `k = 0` is
/// stored with `p = 0`. As a rational number this is `m − k/(r^p − 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KappaValue {
    pub r: u64,
    pub m: i64,
    pub k: u64,
    pub p: u32,
}

fn repunit(r: u64, p: u32) -> Result<u128> {
    (r as u128)
        .checked_pow(p)
        .map(|x| x - 1)
        .ok_or_else(|| Error::BoundExceeded(format!("{r}^{p} overflows")))
}

impl KappaValue {
    pub fn integer(r: u64, m: i64) -> Self {
        KappaValue { r, m, k: 0, p: 0 }
    }

    pub fn zero(r: u64) -> Self {
        KappaValue::integer(r, 0)
    }

    /// `m + k/(1 − r^p)` for any `k ≤ r^p − 1`, normalized.
    pub fn new(r: u64, m: i64, k: u64, p: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::pre("base must be at least 2"));
        }
        if k == 0 {
            return Ok(KappaValue::integer(r, m));
        }
        if p == 0 {
            return Err(Error::pre("period must be positive"));
        }
        let full = repunit(r, p)?;
        let k = k as u128;
        if k > full {
            return Err(Error::pre(format!("k = {k} exceeds r^p − 1 = {full}")));
        }
        if k == full {
            // k/(1 − r^p) = −1
            return Ok(KappaValue::integer(r, m - 1));
        }
        // the minimal period divides p
        for q in (1..=p).filter(|q| p % q == 0) {
            let small = repunit(r, q)?;
            let scale = full / small;
            if k % scale == 0 {
                return Ok(KappaValue {
                    r,
                    m,
                    k: (k / scale) as u64,
                    p: q,
                });
            }
        }
        unreachable!("q = p always divides")
    }

    /// The r-adic value of a rational `num/den` with `den` coprime to `r`.
    pub fn from_rational(r: u64, num: i64, den: u64) -> Result<Self> {
        if den == 0 || den.gcd(&r) != 1 {
            return Err(Error::pre("denominator must be nonzero and coprime to r"));
        }
        // p = order of r modulo den
        let mut p = 1u32;
        let mut x = r % den;
        while den > 1 && x != 1 {
            x = x * r % den;
            p += 1;
        }
        let full = repunit(r, p)?;
        let (num, den) = (num as i128, den as i128);
        let m = Integer::div_floor(&num, &den) + i128::from(num.rem_euclid(den) != 0);
        // m − q = k/(r^p − 1) in [0, 1)
        let k = ((m * den - num) as u128) * full / den as u128;
        KappaValue::new(r, m as i64, k as u64, p)
    }

    pub fn is_integer(&self) -> bool {
        self.k == 0
    }

    /// The rational value as `(numerator, denominator)` in lowest terms.
    pub fn as_rational(&self) -> (i128, u128) {
        if self.k == 0 {
            return (self.m as i128, 1);
        }
        let den = repunit(self.r, self.p).expect("normalized");
        let num = self.m as i128 * den as i128 - self.k as i128;
        let g = (num.unsigned_abs()).gcd(&den);
        (num / g as i128, den / g)
    }

    /// The value modulo the integers, as `a/b` with `0 ≤ a < b`.
    pub fn class(&self) -> (u128, u128) {
        let (num, den) = self.as_rational();
        (num.rem_euclid(den as i128) as u128, den)
    }

    /// Same class modulo the integers.
    pub fn same_class(&self, other: &KappaValue) -> bool {
        self.class() == other.class()
    }

    /// Base-`r` digits of `k`, most significant first, `p` of them.
    pub fn period_digits(&self) -> Vec<usize> {
        let mut d = vec![0; self.p as usize];
        let mut k = self.k;
        for slot in d.iter_mut().rev() {
            *slot = (k % self.r) as usize;
            k /= self.r;
        }
        d
    }

    pub fn checked_add(&self, other: &KappaValue) -> Result<KappaValue> {
        if self.r != other.r {
            return Err(Error::pre("κ-values over different bases"));
        }
        if self.k == 0 || other.k == 0 {
            let (frac, p) = if self.k == 0 { (other.k, other.p) } else { (self.k, self.p) };
            return KappaValue::new(self.r, self.m + other.m, frac, p);
        }
        let p = self.p.lcm(&other.p);
        let full = repunit(self.r, p)?;
        let lift = |v: &KappaValue| -> Result<u128> { Ok(v.k as u128 * (full / repunit(v.r, v.p)?)) };
        let mut k = lift(self)? + lift(other)?;
        let mut m = self.m + other.m;
        if k >= full {
            k -= full;
            m -= 1;
        }
        KappaValue::new(self.r, m, k as u64, p)
    }
}

impl Add for KappaValue {
    type Output = KappaValue;

    fn add(self, other: KappaValue) -> KappaValue {
        self.checked_add(&other).expect("κ addition out of range")
    }
}

impl Neg for KappaValue {
    type Output = KappaValue;

    fn neg(self) -> KappaValue {
        if self.k == 0 {
            return KappaValue::integer(self.r, -self.m);
        }
        // −(m − k/(r^p − 1)) = (1 − m) − (r^p − 1 − k)/(r^p − 1)
        let full = repunit(self.r, self.p).expect("normalized") as u64;
        KappaValue::new(self.r, 1 - self.m, full - self.k, self.p).expect("normalized")
    }
}

impl fmt::Display for KappaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.as_rational();
        if den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}
