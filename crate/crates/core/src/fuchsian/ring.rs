use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact commutative ring used for matrix entries.
pub trait Ring: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// `p + q√2` with rational `p`, `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub p: BigRational,
    pub q: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.abs().to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_rational(r: &BigRational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn log_add_exp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x > y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp().ln_1p()
}

impl RingElem {
    pub fn new(p: BigRational, q: BigRational) -> RingElem {
        RingElem { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> RingElem {
        RingElem { p: rat(p), q: rat(q) }
    }

    pub fn int(p: i64) -> RingElem {
        RingElem::from_ints(p, 0)
    }

    pub fn sqrt2() -> RingElem {
        RingElem::from_ints(0, 1)
    }

    pub fn conj(&self) -> RingElem {
        RingElem { p: self.p.clone(), q: -&self.q }
    }

    /// `p² − 2q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - rat(2) * &self.q * &self.q
    }

    pub fn inv(&self) -> Option<RingElem> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(RingElem { p: &self.p / &n, q: -&self.q / &n })
    }

    pub fn signum(&self) -> Ordering {
        let sp = self.p.cmp(&BigRational::zero());
        let sq = self.q.cmp(&BigRational::zero());
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (a, _) => {
                // opposite signs: compare p² with 2q²
                match (&self.p * &self.p).cmp(&(rat(2) * &self.q * &self.q)) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> RingElem {
        if self.signum() == Ordering::Less {
            Ring::neg(self)
        } else {
            self.clone()
        }
    }

    pub fn cmp_value(&self, other: &RingElem) -> Ordering {
        Ring::sub(self, other).signum()
    }

    pub fn is_integral(&self) -> bool {
        self.p.is_integer() && self.q.is_integer()
    }

    /// `ln |p + q√2|`, robust for huge components and cancellation.
    pub fn ln_abs(&self) -> f64 {
        let half_ln2 = 0.5 * std::f64::consts::LN_2;
        let pz = self.p.is_zero();
        let qz = self.q.is_zero();
        if pz && qz {
            return f64::NEG_INFINITY;
        }
        if qz {
            return ln_rational(&self.p);
        }
        if pz {
            return ln_rational(&self.q) + half_ln2;
        }
        let lp = ln_rational(&self.p);
        let lq = ln_rational(&self.q) + half_ln2;
        let conj_mag = log_add_exp(lp, lq);
        if self.p.is_positive() == self.q.is_positive() {
            conj_mag
        } else {
            ln_rational(&self.norm()) - conj_mag
        }
    }

    pub fn to_f64(&self) -> f64 {
        let sign = match self.signum() {
            Ordering::Less => -1.0,
            Ordering::Equal => return 0.0,
            Ordering::Greater => 1.0,
        };
        sign * self.ln_abs().exp()
    }
}

impl Ring for RingElem {
    fn zero() -> Self {
        RingElem::int(0)
    }
    fn one() -> Self {
        RingElem::int(1)
    }
    fn add(&self, o: &Self) -> Self {
        RingElem { p: &self.p + &o.p, q: &self.q + &o.q }
    }
    fn sub(&self, o: &Self) -> Self {
        RingElem { p: &self.p - &o.p, q: &self.q - &o.q }
    }
    fn mul(&self, o: &Self) -> Self {
        let pp = &self.p * &o.p;
        let qq = &self.q * &o.q;
        RingElem { p: pp + rat(2) * qq, q: &self.p * &o.q + &self.q * &o.p }
    }
    fn neg(&self) -> Self {
        RingElem { p: -&self.p, q: -&self.q }
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, o: &RingElem) -> RingElem {
        Ring::add(self, o)
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, o: &RingElem) -> RingElem {
        Ring::sub(self, o)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, o: &RingElem) -> RingElem {
        Ring::mul(self, o)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        Ring::neg(self)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_negative() {
            write!(f, "{}-{}√2", self.p, -&self.q)
        } else {
            write!(f, "{}+{}√2", self.p, self.q)
        }
    }
}

impl RingElem {
    pub fn to_json(&self) -> serde_json::Value {
        let part = |r: &BigRational| {
            serde_json::json!({ "numerator": r.numer().to_string(), "denominator": r.denom().to_string() })
        };
        serde_json::json!({ "p": part(&self.p), "q": part(&self.q) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = RingElem::from_ints(1, 1);
        let y = x.conj();
        assert_eq!(&x * &y, RingElem::int(-1));
        assert_eq!(x.inv().unwrap(), RingElem::from_ints(-1, 1));
        assert_eq!(&RingElem::sqrt2() * &RingElem::sqrt2(), RingElem::int(2));
        assert_eq!(RingElem::from_ints(-1, 1).to_string(), "-1+1√2");
        assert_eq!(RingElem::from_ints(3, -2).to_string(), "3-2√2");
    }

    #[test]
    fn sign_and_logs() {
        assert_eq!(RingElem::from_ints(-1, 1).signum(), Ordering::Greater);
        assert_eq!(RingElem::from_ints(3, -2).signum(), Ordering::Greater);
        assert_eq!(RingElem::from_ints(-3, 2).signum(), Ordering::Less);
        let v = RingElem::from_ints(3, -2).to_f64();
        assert!((v - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
        let w = RingElem::from_ints(0, 2).to_f64();
        assert!((w - 2.0 * 2f64.sqrt()).abs() < 1e-14);
    }
}
