use std::fmt;

use num_bigint::BigInt;

use super::ring::{Ring, RingElem};

/// 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

pub type ExactMatrix = Mat2<RingElem>;
pub type IntMatrix = Mat2<BigInt>;

impl<R: Ring> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2 { a: R::one(), b: R::zero(), c: R::zero(), d: R::one() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    pub fn det(&self) -> R {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> R {
        self.a.add(&self.d)
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Self {
        Mat2 { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        Mat2 { a: self.a.neg(), b: self.b.neg(), c: self.c.neg(), d: self.d.neg() }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det() == R::one()
    }

    /// Balanced product tree; large halves run in parallel.
    pub fn product(ms: &[Self]) -> Self {
        match ms.len() {
            0 => Self::identity(),
            1 => ms[0].clone(),
            n => {
                let (l, r) = ms.split_at(n / 2);
                let (x, y) = if n > 256 {
                    rayon::join(|| Self::product(l), || Self::product(r))
                } else {
                    (Self::product(l), Self::product(r))
                };
                x.mul(&y)
            }
        }
    }
}

impl ExactMatrix {
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(RingElem::int(a), RingElem::int(b), RingElem::int(c), RingElem::int(d))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!([[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]])
    }

    pub fn to_f64(&self) -> Mat2f {
        Mat2f([self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64()])
    }
}

impl IntMatrix {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d))
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let e = |x: &BigInt| RingElem::new(x.clone().into(), num_rational::BigRational::from_integer(0.into()));
        Mat2::new(e(&self.a), e(&self.b), e(&self.c), e(&self.d))
    }
}

impl<R: fmt::Display> fmt::Display for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Floating point 2×2 matrix, row-major.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Mat2f(pub [f64; 4]);

impl Mat2f {
    pub fn identity() -> Mat2f {
        Mat2f([1.0, 0.0, 0.0, 1.0])
    }

    pub fn mul(&self, o: &Mat2f) -> Mat2f {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat2f([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn inverse_unimodular(&self) -> Mat2f {
        let [a, b, c, d] = self.0;
        Mat2f([d, -b, -c, a])
    }

    /// Scale so the largest entry has magnitude 1; Möbius action is unchanged.
    pub fn normalized(&self) -> Mat2f {
        let m = self.0.iter().fold(0f64, |acc, x| acc.max(x.abs()));
        if m == 0.0 || !m.is_finite() {
            return *self;
        }
        Mat2f(self.0.map(|x| x / m))
    }

    /// Action on a projective point `(x : y)`.
    pub fn apply(&self, pt: (f64, f64)) -> (f64, f64) {
        let [a, b, c, d] = self.0;
        (a * pt.0 + b * pt.1, c * pt.0 + d * pt.1)
    }
}
