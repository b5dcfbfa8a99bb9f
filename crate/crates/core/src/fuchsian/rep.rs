use std::collections::BTreeMap;

use super::matrix::{ExactMatrix, Mat2, Mat2f};
use super::ring::RingElem;
use super::FuchsianError;
use crate::words::{Gen, Sign, Word, A, B, T};

/// Assignment of determinant-one matrices to generators.
#[derive(Clone, Debug)]
pub struct Representation {
    images: BTreeMap<Gen, (ExactMatrix, ExactMatrix)>,
    floats: BTreeMap<Gen, (Mat2f, Mat2f)>,
}

impl Representation {
    pub fn new(images: Vec<(Gen, ExactMatrix)>) -> Result<Representation, FuchsianError> {
        let mut map = BTreeMap::new();
        let mut floats = BTreeMap::new();
        for (g, m) in images {
            if !m.is_unimodular() {
                return Err(FuchsianError::NotUnimodular);
            }
            let inv = m.inverse_unimodular();
            floats.insert(g, (m.to_f64(), inv.to_f64()));
            map.insert(g, (m, inv));
        }
        Ok(Representation { images: map, floats })
    }

    /// The once-punctured torus representation: `a ↦ A`, `t ↦ T`, `b ↦ T A T⁻¹`.
    pub fn rho() -> Representation {
        let r = RingElem::from_ints;
        let a = Mat2::new(r(0, 1), r(1, 1), r(-1, 1), r(0, 1));
        let t = Mat2::new(r(-1, 1), r(0, 0), r(0, 0), r(1, 1));
        let b = t.mul(&a).mul(&t.inverse_unimodular());
        Representation::new(vec![(A, a), (B, b), (T, t)]).expect("rho is unimodular")
    }

    /// `g ↦ C ρ(g) C⁻¹`.
    pub fn conjugated(&self, c: &ExactMatrix) -> Result<Representation, FuchsianError> {
        if !c.is_unimodular() {
            return Err(FuchsianError::NotUnimodular);
        }
        let ci = c.inverse_unimodular();
        Representation::new(self.images.iter().map(|(g, (m, _))| (*g, c.mul(m).mul(&ci))).collect())
    }

    pub fn generators(&self) -> Vec<Gen> {
        self.images.keys().copied().collect()
    }

    pub fn image(&self, g: Gen) -> Option<&ExactMatrix> {
        self.images.get(&g).map(|p| &p.0)
    }

    pub fn eval(&self, w: &Word) -> Result<ExactMatrix, FuchsianError> {
        let mut ms = Vec::with_capacity(w.len());
        for l in w.letters() {
            let (m, inv) = self.images.get(&l.gen).ok_or(FuchsianError::ForeignGenerator(l.gen))?;
            ms.push(if l.sign == Sign::Pos { m.clone() } else { inv.clone() });
        }
        Ok(Mat2::product(&ms))
    }

    /// Floating point image, renormalized along the way (projective class only).
    pub fn eval_f64(&self, w: &Word) -> Result<Mat2f, FuchsianError> {
        let mut acc = Mat2f::identity();
        for l in w.letters() {
            let (m, inv) = self.floats.get(&l.gen).ok_or(FuchsianError::ForeignGenerator(l.gen))?;
            acc = acc.mul(if l.sign == Sign::Pos { m } else { inv }).normalized();
        }
        Ok(acc)
    }

    pub fn letter_f64(&self, g: Gen, sign: Sign) -> Option<Mat2f> {
        self.floats.get(&g).map(|(m, inv)| if sign == Sign::Pos { *m } else { *inv })
    }
}

pub fn rho_eval(w: &Word) -> Result<ExactMatrix, FuchsianError> {
    Representation::rho().eval(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_matrices() {
        assert_eq!(rho_eval(&Word::parse("a").unwrap()).unwrap().to_string(), "[[0+1√2, 1+1√2], [-1+1√2, 0+1√2]]");
        assert_eq!(rho_eval(&Word::parse("b").unwrap()).unwrap().to_string(), "[[0+1√2, -1+1√2], [1+1√2, 0+1√2]]");
        let m = rho_eval(&Word::parse("a b'").unwrap()).unwrap();
        assert_eq!(m.trace(), RingElem::int(-2));
    }
}
