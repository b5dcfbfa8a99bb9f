use std::cmp::Ordering;

use super::matrix::ExactMatrix;
use super::ring::{Ring, RingElem};
use super::FuchsianError;

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Endpoint {
    Finite(f64),
    Infinity,
}

impl Endpoint {
    /// Projective coordinates `(x : y)`.
    pub fn projective(self) -> (f64, f64) {
        match self {
            Endpoint::Finite(x) => (x, 1.0),
            Endpoint::Infinity => (1.0, 0.0),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct AxisData {
    pub fixed_points: [Endpoint; 2],
    /// Index into `fixed_points` of the attracting endpoint.
    pub attracting: usize,
}

impl AxisData {
    pub fn attracting_point(&self) -> Endpoint {
        self.fixed_points[self.attracting]
    }

    pub fn repelling_point(&self) -> Endpoint {
        self.fixed_points[1 - self.attracting]
    }
}

/// Checks `|tr| > 2` exactly.
pub fn classify_trace(tr: &RingElem) -> Result<(), FuchsianError> {
    match tr.abs().cmp_value(&RingElem::int(2)) {
        Ordering::Greater => Ok(()),
        Ordering::Equal => Err(FuchsianError::Parabolic),
        Ordering::Less => Err(FuchsianError::Elliptic),
    }
}

/// `2·arccosh(x/2)` given `ln x`, accurate for very large `x`.
pub fn length_from_ln_trace(ln_x: f64) -> f64 {
    if ln_x < 20.0 {
        2.0 * (ln_x.exp() / 2.0).acosh()
    } else {
        let r = (-2.0 * ln_x).exp() * 4.0;
        2.0 * (ln_x - std::f64::consts::LN_2 + (1.0 + (1.0 - r).sqrt()).ln())
    }
}

/// `2·arccosh(|tr|/2)`.
pub fn trace_length(tr: &RingElem) -> Result<f64, FuchsianError> {
    classify_trace(tr)?;
    let ln_x = tr.ln_abs();
    if ln_x < 20.0 {
        Ok(2.0 * (tr.abs().to_f64() / 2.0).acosh())
    } else {
        Ok(length_from_ln_trace(ln_x))
    }
}

pub fn translation_length(m: &ExactMatrix) -> Result<f64, FuchsianError> {
    trace_length(&m.trace())
}

pub fn axis_endpoints(m: &ExactMatrix) -> Result<AxisData, FuchsianError> {
    let tr = m.trace();
    classify_trace(&tr)?;
    let f = m.to_f64();
    let [a, b, c, d] = f.0;
    if m.c.is_zero() {
        // z ↦ (a z + b)/d fixes ∞ and b/(d − a)
        let finite = Endpoint::Finite(b / (d - a));
        let inf_attracting = (a / d).abs() > 1.0;
        return Ok(AxisData {
            fixed_points: [finite, Endpoint::Infinity],
            attracting: if inf_attracting { 1 } else { 0 },
        });
    }
    let disc = Ring::sub(&Ring::mul(&tr, &tr), &RingElem::int(4)).to_f64();
    let bb = d - a;
    let sq = disc.sqrt();
    let q = -0.5 * (bb + if bb >= 0.0 { sq } else { -sq });
    let s1 = q / c;
    let s2 = -b / q;
    let mut pts = [s1, s2];
    pts.sort_by(|x, y| x.partial_cmp(y).expect("finite fixed points"));
    let attracting = if (c * pts[0] + d).abs() > 1.0 { 0 } else { 1 };
    Ok(AxisData { fixed_points: [Endpoint::Finite(pts[0]), Endpoint::Finite(pts[1])], attracting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::rep::rho_eval;
    use crate::words::Word;

    #[test]
    fn lengths() {
        let a = rho_eval(&Word::parse("a").unwrap()).unwrap();
        assert!((translation_length(&a).unwrap() - 1.762747174).abs() < 1e-9);
        let xy = ExactMatrix::from_ints(2, 1, 1, 1);
        assert!((translation_length(&xy).unwrap() - 1.924847300).abs() < 1e-9);
        assert_eq!(trace_length(&RingElem::int(2)), Err(FuchsianError::Parabolic));
        assert_eq!(trace_length(&RingElem::int(-1)), Err(FuchsianError::Elliptic));
        // large-trace branch agrees with the direct formula where both are accurate
        let x: f64 = 1e9;
        assert!((length_from_ln_trace(x.ln()) - 2.0 * (x / 2.0).acosh()).abs() < 1e-9);
    }

    #[test]
    fn diagonal_axis() {
        let t = rho_eval(&Word::parse("t").unwrap()).unwrap();
        let ax = axis_endpoints(&t).unwrap();
        assert_eq!(ax.fixed_points[1], Endpoint::Infinity);
        assert_eq!(ax.fixed_points[0], Endpoint::Finite(0.0));
        assert_eq!(ax.attracting_point(), Endpoint::Finite(0.0));
    }
}
