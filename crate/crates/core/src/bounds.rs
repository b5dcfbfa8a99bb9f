//! Arc-class censuses and the volume bound formulas built on them.

use std::collections::BTreeMap;

use crate::families::{self, FamilyError};
use crate::fuchsian::{self, FuchsianError, Representation};
use crate::words::{double_coset_split, split_to_arc_form, HnnSequence, ReducedSequence, Violation, Word, WordError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("cover degree must be at least 1")]
    ZeroDegree,
    #[error("parameter {name} = {value} out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("no bracketing root for n = {0}")]
    NoRoot(u64),
    #[error("sequence is not reduced: {0:?}")]
    NotReduced(Vec<Violation>),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Fuchsian(#[from] FuchsianError),
}

/// How terms are assigned to pants of the decomposition.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PantAssignment {
    /// Everything in pant 0.
    Single,
    /// Pant is the factor tag (1 or 2).
    ByFactor,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcClassCensus {
    pub pants: BTreeMap<u8, BTreeMap<Word, usize>>,
    pub num_pants: usize,
}

impl ArcClassCensus {
    pub fn distinct(&self) -> usize {
        self.pants.values().map(|m| m.len()).sum()
    }

    pub fn arcs(&self) -> usize {
        self.pants.values().flat_map(|m| m.values()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs() == 0
    }

    pub fn insert(&mut self, pant: u8, key: Word) {
        *self.pants.entry(pant).or_default().entry(key).or_insert(0) += 1;
    }
}

/// One arc class per term, keyed by the literal term word.
pub fn census(s: &ReducedSequence, assignment: PantAssignment) -> Result<ArcClassCensus, BoundsError> {
    let mut c = ArcClassCensus::default();
    match s {
        ReducedSequence::Hnn(h) => {
            let arcs = split_to_arc_form(h)?;
            c.num_pants = 1;
            for t in arcs.terms {
                c.insert(0, t.g);
            }
        }
        ReducedSequence::Amalgam(a) => {
            let v = a.violations();
            if !v.is_empty() {
                return Err(BoundsError::NotReduced(v));
            }
            c.num_pants = if assignment == PantAssignment::Single { 1 } else { 2 };
            for t in &a.terms {
                let pant = if assignment == PantAssignment::Single { 0 } else { t.factor.tag() };
                c.insert(pant, t.g.clone());
            }
        }
    }
    Ok(c)
}

/// Census keyed by the double-coset representative `h` of each term `a^p h b^q`,
/// without requiring the junctions to cancel. Terms inside `<a><b>` are skipped.
pub fn double_coset_census(s: &HnnSequence) -> ArcClassCensus {
    let mut c = ArcClassCensus { num_pants: 1, ..Default::default() };
    for t in &s.terms {
        let (_, h, _) = double_coset_split(&t.g);
        if !h.is_empty() {
            c.insert(0, h);
        }
    }
    c
}

/// `(v3/2)` times the number of distinct classes, summed over pants.
pub fn theorem1_bound(c: &ArcClassCensus) -> f64 {
    if c.is_empty() {
        log::warn!("empty census");
    }
    fuchsian::v3() / 2.0 * c.distinct() as f64
}

pub fn cover_adjust(bound: f64, degree: u64) -> Result<f64, BoundsError> {
    if degree == 0 {
        return Err(BoundsError::ZeroDegree);
    }
    Ok(bound / degree as f64)
}

/// `C n ln n`.
pub fn bps_upper_shape(n: u64, c: f64) -> Result<f64, BoundsError> {
    if n == 0 {
        return Err(BoundsError::OutOfRange { name: "n", value: 0.0 });
    }
    if !(c >= 0.0) || !c.is_finite() {
        return Err(BoundsError::OutOfRange { name: "C", value: c });
    }
    if c == 0.0 {
        log::warn!("upper-bound constant C is zero");
    }
    let n = n as f64;
    Ok(c * n * n.ln())
}

/// `(ln(ln3 L) - ln ln(ln3 L) - ln 3) / ln 3 - n`.
pub fn ln_relation_residual(n: u64, l: f64) -> f64 {
    let ln3 = 3f64.ln();
    let u = ln3 * l;
    (u.ln() - u.ln().ln() - ln3) / ln3 - n as f64
}

/// Root `L > e / ln 3` of [`ln_relation_residual`].
pub fn solve_ln(n: u64) -> Result<f64, BoundsError> {
    if n == 0 {
        return Err(BoundsError::OutOfRange { name: "n", value: 0.0 });
    }
    let ln3 = 3f64.ln();
    let mut lo = std::f64::consts::E / ln3;
    let mut hi = 2.0 * lo;
    while ln_relation_residual(n, hi) <= 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(BoundsError::NoRoot(n));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_relation_residual(n, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let l = 0.5 * (lo + hi);
    assert!(ln_relation_residual(n, l).abs() < 1e-9, "bisection residual");
    Ok(l)
}

/// `(v3 / (2 sqrt 2)) exp(sqrt(length) / 2)`.
pub fn pib2_bound(length: f64) -> Result<f64, BoundsError> {
    if !(length >= 0.0) {
        return Err(BoundsError::OutOfRange { name: "length", value: length });
    }
    Ok(fuchsian::v3() / (2.0 * 2f64.sqrt()) * (length.sqrt() / 2.0).exp())
}

/// `4 ln(sqrt(2) n)^2`.
pub fn pib2_length_cap(n: f64) -> f64 {
    4.0 * (2f64.sqrt() * n).ln().powi(2)
}

pub fn lin_length_inequality(n: u64) -> bool {
    let n = n as f64;
    4.0 + n + 2.0 * n.ln() <= 5.0 * n
}

/// `((v3/2) n, 5 n ell_max)`.
pub fn lin_bound(n: u64, ell_max: f64) -> Result<(f64, f64), BoundsError> {
    if n < 2 {
        return Err(BoundsError::OutOfRange { name: "n", value: n as f64 });
    }
    assert!(lin_length_inequality(n));
    let nf = n as f64;
    Ok((fuchsian::v3() / 2.0 * nf, 5.0 * nf * ell_max))
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ChainLink {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs <= rhs`.
    pub pass: bool,
}

impl ChainLink {
    fn le(name: &str, lhs: f64, rhs: f64) -> ChainLink {
        ChainLink { name: name.to_string(), lhs, rhs, pass: lhs <= rhs }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PibChainReport {
    pub n: u64,
    pub terms: usize,
    pub word_length: usize,
    pub geodesic_length: f64,
    pub distinct_classes: usize,
    pub quoted_count: u64,
    /// Enumerated count over the quoted closed form.
    pub count_ratio: f64,
    pub l_n: f64,
    pub links: Vec<ChainLink>,
    pub final_pass: bool,
}

/// Length of the closed geodesic of `w` under the representation.
pub fn geodesic_length(rep: &Representation, w: &Word) -> Result<f64, BoundsError> {
    Ok(fuchsian::trace_length(&rep.eval(w)?.trace())?)
}

/// Measures each step of the length and volume chain for the `pib` family.
pub fn pib_chain_check(n: u64) -> Result<PibChainReport, BoundsError> {
    if !(4..=7).contains(&n) {
        return Err(BoundsError::OutOfRange { name: "n", value: n as f64 });
    }
    let rep = Representation::rho();
    let seq = families::pib_sequence(n)?;
    let word = seq.product();
    let ell = geodesic_length(&rep, &word)?;
    let cen = census(&ReducedSequence::Hnn(seq.clone()), PantAssignment::Single)?;
    let bound = theorem1_bound(&cen);
    let quoted = families::gi_count_quoted(n);
    let l_n = solve_ln(n)?;
    let word_length: usize = seq.terms.iter().map(|t| t.g.len() + 1).sum();
    let gen_max = ["a", "b", "t"]
        .iter()
        .map(|g| geodesic_length(&rep, &Word::parse(g).expect("generator")))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let links = vec![
        ChainLink::le("generator_length_vs_1.15", gen_max, 1.15),
        ChainLink::le("length_vs_1.15_word", ell, 1.15 * word_length as f64),
        ChainLink::le("1.15_word_vs_14_Ln", 1.15 * word_length as f64, 14.0 * l_n),
        ChainLink::le("v3_l_over_ln_l_vs_bound", fuchsian::v3() * ell / ell.ln(), bound),
    ];
    let final_pass = links.last().expect("links").pass;
    Ok(PibChainReport {
        n,
        terms: seq.len(),
        word_length,
        geodesic_length: ell,
        distinct_classes: cen.distinct(),
        quoted_count: quoted,
        count_ratio: cen.distinct() as f64 / quoted as f64,
        l_n,
        links,
        final_pass,
    })
}
