//! Generators for the explicit geodesic families.

use rayon::prelude::*;

use crate::modular::{ModularError, XYWord};
use crate::words::{
    AmalgamSequence, AmalgamTerm, CyclicWord, Factor, HnnSequence, HnnTerm, Letter, Sign, Violation, Word,
    WordError, A, A1, B, B2, T1, X, Y,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("parameter {name} = {value} is below the minimum {min}")]
    ParamTooSmall { name: &'static str, value: u64, min: u64 },
    #[error("alpha must end with y")]
    BadSuffix,
    #[error("composition collapses to a proper power or the identity")]
    Degenerate,
    #[error("{bits} bits give {capacity} codes for {needed} sub-arcs")]
    CapacityExceeded { bits: u32, capacity: u64, needed: u64 },
    #[error("trivial or foreign word in factor {0}")]
    TrivialFactor(u8),
    #[error("sequence violates reduced-form conditions: {0:?}")]
    NotReduced(Vec<Violation>),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn at_least(name: &'static str, value: u64, min: u64) -> Result<(), FamilyError> {
    if value < min {
        Err(FamilyError::ParamTooSmall { name, value, min })
    } else {
        Ok(())
    }
}

/// Which x-exponents the blocks of the modular family carry.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentRule {
    /// `6, 13, 19, ..., 6k+1` (and `6, 7` for `k = 1`), as displayed.
    #[default]
    Displayed,
    /// `6, 7, 13, ..., 6k+1`: one block per `j = 1..k`.
    WithSeven,
}

pub fn mod_family_exponents(k: u64, rule: ExponentRule) -> Vec<u64> {
    let mut e = vec![6];
    let first = match rule {
        ExponentRule::Displayed if k >= 2 => 2,
        _ => 1,
    };
    e.extend((first..=k).map(|j| 6 * j + 1));
    e
}

/// `x^e0 y x^e1 y ... x^em (x y^2 x^2 y)`.
pub fn mod_family_from_exponents(exps: &[u64]) -> Result<XYWord, FamilyError> {
    let mut l = Vec::new();
    let x = Letter::pos(X);
    let y = Letter::pos(Y);
    for (i, &e) in exps.iter().enumerate() {
        l.extend(std::iter::repeat(x).take(e as usize));
        if i + 1 < exps.len() {
            l.push(y);
        }
    }
    l.extend([x, y, y, x, x, y]);
    Ok(XYWord::from_letters(l)?)
}

pub fn mod_family(k: u64) -> Result<XYWord, FamilyError> {
    mod_family_with(k, ExponentRule::Displayed)
}

pub fn mod_family_with(k: u64, rule: ExponentRule) -> Result<XYWord, FamilyError> {
    at_least("k", k, 1)?;
    mod_family_from_exponents(&mod_family_exponents(k, rule))
}

/// `x^2 y alpha^k`.
pub fn mod1_family(alpha: &XYWord, k: u64) -> Result<XYWord, FamilyError> {
    if alpha.word().last().map(|l| l.gen) != Some(Y) {
        return Err(FamilyError::BadSuffix);
    }
    let head = crate::modular::parse_xy("x^2 y")?;
    Ok(head.concat(&alpha.pow(k as usize)))
}

/// Reduced words in `a`, `b` of length exactly `len`, starting with `b^±` and ending with `a^±`.
fn gi_words_of_length(len: usize) -> Vec<Word> {
    let all = [Letter::pos(A), Letter::neg(A), Letter::pos(B), Letter::neg(B)];
    let starts = [Letter::pos(B), Letter::neg(B)];
    let seeds: Vec<Vec<Letter>> = starts
        .iter()
        .flat_map(|&s| all.iter().filter(move |&&l| !l.cancels(s)).map(move |&l| vec![s, l]))
        .collect();
    let mut out: Vec<Word> = seeds
        .into_par_iter()
        .flat_map_iter(|seed| {
            let mut found = Vec::new();
            let mut stack = vec![seed];
            while let Some(w) = stack.pop() {
                if w.len() == len {
                    if w.last().is_some_and(|l| l.gen == A) {
                        found.push(Word::new(w));
                    }
                    continue;
                }
                let last = *w.last().expect("nonempty");
                for &l in all.iter().filter(|l| !l.cancels(last)) {
                    let mut next = w.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// All words of length `4..=n` of the above shape, ordered by length and then letters.
pub fn enumerate_gi_words(n: u64) -> Vec<Word> {
    (4..=n as usize).flat_map(gi_words_of_length).collect()
}

/// Number of such words of exact length `len >= 2`.
pub fn gi_count_exact(len: u64) -> u64 {
    let s: i64 = if len % 2 == 0 { 1 } else { -1 };
    (3i64.pow(len as u32 - 1) + s) as u64
}

/// `12 (3^n - 1)`, the closed form quoted for the enumeration.
pub fn gi_count_quoted(n: u64) -> u64 {
    12 * (3u64.pow(n as u32) - 1)
}

/// `(g_1, t, g_2, t, ..., g_m, t)` over the enumerated words.
pub fn pib_sequence(n: u64) -> Result<HnnSequence, FamilyError> {
    at_least("n", n, 4)?;
    Ok(HnnSequence {
        terms: enumerate_gi_words(n).into_iter().map(|g| HnnTerm { g, eps: Sign::Pos }).collect(),
    })
}

pub fn pib_family(n: u64) -> Result<Word, FamilyError> {
    Ok(pib_sequence(n)?.product())
}

pub fn ceil_ln(n: u64) -> u32 {
    (n as f64).ln().ceil() as u32
}

/// `(t1^n a1 t1 a1 t1', b2, a1, b2, ..., a1, b2)` with `2 ceil(ln n)` terms.
pub fn lin_family(n: u64) -> Result<AmalgamSequence, FamilyError> {
    at_least("n", n, 2)?;
    let mut first = Word::gen_power(T1, n as i64);
    first = first.mul(&Word::parse("a1 t1 a1 t1'")?);
    let mut terms = vec![AmalgamTerm { g: first, factor: Factor::One }];
    let total = 2 * ceil_ln(n) as usize;
    while terms.len() < total {
        let (g, factor) = if terms.len() % 2 == 1 { (B2, Factor::Two) } else { (A1, Factor::One) };
        terms.push(AmalgamTerm { g: Word::letter(Letter::pos(g)), factor });
    }
    let seq = AmalgamSequence { terms };
    let v = seq.violations();
    if !v.is_empty() {
        return Err(FamilyError::NotReduced(v));
    }
    Ok(seq)
}

/// `cyclic_reduce(eta^n gamma0)`.
pub fn theorem2_family(gamma0: &Word, eta: &Word, n: u64) -> Result<CyclicWord, FamilyError> {
    let w = eta.pow(n as i64).mul(gamma0);
    let c = CyclicWord::new(&w).map_err(|_| FamilyError::Degenerate)?;
    if !c.is_primitive() {
        return Err(FamilyError::Degenerate);
    }
    Ok(c)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeBase {
    /// `ceil(ln n)` bits.
    #[default]
    Natural,
    /// `ceil(log2(n + 1))` bits.
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCode {
    pub arc: u64,
    pub bits: Vec<u8>,
}

impl LiftCode {
    /// Pairing of the sub-arc with the `k`-th surface.
    pub fn pairing(&self, k: usize) -> u8 {
        self.bits[k]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftCodeCensus {
    pub codes: Vec<LiftCode>,
    pub distinct: u64,
    /// `(v3/2) distinct`.
    pub bound: f64,
    /// `(v3/2) n`.
    pub stated_bound: f64,
}

pub fn code_bits(n: u64, base: CodeBase) -> u32 {
    match base {
        CodeBase::Natural => ceil_ln(n),
        CodeBase::Binary => 64 - n.leading_zeros(),
    }
}

/// One code per sub-arc `j = 0..=n`; bit `k` of arc `j` is bit `k` of `j`.
pub fn lift_code_census(n: u64, base: CodeBase) -> Result<LiftCodeCensus, FamilyError> {
    at_least("n", n, 2)?;
    let bits = code_bits(n, base);
    let capacity = 1u64 << bits;
    if capacity < n + 1 {
        return Err(FamilyError::CapacityExceeded { bits, capacity, needed: n + 1 });
    }
    let codes: Vec<LiftCode> = (0..=n)
        .map(|j| LiftCode { arc: j, bits: (0..bits).map(|k| ((j >> k) & 1) as u8).collect() })
        .collect();
    let distinct = {
        let mut v: Vec<&Vec<u8>> = codes.iter().map(|c| &c.bits).collect();
        v.sort();
        v.dedup();
        v.len() as u64
    };
    let half = crate::fuchsian::v3() / 2.0;
    Ok(LiftCodeCensus { codes, distinct, bound: half * distinct as f64, stated_bound: half * n as f64 })
}

/// Two-term amalgam sequence `(w1, w2)`.
pub fn star_compose(w1: &Word, w2: &Word) -> Result<AmalgamSequence, FamilyError> {
    for (w, f) in [(w1, Factor::One), (w2, Factor::Two)] {
        if w.is_empty() || !w.uses_only(&f.gens()) {
            return Err(FamilyError::TrivialFactor(f.tag()));
        }
    }
    let seq = AmalgamSequence {
        terms: vec![
            AmalgamTerm { g: w1.clone(), factor: Factor::One },
            AmalgamTerm { g: w2.clone(), factor: Factor::Two },
        ],
    };
    let v = seq.violations();
    if !v.is_empty() {
        return Err(FamilyError::NotReduced(v));
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::parse_xy;

    #[test]
    fn mod_words() {
        assert_eq!(mod_family(1).unwrap().to_string(), "x^6 y x^8 y^2 x^2 y");
        assert_eq!(mod_family(3).unwrap().to_string(), "x^6 y x^13 y x^20 y^2 x^2 y");
        assert_eq!(mod_family_exponents(3, ExponentRule::WithSeven), vec![6, 7, 13, 19]);
        assert!(matches!(mod_family(0), Err(FamilyError::ParamTooSmall { .. })));
        assert!(mod_family(2).unwrap().n_gamma() < mod_family(3).unwrap().n_gamma());
    }

    #[test]
    fn mod1_words() {
        let xy = parse_xy("x y").unwrap();
        assert_eq!(mod1_family(&xy, 1).unwrap().to_string(), "x^2 y x y");
        assert_eq!(mod1_family(&xy, 3).unwrap().n_gamma(), 4);
        assert_eq!(mod1_family(&parse_xy("y x").unwrap(), 1), Err(FamilyError::BadSuffix));
    }

    #[test]
    fn gi_counts() {
        assert!(enumerate_gi_words(3).is_empty());
        for len in 4..=8u64 {
            assert_eq!(gi_words_of_length(len as usize).len() as u64, gi_count_exact(len));
        }
        assert_eq!(enumerate_gi_words(4).len(), 28);
        assert_eq!(enumerate_gi_words(5).len(), 108);
    }

    #[test]
    fn lin_shape() {
        let s = lin_family(8).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.terms[0].g.len(), 12);
        let tags: Vec<u8> = s.terms.iter().map(|t| t.factor.tag()).collect();
        assert_eq!(tags, vec![1, 2, 1, 2, 1, 2]);
        assert_eq!(lin_family(2).unwrap().len(), 2);
    }

    #[test]
    fn lift_codes() {
        assert!(matches!(lift_code_census(2, CodeBase::Natural), Err(FamilyError::CapacityExceeded { .. })));
        assert!(matches!(lift_code_census(8, CodeBase::Natural), Err(FamilyError::CapacityExceeded { .. })));
        assert_eq!(lift_code_census(3, CodeBase::Natural).unwrap().distinct, 4);
        let c = lift_code_census(8, CodeBase::Binary).unwrap();
        assert_eq!(c.distinct, 9);
        assert!((c.bound - crate::fuchsian::v3() / 2.0 * 9.0).abs() < 1e-15);
    }

    #[test]
    fn star() {
        let p = |s: &str| Word::parse(s).unwrap();
        assert!(star_compose(&p("a1"), &p("b2")).is_ok());
        assert!(star_compose(&p("a1 t1"), &p("b2 a2")).is_ok());
        assert_eq!(star_compose(&Word::identity(), &p("b2")), Err(FamilyError::TrivialFactor(1)));
    }

    #[test]
    fn theorem2_words() {
        let g0 = Word::parse("t a t' a").unwrap();
        let a = Word::parse("a").unwrap();
        assert_eq!(theorem2_family(&g0, &a, 0).unwrap(), CyclicWord::new(&g0).unwrap());
        assert_eq!(theorem2_family(&g0, &a, 2).unwrap(), CyclicWord::parse("a^2 t a t' a").unwrap());
    }
}
