//! Positive x/y codings of modular-surface geodesics and the index-6 torus cover.

use std::fmt;

use num_bigint::BigInt;

use crate::fuchsian::{self, FuchsianError, IntMatrix, Mat2, Representation, RingElem};
use crate::words::{Alphabet, CyclicWord, Gen, Letter, Sign, Word, WordError, A, T, X, Y};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModularError {
    #[error("inverse letter in a positive word")]
    NotPositive,
    #[error("word must contain both x and y")]
    MissingSymbol,
    #[error("generator {0:?} is not x or y")]
    ForeignGenerator(Gen),
    #[error("element is not in the index-6 subgroup (ends in coset {0})")]
    NotInSubgroup(u8),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Fuchsian(#[from] FuchsianError),
}

/// Positive word in `x`, `y` containing both letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XYWord {
    word: Word,
}

/// Alternating x-run and y-run lengths, starting at an x-run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFBlocks {
    pub blocks: Vec<u64>,
}

impl CFBlocks {
    pub fn n_gamma(&self) -> usize {
        self.blocks.len() / 2
    }
}

pub fn parse_xy(text: &str) -> Result<XYWord, ModularError> {
    let letters = Alphabet::standard().parse_letters(text)?;
    XYWord::from_letters(letters)
}

impl XYWord {
    pub fn from_letters(letters: Vec<Letter>) -> Result<XYWord, ModularError> {
        if let Some(l) = letters.iter().find(|l| l.gen != X && l.gen != Y) {
            return Err(ModularError::ForeignGenerator(l.gen));
        }
        if letters.iter().any(|l| l.sign == Sign::Neg) {
            return Err(ModularError::NotPositive);
        }
        if !letters.iter().any(|l| l.gen == X) || !letters.iter().any(|l| l.gen == Y) {
            return Err(ModularError::MissingSymbol);
        }
        Ok(XYWord { word: Word::new(letters) })
    }

    /// `x^e0 y^f0 x^e1 y^f1 ...`.
    pub fn from_runs(runs: &[(u64, u64)]) -> Result<XYWord, ModularError> {
        let mut letters = Vec::new();
        for &(e, f) in runs {
            letters.extend(std::iter::repeat(Letter::pos(X)).take(e as usize));
            letters.extend(std::iter::repeat(Letter::pos(Y)).take(f as usize));
        }
        XYWord::from_letters(letters)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cyclic(&self) -> CyclicWord {
        CyclicWord::new(&self.word).expect("positive words are nontrivial")
    }

    pub fn concat(&self, other: &XYWord) -> XYWord {
        XYWord { word: self.word.mul(&other.word) }
    }

    pub fn pow(&self, k: usize) -> XYWord {
        XYWord { word: self.word.pow(k as i64) }
    }

    pub fn rotate(&self, k: usize) -> XYWord {
        let l = self.word.letters();
        let k = k % l.len();
        let mut v = l[k..].to_vec();
        v.extend_from_slice(&l[..k]);
        XYWord { word: Word::new(v) }
    }

    pub fn cf_blocks(&self) -> CFBlocks {
        let c = self.cyclic();
        let mut blocks = Vec::new();
        let mut prev: Option<Gen> = None;
        for l in c.letters() {
            if prev == Some(l.gen) {
                *blocks.last_mut().expect("run started") += 1;
            } else {
                blocks.push(1);
                prev = Some(l.gen);
            }
        }
        CFBlocks { blocks }
    }

    /// Cyclic occurrences of `x y`.
    pub fn n_gamma(&self) -> usize {
        let l = self.word.letters();
        let n = l.len();
        (0..n).filter(|&i| l[i].gen == X && l[(i + 1) % n].gen == Y).count()
    }

    pub fn matrix(&self) -> IntMatrix {
        let ms: Vec<IntMatrix> = self.word.letters().iter().map(|l| letter_matrix(l.gen)).collect();
        Mat2::product(&ms)
    }

    pub fn trace(&self) -> BigInt {
        self.matrix().trace()
    }

    pub fn translation_length(&self) -> Result<f64, ModularError> {
        let tr = RingElem::new(self.trace().into(), BigInt::from(0).into());
        Ok(fuchsian::trace_length(&tr)?)
    }
}

impl fmt::Display for XYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

fn letter_matrix(g: Gen) -> IntMatrix {
    if g == X {
        IntMatrix::from_i64(1, 1, 0, 1)
    } else {
        IntMatrix::from_i64(1, 0, 1, 1)
    }
}

pub fn cf_blocks(w: &XYWord) -> CFBlocks {
    w.cf_blocks()
}

pub fn n_gamma(w: &XYWord) -> usize {
    w.n_gamma()
}

pub fn xy_to_matrix(w: &XYWord) -> IntMatrix {
    w.matrix()
}

/// Integer matrix of an arbitrary word in `x`, `y` and inverses.
pub fn xy_element_matrix(w: &Word) -> Result<IntMatrix, ModularError> {
    let mut ms = Vec::with_capacity(w.len());
    for l in w.letters() {
        if l.gen != X && l.gen != Y {
            return Err(ModularError::ForeignGenerator(l.gen));
        }
        let m = letter_matrix(l.gen);
        ms.push(if l.sign == Sign::Pos { m } else { m.inverse_unimodular() });
    }
    Ok(Mat2::product(&ms))
}

/// `t ↦ M(y)M(x)`, `a ↦ M(y)⁻¹M(x)⁻¹`.
pub fn modular_torus_rep() -> Representation {
    let x = IntMatrix::from_i64(1, 1, 0, 1).to_exact();
    let y = IntMatrix::from_i64(1, 0, 1, 1).to_exact();
    let t = y.mul(&x);
    let a = y.inverse_unimodular().mul(&x.inverse_unimodular());
    Representation::new(vec![(A, a), (T, t)]).expect("unimodular")
}

/// Schreier generators for the transversal `x^k`, `k = 0..5`, as words in `a`, `t`.
/// Index 6 is `x^6`; index `k < 6` is `x^k y x^-(k-1)` (for `k = 0`, `y x^-5`).
fn schreier_images() -> &'static [Word; 7] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[Word; 7]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let p = |s: &str| Word::parse(s).expect("static word");
        [
            p("a' t a"),
            p("a'"),
            p("a' t'"),
            p("a' t' a"),
            p("a' t' a t a"),
            p("a' t' a t^2 a"),
            p("a' t' a t"),
        ]
    })
}

/// Coset of the index-6 subgroup reached by reading `w` from the identity coset.
pub fn coset_of(w: &Word) -> Result<u8, ModularError> {
    let mut c: i64 = 0;
    for l in w.letters() {
        let step = match l.gen {
            g if g == X => 1,
            g if g == Y => -1,
            g => return Err(ModularError::ForeignGenerator(g)),
        };
        c += step * l.sign.as_i64();
    }
    Ok(c.rem_euclid(6) as u8)
}

/// Schreier rewriting of an element of the index-6 subgroup into `a`, `t`.
pub fn rewrite_element(w: &Word) -> Result<Word, ModularError> {
    let table = schreier_images();
    let mut c: usize = 0;
    let mut out = Vec::new();
    for l in w.letters() {
        match (l.gen, l.sign) {
            (g, Sign::Pos) if g == X => {
                if c == 5 {
                    out.push(table[6].clone());
                }
                c = (c + 1) % 6;
            }
            (g, Sign::Neg) if g == X => {
                c = (c + 5) % 6;
                if c == 5 {
                    out.push(table[6].inverse());
                }
            }
            (g, Sign::Pos) if g == Y => {
                out.push(table[c].clone());
                c = (c + 5) % 6;
            }
            (g, Sign::Neg) if g == Y => {
                c = (c + 1) % 6;
                out.push(table[c].inverse());
            }
            (g, _) => return Err(ModularError::ForeignGenerator(g)),
        }
    }
    if c != 0 {
        return Err(ModularError::NotInSubgroup(c as u8));
    }
    Ok(Word::concat(out.iter()))
}

pub fn rewrite_to_torus(w: &XYWord) -> Result<Word, ModularError> {
    rewrite_element(w.word())
}

/// `v₃(k+1)/12`.
pub fn mod_lower_bound(k: u64) -> f64 {
    fuchsian::v3() * (k + 1) as f64 / 12.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_blocks() {
        let w = parse_xy("x x y").unwrap();
        assert_eq!(w.to_string(), "x^2 y");
        assert_eq!(parse_xy("x y'"), Err(ModularError::NotPositive));
        assert_eq!(parse_xy("x x x"), Err(ModularError::MissingSymbol));
        assert_eq!(parse_xy("x y").unwrap().cf_blocks().blocks, vec![1, 1]);
        assert_eq!(w.cf_blocks().blocks, vec![2, 1]);
        let w = parse_xy("x^2 y x y^3").unwrap();
        assert_eq!(w.cf_blocks().blocks, vec![2, 1, 1, 3]);
        assert_eq!(w.n_gamma(), 2);
        assert_eq!(parse_xy("y x x").unwrap().n_gamma(), 1);
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_xy("x y").unwrap().matrix(), IntMatrix::from_i64(2, 1, 1, 1));
        let l = parse_xy("x y").unwrap().translation_length().unwrap();
        assert!((l - 2.0 * 1.5f64.acosh()).abs() < 1e-12);
    }

    #[test]
    fn schreier_table_matches_matrices() {
        let rep = modular_torus_rep();
        let p = |s: &str| Word::parse(s).unwrap();
        let gens = [
            p("y x'^5"),
            p("x y"),
            p("x^2 y x'"),
            p("x^3 y x'^2"),
            p("x^4 y x'^3"),
            p("x^5 y x'^4"),
            p("x^6"),
        ];
        for (g, img) in gens.iter().zip(schreier_images()) {
            let m = xy_element_matrix(g).unwrap().to_exact();
            let r = rep.eval(img).unwrap();
            assert!(m == r || m == r.neg(), "{g}");
        }
    }

    #[test]
    fn generators_rewrite() {
        assert_eq!(rewrite_element(&Word::parse("y x").unwrap()).unwrap().to_string(), "t");
        assert_eq!(rewrite_element(&Word::parse("y' x'").unwrap()).unwrap().to_string(), "a");
        assert_eq!(rewrite_element(&Word::parse("x y x").unwrap()), Err(ModularError::NotInSubgroup(1)));
    }
}
