use std::fmt;

use super::alphabet::{Alphabet, Gen};
use super::WordError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// A generator or its inverse. Ordered by generator id, then positive before negative.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub sign: Sign,
}

impl Letter {
    pub const fn pos(gen: Gen) -> Letter {
        Letter { gen, sign: Sign::Pos }
    }

    pub const fn neg(gen: Gen) -> Letter {
        Letter { gen, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign.flip() }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

/// Freely reduced word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Stack-based free reduction of an arbitrary letter list.
pub fn reduce(letters: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        reduce(&letters)
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    pub fn gen_power(g: Gen, k: i64) -> Word {
        let l = if k >= 0 { Letter::pos(g) } else { Letter::neg(g) };
        Word { letters: vec![l; k.unsigned_abs() as usize] }
    }

    /// Parse with the standard alphabet.
    pub fn parse(text: &str) -> Result<Word, WordError> {
        Alphabet::standard().parse(text)
    }

    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|p| !p[0].cancels(p[1])));
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut k = 0;
        let n = self.letters.len();
        while k < n && k < other.letters.len() && self.letters[n - 1 - k].cancels(other.letters[k]) {
            k += 1;
        }
        let mut letters = Vec::with_capacity(n - k + other.letters.len() - k);
        letters.extend_from_slice(&self.letters[..n - k]);
        letters.extend_from_slice(&other.letters[k..]);
        Word { letters }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn concat<'a, I: IntoIterator<Item = &'a Word>>(parts: I) -> Word {
        parts.into_iter().fold(Word::identity(), |acc, w| acc.mul(w))
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters.iter().filter(|l| l.gen == g).map(|l| l.sign.as_i64()).sum()
    }

    pub fn uses_only(&self, gens: &[Gen]) -> bool {
        self.letters.iter().all(|l| gens.contains(&l.gen))
    }

    /// If the word is g^k for the given generator, returns k.
    pub fn power_of(&self, g: Gen) -> Option<i64> {
        if self.uses_only(&[g]) {
            Some(self.exponent_sum(g))
        } else {
            None
        }
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word { letters: self.letters[..k].to_vec() }
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        Word { letters: self.letters[k..].to_vec() }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.letters.len() == 1 || !f.cancels(l),
            _ => true,
        }
    }

    /// Replace each generator by a word. Generators without an image map to themselves.
    pub fn substitute(&self, image: &dyn Fn(Gen) -> Option<Word>) -> Word {
        let mut out = Word::identity();
        for l in &self.letters {
            let w = image(l.gen).unwrap_or_else(|| Word::letter(Letter::pos(l.gen)));
            out = out.mul(&if l.sign == Sign::Pos { w } else { w.inverse() });
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Alphabet::standard().format(&self.letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::alphabet::{A, B};

    #[test]
    fn cancellation() {
        let w = reduce(&[Letter::pos(A), Letter::neg(A)]);
        assert!(w.is_empty());
        let w = reduce(&[Letter::pos(A), Letter::pos(B), Letter::neg(B), Letter::pos(A)]);
        assert_eq!(w.to_string(), "a^2");
    }

    #[test]
    fn mul_and_inverse() {
        let u = Word::parse("a b t'").unwrap();
        assert!(u.mul(&u.inverse()).is_empty());
        assert_eq!(u.pow(-2), u.inverse().mul(&u.inverse()));
        assert_eq!(Word::parse("a b").unwrap().mul(&Word::parse("b' a").unwrap()).to_string(), "a^2");
    }
}
