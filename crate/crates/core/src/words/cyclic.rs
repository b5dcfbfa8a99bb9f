use std::fmt;

use super::alphabet::Alphabet;
use super::word::{Letter, Word};
use super::WordError;

/// Conjugacy class of a nontrivial element, stored as the least rotation of a
/// cyclically reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = f[j - k - 1];
        while i != -1 && at(j) != at(k + i as usize + 1) {
            if at(j) < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && at(j) != at(k) {
            if at(j) < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// Strips cancelling ends.
pub fn cyclic_core(w: &Word) -> &[Letter] {
    let l = w.letters();
    let (mut i, mut j) = (0, l.len());
    while j - i >= 2 && l[i].cancels(l[j - 1]) {
        i += 1;
        j -= 1;
    }
    &l[i..j]
}

pub fn cyclic_reduce(w: &Word) -> Result<CyclicWord, WordError> {
    let core = cyclic_core(w);
    if core.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(CyclicWord::from_core(core))
}

impl CyclicWord {
    fn from_core(core: &[Letter]) -> CyclicWord {
        let k = least_rotation(core);
        let mut letters = Vec::with_capacity(core.len());
        letters.extend_from_slice(&core[k..]);
        letters.extend_from_slice(&core[..k]);
        CyclicWord { letters }
    }

    pub fn new(w: &Word) -> Result<CyclicWord, WordError> {
        cyclic_reduce(w)
    }

    pub fn parse(text: &str) -> Result<CyclicWord, WordError> {
        cyclic_reduce(&Word::parse(text)?)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The canonical rotation as a based word.
    pub fn word(&self) -> Word {
        Word::from_reduced_unchecked(self.letters.clone())
    }

    pub fn rotation(&self, k: usize) -> Word {
        let n = self.letters.len();
        let k = k % n;
        let mut v = self.letters[k..].to_vec();
        v.extend_from_slice(&self.letters[..k]);
        Word::from_reduced_unchecked(v)
    }

    pub fn inverse(&self) -> CyclicWord {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        CyclicWord::from_core(&inv)
    }

    pub fn pow(&self, k: usize) -> CyclicWord {
        assert!(k >= 1, "power of a cyclic word must be positive");
        CyclicWord::from_core(&self.letters.repeat(k))
    }

    /// Smallest period p with the word equal to its rotation by p.
    fn period(&self) -> usize {
        let s = &self.letters;
        let n = s.len();
        let mut fail = vec![0usize; n];
        let mut k = 0;
        for i in 1..n {
            while k > 0 && s[i] != s[k] {
                k = fail[k - 1];
            }
            if s[i] == s[k] {
                k += 1;
            }
            fail[i] = k;
        }
        let p = n - fail[n - 1];
        if n % p == 0 {
            p
        } else {
            n
        }
    }

    /// (root, k) with self = root^k and root primitive.
    pub fn primitive_root(&self) -> (CyclicWord, usize) {
        let p = self.period();
        (CyclicWord::from_core(&self.letters[..p]), self.letters.len() / p)
    }

    pub fn is_primitive(&self) -> bool {
        self.period() == self.letters.len()
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        alphabet.format(&self.letters)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Alphabet::standard().format(&self.letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_least(s: &[u8]) -> Vec<u8> {
        (0..s.len()).map(|k| [&s[k..], &s[..k]].concat()).min().unwrap()
    }

    #[test]
    fn booth_matches_naive() {
        let cases: [&[u8]; 6] = [b"bab", b"aaa", b"abab", b"cbacba", b"bbaab", b"a"];
        for s in cases {
            let k = least_rotation(s);
            assert_eq!([&s[k..], &s[..k]].concat(), naive_least(s));
        }
    }

    #[test]
    fn conjugation_strip() {
        assert_eq!(CyclicWord::parse("a b a'").unwrap().to_string(), "b");
        assert_eq!(CyclicWord::parse("a b").unwrap().to_string(), "a b");
        assert_eq!(CyclicWord::parse("b a").unwrap(), CyclicWord::parse("a b").unwrap());
        assert!(matches!(CyclicWord::parse("a b b' a'"), Err(WordError::EmptyWord)));
    }

    #[test]
    fn powers() {
        let w = CyclicWord::parse("a t a t a t").unwrap();
        let (r, k) = w.primitive_root();
        assert_eq!((r.to_string().as_str(), k), ("a t", 3));
        assert!(CyclicWord::parse("a a t").unwrap().is_primitive());
        assert_eq!(r.pow(3), w);
    }
}
