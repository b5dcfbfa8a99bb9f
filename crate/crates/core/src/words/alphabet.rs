use std::sync::OnceLock;

use super::word::{reduce, Letter, Sign, Word};
use super::WordError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u8);

pub const A: Gen = Gen(0);
pub const B: Gen = Gen(1);
pub const T: Gen = Gen(2);
pub const X: Gen = Gen(3);
pub const Y: Gen = Gen(4);
pub const A1: Gen = Gen(5);
pub const T1: Gen = Gen(6);
pub const A2: Gen = Gen(7);
pub const B2: Gen = Gen(8);

const STANDARD: [&str; 9] = ["a", "b", "t", "x", "y", "a1", "t1", "a2", "b2"];

/// Generator names. A name is one ASCII letter followed by optional digits.
#[derive(Clone, Debug)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Alphabet, WordError> {
        let mut out = Vec::new();
        for n in names {
            let n = n.as_ref();
            let mut chars = n.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_digit());
            if !ok || out.iter().any(|m: &String| m == n) || out.len() >= u8::MAX as usize {
                return Err(WordError::BadGeneratorName(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Alphabet { names: out })
    }

    /// a, b, t, x, y, a1, t1, a2, b2 with ids 0..9.
    pub fn standard() -> &'static Alphabet {
        static STD: OnceLock<Alphabet> = OnceLock::new();
        STD.get_or_init(|| Alphabet::new(&STANDARD).expect("standard names are valid"))
    }

    pub fn name(&self, g: Gen) -> &str {
        self.names.get(g.0 as usize).map(String::as_str).unwrap_or("?")
    }

    pub fn lookup(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| Gen(i as u8))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Letters as written, without free reduction.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>, WordError> {
        let mut p = Parser { alphabet: self, src: text.as_bytes(), pos: 0 };
        let out = p.sequence()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(out)
    }

    pub fn parse(&self, text: &str) -> Result<Word, WordError> {
        Ok(reduce(&self.parse_letters(text)?))
    }

    /// Runs of one letter print as `g^k` or `g'^k`; the empty word prints as `1`.
    pub fn format(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let mut s = self.name(letters[i].gen).to_string();
            if letters[i].sign == Sign::Neg {
                s.push('\'');
            }
            if j - i > 1 {
                s.push_str(&format!("^{}", j - i));
            }
            parts.push(s);
            i = j;
        }
        parts.join(" ")
    }
}

struct Parser<'a> {
    alphabet: &'a Alphabet,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> WordError {
        WordError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() || c == b'*' || c == b'.' {
                self.pos += 1;
            } else if self.src[self.pos..].starts_with("·".as_bytes()) {
                self.pos += "·".len();
            } else {
                break;
            }
        }
    }

    fn sequence(&mut self) -> Result<Vec<Letter>, WordError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') => return Ok(out),
                Some(_) => out.extend(self.item()?),
            }
        }
    }

    fn item(&mut self) -> Result<Vec<Letter>, WordError> {
        let mut base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sequence()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(b'1') => {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("bare number"));
                }
                Vec::new()
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let g = self
                    .alphabet
                    .lookup(name)
                    .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
                vec![Letter::pos(g)]
            }
            _ => return Err(self.err("expected generator")),
        };
        while self.peek() == Some(b'\'') {
            self.pos += 1;
            base = base.iter().rev().map(|l| l.inverse()).collect();
        }
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: usize = std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii")
                .parse()
                .map_err(|_| self.err("bad exponent"))?;
            if neg {
                base = base.iter().rev().map(|l| l.inverse()).collect();
            }
            let one = base.clone();
            base.clear();
            for _ in 0..k {
                base.extend_from_slice(&one);
            }
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print() {
        let al = Alphabet::standard();
        for s in ["a b' t^3", "a1 t1'^2 b2", "1", "x^6 y x^13 y", "t b a t b' a'"] {
            assert_eq!(al.parse(s).unwrap().to_string(), s);
        }
        assert_eq!(al.parse("(a b)^2 a'").unwrap().to_string(), "a b a b a'");
        assert_eq!(al.parse("(a b)'").unwrap().to_string(), "b' a'");
        assert_eq!(al.parse("a^-2").unwrap().to_string(), "a'^2");
        assert_eq!(al.parse("xxy").unwrap().to_string(), "x^2 y");
        assert_eq!(al.parse("a·b·b'").unwrap().to_string(), "a");
    }

    #[test]
    fn parse_errors() {
        let al = Alphabet::standard();
        assert!(matches!(al.parse("q"), Err(WordError::UnknownGenerator(_))));
        assert!(matches!(al.parse("(a b"), Err(WordError::Syntax { .. })));
        assert!(matches!(al.parse("a^"), Err(WordError::Syntax { .. })));
        assert!(Alphabet::new(&["a", "a"]).is_err());
        assert!(Alphabet::new(&["1a"]).is_err());
    }

    #[test]
    fn custom_alphabet() {
        let al = Alphabet::new(&["u", "v"]).unwrap();
        let l = al.parse_letters("u v' u").unwrap();
        assert_eq!(al.format(&l), "u v' u");
    }
}
