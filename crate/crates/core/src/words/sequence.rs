//! Reduced sequences for the two splittings used: the once-punctured torus as an HNN
//! extension `<a, b, t | t a t' = b>` and the genus one, two-boundary surface as the
//! amalgam `<a1, t1> *_Z <a2, b2>` with `a1 t1 a1' t1'` identified with `a2`.

use std::collections::BTreeMap;
use std::fmt;

use super::alphabet::{Gen, A, A1, A2, B, B2, T, T1};
use super::cyclic::CyclicWord;
use super::word::{Letter, Sign, Word};
use super::WordError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnTerm {
    pub g: Word,
    pub eps: Sign,
}

/// Cyclic sequence read as `g_0 t^e_0 g_1 t^e_1 ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnSequence {
    pub terms: Vec<HnnTerm>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    One,
    Two,
}

impl Factor {
    pub fn gens(self) -> [Gen; 2] {
        match self {
            Factor::One => [A1, T1],
            Factor::Two => [A2, B2],
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            Factor::One => 1,
            Factor::Two => 2,
        }
    }

    /// Generator of the edge group inside this factor.
    pub fn edge_word(self) -> Word {
        match self {
            Factor::One => Word::parse("a1 t1 a1' t1'").expect("static word"),
            Factor::Two => Word::letter(Letter::pos(A2)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamTerm {
    pub g: Word,
    pub factor: Factor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamSequence {
    pub terms: Vec<AmalgamTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedSequence {
    Hnn(HnnSequence),
    Amalgam(AmalgamSequence),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    /// Term index whose letters leave the base group or its factor.
    ForeignLetters(usize),
    /// Term index i such that `t^e_{i-1} g_i t^e_i` pinches.
    Pinch(usize),
    /// Terms i and i+1 (cyclically) in the same factor.
    SameFactor(usize),
    /// Term lies in the edge group (or is trivial) in a sequence of length at least 2.
    InEdgeGroup(usize),
    TrivialSingleTerm,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FillingVerdict {
    Filling,
    Unknown,
}

fn is_power_of(w: &Word, g: Gen) -> bool {
    w.power_of(g).is_some()
}

/// True when `t^eps g t^-eps` can be pinched.
fn pinches(eps: Sign, g: &Word) -> bool {
    match eps {
        Sign::Pos => is_power_of(g, A),
        Sign::Neg => is_power_of(g, B),
    }
}

/// Image of a pinched element: `t a^k t' = b^k`, `t' b^k t = a^k`.
fn pinch_image(eps: Sign, g: &Word) -> Word {
    match eps {
        Sign::Pos => Word::gen_power(B, g.exponent_sum(A)),
        Sign::Neg => Word::gen_power(A, g.exponent_sum(B)),
    }
}

/// `g = a^p h b^q` with `h` not starting with `a^±` and not ending with `b^±`.
pub fn double_coset_split(g: &Word) -> (i64, Word, i64) {
    let l = g.letters();
    let mut i = 0;
    while i < l.len() && l[i].gen == A {
        i += 1;
    }
    let mut j = l.len();
    while j > i && l[j - 1].gen == B {
        j -= 1;
    }
    let p = l[..i].iter().map(|x| x.sign.as_i64()).sum();
    let q = l[j..].iter().map(|x| x.sign.as_i64()).sum();
    (p, Word::new(l[i..j].to_vec()), q)
}

impl HnnSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn product(&self) -> Word {
        let mut out = Word::identity();
        for term in &self.terms {
            out = out.mul(&term.g).mul(&Word::letter(Letter { gen: T, sign: term.eps }));
        }
        out
    }

    pub fn violations(&self) -> Vec<Violation> {
        let n = self.terms.len();
        if n == 0 {
            return vec![Violation::Empty];
        }
        let mut out = Vec::new();
        for (i, term) in self.terms.iter().enumerate() {
            if !term.g.uses_only(&[A, B]) {
                out.push(Violation::ForeignLetters(i));
            }
        }
        for i in 0..n {
            let prev = &self.terms[(i + n - 1) % n];
            let cur = &self.terms[i];
            if n >= 2 && prev.eps != cur.eps && pinches(prev.eps, &cur.g) {
                out.push(Violation::Pinch(i));
            }
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn rotate(&self, k: usize) -> HnnSequence {
        let mut terms = self.terms.clone();
        if !terms.is_empty() {
            let k = k % terms.len();
            terms.rotate_left(k);
        }
        HnnSequence { terms }
    }

    /// Every `g_i` starts with `b^±`, ends with `a^±`, and every `e_i = +1`.
    pub fn is_arc_form(&self) -> bool {
        !self.terms.is_empty()
            && self.terms.iter().all(|term| {
                term.eps == Sign::Pos
                    && term.g.first().is_some_and(|l| l.gen == B)
                    && term.g.last().is_some_and(|l| l.gen == A)
            })
    }

    pub fn fitor_filling(&self) -> FillingVerdict {
        let mixed = self.terms.iter().any(|term| {
            term.g.letters().windows(2).any(|p| {
                (p[0].gen == A && p[1].gen == B) || (p[0].gen == B && p[1].gen == A)
            })
        });
        if mixed {
            FillingVerdict::Filling
        } else {
            FillingVerdict::Unknown
        }
    }
}

/// Britton normal form of a cyclic word over `{a, b, t}`, with wrap-around pinches.
pub fn hnn_normalize(w: &CyclicWord) -> Result<HnnSequence, WordError> {
    let letters = w.letters();
    if let Some(l) = letters.iter().find(|l| ![A, B, T].contains(&l.gen)) {
        return Err(WordError::ForeignGenerator(l.gen));
    }
    let last_t = letters.iter().rposition(|l| l.gen == T).ok_or(WordError::NotInHnnForm)?;
    let n = letters.len();
    let mut rotated = letters[last_t + 1..].to_vec();
    rotated.extend_from_slice(&letters[..=last_t]);
    debug_assert_eq!(rotated.len(), n);

    let mut raw = Vec::new();
    let mut buf = Vec::new();
    for l in rotated {
        if l.gen == T {
            raw.push(HnnTerm { g: Word::new(std::mem::take(&mut buf)), eps: l.sign });
        } else {
            buf.push(l);
        }
    }

    let mut stack: Vec<HnnTerm> = Vec::with_capacity(raw.len());
    let mut pending = Word::identity();
    for term in raw {
        let g = pending.mul(&term.g);
        pending = Word::identity();
        if let Some(top) = stack.last() {
            if top.eps != term.eps && pinches(top.eps, &g) {
                let top = stack.pop().expect("nonempty");
                pending = top.g.mul(&pinch_image(top.eps, &g));
                continue;
            }
        }
        stack.push(HnnTerm { g, eps: term.eps });
    }

    loop {
        if stack.is_empty() {
            return Err(WordError::NotInHnnForm);
        }
        stack[0].g = std::mem::take(&mut pending).mul(&stack[0].g);
        if stack.len() == 1 {
            break;
        }
        let last = stack.last().expect("nonempty");
        if last.eps != stack[0].eps && pinches(last.eps, &stack[0].g) {
            let last = stack.pop().expect("nonempty");
            let first = stack.remove(0);
            pending = last.g.mul(&pinch_image(last.eps, &first.g));
            continue;
        }
        break;
    }
    Ok(HnnSequence { terms: stack })
}

/// Regroups an all-positive sequence so that each term starts with `b^±` and ends with
/// `a^±`, sliding `b`-suffixes across `t` as `a`-prefixes (`b t = t a`).
pub fn split_to_arc_form(s: &HnnSequence) -> Result<HnnSequence, WordError> {
    if s.terms.is_empty() {
        return Err(WordError::NotArcForm("empty sequence".into()));
    }
    if let Some(i) = s.terms.iter().position(|term| term.eps != Sign::Pos) {
        return Err(WordError::NotArcForm(format!("term {i} has a negative stable letter")));
    }
    let n = s.terms.len();
    let parts: Vec<(i64, Word, i64)> = s.terms.iter().map(|term| double_coset_split(&term.g)).collect();
    if let Some(i) = parts.iter().position(|(_, h, _)| h.is_empty()) {
        return Err(WordError::NotArcForm(format!("term {i} lies in <a><b>")));
    }
    for i in 0..n {
        let residue = parts[i].2 + parts[(i + 1) % n].0;
        if residue != 0 {
            return Err(WordError::NotArcForm(format!(
                "junction after term {i} leaves a^{residue} between t letters"
            )));
        }
    }
    Ok(HnnSequence {
        terms: parts.into_iter().map(|(_, h, _)| HnnTerm { g: h, eps: Sign::Pos }).collect(),
    })
}

impl AmalgamSequence {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn product(&self) -> Word {
        Word::concat(self.terms.iter().map(|t| &t.g))
    }

    pub fn violations(&self) -> Vec<Violation> {
        let n = self.terms.len();
        if n == 0 {
            return vec![Violation::Empty];
        }
        let mut out = Vec::new();
        for (i, term) in self.terms.iter().enumerate() {
            if !term.g.uses_only(&term.factor.gens()) {
                out.push(Violation::ForeignLetters(i));
            }
        }
        if n == 1 {
            if self.terms[0].g.is_empty() {
                out.push(Violation::TrivialSingleTerm);
            }
            return out;
        }
        for i in 0..n {
            if self.terms[i].factor == self.terms[(i + 1) % n].factor {
                out.push(Violation::SameFactor(i));
            }
            if in_edge_group(&self.terms[i]) {
                out.push(Violation::InEdgeGroup(i));
            }
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn rotate(&self, k: usize) -> AmalgamSequence {
        let mut terms = self.terms.clone();
        if !terms.is_empty() {
            let k = k % terms.len();
            terms.rotate_left(k);
        }
        AmalgamSequence { terms }
    }
}

fn in_edge_group(term: &AmalgamTerm) -> bool {
    let c = term.factor.edge_word();
    let g = &term.g;
    if g.is_empty() {
        return true;
    }
    if g.len() % c.len() != 0 {
        return false;
    }
    let k = (g.len() / c.len()) as i64;
    *g == c.pow(k) || *g == c.pow(-k)
}

impl ReducedSequence {
    pub fn violations(&self) -> Vec<Violation> {
        match self {
            ReducedSequence::Hnn(s) => s.violations(),
            ReducedSequence::Amalgam(s) => s.violations(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn len(&self) -> usize {
        match self {
            ReducedSequence::Hnn(s) => s.len(),
            ReducedSequence::Amalgam(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn product(&self) -> Word {
        match self {
            ReducedSequence::Hnn(s) => s.product(),
            ReducedSequence::Amalgam(s) => s.product(),
        }
    }

    /// Term words in order, with the pant (factor tag, or 0 for HNN) they belong to.
    pub fn tagged_terms(&self) -> Vec<(u8, &Word)> {
        match self {
            ReducedSequence::Hnn(s) => s.terms.iter().map(|t| (0, &t.g)).collect(),
            ReducedSequence::Amalgam(s) => s.terms.iter().map(|t| (t.factor.tag(), &t.g)).collect(),
        }
    }
}

impl fmt::Display for HnnSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|term| {
                let t = if term.eps == Sign::Pos { "t" } else { "t'" };
                if term.g.is_empty() {
                    t.to_string()
                } else {
                    format!("{}, {t}", term.g)
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for AmalgamSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Multiset of term words.
pub fn term_multiset<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> BTreeMap<Word, usize> {
    let mut m = BTreeMap::new();
    for w in words {
        *m.entry(w.clone()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> HnnSequence {
        hnn_normalize(&CyclicWord::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn relation_pinches_to_base() {
        assert!(matches!(hnn_normalize(&CyclicWord::parse("t a t'").unwrap()), Err(WordError::NotInHnnForm)));
        assert!(matches!(hnn_normalize(&CyclicWord::parse("a b").unwrap()), Err(WordError::NotInHnnForm)));
        assert!(matches!(hnn_normalize(&CyclicWord::parse("t' b^3 t a'").unwrap()), Err(WordError::NotInHnnForm)));
    }

    #[test]
    fn wrap_pinch() {
        let s = seq("t' b t a t");
        assert!(s.is_reduced());
        assert_eq!(s.len(), 1);
        assert_eq!(s.product().len(), 3);
    }

    #[test]
    fn arc_form_rotation() {
        let s = seq("t b a t b' a'");
        let arc = split_to_arc_form(&s).unwrap();
        let mut gs: Vec<String> = arc.terms.iter().map(|t| t.g.to_string()).collect();
        gs.sort();
        assert_eq!(gs, vec!["b a", "b' a'"]);
    }

    #[test]
    fn arc_form_refusals() {
        let s = seq("t a b");
        assert!(matches!(split_to_arc_form(&s), Err(WordError::NotArcForm(_))));
        let s = seq("t b a b t b a");
        assert!(matches!(split_to_arc_form(&s), Err(WordError::NotArcForm(_))));
        // b-suffix slides across t into an a-prefix
        let s = seq("t b a b t a' b a");
        let arc = split_to_arc_form(&s).unwrap();
        assert!(arc.is_arc_form());
    }

    #[test]
    fn fitor() {
        let s = HnnSequence { terms: vec![HnnTerm { g: Word::parse("b a b' a'").unwrap(), eps: Sign::Pos }] };
        assert_eq!(s.fitor_filling(), FillingVerdict::Filling);
        let s = HnnSequence { terms: vec![HnnTerm { g: Word::parse("a a a").unwrap(), eps: Sign::Pos }] };
        assert_eq!(s.fitor_filling(), FillingVerdict::Unknown);
    }

    #[test]
    fn amalgam_checks() {
        let s = AmalgamSequence {
            terms: vec![
                AmalgamTerm { g: Word::parse("a1 t1").unwrap(), factor: Factor::One },
                AmalgamTerm { g: Word::parse("b2 a2").unwrap(), factor: Factor::Two },
            ],
        };
        assert!(s.is_reduced());
        let bad = AmalgamSequence {
            terms: vec![
                AmalgamTerm { g: Word::parse("a1").unwrap(), factor: Factor::One },
                AmalgamTerm { g: Word::parse("a2^2").unwrap(), factor: Factor::Two },
            ],
        };
        assert_eq!(bad.violations(), vec![Violation::InEdgeGroup(1)]);
        let same = AmalgamSequence {
            terms: vec![
                AmalgamTerm { g: Word::parse("a1").unwrap(), factor: Factor::One },
                AmalgamTerm { g: Word::parse("t1").unwrap(), factor: Factor::One },
            ],
        };
        assert!(same.violations().contains(&Violation::SameFactor(0)));
    }
}
