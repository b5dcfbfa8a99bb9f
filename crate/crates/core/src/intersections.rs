//! Self- and mutual intersection numbers of closed curves on the once-punctured torus
//! (and its pair-of-pants subsurface), by two independent methods:
//!
//! * axis growth: lifts `g·A` of the axis through vertices of the base axis `A`, tested
//!   for linking on the boundary circle under the representation;
//! * linked pairs: maximal common subwords of the cyclic words, oriented by the ribbon
//!   structure of the surface.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::fuchsian::{self, FuchsianError, Mat2f, Representation, RingElem};
use crate::words::{CyclicWord, Gen, Letter, Word, WordError, A, B, T};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntersectionError {
    #[error("count not certified at cutoff {cutoff} (needs {required}, counts {previous} -> {current})")]
    Unstable { cutoff: usize, required: usize, previous: u64, current: u64 },
    #[error("inputs are conjugate up to inversion; use self_intersection")]
    ConjugateInputs,
    #[error("axes share an endpoint")]
    SharedEndpoint,
    #[error("word has generator {0:?} outside this surface")]
    ForeignGenerator(Gen),
    #[error("no common subword bound: inputs are not primitive or are commensurable")]
    Commensurable,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Fuchsian(#[from] FuchsianError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// `<a, t>`; `b` is read as `t a t'`.
    PuncturedTorus,
    /// `<a, b>` inside the torus group, peripheral classes `a`, `b`, `a b'`.
    Pants,
}

/// A free surface group with a representation and a ribbon structure.
#[derive(Clone, Debug)]
pub struct SurfaceGroup {
    pub kind: SurfaceKind,
    rep: Representation,
    /// Cyclic order of the four half-edges at the single vertex.
    order: [Letter; 4],
    gens: [Gen; 2],
}

impl SurfaceGroup {
    pub fn punctured_torus() -> SurfaceGroup {
        SurfaceGroup {
            kind: SurfaceKind::PuncturedTorus,
            rep: Representation::rho(),
            order: [Letter::pos(A), Letter::neg(T), Letter::neg(A), Letter::pos(T)],
            gens: [A, T],
        }
    }

    pub fn pants() -> SurfaceGroup {
        SurfaceGroup {
            kind: SurfaceKind::Pants,
            rep: Representation::rho(),
            order: [Letter::pos(A), Letter::neg(A), Letter::neg(B), Letter::pos(B)],
            gens: [A, B],
        }
    }

    /// Same surface with the representation conjugated by `c`.
    pub fn conjugated(&self, c: &fuchsian::ExactMatrix) -> Result<SurfaceGroup, IntersectionError> {
        Ok(SurfaceGroup { rep: self.rep.conjugated(c)?, ..self.clone() })
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn generators(&self) -> [Gen; 2] {
        self.gens
    }

    /// Rewrites into the surface generators and cyclically reduces.
    pub fn normalize(&self, w: &CyclicWord) -> Result<CyclicWord, IntersectionError> {
        let word = w.word();
        let word = match self.kind {
            SurfaceKind::PuncturedTorus => {
                let b_image = Word::parse("t a t'").expect("static word");
                word.substitute(&|g| if g == B { Some(b_image.clone()) } else { None })
            }
            SurfaceKind::Pants => word,
        };
        if let Some(l) = word.letters().iter().find(|l| !self.gens.contains(&l.gen)) {
            return Err(IntersectionError::ForeignGenerator(l.gen));
        }
        Ok(CyclicWord::new(&word)?)
    }

    fn position(&self, l: Letter) -> usize {
        self.order.iter().position(|&o| o == l).expect("letter of this surface")
    }

    /// `y` comes strictly before `z` when turning from `x` in the ribbon order.
    fn ccw(&self, x: Letter, y: Letter, z: Letter) -> bool {
        let (px, py, pz) = (self.position(x), self.position(y), self.position(z));
        (py + 4 - px) % 4 < (pz + 4 - px) % 4
    }
}

/// Result of the axis-growth count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCount {
    pub value: u64,
    pub cutoff: usize,
    /// Linked lift orbits found with growth radius at most `r`, for `r = 0..=cutoff`.
    pub profile: Vec<u64>,
    /// Linking decisions settled in floating point and exactly.
    pub float_decisions: usize,
    pub exact_decisions: usize,
}

/// How linking of two lifted axes is decided.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LinkTest {
    /// Boundary angles in double precision, exact commutator trace when within tolerance.
    FloatWithFallback,
    /// Always the exact commutator trace.
    Exact,
}

const ANGLE_TOL: f64 = 1e-9;

/// One lifted axis `g·A_v`, deduplicated up to the action of the base axis stabilizer.
#[derive(Clone, Debug)]
pub struct LiftedAxis {
    pub g: Word,
    /// `g v g'` after canonical conjugation by powers of the base word.
    pub key: Word,
    pub level: usize,
    pub endpoints: [f64; 2],
    pub linked: bool,
}

/// Lifts of the axis of `v` through vertices of the axis of `u` up to growth radius `cutoff`.
#[derive(Clone, Debug)]
pub struct LiftedAxisSet {
    pub base: Word,
    pub moving: Word,
    pub base_endpoints: [f64; 2],
    pub lifts: Vec<LiftedAxis>,
    pub float_decisions: usize,
    pub exact_decisions: usize,
}

/// Least element of `{u^m c u^-m}` by (length, letters); length is convex in `m`.
fn canonical_under(u: &Word, u_inv: &Word, c: &Word) -> Word {
    let fwd = |w: &Word| u.mul(w).mul(u_inv);
    let back = |w: &Word| u_inv.mul(w).mul(u);
    let mut cur = c.clone();
    let up = fwd(&cur);
    let down = back(&cur);
    let step: &dyn Fn(&Word) -> Word;
    let mut next;
    if up.len() < cur.len() {
        step = &fwd;
        next = up;
    } else if down.len() < cur.len() {
        step = &back;
        next = down;
    } else {
        return plateau_min(cur, &fwd, &back);
    }
    while next.len() < cur.len() {
        cur = next;
        next = step(&cur);
    }
    plateau_min(cur, &fwd, &back)
}

fn plateau_min(start: Word, fwd: &dyn Fn(&Word) -> Word, back: &dyn Fn(&Word) -> Word) -> Word {
    let n = start.len();
    let mut best = start.clone();
    for step in [fwd, back] {
        let mut w = step(&start);
        while w.len() == n && w != start {
            if w < best {
                best = w.clone();
            }
            w = step(&w);
        }
    }
    best
}

fn angle(p: (f64, f64)) -> f64 {
    (2.0 * p.0.atan2(p.1)).rem_euclid(std::f64::consts::TAU)
}

fn in_arc(lo: f64, hi: f64, x: f64) -> bool {
    let span = (hi - lo).rem_euclid(std::f64::consts::TAU);
    let off = (x - lo).rem_euclid(std::f64::consts::TAU);
    off > 0.0 && off < span
}

fn circ_dist(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

fn axis_angles(m: &Mat2f, ends: &[(f64, f64); 2]) -> [f64; 2] {
    [angle(m.apply(ends[0])), angle(m.apply(ends[1]))]
}

fn fixed_points_projective(rep: &Representation, w: &Word) -> Result<[(f64, f64); 2], IntersectionError> {
    let ax = fuchsian::axis_endpoints(&rep.eval(w)?)?;
    Ok([ax.fixed_points[0].projective(), ax.fixed_points[1].projective()])
}

/// Prefix matrices of `w^∞` of lengths `0..=len`.
fn prefix_mats(rep: &Representation, w: &Word, len: usize) -> Vec<Mat2f> {
    let l = w.letters();
    let mut out = Vec::with_capacity(len + 1);
    let mut acc = Mat2f::identity();
    out.push(acc);
    for i in 0..len {
        let x = l[i % l.len()];
        acc = acc.mul(&rep.letter_f64(x.gen, x.sign).expect("checked generators")).normalized();
        out.push(acc);
    }
    out
}

fn prefix_words(w: &Word, len: usize) -> Vec<Word> {
    let l = w.letters();
    (0..=len).map(|i| Word::new((0..i).map(|k| l[k % l.len()]).collect())).collect()
}

fn exact_linked(rep: &Representation, u: &Word, c: &Word) -> Result<bool, IntersectionError> {
    let mu = rep.eval(u)?;
    let mc = rep.eval(c)?;
    let comm = mu.mul(&mc).mul(&mu.inverse_unimodular()).mul(&mc.inverse_unimodular());
    match comm.trace().cmp_value(&RingElem::int(2)) {
        Ordering::Less => Ok(true),
        Ordering::Greater => Ok(false),
        Ordering::Equal => Err(IntersectionError::SharedEndpoint),
    }
}

/// Enumerates lifts of the axis of `v` through the first `cutoff + 1` vertices of the axis
/// of `u` (both cyclically reduced, primitive, in the surface generators).
pub fn lifted_axes(
    u: &Word,
    v: &Word,
    surface: &SurfaceGroup,
    cutoff: usize,
    test: LinkTest,
) -> Result<LiftedAxisSet, IntersectionError> {
    let rep = &surface.rep;
    let u_inv = u.inverse();
    let ends_u = fixed_points_projective(rep, u)?;
    let ends_v = fixed_points_projective(rep, v)?;
    let base_angles = axis_angles(&Mat2f::identity(), &ends_u);
    let pu = prefix_mats(rep, u, cutoff);
    let pv = prefix_mats(rep, v, cutoff);
    let wu = prefix_words(u, cutoff);
    let wv = prefix_words(v, cutoff);
    let same = u == v;

    let rows: Vec<Result<Vec<(Word, LiftedAxis, bool)>, IntersectionError>> = (0..=cutoff)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            for j in 0..=cutoff {
                let g = wu[i].mul(&wv[j].inverse());
                let c = g.mul(v).mul(&g.inverse());
                let key = canonical_under(u, &u_inv, &c);
                if same && key == *u {
                    continue;
                }
                let m = pu[i].mul(&pv[j].inverse_unimodular());
                let ang = axis_angles(&m, &ends_v);
                let close = ang.iter().any(|&x| base_angles.iter().any(|&y| circ_dist(x, y) < ANGLE_TOL));
                let (linked, exact) = if test == LinkTest::Exact || close {
                    (exact_linked(rep, u, &c)?, true)
                } else {
                    let a = in_arc(base_angles[0], base_angles[1], ang[0]);
                    let b = in_arc(base_angles[0], base_angles[1], ang[1]);
                    (a != b, false)
                };
                let level = i.max(j);
                row.push((key.clone(), LiftedAxis { g, key, level, endpoints: ang, linked }, exact));
            }
            Ok(row)
        })
        .collect();

    let mut best: BTreeMap<Word, LiftedAxis> = BTreeMap::new();
    let (mut nf, mut ne) = (0, 0);
    for row in rows {
        for (key, lift, exact) in row? {
            if exact {
                ne += 1;
            } else {
                nf += 1;
            }
            match best.get_mut(&key) {
                Some(prev) => {
                    debug_assert_eq!(prev.linked, lift.linked, "inconsistent linking for {key}");
                    if lift.level < prev.level {
                        *prev = lift;
                    }
                }
                None => {
                    best.insert(key, lift);
                }
            }
        }
    }
    Ok(LiftedAxisSet {
        base: u.clone(),
        moving: v.clone(),
        base_endpoints: base_angles,
        lifts: best.into_values().collect(),
        float_decisions: nf,
        exact_decisions: ne,
    })
}

fn profile(set: &LiftedAxisSet, cutoff: usize) -> Vec<u64> {
    let mut per = vec![0u64; cutoff + 1];
    for l in set.lifts.iter().filter(|l| l.linked) {
        per[l.level] += 1;
    }
    let mut acc = 0;
    per.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

fn certify(profile: &[u64], cutoff: usize, required: usize) -> Result<u64, IntersectionError> {
    let current = profile[cutoff];
    let previous = if cutoff == 0 { 0 } else { profile[cutoff - 1] };
    if cutoff < required || (cutoff > 0 && previous != current) {
        return Err(IntersectionError::Unstable { cutoff, required, previous, current });
    }
    Ok(current)
}

fn is_peripheral(surface: &SurfaceGroup, w: &CyclicWord) -> Result<bool, IntersectionError> {
    let tr = surface.rep.eval(&w.word())?.trace();
    match fuchsian::classify_trace(&tr) {
        Ok(()) => Ok(false),
        Err(FuchsianError::Parabolic) => Ok(true),
        Err(e) => Err(e.into()),
    }
}

pub fn self_intersection(w: &CyclicWord, surface: &SurfaceGroup, cutoff: usize) -> Result<IntersectionCount, IntersectionError> {
    self_intersection_with(w, surface, cutoff, LinkTest::FloatWithFallback)
}

/// Axis-growth self-intersection. Certified when the cutoff reaches `|root| − 1` (every
/// crossing orbit has a representative `p q'` with `p`, `q` proper prefixes of the root)
/// and the count did not change from `cutoff − 1`.
pub fn self_intersection_with(
    w: &CyclicWord,
    surface: &SurfaceGroup,
    cutoff: usize,
    test: LinkTest,
) -> Result<IntersectionCount, IntersectionError> {
    let w = surface.normalize(w)?;
    let (root, k) = w.primitive_root();
    let k = k as u64;
    if is_peripheral(surface, &root)? {
        // a primitive peripheral class is simple
        return Ok(IntersectionCount { value: k - 1, cutoff, profile: vec![0; cutoff + 1], float_decisions: 0, exact_decisions: 0 });
    }
    let u = root.word();
    let set = lifted_axes(&u, &u, surface, cutoff, test)?;
    let prof = profile(&set, cutoff);
    let lines = certify(&prof, cutoff, root.len() - 1)?;
    assert!(lines % 2 == 0, "crossing lifts come in pairs g, g'");
    Ok(IntersectionCount {
        value: k * k * (lines / 2) + k - 1,
        cutoff,
        profile: prof,
        float_decisions: set.float_decisions,
        exact_decisions: set.exact_decisions,
    })
}

pub fn geometric_intersection(
    u: &CyclicWord,
    v: &CyclicWord,
    surface: &SurfaceGroup,
    cutoff: usize,
) -> Result<IntersectionCount, IntersectionError> {
    let u = surface.normalize(u)?;
    let v = surface.normalize(v)?;
    let (ru, k) = u.primitive_root();
    let (rv, l) = v.primitive_root();
    if ru == rv || ru == rv.inverse() {
        return Err(IntersectionError::ConjugateInputs);
    }
    if is_peripheral(surface, &ru)? || is_peripheral(surface, &rv)? {
        return Ok(IntersectionCount { value: 0, cutoff, profile: vec![0; cutoff + 1], float_decisions: 0, exact_decisions: 0 });
    }
    let set = lifted_axes(&ru.word(), &rv.word(), surface, cutoff, LinkTest::FloatWithFallback)?;
    let prof = profile(&set, cutoff);
    let lines = certify(&prof, cutoff, ru.len().max(rv.len()) - 1)?;
    Ok(IntersectionCount {
        value: (k * l) as u64 * lines,
        cutoff,
        profile: prof,
        float_decisions: set.float_decisions,
        exact_decisions: set.exact_decisions,
    })
}

/// Cutoff that certifies a count for words of this length.
pub fn sufficient_cutoff(len: usize) -> usize {
    len.max(2)
}

/// Linked maximal common subwords of the cyclic words `w`, `v` starting at an ordered pair
/// of positions. Zero-length meetings are counted only when `single_vertex` is set.
fn linked_pairs(surface: &SurfaceGroup, w: &[Letter], v: &[Letter], single_vertex: bool) -> Result<u64, IntersectionError> {
    let (n, m) = (w.len(), v.len());
    let at = |s: &[Letter], i: usize| s[i % s.len()];
    let mut count = 0;
    for i in 0..n {
        for j in 0..m {
            if at(w, i + n - 1) == at(v, j + m - 1) {
                continue;
            }
            let mut k = 0;
            while at(w, i + k) == at(v, j + k) {
                k += 1;
                if k > n + m {
                    return Err(IntersectionError::Commensurable);
                }
            }
            let x1 = at(w, i + n - 1).inverse();
            let x2 = at(v, j + m - 1).inverse();
            let y1 = at(w, i + k);
            let y2 = at(v, j + k);
            if k == 0 {
                if !single_vertex || x1 == y2 || x2 == y1 {
                    continue;
                }
                if surface.ccw(x1, x2, y1) != surface.ccw(x1, y2, y1) {
                    count += 1;
                }
            } else {
                let s = at(w, i);
                let e = at(w, i + k - 1).inverse();
                if surface.ccw(s, x1, x2) == surface.ccw(e, y1, y2) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn inverse_letters(w: &CyclicWord) -> Vec<Letter> {
    w.letters().iter().rev().map(|l| l.inverse()).collect()
}

/// Linked-pair self-intersection from the ribbon structure alone.
pub fn combinatorial_self_intersection(w: &CyclicWord, surface: &SurfaceGroup) -> Result<u64, IntersectionError> {
    let w = surface.normalize(w)?;
    let (root, k) = w.primitive_root();
    let k = k as u64;
    let r = root.letters();
    let total = linked_pairs(surface, r, r, true)? + linked_pairs(surface, r, &inverse_letters(&root), false)?;
    assert!(total % 2 == 0, "each crossing is seen from both strands");
    Ok(k * k * (total / 2) + k - 1)
}

pub fn combinatorial_intersection(u: &CyclicWord, v: &CyclicWord, surface: &SurfaceGroup) -> Result<u64, IntersectionError> {
    let u = surface.normalize(u)?;
    let v = surface.normalize(v)?;
    let (ru, k) = u.primitive_root();
    let (rv, l) = v.primitive_root();
    if ru == rv || ru == rv.inverse() {
        return Err(IntersectionError::ConjugateInputs);
    }
    let total = linked_pairs(surface, ru.letters(), rv.letters(), true)?
        + linked_pairs(surface, ru.letters(), &inverse_letters(&rv), false)?;
    Ok((k * l) as u64 * total)
}

/// `n² i(η,η) + n (i(γ₀,η) − 1)`, as displayed for the composed family.
pub fn theorem2_selfint_prediction(n: i64, i_eta_eta: i64, i_gamma0_eta: i64) -> i64 {
    n * n * i_eta_eta + n * (i_gamma0_eta - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::parse(s).unwrap()
    }

    #[test]
    fn torus_examples() {
        let s = SurfaceGroup::punctured_torus();
        for (w, v) in [("a", 0), ("a t", 0), ("a^2 t", 0), ("a t a t'", 1), ("a^2 t a t'", 2)] {
            let c = self_intersection(&cw(w), &s, sufficient_cutoff(cw(w).len() * 3)).unwrap();
            assert_eq!(c.value, v, "{w}");
            assert_eq!(combinatorial_self_intersection(&cw(w), &s).unwrap(), v, "{w}");
        }
    }

    #[test]
    fn pairs() {
        let s = SurfaceGroup::punctured_torus();
        assert_eq!(geometric_intersection(&cw("a"), &cw("t"), &s, 4).unwrap().value, 1);
        assert_eq!(geometric_intersection(&cw("a"), &cw("t^2"), &s, 4).unwrap().value, 2);
        assert_eq!(geometric_intersection(&cw("a"), &cw("t a t'"), &s, 4), Err(IntersectionError::ConjugateInputs));
        assert_eq!(combinatorial_intersection(&cw("a"), &cw("t"), &s).unwrap(), 1);
    }

    #[test]
    fn unstable_below_certificate() {
        let s = SurfaceGroup::punctured_torus();
        let r = self_intersection(&cw("a^2 t a t'"), &s, 2);
        assert!(matches!(r, Err(IntersectionError::Unstable { .. })));
    }

    #[test]
    fn prediction_formula() {
        assert_eq!(theorem2_selfint_prediction(0, 0, 2), 0);
        assert_eq!(theorem2_selfint_prediction(3, 0, 2), 3);
        assert_eq!(theorem2_selfint_prediction(2, 1, 2), 6);
    }
}
