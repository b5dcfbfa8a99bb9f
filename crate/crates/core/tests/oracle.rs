//! Library results against independent reference computations.

mod common;

use geolift::fuchsian::{self, lobachevsky, Representation};
use geolift::intersections::{self, SurfaceGroup};
use geolift::words::{CyclicWord, Word};
use geolift::{families, modular};

fn lib_cyclic(w: &[i8]) -> CyclicWord {
    CyclicWord::parse(&common::show(w)).unwrap()
}

#[test]
fn self_intersection_matches_brute_force() {
    let s = SurfaceGroup::punctured_torus();
    let mut checked = 0;
    for n in 1..=5 {
        for w in common::cyclic_words(n) {
            if !common::is_primitive_cyclic(&w) || (common::trace(&w).abs() - 2.0).abs() < 1e-9 {
                continue;
            }
            let c = lib_cyclic(&w);
            let expect = common::brute_self_intersection(&w);
            let geo = intersections::self_intersection(&c, &s, intersections::sufficient_cutoff(n)).unwrap();
            assert_eq!(geo.value, expect, "axis growth on {}", common::show(&w));
            assert_eq!(intersections::combinatorial_self_intersection(&c, &s).unwrap(), expect, "linked pairs on {}", common::show(&w));
            checked += 1;
        }
    }
    assert!(checked >= 80, "{checked}");
}

#[test]
fn frozen_small_values() {
    // from the brute-force oracle above
    let s = SurfaceGroup::punctured_torus();
    for (w, v) in [("a t a t'", 1), ("a a t a t'", 2), ("a a t t", 1), ("a t t a' t'", 1)] {
        let u = common::parse(w);
        assert_eq!(common::brute_self_intersection(&u), v, "{w}");
        assert_eq!(intersections::self_intersection(&lib_cyclic(&u), &s, 8).unwrap().value, v);
    }
}

#[test]
fn traces_match_float_product() {
    let rep = Representation::rho();
    for n in 1..=6 {
        for w in common::cyclic_words(n).into_iter().take(40) {
            let exact = rep.eval(&Word::parse(&common::show(&w)).unwrap()).unwrap().trace().to_f64();
            let float = common::trace(&w);
            assert!((exact - float).abs() <= 1e-9 * float.abs().max(1.0), "{}", common::show(&w));
        }
    }
}

#[test]
fn gi_words_match_exhaustive_filter() {
    // every string over {a, A, b, B}, kept if reduced, first letter b^±, last letter a^±
    for len in 4..=8usize {
        let mut expect = std::collections::BTreeSet::new();
        for code in 0..4usize.pow(len as u32) {
            let s: Vec<usize> = (0..len).map(|i| (code >> (2 * i)) & 3).collect();
            let reduced = s.windows(2).all(|p| p[0] ^ 1 != p[1]);
            if reduced && s[0] >= 2 && s[len - 1] < 2 {
                let text: Vec<&str> = s.iter().map(|&x| ["a", "a'", "b", "b'"][x]).collect();
                expect.insert(Word::parse(&text.join(" ")).unwrap());
            }
        }
        let lib: std::collections::BTreeSet<Word> =
            families::enumerate_gi_words(len as u64).into_iter().filter(|w| w.len() == len).collect();
        assert_eq!(lib, expect, "length {len}");
        assert_eq!(families::gi_count_exact(len as u64), expect.len() as u64);
    }
}

#[test]
fn lobachevsky_identities() {
    let catalan = 0.915_965_594_177_219;
    assert!((2.0 * lobachevsky(std::f64::consts::FRAC_PI_4) - catalan).abs() < 1e-9);
    assert!(lobachevsky(std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    // v3 = 3 Λ(π/3) from the Clausen series, summed here independently
    let cl2 = |x: f64| (1..200_000).map(|k| (k as f64 * x).sin() / (k as f64 * k as f64)).sum::<f64>();
    let v3 = 1.5 * cl2(2.0 * std::f64::consts::FRAC_PI_3);
    assert!((fuchsian::v3() - v3).abs() < 1e-8);
}

#[test]
fn modular_matrices_by_hand() {
    let mul = |x: [i64; 4], y: [i64; 4]| [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]];
    for text in ["x y", "x^2 y", "x y^3 x^2 y", "x^6 y x^8 y^2 x^2 y"] {
        let w = modular::parse_xy(text).unwrap();
        let mut m = [1, 0, 0, 1];
        for ch in w.word().letters() {
            m = mul(m, if ch.gen == geolift::words::X { [1, 1, 0, 1] } else { [1, 0, 1, 1] });
        }
        assert_eq!(w.trace(), (m[0] + m[3]).into(), "{text}");
    }
}

#[test]
fn rewriting_preserves_traces() {
    let rep = modular::modular_torus_rep();
    for text in ["x^6", "y x", "x^3 y^3", "x^6 y x^8 y^2 x^2 y", "x y' x' y x^2 y' x'^2"] {
        let w = Word::parse(text).unwrap();
        if modular::coset_of(&w).unwrap() != 0 {
            continue;
        }
        let before = modular::xy_element_matrix(&w).unwrap().to_exact().trace();
        let after = rep.eval(&modular::rewrite_element(&w).unwrap()).unwrap().trace();
        assert_eq!(before.abs(), after.abs(), "{text}");
    }
}
