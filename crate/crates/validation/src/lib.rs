//! Acceptance criteria as functions returning an [`Outcome`]. Tolerances and time budgets
//! are fixed here.

use std::time::{Duration, Instant};

use geolift::bounds;
use geolift::families;
use geolift::fuchsian::{self, lobachevsky, lobachevsky_series, IntMatrix, Representation, RingElem};
use geolift::intersections::{self, SurfaceGroup};
use geolift::modular;
use geolift::report::{self, Config, Family, Format};
use geolift::words::{hnn_normalize, split_to_arc_form, CyclicWord, Letter, Word, X, Y};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CATALAN: f64 = 0.915_965_594_177_219;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub pass: bool,
    pub elapsed: Duration,
    pub budget: Duration,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2}: {}  ({:.3?} of {:?})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed,
            self.budget
        )
    }
}

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Check {
        Check { ok: true, notes: Vec::new() }
    }

    fn clause(&mut self, ok: bool, what: String) {
        self.ok &= ok;
        self.notes.push(format!("[{}] {what}", if ok { "ok" } else { "FAIL" }));
    }

    fn note(&mut self, what: String) {
        self.notes.push(format!("[info] {what}"));
    }
}

fn timed(id: u8, budget: Duration, f: impl FnOnce(&mut Check)) -> Outcome {
    let mut c = Check::new();
    let t0 = Instant::now();
    f(&mut c);
    let elapsed = t0.elapsed();
    c.clause(elapsed <= budget, format!("runtime {elapsed:.3?} within {budget:?}"));
    Outcome { id, pass: c.ok, elapsed, budget, notes: c.notes }
}

pub fn criterion_1() -> Outcome {
    timed(1, Duration::from_millis(1), |c| {
        let tr = Representation::rho().eval(&Word::parse("a b'").unwrap()).unwrap().trace();
        c.clause(tr == RingElem::int(-2), format!("tr rho(a b') = {tr}"));
    })
}

pub fn criterion_2() -> Outcome {
    timed(2, Duration::from_secs(1), |c| {
        let v3 = fuchsian::v3();
        c.clause((v3 - 1.014941606).abs() <= 1e-9, format!("v3 = {v3:.15} by integration"));
        let series = 3.0 * lobachevsky_series(std::f64::consts::FRAC_PI_3, 100_000);
        c.clause((v3 - series).abs() <= 1e-9, format!("series gives {series:.15}"));
        let half = lobachevsky(std::f64::consts::FRAC_PI_2);
        c.clause(
            (half - CATALAN).abs() <= 1e-9,
            format!("Λ(π/2) = {half:.3e} against Catalan {CATALAN}; Λ(π/2) vanishes identically"),
        );
        let quarter = 2.0 * lobachevsky(std::f64::consts::FRAC_PI_4);
        c.note(format!("2Λ(π/4) = {quarter:.15}, |2Λ(π/4) - G| = {:.1e}", (quarter - CATALAN).abs()));
    })
}

pub fn criterion_3() -> Outcome {
    timed(3, Duration::from_millis(1), |c| {
        let w = modular::parse_xy("x^2 y").unwrap();
        c.clause(w.n_gamma() == 1, format!("n_gamma(x^2 y) = {}", w.n_gamma()));
        let xy = modular::parse_xy("x y").unwrap();
        let m = xy.matrix();
        c.clause(m == IntMatrix::from_i64(2, 1, 1, 1), format!("M(x y) = [[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d));
        let l = xy.translation_length().unwrap();
        let want = 2.0 * 1.5f64.acosh();
        c.clause((l - want).abs() <= 1e-12, format!("length {l:.15}, 2 arccosh(3/2) = {want:.15}"));
    })
}

/// Random `x`, `y` words closed into the index-6 subgroup by a final power of `x`.
pub fn subgroup_words(count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(4..40);
            let letters: Vec<Letter> = (0..n)
                .map(|_| {
                    let g = if rng.gen_bool(0.5) { X } else { Y };
                    if rng.gen_bool(0.5) {
                        Letter::pos(g)
                    } else {
                        Letter::neg(g)
                    }
                })
                .collect();
            let w = Word::new(letters);
            let c = modular::coset_of(&w).unwrap() as i64;
            w.mul(&Word::gen_power(X, -c))
        })
        .collect()
}

pub fn criterion_4() -> Outcome {
    timed(4, Duration::from_secs(1), |c| {
        let rep = modular::modular_torus_rep();
        let mut agree = 0;
        for w in subgroup_words(20, 0x5eed) {
            let before = modular::xy_element_matrix(&w).unwrap().to_exact().trace().abs();
            let after = rep.eval(&modular::rewrite_element(&w).unwrap()).unwrap().trace().abs();
            if before == after {
                agree += 1;
            } else {
                c.note(format!("{w}: |tr| {before} vs {after}"));
            }
        }
        c.clause(agree == 20, format!("{agree}/20 traces agree exactly"));
    })
}

fn frozen_mod_counts() -> Option<Vec<(u64, usize)>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/mod_family.tsv");
    let text = std::fs::read_to_string(path).ok()?;
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            Some((f.first()?.parse().ok()?, f.get(2)?.parse().ok()?))
        })
        .collect()
}

pub fn criterion_5() -> Outcome {
    timed(5, Duration::from_secs(10), |c| {
        let frozen = frozen_mod_counts();
        let v3 = fuchsian::v3();
        let (mut arc_ok, mut within, mut exact, mut bound_ok) = (0, 0, 0, 0);
        let mut counts = Vec::new();
        for k in 1..=10u64 {
            let w = families::mod_family(k).unwrap();
            let t = modular::rewrite_to_torus(&w).unwrap();
            let seq = hnn_normalize(&CyclicWord::new(&t).unwrap()).unwrap();
            if split_to_arc_form(&seq).is_ok() {
                arc_ok += 1;
            }
            let census = bounds::double_coset_census(&seq);
            let d = census.distinct();
            counts.push(d);
            if (d as i64 - (k as i64 + 1)).abs() <= 1 {
                within += 1;
            }
            if d as u64 == k + 1 {
                exact += 1;
            }
            let recomputed = bounds::cover_adjust(bounds::theorem1_bound(&census), 6).unwrap();
            let stated = modular::mod_lower_bound(k);
            let want = v3 * (k + 1) as f64 / 12.0;
            if (recomputed - want).abs() <= f64::EPSILON * want && (stated - want).abs() <= f64::EPSILON * want {
                bound_ok += 1;
            }
        }
        c.clause(arc_ok == 10, format!("strict arc form for {arc_ok}/10 (junction residues a^±1 remain)"));
        c.clause(within == 10, format!("distinct counts {counts:?}: within ±1 of k+1 for {within}/10, equal for {exact}/10"));
        c.clause(
            bound_ok == 10,
            format!("census through cover_adjust(·, 6) equals v3(k+1)/12 to 1 ulp for {bound_ok}/10"),
        );
        match frozen {
            Some(f) => {
                let same = f.iter().map(|x| x.1).collect::<Vec<_>>() == counts;
                c.clause(same, "counts equal the frozen golden file".to_string());
            }
            None => c.clause(false, "golden file tests/golden/mod_family.tsv missing".to_string()),
        }
        let alt: Vec<usize> = (1..=10)
            .map(|k| {
                let w = families::mod_family_with(k, families::ExponentRule::WithSeven).unwrap();
                let t = modular::rewrite_to_torus(&w).unwrap();
                bounds::double_coset_census(&hnn_normalize(&CyclicWord::new(&t).unwrap()).unwrap()).distinct()
            })
            .collect();
        c.note(format!("with an x^7 y block for every j = 1..k the counts are {alt:?}"));
    })
}

/// All cyclically reduced words of length `1..=max` over `a`, `t`, one per rotation class.
pub fn torus_words(max: usize) -> Vec<CyclicWord> {
    let letters = [Letter::pos(geolift::words::A), Letter::neg(geolift::words::A), Letter::pos(geolift::words::T), Letter::neg(geolift::words::T)];
    let mut out = std::collections::BTreeSet::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_none_or(|x| !x.cancels(l)) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        for w in &next {
            if !w[0].cancels(w[w.len() - 1]) || w.len() == 1 {
                out.insert(CyclicWord::new(&Word::new(w.clone())).unwrap());
            }
        }
        layer = next;
    }
    out.into_iter().collect()
}

pub fn criterion_6() -> Outcome {
    timed(6, Duration::from_secs(60), |c| {
        let s = SurfaceGroup::punctured_torus();
        let words = torus_words(6);
        let mut agree = 0;
        for w in &words {
            let g = intersections::self_intersection(w, &s, intersections::sufficient_cutoff(w.len())).map(|r| r.value);
            let k = intersections::combinatorial_self_intersection(w, &s);
            if g.is_ok() && g == k {
                agree += 1;
            } else {
                c.note(format!("{w}: axis growth {g:?}, linked pairs {k:?}"));
            }
        }
        c.clause(agree == words.len(), format!("methods agree on {agree}/{} classes of length <= 6", words.len()));
        let i = |text: &str, surf: &SurfaceGroup| {
            intersections::combinatorial_self_intersection(&CyclicWord::parse(text).unwrap(), surf).unwrap()
        };
        let want = [("a", 0), ("a b", 0), ("a^2 b", 1)];
        let got: Vec<u64> = want.iter().map(|(w, _)| i(w, &s)).collect();
        c.clause(
            want.iter().zip(&got).all(|(w, g)| w.1 == *g),
            format!("i(a), i(a b), i(a^2 b) with b = t a t' are {got:?}, expected [0, 0, 1]"),
        );
        let as_t: Vec<u64> = ["a", "a t", "a^2 t"].iter().map(|w| i(w, &s)).collect();
        let p = SurfaceGroup::pants();
        let pants: Vec<u64> = ["a", "a b", "a^2 b", "a b'", "a^2 b'"].iter().map(|w| i(w, &p)).collect();
        c.note(format!("reading b as the second torus generator: i(a), i(a t), i(a^2 t) = {as_t:?}"));
        c.note(format!("on the pants <a, b>: i(a), i(a b), i(a^2 b), i(a b'), i(a^2 b') = {pants:?}"));
    })
}

pub const GAMMA0: &str = "t^2 a t' a t";

pub fn criterion_7() -> Outcome {
    timed(7, Duration::from_secs(120), |c| {
        let s = SurfaceGroup::punctured_torus();
        let g0 = Word::parse(GAMMA0).unwrap();
        let eta = Word::parse("a").unwrap();
        let g0c = CyclicWord::new(&g0).unwrap();
        let ec = CyclicWord::new(&eta).unwrap();
        let i_ge = intersections::geometric_intersection(&g0c, &ec, &s, 8).unwrap().value;
        let i_ee = intersections::self_intersection(&ec, &s, 2).unwrap().value;
        let i_gg = intersections::self_intersection(&g0c, &s, 8).unwrap().value;
        c.clause(i_ge == 2 && i_ee == 0, format!("i(γ0, a) = {i_ge}, i(a, a) = {i_ee}, i(γ0, γ0) = {i_gg}"));
        let vals: Vec<i64> = (1..=5)
            .map(|n| {
                let w = families::theorem2_family(&g0, &eta, n).unwrap();
                intersections::self_intersection(&w, &s, intersections::sufficient_cutoff(w.len())).unwrap().value as i64
            })
            .collect();
        let slope = vals[1] - vals[0];
        let affine = vals.windows(2).all(|p| p[1] - p[0] == slope);
        let intercept = vals[0] - slope;
        c.clause(affine, format!("i(a^n γ0) for n = 1..5: {vals:?}"));
        let want = intersections::theorem2_selfint_prediction(1, i_ee as i64, i_ge as i64)
            - intersections::theorem2_selfint_prediction(0, i_ee as i64, i_ge as i64);
        c.clause(slope == want, format!("n-coefficient {slope}, displayed formula gives {want}"));
        let formula: Vec<i64> = (1..=5).map(|n| intersections::theorem2_selfint_prediction(n, i_ee as i64, i_ge as i64)).collect();
        c.note(format!("displayed formula values {formula:?}; measured intercept {intercept} (= i(γ0, γ0) = {i_gg}), formula intercept 0"));
    })
}

/// Count of reduced words of exact length `len` over `a, A, b, B` starting in `b^±`, ending in `a^±`.
pub fn brute_gi_count(len: usize) -> u64 {
    (0..4u64.pow(len as u32))
        .filter(|code| {
            let s: Vec<u64> = (0..len).map(|i| (code >> (2 * i)) & 3).collect();
            s.windows(2).all(|p| p[0] ^ 1 != p[1]) && s[0] >= 2 && s[len - 1] < 2
        })
        .count() as u64
}

pub fn criterion_8() -> Outcome {
    timed(8, Duration::from_secs(60), |c| {
        let mut cum = 0;
        for n in 4..=7u64 {
            cum += brute_gi_count(n as usize);
            let lib = families::enumerate_gi_words(n).len() as u64;
            c.clause(lib == cum, format!("n = {n}: enumerated {lib}, brute force {cum}"));
            let quoted = families::gi_count_quoted(n);
            c.note(format!("n = {n}: closed form 12(3^n - 1) = {quoted}, measured/closed = {:.6}", cum as f64 / quoted as f64));
            let r = bounds::pib_chain_check(n).unwrap();
            let fin = r.links.last().unwrap();
            c.clause(
                r.final_pass,
                format!("n = {n}: theorem1_bound {:.6} >= v3 l / ln l = {:.6} with l = {:.6}", fin.rhs, fin.lhs, r.geodesic_length),
            );
            for link in &r.links[..r.links.len() - 1] {
                c.note(format!("n = {n}: {} {:.6} <= {:.6}: {}", link.name, link.lhs, link.rhs, link.pass));
            }
        }
        c.note("the listed (36, 144) is not what brute force gives: 28 words at length 4, 108 up to length 5".to_string());
    })
}

pub fn criterion_9() -> Outcome {
    timed(9, Duration::from_secs(5), |c| {
        let b0 = bounds::pib2_bound(0.0).unwrap();
        let want = fuchsian::v3() / (2.0 * 2f64.sqrt());
        c.clause((b0 - want).abs() <= 1e-12, format!("pib2_bound(0) = {b0:.15}"));
        let lin_ok = (2..=10_000u64).all(|n| bounds::lin_bound(2 * n, 1.0).unwrap().0 == 2.0 * bounds::lin_bound(n, 1.0).unwrap().0);
        c.clause(lin_ok, "lin_bound(2n).lower = 2 lin_bound(n).lower exactly for n = 2..10^4".to_string());
        let bad = (2..=1_000_000u64).find(|&n| !bounds::lin_length_inequality(n));
        c.clause(bad.is_none(), format!("4 + n + 2 ln n <= 5n for n = 2..10^6 (first failure {bad:?})"));
    })
}

fn full_report(threads: usize) -> Vec<Vec<u8>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let cfg = Config::default();
    let mut out = Vec::new();
    for f in Family::ALL {
        let t = pool.install(|| report::run_report(f, f.default_range(), &cfg)).unwrap();
        for fmt in [Format::Csv, Format::Json, Format::Svg { log_axes: false }, Format::Svg { log_axes: true }] {
            out.push(report::emit(&t, fmt).unwrap_or_else(|e| format!("error: {e}").into_bytes()));
        }
    }
    out
}

pub fn criterion_10() -> Outcome {
    timed(10, Duration::from_secs(300), |c| {
        let a = full_report(1);
        let b = full_report(8);
        let d = full_report(0);
        c.clause(a == b && b == d, format!("{} outputs byte-identical across runs with 1, 8 and default threads", a.len()));
    })
}

pub fn all() -> Vec<Outcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}
