//! Reference implementations used only as test oracles. They share no code with the
//! library: words are `Vec<i8>` with `±1 = a`, `±2 = t`, matrices are plain `f64`.

#![allow(dead_code)]

pub type W = Vec<i8>;

pub fn reduce(w: &[i8]) -> W {
    let mut out: W = Vec::new();
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inv(w: &[i8]) -> W {
    w.iter().rev().map(|x| -x).collect()
}

pub fn mul(a: &[i8], b: &[i8]) -> W {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    reduce(&v)
}

pub fn power(w: &[i8], k: i64) -> W {
    let base = if k < 0 { inv(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..k.abs() {
        out = mul(&out, &base);
    }
    out
}

pub fn parse(s: &str) -> W {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let g = match &tok[..1] {
            "a" => 1,
            "t" => 2,
            _ => panic!("oracle alphabet is a, t"),
        };
        out.push(if tok.ends_with('\'') { -g } else { g });
    }
    reduce(&out)
}

pub fn show(w: &[i8]) -> String {
    w.iter()
        .map(|&x| match x {
            1 => "a",
            -1 => "a'",
            2 => "t",
            -2 => "t'",
            _ => unreachable!(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Cyclically reduced words of length exactly `n` up to rotation (one representative each).
pub fn cyclic_words(n: usize) -> Vec<W> {
    let letters = [1i8, -1, 2, -2];
    let mut all = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &all {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    let mut v: W = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        all = next;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for w in all {
        if w.first() == Some(&-w[w.len() - 1]) {
            continue;
        }
        let canon = (0..w.len()).map(|k| [&w[k..], &w[..k]].concat()).min().unwrap();
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}

pub fn is_primitive_cyclic(w: &[i8]) -> bool {
    let n = w.len();
    (1..n).filter(|p| n % p == 0).all(|p| (0..n).any(|i| w[i] != w[(i + p) % n]))
}

type M = [f64; 4];

fn mm(x: &M, y: &M) -> M {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

pub fn rho(w: &[i8]) -> M {
    let s = 2f64.sqrt();
    let a = [s, 1.0 + s, s - 1.0, s];
    let ai = [s, -1.0 - s, 1.0 - s, s];
    let t = [s - 1.0, 0.0, 0.0, s + 1.0];
    let ti = [s + 1.0, 0.0, 0.0, s - 1.0];
    let mut m = [1.0, 0.0, 0.0, 1.0];
    for &x in w {
        let g = match x {
            1 => &a,
            -1 => &ai,
            2 => &t,
            _ => &ti,
        };
        m = mm(&m, g);
    }
    m
}

pub fn trace(w: &[i8]) -> f64 {
    let m = rho(w);
    m[0] + m[3]
}

/// Fixed points on the boundary as angles of the doubled projective line.
fn fixed_angles(m: &M) -> [f64; 2] {
    let [a, b, c, d] = *m;
    let ang = |x: f64, y: f64| (2.0 * x.atan2(y)).rem_euclid(std::f64::consts::TAU);
    if c.abs() < 1e-300 {
        return [ang(1.0, 0.0), ang(b, d - a)];
    }
    let disc = ((a + d) * (a + d) - 4.0).sqrt();
    [ang(a - d + disc, 2.0 * c), ang(a - d - disc, 2.0 * c)]
}

fn separates(p: [f64; 2], q: [f64; 2]) -> bool {
    let inside = |x: f64| {
        let span = (p[1] - p[0]).rem_euclid(std::f64::consts::TAU);
        let off = (x - p[0]).rem_euclid(std::f64::consts::TAU);
        off > 0.0 && off < span
    };
    inside(q[0]) != inside(q[1])
}

fn all_reduced_up_to(r: usize) -> Vec<W> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for l in [1i8, -1, 2, -2] {
                if w.last() != Some(&-l) {
                    let mut v: W = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Self-intersection of a primitive hyperbolic cyclically reduced word by brute force:
/// every conjugate `g u g'` with `|g| <= 2|u| - 2`, deduplicated by the least element of
/// its orbit under conjugation by powers of `u` (searched over a fixed window).
pub fn brute_self_intersection(u: &[i8]) -> u64 {
    let n = u.len();
    let r = (2 * n).saturating_sub(2);
    let base = fixed_angles(&rho(u));
    let window = (r + 2) as i64;
    let mut keys = std::collections::BTreeSet::new();
    for g in all_reduced_up_to(r) {
        let c = mul(&mul(&g, u), &inv(&g));
        if c == u {
            continue;
        }
        let key = (-window..=window)
            .map(|m| {
                let w = mul(&mul(&power(u, m), &c), &power(u, -m));
                (w.len(), w)
            })
            .min()
            .unwrap();
        if keys.contains(&key) {
            continue;
        }
        if separates(base, fixed_angles(&rho(&c))) {
            keys.insert(key);
        }
    }
    assert!(keys.len() % 2 == 0);
    keys.len() as u64 / 2
}
