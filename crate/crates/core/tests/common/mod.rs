//! Independent oracles: brute-force nested sums with rigorous tails, linear extension
//! counts and truncated power series for arborified polylogarithms.

#![allow(dead_code)]

use arbozeta::{Decoration, Forest, Tree, X, Y};

pub fn leaf(n: u32) -> Tree {
    Tree::leaf(Decoration::int(n))
}

pub fn ints(ns: &[u32]) -> Vec<Decoration> {
    ns.iter().map(|&n| Decoration::int(n)).collect()
}

/// Number of orderings of the vertices of `f` in which every vertex precedes its children.
pub fn linear_extensions(f: &Forest) -> u128 {
    fn go(roots: Vec<Tree>) -> u128 {
        if roots.is_empty() {
            return 1;
        }
        let mut total = 0;
        for i in 0..roots.len() {
            let mut next = roots.clone();
            let t = next.remove(i);
            next.extend(t.children().iter().cloned());
            total += go(next);
        }
        total
    }
    go(f.trees().to_vec())
}

fn kahan_prefix(values: &[f64], strict: bool) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for &v in values {
        if strict {
            out.push(s);
        }
        let y = v - c;
        let t = s + y;
        c = (t - s) - y;
        s = t;
        if !strict {
            out.push(s);
        }
    }
    out
}

/// Polynomials in ℓ with nonnegative coefficients, lowest degree first.
type Poly = Vec<f64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `Q(u + ε)` expanded in powers of `u`.
fn poly_shift(q: &Poly, eps: f64) -> Poly {
    let mut out = vec![0.0; q.len()];
    for (j, c) in q.iter().enumerate() {
        for (i, o) in out.iter_mut().enumerate().take(j + 1) {
            *o += c * binom(j, i) * eps.powi((j - i) as i32);
        }
    }
    out
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Per vertex: the sequence `U_v(m)` for `m = 1..=n+1` and an envelope `P_v` with
/// `U_v(m) ≤ P_v(ln(m/n))` for every `m > n`.
///
/// For `x ∈ [k−1, k]` and `k > n`, `1/k ≤ 1/x` and `ln(k/n) ≤ ln(x/n) + 1/n`, so sums over
/// `k > n` are dominated by integrals of the shifted envelope.
struct Vertex {
    values: Vec<f64>,
    envelope: Poly,
}

fn vertex(t: &Tree, n: usize, strict: bool) -> Vertex {
    let horizon = n + 1;
    let mut g = vec![1.0f64; horizon];
    let mut q: Poly = vec![1.0];
    for c in t.children() {
        let v = vertex(c, n, strict);
        for (gi, vi) in g.iter_mut().zip(&v.values) {
            *gi *= vi;
        }
        q = poly_mul(&q, &v.envelope);
    }
    let d = t.root().as_int().expect("positive-integer forest") as i32;
    let terms: Vec<f64> = (1..=horizon).map(|k| (k as f64).powi(-d) * g[k - 1]).collect();
    let values = kahan_prefix(&terms, strict);
    // value with every index at most n
    let base = if strict { values[n] } else { values[n - 1] };
    let base = base * (1.0 + 1e-12);
    let shifted = poly_shift(&q, 1.0 / n as f64);
    let envelope = if d == 1 {
        let mut p = vec![base];
        for (j, c) in shifted.iter().enumerate() {
            p.push(c / (j + 1) as f64);
        }
        p
    } else {
        vec![base + tail_constant(&shifted, d, n)]
    };
    Vertex { values, envelope }
}

/// `∫_n^∞ x^{−d} Q(ln(x/n) + 1/n) dx = n^{1−d} Σ_j q̃_j j! / (d−1)^{j+1}`.
fn tail_constant(shifted: &Poly, d: i32, n: usize) -> f64 {
    let s: f64 = shifted
        .iter()
        .enumerate()
        .map(|(j, c)| c * factorial(j) / ((d - 1) as f64).powi(j as i32 + 1))
        .sum();
    (n as f64).powi(1 - d) * s
}

/// Nested sums over all vertex labels `≤ n` (strict: parent > child, otherwise ≥) of
/// `∏ n_v^{−d(v)}`, and a rigorous bound on the remaining tail.
pub fn direct_forest_sum(f: &Forest, n: usize, strict: bool) -> (f64, f64) {
    let mut value = 1.0f64;
    let mut upper = 1.0f64;
    for t in f.trees() {
        assert!(t.root().as_int().unwrap() >= 2, "divergent root");
        let v = vertex(t, n, strict);
        let partial = if strict { v.values[n] } else { v.values[n - 1] };
        let bound = v.envelope[0] - partial * (1.0 + 1e-12) + 1e-12 * partial;
        value *= partial;
        upper *= partial + bound;
    }
    (value, upper - value)
}

/// Coefficients of `Li_F(z)` up to `z^m`, from `x ↦ ∫ dt/t`, `y ↦ ∫ dt/(1−t)`.
pub fn arborified_polylog_series(f: &Forest, m: usize) -> Vec<f64> {
    fn tree(t: &Tree, m: usize) -> Vec<f64> {
        let mut g = vec![0.0; m + 1];
        g[0] = 1.0;
        for c in t.children() {
            let s = tree(c, m);
            let mut prod = vec![0.0; m + 1];
            for i in 0..=m {
                for j in 0..=m - i {
                    prod[i + j] += g[i] * s[j];
                }
            }
            g = prod;
        }
        let mut out = vec![0.0; m + 1];
        if t.root() == X {
            assert!(g[0] == 0.0, "x applied to a series with a constant term");
            for k in 1..=m {
                out[k] = g[k] / k as f64;
            }
        } else {
            assert!(t.root() == Y);
            let mut acc = 0.0;
            for k in 1..=m {
                acc += g[k - 1];
                out[k] = acc / k as f64;
            }
        }
        out
    }
    let mut g = vec![0.0; m + 1];
    g[0] = 1.0;
    for t in f.trees() {
        let s = tree(t, m);
        let mut prod = vec![0.0; m + 1];
        for i in 0..=m {
            for j in 0..=m - i {
                prod[i + j] += g[i] * s[j];
            }
        }
        g = prod;
    }
    g
}

/// Evaluates at `z` and bounds the tail by `Σ_{k>m} (k+1)^{2v} z^k`: both integration maps
/// keep a coefficient bound `C(k+1)^p`, and a product raises `p` by at most one plus the
/// factors' exponents.
pub fn eval_arborified_polylog_series(f: &Forest, z: f64, m: usize) -> (f64, f64) {
    let c = arborified_polylog_series(f, m);
    let value = c.iter().rev().fold(0.0, |acc, a| acc * z + a);
    let v = arbozeta::Graded::size(f) as i32;
    let tail: f64 = (m + 1..m + 2000)
        .map(|k| ((k + 1) as f64).powi(2 * v) * z.powi(k as i32))
        .sum();
    (value, tail)
}

/// `Σ_{n₁>n₂>⋯} ∏ nᵢ^{−sᵢ}` with all indices below `n`, by plain nested loops.
pub fn brute_force_mzv(s: &[u32], n: usize, strict: bool) -> f64 {
    fn go(s: &[u32], below: usize, strict: bool) -> f64 {
        if s.is_empty() {
            return 1.0;
        }
        let mut total = 0.0;
        for k in 1..below {
            let next = if strict { k } else { k + 1 };
            total += (k as f64).powi(-(s[0] as i32)) * go(&s[1..], next, strict);
        }
        total
    }
    go(s, n + 1, strict)
}
