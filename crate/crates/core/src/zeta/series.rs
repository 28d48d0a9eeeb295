//! Multiple polylogarithm series with certified tails, and multiple zeta values through
//! the Hölder convolution at `z = 1/2`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::word::{binarise, debinarise, Composition, Word};

/// Value, certified absolute error and number of outer terms summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Series {
    pub value: f64,
    pub bound: f64,
    pub terms: usize,
}

type Key = (Vec<u32>, u64, i32);

fn cache() -> &'static Mutex<HashMap<Key, Series>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Series>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Largest power of two not above `target`; results for one bucket are interchangeable.
fn bucket(target: f64) -> (i32, f64) {
    let e = target.log2().floor() as i32;
    (e, 2f64.powi(e))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Bound on `Σ_{n>m} z^n n^{−s₁} (1 + ln n)^{k−1} / (k−1)!`, or `None` if the ratio
/// test does not yet apply at `m`.
fn tail_bound(s1: u32, depth: usize, z: f64, m: usize) -> Option<f64> {
    let n = (m + 1) as f64;
    let log = 1.0 + n.ln();
    let ratio = z * (1.0 + 1.0 / (n * log)).powi(depth as i32 - 1);
    if ratio >= 1.0 {
        return None;
    }
    let term = z.powf(n) * n.powi(-(s1 as i32)) * log.powi(depth as i32 - 1) / factorial(depth - 1);
    Some(term / (1.0 - ratio))
}

fn polylog_uncached(parts: &[u32], z: f64, target: f64, max_n: usize) -> Result<Series> {
    let depth = parts.len();
    if depth == 0 {
        return Ok(Series {
            value: 1.0,
            bound: 0.0,
            terms: 0,
        });
    }
    if z == 0.0 {
        return Ok(Series {
            value: 0.0,
            bound: 0.0,
            terms: 0,
        });
    }
    // cumulative strict sums of each inner level over m < n
    let mut inner = vec![0.0f64; depth];
    let mut level = vec![0.0f64; depth];
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut zpow = 1.0f64;
    let mut n = 0usize;
    loop {
        if n >= 1 {
            if let Some(tail) = tail_bound(parts[0], depth, z, n) {
                if tail <= target {
                    let rounding = 4.0 * f64::EPSILON * (n * depth) as f64 * (sum + comp).abs();
                    return Ok(Series {
                        value: sum + comp,
                        bound: tail + rounding,
                        terms: n,
                    });
                }
            }
        }
        if n >= max_n {
            return Err(Error::PrecisionUnreachable {
                precision: target,
                max_n,
            });
        }
        n += 1;
        let nf = n as f64;
        zpow *= z;
        for j in (0..depth).rev() {
            let below = if j + 1 == depth { 1.0 } else { inner[j + 1] };
            level[j] = below * nf.powi(-(parts[j] as i32));
        }
        for j in 1..depth {
            inner[j] += level[j];
        }
        let x = zpow * level[0];
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
}

/// `Li_s(z) = Σ_{n₁>⋯>n_k≥1} z^{n₁} / ∏ nᵢ^{sᵢ}` for `0 ≤ z < 1`, with error ≤ `target`.
pub(crate) fn polylog(parts: &[u32], z: f64, target: f64, max_n: usize) -> Result<Series> {
    let (b, t) = bucket(target);
    let key = (parts.to_vec(), z.to_bits(), b);
    if let Some(hit) = cache().lock().unwrap().get(&key).copied() {
        if hit.terms <= max_n {
            return Ok(hit);
        }
    }
    let out = polylog_uncached(parts, z, t, max_n)?;
    cache().lock().unwrap().insert(key, out);
    Ok(out)
}

/// `ζ(s)` for `s₁ ≥ 2`: with `w = 𝔰(s)`, `ζ(w) = Σ_j Li_{w[..j]†}(½) · Li_{w[j..]}(½)`,
/// where `†` reverses a binary word and exchanges x and y.
pub(crate) fn mzv(s: &Composition, target: f64, max_n: usize) -> Result<Series> {
    let w = binarise(s);
    let n = w.len();
    let per = target / (4.0 * (n + 1) as f64);
    let (mut value, mut bound, mut terms) = (0.0f64, 0.0f64, 0usize);
    for j in 0..=n {
        let head = Word::new(w.letters()[..j].to_vec())?.dual();
        let left = debinarise(&head)?;
        let right = debinarise(&w.suffix(j))?;
        let a = polylog(left.parts(), 0.5, per, max_n)?;
        let b = polylog(right.parts(), 0.5, per, max_n)?;
        value += a.value * b.value;
        bound += a.value.abs() * b.bound + b.value.abs() * a.bound + a.bound * b.bound;
        terms = terms.max(a.terms).max(b.terms);
    }
    bound += 2.0 * f64::EPSILON * (n + 1) as f64 * value.abs();
    if bound > target {
        return Err(Error::PrecisionUnreachable {
            precision: target,
            max_n,
        });
    }
    Ok(Series {
        value,
        bound,
        terms,
    })
}
