//! Bernoulli numbers (convention `B_1 = -1/2`), derived from tangent numbers.
//!
//! Tangent numbers `T_l` are integers with
//! `B_{2l} = (-1)^{l-1} 2l T_l / (4^l (4^l - 1))`, and the whole table
//! `T_1..T_n` costs `O(n²)` small-multiplier big-integer updates. The
//! integer table is shared process-wide and doubles in size when outgrown;
//! reduced rationals are memoized separately on demand.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Integer;

use crate::error::{Error, Result};
use crate::precision::from_rug_integer;

/// Exact Bernoulli numbers keyed by index, as read from or written to the
/// on-disk cache.
pub type BernoulliCache = BTreeMap<u64, BigRational>;

fn tangent_store() -> &'static RwLock<Arc<Vec<Integer>>> {
    static STORE: OnceLock<RwLock<Arc<Vec<Integer>>>> = OnceLock::new();
    STORE.get_or_init(|| RwLock::new(Arc::new(vec![Integer::new()])))
}

fn bernoulli_store() -> &'static RwLock<BTreeMap<u64, BigRational>> {
    static STORE: OnceLock<RwLock<BTreeMap<u64, BigRational>>> = OnceLock::new();
    STORE.get_or_init(|| RwLock::new(BTreeMap::new()))
}

fn compute_tangent_numbers(n: usize) -> Vec<Integer> {
    // index 0 is a placeholder so that t[l] = T_l
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        let prev = Integer::from(&t[k - 1] * (k as u64 - 1));
        t[k] = prev;
    }
    for k in 2..=n {
        for j in k..=n {
            let (lo, hi) = t.split_at_mut(j);
            let cur = &mut hi[0];
            *cur *= (j - k + 2) as u64;
            *cur += &lo[j - 1] * ((j - k) as u64);
        }
    }
    t
}

/// Tangent numbers `T_0 = 0, T_1 = 1, T_2 = 2, T_3 = 16, …` up to at least
/// index `n`.
pub fn tangent_numbers(n: usize) -> Arc<Vec<Integer>> {
    {
        let guard = tangent_store().read().expect("tangent table poisoned");
        if guard.len() > n {
            return Arc::clone(&guard);
        }
    }
    let mut guard = tangent_store().write().expect("tangent table poisoned");
    if guard.len() <= n {
        let target = n.max(2 * (guard.len() - 1)).max(16);
        *guard = Arc::new(compute_tangent_numbers(target));
    }
    Arc::clone(&guard)
}

fn bernoulli_from_tangent(l: u64, t: &Integer) -> BigRational {
    let four_l = BigInt::one() << (2 * l as usize);
    let den = &four_l * (&four_l - BigInt::one());
    let num = from_rug_integer(t) * BigInt::from(2 * l);
    let r = BigRational::new(num, den);
    if l % 2 == 1 {
        r
    } else {
        -r
    }
}

/// Exact `B_k`, memoized.
pub fn bernoulli(k: u64) -> BigRational {
    match k {
        0 => return BigRational::one(),
        1 => return BigRational::new((-1).into(), 2.into()),
        _ if k % 2 == 1 => return BigRational::zero(),
        _ => {}
    }
    if let Some(b) = bernoulli_store()
        .read()
        .expect("bernoulli table poisoned")
        .get(&k)
    {
        return b.clone();
    }
    let l = k / 2;
    let t = tangent_numbers(l as usize);
    let b = bernoulli_from_tangent(l, &t[l as usize]);
    bernoulli_store()
        .write()
        .expect("bernoulli table poisoned")
        .insert(k, b.clone());
    b
}

/// Inserts externally supplied values (e.g. from the on-disk cache).
pub fn seed_bernoulli_table(values: &BernoulliCache) {
    let mut store = bernoulli_store().write().expect("bernoulli table poisoned");
    for (k, v) in values {
        if *k >= 2 && k % 2 == 0 {
            store.insert(*k, v.clone());
        }
    }
}

/// All even-index values computed or seeded so far, plus `B_0` and `B_1`.
pub fn bernoulli_table_snapshot() -> BernoulliCache {
    let mut out = bernoulli_store()
        .read()
        .expect("bernoulli table poisoned")
        .clone();
    out.insert(0, bernoulli(0));
    out.insert(1, bernoulli(1));
    out
}

/// Reads a cache file of `k numerator denominator` lines. A missing file is
/// an empty cache.
pub fn load_bernoulli_cache(path: &Path) -> Result<BernoulliCache> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BernoulliCache::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = BernoulliCache::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |message: &str| Error::CacheParse {
            line: line_no,
            message: message.to_string(),
        };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err("expected `k numerator denominator`"));
        }
        let k: u64 = fields[0].parse().map_err(|_| err("bad index"))?;
        let num: BigInt = fields[1].parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = fields[2].parse().map_err(|_| err("bad denominator"))?;
        if den <= BigInt::zero() {
            return Err(err("denominator must be positive"));
        }
        out.insert(k, BigRational::new(num, den));
    }
    Ok(out)
}

pub fn save_bernoulli_cache(path: &Path, values: &BernoulliCache) -> Result<()> {
    let mut text = String::new();
    for (k, v) in values {
        text.push_str(&format!("{k} {} {}\n", v.numer(), v.denom()));
    }
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent route: `Σ_{j<k} C(k+1, j) B_j = 0`.
    fn bernoulli_by_convolution(n: usize) -> Vec<BigRational> {
        let mut b = vec![BigRational::one()];
        for k in 1..=n {
            let mut s = BigRational::zero();
            let mut binom = BigInt::one(); // C(k+1, 0)
            for (j, bj) in b.iter().enumerate() {
                s += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(k + 1)));
        }
        b
    }

    #[test]
    fn first_tangent_numbers() {
        let t = tangent_numbers(5);
        let expect = [0u64, 1, 2, 16, 272, 7936];
        for (l, e) in expect.iter().enumerate() {
            assert_eq!(t[l], *e);
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), BigRational::zero());
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn matches_convolution_recurrence() {
        let oracle = bernoulli_by_convolution(80);
        for (k, b) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli(k as u64), b, "B_{k}");
        }
    }

    #[test]
    fn cache_round_trip_and_errors() {
        let dir = std::env::temp_dir().join(format!("cotanasym-bern-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.txt");
        let mut m = BernoulliCache::new();
        m.insert(2, q(1, 6));
        save_bernoulli_cache(&path, &m).unwrap();
        assert_eq!(load_bernoulli_cache(&path).unwrap(), m);

        std::fs::write(&path, "2 1 6\n4 -1 x30\n").unwrap();
        match load_bernoulli_cache(&path) {
            Err(Error::CacheParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let missing = dir.join("nope.txt");
        assert!(load_bernoulli_cache(&missing).unwrap().is_empty());
        std::fs::remove_dir_all(&dir).ok();
    }
}
