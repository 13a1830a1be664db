//! Memoised Virasoro-type recursion for the numbers `B(d)` and `C(d)`.
//!
//! `B(d) = <tau_{d_1} ... tau_{d_n}> * prod (2 d_j + 1)!!` satisfies
//!
//! ```text
//! B(d, d_1..d_n) = sum_i (2 d_i + 1) B(d_1, .., d_i + d, .., d_n)
//!     + 1/2 sum_{a+b=d-1} [ B(a, b, d_1..d_n) + sum_{I u J} B(a, d_I) B(b, d_J) ]
//! ```
//!
//! with `B(0) = 1/8`. Every term on the right has a smaller `X(d)`, so the
//! recursion terminates. Only zero-free sorted keys (and the seed `(0)`) are
//! stored; a leading zero is removed by the string equation on the fly.
//!
//! `C(d) = 2^{2g-1} B(d) / (X-1)!` is the normalisation in which all values
//! lie in `(0, 1/pi)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{big, factorial, int, pi_bounds, pow2, rat, Rational, PI_DEFAULT_DIGITS};
use crate::partitions::{multisets, partitions_with_x, x_of, IndexVector};
use crate::{Error, Result};

#[derive(Debug)]
pub struct BgwTable {
    map: RwLock<HashMap<Vec<u32>, Rational>>,
    x_max: AtomicU64,
}

impl Default for BgwTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BgwTable {
    pub fn new() -> Self {
        let mut map = HashMap::new();
        map.insert(vec![0], rat(1, 8));
        Self { map: RwLock::new(map), x_max: AtomicU64::new(1) }
    }

    /// Process-wide table shared by the higher modules.
    pub fn global() -> &'static BgwTable {
        static T: OnceLock<BgwTable> = OnceLock::new();
        T.get_or_init(BgwTable::new)
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest `X` for which every zero-free key has been computed.
    pub fn x_max(&self) -> u64 {
        self.x_max.load(AtomicOrdering::SeqCst)
    }

    /// `B(d)` for any ordering of `d`, memoised under the sorted key.
    pub fn b(&self, d: &[u32]) -> Result<Rational> {
        if d.is_empty() {
            return Err(Error::InvalidIndex("empty index vector".into()));
        }
        let mut key = d.to_vec();
        key.sort_unstable();
        Ok(self.canonical(&key))
    }

    /// `B(d)` by one recursion step with the first entry of `d` distinguished.
    pub fn compute_b(&self, d: &IndexVector) -> Result<Rational> {
        let e = d.entries();
        if e.is_empty() {
            return Err(Error::InvalidIndex("empty index vector".into()));
        }
        if e == [0] {
            return Ok(rat(1, 8));
        }
        Ok(self.step(e[0], &e[1..]))
    }

    pub fn compute_c(&self, d: &IndexVector) -> Result<Rational> {
        let b = self.compute_b(d)?;
        Ok(b_to_c(d.entries(), &b))
    }

    /// `C(d)` from the memoised value.
    pub fn c(&self, d: &[u32]) -> Result<Rational> {
        let b = self.b(d)?;
        Ok(b_to_c(d, &b))
    }

    fn canonical(&self, key: &[u32]) -> Rational {
        if key == [0] {
            return rat(1, 8);
        }
        if key[0] == 0 {
            let rest = &key[1..];
            return int(x_of(rest) as i64) * self.canonical(rest);
        }
        if let Some(v) = self.map.read().unwrap().get(key) {
            return v.clone();
        }
        let v = self.step(key[0], &key[1..]);
        self.map.write().unwrap().insert(key.to_vec(), v.clone());
        v
    }

    fn lookup(&self, mut v: Vec<u32>) -> Rational {
        v.sort_unstable();
        self.canonical(&v)
    }

    fn step(&self, d: u32, rest: &[u32]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..rest.len() {
            let mut v = rest.to_vec();
            v[i] += d;
            acc += int(2 * rest[i] as i64 + 1) * self.lookup(v);
        }
        if d == 0 {
            return acc;
        }
        let mut half = Rational::zero();
        let r = rest.len();
        for a in 0..d {
            let b = d - 1 - a;
            let mut v = vec![a, b];
            v.extend_from_slice(rest);
            half += self.lookup(v);
            for mask in 0u64..(1u64 << r) {
                let mut left = vec![a];
                let mut right = vec![b];
                for (j, &x) in rest.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        left.push(x);
                    } else {
                        right.push(x);
                    }
                }
                half += self.lookup(left) * self.lookup(right);
            }
        }
        acc + half / int(2)
    }

    /// Fills every zero-free key with `X(d) <= x_max`, one `X` level at a time.
    pub fn warm(&self, x_max: u64) {
        let start = self.x_max() + 1;
        for x in start..=x_max {
            partitions_with_x(x).par_iter().for_each(|p| {
                self.canonical(p.entries());
            });
            self.x_max.fetch_max(x, AtomicOrdering::SeqCst);
        }
    }

    /// Stored records in cache order.
    pub fn records(&self) -> Vec<(IndexVector, Rational)> {
        let map = self.map.read().unwrap();
        let mut out: Vec<_> = map.iter().map(|(k, v)| (IndexVector(k.clone()), v.clone())).collect();
        out.sort_by(|a, b| crate::partitions::record_cmp(&a.0, &b.0));
        out
    }

    /// Inserts a precomputed value; used when loading a cache file.
    pub fn insert(&self, key: Vec<u32>, value: Rational) {
        self.map.write().unwrap().insert(key, value);
    }

    pub fn set_x_max(&self, x: u64) {
        self.x_max.store(x, AtomicOrdering::SeqCst);
    }

    /// Evaluates the recursion with each distinct entry of `d` distinguished
    /// and returns the values (all of which must agree).
    pub fn all_distinguished(&self, d: &[u32]) -> Result<Vec<(u32, Rational)>> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for i in 0..d.len() {
            if seen.contains(&d[i]) {
                continue;
            }
            seen.push(d[i]);
            let mut v = vec![d[i]];
            v.extend(d.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
            out.push((d[i], self.compute_b(&IndexVector(v))?));
        }
        Ok(out)
    }
}

pub fn b_to_c(d: &[u32], b: &Rational) -> Rational {
    let g = crate::partitions::weight(d) as i64 + 1;
    let x = x_of(d);
    pow2(2 * g - 1) * b / big(factorial(x - 1))
}

pub fn c_to_b(d: &[u32], c: &Rational) -> Rational {
    let g = crate::partitions::weight(d) as i64 + 1;
    let x = x_of(d);
    c * big(factorial(x - 1)) / pow2(2 * g - 1)
}

/// `B(0, d) = (2g(d) + n - 2) B(d)` for `d` given with its leading zero.
pub fn string_reduce(table: &BgwTable, d: &IndexVector) -> Result<Rational> {
    let e = d.entries();
    if e.first() != Some(&0) || e.len() < 2 {
        return Err(Error::Precondition(format!(
            "string equation needs a leading 0 followed by a nonempty vector, got ({d})"
        )));
    }
    let rest = &e[1..];
    let g = crate::partitions::weight(rest) as i64 + 1;
    let n = rest.len() as i64;
    let factor = 2 * g + n - 2;
    if factor <= 0 {
        return Err(Error::Precondition(format!("2g-2+n = {factor} for ({d})")));
    }
    Ok(int(factor) * table.b(rest)?)
}

/// Maximum of `C(d)` over `n` nonnegative entries with `X(d) = x`.
pub fn theta(table: &BgwTable, x: u64, n: usize) -> Result<Rational> {
    if n == 0 || (x as usize) < n || (x - n as u64) % 2 != 0 {
        return Err(Error::Precondition(format!("no index vector with X = {x}, n = {n}")));
    }
    let w = ((x - n as u64) / 2) as u32;
    let mut best: Option<Rational> = None;
    for d in multisets(n, w) {
        let c = table.c(d.entries())?;
        if best.as_ref().map_or(true, |b| &c > b) {
            best = Some(c);
        }
    }
    best.ok_or_else(|| Error::Precondition("empty domain".into()))
}

/// The value `1/pi + rational`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    #[serde(serialize_with = "crate::harness::ser_rational")]
    pub rational: Rational,
}

impl BoundValue {
    /// Certified `c <= 1/pi + rational`, using pi to `digits` places.
    pub fn admits(&self, c: &Rational, digits: usize) -> Result<bool> {
        cmp_inv_pi(&(c - &self.rational), digits).map(|o| o != std::cmp::Ordering::Greater)
    }

    /// Certified `1/pi + rational <= 1`.
    pub fn at_most_one(&self, digits: usize) -> Result<bool> {
        cmp_inv_pi(&(Rational::one() - &self.rational), digits)
            .map(|o| o != std::cmp::Ordering::Less)
    }
}

/// Compares `x` with `1/pi`; errors when pi at `digits` places cannot decide.
pub fn cmp_inv_pi(x: &Rational, digits: usize) -> Result<std::cmp::Ordering> {
    let (lo, hi) = pi_bounds(digits)?;
    let (inv_lo, inv_hi) = (hi.recip(), lo.recip());
    if x < &inv_lo {
        Ok(std::cmp::Ordering::Less)
    } else if x > &inv_hi {
        Ok(std::cmp::Ordering::Greater)
    } else {
        Err(Error::Undecidable(format!("value within 10^-{digits} of 1/pi")))
    }
}

/// The bound `f(X, n)`, returned as `1/pi + rational`.
pub fn f_bound(x: u64, n: u64) -> Result<BoundValue> {
    if n == 0 || x < n {
        return Err(Error::Precondition(format!("f({x}, {n}) is outside the domain")));
    }
    let mut memo = HashMap::new();
    Ok(BoundValue { rational: f_rec(x, n, &mut memo) })
}

fn f_rec(x: u64, n: u64, memo: &mut HashMap<(u64, u64), Rational>) -> Rational {
    if x <= 7 || n <= 2 {
        return Rational::zero();
    }
    if let Some(v) = memo.get(&(x, n)) {
        return v.clone();
    }
    let v = rat(2, 3) * f_rec(x - 1, n - 1, memo)
        + rat(1, 3) * f_rec(x - 1, n + 1, memo)
        + rat(4, ((x - 1) * (x - 2)) as i64);
    memo.insert((x, n), v.clone());
    v
}

/// Certified test of `0 < c <= f(X, n)`.
pub fn within_bounds(c: &Rational, x: u64, n: u64) -> Result<bool> {
    if !c.is_positive() {
        return Ok(false);
    }
    f_bound(x, n)?.admits(c, PI_DEFAULT_DIGITS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[u32]) -> IndexVector {
        IndexVector(v.to_vec())
    }

    #[test]
    fn seeds_and_small_values() {
        let t = BgwTable::new();
        assert_eq!(t.b(&[0]).unwrap(), rat(1, 8));
        assert_eq!(t.b(&[1]).unwrap(), rat(9, 128));
        assert_eq!(t.b(&[0, 0]).unwrap(), rat(1, 8));
        assert_eq!(t.c(&[1]).unwrap(), rat(9, 32));
        assert_eq!(t.c(&[1, 1]).unwrap(), rat(189, 640));
        assert!(t.b(&[]).is_err());
    }

    #[test]
    fn string_equation() {
        let t = BgwTable::new();
        assert_eq!(string_reduce(&t, &iv(&[0, 1])).unwrap(), rat(27, 128));
        assert_eq!(string_reduce(&t, &iv(&[0, 0])).unwrap(), rat(1, 8));
        assert!(string_reduce(&t, &iv(&[1, 0])).is_err());
        assert!(string_reduce(&t, &iv(&[0])).is_err());
    }

    #[test]
    fn theta_small() {
        let t = BgwTable::new();
        assert_eq!(theta(&t, 6, 2).unwrap(), t.c(&[1, 1]).unwrap());
        assert!(theta(&t, 5, 2).is_err());
    }

    #[test]
    fn bound_function() {
        assert_eq!(f_bound(8, 3).unwrap().rational, rat(4, 42));
        assert_eq!(f_bound(7, 5).unwrap().rational, Rational::zero());
        assert_eq!(f_bound(30, 2).unwrap().rational, Rational::zero());
        assert!(f_bound(3, 0).is_err());
    }

    #[test]
    fn inverse_pi_comparison() {
        assert_eq!(cmp_inv_pi(&rat(318, 1000), 64).unwrap(), std::cmp::Ordering::Less);
        assert_eq!(cmp_inv_pi(&rat(319, 1000), 64).unwrap(), std::cmp::Ordering::Greater);
        assert!(cmp_inv_pi(&rat(318, 1000), 2).is_err());
    }
}
