//! Index vectors, partitions and the total order used to list them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Finite sequence of nonnegative integers `(d_1, ..., d_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexVector(pub Vec<u32>);

impl IndexVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|d| = d_1 + ... + d_n`.
    pub fn weight(&self) -> u64 {
        weight(&self.0)
    }

    pub fn genus(&self) -> u64 {
        self.weight() + 1
    }

    /// `X(d) = sum (2 d_j + 1) = 2g - 2 + n`.
    pub fn x(&self) -> u64 {
        x_of(&self.0)
    }

    pub fn sorted(&self) -> IndexVector {
        let mut v = self.0.clone();
        v.sort_unstable();
        IndexVector(v)
    }

    /// A partition: positive entries in ascending order.
    pub fn is_partition(&self) -> bool {
        self.0.iter().all(|&d| d > 0) && self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Multiplicities `p_k = #{j : d_j = k}` for `k = 0..=max`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let max = self.0.iter().copied().max().unwrap_or(0) as usize;
        let mut p = vec![0; max + 1];
        for &d in &self.0 {
            p[d as usize] += 1;
        }
        p
    }

    pub fn with(&self, extra: &[u32]) -> IndexVector {
        let mut v = self.0.clone();
        v.extend_from_slice(extra);
        IndexVector(v)
    }
}

pub fn weight(d: &[u32]) -> u64 {
    d.iter().map(|&x| x as u64).sum()
}

pub fn x_of(d: &[u32]) -> u64 {
    2 * weight(d) + d.len() as u64
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for IndexVector {
    type Err = Error;

    /// Parses `"1,1,2"`; surrounding parentheses and spaces are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(IndexVector(Vec::new()));
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad index entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(IndexVector)
    }
}

impl From<Vec<u32>> for IndexVector {
    fn from(v: Vec<u32>) -> Self {
        IndexVector(v)
    }
}

impl From<&[u32]> for IndexVector {
    fn from(v: &[u32]) -> Self {
        IndexVector(v.to_vec())
    }
}

/// Order on partitions of the same weight: shorter first, then
/// lexicographic on the ascending sorted entries.
pub fn order_cmp(a: &IndexVector, b: &IndexVector) -> Result<Ordering> {
    if a.weight() != b.weight() {
        return Err(Error::Precondition(format!(
            "order_cmp needs equal weights, got |{a}| = {} and |{b}| = {}",
            a.weight(),
            b.weight()
        )));
    }
    Ok(length_lex(a, b))
}

fn length_lex(a: &IndexVector, b: &IndexVector) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.sorted().0.cmp(&b.sorted().0))
}

/// Order used for cache records: by `X`, then as [`order_cmp`].
pub fn record_cmp(a: &IndexVector, b: &IndexVector) -> Ordering {
    a.x().cmp(&b.x()).then_with(|| length_lex(a, b))
}

/// All partitions of `w` with positive parts, in [`order_cmp`] order.
pub fn enumerate_partitions(w: u32) -> Vec<IndexVector> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<IndexVector>) {
        if rest == 0 {
            out.push(IndexVector(cur.clone()));
            return;
        }
        for p in min..=rest {
            if rest - p != 0 && rest - p < p {
                continue;
            }
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    rec(w, 1, &mut cur, &mut out);
    out.sort_by(length_lex);
    out
}

/// Partitions of `w` with exactly `n` parts, ascending.
pub fn partitions_with_length(w: u32, n: usize) -> Vec<IndexVector> {
    enumerate_partitions(w).into_iter().filter(|p| p.len() == n).collect()
}

/// Ascending vectors of `n` nonnegative entries summing to `w`.
pub fn multisets(n: usize, w: u32) -> Vec<IndexVector> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<IndexVector>) {
        if n == 0 {
            if rest == 0 {
                out.push(IndexVector(cur.clone()));
            }
            return;
        }
        let mut p = min;
        while p as u64 * n as u64 <= rest as u64 {
            cur.push(p);
            rec(n - 1, rest - p, p, cur, out);
            cur.pop();
            p += 1;
        }
    }
    rec(n, w, 0, &mut cur, &mut out);
    out
}

/// Partitions (positive parts) with `X(d) = x`.
pub fn partitions_with_x(x: u64) -> Vec<IndexVector> {
    let mut out = Vec::new();
    for n in 1..=x {
        if (x - n) % 2 != 0 {
            continue;
        }
        let w = (x - n) / 2;
        if w < n {
            continue;
        }
        out.extend(partitions_with_length(w as u32, n as usize));
    }
    out
}
