//! BGW-kappa numbers `<kappa_1^m prod tau_{d_j}>`, their normalisation
//! `C(m; d)` and the volume polynomials they assemble into.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dvv::BgwTable;
use crate::exactnum::{
    big, factorial, format_sig, int, is_dyadic, lcm, multinomial, odd_double_factorial, pochhammer,
    pow2, sqrt_bounds, Interval, Rational,
};
use crate::partitions::{enumerate_partitions, order_cmp, x_of, IndexVector};
use crate::{Error, Result};

/// Ordered compositions of `m` into positive parts.
pub fn compositions(m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `<prod tau_{d_j}>` from the table.
pub fn bracket(table: &BgwTable, d: &[u32]) -> Result<Rational> {
    let mut df = BigInt::one();
    for &x in d {
        df *= odd_double_factorial(x as i64 + 1);
    }
    Ok(table.b(d)? / big(df))
}

/// `<kappa_1^m prod tau_{d_j}>`.
pub fn kappa_number(m: u32, d: &[u32]) -> Result<Rational> {
    if m == 0 {
        return Err(Error::Precondition("kappa_number needs m >= 1".into()));
    }
    let table = BgwTable::global();
    let mut acc = Rational::zero();
    for comp in compositions(m) {
        let l = comp.len() as u64;
        let sign = if (m as u64 - l) % 2 == 0 { int(1) } else { int(-1) };
        let parts: Vec<u64> = comp.iter().map(|&x| x as u64).collect();
        let mut idx = d.to_vec();
        idx.extend_from_slice(&comp);
        acc += sign * big(multinomial(&parts)) * bracket(table, &idx)? / big(factorial(l));
    }
    Ok(acc)
}

/// Genus of `(m; d)`: `m + |d| + 1`.
pub fn genus(m: u32, d: &[u32]) -> u64 {
    m as u64 + d.iter().map(|&x| x as u64).sum::<u64>() + 1
}

/// `C(m; d) = 3^m 2^{2g-1} prod (2d_j+1)!! <kappa_1^m prod tau> / (X(m;d) - 1)!`.
pub fn c_kappa(m: u32, d: &[u32]) -> Result<Rational> {
    if m == 0 {
        return BgwTable::global().c(d);
    }
    let g = genus(m, d);
    let x = x_of(d) + 3 * m as u64;
    let mut df = BigInt::one();
    for &v in d {
        df *= odd_double_factorial(v as i64 + 1);
    }
    let k = kappa_number(m, d)?;
    Ok(big(num_traits::pow(BigInt::from(3), m as usize)) * pow2(2 * g as i64 - 1) * big(df) * k
        / big(factorial(x - 1)))
}

/// `C(m; d)` by the direct combination of normalised BGW numbers.
pub fn c_kappa_combination(m: u32, d: &[u32]) -> Result<Rational> {
    if m == 0 {
        return BgwTable::global().c(d);
    }
    let table = BgwTable::global();
    let x = x_of(d) as i64 + 3 * m as i64;
    let mut acc = Rational::zero();
    for comp in compositions(m) {
        let l = comp.len() as i64;
        let sign = if (m as i64 - l) % 2 == 0 { int(1) } else { int(-1) };
        let parts: Vec<u64> = comp.iter().map(|&v| v as u64).collect();
        let mut idx = d.to_vec();
        idx.extend_from_slice(&comp);
        let mut df = BigInt::one();
        for &v in &comp {
            df *= odd_double_factorial(v as i64 + 1);
        }
        let den = pochhammer(&int(x - m as i64 + l), (m as i64 - l) as u64) * big(df);
        acc += sign * big(multinomial(&parts)) * table.c(&idx)? / (big(factorial(l as u64)) * den);
    }
    Ok(acc * big(num_traits::pow(BigInt::from(3), m as usize)))
}

/// All `(m, d)` with `m >= m_min` and `m + |d| = g - 1`, in table order:
/// decreasing `m`, then increasing `d`.
pub fn kappa_indices(g: u64, m_min: u32) -> Vec<(u32, IndexVector)> {
    let mut out = Vec::new();
    for m in (m_min as u64..g).rev() {
        for d in enumerate_partitions((g - 1 - m) as u32) {
            out.push((m as u32, d));
        }
    }
    out
}

/// One row of the normalised kappa table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaRow {
    pub m: u32,
    pub d: IndexVector,
    #[serde(serialize_with = "crate::harness::ser_rational")]
    pub value: Rational,
    pub decimal: String,
    /// `D_g C(m; d)`.
    pub scaled: String,
}

/// Rows of `C(m; d)` for genus `g`, `m >= 2`, with the common denominator `D_g`.
pub fn kappa_table(g: u64) -> Result<(BigInt, Vec<KappaRow>)> {
    let idx = kappa_indices(g, 2);
    let vals: Vec<Rational> = idx
        .par_iter()
        .map(|(m, d)| c_kappa(*m, d.entries()))
        .collect::<Result<Vec<_>>>()?;
    let mut den = BigInt::one();
    for v in &vals {
        den = lcm(&den, v.denom());
    }
    let rows = idx
        .into_iter()
        .zip(vals)
        .map(|((m, d), v)| {
            let scaled = (&v * big(den.clone())).to_integer().to_string();
            KappaRow { m, d, decimal: format_sig(&v, 6), scaled, value: v }
        })
        .collect();
    Ok((den, rows))
}

/// `(m, d) < (m', d')` iff `m > m'`, or `m = m'` and `d` precedes `d'`.
pub fn kappa_order(a: &(u32, IndexVector), b: &(u32, IndexVector)) -> Result<Ordering> {
    match b.0.cmp(&a.0) {
        Ordering::Equal => order_cmp(&a.1, &b.1),
        o => Ok(o),
    }
}

/// Outcome of the monotonicity check in one genus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneReport {
    pub g: u64,
    pub m_min: u32,
    pub pass: bool,
    /// First adjacent pair out of order, if any.
    pub violation: Option<String>,
}

/// Checks that `C(m; d)` strictly increases along the order, for `m >= m_min`.
pub fn kappa_monotone_check(g: u64, m_min: u32) -> Result<MonotoneReport> {
    let mut idx = kappa_indices(g, m_min);
    let mut err = None;
    idx.sort_by(|a, b| kappa_order(a, b).unwrap_or_else(|e| {
        err = Some(e);
        Ordering::Equal
    }));
    if let Some(e) = err {
        return Err(e);
    }
    let vals: Vec<Rational> = idx
        .par_iter()
        .map(|(m, d)| c_kappa(*m, d.entries()))
        .collect::<Result<Vec<_>>>()?;
    let mut violation = None;
    for i in 1..vals.len() {
        if vals[i - 1] >= vals[i] {
            violation = Some(format!(
                "C({};{}) = {} >= C({};{}) = {}",
                idx[i - 1].0,
                idx[i - 1].1,
                format_sig(&vals[i - 1], 8),
                idx[i].0,
                idx[i].1,
                format_sig(&vals[i], 8)
            ));
            break;
        }
    }
    Ok(MonotoneReport { g, m_min, pass: violation.is_none(), violation })
}

/// Whether a kappa number is integral away from 2.
pub fn integral_away_from_two(x: &Rational) -> bool {
    is_dyadic(x)
}

/// `V^Theta_{g,n}` with `pi^2` kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VolumePolynomial {
    pub n: usize,
    /// `(a, [b_1..b_n])` for `pi^{2a} prod L_j^{2 b_j}`, to coefficients.
    pub terms: BTreeMap<(u32, Vec<u32>), Rational>,
}

impl VolumePolynomial {
    pub fn coefficient(&self, a: u32, b: &[u32]) -> Rational {
        self.terms.get(&(a, b.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value at numeric `L_j` with `pi` as an interval.
    pub fn eval(&self, l: &[Rational], pi: &Interval) -> Interval {
        let pi2 = pi.mul(pi);
        let mut acc = Interval::point(Rational::zero());
        for ((a, b), c) in &self.terms {
            let mut t = pi2.powi(*a as i32).scale(c);
            for (j, &e) in b.iter().enumerate() {
                t = t.scale(&crate::exactnum::pow_rat(&l[j], 2 * e as i64));
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl fmt::Display for VolumePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if *a > 0 {
                write!(f, "*pi^{}", 2 * a)?;
            }
            for (j, &e) in b.iter().enumerate() {
                if e > 0 {
                    write!(f, "*L{}^{}", j + 1, 2 * e)?;
                }
            }
        }
        Ok(())
    }
}

/// Stanford-Witten volume polynomial `V^Theta_{g,n}`.
pub fn sw_volume(g: u64, n: usize) -> Result<VolumePolynomial> {
    if g < 1 {
        return Err(Error::Precondition("sw_volume needs g >= 1".into()));
    }
    let table = BgwTable::global();
    let mut vp = VolumePolynomial { n, terms: BTreeMap::new() };
    for m in 0..g as u32 {
        let w = (g - 1) as u32 - m;
        for d in crate::partitions::multisets(n, w) {
            // every ordering of the multiset is a separate monomial
            for perm in distinct_permutations(d.entries()) {
                let k = if m == 0 {
                    if n == 0 {
                        continue;
                    }
                    bracket(table, &perm)?
                } else {
                    kappa_number(m, &perm)?
                };
                let mut c = k * pow2(m as i64) / big(factorial(m as u64));
                for &e in &perm {
                    c /= pow2(e as i64) * big(factorial(e as u64));
                }
                if !c.is_zero() {
                    vp.terms.insert((m, perm), c);
                }
            }
        }
    }
    Ok(vp)
}

fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut s = v.to_vec();
    s.sort_unstable();
    let mut out = vec![s.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..s.len()).rev().find(|&i| s[i - 1] < s[i]) else { break };
        let j = (i..s.len()).rev().find(|&j| s[j] > s[i - 1]).unwrap();
        s.swap(i - 1, j);
        s[i..].reverse();
        out.push(s.clone());
    }
    out
}

/// `<kappa_1^{g-1-|d|} prod tau_{d_j}>` divided by its conjectured leading
/// asymptotics, as a decimal.
pub fn gprs_ratio(g: u64, d: &[u32], digits: usize) -> Result<String> {
    let w: u64 = d.iter().map(|&x| x as u64).sum();
    if g < w + 2 {
        return Err(Error::Precondition("gprs_ratio needs g >= |d| + 2".into()));
    }
    let n = d.len() as i64;
    let (g, w) = (g as i64, w as i64);
    let k = kappa_number((g - 1 - w) as u32, d)?;
    let mut df = BigInt::one();
    for &x in d {
        df *= odd_double_factorial(x as i64 + 1);
    }
    // 3^{-(3g - 7/2 - |d| + n)} = 3^{-(3g - 4 - |d| + n)} / sqrt(3)
    let e3 = 3 * g - 4 - w + n;
    let rest = pow2(g - 1 - 3 * w) * big(factorial((3 * g - 4 - w + n) as u64))
        / (crate::exactnum::pow_rat(&int(3), e3) * big(df));
    let pi_pow = (2 * w + n - 2) as i32;
    let sqrt3 = sqrt_bounds(&int(3), digits + 10)?;
    Interval::resolve(digits, |pi| {
        let rhs = pi.powi(pi_pow).scale(&rest).div(&sqrt3)?;
        Interval::point(k.clone()).div(&rhs)
    })
}

/// Coefficient of `pi^{2(g-1)}` in `V^Theta_{g,0}`.
pub fn sw_constant_term(g: u64) -> Result<Rational> {
    let m = (g - 1) as u32;
    Ok(kappa_number(m, &[])? * pow2(m as i64) / big(factorial(m as u64)))
}
