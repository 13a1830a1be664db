//! The polynomials `m_d`, formal solutions of the Painleve XXXIV and II
//! hierarchies, and asymptotic fits of their coefficients.
//!
//! With `q = 2d + 1` and `Y = sum_n y_n X^{-(qn+2)}`, the jets `u_i = Y^{(i)}/2`
//! make every monomial of `m_d` contribute to `X^{-(qN+q+1)}` with `N` the sum
//! of the indices involved, so the normalised hierarchy reduces to
//! `q n y_n = 2^q q!! (qn+1) M[n-1]`, `M[N]` being the coefficient of
//! `X^{-(qN+q+1)}` in `m_d`. The leading coefficient `y_0` cancels and is
//! fixed to `1/4`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::dvv::b_to_c;
use crate::exactnum::{
    big, factorial, format_sig, int, odd_double_factorial, pochhammer, pow2, rat, Interval,
    Rational,
};
use crate::resolvent::b_power;
use crate::{Error, Result};

/// Polynomial in the jet variables `u_0, u_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    /// Exponent vectors (entry `i` is the power of `u_i`, no trailing zeros).
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl DiffPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut p = Self::default();
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut p = Self::default();
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * r);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    /// The total derivative `sum_i u_{i+1} d/du_i`.
    pub fn derivative(&self) -> Self {
        let mut p = Self::default();
        for (e, c) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut f = e.clone();
                f[i] -= 1;
                if f.len() < i + 2 {
                    f.resize(i + 2, 0);
                }
                f[i + 1] += 1;
                p.add_term(f, c * int(k as i64));
            }
        }
        p
    }

    /// Degrees of the monomials under `deg u_i = i + 2`.
    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self
            .terms
            .keys()
            .map(|e| e.iter().enumerate().map(|(i, &k)| k as u64 * (i as u64 + 2)).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Highest jet index present.
    pub fn jet_order(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.len()).max().and_then(|l| l.checked_sub(1))
    }

    /// Value at `u_i = vals[i]`.
    pub fn eval(&self, vals: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mons: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("u{i}") } else { format!("u{i}^{k}") })
                .collect();
            let a = c.abs();
            match (mons.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{sign}{a}")?,
                (false, true) => write!(f, "{sign}{}", mons.join(" "))?,
                (false, false) => write!(f, "{sign}{a} {}", mons.join(" "))?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Coefficients `beta_0 = 1, beta_1, ..., beta_{k_max}` of `b(lambda)`.
pub fn b_coefficients(k_max: usize) -> Vec<DiffPoly> {
    let mut beta = vec![DiffPoly::constant(Rational::one())];
    let mut d1 = vec![DiffPoly::default()];
    let mut d2 = vec![DiffPoly::default()];
    let u0 = DiffPoly::var(0);
    for k in 0..k_max {
        let mut acc = DiffPoly::default();
        for i in 1..=k {
            acc = acc.sub(&beta[i].mul(&beta[k + 1 - i]).scale(&int(2)));
        }
        let mut quad = DiffPoly::default();
        let mut diff = DiffPoly::default();
        for i in 0..=k {
            quad = quad.add(&beta[i].mul(&beta[k - i]));
            diff = diff.add(&beta[i].mul(&d2[k - i]).sub(&d1[i].mul(&d1[k - i]).scale(&rat(1, 2))));
        }
        acc = acc.add(&u0.mul(&quad).scale(&int(4))).add(&diff);
        let next = acc.scale(&rat(1, 4));
        let n1 = next.derivative();
        d2.push(n1.derivative());
        d1.push(n1);
        beta.push(next);
    }
    beta
}

/// `m_d` in the jet variables.
pub fn m_poly(d: u32) -> Result<DiffPoly> {
    let beta = b_coefficients(d as usize + 1);
    let m = beta[d as usize + 1].scale(&big(odd_double_factorial(d as i64 + 1)).recip());
    if m.degrees() != vec![2 * d as u64 + 2] {
        return Err(Error::Consistency(format!("m_{d} is not homogeneous of degree {}", 2 * d + 2)));
    }
    if m.jet_order() > Some(2 * d as usize) {
        return Err(Error::Consistency(format!("m_{d} uses jets beyond u_{}", 2 * d)));
    }
    Ok(m)
}

/// Coefficients of `lambda^1, lambda^0, ..., lambda^{-k_max}` in
/// `b b'' - b'^2/2 - 2(lambda - 2u_0) b^2 + 2 lambda` with `b` built from `m_0..m_{k_max}`.
pub fn m_residual(k_max: usize) -> Result<Vec<DiffPoly>> {
    let mut beta = vec![DiffPoly::constant(Rational::one())];
    for d in 0..=k_max as u32 {
        beta.push(m_poly(d)?.scale(&big(odd_double_factorial(d as i64 + 1))));
    }
    let d1: Vec<DiffPoly> = beta.iter().map(|b| b.derivative()).collect();
    let d2: Vec<DiffPoly> = d1.iter().map(|b| b.derivative()).collect();
    let u0 = DiffPoly::var(0);
    let mut out = Vec::new();
    // lambda^1: -2 beta_0^2 + 2
    out.push(beta[0].mul(&beta[0]).scale(&int(-2)).add(&DiffPoly::constant(int(2))));
    for k in 0..=k_max {
        let mut acc = DiffPoly::default();
        for i in 0..=k {
            acc = acc
                .add(&beta[i].mul(&d2[k - i]))
                .sub(&d1[i].mul(&d1[k - i]).scale(&rat(1, 2)))
                .add(&u0.mul(&beta[i].mul(&beta[k - i])).scale(&int(4)));
        }
        for i in 0..=k + 1 {
            acc = acc.sub(&beta[i].mul(&beta[k + 1 - i]).scale(&int(2)));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Which coefficient sequence a [`CoeffSeq`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeqKind {
    /// `y_g`, indexed from `g = 1`.
    YG,
    /// `y_{d,n}` from `n = 0`.
    YDN,
    /// `v_{d,n}` from `n = 0`.
    VDN,
    /// `A_{d,n}` from `n = 0`.
    ADN,
}

/// A coefficient sequence with its first index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSeq {
    pub kind: SeqKind,
    pub d: u32,
    pub start: u64,
    pub values: Vec<Rational>,
}

impl CoeffSeq {
    pub fn get(&self, n: u64) -> Option<&Rational> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i as usize))
    }

    pub fn last_index(&self) -> u64 {
        self.start + self.values.len() as u64 - 1
    }

    /// Values as `"num/den"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| format!("{}/{}", v.numer(), v.denom())).collect()
    }
}

/// `y_1, ..., y_{g_max}` from the quadratic recursion.
pub fn y_g_seq(g_max: u64) -> Result<CoeffSeq> {
    if g_max < 1 {
        return Err(Error::Precondition("y_g_seq needs g_max >= 1".into()));
    }
    let mut y = vec![Rational::zero(), rat(1, 4)];
    for g in 2..=g_max as i64 {
        let mut s = Rational::zero();
        for h in 1..g {
            s += int(3 * h - 1) * &y[h as usize] * &y[(g - h) as usize];
        }
        let v = int((3 * g - 2) * (3 * g - 4)) * &y[(g - 1) as usize] + s * rat(2, g - 1);
        y.push(v);
    }
    y.remove(0);
    Ok(CoeffSeq { kind: SeqKind::YG, d: 1, start: 1, values: y })
}

/// `y_{d,n} = ((2d+1)n+1)! C(d^n) / ((2d+1)^n n!)`, `y_{d,0} = 1/4`.
pub fn y_dn_seq(d: u32, n_max: u64) -> Result<CoeffSeq> {
    if d == 0 {
        return Err(Error::Precondition("y_dn_seq needs d >= 1".into()));
    }
    let q = 2 * d as u64 + 1;
    let mut v = vec![rat(1, 4)];
    for n in 1..=n_max {
        let c = b_to_c(&vec![d; n as usize], &b_power(d, n as u32)?);
        let num = big(factorial(q * n + 1)) * c;
        let den = big(num_traits::pow(num_bigint::BigInt::from(q), n as usize) * factorial(n));
        v.push(num / den);
    }
    Ok(CoeffSeq { kind: SeqKind::YDN, d, start: 0, values: v })
}

/// `A_{d,n}` of the original normalisation, from `y_{d,n}`.
pub fn a_dn_seq(d: u32, n_max: u64) -> Result<CoeffSeq> {
    let y = y_dn_seq(d, n_max)?;
    let q = 2 * d as i64 + 1;
    let df = big(odd_double_factorial(d as i64 + 1));
    let values = y
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let n = n as i64;
            if n == 0 {
                return rat(1, 8);
            }
            // A = ((qn+1)!/(2^{2nd+1} q!!^n n!)) C, and y = ((qn+1)!/(q^n n!)) C
            v * crate::exactnum::pow_rat(&(int(q) / &df), n) * pow2(-(2 * n * d as i64 + 1))
        })
        .collect();
    Ok(CoeffSeq { kind: SeqKind::ADN, d, start: 0, values })
}

/// Solves the normalised Painleve XXXIV hierarchy coefficientwise for
/// `y_{d,0..=n_max}` and checks the residual at every solved order.
pub fn p34_solve(d: u32, n_max: u64) -> Result<CoeffSeq> {
    if d == 0 {
        return Err(Error::Precondition("p34_solve needs d >= 1".into()));
    }
    let m = m_poly(d)?;
    let q = 2 * d as i64 + 1;
    let lead = pow2(q) * big(odd_double_factorial(d as i64 + 1));
    let mut y = vec![rat(1, 4)];
    for n in 1..=n_max as i64 {
        let mm = m_coefficient(&m, &y, q, (n - 1) as usize);
        y.push(&lead * int(q * n + 1) * mm / int(q * n));
    }
    let seq = CoeffSeq { kind: SeqKind::YDN, d, start: 0, values: y };
    let r = p34_residual(d, &seq)?;
    if let Some((n, _)) = r.iter().enumerate().find(|(_, x)| !x.is_zero()) {
        return Err(Error::Consistency(format!("nonzero residual at n = {n} for d = {d}")));
    }
    Ok(seq)
}

/// Jet coefficient `U_i[n] = (-1)^i (qn+2)_i y_n / 2`.
fn jet(y: &[Rational], q: i64, i: usize, n: usize) -> Rational {
    let sign = if i % 2 == 0 { int(1) } else { int(-1) };
    sign * pochhammer(&int(q * n as i64 + 2), i as u64) * &y[n] / int(2)
}

/// Coefficient `M[N]` of `X^{-(qN+q+1)}` in `m_d(Y/2, Y'/2, ...)`.
fn m_coefficient(m: &DiffPoly, y: &[Rational], q: i64, target: usize) -> Rational {
    let mut total = Rational::zero();
    for (e, c) in &m.terms {
        // running product of the factor series, truncated at `target`
        let mut prod = vec![Rational::zero(); target + 1];
        prod[0] = Rational::one();
        let mut first = true;
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                let f: Vec<Rational> = (0..=target).map(|n| if n < y.len() { jet(y, q, i, n) } else { Rational::zero() }).collect();
                if first {
                    prod = f;
                    first = false;
                    continue;
                }
                let mut next = vec![Rational::zero(); target + 1];
                for (a, pa) in prod.iter().enumerate() {
                    if pa.is_zero() {
                        continue;
                    }
                    for b in 0..=(target - a) {
                        if !f[b].is_zero() {
                            next[a + b] += pa * &f[b];
                        }
                    }
                }
                prod = next;
            }
        }
        total += c * &prod[target];
    }
    total
}

/// Coefficients of `X^{-(qn+2)}` of the left-hand side of the normalised
/// hierarchy for `n = 0..=n_max` of the given sequence.
pub fn p34_residual(d: u32, y: &CoeffSeq) -> Result<Vec<Rational>> {
    let m = m_poly(d)?;
    let q = 2 * d as i64 + 1;
    let lead = pow2(q) * big(odd_double_factorial(d as i64 + 1));
    let mut out = vec![Rational::zero()];
    for n in 1..y.values.len() as i64 {
        let mm = m_coefficient(&m, &y.values, q, (n - 1) as usize);
        let lhs = -(&lead * int(q * n + 1) * mm) + int(q * n) * &y.values[n as usize];
        out.push(lhs);
    }
    Ok(out)
}

/// `v_{d,n}` from `(2d+1) n v_n = y_n + sum_{n1,n2 >= 1} v_{n1} v_{n2}`, `v_0 = 1/2`.
pub fn v_dn_seq(y: &CoeffSeq) -> CoeffSeq {
    let q = 2 * y.d as i64 + 1;
    let mut v = vec![rat(1, 2)];
    for n in 1..y.values.len() {
        let mut s = y.values[n].clone();
        for n1 in 1..n {
            s += &v[n1] * &v[n - n1];
        }
        v.push(s / int(q * n as i64));
    }
    CoeffSeq { kind: SeqKind::VDN, d: y.d, start: 0, values: v }
}

/// Both sides of `y_n = ((2d+1)n+1) v_n - sum_{n1+n2=n} v_{n1} v_{n2}`.
pub fn ydnvdn_sides(y: &CoeffSeq, v: &CoeffSeq, n: usize) -> (Rational, Rational) {
    let q = 2 * y.d as i64 + 1;
    let mut rhs = int(q * n as i64 + 1) * &v.values[n];
    for n1 in 0..=n {
        rhs -= &v.values[n1] * &v.values[n - n1];
    }
    (y.values[n].clone(), rhs)
}

/// Growth references whose ratio to a sequence tends to `1/pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// `(3g-2)! / (3^{g-1} (g-1)!)` for `y_g`.
    YG,
    /// `((2d+1)n+1)! / ((2d+1)^n n!)` for `y_{d,n}`.
    YDN(u32),
    /// `((2d+1)n-1)! / ((2d+1)^{n-1} (n-1)!)` for `v_{d,n}`.
    VDN(u32),
    /// `1` for `C(g-1)`.
    One,
}

impl Reference {
    pub fn value(&self, n: u64) -> Rational {
        let pw = |b: u64, e: u64| big(num_traits::pow(num_bigint::BigInt::from(b), e as usize));
        match *self {
            Reference::YG => big(factorial(3 * n - 2)) / (pw(3, n - 1) * big(factorial(n - 1))),
            Reference::YDN(d) => {
                let q = 2 * d as u64 + 1;
                big(factorial(q * n + 1)) / (pw(q, n) * big(factorial(n)))
            }
            Reference::VDN(d) => {
                let q = 2 * d as u64 + 1;
                big(factorial(q * n - 1)) / (pw(q, n - 1) * big(factorial(n - 1)))
            }
            Reference::One => Rational::one(),
        }
    }
}

/// `seq_n / reference_n` for every available `n >= from`.
pub fn ratios(seq: &CoeffSeq, r: Reference, from: u64) -> Vec<(u64, Rational)> {
    (from.max(seq.start)..=seq.last_index())
        .map(|n| (n, seq.get(n).unwrap() / r.value(n)))
        .collect()
}

/// Richardson extrapolation of order `k` of `s_n ~ L + a/n + ...` using
/// `s_n .. s_{n+k}`.
pub fn richardson(pts: &[(u64, Rational)], k: usize) -> Result<Rational> {
    if pts.len() < k + 1 {
        return Err(Error::Precondition("not enough terms for extrapolation".into()));
    }
    let base = &pts[pts.len() - 1 - k..];
    let mut acc = Rational::zero();
    for (j, (n, s)) in base.iter().enumerate() {
        let sign = if (k - j) % 2 == 0 { int(1) } else { int(-1) };
        let w = crate::exactnum::pow_rat(&int(*n as i64), k as i64)
            / big(factorial(j as u64) * factorial((k - j) as u64));
        acc += sign * w * s;
    }
    Ok(acc)
}

/// Result of fitting `seq_n / ref_n ~ A (1 + c_1/n + c_2/n^2 + ...)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticFit {
    /// `A` as a decimal.
    pub constant: String,
    /// `A pi` as a decimal (should be close to 1).
    pub constant_times_pi: String,
    /// Fitted `c_1, c_2, ...` as decimals.
    pub corrections: Vec<String>,
    #[serde(skip)]
    pub exact: Vec<Rational>,
}

/// Fits the constant and `n_corr` corrections; `digits` sets the rendering.
pub fn asym_fit(seq: &CoeffSeq, r: Reference, n_corr: usize, order: usize, digits: usize) -> Result<AsymptoticFit> {
    let pts = ratios(seq, r, seq.start.max(1));
    let a = richardson(&pts, order)?;
    let mut cur: Vec<(u64, Rational)> =
        pts.iter().map(|(n, s)| (*n, (s / &a - int(1)) * int(*n as i64))).collect();
    let mut exact = vec![a.clone()];
    for _ in 0..n_corr {
        let c = richardson(&cur, order)?;
        cur = cur.iter().map(|(n, s)| (*n, (s - &c) * int(*n as i64))).collect();
        exact.push(c);
    }
    let pi_times = Interval::resolve(digits, |pi| Ok(pi.scale(&a)))?;
    Ok(AsymptoticFit {
        constant: format_sig(&a, digits),
        constant_times_pi: pi_times,
        corrections: exact[1..].iter().map(|c| format_sig(c, digits)).collect(),
        exact,
    })
}

/// Sequence `C(g-1)` for `g = 1..=g_max`, for the smallest-number asymptotics.
pub fn smallest_seq(g_max: u64) -> CoeffSeq {
    let values = (1..=g_max).map(|g| crate::resolvent::c_onepoint(g - 1)).collect();
    CoeffSeq { kind: SeqKind::YG, d: 0, start: 1, values }
}

/// `seq_n / ref_n` times `pi`, as an interval-certified decimal.
pub fn ratio_times_pi(seq: &CoeffSeq, r: Reference, n: u64, digits: usize) -> Result<String> {
    let x = seq
        .get(n)
        .ok_or_else(|| Error::Precondition(format!("index {n} outside the sequence")))?
        / r.value(n);
    Interval::resolve(digits, |pi| Ok(pi.scale(&x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_m() {
        assert_eq!(m_poly(0).unwrap(), DiffPoly::var(0));
        let m1 = DiffPoly::var(0).mul(&DiffPoly::var(0)).scale(&rat(1, 2)).add(&DiffPoly::var(2).scale(&rat(1, 12)));
        assert_eq!(m_poly(1).unwrap(), m1);
    }

    #[test]
    fn richardson_exact_on_polynomials() {
        let pts: Vec<(u64, Rational)> =
            (10..20).map(|n| (n, int(3) + rat(2, n as i64) - rat(5, (n * n) as i64))).collect();
        assert_eq!(richardson(&pts, 2).unwrap(), int(3));
    }
}
