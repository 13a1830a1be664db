//! Asymptotic expansions in `1/X` and the objects built from them.
//!
//! Everything here is exact. Gamma-function ratios are expanded by solving
//! their shift functional equation coefficient by coefficient
//! ([`solve_shift`], [`gamma_ratio`]); the only external input is the table of
//! numbers `C(d)` from [`crate::dvv`], used to interpolate the polynomials
//! `P_lambda`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dvv::BgwTable;
use crate::exactnum::{
    big, binomial, binomial_rat, factorial, int, is_dyadic, odd_double_factorial, pochhammer,
    pow2, rat, stirling2, Interval, PiMultiple, Rational,
};
use crate::partitions::{partitions_with_x, IndexVector};
use crate::{Error, Result};

/// `sum_{k=0}^{order} c_k X^{-k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticSeries {
    coeffs: Vec<Rational>,
}

impl AsymptoticSeries {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// `c X^{-k}`.
    pub fn monomial(k: usize, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect(), n)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect(), self.order())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect(), self.order())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, n)
    }

    /// Multiplication by `X^{-k}`, keeping the order.
    pub fn shift_down(&self, k: usize) -> Self {
        let mut c = vec![Rational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        c.truncate(self.order() + 1);
        Self::new(c, self.order())
    }

    /// Reciprocal of a unit (nonzero constant term).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Precondition("inverse of a non-unit series".into()));
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &inv0;
        }
        Ok(Self::new(out, n))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition("sqrt needs constant term 1".into()));
        }
        let n = self.order();
        let mut r = vec![Rational::zero(); n + 1];
        r[0] = Rational::one();
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &r[j] * &r[k - j];
            }
            r[k] = acc / int(2);
        }
        Ok(Self::new(r, n))
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let n = self.order();
        // (log f)' = f'/f, in the variable t = 1/X
        let mut out = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            let mut acc = int(k as i64) * &self.coeffs[k];
            for j in 1..k {
                acc -= int(j as i64) * &out[j] * &self.coeffs[k - j];
            }
            out[k] = acc / int(k as i64);
        }
        Ok(Self::new(out, n))
    }

    /// The series of `f(X + c)`.
    pub fn compose_shift(&self, c: &Rational) -> Self {
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = self.coeffs[0].clone();
        for k in 1..=n {
            if self.coeffs[k].is_zero() {
                continue;
            }
            // (1 + c/X)^{-k} = sum_j binom(-k, j) c^j X^{-j}
            let mut cj = Rational::one();
            for j in 0..=(n - k) {
                let b = binomial(k as u64 + j as u64 - 1, j as u64);
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                out[k + j] += &self.coeffs[k] * big(b) * sign * &cj;
                cj *= c;
            }
        }
        Self::new(out, n)
    }

    /// `P(X) / (lead(P) X^deg P)` as a unit series.
    pub fn from_polynomial(p: &RationalPolynomial, order: usize) -> Result<Self> {
        let d = p.degree().ok_or_else(|| Error::Precondition("zero polynomial".into()))?;
        let lead = p.coeffs[d].clone();
        let c = (0..=order.min(d)).map(|k| &p.coeffs[d - k] / &lead).collect();
        Ok(Self::new(c, order))
    }

    /// `1 / (X + a)_b` as a series of valuation `b`.
    pub fn inverse_pochhammer(a: &Rational, b: usize, order: usize) -> Result<Self> {
        if b > order {
            return Ok(Self::zero(order));
        }
        let p = RationalPolynomial::pochhammer(a, b as u64);
        let unit = Self::from_polynomial(&p, order)?.inverse()?;
        Ok(unit.shift_down(b))
    }
}

impl fmt::Display for AsymptoticSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { " - " } else if first { "" } else { " + " };
            let sign = if first && c.is_negative() { "-" } else { sign };
            let a = c.abs();
            match k {
                0 => write!(f, "{sign}{a}")?,
                _ => write!(f, "{sign}{a} X^-{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(X^-{})", self.order() + 1)
    }
}

/// Univariate polynomial, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    pub coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `a + b X`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn from_ints(c: &[(i64, i64)]) -> Self {
        Self::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
                    + o.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
            })
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `P(X + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Self::linear(c.clone(), Rational::one());
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// Rising factorial `(X + a)_n`.
    pub fn pochhammer(a: &Rational, n: u64) -> Self {
        let mut acc = Self::constant(Rational::one());
        for i in 0..n {
            acc = acc.mul(&Self::linear(a + int(i as i64), Rational::one()));
        }
        acc
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, o: &Self) -> Result<(Self, Self)> {
        let dd = o.degree().ok_or_else(|| Error::Precondition("division by zero polynomial".into()))?;
        let mut rem = self.coeffs.clone();
        let mut q = vec![Rational::zero(); rem.len().saturating_sub(dd).max(1)];
        let lead = &o.coeffs[dd];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / lead;
            for (i, b) in o.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            q[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((Self::new(q), Self::new(rem)))
    }

    /// Newton interpolation through `(x_i, y_i)`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let n = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = &points[i].0 - &points[i - level].0;
                if den.is_zero() {
                    return Err(Error::Precondition("repeated interpolation node".into()));
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        let mut acc = Self::zero();
        for i in (0..n).rev() {
            acc = acc.mul(&Self::linear(-&points[i].0, Rational::one())).add(&Self::constant(dd[i].clone()));
        }
        Ok(acc)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "X")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[Rational], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        let sign = match (first, c.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let mon = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k > 0 && a.is_one() {
            write!(f, "{sign}{mon}")?;
        } else if k > 0 {
            write!(f, "{sign}{a} {mon}")?;
        } else {
            write!(f, "{sign}{a}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Unit series `s` with `s(X + h) P(X) = s(X) Q(X)` and `s(infinity) = 1`.
pub fn solve_shift(
    p: &RationalPolynomial,
    q: &RationalPolynomial,
    h: &Rational,
    order: usize,
) -> Result<AsymptoticSeries> {
    let (dp, dq) = (p.degree(), q.degree());
    if dp != dq || dp.is_none() || p.coeffs.last() != q.coeffs.last() {
        return Err(Error::Precondition("shift equation needs equal degree and leading term".into()));
    }
    let work = order + 1;
    let pt = AsymptoticSeries::from_polynomial(p, work)?;
    let qt = AsymptoticSeries::from_polynomial(q, work)?;
    if pt.coeff(1) != qt.coeff(1) {
        return Err(Error::Consistency("shift equation has no unit power-series solution".into()));
    }
    let mut s = AsymptoticSeries::one(work);
    for m in 1..=order {
        let resid = s.compose_shift(h).mul(&pt).sub(&s.mul(&qt)).coeff(m + 1);
        s.coeffs[m] = resid / (h * int(m as i64));
    }
    let s = s.truncate(order);
    let check = s.compose_shift(h).mul(&pt.truncate(order)).sub(&s.mul(&qt.truncate(order)));
    if check.valuation().is_some() {
        return Err(Error::Consistency("shift-equation residual does not vanish".into()));
    }
    Ok(s)
}

/// Expansion of `prod Gamma(X/2 + alpha_i)^{e_i}` (with `sum e_i = 0`) as
/// `2^{-rho} X^rho u(X)`; returns `(rho, u)`.
pub fn gamma_ratio(factors: &[(Rational, i64)], order: usize) -> Result<(i64, AsymptoticSeries)> {
    if factors.iter().map(|f| f.1).sum::<i64>() != 0 {
        return Err(Error::Precondition("unbalanced gamma ratio".into()));
    }
    let rho: Rational = factors.iter().map(|(a, e)| a * int(*e)).sum();
    if !rho.is_integer() {
        return Err(Error::Precondition(format!("gamma ratio exponent {rho} is not an integer")));
    }
    let rho = rho.to_integer();
    let rho: i64 = (&rho).try_into().map_err(|_| Error::Precondition("exponent overflow".into()))?;
    let x = RationalPolynomial::linear(Rational::zero(), Rational::one());
    let x2 = RationalPolynomial::linear(int(2), Rational::one());
    let mut pos = RationalPolynomial::constant(Rational::one());
    let mut neg = RationalPolynomial::constant(Rational::one());
    for (a, e) in factors {
        let lin = RationalPolynomial::linear(a * int(2), Rational::one());
        if *e > 0 {
            pos = pos.mul(&lin.pow(*e as u32));
        } else {
            neg = neg.mul(&lin.pow((-e) as u32));
        }
    }
    // u(X+2) (X+2)^rho prod_neg = u(X) X^rho prod_pos, moved to polynomial form
    let (p, q) = if rho >= 0 {
        (x2.pow(rho as u32).mul(&neg), x.pow(rho as u32).mul(&pos))
    } else {
        (x.pow((-rho) as u32).mul(&neg), x2.pow((-rho) as u32).mul(&pos))
    };
    Ok((rho, solve_shift(&p, &q, &int(2), order)?))
}

/// `s(X)` with `gamma(X) ~ s(X)/pi`.
pub fn gamma_series(order: usize) -> AsymptoticSeries {
    let f = [(int(1), 2), (rat(1, 2), -1), (rat(3, 2), -1)];
    gamma_ratio(&f, order).expect("balanced ratio").1
}

/// `gamma(X) = Gamma(X/2+1)^2 / (pi Gamma((X+1)/2) Gamma((X+3)/2))` at an integer.
pub fn gamma_exact(x: u64) -> PiMultiple {
    if x % 2 == 1 {
        let d = (x - 1) / 2;
        let df = odd_double_factorial(d as i64 + 1);
        PiMultiple::rational(
            big(&df * &df) * pow2(-2 * (d as i64 + 1)) / big(factorial(d) * factorial(d + 1)),
        )
    } else {
        let m = x / 2;
        let f = factorial(m);
        let c = pow2(2 * m as i64 + 1) * big(&f * &f)
            / big(odd_double_factorial(m as i64) * odd_double_factorial(m as i64 + 1));
        PiMultiple::new(c, -2).unwrap()
    }
}

/// `X(lambda) = sum (2 lambda_j + 1)`, `n = l(lambda) + 1` and `delta_{n,2}`.
fn lambda_data(lambda: &[u32]) -> (i64, usize, usize) {
    let l: i64 = lambda.iter().map(|&x| 2 * x as i64 + 1).sum();
    let n = lambda.len() + 1;
    (l, n, usize::from(n == 2))
}

fn p_cache() -> &'static RwLock<HashMap<Vec<u32>, RationalPolynomial>> {
    static T: OnceLock<RwLock<HashMap<Vec<u32>, RationalPolynomial>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The monic polynomial `P_lambda` with
/// `C(lambda, d_n) = (2d_n+1)!!^3 P_lambda(X) / (2^{d_n+1} d_n! X^{delta_{n,2}} (X-1)!)`.
pub fn p_lambda(lambda: &[u32]) -> Result<RationalPolynomial> {
    if lambda.is_empty() || lambda.contains(&0) {
        return Err(Error::InvalidIndex("P_lambda needs a nonempty partition".into()));
    }
    let mut key = lambda.to_vec();
    key.sort_unstable();
    if let Some(p) = p_cache().read().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let (l, _, delta) = lambda_data(&key);
    let deg = (l + delta as i64 - 2) as usize;
    let start = *key.iter().max().unwrap();
    let table = BgwTable::global();
    let value = |dn: u32| -> Result<(Rational, Rational)> {
        let mut d = key.clone();
        d.push(dn);
        let c = table.c(&d)?;
        let x = l + 2 * dn as i64 + 1;
        let df = odd_double_factorial(dn as i64 + 1);
        let v = c * pow2(dn as i64 + 1) * big(factorial(dn as u64)) * int(x).pow(delta as i32)
            * big(factorial(x as u64 - 1))
            / big(&df * &df * &df);
        Ok((int(x), v))
    };
    let nodes = (0..=deg as u32).map(|i| value(start + i)).collect::<Result<Vec<_>>>()?;
    let p = RationalPolynomial::interpolate(&nodes)?;
    if p.degree() != Some(deg) || !p.is_monic() {
        return Err(Error::Consistency(format!(
            "P_{key:?} interpolated with degree {:?}, expected monic of degree {deg}",
            p.degree()
        )));
    }
    let (x, v) = value(start + deg as u32 + 1)?;
    if p.eval(&x) != v || !p.coeffs.iter().all(is_dyadic) {
        return Err(Error::Consistency(format!("P_{key:?} fails the extra node or Z[1/2] check")));
    }
    p_cache().write().unwrap().insert(key, p.clone());
    Ok(p)
}

/// Expansion of `pi C(lambda, d_n)` in `1/X` (the `c_k` series).
pub fn c_series(lambda: &[u32], order: usize) -> Result<AsymptoticSeries> {
    let (l, _, _) = lambda_data(lambda);
    let unit = if lambda.is_empty() {
        // P is 1/(X(X+1)) for the one-point numbers
        AsymptoticSeries::new(vec![int(1), int(1)], order).inverse()?
    } else {
        AsymptoticSeries::from_polynomial(&p_lambda(lambda)?, order)?
    };
    let f = [(int(1) - rat(l, 2), 3), (rat(1 - l, 2), -1), (int(0), -1), (rat(1, 2), -1)];
    let (rho, v) = gamma_ratio(&f, order)?;
    if rho != 2 - l {
        return Err(Error::Consistency(format!("gamma ratio exponent {rho}, expected {}", 2 - l)));
    }
    Ok(unit.mul(&v))
}

/// Expansion of `Chat(lambda, d_n) = C(lambda, d_n) / gamma(X)` in `1/X`.
pub fn chat_series(lambda: &[u32], order: usize) -> Result<AsymptoticSeries> {
    c_series(lambda, order)?.div(&gamma_series(order))
}

fn w_cache() -> &'static RwLock<HashMap<Vec<u32>, AsymptoticSeries>> {
    static T: OnceLock<RwLock<HashMap<Vec<u32>, AsymptoticSeries>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `W_lambda(X)`, defined by `Chat(lambda, d_n) ~ -sum_{I} W_{lambda_I}(X)`, `W_() = -1`.
pub fn w_lambda(lambda: &[u32], order: usize) -> Result<AsymptoticSeries> {
    let mut key = lambda.to_vec();
    key.sort_unstable();
    if key.is_empty() {
        return Ok(AsymptoticSeries::constant(int(-1), order));
    }
    if let Some(s) = w_cache().read().unwrap().get(&key) {
        if s.order() >= order {
            return Ok(s.truncate(order));
        }
    }
    let mut acc = chat_series(&key, order)?.neg();
    let r = key.len();
    for mask in 0..(1u64 << r) - 1 {
        let sub: Vec<u32> = (0..r).filter(|j| mask >> j & 1 == 1).map(|j| key[j]).collect();
        acc = acc.sub(&w_lambda(&sub, order)?);
    }
    let lead = 2 * key.iter().map(|&x| x as usize).sum::<usize>() + key.len() + 1;
    if let Some(v) = acc.valuation() {
        if v < lead {
            return Err(Error::Consistency(format!(
                "W_{key:?} starts at X^-{v}, expected X^-{lead}"
            )));
        }
    }
    w_cache().write().unwrap().insert(key, acc.clone());
    Ok(acc)
}

/// `A_j(d)` as a polynomial in `d`.
pub fn a_j_poly(j: u32) -> RationalPolynomial {
    if j == 0 {
        return RationalPolynomial::zero();
    }
    let mut acc = RationalPolynomial::zero();
    for l in 0..=((j + 1) / 2) {
        let l64 = l as i64;
        let num = big(odd_double_factorial(l64));
        let f = factorial(l as u64);
        let den = num_traits::pow(BigInt::from(8), l as usize) * &f * &f * &f;
        let poch = pochhammer(&int(j as i64 - 2 * l64), 2 * l as u64);
        let c = num / big(den) * poch;
        if c.is_zero() {
            continue;
        }
        let p = RationalPolynomial::pochhammer(&(rat(3, 2) - int(l64)), j as u64 - 1);
        acc = acc.add(&p.scale(&c));
    }
    let sign = if j % 2 == 1 { int(1) } else { int(-1) };
    acc.scale(&(sign * big(factorial(j as u64 - 1))))
}

/// Checks both recursions for `A_j` with `A_0 = 0`, `A_1 = 1` up to `j_max`.
pub fn verify_a_j_recursions(j_max: u32) -> Result<()> {
    let d = RationalPolynomial::linear(Rational::zero(), Rational::one());
    let c = |v: i64| RationalPolynomial::constant(int(v));
    let one = Rational::one();
    if !a_j_poly(1).eq(&c(1)) {
        return Err(Error::Consistency("A_1 != 1".into()));
    }
    for j in 0..j_max {
        let jj = j as i64;
        let aj = a_j_poly(j);
        let aj1 = aj.shift(&one);
        let b = a_j_poly(j + 1);
        let b1 = b.shift(&one);
        // A_{j+1}(d+1) - A_{j+1}(d) = 2(d+j+1)(2d+j+2) A_j(d) - ((2d+j+3)(2d+3) + j^2) A_j(d+1)
        let lhs = b1.sub(&b);
        let t1 = d.add(&c(jj + 1)).mul(&d.scale(&int(2)).add(&c(jj + 2))).scale(&int(2)).mul(&aj);
        let t2 = d
            .scale(&int(2))
            .add(&c(jj + 3))
            .mul(&d.scale(&int(2)).add(&c(3)))
            .add(&c(jj * jj))
            .mul(&aj1);
        if !lhs.sub(&t1.sub(&t2)).is_zero() {
            return Err(Error::Consistency(format!("first A_j recursion fails at j = {j}")));
        }
        // -j^3 A_j(d+1) + (2d-j+3) A_{j+1}(d+1) - (2d+j+3) A_{j+1}(d) = 0
        let r = aj1
            .scale(&int(-jj * jj * jj))
            .add(&d.scale(&int(2)).add(&c(3 - jj)).mul(&b1))
            .sub(&d.scale(&int(2)).add(&c(jj + 3)).mul(&b));
        if !r.is_zero() {
            return Err(Error::Consistency(format!("second A_j recursion fails at j = {j}")));
        }
    }
    Ok(())
}

/// `(2d+1)!!^3 / (2^{d+1} d!)`.
fn wd_prefactor(d: u32) -> Rational {
    let df = odd_double_factorial(d as i64 + 1);
    big(&df * &df * &df) * pow2(-(d as i64 + 1)) / big(factorial(d as u64))
}

/// `W_d(X)` from its closed form in inverse Pochhammer symbols.
pub fn w_d_closed(d: u32, order: usize) -> Result<AsymptoticSeries> {
    let mut acc = AsymptoticSeries::zero(order);
    let dd = d as i64;
    let mut j = 1i64;
    while (2 * dd + 2 * j) as usize <= order {
        let a = a_j_poly(j as u32).eval(&int(dd)) / int(dd + j);
        let s = AsymptoticSeries::inverse_pochhammer(&int(1 - 2 * dd - j), (2 * dd + 2 * j) as usize, order)?;
        acc = acc.add(&s.scale(&a));
        j += 1;
    }
    Ok(acc.scale(&wd_prefactor(d)))
}

/// `prod Gamma(X/2 + alpha_i)^{e_i}` as a series in `1/X`, for a nonpositive exponent.
pub fn gamma_ratio_series(factors: &[(Rational, i64)], order: usize) -> Result<AsymptoticSeries> {
    let (rho, u) = gamma_ratio(factors, order)?;
    if rho > 0 {
        return Err(Error::Precondition("gamma ratio grows at infinity".into()));
    }
    Ok(u.shift_down((-rho) as usize).scale(&pow2(-rho)))
}

/// Right-hand side of the difference equation for `W_d(X) - W_d(X+2)`.
pub fn w_d_difference_rhs(d: u32, order: usize) -> Result<AsymptoticSeries> {
    let dd = d as i64;
    let f = [(rat(1, 2) - int(dd), 3), (rat(3, 2), 1), (int(2), -3), (int(1 - dd), -1)];
    let g = gamma_ratio_series(&f, order + 1)?;
    let lin = AsymptoticSeries::new(vec![int(1), rat(3, 2) - int(dd)], order);
    let df = odd_double_factorial(dd + 1);
    let c = big(&df * &df * &df) * pow2(-3 * (dd + 1)) / big(factorial(d as u64));
    // (X - d + 3/2) = X (1 + (3/2 - d)/X), absorbed by one power of X in g
    let g = AsymptoticSeries::new(g.coeffs()[1..].to_vec(), order);
    Ok(g.mul(&lin).scale(&c))
}

/// Right-hand side of `W_{d-1}(X) - W_d(X)` for `d >= 2`.
pub fn w_d_step_rhs(d: u32, order: usize) -> Result<AsymptoticSeries> {
    if d < 2 {
        return Err(Error::Precondition("the W_d step needs d >= 2".into()));
    }
    let dd = d as i64;
    let f = [(rat(3, 2), 1), (rat(1, 2) - int(dd), 3), (int(1), -3), (int(1 - dd), -1)];
    let g = gamma_ratio_series(&f, order + 1)?;
    let df = odd_double_factorial(dd);
    let c = big(&df * &df * &df) * pow2(-3 * dd) / big(factorial(d as u64));
    // (X/2 - 2d) = (X/2)(1 - 4d/X)
    let g = AsymptoticSeries::new(g.coeffs()[1..].to_vec(), order);
    let lin = AsymptoticSeries::new(vec![rat(1, 2), int(-2 * dd)], order);
    Ok(g.mul(&lin).scale(&c))
}

/// `W(N; d, X)`: the first `n_terms` terms of the closed form at a numeric `X`.
pub fn w_truncated(n_terms: u32, d: u32, x: &Rational) -> Result<Rational> {
    let dd = d as i64;
    if x - int(2 * dd) <= int(n_terms as i64) {
        return Err(Error::Precondition(format!("W(N; d, X) needs X - 2d > N, got X = {x}")));
    }
    let mut acc = Rational::zero();
    for j in 1..=n_terms as i64 {
        let a = a_j_poly(j as u32).eval(&int(dd)) / int(dd + j);
        acc += a / pochhammer(&(x - int(2 * dd + j - 1)), (2 * dd + 2 * j) as u64);
    }
    Ok(acc * wd_prefactor(d))
}

/// Polynomial in the multiplicities `p_1, p_2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiplicityPolynomial {
    /// Exponent vectors (entry `i` is the power of `p_{i+1}`) to coefficients.
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiplicityPolynomial {
    pub fn constant(c: Rational) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(Vec::new(), c);
        }
        Self { terms: t }
    }

    fn normalise(mut e: Vec<u32>) -> Vec<u32> {
        while e.last() == Some(&0) {
            e.pop();
        }
        e
    }

    /// The variable `p_i`, `i >= 1`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        let mut t = BTreeMap::new();
        t.insert(e, Rational::one());
        Self { terms: t }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (e, c) in &o.terms {
            let slot = t.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                t.remove(e);
            }
        }
        Self { terms: t }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc = Self::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                let mut t = BTreeMap::new();
                t.insert(Self::normalise(e), c1 * c2);
                acc = acc.add(&Self { terms: t });
            }
        }
        acc
    }

    /// `binom(p_i, q)` as a polynomial.
    pub fn binom(i: usize, q: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for k in 0..q {
            let f = Self::var(i).add(&Self::constant(int(-(k as i64))));
            acc = acc.mul(&f).scale(&rat(1, k as i64 + 1));
        }
        acc
    }

    /// Value at multiplicities `p[i-1] = p_i`.
    pub fn eval(&self, p: &[u64]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let v = p.get(i).copied().unwrap_or(0);
                t *= big(num_traits::pow(BigInt::from(v), k as usize));
            }
            acc += t;
        }
        acc
    }

    /// Degree with `deg p_d = 2d + 1`.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| e.iter().enumerate().map(|(i, &k)| k as u64 * (2 * i as u64 + 3)).sum())
            .max()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(&Self::normalise(e.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for MultiplicityPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.iter().enumerate().map(|(i, &k)| k as u64 * (2 * i as u64 + 3)).sum::<u64>(), (*e).clone()));
        for e in keys {
            let c = &self.terms[e];
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
                .map(|(i, &k)| if k == 1 { format!("p{}", i + 1) } else { format!("p{}^{k}", i + 1) })
                .collect();
            let a = c.abs();
            if mons.is_empty() {
                write!(f, "{sign}{a}")?;
            } else if a.is_one() {
                write!(f, "{sign}{}", mons.join(" "))?;
            } else {
                write!(f, "{sign}{a} {}", mons.join(" "))?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Largest `k` accepted by [`chat_poly`].
pub const CHAT_POLY_MAX_K: usize = 10;

/// `chat_k` as a polynomial in the multiplicities.
pub fn chat_poly(k: usize) -> Result<MultiplicityPolynomial> {
    if k > CHAT_POLY_MAX_K {
        return Err(Error::Precondition(format!("chat_poly supports k <= {CHAT_POLY_MAX_K}")));
    }
    if k == 0 {
        return Ok(MultiplicityPolynomial::constant(Rational::one()));
    }
    let mut acc = MultiplicityPolynomial::default();
    for x in 1..k as u64 {
        for mu in partitions_with_x(x) {
            let w = w_lambda(mu.entries(), k)?;
            let c = w.coeff(k);
            if c.is_zero() {
                continue;
            }
            let mut term = MultiplicityPolynomial::constant(-c);
            let q = mu.multiplicities();
            for (i, &qi) in q.iter().enumerate().skip(1) {
                if qi > 0 {
                    term = term.mul(&MultiplicityPolynomial::binom(i, qi));
                }
            }
            acc = acc.add(&term);
        }
    }
    if let Some(deg) = acc.weighted_degree() {
        if deg + 1 > k as u64 {
            return Err(Error::Consistency(format!("deg chat_{k} = {deg} exceeds {}", k - 1)));
        }
    }
    Ok(acc)
}

/// `c_k` as a polynomial in the multiplicities: the `chat` series times `gamma_series`.
pub fn c_poly(k: usize) -> Result<MultiplicityPolynomial> {
    let s = gamma_series(k);
    let mut acc = MultiplicityPolynomial::default();
    for i in 0..=k {
        acc = acc.add(&chat_poly(i)?.scale(&s.coeff(k - i)));
    }
    Ok(acc)
}

/// `chat_k(e_d)` from the closed Stirling-number sum.
pub fn chat_k_ed(k: u32, d: u32) -> Rational {
    let (kk, dd) = (k as i64, d as i64);
    let mut acc = Rational::zero();
    let mut j = 1i64;
    while j <= kk / 2 - dd {
        let a = a_j_poly(j as u32).eval(&int(dd)) / int(dd + j);
        let mut inner = Rational::zero();
        for l in 0..=(kk - 2 * dd - 2 * j) {
            let s = stirling2((kk - l - 1) as u64, (2 * dd + 2 * j - 1) as u64);
            inner += big(binomial((kk - 1) as u64, l as u64) * s) * int(-j).pow(l as i32);
        }
        acc += a * inner;
        j += 1;
    }
    -(wd_prefactor(d) * acc)
}

/// `b_k(n)` for `k <= order`: the `1/d` expansion of the exponentially small
/// `1 - Chat(d^n)` divided by `Y_n(d)`, normalised to `b_0 = 1`.
pub fn subexp_b_series(n: u32, order: usize) -> Result<AsymptoticSeries> {
    if n < 2 {
        return Err(Error::Precondition("subexp_b_series needs n >= 2".into()));
    }
    let nn = n as i64;
    let d = RationalPolynomial::linear(Rational::zero(), Rational::one());
    let c = |v: i64| RationalPolynomial::constant(int(v));
    // R(d) = T_1(d+1)/T_1(d) = Num/Den
    let num = d
        .scale(&int(2))
        .add(&c(3))
        .pow(3)
        .mul(&RationalPolynomial::pochhammer(&int(nn), 2 * (n as u64 - 1)).compose_scale(&int(2 * (nn - 1))));
    let den = d
        .add(&c(2))
        .scale(&int(2))
        .mul(&RationalPolynomial::pochhammer(&int(nn + 2), 2 * n as u64).compose_scale(&int(2 * nn)));
    // rho^2 = ((n-1)^{n-1}/n^n)^2 is the growth per unit step of d
    let rho2 = {
        let r = big(num_traits::pow(BigInt::from(nn - 1), (n - 1) as usize))
            / big(num_traits::pow(BigInt::from(nn), n as usize));
        &r * &r
    };
    // v = (T_1 / Y)^2 up to a constant: v(d+1) rho^4 d Den^2 = v(d) (d+1) Num^2
    let p = d.mul(&den.pow(2)).scale(&(&rho2 * &rho2));
    let q = d.add(&c(1)).mul(&num.pow(2));
    let v = solve_shift(&p, &q, &int(1), order)?;
    let u = v.sqrt()?;
    // sum_j T_j / T_1 as a series in 1/d
    let x = d.scale(&int(2 * nn)).add(&c(nn));
    let mut sum = AsymptoticSeries::zero(order);
    for j in 1..=(order as i64 + 1) {
        let aj = a_j_poly(j as u32);
        let top = aj.mul(&d.add(&c(1)));
        let bottom = d
            .add(&c(j))
            .mul(&RationalPolynomial::pochhammer(&int(2), (j - 1) as u64).compose_poly(&x))
            .mul(&RationalPolynomial::pochhammer(&int(1 - j), (j - 1) as u64).compose_poly(&x.sub(&d.scale(&int(2)))));
        sum = sum.add(&rational_function_series(&top, &bottom, order)?);
    }
    Ok(u.mul(&sum))
}

impl RationalPolynomial {
    /// `P(c X)`.
    pub fn compose_scale(&self, c: &Rational) -> Self {
        let mut f = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &f);
            f *= c;
        }
        Self::new(out)
    }

    /// `P(Q(X))`.
    pub fn compose_poly(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(a.clone()));
        }
        acc
    }
}

/// `top(x) / bottom(x)` expanded in `1/x`; needs `deg top <= deg bottom`.
pub fn rational_function_series(
    top: &RationalPolynomial,
    bottom: &RationalPolynomial,
    order: usize,
) -> Result<AsymptoticSeries> {
    let dt = match top.degree() {
        None => return Ok(AsymptoticSeries::zero(order)),
        Some(d) => d,
    };
    let db = bottom.degree().ok_or_else(|| Error::Precondition("zero denominator".into()))?;
    if dt > db {
        return Err(Error::Precondition("rational function is not bounded at infinity".into()));
    }
    let lead = &top.coeffs[dt] / &bottom.coeffs[db];
    let t = AsymptoticSeries::from_polynomial(top, order)?;
    let b = AsymptoticSeries::from_polynomial(bottom, order)?;
    Ok(t.div(&b)?.scale(&lead).shift_down(db - dt))
}

/// `L_n = 24 log(1 + b_1 x + ...)` through `x^order`.
pub fn l_n_series(n: u32, order: usize) -> Result<AsymptoticSeries> {
    Ok(subexp_b_series(n, order)?.log()?.scale(&int(24)))
}

/// Exact `Chat(d) = C(d) / gamma(X)` as a multiple of a power of pi.
pub fn chat_exact(c: &Rational, x: u64) -> Result<PiMultiple> {
    PiMultiple::rational(c.clone()).div(&gamma_exact(x))
}

/// Interval enclosure of `1 - Chat` for `Chat = c / gamma(x)`.
pub fn one_minus_chat(c: &PiMultiple, x: u64, pi: &Interval) -> Result<Interval> {
    let v = c.div(&gamma_exact(x))?.interval(pi);
    Ok(v.neg().add_rat(&Rational::one()))
}

/// `(Chat(d^n) - 1) / (Chat(d, d') - 1)` with `2d' + 1 = (n-1)(2d+1)`.
pub fn power_vs_twopoint_ratio(d: u32, n: u32, digits: usize) -> Result<String> {
    let x = n as u64 * (2 * d as u64 + 1);
    let c_pow = PiMultiple::rational(crate::dvv::b_to_c(
        &vec![d; n as usize],
        &crate::resolvent::b_power(d, n)?,
    ));
    let two_dp = (n as i64 - 1) * (2 * d as i64 + 1) - 1;
    let c_two = crate::resolvent::c_twopoint_halfint(d as i64, two_dp)?;
    Interval::resolve(digits, |pi| {
        one_minus_chat(&c_pow, x, pi)?.div(&one_minus_chat(&c_two, x, pi)?)
    })
}

/// `n W(N; d, n(2d+1)) / (1 - Chat(d^n))`, rendered with `digits` digits.
pub fn power_vs_w_ratio(d: u32, n: u32, n_terms: u32, digits: usize) -> Result<String> {
    let x = n as u64 * (2 * d as u64 + 1);
    let c_pow = PiMultiple::rational(crate::dvv::b_to_c(
        &vec![d; n as usize],
        &crate::resolvent::b_power(d, n)?,
    ));
    let mult = if n == 2 { 1 } else { n as i64 };
    let w = w_truncated(n_terms, d, &int(x as i64))? * int(mult);
    Interval::resolve(digits, |pi| Interval::point(w.clone()).div(&one_minus_chat(&c_pow, x, pi)?))
}

/// `sum_{k <= K} b_k(n) d^{-k}` against `n W(N; d, n(2d+1)) / Y_n(d)` at a
/// finite `d`; returns both as decimals.
pub fn subexp_consistency(n: u32, d: u32, digits: usize) -> Result<(String, String)> {
    let order = 8;
    let b = subexp_b_series(n, order)?;
    let dd = int(d as i64);
    let mut pred = Rational::zero();
    for k in 0..=order {
        pred += b.coeff(k) / crate::exactnum::pow_rat(&dd, k as i64);
    }
    let nn = n as i64;
    let mult = if n == 2 { 1 } else { nn };
    let x = nn * (2 * d as i64 + 1);
    let w = w_truncated(order as u32 + 2, d, &int(x))? * int(mult);
    let base = big(num_traits::pow(BigInt::from(nn - 1), (n - 1) as usize))
        / big(num_traits::pow(BigInt::from(nn), n as usize));
    let geom = crate::exactnum::pow_rat(&base, 2 * d as i64 + 1);
    let half = if n == 2 { rat(1, 2) } else { int(1) };
    // Y_n(d)^2 = half^2 * 4(n-1)/(pi n d) * geom^2
    let y2_no_pi = &half * &half * int(4 * (nn - 1)) / (int(nn) * &dd) * &geom * &geom;
    let ratio = Interval::resolve(digits, |pi| {
        let y2 = Interval::point(y2_no_pi.clone()).div(pi)?;
        let r2 = Interval::point(&w * &w).div(&y2)?;
        let lo = crate::exactnum::sqrt_bounds(&r2.lo, digits + 10)?.lo;
        let hi = crate::exactnum::sqrt_bounds(&r2.hi, digits + 10)?.hi;
        Ok(Interval::new(lo, hi))
    })?;
    Ok((crate::exactnum::format_sig(&pred, digits), ratio))
}

/// The conjectured leading coefficient `2 (2|lambda| + l(lambda))! C(lambda)` of `W_lambda`.
pub fn w_lambda_leading_prediction(lambda: &[u32]) -> Result<Rational> {
    let x = crate::partitions::x_of(lambda);
    Ok(int(2) * big(factorial(x)) * BgwTable::global().c(lambda)?)
}

pub fn binom_poly_value(p: u64, q: u32) -> Rational {
    binomial_rat(&int(p as i64), q as u64)
}

pub fn lambda_vector(v: &IndexVector) -> Vec<u32> {
    v.sorted().0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_coefficients() {
        let s = gamma_series(5);
        let want = [rat(1, 1), rat(-1, 2), rat(5, 8), rat(-11, 16), rat(83, 128), rat(-143, 256)];
        assert_eq!(s.coeffs(), &want);
    }

    #[test]
    fn gamma_at_integers() {
        assert_eq!(gamma_exact(1), PiMultiple::rational(rat(1, 4)));
        assert_eq!(gamma_exact(3), PiMultiple::rational(rat(9, 32)));
        assert_eq!(gamma_exact(2), PiMultiple::new(rat(8, 3), -2).unwrap());
    }

    #[test]
    fn shift_roundtrip() {
        let s = AsymptoticSeries::new((1..=8).map(|k| rat(k, k + 3)).collect(), 7);
        assert_eq!(s.compose_shift(&int(2)).compose_shift(&int(-2)), s);
    }

    #[test]
    fn a_j_small() {
        assert_eq!(a_j_poly(1), RationalPolynomial::from_ints(&[(1, 1)]));
        assert_eq!(a_j_poly(2), RationalPolynomial::from_ints(&[(-3, 2), (-1, 1)]));
        verify_a_j_recursions(8).unwrap();
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = RationalPolynomial::from_ints(&[(3, 2), (-1, 1), (1, 1)]);
        let pts: Vec<_> = (0..3).map(|i| (int(i), p.eval(&int(i)))).collect();
        assert_eq!(RationalPolynomial::interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn chat_poly_bounds() {
        assert!(chat_poly(CHAT_POLY_MAX_K + 1).is_err());
    }
}
