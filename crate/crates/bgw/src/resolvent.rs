//! Matrix-resolvent evaluators, independent of the recursion in [`crate::dvv`].
//!
//! The building blocks are the 2x2 matrices
//!
//! ```text
//! A_k = f(k) [[k(k+1), k+1], [-(8k^3+12k^2+4k+1)/8, -k(k+1)]],
//! f(k) = (2k-1)!!^3 / (2^{3k} (k+1)!),   k >= -1,
//! ```
//!
//! and the traces `a_{k_1..k_n} = tr(A_{k_1} ... A_{k_n})`. The n-point
//! numbers are finite signed sums of these traces weighted by lattice-point
//! counts; the window routine instead builds the series `M_{m,d}(lambda)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{
    big, binomial, double_factorial, factorial, int, odd_double_factorial, pow2, rat, PiMultiple,
    Rational,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2(pub [Rational; 4]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn identity() -> Self {
        Mat2([Rational::one(), Rational::zero(), Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn add_assign(&mut self, o: &Mat2) {
        for i in 0..4 {
            self.0[i] += &o.0[i];
        }
    }

    pub fn sub_assign(&mut self, o: &Mat2) {
        for i in 0..4 {
            self.0[i] -= &o.0[i];
        }
    }

    pub fn scale(&self, r: &Rational) -> Mat2 {
        let [a, b, c, d] = &self.0;
        Mat2([a * r, b * r, c * r, d * r])
    }

    pub fn trace(&self) -> Rational {
        &self.0[0] + &self.0[3]
    }

    /// `tr(self * o)` without forming the product.
    pub fn trace_mul(&self, o: &Mat2) -> Rational {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        a * e + b * g + c * f + d * h
    }
}

/// `f(k) = (2k-1)!!^3 / (2^{3k} (k+1)!)`.
pub fn f_coeff(k: i64) -> Result<Rational> {
    if k < -1 {
        return Err(Error::Precondition(format!("f({k}) needs k >= -1")));
    }
    let df = double_factorial(2 * k - 1)?;
    Ok(big(&df * &df * &df) * pow2(-3 * k) / big(factorial((k + 1) as u64)))
}

fn a_cache() -> &'static RwLock<Vec<Mat2>> {
    static T: OnceLock<RwLock<Vec<Mat2>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(Vec::new()))
}

fn build_a(k: i64) -> Mat2 {
    let f = f_coeff(k).expect("k >= -1");
    let kk = int(k * (k + 1));
    let low = -rat(8 * k * k * k + 12 * k * k + 4 * k + 1, 8);
    Mat2([kk.clone(), int(k + 1), low, -kk]).scale(&f)
}

/// `A_k` for `k >= -1`.
pub fn a_matrix(k: i64) -> Result<Mat2> {
    if k < -1 {
        return Err(Error::Precondition(format!("A_{k} is defined for k >= -1")));
    }
    let idx = (k + 1) as usize;
    {
        let t = a_cache().read().unwrap();
        if idx < t.len() {
            return Ok(t[idx].clone());
        }
    }
    let mut t = a_cache().write().unwrap();
    while t.len() <= idx {
        let kk = t.len() as i64 - 1;
        t.push(build_a(kk));
    }
    Ok(t[idx].clone())
}

/// `a_{k_1..k_n} = tr(A_{k_1} ... A_{k_n})`, zero if some `k_i <= -2`.
pub fn trace_a(ks: &[i64]) -> Rational {
    if ks.iter().any(|&k| k <= -2) {
        return Rational::zero();
    }
    if ks.is_empty() {
        return int(2);
    }
    let mut acc = a_matrix(ks[0]).unwrap();
    for &k in &ks[1..] {
        acc = acc.mul(&a_matrix(k).unwrap());
    }
    acc.trace()
}

/// Closed form of the two-index trace,
/// `-f(k1) f(k2) (((k1-k2)^2 + (k1+k2)/2)(k1+1)(k2+1) + (k1+k2+2)/8)`.
pub fn a2_closed(k1: i64, k2: i64) -> Rational {
    if k1 <= -2 || k2 <= -2 {
        return Rational::zero();
    }
    let f = f_coeff(k1).unwrap() * f_coeff(k2).unwrap();
    let s = int((k1 - k2) * (k1 - k2)) + rat(k1 + k2, 2);
    -(f * (s * int((k1 + 1) * (k2 + 1)) + rat(k1 + k2 + 2, 8)))
}

/// Closed form of the three-index trace.
pub fn a3_closed(k1: i64, k2: i64, k3: i64) -> Rational {
    if k1 <= -2 || k2 <= -2 || k3 <= -2 {
        return Rational::zero();
    }
    let f = f_coeff(k1).unwrap() * f_coeff(k2).unwrap() * f_coeff(k3).unwrap();
    let v = int((k1 - k2) * (k2 - k3) * (k3 - k1));
    f * v * (int((k1 + 1) * (k2 + 1) * (k3 + 1)) + rat(1, 8))
}

/// `M(e) = max(0, min e_i)`.
pub fn min_count(e: &[i64]) -> i64 {
    e.iter().copied().min().unwrap_or(0).max(0)
}

/// Permutations of `0..n-1` (as 0-based images), the last point fixed.
fn permutations_fixing_last(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n.saturating_sub(1)).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    let k = cur.len();
    heap(k, &mut cur, &mut out);
    for p in &mut out {
        p.push(n - 1);
    }
    out
}

/// Compositions `k_1 + .. + k_n = total` with every `k_i >= -1`.
fn shifted_compositions(n: usize, total: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let budget = total + n as i64;
    if budget < 0 {
        return out;
    }
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 1 {
            cur.push(rest - 1);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for m in 0..=rest {
            cur.push(m - 1);
            rec(n - 1, rest - m, cur, out);
            cur.pop();
        }
    }
    rec(n, budget, &mut cur, &mut out);
    out
}

/// Lattice-point weight `omega_{d, sigma, k}`.
pub fn omega(d: &[i64], sigma: &[usize], k: &[i64]) -> i64 {
    let n = d.len();
    let mut partial = 0i64;
    let mut min_plus: Option<i64> = None;
    let mut min_minus: Option<i64> = None;
    for r in 0..n {
        partial += d[sigma[r]] - k[r];
        if sigma[(r + 1) % n] > sigma[r] {
            min_plus = Some(min_plus.map_or(partial, |m| m.min(partial)));
        } else {
            min_minus = Some(min_minus.map_or(-partial, |m| m.min(-partial)));
        }
    }
    (min_plus.unwrap_or(0) + min_minus.unwrap_or(0)).max(0)
}

/// Number of `j in Z_{>=0}^n` with `K(j) = k`, counted by brute force over a box.
pub fn omega_bruteforce(d: &[i64], sigma: &[usize], k: &[i64], bound: i64) -> i64 {
    let n = d.len();
    let mut count = 0;
    let mut j = vec![0i64; n];
    let jfun = |q: usize, jq: i64| -> i64 {
        if sigma[(q + 1) % n] > sigma[q] {
            -jq - 1
        } else {
            jq
        }
    };
    loop {
        let mut ok = true;
        for q in 0..n {
            let prev = (q + n - 1) % n;
            if d[sigma[q]] + jfun(q, j[q]) - jfun(prev, j[prev]) != k[q] {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            j[i] += 1;
            if j[i] <= bound {
                break;
            }
            j[i] = 0;
            i += 1;
        }
    }
}

/// `B(d)` from the n-point trace formula. Entries may be negative.
pub fn b_npoint(d: &[i64]) -> Result<Rational> {
    let n = d.len();
    match n {
        0 => Err(Error::InvalidIndex("empty index vector".into())),
        1 => Ok(if d[0] < 0 { Rational::zero() } else { b_onepoint(d[0]) }),
        _ => {
            let total: i64 = d.iter().sum();
            let ks = shifted_compositions(n, total);
            let traces: Vec<Rational> = ks.iter().map(|k| trace_a(k)).collect();
            let mut acc = Rational::zero();
            for sigma in permutations_fixing_last(n) {
                let plus = (0..n).filter(|&r| sigma[(r + 1) % n] > sigma[r]).count();
                let mut part = Rational::zero();
                for (k, a) in ks.iter().zip(&traces) {
                    if a.is_zero() {
                        continue;
                    }
                    let w = omega(d, &sigma, k);
                    if w != 0 {
                        part += a * int(w);
                    }
                }
                if plus % 2 == 0 {
                    acc -= part;
                } else {
                    acc += part;
                }
            }
            Ok(acc)
        }
    }
}

/// `B(d) = (2d+1)!!^3 / (8^{d+1} (d+1)! (2d+1))`.
pub fn b_onepoint(d: i64) -> Rational {
    let df = odd_double_factorial(d + 1);
    big(&df * &df * &df) * pow2(-3 * (d + 1)) / big(factorial(d as u64 + 1) * BigInt::from(2 * d + 1))
}

pub fn b_threepoint(d: [i64; 3]) -> Rational {
    let total: i64 = d.iter().sum();
    let mut acc = Rational::zero();
    for k in shifted_compositions(3, total) {
        let m = min_count(&[d[0] - k[0], d[0] + d[1] - k[0] - k[1]]);
        if m != 0 {
            acc += a3_closed(k[0], k[1], k[2]) * int(m);
        }
    }
    acc * int(-2)
}

pub fn b_fourpoint(d: [i64; 4]) -> Rational {
    let total: i64 = d.iter().sum();
    let mut acc = Rational::zero();
    for k in shifted_compositions(4, total) {
        let m = min_count(&[d[0] - k[0], d[0] + d[1] - k[0] - k[1], k[3] - d[3]])
            - min_count(&[d[0] - k[1], d[0] + d[1] - k[1] - k[2], d[0] + d[2] - k[0] - k[1], k[3] - d[3]])
            - min_count(&[d[0] - k[0], d[1] - k[2], k[1] - d[2], k[3] - d[3]]);
        if m != 0 {
            acc += trace_a(&k) * int(m);
        }
    }
    acc * int(2)
}

/// `C(k) = g binom(2g-1, g)^2 / 4^{2g-1}` with `g = k + 1`.
pub fn c_onepoint(k: u64) -> Rational {
    let g = k + 1;
    let b = binomial(2 * g - 1, g);
    big(BigInt::from(g) * &b * &b) * pow2(-2 * (2 * g as i64 - 1))
}

/// `F_s = Gamma(s+1/2)^3 / (pi^{3/2} Gamma(s+1))` for `s = two_s / 2 >= 0`.
fn f_half(two_s: i64) -> PiMultiple {
    if two_s % 2 == 0 {
        let h = two_s / 2;
        let df = odd_double_factorial(h);
        PiMultiple::rational(big(&df * &df * &df) * pow2(-3 * h) / big(factorial(h as u64)))
    } else {
        let m = (two_s - 1) / 2;
        let f = factorial(m as u64);
        let c = big(&f * &f * &f) * pow2(m + 1) / big(odd_double_factorial(m + 1));
        PiMultiple::new(c, -2).unwrap()
    }
}

/// `C(d_1, d_2)` for `d_1` an integer and `d_2 = two_d2 / 2` a half-integer or integer.
pub fn c_twopoint_halfint(d1: i64, two_d2: i64) -> Result<PiMultiple> {
    if d1 < -1 || two_d2 < -2 {
        return Err(Error::Precondition(format!("C({d1}, {two_d2}/2) outside the domain")));
    }
    let two_g = 2 * d1 + two_d2 + 2;
    if two_g <= 0 {
        return Ok(PiMultiple::rational(Rational::zero()));
    }
    let mut acc = PiMultiple::rational(Rational::zero());
    for h in 0..=d1 {
        let weight = rat(two_g - 4 * h, 2);
        let term = f_half(2 * h).mul(&f_half(two_g - 2 * h))?.scale(&weight);
        acc = acc.add(&term)?;
    }
    Ok(acc.scale(&(pow2(two_g) / big(factorial(two_g as u64)))))
}

/// `C(d_1, d_2)` from the two-point closed form.
pub fn c_twopoint(d1: i64, d2: i64) -> Rational {
    c_twopoint_halfint(d1, 2 * d2).expect("integer arguments").coefficient
}

/// Truncated Laurent series in `lambda^{-1}` with 2x2 coefficients:
/// `sum_{k = kmin}^{kmax} c_k lambda^{-k}`, exact through `kmax`.
#[derive(Debug, Clone)]
struct MatSeries {
    kmin: i64,
    coeffs: Vec<Mat2>,
}

impl MatSeries {
    fn kmax(&self) -> i64 {
        self.kmin + self.coeffs.len() as i64 - 1
    }

    fn get(&self, k: i64) -> Option<&Mat2> {
        if k < self.kmin {
            return None;
        }
        self.coeffs.get((k - self.kmin) as usize)
    }

    fn zero(kmin: i64, kmax: i64) -> Self {
        Self { kmin, coeffs: vec![Mat2::zero(); (kmax - kmin + 1).max(0) as usize] }
    }

    /// `(lambda^d M)^-`: the strictly negative powers of `lambda`.
    fn shifted_negative(&self, d: i64) -> MatSeries {
        let kmax = self.kmax() - d;
        let mut out = MatSeries::zero(1, kmax);
        for k in 1..=kmax {
            if let Some(c) = self.get(k + d) {
                out.coeffs[(k - 1) as usize] = c.clone();
            }
        }
        out
    }

    /// `self * o - o * self`.
    fn commutator(&self, o: &MatSeries) -> MatSeries {
        let kmin = self.kmin + o.kmin;
        let kmax = (self.kmax() + o.kmin).min(o.kmax() + self.kmin);
        let mut out = MatSeries::zero(kmin, kmax);
        for k in kmin..=kmax {
            let slot = &mut out.coeffs[(k - kmin) as usize];
            for i in self.kmin..=(k - o.kmin) {
                let (Some(x), Some(y)) = (self.get(i), o.get(k - i)) else { continue };
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                slot.add_assign(&x.mul(y));
                slot.sub_assign(&y.mul(x));
            }
        }
        out
    }

    fn add(&self, o: &MatSeries) -> MatSeries {
        let kmin = self.kmin.min(o.kmin);
        let kmax = self.kmax().min(o.kmax());
        let mut out = MatSeries::zero(kmin, kmax);
        for k in kmin..=kmax {
            let slot = &mut out.coeffs[(k - kmin) as usize];
            if let Some(x) = self.get(k) {
                slot.add_assign(x);
            }
            if let Some(y) = o.get(k) {
                slot.add_assign(y);
            }
        }
        out
    }
}

/// Minimal truncation depth of `M(lambda)` for a window request.
pub fn window_depth(d: u32, m: u32, a_max: u32, b_max: u32) -> i64 {
    a_max as i64 + b_max as i64 + 2 + m as i64 * (d as i64 + 1)
}

/// `B(a, b, d^m)` for `0 <= a <= a_max`, `0 <= b <= b_max`, indexed `[a][b]`.
pub fn b_window(d: u32, m: u32, a_max: u32, b_max: u32) -> Result<Vec<Vec<Rational>>> {
    b_window_with_depth(d, m, a_max, b_max, window_depth(d, m, a_max, b_max))
}

/// As [`b_window`] with an explicit truncation depth for `M(lambda)`.
pub fn b_window_with_depth(
    d: u32,
    m: u32,
    a_max: u32,
    b_max: u32,
    depth: i64,
) -> Result<Vec<Vec<Rational>>> {
    let dd = d as i64;
    let mut series = Vec::with_capacity(m as usize + 1);
    let mut m0 = MatSeries::zero(-1, depth);
    for k in -1..=depth {
        m0.coeffs[(k + 1) as usize] = a_matrix(k)?;
    }
    series.push(m0);
    for mm in 1..=m as usize {
        let negs: Vec<MatSeries> = series.iter().map(|s| s.shifted_negative(dd)).collect();
        let mut acc: Option<MatSeries> = None;
        for i in 0..mm {
            let j = mm - 1 - i;
            let c = negs[i].commutator(&series[j]);
            acc = Some(match acc {
                None => c,
                Some(a) => a.add(&c),
            });
        }
        let mut s = acc.unwrap();
        let inv = rat(1, mm as i64);
        for c in &mut s.coeffs {
            *c = c.scale(&inv);
        }
        series.push(s);
    }
    let known = series.iter().map(|s| s.kmax()).min().unwrap();
    let need = a_max as i64 + b_max as i64 + 1;
    if known < need {
        return Err(Error::Precision(format!(
            "truncation depth {depth} leaves coefficients through {known}, need {need}"
        )));
    }
    let mm = m as usize;
    let t = |p: i64, q: i64| -> Rational {
        let mut acc = Rational::zero();
        for k in 0..=mm {
            if let (Some(x), Some(y)) = (series[k].get(p), series[mm - k].get(q)) {
                acc += x.trace_mul(y);
            }
        }
        // m = 0 subtracts lambda_1 + lambda_2, i.e. the (p, q) = (-1, 0) and (0, -1) terms
        if mm == 0 && ((p == -1 && q == 0) || (p == 0 && q == -1)) {
            acc -= Rational::one();
        }
        acc
    };
    let mfact = big(factorial(m as u64));
    // Division by (lambda_1 - lambda_2)^2 uses the expansion valid for
    // |lambda_1| > |lambda_2|: sum_{j >= 0} (j+1) lambda_2^j lambda_1^{-j-2}.
    let g = |a: i64, b: i64| -> Rational {
        let mut acc = Rational::zero();
        for j in 0..=a {
            acc += int(j + 1) * t(a - 1 - j, b + 1 + j);
        }
        acc * &mfact
    };
    let mut out = vec![vec![Rational::zero(); b_max as usize + 1]; a_max as usize + 1];
    for a in 0..=a_max as i64 {
        let sentinel = g(a, -1);
        if !sentinel.is_zero() {
            return Err(Error::Consistency(format!(
                "window sentinel coefficient at (a, b) = ({a}, -1) is {sentinel}, expected 0"
            )));
        }
        for b in 0..=b_max as i64 {
            out[a as usize][b as usize] = g(a, b);
        }
    }
    let s = a_max.min(b_max) as usize;
    for a in 0..=s {
        for b in 0..a {
            if out[a][b] != out[b][a] {
                return Err(Error::Consistency(format!("window asymmetric at ({a}, {b})")));
            }
        }
    }
    Ok(out)
}

/// `B(d^n)` for `n >= 1` via the window routine (or the one-point formula).
pub fn b_power(d: u32, n: u32) -> Result<Rational> {
    match n {
        0 => Err(Error::InvalidIndex("empty index vector".into())),
        1 => Ok(b_onepoint(d as i64)),
        _ => {
            let w = b_window(d, n - 2, d, d)?;
            Ok(w[d as usize][d as usize].clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_matrices() {
        assert_eq!(a_matrix(-1).unwrap(), Mat2([int(0), int(0), int(1), int(0)]));
        assert_eq!(a_matrix(0).unwrap(), Mat2([int(0), int(1), rat(-1, 8), int(0)]));
        assert!(a_matrix(-2).is_err());
        assert_eq!(trace_a(&[-2, 3]), Rational::zero());
    }

    #[test]
    fn one_point_values() {
        assert_eq!(b_onepoint(0), rat(1, 8));
        assert_eq!(b_onepoint(1), rat(9, 128));
        assert_eq!(c_onepoint(1), rat(9, 32));
        assert_eq!(c_onepoint(2), rat(75, 256));
    }

    #[test]
    fn two_point_values() {
        assert_eq!(c_twopoint(1, 1), rat(189, 640));
        assert_eq!(c_twopoint(1, 2), rat(8625, 28672));
        assert_eq!(c_twopoint(-1, 3), Rational::zero());
        assert_eq!(c_twopoint(2, 1), c_twopoint(1, 2));
    }

    #[test]
    fn window_small() {
        let w = b_window(1, 1, 1, 1).unwrap();
        assert_eq!(w[0][0], crate::dvv::c_to_b(&[0, 0, 1], &rat(9, 32)));
        assert!(b_window_with_depth(1, 1, 1, 1, 3).is_err());
    }
}
