//! Exact rationals, combinatorial tables and a certified interval type.
//!
//! All number-theoretic work in the crate happens over [`Rational`]
//! (`num_rational::BigRational`, always kept in lowest terms with a positive
//! denominator). Floating point only ever appears when a result is rendered.
//!
//! Transcendental values are limited to even powers of pi. They are carried
//! symbolically as [`PiMultiple`] and only turned into numbers through
//! [`Interval`] arithmetic against rational bounds on pi taken from a stored
//! decimal expansion.

use std::cmp::Ordering;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

/// Digits of pi after the decimal point (truncated, not rounded).
const PI_DECIMALS: &str = concat!(
    "14159265358979323846264338327950288419716939937510",
    "58209749445923078164062862089986280348253421170679",
    "82148086513282306647093844609550582231725359408128",
    "48111745028410270193852110555964462294895493038196",
    "44288109756659334461284756482337867831652712019091",
    "45648566923460348610454326648213393607260249141273",
    "72458700660631558817488152092096282925409171536436",
    "78925903600113305305488204665213841469519415116094",
    "33057270365759591953092186117381932611793105118548",
);

/// Largest `digits` accepted by [`pi_bounds`].
pub const PI_MAX_DIGITS: usize = 440;

/// Precision used by default for certified comparisons against 1/pi.
pub const PI_DEFAULT_DIGITS: usize = 64;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        big(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn pow_rat(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

fn factorial_table() -> &'static RwLock<Vec<BigInt>> {
    static T: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

pub fn factorial(n: u64) -> BigInt {
    let n = n as usize;
    {
        let t = factorial_table().read().unwrap();
        if n < t.len() {
            return t[n].clone();
        }
    }
    let mut t = factorial_table().write().unwrap();
    while t.len() <= n {
        let k = t.len();
        let next = &t[k - 1] * BigInt::from(k);
        t.push(next);
    }
    t[n].clone()
}

fn double_factorial_table() -> &'static RwLock<Vec<BigInt>> {
    static T: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(vec![BigInt::one(), BigInt::one()]))
}

/// `k!!` for `k >= -3`, with `(-1)!! = 1` and `(-3)!! = -1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    match k {
        -3 => return Ok(-BigInt::one()),
        -1 => return Ok(BigInt::one()),
        k if k < -3 || k == -2 => {
            return Err(Error::Precondition(format!("double factorial of {k}")))
        }
        _ => {}
    }
    let k = k as usize;
    {
        let t = double_factorial_table().read().unwrap();
        if k < t.len() {
            return Ok(t[k].clone());
        }
    }
    let mut t = double_factorial_table().write().unwrap();
    while t.len() <= k {
        let j = t.len();
        let next = &t[j - 2] * BigInt::from(j);
        t.push(next);
    }
    Ok(t[k].clone())
}

/// `(2k - 1)!!` for `k >= -1`.
pub fn odd_double_factorial(k: i64) -> BigInt {
    double_factorial(2 * k - 1).expect("k >= -1")
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Generalised binomial `C(x, k)` for rational `x`.
pub fn binomial_rat(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - int(i as i64);
        acc /= int(i as i64 + 1);
    }
    acc
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc *= a + int(i as i64);
    }
    acc
}

pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

fn stirling_table() -> &'static RwLock<Vec<Vec<BigInt>>> {
    static T: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    {
        let t = stirling_table().read().unwrap();
        if n < t.len() {
            return t[n][k].clone();
        }
    }
    let mut t = stirling_table().write().unwrap();
    while t.len() <= n {
        let m = t.len();
        let prev = &t[m - 1];
        let mut row = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let a = if j < m { &prev[j] * BigInt::from(j) } else { BigInt::zero() };
            row[j] = a + &prev[j - 1];
        }
        t.push(row);
    }
    t[n][k].clone()
}

/// Exponent of the prime `p` in a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    fn v(mut n: BigInt, p: &BigInt) -> i64 {
        let mut c = 0;
        while (&n % p).is_zero() {
            n /= p;
            c += 1;
        }
        c
    }
    let p = BigInt::from(p);
    v(x.numer().clone(), &p) - v(x.denom().clone(), &p)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// True when the denominator is a power of two.
pub fn is_dyadic(x: &Rational) -> bool {
    let d = x.denom();
    (d & (d - BigInt::one())).is_zero()
}

/// Rational bounds `lo < pi < hi` with `hi - lo = 10^-digits`.
pub fn pi_bounds(digits: usize) -> Result<(Rational, Rational)> {
    if digits > PI_MAX_DIGITS || digits > PI_DECIMALS.len() {
        return Err(Error::Precision(format!(
            "pi requested to {digits} digits, stored precision is {PI_MAX_DIGITS}"
        )));
    }
    let num: BigInt = format!("3{}", &PI_DECIMALS[..digits]).parse().unwrap();
    let den = num_traits::pow(BigInt::from(10), digits);
    let lo = Rational::new(num.clone(), den.clone());
    let hi = Rational::new(num + 1, den);
    Ok((lo, hi))
}

pub fn pi_interval(digits: usize) -> Result<Interval> {
    let (lo, hi) = pi_bounds(digits)?;
    Ok(Interval { lo, hi })
}

/// Rational bounds on `sqrt(x)` of width at most `10^-digits`.
pub fn sqrt_bounds(x: &Rational, digits: usize) -> Result<Interval> {
    if x.is_negative() {
        return Err(Error::Precondition("square root of a negative number".into()));
    }
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * big(&scale * &scale);
    let floor = scaled.to_integer();
    let r = floor.sqrt();
    Ok(Interval {
        lo: Rational::new(r.clone(), scale.clone()),
        hi: Rational::new(r + 1, scale),
    })
}

/// `coefficient * pi^pi_power` with `pi_power` in `{-2, 0, 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: Rational,
    pub pi_power: i32,
}

impl PiMultiple {
    pub fn new(coefficient: Rational, pi_power: i32) -> Result<Self> {
        if ![-2, 0, 2].contains(&pi_power) {
            return Err(Error::Precondition(format!("pi power {pi_power} not in {{-2,0,2}}")));
        }
        Ok(Self { coefficient, pi_power })
    }

    pub fn rational(coefficient: Rational) -> Self {
        Self { coefficient, pi_power: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn mul(&self, other: &PiMultiple) -> Result<PiMultiple> {
        PiMultiple::new(&self.coefficient * &other.coefficient, self.pi_power + other.pi_power)
    }

    pub fn div(&self, other: &PiMultiple) -> Result<PiMultiple> {
        if other.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        PiMultiple::new(&self.coefficient / &other.coefficient, self.pi_power - other.pi_power)
    }

    pub fn scale(&self, r: &Rational) -> PiMultiple {
        PiMultiple { coefficient: &self.coefficient * r, pi_power: self.pi_power }
    }

    pub fn add(&self, other: &PiMultiple) -> Result<PiMultiple> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != other.pi_power {
            return Err(Error::Precondition(format!(
                "cannot add pi^{} and pi^{} terms exactly",
                self.pi_power, other.pi_power
            )));
        }
        Ok(PiMultiple { coefficient: &self.coefficient + &other.coefficient, pi_power: self.pi_power })
    }

    pub fn interval(&self, pi: &Interval) -> Interval {
        let c = Interval::point(self.coefficient.clone());
        c.mul(&pi.powi(self.pi_power))
    }

    /// Correctly rounded decimal with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> Result<String> {
        if self.pi_power == 0 {
            return Ok(format_sig(&self.coefficient, digits));
        }
        Interval::resolve(digits, |pi| Ok(self.interval(pi)))
    }
}

/// Closed interval with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn add_rat(&self, r: &Rational) -> Interval {
        Interval { lo: &self.lo + r, hi: &self.hi + r }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, r: &Rational) -> Interval {
        self.mul(&Interval::point(r.clone()))
    }

    pub fn recip(&self) -> Result<Interval> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::Precision("interval division by a range containing zero".into()));
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn powi(&self, e: i32) -> Interval {
        if e < 0 {
            return self.recip().expect("nonzero base").powi(-e);
        }
        let mut acc = Interval::point(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Decimal with `digits` significant digits, if both endpoints agree.
    pub fn decimal(&self, digits: usize) -> Option<String> {
        let a = format_sig(&self.lo, digits);
        let b = format_sig(&self.hi, digits);
        (a == b).then_some(a)
    }

    /// Evaluates `f` on tightening pi intervals until the rendered value is stable.
    pub fn resolve<F>(digits: usize, f: F) -> Result<String>
    where
        F: Fn(&Interval) -> Result<Interval>,
    {
        let mut pd = (digits + 20).min(PI_MAX_DIGITS);
        loop {
            let pi = pi_interval(pd)?;
            match f(&pi) {
                Ok(iv) => {
                    if let Some(s) = iv.decimal(digits) {
                        return Ok(s);
                    }
                }
                Err(Error::Precision(_)) => {}
                Err(e) => return Err(e),
            }
            if pd == PI_MAX_DIGITS {
                return Err(Error::Precision(format!(
                    "{digits} digits not reachable with pi to {PI_MAX_DIGITS} digits"
                )));
            }
            pd = (pd * 2).min(PI_MAX_DIGITS);
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }
}

/// Floor of `log10 |x|` for nonzero `x`.
pub fn decimal_exponent(x: &Rational) -> i64 {
    let a = x.abs();
    let ln = a.numer().to_string().len() as i64;
    let ld = a.denom().to_string().len() as i64;
    let e = ln - ld;
    if a < pow_rat(&int(10), e) {
        e - 1
    } else {
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    HalfUp,
    Truncate,
}

/// Digits of `|x|` as an integer with exactly `digits` digits and the decimal
/// exponent of its leading digit.
pub fn significant_digits(x: &Rational, digits: usize, mode: Rounding) -> (BigInt, i64) {
    let a = x.abs();
    let mut e = decimal_exponent(&a);
    let s = digits as i64 - 1 - e;
    let scaled = &a * pow_rat(&int(10), s);
    let mut n = match mode {
        Rounding::HalfUp => (scaled + rat(1, 2)).floor().to_integer(),
        Rounding::Truncate => scaled.floor().to_integer(),
    };
    let limit = num_traits::pow(BigInt::from(10), digits);
    if n >= limit {
        n /= 10;
        e += 1;
    }
    (n, e)
}

fn render(neg: bool, n: BigInt, e: i64, digits: usize) -> String {
    let s = n.to_string();
    let sign = if neg { "-" } else { "" };
    if !(-12..=24).contains(&e) {
        let (head, tail) = s.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{e}")
        } else {
            format!("{sign}{head}.{tail}e{e}")
        };
    }
    let point = e + 1;
    if point <= 0 {
        format!("{sign}0.{}{s}", "0".repeat((-point) as usize))
    } else if point as usize >= digits {
        format!("{sign}{s}{}", "0".repeat(point as usize - digits))
    } else {
        let (a, b) = s.split_at(point as usize);
        format!("{sign}{a}.{b}")
    }
}

/// Correctly rounded (half away from zero) decimal with `digits` significant digits.
pub fn format_sig(x: &Rational, digits: usize) -> String {
    format_with(x, digits, Rounding::HalfUp)
}

pub fn format_with(x: &Rational, digits: usize, mode: Rounding) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return if digits == 1 { "0".into() } else { format!("0.{}", "0".repeat(digits - 1)) };
    }
    let (n, e) = significant_digits(x, digits, mode);
    render(x.is_negative(), n, e, digits)
}

pub fn cmp_rational_interval(x: &Rational, iv: &Interval) -> Option<Ordering> {
    if x < &iv.lo {
        Some(Ordering::Less)
    } else if x > &iv.hi {
        Some(Ordering::Greater)
    } else if iv.lo == iv.hi {
        Some(Ordering::Equal)
    } else {
        None
    }
}

pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_edges() {
        assert_eq!(double_factorial(-3).unwrap(), BigInt::from(-1));
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
        assert!(double_factorial(-5).is_err());
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn stirling_small() {
        assert_eq!(stirling2(5, 2), BigInt::from(15));
        assert_eq!(stirling2(6, 3), BigInt::from(90));
        assert_eq!(stirling2(0, 0), BigInt::from(1));
        assert_eq!(stirling2(4, 0), BigInt::from(0));
    }

    #[test]
    fn pi_bounds_two_digits() {
        let (lo, hi) = pi_bounds(2).unwrap();
        assert_eq!(lo, rat(314, 100));
        assert_eq!(hi, rat(315, 100));
        assert!(pi_bounds(PI_MAX_DIGITS + 1).is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(format_sig(&rat(189, 640), 6), "0.295313");
        assert_eq!(format_sig(&rat(9, 32), 6), "0.281250");
        assert_eq!(format_sig(&rat(-1, 8), 3), "-0.125");
        assert_eq!(format_sig(&rat(99999, 1), 3), "100000");
        assert_eq!(format_sig(&rat(1, 3), 2), "0.33");
        assert_eq!(format_with(&rat(2, 3), 3, Rounding::Truncate), "0.666");
    }

    #[test]
    fn pi_multiple_decimal() {
        let g = PiMultiple::new(rat(8, 3), -2).unwrap();
        assert_eq!(g.to_decimal(10).unwrap(), "0.2701898230");
        assert!(PiMultiple::new(int(1), 4).is_err());
        let a = PiMultiple::new(int(1), 2).unwrap();
        assert!(a.mul(&a).is_err());
        assert!(a.add(&PiMultiple::rational(int(1))).is_err());
    }
}
