//! Checks, table rendering, the cache file format and numeric output used by
//! the `bgw` command-line tool.
//!
//! Proved statements (positivity, the bounds, cross-equality of evaluators,
//! table reproduction) are [`CheckKind::Theorem`]; conjectures are
//! [`CheckKind::Conjecture`] and only ever reported.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dvv::{b_to_c, c_to_b, f_bound, BgwTable};
use crate::exactnum::{
    big, factorial, format_sig, format_with, int, is_dyadic, is_integer, lcm, odd_double_factorial, pi_interval, pow2, rat,
    Interval, PiMultiple, Rational, Rounding, PI_DEFAULT_DIGITS, PI_MAX_DIGITS,
};
use crate::partitions::{enumerate_partitions, order_cmp, partitions_with_x, record_cmp, IndexVector};
use crate::resolvent::{b_fourpoint, b_npoint, b_onepoint, b_threepoint, b_window, c_onepoint, c_twopoint};
use crate::series::{gamma_exact, one_minus_chat};
use crate::{Error, Result};

pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Theorem,
    Conjecture,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Theorem => "theorem",
            CheckKind::Conjecture => "conjecture",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub label: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: CheckKind,
    pub range: String,
    pub instances: Vec<Instance>,
    /// Failing instances with detail, in enumeration order (smallest first).
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    pub wall_ms: u128,
}

impl CheckReport {
    pub fn new(name: &str, kind: CheckKind, range: String) -> Self {
        Self {
            name: name.into(),
            kind,
            range,
            instances: Vec::new(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn record(&mut self, label: String, pass: bool, detail: impl FnOnce() -> String) {
        if !pass {
            self.counterexamples.push(format!("{label}: {}", detail()));
        }
        self.instances.push(Instance { label, pass });
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.instances.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| !i.pass).count()
    }

    fn finish(mut self, start: Instant) -> Self {
        self.wall_ms = start.elapsed().as_millis();
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.instances.len();
        writeln!(
            f,
            "{} [{}] {}: {}/{} pass ({} ms)",
            self.name,
            self.kind,
            self.range,
            n - self.failures(),
            n,
            self.wall_ms
        )?;
        for c in self.counterexamples.iter().take(10) {
            writeln!(f, "  counterexample {c}")?;
        }
        if self.counterexamples.len() > 10 {
            writeln!(f, "  ... {} more", self.counterexamples.len() - 10)?;
        }
        for note in &self.notes {
            writeln!(f, "  {note}")?;
        }
        Ok(())
    }
}

/// `<tau_{d_1} ... tau_{d_n}>` from `B(d)`.
pub fn bracket(table: &BgwTable, d: &[u32]) -> Result<Rational> {
    let mut df = BigInt::one();
    for &x in d {
        df *= odd_double_factorial(x as i64 + 1);
    }
    Ok(table.b(d)? / big(df))
}

fn partitions_of_genus(g: u64) -> Vec<IndexVector> {
    enumerate_partitions((g - 1) as u32)
}

fn values(table: &BgwTable, parts: &[IndexVector]) -> Result<Vec<Rational>> {
    parts.par_iter().map(|p| table.c(p.entries())).collect()
}

// ---------------------------------------------------------------- tables

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub d: IndexVector,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub decimal: String,
    /// `D_g C(d)`.
    pub scaled: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusTable {
    pub g: u64,
    pub denominator: String,
    pub rows: Vec<TableRow>,
}

/// `C(d)` for every partition of `g - 1`, with the least common denominator.
pub fn cli_table(table: &BgwTable, g: u64) -> Result<GenusTable> {
    if g < 2 {
        return Err(Error::Precondition(format!("table needs g >= 2, got {g}")));
    }
    let parts = partitions_of_genus(g);
    let vals = values(table, &parts)?;
    let mut den = BigInt::one();
    for v in &vals {
        den = lcm(&den, v.denom());
    }
    let rows = parts
        .into_iter()
        .zip(vals)
        .map(|(d, v)| TableRow {
            scaled: (&v * big(den.clone())).to_integer().to_string(),
            decimal: format_sig(&v, 6),
            d,
            value: v,
        })
        .collect();
    Ok(GenusTable { g, denominator: den.to_string(), rows })
}

impl fmt::Display for GenusTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g = {}, D = {}", self.g, self.denominator)?;
        for r in &self.rows {
            writeln!(f, "({})\t{}\t{}\t{}", r.d, r.value, r.decimal, r.scaled)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------- conjectures

/// `C(g-1) <= C(d) <= C(1^{g-1})` for all partitions of `g - 1`.
pub fn check_nesting(table: &BgwTable, g_max: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rep = CheckReport::new("nesting", CheckKind::Conjecture, format!("2 <= g <= {g_max}"));
    for g in 2..=g_max {
        let parts = partitions_of_genus(g);
        let vals = values(table, &parts)?;
        let lo = table.c(&[(g - 1) as u32])?;
        let hi = table.c(&vec![1; (g - 1) as usize])?;
        for (p, v) in parts.iter().zip(&vals) {
            rep.record(format!("({p})"), &lo <= v && v <= &hi, || {
                format!("C = {} outside [{}, {}]", format_sig(v, 12), format_sig(&lo, 12), format_sig(&hi, 12))
            });
        }
    }
    Ok(rep.finish(start))
}

/// Strict increase of `C` along the partition order in each genus.
pub fn check_monotone(table: &BgwTable, g_max: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rep = CheckReport::new("monotone", CheckKind::Conjecture, format!("2 <= g <= {g_max}"));
    for g in 2..=g_max {
        let parts = partitions_of_genus(g);
        let vals = values(table, &parts)?;
        for i in 1..parts.len() {
            debug_assert_eq!(order_cmp(&parts[i - 1], &parts[i])?, std::cmp::Ordering::Less);
            let ok = vals[i - 1] < vals[i];
            rep.record(format!("({}) < ({})", parts[i - 1], parts[i]), ok, || {
                format!("{} >= {}", format_sig(&vals[i - 1], 12), format_sig(&vals[i], 12))
            });
        }
    }
    Ok(rep.finish(start))
}

/// Brackets used by the integrality checks: each partition of `g - 1` and the
/// same with one `tau_0` inserted.
fn integrality_domain(g_max: u64) -> Vec<IndexVector> {
    let mut out = vec![IndexVector(vec![0]), IndexVector(vec![0, 0])];
    for g in 2..=g_max {
        for p in partitions_of_genus(g) {
            out.push(p.with(&[0]).sorted());
            out.push(p);
        }
    }
    out
}

/// Left-hand factor of the proved integrality statement with `d_n = dn`.
pub fn normalised_integrality_value(d: &[u32], dn: u32, b: &Rational) -> Rational {
    let g = crate::partitions::weight(d) as i64 + 1;
    let df = odd_double_factorial(dn as i64 + 1);
    let pre = if d.len() == 2 { int(g) } else { int(1) };
    pre * big(factorial(dn as u64)) * b / big(&df * &df * &df)
}

/// `2^{4g} <tau> / prod d_j!`.
pub fn divisibility_quotient_1(d: &[u32], bracket: &Rational) -> Rational {
    let g = crate::partitions::weight(d) as i64 + 1;
    let mut den = BigInt::one();
    for &x in d {
        den *= factorial(x as u64);
    }
    pow2(4 * g) * bracket / big(den)
}

/// `2^{4g} <tau> / (max (2d_j+1)!! prod_{p_r >= 1} (p_r - 1)!)`.
pub fn divisibility_quotient_2(d: &[u32], bracket: &Rational) -> Rational {
    let g = crate::partitions::weight(d) as i64 + 1;
    let top = d.iter().copied().max().unwrap_or(0);
    let mut den = odd_double_factorial(top as i64 + 1);
    for p in IndexVector(d.to_vec()).multiplicities() {
        if p >= 1 {
            den *= factorial(p as u64 - 1);
        }
    }
    pow2(4 * g) * bracket / big(den)
}

/// One theorem-level report followed by conjecture-level ones. The proved
/// statement needs `n >= 2`; single brackets appear only in the others. The
/// two divisibility statements are reported literally and with the power of
/// 2 ignored (`-odd`).
pub fn check_integrality(table: &BgwTable, g_max: u64) -> Result<Vec<CheckReport>> {
    let start = Instant::now();
    let range = format!("g <= {g_max}, entries >= 1 plus one tau_0");
    let mk = |name: &str, kind| CheckReport::new(name, kind, range.clone());
    let mut a = mk("integrality-normalised", CheckKind::Theorem);
    let mut dy = mk("integrality-dyadic", CheckKind::Conjecture);
    let mut b1 = mk("integrality-factorials", CheckKind::Conjecture);
    let mut b1o = mk("integrality-factorials-odd", CheckKind::Conjecture);
    let mut b2 = mk("integrality-multiplicities", CheckKind::Conjecture);
    let mut b2o = mk("integrality-multiplicities-odd", CheckKind::Conjecture);
    let dom = integrality_domain(g_max);
    let brackets: Vec<(Rational, Rational)> = dom
        .par_iter()
        .map(|d| Ok((table.b(d.entries())?, bracket(table, d.entries())?)))
        .collect::<Result<_>>()?;
    for (d, (b, br)) in dom.iter().zip(&brackets) {
        let e = d.entries();
        let mut seen = Vec::new();
        for &dn in e {
            if e.len() < 2 || seen.contains(&dn) {
                continue;
            }
            seen.push(dn);
            let v = normalised_integrality_value(e, dn, b);
            a.record(format!("({d}) with d_n = {dn}"), is_dyadic(&v), || format!("value {v}"));
        }
        let label = format!("({d})");
        dy.record(label.clone(), is_dyadic(br), || format!("<tau> = {br}"));
        let q1 = divisibility_quotient_1(e, br);
        b1.record(label.clone(), is_integer(&q1), || format!("quotient {q1}"));
        b1o.record(label.clone(), is_dyadic(&q1), || format!("quotient {q1}"));
        let q2 = divisibility_quotient_2(e, br);
        b2.record(label.clone(), is_integer(&q2), || format!("quotient {q2}"));
        b2o.record(label, is_dyadic(&q2), || format!("quotient {q2}"));
    }
    Ok([a, dy, b1, b1o, b2, b2o].into_iter().map(|r| r.finish(start)).collect())
}

// ---------------------------------------------------------------- cross oracles

/// `B(a, b, e^m)` windows keyed by `(e, m)` covering all partitions of weight
/// at most `w_max` with at most `m + 2` entries.
fn windows(w_max: u32, n_max: usize) -> Result<BTreeMap<(u32, u32), Vec<Vec<Rational>>>> {
    let mut keys = vec![(0u32, 0u32)];
    for m in 1..=n_max.saturating_sub(2) as u32 {
        for e in 1..=w_max / m {
            keys.push((e, m));
        }
    }
    let vals: Vec<_> = keys.par_iter().map(|&(e, m)| b_window(e, m, w_max, w_max)).collect::<Result<_>>()?;
    Ok(keys.into_iter().zip(vals).collect())
}

/// Splits `d` as `(a, b, e^m)` when the window routine applies.
fn window_split(d: &[u32]) -> Option<(u32, u32, u32, u32)> {
    match d.len() {
        2 => Some((d[0], d[1], 0, 0)),
        n if n >= 3 => {
            for i in 0..n {
                for j in i + 1..n {
                    let rest: Vec<u32> = (0..n).filter(|&k| k != i && k != j).map(|k| d[k]).collect();
                    if rest.iter().all(|&x| x == rest[0]) {
                        return Some((d[i], d[j], rest[0], rest.len() as u32));
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Exact agreement of the recursion with every closed-form evaluator that
/// applies, for partitions with `g <= g_max` and at most `n_max` parts.
pub fn check_cross(table: &BgwTable, g_max: u64, n_max: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rep = CheckReport::new("cross", CheckKind::Theorem, format!("g <= {g_max}, n <= {n_max}"));
    let w_max = (g_max - 1) as u32;
    let win = windows(w_max, n_max)?;
    let mut parts: Vec<IndexVector> = (1..=w_max)
        .flat_map(enumerate_partitions)
        .filter(|p| p.len() <= n_max)
        .collect();
    parts.sort_by(record_cmp);
    let rows: Vec<(IndexVector, Vec<(&'static str, Rational)>)> = parts
        .into_par_iter()
        .map(|p| {
            let e = p.entries();
            let di: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            let mut v = vec![("recursion", table.b(e)?)];
            for (_, val) in table.all_distinguished(e)? {
                v.push(("recursion-step", val));
            }
            v.push(("npoint", b_npoint(&di)?));
            match di.len() {
                1 => v.push(("onepoint", b_onepoint(di[0]))),
                2 => v.push(("twopoint", c_to_b(e, &c_twopoint(di[0], di[1])))),
                3 => v.push(("threepoint", b_threepoint([di[0], di[1], di[2]]))),
                4 => v.push(("fourpoint", b_fourpoint([di[0], di[1], di[2], di[3]]))),
                _ => {}
            }
            if let Some((a, b, d, m)) = window_split(e) {
                if let Some(w) = win.get(&(d, m)) {
                    v.push(("window", w[a as usize][b as usize].clone()));
                }
            }
            Ok((p, v))
        })
        .collect::<Result<_>>()?;
    for (p, v) in rows {
        let ok = v.iter().all(|(_, x)| x == &v[0].1);
        rep.record(format!("({p})"), ok, || {
            v.iter().map(|(k, x)| format!("{k} = {x}")).collect::<Vec<_>>().join(", ")
        });
    }
    Ok(rep.finish(start))
}

/// `C(d_1, d_2, d_3)` from the three-point formula.
pub fn c_threepoint(d: [u32; 3]) -> Rational {
    b_to_c(&d, &b_threepoint([d[0] as i64, d[1] as i64, d[2] as i64]))
}

/// Number of leading significant digits shared by `a` and `b`.
pub fn agreeing_digits(a: &Rational, b: &Rational, max: usize) -> usize {
    let t = |x: &Rational, k| format_with(x, k, Rounding::Truncate);
    (1..=max).take_while(|&k| t(a, k) == t(b, k)).last().unwrap_or(0)
}

// ---------------------------------------------------------------- bounds

/// Positivity, `C(d) >= C(|d|)` and `C(d) <= f(X, n)` for partitions with `X <= x_max`.
pub fn check_bounds(table: &BgwTable, x_max: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rep = CheckReport::new("bounds", CheckKind::Theorem, format!("X <= {x_max}"));
    let parts: Vec<IndexVector> = (1..=x_max).flat_map(partitions_with_x).collect();
    let rows: Vec<(IndexVector, Rational, bool, bool, bool)> = parts
        .into_par_iter()
        .map(|p| {
            let c = table.c(p.entries())?;
            let lower = c_onepoint(p.weight());
            let upper = f_bound(p.x(), p.len() as u64)?.admits(&c, PI_DEFAULT_DIGITS)?;
            Ok((p, c.clone(), c.is_positive(), c >= lower, upper))
        })
        .collect::<Result<_>>()?;
    for (p, c, pos, low, up) in rows {
        rep.record(format!("({p}) positive"), pos, || format!("C = {c}"));
        rep.record(format!("({p}) lower"), low, || format!("C = {}", format_sig(&c, 12)));
        rep.record(format!("({p}) upper"), up, || format!("C = {}", format_sig(&c, 12)));
    }
    Ok(rep.finish(start))
}

/// `max g |C(d) - 1/pi|` over partitions with `2 <= g <= g_max`, as an upper bound.
pub fn band_constant(table: &BgwTable, g_max: u64) -> Result<(Rational, IndexVector)> {
    let pi = pi_interval(40)?;
    let inv = pi.recip()?;
    let mut best: Option<(Rational, IndexVector)> = None;
    for g in 2..=g_max {
        let parts = partitions_of_genus(g);
        let vals = values(table, &parts)?;
        for (p, c) in parts.into_iter().zip(vals) {
            let iv = Interval::point(c).sub(&inv).scale(&int(g as i64));
            let bound = if iv.lo.abs() > iv.hi.abs() { iv.lo.abs() } else { iv.hi.abs() };
            if best.as_ref().map_or(true, |(b, _)| &bound > b) {
                best = Some((bound, p));
            }
        }
    }
    best.ok_or_else(|| Error::Precondition("empty range".into()))
}

// ---------------------------------------------------------------- intervals

#[derive(Debug, Clone, Serialize)]
pub struct IntervalRow {
    pub n: usize,
    pub x: u64,
    pub min: String,
    pub min_at: IndexVector,
    pub max: String,
    pub max_at: IndexVector,
    pub length: String,
    /// `min I_{g,n+1} - max I_{g,n}`.
    pub gap_to_next: Option<String>,
    pub min_at_expected: bool,
    pub max_at_expected: bool,
    pub gamma_minus_min: String,
    pub predicted_gamma_minus_min: String,
    pub gamma_minus_max: String,
    pub predicted_gamma_minus_max: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalStats {
    pub g: u64,
    pub rows: Vec<IntervalRow>,
    pub disjoint_and_ordered: bool,
    /// `g^3` times the largest interval length.
    pub scaled_max_length: String,
    /// `g^2` times the smallest gap.
    pub scaled_min_gap: String,
    #[serde(skip)]
    pub points: Vec<(usize, Rational)>,
}

impl IntervalStats {
    /// Plot data, one `g,n,C` line per partition.
    pub fn csv(&self) -> String {
        let mut s = String::from("g,n,C\n");
        for (n, c) in &self.points {
            s.push_str(&format!("{},{},{}\n", self.g, n, format_sig(c, 12)));
        }
        s
    }
}

impl fmt::Display for IntervalStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "g = {}: disjoint and ordered = {}, g^3 max length = {}, g^2 min gap = {}",
            self.g, self.disjoint_and_ordered, self.scaled_max_length, self.scaled_min_gap
        )?;
        writeln!(f, "n\tmin\tmax\tlength\tgap\tgamma-min (pred)\tgamma-max (pred)\tendpoints as expected")?;
        for r in &self.rows {
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}\t{} ({})\t{} ({})\t{}",
                r.n,
                r.min,
                r.max,
                r.length,
                r.gap_to_next.as_deref().unwrap_or("-"),
                r.gamma_minus_min,
                r.predicted_gamma_minus_min,
                r.gamma_minus_max,
                r.predicted_gamma_minus_max,
                r.min_at_expected && r.max_at_expected
            )?;
        }
        Ok(())
    }
}

fn interval_decimal(iv: &Interval, digits: usize) -> String {
    iv.decimal(digits).unwrap_or_else(|| format_sig(&iv.mid(), digits))
}

/// Endpoints, lengths and gaps of the intervals `I_{g,n}` with the
/// conjectured endpoint locations and asymptotics.
pub fn check_interval_stats(table: &BgwTable, g: u64) -> Result<IntervalStats> {
    if g < 2 {
        return Err(Error::Precondition(format!("interval statistics need g >= 2, got {g}")));
    }
    let pi = pi_interval(60)?;
    let parts = partitions_of_genus(g);
    let vals = values(table, &parts)?;
    let mut by_n: BTreeMap<usize, Vec<(IndexVector, Rational)>> = BTreeMap::new();
    for (p, v) in parts.into_iter().zip(vals) {
        by_n.entry(p.len()).or_default().push((p, v));
    }
    let mut rows = Vec::new();
    let mut ends: Vec<(Rational, Rational)> = Vec::new();
    let mut points = Vec::new();
    for (&n, list) in &by_n {
        let (min_at, min) = list.iter().min_by(|a, b| a.1.cmp(&b.1)).cloned().unwrap();
        let (max_at, max) = list.iter().max_by(|a, b| a.1.cmp(&b.1)).cloned().unwrap();
        points.extend(list.iter().map(|(_, v)| (n, v.clone())));
        let x = 2 * g - 2 + n as u64;
        let mut expect_min = vec![1u32; n - 1];
        expect_min.push((g - n as u64) as u32);
        let d = ((g - 1) / n as u64) as u32;
        let p = (d as u64 + 1) * n as u64 - g + 1;
        let mut expect_max = vec![d; p as usize];
        expect_max.extend(vec![d + 1; n - p as usize]);
        let gamma = gamma_exact(x).interval(&pi);
        let xr = int(x as i64);
        let pred_min = Interval::point(rat(27 * n as i64, 8) / xr.pow(4)).div(&pi)?;
        let df = odd_double_factorial(d as i64 + 1);
        let lead = big(&df * &df * &df) / (pow2(d as i64 + 1) * big(factorial(d as u64 + 1)));
        let pred_max = Interval::point(
            lead * int((d as i64 + 1) * n as i64 - g as i64) / xr.pow(2 * d as i32 + 2),
        )
        .div(&pi)?;
        rows.push(IntervalRow {
            n,
            x,
            min: format_sig(&min, 8),
            max: format_sig(&max, 8),
            length: format_sig(&(&max - &min), 4),
            gap_to_next: None,
            min_at_expected: min_at.sorted() == IndexVector(expect_min).sorted(),
            max_at_expected: max_at.sorted() == IndexVector(expect_max).sorted(),
            gamma_minus_min: interval_decimal(&gamma.add_rat(&-min.clone()), 4),
            predicted_gamma_minus_min: interval_decimal(&pred_min, 4),
            gamma_minus_max: interval_decimal(&gamma.add_rat(&-max.clone()), 4),
            predicted_gamma_minus_max: interval_decimal(&pred_max, 4),
            min_at,
            max_at,
        });
        ends.push((min, max));
    }
    let mut ordered = true;
    let mut max_len = Rational::zero();
    let mut min_gap: Option<Rational> = None;
    for i in 0..ends.len() {
        let len = &ends[i].1 - &ends[i].0;
        if len > max_len {
            max_len = len;
        }
        if i + 1 < ends.len() {
            let gap = &ends[i + 1].0 - &ends[i].1;
            ordered &= gap.is_positive();
            rows[i].gap_to_next = Some(format_sig(&gap, 4));
            if min_gap.as_ref().map_or(true, |m| &gap < m) {
                min_gap = Some(gap);
            }
        }
    }
    let gg = int(g as i64);
    Ok(IntervalStats {
        g,
        rows,
        disjoint_and_ordered: ordered,
        scaled_max_length: format_sig(&(max_len * gg.pow(3)), 4),
        scaled_min_gap: min_gap.map_or("-".into(), |m| format_sig(&(m * gg.pow(2)), 4)),
        points,
    })
}

// ---------------------------------------------------------------- closed forms

/// `C(g-1)` and `C(1^{g-1})`, the conjectured extremes in genus `g`.
pub fn genus_endpoints(g: u64) -> Result<(Rational, Rational)> {
    if g < 2 {
        return Err(Error::Precondition(format!("endpoints need g >= 2, got {g}")));
    }
    let small = c_onepoint(g - 1);
    let y = crate::painleve::y_g_seq(g)?;
    let yg = y.get(g).cloned().ok_or_else(|| Error::Consistency(format!("y_{g} missing")))?;
    let three = num_traits::pow(BigInt::from(3), (g - 1) as usize);
    let big_c = big(three * factorial(g - 1)) / big(factorial(3 * g - 2)) * yg;
    Ok((small, big_c))
}

/// `1 - Chat(d^n)` via the window routine, as a decimal enclosure.
pub fn power_deficit(d: u32, n: u32, digits: usize) -> Result<String> {
    let b = crate::resolvent::b_power(d, n)?;
    let key = vec![d; n as usize];
    let c = PiMultiple::rational(b_to_c(&key, &b));
    let x = n as u64 * (2 * d as u64 + 1);
    let r = Interval::resolve(digits, |pi| one_minus_chat(&c, x, pi))?;
    Ok(r)
}

// ---------------------------------------------------------------- numeric

/// Correctly rounded decimal of an exact value.
pub fn numeric(value: &PiMultiple, digits: usize) -> Result<String> {
    if value.pi_power != 0 && digits + 20 > PI_MAX_DIGITS {
        return Err(Error::Precision(format!("{digits} digits exceed the pi budget of {PI_MAX_DIGITS}")));
    }
    value.to_decimal(digits)
}

pub fn numeric_rational(value: &Rational, digits: usize) -> String {
    format_sig(value, digits)
}

// ---------------------------------------------------------------- cache

pub const CACHE_VERSION: u32 = 1;
const CACHE_MAGIC: &str = "bgw-cache";

/// Canonical text of the stored records.
pub fn cache_render(table: &BgwTable) -> String {
    let mut s = format!("{CACHE_MAGIC} version={CACHE_VERSION} x_max={}\n", table.x_max());
    for (d, v) in table.records() {
        s.push_str(&format!("B {} {}/{}\n", d, v.numer(), v.denom()));
    }
    s
}

pub fn cache_save(table: &BgwTable, path: &Path) -> Result<()> {
    std::fs::write(path, cache_render(table)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn cache_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::Cache(format!("line {line}: {msg}"))
}

fn parse_header(line: &str) -> Result<u64> {
    let mut it = line.split(' ');
    if it.next() != Some(CACHE_MAGIC) {
        return Err(cache_err(1, "missing bgw-cache header"));
    }
    let version = it.next().and_then(|s| s.strip_prefix("version=")).ok_or_else(|| cache_err(1, "missing version"))?;
    if version != CACHE_VERSION.to_string() {
        return Err(cache_err(1, format!("version {version}, expected {CACHE_VERSION}")));
    }
    let x = it
        .next()
        .and_then(|s| s.strip_prefix("x_max="))
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| cache_err(1, "missing x_max"))?;
    if it.next().is_some() {
        return Err(cache_err(1, "trailing fields in header"));
    }
    Ok(x)
}

fn parse_fraction(s: &str, line: usize) -> Result<Rational> {
    let (n, d) = s.split_once('/').ok_or_else(|| cache_err(line, format!("value {s:?} is not num/den")))?;
    let n: BigInt = n.parse().map_err(|_| cache_err(line, format!("bad numerator {n:?}")))?;
    let d: BigInt = d.parse().map_err(|_| cache_err(line, format!("bad denominator {d:?}")))?;
    if !d.is_positive() {
        return Err(cache_err(line, "denominator must be positive"));
    }
    if !n.gcd(&d).is_one() {
        return Err(cache_err(line, format!("{n}/{d} is not reduced")));
    }
    Ok(Rational::new_raw(n, d))
}

/// Parses cache text into a fresh table.
pub fn cache_parse(text: &str) -> Result<BgwTable> {
    let table = BgwTable::new();
    cache_parse_into(&table, text)?;
    Ok(table)
}

/// Parses cache text into `table`; returns the number of records.
pub fn cache_parse_into(table: &BgwTable, text: &str) -> Result<usize> {
    let mut lines = text.split('\n');
    let x_max = parse_header(lines.next().unwrap_or(""))?;
    let mut prev: Option<IndexVector> = None;
    let mut count = 0;
    let mut seed = false;
    let mut pending = Vec::new();
    for (i, line) in lines.enumerate() {
        let ln = i + 2;
        if line.is_empty() {
            continue;
        }
        let mut f = line.split(' ');
        if f.next() != Some("B") {
            return Err(cache_err(ln, "record must start with B"));
        }
        let (key, val) = match (f.next(), f.next(), f.next()) {
            (Some(k), Some(v), None) => (k, v),
            _ => return Err(cache_err(ln, "expected `B <d> <num>/<den>`")),
        };
        let d: IndexVector = key.parse().map_err(|e| cache_err(ln, e))?;
        if d.is_empty() || !d.is_partition() && d.0 != [0] {
            return Err(cache_err(ln, format!("({d}) is not a stored key")));
        }
        if d.len() > 1 && d.0.contains(&0) {
            return Err(cache_err(ln, format!("({d}) contains a zero")));
        }
        if let Some(p) = &prev {
            if record_cmp(p, &d) != std::cmp::Ordering::Less {
                return Err(cache_err(ln, format!("({d}) out of order after ({p})")));
            }
        }
        let v = parse_fraction(val, ln)?;
        if d.0 == [0] {
            if v != rat(1, 8) {
                return Err(cache_err(ln, format!("B(0) = {v}, must be 1/8")));
            }
            seed = true;
        }
        pending.push((d.clone(), v));
        prev = Some(d);
        count += 1;
    }
    if !seed {
        return Err(Error::Cache("missing seed record B 0 1/8".into()));
    }
    for (d, v) in pending {
        table.insert(d.0, v);
    }
    table.set_x_max(x_max.max(table.x_max()));
    Ok(count)
}

pub fn cache_load(path: &Path) -> Result<BgwTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    cache_parse(&text)
}

pub fn cache_load_into(table: &BgwTable, path: &Path) -> Result<usize> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    cache_parse_into(table, &text)
}
