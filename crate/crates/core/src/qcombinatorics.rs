//! Kostant's partition function, its q-analog, Lusztig's q-analog of weight
//! multiplicity and two routes to ordinary weight multiplicities (the
//! alternating Weyl sum and Freudenthal's recursion).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use core::sync::atomic::{AtomicBool, Ordering};

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use spin::Mutex;

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::rootdata::RootDatum;

/// Integer polynomial in the grading variable `q`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QPolynomial {
    coeffs: BTreeMap<u32, i64>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c q^degree`.
    pub fn monomial(degree: u32, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    /// Builds from dense coefficients, lowest degree first.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (d, &c) in coeffs.iter().enumerate() {
            p.add_term(d as u32, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: u32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(degree).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: u32) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Non-zero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut p = Self::zero();
        for (d, c) in self.terms() {
            p.add_term(d, c * k);
        }
        p
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c);
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out += &-rhs;
        out
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        self.scaled(-1)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (da, ca) in self.terms() {
            for (db, cb) in rhs.terms() {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match d {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Memo table for the q-partition function of one root datum, keyed by
/// simple-root coordinates. Entries are written once and never change, so a
/// duplicate insertion from a racing thread is harmless.
#[derive(Debug)]
pub struct PartitionCache {
    enabled: AtomicBool,
    table: Mutex<BTreeMap<Vec<i64>, QPolynomial>>,
}

impl Default for PartitionCache {
    fn default() -> Self {
        PartitionCache { enabled: AtomicBool::new(true), table: Mutex::new(BTreeMap::new()) }
    }
}

impl Clone for PartitionCache {
    fn clone(&self) -> Self {
        PartitionCache {
            enabled: AtomicBool::new(self.is_enabled()),
            table: Mutex::new(self.table.lock().clone()),
        }
    }
}

impl PartitionCache {
    pub fn is_enabled(&self) -> bool {
        self.enabled.load(Ordering::Acquire)
    }

    pub fn set_enabled(&self, enabled: bool) {
        self.enabled.store(enabled, Ordering::Release);
        if !enabled {
            self.table.lock().clear();
        }
    }

    pub fn len(&self) -> usize {
        self.table.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of all stored entries, for persistence.
    pub fn entries(&self) -> Vec<(Vec<i64>, QPolynomial)> {
        self.table.lock().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    /// Seeds the table; ignored while the cache is disabled.
    pub fn extend(&self, entries: impl IntoIterator<Item = (Vec<i64>, QPolynomial)>) {
        if !self.is_enabled() {
            return;
        }
        let mut table = self.table.lock();
        for (k, v) in entries {
            table.entry(k).or_insert(v);
        }
    }

    fn get(&self, key: &[i64]) -> Option<QPolynomial> {
        if !self.is_enabled() {
            return None;
        }
        self.table.lock().get(key).cloned()
    }
}

/// `P_q(λ)`: coefficient of `q^n` counts the ways of writing `λ` as a sum of
/// exactly `n` positive roots (with repetition). Zero off the non-negative
/// root cone.
pub fn kostant_partition_q(datum: &RootDatum, lam: &Weight) -> QPolynomial {
    match datum.simple_root_coords(lam) {
        Some(c) if c.iter().all(|&x| x >= 0) => partition_q_by_coords(datum, &c),
        _ => QPolynomial::zero(),
    }
}

/// `P(λ) = P_q(λ)|_{q=1}`.
pub fn kostant_partition(datum: &RootDatum, lam: &Weight) -> i64 {
    kostant_partition_q(datum, lam).eval_at_one()
}

fn partition_q_by_coords(datum: &RootDatum, target: &[i64]) -> QPolynomial {
    let cache = &datum.partitions;
    if let Some(hit) = cache.get(target) {
        return hit;
    }
    // Dynamic programming over the box 0 <= ν <= target: process positive
    // roots one at a time, T(ν) += q T(ν - β), ascending in ν.
    let dims: Vec<usize> = target.iter().map(|&t| t as usize + 1).collect();
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let size: usize = dims.iter().product();
    let mut table: Vec<Vec<i64>> = vec![Vec::new(); size];
    table[0] = vec![1];
    let mut nu = vec![0i64; dims.len()];
    for beta in datum.positive_root_coords() {
        if beta.iter().zip(target).any(|(b, t)| b > t) {
            continue;
        }
        let offset: usize = beta.iter().zip(&strides).map(|(&b, &s)| b as usize * s).sum();
        for (idx, coord) in (0..size).zip(MixedRadix::new(&dims, &mut nu)) {
            if coord.iter().zip(beta).any(|(n, b)| n < b) {
                continue;
            }
            let (lower, upper) = table.split_at_mut(idx);
            let src = &lower[idx - offset];
            let dst = &mut upper[0];
            if dst.len() < src.len() + 1 {
                dst.resize(src.len() + 1, 0);
            }
            for (d, &c) in src.iter().enumerate() {
                dst[d + 1] += c;
            }
        }
    }
    let result = QPolynomial::from_dense(&table[size - 1]);
    if cache.is_enabled() {
        let mut entries = Vec::with_capacity(size);
        let mut coord = vec![0i64; dims.len()];
        for (dense, c) in table.iter().zip(MixedRadix::new(&dims, &mut coord)) {
            entries.push((c.to_vec(), QPolynomial::from_dense(dense)));
        }
        cache.extend(entries);
    }
    result
}

/// Iterates over a box in row-major order, yielding the current coordinate.
struct MixedRadix<'a> {
    dims: &'a [usize],
    cur: &'a mut Vec<i64>,
    started: bool,
    done: bool,
}

impl<'a> MixedRadix<'a> {
    fn new(dims: &'a [usize], cur: &'a mut Vec<i64>) -> Self {
        cur.iter_mut().for_each(|c| *c = 0);
        MixedRadix { dims, cur, started: false, done: false }
    }
}

impl Iterator for MixedRadix<'_> {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.cur.clone());
        }
        for i in (0..self.dims.len()).rev() {
            self.cur[i] += 1;
            if (self.cur[i] as usize) < self.dims[i] {
                return Some(self.cur.clone());
            }
            self.cur[i] = 0;
        }
        self.done = true;
        None
    }
}

/// `w(λ+ρ) - (μ+ρ)` for every Weyl element, paired with its sign.
fn shifted_arguments<'a>(
    datum: &'a RootDatum,
    lam: &Weight,
    mu: &Weight,
) -> impl Iterator<Item = (i64, Weight)> + 'a {
    let lam_rho = &lam.scaled(2) + datum.two_rho();
    let mu_rho = &mu.scaled(2) + datum.two_rho();
    datum.weyl_group().iter().map(move |w| {
        let doubled = &w.apply(&lam_rho) - &mu_rho;
        let arg = doubled.halved().expect("w(λ+ρ) - (μ+ρ) is integral");
        (w.sign(), arg)
    })
}

fn check_pair(datum: &RootDatum, lam: &Weight, mu: &Weight) -> Result<()> {
    for w in [lam, mu] {
        if w.rank() != datum.rank() {
            return Err(Error::RankMismatch { context: "weight", expected: datum.rank(), found: w.rank() });
        }
    }
    if !datum.is_dominant(lam) {
        return Err(Error::NotDominant(lam.clone()));
    }
    Ok(())
}

/// Lusztig's q-analog `M_q(λ, μ) = Σ_w (-1)^{ℓ(w)} P_q(w(λ+ρ) - (μ+ρ))`.
pub fn lusztig_mq(datum: &RootDatum, lam: &Weight, mu: &Weight) -> Result<QPolynomial> {
    check_pair(datum, lam, mu)?;
    let mut out = QPolynomial::zero();
    for (sign, arg) in shifted_arguments(datum, lam, mu) {
        let p = kostant_partition_q(datum, &arg);
        if !p.is_zero() {
            out += &p.scaled(sign);
        }
    }
    Ok(out)
}

/// Weight multiplicity through the alternating sum over the Weyl group.
pub fn weyl_multiplicity(datum: &RootDatum, lam: &Weight, mu: &Weight) -> Result<i64> {
    check_pair(datum, lam, mu)?;
    Ok(shifted_arguments(datum, lam, mu)
        .map(|(sign, arg)| sign * kostant_partition(datum, &arg))
        .sum())
}

/// Weight multiplicity through Freudenthal's recursion.
pub fn freudenthal_multiplicity(datum: &RootDatum, lam: &Weight, mu: &Weight) -> Result<i64> {
    check_pair(datum, lam, mu)?;
    Ok(FreudenthalTable::new(datum, lam)?.multiplicity(mu))
}

/// Freudenthal's recursion for one highest weight, memoised over dominant
/// weights.
pub struct FreudenthalTable<'a> {
    datum: &'a RootDatum,
    lam: Weight,
    lam_norm: Rational64,
    memo: BTreeMap<Weight, i64>,
}

impl<'a> FreudenthalTable<'a> {
    pub fn new(datum: &'a RootDatum, lam: &Weight) -> Result<Self> {
        if !datum.is_dominant(lam) {
            return Err(Error::NotDominant(lam.clone()));
        }
        let lam_norm = datum.inner_product(lam, lam);
        let mut memo = BTreeMap::new();
        memo.insert(lam.clone(), 1);
        Ok(FreudenthalTable { datum, lam: lam.clone(), lam_norm, memo })
    }

    pub fn multiplicity(&mut self, mu: &Weight) -> i64 {
        let dom = self.datum.dominant_conjugate(mu);
        self.dominant_multiplicity(&dom)
    }

    fn below_top(&self, w: &Weight) -> bool {
        self.datum.dominates(&self.lam, w)
    }

    fn dominant_multiplicity(&mut self, mu: &Weight) -> i64 {
        if let Some(&m) = self.memo.get(mu) {
            return m;
        }
        if !self.below_top(mu) {
            return 0;
        }
        let datum = self.datum;
        // m(μ) [(λ+ρ)² - (μ+ρ)²] = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα) (μ+kα, α)
        let diff = &self.lam - mu;
        let denom = self.lam_norm - datum.inner_product(mu, mu) + datum.inner_product(&diff, datum.two_rho());
        debug_assert!(denom.is_positive());
        let mut rhs = Rational64::zero();
        for alpha in datum.positive_roots() {
            let mut nu = mu + alpha;
            while self.below_top(&nu) {
                let dom = datum.dominant_conjugate(&nu);
                let m = self.dominant_multiplicity(&dom);
                if m != 0 {
                    rhs += Rational64::from_integer(m) * datum.inner_product(&nu, alpha);
                }
                nu += alpha;
            }
        }
        let value = Rational64::from_integer(2) * rhs / denom;
        debug_assert!(value.is_integer());
        let m = value.to_integer();
        self.memo.insert(mu.clone(), m);
        m
    }
}
