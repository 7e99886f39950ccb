//! The charge-zero semi-infinite wedge space on a weight-truncated basis.
//!
//! Basis vectors are labelled by partitions; `v_lambda` has occupied set
//! `{lambda_k - k + 1/2}`. Half-integers are stored doubled.

use crate::arith::{factorial, frac, rat, Rational, Ring};
use crate::error::{precondition, Result};
use crate::partitions::{character_int, partitions_of, shifted_psum, Partition};
use crate::symmetric::{power_sum_in_schur, WeightedPolynomial};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// A half-integer `m`, stored as the odd integer `2m`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_doubled(d: i64) -> Result<HalfInt> {
        if d.rem_euclid(2) != 1 {
            return precondition(format!("{d}/2 is not a half-integer"));
        }
        Ok(HalfInt(d))
    }

    /// `k + 1/2`.
    pub fn plus_half(k: i64) -> HalfInt {
        HalfInt(2 * k + 1)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn value(self) -> Rational {
        frac(self.0, 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl FromStr for HalfInt {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<HalfInt> {
        let q = crate::arith::parse_rational(s)
            .ok_or_else(|| crate::Error::Precondition(format!("bad half-integer {s:?}")))?;
        let d = q * rat(2);
        if !d.is_integer() {
            return precondition(format!("{s} is not a half-integer"));
        }
        let d: i64 = d
            .to_integer()
            .try_into()
            .map_err(|_| crate::Error::Precondition("index out of range".into()))?;
        HalfInt::from_doubled(d)
    }
}

/// Top `depth` elements of the occupied set, doubled, in decreasing order.
pub fn maya(lambda: &Partition, depth: usize) -> Vec<i64> {
    (1..=depth as i64)
        .map(|k| 2 * (lambda.parts().get(k as usize - 1).copied().unwrap_or(0) as i64 - k) + 1)
        .collect()
}

/// Inverse of [`maya`]: everything below the listed elements is occupied.
pub fn from_maya(set: &[i64]) -> Partition {
    let mut s = set.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    Partition::from_parts(
        s.iter()
            .enumerate()
            .map(|(i, &m)| ((m - 1) / 2 + i as i64 + 1) as u32)
            .collect(),
    )
}

/// Finite combination of basis vectors `v_lambda` with `|lambda| <= cap`.
#[derive(Clone, PartialEq)]
pub struct FockVector<R: Ring = Rational> {
    terms: BTreeMap<Partition, R>,
    cap: u32,
}

impl<R: Ring> FockVector<R> {
    pub fn zero(cap: u32) -> Self {
        FockVector {
            terms: BTreeMap::new(),
            cap,
        }
    }

    pub fn vacuum(cap: u32) -> Self {
        Self::basis(Partition::empty(), cap)
    }

    pub fn basis(lambda: Partition, cap: u32) -> Self {
        let mut v = Self::zero(cap);
        v.add_term(lambda, R::one());
        v
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Adds `c v_lambda`; silently dropped above the cap.
    pub fn add_term(&mut self, lambda: Partition, c: R) {
        if c.is_zero() || lambda.size() > self.cap {
            return;
        }
        match self.terms.get_mut(&lambda) {
            Some(slot) => {
                *slot = slot.clone() + &c;
                if slot.is_zero() {
                    self.terms.remove(&lambda);
                }
            }
            None => {
                self.terms.insert(lambda, c);
            }
        }
    }

    pub fn coefficient(&self, lambda: &Partition) -> R {
        self.terms.get(lambda).cloned().unwrap_or_else(R::zero)
    }

    /// `<0| v`.
    pub fn vacuum_coefficient(&self) -> R {
        self.coefficient(&Partition::empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.cap.min(other.cap));
        for (l, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-R::one()))
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.cap);
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v.clone() * c);
        }
        out
    }

    pub fn with_cap(&self, cap: u32) -> Self {
        let mut out = Self::zero(cap);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.terms
                .iter()
                .map(|(l, c)| (l.to_string(), serde_json::Value::String(c.render())))
                .collect(),
        )
    }
}

impl<R: Ring> fmt::Debug for FockVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| format!("({}) v{:?}", c.render(), l))
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// `sum_m w(m) E_{m-n, m}` on a single basis vector; `m` is passed doubled.
/// For `n = 0` this is the normally ordered diagonal sum.
fn energy_on_basis(n: i64, lambda: &Partition, w: &dyn Fn(i64) -> Rational) -> Vec<(Partition, Rational)> {
    let depth = lambda.len() + n.unsigned_abs() as usize + 1;
    let s = maya(lambda, depth);
    let occupied: BTreeSet<i64> = s.iter().copied().collect();
    let bottom = *s.last().unwrap();
    if n == 0 {
        let mut ev = Rational::zero();
        for &m in &s {
            if m > 0 {
                ev += w(m);
            }
        }
        let mut m = -1;
        while m > bottom {
            if !occupied.contains(&m) {
                ev -= w(m);
            }
            m -= 2;
        }
        return if ev.is_zero() { vec![] } else { vec![(lambda.clone(), ev)] };
    }
    let mut out = Vec::new();
    for &m in &s {
        let t = m - 2 * n;
        if t <= bottom || occupied.contains(&t) {
            continue;
        }
        let c = w(m);
        if c.is_zero() {
            continue;
        }
        let (lo, hi) = if t < m { (t, m) } else { (m, t) };
        let between = occupied.range(lo + 1..hi).count();
        let next: Vec<i64> = s.iter().map(|&x| if x == m { t } else { x }).collect();
        let sign = if between.is_multiple_of(2) { c } else { -c };
        out.push((from_maya(&next), sign));
    }
    out
}

fn apply_weighted<R: Ring>(n: i64, v: &FockVector<R>, w: &dyn Fn(i64) -> Rational) -> FockVector<R> {
    let mut out = FockVector::zero(v.cap);
    for (lambda, c) in &v.terms {
        if (lambda.size() as i64) < n {
            continue;
        }
        for (mu, k) in energy_on_basis(n, lambda, w) {
            out.add_term(mu, c.scale(&k));
        }
    }
    out
}

/// `E_{ij} v`.
pub fn apply_eij<R: Ring>(i: HalfInt, j: HalfInt, v: &FockVector<R>) -> FockVector<R> {
    let n2 = j.0 - i.0;
    let jd = j.0;
    apply_weighted(n2 / 2, v, &move |m| if m == jd { rat(1) } else { rat(0) })
}

/// `alpha_k = sum_m E_{m-k, m}`.
pub fn apply_alpha<R: Ring>(k: i64, v: &FockVector<R>) -> Result<FockVector<R>> {
    if k == 0 {
        return precondition("alpha_0 is not a ribbon operator");
    }
    Ok(apply_weighted(k, v, &|_| rat(1)))
}

/// `[z^a] E~_n(z) = sum_m (m - n/2)^a / a! E_{m-n, m}` (normally ordered, no
/// constant term for `n = 0`).
pub fn apply_etilde<R: Ring>(n: i64, a: u32, v: &FockVector<R>) -> FockVector<R> {
    let af = factorial(a as u64);
    apply_weighted(n, v, &move |m| num_traits::pow(frac(m - n, 2), a as usize) / &af)
}

/// `F_{r+1}` through its eigenvalue `p_{r+1}(lambda) / (r+1)!`.
pub fn apply_f<R: Ring>(r: u32, v: &FockVector<R>) -> FockVector<R> {
    let af = factorial(r as u64 + 1);
    let mut out = FockVector::zero(v.cap);
    for (lambda, c) in &v.terms {
        out.add_term(lambda.clone(), c.scale(&(shifted_psum(r + 1, lambda) / &af)));
    }
    out
}

/// `<prod alpha_{mu_i} F_{r+1}^s prod alpha_{-nu_j}> / (prod mu_i prod nu_j)`.
pub fn vev_fock(r: u32, s: u32, mu: &Partition, nu: &Partition) -> Result<Rational> {
    if mu.size() != nu.size() {
        return precondition(format!("|{mu:?}| != |{nu:?}|"));
    }
    let cap = mu.size();
    let mut v: FockVector<Rational> = FockVector::vacuum(cap);
    for &k in nu.parts() {
        v = apply_alpha(-(k as i64), &v)?;
    }
    for _ in 0..s {
        v = apply_f(r, &v);
    }
    for &k in mu.parts() {
        v = apply_alpha(k as i64, &v)?;
    }
    let norm = Rational::from_integer(mu.product() * nu.product());
    Ok(v.vacuum_coefficient() / norm)
}

/// `v_lambda -> s_lambda`, extended linearly.
pub fn fock_to_poly<R: Ring>(v: &FockVector<R>) -> WeightedPolynomial<R> {
    let mut out = WeightedPolynomial::zero();
    for (lambda, c) in &v.terms {
        for mu in partitions_of(lambda.size()) {
            let chi = character_int(lambda, &mu).expect("sizes agree");
            if chi != 0 {
                let k = rat(chi) / Rational::from_integer(mu.z());
                out.add_term(mu, c.scale(&k));
            }
        }
    }
    out
}

/// Inverse of [`fock_to_poly`]: `p_mu -> sum_lambda chi^lambda_mu v_lambda`.
pub fn poly_to_fock<R: Ring>(f: &WeightedPolynomial<R>, cap: u32) -> FockVector<R> {
    let mut out = FockVector::zero(cap);
    for (mu, c) in f.terms() {
        for (lambda, chi) in power_sum_in_schur(mu) {
            out.add_term(lambda, c.scale(&chi));
        }
    }
    out
}
