use super::{format_rational, rat, Rational, Ring};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Multivariate Laurent polynomial over the rationals.
///
/// Variables are indexed from zero. Exponent vectors are stored with trailing
/// zeros trimmed, so equal monomials always have equal keys.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<i32>, Rational>,
}

fn trim(mut e: Vec<i32>) -> Vec<i32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_at(e: &[i32], i: usize) -> i32 {
    e.get(i).copied().unwrap_or(0)
}

fn add_exps(a: &[i32], b: &[i32]) -> Vec<i32> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| exp_at(a, i) + exp_at(b, i)).collect())
}

impl Poly {
    pub fn constant(q: Rational) -> Self {
        Self::monomial(vec![], q)
    }

    pub fn monomial(exps: Vec<i32>, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exps), coeff);
        }
        Poly { terms }
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    /// `x_i^k`, with `k` possibly negative.
    pub fn var_pow(i: usize, k: i32) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = k;
        Self::monomial(e, Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rational {
        self.terms
            .get(&trim(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exps: Vec<i32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = trim(exps);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_empty())
    }

    /// Largest exponent of `x_i` present, `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| exp_at(e, i)).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| exp_at(e, i)).min()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Number of variables mentioned (one past the highest index used).
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Part of total degree exactly `deg`.
    pub fn homogeneous_part(&self, deg: i32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i32>() == deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `x_i^k`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, i: usize, k: i32) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if exp_at(e, i) == k {
                let mut e = e.clone();
                if i < e.len() {
                    e[i] = 0;
                }
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Drop all terms with `x_i` exponent above `max`.
    pub fn truncate_var(&self, i: usize, max: i32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| exp_at(e, i) <= max)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let x = point.get(i).cloned().unwrap_or_else(Rational::zero);
                t *= pow_signed(&x, k);
            }
            acc += t;
        }
        acc
    }

    /// Replace `x_i` by `value`. Negative powers of `x_i` require `value` to be
    /// a single monomial.
    pub fn substitute(&self, i: usize, value: &Poly) -> Poly {
        let mut powers: BTreeMap<i32, Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let k = exp_at(e, i);
            let p = powers
                .entry(k)
                .or_insert_with(|| value.pow_signed(k))
                .clone();
            let mut rest = e.clone();
            if i < rest.len() {
                rest[i] = 0;
            }
            out = out + &(Poly::monomial(rest, c.clone()) * &p);
        }
        out
    }

    fn pow_signed(&self, k: i32) -> Poly {
        if k >= 0 {
            return Ring::pow(self, k as u32);
        }
        assert!(
            self.terms.len() == 1,
            "negative power of a non-monomial polynomial"
        );
        let (e, c) = self.terms.iter().next().unwrap();
        let e: Vec<i32> = e.iter().map(|x| x * k).collect();
        Poly::monomial(e, pow_signed(c, k))
    }

    /// Map every exponent vector through `f`; colliding terms are summed.
    pub fn map_exponents(&self, f: impl Fn(&[i32]) -> Vec<i32>) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * q))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor` for polynomials with nonnegative
    /// exponents. On failure returns the leading monomial of the remainder
    /// that the divisor could not absorb.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, Vec<i32>> {
        let (lead_e, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(Vec::new)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let n = e.len().max(lead_e.len());
            let diff: Vec<i32> = (0..n).map(|i| exp_at(&e, i) - exp_at(&lead_e, i)).collect();
            if diff.iter().any(|&d| d < 0) || e.iter().any(|&d| d < 0) {
                return Err(e);
            }
            let t = Poly::monomial(diff, c / &lead_c);
            rem = rem - &(divisor.clone() * &t);
            quot = quot + &t;
        }
        Ok(quot)
    }

    /// Render with the given variable names (`x0`, `x1`, ... beyond the list).
    pub fn render_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = names
                    .get(i)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{i}"));
                mono.push(if k == 1 { name } else { format!("{name}^{k}") });
            }
            let c_txt = format_rational(c);
            let term = if mono.is_empty() {
                c_txt
            } else if c.is_one() {
                mono.join("*")
            } else if (-c).is_one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", c_txt, mono.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn pow_signed(x: &Rational, k: i32) -> Rational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with(&[]))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_with(&[]))
    }
}

impl<'a> Add<&'a Poly> for Poly {
    type Output = Poly;
    fn add(mut self, rhs: &'a Poly) -> Poly {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
        self
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self + &rhs
    }
}

impl<'a> Sub<&'a Poly> for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: &'a Poly) -> Poly {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self - &rhs
    }
}

impl<'a> Mul<&'a Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl From<Rational> for Poly {
    fn from(q: Rational) -> Self {
        Poly::constant(q)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::constant(rat(n))
    }
}

impl Ring for Poly {
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(q.clone())
    }

    fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        Poly::scale(self, q)
    }

    fn render(&self) -> String {
        self.render_with(&[])
    }
}

/// True when every coefficient is an integer.
#[cfg(test)]
pub(crate) fn has_integer_coefficients(p: &Poly) -> bool {
    p.terms.values().all(|c| c.is_integer())
}

/// True when every coefficient is strictly positive.
#[cfg(test)]
pub(crate) fn all_positive(p: &Poly) -> bool {
    p.terms.values().all(num_traits::Signed::is_positive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn arithmetic_and_render() {
        let p = (x() + &y()) * &(x() - &y());
        assert_eq!(p, x() * &x() - &(y() * &y()));
        assert_eq!(p.render_with(&["a", "b"]), "-b^2 + a^2");
        assert_eq!(Poly::zero().render(), "0");
    }

    #[test]
    fn exact_division() {
        let a = x() * &x() * &y() + &(x() * &y() * &y());
        let q = a.exact_div(&(x() + &y())).unwrap();
        assert_eq!(q, x() * &y());
        let err = (x() + &Poly::one()).exact_div(&y()).unwrap_err();
        assert_eq!(err, vec![1]);
    }

    #[test]
    fn substitute_and_eval() {
        let p = x() * &x() + &y().scale(&frac(1, 2));
        let s = p.substitute(0, &(y() + &Poly::one()));
        assert_eq!(s.eval(&[rat(0), rat(2)]), rat(10));
        assert_eq!(p.eval(&[rat(3), rat(4)]), rat(11));
        let laurent = Poly::var_pow(0, -2) * &x();
        assert_eq!(laurent, Poly::var_pow(0, -1));
        assert_eq!(laurent.eval(&[rat(4)]), frac(1, 4));
    }

    #[test]
    fn degree_queries() {
        let p = x() * &x() * &y() + &Poly::from(3);
        assert_eq!(p.degree_in(0), Some(2));
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p.coefficient_in(0, 2), y());
        assert_eq!(p.homogeneous_part(0), Poly::from(3));
        assert!(has_integer_coefficients(&p));
        assert!(all_positive(&p));
    }
}
