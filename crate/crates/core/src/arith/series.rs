use super::{univariate, LinearForm, Rational, Ring};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

const MAX_VARS: usize = 8;
const MAX_CAP: u32 = 127;

/// Exponent vector packed into eight bytes, one per variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exponents(e: &[u32]) -> Monomial {
        assert!(e.len() <= MAX_VARS);
        let mut m = 0u64;
        for (i, &k) in e.iter().enumerate() {
            assert!(k <= MAX_CAP);
            m |= (k as u64) << (8 * i);
        }
        Monomial(m)
    }

    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    fn without(self, i: usize) -> Monomial {
        Monomial(self.0 & !(0xffu64 << (8 * i)))
    }

    fn divides(self, other: Monomial, nvars: usize) -> bool {
        (0..nvars).all(|i| self.exponent(i) <= other.exponent(i))
    }

    fn over(self, other: Monomial) -> Monomial {
        Monomial(self.0 - other.0)
    }
}

/// Named variables with per-variable exponent caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpace {
    names: Vec<String>,
    caps: Vec<u32>,
}

impl SeriesSpace {
    pub fn new(names: Vec<String>, caps: Vec<u32>) -> Result<Arc<SeriesSpace>> {
        if names.len() != caps.len() {
            return Err(Error::Config("one cap per variable required".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::Config(format!("at most {MAX_VARS} series variables")));
        }
        if let Some(c) = caps.iter().find(|&&c| c > MAX_CAP) {
            return Err(Error::Config(format!("cap {c} exceeds {MAX_CAP}")));
        }
        Ok(Arc::new(SeriesSpace { names, caps }))
    }

    /// Variables `prefix1 .. prefixN`, all with the same cap.
    pub fn uniform(prefix: &str, n: usize, cap: u32) -> Result<Arc<SeriesSpace>> {
        Self::new(
            (1..=n).map(|i| format!("{prefix}{i}")).collect(),
            vec![cap; n],
        )
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn within(&self, m: Monomial) -> bool {
        self.caps
            .iter()
            .enumerate()
            .all(|(i, &c)| m.exponent(i) <= c)
    }

    pub fn render_monomial(&self, m: Monomial) -> String {
        let parts: Vec<String> = (0..self.nvars())
            .filter(|&i| m.exponent(i) > 0)
            .map(|i| format!("{}^{}", self.names[i], m.exponent(i)))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Truncated multivariate power series over a ring `R`.
///
/// Terms above a variable's cap are discarded by every operation.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring = Rational> {
    space: Arc<SeriesSpace>,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(space: &Arc<SeriesSpace>) -> Self {
        TruncatedSeries {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<SeriesSpace>, c: R) -> Self {
        let mut s = Self::zero(space);
        s.add_term(Monomial::ONE, c);
        s
    }

    pub fn one(space: &Arc<SeriesSpace>) -> Self {
        Self::constant(space, R::one())
    }

    pub fn var(space: &Arc<SeriesSpace>, i: usize) -> Self {
        let mut e = vec![0; space.nvars()];
        e[i] = 1;
        let mut s = Self::zero(space);
        s.add_term(Monomial::from_exponents(&e), R::one());
        s
    }

    pub fn from_linear(space: &Arc<SeriesSpace>, l: &LinearForm<R>) -> Result<Self> {
        let mut s = Self::zero(space);
        for (i, c) in l.iter() {
            if i >= space.nvars() {
                return Err(Error::Config(format!("unknown series variable index {i}")));
            }
            let mut e = vec![0; space.nvars()];
            e[i] = 1;
            s.add_term(Monomial::from_exponents(&e), c.clone());
        }
        Ok(s)
    }

    pub fn space(&self) -> &Arc<SeriesSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &R)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() || !self.space.within(m) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = slot.clone() + &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coefficient_of(&self, exps: &[u32]) -> R {
        if exps.len() > self.space.nvars() || exps.iter().any(|&k| k > MAX_CAP) {
            return R::zero();
        }
        self.terms
            .get(&Monomial::from_exponents(exps))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(R::zero)
    }

    fn check_space(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.space, &other.space) || self.space == other.space,
            "series from different spaces"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_space(other);
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(&m, c)| (m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_space(other);
        let mut out = Self::zero(&self.space);
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca.clone() * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(&self.space);
        for (&m, v) in &self.terms {
            out.add_term(m, v.clone() * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.space);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree bound of any retained monomial.
    fn max_total_degree(&self) -> usize {
        self.space.caps.iter().map(|&c| c as usize).sum()
    }

    /// `sum_j coeffs[j] * g^j` for `g` without constant term.
    pub fn compose(coeffs: &[R], g: &Self) -> Self {
        let mut out = Self::zero(&g.space);
        let mut power = Self::one(&g.space);
        for c in coeffs {
            if power.is_zero() {
                break;
            }
            if !c.is_zero() {
                out = out.add(&power.scale(c));
            }
            power = power.mul(g);
        }
        out
    }

    /// Replace variable `i` by the linear form `l`.
    pub fn substitute(&self, i: usize, l: &LinearForm<R>) -> Result<Self> {
        let lin = Self::from_linear(&self.space, l)?;
        let mut by_power: BTreeMap<u32, Self> = BTreeMap::new();
        for (&m, c) in &self.terms {
            by_power
                .entry(m.exponent(i))
                .or_insert_with(|| Self::zero(&self.space))
                .add_term(m.without(i), c.clone());
        }
        let mut out = Self::zero(&self.space);
        for (k, part) in by_power {
            out = out.add(&part.mul(&lin.pow(k)));
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self
            .constant_term()
            .as_rational()
            .filter(|q| !num_traits::Zero::is_zero(q))
            .ok_or_else(|| Error::InexactDivision("1 (constant term not invertible)".into()))?;
        let inv0 = R::from_rational(&c0.recip());
        // self = c0 (1 + h)
        let mut h = self.scale(&inv0);
        h.add_term(Monomial::ONE, -R::one());
        let mut out = Self::one(&self.space);
        let mut power = Self::one(&self.space);
        for _ in 0..self.max_total_degree() {
            power = power.mul(&h).neg();
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out.scale(&inv0))
    }

    /// Exact quotient by `divisor = monomial * unit`.
    ///
    /// The quotient lives in a space whose caps are lowered by the divisor's
    /// monomial factor, which is where it is fully determined.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.check_space(divisor);
        let n = self.space.nvars();
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero series".into()));
        }
        let mins: Vec<u32> = (0..n)
            .map(|i| divisor.terms.keys().map(|m| m.exponent(i)).min().unwrap())
            .collect();
        let lead = Monomial::from_exponents(&mins);
        let unit_lead = divisor.terms.get(&lead).and_then(|c| c.as_rational());
        if unit_lead.is_none_or(|c| num_traits::Zero::is_zero(&c)) {
            return Err(Error::InexactDivision(format!(
                "{} (divisor is not a monomial times a unit)",
                self.space.render_monomial(*divisor.terms.keys().next().unwrap())
            )));
        }
        for &m in self.terms.keys() {
            if !lead.divides(m, n) {
                return Err(Error::InexactDivision(self.space.render_monomial(m)));
            }
        }
        let caps: Vec<u32> = (0..n).map(|i| self.space.caps[i] - mins[i]).collect();
        let reduced = SeriesSpace::new(self.space.names.clone(), caps)?;
        let shift = |s: &Self| {
            let mut out = Self::zero(&reduced);
            for (&m, c) in &s.terms {
                out.add_term(m.over(lead), c.clone());
            }
            out
        };
        let num = shift(self);
        let unit = shift(divisor);
        Ok(num.mul(&unit.inverse()?))
    }

    /// Re-express in another space; `map[i]` is the target index of variable `i`.
    pub fn embed(&self, target: &Arc<SeriesSpace>, map: &[usize]) -> Self {
        let mut out = Self::zero(target);
        for (&m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &j) in map.iter().enumerate() {
                e[j] += m.exponent(i);
            }
            if e.iter().all(|&k| k <= MAX_CAP) {
                out.add_term(Monomial::from_exponents(&e), c.clone());
            }
        }
        out
    }

    /// JSON object from monomial strings to coefficient strings.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(&m, c)| (self.space.render_monomial(m), serde_json::Value::String(c.render())))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&m, c)| format!("({})*{}", c.render(), self.space.render_monomial(m)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Total degree of `l` within the space, checked against the variable list.
fn linear_degree<R: Ring>(space: &SeriesSpace, l: &LinearForm<R>) -> Result<usize> {
    let mut d = 0;
    for i in l.variables() {
        let cap = space
            .caps
            .get(i)
            .ok_or_else(|| Error::Config(format!("unknown series variable index {i}")))?;
        d += *cap as usize;
    }
    Ok(d)
}

/// `e^{L/2} - e^{-L/2}` truncated at the caps of `space`.
pub fn zeta_series<R: Ring>(l: &LinearForm<R>, space: &Arc<SeriesSpace>) -> Result<TruncatedSeries<R>> {
    let deg = linear_degree(space, l)?;
    let lin = TruncatedSeries::from_linear(space, l)?;
    let coeffs = univariate::zeta(&R::one(), deg);
    Ok(TruncatedSeries::compose(&coeffs, &lin))
}

/// `zeta(n t) / zeta(t)` with `t` replaced by `L`; `n` may be symbolic.
pub fn zeta_ratio<R: Ring>(n: &R, l: &LinearForm<R>, space: &Arc<SeriesSpace>) -> Result<TruncatedSeries<R>> {
    let deg = linear_degree(space, l)?;
    let lin = TruncatedSeries::from_linear(space, l)?;
    let coeffs = univariate::zeta_ratio(n, deg);
    Ok(TruncatedSeries::compose(&coeffs, &lin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat, Poly};

    fn z(n: usize, cap: u32) -> Arc<SeriesSpace> {
        SeriesSpace::uniform("z", n, cap).unwrap()
    }

    #[test]
    fn zeta_examples() {
        let sp = z(1, 5);
        let s = zeta_series(&LinearForm::<Rational>::var(0), &sp).unwrap();
        assert_eq!(s.coefficient_of(&[1]), rat(1));
        assert_eq!(s.coefficient_of(&[3]), frac(1, 24));
        assert_eq!(s.coefficient_of(&[5]), frac(1, 1920));
        assert_eq!(s.terms().count(), 3);
        assert!(zeta_series(&LinearForm::<Rational>::zero(), &sp).unwrap().is_zero());

        let sp2 = z(2, 3);
        let s = zeta_series(&LinearForm::<Rational>::sum_of([0, 1]), &sp2).unwrap();
        assert_eq!(s.coefficient_of(&[1, 2]), frac(1, 8));
    }

    #[test]
    fn unknown_variable_is_config_error() {
        let sp = z(1, 3);
        let err = zeta_series(&LinearForm::<Rational>::var(2), &sp).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn ratio_examples() {
        let sp = z(1, 4);
        let l = LinearForm::<Rational>::var(0);
        let one = zeta_ratio(&rat(1), &l, &sp).unwrap();
        assert_eq!(one, TruncatedSeries::one(&sp));
        let two = zeta_ratio(&rat(2), &l, &sp).unwrap();
        assert_eq!(two.coefficient_of(&[0]), rat(2));
        assert_eq!(two.coefficient_of(&[2]), frac(1, 4));
        assert_eq!(two.coefficient_of(&[4]), frac(1, 192));
        assert!(zeta_ratio(&rat(0), &l, &sp).unwrap().is_zero());

        let mu = Poly::var(0);
        let lp = LinearForm::<Poly>::var(0);
        let sym = zeta_ratio(&mu, &lp, &sp).unwrap();
        assert_eq!(sym.coefficient_of(&[0]), mu);
        let expect = (Poly::var_pow(0, 3) - &mu).scale(&frac(1, 24));
        assert_eq!(sym.coefficient_of(&[2]), expect);
    }

    #[test]
    fn ops_examples() {
        let sp = z(1, 5);
        let l = LinearForm::<Rational>::var(0);
        let zz = zeta_series(&l, &sp).unwrap();
        assert_eq!(zz.mul(&zz).coefficient_of(&[3]), rat(0));
        assert!(zz.substitute(0, &LinearForm::zero()).unwrap().is_zero());

        let sp2 = z(2, 2);
        let f = zeta_series(&LinearForm::term(0, rat(2)), &sp2)
            .unwrap()
            .mul(&zeta_series(&LinearForm::term(1, rat(2)), &sp2).unwrap())
            .mul(&zeta_ratio(&rat(2), &LinearForm::sum_of([0, 1]), &sp2).unwrap());
        assert_eq!(f.coefficient_of(&[2, 2]), rat(2));
    }

    #[test]
    fn exact_divide_monomial_unit() {
        let sp = z(1, 6);
        let l = LinearForm::<Rational>::var(0);
        let num = zeta_series(&LinearForm::term(0, rat(3)), &sp).unwrap();
        let den = zeta_series(&l, &sp).unwrap();
        let q = num.exact_divide(&den).unwrap();
        assert_eq!(q.space().caps(), &[5]);
        let r = zeta_ratio(&rat(3), &l, q.space()).unwrap();
        assert_eq!(q, r);

        let bad = TruncatedSeries::<Rational>::one(&sp).exact_divide(&den).unwrap_err();
        assert_eq!(bad, Error::InexactDivision("1".into()));
    }

    #[test]
    fn json_monomial_strings() {
        let sp = z(2, 2);
        let s = zeta_series(&LinearForm::<Rational>::sum_of([0, 1]), &sp).unwrap();
        let j = s.to_json();
        assert_eq!(j["z1^1"], "1");
        assert_eq!(j["z1^1*z2^2"], "1/8");
    }
}
