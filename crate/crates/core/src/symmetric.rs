//! Polynomials in power sums `p_1, p_2, ...`, graded by weight.

use crate::arith::{rat, Rational, Ring};
use crate::partitions::{character_int, partitions_of, Partition};
use std::collections::BTreeMap;
use std::fmt;

/// `sum_mu c_mu p_mu` with `p_mu = prod_i p_{mu_i}`; the weight of `p_mu` is `|mu|`.
#[derive(Clone, PartialEq)]
pub struct WeightedPolynomial<R: Ring = Rational> {
    terms: BTreeMap<Partition, R>,
}

impl<R: Ring> Default for WeightedPolynomial<R> {
    fn default() -> Self {
        WeightedPolynomial {
            terms: BTreeMap::new(),
        }
    }
}

impl<R: Ring> WeightedPolynomial<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), R::one())
    }

    pub fn monomial(mu: Partition, c: R) -> Self {
        let mut f = Self::zero();
        f.add_term(mu, c);
        f
    }

    /// The variable `p_k`.
    pub fn var(k: u32) -> Self {
        Self::monomial(Partition::from_parts(vec![k]), R::one())
    }

    pub fn add_term(&mut self, mu: Partition, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mu) {
            Some(slot) => {
                *slot = slot.clone() + &c;
                if slot.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                self.terms.insert(mu, c);
            }
        }
    }

    pub fn coefficient(&self, mu: &Partition) -> R {
        self.terms.get(mu).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-R::one()))
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (mu, v) in &self.terms {
            out.add_term(mu.clone(), v.clone() * c);
        }
        out
    }

    /// Product keeping only terms of weight at most `cap`.
    pub fn mul_capped(&self, other: &Self, cap: u32) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.size() + b.size() <= cap {
                    out.add_term(a.union(b), ca.clone() * cb);
                }
            }
        }
        out
    }

    pub fn truncate_weight(&self, cap: u32) -> Self {
        self.filter(|mu| mu.size() <= cap)
    }

    pub fn homogeneous_part(&self, weight: u32) -> Self {
        self.filter(|mu| mu.size() == weight)
    }

    fn filter(&self, keep: impl Fn(&Partition) -> bool) -> Self {
        WeightedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(mu, _)| keep(mu))
                .map(|(mu, c)| (mu.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients<S: Ring>(&self, f: impl Fn(&R) -> S) -> WeightedPolynomial<S> {
        let mut out = WeightedPolynomial::zero();
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), f(c));
        }
        out
    }

    /// `d/dp_k`.
    pub fn derivative(&self, k: u32) -> Self {
        let single = Partition::from_parts(vec![k]);
        let mut out = Self::zero();
        for (mu, c) in &self.terms {
            let m = mu.multiplicity(k);
            if m > 0 {
                out.add_term(mu.remove(&single).unwrap(), c.scale(&rat(m as i64)));
            }
        }
        out
    }

    /// Replace each `p_k` by `images(k)`, truncating at weight `cap` measured
    /// in the image variables.
    pub fn substitute_vars(&self, images: impl Fn(u32) -> WeightedPolynomial<R>, cap: u32) -> Self {
        let mut cache: BTreeMap<u32, WeightedPolynomial<R>> = BTreeMap::new();
        let mut out = Self::zero();
        for (mu, c) in &self.terms {
            let mut acc = Self::one();
            for &k in mu.parts() {
                let img = cache.entry(k).or_insert_with(|| images(k).truncate_weight(cap));
                acc = acc.mul_capped(img, cap);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Render as `c*p1^2*p3 + ...` with the given variable letter.
    pub fn render(&self, letter: char) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mu, c)| {
                let mono: Vec<String> = mu
                    .multiplicities()
                    .into_iter()
                    .map(|(k, m)| {
                        if m == 1 {
                            format!("{letter}{k}")
                        } else {
                            format!("{letter}{k}^{m}")
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    format!("({})", c.render())
                } else {
                    format!("({})*{}", c.render(), mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// JSON object from partition text to coefficient text.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.terms
                .iter()
                .map(|(mu, c)| (mu.to_string(), serde_json::Value::String(c.render())))
                .collect(),
        )
    }
}

impl<R: Ring> fmt::Debug for WeightedPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render('p'))
    }
}

/// Schur polynomial `s_lambda = sum_mu chi^lambda_mu p_mu / z_mu`.
pub fn schur_polynomial(lambda: &Partition) -> WeightedPolynomial<Rational> {
    let mut out = WeightedPolynomial::zero();
    for mu in partitions_of(lambda.size()) {
        let chi = character_int(lambda, &mu).expect("sizes agree");
        if chi != 0 {
            out.add_term(mu.clone(), rat(chi) / Rational::from_integer(mu.z()));
        }
    }
    out
}

/// `p_mu` expanded in Schur polynomials: `sum_lambda chi^lambda_mu s_lambda`.
pub fn power_sum_in_schur(mu: &Partition) -> Vec<(Partition, Rational)> {
    partitions_of(mu.size())
        .into_iter()
        .filter_map(|l| {
            let chi = character_int(&l, mu).expect("sizes agree");
            (chi != 0).then(|| (l, rat(chi)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use crate::partitions::part;

    #[test]
    fn schur_examples() {
        let s1 = schur_polynomial(&part(&[1]));
        assert_eq!(s1, WeightedPolynomial::var(1));
        let s2 = schur_polynomial(&part(&[2]));
        let want = WeightedPolynomial::var(1)
            .mul_capped(&WeightedPolynomial::var(1), 2)
            .add(&WeightedPolynomial::var(2))
            .scale(&frac(1, 2));
        assert_eq!(s2, want);
    }

    #[test]
    fn derivative_and_substitution() {
        let p1 = WeightedPolynomial::<Rational>::var(1);
        let p2 = WeightedPolynomial::<Rational>::var(2);
        let f = p1.mul_capped(&p1, 10).mul_capped(&p2, 10);
        assert_eq!(f.derivative(1), p1.mul_capped(&p2, 10).scale(&rat(2)));
        let g = f.substitute_vars(|k| WeightedPolynomial::var(k).scale(&rat(k as i64)), 10);
        assert_eq!(g, f.scale(&rat(2)));
        assert!(f.truncate_weight(3).is_zero());
    }
}
