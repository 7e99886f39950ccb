//! Completed conjugacy classes in the class algebra of all symmetric groups.

use crate::arith::{binomial, factorial, rat, univariate, Rational};
use crate::error::{precondition, Error, Result};
use crate::partitions::{
    character_int, class_size, dimension, partitions_of, shifted_psum, Partition,
};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// Finite rational combination of partitions of mixed sizes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassAlgebraElement {
    terms: BTreeMap<Partition, Rational>,
}

#[derive(Serialize)]
struct TermRecord {
    partition: String,
    coefficient: String,
}

impl ClassAlgebraElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, p: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn coefficient(&self, p: &Partition) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::new();
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * q);
        }
        out
    }

    /// `sum_rho c_rho f_rho(lambda)`.
    pub fn evaluate(&self, lambda: &Partition) -> Rational {
        self.terms
            .iter()
            .map(|(rho, c)| c * central_char(rho, lambda))
            .sum()
    }

    /// JSON array of `{partition, coefficient}` in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        let recs: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(p, c)| TermRecord {
                partition: p.to_string(),
                coefficient: c.to_string(),
            })
            .collect();
        serde_json::to_value(recs).expect("serializable")
    }
}

/// Central character `f_mu(lambda)`, extended to larger `lambda` by padding
/// `mu` with ones.
pub fn central_char(mu: &Partition, lambda: &Partition) -> Rational {
    let (m, n) = (mu.size(), lambda.size());
    if n < m {
        return Rational::zero();
    }
    let k = n - m;
    let m1 = mu.multiplicity(1) as i64;
    let padded = mu.pad_ones(k);
    let chi = character_int(lambda, &padded).expect("sizes agree");
    binomial(k as i64 + m1, m1) * class_size(&padded) * rat(chi)
        / dimension(lambda)
}

fn target(mu: &Partition, lambda: &Partition) -> Rational {
    let num: Rational = mu.parts().iter().map(|&k| shifted_psum(k, lambda)).product();
    let den: Rational = mu.parts().iter().map(|&k| factorial(k as u64)).product();
    num / den
}

/// The completed class: the preimage of `prod p_{mu_i} / prod mu_i!`.
///
/// Solved size by size using character orthogonality, then checked on the two
/// sizes above `|mu|`.
pub fn completed_class(mu: &Partition) -> Result<ClassAlgebraElement> {
    if mu.is_empty() {
        return precondition("completed class of the empty partition");
    }
    let top = mu.size();
    let mut out = ClassAlgebraElement::new();
    let residual = |out: &ClassAlgebraElement, lambda: &Partition| {
        target(mu, lambda) - out.evaluate(lambda)
    };
    for k in 0..=top {
        let lambdas = partitions_of(k);
        let weighted: Vec<(Partition, Rational)> = lambdas
            .iter()
            .map(|l| (l.clone(), residual(&out, l) * dimension(l)))
            .collect();
        let kfact = factorial(k as u64);
        let mut block = Vec::new();
        for sigma in &lambdas {
            let mut c = Rational::zero();
            for (l, b) in &weighted {
                let chi = character_int(l, sigma)?;
                if chi != 0 {
                    c += b * rat(chi);
                }
            }
            block.push((sigma.clone(), c / &kfact));
        }
        for (sigma, c) in block {
            out.add_term(sigma, c);
        }
    }
    for k in top + 1..=top + 2 {
        for l in partitions_of(k) {
            let r = residual(&out, &l);
            if !r.is_zero() {
                return Err(Error::Consistency(format!(
                    "completed class of {mu:?} misses {r} at {l:?}"
                )));
            }
        }
    }
    Ok(out)
}

/// The completed cycle of length `r + 1`.
pub fn completed_cycle(r: u32) -> Result<ClassAlgebraElement> {
    completed_class(&Partition::from_parts(vec![r + 1]))
}

/// `(1/|mu|!) [z^{r+1}] zeta(z)^{|mu|-1} prod_i zeta(mu_i z)`.
pub fn cycle_coefficients_via_vev(r: u32, mu: &Partition) -> Rational {
    if mu.is_empty() {
        return Rational::zero();
    }
    let deg = r as usize + 1;
    let size = mu.size();
    let mut acc = univariate::pow(&univariate::zeta(&Rational::one(), deg), size as usize - 1, deg);
    for &m in mu.parts() {
        acc = univariate::mul(&acc, &univariate::zeta(&rat(m as i64), deg), deg);
    }
    acc[deg].clone() / factorial(size as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use crate::partitions::part;

    #[test]
    fn central_character_examples() {
        assert_eq!(central_char(&part(&[2]), &part(&[1, 1])), rat(-1));
        assert_eq!(central_char(&part(&[3]), &part(&[2])), rat(0));
        assert_eq!(central_char(&part(&[1]), &part(&[2])), rat(2));
        assert_eq!(central_char(&Partition::empty(), &part(&[2, 1])), rat(1));
    }

    fn elem(terms: &[(&[u32], Rational)]) -> ClassAlgebraElement {
        let mut e = ClassAlgebraElement::new();
        for (p, c) in terms {
            e.add_term(part(p), c.clone());
        }
        e
    }

    #[test]
    fn small_completed_cycles() {
        assert_eq!(completed_cycle(0).unwrap(), elem(&[(&[1], rat(1))]));
        assert_eq!(completed_cycle(1).unwrap(), elem(&[(&[2], rat(1))]));
        assert_eq!(
            completed_cycle(2).unwrap(),
            elem(&[(&[3], frac(1, 2)), (&[1, 1], frac(1, 2)), (&[1], frac(1, 24))])
        );
        assert_eq!(
            completed_cycle(3).unwrap(),
            elem(&[(&[4], frac(1, 6)), (&[2, 1], frac(1, 3)), (&[2], frac(5, 24))])
        );
        assert!(completed_class(&Partition::empty()).is_err());
    }

    #[test]
    fn vev_coefficients() {
        assert_eq!(cycle_coefficients_via_vev(2, &part(&[1])), frac(1, 24));
        assert_eq!(cycle_coefficients_via_vev(1, &part(&[1])), rat(0));
        assert_eq!(cycle_coefficients_via_vev(1, &part(&[2])), rat(1));
    }

    #[test]
    fn json_records() {
        let j = completed_cycle(2).unwrap().to_json();
        assert_eq!(j[0]["partition"], "1");
        assert_eq!(j[0]["coefficient"], "1/24");
        assert_eq!(j[2]["partition"], "3");
    }
}
