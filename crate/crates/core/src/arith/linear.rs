use super::{Rational, Ring};
use std::collections::BTreeMap;

/// A linear form `sum_i c_i x_i` over variable indices of a series space.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<R: Ring = Rational> {
    coeffs: BTreeMap<usize, R>,
}

impl<R: Ring> Default for LinearForm<R> {
    fn default() -> Self {
        LinearForm {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<R: Ring> LinearForm<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        Self::term(i, R::one())
    }

    pub fn term(i: usize, c: R) -> Self {
        let mut f = Self::default();
        f.add_term(i, c);
        f
    }

    /// `sum_{i in vars} x_i`.
    pub fn sum_of(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut f = Self::default();
        for i in vars {
            f.add_term(i, R::one());
        }
        f
    }

    pub fn add_term(&mut self, i: usize, c: R) {
        let slot = self.coeffs.entry(i).or_insert_with(R::zero);
        *slot = slot.clone() + &c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::default();
        for (&i, v) in &self.coeffs {
            out.add_term(i, v.clone() * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, i: usize) -> R {
        self.coeffs.get(&i).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }
}
