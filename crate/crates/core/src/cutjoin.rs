//! Completed cut-and-join operators acting on polynomials in `p_1, p_2, ...`.

use crate::arith::{factorial, rat, univariate, Rational, Ring, SeriesSpace, TruncatedSeries};
use crate::error::{precondition, Result};
use crate::partitions::{partitions_of, shifted_psum, Partition};
use crate::symmetric::{schur_polynomial, WeightedPolynomial};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// `Q_{r+1}` as rewriting rules `c * p_beta * prod_i d/dp_{alpha_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutJoinOperator {
    pub r_plus_1: u32,
    pub weight_cap: u32,
    /// alpha (differentiated) -> [(beta (multiplied), coefficient)]
    rules: BTreeMap<Partition, Vec<(Partition, Rational)>>,
}

/// A rule in serialisable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleRecord {
    pub derivatives: String,
    pub multiplications: String,
    pub coefficient: String,
}

fn rule_coefficient(r_plus_1: u32, alpha: &Partition, beta: &Partition) -> Rational {
    let deg = r_plus_1 as usize;
    let mut parts = alpha.parts().iter().chain(beta.parts());
    let first = *parts.next().expect("nonempty");
    let mut acc = univariate::zeta_ratio(&rat(first as i64), deg);
    for &k in parts {
        acc = univariate::mul(&acc, &univariate::zeta(&rat(k as i64), deg), deg);
    }
    let den = Rational::from_integer(beta.product() * alpha.aut() * beta.aut());
    acc[deg].clone() / den
}

/// Build `Q_{r+1}` with all rules acting on weights up to `weight_cap`.
pub fn build_q(r_plus_1: u32, weight_cap: u32) -> Result<CutJoinOperator> {
    if r_plus_1 == 0 {
        return precondition("r + 1 must be positive");
    }
    let mut rules: BTreeMap<Partition, Vec<(Partition, Rational)>> = BTreeMap::new();
    for k in 1..=weight_cap {
        let parts = partitions_of(k);
        for alpha in &parts {
            for beta in &parts {
                // lowest order of the zeta product is l(alpha) + l(beta) - 1
                let low = alpha.len() + beta.len() - 1;
                if low > r_plus_1 as usize || (r_plus_1 as usize - low) % 2 == 1 {
                    continue;
                }
                let c = rule_coefficient(r_plus_1, alpha, beta);
                if !c.is_zero() {
                    rules.entry(alpha.clone()).or_default().push((beta.clone(), c));
                }
            }
        }
    }
    Ok(CutJoinOperator {
        r_plus_1,
        weight_cap,
        rules,
    })
}

/// Sub-multisets of `mu` together with `prod_k m_k(mu)! / (m_k(mu) - m_k(sub))!`.
fn sub_multisets(mu: &Partition) -> Vec<(Partition, Rational)> {
    let mults: Vec<(u32, u32)> = mu.multiplicities().into_iter().collect();
    let mut out = vec![(Vec::new(), rat(1))];
    for (k, m) in mults {
        let mut next = Vec::new();
        for (parts, c) in &out {
            let mut falling = rat(1);
            for j in 0..=m {
                let mut p: Vec<u32> = parts.clone();
                p.extend(std::iter::repeat_n(k, j as usize));
                next.push((p, c * &falling));
                falling *= rat((m - j) as i64);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(p, c)| (Partition::from_parts(p), c))
        .collect()
}

impl CutJoinOperator {
    pub fn rules(&self) -> impl Iterator<Item = (&Partition, &Partition, &Rational)> {
        self.rules
            .iter()
            .flat_map(|(a, v)| v.iter().map(move |(b, c)| (a, b, c)))
    }

    pub fn rule_count(&self) -> usize {
        self.rules.values().map(Vec::len).sum()
    }

    pub fn coefficient(&self, alpha: &Partition, beta: &Partition) -> Rational {
        self.rules
            .get(alpha)
            .and_then(|v| v.iter().find(|(b, _)| b == beta))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn apply<R: Ring>(&self, f: &WeightedPolynomial<R>) -> Result<WeightedPolynomial<R>> {
        if let Some(w) = f.max_weight() {
            if w > self.weight_cap {
                return precondition(format!(
                    "weight {w} exceeds the operator's cap {}",
                    self.weight_cap
                ));
            }
        }
        let mut out = WeightedPolynomial::zero();
        for (mu, c) in f.terms() {
            for (alpha, mult) in sub_multisets(mu) {
                let Some(targets) = self.rules.get(&alpha) else {
                    continue;
                };
                let rest = mu.remove(&alpha).expect("sub-multiset");
                for (beta, k) in targets {
                    out.add_term(rest.union(beta), c.scale(&(k * &mult)));
                }
            }
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<RuleRecord> {
        self.rules()
            .map(|(a, b, c)| RuleRecord {
                derivatives: a.to_string(),
                multiplications: b.to_string(),
                coefficient: c.to_string(),
            })
            .collect()
    }

    /// Human-readable form, one rule per line.
    pub fn render(&self) -> Vec<String> {
        self.rules()
            .map(|(a, b, c)| {
                let mults: Vec<String> = b.parts().iter().map(|k| format!("p{k}")).collect();
                let ders: Vec<String> = a.parts().iter().map(|k| format!("d/dp{k}")).collect();
                format!("{c} * {} {}", mults.join("*"), ders.join(" "))
            })
            .collect()
    }
}

/// Check `Q s_lambda = p_{r+1}(lambda)/(r+1)! s_lambda`; on failure returns
/// the first monomial where the two sides differ.
pub fn eigen_check(q: &CutJoinOperator, lambda: &Partition) -> Result<std::result::Result<(), Partition>> {
    let s = schur_polynomial(lambda);
    let lhs = q.apply(&s)?;
    let ev = shifted_psum(q.r_plus_1, lambda) / factorial(q.r_plus_1 as u64);
    let diff = lhs.sub(&s.scale(&ev));
    let first = diff.terms().next().map(|(mu, _)| mu.clone());
    Ok(match first {
        None => Ok(()),
        Some(mu) => Err(mu),
    })
}

/// `exp(beta Q) seed` up to `beta^order`; entry `k` is the `beta^k` coefficient.
pub fn evolve<R: Ring>(
    q: &CutJoinOperator,
    order: usize,
    seed: &WeightedPolynomial<R>,
) -> Result<Vec<WeightedPolynomial<R>>> {
    let mut out = vec![seed.clone()];
    for k in 1..=order {
        let next = q.apply(&out[k - 1])?.scale(&R::from_rational(&rat(k as i64).recip()));
        out.push(next);
    }
    Ok(out)
}

/// `sum_{i <= cap} p_i`.
pub fn power_sum_seed<R: Ring>(cap: u32) -> WeightedPolynomial<R> {
    (1..=cap).fold(WeightedPolynomial::zero(), |acc, i| acc.add(&WeightedPolynomial::var(i)))
}

/// Substitute `p_k = zeta(k z)` into `s_mu`, divide by `zeta(z)` and compare
/// with `(-1)^b e^{(a-b-1)z/2}` for hooks `(a, 1^b)`, zero otherwise.
pub fn hook_eval_check(mu: &Partition, degree: u32) -> Result<bool> {
    if mu.is_empty() {
        return precondition("hook evaluation needs a nonempty partition");
    }
    let space = SeriesSpace::uniform("z", 1, degree + 1)?;
    let z = crate::arith::LinearForm::<Rational>::var(0);
    let mut value = TruncatedSeries::zero(&space);
    for (nu, c) in schur_polynomial(mu).terms() {
        let mut term = TruncatedSeries::constant(&space, c.clone());
        for &k in nu.parts() {
            term = term.mul(&crate::arith::zeta_series(&z.scale(&rat(k as i64)), &space)?);
        }
        value = value.add(&term);
    }
    let quotient = value.exact_divide(&crate::arith::zeta_series(&z, &space)?)?;
    let parts = mu.parts();
    let is_hook = parts.len() <= 1 || parts[1] == 1;
    let expected = if is_hook {
        let a = parts[0] as i64;
        let b = parts.len() as i64 - 1;
        let x = rat(a - b - 1) / rat(2);
        let mut e = TruncatedSeries::zero(quotient.space());
        let mut term = rat(if b % 2 == 0 { 1 } else { -1 });
        for n in 0..=degree {
            e.add_term(crate::arith::Monomial::from_exponents(&[n]), term.clone());
            term = term * &x / rat(n as i64 + 1);
        }
        e
    } else {
        TruncatedSeries::zero(quotient.space())
    };
    Ok(quotient == expected)
}
