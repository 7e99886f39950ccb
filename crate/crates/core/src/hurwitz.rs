//! Double Hurwitz numbers with completed cycles.

use crate::arith::{
    Ring, binomial, factorial, frac, rat, univariate, zeta_ratio, zeta_series, LinearForm, Rational,
    SeriesSpace, TruncatedSeries,
};
use crate::error::{precondition, Result};
use crate::partitions::{character_int, partitions_of, shifted_psum, Partition};
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Parameters of a double Hurwitz number `h^{r,s}_{mu,nu}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HurwitzQuery {
    pub r: u32,
    pub s: u32,
    pub mu: Partition,
    pub nu: Partition,
    pub connected: bool,
}

impl HurwitzQuery {
    pub fn new(r: u32, s: u32, mu: Partition, nu: Partition, connected: bool) -> Result<Self> {
        if r == 0 {
            return precondition("r must be positive");
        }
        if mu.size() != nu.size() {
            return precondition(format!("|{mu:?}| != |{nu:?}|"));
        }
        if mu.is_empty() {
            return precondition("degree must be positive");
        }
        Ok(HurwitzQuery {
            r,
            s,
            mu,
            nu,
            connected,
        })
    }

    pub fn degree(&self) -> u32 {
        self.mu.size()
    }

    /// `(rs + 2 - l(mu) - l(nu)) / 2`, possibly a half-integer.
    pub fn genus(&self) -> Rational {
        frac(
            (self.r * self.s) as i64 + 2 - self.mu.len() as i64 - self.nu.len() as i64,
            2,
        )
    }

    pub fn evaluate(&self) -> Result<Rational> {
        if self.connected {
            h_connected(self)
        } else {
            h_char(self)
        }
    }
}

/// Result record for serialisation.
#[derive(Clone, Debug, Serialize)]
pub struct HurwitzRecord {
    pub r: u32,
    pub s: u32,
    pub mu: Partition,
    pub nu: Partition,
    pub connected: bool,
    pub genus: String,
    pub value: String,
}

impl HurwitzRecord {
    pub fn new(q: &HurwitzQuery, value: &Rational) -> Self {
        HurwitzRecord {
            r: q.r,
            s: q.s,
            mu: q.mu.clone(),
            nu: q.nu.clone(),
            connected: q.connected,
            genus: q.genus().to_string(),
            value: value.to_string(),
        }
    }
}

fn check_sizes(mu: &Partition, nu: &Partition) -> Result<()> {
    if mu.size() != nu.size() {
        return precondition(format!("|{mu:?}| != |{nu:?}|"));
    }
    if mu.is_empty() {
        return precondition("degree must be positive");
    }
    Ok(())
}

/// Character formula for the (possibly disconnected) number.
pub fn h_char(q: &HurwitzQuery) -> Result<Rational> {
    h_char_raw(q.r, q.s, &q.mu, &q.nu)
}

fn h_char_raw(r: u32, s: u32, mu: &Partition, nu: &Partition) -> Result<Rational> {
    check_sizes(mu, nu)?;
    let d = mu.size();
    let af = factorial(r as u64 + 1);
    let mut acc = Rational::zero();
    for lambda in partitions_of(d) {
        let a = character_int(&lambda, mu)?;
        if a == 0 {
            continue;
        }
        let b = character_int(&lambda, nu)?;
        if b == 0 {
            continue;
        }
        let ev = shifted_psum(r + 1, &lambda) / &af;
        acc += num_traits::pow(ev, s as usize) * rat(a * b);
    }
    Ok(acc / Rational::from_integer(mu.product() * nu.product()))
}

type ConnKey = (u32, Vec<u32>, Vec<u32>, u32);

fn conn_memo() -> &'static Mutex<HashMap<ConnKey, Rational>> {
    static MEMO: OnceLock<Mutex<HashMap<ConnKey, Rational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn pick(parts: &[u32], mask: u32) -> (Vec<u32>, Vec<u32>) {
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for (i, &p) in parts.iter().enumerate() {
        if mask >> i & 1 == 1 {
            inside.push(p);
        } else {
            outside.push(p);
        }
    }
    (inside, outside)
}

/// Disconnected number, allowing the empty cover.
fn h_disc(r: u32, s: u32, mu: &[u32], nu: &[u32]) -> Rational {
    if mu.is_empty() && nu.is_empty() {
        return if s == 0 { rat(1) } else { rat(0) };
    }
    h_char_raw(r, s, &Partition::from_parts(mu.to_vec()), &Partition::from_parts(nu.to_vec()))
        .expect("sizes checked by caller")
}

fn h_conn_raw(r: u32, s: u32, mu: &Partition, nu: &Partition) -> Rational {
    let key = (r, mu.parts().to_vec(), nu.parts().to_vec(), s);
    if let Some(v) = conn_memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let (m, n) = (mu.parts(), nu.parts());
    let mut value = h_disc(r, s, m, n);
    let full_mu = (1u32 << m.len()) - 1;
    let full_nu = (1u32 << n.len()) - 1;
    // Blocks containing the first part of mu, other than the whole cover.
    for bm in (0..=full_mu).filter(|b| b & 1 == 1) {
        let (in_mu, out_mu) = pick(m, bm);
        let size: u32 = in_mu.iter().sum();
        for bn in 1..=full_nu {
            if bm == full_mu && bn == full_nu {
                continue;
            }
            let (in_nu, out_nu) = pick(n, bn);
            if in_nu.iter().sum::<u32>() != size || out_mu.is_empty() != out_nu.is_empty() {
                continue;
            }
            let pm = Partition::from_parts(in_mu.clone());
            let pn = Partition::from_parts(in_nu);
            for sb in 0..=s {
                let rest = h_disc(r, s - sb, &out_mu, &out_nu);
                if rest.is_zero() {
                    continue;
                }
                let inner = h_conn_raw(r, sb, &pm, &pn);
                value -= binomial(s as i64, sb as i64) * inner * rest;
            }
        }
    }
    conn_memo().lock().unwrap().insert(key, value.clone());
    value
}

/// Connected number by inclusion-exclusion over block decompositions.
pub fn h_connected(q: &HurwitzQuery) -> Result<Rational> {
    check_sizes(&q.mu, &q.nu)?;
    Ok(h_conn_raw(q.r, q.s, &q.mu, &q.nu))
}

/// One-part number `h^{r,s}_{mu,(d)}` from the single commutation pattern.
pub fn h_one_part(r: u32, s: u32, mu: &Partition) -> Result<Rational> {
    if s == 0 {
        return precondition("one-part formula needs s >= 1");
    }
    if mu.is_empty() {
        return precondition("degree must be positive");
    }
    let d = mu.size() as i64;
    let space = SeriesSpace::uniform("z", s as usize, r + 1)?;
    let all = LinearForm::sum_of(0..s as usize);
    let mut f: TruncatedSeries = zeta_ratio(&rat(mu.parts()[0] as i64), &all, &space)?;
    for &m in &mu.parts()[1..] {
        f = f.mul(&zeta_series(&all.scale(&rat(m as i64)), &space)?);
    }
    for k in 0..s as usize {
        f = f.mul(&zeta_series(&LinearForm::term(k, rat(d)), &space)?);
    }
    let c = f.coefficient_of(&vec![r + 1; s as usize]);
    Ok(c / (rat(d) * Rational::from_integer(mu.product())))
}

/// Univariate route to the same one-part number: only the exponents matter
/// after extracting `[prod z_k^{r+1}]`.
#[cfg(test)]
pub(crate) fn h_one_part_univariate(r: u32, s: u32, mu: &Partition) -> Rational {
    let parts: Vec<Rational> = mu.parts().iter().map(|&m| rat(m as i64)).collect();
    let d = mu.size() as i64;
    one_part_kernel(r, s, &parts) / (rat(d) * Rational::from_integer(mu.product()))
}

/// `[z_1^{r+1}..z_s^{r+1}] prod_k zeta(d z_k) prod_i zeta(mu_i z) / zeta(z)`
/// with `z = z_1 + .. + z_s` and `d = sum mu_i`, over any coefficient ring.
pub(crate) fn one_part_kernel<R: Ring>(r: u32, s: u32, parts: &[R]) -> R {
    let d = parts.iter().fold(R::zero(), |acc, m| acc + m);
    let rr = r as usize + 1;
    let top = s as usize * rr;
    let mut b = univariate::zeta_ratio(&parts[0], top);
    for m in &parts[1..] {
        b = univariate::mul(&b, &univariate::zeta(m, top), top);
    }
    // [z_k^{r+1}] zeta(d z_k) z^{t} contributes through t = r+1 - a.
    let a = univariate::zeta(&d, rr);
    let c: Vec<R> = (0..=rr)
        .map(|t| a[rr - t].scale(&factorial(t as u64).recip()))
        .collect();
    let cs = univariate::pow(&c, s as usize, top);
    (0..=top).fold(R::zero(), |acc, j| {
        acc + &(b[j].clone() * &cs[j]).scale(&factorial(j as u64))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{part, partitions_up_to};
    use std::collections::BTreeMap;

    fn q(r: u32, s: u32, mu: &[u32], nu: &[u32], connected: bool) -> HurwitzQuery {
        HurwitzQuery::new(r, s, part(mu), part(nu), connected).unwrap()
    }

    #[test]
    fn character_examples() {
        assert_eq!(h_char(&q(1, 1, &[2], &[1, 1], false)).unwrap(), rat(1));
        assert_eq!(h_char(&q(1, 0, &[2], &[2], false)).unwrap(), frac(1, 2));
        assert_eq!(h_char(&q(2, 1, &[1], &[1], false)).unwrap(), frac(1, 24));
        assert!(HurwitzQuery::new(1, 1, part(&[2]), part(&[1]), false).is_err());
        assert_eq!(q(1, 1, &[2], &[1, 1], false).genus(), rat(0));
        assert_eq!(q(1, 2, &[2], &[1, 1], false).genus(), frac(1, 2));
    }

    #[test]
    fn zero_transpositions_orthogonality() {
        for d in 1..=5 {
            for mu in partitions_of(d) {
                for nu in partitions_of(d) {
                    let want = if mu == nu {
                        Rational::from_integer(mu.z()) / Rational::from_integer(mu.product() * mu.product())
                    } else {
                        rat(0)
                    };
                    assert_eq!(h_char_raw(1, 0, &mu, &nu).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn connected_examples() {
        assert_eq!(h_connected(&q(1, 1, &[2], &[1, 1], true)).unwrap(), rat(1));
        assert_eq!(h_connected(&q(1, 0, &[1], &[1], true)).unwrap(), rat(1));
        assert_eq!(h_char(&q(1, 0, &[1, 1], &[1, 1], false)).unwrap(), rat(2));
        assert_eq!(h_connected(&q(1, 0, &[1, 1], &[1, 1], true)).unwrap(), rat(0));
    }

    #[test]
    fn one_part_examples() {
        assert_eq!(h_one_part(1, 2, &part(&[2])).unwrap(), frac(1, 2));
        assert_eq!(h_one_part(1, 1, &part(&[1, 1])).unwrap(), rat(1));
        assert_eq!(h_one_part(1, 1, &part(&[2])).unwrap(), rat(0));
        assert_eq!(h_one_part(1, 3, &part(&[2])).unwrap(), rat(0));
        assert!(h_one_part(1, 0, &part(&[2])).is_err());
    }

    #[test]
    fn one_part_matches_connected_characters() {
        for r in 1..=3 {
            for s in 1..=3 {
                for mu in partitions_up_to(5).into_iter().skip(1) {
                    let nu = part(&[mu.size()]);
                    let direct = h_one_part(r, s, &mu).unwrap();
                    let conn = h_conn_raw(r, s, &mu, &nu);
                    assert_eq!(direct, conn, "r={r} s={s} mu={mu:?}");
                    assert_eq!(h_one_part_univariate(r, s, &mu), direct);
                }
            }
        }
    }

    #[test]
    fn parity_and_symmetry() {
        for r in 1..=3 {
            for s in 0..=3 {
                for d in 1..=5 {
                    for mu in partitions_of(d) {
                        for nu in partitions_of(d) {
                            let a = h_char_raw(r, s, &mu, &nu).unwrap();
                            let odd = (r * s) as i64 - mu.len() as i64 - nu.len() as i64;
                            if odd.rem_euclid(2) == 1 {
                                assert!(a.is_zero());
                            }
                            assert_eq!(a, h_char_raw(r, s, &nu, &mu).unwrap());
                        }
                    }
                }
            }
        }
    }

    // Permutations of {0..d-1} as image vectors.
    fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
        b.iter().map(|&x| a[x as usize]).collect()
    }

    fn cycle_type(p: &[u8]) -> Partition {
        let mut seen = vec![false; p.len()];
        let mut parts = Vec::new();
        for i in 0..p.len() {
            if seen[i] {
                continue;
            }
            let (mut j, mut len) = (i, 0);
            while !seen[j] {
                seen[j] = true;
                j = p[j] as usize;
                len += 1;
            }
            parts.push(len);
        }
        Partition::from_parts(parts)
    }

    fn all_perms(d: usize) -> Vec<Vec<u8>> {
        fn go(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i as u8);
                    go(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; d], &mut out);
        out
    }

    /// Count (sigma_0, tau_1..tau_s, sigma_inf) with product the identity.
    fn brute_force(s: u32, mu: &Partition, nu: &Partition) -> Rational {
        let d = mu.size() as usize;
        let perms = all_perms(d);
        let transpositions: Vec<&Vec<u8>> =
            perms.iter().filter(|p| cycle_type(p) == part(&[2]).pad_ones(d as u32 - 2)).collect();
        let mut dist: BTreeMap<Vec<u8>, u64> = perms
            .iter()
            .filter(|p| cycle_type(p) == *mu)
            .map(|p| (p.clone(), 1))
            .collect();
        for _ in 0..s {
            let mut next = BTreeMap::new();
            for (p, c) in &dist {
                for t in &transpositions {
                    *next.entry(compose(p, t)).or_insert(0) += c;
                }
            }
            dist = next;
        }
        let n: u64 = dist
            .iter()
            .filter(|(p, _)| cycle_type(p) == *nu)
            .map(|(_, c)| c)
            .sum();
        rat(n as i64) * Rational::from_integer(mu.aut() * nu.aut()) / factorial(d as u64)
    }

    #[test]
    fn simple_hurwitz_numbers_match_permutation_counts() {
        for d in 2..=5u32 {
            let smax = if d == 5 { 3 } else { 4 };
            for s in 0..=smax {
                for mu in partitions_of(d) {
                    for nu in partitions_of(d) {
                        assert_eq!(
                            h_char_raw(1, s, &mu, &nu).unwrap(),
                            brute_force(s, &mu, &nu),
                            "s={s} mu={mu:?} nu={nu:?}"
                        );
                    }
                }
            }
        }
    }
}
