//! Integer partitions, symmetric group characters and shifted power sums.

use crate::arith::{factorial, factorial_int, rat, Rational};
use crate::error::{precondition, Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validating constructor.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return precondition("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return precondition("partition parts must be weakly decreasing");
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&p| p == i).count() as u32
    }

    /// Map part -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `prod_i i^{m_i} m_i!`, the order of the centralizer.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (i, m)| {
                acc * BigInt::from(i).pow(m) * factorial_int(m as u64)
            })
    }

    /// `prod_i m_i!`.
    pub fn aut(&self) -> BigInt {
        self.multiplicities()
            .values()
            .fold(BigInt::one(), |acc, &m| acc * factorial_int(m as u64))
    }

    /// Product of the parts.
    pub fn product(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &p| acc * BigInt::from(p))
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.0.first().copied().unwrap_or(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_parts(v)
    }

    /// `self` with `k` extra parts equal to one.
    pub fn pad_ones(&self, k: u32) -> Partition {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(1, k as usize));
        Partition(v)
    }

    /// Remove the parts of `sub` (as a multiset); `None` if not contained.
    pub fn remove(&self, sub: &Partition) -> Option<Partition> {
        let mut v = self.0.clone();
        for p in &sub.0 {
            let i = v.iter().position(|q| q == p)?;
            v.remove(i);
        }
        Some(Partition(v))
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let c = self.conjugate();
        let mut out = Vec::new();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(row - j + c.0[j as usize] - i as u32 - 1);
            }
        }
        out
    }

    /// Beta-numbers with `n` beads (`n >= len`).
    fn beta(&self, n: usize) -> Vec<i64> {
        (0..n)
            .map(|i| self.0.get(i).copied().unwrap_or(0) as i64 + (n - 1 - i) as i64)
            .collect()
    }

    fn from_beta(mut beta: Vec<i64>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let n = beta.len();
        Partition::from_parts(
            beta.iter()
                .enumerate()
                .map(|(i, &b)| (b - (n - 1 - i) as i64) as u32)
                .collect(),
        )
    }
}

impl Ord for Partition {
    /// By size, then larger parts first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Precondition(format!("bad partition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `d` in canonical order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `d`, canonically ordered.
pub fn partitions_up_to(d: u32) -> Vec<Partition> {
    (0..=d).flat_map(partitions_of).collect()
}

/// `|mu|! / z_mu`.
pub fn class_size(mu: &Partition) -> Rational {
    factorial(mu.size() as u64) / Rational::from_integer(mu.z())
}

/// Dimension of the irreducible representation via hook lengths.
pub fn dimension(lambda: &Partition) -> Rational {
    let hooks = lambda
        .hooks()
        .into_iter()
        .fold(BigInt::one(), |acc, h| acc * BigInt::from(h));
    factorial(lambda.size() as u64) / Rational::from_integer(hooks)
}

/// Ways to remove a `k`-ribbon from `lambda`: (result, (-1)^(rows - 1)).
pub fn ribbon_removals(lambda: &Partition, k: u32) -> Vec<(Partition, i64)> {
    let n = lambda.len();
    let beta = lambda.beta(n);
    let k = k as i64;
    let mut out = Vec::new();
    for i in 0..n {
        let b = beta[i];
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - k;
        out.push((Partition::from_beta(nb), if height % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// Ways to add a `k`-ribbon to `lambda`: (result, (-1)^(rows - 1)).
pub fn ribbon_additions(lambda: &Partition, k: u32) -> Vec<(Partition, i64)> {
    let n = lambda.len() + k as usize;
    let beta = lambda.beta(n);
    let k = k as i64;
    let mut out = Vec::new();
    for i in 0..n {
        let b = beta[i];
        if beta.contains(&(b + k)) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > b && x < b + k).count();
        let mut nb = beta.clone();
        nb[i] = b + k;
        out.push((Partition::from_beta(nb), if height % 2 == 0 { 1 } else { -1 }));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

type MemoKey = (Vec<u32>, Vec<u32>);

fn memo() -> &'static Mutex<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Murnaghan-Nakayama with a global memo. Both arguments must have equal size.
fn mn(lambda: &Partition, mu: &[u32]) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.0.clone(), mu.to_vec());
    if let Some(&v) = memo().lock().unwrap().get(&key) {
        return v;
    }
    let mut total: i64 = 0;
    for (smaller, sign) in ribbon_removals(lambda, mu[0]) {
        let v = mn(&smaller, &mu[1..]);
        total = total
            .checked_add(sign * v)
            .expect("character value overflows i64");
    }
    memo().lock().unwrap().insert(key, total);
    total
}

/// Character value as a machine integer.
pub fn character_int(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return precondition(format!(
            "character sizes differ: |{lambda:?}| != |{mu:?}|"
        ));
    }
    Ok(mn(lambda, &mu.0))
}

/// Irreducible character `chi^lambda` at the class `mu`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    character_int(lambda, mu).map(rat)
}

/// Shifted symmetric power sum `p_k(lambda)`.
pub fn shifted_psum(k: u32, lambda: &Partition) -> Rational {
    shifted_psum_extended(k, lambda, lambda.len())
}

/// The defining sum run over `n >= len` rows; the value does not depend on `n`.
pub fn shifted_psum_extended(k: u32, lambda: &Partition, n: usize) -> Rational {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut acc = Rational::zero();
    for i in 1..=n {
        let li = lambda.0.get(i - 1).copied().unwrap_or(0) as i64;
        let a = rat(li - i as i64) + &half;
        let b = rat(-(i as i64)) + &half;
        acc += num_traits::pow(a, k as usize) - num_traits::pow(b, k as usize);
    }
    acc
}

/// Character table of `S_d` with dimensions and class sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub degree: u32,
    pub partitions: Vec<Partition>,
    /// `values[i][j] = chi^{partitions[i]}_{partitions[j]}`.
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn build(d: u32) -> CharacterTable {
        let partitions = partitions_of(d);
        let values = partitions
            .iter()
            .map(|l| partitions.iter().map(|m| mn(l, &m.0)).collect())
            .collect();
        CharacterTable {
            degree: d,
            partitions,
            values,
        }
    }

    fn index(&self, p: &Partition) -> Option<usize> {
        self.partitions.binary_search(p).ok()
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<i64> {
        Some(self.values[self.index(lambda)?][self.index(mu)?])
    }

    pub fn dimension(&self, lambda: &Partition) -> Option<i64> {
        self.get(lambda, &Partition(vec![1; self.degree as usize]))
    }

    pub fn class_size(&self, mu: &Partition) -> Rational {
        class_size(mu)
    }

    /// Column orthogonality and the sum of squared dimensions.
    pub fn validate(&self) -> Result<()> {
        let expected = partitions_of(self.degree);
        if self.partitions != expected || self.values.len() != expected.len() {
            return Err(Error::Cache(format!(
                "table for degree {} has the wrong shape",
                self.degree
            )));
        }
        let n = expected.len();
        for a in 0..n {
            if self.values[a].len() != n {
                return Err(Error::Cache("ragged character table".into()));
            }
        }
        // Row labels: dimension by hook lengths and the value on a
        // transposition by the content sum.
        let ones = self.index(&Partition(vec![1; self.degree as usize]));
        let transposition = (self.degree >= 2).then(|| {
            let mut t = vec![1; self.degree as usize - 2];
            t.insert(0, 2);
            self.index(&Partition(t))
        });
        for (l, lambda) in self.partitions.iter().enumerate() {
            let dim = dimension(lambda);
            if ones.map(|c| rat(self.values[l][c])) != Some(dim.clone()) {
                return Err(Error::Cache(format!("wrong dimension in row {lambda:?}")));
            }
            if let Some(Some(c)) = transposition {
                let content: i64 = lambda
                    .0
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (0..p as i64).map(|j| j - i as i64).sum::<i64>())
                    .sum();
                let pairs = rat(self.degree as i64 * (self.degree as i64 - 1) / 2);
                if rat(self.values[l][c]) * pairs != dim * rat(content) {
                    return Err(Error::Cache(format!("wrong transposition value in row {lambda:?}")));
                }
            }
        }
        for a in 0..n {
            for b in a..n {
                let s: BigInt = (0..n)
                    .map(|l| BigInt::from(self.values[l][a]) * BigInt::from(self.values[l][b]))
                    .sum();
                let want = if a == b {
                    self.partitions[a].z()
                } else {
                    BigInt::zero()
                };
                if s != want {
                    return Err(Error::Cache(format!(
                        "column orthogonality fails at {:?}, {:?}",
                        self.partitions[a], self.partitions[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Seed the global memo with this table's values.
    pub fn install(&self) {
        let mut m = memo().lock().unwrap();
        for (i, l) in self.partitions.iter().enumerate() {
            for (j, mu) in self.partitions.iter().enumerate() {
                m.insert((l.0.clone(), mu.0.clone()), self.values[i][j]);
            }
        }
    }
}

/// Shorthand used throughout the crate and its tests.
pub fn part(parts: &[u32]) -> Partition {
    Partition::from_parts(parts.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(1), vec![part(&[1])]);
        let p4 = partitions_of(4);
        assert_eq!(p4.len(), 5);
        assert_eq!(p4[0], part(&[4]));
        assert_eq!(p4[4], part(&[1, 1, 1, 1]));
        let mut sorted = p4.clone();
        sorted.sort();
        assert_eq!(sorted, p4);
        assert!(part(&[2]) < part(&[1, 1]));
        assert!(part(&[1, 1]) < part(&[3]));
    }

    #[test]
    fn text_form() {
        assert_eq!(part(&[3, 1, 1]).to_string(), "3,1,1");
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), part(&[3, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
    }

    #[test]
    fn class_sizes_and_dims() {
        assert_eq!(class_size(&part(&[1, 1, 1])), rat(1));
        assert_eq!(class_size(&part(&[2, 1])), rat(3));
        assert_eq!(class_size(&part(&[3])), rat(2));
        assert_eq!(dimension(&part(&[5])), rat(1));
        assert_eq!(dimension(&part(&[2, 1])), rat(2));
        assert_eq!(dimension(&part(&[3, 1])), rat(3));
    }

    #[test]
    fn character_examples() {
        assert_eq!(character(&part(&[1, 1]), &part(&[2])).unwrap(), rat(-1));
        assert_eq!(character(&part(&[2, 2]), &part(&[2, 2])).unwrap(), rat(2));
        assert!(character(&part(&[2]), &part(&[1])).is_err());
        for d in 0..=6 {
            let ones = Partition(vec![1; d as usize]);
            for l in partitions_of(d) {
                assert_eq!(character(&l, &ones).unwrap(), dimension(&l));
            }
        }
    }

    #[test]
    fn validate_rejects_tampering() {
        let good = CharacterTable::build(5);
        // conjugate rows swapped: still column-orthogonal, same dimensions
        let mut swapped = good.clone();
        let a = swapped.partitions.iter().position(|p| *p == part(&[4, 1])).unwrap();
        let b = swapped.partitions.iter().position(|p| *p == part(&[2, 1, 1, 1])).unwrap();
        swapped.values.swap(a, b);
        assert!(swapped.validate().is_err());
        let mut flipped = good.clone();
        flipped.values[0][0] += 1;
        assert!(flipped.validate().is_err());
        let mut short = good;
        short.values.pop();
        assert!(short.validate().is_err());
    }

    #[test]
    fn orthogonality() {
        for d in 0..=7 {
            let t = CharacterTable::build(d);
            t.validate().unwrap();
            let n = t.partitions.len();
            let dfact = factorial(d as u64);
            for a in 0..n {
                for b in 0..n {
                    let s: Rational = (0..n)
                        .map(|m| {
                            class_size(&t.partitions[m])
                                * rat(t.values[a][m] * t.values[b][m])
                        })
                        .sum();
                    let want = if a == b { dfact.clone() } else { rat(0) };
                    assert_eq!(s, want);
                }
            }
            let dims: Rational = t
                .partitions
                .iter()
                .map(|l| dimension(l) * dimension(l))
                .sum();
            assert_eq!(dims, dfact);
        }
    }

    #[test]
    fn shifted_power_sums() {
        for d in 0..=8 {
            for l in partitions_of(d) {
                assert_eq!(shifted_psum(1, &l), rat(d as i64));
                for extra in 1..4 {
                    assert_eq!(
                        shifted_psum_extended(3, &l, l.len() + extra),
                        shifted_psum(3, &l)
                    );
                }
            }
        }
        assert_eq!(shifted_psum(2, &part(&[2])), rat(2));
        assert_eq!(shifted_psum(3, &part(&[1])), frac(1, 4));
        assert_eq!(shifted_psum(3, &part(&[2])), frac(7, 2));
        assert_eq!(shifted_psum(3, &part(&[1, 1])), frac(7, 2));
    }

    #[test]
    fn ribbons_are_dual() {
        for d in 0..=5 {
            for l in partitions_of(d) {
                for k in 1..=4 {
                    for (big, s) in ribbon_additions(&l, k) {
                        assert!(ribbon_removals(&big, k).contains(&(l.clone(), s)));
                    }
                }
            }
        }
        assert_eq!(
            ribbon_additions(&Partition::empty(), 2),
            vec![(part(&[2]), 1), (part(&[1, 1]), -1)]
        );
    }
}
