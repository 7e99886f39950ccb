//! Vacuum expectations of E-operator words by commutation patterns.
//!
//! A word is reduced by repeatedly taking its leftmost negative-energy
//! operator and either moving it one step left or replacing the adjacent pair
//! by their commutator. Terminal words consist only of zero-energy operators.

use crate::arith::{rat, zeta_ratio, zeta_series, LinearForm, Rational, SeriesSpace, TruncatedSeries};
use crate::error::{precondition, Result};
use crate::partitions::Partition;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// `E_{mu_I - nu_J}(z_K)`; index sets are bit masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EOp {
    pub energy: i64,
    pub i_set: u32,
    pub j_set: u32,
    pub k_set: u32,
    /// An original middle operator: its vacuum expectation is zero, so it
    /// must take part in a commutator for the term to survive.
    pub regularized: bool,
    /// Set on a zero-energy operator produced by `[E_a, E_{-a}]`; the factor
    /// `zeta(a z_K)` is applied lazily.
    pub pending: Option<i64>,
}

impl EOp {
    pub fn alpha_mu(i: usize, part: u32) -> EOp {
        EOp {
            energy: part as i64,
            i_set: 1 << i,
            j_set: 0,
            k_set: 0,
            regularized: false,
            pending: None,
        }
    }

    pub fn alpha_nu(j: usize, part: u32) -> EOp {
        EOp {
            energy: -(part as i64),
            i_set: 0,
            j_set: 1 << j,
            k_set: 0,
            regularized: false,
            pending: None,
        }
    }

    pub fn middle(k: usize) -> EOp {
        EOp {
            energy: 0,
            i_set: 0,
            j_set: 0,
            k_set: 1 << k,
            regularized: true,
            pending: None,
        }
    }

    fn key(&self) -> OpKey {
        (self.energy, self.k_set, self.regularized, self.pending)
    }
}

type OpKey = (i64, u32, bool, Option<i64>);

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

fn z_of(mask: u32) -> LinearForm {
    LinearForm::sum_of(bits(mask))
}

/// Result of `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Commutator {
    pub op: EOp,
    /// Argument of the zeta factor, `e_a z_b - e_b z_a`.
    pub factor: LinearForm,
    /// `Some(n)` for `[E_n(0), E_{-n}(0)] = n`.
    pub scalar: Option<i64>,
}

/// `[E_a(z), E_b(w)] = zeta(a w - b z) E_{a+b}(z + w)`.
pub fn commute(a: &EOp, b: &EOp) -> Result<Commutator> {
    if a.i_set & b.i_set != 0 || a.j_set & b.j_set != 0 || a.k_set & b.k_set != 0 {
        return precondition("commutator of operators with overlapping index sets");
    }
    let energy = a.energy + b.energy;
    let factor = z_of(b.k_set)
        .scale(&rat(a.energy))
        .add(&z_of(a.k_set).scale(&rat(-b.energy)));
    let scalar = (energy == 0 && a.k_set == 0 && b.k_set == 0).then_some(a.energy);
    Ok(Commutator {
        op: EOp {
            energy,
            i_set: a.i_set | b.i_set,
            j_set: a.j_set | b.j_set,
            k_set: a.k_set | b.k_set,
            regularized: false,
            pending: (energy == 0).then_some(a.energy),
        },
        factor,
        scalar,
    })
}

/// `prod alpha_{mu_i} prod_k E~_0(z_k) prod alpha_{-nu_j}`.
pub fn hurwitz_word(s: usize, mu: &Partition, nu: &Partition) -> Vec<EOp> {
    let mut w: Vec<EOp> = mu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| EOp::alpha_mu(i, p))
        .collect();
    w.extend((0..s).map(EOp::middle));
    w.extend(nu.parts().iter().enumerate().map(|(j, &p)| EOp::alpha_nu(j, p)));
    w
}

/// Pattern sums split by the number of terminal blocks.
#[derive(Clone, Debug)]
pub struct PatternSum {
    /// blocks -> (series, number of patterns)
    pub by_blocks: BTreeMap<usize, (TruncatedSeries, u64)>,
}

impl PatternSum {
    fn empty() -> Self {
        PatternSum {
            by_blocks: BTreeMap::new(),
        }
    }

    pub fn total(&self, space: &Arc<SeriesSpace>) -> TruncatedSeries {
        self.by_blocks
            .values()
            .fold(TruncatedSeries::zero(space), |acc, (s, _)| acc.add(s))
    }

    pub fn connected(&self, space: &Arc<SeriesSpace>) -> TruncatedSeries {
        self.by_blocks
            .get(&1)
            .map(|(s, _)| s.clone())
            .unwrap_or_else(|| TruncatedSeries::zero(space))
    }

    pub fn pattern_count(&self) -> u64 {
        self.by_blocks.values().map(|(_, n)| n).sum()
    }

    pub fn connected_pattern_count(&self) -> u64 {
        self.by_blocks.get(&1).map_or(0, |(_, n)| *n)
    }
}

/// Memoised recursive evaluator over a fixed series space.
pub struct PatternEngine {
    space: Arc<SeriesSpace>,
    memo: HashMap<Vec<OpKey>, Arc<PatternSum>>,
    zetas: HashMap<Vec<(usize, i64)>, TruncatedSeries>,
    ratios: HashMap<(i64, u32), TruncatedSeries>,
}

impl PatternEngine {
    pub fn new(space: Arc<SeriesSpace>) -> Self {
        PatternEngine {
            space,
            memo: HashMap::new(),
            zetas: HashMap::new(),
            ratios: HashMap::new(),
        }
    }

    pub fn space(&self) -> &Arc<SeriesSpace> {
        &self.space
    }

    fn zeta(&mut self, l: &LinearForm) -> TruncatedSeries {
        let key: Vec<(usize, i64)> = l
            .iter()
            .map(|(i, c)| (i, i64::try_from(c.to_integer()).expect("small coefficient")))
            .collect();
        if let Some(z) = self.zetas.get(&key) {
            return z.clone();
        }
        let z = zeta_series(l, &self.space).expect("variables within space");
        self.zetas.insert(key, z.clone());
        z
    }

    fn ratio(&mut self, a: i64, k_set: u32) -> TruncatedSeries {
        if let Some(z) = self.ratios.get(&(a, k_set)) {
            return z.clone();
        }
        let z = zeta_ratio(&rat(a), &z_of(k_set), &self.space).expect("variables within space");
        self.ratios.insert((a, k_set), z.clone());
        z
    }

    /// Sum over all commutation patterns of the word.
    pub fn evaluate(&mut self, word: &[EOp]) -> Arc<PatternSum> {
        let key: Vec<OpKey> = word.iter().map(EOp::key).collect();
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.step(word));
        self.memo.insert(key, v.clone());
        v
    }

    fn step(&mut self, word: &[EOp]) -> PatternSum {
        // Anything that is not negative and has no negative operator to its
        // right meets the vacuum with a zero result.
        let mut seen_negative = false;
        for op in word.iter().rev() {
            if op.energy < 0 {
                seen_negative = true;
            } else if !seen_negative && (op.energy > 0 || op.regularized) {
                return PatternSum::empty();
            }
        }
        let Some(t) = word.iter().position(|op| op.energy < 0) else {
            debug_assert!(word.len() != 1 || word[0].energy == 0);
            let mut value = TruncatedSeries::one(&self.space);
            for op in word {
                let a = op.pending.expect("terminal operator comes from a commutator");
                value = value.mul(&self.ratio(a, op.k_set));
            }
            let mut out = PatternSum::empty();
            if !value.is_zero() {
                out.by_blocks.insert(word.len(), (value, 1));
            }
            return out;
        };
        if t == 0 {
            return PatternSum::empty();
        }
        let (left, right) = (word[t - 1], word[t]);
        let mut passed = word.to_vec();
        passed.swap(t - 1, t);
        let mut out = (*self.evaluate(&passed)).clone();

        let c = commute(&left, &right).expect("disjoint by construction");
        let factor = if c.op.energy == 0 {
            // Deferred: becomes zeta(a z_K) on a later commutator, or the
            // ratio zeta(a z_K)/zeta(z_K) at the end.
            Some(TruncatedSeries::one(&self.space))
        } else if c.factor.is_zero() {
            None
        } else {
            let mut f = self.zeta(&c.factor);
            if let Some(a) = left.pending {
                f = f.mul(&self.zeta(&z_of(left.k_set).scale(&rat(a))));
            }
            Some(f)
        };
        if let Some(f) = factor {
            let mut reduced = word[..t - 1].to_vec();
            reduced.push(c.op);
            reduced.extend_from_slice(&word[t + 1..]);
            let child = self.evaluate(&reduced);
            for (&blocks, (series, n)) in &child.by_blocks {
                let term = series.mul(&f);
                let slot = out
                    .by_blocks
                    .entry(blocks)
                    .or_insert_with(|| (TruncatedSeries::zero(&self.space), 0));
                slot.0 = slot.0.add(&term);
                slot.1 += n;
            }
        }
        out.by_blocks.retain(|_, (s, n)| !s.is_zero() || *n > 0);
        out
    }
}

fn check(mu: &Partition, nu: &Partition) -> Result<()> {
    if mu.size() != nu.size() {
        return precondition(format!("|{mu:?}| != |{nu:?}|"));
    }
    if mu.len() > 16 || nu.len() > 16 {
        return precondition("too many parts for the pattern engine");
    }
    Ok(())
}

fn normalise(series: TruncatedSeries, mu: &Partition, nu: &Partition) -> TruncatedSeries {
    let norm = Rational::from_integer(mu.product() * nu.product()).recip();
    series.scale(&norm)
}

/// Generating series in `z_1..z_s` (all patterns), normalised by
/// `prod mu_i prod nu_j`; `caps` bounds each `z_k`.
pub fn h_series(s: usize, mu: &Partition, nu: &Partition, caps: &[u32]) -> Result<TruncatedSeries> {
    Ok(h_series_split(s, mu, nu, caps)?.0)
}

/// Connected part of [`h_series`].
pub fn h_series_connected(s: usize, mu: &Partition, nu: &Partition, caps: &[u32]) -> Result<TruncatedSeries> {
    Ok(h_series_split(s, mu, nu, caps)?.1)
}

fn h_series_split(
    s: usize,
    mu: &Partition,
    nu: &Partition,
    caps: &[u32],
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    check(mu, nu)?;
    if caps.len() != s {
        return precondition("one cap per z-variable required");
    }
    let space = SeriesSpace::new((1..=s).map(|k| format!("z{k}")).collect(), caps.to_vec())?;
    let mut engine = PatternEngine::new(space.clone());
    let sum = engine.evaluate(&hurwitz_word(s, mu, nu));
    Ok((
        normalise(sum.total(&space), mu, nu),
        normalise(sum.connected(&space), mu, nu),
    ))
}

/// Full pattern sum for `h^{r,s}_{mu,nu}` with pattern counts.
pub fn pattern_sum(r: u32, s: u32, mu: &Partition, nu: &Partition) -> Result<(Arc<SeriesSpace>, Arc<PatternSum>)> {
    check(mu, nu)?;
    let space = SeriesSpace::uniform("z", s as usize, r + 1)?;
    let mut engine = PatternEngine::new(space.clone());
    let sum = engine.evaluate(&hurwitz_word(s as usize, mu, nu));
    Ok((space, sum))
}

fn extract(r: u32, s: u32, series: &TruncatedSeries, mu: &Partition, nu: &Partition) -> Rational {
    let c = series.coefficient_of(&vec![r + 1; s as usize]);
    c / Rational::from_integer(mu.product() * nu.product())
}

/// Disconnected number from the pattern sum.
pub fn hurwitz_patterns(r: u32, s: u32, mu: &Partition, nu: &Partition) -> Result<Rational> {
    let (space, sum) = pattern_sum(r, s, mu, nu)?;
    Ok(extract(r, s, &sum.total(&space), mu, nu))
}

/// Connected number from the single-block patterns.
pub fn connected_patterns(r: u32, s: u32, mu: &Partition, nu: &Partition) -> Result<Rational> {
    let (space, sum) = pattern_sum(r, s, mu, nu)?;
    Ok(extract(r, s, &sum.connected(&space), mu, nu))
}

/// Operator label in a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpLabel {
    pub energy: i64,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
}

impl From<&EOp> for OpLabel {
    fn from(op: &EOp) -> Self {
        OpLabel {
            energy: op.energy,
            i: bits(op.i_set).map(|x| x + 1).collect(),
            j: bits(op.j_set).map(|x| x + 1).collect(),
            k: bits(op.k_set).map(|x| x + 1).collect(),
        }
    }
}

/// One commutator step of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub left: OpLabel,
    pub right: OpLabel,
    /// Argument of the zeta factor, e.g. `2*z1 + 2*z2`; `scalar` for the
    /// constant commutator.
    pub factor: String,
}

/// A single commutation pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternTrace {
    pub steps: Vec<TraceStep>,
    /// Terminal blocks with their `a` in `zeta(a z_S) / zeta(z_S)`.
    pub blocks: Vec<(OpLabel, i64)>,
}

fn render_form(l: &LinearForm) -> String {
    let parts: Vec<String> = l
        .iter()
        .map(|(i, c)| if *c == rat(1) { format!("z{}", i + 1) } else { format!("{c}*z{}", i + 1) })
        .collect();
    parts.join(" + ").replace("+ -", "- ")
}

/// Enumerate all patterns of a word without memoisation.
pub fn trace_patterns(word: &[EOp]) -> Vec<PatternTrace> {
    fn go(word: &[EOp], steps: &mut Vec<TraceStep>, out: &mut Vec<PatternTrace>) {
        let mut seen_negative = false;
        for op in word.iter().rev() {
            if op.energy < 0 {
                seen_negative = true;
            } else if !seen_negative && (op.energy > 0 || op.regularized) {
                return;
            }
        }
        let Some(t) = word.iter().position(|op| op.energy < 0) else {
            out.push(PatternTrace {
                steps: steps.clone(),
                blocks: word.iter().map(|op| (op.into(), op.pending.unwrap_or(0))).collect(),
            });
            return;
        };
        if t == 0 {
            return;
        }
        let mut passed = word.to_vec();
        passed.swap(t - 1, t);
        go(&passed, steps, out);
        let c = commute(&word[t - 1], &word[t]).expect("disjoint by construction");
        if c.op.energy != 0 && c.factor.is_zero() {
            return;
        }
        let factor = match c.scalar {
            Some(_) => "scalar".to_string(),
            None => render_form(&c.factor),
        };
        steps.push(TraceStep {
            left: (&word[t - 1]).into(),
            right: (&word[t]).into(),
            factor,
        });
        let mut reduced = word[..t - 1].to_vec();
        reduced.push(c.op);
        reduced.extend_from_slice(&word[t + 1..]);
        go(&reduced, steps, out);
        steps.pop();
    }
    let mut out = Vec::new();
    go(word, &mut Vec::new(), &mut out);
    out
}
