//! Resonance walls, chamber polynomials and wall crossing.
//!
//! Points of `V` are pairs of ordered tuples `(x_1..x_m; y_1..y_n)` of positive
//! integers with equal sums. Polynomials are written in the free coordinates
//! `x_1..x_m, y_1..y_{n-1}`.

use crate::arith::{rat, solve_exact, zeta_ratio, LinearForm, Poly, Rational, SeriesSpace, SolveError, TruncatedSeries};
use crate::error::{precondition, Error, Result};
use crate::hurwitz::{h_char, HurwitzQuery};
use crate::partitions::Partition;
use crate::wedge::h_series;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// The wall `x_I = y_J`, canonical with `1 in I`. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WallSpec {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl WallSpec {
    pub fn new(m: usize, n: usize, i: Vec<usize>, j: Vec<usize>) -> Result<WallSpec> {
        let proper = |set: &[usize], len: usize| {
            !set.is_empty() && set.len() < len && set.iter().all(|&x| x < len)
        };
        if !proper(&i, m) || !proper(&j, n) {
            return precondition("wall index sets must be non-empty proper subsets");
        }
        let mut i = i;
        let mut j = j;
        i.sort_unstable();
        i.dedup();
        j.sort_unstable();
        j.dedup();
        if i[0] != 0 {
            i = (0..m).filter(|x| !i.contains(x)).collect();
            j = (0..n).filter(|x| !j.contains(x)).collect();
        }
        Ok(WallSpec { i, j })
    }

    /// `x_I - y_J` at a point.
    pub fn value(&self, x: &[u32], y: &[u32]) -> i64 {
        let xi: i64 = self.i.iter().map(|&a| x[a] as i64).sum();
        let yj: i64 = self.j.iter().map(|&b| y[b] as i64).sum();
        xi - yj
    }
}

impl fmt::Display for WallSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.i.iter().map(|a| format!("x{}", a + 1)).collect();
        let ys: Vec<String> = self.j.iter().map(|b| format!("y{}", b + 1)).collect();
        write!(f, "{} = {}", xs.join("+"), ys.join("+"))
    }
}

/// All canonical walls for `m` and `n` parts.
pub fn walls(m: usize, n: usize) -> Vec<WallSpec> {
    let mut out = Vec::new();
    if m < 2 || n < 2 {
        return out;
    }
    for imask in 1u32..(1 << m) - 1 {
        if imask & 1 == 0 {
            continue;
        }
        for jmask in 1u32..(1 << n) - 1 {
            out.push(WallSpec {
                i: (0..m).filter(|a| imask >> a & 1 == 1).collect(),
                j: (0..n).filter(|b| jmask >> b & 1 == 1).collect(),
            });
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A chamber given by one sign per canonical wall.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChamberSpec {
    pub m: usize,
    pub n: usize,
    pub signs: Vec<(WallSpec, Sign)>,
}

impl ChamberSpec {
    pub fn contains(&self, x: &[u32], y: &[u32]) -> bool {
        x.len() == self.m
            && y.len() == self.n
            && self.signs.iter().all(|(w, s)| {
                let v = w.value(x, y);
                match s {
                    Sign::Plus => v > 0,
                    Sign::Minus => v < 0,
                }
            })
    }

    /// The adjacent chamber across `wall`.
    pub fn across(&self, wall: &WallSpec) -> Result<ChamberSpec> {
        let mut out = self.clone();
        let slot = out
            .signs
            .iter_mut()
            .find(|(w, _)| w == wall)
            .ok_or_else(|| Error::Precondition(format!("{wall} is not a wall of this chamber")))?;
        slot.1 = slot.1.flip();
        Ok(out)
    }

    pub fn sign_of(&self, wall: &WallSpec) -> Option<Sign> {
        self.signs.iter().find(|(w, _)| w == wall).map(|(_, s)| *s)
    }
}

/// Why a point has no chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberError {
    OnWall(WallSpec),
    NotInV,
}

/// The chamber containing `(x; y)`.
pub fn chamber_of(x: &[u32], y: &[u32]) -> std::result::Result<ChamberSpec, ChamberError> {
    if x.is_empty()
        || y.is_empty()
        || x.iter().chain(y).any(|&v| v == 0)
        || x.iter().sum::<u32>() != y.iter().sum::<u32>()
    {
        return Err(ChamberError::NotInV);
    }
    let mut signs = Vec::new();
    for w in walls(x.len(), y.len()) {
        let v = w.value(x, y);
        if v == 0 {
            return Err(ChamberError::OnWall(w));
        }
        signs.push((w, if v > 0 { Sign::Plus } else { Sign::Minus }));
    }
    Ok(ChamberSpec {
        m: x.len(),
        n: y.len(),
        signs,
    })
}

/// Exact polynomial in the free coordinates agreeing with `h` on a chamber.
#[derive(Clone, Debug, PartialEq)]
pub struct FittedPolynomial {
    pub r: u32,
    pub s: u32,
    pub chamber: ChamberSpec,
    pub degree_bound: i32,
    pub poly: Poly,
    /// Points used for fitting and validation, in the chamber.
    pub samples: Vec<(Vec<u32>, Vec<u32>)>,
}

pub(crate) fn free_coordinates(x: &[u32], y: &[u32]) -> Vec<Rational> {
    x.iter()
        .chain(&y[..y.len() - 1])
        .map(|&v| rat(v as i64))
        .collect()
}

impl FittedPolynomial {
    pub fn eval(&self, x: &[u32], y: &[u32]) -> Rational {
        self.poly.eval(&free_coordinates(x, y))
    }

    pub fn variable_names(&self) -> Vec<String> {
        let m = self.chamber.m;
        let n = self.chamber.n;
        (1..=m)
            .map(|i| format!("x{i}"))
            .chain((1..n).map(|j| format!("y{j}")))
            .collect()
    }

    pub fn render(&self) -> String {
        let names = self.variable_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.poly.render_with(&refs)
    }
}

/// All exponent vectors in `vars` variables of total degree at most `deg`.
fn monomials(vars: usize, deg: i32) -> Vec<Vec<i32>> {
    fn go(vars: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, deg, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `d` into `k` positive parts.
fn compositions(d: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return if d >= 1 { vec![vec![d]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..d {
        for mut rest in compositions(d - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Lattice points of the chamber ordered by degree, up to degree `max_d`.
pub fn chamber_points(chamber: &ChamberSpec, max_d: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let xs = compositions(d, chamber.m);
        let ys = compositions(d, chamber.n);
        for x in &xs {
            for y in &ys {
                if chamber.contains(x, y) {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
    }
    out
}

/// Degree bound `(r+1)s + 1 - m - n`.
pub fn degree_bound(r: u32, s: u32, m: usize, n: usize) -> i32 {
    ((r + 1) * s) as i32 + 1 - m as i32 - n as i32
}

struct Evaluator {
    r: u32,
    s: u32,
    cache: HashMap<(Partition, Partition), Rational>,
}

impl Evaluator {
    fn value(&mut self, x: &[u32], y: &[u32]) -> Result<Rational> {
        let key = (Partition::from_parts(x.to_vec()), Partition::from_parts(y.to_vec()));
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let q = HurwitzQuery::new(self.r, self.s, key.0.clone(), key.1.clone(), false)?;
        let v = h_char(&q)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }
}

const MAX_SAMPLE_DEGREE: u32 = 60;

/// Interpolate `h^{r,s}` on a chamber; every fifth sample is held out and
/// must be reproduced exactly.
pub fn fit_polynomial(r: u32, s: u32, chamber: &ChamberSpec) -> Result<FittedPolynomial> {
    let deg = degree_bound(r, s, chamber.m, chamber.n);
    if deg < 0 {
        return precondition(format!("degree bound {deg} is negative"));
    }
    let vars = chamber.m + chamber.n - 1;
    let monos = monomials(vars, deg);
    let needed = monos.len() + monos.len() / 4 + 1;
    let mut eval = Evaluator {
        r,
        s,
        cache: HashMap::new(),
    };
    let mut max_d = (chamber.m.max(chamber.n) as u32).max(2);
    loop {
        let points = chamber_points(chamber, max_d);
        if points.len() >= needed {
            let (mut rows, mut rhs, mut held) = (Vec::new(), Vec::new(), Vec::new());
            for (idx, (x, y)) in points.iter().enumerate() {
                if idx % 5 == 4 {
                    held.push((x.clone(), y.clone()));
                    continue;
                }
                let coords = free_coordinates(x, y);
                rows.push(
                    monos
                        .iter()
                        .map(|e| Poly::monomial(e.clone(), rat(1)).eval(&coords))
                        .collect::<Vec<_>>(),
                );
                rhs.push(eval.value(x, y)?);
            }
            match solve_exact(&rows, &rhs) {
                Ok(coeffs) => {
                    let mut poly = Poly::zero();
                    for (e, c) in monos.iter().zip(coeffs) {
                        poly = poly + &Poly::monomial(e.clone(), c);
                    }
                    let fit = FittedPolynomial {
                        r,
                        s,
                        chamber: chamber.clone(),
                        degree_bound: deg,
                        poly,
                        samples: points.clone(),
                    };
                    for (x, y) in &held {
                        let want = eval.value(x, y)?;
                        let got = fit.eval(x, y);
                        if got != want {
                            return Err(Error::Consistency(format!(
                                "held-out point ({x:?}; {y:?}): fit gives {got}, h = {want}"
                            )));
                        }
                    }
                    return Ok(fit);
                }
                Err(SolveError::Inconsistent) => {
                    return Err(Error::Consistency(format!(
                        "no polynomial of degree <= {deg} fits the chamber samples"
                    )));
                }
                Err(SolveError::RankDeficient { .. }) => {}
            }
        }
        max_d += 1;
        if max_d > MAX_SAMPLE_DEGREE {
            return Err(Error::Sampling(format!(
                "chamber too thin: {} points up to degree {MAX_SAMPLE_DEGREE}, need {needed} in general position",
                points.len()
            )));
        }
    }
}

/// Outcome of the structure checks on a fitted polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub degree_bound: i32,
    /// Degrees of the nonzero homogeneous components, descending.
    pub degrees: Vec<i32>,
    pub allowed_degrees: Vec<i32>,
    pub degrees_ok: bool,
    pub parity_ok: bool,
    pub positivity_ok: bool,
    /// First sample point violating positivity, if any.
    pub witness: Option<(Vec<u32>, Vec<u32>)>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.degrees_ok && self.parity_ok && self.positivity_ok
    }
}

/// Degrees in `{D - 2k : 0 <= k <= g}`, uniform parity, and
/// `(-1)^k P_{D-2k} > 0` at every sample point.
pub fn structure_check(fit: &FittedPolynomial) -> StructureReport {
    let d = fit.degree_bound;
    let (m, n) = (fit.chamber.m as i32, fit.chamber.n as i32);
    let genus_num = (fit.r * fit.s) as i32 + 2 - m - n;
    let g = if genus_num >= 0 && genus_num % 2 == 0 {
        genus_num / 2
    } else {
        -1
    };
    let allowed: Vec<i32> = (0..=g).map(|k| d - 2 * k).collect();
    let degrees: Vec<i32> = (0..=d)
        .rev()
        .filter(|&k| !fit.poly.homogeneous_part(k).is_zero())
        .collect();
    let degrees_ok = degrees.iter().all(|k| allowed.contains(k));
    let parity_ok = degrees.iter().all(|k| (d - k) % 2 == 0);
    let mut witness = None;
    'outer: for (x, y) in &fit.samples {
        let coords = free_coordinates(x, y);
        for &k in &degrees {
            let idx = (d - k) / 2;
            let v = fit.poly.homogeneous_part(k).eval(&coords);
            let signed = if idx % 2 == 0 { v } else { -v };
            if !signed.is_positive() {
                witness = Some((x.clone(), y.clone()));
                break 'outer;
            }
        }
    }
    StructureReport {
        degree_bound: d,
        degrees,
        allowed_degrees: allowed,
        degrees_ok,
        parity_ok,
        positivity_ok: witness.is_none(),
        witness,
    }
}

/// Per-point comparison of the two sides of the wall-crossing formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallCrossingPoint {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub delta: i64,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallCrossingReport {
    pub wall: WallSpec,
    pub points: Vec<WallCrossingPoint>,
}

impl WallCrossingReport {
    pub fn passed(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(|p| p.equal)
    }
}

/// Right-hand side of the wall-crossing formula at a point with `delta > 0`.
pub fn wall_crossing_rhs(r: u32, s: u32, wall: &WallSpec, x: &[u32], y: &[u32]) -> Result<Rational> {
    let delta = wall.value(x, y);
    if delta <= 0 {
        return precondition("wall-crossing terms need x_I - y_J > 0");
    }
    let pick = |v: &[u32], idx: &[usize], inside: bool| -> Vec<u32> {
        (0..v.len())
            .filter(|a| idx.contains(a) == inside)
            .map(|a| v[a])
            .collect()
    };
    let mu_i = Partition::from_parts(pick(x, &wall.i, true));
    let mu_ic = pick(x, &wall.i, false);
    let nu_j = pick(y, &wall.j, true);
    let nu_jc = Partition::from_parts(pick(y, &wall.j, false));
    let mut nu_j_delta = nu_j.clone();
    nu_j_delta.push(delta as u32);
    let nu_j_delta = Partition::from_parts(nu_j_delta);
    let mut mu_ic_delta = mu_ic.clone();
    mu_ic_delta.push(delta as u32);
    let mu_ic_delta = Partition::from_parts(mu_ic_delta);

    let su = s as usize;
    let space = SeriesSpace::uniform("z", su, r + 1)?;
    let dl = rat(delta);
    let all = LinearForm::sum_of(0..su);
    let outer = zeta_ratio(&dl, &all, &space)?.scale(&(&dl * &dl));
    let mut total = TruncatedSeries::zero(&space);
    for kmask in 0u32..(1 << su) {
        let k: Vec<usize> = (0..su).filter(|a| kmask >> a & 1 == 1).collect();
        let kc: Vec<usize> = (0..su).filter(|a| kmask >> a & 1 == 0).collect();
        let den_k = zeta_ratio(&dl, &LinearForm::sum_of(k.iter().copied()), &space)?.inverse()?;
        let den_kc = zeta_ratio(&dl, &LinearForm::sum_of(kc.iter().copied()), &space)?.inverse()?;
        let h1 = h_series(k.len(), &mu_i, &nu_j_delta, &vec![r + 1; k.len()])?.embed(&space, &k);
        let h2 = h_series(kc.len(), &mu_ic_delta, &nu_jc, &vec![r + 1; kc.len()])?.embed(&space, &kc);
        total = total.add(&outer.mul(&den_k).mul(&den_kc).mul(&h1).mul(&h2));
    }
    Ok(total.coefficient_of(&vec![r + 1; su]))
}

/// Compare the jump `fit(c+) - fit(c-)` across `wall` with the wall-crossing
/// formula at `points`, where `c+` is the side with `x_I - y_J > 0`.
pub fn wall_crossing(
    fit1: &FittedPolynomial,
    fit2: &FittedPolynomial,
    wall: &WallSpec,
    points: &[(Vec<u32>, Vec<u32>)],
) -> Result<WallCrossingReport> {
    let differing: Vec<&WallSpec> = fit1
        .chamber
        .signs
        .iter()
        .zip(&fit2.chamber.signs)
        .filter(|(a, b)| a.1 != b.1)
        .map(|(a, _)| &a.0)
        .collect();
    if differing != vec![wall] || fit1.r != fit2.r || fit1.s != fit2.s {
        return precondition("chambers must differ exactly at the given wall");
    }
    let (plus, minus) = if fit1.chamber.sign_of(wall) == Some(Sign::Plus) {
        (fit1, fit2)
    } else {
        (fit2, fit1)
    };
    let mut out = Vec::new();
    for (x, y) in points {
        let lhs = plus.eval(x, y) - minus.eval(x, y);
        let rhs = wall_crossing_rhs(fit1.r, fit1.s, wall, x, y)?;
        out.push(WallCrossingPoint {
            x: x.clone(),
            y: y.clone(),
            delta: wall.value(x, y),
            equal: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(WallCrossingReport {
        wall: wall.clone(),
        points: out,
    })
}
