use super::Rational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// Fewer independent equations than unknowns.
    RankDeficient { rank: usize, unknowns: usize },
    /// No exact solution exists.
    Inconsistent,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::RankDeficient { rank, unknowns } => {
                write!(f, "rank {rank} < {unknowns} unknowns")
            }
            SolveError::Inconsistent => write!(f, "inconsistent system"),
        }
    }
}

/// Row-reduce in place; returns pivot columns.
fn reduce(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    reduce(&mut m, cols).len()
}

/// Solve `A x = b` exactly. The system may be overdetermined but must have
/// full column rank and be consistent.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    assert_eq!(a.len(), b.len());
    let unknowns = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut m, unknowns + 1);
    if pivots.contains(&unknowns) {
        return Err(SolveError::Inconsistent);
    }
    if pivots.len() < unknowns {
        return Err(SolveError::RankDeficient {
            rank: pivots.len(),
            unknowns,
        });
    }
    debug_assert!(m[..unknowns].iter().enumerate().all(|(i, r)| r[i].is_one()));
    Ok(m[..unknowns].iter().map(|r| r[unknowns].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    #[test]
    fn solves_square_and_overdetermined() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)], vec![rat(3), rat(4)]];
        let b = vec![rat(3), rat(5), rat(8)];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
    }

    #[test]
    fn detects_failures() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(
            solve_exact(&a, &[rat(1), rat(2)]),
            Err(SolveError::RankDeficient { rank: 1, unknowns: 2 })
        );
        assert_eq!(solve_exact(&a, &[rat(1), rat(3)]), Err(SolveError::Inconsistent));
        assert_eq!(rank(&a), 1);
    }
}
