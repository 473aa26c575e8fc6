//! Exact rational linear algebra: Gaussian elimination, rank, and integer
//! Smith normal form. Everything here works on dense matrices, which is
//! adequate for the desk-scale inputs this crate targets.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rank of a matrix over the rationals, by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..ncols {
                let sub = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Whether the linear system `coeffs * x = rhs` has a solution.
pub fn system_consistent(coeffs: &[Vec<Rat>], rhs: &[Rat]) -> bool {
    let plain = rank(coeffs);
    let augmented: Vec<Vec<Rat>> = coeffs
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    rank(&augmented) == plain
}

/// Smith normal form invariant factors of an integer matrix.
///
/// Returns the nonzero diagonal entries d_1 | d_2 | ... (all positive).
pub fn smith_invariant_factors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut factors = Vec::new();
    let mut top = 0;
    while top < nrows && top < ncols {
        // Find a nonzero entry of minimal absolute value in the working block.
        let mut best: Option<(usize, usize)> = None;
        for r in top..nrows {
            for c in top..ncols {
                if !m[r][c].is_zero() {
                    match best {
                        Some((br, bc)) if m[br][bc].abs() <= m[r][c].abs() => {}
                        _ => best = Some((r, c)),
                    }
                }
            }
        }
        let Some((br, bc)) = best else { break };
        m.swap(top, br);
        for row in m.iter_mut() {
            row.swap(top, bc);
        }
        // Clear the pivot row and column by repeated remainder steps.
        loop {
            let mut clean = true;
            for r in top + 1..nrows {
                if m[r][top].is_zero() {
                    continue;
                }
                let q = m[r][top].div_floor(&m[top][top]);
                for c in top..ncols {
                    let sub = &q * &m[top][c];
                    m[r][c] = &m[r][c] - sub;
                }
                if !m[r][top].is_zero() {
                    m.swap(top, r);
                    clean = false;
                }
            }
            for c in top + 1..ncols {
                if m[top][c].is_zero() {
                    continue;
                }
                let q = m[top][c].div_floor(&m[top][top]);
                for row in m.iter_mut().skip(top) {
                    let sub = &q * &row[top];
                    row[c] = &row[c] - sub;
                }
                if !m[top][c].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(top, c);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        factors.push(m[top][top].abs());
        top += 1;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..factors.len().saturating_sub(1) {
            if !(&factors[i + 1] % &factors[i]).is_zero() {
                let g = factors[i].gcd(&factors[i + 1]);
                let l = factors[i].lcm(&factors[i + 1]);
                factors[i] = g;
                factors[i + 1] = l;
                changed = true;
            }
        }
    }
    factors.retain(|f| !f.is_zero());
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn rank_basic() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn snf_examples() {
        let rows: Vec<Vec<BigInt>> = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(4), BigInt::from(16)],
        ];
        let f = smith_invariant_factors(&rows);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
    }

    #[test]
    fn snf_single_relator() {
        let rows = vec![vec![BigInt::from(2)]];
        assert_eq!(smith_invariant_factors(&rows), vec![BigInt::from(2)]);
    }
}
