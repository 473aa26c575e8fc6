//! Exact feasibility of mixed systems of linear equalities and strict
//! inequalities over the rationals, by Fourier-Motzkin elimination.
//!
//! Equalities are removed first by substitution; the remaining strict system
//! is eliminated variable by variable. On success a rational witness point is
//! reconstructed by back-substitution, so callers get an interior sample point
//! for free.

use crate::linalg::{rat, Rat};
use num::{One, Signed, Zero};

/// A strict inequality `coeffs . x > rhs`.
#[derive(Clone, Debug)]
struct Strict {
    coeffs: Vec<Rat>,
    rhs: Rat,
}

impl Strict {
    fn normalized(mut self) -> Self {
        // Scale so the first nonzero coefficient (or the rhs) is +-1.
        let lead = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .or_else(|| (!self.rhs.is_zero()).then(|| self.rhs.clone()));
        if let Some(l) = lead {
            let scale = l.abs();
            for c in &mut self.coeffs {
                *c = &*c / &scale;
            }
            self.rhs = &self.rhs / &scale;
        }
        self
    }
}

/// System of equalities `eq_coeffs . x = eq_rhs` and strict inequalities.
pub struct MixedSystem {
    pub dim: usize,
    eqs: Vec<(Vec<Rat>, Rat)>,
    stricts: Vec<Strict>,
}

impl MixedSystem {
    pub fn new(dim: usize) -> Self {
        MixedSystem {
            dim,
            eqs: Vec::new(),
            stricts: Vec::new(),
        }
    }

    pub fn add_equality(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        assert_eq!(coeffs.len(), self.dim);
        self.eqs.push((coeffs, rhs));
    }

    /// Adds `coeffs . x > rhs`.
    pub fn add_strict_gt(&mut self, coeffs: Vec<Rat>, rhs: Rat) {
        assert_eq!(coeffs.len(), self.dim);
        self.stricts.push(Strict { coeffs, rhs });
    }

    /// Decides feasibility; returns a witness point on success.
    pub fn solve(&self) -> Option<Vec<Rat>> {
        // Row-reduce the equalities, tracking pivot columns.
        let mut eqs: Vec<(Vec<Rat>, Rat)> = self.eqs.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut row = 0;
        for col in 0..self.dim {
            let Some(p) = (row..eqs.len()).find(|&r| !eqs[r].0[col].is_zero()) else {
                continue;
            };
            eqs.swap(row, p);
            let inv = eqs[row].0[col].clone();
            for r in 0..eqs.len() {
                if r == row || eqs[r].0[col].is_zero() {
                    continue;
                }
                let factor = &eqs[r].0[col] / &inv;
                for c in 0..self.dim {
                    let sub = &factor * &eqs[row].0[c];
                    eqs[r].0[c] = &eqs[r].0[c] - sub;
                }
                let sub = &factor * &eqs[row].1;
                eqs[r].1 = &eqs[r].1 - sub;
            }
            pivots.push((row, col));
            row += 1;
            if row == eqs.len() {
                break;
            }
        }
        // Inconsistent equality: 0 = nonzero.
        for (r, (coeffs, rhs)) in eqs.iter().enumerate() {
            if pivots.iter().all(|&(pr, _)| pr != r)
                && coeffs.iter().all(Zero::is_zero)
                && !rhs.is_zero()
            {
                return None;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..self.dim).filter(|c| !pivot_cols.contains(c)).collect();

        // Substitute pivot variables into the strict inequalities, leaving a
        // system in the free variables only.
        let reduced: Vec<Strict> = self
            .stricts
            .iter()
            .map(|s| {
                let mut coeffs: Vec<Rat> = s.coeffs.clone();
                let mut rhs = s.rhs.clone();
                for &(r, c) in &pivots {
                    if coeffs[c].is_zero() {
                        continue;
                    }
                    // x_c = (eq_rhs - sum_{free} eq_coeff * x_f) / eq_coeff[c]
                    let factor = &coeffs[c] / &eqs[r].0[c];
                    rhs = &rhs - &(&factor * &eqs[r].1);
                    for &f in &free_cols {
                        let add = &factor * &eqs[r].0[f];
                        coeffs[f] = &coeffs[f] - add;
                    }
                    coeffs[c] = Rat::zero();
                }
                Strict {
                    coeffs: free_cols.iter().map(|&f| coeffs[f].clone()).collect(),
                    rhs,
                }
            })
            .collect();

        let free_vals = eliminate(reduced, free_cols.len())?;

        // Back out the pivot variables.
        let mut point = vec![Rat::zero(); self.dim];
        for (i, &f) in free_cols.iter().enumerate() {
            point[f] = free_vals[i].clone();
        }
        for &(r, c) in pivots.iter().rev() {
            let mut acc = eqs[r].1.clone();
            for cc in 0..self.dim {
                if cc != c && !eqs[r].0[cc].is_zero() {
                    acc = &acc - &(&eqs[r].0[cc] * &point[cc]);
                }
            }
            point[c] = &acc / &eqs[r].0[c];
        }
        Some(point)
    }
}

/// Fourier-Motzkin on strict inequalities in `nvars` variables.
fn eliminate(stricts: Vec<Strict>, nvars: usize) -> Option<Vec<Rat>> {
    // levels[k] holds the system in variables 0..k, before eliminating k-1.
    let mut levels: Vec<Vec<Strict>> = Vec::with_capacity(nvars + 1);
    levels.push(stricts);
    for var in (0..nvars).rev() {
        let current = levels.last().unwrap();
        let mut next: Vec<Strict> = Vec::new();
        let mut lowers: Vec<&Strict> = Vec::new();
        let mut uppers: Vec<&Strict> = Vec::new();
        for s in current {
            if s.coeffs[var].is_zero() {
                next.push(Strict {
                    coeffs: s.coeffs[..var].to_vec(),
                    rhs: s.rhs.clone(),
                });
            } else if s.coeffs[var] > Rat::zero() {
                lowers.push(s);
            } else {
                uppers.push(s);
            }
        }
        for lo in &lowers {
            for up in &uppers {
                // lo: a x_var > p  (a > 0)   up: b x_var > q  (b < 0)
                // combine: -b*lo + a*up eliminates x_var, stays strict.
                let a = &lo.coeffs[var];
                let b = &up.coeffs[var];
                let coeffs: Vec<Rat> = (0..var)
                    .map(|c| &(&-b.clone() * &lo.coeffs[c]) + &(a * &up.coeffs[c]))
                    .collect();
                let rhs = &(&-b.clone() * &lo.rhs) + &(a * &up.rhs);
                next.push(Strict { coeffs, rhs }.normalized());
            }
        }
        next = dedup(next);
        levels.push(next);
    }
    // Ground level: every constraint is `0 > rhs`.
    if levels[nvars].iter().any(|s| s.rhs >= Rat::zero()) {
        return None;
    }
    // Back-substitute a witness, one variable at a time.
    let mut vals: Vec<Rat> = vec![Rat::zero(); nvars];
    for var in 0..nvars {
        let system = &levels[nvars - 1 - var]; // variables 0..=var live here
        let mut lower: Option<Rat> = None;
        let mut upper: Option<Rat> = None;
        for s in system {
            if s.coeffs[var].is_zero() {
                continue;
            }
            let mut bound = s.rhs.clone();
            for c in 0..var {
                bound = &bound - &(&s.coeffs[c] * &vals[c]);
            }
            bound = &bound / &s.coeffs[var];
            if s.coeffs[var] > Rat::zero() {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            }
        }
        vals[var] = match (lower, upper) {
            (Some(l), Some(u)) => (&l + &u) / rat(2),
            (Some(l), None) => &l + &Rat::one(),
            (None, Some(u)) => &u - &Rat::one(),
            (None, None) => Rat::zero(),
        };
    }
    Some(vals)
}

fn dedup(stricts: Vec<Strict>) -> Vec<Strict> {
    let mut seen: Vec<Strict> = Vec::new();
    for s in stricts {
        if !seen
            .iter()
            .any(|t| t.coeffs == s.coeffs && t.rhs == s.rhs)
        {
            seen.push(s);
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_interval() {
        let mut sys = MixedSystem::new(1);
        sys.add_strict_gt(vec![rat(1)], rat(0)); // x > 0
        sys.add_strict_gt(vec![rat(-1)], rat(-1)); // x < 1
        let p = sys.solve().unwrap();
        assert!(p[0] > Rat::zero() && p[0] < rat(1));
    }

    #[test]
    fn empty_strict_interval() {
        let mut sys = MixedSystem::new(1);
        sys.add_strict_gt(vec![rat(1)], rat(1)); // x > 1
        sys.add_strict_gt(vec![rat(-1)], rat(0)); // x < 0
        assert!(sys.solve().is_none());
    }

    #[test]
    fn equality_with_strict() {
        // x + y = 1, x > 0, y > 0
        let mut sys = MixedSystem::new(2);
        sys.add_equality(vec![rat(1), rat(1)], rat(1));
        sys.add_strict_gt(vec![rat(1), rat(0)], rat(0));
        sys.add_strict_gt(vec![rat(0), rat(1)], rat(0));
        let p = sys.solve().unwrap();
        assert_eq!(&p[0] + &p[1], rat(1));
        assert!(p[0] > Rat::zero() && p[1] > Rat::zero());
    }

    #[test]
    fn inconsistent_equalities() {
        let mut sys = MixedSystem::new(1);
        sys.add_equality(vec![rat(1)], rat(0));
        sys.add_equality(vec![rat(1)], rat(1));
        assert!(sys.solve().is_none());
    }

    #[test]
    fn boundary_not_feasible() {
        // x = 0 and x > 0 is infeasible.
        let mut sys = MixedSystem::new(1);
        sys.add_equality(vec![rat(1)], rat(0));
        sys.add_strict_gt(vec![rat(1)], rat(0));
        assert!(sys.solve().is_none());
    }

    #[test]
    fn unconstrained() {
        let sys = MixedSystem::new(3);
        assert!(sys.solve().is_some());
    }
}
