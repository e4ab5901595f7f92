//! A small dense simplex solver for desk-scale feasibility programs.
//!
//! Solves `maximize c·x subject to Ax = b, x ≥ 0` by the two-phase primal
//! simplex method with Bland's rule. Reduced costs are recomputed from the
//! current tableau each iteration, which is quadratic per step but exact
//! and hard to get wrong; the programs solved here have at most a few
//! dozen rows. In rational mode every pivot is exact, so feasibility and
//! strict positivity of the optimum are decided, not estimated.


use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T: Scalar> {
    Optimal { objective: T, solution: Vec<T> },
    Infeasible,
    Unbounded,
}

/// Equality-constrained LP: rows of `(coefficients, rhs)` over the same
/// variable list as `objective`. All variables are nonnegative.
pub fn maximize<T: Scalar>(objective: &[T], constraints: &[(Vec<T>, T)]) -> LpOutcome<T> {
    let n = objective.len();
    let m = constraints.len();
    assert!(constraints.iter().all(|(row, _)| row.len() == n));

    // tableau over n real + m artificial columns, rhs kept nonnegative
    let cols = n + m;
    let mut tableau: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut rhs: Vec<T> = Vec::with_capacity(m);
    for (i, (row, b)) in constraints.iter().enumerate() {
        let flip = !b.is_nonnegative() || (*b < T::zero());
        let mut full: Vec<T> = Vec::with_capacity(cols);
        for a in row {
            full.push(if flip { -a.clone() } else { a.clone() });
        }
        for j in 0..m {
            full.push(if j == i { T::one() } else { T::zero() });
        }
        tableau.push(full);
        rhs.push(if flip { -b.clone() } else { b.clone() });
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase 1: drive the artificial variables to zero
    let mut phase1_costs = vec![T::zero(); cols];
    for cost in phase1_costs.iter_mut().skip(n) {
        *cost = -T::one();
    }
    if run_simplex(&mut tableau, &mut rhs, &mut basis, &phase1_costs, cols).is_err() {
        // phase 1 is bounded below by -Σb, so this cannot happen
        return LpOutcome::Unbounded;
    }
    let infeasibility = basis
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= n)
        .fold(T::zero(), |acc, (i, _)| acc + rhs[i].clone());
    if !infeasibility.is_zero_pivot() {
        return LpOutcome::Infeasible;
    }

    // drive artificials basic at zero out of the basis, so phase 2 cannot
    // grow them back through a negative coefficient; rows with no real
    // pivot left are redundant and stay inert
    for i in 0..m {
        if basis[i] < n {
            continue;
        }
        if let Some(j) = (0..n).find(|&j| !tableau[i][j].is_zero_pivot()) {
            pivot(&mut tableau, &mut rhs, i, j);
            basis[i] = j;
        }
    }

    // phase 2: real objective; artificial columns may not re-enter
    let mut phase2_costs = vec![T::zero(); cols];
    phase2_costs[..n].clone_from_slice(objective);
    if run_simplex(&mut tableau, &mut rhs, &mut basis, &phase2_costs, n).is_err() {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![T::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            solution[var] = rhs[i].clone();
        }
    }
    let objective_value = objective
        .iter()
        .zip(&solution)
        .fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
    LpOutcome::Optimal {
        objective: objective_value,
        solution,
    }
}

/// Bland-rule simplex on the tableau; only the first `enterable` columns
/// may enter the basis. Err(()) signals an unbounded direction.
fn run_simplex<T: Scalar>(
    tableau: &mut [Vec<T>],
    rhs: &mut [T],
    basis: &mut [usize],
    costs: &[T],
    enterable: usize,
) -> Result<(), ()> {
    let m = tableau.len();
    loop {
        // reduced cost of column j: c_j - Σ_i c_basis(i) · T[i][j]
        let mut entering = None;
        for j in 0..enterable {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = costs[j].clone();
            for i in 0..m {
                if !costs[basis[i]].is_zero_pivot() {
                    reduced = reduced - costs[basis[i]].clone() * tableau[i][j].clone();
                }
            }
            if !reduced.is_zero_pivot() && reduced > T::zero() {
                entering = Some(j);
                break; // Bland: smallest improving index
            }
        }
        let Some(j) = entering else {
            return Ok(());
        };

        let mut leaving: Option<(usize, T)> = None;
        for i in 0..m {
            let a = &tableau[i][j];
            if a.is_zero_pivot() || !(*a > T::zero()) {
                continue;
            }
            let ratio = rhs[i].clone() / a.clone();
            let replace = match &leaving {
                None => true,
                Some((row, best)) => {
                    ratio < *best || (ratio == *best && basis[i] < basis[*row])
                }
            };
            if replace {
                leaving = Some((i, ratio));
            }
        }
        let Some((pivot_row, _)) = leaving else {
            return Err(());
        };

        pivot(tableau, rhs, pivot_row, j);
        basis[pivot_row] = j;
    }
}

fn pivot<T: Scalar>(tableau: &mut [Vec<T>], rhs: &mut [T], row: usize, col: usize) {
    let factor = tableau[row][col].clone();
    for value in tableau[row].iter_mut() {
        *value = value.clone() / factor.clone();
    }
    rhs[row] = rhs[row].clone() / factor;
    for i in 0..tableau.len() {
        if i == row {
            continue;
        }
        let multiplier = tableau[i][col].clone();
        if multiplier.is_zero_pivot() {
            continue;
        }
        for j in 0..tableau[i].len() {
            tableau[i][j] = tableau[i][j].clone() - multiplier.clone() * tableau[row][j].clone();
        }
        rhs[i] = rhs[i].clone() - multiplier * rhs[row].clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn solves_a_textbook_lp() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6; optimum at (8/5, 6/5)
        let outcome = maximize(
            &[r(1, 1), r(1, 1), r(0, 1), r(0, 1)],
            &[
                (vec![r(1, 1), r(2, 1), r(1, 1), r(0, 1)], r(4, 1)),
                (vec![r(3, 1), r(1, 1), r(0, 1), r(1, 1)], r(6, 1)),
            ],
        );
        match outcome {
            LpOutcome::Optimal {
                objective,
                solution,
            } => {
                assert_eq!(objective, r(14, 5));
                assert_eq!(solution[0], r(8, 5));
                assert_eq!(solution[1], r(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1, x + y = 2
        let outcome = maximize(
            &[r(0, 1), r(0, 1)],
            &[
                (vec![r(1, 1), r(1, 1)], r(1, 1)),
                (vec![r(1, 1), r(1, 1)], r(2, 1)),
            ],
        );
        assert_eq!(outcome, LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // max x s.t. x - y = 1: x can grow with y
        let outcome = maximize(
            &[r(1, 1), r(0, 1)],
            &[(vec![r(1, 1), r(-1, 1)], r(1, 1))],
        );
        assert_eq!(outcome, LpOutcome::Unbounded);
    }

    #[test]
    fn handles_negative_rhs_and_degeneracy() {
        // -x - y = -1 is x + y = 1; maximize x
        let outcome = maximize(
            &[r(1, 1), r(0, 1)],
            &[(vec![r(-1, 1), r(-1, 1)], r(-1, 1))],
        );
        match outcome {
            LpOutcome::Optimal {
                objective,
                solution,
            } => {
                assert_eq!(objective, r(1, 1));
                assert_eq!(solution, vec![r(1, 1), r(0, 1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        // duplicated constraint leaves an artificial basic at zero
        let outcome = maximize(
            &[r(1, 1), r(1, 1)],
            &[
                (vec![r(1, 1), r(1, 1)], r(1, 1)),
                (vec![r(2, 1), r(2, 1)], r(2, 1)),
            ],
        );
        match outcome {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, r(1, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn float_mode_agrees() {
        let outcome = maximize(
            &[1.0, 1.0, 0.0, 0.0],
            &[
                (vec![1.0, 2.0, 1.0, 0.0], 4.0),
                (vec![3.0, 1.0, 0.0, 1.0], 6.0),
            ],
        );
        match outcome {
            LpOutcome::Optimal { objective, .. } => assert!((objective - 2.8).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }
}
