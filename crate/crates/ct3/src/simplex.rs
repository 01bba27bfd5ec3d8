//! A small exact two-phase simplex solver.
//!
//! Solves `minimize c.x subject to A x >= b, x >= 0` in exact rational
//! arithmetic with Bland's rule, so it always terminates. Problem sizes in
//! this crate are tiny (under ten structural variables, a few dozen rows);
//! a dense tableau is plenty.

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// Minimum value of the objective.
    Optimal(Rational),
    Unbounded,
    Infeasible,
}

/// `minimize objective . x` over `{x >= 0 : rows[i].coeffs . x >= rows[i].rhs}`.
pub fn minimize(objective: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> LpOutcome {
    let n = objective.len();
    let m = rows.len();
    for (coeffs, _) in rows {
        assert_eq!(coeffs.len(), n, "constraint arity mismatch");
    }

    // Columns: n structural, m surplus, m artificial, then rhs.
    let n_cols = n + 2 * m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for (i, (coeffs, rhs)) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); n_cols + 1];
        let flip = *rhs < Rational::zero();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = sign * *c;
        }
        // surplus: a.x - s = b  (sign-flipped together with the row)
        row[n + i] = sign * -Rational::one();
        row[n_cols] = sign * *rhs;
        // artificial gives the starting identity basis
        row[n + m + i] = Rational::one();
        basis.push(n + m + i);
        t.push(row);
    }

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); n_cols];
    for j in (n + m)..n_cols {
        phase1[j] = Rational::one();
    }
    match run(&mut t, &mut basis, &phase1, n_cols) {
        SimplexEnd::Unbounded => unreachable!("phase 1 objective is bounded below by 0"),
        SimplexEnd::Optimal => {}
    }
    let phase1_value: Rational = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n + m)
        .map(|(i, _)| t[i][n_cols])
        .fold(Rational::zero(), |acc, v| acc + v);
    if phase1_value > Rational::zero() {
        return LpOutcome::Infeasible;
    }

    // Drive any artificial still basic (at value 0) out of the basis.
    for i in 0..m {
        if basis[i] >= n + m {
            if let Some(j) = (0..n + m).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j, n_cols);
            }
            // otherwise the row is identically zero and harmless
        }
    }

    // Phase 2: forbid artificials by zeroing their columns.
    for row in t.iter_mut() {
        for j in (n + m)..n_cols {
            row[j] = Rational::zero();
        }
    }
    let mut phase2 = vec![Rational::zero(); n_cols];
    phase2[..n].copy_from_slice(objective);
    match run(&mut t, &mut basis, &phase2, n_cols) {
        SimplexEnd::Unbounded => LpOutcome::Unbounded,
        SimplexEnd::Optimal => {
            let mut value = Rational::zero();
            for (i, &b) in basis.iter().enumerate() {
                if b < n {
                    value = value + phase2[b] * t[i][n_cols];
                }
            }
            LpOutcome::Optimal(value)
        }
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

fn run(
    t: &mut [Vec<Rational>],
    basis: &mut [usize],
    cost: &[Rational],
    n_cols: usize,
) -> SimplexEnd {
    loop {
        // Reduced cost of column j: c_j - sum_i c_basis[i] * t[i][j].
        let mut entering = None;
        'cols: for j in 0..n_cols {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = cost[j];
            for (i, &b) in basis.iter().enumerate() {
                if !cost[b].is_zero() && !t[i][j].is_zero() {
                    rc = rc - cost[b] * t[i][j];
                }
            }
            if rc < Rational::zero() {
                entering = Some(j);
                break 'cols; // Bland: first improving column
            }
        }
        let Some(e) = entering else {
            return SimplexEnd::Optimal;
        };
        // Ratio test; Bland tie-break on the smallest basis variable index.
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..t.len() {
            if t[i][e] > Rational::zero() {
                let ratio = t[i][n_cols] / t[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            return SimplexEnd::Unbounded;
        };
        pivot(t, basis, l, e, n_cols);
    }
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize, n_cols: usize) {
    let p = t[row][col];
    assert!(!p.is_zero());
    for j in 0..=n_cols {
        t[row][j] = t[row][j] / p;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let f = t[i][col];
            for j in 0..=n_cols {
                let v = t[row][j];
                if !v.is_zero() {
                    t[i][j] = t[i][j] - f * v;
                }
            }
            t[i][col] = Rational::zero();
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn simple_bounded_lp() {
        // minimize x + y subject to x + 2y >= 4, 3x + y >= 6, x,y >= 0
        // optimum at intersection: x = 8/5, y = 6/5, value 14/5.
        let out = minimize(
            &[r(1, 1), r(1, 1)],
            &[
                (vec![r(1, 1), r(2, 1)], r(4, 1)),
                (vec![r(3, 1), r(1, 1)], r(6, 1)),
            ],
        );
        assert_eq!(out, LpOutcome::Optimal(r(14, 5)));
    }

    #[test]
    fn unbounded_lp() {
        // minimize -x subject to x >= 1
        let out = minimize(&[r(-1, 1)], &[(vec![r(1, 1)], r(1, 1))]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_lp() {
        // x >= 3 and -x >= -1 (x <= 1): infeasible
        let out = minimize(
            &[r(1, 1)],
            &[
                (vec![r(1, 1)], r(3, 1)),
                (vec![r(-1, 1)], r(-1, 1)),
            ],
        );
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn negative_rhs_rows() {
        // minimize x subject to -x >= -5 (x <= 5), x >= 2 -> min 2
        let out = minimize(
            &[r(1, 1)],
            &[
                (vec![r(-1, 1)], r(-5, 1)),
                (vec![r(1, 1)], r(2, 1)),
            ],
        );
        assert_eq!(out, LpOutcome::Optimal(r(2, 1)));
    }

    #[test]
    fn degenerate_lp_terminates() {
        // several redundant constraints through one vertex
        let out = minimize(
            &[r(1, 1), r(1, 1)],
            &[
                (vec![r(1, 1), r(0, 1)], r(1, 1)),
                (vec![r(0, 1), r(1, 1)], r(1, 1)),
                (vec![r(1, 1), r(1, 1)], r(2, 1)),
                (vec![r(2, 1), r(2, 1)], r(4, 1)),
            ],
        );
        assert_eq!(out, LpOutcome::Optimal(r(2, 1)));
    }

    #[test]
    fn matches_grid_search_on_random_instances() {
        // deterministic pseudo-random small LPs; compare against a fine grid
        // lower bound: LP optimum must be <= value at every feasible point,
        // and must itself be attained within tolerance of some grid point.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..40 {
            let c: Vec<Rational> = (0..2).map(|_| r((next() % 5) as i128 + 1, 1)).collect();
            let rows: Vec<(Vec<Rational>, Rational)> = (0..3)
                .map(|_| {
                    (
                        vec![
                            r((next() % 4) as i128, 1),
                            r((next() % 4) as i128 + 1, 1),
                        ],
                        r((next() % 6) as i128, 1),
                    )
                })
                .collect();
            let out = minimize(&c, &rows);
            let LpOutcome::Optimal(v) = out else {
                continue;
            };
            for xi in 0..=30 {
                for yi in 0..=30 {
                    let x = r(xi, 2);
                    let y = r(yi, 2);
                    let feasible = rows
                        .iter()
                        .all(|(a, b)| a[0] * x + a[1] * y >= *b);
                    if feasible {
                        assert!(c[0] * x + c[1] * y >= v, "grid point beats LP optimum");
                    }
                }
            }
        }
    }
}
