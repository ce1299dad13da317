//! Exact phase-one simplex for `A y = b, y ≥ 0`.
//!
//! Dense tableau over rationals, Bland's rule for both the entering and
//! the leaving variable. Artificial columns are kept to the end so the
//! phase-one duals can be read from their reduced costs.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Phase1 {
    /// A point `y ≥ 0` with `A y = b`.
    Feasible(Vec<Rational>),
    /// A vector `z` with `zᵀA ≤ 0` and `zᵀb > 0`.
    Infeasible(Vec<Rational>),
}

/// Decides feasibility of `A y = b, y ≥ 0`. `a` is row-major, `m × n`.
pub fn phase_one(a: &[Vec<Rational>], b: &[Rational]) -> Phase1 {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m;
    let mut sign = vec![Rational::one(); m];
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        if flip {
            sign[i] = -Rational::one();
        }
        let mut row: Vec<Rational> = a[i].iter().map(|v| if flip { -v } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(b[i].abs());
    }
    let mut basis: Vec<usize> = (n..width).collect();
    let mut cost: Vec<Rational> = (0..width)
        .map(|j| {
            if j < n {
                -rows.iter().map(|r| &r[j]).sum::<Rational>()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut objective: Rational = rhs.iter().sum();

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !rows[i][enter].is_positive() {
                continue;
            }
            let theta = &rhs[i] / &rows[i][enter];
            let better = match &leave {
                None => true,
                Some((r, best)) => theta < *best || (theta == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, theta));
            }
        }
        // phase one is bounded below by zero, so some row always qualifies
        let (r, theta) = leave.expect("bounded phase-one objective");
        let pivot = rows[r][enter].clone();
        for v in rows[r].iter_mut() {
            *v /= &pivot;
        }
        rhs[r] /= &pivot;
        let pivot_row = rows[r].clone();
        for i in 0..m {
            if i == r || rows[i][enter].is_zero() {
                continue;
            }
            let factor = rows[i][enter].clone();
            for (v, p) in rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            let shift = &factor * &rhs[r];
            rhs[i] -= shift;
        }
        let factor = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
        objective += &factor * &theta;
        basis[r] = enter;
    }

    if objective.is_zero() {
        let mut y = vec![Rational::zero(); n];
        for (i, &j) in basis.iter().enumerate() {
            if j < n {
                y[j] = rhs[i].clone();
            }
        }
        Phase1::Feasible(y)
    } else {
        let z = (0..m)
            .map(|i| (Rational::one() - &cost[n + i]) * &sign[i])
            .collect();
        Phase1::Infeasible(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn check(a: &[Vec<Rational>], b: &[Rational]) -> Phase1 {
        let out = phase_one(a, b);
        match &out {
            Phase1::Feasible(y) => {
                assert!(y.iter().all(|v| !v.is_negative()));
                for (row, bi) in a.iter().zip(b) {
                    let lhs: Rational = row.iter().zip(y).map(|(p, q)| p * q).sum();
                    assert_eq!(&lhs, bi);
                }
            }
            Phase1::Infeasible(z) => {
                let zb: Rational = z.iter().zip(b).map(|(p, q)| p * q).sum();
                assert!(zb.is_positive());
                for j in 0..a[0].len() {
                    let col: Rational = z.iter().zip(a).map(|(p, row)| p * &row[j]).sum();
                    assert!(!col.is_positive());
                }
            }
        }
        out
    }

    #[test]
    fn small_systems() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(check(&a, &[int(2), int(0)]), Phase1::Feasible(vec![int(1), int(1)]));
        assert!(matches!(check(&a, &[int(-1), int(0)]), Phase1::Infeasible(_)));
        let a = vec![vec![int(2), int(0), int(1)]];
        assert!(matches!(check(&a, &[ratio(1, 3)]), Phase1::Feasible(_)));
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(matches!(check(&a, &[int(1), int(2)]), Phase1::Infeasible(_)));
        assert!(matches!(check(&a, &[int(1), int(1)]), Phase1::Feasible(_)));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's cycling example written in equality form with slacks
        let a = vec![
            vec![ratio(1, 4), int(-8), int(-1), int(9), int(1), int(0), int(0)],
            vec![ratio(1, 2), int(-12), ratio(-1, 2), int(3), int(0), int(1), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
        ];
        assert!(matches!(check(&a, &[int(0), int(0), int(1)]), Phase1::Feasible(_)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn outcomes_are_certified(
            entries in prop::collection::vec(-3i64..4, 12),
            rhs in prop::collection::vec(-3i64..4, 3),
        ) {
            let a: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.iter().map(|&v| int(v)).collect()).collect();
            let b: Vec<Rational> = rhs.iter().map(|&v| int(v)).collect();
            check(&a, &b);
        }
    }
}
