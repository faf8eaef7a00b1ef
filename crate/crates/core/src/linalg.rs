//! Exact dense Gaussian elimination over a [`Scalar`] field. Desk-scale only:
//! no pivot scaling tricks, no sparsity.

use crate::Scalar;

/// Reduced row echelon form in place; returns the pivot column of each of the
/// first `rank` rows.
pub fn rref<T: Scalar>(rows: &mut Vec<Vec<T>>) -> Vec<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        if row == height {
            break;
        }
        let Some(src) = (row..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, src);
        let inv = T::one() / rows[row][col].clone();
        for entry in &mut rows[row] {
            *entry *= inv.clone();
        }
        for r in 0..height {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..width {
                    let delta = factor.clone() * rows[row][c].clone();
                    rows[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    rows.truncate(row);
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn kernel_basis<T: Scalar>(rows: &[Vec<T>], width: usize) -> Vec<Vec<T>> {
    let mut work: Vec<Vec<T>> = rows.to_vec();
    let pivots = rref(&mut work);
    let pivot_set: Vec<bool> = {
        let mut set = vec![false; width];
        for &p in &pivots {
            set[p] = true;
        }
        set
    };
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_set[free] {
            continue;
        }
        let mut vec = vec![T::zero(); width];
        vec[free] = T::one();
        for (r, &p) in pivots.iter().enumerate() {
            vec[p] = -work[r][free].clone();
        }
        basis.push(vec);
    }
    basis
}

/// One solution of `rows · x = rhs`, or `None` when inconsistent.
pub fn solve<T: Scalar>(rows: &[Vec<T>], rhs: &[T]) -> Option<Vec<T>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut work: Vec<Vec<T>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut work);
    // a pivot in the augmented column means 0 = 1
    if pivots.last() == Some(&width) {
        return None;
    }
    let mut x = vec![T::zero(); width];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = work[r][width].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rat, Scalar};
    use num_traits::{One, Zero};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let kernel = kernel_basis(&a, 3);
        assert_eq!(kernel.len(), 1);
        for row in &a {
            assert!(crate::scalar::dot(row, &kernel[0]).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Rat::from_int(3), Rat::one()]).unwrap();
        assert_eq!(x, vec![Rat::from_int(2), Rat::one()]);

        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[Rat::one(), Rat::from_int(3)]).is_none());
        assert!(solve(&b, &[Rat::one(), Rat::from_int(2)]).is_some());
    }

    #[test]
    fn kernel_of_full_rank_matrix_is_empty() {
        let a = m(&[&[1, 0], &[0, 1]]);
        assert!(kernel_basis(&a, 2).is_empty());
    }
}
