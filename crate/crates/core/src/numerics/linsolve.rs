//! Exact Gaussian elimination for overdetermined rational systems.

use rug::Rational;

use super::ring::QAlgebra;

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    /// The coefficient matrix has a nontrivial kernel.
    Singular { column: usize },
    /// A surplus equation is violated; `row` is its original index.
    Inconsistent { row: usize },
}

/// Solves `A x = b` exactly, where `A` has at least as many rows as columns
/// and must have full column rank. Right-hand sides may live in any
/// `QAlgebra` (rationals, Gaussian rationals, ℚ[λ]). Every equation beyond
/// the rank must hold exactly.
pub fn solve_overdetermined<M: QAlgebra>(
    matrix: &[Vec<Rational>],
    rhs: &[M],
) -> Result<Vec<M>, SolveError> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len());
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut b: Vec<M> = rhs.to_vec();
    let mut order: Vec<usize> = (0..rows).collect();

    for col in 0..cols {
        let pivot = (col..rows)
            .filter(|&r| a[r][col].cmp0().is_ne())
            .min_by_key(|&r| a[r][col].numer().significant_bits() + a[r][col].denom().significant_bits())
            .ok_or(SolveError::Singular { column: col })?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        order.swap(col, pivot);

        let inv = a[col][col].clone().recip();
        for j in col..cols {
            a[col][j] *= &inv;
        }
        b[col] = b[col].scale(&inv);

        let (top, bottom) = a.split_at_mut(col + 1);
        let prow = &top[col];
        let (btop, bbottom) = b.split_at_mut(col + 1);
        let pb = &btop[col];
        for (row, rb) in bottom.iter_mut().zip(bbottom.iter_mut()) {
            if row[col].cmp0().is_eq() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..cols {
                if prow[j].cmp0().is_ne() {
                    row[j] -= Rational::from(&factor * &prow[j]);
                }
            }
            *rb = rb.minus(&pb.scale(&factor));
        }
    }

    if let Some(r) = (cols..rows).find(|&r| !b[r].is_zero()) {
        return Err(SolveError::Inconsistent { row: order[r] });
    }

    let mut x: Vec<M> = vec![M::zero(); cols];
    for i in (0..cols).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..cols {
            if a[i][j].cmp0().is_ne() {
                acc = acc.minus(&x[j].scale(&a[i][j]));
            }
        }
        x[i] = acc;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn square_system() {
        // x + y = 3, x - y = 1
        let a = vec![vec![r(1), r(1)], vec![r(1), r(-1)]];
        let x = solve_overdetermined(&a, &[r(3), r(1)]).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
    }

    #[test]
    fn surplus_rows_checked() {
        let a = vec![vec![r(1)], vec![r(2)], vec![r(3)]];
        assert_eq!(solve_overdetermined(&a, &[r(1), r(2), r(3)]).unwrap(), vec![r(1)]);
        assert_eq!(
            solve_overdetermined(&a, &[r(1), r(2), r(4)]).unwrap_err(),
            SolveError::Inconsistent { row: 2 }
        );
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(matches!(
            solve_overdetermined(&a, &[r(1), r(2)]),
            Err(SolveError::Singular { .. })
        ));
    }
}
