//! Smith normal form over the integers.

use num::{BigInt, Integer, One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next and all nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries of `D`.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_a -= q * row_b
fn sub_row(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    let rb = m[b].clone();
    for (x, y) in m[a].iter_mut().zip(rb) {
        *x -= q * y;
    }
}

/// col_a -= q * col_b
fn sub_col(m: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[b].clone();
        row[a] -= q * y;
    }
}

fn neg_row(m: &mut IntMatrix, a: usize) {
    for x in m[a].iter_mut() {
        *x = -x.clone();
    }
}

/// Smith normal form of an `rows × cols` integer matrix.
pub fn smith(a: &IntMatrix, rows: usize, cols: usize) -> Smith {
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = d[i][t].div_floor(&d[t][t]);
            if !q.is_zero() {
                sub_row(&mut d, i, t, &q);
                sub_row(&mut u, i, t, &q);
            }
            clean &= d[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = d[t][j].div_floor(&d[t][t]);
            if !q.is_zero() {
                sub_col(&mut d, j, t, &q);
                sub_col(&mut v, j, t, &q);
            }
            clean &= d[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Divisibility: fold a non-multiple entry into row t and retry.
        let bad = (t + 1..rows).find_map(|i| (t + 1..cols).find(|&j| !d[i][j].is_multiple_of(&d[t][t])).map(|_| i));
        if let Some(i) = bad {
            let m1 = BigInt::from(-1);
            sub_row(&mut d, t, i, &m1);
            sub_row(&mut u, t, i, &m1);
            continue;
        }
        if d[t][t].is_negative() {
            neg_row(&mut d, t);
            neg_row(&mut u, t);
        }
        t += 1;
    }
    Smith { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn textbook_example() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a, 3, 3);
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a, 3, 3), &s.v, 3, 3), s.d);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let a = m(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let s = smith(&a, 3, 2);
        assert_eq!(s.divisors(), vec![BigInt::one(), BigInt::one()]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a, 3, 2), &s.v, 2, 2), s.d);
        let z = m(&[&[2, 4], &[1, 2]]);
        let s = smith(&z, 2, 2);
        assert_eq!(s.rank(), 1);
        assert_eq!(mat_mul(&mat_mul(&s.u, &z, 2, 2), &s.v, 2, 2), s.d);
    }
}
