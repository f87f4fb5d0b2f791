//! Dense exact linear algebra over ℚ.

use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, bottom) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in top.iter_mut().zip(bottom.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Solves `A x = b`; returns one solution (free variables zero) or `None`.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    let mut s = Rational::zero();
                    for t in 0..k {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            s += &row[t] * &b[t][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn det(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

/// Signature `(n_+, n_-, n_0)` of a symmetric rational matrix.
pub fn inertia(a: &Matrix) -> (usize, usize, usize) {
    let n = a.len();
    let mut m = a.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        // find a non-zero diagonal entry
        let piv = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                // congruence by e_i += e_j to create a diagonal entry
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[i][j].is_zero())
                        .map(|j| (i, j))
                });
                match pair {
                    None => {
                        zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let t = m[j][k].clone();
                            m[i][k] += t;
                        }
                        for k in 0..n {
                            let t = m[k][j].clone();
                            m[k][i] += t;
                        }
                        let _ = first;
                        i
                    }
                }
            }
        };
        let d = m[piv][piv].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != piv);
        for &i in &active {
            if m[i][piv].is_zero() {
                continue;
            }
            let f = &m[i][piv] / &d;
            for &j in &active {
                let t = &f * &m[piv][j];
                m[i][j] -= t;
            }
            m[i][piv] = Rational::zero();
        }
        for &j in &active {
            m[piv][j] = Rational::zero();
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(3));
        assert_eq!(det(&a), int(18));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_and_rank() {
        let a = m(&[&[1, 2], &[2, 4], &[0, 1]]);
        assert_eq!(rank(&a), 2);
        let x = solve(&a, &[int(5), int(10), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
        assert!(solve(&a, &[int(5), int(11), int(2)]).is_none());
    }

    #[test]
    fn inertia_hyperbolic() {
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 0]])), (1, 1, 1));
    }
}
