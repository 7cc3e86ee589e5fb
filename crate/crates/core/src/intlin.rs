//! Small exact integer linear algebra: determinants, column/row Hermite
//! normal forms and integer kernels. Intermediate values are `i128`; results
//! are narrowed back to `i64` with overflow checks.

use crate::error::{Error, Result};

pub type IMatrix = Vec<Vec<i64>>;

pub fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

pub fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g ≥ 0.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of a unimodular 3×3 matrix (given as rows).
pub fn inverse_unimodular3(m: [[i64; 3]; 3]) -> Option<[[i64; 3]; 3]> {
    let cols = [
        [m[0][0], m[1][0], m[2][0]],
        [m[0][1], m[1][1], m[2][1]],
        [m[0][2], m[1][2], m[2][2]],
    ];
    let d = det3(cols[0], cols[1], cols[2]);
    if d.abs() != 1 {
        return None;
    }
    let mut inv = [[0i64; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // cofactor C_{ji}
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cs: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m[rows[0]][cs[0]] * m[rows[1]][cs[1]] - m[rows[0]][cs[1]] * m[rows[1]][cs[0]];
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            *entry = sign * minor * d;
        }
    }
    Some(inv)
}

/// For a primitive covector `a`, returns a unimodular matrix `u` (rows) with
/// determinant +1 such that `a · u = (1, 0, 0)`.
///
/// The reduction repeatedly subtracts the smallest nonzero entry from the
/// others and finally rotates the surviving entry into position 0, so a
/// coordinate covector like (0,0,1) yields the cyclic basis (e3, e1, e2).
pub fn covector_completion(a: [i64; 3]) -> Result<[[i64; 3]; 3]> {
    let mut v: [i128; 3] = [a[0] as i128, a[1] as i128, a[2] as i128];
    let mut u = [[1i128, 0, 0], [0, 1, 0], [0, 0, 1]];
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    loop {
        let nonzero: Vec<usize> = (0..3).filter(|&i| v[i] != 0).collect();
        if nonzero.len() == 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| (v[i].abs(), i)).unwrap();
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let q = v[j].div_euclid(v[p]);
            v[j] -= q * v[p];
            for row in u.iter_mut() {
                row[j] -= q * row[p];
            }
        }
    }
    let k = (0..3).find(|&i| v[i] != 0).unwrap();
    if v[k].abs() != 1 {
        return Err(Error::InvalidFan(format!("covector {a:?} is not primitive")));
    }
    // rotate columns so that column k becomes column 0 (cyclic: det preserved)
    let order = [k, (k + 1) % 3, (k + 2) % 3];
    let mut out = [[0i128; 3]; 3];
    for r in 0..3 {
        for (c, &src) in order.iter().enumerate() {
            out[r][c] = u[r][src];
        }
    }
    if v[k] < 0 {
        for row in out.iter_mut() {
            row[0] = -row[0];
            row[1] = -row[1];
        }
    }
    let mut res = [[0i64; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            res[r][c] = narrow(out[r][c])?;
        }
    }
    Ok(res)
}

/// Column-style Hermite reduction: returns `(rank, u)` where `u` is an n×n
/// unimodular matrix with `a · u = [H | 0]`, `H` having `rank` columns.
pub fn column_reduce(a: &IMatrix, ncols: usize) -> Result<(usize, Vec<Vec<i128>>)> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivot = 0usize;
    for row in 0..m.len() {
        if pivot >= ncols {
            break;
        }
        for c in (pivot + 1)..ncols {
            let (x, y) = (m[row][pivot], m[row][c]);
            if y == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y);
            let (xg, yg) = (x / g, y / g);
            // [col_p, col_c] <- [s·col_p + t·col_c, -yg·col_p + xg·col_c]
            for r in m.iter_mut() {
                let (p, q) = (r[pivot], r[c]);
                r[pivot] = s * p + t * q;
                r[c] = -yg * p + xg * q;
            }
            for r in u.iter_mut() {
                let (p, q) = (r[pivot], r[c]);
                r[pivot] = s * p + t * q;
                r[c] = -yg * p + xg * q;
            }
        }
        if m[row][pivot] != 0 {
            pivot += 1;
        }
    }
    Ok((pivot, u))
}

/// Row Hermite normal form (positive pivots, entries above pivots reduced
/// into `[0, pivot)`), dropping zero rows.
pub fn row_hnf(rows: &[Vec<i64>]) -> Result<IMatrix> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prow = 0usize;
    for col in 0..n {
        if prow >= m.len() {
            break;
        }
        for r in (prow + 1)..m.len() {
            let (x, y) = (m[prow][col], m[r][col]);
            if y == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y);
            let (xg, yg) = (x / g, y / g);
            for c in 0..n {
                let (p, q) = (m[prow][c], m[r][c]);
                m[prow][c] = s * p + t * q;
                m[r][c] = -yg * p + xg * q;
            }
        }
        if m[prow][col] == 0 {
            continue;
        }
        if m[prow][col] < 0 {
            for c in 0..n {
                m[prow][c] = -m[prow][c];
            }
        }
        let piv = m[prow][col];
        for r in 0..prow {
            let q = m[r][col].div_euclid(piv);
            if q != 0 {
                for c in 0..n {
                    m[r][c] -= q * m[prow][c];
                }
            }
        }
        prow += 1;
    }
    m.truncate(prow);
    m.into_iter()
        .map(|r| r.into_iter().map(narrow).collect::<Result<Vec<_>>>())
        .collect()
}

/// Integer kernel of the linear map `Z^n → Z^3` with columns `cols`, as a
/// row-HNF basis. Returns `(rank of the column span, basis)`.
pub fn integer_kernel(cols: &[[i64; 3]]) -> Result<(usize, IMatrix)> {
    let n = cols.len();
    let a: IMatrix = (0..3).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let (rank, u) = column_reduce(&a, n)?;
    let kernel: Vec<Vec<i64>> = (rank..n)
        .map(|c| (0..n).map(|r| narrow(u[r][c])).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok((rank, row_hnf(&kernel)?))
}

/// Rank of a set of integer row vectors.
pub fn rank(rows: &[Vec<i64>]) -> Result<usize> {
    Ok(row_hnf(rows)?.len())
}

/// Coordinates of `v` in the rows of `basis`: the unique `x` with
/// Σ x_j basis_j = v, required to be integral.
pub fn solve_in_basis(basis: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    use num_rational::Ratio;
    let k = basis.len();
    let n = v.len();
    // augmented system: n equations (one per coordinate) in k unknowns
    let mut m: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|c| {
            let mut row: Vec<Ratio<i128>> = basis.iter().map(|b| Ratio::from(b[c] as i128)).collect();
            row.push(Ratio::from(v[c] as i128));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..n).find(|&i| m[i][col] != Ratio::from(0)) else {
            return Err(Error::DependentBasis);
        };
        m.swap(r, p);
        let piv = m[r][col];
        for x in m[r].iter_mut() {
            *x /= piv;
        }
        for i in 0..n {
            if i != r && m[i][col] != Ratio::from(0) {
                let f = m[i][col];
                for j in 0..=k {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if m[r..].iter().any(|row| row[k] != Ratio::from(0)) {
        return Err(Error::NotInKernel);
    }
    (0..k)
        .map(|j| {
            let x = m[pivots[j]][k];
            if x.is_integer() {
                narrow(x.to_integer())
            } else {
                Err(Error::NotIntegralInBasis)
            }
        })
        .collect()
}

/// An integer covector strictly positive on every given vector, found by
/// the perceptron iteration. `None` when the iteration budget runs out,
/// which happens in particular when no such covector exists.
pub fn positive_functional(vs: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = vs.first()?.len();
    let mut w = vec![0i64; n];
    for _ in 0..1_000_000 {
        let bad = vs.iter().find(|v| v.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() <= 0);
        match bad {
            None => return Some(w),
            Some(v) => {
                for (x, y) in w.iter_mut().zip(v.iter()) {
                    *x = x.checked_add(*y)?;
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covector_completion_of_height_covector() {
        let u = covector_completion([0, 0, 1]).unwrap();
        assert_eq!(u, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
    }

    #[test]
    fn covector_completion_general() {
        for a in [[2, 3, 5], [-1, 0, 0], [4, -7, 1], [0, 3, -2]] {
            let u = covector_completion(a).unwrap();
            let cols: Vec<[i64; 3]> = (0..3).map(|c| [u[0][c], u[1][c], u[2][c]]).collect();
            assert_eq!(det3(cols[0], cols[1], cols[2]), 1);
            assert_eq!(dot(a, cols[0]), 1);
            assert_eq!(dot(a, cols[1]), 0);
            assert_eq!(dot(a, cols[2]), 0);
        }
    }

    #[test]
    fn kernel_of_kp2_rays() {
        let (rank, k) = integer_kernel(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [-1, -1, 1]]).unwrap();
        assert_eq!(rank, 3);
        assert_eq!(k, vec![vec![3, -1, -1, -1]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = [[0, 1, 0], [0, 0, 1], [1, 0, 0]];
        let inv = inverse_unimodular3(m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3).map(|k| m[i][k] * inv[k][j]).sum();
                assert_eq!(s, i64::from(i == j));
            }
        }
    }

    #[test]
    fn basis_coordinates() {
        let e = vec![-1, 1, 1, 0, -1];
        let f = vec![-2, 0, 0, 1, 1];
        let b = [e.clone(), f.clone()];
        assert_eq!(solve_in_basis(&b, &[-3, 1, 1, 1, 0]).unwrap(), vec![1, 1]);
        assert_eq!(solve_in_basis(&b, &[-4, 0, 0, 2, 2]).unwrap(), vec![0, 2]);
        assert_eq!(solve_in_basis(&b, &[1, 0, 0, 0, 0]), Err(Error::NotInKernel));
        let half = [vec![2, 0], vec![0, 1]];
        assert_eq!(solve_in_basis(&half, &[1, 0]), Err(Error::NotIntegralInBasis));
        assert_eq!(solve_in_basis(&[e.clone(), e], &[0; 5]), Err(Error::DependentBasis));
    }

    #[test]
    fn perceptron_functional() {
        let vs = vec![vec![-1, 1, 1, 0, -1], vec![-2, 0, 0, 1, 1], vec![-3, 1, 1, 1, 0]];
        let w = positive_functional(&vs).unwrap();
        assert!(vs.iter().all(|v| v.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() > 0));
        assert!(positive_functional(&[vec![1, 0], vec![-1, 0]]).is_none());
    }
}
