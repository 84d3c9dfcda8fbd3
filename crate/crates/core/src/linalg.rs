//! Dense Gaussian elimination over any [`Scalar`].

use crate::field::Scalar;

fn scale_of<T: Scalar>(rows: &[Vec<T>]) -> f64 {
    rows.iter()
        .flatten()
        .map(Scalar::magnitude)
        .fold(0.0, f64::max)
}

/// Reduced row echelon form pivoting in the first `ncols` columns; extra
/// columns are carried along. Returns the reduced rows and pivot columns.
pub fn rref<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let scale = scale_of(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let best = (r..m.len())
            .filter(|&i| !m[i][c].negligible(scale))
            .max_by(|&i, &j| m[i][c].magnitude().total_cmp(&m[j][c].magnitude()));
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero_s() {
                let f = m[i][c].clone();
                for k in 0..m[r].len() {
                    let delta = f.clone() * m[r][k].clone();
                    m[i][k] = m[i][k].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![T::zero(); ncols];
            x[f] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

pub fn det<T: Scalar>(mat: &[Vec<T>]) -> T {
    let n = mat.len();
    let mut m = mat.to_vec();
    let scale = scale_of(mat);
    let mut d = T::one();
    for c in 0..n {
        let best = (c..n)
            .filter(|&i| !m[i][c].negligible(scale))
            .max_by(|&i, &j| m[i][c].magnitude().total_cmp(&m[j][c].magnitude()));
        let Some(p) = best else { return T::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = d * m[c][c].clone();
        for i in c + 1..n {
            let f = m[i][c].clone() / m[c][c].clone();
            for k in c..n {
                let delta = f.clone() * m[c][k].clone();
                m[i][k] = m[i][k].clone() - delta;
            }
        }
    }
    d
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}
