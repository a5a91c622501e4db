use super::scalar::Scalar;

/// Determinant by Gaussian elimination with partial pivoting on `|·|`.
pub fn det<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    let mut d = S::one();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].to_c64().norm().total_cmp(&m[j][col].to_c64().norm()));
        let Some(p) = pivot.filter(|&p| !m[p][col].is_zero()) else {
            return S::zero();
        };
        if p != col {
            m.swap(p, col);
            d = d.negate();
        }
        d = d.times(&m[col][col]);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].over(&m[col][col]);
            for c in col..n {
                let v = m[r][c].minus(&f.times(&m[col][c]));
                m[r][c] = v;
            }
        }
    }
    d
}

/// Deletes row `r` and column `c`.
pub fn minor<S: Scalar>(m: &[Vec<S>], r: usize, c: usize) -> Vec<Vec<S>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ExactComplex};
    use num_complex::Complex64;

    #[test]
    fn determinants() {
        let m: Vec<Vec<ExactComplex>> = [[2, 0, 1], [0, 1, 0], [1, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| ExactComplex::from(x)).collect())
            .collect();
        assert_eq!(det(m.clone()), ExactComplex::real(rat(1)));
        assert_eq!(det(minor(&m, 2, 2)), ExactComplex::real(rat(2)));
        let f = vec![vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]];
        assert_eq!(det(f), Complex64::new(-1.0, 0.0));
        assert_eq!(det::<Complex64>(vec![]), Complex64::new(1.0, 0.0));
    }
}
