use num_traits::{One, Zero};
use serde::Serialize;
use silting_scalars::Scalar;

use crate::module::PerfModule;

/// Class in `K_0(per A)`, coordinates in the basis `[e_v A]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Class(pub Vec<i64>);

pub fn k0_class(x: &PerfModule, n_vertices: usize) -> K0Class {
    let mut v = vec![0i64; n_vertices];
    for &(i, s) in &x.summands {
        v[i] += if s.rem_euclid(2) == 0 { 1 } else { -1 };
    }
    K0Class(v)
}

/// Determinant of the square matrix with the given rows.
pub fn determinant(rows: &[K0Class]) -> i64 {
    let n = rows.len();
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.0.len(), n, "square matrix");
            r.0.iter().map(|&x| Scalar::from_int(x)).collect()
        })
        .collect();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return 0;
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det *= &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for k in col..n {
                let t = &m[col][k] * &f;
                m[r][k] -= &t;
            }
        }
    }
    det.to_i64().expect("integer determinant")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_values() {
        let rows = vec![K0Class(vec![1, 0]), K0Class(vec![1, -1])];
        assert_eq!(determinant(&rows), -1);
        let rows = vec![K0Class(vec![2, 4]), K0Class(vec![1, 2])];
        assert_eq!(determinant(&rows), 0);
        let rows = vec![K0Class(vec![0, 1, 0]), K0Class(vec![1, 0, 0]), K0Class(vec![0, 0, 3])];
        assert_eq!(determinant(&rows), -3);
    }
}
