// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use crate::error::{Error, Result};

/// A real antisymmetric matrix, stored densely in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from a dense matrix, rejecting anything not exactly `M = -M^t`.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        for i in 0..n {
            for j in i..n {
                if m.get(i, j) != -m.get(j, i) {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets `M[i][j] = value` and `M[j][i] = -value`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        assert_ne!(i, j, "diagonal of a skew matrix is zero");
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = -value;
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }
}

/// Pfaffian by Parlett-Reid tridiagonalisation with partial pivoting.
pub fn pfaffian(m: &SkewMatrix) -> Result<f64> {
    let n = m.n;
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let mut a = m.data.clone();
    let at = |i: usize, j: usize| i * n + j;
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        let mut p = k + 1;
        let mut best = a[at(k + 1, k)].abs();
        for i in k + 2..n {
            let v = a[at(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if p != k + 1 {
            // Symmetric swap of rows and columns k+1 and p.
            for j in 0..n {
                a.swap(at(k + 1, j), at(p, j));
            }
            for i in 0..n {
                a.swap(at(i, k + 1), at(i, p));
            }
            pf = -pf;
        }
        let pivot = a[at(k, k + 1)];
        if pivot == 0.0 {
            return Ok(0.0);
        }
        pf *= pivot;
        if k + 2 < n {
            let tau: Vec<f64> = (k + 2..n).map(|j| a[at(k, j)] / pivot).collect();
            let col: Vec<f64> = (k + 2..n).map(|i| a[at(i, k + 1)]).collect();
            // A[k+2:, k+2:] += tau col^t - col tau^t
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[at(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let mut m = SkewMatrix::zeros(2);
        m.set(0, 1, 3.5);
        assert_eq!(pfaffian(&m).unwrap(), 3.5);
        assert_eq!(pfaffian(&SkewMatrix::zeros(0)).unwrap(), 1.0);
    }

    #[test]
    fn four_by_four_closed_form() {
        let (a, b, c, d, e, f) = (1.3, -0.4, 2.2, 0.7, 1.9, -3.1);
        let mut m = SkewMatrix::zeros(4);
        m.set(0, 1, a);
        m.set(0, 2, b);
        m.set(0, 3, c);
        m.set(1, 2, d);
        m.set(1, 3, e);
        m.set(2, 3, f);
        let expected = a * f - b * e + c * d;
        assert!((pfaffian(&m).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn pivoting_needed() {
        // Zero in the natural pivot position.
        let mut m = SkewMatrix::zeros(4);
        m.set(0, 2, 1.0);
        m.set(1, 3, 1.0);
        assert_eq!(pfaffian(&m).unwrap(), -1.0);
    }

    #[test]
    fn errors() {
        assert_eq!(pfaffian(&SkewMatrix::zeros(3)), Err(Error::OddDimension(3)));
        assert_eq!(
            SkewMatrix::from_dense(&[vec![0.0, 1.0], vec![1.0, 0.0]]),
            Err(Error::NotSkew(0, 1))
        );
        assert!(SkewMatrix::from_dense(&[vec![1.0, 1.0], vec![-1.0, 0.0]]).is_err());
    }
}
