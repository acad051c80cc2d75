//! Dense matrices over an exact field and Gaussian elimination.

use crate::error::Error;
use crate::exactfield::{Field, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: DenseMatrix,
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(DenseMatrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, data).expect("rectangular")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_product(a, b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Gauss-Jordan elimination. Pivots are taken as the first nonzero entry
    /// scanning columns left to right, so the result is deterministic.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let delta = &factor * pv;
                    *m.entry_mut(r, c) -= &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }
}

/// Rank and a kernel basis.
///
/// Kernel vectors come from the reduced row echelon form, one per free
/// column in increasing index order, with a 1 in that free coordinate.
pub fn rank_and_kernel(m: &DenseMatrix) -> (usize, Vec<Vec<Scalar>>) {
    let ech = m.rref();
    let field = m.field();
    let rank = ech.pivots.len();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); m.cols()];
            v[free] = field.one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.matrix.get(r, free);
            }
            v
        })
        .collect();
    (rank, kernel)
}

/// Solves `m * x = b`. Returns `None` when `b` is outside the column span.
/// Free variables are set to zero.
pub fn solve(m: &DenseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let field = m.field();
    let mut aug = DenseMatrix::zeros(field, m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols(), b[r].clone());
    }
    let ech = aug.rref();
    if ech.pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols()];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.matrix.get(r, m.cols()).clone();
    }
    Ok(Some(x))
}

/// Indices of a maximal linearly independent prefix-greedy subset of `vectors`.
pub fn greedy_independent(vectors: &[Vec<Scalar>]) -> Vec<usize> {
    // Incremental echelon basis: each stored row has a leading 1 at `lead`.
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (lead, row) in &basis {
            if w[*lead].is_zero() {
                continue;
            }
            let f = w[*lead].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi -= &(&f * ri);
                }
            }
        }
        if let Some(lead) = w.iter().position(|s| !s.is_zero()) {
            let inv = w[lead].inv().expect("nonzero");
            let w: Vec<Scalar> = w.iter().map(|s| s * &inv).collect();
            basis.push((lead, w));
            chosen.push(idx);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn empty_matrix() {
        let m = DenseMatrix::zeros(q(), 0, 0);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 0);
        assert!(ker.is_empty());
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = DenseMatrix::identity(q(), 3);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 3);
        assert!(ker.is_empty());
    }

    #[test]
    fn rank_one_kernel() {
        let m = DenseMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![vec![q().from_i64(-2), q().from_i64(1)]]);
    }

    #[test]
    fn solve_cases() {
        let id = DenseMatrix::identity(q(), 2);
        let b = vec![q().from_i64(5), q().parse("-1/2").unwrap()];
        assert_eq!(solve(&id, &b).unwrap(), Some(b.clone()));

        let row = DenseMatrix::from_i64(q(), &[&[1, 1]]);
        let x = solve(&row, &[q().from_i64(3)]).unwrap().unwrap();
        assert_eq!(row.mul_vec(&x).unwrap(), vec![q().from_i64(3)]);
        assert_eq!(x, vec![q().from_i64(3), q().zero()]);

        let col = DenseMatrix::from_i64(q(), &[&[1], &[1]]);
        assert_eq!(
            solve(&col, &[q().from_i64(1), q().from_i64(2)]).unwrap(),
            None
        );
        assert!(solve(&col, &[q().from_i64(1)]).is_err());
    }

    #[test]
    fn greedy_skips_dependent() {
        let f = q();
        let v = |a: i64, b: i64| vec![f.from_i64(a), f.from_i64(b)];
        let picks = greedy_independent(&[v(1, 1), v(2, 2), v(0, 0), v(1, 0), v(0, 1)]);
        assert_eq!(picks, vec![0, 3]);
    }

    #[test]
    fn prime_field_rank() {
        let f = Field::prime(2).unwrap();
        let m = DenseMatrix::from_i64(f, &[&[1, 1], &[1, 3]]);
        assert_eq!(m.rank(), 1);
    }
}
