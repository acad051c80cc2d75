//! Sparse structure tensors `L x R -> O` shared by algebra products and module actions.

use crate::error::Error;
use crate::exactfield::{Field, Scalar};

/// A bilinear map between finite bases, stored as a sparse tensor:
/// `apply(e_l, e_r) = sum_k c[l][r][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    field: Field,
    left_dim: usize,
    right_dim: usize,
    out_dim: usize,
    terms: Vec<Vec<(usize, Scalar)>>,
}

impl BilinearMap {
    pub fn zero(field: Field, left_dim: usize, right_dim: usize, out_dim: usize) -> Self {
        BilinearMap {
            field,
            left_dim,
            right_dim,
            out_dim,
            terms: vec![Vec::new(); left_dim * right_dim],
        }
    }

    /// Builds from a dense tensor indexed `[(l * right_dim + r) * out_dim + k]`.
    pub fn from_dense(
        field: Field,
        left_dim: usize,
        right_dim: usize,
        out_dim: usize,
        dense: &[Scalar],
    ) -> Result<Self, Error> {
        if dense.len() != left_dim * right_dim * out_dim {
            return Err(Error::Dimension(format!(
                "structure tensor has {} entries, expected {}",
                dense.len(),
                left_dim * right_dim * out_dim
            )));
        }
        let mut map = Self::zero(field, left_dim, right_dim, out_dim);
        for l in 0..left_dim {
            for r in 0..right_dim {
                for k in 0..out_dim {
                    let v = &dense[(l * right_dim + r) * out_dim + k];
                    if v.field() != field {
                        return Err(Error::Input("structure constant from another field".into()));
                    }
                    if !v.is_zero() {
                        map.terms[l * right_dim + r].push((k, v.clone()));
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// Nonzero `(k, c)` with `e_l * e_r = sum c e_k`, in increasing `k`.
    #[inline]
    pub fn terms(&self, l: usize, r: usize) -> &[(usize, Scalar)] {
        &self.terms[l * self.right_dim + r]
    }

    pub fn get(&self, l: usize, r: usize, k: usize) -> Scalar {
        self.terms(l, r)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    /// Sets one coefficient, keeping each term list sorted.
    pub fn set(&mut self, l: usize, r: usize, k: usize, v: Scalar) {
        let list = &mut self.terms[l * self.right_dim + r];
        match list.binary_search_by_key(&k, |(kk, _)| *kk) {
            Ok(pos) if v.is_zero() => {
                list.remove(pos);
            }
            Ok(pos) => list[pos].1 = v,
            Err(_) if v.is_zero() => {}
            Err(pos) => list.insert(pos, (k, v)),
        }
    }

    /// Bilinear extension to coordinate vectors.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.out_dim];
        for (l, xl) in x.iter().enumerate() {
            if xl.is_zero() {
                continue;
            }
            for (r, yr) in y.iter().enumerate() {
                if yr.is_zero() {
                    continue;
                }
                let w = xl * yr;
                for (k, c) in self.terms(l, r) {
                    out[*k].add_product(&w, c);
                }
            }
        }
        out
    }

    /// Adds `scale * (e_l * e_r)` into `acc`.
    #[inline]
    pub fn accumulate(&self, l: usize, r: usize, scale: &Scalar, acc: &mut [Scalar]) {
        for (k, c) in self.terms(l, r) {
            acc[*k].add_product(scale, c);
        }
    }

    pub fn dense(&self) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.left_dim * self.right_dim * self.out_dim];
        for l in 0..self.left_dim {
            for r in 0..self.right_dim {
                for (k, c) in self.terms(l, r) {
                    out[(l * self.right_dim + r) * self.out_dim + k] = c.clone();
                }
            }
        }
        out
    }

    /// Iterates `(l, r, k, c)` over nonzero coefficients in lexicographic order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        (0..self.left_dim).flat_map(move |l| {
            (0..self.right_dim)
                .flat_map(move |r| self.terms(l, r).iter().map(move |(k, c)| (l, r, *k, c)))
        })
    }
}
