use std::fmt;
use std::sync::Arc;

use crate::exactfield::Field;
use crate::parity::Parity;

/// Layout of the homogeneous cochain space `C^n_p(V; W)`.
///
/// Coefficients are stored only for `(multi-index, output)` pairs allowed by
/// homogeneity, `|out| = p + |i_1| + ... + |i_n|`, in lexicographic order. That
/// order is also the basis order used for coboundary matrices.
#[derive(Clone)]
pub struct CochainShape {
    field: Field,
    arity: usize,
    parity: Parity,
    source: Vec<Parity>,
    target: Vec<Parity>,
    tuple_parity: Vec<Parity>,
    offsets: Vec<usize>,
    outputs: [Vec<usize>; 2],
    out_rank: Vec<usize>,
}

impl CochainShape {
    pub fn new(
        field: Field,
        source: &[Parity],
        target: &[Parity],
        arity: usize,
        parity: Parity,
    ) -> Arc<CochainShape> {
        let d = source.len();
        let tuples = d.pow(arity as u32);
        let mut tuple_parity = Vec::with_capacity(tuples);
        // Lexicographic order: the parity of tuple t extends the parity of t / d.
        if arity == 0 {
            tuple_parity.push(Parity::EVEN);
        } else {
            let prev = {
                let mut v = vec![Parity::EVEN];
                for _ in 0..arity - 1 {
                    v = v
                        .iter()
                        .flat_map(|p| source.iter().map(move |s| *p + *s))
                        .collect();
                }
                v
            };
            for p in prev {
                for s in source {
                    tuple_parity.push(p + *s);
                }
            }
        }
        let mut outputs = [Vec::new(), Vec::new()];
        let mut out_rank = vec![0; target.len()];
        for (b, p) in target.iter().enumerate() {
            out_rank[b] = outputs[p.value()].len();
            outputs[p.value()].push(b);
        }
        let mut offsets = Vec::with_capacity(tuples + 1);
        let mut acc = 0;
        offsets.push(0);
        for tp in &tuple_parity {
            acc += outputs[(parity + *tp).value()].len();
            offsets.push(acc);
        }
        Arc::new(CochainShape {
            field,
            arity,
            parity,
            source: source.to_vec(),
            target: target.to_vec(),
            tuple_parity,
            offsets,
            outputs,
            out_rank,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn source(&self) -> &[Parity] {
        &self.source
    }

    pub fn target(&self) -> &[Parity] {
        &self.target
    }

    pub fn source_dim(&self) -> usize {
        self.source.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target.len()
    }

    /// Dimension of the cochain space.
    pub fn len(&self) -> usize {
        *self.offsets.last().expect("offsets are never empty")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn num_tuples(&self) -> usize {
        self.tuple_parity.len()
    }

    pub fn tuple_parity(&self, flat: usize) -> Parity {
        self.tuple_parity[flat]
    }

    /// Outputs allowed at a multi-index.
    #[inline]
    pub fn allowed_outputs(&self, flat: usize) -> &[usize] {
        &self.outputs[(self.parity + self.tuple_parity[flat]).value()]
    }

    #[inline]
    pub fn offset(&self, flat: usize) -> usize {
        self.offsets[flat]
    }

    /// Storage position of `(multi-index, out)`, or `None` if homogeneity forbids it.
    #[inline]
    pub fn position(&self, flat: usize, out: usize) -> Option<usize> {
        let need = self.parity + self.tuple_parity[flat];
        (self.target[out] == need).then(|| self.offsets[flat] + self.out_rank[out])
    }

    pub fn flat(&self, tuple: &[usize]) -> usize {
        flat_index(self.source.len(), tuple)
    }

    pub fn unflatten(&self, flat: usize) -> Vec<usize> {
        unflatten(self.source.len(), self.arity, flat)
    }

    /// Basis `(multi-index, output)` pairs in storage order.
    pub fn basis(&self) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        (0..self.num_tuples()).flat_map(move |t| {
            let tuple = self.unflatten(t);
            self.allowed_outputs(t)
                .iter()
                .map(move |&b| (tuple.clone(), b))
        })
    }

    /// Same source and target, different arity or parity.
    pub fn sibling(&self, arity: usize, parity: Parity) -> Arc<CochainShape> {
        CochainShape::new(self.field, &self.source, &self.target, arity, parity)
    }

    pub fn same_space(&self, other: &CochainShape) -> bool {
        self.field == other.field && self.source == other.source && self.target == other.target
    }
}

impl PartialEq for CochainShape {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.parity == other.parity && self.same_space(other)
    }
}

impl Eq for CochainShape {}

impl fmt::Debug for CochainShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CochainShape")
            .field("field", &self.field)
            .field("arity", &self.arity)
            .field("parity", &self.parity)
            .field("source_dim", &self.source.len())
            .field("target_dim", &self.target.len())
            .finish()
    }
}

pub fn flat_index(d: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * d + i)
}

pub fn unflatten(d: usize, arity: usize, mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

/// Visits every multi-index of length `arity` over `0..d` in lexicographic order.
pub fn for_each_tuple(d: usize, arity: usize, mut visit: impl FnMut(usize, &[usize])) {
    let total = d.pow(arity as u32);
    let mut digits = vec![0usize; arity];
    for flat in 0..total {
        visit(flat, &digits);
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if *slot < d {
                break;
            }
            *slot = 0;
        }
    }
}
