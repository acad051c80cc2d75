//! Two-sided supermodules over a superalgebra.

use std::fmt;

use crate::bilinear::BilinearMap;
use crate::error::Error;
use crate::exactfield::{Field, Scalar};
use crate::parity::Parity;
use crate::superalgebra::SuperAlgebra;

/// A bimodule `P` over `A`: `e_i . p_a = sum_b L[i][a][b] p_b` and
/// `p_a . e_i = sum_b R[a][i][b] p_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperBimodule {
    field: Field,
    parities: Vec<Parity>,
    left: BilinearMap,
    right: BilinearMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleViolation {
    LeftGrading {
        i: usize,
        a: usize,
        b: usize,
    },
    RightGrading {
        a: usize,
        i: usize,
        b: usize,
    },
    /// `(xy).p != x.(y.p)` for `x = e_i`, `y = e_j`, `p = p_a`.
    LeftAssociativity {
        i: usize,
        j: usize,
        a: usize,
    },
    /// `(x.p).y != x.(p.y)`.
    Middle {
        i: usize,
        a: usize,
        j: usize,
    },
    /// `(p.x).y != p.(xy)`.
    RightAssociativity {
        a: usize,
        i: usize,
        j: usize,
    },
}

impl fmt::Display for BimoduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleViolation::LeftGrading { i, a, b } => {
                write!(f, "left action e{i}.p{a} hits p{b} of the wrong parity")
            }
            BimoduleViolation::RightGrading { a, i, b } => {
                write!(f, "right action p{a}.e{i} hits p{b} of the wrong parity")
            }
            BimoduleViolation::LeftAssociativity { i, j, a } => {
                write!(f, "(e{i} e{j}).p{a} != e{i}.(e{j}.p{a})")
            }
            BimoduleViolation::Middle { i, a, j } => {
                write!(f, "(e{i}.p{a}).e{j} != e{i}.(p{a}.e{j})")
            }
            BimoduleViolation::RightAssociativity { a, i, j } => {
                write!(f, "(p{a}.e{i}).e{j} != p{a}.(e{i} e{j})")
            }
        }
    }
}

impl SuperBimodule {
    pub fn new(
        field: Field,
        parities: Vec<Parity>,
        left: BilinearMap,
        right: BilinearMap,
    ) -> Result<Self, Error> {
        let m = parities.len();
        let d = left.left_dim();
        if left.right_dim() != m || left.out_dim() != m {
            return Err(Error::Dimension(
                "left action tensor has the wrong shape".into(),
            ));
        }
        if right.left_dim() != m || right.right_dim() != d || right.out_dim() != m {
            return Err(Error::Dimension(
                "right action tensor has the wrong shape".into(),
            ));
        }
        if left.field() != field || right.field() != field {
            return Err(Error::Input("action tensor over a different field".into()));
        }
        Ok(SuperBimodule {
            field,
            parities,
            left,
            right,
        })
    }

    /// The zero module over an algebra of dimension `d`.
    pub fn zero(field: Field, d: usize) -> Self {
        SuperBimodule {
            field,
            parities: Vec::new(),
            left: BilinearMap::zero(field, d, 0, 0),
            right: BilinearMap::zero(field, 0, d, 0),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Dimension of the algebra acting on this module.
    pub fn algebra_dim(&self) -> usize {
        self.left.left_dim()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn left(&self) -> &BilinearMap {
        &self.left
    }

    pub fn right(&self) -> &BilinearMap {
        &self.right
    }

    /// Checks grading and the three mixed associativity laws on all basis triples.
    pub fn validate(&self, a: &SuperAlgebra) -> Vec<BimoduleViolation> {
        let mut out = Vec::new();
        let d = a.dim();
        let m = self.dim();
        if self.algebra_dim() != d {
            // Shape mismatch cannot be witnessed by basis triples; treat as a grading failure.
            out.push(BimoduleViolation::LeftGrading { i: 0, a: 0, b: 0 });
            return out;
        }
        let ap = a.parities();
        for (i, aa, b, _) in self.left.nonzeros() {
            if self.parities[b] != ap[i] + self.parities[aa] {
                out.push(BimoduleViolation::LeftGrading { i, a: aa, b });
            }
        }
        for (aa, i, b, _) in self.right.nonzeros() {
            if self.parities[b] != ap[i] + self.parities[aa] {
                out.push(BimoduleViolation::RightGrading { a: aa, i, b });
            }
        }
        let zero = || vec![self.field.zero(); m];
        for i in 0..d {
            for j in 0..d {
                for p in 0..m {
                    // (xy).p vs x.(y.p)
                    let mut lhs = zero();
                    for (k, c) in a.product().terms(i, j) {
                        self.left.accumulate(*k, p, c, &mut lhs);
                    }
                    let mut rhs = zero();
                    for (q, c) in self.left.terms(j, p) {
                        self.left.accumulate(i, *q, c, &mut rhs);
                    }
                    if lhs != rhs {
                        out.push(BimoduleViolation::LeftAssociativity { i, j, a: p });
                    }
                    // (x.p).y vs x.(p.y)
                    let mut lhs = zero();
                    for (q, c) in self.left.terms(i, p) {
                        self.right.accumulate(*q, j, c, &mut lhs);
                    }
                    let mut rhs = zero();
                    for (q, c) in self.right.terms(p, j) {
                        self.left.accumulate(i, *q, c, &mut rhs);
                    }
                    if lhs != rhs {
                        out.push(BimoduleViolation::Middle { i, a: p, j });
                    }
                    // (p.x).y vs p.(xy)
                    let mut lhs = zero();
                    for (q, c) in self.right.terms(p, i) {
                        self.right.accumulate(*q, j, c, &mut lhs);
                    }
                    let mut rhs = zero();
                    for (k, c) in a.product().terms(i, j) {
                        self.right.accumulate(p, *k, c, &mut rhs);
                    }
                    if lhs != rhs {
                        out.push(BimoduleViolation::RightAssociativity { a: p, i, j });
                    }
                }
            }
        }
        out
    }

    pub fn act_left(&self, x: &[Scalar], p: &[Scalar]) -> Vec<Scalar> {
        self.left.apply(x, p)
    }

    pub fn act_right(&self, p: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.right.apply(p, x)
    }
}

/// `A` as a bimodule over itself.
pub fn self_module(a: &SuperAlgebra) -> SuperBimodule {
    SuperBimodule {
        field: a.field(),
        parities: a.parities().to_vec(),
        left: a.product().clone(),
        right: a.product().clone(),
    }
}

/// The algebra `A (+) P` with `(a, x)(b, y) = (ab, a.y + x.b)`.
pub fn square_zero_algebra(a: &SuperAlgebra, p: &SuperBimodule) -> Result<SuperAlgebra, Error> {
    if !p.validate(a).is_empty() {
        return Err(Error::Input("module fails the bimodule axioms".into()));
    }
    if p.dim() == 0 {
        return Ok(a.clone());
    }
    let d = a.dim();
    let n = d + p.dim();
    let mut prod = BilinearMap::zero(a.field(), n, n, n);
    for (i, j, k, c) in a.product().nonzeros() {
        prod.set(i, j, k, c.clone());
    }
    for (i, x, y, c) in p.left().nonzeros() {
        prod.set(i, d + x, d + y, c.clone());
    }
    for (x, i, y, c) in p.right().nonzeros() {
        prod.set(d + x, i, d + y, c.clone());
    }
    let mut parities = a.parities().to_vec();
    parities.extend_from_slice(p.parities());
    let mut names = a.names().to_vec();
    names.extend((0..p.dim()).map(|k| format!("p{k}")));
    SuperAlgebra::new(a.field(), parities, Some(names), prod)
}

/// `C^1(A; P)` as a bimodule: `(a*f)(x) = a f(x)` and `(f*a)(x) = f(ax) - f(a) x`.
///
/// Basis: the elementary maps `e_i -> p_b`, ordered lexicographically by
/// `(i, b)` (index `i * dim P + b`), of parity `|b| - |i|`.
pub fn hom_module(a: &SuperAlgebra, p: &SuperBimodule) -> SuperBimodule {
    let field = a.field();
    let d = a.dim();
    let m = p.dim();
    let idx = |i: usize, b: usize| i * m + b;
    let parities = (0..d)
        .flat_map(|i| (0..m).map(move |b| (i, b)))
        .map(|(i, b)| p.parities()[b] + a.parity(i))
        .collect();
    let mut left = BilinearMap::zero(field, d, d * m, d * m);
    for (s, b, c, v) in p.left().nonzeros() {
        for i in 0..d {
            left.set(s, idx(i, b), idx(i, c), v.clone());
        }
    }
    let mut right = BilinearMap::zero(field, d * m, d, d * m);
    for i in 0..d {
        for b in 0..m {
            for s in 0..d {
                let mut coeffs = vec![field.zero(); d * m];
                // f(e_s e_t) part: c_{st}^i on E_{t,b}.
                for t in 0..d {
                    let c = a.structure_constant(s, t, i);
                    if !c.is_zero() {
                        coeffs[idx(t, b)] += &c;
                    }
                }
                // -f(e_s) e_t part, only when s = i.
                if s == i {
                    for t in 0..d {
                        for (c_out, v) in p.right().terms(b, t) {
                            coeffs[idx(t, *c_out)] -= v;
                        }
                    }
                }
                for (k, v) in coeffs.into_iter().enumerate() {
                    right.set(idx(i, b), s, k, v);
                }
            }
        }
    }
    SuperBimodule {
        field,
        parities,
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::make_named;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn self_modules_are_bimodules() {
        for name in ["ground", "dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, q()).unwrap();
            assert!(self_module(&a).validate(&a).is_empty(), "{name}");
        }
    }

    #[test]
    fn square_zero_of_zero_module_is_identity() {
        let a = make_named("clifford1", q()).unwrap();
        let z = SuperBimodule::zero(q(), a.dim());
        assert_eq!(square_zero_algebra(&a, &z).unwrap(), a);
    }

    #[test]
    fn square_zero_of_lambda_is_valid() {
        let a = make_named("dual_odd", q()).unwrap();
        let s = square_zero_algebra(&a, &self_module(&a)).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.validate().is_valid());
        // P . P = 0.
        for x in 2..4 {
            for y in 2..4 {
                assert!(s.product().terms(x, y).is_empty());
            }
        }
    }

    #[test]
    fn hom_module_over_ground() {
        let a = make_named("ground", q()).unwrap();
        let h = hom_module(&a, &self_module(&a));
        assert_eq!(h.dim(), 1);
        // (f*e)(e) = f(e e) - f(e) e = 0.
        assert!(h.right().terms(0, 0).is_empty());
        assert_eq!(h.left().get(0, 0, 0), q().one());
        assert!(h.validate(&a).is_empty());
    }

    #[test]
    fn hom_modules_are_bimodules() {
        for name in [
            "dual_odd",
            "clifford1",
            "matrix(1|1)",
            "square_zero(dual_odd)",
        ] {
            let a = make_named(name, q()).unwrap();
            let h = hom_module(&a, &self_module(&a));
            assert_eq!(h.dim(), a.dim() * a.dim());
            assert!(h.validate(&a).is_empty(), "{name}");
        }
        let a = make_named("dual_odd", q()).unwrap();
        let h = hom_module(&a, &SuperBimodule::zero(q(), a.dim()));
        assert_eq!(h.dim(), 0);
    }

    #[test]
    fn broken_module_is_rejected() {
        let a = make_named("dual_even", q()).unwrap();
        let mut p = self_module(&a);
        // x.x = x breaks (xx).p = x.(x.p).
        let mut left = p.left().clone();
        left.set(1, 1, 1, q().one());
        p = SuperBimodule::new(q(), p.parities().to_vec(), left, p.right().clone()).unwrap();
        assert!(!p.validate(&a).is_empty());
        assert!(square_zero_algebra(&a, &p).is_err());
    }
}
