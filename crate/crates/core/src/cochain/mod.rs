//! Homogeneous multilinear cochains and the super-Hochschild coboundary.
//!
//! A cochain `f in C^n_p(A; P)` is stored by its values on basis tuples,
//! `f(e_{i_1}, ..., e_{i_n}) = sum_b T[(i_1..i_n)][b] p_b`. Only the entries
//! allowed by homogeneity exist in memory (see [`CochainShape`]).
//!
//! The coboundary is
//!
//! ```text
//! (delta f)(x_1..x_{n+1}) = (-1)^{|x_1||f|} x_1 . f(x_2..x_{n+1})
//!                         + sum_{i=1}^{n} (-1)^i f(x_1.., x_i x_{i+1}, ..x_{n+1})
//!                         + (-1)^{n+1} f(x_1..x_n) . x_{n+1}
//! ```
//!
//! and preserves parity.

mod shape;

pub use shape::{flat_index, for_each_tuple, unflatten, CochainShape};

use std::sync::Arc;

use rand::Rng;

use crate::error::Error;
use crate::exactfield::{odd, DenseMatrix, Field, Scalar};
use crate::parity::Parity;
use crate::superalgebra::{SuperAlgebra, SuperElement};
use crate::supermodule::{hom_module, SuperBimodule};

#[derive(Clone, Debug)]
pub struct Cochain {
    shape: Arc<CochainShape>,
    coeffs: Vec<Scalar>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.shape, &other.shape) || self.shape == other.shape)
            && self.coeffs == other.coeffs
    }
}

impl Eq for Cochain {}

impl Cochain {
    pub fn zero(shape: Arc<CochainShape>) -> Self {
        let coeffs = vec![shape.field().zero(); shape.len()];
        Cochain { shape, coeffs }
    }

    pub fn from_coeffs(shape: Arc<CochainShape>, coeffs: Vec<Scalar>) -> Result<Self, Error> {
        if coeffs.len() != shape.len() {
            return Err(Error::Dimension(format!(
                "{} coefficients for a space of dimension {}",
                coeffs.len(),
                shape.len()
            )));
        }
        Ok(Cochain { shape, coeffs })
    }

    /// Builds a cochain from its full value vector at each multi-index.
    ///
    /// `values(flat, tuple, acc)` adds `f(tuple)` into the zeroed `acc` of length
    /// `dim P`. Components that homogeneity forbids must come out zero; a nonzero
    /// one means the caller's formula does not preserve the grading and panics.
    pub fn build(
        shape: Arc<CochainShape>,
        mut values: impl FnMut(usize, &[usize], &mut [Scalar]),
    ) -> Self {
        let field = shape.field();
        let m = shape.target_dim();
        let mut coeffs = Vec::with_capacity(shape.len());
        let mut acc = vec![field.zero(); m];
        for_each_tuple(shape.source_dim(), shape.arity(), |flat, tuple| {
            acc.iter_mut().for_each(|s| *s = field.zero());
            values(flat, tuple, &mut acc);
            let allowed = shape.allowed_outputs(flat);
            let mut next = allowed.iter().peekable();
            for (b, v) in acc.iter_mut().enumerate() {
                if next.peek() == Some(&&b) {
                    next.next();
                    coeffs.push(std::mem::replace(v, field.zero()));
                } else {
                    assert!(
                        v.is_zero(),
                        "non-homogeneous value at {tuple:?} -> {b} for a cochain of parity {}",
                        shape.parity()
                    );
                }
            }
        });
        Cochain { shape, coeffs }
    }

    /// The arity-0 cochain given by an element of the target.
    pub fn constant(shape: Arc<CochainShape>, value: &[Scalar]) -> Result<Self, Error> {
        if shape.arity() != 0 || value.len() != shape.target_dim() {
            return Err(Error::Dimension(
                "constant needs arity 0 and a target vector".into(),
            ));
        }
        let allowed = shape.allowed_outputs(0);
        for (b, v) in value.iter().enumerate() {
            if !v.is_zero() && !allowed.contains(&b) {
                return Err(Error::NotHomogeneous);
            }
        }
        let coeffs = allowed.iter().map(|&b| value[b].clone()).collect();
        Ok(Cochain { shape, coeffs })
    }

    /// The identity map of an algebra, in `C^1_0(A; A)`.
    pub fn identity(a: &SuperAlgebra) -> Self {
        let shape = CochainShape::new(a.field(), a.parities(), a.parities(), 1, Parity::EVEN);
        let one = a.field().one();
        Cochain::build(shape, |_, t, acc| acc[t[0]] = one.clone())
    }

    pub fn shape(&self) -> &Arc<CochainShape> {
        &self.shape
    }

    pub fn field(&self) -> Field {
        self.shape.field()
    }

    pub fn arity(&self) -> usize {
        self.shape.arity()
    }

    pub fn parity(&self) -> Parity {
        self.shape.parity()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Nonzero-capable `(output, coefficient)` pairs at a multi-index.
    #[inline]
    pub fn at(&self, flat: usize) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        let start = self.shape.offset(flat);
        self.shape
            .allowed_outputs(flat)
            .iter()
            .copied()
            .zip(&self.coeffs[start..])
    }

    /// `f(tuple)` as a full target vector.
    pub fn value(&self, tuple: &[usize]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.shape.target_dim()];
        for (b, v) in self.at(self.shape.flat(tuple)) {
            out[b] = v.clone();
        }
        out
    }

    pub fn get(&self, tuple: &[usize], out: usize) -> Scalar {
        match self.shape.position(self.shape.flat(tuple), out) {
            Some(pos) => self.coeffs[pos].clone(),
            None => self.field().zero(),
        }
    }

    pub fn set(&mut self, tuple: &[usize], out: usize, v: Scalar) -> Result<(), Error> {
        if tuple.len() != self.arity()
            || tuple.iter().any(|&i| i >= self.shape.source_dim())
            || out >= self.shape.target_dim()
        {
            return Err(Error::Dimension(format!(
                "index {tuple:?} -> {out} out of range"
            )));
        }
        match self.shape.position(self.shape.flat(tuple), out) {
            Some(pos) => {
                self.coeffs[pos] = v;
                Ok(())
            }
            None if v.is_zero() => Ok(()),
            None => Err(Error::NotHomogeneous),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// First nonzero entry as `(tuple, output, value)`.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, usize, Scalar)> {
        self.shape
            .basis()
            .zip(&self.coeffs)
            .find(|(_, v)| !v.is_zero())
            .map(|((t, b), v)| (t, b, v.clone()))
    }

    fn check_same(&self, other: &Cochain) -> Result<(), Error> {
        if *self.shape != *other.shape {
            return Err(Error::Dimension(format!(
                "cannot combine {:?} with {:?}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, Error> {
        self.check_same(other)?;
        Ok(Cochain {
            shape: self.shape.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, Error> {
        self.check_same(other)?;
        Ok(Cochain {
            shape: self.shape.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Multiplies by `(-1)^k` when `k` is odd.
    pub fn signed(self, negate: bool) -> Cochain {
        if negate {
            self.neg()
        } else {
            self
        }
    }

    /// Multilinear evaluation on arbitrary (not necessarily homogeneous) arguments.
    pub fn evaluate(&self, args: &[SuperElement]) -> Result<Vec<Scalar>, Error> {
        if args.len() != self.arity() {
            return Err(Error::Dimension(format!(
                "{} arguments for a cochain of arity {}",
                args.len(),
                self.arity()
            )));
        }
        let d = self.shape.source_dim();
        if args.iter().any(|x| x.coords.len() != d) {
            return Err(Error::Dimension(
                "argument length differs from source dimension".into(),
            ));
        }
        let field = self.field();
        let mut out = vec![field.zero(); self.shape.target_dim()];
        for_each_tuple(d, self.arity(), |flat, tuple| {
            let mut w = field.one();
            for (x, &i) in args.iter().zip(tuple) {
                if x.coords[i].is_zero() {
                    return;
                }
                w = &w * &x.coords[i];
            }
            for (b, v) in self.at(flat) {
                if !v.is_zero() {
                    out[b].add_product(&w, v);
                }
            }
        });
        Ok(out)
    }

    /// Seeded random cochain with coefficients in `-3..=3`.
    pub fn random<R: Rng + ?Sized>(shape: Arc<CochainShape>, rng: &mut R) -> Cochain {
        let field = shape.field();
        let coeffs = (0..shape.len())
            .map(|_| field.from_i64(rng.random_range(-3..=3)))
            .collect();
        Cochain { shape, coeffs }
    }

    /// Basis vector number `pos` of its space.
    pub fn basis_vector(shape: Arc<CochainShape>, pos: usize) -> Cochain {
        let mut c = Cochain::zero(shape);
        c.coeffs[pos] = c.field().one();
        c
    }
}

/// A cochain that need not be homogeneous, kept as its even and odd parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCochain {
    pub even: Cochain,
    pub odd: Cochain,
}

impl MixedCochain {
    pub fn new(even: Cochain, odd: Cochain) -> Result<Self, Error> {
        if even.parity() != Parity::EVEN
            || odd.parity() != Parity::ODD
            || even.arity() != odd.arity()
            || !even.shape().same_space(odd.shape())
        {
            return Err(Error::Input(
                "mixed cochain parts must be matching even and odd".into(),
            ));
        }
        Ok(MixedCochain { even, odd })
    }

    pub fn part(&self, p: Parity) -> &Cochain {
        if p.is_odd() {
            &self.odd
        } else {
            &self.even
        }
    }

    pub fn evaluate(&self, args: &[SuperElement]) -> Result<Vec<Scalar>, Error> {
        let a = self.even.evaluate(args)?;
        let b = self.odd.evaluate(args)?;
        Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }

    pub fn delta(&self, a: &SuperAlgebra, p: &SuperBimodule) -> Result<MixedCochain, Error> {
        Ok(MixedCochain {
            even: delta(a, p, &self.even)?,
            odd: delta(a, p, &self.odd)?,
        })
    }

    /// Extends a bilinear operation on homogeneous cochains to mixed ones.
    pub fn bilinear(
        &self,
        other: &MixedCochain,
        op: impl Fn(&Cochain, &Cochain) -> Result<Cochain, Error>,
    ) -> Result<MixedCochain, Error> {
        let ee = op(&self.even, &other.even)?;
        let oo = op(&self.odd, &other.odd)?;
        let eo = op(&self.even, &other.odd)?;
        let oe = op(&self.odd, &other.even)?;
        MixedCochain::new(ee.add(&oo)?, eo.add(&oe)?)
    }
}

/// The cochain complex `C^*(A; P)`.
#[derive(Clone, Copy, Debug)]
pub struct Complex<'a> {
    pub algebra: &'a SuperAlgebra,
    pub module: &'a SuperBimodule,
}

impl<'a> Complex<'a> {
    pub fn new(algebra: &'a SuperAlgebra, module: &'a SuperBimodule) -> Result<Self, Error> {
        if module.algebra_dim() != algebra.dim() || module.field() != algebra.field() {
            return Err(Error::Dimension(
                "module is defined over a different algebra".into(),
            ));
        }
        Ok(Complex { algebra, module })
    }

    pub fn shape(&self, arity: usize, parity: Parity) -> Arc<CochainShape> {
        CochainShape::new(
            self.algebra.field(),
            self.algebra.parities(),
            self.module.parities(),
            arity,
            parity,
        )
    }

    pub fn dim(&self, arity: usize, parity: Parity) -> usize {
        self.shape(arity, parity).len()
    }

    pub fn delta(&self, f: &Cochain) -> Result<Cochain, Error> {
        delta(self.algebra, self.module, f)
    }

    pub fn delta_matrix(&self, arity: usize, parity: Parity) -> DenseMatrix {
        delta_matrix(self.algebra, self.module, arity, parity)
    }

    pub fn random<R: Rng + ?Sized>(&self, arity: usize, parity: Parity, rng: &mut R) -> Cochain {
        Cochain::random(self.shape(arity, parity), rng)
    }
}

fn check_cochain(a: &SuperAlgebra, p: &SuperBimodule, f: &Cochain) -> Result<(), Error> {
    let s = f.shape();
    if s.source() != a.parities() || s.target() != p.parities() || s.field() != a.field() {
        return Err(Error::Dimension(
            "cochain does not live in C*(A; P) for the given algebra and module".into(),
        ));
    }
    if p.algebra_dim() != a.dim() {
        return Err(Error::Dimension(
            "module is defined over a different algebra".into(),
        ));
    }
    Ok(())
}

/// Enumerates every term of the coboundary as
/// `emit(out_flat, out_index, in_position, coefficient)`, so that
/// `(delta f)[out] = sum coefficient * f.coeffs[in_position]`.
fn delta_stencil(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    input: &CochainShape,
    mut emit: impl FnMut(usize, usize, usize, Scalar),
) {
    let d = a.dim();
    let n = input.arity();
    let fp = input.parity();
    let field = a.field();
    let one = field.one();
    let mut scratch = vec![0usize; n];
    let dn = d.pow(n as u32);
    for_each_tuple(d, n + 1, |t, x| {
        // (-1)^{|x_1||f|} x_1 . f(x_2..x_{n+1})
        let rest = t % dn;
        let neg = (a.parity(x[0]) * fp).is_odd();
        let base = input.offset(rest);
        for (r, &out_in) in input.allowed_outputs(rest).iter().enumerate() {
            for (b, c) in p.left().terms(x[0], out_in) {
                emit(t, *b, base + r, c.clone().signed(neg));
            }
        }
        // sum_i (-1)^i f(.., x_i x_{i+1}, ..)
        for i in 1..=n {
            for (k, c) in a.product().terms(x[i - 1], x[i]) {
                scratch[..i - 1].copy_from_slice(&x[..i - 1]);
                scratch[i - 1] = *k;
                scratch[i..].copy_from_slice(&x[i + 1..]);
                let src = flat_index(d, &scratch);
                let base = input.offset(src);
                for (r, &out_in) in input.allowed_outputs(src).iter().enumerate() {
                    emit(t, out_in, base + r, c.clone().signed(odd(i)));
                }
            }
        }
        // (-1)^{n+1} f(x_1..x_n) . x_{n+1}
        let head = t / d;
        let base = input.offset(head);
        for (r, &out_in) in input.allowed_outputs(head).iter().enumerate() {
            for (b, c) in p.right().terms(out_in, x[n]) {
                emit(t, *b, base + r, c.clone().signed(odd(n + 1)));
            }
        }
    });
    let _ = one;
}

/// The coboundary `delta: C^n_p(A; P) -> C^{n+1}_p(A; P)`.
pub fn delta(a: &SuperAlgebra, p: &SuperBimodule, f: &Cochain) -> Result<Cochain, Error> {
    check_cochain(a, p, f)?;
    let out_shape = f.shape().sibling(f.arity() + 1, f.parity());
    let field = a.field();
    let mut values = vec![field.zero(); out_shape.num_tuples() * p.dim()];
    let m = p.dim();
    delta_stencil(a, p, f.shape(), |t, b, pos, c| {
        let v = &f.coeffs[pos];
        if !v.is_zero() {
            values[t * m + b].add_product(&c, v);
        }
    });
    Ok(Cochain::build(out_shape, |t, _, acc| {
        for (b, slot) in acc.iter_mut().enumerate() {
            std::mem::swap(slot, &mut values[t * m + b]);
        }
    }))
}

/// Matrix of `delta` on `C^n_p(A; P)` in the lexicographic cochain bases.
pub fn delta_matrix(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    arity: usize,
    parity: Parity,
) -> DenseMatrix {
    let input = CochainShape::new(a.field(), a.parities(), p.parities(), arity, parity);
    let output = input.sibling(arity + 1, parity);
    let mut m = DenseMatrix::zeros(a.field(), output.len(), input.len());
    delta_stencil(a, p, &input, |t, b, pos, c| {
        let row = output.position(t, b).expect("coboundary preserves parity");
        m.entry_mut(row, pos).add_product(&c, &a.field().one());
    });
    m
}

/// `f |-> f_{n-1}` with `f_{n-1}(a_1..a_{n-1})(a_n) = f(a_1..a_n)`, landing in
/// `C^{n-1}(A; C^1(A; P))` with the basis of [`hom_module`].
pub fn shift(a: &SuperAlgebra, p: &SuperBimodule, f: &Cochain) -> Result<Cochain, Error> {
    check_cochain(a, p, f)?;
    let n = f.arity();
    if n == 0 {
        return Err(Error::Input("cannot shift a cochain of arity 0".into()));
    }
    let hom = hom_module(a, p);
    let d = a.dim();
    let m = p.dim();
    let shape = CochainShape::new(a.field(), a.parities(), hom.parities(), n - 1, f.parity());
    Ok(Cochain::build(shape, |t, _, acc| {
        for i in 0..d {
            for (b, v) in f.at(t * d + i) {
                acc[i * m + b] = v.clone();
            }
        }
    }))
}

/// Inverse of [`shift`].
pub fn unshift(a: &SuperAlgebra, p: &SuperBimodule, g: &Cochain) -> Result<Cochain, Error> {
    let hom = hom_module(a, p);
    check_cochain(a, &hom, g)?;
    let d = a.dim();
    let m = p.dim();
    let shape = CochainShape::new(
        a.field(),
        a.parities(),
        p.parities(),
        g.arity() + 1,
        g.parity(),
    );
    Ok(Cochain::build(shape, |t, _, acc| {
        let (head, i) = (t / d, t % d);
        for (k, v) in g.at(head) {
            if k / m == i {
                acc[k % m] = v.clone();
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::make_named;
    use crate::supermodule::self_module;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    fn pi(a: &SuperAlgebra) -> Cochain {
        let shape = CochainShape::new(a.field(), a.parities(), a.parities(), 2, Parity::EVEN);
        Cochain::build(shape, |_, t, acc| {
            for (k, c) in a.product().terms(t[0], t[1]) {
                acc[*k] = c.clone();
            }
        })
    }

    #[test]
    fn delta_identity_is_product() {
        for name in ["ground", "dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, q()).unwrap();
            let p = self_module(&a);
            let did = delta(&a, &p, &Cochain::identity(&a)).unwrap();
            assert_eq!(did, pi(&a), "{name}");
            assert!(delta(&a, &p, &pi(&a)).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn delta_zero_on_ground_constant() {
        let a = make_named("ground", q()).unwrap();
        let p = self_module(&a);
        let shape = CochainShape::new(q(), a.parities(), p.parities(), 0, Parity::EVEN);
        let f = Cochain::constant(shape, &[q().one()]).unwrap();
        assert!(delta(&a, &p, &f).unwrap().is_zero());
    }

    #[test]
    fn ground_delta_one_matrix() {
        let a = make_named("ground", q()).unwrap();
        let p = self_module(&a);
        let m = delta_matrix(&a, &p, 1, Parity::EVEN);
        assert_eq!(m, DenseMatrix::from_i64(q(), &[&[1]]));
    }

    #[test]
    fn matrix_agrees_with_delta_and_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in ["dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, q()).unwrap();
            let p = self_module(&a);
            let cx = Complex::new(&a, &p).unwrap();
            for n in 0..3 {
                for par in Parity::both() {
                    let m = cx.delta_matrix(n, par);
                    let f = cx.random(n, par, &mut rng);
                    let via_matrix = m.mul_vec(f.coeffs()).unwrap();
                    assert_eq!(via_matrix, cx.delta(&f).unwrap().into_coeffs());
                    let next = cx.delta_matrix(n + 1, par);
                    assert!(next.mul(&m).unwrap().is_zero(), "{name} n={n}");
                }
            }
        }
    }

    #[test]
    fn evaluate_pi_is_multiply() {
        let a = make_named("clifford1", q()).unwrap();
        let f = pi(&a);
        let x = SuperElement {
            coords: vec![q().from_i64(2), q().from_i64(-1)],
            parity: None,
        };
        let y = SuperElement {
            coords: vec![q().parse("1/2").unwrap(), q().from_i64(3)],
            parity: None,
        };
        assert_eq!(
            f.evaluate(&[x.clone(), y.clone()]).unwrap(),
            a.multiply(&x, &y).unwrap().coords
        );
        assert!(f.evaluate(&[x]).is_err());
        let z = Cochain::zero(f.shape().clone());
        assert!(z
            .evaluate(&[y.clone(), y])
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
    }

    #[test]
    fn add_neg_is_zero_and_set_checks_homogeneity() {
        let a = make_named("dual_odd", q()).unwrap();
        let p = self_module(&a);
        let cx = Complex::new(&a, &p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = cx.random(2, Parity::ODD, &mut rng);
        assert!(f.add(&f.neg()).unwrap().is_zero());
        let mut g = Cochain::zero(cx.shape(1, Parity::ODD));
        // eps -> e is odd; e -> e is not.
        assert!(g.set(&[1], 0, q().one()).is_ok());
        assert_eq!(g.set(&[0], 0, q().one()), Err(Error::NotHomogeneous));
        assert!(g.set(&[2], 0, q().one()).is_err());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = make_named("matrix(1|1)", q()).unwrap();
        let p = self_module(&a);
        let cx = Complex::new(&a, &p).unwrap();
        let f1 = cx.random(2, Parity::ODD, &mut ChaCha8Rng::seed_from_u64(9));
        let f2 = cx.random(2, Parity::ODD, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(f1, f2);
        assert!(f1.coeffs().iter().all(|c| {
            let r = c.as_rational().unwrap();
            r.numer().magnitude() <= &3u32.into() && r.denom() == &1.into()
        }));
    }

    #[test]
    fn shift_round_trip_and_intertwines_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in ["dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, q()).unwrap();
            let p = self_module(&a);
            let hom = hom_module(&a, &p);
            for n in 1..=3 {
                for par in Parity::both() {
                    let f = Complex::new(&a, &p).unwrap().random(n, par, &mut rng);
                    let s = shift(&a, &p, &f).unwrap();
                    assert_eq!(s.shape().len(), f.shape().len());
                    assert_eq!(unshift(&a, &p, &s).unwrap(), f);
                    let lhs = delta(&a, &hom, &s).unwrap();
                    let rhs = shift(&a, &p, &delta(&a, &p, &f).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{name} n={n}");
                }
            }
        }
    }

    #[test]
    fn shift_rejects_arity_zero() {
        let a = make_named("ground", q()).unwrap();
        let p = self_module(&a);
        let f = Cochain::zero(Complex::new(&a, &p).unwrap().shape(0, Parity::EVEN));
        assert!(shift(&a, &p, &f).is_err());
    }

    #[test]
    fn mixed_cochains_act_componentwise() {
        let a = make_named("dual_odd", q()).unwrap();
        let p = self_module(&a);
        let cx = Complex::new(&a, &p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = MixedCochain::new(
            cx.random(1, Parity::EVEN, &mut rng),
            cx.random(1, Parity::ODD, &mut rng),
        )
        .unwrap();
        let dm = m.delta(&a, &p).unwrap();
        assert_eq!(dm.even, cx.delta(&m.even).unwrap());
        assert_eq!(dm.odd, cx.delta(&m.odd).unwrap());
        assert!(MixedCochain::new(m.odd.clone(), m.even.clone()).is_err());
        let x = a.basis_element(1);
        let v = m.evaluate(std::slice::from_ref(&x)).unwrap();
        let sum: Vec<_> = m
            .even
            .evaluate(std::slice::from_ref(&x))
            .unwrap()
            .iter()
            .zip(m.odd.evaluate(&[x]).unwrap())
            .map(|(a, b)| a + &b)
            .collect();
        assert_eq!(v, sum);
    }
}
