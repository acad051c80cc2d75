//! Cocycles, coboundaries and cohomology `H^n_i(A; P)`, with the direct
//! descriptions in low degree and the extension classification in degree 2.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::bilinear::BilinearMap;
use crate::cochain::{delta, delta_matrix, for_each_tuple, Cochain, CochainShape, Complex};
use crate::error::Error;
use crate::exactfield::{greedy_independent, rank_and_kernel, solve, DenseMatrix, Scalar};
use crate::parity::Parity;
use crate::superalgebra::SuperAlgebra;
use crate::supermodule::{hom_module, SuperBimodule};

/// Largest degree computed unless a caller asks for more.
pub const DEFAULT_MAX_ARITY: usize = 4;

/// Dimensions of `C`, `Z`, `B`, `H` in one degree and parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub n: usize,
    pub parity: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub dims: CohomologyDims,
    /// Cocycles whose classes form a basis of `H`.
    pub representatives: Vec<Cochain>,
}

fn check_cap(n: usize, cap: usize) -> Result<(), Error> {
    if n > cap {
        return Err(Error::ArityCap { arity: n, cap });
    }
    Ok(())
}

/// `H^n_i(A; P)` with the default degree cap.
pub fn cohomology(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    n: usize,
    parity: Parity,
) -> Result<CohomologyGroup, Error> {
    cohomology_capped(a, p, n, parity, DEFAULT_MAX_ARITY)
}

/// `H^n_i(A; P)`. Representatives are kernel vectors of `delta^n`, taken in
/// order, that are independent of the coboundaries and of earlier choices.
pub fn cohomology_capped(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    n: usize,
    parity: Parity,
    cap: usize,
) -> Result<CohomologyGroup, Error> {
    check_cap(n, cap)?;
    let cx = Complex::new(a, p)?;
    let shape = cx.shape(n, parity);
    let (_, kernel) = rank_and_kernel(&cx.delta_matrix(n, parity));
    let boundaries: Vec<Vec<Scalar>> = if n == 0 {
        Vec::new()
    } else {
        let prev = cx.delta_matrix(n - 1, parity);
        (0..prev.cols()).map(|c| prev.column(c)).collect()
    };
    let mut pool = boundaries.clone();
    pool.extend(kernel.iter().cloned());
    let chosen = greedy_independent(&pool);
    let dim_b = chosen.iter().filter(|&&i| i < boundaries.len()).count();
    let representatives = chosen
        .into_iter()
        .filter(|&i| i >= boundaries.len())
        .map(|i| Cochain::from_coeffs(shape.clone(), pool[i].clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let dims = CohomologyDims {
        n,
        parity: parity.value(),
        dim_c: shape.len(),
        dim_z: kernel.len(),
        dim_b,
        dim_h: kernel.len() - dim_b,
    };
    debug_assert_eq!(dims.dim_h, representatives.len());
    Ok(CohomologyGroup {
        dims,
        representatives,
    })
}

/// Cohomology dimensions for `n = 0..=max_n` and the requested parities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub field: String,
    pub rows: Vec<CohomologyDims>,
}

impl CohomologyReport {
    pub fn compute(
        a: &SuperAlgebra,
        p: &SuperBimodule,
        max_n: usize,
        parities: &[Parity],
        cap: usize,
    ) -> Result<Self, Error> {
        check_cap(max_n, cap)?;
        let mut rows = Vec::new();
        for n in 0..=max_n {
            for &par in parities {
                rows.push(cohomology_capped(a, p, n, par, cap)?.dims);
            }
        }
        Ok(CohomologyReport {
            field: a.field().to_string(),
            rows,
        })
    }

    pub fn get(&self, n: usize, parity: Parity) -> Option<&CohomologyDims> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.parity == parity.value())
    }
}

impl fmt::Display for CohomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(
            f,
            "{:>3} {:>6} {:>7} {:>7} {:>7} {:>7}",
            "n", "parity", "dim C", "dim Z", "dim B", "dim H"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>3} {:>6} {:>7} {:>7} {:>7} {:>7}",
                r.n, r.parity, r.dim_c, r.dim_z, r.dim_b, r.dim_h
            )?;
        }
        Ok(())
    }
}

/// Basis of `{m in P_i : (-1)^{|m||x|} x.m - m.x = 0 for all x}`, as coordinate vectors in `P`.
pub fn supercommutant(a: &SuperAlgebra, p: &SuperBimodule, parity: Parity) -> Vec<Vec<Scalar>> {
    let field = a.field();
    let (d, m) = (a.dim(), p.dim());
    let cols: Vec<usize> = (0..m).filter(|&b| p.parities()[b] == parity).collect();
    let mut mat = DenseMatrix::zeros(field, d * m, cols.len());
    for x in 0..d {
        let neg = (parity * a.parity(x)).is_odd();
        for (j, &b) in cols.iter().enumerate() {
            for (c, v) in p.left().terms(x, b) {
                *mat.entry_mut(x * m + c, j) += &v.clone().signed(neg);
            }
            for (c, v) in p.right().terms(b, x) {
                *mat.entry_mut(x * m + c, j) -= v;
            }
        }
    }
    let (_, kernel) = rank_and_kernel(&mat);
    kernel
        .into_iter()
        .map(|k| {
            let mut v = vec![field.zero(); m];
            for (j, &b) in cols.iter().enumerate() {
                v[b] = k[j].clone();
            }
            v
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationDims {
    pub derivations: usize,
    pub inner: usize,
    pub quotient: usize,
}

/// `Der_i(A; P)` and its inner part, computed from the derivation law
/// `D(xy) = D(x) y + (-1)^{i|x|} x D(y)` and the maps `x |-> (-1)^{i|x|} x.m - m.x`.
pub fn derivation_quotient(a: &SuperAlgebra, p: &SuperBimodule, parity: Parity) -> DerivationDims {
    let field = a.field();
    let (d, m) = (a.dim(), p.dim());
    let shape = CochainShape::new(field, a.parities(), p.parities(), 1, parity);
    let unknowns = shape.len();
    // Row (x, y, c): coefficient of p_c in D(xy) - D(x)y - (-1)^{i|x|} x D(y).
    let mut mat = DenseMatrix::zeros(field, d * d * m, unknowns);
    for (col, (tuple, b)) in shape.basis().enumerate() {
        let s = tuple[0];
        for x in 0..d {
            for y in 0..d {
                let row = (x * d + y) * m;
                let c_xy = a.structure_constant(x, y, s);
                if !c_xy.is_zero() {
                    *mat.entry_mut(row + b, col) += &c_xy;
                }
                if x == s {
                    for (c, v) in p.right().terms(b, y) {
                        *mat.entry_mut(row + c, col) -= v;
                    }
                }
                if y == s {
                    let neg = (parity * a.parity(x)).is_odd();
                    for (c, v) in p.left().terms(x, b) {
                        *mat.entry_mut(row + c, col) -= &v.clone().signed(neg);
                    }
                }
            }
        }
    }
    let (_, der) = rank_and_kernel(&mat);
    let inner: Vec<Vec<Scalar>> = (0..m)
        .filter(|&b| p.parities()[b] == parity)
        .map(|b| {
            let mut v = vec![field.zero(); unknowns];
            for x in 0..d {
                let neg = (parity * a.parity(x)).is_odd();
                for (c, w) in p.left().terms(x, b) {
                    let pos = shape.position(x, *c).expect("inner maps are homogeneous");
                    v[pos] += &w.clone().signed(neg);
                }
                for (c, w) in p.right().terms(b, x) {
                    let pos = shape.position(x, *c).expect("inner maps are homogeneous");
                    v[pos] -= w;
                }
            }
            v
        })
        .collect();
    let inner_dim = greedy_independent(&inner).len();
    DerivationDims {
        derivations: der.len(),
        inner: inner_dim,
        quotient: der.len() - inner_dim,
    }
}

/// Some `g` with `delta g = f`, or `None` when `f` is not a coboundary.
/// Free coordinates of the solution are zero.
pub fn is_coboundary(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    f: &Cochain,
) -> Result<Option<Cochain>, Error> {
    if f.arity() == 0 {
        return Err(Error::Input("a 0-cochain is never a coboundary".into()));
    }
    let s = f.shape();
    if s.source() != a.parities() || s.target() != p.parities() {
        return Err(Error::Dimension("cochain does not live in C*(A; P)".into()));
    }
    let m = delta_matrix(a, p, f.arity() - 1, f.parity());
    let shape = s.sibling(f.arity() - 1, f.parity());
    match solve(&m, f.coeffs())? {
        Some(x) => Ok(Some(Cochain::from_coeffs(shape, x)?)),
        None => Ok(None),
    }
}

/// Random linear combination (coefficients in `-3..=3`) of a basis of `Z^n_i`.
pub fn random_cocycle<R: Rng + ?Sized>(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    n: usize,
    parity: Parity,
    rng: &mut R,
) -> Result<Cochain, Error> {
    let cx = Complex::new(a, p)?;
    let shape = cx.shape(n, parity);
    let (_, kernel) = rank_and_kernel(&cx.delta_matrix(n, parity));
    let field = a.field();
    let mut coeffs = vec![field.zero(); shape.len()];
    for k in &kernel {
        let c = field.from_i64(rng.random_range(-3..=3));
        for (slot, v) in coeffs.iter_mut().zip(k) {
            slot.add_product(&c, v);
        }
    }
    Cochain::from_coeffs(shape, coeffs)
}

/// A random cochain that is not a cocycle, or `None` if every cochain is one.
pub fn random_non_cocycle<R: Rng + ?Sized>(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    n: usize,
    parity: Parity,
    rng: &mut R,
) -> Result<Option<Cochain>, Error> {
    let cx = Complex::new(a, p)?;
    let m = cx.delta_matrix(n, parity);
    if m.is_zero() {
        return Ok(None);
    }
    loop {
        let f = cx.random(n, parity, rng);
        if !m.mul_vec(f.coeffs())?.iter().all(Scalar::is_zero) {
            return Ok(Some(f));
        }
    }
}

fn check_extension_cochain(a: &SuperAlgebra, p: &SuperBimodule, h: &Cochain) -> Result<(), Error> {
    if h.arity() != 2 || h.parity() != Parity::EVEN {
        return Err(Error::Input(format!(
            "extension cochain must be even of arity 2, got arity {} parity {}",
            h.arity(),
            h.parity()
        )));
    }
    if h.shape().source() != a.parities() || h.shape().target() != p.parities() {
        return Err(Error::Dimension(
            "cochain does not live in C^2(A; P)".into(),
        ));
    }
    Ok(())
}

/// `E_h` on `A (+) P` with `(x, m)(y, n) = (xy, x.n + m.y + h(x, y))`.
/// It is associative exactly when `delta h = 0`.
pub fn extension_algebra(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    h: &Cochain,
) -> Result<SuperAlgebra, Error> {
    check_extension_cochain(a, p, h)?;
    let d = a.dim();
    let n = d + p.dim();
    let mut prod = BilinearMap::zero(a.field(), n, n, n);
    for (i, j, k, c) in a.product().nonzeros() {
        prod.set(i, j, k, c.clone());
    }
    for_each_tuple(d, 2, |flat, t| {
        for (b, v) in h.at(flat) {
            if !v.is_zero() {
                prod.set(t[0], t[1], d + b, v.clone());
            }
        }
    });
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

/// A 1-cochain `f` with `delta f = h - h'`, witnessing `E_h ~ E_h'` through
/// `(x, m) |-> (x, m + f(x))`.
pub fn extensions_equivalent(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    h: &Cochain,
    h2: &Cochain,
) -> Result<Option<Cochain>, Error> {
    check_extension_cochain(a, p, h)?;
    check_extension_cochain(a, p, h2)?;
    is_coboundary(a, p, &h.sub(h2)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftRow {
    pub parity: usize,
    pub direct: usize,
    pub shifted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftCheck {
    pub n: usize,
    pub rows: Vec<ShiftRow>,
}

impl ShiftCheck {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.direct == r.shifted)
    }
}

/// Compares `dim H^n_i(A; P)` with `dim H^{n-1}_i(A; C^1(A; P))`.
pub fn shift_isomorphism_check(
    a: &SuperAlgebra,
    p: &SuperBimodule,
    n: usize,
    cap: usize,
) -> Result<ShiftCheck, Error> {
    if n < 2 {
        return Err(Error::Input("the shift comparison needs n >= 2".into()));
    }
    check_cap(n, cap)?;
    let hom = hom_module(a, p);
    let rows = Parity::both()
        .into_iter()
        .map(|par| {
            Ok(ShiftRow {
                parity: par.value(),
                direct: cohomology_capped(a, p, n, par, cap)?.dims.dim_h,
                shifted: cohomology_capped(a, &hom, n - 1, par, cap)?.dims.dim_h,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(ShiftCheck { n, rows })
}

/// True when `delta f = 0`.
pub fn is_cocycle(a: &SuperAlgebra, p: &SuperBimodule, f: &Cochain) -> Result<bool, Error> {
    Ok(delta(a, p, f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Field;
    use crate::superalgebra::make_named;
    use crate::supermodule::self_module;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn dims(name: &str, n: usize, par: Parity) -> CohomologyDims {
        let a = make_named(name, Q).unwrap();
        cohomology(&a, &self_module(&a), n, par).unwrap().dims
    }

    #[test]
    fn ground_field() {
        assert_eq!(dims("ground", 0, Parity::EVEN).dim_h, 1);
        for n in 1..=2 {
            for par in Parity::both() {
                assert_eq!(dims("ground", n, par).dim_h, 0);
            }
        }
    }

    #[test]
    fn odd_dual_numbers_low_degrees() {
        for n in 0..=1 {
            for par in Parity::both() {
                assert_eq!(dims("dual_odd", n, par).dim_h, 1, "n={n} {par}");
            }
        }
    }

    #[test]
    fn matrix_superalgebra_is_rigid() {
        assert_eq!(dims("matrix(1|1)", 0, Parity::EVEN).dim_h, 1);
        assert_eq!(dims("matrix(1|1)", 0, Parity::ODD).dim_h, 0);
        for n in 1..=2 {
            for par in Parity::both() {
                assert_eq!(dims("matrix(1|1)", n, par).dim_h, 0);
            }
        }
    }

    #[test]
    fn commutants() {
        let a = make_named("clifford1", Q).unwrap();
        let p = self_module(&a);
        assert_eq!(
            supercommutant(&a, &p, Parity::EVEN),
            vec![vec![Q.one(), Q.zero()]]
        );
        assert!(supercommutant(&a, &p, Parity::ODD).is_empty());
        let l = make_named("dual_odd", Q).unwrap();
        let pl = self_module(&l);
        assert_eq!(
            supercommutant(&l, &pl, Parity::ODD),
            vec![vec![Q.zero(), Q.one()]]
        );
    }

    #[test]
    fn derivations_match_first_cohomology() {
        for name in [
            "ground",
            "dual_odd",
            "dual_even",
            "clifford1",
            "matrix(1|1)",
        ] {
            let a = make_named(name, Q).unwrap();
            let p = self_module(&a);
            for par in Parity::both() {
                let d = derivation_quotient(&a, &p, par);
                assert_eq!(d.quotient, dims(name, 1, par).dim_h, "{name} {par}");
                assert_eq!(
                    supercommutant(&a, &p, par).len(),
                    dims(name, 0, par).dim_h,
                    "{name} {par}"
                );
            }
        }
        let lam = make_named("dual_odd", Q).unwrap();
        let d = derivation_quotient(&lam, &self_module(&lam), Parity::EVEN);
        assert_eq!(
            d,
            DerivationDims {
                derivations: 1,
                inner: 0,
                quotient: 1
            }
        );
    }

    #[test]
    fn pi_is_the_coboundary_of_identity() {
        let a = make_named("clifford1", Q).unwrap();
        let p = self_module(&a);
        let pi = crate::products::ProductContext::new(a.clone(), None)
            .unwrap()
            .pi()
            .clone();
        let g = is_coboundary(&a, &p, &pi).unwrap().unwrap();
        assert_eq!(delta(&a, &p, &g).unwrap(), pi);
        let zero = Cochain::zero(pi.shape().clone());
        assert!(is_coboundary(&a, &p, &zero).unwrap().unwrap().is_zero());
        let c0 = Cochain::zero(pi.shape().sibling(0, Parity::EVEN));
        assert!(is_coboundary(&a, &p, &c0).is_err());
    }

    #[test]
    fn representatives_are_not_coboundaries() {
        let a = make_named("dual_odd", Q).unwrap();
        let p = self_module(&a);
        for par in Parity::both() {
            for rep in cohomology(&a, &p, 1, par).unwrap().representatives {
                assert!(is_cocycle(&a, &p, &rep).unwrap());
                assert!(is_coboundary(&a, &p, &rep).unwrap().is_none());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = make_named("ground", Q).unwrap();
        let p = self_module(&a);
        assert_eq!(
            cohomology_capped(&a, &p, 3, Parity::EVEN, 2),
            Err(Error::ArityCap { arity: 3, cap: 2 })
        );
    }

    #[test]
    fn extensions_follow_cocycle_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = make_named("dual_odd", Q).unwrap();
        let p = self_module(&a);
        let z = random_cocycle(&a, &p, 2, Parity::EVEN, &mut rng).unwrap();
        assert!(extension_algebra(&a, &p, &z).unwrap().validate().is_valid());
        let bad = random_non_cocycle(&a, &p, 2, Parity::EVEN, &mut rng)
            .unwrap()
            .unwrap();
        assert!(!extension_algebra(&a, &p, &bad)
            .unwrap()
            .validate()
            .is_valid());
        let zero = Cochain::zero(z.shape().clone());
        let e0 = extension_algebra(&a, &p, &zero).unwrap();
        assert_eq!(e0, crate::supermodule::square_zero_algebra(&a, &p).unwrap());
        let f = Complex::new(&a, &p)
            .unwrap()
            .random(1, Parity::EVEN, &mut rng);
        let h2 = z.add(&delta(&a, &p, &f).unwrap()).unwrap();
        let w = extensions_equivalent(&a, &p, &h2, &z).unwrap().unwrap();
        assert_eq!(delta(&a, &p, &w).unwrap(), h2.sub(&z).unwrap());
        let odd = Cochain::zero(z.shape().sibling(2, Parity::ODD));
        assert!(extension_algebra(&a, &p, &odd).is_err());
    }

    #[test]
    fn shift_dims_agree() {
        for name in ["ground", "dual_odd", "clifford1"] {
            let a = make_named(name, Q).unwrap();
            let p = self_module(&a);
            assert!(
                shift_isomorphism_check(&a, &p, 2, 4).unwrap().holds(),
                "{name}"
            );
        }
    }
}
