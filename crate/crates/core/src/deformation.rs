//! Truncated formal deformations `mu_t = mu_0 + mu_1 t + ... + mu_N t^N` of an
//! associative superalgebra, where `mu_0` is its product and every `mu_r` is
//! an even 2-cochain.
//!
//! Associativity of `mu_t` at order `r` reads
//! `sum_{i+j=r} mu_i(mu_j(a,b),c) - mu_i(a,mu_j(b,c)) = 0`, equivalently
//! `delta mu_r = Ob_r` with `Ob_r = sum_{i+j=r, i,j>0} mu_i o mu_j`.

use std::fmt;

use crate::cochain::{delta, for_each_tuple, Cochain, CochainShape};
use crate::cohomology::is_coboundary;
use crate::error::Error;
use crate::exactfield::Scalar;
use crate::parity::Parity;
use crate::products::{first_difference, Coeff, ProductContext, Witness};
use crate::superalgebra::{compose_maps, SuperAlgebra};
use crate::supermodule::{self_module, SuperBimodule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    algebra: SuperAlgebra,
    terms: Vec<Cochain>,
}

fn check_term(a: &SuperAlgebra, t: &Cochain, arity: usize, what: &str) -> Result<(), Error> {
    let s = t.shape();
    if t.arity() != arity || t.parity() != Parity::EVEN {
        return Err(Error::Deformation(format!(
            "{what} must be even of arity {arity}, got arity {} parity {}",
            t.arity(),
            t.parity()
        )));
    }
    if s.source() != a.parities() || s.target() != a.parities() || s.field() != a.field() {
        return Err(Error::Deformation(format!(
            "{what} is not a cochain on this algebra"
        )));
    }
    Ok(())
}

impl Deformation {
    /// `terms[r - 1]` is `mu_r`.
    pub fn new(algebra: SuperAlgebra, terms: Vec<Cochain>) -> Result<Self, Error> {
        for (r, t) in terms.iter().enumerate() {
            check_term(&algebra, t, 2, &format!("mu_{}", r + 1))?;
        }
        Ok(Deformation { algebra, terms })
    }

    /// All `mu_r = 0` through `order`.
    pub fn trivial(algebra: SuperAlgebra, order: usize) -> Self {
        let shape = two_cochains(&algebra);
        let terms = vec![Cochain::zero(shape); order];
        Deformation { algebra, terms }
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `mu_1 .. mu_N`.
    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// `mu_r` for `1 <= r <= N`.
    pub fn term(&self, r: usize) -> Option<&Cochain> {
        r.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn push(&mut self, term: Cochain) -> Result<(), Error> {
        check_term(&self.algebra, &term, 2, "new term")?;
        self.terms.push(term);
        Ok(())
    }

    /// `mu_r(x, y)` with `mu_0` the product.
    fn apply(&self, r: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        if r == 0 {
            return self.algebra.product().apply(x, y);
        }
        apply_bilinear(&self.terms[r - 1], x, y)
    }

    /// `sum mu_i(mu_j(a,b),c) - mu_i(a,mu_j(b,c))` over `i + j = r`, evaluated
    /// directly on basis triples; `i, j > 0` only when `inner_only`.
    pub fn associator(&self, r: usize, inner_only: bool) -> Cochain {
        let a = &self.algebra;
        let d = a.dim();
        let shape = CochainShape::new(a.field(), a.parities(), a.parities(), 3, Parity::EVEN);
        let basis: Vec<Vec<Scalar>> = (0..d).map(|i| a.basis_element(i).coords).collect();
        let range = if inner_only { 1..r } else { 0..r + 1 };
        Cochain::build(shape, |_, t, acc| {
            let (x, y, z) = (&basis[t[0]], &basis[t[1]], &basis[t[2]]);
            for i in range.clone() {
                let j = r - i;
                let left = self.apply(i, &self.apply(j, x, y), z);
                let right = self.apply(i, x, &self.apply(j, y, z));
                for ((slot, l), rr) in acc.iter_mut().zip(left).zip(right) {
                    *slot += &(l - rr);
                }
            }
        })
    }
}

fn two_cochains(a: &SuperAlgebra) -> std::sync::Arc<CochainShape> {
    CochainShape::new(a.field(), a.parities(), a.parities(), 2, Parity::EVEN)
}

fn apply_bilinear(mu: &Cochain, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let d = x.len();
    let mut out = vec![mu.field().zero(); mu.shape().target_dim()];
    for (s, xs) in x.iter().enumerate() {
        if xs.is_zero() {
            continue;
        }
        for (t, yt) in y.iter().enumerate() {
            if yt.is_zero() {
                continue;
            }
            let w = xs * yt;
            for (b, v) in mu.at(s * d + t) {
                out[b].add_product(&w, v);
            }
        }
    }
    out
}

fn apply_linear(psi: &Cochain, x: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![psi.field().zero(); psi.shape().target_dim()];
    for (s, xs) in x.iter().enumerate() {
        if xs.is_zero() {
            continue;
        }
        for (b, v) in psi.at(s) {
            out[b].add_product(xs, v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub order: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationCheck {
    pub orders: Vec<OrderCheck>,
}

impl DeformationCheck {
    /// Largest `r` such that orders `0..=r` all hold.
    pub fn valid_through(&self) -> Option<usize> {
        let bad = self.orders.iter().position(|o| o.witness.is_some());
        match bad {
            Some(0) => None,
            Some(k) => Some(k - 1),
            None => self.orders.last().map(|o| o.order),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.orders.iter().all(|o| o.witness.is_none())
    }
}

impl fmt::Display for DeformationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.orders {
            match &o.witness {
                None => writeln!(f, "order {}: ok", o.order)?,
                Some(w) => writeln!(f, "order {}: fails {w}", o.order)?,
            }
        }
        Ok(())
    }
}

/// Checks associativity of `mu_t` order by order for `r = 0..=N`.
pub fn check_deformation(d: &Deformation) -> DeformationCheck {
    let orders = (0..=d.order())
        .map(|r| {
            let assoc = d.associator(r, false);
            let witness = first_difference(&assoc, &Cochain::zero(assoc.shape().clone()))
                .expect("same space");
            OrderCheck { order: r, witness }
        })
        .collect();
    DeformationCheck { orders }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionResult {
    /// `Ob_{N+1}` from the direct double sum.
    pub obstruction: Cochain,
    /// Whether `sum mu_i o mu_j` gives the same cochain.
    pub formulas_agree: bool,
    pub delta_obstruction: Cochain,
    /// `mu_{N+1}` with `delta mu_{N+1} = Ob_{N+1}`, if one exists.
    pub solution: Option<Cochain>,
}

impl ObstructionResult {
    pub fn is_cocycle(&self) -> bool {
        self.delta_obstruction.is_zero()
    }
}

fn require_valid(d: &Deformation) -> Result<(), Error> {
    let check = check_deformation(d);
    if !check.is_valid() {
        let bad = check
            .orders
            .iter()
            .find(|o| o.witness.is_some())
            .expect("invalid");
        return Err(Error::Deformation(format!(
            "associativity fails at order {} {}",
            bad.order,
            bad.witness.as_ref().expect("witness")
        )));
    }
    Ok(())
}

/// `Ob_{N+1}`, checked against the `o`-product formula and for `delta Ob = 0`.
pub fn obstruction(d: &Deformation) -> Result<ObstructionResult, Error> {
    require_valid(d)?;
    let r = d.order() + 1;
    let direct = d.associator(r, true);
    let ctx = ProductContext::new(d.algebra.clone(), None)?;
    let mut via_comp = Cochain::zero(direct.shape().clone());
    for i in 1..r {
        let term = ctx.comp(
            d.term(i).expect("i <= N"),
            Coeff::Algebra,
            d.term(r - i).expect("j <= N"),
        )?;
        via_comp = via_comp.add(&term)?;
    }
    let own = self_module(&d.algebra);
    let delta_obstruction = delta(&d.algebra, &own, &direct)?;
    let solution = is_coboundary(&d.algebra, &own, &direct)?;
    Ok(ObstructionResult {
        formulas_agree: via_comp == direct,
        obstruction: direct,
        delta_obstruction,
        solution,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendOutcome {
    Extended(Deformation),
    /// `Ob_{N+1}` is not a coboundary, so its class in `H^3` is nonzero.
    Obstructed(Cochain),
}

/// Extends to order `N + 1` by solving `delta mu_{N+1} = Ob_{N+1}`.
pub fn extend_deformation(d: &Deformation) -> Result<ExtendOutcome, Error> {
    let ob = obstruction(d)?;
    match ob.solution {
        Some(mu) => {
            let mut next = d.clone();
            next.push(mu)?;
            Ok(ExtendOutcome::Extended(next))
        }
        None => Ok(ExtendOutcome::Obstructed(ob.obstruction)),
    }
}

/// `Psi_t = id + psi_1 t + ... + psi_M t^M` with even linear maps `psi_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIsomorphism {
    terms: Vec<Cochain>,
}

impl FormalIsomorphism {
    pub fn new(algebra: &SuperAlgebra, terms: Vec<Cochain>) -> Result<Self, Error> {
        for (i, t) in terms.iter().enumerate() {
            check_term(algebra, t, 1, &format!("psi_{}", i + 1))?;
        }
        Ok(FormalIsomorphism { terms })
    }

    pub fn identity() -> Self {
        FormalIsomorphism { terms: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// The inverse series through `order`: `phi_r = -sum_{k=1}^{r} psi_k phi_{r-k}`.
    pub fn inverse(
        &self,
        algebra: &SuperAlgebra,
        order: usize,
    ) -> Result<FormalIsomorphism, Error> {
        let full = self.expanded(algebra, order);
        let mut phi = vec![Cochain::identity(algebra)];
        for r in 1..=order {
            let mut acc = Cochain::zero(phi[0].shape().clone());
            for k in 1..=r {
                acc = acc.add(&compose_maps(algebra, &full[k], &phi[r - k])?)?;
            }
            phi.push(acc.neg());
        }
        phi.remove(0);
        Ok(FormalIsomorphism { terms: phi })
    }

    /// `[psi_0 = id, psi_1, .., psi_order]`, padding with zero maps.
    fn expanded(&self, algebra: &SuperAlgebra, order: usize) -> Vec<Cochain> {
        let id = Cochain::identity(algebra);
        let zero = Cochain::zero(id.shape().clone());
        let mut out = vec![id];
        out.extend((1..=order).map(|k| {
            self.terms
                .get(k - 1)
                .cloned()
                .unwrap_or_else(|| zero.clone())
        }));
        out
    }
}

/// The deformation `mu~_t` with `mu~_t(Psi_t a, Psi_t b) = Psi_t mu_t(a, b)`,
/// truncated at the order of `d`:
/// `mu~_r(x, y) = sum_{a+b+c+e=r} psi_a(mu_b(phi_c x, phi_e y))` with `phi = Psi^{-1}`.
pub fn apply_isomorphism(psi: &FormalIsomorphism, d: &Deformation) -> Result<Deformation, Error> {
    let n = d.order();
    if psi.order() > n {
        return Err(Error::Deformation(format!(
            "isomorphism of order {} exceeds deformation order {n}",
            psi.order()
        )));
    }
    let a = &d.algebra;
    let ps = psi.expanded(a, n);
    let mut ph = vec![Cochain::identity(a)];
    ph.extend(psi.inverse(a, n)?.terms);
    let dim = a.dim();
    let basis: Vec<Vec<Scalar>> = (0..dim).map(|i| a.basis_element(i).coords).collect();
    // images[c][x] = phi_c(e_x)
    let images: Vec<Vec<Vec<Scalar>>> = ph
        .iter()
        .map(|p| basis.iter().map(|e| apply_linear(p, e)).collect())
        .collect();
    let mut terms = Vec::with_capacity(n);
    for r in 1..=n {
        let term = Cochain::build(two_cochains(a), |_, t, acc| {
            for pa in 0..=r {
                for mb in 0..=r - pa {
                    for c in 0..=r - pa - mb {
                        let e = r - pa - mb - c;
                        let inner = d.apply(mb, &images[c][t[0]], &images[e][t[1]]);
                        for (slot, v) in acc.iter_mut().zip(apply_linear(&ps[pa], &inner)) {
                            *slot += &v;
                        }
                    }
                }
            }
        });
        terms.push(term);
    }
    Ok(Deformation {
        algebra: a.clone(),
        terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinitesimalClass {
    /// Every `mu_r` vanishes.
    Trivial,
    Nontrivial {
        /// The first `n` with `mu_n != 0`.
        index: usize,
        term: Cochain,
        is_cocycle: bool,
        /// A 1-cochain `g` with `delta g = mu_n`, when `mu_n` is a coboundary.
        coboundary_witness: Option<Cochain>,
    },
}

/// The first nonvanishing term and its cohomology class data.
pub fn infinitesimal_class(d: &Deformation) -> Result<InfinitesimalClass, Error> {
    let Some(index) = d.terms.iter().position(|t| !t.is_zero()) else {
        return Ok(InfinitesimalClass::Trivial);
    };
    let own: SuperBimodule = self_module(&d.algebra);
    let term = d.terms[index].clone();
    let is_cocycle = delta(&d.algebra, &own, &term)?.is_zero();
    let coboundary_witness = is_coboundary(&d.algebra, &own, &term)?;
    Ok(InfinitesimalClass::Nontrivial {
        index: index + 1,
        term,
        is_cocycle,
        coboundary_witness,
    })
}

/// Builds an even 2-cochain from a closure on basis pairs.
pub fn two_cochain(a: &SuperAlgebra, mut f: impl FnMut(usize, usize, &mut [Scalar])) -> Cochain {
    Cochain::build(two_cochains(a), |_, t, acc| f(t[0], t[1], acc))
}

/// Checks `mu_t(Psi a, Psi b) = Psi mu_t(a, b)` through the common order.
pub fn intertwines(
    psi: &FormalIsomorphism,
    from: &Deformation,
    to: &Deformation,
) -> Result<bool, Error> {
    let n = from.order().min(to.order());
    let a = &from.algebra;
    let ps = psi.expanded(a, n);
    let dim = a.dim();
    let basis: Vec<Vec<Scalar>> = (0..dim).map(|i| a.basis_element(i).coords).collect();
    let mut ok = true;
    for_each_tuple(dim, 2, |_, t| {
        for r in 0..=n {
            let mut lhs = vec![a.field().zero(); dim];
            let mut rhs = vec![a.field().zero(); dim];
            for i in 0..=r {
                for j in 0..=r - i {
                    let k = r - i - j;
                    let x = apply_linear(&ps[j], &basis[t[0]]);
                    let y = apply_linear(&ps[k], &basis[t[1]]);
                    for (s, v) in lhs.iter_mut().zip(to.apply(i, &x, &y)) {
                        *s += &v;
                    }
                }
                let inner = from.apply(r - i, &basis[t[0]], &basis[t[1]]);
                for (s, v) in rhs.iter_mut().zip(apply_linear(&ps[i], &inner)) {
                    *s += &v;
                }
            }
            if lhs != rhs {
                ok = false;
            }
        }
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{random_cocycle, random_non_cocycle};
    use crate::exactfield::Field;
    use crate::superalgebra::make_named;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    /// `Q[x]/(x^2)` with `mu_1(x, x) = e`, i.e. `Q[x]/(x^2 - t)`.
    fn dual_even_deformation() -> Deformation {
        let a = make_named("dual_even", Q).unwrap();
        let mu1 = two_cochain(&a, |i, j, acc| {
            if (i, j) == (1, 1) {
                acc[0] = Q.one();
            }
        });
        Deformation::new(a, vec![mu1]).unwrap()
    }

    #[test]
    fn zero_deformation_checks_like_validate() {
        let a = make_named("matrix(1|1)", Q).unwrap();
        let d = Deformation::trivial(a, 2);
        let c = check_deformation(&d);
        assert!(c.is_valid());
        assert_eq!(c.valid_through(), Some(2));
        let ob = obstruction(&d).unwrap();
        assert!(ob.obstruction.is_zero());
        assert!(ob.solution.unwrap().is_zero());
        assert_eq!(
            infinitesimal_class(&d).unwrap(),
            InfinitesimalClass::Trivial
        );
    }

    #[test]
    fn dual_even_extends_with_zero_obstructions() {
        let mut d = dual_even_deformation();
        assert!(check_deformation(&d).is_valid());
        for _ in 0..4 {
            let ob = obstruction(&d).unwrap();
            assert!(ob.obstruction.is_zero());
            assert!(ob.formulas_agree);
            d = match extend_deformation(&d).unwrap() {
                ExtendOutcome::Extended(next) => next,
                ExtendOutcome::Obstructed(_) => panic!("unexpected obstruction"),
            };
        }
        assert_eq!(d.order(), 5);
        assert!(d.terms()[1..].iter().all(Cochain::is_zero));
        assert!(check_deformation(&d).is_valid());
        match infinitesimal_class(&dual_even_deformation()).unwrap() {
            InfinitesimalClass::Nontrivial {
                index,
                is_cocycle,
                coboundary_witness,
                ..
            } => {
                assert_eq!(index, 1);
                assert!(is_cocycle);
                assert!(coboundary_witness.is_none());
            }
            InfinitesimalClass::Trivial => panic!("nontrivial expected"),
        }
    }

    #[test]
    fn non_cocycle_fails_at_first_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = make_named("dual_odd", Q).unwrap();
        let p = self_module(&a);
        let mu = random_non_cocycle(&a, &p, 2, Parity::EVEN, &mut rng)
            .unwrap()
            .unwrap();
        let d = Deformation::new(a, vec![mu]).unwrap();
        let c = check_deformation(&d);
        assert_eq!(c.valid_through(), Some(0));
        assert!(c.orders[1].witness.is_some());
        assert!(obstruction(&d).is_err());
    }

    #[test]
    fn obstruction_of_cocycle_is_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in ["dual_odd", "clifford1", "dual_even"] {
            let a = make_named(name, Q).unwrap();
            let p = self_module(&a);
            for _ in 0..5 {
                let mu = random_cocycle(&a, &p, 2, Parity::EVEN, &mut rng).unwrap();
                let d = Deformation::new(a.clone(), vec![mu]).unwrap();
                let ob = obstruction(&d).unwrap();
                assert!(ob.formulas_agree, "{name}");
                assert!(ob.is_cocycle(), "{name}");
            }
        }
    }

    fn random_psi(a: &SuperAlgebra, order: usize, rng: &mut ChaCha8Rng) -> FormalIsomorphism {
        let shape = CochainShape::new(a.field(), a.parities(), a.parities(), 1, Parity::EVEN);
        let terms = (0..order)
            .map(|_| Cochain::random(shape.clone(), rng))
            .collect();
        FormalIsomorphism::new(a, terms).unwrap()
    }

    #[test]
    fn inverse_series_composes_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = make_named("clifford1", Q).unwrap();
        let psi = random_psi(&a, 3, &mut rng);
        let phi = psi.inverse(&a, 3).unwrap();
        let back = phi.inverse(&a, 3).unwrap();
        assert_eq!(back, psi);
    }

    #[test]
    fn isomorphisms_preserve_validity_and_order_one_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for name in ["dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, Q).unwrap();
            let p = self_module(&a);
            let order = rng.random_range(1..=3);
            let psi = random_psi(&a, order, &mut rng);
            let d = Deformation::trivial(a.clone(), order);
            let e = apply_isomorphism(&psi, &d).unwrap();
            assert!(check_deformation(&e).is_valid(), "{name}");
            assert!(intertwines(&psi, &d, &e).unwrap(), "{name}");
            // mu_1 - mu~_1 = delta psi_1
            let dpsi = delta(&a, &p, &psi.terms()[0]).unwrap();
            assert_eq!(d.terms[0].sub(&e.terms[0]).unwrap(), dpsi, "{name}");
            // Pushing back along the inverse recovers the trivial deformation.
            let inv = psi.inverse(&a, order).unwrap();
            assert_eq!(apply_isomorphism(&inv, &e).unwrap(), d, "{name}");
            assert_eq!(
                apply_isomorphism(&FormalIsomorphism::identity(), &e).unwrap(),
                e
            );
        }
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = make_named("dual_odd", Q).unwrap();
        let psi = random_psi(&a, 2, &mut rng);
        assert!(apply_isomorphism(&psi, &Deformation::trivial(a, 1)).is_err());
    }

    #[test]
    fn wrong_term_shapes_are_rejected() {
        let a = make_named("dual_odd", Q).unwrap();
        let odd = Cochain::zero(CochainShape::new(
            Q,
            a.parities(),
            a.parities(),
            2,
            Parity::ODD,
        ));
        assert!(Deformation::new(a.clone(), vec![odd]).is_err());
        let arity3 = Cochain::zero(CochainShape::new(
            Q,
            a.parities(),
            a.parities(),
            3,
            Parity::EVEN,
        ));
        assert!(Deformation::new(a, vec![arity3]).is_err());
    }
}
