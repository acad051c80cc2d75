//! Left and right derivations of a superalgebra into itself.
//!
//! A homogeneous map `D` of parity `d` is a left derivation when
//! `D(ab) = (Da)b + (-1)^{d|a|} a(Db)` and a right derivation when
//! `D(ab) = (-1)^{d|b|} (Da)b + a(Db)`.

use crate::bilinear::BilinearMap;
use crate::cochain::{Cochain, CochainShape};
use crate::error::Error;
use crate::exactfield::Scalar;
use crate::parity::Parity;

use super::{SuperAlgebra, SuperElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationSide {
    Left,
    Right,
}

fn endo_shape(a: &SuperAlgebra, parity: Parity) -> std::sync::Arc<CochainShape> {
    CochainShape::new(a.field(), a.parities(), a.parities(), 1, parity)
}

fn check_endo(a: &SuperAlgebra, d: &Cochain) -> Result<(), Error> {
    let s = d.shape();
    if d.arity() != 1 || s.source() != a.parities() || s.target() != a.parities() {
        return Err(Error::Dimension("expected a linear map A -> A".into()));
    }
    Ok(())
}

/// The inner derivation induced by a homogeneous `x`:
/// left `b |-> xb - (-1)^{|x||b|} bx`, right `b |-> bx - (-1)^{|x||b|} xb`.
pub fn inner_derivation(
    a: &SuperAlgebra,
    x: &SuperElement,
    side: DerivationSide,
) -> Result<Cochain, Error> {
    let parity = x.parity.ok_or(Error::NotHomogeneous)?;
    let x = a.homogeneous(x.coords.clone(), parity)?;
    Ok(Cochain::build(endo_shape(a, parity), |_, t, acc| {
        let b = a.basis_element(t[0]);
        let xb = a.product().apply(&x.coords, &b.coords);
        let bx = a.product().apply(&b.coords, &x.coords);
        let neg = (parity * a.parity(t[0])).is_odd();
        let (first, second) = match side {
            DerivationSide::Left => (xb, bx),
            DerivationSide::Right => (bx, xb),
        };
        for ((slot, u), v) in acc.iter_mut().zip(first).zip(second) {
            *slot = u - v.signed(neg);
        }
    }))
}

fn apply_map(d: &Cochain, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![d.field().zero(); d.shape().target_dim()];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (b, w) in d.at(i) {
            out[b].add_product(c, w);
        }
    }
    out
}

fn check_derivation(
    a: &SuperAlgebra,
    d: &Cochain,
    side: DerivationSide,
) -> Result<Option<(usize, usize)>, Error> {
    check_endo(a, d)?;
    let dp = d.parity();
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis_element(i), a.basis_element(j));
            let lhs = apply_map(d, &a.product().apply(&ei.coords, &ej.coords));
            let left = a.product().apply(&apply_map(d, &ei.coords), &ej.coords);
            let right = a.product().apply(&ei.coords, &apply_map(d, &ej.coords));
            let (neg_left, neg_right) = match side {
                DerivationSide::Left => (false, (dp * a.parity(i)).is_odd()),
                DerivationSide::Right => ((dp * a.parity(j)).is_odd(), false),
            };
            let ok = lhs
                .iter()
                .zip(left)
                .zip(right)
                .all(|((l, u), v)| *l == u.signed(neg_left) + v.signed(neg_right));
            if !ok {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// First basis pair on which the left derivation law fails, if any.
pub fn check_left_derivation(
    a: &SuperAlgebra,
    d: &Cochain,
) -> Result<Option<(usize, usize)>, Error> {
    check_derivation(a, d, DerivationSide::Left)
}

/// First basis pair on which the right derivation law fails, if any.
pub fn check_right_derivation(
    a: &SuperAlgebra,
    d: &Cochain,
) -> Result<Option<(usize, usize)>, Error> {
    check_derivation(a, d, DerivationSide::Right)
}

/// `D_1 D_2`, of parity `|D_1| + |D_2|`.
pub fn compose_maps(a: &SuperAlgebra, d1: &Cochain, d2: &Cochain) -> Result<Cochain, Error> {
    check_endo(a, d1)?;
    check_endo(a, d2)?;
    Ok(Cochain::build(
        endo_shape(a, d1.parity() + d2.parity()),
        |_, t, acc| {
            let inner = d2.value(t);
            for (slot, v) in acc.iter_mut().zip(apply_map(d1, &inner)) {
                *slot = v;
            }
        },
    ))
}

/// `[D_1, D_2] = D_1 D_2 - (-1)^{|D_1||D_2|} D_2 D_1`.
pub fn supercommutator_of_maps(
    a: &SuperAlgebra,
    d1: &Cochain,
    d2: &Cochain,
) -> Result<Cochain, Error> {
    let forward = compose_maps(a, d1, d2)?;
    let backward = compose_maps(a, d2, d1)?;
    forward.sub(&backward.signed((d1.parity() * d2.parity()).is_odd()))
}

/// The super-commutator table `[x, y] = xy - (-1)^{|x||y|} yx`, as a bracket algebra.
pub fn commutator_bracket(a: &SuperAlgebra) -> Result<SuperAlgebra, Error> {
    let n = a.dim();
    let mut m = BilinearMap::zero(a.field(), n, n, n);
    for i in 0..n {
        for j in 0..n {
            let neg = (a.parity(i) * a.parity(j)).is_odd();
            for k in 0..n {
                let v = a.structure_constant(i, j, k) - a.structure_constant(j, i, k).signed(neg);
                m.set(i, j, k, v);
            }
        }
    }
    SuperAlgebra::new(
        a.field(),
        a.parities().to_vec(),
        Some(a.names().to_vec()),
        m,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Field;
    use crate::superalgebra::make_named;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    #[test]
    fn unit_induces_zero() {
        for name in ["ground", "dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, Q).unwrap();
            let e = SuperElement {
                coords: a.unit().unwrap().to_vec(),
                parity: Some(Parity::EVEN),
            };
            for side in [DerivationSide::Left, DerivationSide::Right] {
                assert!(inner_derivation(&a, &e, side).unwrap().is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn hand_examples() {
        let lam = make_named("dual_odd", Q).unwrap();
        let d = inner_derivation(&lam, &lam.basis_element(1), DerivationSide::Left).unwrap();
        assert!(d.is_zero());
        let cl = make_named("clifford1", Q).unwrap();
        let d = inner_derivation(&cl, &cl.basis_element(1), DerivationSide::Left).unwrap();
        assert_eq!(d.parity(), Parity::ODD);
        assert!(d.value(&[0]).iter().all(Scalar::is_zero));
        assert_eq!(d.value(&[1]), vec![Q.from_i64(2), Q.zero()]);
    }

    #[test]
    fn rejects_non_homogeneous() {
        let cl = make_named("clifford1", Q).unwrap();
        let x = SuperElement {
            coords: vec![Q.one(), Q.one()],
            parity: None,
        };
        assert_eq!(
            inner_derivation(&cl, &x, DerivationSide::Left),
            Err(Error::NotHomogeneous)
        );
        let lying = SuperElement {
            coords: vec![Q.one(), Q.one()],
            parity: Some(Parity::EVEN),
        };
        assert!(inner_derivation(&cl, &lying, DerivationSide::Right).is_err());
    }

    fn random_homogeneous(a: &SuperAlgebra, rng: &mut ChaCha8Rng) -> SuperElement {
        let p = Parity::new(rng.random_range(0..2));
        let coords = (0..a.dim())
            .map(|i| {
                if a.parity(i) == p {
                    Q.from_i64(rng.random_range(-3..=3))
                } else {
                    Q.zero()
                }
            })
            .collect();
        SuperElement {
            coords,
            parity: Some(p),
        }
    }

    #[test]
    fn inner_derivations_obey_their_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in [
            "dual_odd",
            "clifford1",
            "matrix(1|1)",
            "square_zero(dual_odd)",
        ] {
            let a = make_named(name, Q).unwrap();
            for _ in 0..10 {
                let x = random_homogeneous(&a, &mut rng);
                let l = inner_derivation(&a, &x, DerivationSide::Left).unwrap();
                let r = inner_derivation(&a, &x, DerivationSide::Right).unwrap();
                assert_eq!(check_left_derivation(&a, &l).unwrap(), None, "{name}");
                assert_eq!(check_right_derivation(&a, &r).unwrap(), None, "{name}");
            }
        }
    }

    #[test]
    fn bracket_of_right_derivations_is_right_derivation() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for name in ["dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, Q).unwrap();
            for _ in 0..10 {
                let d1 =
                    inner_derivation(&a, &random_homogeneous(&a, &mut rng), DerivationSide::Right)
                        .unwrap();
                let d2 =
                    inner_derivation(&a, &random_homogeneous(&a, &mut rng), DerivationSide::Right)
                        .unwrap();
                let br = supercommutator_of_maps(&a, &d1, &d2).unwrap();
                assert_eq!(check_right_derivation(&a, &br).unwrap(), None, "{name}");
            }
        }
    }

    #[test]
    fn non_derivation_is_caught() {
        let a = make_named("dual_odd", Q).unwrap();
        // The identity is not a derivation: Id(e e) = e but e + e = 2e.
        let id = Cochain::identity(&a);
        assert_eq!(check_left_derivation(&a, &id).unwrap(), Some((0, 0)));
    }

    #[test]
    fn commutator_brackets_are_lie() {
        for name in [
            "ground",
            "dual_odd",
            "clifford1",
            "matrix(1|1)",
            "matrix(2|1)",
        ] {
            let a = make_named(name, Q).unwrap();
            let b = commutator_bracket(&a).unwrap();
            assert!(b.check_lie_superalgebra().is_valid(), "{name}");
        }
        let zero = SuperAlgebra::new(
            Q,
            vec![Parity::EVEN, Parity::ODD],
            None,
            BilinearMap::zero(Q, 2, 2, 2),
        )
        .unwrap();
        assert!(zero.check_lie_superalgebra().is_valid());
    }
}
