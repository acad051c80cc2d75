//! Finite-dimensional superalgebras given by structure constants.
//!
//! A superalgebra is a `Z/2`-graded vector space with a bilinear product
//! `e_i * e_j = sum_k c[i][j][k] e_k`. The product is respected by the grading
//! when `c[i][j][k] = 0` unless `|k| = |i| + |j|`. Nothing here is enforced at
//! construction time beyond shape: [`SuperAlgebra::validate`] reports which
//! axioms hold, so non-associative tables (brackets, broken fixtures) can be
//! represented and inspected with the same type.

mod derivation;
mod named;

pub use derivation::{
    check_left_derivation, check_right_derivation, commutator_bracket, compose_maps,
    inner_derivation, supercommutator_of_maps, DerivationSide,
};
pub use named::{make_named, NamedAlgebra};

use std::fmt;

use crate::bilinear::BilinearMap;
use crate::error::Error;
use crate::exactfield::{solve, DenseMatrix, Field, Scalar};
use crate::parity::Parity;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    field: Field,
    parities: Vec<Parity>,
    names: Vec<String>,
    product: BilinearMap,
    unit: Option<Vec<Scalar>>,
}

/// An element of a superalgebra, optionally declared homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperElement {
    pub coords: Vec<Scalar>,
    pub parity: Option<Parity>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c[i][j][k] != 0` although `|k| != |i| + |j|`.
    Grading { i: usize, j: usize, k: usize },
    /// `(e_i e_j) e_k != e_i (e_j e_k)`.
    Associativity { i: usize, j: usize, k: usize },
    /// `(e_i e_j) e_k != (e_j e_k) e_i`, only checked in literal mode.
    CyclicAssociativity { i: usize, j: usize, k: usize },
    /// `[e_i, e_j] != -(-1)^{|i||j|} [e_j, e_i]`.
    Antisymmetry { i: usize, j: usize },
    /// Super Jacobi identity fails on `(e_i, e_j, e_k)`.
    Jacobi { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading { i, j, k } => write!(
                f,
                "grading: e{i}*e{j} has a component along e{k} of the wrong parity"
            ),
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")
            }
            Violation::CyclicAssociativity { i, j, k } => {
                write!(f, "literal axiom: (e{i} e{j}) e{k} != (e{j} e{k}) e{i}")
            }
            Violation::Antisymmetry { i, j } => write!(f, "antisymmetry fails on (e{i}, e{j})"),
            Violation::Jacobi { i, j, k } => write!(f, "super Jacobi fails on (e{i}, e{j}, e{k})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Which associativity law [`SuperAlgebra::validate_with`] checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AssociativityMode {
    /// `(ab)c = a(bc)`.
    #[default]
    Standard,
    /// The cyclic form `(ab)c = (bc)a`, reported separately; it fails on most
    /// ordinary associative algebras and exists for comparison only.
    Literal,
}

impl SuperAlgebra {
    pub fn new(
        field: Field,
        parities: Vec<Parity>,
        names: Option<Vec<String>>,
        product: BilinearMap,
    ) -> Result<Self, Error> {
        let d = parities.len();
        if d == 0 {
            return Err(Error::Input(
                "an algebra needs at least one basis element".into(),
            ));
        }
        if product.left_dim() != d || product.right_dim() != d || product.out_dim() != d {
            return Err(Error::Dimension(format!(
                "product tensor is {}x{}->{} for dimension {d}",
                product.left_dim(),
                product.right_dim(),
                product.out_dim()
            )));
        }
        if product.field() != field {
            return Err(Error::Input("product tensor over a different field".into()));
        }
        let names = match names {
            Some(n) if n.len() != d => {
                return Err(Error::Dimension(format!(
                    "{} names for dimension {d}",
                    n.len()
                )))
            }
            Some(n) => n,
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        let mut alg = SuperAlgebra {
            field,
            parities,
            names,
            product,
            unit: None,
        };
        alg.unit = alg.find_unit();
        Ok(alg)
    }

    /// Builds from a dense table `table[(i * d + j) * d + k] = c_ij^k`.
    pub fn from_dense(
        field: Field,
        parities: Vec<Parity>,
        names: Option<Vec<String>>,
        table: &[Scalar],
    ) -> Result<Self, Error> {
        let d = parities.len();
        let product = BilinearMap::from_dense(field, d, d, d, table)?;
        Self::new(field, parities, names, product)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn product(&self) -> &BilinearMap {
        &self.product
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product.get(i, j, k)
    }

    /// Coordinates of the two-sided unit, if there is one.
    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    fn find_unit(&self) -> Option<Vec<Scalar>> {
        let d = self.dim();
        let f = self.field;
        let mut m = DenseMatrix::zeros(f, 2 * d * d, d);
        let mut rhs = vec![f.zero(); 2 * d * d];
        for j in 0..d {
            for k in 0..d {
                let left_row = j * d + k;
                let right_row = d * d + j * d + k;
                for i in 0..d {
                    m.set(left_row, i, self.product.get(i, j, k));
                    m.set(right_row, i, self.product.get(j, i, k));
                }
                if j == k {
                    rhs[left_row] = f.one();
                    rhs[right_row] = f.one();
                }
            }
        }
        solve(&m, &rhs).ok().flatten()
    }

    pub fn basis_element(&self, i: usize) -> SuperElement {
        let mut coords = vec![self.field.zero(); self.dim()];
        coords[i] = self.field.one();
        SuperElement {
            coords,
            parity: Some(self.parities[i]),
        }
    }

    /// Declares `coords` homogeneous of `parity`, checking the claim.
    pub fn homogeneous(&self, coords: Vec<Scalar>, parity: Parity) -> Result<SuperElement, Error> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        if coords
            .iter()
            .zip(&self.parities)
            .any(|(c, p)| !c.is_zero() && *p != parity)
        {
            return Err(Error::NotHomogeneous);
        }
        Ok(SuperElement {
            coords,
            parity: Some(parity),
        })
    }

    pub fn multiply(&self, x: &SuperElement, y: &SuperElement) -> Result<SuperElement, Error> {
        let d = self.dim();
        if x.coords.len() != d || y.coords.len() != d {
            return Err(Error::Dimension(
                "element length differs from algebra dimension".into(),
            ));
        }
        let coords = self.product.apply(&x.coords, &y.coords);
        let parity = match (x.parity, y.parity) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(SuperElement { coords, parity })
    }

    /// Checks grading and standard associativity on all basis triples.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(AssociativityMode::Standard)
    }

    pub fn validate_with(&self, mode: AssociativityMode) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.violations.extend(self.grading_violations());
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.triple_left(i, j, k);
                    let rhs = match mode {
                        AssociativityMode::Standard => self.triple_right(i, j, k),
                        AssociativityMode::Literal => self.triple_left(j, k, i),
                    };
                    if lhs != rhs {
                        report.violations.push(match mode {
                            AssociativityMode::Standard => Violation::Associativity { i, j, k },
                            AssociativityMode::Literal => {
                                Violation::CyclicAssociativity { i, j, k }
                            }
                        });
                    }
                }
            }
        }
        report
    }

    fn grading_violations(&self) -> Vec<Violation> {
        self.product
            .nonzeros()
            .filter(|&(i, j, k, _)| self.parities[k] != self.parities[i] + self.parities[j])
            .map(|(i, j, k, _)| Violation::Grading { i, j, k })
            .collect()
    }

    /// `(e_i e_j) e_k` as coordinates.
    pub fn triple_left(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (l, c) in self.product.terms(i, j) {
            self.product.accumulate(*l, k, c, &mut out);
        }
        out
    }

    /// `e_i (e_j e_k)` as coordinates.
    pub fn triple_right(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (l, c) in self.product.terms(j, k) {
            self.product.accumulate(i, *l, c, &mut out);
        }
        out
    }

    /// Checks the Lie superalgebra axioms, reading the product as a bracket.
    ///
    /// Antisymmetry: `[a,b] = -(-1)^{ab}[b,a]`. Jacobi:
    /// `(-1)^{ac}[[a,b],c] + (-1)^{ba}[[b,c],a] + (-1)^{cb}[[c,a],b] = 0`.
    pub fn check_lie_superalgebra(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.violations.extend(self.grading_violations());
        let d = self.dim();
        let p = &self.parities;
        for i in 0..d {
            for j in 0..d {
                let ab = self
                    .product
                    .apply(&self.basis_element(i).coords, &self.basis_element(j).coords);
                let ba = self
                    .product
                    .apply(&self.basis_element(j).coords, &self.basis_element(i).coords);
                let sign_odd = (p[i] * p[j]).is_odd();
                let ok = ab
                    .iter()
                    .zip(&ba)
                    .all(|(x, y)| *x == -(y.clone().signed(sign_odd)));
                if !ok {
                    report.violations.push(Violation::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut total = vec![self.field.zero(); d];
                    let terms = [
                        (self.triple_left(i, j, k), p[i] * p[k]),
                        (self.triple_left(j, k, i), p[j] * p[i]),
                        (self.triple_left(k, i, j), p[k] * p[j]),
                    ];
                    for (vec, sign) in terms {
                        for (t, v) in total.iter_mut().zip(vec) {
                            *t += &v.signed(sign.is_odd());
                        }
                    }
                    if total.iter().any(|s| !s.is_zero()) {
                        report.violations.push(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        report
    }
}

impl fmt::Display for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let even = self.parities.iter().filter(|p| !p.is_odd()).count();
        write!(
            f,
            "superalgebra over {} of dimension {}|{}",
            self.field,
            even,
            self.dim() - even
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn constructors_validate() {
        for name in [
            "ground",
            "dual_even",
            "dual_odd",
            "clifford1",
            "matrix(1|1)",
            "matrix(2|1)",
            "square_zero(dual_odd)",
        ] {
            let a = make_named(name, q()).unwrap();
            assert!(a.validate().is_valid(), "{name}: {:?}", a.validate());
        }
    }

    #[test]
    fn grading_violation_is_reported() {
        // e even unit, eps odd with eps*eps = eps.
        let mut product = make_named("dual_odd", q()).unwrap().product().clone();
        product.set(1, 1, 1, q().one());
        let a = SuperAlgebra::new(q(), vec![Parity::EVEN, Parity::ODD], None, product).unwrap();
        let report = a.validate();
        assert!(report
            .violations
            .contains(&Violation::Grading { i: 1, j: 1, k: 1 }));
    }

    #[test]
    fn multiply_examples() {
        let lam = make_named("dual_odd", q()).unwrap();
        let e = lam.basis_element(0);
        let eps = lam.basis_element(1);
        assert_eq!(lam.multiply(&e, &eps).unwrap(), eps);
        let sq = lam.multiply(&eps, &eps).unwrap();
        assert!(sq.coords.iter().all(Scalar::is_zero));
        assert_eq!(sq.parity, Some(Parity::EVEN));

        let cl = make_named("clifford1", q()).unwrap();
        let g = cl.basis_element(1);
        assert_eq!(cl.multiply(&g, &g).unwrap(), cl.basis_element(0));
    }

    #[test]
    fn multiply_rejects_wrong_length() {
        let lam = make_named("dual_odd", q()).unwrap();
        let bad = SuperElement {
            coords: vec![q().one()],
            parity: None,
        };
        assert!(lam.multiply(&bad, &lam.basis_element(0)).is_err());
    }

    #[test]
    fn homogeneous_declaration_is_checked() {
        let lam = make_named("dual_odd", q()).unwrap();
        assert!(lam
            .homogeneous(vec![q().one(), q().one()], Parity::EVEN)
            .is_err());
        assert!(lam
            .homogeneous(vec![q().zero(), q().one()], Parity::ODD)
            .is_ok());
    }

    #[test]
    fn units_are_found() {
        let m = make_named("matrix(1|1)", q()).unwrap();
        let u = m.unit().unwrap();
        // E00 + E11 in row-major matrix-unit order.
        assert_eq!(u, &[q().one(), q().zero(), q().zero(), q().one()]);
        let zero = SuperAlgebra::new(
            q(),
            vec![Parity::ODD],
            None,
            BilinearMap::zero(q(), 1, 1, 1),
        )
        .unwrap();
        assert!(zero.unit().is_none());
    }

    #[test]
    fn literal_mode_flags_noncommutative_algebras() {
        let m = make_named("matrix(1|1)", q()).unwrap();
        assert!(m.validate().is_valid());
        let lit = m.validate_with(AssociativityMode::Literal);
        assert!(lit
            .violations
            .iter()
            .any(|v| matches!(v, Violation::CyclicAssociativity { .. })));
        // Commutative even algebras satisfy both forms.
        let g = make_named("dual_even", q()).unwrap();
        assert!(g.validate_with(AssociativityMode::Literal).is_valid());
    }

    #[test]
    fn lie_checks() {
        let abelian = SuperAlgebra::new(
            q(),
            vec![Parity::EVEN, Parity::ODD],
            None,
            BilinearMap::zero(q(), 2, 2, 2),
        )
        .unwrap();
        assert!(abelian.check_lie_superalgebra().is_valid());
        for name in ["dual_odd", "clifford1", "matrix(1|1)"] {
            let a = make_named(name, q()).unwrap();
            let br = commutator_bracket(&a).unwrap();
            assert!(br.check_lie_superalgebra().is_valid(), "{name}");
        }
        // [e, g] = [g, e] = g is symmetric on an even-odd pair.
        let cl = make_named("clifford1", q()).unwrap();
        let mut bad = BilinearMap::zero(q(), 2, 2, 2);
        bad.set(0, 1, 1, q().one());
        bad.set(1, 0, 1, q().one());
        let broken = SuperAlgebra::new(q(), cl.parities().to_vec(), None, bad).unwrap();
        let report = broken.check_lie_superalgebra();
        assert!(report
            .violations
            .contains(&Violation::Antisymmetry { i: 0, j: 1 }));
    }
}
