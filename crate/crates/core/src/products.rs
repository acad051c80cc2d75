//! Cup product, the `o_i` insertions, the `o` product and the bracket on
//! `C*(A; A)`, with their actions on `C*(A; P)`.
//!
//! Public arguments are arities. The Z-degree of an arity-`M` cochain is
//! `M - 1` and enters signs only mod 2.
//!
//! ```text
//! (f cup g)(a_1..a_M, b_1..b_N) = (-1)^{|g|(|a_1|+..+|a_M|)} f(a) g(b)
//! (f o_i g)(x_1..x_i, y_1..y_N, x_{i+2}..) = (-1)^{|g|(|x_1|+..+|x_i|)} f(x_1..x_i, g(y), x_{i+2}..)
//! f o g = sum_{i=0}^{M-1} (-1)^{(N-1) i} f o_i g
//! [f, g] = f o g - (-1)^{(M-1)(N-1) + |f||g|} g o f
//! ```

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bilinear::BilinearMap;
use crate::cochain::{delta, Cochain, CochainShape};
use crate::error::Error;
use crate::exactfield::{odd, Scalar};
use crate::parity::Parity;
use crate::superalgebra::SuperAlgebra;
use crate::supermodule::{self_module, SuperBimodule};

/// Where a cochain takes its values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coeff {
    Algebra,
    Module,
}

/// First position where two cochains differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub output: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at {:?} -> {}: {} != {}",
            self.tuple, self.output, self.lhs, self.rhs
        )
    }
}

/// Compares two cochains of the same space.
pub fn first_difference(lhs: &Cochain, rhs: &Cochain) -> Result<Option<Witness>, Error> {
    if **lhs.shape() != **rhs.shape() {
        return Err(Error::Dimension(format!(
            "identity compares {:?} with {:?}",
            lhs.shape(),
            rhs.shape()
        )));
    }
    Ok(lhs
        .shape()
        .basis()
        .zip(lhs.coeffs().iter().zip(rhs.coeffs()))
        .find(|(_, (a, b))| a != b)
        .map(|((tuple, output), (a, b))| Witness {
            tuple,
            output,
            lhs: a.clone(),
            rhs: b.clone(),
        }))
}

/// `(-1)^{(M-1)(N-1)}` as an oddness flag, for arities `M`, `N`.
fn degree_sign(m: usize, n: usize) -> bool {
    odd(m + 1) && odd(n + 1)
}

/// An algebra `A`, an optional bimodule `P`, and the product cochain `pi`.
#[derive(Clone, Debug)]
pub struct ProductContext {
    algebra: SuperAlgebra,
    own: SuperBimodule,
    module: Option<SuperBimodule>,
    pi: Cochain,
}

impl ProductContext {
    pub fn new(algebra: SuperAlgebra, module: Option<SuperBimodule>) -> Result<Self, Error> {
        if let Some(p) = &module {
            if p.algebra_dim() != algebra.dim() || p.field() != algebra.field() {
                return Err(Error::Dimension(
                    "module is defined over a different algebra".into(),
                ));
            }
            if let Some(v) = p.validate(&algebra).first() {
                return Err(Error::Input(format!("invalid bimodule: {v}")));
            }
        }
        let own = self_module(&algebra);
        let shape = CochainShape::new(
            algebra.field(),
            algebra.parities(),
            algebra.parities(),
            2,
            Parity::EVEN,
        );
        let pi = Cochain::build(shape, |_, t, acc| {
            for (k, c) in algebra.product().terms(t[0], t[1]) {
                acc[*k] = c.clone();
            }
        });
        Ok(ProductContext {
            algebra,
            own,
            module,
            pi,
        })
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> Option<&SuperBimodule> {
        self.module.as_ref()
    }

    /// `pi(a, b) = ab`.
    pub fn pi(&self) -> &Cochain {
        &self.pi
    }

    pub fn identity(&self) -> Cochain {
        Cochain::identity(&self.algebra)
    }

    pub fn coefficients(&self, coeff: Coeff) -> Result<&SuperBimodule, Error> {
        match coeff {
            Coeff::Algebra => Ok(&self.own),
            Coeff::Module => self
                .module
                .as_ref()
                .ok_or_else(|| Error::Input("no coefficient module was given".into())),
        }
    }

    pub fn shape(
        &self,
        arity: usize,
        parity: Parity,
        coeff: Coeff,
    ) -> Result<Arc<CochainShape>, Error> {
        Ok(CochainShape::new(
            self.algebra.field(),
            self.algebra.parities(),
            self.coefficients(coeff)?.parities(),
            arity,
            parity,
        ))
    }

    pub fn random<R: Rng + ?Sized>(
        &self,
        arity: usize,
        parity: Parity,
        coeff: Coeff,
        rng: &mut R,
    ) -> Result<Cochain, Error> {
        Ok(Cochain::random(self.shape(arity, parity, coeff)?, rng))
    }

    fn check(&self, f: &Cochain, coeff: Coeff) -> Result<(), Error> {
        let target = self.coefficients(coeff)?;
        let s = f.shape();
        if s.source() != self.algebra.parities() || s.target() != target.parities() {
            return Err(Error::Dimension(format!(
                "cochain is not {:?}-valued over this algebra",
                coeff
            )));
        }
        Ok(())
    }

    pub fn delta(&self, f: &Cochain, coeff: Coeff) -> Result<Cochain, Error> {
        self.check(f, coeff)?;
        delta(&self.algebra, self.coefficients(coeff)?, f)
    }

    /// The cup product. `A x A -> A` uses the product of `A`, `A x P` the left
    /// action and `P x A` the right action; `P x P` is undefined.
    pub fn cup(&self, f: &Cochain, fk: Coeff, g: &Cochain, gk: Coeff) -> Result<Cochain, Error> {
        self.check(f, fk)?;
        self.check(g, gk)?;
        let (pairing, out): (&BilinearMap, &SuperBimodule) = match (fk, gk) {
            (Coeff::Algebra, Coeff::Algebra) => (self.algebra.product(), &self.own),
            (Coeff::Algebra, Coeff::Module) => {
                let p = self.coefficients(Coeff::Module)?;
                (p.left(), p)
            }
            (Coeff::Module, Coeff::Algebra) => {
                let p = self.coefficients(Coeff::Module)?;
                (p.right(), p)
            }
            (Coeff::Module, Coeff::Module) => {
                return Err(Error::Unsupported(
                    "cup of two module-valued cochains".into(),
                ))
            }
        };
        let d = self.algebra.dim();
        let (m, n) = (f.arity(), g.arity());
        let dn = d.pow(n as u32);
        let shape = CochainShape::new(
            self.algebra.field(),
            self.algebra.parities(),
            out.parities(),
            m + n,
            f.parity() + g.parity(),
        );
        let gp = g.parity();
        Ok(Cochain::build(shape, |t, _, acc| {
            let (ta, tb) = (t / dn, t % dn);
            let neg = (gp * f.shape().tuple_parity(ta)).is_odd();
            for (b1, v1) in f.at(ta) {
                if v1.is_zero() {
                    continue;
                }
                for (b2, v2) in g.at(tb) {
                    if v2.is_zero() {
                        continue;
                    }
                    let w = (v1 * v2).signed(neg);
                    for (k, c) in pairing.terms(b1, b2) {
                        acc[*k].add_product(&w, c);
                    }
                }
            }
        }))
    }

    /// `f o_i g` for `0 <= i < arity(f)`; `g` must be algebra-valued.
    pub fn comp_i(&self, f: &Cochain, fk: Coeff, g: &Cochain, i: usize) -> Result<Cochain, Error> {
        self.check(f, fk)?;
        self.check(g, Coeff::Algebra)?;
        let (m, n) = (f.arity(), g.arity());
        if i >= m {
            return Err(Error::Input(format!(
                "insertion slot {i} out of range for arity {m}"
            )));
        }
        let d = self.algebra.dim();
        let shape = f.shape().sibling(m + n - 1, f.parity() + g.parity());
        let gp = g.parity();
        let parities = self.algebra.parities();
        let mut inner = vec![0usize; m];
        Ok(Cochain::build(shape, |_, t, acc| {
            let (prefix, rest) = t.split_at(i);
            let (mid, suffix) = rest.split_at(n);
            let neg = (gp * Parity::sum(prefix.iter().map(|&x| parities[x]))).is_odd();
            inner[..i].copy_from_slice(prefix);
            inner[i + 1..].copy_from_slice(suffix);
            let gflat = mid.iter().fold(0, |a, &x| a * d + x);
            for (k, c) in g.at(gflat) {
                if c.is_zero() {
                    continue;
                }
                inner[i] = k;
                let fflat = inner.iter().fold(0, |a, &x| a * d + x);
                let w = c.clone().signed(neg);
                for (b, v) in f.at(fflat) {
                    acc[b].add_product(&w, v);
                }
            }
        }))
    }

    /// `f o g`; zero when `f` has arity 0. The result must have arity >= 0.
    pub fn comp(&self, f: &Cochain, fk: Coeff, g: &Cochain) -> Result<Cochain, Error> {
        self.check(f, fk)?;
        self.check(g, Coeff::Algebra)?;
        let (m, n) = (f.arity(), g.arity());
        if m + n == 0 {
            return Err(Error::Unsupported(
                "composition of two arity-0 cochains has arity -1".into(),
            ));
        }
        let mut total = Cochain::zero(f.shape().sibling(m + n - 1, f.parity() + g.parity()));
        for i in 0..m {
            let term = self.comp_i(f, fk, g, i)?;
            total = total.add(&term.signed(odd(n + 1) && odd(i)))?;
        }
        Ok(total)
    }

    /// The bracket. With one module-valued argument `X` and an algebra-valued
    /// `g`: `[X, g] = X o g` and `[g, X] = -(-1)^{deg X deg g + |X||g|} [X, g]`.
    pub fn bracket(
        &self,
        f: &Cochain,
        fk: Coeff,
        g: &Cochain,
        gk: Coeff,
    ) -> Result<Cochain, Error> {
        let (m, n) = (f.arity(), g.arity());
        match (fk, gk) {
            (Coeff::Algebra, Coeff::Algebra) => {
                let fg = self.comp(f, fk, g)?;
                let gf = self.comp(g, gk, f)?;
                let neg = degree_sign(m, n) ^ (f.parity() * g.parity()).is_odd();
                fg.sub(&gf.signed(neg))
            }
            (Coeff::Module, Coeff::Algebra) => self.comp(f, fk, g),
            (Coeff::Algebra, Coeff::Module) => {
                let xg = self.comp(g, gk, f)?;
                let neg = degree_sign(n, m) ^ (f.parity() * g.parity()).is_odd();
                Ok(xg.signed(!neg))
            }
            (Coeff::Module, Coeff::Module) => Err(Error::Unsupported(
                "bracket of two module-valued cochains".into(),
            )),
        }
    }

    // Identity checks. Each returns the first coefficient where the two sides differ.

    /// `delta(f cup g) = delta f cup g + (-1)^M f cup delta g`.
    pub fn check_cup_derivation(
        &self,
        f: &Cochain,
        fk: Coeff,
        g: &Cochain,
        gk: Coeff,
    ) -> Result<Option<Witness>, Error> {
        let out = if fk == Coeff::Module || gk == Coeff::Module {
            Coeff::Module
        } else {
            Coeff::Algebra
        };
        let lhs = self.delta(&self.cup(f, fk, g, gk)?, out)?;
        let a = self.cup(&self.delta(f, fk)?, fk, g, gk)?;
        let b = self.cup(f, fk, &self.delta(g, gk)?, gk)?;
        first_difference(&lhs, &a.add(&b.signed(odd(f.arity())))?)
    }

    /// `(f cup g) cup h = f cup (g cup h)` on algebra-valued cochains.
    pub fn check_cup_associative(
        &self,
        f: &Cochain,
        g: &Cochain,
        h: &Cochain,
    ) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let lhs = self.cup(&self.cup(f, a, g, a)?, a, h, a)?;
        let rhs = self.cup(f, a, &self.cup(g, a, h, a)?, a)?;
        first_difference(&lhs, &rhs)
    }

    /// Both branches of the right pre-Lie supersystem law, for `(f o_i g) o_j h`.
    /// Returns `Ok(None)` also when `j` lies in the range the law does not cover.
    pub fn check_prelie(
        &self,
        f: &Cochain,
        fk: Coeff,
        g: &Cochain,
        h: &Cochain,
        i: usize,
        j: usize,
    ) -> Result<Option<Witness>, Error> {
        let n = g.arity();
        let lhs = self.comp_i(&self.comp_i(f, fk, g, i)?, fk, h, j)?;
        let rhs = if j < i {
            // (-1)^{|g||h|} (f o_j h) o_{i + P - 1} g
            let fh = self.comp_i(f, fk, h, j)?;
            let slot = i + h.arity();
            if slot == 0 {
                return Err(Error::Input("pre-Lie slot underflow".into()));
            }
            self.comp_i(&fh, fk, g, slot - 1)?
                .signed((g.parity() * h.parity()).is_odd())
        } else if j < i + n {
            self.comp_i(f, fk, &self.comp_i(g, Coeff::Algebra, h, j - i)?, i)?
        } else {
            return Ok(None);
        };
        first_difference(&lhs, &rhs)
    }

    /// `(f o g) o h - f o (g o h) = (-1)^{np + |g||h|} ((f o h) o g - f o (h o g))`
    /// with `n`, `p` the Z-degrees of `g`, `h`.
    pub fn check_associator_symmetry(
        &self,
        f: &Cochain,
        fk: Coeff,
        g: &Cochain,
        h: &Cochain,
    ) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let lhs = self.comp(&self.comp(f, fk, g)?, fk, h)?.sub(&self.comp(
            f,
            fk,
            &self.comp(g, a, h)?,
        )?)?;
        let rhs = self.comp(&self.comp(f, fk, h)?, fk, g)?.sub(&self.comp(
            f,
            fk,
            &self.comp(h, a, g)?,
        )?)?;
        let neg = degree_sign(g.arity(), h.arity()) ^ (g.parity() * h.parity()).is_odd();
        first_difference(&lhs, &rhs.signed(neg))
    }

    /// `[f, g] = -(-1)^{(M-1)(N-1) + |f||g|} [g, f]`.
    pub fn check_bracket_antisymmetry(
        &self,
        f: &Cochain,
        g: &Cochain,
    ) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let lhs = self.bracket(f, a, g, a)?;
        let rhs = self.bracket(g, a, f, a)?;
        let neg = degree_sign(f.arity(), g.arity()) ^ (f.parity() * g.parity()).is_odd();
        first_difference(&lhs, &rhs.signed(!neg))
    }

    /// Graded Jacobi with gradings `(arity - 1, parity)`:
    /// `s(f,h)[[f,g],h] + s(g,f)[[g,h],f] + s(h,g)[[h,f],g] = 0`.
    pub fn check_jacobi(
        &self,
        f: &Cochain,
        g: &Cochain,
        h: &Cochain,
    ) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let sign = |x: &Cochain, y: &Cochain| {
            degree_sign(x.arity(), y.arity()) ^ (x.parity() * y.parity()).is_odd()
        };
        let t1 = self
            .bracket(&self.bracket(f, a, g, a)?, a, h, a)?
            .signed(sign(f, h));
        let t2 = self
            .bracket(&self.bracket(g, a, h, a)?, a, f, a)?
            .signed(sign(g, f));
        let t3 = self
            .bracket(&self.bracket(h, a, f, a)?, a, g, a)?
            .signed(sign(h, g));
        let total = t1.add(&t2)?.add(&t3)?;
        first_difference(&total, &Cochain::zero(total.shape().clone()))
    }

    /// `delta f = -f o pi + (-1)^{M-1} pi o f`.
    pub fn check_delta_via_comp(&self, f: &Cochain) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let lhs = self.delta(f, a)?;
        let rhs = self
            .comp(&self.pi, a, f)?
            .signed(odd(f.arity() + 1))
            .sub(&self.comp(f, a, &self.pi)?)?;
        first_difference(&lhs, &rhs)
    }

    /// `delta f = [f, -pi] = (-1)^{M-1} [pi, f]`.
    pub fn check_delta_as_bracket(&self, f: &Cochain) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let lhs = self.delta(f, a)?;
        let first = self.bracket(f, a, &self.pi.neg(), a)?;
        if let Some(w) = first_difference(&lhs, &first)? {
            return Ok(Some(w));
        }
        let second = self.bracket(&self.pi, a, f, a)?.signed(odd(f.arity() + 1));
        first_difference(&lhs, &second)
    }

    /// `f cup g = (pi o_0 f) o_M g` for algebra-valued `f` of arity `M`.
    pub fn check_cup_via_comp(&self, f: &Cochain, g: &Cochain) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let lhs = self.cup(f, a, g, a)?;
        let rhs = self.comp_i(&self.comp_i(&self.pi, a, f, 0)?, a, g, f.arity())?;
        first_difference(&lhs, &rhs)
    }

    /// `f o delta g - delta(f o g) + (-1)^{N-1} delta f o g
    ///    = (-1)^{N-1} ((-1)^{|f||g|} g cup f - (-1)^{MN} f cup g)`.
    pub fn check_homotopy(&self, f: &Cochain, g: &Cochain) -> Result<Option<Witness>, Error> {
        let a = Coeff::Algebra;
        let (m, n) = (f.arity(), g.arity());
        let lhs = self
            .comp(f, a, &self.delta(g, a)?)?
            .sub(&self.delta(&self.comp(f, a, g)?, a)?)?
            .add(&self.comp(&self.delta(f, a)?, a, g)?.signed(odd(n + 1)))?;
        let rhs = self
            .cup(g, a, f, a)?
            .signed((f.parity() * g.parity()).is_odd())
            .sub(&self.cup(f, a, g, a)?.signed(odd(m * n)))?
            .signed(odd(n + 1));
        first_difference(&lhs, &rhs)
    }

    /// For even 2-cochains: `a o (b o b) = (a o b) o b` and
    /// `(a o b) o c - a o (b o c) = -(a o c) o b + a o (c o b)`.
    pub fn check_even_two_cochain_lemma(
        &self,
        ma: &Cochain,
        mb: &Cochain,
        mc: &Cochain,
    ) -> Result<Option<Witness>, Error> {
        for m in [ma, mb, mc] {
            if m.arity() != 2 || m.parity() != Parity::EVEN {
                return Err(Error::Input("lemma needs even 2-cochains".into()));
            }
        }
        let a = Coeff::Algebra;
        let c = |x: &Cochain, y: &Cochain| self.comp(x, a, y);
        let lhs = c(ma, &c(mb, mb)?)?;
        let rhs = c(&c(ma, mb)?, mb)?;
        if let Some(w) = first_difference(&lhs, &rhs)? {
            return Ok(Some(w));
        }
        let lhs = c(&c(ma, mb)?, mc)?.sub(&c(ma, &c(mb, mc)?)?)?;
        let rhs = c(ma, &c(mc, mb)?)?.sub(&c(&c(ma, mc)?, mb)?)?;
        first_difference(&lhs, &rhs)
    }

    /// Runs every identity on seeded random homogeneous cochains.
    pub fn audit(&self, seed: u64, trials: usize) -> Result<AuditReport, Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = AuditReport::default();
        let a = Coeff::Algebra;
        let has_module = self.module.is_some();

        let mut entry = AuditEntry::new("delta_identity_is_pi");
        entry.record(
            0,
            "",
            first_difference(&self.delta(&self.identity(), a)?, &self.pi)?,
        );
        report.entries.push(entry);
        let mut entry = AuditEntry::new("delta_pi_is_zero");
        let dpi = self.delta(&self.pi, a)?;
        entry.record(
            0,
            "",
            first_difference(&dpi, &Cochain::zero(dpi.shape().clone()))?,
        );
        report.entries.push(entry);

        let mut coeffs = vec![a];
        if has_module {
            coeffs.push(Coeff::Module);
        }
        let mut entry = AuditEntry::new("delta_squared_zero");
        for t in 0..trials {
            let k = coeffs[rng.random_range(0..coeffs.len())];
            let f = self.sample(&mut rng, 0..=3, k)?;
            let dd = self.delta(&self.delta(&f, k)?, k)?;
            let label = describe(&[(&f, k)]);
            entry.record(
                t,
                &label,
                first_difference(&dd, &Cochain::zero(dd.shape().clone()))?,
            );
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("cup_derivation");
        let pairs: Vec<(Coeff, Coeff)> = if has_module {
            vec![(a, a), (a, Coeff::Module), (Coeff::Module, a)]
        } else {
            vec![(a, a)]
        };
        for t in 0..trials {
            let (fk, gk) = pairs[t % pairs.len()];
            let f = self.sample(&mut rng, 0..=2, fk)?;
            let g = self.sample(&mut rng, 0..=2, gk)?;
            let label = describe(&[(&f, fk), (&g, gk)]);
            entry.record(t, &label, self.check_cup_derivation(&f, fk, &g, gk)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("cup_associative");
        for t in 0..trials {
            let f = self.sample(&mut rng, 0..=2, a)?;
            let g = self.sample(&mut rng, 0..=2, a)?;
            let h = self.sample(&mut rng, 0..=1, a)?;
            let label = describe(&[(&f, a), (&g, a), (&h, a)]);
            entry.record(t, &label, self.check_cup_associative(&f, &g, &h)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("prelie_supersystem");
        for t in 0..trials {
            let fk = coeffs[t % coeffs.len()];
            let f = self.sample(&mut rng, 1..=2, fk)?;
            let g = self.sample(&mut rng, 0..=2, a)?;
            let h = self.sample(&mut rng, 0..=2, a)?;
            let i = rng.random_range(0..f.arity());
            let slots = f.arity() + g.arity() - 1;
            if slots == 0 {
                entry.record(t, "", None);
                continue;
            }
            // Choose j in a covered branch: below i, or inside the inserted block.
            let covered: Vec<usize> = (0..slots).filter(|&j| j < i || j < i + g.arity()).collect();
            if covered.is_empty() {
                entry.record(t, "", None);
                continue;
            }
            let j = covered[rng.random_range(0..covered.len())];
            let label = format!("{} i={i} j={j}", describe(&[(&f, fk), (&g, a), (&h, a)]));
            entry.record(t, &label, self.check_prelie(&f, fk, &g, &h, i, j)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("associator_symmetry");
        for t in 0..trials {
            let fk = coeffs[t % coeffs.len()];
            let f = self.sample(&mut rng, 1..=2, fk)?;
            let g = self.sample(&mut rng, 1..=2, a)?;
            let h = self.sample(&mut rng, 1..=2, a)?;
            let label = describe(&[(&f, fk), (&g, a), (&h, a)]);
            entry.record(t, &label, self.check_associator_symmetry(&f, fk, &g, &h)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("bracket_antisymmetry");
        for t in 0..trials {
            let f = self.sample(&mut rng, 0..=2, a)?;
            let g = self.sample(&mut rng, 1..=2, a)?;
            let label = describe(&[(&f, a), (&g, a)]);
            entry.record(t, &label, self.check_bracket_antisymmetry(&f, &g)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("bracket_jacobi");
        for t in 0..trials {
            let f = self.sample(&mut rng, 1..=2, a)?;
            let g = self.sample(&mut rng, 1..=2, a)?;
            let h = self.sample(&mut rng, 1..=2, a)?;
            let label = describe(&[(&f, a), (&g, a), (&h, a)]);
            entry.record(t, &label, self.check_jacobi(&f, &g, &h)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("delta_via_composition");
        for t in 0..trials {
            let f = self.sample(&mut rng, 0..=3, a)?;
            entry.record(t, &describe(&[(&f, a)]), self.check_delta_via_comp(&f)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("delta_as_bracket");
        for t in 0..trials {
            let f = self.sample(&mut rng, 0..=3, a)?;
            entry.record(t, &describe(&[(&f, a)]), self.check_delta_as_bracket(&f)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("cup_via_composition");
        for t in 0..trials {
            let f = self.sample(&mut rng, 0..=2, a)?;
            let g = self.sample(&mut rng, 0..=2, a)?;
            let label = describe(&[(&f, a), (&g, a)]);
            entry.record(t, &label, self.check_cup_via_comp(&f, &g)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("composition_homotopy");
        for t in 0..trials {
            let f = self.sample(&mut rng, 1..=2, a)?;
            let g = self.sample(&mut rng, 0..=2, a)?;
            let label = describe(&[(&f, a), (&g, a)]);
            entry.record(t, &label, self.check_homotopy(&f, &g)?);
        }
        report.entries.push(entry);

        let mut entry = AuditEntry::new("even_two_cochain_lemma");
        for t in 0..trials {
            let mut pick = || self.random(2, Parity::EVEN, a, &mut rng);
            let (x, y, z) = (pick()?, pick()?, pick()?);
            entry.record(t, "", self.check_even_two_cochain_lemma(&x, &y, &z)?);
        }
        report.entries.push(entry);

        Ok(report)
    }

    fn sample(
        &self,
        rng: &mut ChaCha8Rng,
        arities: std::ops::RangeInclusive<usize>,
        coeff: Coeff,
    ) -> Result<Cochain, Error> {
        let arity = rng.random_range(arities);
        let parity = Parity::new(rng.random_range(0..2));
        self.random(arity, parity, coeff, rng)
    }
}

fn describe(items: &[(&Cochain, Coeff)]) -> String {
    items
        .iter()
        .map(|(c, k)| {
            let tag = match k {
                Coeff::Algebra => "A",
                Coeff::Module => "P",
            };
            format!("C^{}_{}({tag})", c.arity(), c.parity())
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl AuditEntry {
    fn new(name: &str) -> Self {
        AuditEntry {
            name: name.to_string(),
            trials: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, trial: usize, label: &str, outcome: Option<Witness>) {
        self.trials += 1;
        if let Some(w) = outcome {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(format!("trial {trial} [{label}] {w}"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(AuditEntry::passed)
    }

    pub fn entry(&self, name: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let status = if e.passed() { "pass" } else { "FAIL" };
            write!(f, "{status} {} ({} trials", e.name, e.trials)?;
            if e.failures > 0 {
                write!(f, ", {} failures", e.failures)?;
            }
            write!(f, ")")?;
            if let Some(c) = &e.counterexample {
                write!(f, ": {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
