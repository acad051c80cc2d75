//! The constructor zoo used by fixtures, tests and the CLI.

use std::fmt;
use std::str::FromStr;

use crate::bilinear::BilinearMap;
use crate::error::Error;
use crate::exactfield::Field;
use crate::parity::Parity;
use crate::superalgebra::SuperAlgebra;
use crate::supermodule::{self_module, square_zero_algebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedAlgebra {
    /// The ground field `K e`, `e` even.
    Ground,
    /// `K[x]/(x^2)` with `x` even.
    DualEven,
    /// `K[eps]/(eps^2)` with `eps` odd.
    DualOdd,
    /// `Cl(1)`: `g` odd, `g^2 = e`.
    Clifford1,
    /// `End(K^{p|q})` in the matrix-unit basis, row-major.
    Matrix { even: usize, odd: usize },
    /// `A (+) A` with the self-module squaring to zero.
    SquareZero(Box<NamedAlgebra>),
}

impl FromStr for NamedAlgebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        match s {
            "ground" => return Ok(NamedAlgebra::Ground),
            "dual_even" => return Ok(NamedAlgebra::DualEven),
            "dual_odd" => return Ok(NamedAlgebra::DualOdd),
            "clifford1" => return Ok(NamedAlgebra::Clifford1),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("matrix(").and_then(|r| r.strip_suffix(')')) {
            let (p, q) = inner
                .split_once('|')
                .ok_or_else(|| Error::Input(format!("expected matrix(p|q), got {s:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad block size in {s:?}")))
            };
            let (even, odd) = (parse(p)?, parse(q)?);
            if even + odd == 0 {
                return Err(Error::Input("matrix(0|0) has no basis".into()));
            }
            return Ok(NamedAlgebra::Matrix { even, odd });
        }
        if let Some(inner) = s
            .strip_prefix("square_zero(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let inner = inner.strip_suffix(",self").unwrap_or(inner);
            return Ok(NamedAlgebra::SquareZero(Box::new(inner.parse()?)));
        }
        Err(Error::Input(format!("unknown algebra name {s:?}")))
    }
}

impl fmt::Display for NamedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedAlgebra::Ground => write!(f, "ground"),
            NamedAlgebra::DualEven => write!(f, "dual_even"),
            NamedAlgebra::DualOdd => write!(f, "dual_odd"),
            NamedAlgebra::Clifford1 => write!(f, "clifford1"),
            NamedAlgebra::Matrix { even, odd } => write!(f, "matrix({even}|{odd})"),
            NamedAlgebra::SquareZero(a) => write!(f, "square_zero({a})"),
        }
    }
}

impl NamedAlgebra {
    pub fn build(&self, field: Field) -> Result<SuperAlgebra, Error> {
        let one = field.one();
        match self {
            NamedAlgebra::Ground => {
                let mut m = BilinearMap::zero(field, 1, 1, 1);
                m.set(0, 0, 0, one);
                SuperAlgebra::new(field, vec![Parity::EVEN], Some(names(&["e"])), m)
            }
            NamedAlgebra::DualEven | NamedAlgebra::DualOdd | NamedAlgebra::Clifford1 => {
                let (gen_parity, gen_name) = match self {
                    NamedAlgebra::DualEven => (Parity::EVEN, "x"),
                    NamedAlgebra::DualOdd => (Parity::ODD, "eps"),
                    _ => (Parity::ODD, "g"),
                };
                let mut m = BilinearMap::zero(field, 2, 2, 2);
                m.set(0, 0, 0, one.clone());
                m.set(0, 1, 1, one.clone());
                m.set(1, 0, 1, one.clone());
                if *self == NamedAlgebra::Clifford1 {
                    m.set(1, 1, 0, one);
                }
                SuperAlgebra::new(
                    field,
                    vec![Parity::EVEN, gen_parity],
                    Some(names(&["e", gen_name])),
                    m,
                )
            }
            NamedAlgebra::Matrix { even, odd } => matrix_algebra(field, *even, *odd),
            NamedAlgebra::SquareZero(inner) => {
                let a = inner.build(field)?;
                let p = self_module(&a);
                square_zero_algebra(&a, &p)
            }
        }
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// `E_ab E_cd = delta_bc E_ad`; `|E_ab| = |a| + |b|` with rows `0..p` even.
fn matrix_algebra(field: Field, even: usize, odd: usize) -> Result<SuperAlgebra, Error> {
    let n = even + odd;
    if n == 0 {
        return Err(Error::Input("matrix(0|0) has no basis".into()));
    }
    let block = |a: usize| Parity::new(usize::from(a >= even));
    let idx = |a: usize, b: usize| a * n + b;
    let d = n * n;
    let mut m = BilinearMap::zero(field, d, d, d);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                m.set(idx(a, b), idx(b, c), idx(a, c), field.one());
            }
        }
    }
    let parities = (0..n)
        .flat_map(|a| (0..n).map(move |b| block(a) + block(b)))
        .collect();
    let labels = (0..n)
        .flat_map(|a| (0..n).map(move |b| format!("E{a}{b}")))
        .collect();
    SuperAlgebra::new(field, parities, Some(labels), m)
}

/// Builds a named algebra, e.g. `"matrix(1|1)"` or `"square_zero(dual_odd)"`.
pub fn make_named(name: &str, field: Field) -> Result<SuperAlgebra, Error> {
    name.parse::<NamedAlgebra>()?.build(field)
}
