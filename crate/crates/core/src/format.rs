//! JSON file formats for algebras, bimodules, cochains and deformations.
//!
//! Key order is fixed by the struct field order and every array is written in
//! index order, so serializing a parsed file reproduces it byte for byte.
//! Scalars are strings: `"p/q"` (denominator omitted when 1) over `Q`,
//! decimal residues over a prime field.
//!
//! ```json
//! {"field": "Q", "dim": 2, "parity": [0, 1], "names": ["e", "eps"],
//!  "table": [[[[0, "1"]], [[1, "1"]]], [[[1, "1"]], []]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::bilinear::BilinearMap;
use crate::cochain::{Cochain, CochainShape};
use crate::deformation::Deformation;
use crate::error::Error;
use crate::exactfield::{Field, Scalar};
use crate::parity::Parity;
use crate::superalgebra::SuperAlgebra;
use crate::supermodule::SuperBimodule;

/// `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldTag {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldTag {
    pub fn from_field(field: Field) -> Self {
        match field {
            Field::Rational => FieldTag::Named("Q".into()),
            Field::Prime(p) => FieldTag::Prime { fp: p },
        }
    }

    pub fn to_field(&self) -> Result<Field, Error> {
        match self {
            FieldTag::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldTag::Named(s) => Err(Error::Input(format!("unknown field tag {s:?}"))),
            FieldTag::Prime { fp } => Field::prime(*fp),
        }
    }
}

/// `table[i][j]` lists the nonzero `[k, scalar]` pairs of `e_i e_j`.
pub type SparseTable = Vec<Vec<Vec<(usize, String)>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldTag,
    pub dim: usize,
    pub parity: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub table: SparseTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub field: FieldTag,
    pub dim: usize,
    pub parity: Vec<u8>,
    /// `left[i][a]`: `e_i . p_a`.
    pub left: SparseTable,
    /// `right[a][i]`: `p_a . e_i`.
    pub right: SparseTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub idx: Vec<usize>,
    pub out: usize,
    pub val: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub arity: usize,
    pub parity: u8,
    pub entries: Vec<CochainEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub order: usize,
    pub terms: Vec<CochainFile>,
}

fn parities(raw: &[u8]) -> Result<Vec<Parity>, Error> {
    raw.iter()
        .map(|&p| match p {
            0 | 1 => Ok(Parity::new(p as usize)),
            _ => Err(Error::Input(format!("parity {p} is not 0 or 1"))),
        })
        .collect()
}

fn raw_parities(p: &[Parity]) -> Vec<u8> {
    p.iter().map(|x| x.value() as u8).collect()
}

fn table_from_map(map: &BilinearMap) -> SparseTable {
    (0..map.left_dim())
        .map(|l| {
            (0..map.right_dim())
                .map(|r| {
                    map.terms(l, r)
                        .iter()
                        .map(|(k, v)| (*k, v.to_string()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn map_from_table(
    field: Field,
    table: &SparseTable,
    left: usize,
    right: usize,
    out: usize,
    what: &str,
) -> Result<BilinearMap, Error> {
    if table.len() != left || table.iter().any(|row| row.len() != right) {
        return Err(Error::Dimension(format!(
            "{what} must be a {left} x {right} array"
        )));
    }
    let mut map = BilinearMap::zero(field, left, right, out);
    for (l, row) in table.iter().enumerate() {
        for (r, cell) in row.iter().enumerate() {
            for (k, s) in cell {
                if *k >= out {
                    return Err(Error::Dimension(format!(
                        "{what}[{l}][{r}] refers to index {k} >= {out}"
                    )));
                }
                let v = field.parse(s)?;
                let acc = map.get(l, r, *k) + v;
                map.set(l, r, *k, acc);
            }
        }
    }
    Ok(map)
}

impl AlgebraFile {
    pub fn from_algebra(a: &SuperAlgebra) -> Self {
        AlgebraFile {
            field: FieldTag::from_field(a.field()),
            dim: a.dim(),
            parity: raw_parities(a.parities()),
            names: Some(a.names().to_vec()),
            table: table_from_map(a.product()),
        }
    }

    /// Builds the algebra, reading scalars in `field` when given instead of the file's tag.
    pub fn to_algebra(&self, field: Option<Field>) -> Result<SuperAlgebra, Error> {
        let field = match field {
            Some(f) => f,
            None => self.field.to_field()?,
        };
        if self.parity.len() != self.dim {
            return Err(Error::Dimension(format!(
                "{} parities for dimension {}",
                self.parity.len(),
                self.dim
            )));
        }
        let d = self.dim;
        let product = map_from_table(field, &self.table, d, d, d, "table")?;
        SuperAlgebra::new(field, parities(&self.parity)?, self.names.clone(), product)
    }
}

impl ModuleFile {
    pub fn from_module(p: &SuperBimodule) -> Self {
        ModuleFile {
            field: FieldTag::from_field(p.field()),
            dim: p.dim(),
            parity: raw_parities(p.parities()),
            left: table_from_map(p.left()),
            right: table_from_map(p.right()),
        }
    }

    pub fn to_module(&self, a: &SuperAlgebra) -> Result<SuperBimodule, Error> {
        let field = a.field();
        if self.parity.len() != self.dim {
            return Err(Error::Dimension(
                "module parity list has the wrong length".into(),
            ));
        }
        let (d, m) = (a.dim(), self.dim);
        let left = map_from_table(field, &self.left, d, m, m, "left")?;
        let right = map_from_table(field, &self.right, m, d, m, "right")?;
        SuperBimodule::new(field, parities(&self.parity)?, left, right)
    }
}

impl CochainFile {
    pub fn from_cochain(f: &Cochain) -> Self {
        let entries = f
            .shape()
            .basis()
            .zip(f.coeffs())
            .filter(|(_, v)| !v.is_zero())
            .map(|((idx, out), v)| CochainEntry {
                idx,
                out,
                val: v.to_string(),
            })
            .collect();
        CochainFile {
            arity: f.arity(),
            parity: f.parity().value() as u8,
            entries,
        }
    }

    /// Reads the entries into the space `C^{arity}_{parity}(source; target)`.
    /// Repeated entries add up.
    pub fn to_cochain(
        &self,
        field: Field,
        source: &[Parity],
        target: &[Parity],
    ) -> Result<Cochain, Error> {
        if self.parity > 1 {
            return Err(Error::Input(format!(
                "parity {} is not 0 or 1",
                self.parity
            )));
        }
        let shape = CochainShape::new(
            field,
            source,
            target,
            self.arity,
            Parity::new(self.parity as usize),
        );
        let mut f = Cochain::zero(shape);
        for e in &self.entries {
            if e.idx.len() != self.arity {
                return Err(Error::Dimension(format!(
                    "entry {:?} has {} indices for arity {}",
                    e.idx,
                    e.idx.len(),
                    self.arity
                )));
            }
            if e.idx.iter().any(|&i| i >= source.len()) || e.out >= target.len() {
                return Err(Error::Dimension(format!(
                    "entry {:?} -> {} out of range",
                    e.idx, e.out
                )));
            }
            let v: Scalar = field.parse(&e.val)?;
            let acc = f.get(&e.idx, e.out) + v;
            f.set(&e.idx, e.out, acc).map_err(|_| {
                Error::Input(format!(
                    "entry {:?} -> {} violates homogeneity for parity {}",
                    e.idx, e.out, self.parity
                ))
            })?;
        }
        Ok(f)
    }
}

impl DeformationFile {
    pub fn from_deformation(d: &Deformation) -> Self {
        DeformationFile {
            order: d.order(),
            terms: d.terms().iter().map(CochainFile::from_cochain).collect(),
        }
    }

    pub fn to_deformation(&self, a: &SuperAlgebra) -> Result<Deformation, Error> {
        if self.terms.len() != self.order {
            return Err(Error::Input(format!(
                "order {} but {} terms",
                self.order,
                self.terms.len()
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| t.to_cochain(a.field(), a.parities(), a.parities()))
            .collect::<Result<Vec<_>, _>>()?;
        Deformation::new(a.clone(), terms)
    }
}

/// JSON with one top-level key per line and, for arrays of arrays or objects,
/// one element per line. Ends with a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("file types always serialize");
    let compact = |v: &serde_json::Value| serde_json::to_string(v).expect("values serialize");
    let serde_json::Value::Object(map) = v else {
        return compact(&v) + "\n";
    };
    let fields: Vec<String> = map
        .iter()
        .map(|(k, v)| {
            let key = compact(&serde_json::Value::String(k.clone()));
            match v {
                serde_json::Value::Array(items)
                    if !items.is_empty() && items.iter().all(|x| x.is_array() || x.is_object()) =>
                {
                    let rows: Vec<String> = items
                        .iter()
                        .map(|x| format!("    {}", compact(x)))
                        .collect();
                    format!("  {key}: [\n{}\n  ]", rows.join(",\n"))
                }
                _ => format!("  {key}: {}", compact(v)),
            }
        })
        .collect();
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}
