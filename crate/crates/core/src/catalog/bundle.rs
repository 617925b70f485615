use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::CatalogError;
use crate::cyclotomic::{CycMatrix, Cyclotomic, Term};
use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};

/// A matrix error group as shipped on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupBundle {
    pub name: String,
    #[serde(default)]
    pub metadata: Map<String, Value>,
    pub cyclotomic_order: u32,
    pub degree: usize,
    pub generators: Vec<Vec<Vec<Vec<Term>>>>,
}

impl GroupBundle {
    /// Builds a bundle over Q(ζ_m) from matrices whose orders divide `m`.
    pub fn from_matrices(
        name: impl Into<String>,
        metadata: Map<String, Value>,
        cyclotomic_order: u32,
        generators: &[CycMatrix],
    ) -> Result<Self, CatalogError> {
        let first = generators.first().ok_or(CatalogError::NoGenerators)?;
        let degree = first.rows();
        let mut out = Vec::with_capacity(generators.len());
        for (k, g) in generators.iter().enumerate() {
            let field = |message: String| CatalogError::Field {
                path: format!("generators[{k}]"),
                message,
            };
            if g.rows() != degree || g.cols() != degree {
                return Err(field(format!(
                    "expected {degree}x{degree}, found {}x{}",
                    g.rows(),
                    g.cols()
                )));
            }
            let g = g.embed(cyclotomic_order).map_err(|e| field(e.to_string()))?;
            out.push(serialize_matrix(&g));
        }
        Ok(GroupBundle {
            name: name.into(),
            metadata,
            cyclotomic_order,
            degree,
            generators: out,
        })
    }

    /// Parses and checks the generator matrices: shape, order and unitarity.
    pub fn matrices(&self) -> Result<Vec<CycMatrix>, CatalogError> {
        if self.generators.is_empty() {
            return Err(CatalogError::NoGenerators);
        }
        if self.cyclotomic_order == 0 {
            return Err(CatalogError::Field {
                path: "cyclotomic_order".into(),
                message: "must be positive".into(),
            });
        }
        if self.degree == 0 {
            return Err(CatalogError::Field {
                path: "degree".into(),
                message: "must be positive".into(),
            });
        }
        let (m, d) = (self.cyclotomic_order, self.degree);
        let mut out = Vec::with_capacity(self.generators.len());
        for (k, rows) in self.generators.iter().enumerate() {
            if rows.len() != d {
                return Err(CatalogError::Field {
                    path: format!("generators[{k}]"),
                    message: format!("{} rows, expected {d}", rows.len()),
                });
            }
            let mut entries = Vec::with_capacity(d * d);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != d {
                    return Err(CatalogError::Field {
                        path: format!("generators[{k}][{i}]"),
                        message: format!("{} entries, expected {d}", row.len()),
                    });
                }
                for (j, terms) in row.iter().enumerate() {
                    let x = Cyclotomic::try_from_terms(m, terms).map_err(|e| CatalogError::Field {
                        path: format!("generators[{k}][{i}][{j}]"),
                        message: e.to_string(),
                    })?;
                    entries.push(x);
                }
            }
            let mat = CycMatrix::new(d, d, entries).expect("shape checked");
            if !mat.is_unitary() {
                return Err(CatalogError::NotUnitary(k));
            }
            out.push(mat);
        }
        Ok(out)
    }

    /// Closes the generators into a finite group.
    pub fn group(&self, max_order: usize) -> Result<FiniteGroup, CatalogError> {
        Ok(FiniteGroup::close_generators(&self.matrices()?, max_order)?)
    }

    pub fn default_group(&self) -> Result<FiniteGroup, CatalogError> {
        self.group(DEFAULT_MAX_ORDER)
    }

    /// The same bundle with every entry re-serialized in canonical form.
    pub fn canonical(&self) -> Result<Self, CatalogError> {
        let generators = self.matrices()?.iter().map(serialize_matrix).collect();
        Ok(GroupBundle {
            generators,
            ..self.clone()
        })
    }

    /// Pretty JSON with one matrix row per line.
    pub fn to_json(&self) -> String {
        let compact = |v: &dyn erased::Json| v.compact();
        let metadata = serde_json::to_string_pretty(&self.metadata)
            .expect("metadata serializes")
            .replace('\n', "\n  ");
        let mut out = format!(
            "{{\n  \"name\": {},\n  \"metadata\": {},\n  \"cyclotomic_order\": {},\n  \"degree\": {},\n  \"generators\": [",
            compact(&self.name),
            metadata,
            self.cyclotomic_order,
            self.degree
        );
        for (k, g) in self.generators.iter().enumerate() {
            out.push_str(if k == 0 { "\n    [" } else { ",\n    [" });
            for (i, row) in g.iter().enumerate() {
                out.push_str(if i == 0 { "\n      " } else { ",\n      " });
                out.push_str(&compact(row));
            }
            out.push_str("\n    ]");
        }
        out.push_str("\n  ]\n}\n");
        out
    }
}

pub fn load_bundle(path: &Path) -> Result<GroupBundle, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let bundle: GroupBundle = serde_json::from_str(&text).map_err(|e| CatalogError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    bundle.matrices()?;
    Ok(bundle)
}

pub fn save_bundle(bundle: &GroupBundle, path: &Path) -> Result<(), CatalogError> {
    let canonical = bundle.canonical()?;
    std::fs::write(path, canonical.to_json()).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn serialize_matrix(g: &CycMatrix) -> Vec<Vec<Vec<Term>>> {
    (0..g.rows())
        .map(|i| g.row(i).iter().map(Cyclotomic::to_terms).collect())
        .collect()
}

mod erased {
    pub trait Json {
        fn compact(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn compact(&self) -> String {
            serde_json::to_string(self).expect("value serializes")
        }
    }
}
