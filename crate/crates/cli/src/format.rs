//! JSON family files.
//!
//! A file carries a header (`field`, `dim`, `kind`) and a list of entries.
//! Real numbers are plain JSON numbers, complex numbers are `[re, im]` pairs.
//! Vector entries are coordinate arrays, subspace entries are lists of basis
//! vectors and fusion entries are `{"weight": w, "basis": [...]}` objects.

use num_complex::Complex64;
use rank2lift::geometry::{Subspace, Tolerance, Vector};
use rank2lift::retrieval::ProjectionFamily;
use rank2lift::Field;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    R,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Vectors,
    Subspaces,
    Fusion,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Vectors => "vectors",
            Kind::Subspaces => "subspaces",
            Kind::Fusion => "fusion",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Free-form data such as verification summaries of generated families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<Value>,
}

/// On-disk shape of a family file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub field: FieldTag,
    pub dim: usize,
    pub kind: Kind,
    pub entries: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// Scalars that can be read from and written to family files.
pub trait JsonScalar: Field<Real = f64> {
    const TAG: FieldTag;
    fn from_json(v: &Value) -> Option<Self>;
    fn to_json(&self) -> Value;
}

impl JsonScalar for f64 {
    const TAG: FieldTag = FieldTag::R;

    fn from_json(v: &Value) -> Option<Self> {
        v.as_f64()
    }

    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl JsonScalar for Complex64 {
    const TAG: FieldTag = FieldTag::C;

    fn from_json(v: &Value) -> Option<Self> {
        match v.as_array()?.as_slice() {
            [re, im] => Some(Complex64::new(re.as_f64()?, im.as_f64()?)),
            _ => None,
        }
    }

    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
}

pub fn vector_to_json<S: JsonScalar>(v: &Vector<S>) -> Value {
    Value::Array(v.coords().iter().map(JsonScalar::to_json).collect())
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Format(msg.into())
}

fn parse_vector<S: JsonScalar>(v: &Value, dim: usize, at: &str) -> Result<Vector<S>, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{at}: expected an array of coordinates")))?;
    if arr.len() != dim {
        return Err(bad(format!("{at}: expected {dim} coordinates, found {}", arr.len())));
    }
    let coords = arr
        .iter()
        .map(|c| S::from_json(c).filter(|s| s.modulus().is_finite()))
        .collect::<Option<Vec<S>>>()
        .ok_or_else(|| {
            let want = if S::TAG == FieldTag::C {
                "[re, im] pairs"
            } else {
                "numbers"
            };
            bad(format!("{at}: coordinates must be finite {want}"))
        })?;
    Ok(Vector::new(coords)?)
}

fn parse_basis<S: JsonScalar>(v: &Value, dim: usize, at: &str) -> Result<Vec<Vector<S>>, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| bad(format!("{at}: expected a list of basis vectors")))?;
    if arr.is_empty() {
        return Err(bad(format!("{at}: empty basis")));
    }
    arr.iter()
        .enumerate()
        .map(|(k, b)| parse_vector(b, dim, &format!("{at}[{k}]")))
        .collect()
}

/// One entry of a family: a vector (one-element basis), a subspace or a
/// weighted subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Member<S: Field> {
    pub weight: Option<f64>,
    pub basis: Vec<Vector<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Family<S: Field> {
    pub dim: usize,
    pub kind: Kind,
    pub members: Vec<Member<S>>,
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyFamily {
    Real(Family<f64>),
    Complex(Family<Complex64>),
}

impl AnyFamily {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: FamilyFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &FamilyFile) -> Result<Self, CliError> {
        Ok(match file.field {
            FieldTag::R => AnyFamily::Real(Family::from_file(file)?),
            FieldTag::C => AnyFamily::Complex(Family::from_file(file)?),
        })
    }

    pub fn kind(&self) -> Kind {
        match self {
            AnyFamily::Real(f) => f.kind,
            AnyFamily::Complex(f) => f.kind,
        }
    }
}

impl<S: JsonScalar> Family<S> {
    pub fn from_file(file: &FamilyFile) -> Result<Self, CliError> {
        if file.field != S::TAG {
            return Err(bad("field tag does not match the requested scalar type"));
        }
        if file.dim == 0 {
            return Err(bad("dim must be positive"));
        }
        if file.entries.is_empty() {
            return Err(bad("no entries"));
        }
        let dim = file.dim;
        let members = file
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let at = format!("entries[{i}]");
                match file.kind {
                    Kind::Vectors => Ok(Member {
                        weight: None,
                        basis: vec![parse_vector(e, dim, &at)?],
                    }),
                    Kind::Subspaces => Ok(Member {
                        weight: None,
                        basis: parse_basis(e, dim, &at)?,
                    }),
                    Kind::Fusion => {
                        let obj = e
                            .as_object()
                            .ok_or_else(|| bad(format!("{at}: expected {{weight, basis}}")))?;
                        let weight = obj
                            .get("weight")
                            .and_then(Value::as_f64)
                            .filter(|w| w.is_finite() && *w > 0.0)
                            .ok_or_else(|| bad(format!("{at}: weight must be a positive finite number")))?;
                        let basis = obj.get("basis").ok_or_else(|| bad(format!("{at}: missing basis")))?;
                        Ok(Member {
                            weight: Some(weight),
                            basis: parse_basis(basis, dim, &format!("{at}.basis"))?,
                        })
                    }
                }
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Self {
            dim,
            kind: file.kind,
            members,
            metadata: file.metadata.clone(),
        })
    }

    pub fn to_file(&self) -> FamilyFile {
        let basis_json = |b: &[Vector<S>]| Value::Array(b.iter().map(vector_to_json).collect());
        let entries = self
            .members
            .iter()
            .map(|m| match self.kind {
                Kind::Vectors => vector_to_json(&m.basis[0]),
                Kind::Subspaces => basis_json(&m.basis),
                Kind::Fusion => json!({ "weight": m.weight.unwrap_or(1.0), "basis": basis_json(&m.basis) }),
            })
            .collect();
        FamilyFile {
            field: S::TAG,
            dim: self.dim,
            kind: self.kind,
            entries,
            metadata: self.metadata.clone(),
        }
    }

    pub fn from_vectors(vectors: Vec<Vector<S>>) -> Self {
        let dim = vectors.first().map_or(0, Vector::dim);
        Self {
            dim,
            kind: Kind::Vectors,
            members: vectors
                .into_iter()
                .map(|v| Member {
                    weight: None,
                    basis: vec![v],
                })
                .collect(),
            metadata: None,
        }
    }

    pub fn from_subspaces(subspaces: &[Subspace<S>], weights: Option<&[f64]>) -> Self {
        let dim = subspaces.first().map_or(0, Subspace::ambient_dim);
        let members = subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| Member {
                weight: weights.map(|w| w[i]),
                basis: s.basis().to_vec(),
            })
            .collect();
        Self {
            dim,
            kind: if weights.is_some() {
                Kind::Fusion
            } else {
                Kind::Subspaces
            },
            members,
            metadata: None,
        }
    }

    /// The vectors of a `vectors` family.
    pub fn vectors(&self) -> Result<Vec<Vector<S>>, CliError> {
        if self.kind != Kind::Vectors {
            return Err(CliError::Usage(format!(
                "this check needs a vectors family, got {}",
                self.kind.as_str()
            )));
        }
        Ok(self.members.iter().map(|m| m.basis[0].clone()).collect())
    }

    /// Spans of the entries; vector entries become lines.
    pub fn subspaces(&self, tol: &Tolerance<f64>) -> Result<Vec<Subspace<S>>, CliError> {
        self.members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                Subspace::span(&m.basis, tol).map_err(|e| match e {
                    rank2lift::Error::EmptySpan => rank2lift::Error::ZeroSubspace(i).into(),
                    other => other.into(),
                })
            })
            .collect()
    }

    /// Weights of a fusion family, or all ones.
    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.weight.unwrap_or(1.0)).collect()
    }

    pub fn projection_family(&self, tol: &Tolerance<f64>) -> Result<ProjectionFamily<S>, CliError> {
        Ok(match self.kind {
            Kind::Vectors => ProjectionFamily::from_vectors(&self.vectors()?, tol)?,
            _ => ProjectionFamily::new(self.subspaces(tol)?)?,
        })
    }
}
