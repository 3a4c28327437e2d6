//! JSON file formats. Complex numbers are `[re, im]` pairs and matrices are
//! row-major arrays of rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::{FiberContext, FiberedVector};
use crate::group::{GroupElement, GroupSpec, Subgroup};
use crate::linalg::CMatrix;
use crate::operators::{OperatorMatrix, RangeOperatorField};
use crate::signal::C64;
use crate::spaces::RangeFunction;

pub type JsonComplex = [f64; 2];
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

fn to_json(z: C64) -> JsonComplex {
    [z.re, z.im]
}

fn from_json(z: &JsonComplex) -> C64 {
    C64::new(z[0], z[1])
}

pub fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| to_json(m[(i, j)])).collect())
        .collect()
}

/// Parses a row-major matrix; `cols` is required when there are no rows.
pub fn matrix_from_json(rows: &JsonMatrix, cols: Option<usize>) -> Result<CMatrix> {
    let ncols = rows.first().map(|r| r.len()).or(cols).unwrap_or(0);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Input("matrix rows have unequal lengths".into()));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Input("matrix has non-finite entries".into()));
    }
    Ok(CMatrix::from_fn(rows.len(), ncols, |i, j| from_json(&rows[i][j])))
}

/// `{"orders":[8],"gamma_generators":[[2]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpecJson {
    pub orders: Vec<i64>,
    #[serde(default)]
    pub gamma_generators: Vec<Vec<i64>>,
}

impl GroupSpecJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("group spec: {e}")))
    }

    /// The group and the subgroup `Gamma` it names.
    pub fn build(&self) -> Result<(GroupSpec, Subgroup)> {
        let g = GroupSpec::from_signed(&self.orders)?;
        let gens = self
            .gamma_generators
            .iter()
            .map(|c| GroupElement::new(&g, c))
            .collect::<Result<Vec<_>>>()?;
        let gamma = Subgroup::generated(&g, &gens)?;
        Ok((g, gamma))
    }
}

/// `{"omega_reps":[...], "c_reps":[...], "fibers":[[[re,im],...],...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberedVectorJson {
    pub omega_reps: Vec<Vec<usize>>,
    pub c_reps: Vec<Vec<usize>>,
    pub fibers: Vec<Vec<JsonComplex>>,
}

impl FiberedVectorJson {
    pub fn from_fibered(ctx: &FiberContext, fv: &FiberedVector) -> Self {
        FiberedVectorJson {
            omega_reps: ctx.omega().rep_coords(),
            c_reps: ctx.c_section().rep_coords(),
            fibers: fv
                .fibers()
                .iter()
                .map(|f| f.iter().copied().map(to_json).collect())
                .collect(),
        }
    }

    pub fn to_fibered(&self, ctx: &FiberContext) -> Result<FiberedVector> {
        if self.omega_reps != ctx.omega().rep_coords() || self.c_reps != ctx.c_section().rep_coords() {
            return Err(Error::Input("section representatives do not match the context".into()));
        }
        let fibers = self
            .fibers
            .iter()
            .map(|f| nalgebra::DVector::from_iterator(f.len(), f.iter().map(from_json)))
            .collect();
        FiberedVector::new(ctx, fibers)
    }
}

/// `{"dims":[d_w...], "bases":[matrix per w]}`, each basis `|C| x d_w`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RangeFunctionJson {
    pub dims: Vec<usize>,
    pub bases: Vec<JsonMatrix>,
}

impl RangeFunctionJson {
    pub fn from_range(j: &RangeFunction) -> Self {
        RangeFunctionJson {
            dims: j.dims(),
            bases: j.bases().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn to_range(&self, ctx: &FiberContext) -> Result<RangeFunction> {
        if self.dims.len() != self.bases.len() {
            return Err(Error::Input("dims and bases differ in length".into()));
        }
        let bases = self
            .bases
            .iter()
            .zip(&self.dims)
            .map(|(b, &d)| {
                let m = matrix_from_json(b, Some(d))?;
                if m.ncols() != d {
                    return Err(Error::Input(format!("basis has {} columns, dims says {d}", m.ncols())));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        RangeFunction::new(ctx, bases)
    }
}

/// `{"matrix":[[[re,im], ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub matrix: JsonMatrix,
}

impl OperatorJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("operator: {e}")))
    }

    pub fn from_operator(u: &OperatorMatrix) -> Self {
        OperatorJson {
            matrix: matrix_to_json(u.matrix()),
        }
    }

    pub fn to_operator(&self) -> Result<OperatorMatrix> {
        OperatorMatrix::new(matrix_from_json(&self.matrix, None)?)
    }
}

/// A range function together with the per-fiber matrices `R(w)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub dims: Vec<usize>,
    pub bases: Vec<JsonMatrix>,
    pub operators: Vec<JsonMatrix>,
}

impl FieldJson {
    pub fn from_field(j: &RangeFunction, r: &RangeOperatorField) -> Self {
        let range = RangeFunctionJson::from_range(j);
        FieldJson {
            dims: range.dims,
            bases: range.bases,
            operators: r.fibers().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn to_field(&self, ctx: &FiberContext) -> Result<(RangeFunction, RangeOperatorField)> {
        let j = RangeFunctionJson {
            dims: self.dims.clone(),
            bases: self.bases.clone(),
        }
        .to_range(ctx)?;
        let mats = self
            .operators
            .iter()
            .map(|m| matrix_from_json(m, Some(ctx.fiber_len())))
            .collect::<Result<Vec<_>>>()?;
        Ok((j, RangeOperatorField::new(ctx, mats)?))
    }
}
