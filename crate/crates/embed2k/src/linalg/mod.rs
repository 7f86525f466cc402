//! Exact matrix algebra over GF(2), Z and Q: ranks, types, Gramians and the
//! decomposition lemmas behind the embeddability deciders.

pub mod dense;
pub mod gf2;

pub use dense::{decompose_skew_z, symplectic_int, LatticeSolver, LinearSolution, Matrix};
pub use gf2::{decompose_gf2, gf2_rank, gramian2, hyperbolic_gf2, BitMatrix, BitRow, FormType, SpanSolver, SymMatrix2};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Intersection-form data of the target manifold.
///
/// Over GF(2) a form is determined up to isomorphism by its rank and type;
/// over Z we accept the standard symplectic and odd diagonal models or an
/// explicit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    Z2 { rank: usize, form_type: FormType },
    Symplectic { g: usize },
    Diagonal { r_plus: usize, r_minus: usize },
    ZMatrix(Matrix<BigInt>),
}

impl FormSpec {
    pub fn is_z2(&self) -> bool {
        matches!(self, FormSpec::Z2 { .. })
    }

    /// Parse the JSON wire format, e.g. `{"ring":"Z2","rank":2,"type":"even"}`
    /// or `{"ring":"Z","standard":"symplectic","g":1}`.
    pub fn from_json(v: &serde_json::Value) -> Result<FormSpec> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidForm("expected a JSON object".into()))?;
        let ring = obj
            .get("ring")
            .and_then(|r| r.as_str())
            .ok_or_else(|| Error::InvalidForm("missing \"ring\"".into()))?;
        match ring {
            "Z2" | "z2" => {
                let rank = obj
                    .get("rank")
                    .and_then(|r| r.as_u64())
                    .ok_or_else(|| Error::InvalidForm("Z2 form needs \"rank\"".into()))?;
                let ty = obj
                    .get("type")
                    .and_then(|t| t.as_str())
                    .ok_or_else(|| Error::InvalidForm("Z2 form needs \"type\"".into()))?;
                let form_type = match ty {
                    "even" => FormType::Even,
                    "odd" => FormType::Odd,
                    other => {
                        return Err(Error::InvalidForm(format!("unknown type {other:?}")));
                    }
                };
                Ok(FormSpec::Z2 { rank: rank as usize, form_type })
            }
            "Z" | "z" => {
                if let Some(std_name) = obj.get("standard").and_then(|s| s.as_str()) {
                    match std_name {
                        "symplectic" => {
                            let g = obj
                                .get("g")
                                .and_then(|g| g.as_u64())
                                .ok_or_else(|| Error::InvalidForm("symplectic needs \"g\"".into()))?;
                            Ok(FormSpec::Symplectic { g: g as usize })
                        }
                        "diagonal" => {
                            let rp = obj.get("r_plus").and_then(|x| x.as_u64()).ok_or_else(|| {
                                Error::InvalidForm("diagonal needs \"r_plus\"".into())
                            })?;
                            let rm = obj.get("r_minus").and_then(|x| x.as_u64()).ok_or_else(|| {
                                Error::InvalidForm("diagonal needs \"r_minus\"".into())
                            })?;
                            Ok(FormSpec::Diagonal { r_plus: rp as usize, r_minus: rm as usize })
                        }
                        other => Err(Error::InvalidForm(format!("unknown standard form {other:?}"))),
                    }
                } else if let Some(mat) = obj.get("matrix") {
                    let rows = mat
                        .as_array()
                        .ok_or_else(|| Error::InvalidForm("\"matrix\" must be an array".into()))?;
                    let mut data: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
                    for row in rows {
                        let row = row
                            .as_array()
                            .ok_or_else(|| Error::InvalidForm("matrix rows must be arrays".into()))?;
                        data.push(
                            row.iter()
                                .map(|e| {
                                    e.as_i64().map(BigInt::from).ok_or_else(|| {
                                        Error::InvalidForm("matrix entries must be integers".into())
                                    })
                                })
                                .collect::<Result<Vec<_>>>()?,
                        );
                    }
                    let m = Matrix::from_rows(data);
                    if m.nrows() != m.ncols() {
                        return Err(Error::InvalidForm("explicit form matrix must be square".into()));
                    }
                    Ok(FormSpec::ZMatrix(m))
                } else {
                    Err(Error::InvalidForm(
                        "Z form needs \"standard\" or \"matrix\"".into(),
                    ))
                }
            }
            other => Err(Error::InvalidForm(format!("unknown ring {other:?}"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            FormSpec::Z2 { rank, form_type } => json!({
                "ring": "Z2",
                "rank": rank,
                "type": match form_type { FormType::Even => "even", FormType::Odd => "odd" },
            }),
            FormSpec::Symplectic { g } => json!({"ring": "Z", "standard": "symplectic", "g": g}),
            FormSpec::Diagonal { r_plus, r_minus } => {
                json!({"ring": "Z", "standard": "diagonal", "r_plus": r_plus, "r_minus": r_minus})
            }
            FormSpec::ZMatrix(m) => {
                let rows: Vec<Vec<String>> = (0..m.nrows())
                    .map(|i| (0..m.ncols()).map(|j| m.at(i, j).to_string()).collect())
                    .collect();
                json!({"ring": "Z", "matrix": rows})
            }
        }
    }
}

/// Standard GF(2) form matrix of the given rank and type: hyperbolic blocks
/// for even forms, the identity for odd forms.
pub fn form_matrix_2(rank: usize, form_type: FormType) -> Result<BitMatrix> {
    match form_type {
        FormType::Even => {
            if rank % 2 != 0 {
                return Err(Error::InvalidForm(format!(
                    "an even form over GF(2) has even rank, got {rank}"
                )));
            }
            Ok(hyperbolic_gf2(rank / 2))
        }
        FormType::Odd => {
            if rank == 0 {
                return Err(Error::InvalidForm("an odd form has rank at least 1".into()));
            }
            Ok(BitMatrix::identity(rank))
        }
    }
}

/// Standard integer form matrix described by the spec.
pub fn form_matrix_z(spec: &FormSpec) -> Result<Matrix<BigInt>> {
    match spec {
        FormSpec::Symplectic { g } => Ok(symplectic_int(*g)),
        FormSpec::Diagonal { r_plus, r_minus } => {
            let n = r_plus + r_minus;
            let mut m = Matrix::<BigInt>::zeros(n, n);
            for i in 0..*r_plus {
                m.set(i, i, BigInt::from(1));
            }
            for i in *r_plus..n {
                m.set(i, i, BigInt::from(-1));
            }
            Ok(m)
        }
        FormSpec::ZMatrix(m) => Ok(m.clone()),
        FormSpec::Z2 { .. } => Err(Error::InvalidForm("expected a Z form, got a Z2 form".into())),
    }
}

pub fn int_rank_over_q(m: &Matrix<BigInt>) -> usize {
    m.rank_over_q()
}

/// Gramian A = Y^T I Y over Z.
pub fn gramian_z(i: &Matrix<BigInt>, y: &Matrix<BigInt>) -> Matrix<BigInt> {
    y.transpose().mul(&i.mul(y))
}

/// Factor a symmetric rank-1 integer matrix with perfect-square diagonal as
/// `A = b^T b`.
pub fn rank1_factor(a: &Matrix<BigInt>) -> Result<Vec<BigInt>> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let r = a.rank_over_q();
    if r != 1 {
        return Err(Error::RankNotOne(r));
    }
    let n = a.nrows();
    for i in 0..n {
        let d = a.at(i, i);
        if d.is_negative() {
            return Err(Error::NonSquareDiagonal(d.to_string()));
        }
        let s = d.sqrt();
        if &(s.clone() * s) != d {
            return Err(Error::NonSquareDiagonal(d.to_string()));
        }
    }
    // Some diagonal entry is nonzero: a rank-1 symmetric matrix with zero
    // diagonal is zero (2x2 minors force A_ij^2 = A_ii A_jj).
    let i0 = (0..n)
        .find(|&i| !a.at(i, i).is_zero())
        .ok_or(Error::RankNotOne(0))?;
    let s = a.at(i0, i0).sqrt();
    let b: Vec<BigInt> = (0..n)
        .map(|j| {
            let (q, rem) = a.at(i0, j).div_rem(&s);
            debug_assert!(rem.is_zero());
            q
        })
        .collect();
    // Exact validation.
    for i in 0..n {
        for j in 0..n {
            if &(b[i].clone() * b[j].clone()) != a.at(i, j) {
                return Err(Error::Internal("rank-1 factor failed validation".into()));
            }
        }
    }
    Ok(b)
}
