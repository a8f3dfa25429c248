//! JSON formats for polynomials, matrices, tensors, maps, and
//! decompositions.
//!
//! Coefficients travel as strings ("3", "-7/2") so they stay exact over any
//! field; exponent vectors are written in term order (graded lexicographic,
//! ascending), tensor indices and block labels are 1-based on the wire, and
//! duplicate terms merge on parse.  Serialization is deterministic: equal
//! values produce byte-identical JSON.

use serde::{Deserialize, Serialize};

use crate::decomp::{
    Decomposition, HomDecomposition, HomTerm, JetPair, SMDecomposition, SmTerm,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flatten::{Family, LinearMap, Tensor};
use crate::matrix::{PolyMatrix, ScalarMat};
use crate::poly::{Basis, PolyVector, Polynomial};

fn bad_json(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed JSON: {e}"))
}

/// `{"exp": [1, 2], "coef": "-3/2"}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDto {
    pub exp: Vec<u16>,
    pub coef: String,
}

/// `{"vars": 2, "basis": "standard", "terms": [...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyDto {
    pub vars: usize,
    pub basis: Basis,
    pub terms: Vec<TermDto>,
}

pub fn poly_to_dto<K: Field>(p: &Polynomial<K>) -> PolyDto {
    let field = p.field();
    PolyDto {
        vars: p.num_vars(),
        basis: p.basis(),
        terms: p
            .iter_terms()
            .map(|(m, c)| TermDto { exp: m.0.clone(), coef: field.format(c) })
            .collect(),
    }
}

pub fn poly_from_dto<K: Field>(field: &K, dto: &PolyDto) -> Result<Polynomial<K>> {
    let mut p = Polynomial::zero(field.clone(), dto.vars, dto.basis);
    for t in &dto.terms {
        if t.exp.len() != dto.vars {
            return Err(Error::InvalidInput(format!(
                "exponent vector {:?} has length {}, expected {}",
                t.exp,
                t.exp.len(),
                dto.vars
            )));
        }
        p.add_term(crate::monomial::Monomial(t.exp.clone()), field.parse(&t.coef)?);
    }
    Ok(p)
}

pub fn poly_to_json<K: Field>(p: &Polynomial<K>) -> String {
    serde_json::to_string_pretty(&poly_to_dto(p)).expect("serialization cannot fail")
}

pub fn poly_from_json<K: Field>(field: &K, s: &str) -> Result<Polynomial<K>> {
    poly_from_dto(field, &serde_json::from_str(s).map_err(bad_json)?)
}

/// `{"rows": 2, "cols": 2, "entries": [[Poly, Poly], [Poly, Poly]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<PolyDto>>,
}

pub fn matrix_to_dto<K: Field>(m: &PolyMatrix<K>) -> MatrixDto {
    MatrixDto {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| poly_to_dto(m.entry(i, j))).collect())
            .collect(),
    }
}

pub fn matrix_from_dto<K: Field>(field: &K, dto: &MatrixDto) -> Result<PolyMatrix<K>> {
    if dto.rows < 1 || dto.cols < 1 {
        return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
    }
    if dto.entries.len() != dto.rows || dto.entries.iter().any(|r| r.len() != dto.cols) {
        return Err(Error::InvalidInput(format!(
            "ragged or mis-sized entries for a {}×{} matrix",
            dto.rows, dto.cols
        )));
    }
    let first = &dto.entries[0][0];
    let (vars, basis) = (first.vars, first.basis);
    let mut rows = Vec::with_capacity(dto.rows);
    for row in &dto.entries {
        let mut out = Vec::with_capacity(dto.cols);
        for pd in row {
            if pd.vars != vars || pd.basis != basis {
                return Err(Error::InvalidInput(
                    "matrix entries disagree on variable count or basis".into(),
                ));
            }
            out.push(poly_from_dto(field, pd)?);
        }
        rows.push(out);
    }
    Ok(PolyMatrix::from_rows(rows))
}

pub fn matrix_to_json<K: Field>(m: &PolyMatrix<K>) -> String {
    serde_json::to_string_pretty(&matrix_to_dto(m)).expect("serialization cannot fail")
}

pub fn matrix_from_json<K: Field>(field: &K, s: &str) -> Result<PolyMatrix<K>> {
    matrix_from_dto(field, &serde_json::from_str(s).map_err(bad_json)?)
}

/// `{"idx": [1, 2, 1], "coef": "4"}` — indices 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorEntryDto {
    pub idx: Vec<u32>,
    pub coef: String,
}

/// `{"n": 2, "d": 3, "entries": [...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorDto {
    pub n: usize,
    pub d: usize,
    pub entries: Vec<TensorEntryDto>,
}

pub fn tensor_to_dto<K: Field>(t: &Tensor<K>) -> TensorDto {
    let field = t.field();
    TensorDto {
        n: t.n(),
        d: t.d(),
        entries: t
            .iter_entries()
            .map(|(idx, c)| TensorEntryDto {
                idx: idx.iter().map(|&i| i as u32 + 1).collect(),
                coef: field.format(c),
            })
            .collect(),
    }
}

pub fn tensor_from_dto<K: Field>(field: &K, dto: &TensorDto) -> Result<Tensor<K>> {
    let mut entries = Vec::with_capacity(dto.entries.len());
    for e in &dto.entries {
        if e.idx.len() != dto.d || e.idx.iter().any(|&i| i < 1 || i as usize > dto.n) {
            return Err(Error::InvalidInput(format!(
                "tensor index {:?} is not a 1-based length-{} vector with entries ≤ {}",
                e.idx, dto.d, dto.n
            )));
        }
        entries.push((
            e.idx.iter().map(|&i| (i - 1) as u16).collect::<Vec<u16>>(),
            field.parse(&e.coef)?,
        ));
    }
    Tensor::from_entries(field.clone(), dto.n, dto.d, entries)
}

pub fn tensor_to_json<K: Field>(t: &Tensor<K>) -> String {
    serde_json::to_string_pretty(&tensor_to_dto(t)).expect("serialization cannot fail")
}

pub fn tensor_from_json<K: Field>(field: &K, s: &str) -> Result<Tensor<K>> {
    tensor_from_dto(field, &serde_json::from_str(s).map_err(bad_json)?)
}

/// One basis image: `exp` keys Waring maps (divided-monomial exponents),
/// `idx` keys tensor maps (1-based mode indices); exactly one must be
/// present.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImageDto {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exp: Option<Vec<u16>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub idx: Option<Vec<u32>>,
    pub matrix: Vec<Vec<String>>,
}

/// `{"family": "waring", "n": 2, "d": 3, "m": 4, "images": [...]}` —
/// basis elements without a listed image map to zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearMapDto {
    pub family: String,
    pub n: usize,
    pub d: u32,
    pub m: usize,
    pub images: Vec<ImageDto>,
}

pub fn map_to_dto<K: Field>(map: &LinearMap<K>) -> LinearMapDto {
    let field = map.field();
    LinearMapDto {
        family: map.family().to_string(),
        n: map.n(),
        d: map.d(),
        m: map.m(),
        images: map
            .images()
            .map(|(key, mat)| {
                let (exp, idx) = match map.family() {
                    Family::Waring => (Some(key.clone()), None),
                    Family::Tensor => {
                        (None, Some(key.iter().map(|&i| i as u32 + 1).collect()))
                    }
                };
                ImageDto {
                    exp,
                    idx,
                    matrix: (0..mat.rows())
                        .map(|i| (0..mat.cols()).map(|j| field.format(mat.get(i, j))).collect())
                        .collect(),
                }
            })
            .collect(),
    }
}

pub fn map_from_dto<K: Field>(field: &K, dto: &LinearMapDto) -> Result<LinearMap<K>> {
    let family: Family = dto.family.parse()?;
    let mut images = Vec::with_capacity(dto.images.len());
    for img in &dto.images {
        let key: Vec<u16> = match (family, &img.exp, &img.idx) {
            (Family::Waring, Some(exp), None) => exp.clone(),
            (Family::Tensor, None, Some(idx)) => {
                if idx.iter().any(|&i| i < 1) {
                    return Err(Error::InvalidInput(format!(
                        "tensor map index {idx:?} must be 1-based"
                    )));
                }
                idx.iter().map(|&i| (i - 1) as u16).collect()
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "a {family} map image needs exactly its {} key",
                    match family {
                        Family::Waring => "\"exp\"",
                        Family::Tensor => "\"idx\"",
                    }
                )));
            }
        };
        if img.matrix.len() != dto.m || img.matrix.iter().any(|r| r.len() != dto.m) {
            return Err(Error::InvalidInput(format!(
                "image matrix for key {key:?} is not {}×{}",
                dto.m, dto.m
            )));
        }
        let mut mat = ScalarMat::zeros(field.clone(), dto.m, dto.m);
        for (i, row) in img.matrix.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                mat.set(i, j, field.parse(cell)?);
            }
        }
        images.push((key, mat));
    }
    LinearMap::new(field.clone(), family, dto.n, dto.d, dto.m, images)
}

pub fn map_to_json<K: Field>(map: &LinearMap<K>) -> String {
    serde_json::to_string_pretty(&map_to_dto(map)).expect("serialization cannot fail")
}

pub fn map_from_json<K: Field>(field: &K, s: &str) -> Result<LinearMap<K>> {
    map_from_dto(field, &serde_json::from_str(s).map_err(bad_json)?)
}

/// One outer-product term.  Homogeneous terms carry `deg_u`/`deg_v`;
/// set-multilinear terms carry the 1-based block subset `S`; jet terms carry
/// neither.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompTermDto {
    pub u: Vec<PolyDto>,
    pub v: Vec<PolyDto>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deg_u: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deg_v: Option<u32>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none", default)]
    pub s: Option<Vec<usize>>,
}

/// `{"kind": "symbolic" | "hom" | "sm", "rank": r, ...}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionDto {
    pub kind: String,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u32>,
    pub terms: Vec<DecompTermDto>,
}

fn vector_to_dtos<K: Field>(v: &PolyVector<K>) -> Vec<PolyDto> {
    v.entries().iter().map(poly_to_dto).collect()
}

fn vector_from_dtos<K: Field>(field: &K, dtos: &[PolyDto]) -> Result<PolyVector<K>> {
    if dtos.is_empty() {
        return Err(Error::InvalidInput("empty vector in decomposition term".into()));
    }
    let entries: Vec<Polynomial<K>> =
        dtos.iter().map(|d| poly_from_dto(field, d)).collect::<Result<_>>()?;
    let first = &entries[0];
    if entries.iter().any(|e| {
        e.num_vars() != first.num_vars() || e.basis() != first.basis()
    }) {
        return Err(Error::InvalidInput(
            "vector entries disagree on variable count or basis".into(),
        ));
    }
    Ok(PolyVector::new(entries))
}

pub fn decomposition_to_dto<K: Field>(decomp: &Decomposition<K>) -> DecompositionDto {
    match decomp {
        Decomposition::Jets { degree, pairs } => DecompositionDto {
            kind: "symbolic".into(),
            rank: pairs.len(),
            degree: Some(*degree),
            terms: pairs
                .iter()
                .map(|p| DecompTermDto {
                    u: vector_to_dtos(&p.f),
                    v: vector_to_dtos(&p.g),
                    deg_u: None,
                    deg_v: None,
                    s: None,
                })
                .collect(),
        },
        Decomposition::Homogeneous(h) => DecompositionDto {
            kind: "hom".into(),
            rank: h.rank,
            degree: Some(h.degree),
            terms: h
                .terms
                .iter()
                .map(|t| DecompTermDto {
                    u: vector_to_dtos(&t.u),
                    v: vector_to_dtos(&t.v),
                    deg_u: Some(t.deg_u),
                    deg_v: Some(t.deg_v),
                    s: None,
                })
                .collect(),
        },
        Decomposition::SetMultilinear(s) => DecompositionDto {
            kind: "sm".into(),
            rank: s.rank,
            degree: None,
            terms: s
                .terms
                .iter()
                .map(|t| DecompTermDto {
                    u: vector_to_dtos(&t.u),
                    v: vector_to_dtos(&t.v),
                    deg_u: None,
                    deg_v: None,
                    s: Some(t.subset.iter().map(|&b| b + 1).collect()),
                })
                .collect(),
        },
    }
}

pub fn decomposition_from_dto<K: Field>(
    field: &K,
    dto: &DecompositionDto,
) -> Result<Decomposition<K>> {
    match dto.kind.as_str() {
        "symbolic" => {
            let degree = dto.degree.ok_or_else(|| {
                Error::InvalidInput("a symbolic decomposition needs a degree".into())
            })?;
            let pairs = dto
                .terms
                .iter()
                .map(|t| {
                    Ok(JetPair {
                        f: vector_from_dtos(field, &t.u)?,
                        g: vector_from_dtos(field, &t.v)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Decomposition::Jets { degree, pairs })
        }
        "hom" => {
            let degree = dto.degree.ok_or_else(|| {
                Error::InvalidInput("a homogeneous decomposition needs a degree".into())
            })?;
            let terms = dto
                .terms
                .iter()
                .map(|t| {
                    let (deg_u, deg_v) = match (t.deg_u, t.deg_v) {
                        (Some(a), Some(b)) => (a, b),
                        _ => {
                            return Err(Error::InvalidInput(
                                "homogeneous terms need deg_u and deg_v".into(),
                            ));
                        }
                    };
                    Ok(HomTerm {
                        u: vector_from_dtos(field, &t.u)?,
                        v: vector_from_dtos(field, &t.v)?,
                        deg_u,
                        deg_v,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Decomposition::Homogeneous(HomDecomposition {
                degree,
                rank: dto.rank,
                terms,
            }))
        }
        "sm" => {
            let terms = dto
                .terms
                .iter()
                .map(|t| {
                    let s = t.s.as_ref().ok_or_else(|| {
                        Error::InvalidInput(
                            "set-multilinear terms need a block subset S".into(),
                        )
                    })?;
                    if s.iter().any(|&b| b < 1) {
                        return Err(Error::InvalidInput(format!(
                            "block subset {s:?} must be 1-based"
                        )));
                    }
                    Ok(SmTerm {
                        u: vector_from_dtos(field, &t.u)?,
                        v: vector_from_dtos(field, &t.v)?,
                        subset: s.iter().map(|&b| b - 1).collect(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Decomposition::SetMultilinear(SMDecomposition { rank: dto.rank, terms }))
        }
        other => Err(Error::InvalidInput(format!("unknown decomposition kind \"{other}\""))),
    }
}

pub fn decomposition_to_json<K: Field>(decomp: &Decomposition<K>) -> String {
    serde_json::to_string_pretty(&decomposition_to_dto(decomp))
        .expect("serialization cannot fail")
}

pub fn decomposition_from_json<K: Field>(field: &K, s: &str) -> Result<Decomposition<K>> {
    decomposition_from_dto(field, &serde_json::from_str(s).map_err(bad_json)?)
}
