//! JSON algebra-definition files.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "labels": ["x", "y", "z"],
//!   "brackets": [{"i": 0, "j": 1, "terms": [{"k": 2, "coeff": "1"}]}],
//!   "involution": [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]]
//! }
//! ```
//!
//! `involution` is optional. So is `h_basis`, a list of vectors spanning a
//! subalgebra; the pair is then its Killing complement splitting, which need
//! not be symmetric.

use std::collections::BTreeMap;
use std::fmt;

use invforms_core::lie::{LinearEndo, Semisimplicity, SparseVec};
use invforms_core::linalg::Matrix;
use invforms_core::scalar::{format_scalar, parse_scalar, Scalar, Vector};
use invforms_core::{Error, LieAlgebra, SymmetricPair};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_basis: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub coeff: String,
}

/// A problem in an algebra file, located by line or by field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

fn field(location: impl Into<String>, message: impl fmt::Display) -> ParseError {
    ParseError {
        location: location.into(),
        message: message.to_string(),
    }
}

/// The parsed contents of an algebra file.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub algebra: LieAlgebra,
    pub involution: Option<LinearEndo>,
    pub h_basis: Option<Vec<Vector>>,
}

impl AlgebraSpec {
    /// The pair described by the file: the involution's eigenspaces, the
    /// splitting along `h_basis`, or the group pair when neither is given.
    pub fn pair(&self) -> Result<SymmetricPair, Error> {
        match (&self.involution, &self.h_basis) {
            (Some(sigma), _) => SymmetricPair::cartan_decompose(&self.algebra, sigma),
            (None, Some(h)) => SymmetricPair::reductive(&self.algebra, h.clone()),
            (None, None) => SymmetricPair::group_pair(&self.algebra),
        }
    }
}

fn scalar_at(text: &str, location: impl FnOnce() -> String) -> Result<Scalar, ParseError> {
    parse_scalar(text).map_err(|e| field(location(), e))
}

fn matrix_rows(rows: &[Vec<String>], n: usize, name: &str) -> Result<Vec<Vector>, ParseError> {
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != n {
                return Err(field(
                    format!("{name}[{r}]"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(c, x)| scalar_at(x, || format!("{name}[{r}][{c}]")))
                .collect()
        })
        .collect()
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec, ParseError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m);
        field(format!("line {}, column {}", e.line(), e.column()), message)
    })?;
    let n = file.dim;
    if n == 0 {
        return Err(field("dim", "must be positive"));
    }
    if file.labels.len() != n {
        return Err(field(
            "labels",
            format!("expected {n} labels, found {}", file.labels.len()),
        ));
    }
    let mut brackets: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (e, entry) in file.brackets.iter().enumerate() {
        if entry.i >= entry.j {
            return Err(field(
                format!("brackets[{e}]"),
                format!("need i < j, found i = {}, j = {}", entry.i, entry.j),
            ));
        }
        if entry.j >= n {
            return Err(field(
                format!("brackets[{e}].j"),
                format!("index {} out of range", entry.j),
            ));
        }
        if brackets.contains_key(&(entry.i, entry.j)) {
            return Err(field(
                format!("brackets[{e}]"),
                format!("duplicate entry for ({}, {})", entry.i, entry.j),
            ));
        }
        let mut terms = Vec::new();
        for (t, term) in entry.terms.iter().enumerate() {
            if term.k >= n {
                return Err(field(
                    format!("brackets[{e}].terms[{t}].k"),
                    format!("index {} out of range", term.k),
                ));
            }
            terms.push((
                term.k,
                scalar_at(&term.coeff, || format!("brackets[{e}].terms[{t}].coeff"))?,
            ));
        }
        brackets.insert((entry.i, entry.j), terms);
    }
    // semisimplicity is a property of the algebra, not of the file
    let algebra = LieAlgebra::new(file.labels.clone(), brackets, Semisimplicity::Skip).map_err(|e| match e {
        Error::JacobiViolation { i, j, k } => field(
            "brackets",
            format!(
                "Jacobi identity fails on basis triple ({}, {}, {})",
                file.labels[i], file.labels[j], file.labels[k]
            ),
        ),
        other => field("brackets", other),
    })?;
    let involution = match &file.involution {
        Some(rows) => {
            if rows.len() != n {
                return Err(field("involution", format!("expected {n} rows, found {}", rows.len())));
            }
            let m = Matrix::from_rows(matrix_rows(rows, n, "involution")?).map_err(|e| field("involution", e))?;
            Some(LinearEndo(m))
        }
        None => None,
    };
    let h_basis = match &file.h_basis {
        Some(rows) => Some(matrix_rows(rows, n, "h_basis")?),
        None => None,
    };
    Ok(AlgebraSpec {
        algebra,
        involution,
        h_basis,
    })
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

/// Serializes an algebra, optionally with an involution and an `h` basis.
pub fn write_algebra(g: &LieAlgebra, involution: Option<&LinearEndo>, h_basis: Option<&[Vector]>) -> String {
    let brackets = g
        .brackets()
        .iter()
        .map(|(&(i, j), terms)| BracketEntry {
            i,
            j,
            terms: terms
                .iter()
                .map(|(k, c)| Term {
                    k: *k,
                    coeff: format_scalar(c),
                })
                .collect(),
        })
        .collect();
    let file = AlgebraFile {
        dim: g.dim(),
        labels: g.labels().to_vec(),
        brackets,
        involution: involution.map(|s| s.matrix().to_rows().iter().map(|r| strings(r)).collect()),
        h_basis: h_basis.map(|b| b.iter().map(|v| strings(v)).collect()),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("plain data");
    out.push('\n');
    out
}
