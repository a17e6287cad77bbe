//! On-disk JSON schemas and conversions to the validated domain types.
//!
//! Rationals travel as canonical `"p/q"` strings (integers may omit the
//! denominator); complex rationals as `{"re": "p/q", "im": "p/q"}`; float
//! complex numbers as `{"re": f64, "im": f64}`. Every conversion into a
//! domain type re-runs that type's full validation, so a file is either
//! rejected or yields an object with all invariants established.
//!
//! Schemas:
//! - measurement: `{"space": {"classical": d}, "effects": [["p/q", ...], ...]}`
//! - ensemble: `{"space": {"classical": d}, "members": [["p/q", ...], ...]}`
//! - poset: `{"elements": ["a0", ...], "pairs": [["a0", "b1"], ...]}`
//!   (strict pairs; reflexivity is implied, transitivity is checked, not
//!   completed)
//! - Markov matrix: `[["p/q", ...], ...]` (row-major, rows = target
//!   outcomes)
//! - POVM: `{"dim": d, "effects": [[[{"re","im"}, ...], ...], ...]}`
//! - quantum ensemble: `{"dim": d, "members": [[[{"re","im"}, ...], ...], ...]}`
//! - float POVM: same shape with numeric `re`/`im`
//! - superoperator: `{"dim_in": a, "dim_out": b, "matrix": [[{re,im}...]]}`
//!   (row-major, b²×a², acting on column-vectorized operators)

use crate::exact::{format_rational, parse_rational, ExactError, GaussianMatrix, GaussianRational};
use crate::gpt::{ClassicalSpace, Ensemble, Evm, GptError};
use crate::poset::{FinitePoset, LinearExtension, MonotoneFamily, PosetError, Realizer};
use crate::postproc::{CompareVerdict, MarkovMatrix, PostprocError};
use crate::quantum::{
    FloatPovm, QuantumEnsemble, QuantumError, QuantumEvm, QuantumVerdict, Superoperator,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDto {
    pub classical: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvmDto {
    pub space: SpaceDto,
    pub effects: Vec<Vec<String>>,
}

impl EvmDto {
    pub fn to_evm(&self) -> Result<Evm, GptError> {
        let space = ClassicalSpace::new(self.space.classical)?;
        let effects = self
            .effects
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<_>>, ExactError>>()?;
        Evm::new(space, effects)
    }

    pub fn from_evm(m: &Evm) -> Self {
        EvmDto {
            space: SpaceDto {
                classical: m.space().dim(),
            },
            effects: m
                .effects()
                .iter()
                .map(|e| e.values().iter().map(format_rational).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnsembleDto {
    pub space: SpaceDto,
    pub members: Vec<Vec<String>>,
}

impl EnsembleDto {
    pub fn to_ensemble(&self) -> Result<Ensemble, GptError> {
        let space = ClassicalSpace::new(self.space.classical)?;
        let members = self
            .members
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<_>>, ExactError>>()?;
        Ensemble::new(space, members)
    }

    pub fn from_ensemble(e: &Ensemble) -> Self {
        EnsembleDto {
            space: SpaceDto {
                classical: e.space().dim(),
            },
            members: e
                .members()
                .iter()
                .map(|m| m.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetDto {
    pub elements: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

impl PosetDto {
    pub fn to_poset(&self) -> Result<FinitePoset, PosetError> {
        let labels: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = self
            .pairs
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        FinitePoset::from_label_pairs(&labels, &pairs)
    }

    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetDto {
            elements: p.labels().to_vec(),
            pairs: p
                .strict_pairs()
                .iter()
                .map(|&(i, j)| (p.label(i).to_string(), p.label(j).to_string()))
                .collect(),
        }
    }
}

/// Markov matrices as row-major `"p/q"` grids.
pub fn markov_to_rows(p: &MarkovMatrix) -> Vec<Vec<String>> {
    (0..p.rows())
        .map(|r| (0..p.cols()).map(|c| format_rational(p.get(r, c))).collect())
        .collect()
}

pub fn markov_from_rows(rows: &[Vec<String>]) -> Result<MarkovMatrix, PostprocError> {
    let row_count = rows.len();
    let col_count = rows.first().map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(row_count * col_count);
    for row in rows {
        for s in row {
            entries.push(parse_rational(s).map_err(PostprocError::from)?);
        }
    }
    MarkovMatrix::new(row_count, col_count, entries)
}

/// A realizer as lists of element labels, first (bottom) to last (top).
pub fn realizer_to_labels(p: &FinitePoset, r: &Realizer) -> Vec<Vec<String>> {
    r.extensions()
        .iter()
        .map(|ext| ext.order().iter().map(|&i| p.label(i).to_string()).collect())
        .collect()
}

pub fn realizer_from_labels(
    p: &FinitePoset,
    lists: &[Vec<String>],
) -> Result<Realizer, PosetError> {
    let extensions = lists
        .iter()
        .map(|list| {
            let order = list
                .iter()
                .map(|label| p.index_of(label))
                .collect::<Result<Vec<_>, _>>()?;
            LinearExtension::new(order, p.len())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Realizer::new(p, extensions)
}

/// Monotone families as per-element rational value lists.
pub fn monotones_to_rows(family: &MonotoneFamily) -> Vec<Vec<String>> {
    family
        .functions()
        .iter()
        .map(|f| f.iter().map(format_rational).collect())
        .collect()
}

pub fn monotones_from_rows(
    p: &FinitePoset,
    rows: &[Vec<String>],
) -> Result<MonotoneFamily, PosetError> {
    let functions = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_rational(s).map_err(|e| PosetError::from(PostprocError::from(e))))
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>, PosetError>>()?;
    MonotoneFamily::new(p, functions)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: String,
    pub im: String,
}

impl ComplexDto {
    fn to_gaussian(&self) -> Result<GaussianRational, ExactError> {
        Ok(GaussianRational::new(
            parse_rational(&self.re)?,
            parse_rational(&self.im)?,
        ))
    }

    fn from_gaussian(g: &GaussianRational) -> Self {
        ComplexDto {
            re: format_rational(&g.re),
            im: format_rational(&g.im),
        }
    }
}

fn gaussian_matrix_from_grid(grid: &[Vec<ComplexDto>]) -> Result<GaussianMatrix, ExactError> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(rows * cols);
    for row in grid {
        if row.len() != cols {
            return Err(ExactError::DataLength {
                rows,
                cols,
                expected: rows * cols,
                found: grid.iter().map(Vec::len).sum(),
            });
        }
        for entry in row {
            data.push(entry.to_gaussian()?);
        }
    }
    GaussianMatrix::new(rows, cols, data)
}

fn gaussian_matrix_to_grid(m: &GaussianMatrix) -> Vec<Vec<ComplexDto>> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| ComplexDto::from_gaussian(m.get(r, c)))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PovmDto {
    pub dim: usize,
    pub effects: Vec<Vec<Vec<ComplexDto>>>,
}

impl PovmDto {
    pub fn to_povm(&self) -> Result<QuantumEvm, QuantumError> {
        let effects = self
            .effects
            .iter()
            .map(|grid| gaussian_matrix_from_grid(grid))
            .collect::<Result<Vec<_>, _>>()?;
        QuantumEvm::new(self.dim, effects)
    }

    pub fn from_povm(m: &QuantumEvm) -> Self {
        PovmDto {
            dim: m.dim(),
            effects: m.effects().iter().map(gaussian_matrix_to_grid).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuantumEnsembleDto {
    pub dim: usize,
    pub members: Vec<Vec<Vec<ComplexDto>>>,
}

impl QuantumEnsembleDto {
    pub fn to_ensemble(&self) -> Result<QuantumEnsemble, QuantumError> {
        let members = self
            .members
            .iter()
            .map(|grid| gaussian_matrix_from_grid(grid))
            .collect::<Result<Vec<_>, _>>()?;
        QuantumEnsemble::new(self.dim, members)
    }

    pub fn from_ensemble(e: &QuantumEnsemble) -> Self {
        QuantumEnsembleDto {
            dim: e.dim(),
            members: e.members().iter().map(gaussian_matrix_to_grid).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ComplexF64Dto {
    pub re: f64,
    pub im: f64,
}

fn complex_grid_to_dmatrix(grid: &[Vec<ComplexF64Dto>]) -> Result<DMatrix<Complex64>, ExactError> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if grid.iter().any(|row| row.len() != cols) {
        return Err(ExactError::DataLength {
            rows,
            cols,
            expected: rows * cols,
            found: grid.iter().map(Vec::len).sum(),
        });
    }
    Ok(DMatrix::from_fn(rows, cols, |r, c| {
        Complex64::new(grid[r][c].re, grid[r][c].im)
    }))
}

fn dmatrix_to_complex_grid(m: &DMatrix<Complex64>) -> Vec<Vec<ComplexF64Dto>> {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| ComplexF64Dto {
                    re: m[(r, c)].re,
                    im: m[(r, c)].im,
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FloatPovmDto {
    pub dim: usize,
    pub effects: Vec<Vec<Vec<ComplexF64Dto>>>,
}

impl FloatPovmDto {
    pub fn to_povm(&self, tol: f64) -> Result<FloatPovm, QuantumError> {
        let effects = self
            .effects
            .iter()
            .map(|grid| complex_grid_to_dmatrix(grid))
            .collect::<Result<Vec<_>, _>>()?;
        FloatPovm::new(self.dim, effects, tol)
    }

    pub fn from_povm(m: &FloatPovm) -> Self {
        FloatPovmDto {
            dim: m.dim(),
            effects: m.effects().iter().map(dmatrix_to_complex_grid).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuperoperatorDto {
    pub dim_in: usize,
    pub dim_out: usize,
    pub matrix: Vec<Vec<ComplexF64Dto>>,
}

impl SuperoperatorDto {
    pub fn to_superoperator(&self) -> Result<Superoperator, QuantumError> {
        let mat = complex_grid_to_dmatrix(&self.matrix)?;
        Superoperator::new(self.dim_in, self.dim_out, mat)
    }

    pub fn from_superoperator(s: &Superoperator) -> Self {
        SuperoperatorDto {
            dim_in: s.dim_in(),
            dim_out: s.dim_out(),
            matrix: dmatrix_to_complex_grid(s.matrix()),
        }
    }
}

/// The verdict payload shared by the classical and quantum comparison
/// commands: `"verdict"` plus the matching certificates.
pub fn verdict_payload(v: &CompareVerdict) -> Value {
    match v {
        CompareVerdict::LessEq { witness } => json!({
            "verdict": "less",
            "markov": markov_to_rows(witness),
        }),
        CompareVerdict::GreaterEq { witness } => json!({
            "verdict": "greater",
            "markov": markov_to_rows(witness),
        }),
        CompareVerdict::Equivalent { forward, backward } => json!({
            "verdict": "equivalent",
            "markov_forward": markov_to_rows(forward),
            "markov_backward": markov_to_rows(backward),
        }),
        CompareVerdict::Incomparable {
            forward_gap,
            backward_gap,
        } => json!({
            "verdict": "incomparable",
            "ensembles": {
                "forward": EnsembleDto::from_ensemble(forward_gap),
                "backward": EnsembleDto::from_ensemble(backward_gap),
            },
        }),
    }
}

pub fn quantum_verdict_payload(v: &QuantumVerdict) -> Value {
    match v {
        QuantumVerdict::LessEq { witness } => json!({
            "verdict": "less",
            "markov": markov_to_rows(witness),
        }),
        QuantumVerdict::GreaterEq { witness } => json!({
            "verdict": "greater",
            "markov": markov_to_rows(witness),
        }),
        QuantumVerdict::Equivalent { forward, backward } => json!({
            "verdict": "equivalent",
            "markov_forward": markov_to_rows(forward),
            "markov_backward": markov_to_rows(backward),
        }),
        QuantumVerdict::Incomparable {
            forward_gap,
            backward_gap,
        } => json!({
            "verdict": "incomparable",
            "ensembles": {
                "forward": QuantumEnsembleDto::from_ensemble(forward_gap),
                "backward": QuantumEnsembleDto::from_ensemble(backward_gap),
            },
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::postproc::compare;

    #[test]
    fn evm_round_trip_preserves_canonical_form() {
        let text = r#"{"space":{"classical":2},"effects":[["1/2","2/4"],["1/2","1/2"]]}"#;
        let dto: EvmDto = serde_json::from_str(text).unwrap();
        let m = dto.to_evm().unwrap();
        let back = EvmDto::from_evm(&m);
        assert_eq!(back.effects, vec![vec!["1/2", "1/2"], vec!["1/2", "1/2"]]);
        let again: EvmDto = serde_json::from_str(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(again.effects, back.effects);
    }

    #[test]
    fn invalid_evm_is_rejected_at_conversion() {
        let text = r#"{"space":{"classical":2},"effects":[["1","1"],["1/2","1/2"]]}"#;
        let dto: EvmDto = serde_json::from_str(text).unwrap();
        assert!(dto.to_evm().is_err());
    }

    #[test]
    fn poset_round_trip() {
        let text = r#"{"elements":["a","b","c"],"pairs":[["a","b"],["b","c"],["a","c"]]}"#;
        let dto: PosetDto = serde_json::from_str(text).unwrap();
        let p = dto.to_poset().unwrap();
        assert!(p.strictly_less(0, 2));
        let back = PosetDto::from_poset(&p);
        assert_eq!(back.elements, vec!["a", "b", "c"]);
        assert_eq!(back.pairs.len(), 3);
    }

    #[test]
    fn markov_rows_round_trip() {
        let p = MarkovMatrix::new(1, 2, vec![rat(1, 1), rat(1, 1)]).unwrap();
        let rows = markov_to_rows(&p);
        assert_eq!(rows, vec![vec!["1/1", "1/1"]]);
        let q = markov_from_rows(&rows).unwrap();
        assert_eq!(q.rows(), 1);
        assert_eq!(q.cols(), 2);
    }

    #[test]
    fn verdict_payload_shapes() {
        let space = ClassicalSpace::bit();
        let m = Evm::identity_observable(space);
        let t = Evm::trivial(space, &[rat(1, 2), rat(1, 2)]).unwrap();
        let less = compare(&t, &m).unwrap();
        let payload = verdict_payload(&less);
        assert_eq!(payload["verdict"], "less");
        assert!(payload["markov"].is_array());
    }

    #[test]
    fn povm_dto_round_trip() {
        let m = QuantumEvm::standard_basis(2).unwrap();
        let dto = PovmDto::from_povm(&m);
        let text = serde_json::to_string(&dto).unwrap();
        let parsed: PovmDto = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_povm().unwrap(), m);
    }

    #[test]
    fn superoperator_dto_round_trip() {
        let s = crate::quantum::dephasing(2).unwrap();
        let dto = SuperoperatorDto::from_superoperator(&s);
        assert_eq!(dto.matrix.len(), 4);
        let back = dto.to_superoperator().unwrap();
        assert_eq!(
            crate::quantum::max_abs_diff(back.matrix(), s.matrix()),
            0.0
        );
    }
}
