use std::path::Path;

use serde::Deserialize;

use super::LieAlgebraModel;
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
struct ModelFile {
    label: String,
    dim_p: usize,
    dim_k: usize,
    /// [i, j, l, value] with 1-based indices.
    brackets: Vec<(usize, usize, usize, f64)>,
}

/// Parses the structure-constant JSON format; indices are 1-based.
pub fn parse_model(text: &str) -> Result<LieAlgebraModel> {
    let f: ModelFile = serde_json::from_str(text)?;
    let mut br = Vec::with_capacity(f.brackets.len());
    for (i, j, l, v) in f.brackets {
        if i == 0 || j == 0 || l == 0 {
            return Err(Error::InvalidModel("bracket indices are 1-based".into()));
        }
        br.push((i - 1, j - 1, l - 1, v));
    }
    LieAlgebraModel::from_brackets(f.label, f.dim_p, f.dim_k, &br)
}

pub fn load_model(path: &Path) -> Result<LieAlgebraModel> {
    parse_model(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_roundtrip_through_json() {
        let text = r#"{"label":"sl2","dim_p":2,"dim_k":1,
            "brackets":[[1,2,3,1.0],[2,3,1,-1.0],[3,1,2,-1.0]]}"#;
        let m = parse_model(text).unwrap();
        assert_eq!(m, LieAlgebraModel::sl2());
    }

    #[test]
    fn rejects_jacobi_violation() {
        // 𝔭 = ℝ², 𝔨 = ℝ²: [e1,e2] = e3 only, [e3,e1] = e2 breaks invariance.
        let text = r#"{"label":"x","dim_p":2,"dim_k":2,
            "brackets":[[1,2,3,1.0],[3,1,2,1.0]]}"#;
        assert!(parse_model(text).is_err());
    }

    #[test]
    fn zero_index_rejected() {
        let text = r#"{"label":"x","dim_p":1,"dim_k":0,"brackets":[[0,1,1,1.0]]}"#;
        assert!(parse_model(text).is_err());
    }
}
