//! Instance input: the JSON file schema and the `--inline` grammar.

use serde::{Deserialize, Serialize};

use qgenus_core::CompleteIntersection;

use crate::CliError;

/// On-disk instance document.
///
/// ```json
/// { "label": "quintic", "n": [4], "D": [[5]] }
/// ```
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
}

impl InstanceFile {
    pub fn from_path(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("malformed instance file {}: {e}", path.display())))
    }

    /// Parses the inline grammar `n=7,4;D=2,1;1,-2;1,0`: the first field is
    /// the ambient dimensions, the second starts the degree matrix, and
    /// every further `;`-separated group is another row. `D=` with nothing
    /// after it means an empty matrix (the ambient product itself).
    pub fn from_inline(text: &str) -> Result<Self, CliError> {
        let mut fields = text.split(';').map(str::trim);
        let n_field = fields
            .next()
            .filter(|f| !f.is_empty())
            .ok_or_else(|| CliError::Input("inline instance: expected 'n=...'".into()))?;
        let n_body = n_field
            .strip_prefix("n=")
            .ok_or_else(|| CliError::Input(format!("inline instance: expected 'n=...', got '{n_field}'")))?;
        let n = parse_int_list::<usize>(n_body, "n")?;

        let mut d: Vec<Vec<i64>> = Vec::new();
        match fields.next() {
            None => {}
            Some(d_field) => {
                let d_body = d_field.strip_prefix("D=").ok_or_else(|| {
                    CliError::Input(format!("inline instance: expected 'D=...', got '{d_field}'"))
                })?;
                if !d_body.trim().is_empty() {
                    d.push(parse_int_list::<i64>(d_body, "D")?);
                }
                for row in fields {
                    if row.is_empty() {
                        continue;
                    }
                    d.push(parse_int_list::<i64>(row, "D")?);
                }
            }
        }
        Ok(Self { label: None, n, d })
    }

    pub fn validate(&self) -> Result<CompleteIntersection, CliError> {
        CompleteIntersection::new(self.n.clone(), self.d.clone())
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

fn parse_int_list<T: std::str::FromStr>(body: &str, what: &str) -> Result<Vec<T>, CliError> {
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| CliError::Input(format!("invalid integer '{t}' in {what}")))
        })
        .collect()
}

/// Resolves the instance from a positional path or `--inline` text.
pub fn load_instance(
    path: Option<&std::path::Path>,
    inline: Option<&str>,
) -> Result<InstanceFile, CliError> {
    match (path, inline) {
        (Some(p), None) => InstanceFile::from_path(p),
        (None, Some(text)) => InstanceFile::from_inline(text),
        (Some(_), Some(_)) => Err(CliError::Input(
            "give either an instance file or --inline, not both".into(),
        )),
        (None, None) => Err(CliError::Input(
            "an instance is required: pass a file path or --inline 'n=...;D=...'".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_single_factor() {
        let f = InstanceFile::from_inline("n=4;D=5").unwrap();
        assert_eq!(f.n, vec![4]);
        assert_eq!(f.d, vec![vec![5]]);
    }

    #[test]
    fn inline_multi_row() {
        let f = InstanceFile::from_inline("n=7,4;D=2,1;1,-2;1,0;1,0;1,0").unwrap();
        assert_eq!(f.n, vec![7, 4]);
        assert_eq!(f.d.len(), 5);
        assert_eq!(f.d[1], vec![1, -2]);
    }

    #[test]
    fn inline_empty_matrix() {
        let f = InstanceFile::from_inline("n=2;D=").unwrap();
        assert!(f.d.is_empty());
        let f = InstanceFile::from_inline("n=2").unwrap();
        assert!(f.d.is_empty());
    }

    #[test]
    fn inline_rejects_garbage() {
        assert!(InstanceFile::from_inline("m=2;D=1").is_err());
        assert!(InstanceFile::from_inline("n=a;D=1").is_err());
        assert!(InstanceFile::from_inline("").is_err());
    }

    #[test]
    fn validation_maps_to_input_error() {
        let f = InstanceFile::from_inline("n=4;D=0").unwrap();
        let err = f.validate().unwrap_err();
        assert!(matches!(err, CliError::Input(_)));
        assert!(err.to_string().contains("zero row"));
    }
}
