//! Input formats: groups and families as JSON, graphs as edge lists or
//! JSON, GF(2) matrices as 0/1 rows, points as comma-separated rationals.

use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use orbitope::elab2::{GF2Matrix, Graph};
use orbitope::exactmath::{Matrix, Rational};
use orbitope::orbit::{close_group, MatrixGroup};
use orbitope::symcore::VectorFamily;

use crate::CliError;

/// A rational given either as a JSON string or a JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Scalar::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("not a rational: {s:?}"))),
            Scalar::Int(n) => Ok(Rational::from_int(*n)),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    dim: usize,
    generators: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    dim: usize,
    columns: Vec<Vec<Scalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Reads inputs and accumulates their digest.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn record(&mut self, name: &str, value: &[u8]) {
        self.hasher.update((name.len() as u64).to_le_bytes());
        self.hasher.update(name.as_bytes());
        self.hasher.update((value.len() as u64).to_le_bytes());
        self.hasher.update(value);
    }

    pub fn read(&mut self, name: &str, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.record(name, text.as_bytes());
        Ok(text)
    }

    /// Hex SHA-256 of everything recorded so far.
    pub fn digest(&self) -> String {
        self.hasher
            .clone()
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

fn json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

fn rationals(xs: &[Scalar]) -> Result<Vec<Rational>, CliError> {
    xs.iter().map(Scalar::to_rational).collect()
}

/// The matrices listed in a group file.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Matrix<Rational>>), CliError> {
    let file: GroupFile = json(text)?;
    let mut gens = Vec::with_capacity(file.generators.len());
    for (k, rows) in file.generators.iter().enumerate() {
        if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
            return Err(CliError::Parse(format!("generator {k} is not {0} × {0}", file.dim)));
        }
        let rows = rows.iter().map(|r| rationals(r)).collect::<Result<Vec<_>, _>>()?;
        gens.push(Matrix::from_rows(rows));
    }
    Ok((file.dim, gens))
}

/// The finite group generated by the matrices in a group file.
pub fn parse_group(text: &str, max_order: usize) -> Result<MatrixGroup, CliError> {
    let (dim, gens) = parse_generators(text)?;
    Ok(close_group(dim, &gens, max_order)?)
}

pub fn parse_family(text: &str) -> Result<VectorFamily<Rational>, CliError> {
    let file: FamilyFile = json(text)?;
    if let Some(k) = file.columns.iter().position(|c| c.len() != file.dim) {
        return Err(CliError::Parse(format!("column {k} does not have {} entries", file.dim)));
    }
    let columns = file.columns.iter().map(|c| rationals(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(VectorFamily::from_vectors(file.dim, &columns))
}

/// Parses `"2,1"` or `"1/2, -3"`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("not a rational: {:?}", s.trim())))
        })
        .collect()
}

/// An edge list, or JSON `{"n": …, "edges": [[u, v], …]}`.
pub fn parse_graph(text: &str) -> Result<Graph, CliError> {
    if text.trim_start().starts_with('{') {
        let file: GraphFile = json(text)?;
        Ok(Graph::new(file.n, &file.edges)?)
    } else {
        Ok(Graph::parse_edge_list(text)?)
    }
}

pub fn parse_gf2(text: &str) -> Result<GF2Matrix, CliError> {
    Ok(GF2Matrix::parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitope::exactmath::qq;

    #[test]
    fn points() {
        assert_eq!(parse_point("2, -1/3").unwrap(), vec![qq(2, 1), qq(-1, 3)]);
        assert!(parse_point("2,x").is_err());
    }

    #[test]
    fn groups_accept_strings_and_integers() {
        let g = parse_group(r#"{"dim": 2, "generators": [[["0", "-1"], [1, 0]]]}"#, 100).unwrap();
        assert_eq!(g.order(), 4);
        assert!(parse_group(r#"{"dim": 2, "generators": [[["0"], [1, 0]]]}"#, 100).is_err());
        assert!(parse_group(r#"{"dim": 2}"#, 100).is_err());
    }

    #[test]
    fn graphs_in_both_formats() {
        let a = parse_graph("0 1\n1 2\n").unwrap();
        let b = parse_graph(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(a, b);
    }

    proptest::proptest! {
        #[test]
        fn rendered_points_parse_back(xs in proptest::collection::vec((-50i64..50, 1i64..20), 1..5)) {
            let v: Vec<Rational> = xs.iter().map(|&(n, d)| qq(n, d)).collect();
            let text = v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            proptest::prop_assert_eq!(parse_point(&text).unwrap(), v);
        }
    }

    #[test]
    fn digest_depends_on_content() {
        let mut a = Inputs::default();
        a.record("x", b"1");
        let mut b = Inputs::default();
        b.record("x", b"2");
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
    }
}
