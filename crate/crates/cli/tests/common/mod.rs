#![allow(dead_code)]

use serde_json::Value;

pub fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Runs the CLI in process and returns the JSON payload.
pub fn cli(args: &[&str]) -> Value {
    let argv = std::iter::once("orbitope").chain(args.iter().copied());
    match orbitope_cli::dispatch(argv) {
        Ok(report) => report.to_json(),
        Err(e) => panic!("orbitope {}: {e}", args.join(" ")),
    }
}

/// The exit code of a failing invocation.
pub fn cli_code(args: &[&str]) -> i32 {
    let argv = std::iter::once("orbitope").chain(args.iter().copied());
    orbitope_cli::run(argv).code
}

pub fn order(report: &Value) -> &str {
    report["result"]["group"]["order"].as_str().expect("order string")
}

use orbitope::exactmath::{q, Matrix, Rational};
use orbitope::orbit::{close_group, MatrixGroup};

pub fn m(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_ints(rows)
}

pub fn pt(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn group(dim: usize, gens: &[Matrix<Rational>]) -> MatrixGroup {
    close_group(dim, gens, 1000).expect("finite group")
}

pub fn c2() -> MatrixGroup {
    group(1, &[m(&[&[-1]])])
}

pub fn c3_plane() -> MatrixGroup {
    group(2, &[m(&[&[0, -1], &[1, -1]])])
}

pub fn c4() -> MatrixGroup {
    group(2, &[m(&[&[0, -1], &[1, 0]])])
}

pub fn d4() -> MatrixGroup {
    group(2, &[m(&[&[0, -1], &[1, 0]]), m(&[&[1, 0], &[0, -1]])])
}

pub fn v4() -> MatrixGroup {
    group(2, &[m(&[&[-1, 0], &[0, 1]]), m(&[&[1, 0], &[0, -1]])])
}

pub fn c2_cubed() -> MatrixGroup {
    group(
        3,
        &[
            m(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
            m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
        ],
    )
}

pub fn s3_plane() -> MatrixGroup {
    group(2, &[m(&[&[0, -1], &[1, -1]]), m(&[&[0, 1], &[1, 0]])])
}

/// Rotation by 60° in the hexagonal lattice basis.
pub fn c6_hex() -> MatrixGroup {
    group(2, &[m(&[&[1, -1], &[1, 0]])])
}

pub fn d6_hex() -> MatrixGroup {
    group(2, &[m(&[&[1, -1], &[1, 0]]), m(&[&[0, 1], &[1, 0]])])
}

pub fn a4() -> MatrixGroup {
    group(
        3,
        &[
            m(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
            m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
        ],
    )
}

/// Left multiplication by `i` and `j` on the quaternions in the basis
/// `1, i, j, k`.
pub fn q8() -> MatrixGroup {
    group(
        4,
        &[
            m(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]),
            m(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]),
        ],
    )
}

/// Natural permutation representation of `S₃`.
pub fn s3_natural() -> MatrixGroup {
    group(
        3,
        &[
            m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
            m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
        ],
    )
}

pub fn library() -> Vec<(&'static str, MatrixGroup)> {
    vec![
        ("C2", c2()),
        ("C3", c3_plane()),
        ("C4", c4()),
        ("D4", d4()),
        ("V4", v4()),
        ("C2^3", c2_cubed()),
        ("S3", s3_plane()),
        ("C6", c6_hex()),
        ("D6", d6_hex()),
        ("A4", a4()),
        ("Q8", q8()),
    ]
}

/// Every permutation of `0..n`, in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Linear symmetries found by solving `A v_i = v_{σ(i)}` for every `σ`.
pub fn brute_force_linsym(
    family: &orbitope::symcore::VectorFamily<Rational>,
) -> std::collections::BTreeSet<orbitope::perm::Permutation> {
    let vt = family.columns().transpose();
    let mut out = std::collections::BTreeSet::new();
    for images in all_permutations(family.len()) {
        let permuted: Vec<Vec<Rational>> = images.iter().map(|&j| family.vector(j)).collect();
        let rhs = Matrix::from_rows(permuted);
        // Aᵗ solves Vᵗ Aᵗ = (V P)ᵗ.
        let Ok(at) = vt.solve_exact(&rhs) else {
            continue;
        };
        if vt.mul(&at) == rhs && at.det() != q(0) {
            out.insert(orbitope::perm::Permutation::new(images).unwrap());
        }
    }
    out
}
