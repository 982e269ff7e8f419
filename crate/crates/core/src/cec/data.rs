//! Suite data: the seeded generator and the portable text format.
//!
//! ```text
//! # comment
//! cec14 <dim> <function-id>
//! shift: <dim reals>
//! rot:
//! <dim reals>          (dim rows)
//! perm: <dim 1-based indices>     (hybrid functions and hybrid members)
//! sigma: ... / lambda: ... / bias: ...   (compositions, one value per member)
//! ```
//!
//! A composition record repeats `shift:`/`rot:`/`perm:` once per member, in
//! member order. Kernels, proportions and member lists come from the catalog
//! and are not stored.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::catalog::{self, Definition, FUNCTION_COUNT};
use super::transform::{chunk_sizes, CompositionMember, CompositionSpec, HybridSpec, MemberFunction, Rotation, TransformData};
use super::{Suite, SuiteFunction, SEARCH_LOWER, SEARCH_UPPER};
use crate::rng::{cell_id, derive_stream, RngStream};

pub const STANDARD_DIMS: [usize; 4] = [10, 30, 50, 100];

/// Rotations loaded from disk may deviate from orthogonality by at most this much.
pub const LOAD_ORTHOGONALITY_TOLERANCE: f64 = 1e-8;

const SHIFT_RANGE: f64 = 80.0;

#[derive(Debug, Error)]
pub enum SuiteDataError {
    #[error("suite data file not found: {0}")]
    Missing(PathBuf),

    #[error("reading suite data: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("F{function}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        function: usize,
        expected: usize,
        found: usize,
    },

    #[error("F{function}: rotation matrix is not orthogonal (max |M^T M - I| = {deviation:e})")]
    NotOrthogonal { function: usize, deviation: f64 },

    #[error("F{function}: {message}")]
    Invalid { function: usize, message: String },

    #[error("suite data has no record for F{0}")]
    MissingFunction(usize),
}

/// Uniformly distributed orthogonal matrix: Gram-Schmidt (applied twice) on a
/// standard normal matrix.
pub fn random_rotation(dim: usize, rng: &mut RngStream) -> Rotation {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..dim).map(|_| (0..dim).map(|_| rng.next_normal()).collect()).collect();
        if orthonormalize(&mut cols) {
            // columns of Q become the matrix columns
            let rows: Vec<Vec<f64>> = (0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
            return Rotation::from_rows(rows).expect("square");
        }
    }
}

fn orthonormalize(cols: &mut [Vec<f64>]) -> bool {
    for i in 0..cols.len() {
        for _pass in 0..2 {
            for j in 0..i {
                let dot: f64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
                let (head, tail) = cols.split_at_mut(i);
                for (v, q) in tail[0].iter_mut().zip(&head[j]) {
                    *v -= dot * q;
                }
            }
        }
        let norm = cols[i].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return false;
        }
        for v in cols[i].iter_mut() {
            *v /= norm;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq)]
struct MemberRecord {
    shift: Vec<f64>,
    rotation: Vec<Vec<f64>>,
    /// 0-based.
    perm: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
struct FunctionRecord {
    id: usize,
    line: usize,
    members: Vec<MemberRecord>,
    sigma: Option<Vec<f64>>,
    lambda: Option<Vec<f64>>,
    bias: Option<Vec<f64>>,
}

fn generate_member(member_id: usize, dim: usize, rng: &mut RngStream) -> MemberRecord {
    let shift: Vec<f64> = (0..dim).map(|_| rng.next_in(-SHIFT_RANGE, SHIFT_RANGE)).collect();
    let (rotation, perm) = match catalog::definition(member_id) {
        Definition::Simple { rotated: true, .. } => (random_rotation(dim, rng), None),
        Definition::Simple { rotated: false, .. } => (Rotation::identity(dim), None),
        Definition::Hybrid { proportions, .. } => {
            let perm = rng.permutation(dim);
            let sizes = chunk_sizes(proportions, dim).unwrap_or_else(|_| vec![dim]);
            let blocks: Vec<Rotation> = sizes.iter().map(|&n| random_rotation(n, rng)).collect();
            (Rotation::block_diagonal(&blocks), Some(perm))
        }
        Definition::Composition { .. } => unreachable!("compositions do not nest"),
    };
    let rotation = (0..dim).map(|i| rotation.row(i).to_vec()).collect();
    MemberRecord { shift, rotation, perm }
}

fn generate_record(seed: u64, dim: usize, id: usize) -> FunctionRecord {
    let mut rng = derive_stream(seed, cell_id(&["cec14", &dim.to_string(), &id.to_string()]));
    let def = catalog::definition(id);
    let members = match def {
        Definition::Composition { members, .. } => members.iter().map(|&m| generate_member(m, dim, &mut rng)).collect(),
        _ => vec![generate_member(id, dim, &mut rng)],
    };
    FunctionRecord {
        id,
        line: 0,
        members,
        sigma: None,
        lambda: None,
        bias: None,
    }
}

/// Seeded suite data: shifts uniform in `[-80, 80]`, random orthogonal
/// rotations (block-diagonal per chunk for hybrids), random permutations.
/// Each function draws from its own stream, so the result depends only on
/// `(seed, dim)`.
///
/// Dimensions outside [`STANDARD_DIMS`] are accepted as long as every hybrid
/// chunk is nonempty (`dim >= 5`).
pub fn generate_suite_data(seed: u64, dim: usize) -> Result<Suite, SuiteDataError> {
    let records: Vec<FunctionRecord> = (1..=FUNCTION_COUNT).map(|id| generate_record(seed, dim, id)).collect();
    build_suite(dim, records, f64::INFINITY)
}

fn check_shift(id: usize, dim: usize, shift: &[f64]) -> Result<(), SuiteDataError> {
    if shift.len() != dim {
        return Err(SuiteDataError::DimensionMismatch {
            function: id,
            expected: dim,
            found: shift.len(),
        });
    }
    if let Some(v) = shift.iter().find(|v| !(SEARCH_LOWER < **v && **v < SEARCH_UPPER)) {
        return Err(SuiteDataError::Invalid {
            function: id,
            message: format!("shift component {v} is not strictly inside the search box"),
        });
    }
    Ok(())
}

fn check_rotation(id: usize, dim: usize, rows: &[Vec<f64>], tolerance: f64) -> Result<Rotation, SuiteDataError> {
    let mismatch = |found| SuiteDataError::DimensionMismatch {
        function: id,
        expected: dim,
        found,
    };
    if rows.len() != dim {
        return Err(mismatch(rows.len()));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != dim) {
        return Err(mismatch(r.len()));
    }
    let m = Rotation::from_rows(rows.to_vec()).map_err(|_| mismatch(0))?;
    if tolerance.is_finite() {
        let deviation = m.orthogonality_error();
        if deviation.is_nan() || deviation > tolerance {
            return Err(SuiteDataError::NotOrthogonal { function: id, deviation });
        }
    }
    Ok(m)
}

fn check_perm(id: usize, dim: usize, perm: Option<&Vec<usize>>) -> Result<Vec<usize>, SuiteDataError> {
    let perm = perm.ok_or_else(|| SuiteDataError::Invalid {
        function: id,
        message: "hybrid data needs a `perm:` line".into(),
    })?;
    if perm.len() != dim {
        return Err(SuiteDataError::DimensionMismatch {
            function: id,
            expected: dim,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; dim];
    for &p in perm {
        if p >= dim || std::mem::replace(&mut seen[p], true) {
            return Err(SuiteDataError::Invalid {
                function: id,
                message: "`perm:` is not a permutation of 1..=dim".into(),
            });
        }
    }
    Ok(perm.clone())
}

fn build_member(
    owner: usize,
    member_id: usize,
    dim: usize,
    rec: &MemberRecord,
    tolerance: f64,
) -> Result<MemberFunction, SuiteDataError> {
    check_shift(owner, dim, &rec.shift)?;
    let rotation = check_rotation(owner, dim, &rec.rotation, tolerance)?;
    match catalog::definition(member_id) {
        Definition::Simple { kernel, .. } => Ok(MemberFunction::Simple {
            kernel,
            transform: TransformData {
                shift: rec.shift.clone(),
                rotation,
                scale: kernel.input_scale(),
                bias: 0.0,
            },
        }),
        Definition::Hybrid { kernels, proportions } => {
            let permutation = check_perm(owner, dim, rec.perm.as_ref())?;
            chunk_sizes(proportions, dim).map_err(|e| SuiteDataError::Invalid {
                function: owner,
                message: e.to_string(),
            })?;
            Ok(MemberFunction::Hybrid {
                spec: HybridSpec {
                    kernels: kernels.to_vec(),
                    proportions: proportions.to_vec(),
                    permutation,
                },
                transform: TransformData {
                    shift: rec.shift.clone(),
                    rotation,
                    scale: 1.0,
                    bias: 0.0,
                },
            })
        }
        Definition::Composition { .. } => unreachable!("compositions do not nest"),
    }
}

fn build_function(dim: usize, rec: &FunctionRecord, tolerance: f64) -> Result<SuiteFunction, SuiteDataError> {
    let id = rec.id;
    let def = catalog::definition(id);
    if rec.members.len() != def.member_count() {
        return Err(SuiteDataError::Invalid {
            function: id,
            message: format!("expected {} shift/rot block(s), found {}", def.member_count(), rec.members.len()),
        });
    }
    let bias = catalog::function_bias(id);
    match def {
        Definition::Simple { .. } | Definition::Hybrid { .. } => {
            let member = build_member(id, id, dim, &rec.members[0], tolerance)?;
            Ok(match member {
                MemberFunction::Simple { kernel, mut transform } => {
                    transform.bias = bias;
                    SuiteFunction::Simple { id, kernel, transform }
                }
                MemberFunction::Hybrid { spec, mut transform } => {
                    transform.bias = bias;
                    SuiteFunction::Hybrid { id, spec, transform }
                }
            })
        }
        Definition::Composition { members, sigma, lambda } => {
            let n = members.len();
            let pick = |given: &Option<Vec<f64>>, default: Vec<f64>, what: &str| -> Result<Vec<f64>, SuiteDataError> {
                match given {
                    Some(v) if v.len() != n => Err(SuiteDataError::Invalid {
                        function: id,
                        message: format!("`{what}:` has {} values for {n} members", v.len()),
                    }),
                    Some(v) => Ok(v.clone()),
                    None => Ok(default),
                }
            };
            let sigma = pick(&rec.sigma, sigma.to_vec(), "sigma")?;
            let lambda = pick(&rec.lambda, lambda.to_vec(), "lambda")?;
            let biases = pick(&rec.bias, (0..n).map(catalog::member_bias).collect(), "bias")?;
            if sigma.iter().chain(&lambda).any(|v| v.is_nan() || *v <= 0.0) {
                return Err(SuiteDataError::Invalid {
                    function: id,
                    message: "sigma and lambda must be positive".into(),
                });
            }
            let members = members
                .iter()
                .zip(&rec.members)
                .enumerate()
                .map(|(k, (&mid, mrec))| {
                    Ok(CompositionMember {
                        function: build_member(id, mid, dim, mrec, tolerance)?,
                        sigma: sigma[k],
                        lambda: lambda[k],
                        bias: biases[k],
                    })
                })
                .collect::<Result<Vec<_>, SuiteDataError>>()?;
            Ok(SuiteFunction::Composition {
                id,
                spec: CompositionSpec { members, bias },
            })
        }
    }
}

fn build_suite(dim: usize, mut records: Vec<FunctionRecord>, tolerance: f64) -> Result<Suite, SuiteDataError> {
    records.sort_by_key(|r| r.id);
    let mut functions = Vec::with_capacity(FUNCTION_COUNT);
    for id in 1..=FUNCTION_COUNT {
        let rec = records.iter().find(|r| r.id == id).ok_or(SuiteDataError::MissingFunction(id))?;
        functions.push(build_function(dim, rec, tolerance)?);
    }
    Ok(Suite::new(dim, functions))
}

fn parse_reals(line: usize, text: &str) -> Result<Vec<f64>, SuiteDataError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| SuiteDataError::Malformed {
                    line,
                    message: format!("`{t}` is not a finite real"),
                })
        })
        .collect()
}

/// Parses suite text for dimension `dim`.
pub fn parse_suite_data(text: &str, dim: usize) -> Result<Suite, SuiteDataError> {
    let mut records: Vec<FunctionRecord> = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    while let Some((ln, line)) = lines.next() {
        let (key, rest) = match line.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (line, ""),
        };
        if let Some(header) = key.strip_prefix("cec14") {
            let fields: Vec<&str> = header.split_whitespace().collect();
            let [d, id] = fields[..] else {
                return Err(SuiteDataError::Malformed {
                    line: ln,
                    message: "header must read `cec14 <dim> <function-id>`".into(),
                });
            };
            let parse = |t: &str| {
                t.parse::<usize>().map_err(|_| SuiteDataError::Malformed {
                    line: ln,
                    message: format!("`{t}` is not a positive integer"),
                })
            };
            let (d, id) = (parse(d)?, parse(id)?);
            if !(1..=FUNCTION_COUNT).contains(&id) {
                return Err(SuiteDataError::Malformed {
                    line: ln,
                    message: format!("function id {id} outside 1..=30"),
                });
            }
            if d != dim {
                return Err(SuiteDataError::DimensionMismatch {
                    function: id,
                    expected: dim,
                    found: d,
                });
            }
            if records.iter().any(|r| r.id == id) {
                return Err(SuiteDataError::Malformed {
                    line: ln,
                    message: format!("duplicate record for F{id}"),
                });
            }
            records.push(FunctionRecord {
                id,
                line: ln,
                members: Vec::new(),
                sigma: None,
                lambda: None,
                bias: None,
            });
            continue;
        }

        let rec = records.last_mut().ok_or_else(|| SuiteDataError::Malformed {
            line: ln,
            message: "data before the first `cec14` header".into(),
        })?;
        let needs_member = |rec: &mut FunctionRecord| -> Result<usize, SuiteDataError> {
            rec.members.len().checked_sub(1).ok_or(SuiteDataError::Malformed {
                line: ln,
                message: format!("`{key}:` before any `shift:` line"),
            })
        };
        match key {
            "shift" => rec.members.push(MemberRecord {
                shift: parse_reals(ln, rest)?,
                rotation: Vec::new(),
                perm: None,
            }),
            "rot" => {
                let m = needs_member(rec)?;
                if !rest.is_empty() {
                    return Err(SuiteDataError::Malformed {
                        line: ln,
                        message: "`rot:` rows start on the following line".into(),
                    });
                }
                let mut rows = Vec::with_capacity(dim);
                for _ in 0..dim {
                    let (rl, row) = lines.next().ok_or(SuiteDataError::Malformed {
                        line: ln,
                        message: "unexpected end of file inside `rot:`".into(),
                    })?;
                    if row.contains(':') || row.starts_with("cec14") {
                        return Err(SuiteDataError::DimensionMismatch {
                            function: rec.id,
                            expected: dim,
                            found: rows.len(),
                        });
                    }
                    rows.push(parse_reals(rl, row)?);
                }
                rec.members[m].rotation = rows;
            }
            "perm" => {
                let m = needs_member(rec)?;
                let idx = rest
                    .split_whitespace()
                    .map(|t| match t.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(SuiteDataError::Malformed {
                            line: ln,
                            message: format!("`{t}` is not a 1-based index"),
                        }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rec.members[m].perm = Some(idx);
            }
            "sigma" => rec.sigma = Some(parse_reals(ln, rest)?),
            "lambda" => rec.lambda = Some(parse_reals(ln, rest)?),
            "bias" => rec.bias = Some(parse_reals(ln, rest)?),
            other => {
                return Err(SuiteDataError::Malformed {
                    line: ln,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    for rec in &records {
        if rec.members.iter().any(|m| m.rotation.is_empty()) {
            return Err(SuiteDataError::Malformed {
                line: rec.line,
                message: format!("F{}: every `shift:` needs a `rot:` block", rec.id),
            });
        }
    }
    build_suite(dim, records, LOAD_ORTHOGONALITY_TOLERANCE)
}

/// Loads all thirty functions for `dim` from `path`.
pub fn load_suite_data(path: &Path, dim: usize) -> Result<Suite, SuiteDataError> {
    if !path.exists() {
        return Err(SuiteDataError::Missing(path.to_path_buf()));
    }
    let text = std::fs::read_to_string(path)?;
    parse_suite_data(&text, dim)
}

/// Loads `path`; when the file is absent and `allow_fallback` is set, generates from `seed`.
pub fn load_or_generate(path: &Path, dim: usize, seed: u64, allow_fallback: bool) -> Result<Suite, SuiteDataError> {
    match load_suite_data(path, dim) {
        Err(SuiteDataError::Missing(_)) if allow_fallback => generate_suite_data(seed, dim),
        other => other,
    }
}

fn write_member(out: &mut String, m: &MemberFunction) {
    let (t, perm) = match m {
        MemberFunction::Simple { transform, .. } => (transform, None),
        MemberFunction::Hybrid { spec, transform } => (transform, Some(&spec.permutation)),
    };
    let join = |v: &[f64]| v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "shift: {}", join(&t.shift));
    out.push_str("rot:\n");
    for i in 0..t.rotation.dim() {
        let _ = writeln!(out, "{}", join(t.rotation.row(i)));
    }
    if let Some(p) = perm {
        let idx: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "perm: {}", idx.join(" "));
    }
}

impl Suite {
    /// Serializes to the text format; parsing the result reproduces this suite exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("# CEC-2014-style suite data, dimension {}\n", self.dim);
        let join = |v: Vec<f64>| v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(" ");
        for f in self.functions() {
            let _ = writeln!(out, "cec14 {} {}", self.dim, f.id());
            match f {
                SuiteFunction::Simple { kernel, transform, .. } => write_member(
                    &mut out,
                    &MemberFunction::Simple {
                        kernel: *kernel,
                        transform: transform.clone(),
                    },
                ),
                SuiteFunction::Hybrid { spec, transform, .. } => write_member(
                    &mut out,
                    &MemberFunction::Hybrid {
                        spec: spec.clone(),
                        transform: transform.clone(),
                    },
                ),
                SuiteFunction::Composition { spec, .. } => {
                    for m in &spec.members {
                        write_member(&mut out, &m.function);
                    }
                    let _ = writeln!(out, "sigma: {}", join(spec.members.iter().map(|m| m.sigma).collect()));
                    let _ = writeln!(out, "lambda: {}", join(spec.members.iter().map(|m| m.lambda).collect()));
                    let _ = writeln!(out, "bias: {}", join(spec.members.iter().map(|m| m.bias).collect()));
                }
            }
        }
        out
    }
}

pub fn write_suite_data(suite: &Suite, path: &Path) -> Result<(), SuiteDataError> {
    std::fs::write(path, suite.to_text())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_rotations_are_orthogonal() {
        let mut rng = RngStream::new(31);
        for dim in [1, 2, 5, 10, 30] {
            assert!(random_rotation(dim, &mut rng).orthogonality_error() < 1e-10);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_suite_data(42, 10).unwrap();
        let b = generate_suite_data(42, 10).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        let c = generate_suite_data(43, 10).unwrap();
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn generated_data_is_well_formed() {
        let s = generate_suite_data(1, 10).unwrap();
        for f in s.functions() {
            let (shifts, rots): (Vec<&[f64]>, Vec<&Rotation>) = match f {
                SuiteFunction::Simple { transform, .. } | SuiteFunction::Hybrid { transform, .. } => {
                    (vec![&transform.shift], vec![&transform.rotation])
                }
                SuiteFunction::Composition { spec, .. } => spec
                    .members
                    .iter()
                    .map(|m| match &m.function {
                        MemberFunction::Simple { transform, .. } | MemberFunction::Hybrid { transform, .. } => {
                            (transform.shift.as_slice(), &transform.rotation)
                        }
                    })
                    .unzip(),
            };
            for o in shifts {
                assert!(o.iter().all(|v| (-100.0..100.0).contains(v) && v.abs() <= 80.0));
            }
            for m in rots {
                assert!(m.orthogonality_error() < 1e-10, "F{}", f.id());
            }
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let s = generate_suite_data(5, 10).unwrap();
        let text = s.to_text();
        let back = parse_suite_data(&text, 10).unwrap();
        assert_eq!(back.to_text(), text);
        for (a, b) in s.functions().zip(back.functions()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tiny_dimensions_are_rejected() {
        assert!(matches!(generate_suite_data(1, 4), Err(SuiteDataError::Invalid { .. })));
        assert!(generate_suite_data(1, 5).is_ok());
    }
}
