//! Output documents and their three renderings.

use std::fmt::Write as _;

use anyhow::Result;
use num_complex::Complex64;
use quadft::mub::MubSet;
use quadft::verify::VerifyReport;
use quadft::{Amplitude, ComplexMatrix, ExactPhase, PhaseMatrix};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Matrix {
        matrix: MatrixPayload,
    },
    Mub {
        dim: usize,
        bases: Vec<BasisPayload>,
        verification: Option<MubVerification>,
    },
    Verify {
        suite: String,
        d_max: usize,
        seed: u64,
        passed: bool,
        checks: Vec<CheckPayload>,
    },
    Gauss {
        u: i64,
        v: String,
        w: i64,
        value: [f64; 2],
    },
    Transform {
        d: usize,
        r: String,
        a: usize,
        direction: String,
        output: Vec<[f64; 2]>,
    },
    Fbar {
        j: Vec<String>,
        alpha: Vec<usize>,
        value: [f64; 2],
        parity: i32,
        transposed: [f64; 2],
        cyclic: [f64; 2],
        conjugation_factor: [f64; 2],
    },
}

/// Exact matrices carry `[numerator, denominator]` turn pairs, `null` for zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MatrixPayload {
    Exact {
        dim: usize,
        amplitude: AmplitudeTag,
        entries: Vec<Vec<Option<[i64; 2]>>>,
    },
    Complex {
        rows: usize,
        cols: usize,
        entries: Vec<Vec<[f64; 2]>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeTag {
    One,
    InvSqrtDim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisPayload {
    pub label: String,
    pub vectors: MatrixPayload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MubVerification {
    pub tolerance: f64,
    pub max_deviation: f64,
    pub passed: bool,
    pub pairs: Vec<PairPayload>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairPayload {
    pub first: usize,
    pub second: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckPayload {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl MatrixPayload {
    pub fn exact(m: &PhaseMatrix) -> Self {
        let dim = m.dim();
        let entries = (0..dim)
            .map(|i| m.row(i).iter().map(|e| e.map(|p| [p.numer(), p.denom()])).collect())
            .collect();
        let amplitude = match m.amplitude() {
            Amplitude::One => AmplitudeTag::One,
            Amplitude::InvSqrtDim => AmplitudeTag::InvSqrtDim,
        };
        MatrixPayload::Exact { dim, amplitude, entries }
    }

    pub fn complex(m: &ComplexMatrix) -> Self {
        let entries = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect()).collect();
        MatrixPayload::Complex { rows: m.nrows(), cols: m.ncols(), entries }
    }

    fn complex_rows(&self) -> Vec<Vec<[f64; 2]>> {
        match self {
            MatrixPayload::Complex { entries, .. } => entries.clone(),
            MatrixPayload::Exact { dim, amplitude, entries } => {
                let amp = match amplitude {
                    AmplitudeTag::One => 1.0,
                    AmplitudeTag::InvSqrtDim => 1.0 / (*dim as f64).sqrt(),
                };
                entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                None => [0.0, 0.0],
                                Some([n, d]) => {
                                    let z = ExactPhase::new(*n, *d).map(|p| p.to_complex()).unwrap_or_default();
                                    pair(z * amp)
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }
}

impl Payload {
    pub fn mub(set: &MubSet, verify: bool, tolerance: f64) -> Self {
        let bases = set
            .bases
            .iter()
            .map(|b| BasisPayload {
                label: b.label.to_string(),
                vectors: match b.exact() {
                    Some(m) => MatrixPayload::exact(m),
                    None => MatrixPayload::complex(b.vectors()),
                },
            })
            .collect();
        let verification = verify.then(|| {
            let pairs: Vec<PairPayload> = set
                .pairwise_deviations()
                .into_iter()
                .map(|p| PairPayload { first: p.first, second: p.second, deviation: p.deviation })
                .collect();
            let max_deviation = pairs.iter().map(|p| p.deviation).fold(0.0, f64::max);
            MubVerification { tolerance, max_deviation, passed: max_deviation <= tolerance, pairs }
        });
        Payload::Mub { dim: set.dim, bases, verification }
    }

    pub fn verify(report: &VerifyReport) -> Self {
        Payload::Verify {
            suite: report.config.suite.to_string(),
            d_max: report.config.d_max,
            seed: report.config.seed,
            passed: report.passed(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckPayload {
                    suite: c.suite.to_string(),
                    name: c.name.clone(),
                    cases: c.cases,
                    max_residual: c.max_residual,
                    tolerance: c.tolerance,
                    passed: c.passed,
                })
                .collect(),
        }
    }
}

impl OutputDocument {
    pub fn new(command: String, payload: Payload) -> Self {
        OutputDocument { schema_version: SCHEMA_VERSION.to_string(), command, payload }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string(self)? + "\n"),
            Format::Csv => self.csv(),
            Format::Pretty => Ok(self.pretty()),
        }
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.payload {
            Payload::Matrix { matrix } => write_matrix_csv(&mut w, None, matrix)?,
            Payload::Mub { bases, .. } => {
                for (k, b) in bases.iter().enumerate() {
                    write_matrix_csv(&mut w, Some((k, k == 0)), &b.vectors)?;
                }
            }
            Payload::Verify { checks, .. } => {
                w.write_record(["suite", "name", "cases", "max_residual", "tolerance", "passed"])?;
                for c in checks {
                    w.serialize((&c.suite, &c.name, c.cases, c.max_residual, c.tolerance, c.passed))?;
                }
            }
            Payload::Gauss { value, .. } => {
                w.write_record(["re", "im"])?;
                w.serialize(value)?;
            }
            Payload::Transform { output, .. } => {
                w.write_record(["index", "re", "im"])?;
                for (i, z) in output.iter().enumerate() {
                    w.serialize((i, z[0], z[1]))?;
                }
            }
            Payload::Fbar { value, transposed, cyclic, conjugation_factor, .. } => {
                w.write_record(["quantity", "re", "im"])?;
                for (name, z) in [
                    ("fbar", value),
                    ("transposed", transposed),
                    ("cyclic", cyclic),
                    ("conjugation_factor", conjugation_factor),
                ] {
                    w.serialize((name, z[0], z[1]))?;
                }
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn pretty(&self) -> String {
        let mut s = String::new();
        match &self.payload {
            Payload::Matrix { matrix } => s.push_str(&pretty_matrix(matrix)),
            Payload::Mub { dim, bases, verification } => {
                let _ = writeln!(s, "{} bases in dimension {dim}", bases.len());
                for (k, b) in bases.iter().enumerate() {
                    let _ = writeln!(s, "\n[{k}] {}", b.label);
                    s.push_str(&pretty_matrix(&b.vectors));
                }
                if let Some(v) = verification {
                    let _ = writeln!(s);
                    for p in &v.pairs {
                        let _ = writeln!(s, "({}, {})  deviation {:.3e}", p.first, p.second, p.deviation);
                    }
                    let verdict = if v.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "max deviation {:.3e} (tolerance {:e}): {verdict}", v.max_deviation, v.tolerance);
                }
            }
            Payload::Verify { suite, d_max, seed, passed, checks } => {
                let _ = writeln!(s, "suite {suite}, d_max {d_max}, seed {seed}");
                for c in checks {
                    let verdict = if c.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "{verdict}  [{}] {}  ({} cases, residual {:.3e}, tolerance {:e})",
                        c.suite, c.name, c.cases, c.max_residual, c.tolerance
                    );
                }
                let _ = writeln!(s, "{}", if *passed { "all checks passed" } else { "some checks failed" });
            }
            Payload::Gauss { u, v, w, value } => {
                let _ = writeln!(s, "S({u}, {v}, {w}) = {}", fmt_complex(*value));
            }
            Payload::Transform { d, r, a, direction, output } => {
                let _ = writeln!(s, "{direction} transform, d = {d}, r = {r}, a = {a}");
                for (i, z) in output.iter().enumerate() {
                    let _ = writeln!(s, "{i:>4}  {}", fmt_complex(*z));
                }
            }
            Payload::Fbar { j, alpha, value, parity, transposed, cyclic, conjugation_factor } => {
                let (jj, aa) = (j.join(", "), alpha.iter().map(usize::to_string).collect::<Vec<_>>().join(", "));
                let _ = writeln!(s, "fbar(j = {jj}; α = {aa}) = {}", fmt_complex(*value));
                let _ = writeln!(s, "transposed columns: {}  (parity {parity:+})", fmt_complex(*transposed));
                let _ = writeln!(s, "cyclic columns:     {}", fmt_complex(*cyclic));
                let _ = writeln!(s, "conj(fbar) = {} · fbar", fmt_complex(*conjugation_factor));
            }
        }
        s
    }
}

fn write_matrix_csv(w: &mut csv::Writer<Vec<u8>>, basis: Option<(usize, bool)>, m: &MatrixPayload) -> Result<()> {
    let rows = m.complex_rows();
    let cols = rows.first().map_or(0, Vec::len);
    let header_needed = basis.is_none_or(|(_, first)| first);
    if header_needed {
        let mut header: Vec<String> = Vec::new();
        if basis.is_some() {
            header.push("basis".into());
        }
        for j in 0..cols {
            header.push(format!("c{j}_re"));
            header.push(format!("c{j}_im"));
        }
        w.write_record(&header)?;
    }
    for row in rows {
        let mut rec: Vec<String> = basis.map(|(k, _)| vec![k.to_string()]).unwrap_or_default();
        for z in row {
            rec.push(z[0].to_string());
            rec.push(z[1].to_string());
        }
        w.write_record(&rec)?;
    }
    Ok(())
}

fn fmt_complex(z: [f64; 2]) -> String {
    let clean = |x: f64| if x.abs() < 5e-16 { 0.0 } else { x };
    let (re, im) = (clean(z[0]), clean(z[1]));
    if im >= 0.0 {
        format!("{re:.12} + {im:.12}i")
    } else {
        format!("{re:.12} - {:.12}i", -im)
    }
}

fn pretty_matrix(m: &MatrixPayload) -> String {
    let mut s = String::new();
    match m {
        MatrixPayload::Exact { dim, amplitude, entries } => {
            let cells: Vec<Vec<String>> = entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| match e {
                            None => "0".to_string(),
                            Some([n, d]) => q_power(*n, *d, *dim),
                        })
                        .collect()
                })
                .collect();
            let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
            if *amplitude == AmplitudeTag::InvSqrtDim {
                let _ = writeln!(s, "1/√{dim} ×");
            }
            let _ = writeln!(s, "q = exp(2πi/{dim})");
            for row in cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(s, "[ {} ]", line.join("  "));
            }
        }
        MatrixPayload::Complex { entries, .. } => {
            for row in entries {
                let line: Vec<String> = row.iter().map(|z| format!("{:>32}", fmt_complex(*z))).collect();
                let _ = writeln!(s, "[{} ]", line.join(" "));
            }
        }
    }
    s
}

/// Writes the phase `exp(2πi n/den)` as a power of `q = exp(2πi/dim)`.
fn q_power(n: i64, den: i64, dim: usize) -> String {
    let e = num_rational::Rational64::new(n * dim as i64, den);
    if e.is_integer() {
        match e.to_integer() {
            0 => "1".to_string(),
            1 => "q".to_string(),
            k => format!("q^{k}"),
        }
    } else {
        format!("q^({e})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;
    use quadft::qdft::{fra_matrix, QdftParams};

    #[test]
    fn q_powers() {
        assert_eq!(q_power(0, 1, 6), "1");
        assert_eq!(q_power(1, 6, 6), "q");
        assert_eq!(q_power(1, 2, 6), "q^3");
        assert_eq!(q_power(1, 12, 6), "q^(1/2)");
    }

    #[test]
    fn exact_json_round_trip() {
        let f = fra_matrix(&QdftParams::exact(3, Rational64::new(1, 2), 1).unwrap()).unwrap();
        let doc = OutputDocument::new("matrix fra".into(), Payload::Matrix { matrix: MatrixPayload::exact(&f) });
        let first = doc.render(Format::Json).unwrap();
        let back: OutputDocument = serde_json::from_str(&first).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.render(Format::Json).unwrap(), first);
    }

    #[test]
    fn csv_matrix_header() {
        let m = MatrixPayload::exact(&PhaseMatrix::identity(2));
        let doc = OutputDocument::new("matrix".into(), Payload::Matrix { matrix: m });
        let out = doc.render(Format::Csv).unwrap();
        assert!(out.starts_with("c0_re,c0_im,c1_re,c1_im\n1,0,0,0\n"));
    }
}
