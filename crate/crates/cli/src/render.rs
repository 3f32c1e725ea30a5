use kohn_spectra::harmonics::{basis_hm, basis_hm_bidegrees, basis_hpq_derivative};
use kohn_spectra::rossi::{
    closed_form_block, cluster_eigenvalues, coefficients, exact_limit, BlockKind, Entries,
    MatrixMode, OperatorComponents, OperatorMatrix, EXACT_LIMIT_ENV,
};
use kohn_spectra::scalar::format_rational;
use kohn_spectra::tridiag::{bound_chain_with_tol, sweep, symmetrize, BoundReport, SweepRow};
use kohn_spectra::{Error, RossiParam};
use serde::Serialize;

use crate::config::{Command, Format, Mode};
use crate::matrix_io::{self, MatrixDoc, MatrixRows};
use crate::{CliError, Outcome};

pub const SWEEP_HEADER: [&str; 8] = [
    "k",
    "parity",
    "t",
    "h",
    "lambda_min",
    "det_ratio",
    "paper_bound",
    "corrected_bound",
];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn comment(out: &mut String, line: &str) {
    out.push_str("# ");
    out.push_str(line);
    out.push('\n');
}

fn start(format: Format, header: Option<&str>) -> String {
    let mut out = String::new();
    if let (Some(h), Format::Text | Format::Csv) = (header, format) {
        comment(&mut out, h);
    }
    out
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<I, R>(out: &mut String, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Config(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(e.to_string()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(())
}

fn check_full_degree(m: u32) -> Result<(), CliError> {
    let limit = exact_limit();
    if m > 2 * limit {
        return Err(CliError::Config(format!(
            "H_{m} is above the exact-arithmetic cap m <= {} (raise {EXACT_LIMIT_ENV})",
            2 * limit
        )));
    }
    Ok(())
}

pub fn run(
    command: &Command,
    format: Format,
    header: Option<&str>,
    tol: f64,
) -> Result<Outcome, CliError> {
    let ok = |body| {
        Ok(Outcome {
            body,
            failure: None,
        })
    };
    match command {
        Command::Basis { m, p, q } => ok(basis(*m, *p, *q, format, header)?),
        Command::Matrix { m, t, mode } => ok(matrix(*m, t, *mode, format, header)?),
        Command::Blocks { k, t } => ok(blocks(*k, t, format, header)?),
        Command::Eigs { k, m, t } => ok(eigs(*k, *m, t, format, header, tol)?),
        Command::Bound { k, t } => bound(*k, t, format, header, tol),
        Command::Sweep {
            kmax,
            t_grid,
            t,
            parity,
            zero_threshold,
        } => {
            let grid = t_grid.as_ref().map_or_else(|| t.clone(), |g| g.0.clone());
            run_sweep(
                *kmax,
                &grid,
                (*parity).into(),
                *zero_threshold,
                format,
                header,
            )
        }
    }
}

fn basis(
    m: Option<u32>,
    p: Option<u32>,
    q: Option<u32>,
    format: Format,
    header: Option<&str>,
) -> Result<String, CliError> {
    let (label, elements, bidegrees) = match (m, p, q) {
        (Some(m), _, _) => (
            format!("H_{m}"),
            basis_hm(m).elements,
            basis_hm_bidegrees(m),
        ),
        (None, Some(p), Some(q)) => {
            let b = basis_hpq_derivative(p, q).elements;
            let n = b.len();
            (format!("H_({p},{q})"), b, vec![(p, q); n])
        }
        _ => return Err(CliError::Config("give --m or both --p and --q".into())),
    };
    let mut out = start(format, header);
    match format {
        Format::Text => {
            comment(
                &mut out,
                &format!("basis of {label}: {} elements", elements.len()),
            );
            for f in &elements {
                out.push_str(&f.to_string());
                out.push('\n');
            }
        }
        Format::Csv => csv_rows(
            &mut out,
            &["index", "p", "q", "polynomial"],
            elements
                .iter()
                .zip(&bidegrees)
                .enumerate()
                .map(|(i, (f, (p, q)))| {
                    [i.to_string(), p.to_string(), q.to_string(), f.to_string()]
                }),
        )?,
        Format::Json => {
            let strings: Vec<String> = elements.iter().map(ToString::to_string).collect();
            out.push_str(&json(&strings)?);
        }
    }
    Ok(out)
}

fn describe_t(t: &RossiParam) -> String {
    format!("t = {t}; h factored out; h = {}", format_rational(&t.h()))
}

fn matrix_doc(mat: &OperatorMatrix, t: &RossiParam) -> MatrixDoc {
    let n = mat.dim;
    let rows = match &mat.entries {
        Entries::Exact(e) => MatrixRows::Exact(
            e.chunks(n.max(1))
                .take(n)
                .map(|row| row.iter().map(|c| format_rational(&c.re)).collect())
                .collect(),
        ),
        Entries::Numeric(e) => {
            MatrixRows::Numeric(e.chunks(n.max(1)).take(n).map(<[f64]>::to_vec).collect())
        }
    };
    MatrixDoc {
        degree: mat.degree,
        t: t.to_string(),
        h: format_rational(&t.h()),
        h_factored: mat.h_factored,
        basis: mat.basis_labels.iter().map(ToString::to_string).collect(),
        rows,
    }
}

fn matrix(
    m: u32,
    t: &RossiParam,
    mode: Mode,
    format: Format,
    header: Option<&str>,
) -> Result<String, CliError> {
    check_full_degree(m)?;
    let mode = match mode {
        Mode::Exact => MatrixMode::Exact,
        Mode::Numeric => MatrixMode::Numeric,
    };
    let mat = OperatorComponents::for_degree(m)?.assemble(t, mode);
    if let Entries::Exact(e) = &mat.entries {
        if e.iter().any(|c| !c.is_real()) {
            return Err(CliError::Config("matrix has non-real entries".into()));
        }
    }
    let doc = matrix_doc(&mat, t);
    let mut out = start(format, header);
    match format {
        Format::Text => {
            comment(&mut out, &format!("box_b^t on H_{m}; {}", describe_t(t)));
            out.push_str(&matrix_io::to_text(&doc));
        }
        Format::Csv => {
            comment(&mut out, &format!("box_b^t on H_{m}; {}", describe_t(t)));
            let cells: Vec<[String; 3]> = match &doc.rows {
                MatrixRows::Exact(r) => triplets(r, |v| v != "0", Clone::clone),
                MatrixRows::Numeric(r) => triplets(r, |v| *v != 0.0, |v| f17(*v)),
            };
            csv_rows(&mut out, &["row", "col", "value"], cells)?;
        }
        Format::Json => out.push_str(&json(&doc)?),
    }
    Ok(out)
}

fn triplets<T>(
    rows: &[Vec<T>],
    keep: impl Fn(&T) -> bool,
    show: impl Fn(&T) -> String,
) -> Vec<[String; 3]> {
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate().filter(|(_, v)| keep(v)) {
            out.push([i.to_string(), j.to_string(), show(v)]);
        }
    }
    out
}

#[derive(Serialize)]
struct BlockDoc {
    kind: &'static str,
    k: u32,
    t: String,
    h: String,
    /// Copies of this block inside H_{2k-1}.
    multiplicity: u32,
    diag: Vec<String>,
    upper: Vec<String>,
    lower: Vec<String>,
    /// `u_j = upper_coeff_j · t`
    upper_coeff: Vec<i64>,
}

fn blocks(
    k: u32,
    t: &RossiParam,
    format: Format,
    header: Option<&str>,
) -> Result<String, CliError> {
    let docs: Vec<BlockDoc> = [BlockKind::V, BlockKind::W]
        .into_iter()
        .map(|kind| {
            let b = closed_form_block(k, kind, t)?;
            let fmt = |v: &[num_rational::BigRational]| v.iter().map(format_rational).collect();
            Ok(BlockDoc {
                kind: kind.as_str(),
                k,
                t: t.to_string(),
                h: format_rational(&t.h()),
                multiplicity: 2 * k,
                diag: fmt(&b.diag),
                upper: fmt(&b.upper),
                lower: fmt(&b.lower),
                upper_coeff: (1..k as i64)
                    .map(|j| -coefficients::upper_coeff(kind, k as i64, j))
                    .collect(),
            })
        })
        .collect::<Result<_, Error>>()?;
    let mut out = start(format, header);
    let title = format!("closed-form blocks on H_{}; {}", 2 * k - 1, describe_t(t));
    match format {
        Format::Text => {
            comment(&mut out, &title);
            for d in &docs {
                out.push_str(&format!(
                    "{} ({k} x {k}, multiplicity {})\n",
                    d.kind, d.multiplicity
                ));
                let n = k as usize;
                for i in 0..n {
                    let row: Vec<&str> = (0..n)
                        .map(|j| match j {
                            _ if j == i => d.diag[i].as_str(),
                            _ if j == i + 1 => d.upper[i].as_str(),
                            _ if j + 1 == i => d.lower[j].as_str(),
                            _ => "0",
                        })
                        .collect();
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
            }
        }
        Format::Csv => {
            comment(&mut out, &title);
            let rows = docs.iter().flat_map(|d| {
                (0..k as usize).map(move |i| {
                    let pick = |v: &[String]| v.get(i).cloned().unwrap_or_default();
                    [
                        d.kind.to_string(),
                        (i + 1).to_string(),
                        d.diag[i].clone(),
                        pick(&d.upper),
                        pick(&d.lower),
                        d.upper_coeff
                            .get(i)
                            .map(ToString::to_string)
                            .unwrap_or_default(),
                    ]
                })
            });
            csv_rows(
                &mut out,
                &["kind", "j", "d_j", "u_j", "l_j", "u_j_coeff"],
                rows,
            )?;
        }
        Format::Json => out.push_str(&json(&docs)?),
    }
    Ok(out)
}

#[derive(Serialize)]
struct Eigenvalue {
    value: f64,
    multiplicity: usize,
}

fn eigs(
    k: Option<u32>,
    m: Option<u32>,
    t: &RossiParam,
    format: Format,
    header: Option<&str>,
    tol: f64,
) -> Result<String, CliError> {
    let h = t.h_f64();
    let (degree, values) = match (k, m) {
        (Some(k), _) => {
            let mut all = Vec::new();
            for kind in [BlockKind::V, BlockKind::W] {
                let b = closed_form_block(k, kind, t)?;
                let st = symmetrize(&b.diag_f64(), &b.upper_f64(), &b.lower_f64())?;
                for ev in st.eigenvalues(tol)? {
                    all.extend(std::iter::repeat_n(ev * h, 2 * k as usize));
                }
            }
            (2 * k - 1, all)
        }
        (None, Some(m)) => {
            check_full_degree(m)?;
            let mat = OperatorComponents::for_degree(m)?.assemble(t, MatrixMode::Numeric);
            (m, mat.eigenvalues().into_iter().map(|e| e * h).collect())
        }
        (None, None) => return Err(CliError::Config("give --k or --m".into())),
    };
    let mut sorted = values;
    sorted.sort_by(f64::total_cmp);
    let clusters: Vec<Eigenvalue> = cluster_eigenvalues(&sorted, 1e-9)
        .into_iter()
        .map(|(value, multiplicity)| Eigenvalue {
            value,
            multiplicity,
        })
        .collect();
    let mut out = start(format, header);
    let title = format!(
        "eigenvalues of box_b^t on H_{degree}; t = {t}; h = {} included",
        format_rational(&t.h())
    );
    match format {
        Format::Text => {
            comment(&mut out, &title);
            for e in &clusters {
                out.push_str(&format!("{} x{}\n", f17(e.value), e.multiplicity));
            }
        }
        Format::Csv => {
            comment(&mut out, &title);
            csv_rows(
                &mut out,
                &["value", "multiplicity"],
                clusters
                    .iter()
                    .map(|e| [f17(e.value), e.multiplicity.to_string()]),
            )?;
        }
        Format::Json => out.push_str(&json(&clusters)?),
    }
    Ok(out)
}

#[derive(Serialize)]
struct RowDoc {
    k: u32,
    parity: &'static str,
    t: String,
    t_value: f64,
    h: f64,
    lambda_min: f64,
    det_ratio: Option<f64>,
    #[serde(rename = "paper_bound")]
    uncorrected_bound: Option<f64>,
    corrected_bound: Option<f64>,
    chain_holds: Option<bool>,
}

impl From<&SweepRow> for RowDoc {
    fn from(r: &SweepRow) -> Self {
        RowDoc {
            k: r.k,
            parity: r.parity.as_str(),
            t: r.t.to_string(),
            t_value: r.t.to_f64(),
            h: r.h,
            lambda_min: r.lambda_min,
            det_ratio: r.det_ratio,
            uncorrected_bound: r.uncorrected_bound,
            corrected_bound: r.corrected_bound,
            chain_holds: r.chain_holds,
        }
    }
}

fn sweep_record(r: &SweepRow) -> [String; 8] {
    let opt = |x: Option<f64>| x.map(f17).unwrap_or_default();
    [
        r.k.to_string(),
        r.parity.as_str().to_string(),
        f17(r.t.to_f64()),
        f17(r.h),
        f17(r.lambda_min),
        opt(r.det_ratio),
        opt(r.uncorrected_bound),
        opt(r.corrected_bound),
    ]
}

fn render_rows(
    rows: &[SweepRow],
    format: Format,
    header: Option<&str>,
) -> Result<String, CliError> {
    let mut out = start(format, header);
    match format {
        Format::Text | Format::Csv => {
            csv_rows(&mut out, &SWEEP_HEADER, rows.iter().map(sweep_record))?
        }
        Format::Json => {
            let docs: Vec<RowDoc> = rows.iter().map(RowDoc::from).collect();
            out.push_str(&json(&docs)?);
        }
    }
    Ok(out)
}

fn failures(rows: &[SweepRow]) -> Option<String> {
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.chain_holds == Some(false))
        .map(|r| format!("k = {}, t = {}", r.k, r.t))
        .collect();
    (!bad.is_empty()).then(|| format!("bound chain fails at {}", bad.join("; ")))
}

fn bound(
    k: u32,
    t: &RossiParam,
    format: Format,
    header: Option<&str>,
    tol: f64,
) -> Result<Outcome, CliError> {
    let report: BoundReport = bound_chain_with_tol(k, t, tol)?;
    let row = SweepRow::from(report);
    let rows = [row];
    let body = match format {
        Format::Json => json(&RowDoc::from(&rows[0]))?,
        Format::Csv => render_rows(&rows, format, header)?,
        Format::Text => {
            let r = &rows[0];
            let mut out = start(format, header);
            comment(
                &mut out,
                &format!("bound chain on H_{}; h included", 2 * k - 1),
            );
            let opt = |x: Option<f64>| x.map(f17).unwrap_or_default();
            for (key, value) in [
                ("k", r.k.to_string()),
                ("t", r.t.to_string()),
                ("h", f17(r.h)),
                ("lambda_min", f17(r.lambda_min)),
                ("det_ratio", opt(r.det_ratio)),
                ("paper_bound", opt(r.uncorrected_bound)),
                ("corrected_bound", opt(r.corrected_bound)),
                ("chain_holds", r.chain_holds.unwrap_or(false).to_string()),
            ] {
                out.push_str(&format!("{key} = {value}\n"));
            }
            out
        }
    };
    Ok(Outcome {
        body,
        failure: failures(&rows),
    })
}

fn run_sweep(
    kmax: u32,
    grid: &[RossiParam],
    parity: kohn_spectra::tridiag::Parity,
    zero_threshold: f64,
    format: Format,
    header: Option<&str>,
) -> Result<Outcome, CliError> {
    if grid.is_empty() {
        return Err(CliError::Config("empty t grid".into()));
    }
    if !matches!(parity, kohn_spectra::tridiag::Parity::Odd) && kmax > exact_limit() {
        return Err(Error::ExactLimitExceeded {
            k: kmax,
            limit: exact_limit(),
        }
        .into());
    }
    let rows = sweep(kmax, grid, parity, zero_threshold)?;
    Ok(Outcome {
        body: render_rows(&rows, format, header)?,
        failure: failures(&rows),
    })
}
