//! Command-line front end: experiments and oracles, emitting CSV or JSON.
//!
//! Every command is reproducible from its flag set alone; seeds appear in
//! the output rows. Emitted records never contain wall-clock measurements
//! unless `--timing` is passed, so repeated runs are byte-identical for any
//! `JLFORGE_THREADS` setting. Reals are rendered with 17 significant digits
//! so parsed values round-trip exactly.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    cauchy_schwarz_check, enumerate_gamma, exact_moment, gamma_family, lemma7_bound,
    paley_zygmund, Budget, GammaParams,
};
use crate::estimator::{
    allpairs_experiment, estimate_tail_with, min_m_for, scaling_sweep, SweepEntry, SweepRow,
};
use crate::instances::{hard_family, hard_vector};
use crate::transforms::{embed, EmbeddingSpec, TransformKind};
use crate::{codec, Error, Result};

pub const CSV_HEADER: &str =
    "transform,epsilon,m,k,trials,failures,p_hat,ci_low,ci_high,seed,wall_time_s";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "jlforge", version, about = "Toeplitz JL embeddings and their limits")]
pub struct Cli {
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Record format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    /// Include measured wall time in emitted records (breaks byte-identical
    /// reruns).
    #[arg(long, global = true, default_value_t = false)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the embedding to a vector read from a file (one decimal per
    /// line); prints the embedded vector one value per line.
    Embed {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        transform: TransformKind,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        input: PathBuf,
    },
    /// Estimate the distortion-tail probability of the hard instance.
    Tail {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "toeplitz")]
        transform: TransformKind,
        /// 0 selects the all-plus sign pattern.
        #[arg(long, default_value_t = 0)]
        sign_seed: u64,
    },
    /// Tail estimates over an m grid with the per-m hard instance.
    Sweep {
        #[arg(long)]
        eps: f64,
        #[arg(long, value_delimiter = ',')]
        m_grid: Vec<usize>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        transform: TransformKind,
        #[arg(long, value_delimiter = ',', default_value = "1.0")]
        c0_grid: Vec<f64>,
    },
    /// Smallest m whose worst hard-instance failure estimate stays below
    /// delta.
    MinM {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        transform: TransformKind,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4096)]
        m_max: usize,
    },
    /// All-pairs experiment over the shifted family: per-member rows plus a
    /// success summary (stderr for csv, embedded for json).
    Nvec {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "N")]
        count: usize,
        #[arg(long = "C")]
        c: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Exact parity-tuple count.
    Gamma {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
    },
    /// Round-trip, injectivity and length-bound check of the cycle codec
    /// over the full enumerated family (tuple length 2k).
    CodecCheck {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
    },
    /// The full combinatorics identity grid; exits nonzero on any
    /// violation.
    OracleSuite {
        /// Elementary-step budget per enumeration call.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
    },
}

/// Honor `JLFORGE_THREADS`; default is hardware parallelism.
pub fn init_threads() {
    if let Ok(v) = std::env::var("JLFORGE_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                // Ignore failure when a global pool already exists.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

pub fn error_object(e: &Error) -> String {
    let kind = match e {
        Error::InvalidArgument(_) => "invalid-argument",
        Error::ResourceLimit(_) => "resource-limit",
        Error::Decode(_) => "decode",
        Error::Io(_) => "io",
    };
    format!("{{\"error\":\"{kind}\",\"message\":{}}}", serde_json::to_string(&e.to_string()).unwrap())
}

fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render rows as CSV with the fixed schema.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.transform,
            fmt_real(r.epsilon),
            r.m,
            r.k,
            r.trials,
            r.failures,
            fmt_real(r.p_hat),
            fmt_real(r.ci_low),
            fmt_real(r.ci_high),
            r.seed,
            fmt_real(r.wall_time_s)
        )
        .unwrap();
    }
    out
}

/// Parse CSV produced by [`rows_to_csv`]; the inverse of emission.
pub fn rows_from_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
    if header != CSV_HEADER {
        return Err(Error::InvalidArgument(format!(
            "unexpected CSV header: {header}"
        )));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(Error::InvalidArgument(format!(
                "line {}: expected 11 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let parse_f = |s: &str| -> Result<f64> {
            f64::from_str(s)
                .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", lineno + 2)))
        };
        let parse_u = |s: &str| -> Result<u64> {
            u64::from_str(s)
                .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", lineno + 2)))
        };
        rows.push(SweepRow {
            transform: fields[0].parse()?,
            epsilon: parse_f(fields[1])?,
            m: parse_u(fields[2])? as usize,
            k: parse_u(fields[3])? as usize,
            trials: parse_u(fields[4])?,
            failures: parse_u(fields[5])?,
            p_hat: parse_f(fields[6])?,
            ci_low: parse_f(fields[7])?,
            ci_high: parse_f(fields[8])?,
            seed: parse_u(fields[9])?,
            wall_time_s: parse_f(fields[10])?,
        });
    }
    Ok(rows)
}

fn write_output(path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_rows(cli_output: Option<&PathBuf>, format: OutputFormat, rows: &[SweepRow]) -> Result<()> {
    let content = match format {
        OutputFormat::Csv => rows_to_csv(rows),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
    };
    write_output(cli_output, &content)
}

fn zero_time(mut rows: Vec<SweepRow>, timing: bool) -> Vec<SweepRow> {
    if !timing {
        for r in rows.iter_mut() {
            r.wall_time_s = 0.0;
        }
    }
    rows
}

#[derive(Debug, Serialize, Deserialize)]
struct GammaRecord {
    m: usize,
    s: usize,
    k: usize,
    count: u128,
}

#[derive(Debug, Serialize, Deserialize)]
struct CodecCheckRecord {
    m: usize,
    s: usize,
    k: usize,
    family_size: usize,
    max_bits: usize,
    bound_bits: usize,
    roundtrip_ok: bool,
    distinct_ok: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct MinMRecord {
    transform: TransformKind,
    epsilon: f64,
    delta: f64,
    trials: u64,
    seed: u64,
    m_max: usize,
    m: usize,
    found: bool,
}

#[derive(Debug, Serialize)]
struct NvecSummary {
    members: Vec<SweepRow>,
    successes: u64,
    success_hat: f64,
    p_bar: f64,
    predicted: f64,
    gap_se: f64,
}

fn emit_scalar_csv<T: Serialize>(record: &T) -> String {
    // One homogeneous record: header from field names, one data line.
    let value = serde_json::to_value(record).expect("record serializes");
    let obj = value.as_object().expect("record is an object");
    let header: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    let mut out = header.join(",");
    out.push('\n');
    let fields: Vec<String> = obj
        .values()
        .map(|v| match v {
            serde_json::Value::Number(n) => {
                if let Some(f) = n.as_f64() {
                    if n.is_f64() {
                        fmt_real(f)
                    } else {
                        n.to_string()
                    }
                } else {
                    n.to_string()
                }
            }
            serde_json::Value::Bool(b) => b.to_string(),
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    out.push_str(&fields.join(","));
    out.push('\n');
    out
}

fn emit_record<T: Serialize>(
    output: Option<&PathBuf>,
    format: OutputFormat,
    record: &T,
) -> Result<()> {
    let content = match format {
        OutputFormat::Csv => emit_scalar_csv(record),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("record serializes");
            s.push('\n');
            s
        }
    };
    write_output(output, &content)
}

fn read_vector_file(path: &PathBuf, n: usize) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v = f64::from_str(line).map_err(|e| {
            Error::InvalidArgument(format!("{}:{}: {e}", path.display(), lineno + 1))
        })?;
        values.push(v);
    }
    if values.len() != n {
        return Err(Error::InvalidArgument(format!(
            "vector file has {} values but --n is {n}",
            values.len()
        )));
    }
    Ok(values)
}

fn tail_instance_n(kind: TransformKind, m: usize, s: usize) -> usize {
    match kind {
        TransformKind::Circulant => m + s,
        _ => s,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let output = cli.output.as_ref();
    let format = cli.format;
    match cli.command {
        Command::Embed {
            n,
            m,
            transform,
            seed,
            input,
        } => {
            let x = read_vector_file(&input, n)?;
            let spec = EmbeddingSpec::new(n, m, transform, seed)?;
            let y = embed(&spec, &x)?;
            let mut content = String::new();
            for v in &y {
                writeln!(content, "{}", fmt_real(*v)).unwrap();
            }
            write_output(output, &content)
        }
        Command::Tail {
            eps,
            m,
            k,
            trials,
            seed,
            transform,
            sign_seed,
        } => {
            let s = 4 * k;
            let inst = hard_vector(k, tail_instance_n(transform, m, s), sign_seed)?;
            let started = std::time::Instant::now();
            let est = estimate_tail_with(transform, &inst.x, m, eps, trials, seed)?;
            let rows = zero_time(
                vec![SweepRow {
                    transform,
                    epsilon: eps,
                    m,
                    k,
                    trials,
                    failures: est.failures,
                    p_hat: est.p_hat,
                    ci_low: est.ci_low,
                    ci_high: est.ci_high,
                    seed,
                    wall_time_s: started.elapsed().as_secs_f64(),
                }],
                cli.timing,
            );
            emit_rows(output, format, &rows)
        }
        Command::Sweep {
            eps,
            m_grid,
            trials,
            seed,
            transform,
            c0_grid,
        } => {
            let entries = scaling_sweep(transform, eps, &m_grid, trials, seed, &c0_grid)?;
            let mut rows = Vec::new();
            for entry in entries {
                match entry {
                    SweepEntry::Row(r) => rows.push(r),
                    SweepEntry::Skipped { m, reason } => {
                        eprintln!("skipping m={m}: {reason}");
                    }
                }
            }
            emit_rows(output, format, &zero_time(rows, cli.timing))
        }
        Command::MinM {
            eps,
            delta,
            transform,
            trials,
            seed,
            m_max,
        } => {
            let found = min_m_for(eps, delta, transform, trials, seed, m_max)?;
            let record = MinMRecord {
                transform,
                epsilon: eps,
                delta,
                trials,
                seed,
                m_max,
                m: found.unwrap_or(0),
                found: found.is_some(),
            };
            emit_record(output, format, &record)
        }
        Command::Nvec {
            n,
            m,
            k,
            count,
            c,
            eps,
            trials,
            seed,
        } => {
            let family = hard_family(k, n, m, c, count)?;
            let res = allpairs_experiment(&family, m, eps, trials, seed)?;
            let members: Vec<SweepRow> = res
                .per_member
                .iter()
                .map(|est| SweepRow {
                    transform: TransformKind::Toeplitz,
                    epsilon: eps,
                    m,
                    k,
                    trials,
                    failures: est.failures,
                    p_hat: est.p_hat,
                    ci_low: est.ci_low,
                    ci_high: est.ci_high,
                    seed,
                    wall_time_s: 0.0,
                })
                .collect();
            match format {
                OutputFormat::Csv => {
                    eprintln!(
                        "success_hat={} predicted={} p_bar={} gap_se={}",
                        fmt_real(res.success_hat),
                        fmt_real(res.predicted),
                        fmt_real(res.p_bar),
                        fmt_real(res.gap_standard_error())
                    );
                    emit_rows(output, format, &members)
                }
                OutputFormat::Json => {
                    let summary = NvecSummary {
                        members,
                        successes: res.successes,
                        success_hat: res.success_hat,
                        p_bar: res.p_bar,
                        predicted: res.predicted,
                        gap_se: res.gap_standard_error(),
                    };
                    emit_record(output, format, &summary)
                }
            }
        }
        Command::Gamma { m, s, k } => {
            let count = enumerate_gamma(GammaParams::new(m, s, k)?, Budget::default())?;
            emit_record(output, format, &GammaRecord { m, s, k, count })
        }
        Command::CodecCheck { m, s, k } => {
            let record = codec_check(m, s, k, Budget::default())?;
            if !(record.roundtrip_ok && record.distinct_ok) {
                emit_record(output, format, &record)?;
                return Err(Error::InvalidArgument(
                    "codec check failed; see emitted record".into(),
                ));
            }
            emit_record(output, format, &record)
        }
        Command::OracleSuite { budget } => {
            let report = oracle_suite(Budget(budget))?;
            write_output(output, &report.text)?;
            if report.failed > 0 {
                return Err(Error::InvalidArgument(format!(
                    "{} oracle checks failed",
                    report.failed
                )));
            }
            Ok(())
        }
    }
}

fn codec_check(m: usize, s: usize, k: usize, budget: Budget) -> Result<CodecCheckRecord> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let family = gamma_family(GammaParams::new(m, s, 2 * k)?, budget)?;
    let bound_bits = codec::code_length_bound(m, s, k);
    let mut max_bits = 0;
    let mut roundtrip_ok = true;
    let mut encodings = Vec::with_capacity(family.len());
    for tuple in &family {
        let code = codec::codec_encode(tuple, m, s, k)?;
        max_bits = max_bits.max(code.bit_len);
        if codec::codec_decode(&code)? != *tuple {
            roundtrip_ok = false;
        }
        encodings.push((code.bytes, code.bit_len));
    }
    let mut sorted = encodings.clone();
    sorted.sort();
    let distinct_ok = sorted.windows(2).all(|w| w[0] != w[1]);
    Ok(CodecCheckRecord {
        m,
        s,
        k,
        family_size: family.len(),
        max_bits,
        bound_bits,
        roundtrip_ok,
        distinct_ok: distinct_ok && max_bits <= bound_bits,
    })
}

pub struct OracleReport {
    pub text: String,
    pub passed: usize,
    pub failed: usize,
}

/// The combinatorics identity grid: Eq.(1)/(2) exactness, hand-checkable
/// values, the Cauchy-Schwarz chain, the recurrence comparison and the
/// codec properties, all exact.
pub fn oracle_suite(budget: Budget) -> Result<OracleReport> {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    let mut text = String::new();
    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut check = |name: &str, ok: bool, detail: String| {
        if ok {
            passed += 1;
            writeln!(text, "ok   {name}: {detail}").unwrap();
        } else {
            failed += 1;
            writeln!(text, "FAIL {name}: {detail}").unwrap();
        }
    };

    let grid = [(2usize, 2usize, 2usize), (3, 2, 2), (4, 4, 2), (2, 2, 4)];

    // Eq.(1): E[Z_k] s^k m^k = Gamma_k as exact rationals.
    for &(m, s, k) in &grid {
        let p = GammaParams::new(m, s, k)?;
        let gamma = enumerate_gamma(p, budget)?;
        let moment = exact_moment(p, budget)?;
        let scaled = moment * BigRational::from_integer(BigInt::from((s * m) as u64).pow(k as u32));
        let want = BigRational::from_integer(BigInt::from(gamma));
        check(
            "eq1-identity",
            scaled == want,
            format!("(m={m},s={s},k={k}) moment*s^k*m^k = {scaled}, gamma = {gamma}"),
        );
    }

    // Eq.(2): E[Z_k^2] = E[Z_2k] = Gamma_2k / (s^2k m^2k), i.e. the same
    // identity at doubled k.
    for &(m, s, k) in &[(2usize, 2usize, 2usize), (3, 2, 2)] {
        let p = GammaParams::new(m, s, 2 * k)?;
        let gamma = enumerate_gamma(p, budget)?;
        let moment = exact_moment(p, budget)?;
        let scaled =
            moment * BigRational::from_integer(BigInt::from((s * m) as u64).pow(2 * k as u32));
        check(
            "eq2-identity",
            scaled == BigRational::from_integer(BigInt::from(gamma)),
            format!("(m={m},s={s},2k={}) gamma = {gamma}", 2 * k),
        );
    }

    // Hand-checkable values.
    let g222 = enumerate_gamma(GammaParams::new(2, 2, 2)?, budget)?;
    check("gamma-2-2-2", g222 == 8, format!("gamma = {g222}, want 8"));
    for &(m, s) in &[(2usize, 2usize), (3, 2), (4, 4), (5, 3)] {
        let g = enumerate_gamma(GammaParams::new(m, s, 1)?, budget)?;
        check("gamma-k1-zero", g == 0, format!("(m={m},s={s}) gamma = {g}"));
    }
    let half222 = crate::combinatorics::enumerate_half(GammaParams::new(2, 2, 2)?, budget)?;
    check(
        "half-2-2-2",
        half222.half_count == 4
            && half222.num_signatures() == 2
            && half222.signature_counts == vec![2, 2]
            && half222.sum_b_squared() == 8,
        format!(
            "|S| = {}, B = {}, b = {:?}",
            half222.half_count,
            half222.num_signatures(),
            half222.signature_counts
        ),
    );

    // Chain Gamma >= sum b^2 >= |S|^2/B, with the recurrence bound in its
    // regime k/2 <= s/8.
    for &(m, s, k) in &grid {
        let report = cauchy_schwarz_check(GammaParams::new(m, s, k)?, budget)?;
        check(
            "cauchy-schwarz-chain",
            report.holds(),
            format!(
                "(m={m},s={s},k={k}) gamma = {}, sum b^2 = {}, |S|^2/B = {}",
                report.gamma, report.sum_b_squared, report.lower_bound
            ),
        );
        if k % 2 == 0 && (k / 2) * 8 <= s {
            let f = lemma7_bound(m as i64, s as i64, (k / 2) as u32);
            check(
                "recurrence-lower-bound",
                report.half_count as i128 >= f,
                format!("(m={m},s={s},k={k}) |S| = {} >= F = {f}", report.half_count),
            );
        }
    }
    // The spec'd instance outside the regime gate still holds at (2,2,2).
    let f221 = lemma7_bound(2, 2, 1);
    check(
        "recurrence-2-2-1",
        half222.half_count as i128 >= f221 && f221 == 4,
        format!("|S| = {} >= F(2,2,1) = {f221}", half222.half_count),
    );

    // Paley-Zygmund at (2,2,2) against the exhaustive distribution.
    {
        let e1 = exact_moment(GammaParams::new(2, 2, 2)?, budget)?;
        let e2 = exact_moment(GammaParams::new(2, 2, 4)?, budget)?;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let bound = paley_zygmund(&e1, &e2, &half)?;
        let threshold = &e1 * &half;
        let true_prob = crate::combinatorics::exact_exceedance_probability(
            GammaParams::new(2, 2, 2)?,
            &threshold,
            budget,
        )?;
        check(
            "paley-zygmund",
            true_prob >= bound && bound > BigRational::new(BigInt::from(0), BigInt::from(1)),
            format!("Pr[Z2 > E/2] = {true_prob} >= bound {bound}"),
        );
    }

    // Codec round-trips over full enumerated families.
    for &(m, s, k) in &[(4usize, 4usize, 1usize), (2, 2, 1), (3, 3, 1), (2, 2, 2)] {
        let record = codec_check(m, s, k, budget)?;
        check(
            "codec",
            record.roundtrip_ok && record.distinct_ok,
            format!(
                "(m={m},s={s},2k={}) family = {}, max bits = {} <= bound {}",
                2 * k,
                record.family_size,
                record.max_bits,
                record.bound_bits
            ),
        );
    }

    Ok(OracleReport {
        text,
        passed,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip() {
        let rows = vec![
            SweepRow {
                transform: TransformKind::Toeplitz,
                epsilon: 0.5,
                m: 16,
                k: 2,
                trials: 1000,
                failures: 37,
                p_hat: 0.037,
                ci_low: 0.026_925_462_956_6,
                ci_high: 0.050_708_839_992_2,
                seed: 7,
                wall_time_s: 0.0,
            },
            SweepRow {
                transform: TransformKind::Dense,
                epsilon: 0.25,
                m: 64,
                k: 4,
                trials: 10_000,
                failures: 0,
                p_hat: 0.0,
                ci_low: 0.0,
                ci_high: 3.8e-4,
                seed: 8,
                wall_time_s: 0.0,
            },
        ];
        let csv = rows_to_csv(&rows);
        let parsed = rows_from_csv(&csv).unwrap();
        assert_eq!(parsed, rows);
    }

    #[test]
    fn csv_header_only_for_empty_rows() {
        let csv = rows_to_csv(&[]);
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
        assert!(rows_from_csv(&csv).unwrap().is_empty());
    }

    #[test]
    fn csv_rejects_bad_header() {
        assert!(rows_from_csv("nope\n1,2,3\n").is_err());
    }

    #[test]
    fn real_formatting_has_17_significant_digits() {
        let s = fmt_real(1.0 / 3.0);
        assert_eq!(s, "3.3333333333333331e-1");
        let x = 0.12345678901234568;
        assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn oracle_suite_passes() {
        let report = oracle_suite(Budget::default()).unwrap();
        assert_eq!(report.failed, 0, "{}", report.text);
        assert!(report.passed >= 15);
    }

    #[test]
    fn error_objects_are_json() {
        let e = Error::ResourceLimit("too big".into());
        let obj = error_object(&e);
        let v: serde_json::Value = serde_json::from_str(&obj).unwrap();
        assert_eq!(v["error"], "resource-limit");
    }
}
