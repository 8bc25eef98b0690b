//! The `diagram-homology` command line.
//!
//! Every parameter is a flag, and the argument list is echoed into the
//! output metadata, so a report can be reproduced from itself. Exit codes:
//! 0 success, 1 mismatch or failed check, 2 usage or parse error, 3 resource
//! guard.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{enumerate_basis, AlgebraContext, FamilySpec};
use crate::coeff::{RingSpec, Scalar};
use crate::complex::HomologyGroup;
use crate::cover::{verify_cover, CoverSpec};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::homcompute::{
    choose_method, compute_both, compute_ext, compute_tor, group_cohomology, group_homology, HomologyRecord, Method,
};
use crate::mv::build_mv;
use crate::report::{Format, Metadata, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "diagram-homology", version, about = "Homology of partition-type diagram algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Number of vertices in each column.
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// P, T:r, TPP, U or S. A bare `T` takes its parameter from --r.
    #[arg(long, global = true)]
    pub family: Option<String>,

    /// Tanabe parameter.
    #[arg(long, global = true)]
    pub r: Option<usize>,

    /// Z, Q or Z/m.
    #[arg(long, global = true)]
    pub ring: Option<String>,

    /// Comma separated values of δ, in the ring's own syntax.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub delta: Vec<String>,

    /// Truncation: degrees `0..Q` are computed.
    #[arg(long = "Q", global = true)]
    pub max_degree: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// bar, resolution or auto.
    #[arg(long, global = true, default_value = "auto")]
    pub method: Method,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// List the canonical basis of a family.
    Enumerate,
    /// Multiply two diagrams.
    Compose { d1: String, d2: String },
    /// Check the cover axioms for the standard cover.
    VerifyCover,
    /// Build the Mayer-Vietoris complex and check that it resolves A/I.
    BuildMv,
    /// Tor of the trivial module.
    Tor,
    /// Ext of the trivial module.
    Ext,
    /// Homology and cohomology of the symmetric group.
    GroupHomology,
    /// Compare a diagram algebra with the symmetric group.
    Theorem {
        #[arg(value_enum)]
        which: TheoremKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremKind {
    Tanabe,
    Tpp,
    Uniform,
    Partition,
    PartitionInvertible,
    StabilityRange,
}

impl TheoremKind {
    pub fn name(self) -> &'static str {
        match self {
            TheoremKind::Tanabe => "tanabe",
            TheoremKind::Tpp => "tpp",
            TheoremKind::Uniform => "uniform",
            TheoremKind::Partition => "partition",
            TheoremKind::PartitionInvertible => "partition-invertible",
            TheoremKind::StabilityRange => "stability-range",
        }
    }
}

/// Flags after parsing and validation. Every field satisfies the
/// preconditions of the module it is handed to.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub family: Option<FamilySpec>,
    pub ring: RingSpec,
    pub deltas: Vec<Scalar>,
    pub r: Option<usize>,
    pub max_degree: Option<usize>,
    pub method: Method,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig> {
        let default_ring = match cli.command {
            Command::Theorem {
                which: TheoremKind::StabilityRange,
            } => "Z/2",
            _ => "Z",
        };
        let ring: RingSpec = cli.ring.as_deref().unwrap_or(default_ring).parse()?;
        let family = match cli.family.as_deref() {
            None => None,
            Some("T") => Some(FamilySpec::Tanabe(cli.r.unwrap_or(2))),
            Some(s) => {
                let f: FamilySpec = s.parse()?;
                if let (FamilySpec::Tanabe(a), Some(b)) = (f, cli.r) {
                    if a != b {
                        return Err(Error::invalid(format!("--family {s} disagrees with --r {b}")));
                    }
                }
                Some(f)
            }
        };
        if let Some(r) = cli.r {
            FamilySpec::Tanabe(r).validate()?;
        }
        let texts: Vec<&str> = if cli.delta.is_empty() {
            vec!["0"]
        } else {
            cli.delta.iter().map(String::as_str).collect()
        };
        let deltas = texts.iter().map(|t| ring.parse_scalar(t.trim())).collect::<Result<Vec<_>>>()?;
        Ok(RunConfig {
            command: cli.command.clone(),
            n: cli.n,
            family,
            ring,
            deltas,
            r: cli.r,
            max_degree: cli.max_degree,
            method: cli.method,
            format: cli.format,
            out: cli.out.clone(),
        })
    }

    fn n(&self) -> Result<usize> {
        match self.n {
            Some(0) => Err(Error::invalid("--n must be at least 1")),
            Some(n) => Ok(n),
            None => Err(Error::invalid("--n is required")),
        }
    }

    fn family(&self) -> Result<FamilySpec> {
        self.family.ok_or_else(|| Error::invalid("--family is required"))
    }

    fn max_degree(&self, n: usize) -> usize {
        self.max_degree.unwrap_or_else(|| default_max_degree(n, self.ring))
    }
}

/// Truncation used when --Q is absent: as deep as stays quick.
pub fn default_max_degree(n: usize, ring: RingSpec) -> usize {
    match n {
        0..=2 => 5,
        3 if ring.is_field() => 4,
        3 => 3,
        _ => 2,
    }
}

/// Parse, execute, write. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let command_line: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let outcome = RunConfig::from_cli(&cli).and_then(|cfg| {
        let report = execute(&cfg, command_line)?;
        let text = report.render(cfg.format)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(report)
    });
    match outcome {
        Ok(report) if report.passed == Some(false) => EXIT_MISMATCH,
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceGuard { .. } => EXIT_GUARD,
        Error::Consistency(_) | Error::Io(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

/// Run one command and build its report without writing anything.
pub fn execute(cfg: &RunConfig, command_line: Vec<String>) -> Result<Report> {
    let (command, passed, result, table, summary) = match &cfg.command {
        Command::Enumerate => cmd_enumerate(cfg)?,
        Command::Compose { d1, d2 } => cmd_compose(d1, d2)?,
        Command::VerifyCover => cmd_verify_cover(cfg)?,
        Command::BuildMv => cmd_build_mv(cfg)?,
        Command::Tor => cmd_homology(cfg, false)?,
        Command::Ext => cmd_homology(cfg, true)?,
        Command::GroupHomology => cmd_group_homology(cfg)?,
        Command::Theorem { which } => cmd_theorem(cfg, *which)?,
    };
    Ok(Report {
        command,
        metadata: Metadata::new(command_line),
        passed,
        result,
        table,
        summary,
    })
}

type Parts = (String, Option<bool>, serde_json::Value, Table, Vec<String>);

fn to_value<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Consistency(e.to_string()))
}

fn cmd_enumerate(cfg: &RunConfig) -> Result<Parts> {
    let (n, family) = (cfg.n()?, cfg.family()?);
    let basis = enumerate_basis(n, family)?;
    let mut table = Table::new(&["family", "n", "index", "diagram"]);
    for (i, d) in basis.iter().enumerate() {
        table.push(vec![family.to_string(), n.to_string(), i.to_string(), d.to_string()]);
    }
    let diagrams: Vec<String> = basis.iter().map(ToString::to_string).collect();
    let result = json!({"family": family, "n": n, "count": basis.len(), "diagrams": diagrams});
    let summary = vec![format!("{} diagrams in {family} with n = {n}", basis.len())];
    Ok(("enumerate".into(), None, result, table, summary))
}

fn cmd_compose(d1: &str, d2: &str) -> Result<Parts> {
    let a: Diagram = d1.parse()?;
    let b: Diagram = d2.parse()?;
    let c = a.compose(&b)?;
    let (a, b, d3) = (a.to_string(), b.to_string(), c.diagram.to_string());
    let mut table = Table::new(&["d1", "d2", "alpha", "product"]);
    table.push(vec![a.clone(), b.clone(), c.alpha.to_string(), d3.clone()]);
    let result = json!({"d1": a, "d2": b, "alpha": c.alpha, "product": d3});
    let summary = vec![format!("d1 d2 = δ^{} {d3}", c.alpha)];
    Ok(("compose".into(), None, result, table, summary))
}

fn contexts(cfg: &RunConfig, n: usize, family: FamilySpec) -> Result<Vec<AlgebraContext>> {
    cfg.deltas
        .iter()
        .map(|d| AlgebraContext::new(n, family, cfg.ring, d.clone()))
        .collect()
}

fn cmd_verify_cover(cfg: &RunConfig) -> Result<Parts> {
    let (n, family) = (cfg.n()?, cfg.family()?);
    let mut table = Table::new(&[
        "family",
        "n",
        "ring",
        "delta",
        "covers",
        "width",
        "expected_height",
        "verified_height",
        "failures",
    ]);
    let mut records = Vec::new();
    let mut all = true;
    let mut summary = Vec::new();
    for ctx in contexts(cfg, n, family)? {
        let cover = CoverSpec::standard(&ctx);
        let report = verify_cover(&cover, None)?;
        let expected = cover.expected_height();
        let ok = report.passed() && report.verified_height >= expected;
        all &= ok;
        table.push(vec![
            family.to_string(),
            n.to_string(),
            cfg.ring.to_string(),
            ctx.delta().to_string(),
            report.covers.to_string(),
            report.width.to_string(),
            expected.to_string(),
            report.verified_height.to_string(),
            report.failures.len().to_string(),
        ]);
        summary.push(format!(
            "{}: covers = {}, width = {}, verified height = {} (expected {expected})",
            ctx.label(),
            report.covers,
            report.width,
            report.verified_height
        ));
        let ideals: Vec<String> = cover.ideals().iter().map(ToString::to_string).collect();
        records.push(json!({
            "context": ctx.label(),
            "delta": ctx.delta().to_string(),
            "ideals": ideals,
            "expected_height": expected,
            "report": to_value(&report)?,
        }));
    }
    Ok(("verify-cover".into(), Some(all), json!({ "covers": records }), table, summary))
}

fn cmd_build_mv(cfg: &RunConfig) -> Result<Parts> {
    let (n, family) = (cfg.n()?, cfg.family()?);
    let mut table = Table::new(&[
        "family",
        "n",
        "ring",
        "delta",
        "checked_through",
        "surjective",
        "exact",
        "first_failure",
        "tensor_vanishes",
    ]);
    let mut records = Vec::new();
    let mut all = true;
    let mut summary = Vec::new();
    for ctx in contexts(cfg, n, family)? {
        let cover = CoverSpec::standard(&ctx);
        let h = cover.expected_height();
        let mv = build_mv(&cover)?;
        let exact = mv.exactness(h)?;
        let tensor = mv.tensor_with_trivial(h)?;
        let tensor_dims: Vec<usize> = tensor.dims().to_vec();
        let vanishes = tensor_dims.iter().skip(1).all(|&d| d == 0);
        let ok = exact.holds() && vanishes;
        all &= ok;
        table.push(vec![
            family.to_string(),
            n.to_string(),
            cfg.ring.to_string(),
            ctx.delta().to_string(),
            h.to_string(),
            exact.surjective.to_string(),
            exact.modules.exact.to_string(),
            exact.modules.first_failure.map(|q| q.to_string()).unwrap_or_default(),
            vanishes.to_string(),
        ]);
        summary.push(format!(
            "{}: exact through {h} = {}, 1 ⊗ C_p = 0 for 1 <= p <= {h}: {vanishes}",
            ctx.label(),
            exact.holds()
        ));
        records.push(json!({
            "context": ctx.label(),
            "delta": ctx.delta().to_string(),
            "checked_through": h,
            "exactness": to_value(&exact)?,
            "tensor_dims": tensor_dims,
            "complex": to_value(&mv.to_record())?,
        }));
    }
    Ok(("build-mv".into(), Some(all), json!({ "complexes": records }), table, summary))
}

fn cmd_homology(cfg: &RunConfig, ext: bool) -> Result<Parts> {
    let (n, family) = (cfg.n()?, cfg.family()?);
    let q_max = cfg.max_degree(n);
    let name = if ext { "ext" } else { "tor" };
    let mut table = Table::new(&["family", "n", "ring", "delta", "q", "group", "free_rank", "torsion"]);
    let mut records = Vec::new();
    let mut summary = Vec::new();
    for ctx in contexts(cfg, n, family)? {
        let groups = if ext {
            compute_ext(&ctx, q_max, cfg.method)?
        } else {
            compute_tor(&ctx, q_max, cfg.method)?
        };
        summary.push(format!(
            "{name} of {} via {}: {}",
            ctx.label(),
            choose_method(&ctx, q_max, cfg.method),
            describe_all(&groups, cfg.ring)
        ));
        for (q, g) in groups.iter().enumerate() {
            table.push(vec![
                family.to_string(),
                n.to_string(),
                cfg.ring.to_string(),
                ctx.delta().to_string(),
                q.to_string(),
                g.describe(cfg.ring),
                g.free_rank.to_string(),
                torsion_text(g),
            ]);
        }
        records.push(HomologyRecord::new(ctx.label(), cfg.ring, ctx.delta().to_string(), &groups));
    }
    Ok((name.into(), None, json!({ "records": records }), table, summary))
}

fn cmd_group_homology(cfg: &RunConfig) -> Result<Parts> {
    let n = cfg.n()?;
    let q_max = cfg.max_degree(n);
    let h = group_homology(n, cfg.ring, q_max)?;
    let c = group_cohomology(n, cfg.ring, q_max)?;
    let mut table = Table::new(&["n", "ring", "q", "homology", "cohomology"]);
    for q in 0..q_max {
        table.push(vec![
            n.to_string(),
            cfg.ring.to_string(),
            q.to_string(),
            h[q].describe(cfg.ring),
            c[q].describe(cfg.ring),
        ]);
    }
    let label = format!("S_{n} over {}", cfg.ring);
    let result = json!({
        "homology": HomologyRecord::new(label.clone(), cfg.ring, String::new(), &h),
        "cohomology": HomologyRecord::new(label.clone(), cfg.ring, String::new(), &c),
    });
    let summary = vec![
        format!("H_* of {label}: {}", describe_all(&h, cfg.ring)),
        format!("H^* of {label}: {}", describe_all(&c, cfg.ring)),
    ];
    Ok(("group-homology".into(), None, result, table, summary))
}

fn describe_all(groups: &[HomologyGroup], ring: RingSpec) -> String {
    groups.iter().map(|g| g.describe(ring)).collect::<Vec<_>>().join(", ")
}

fn torsion_text(g: &HomologyGroup) -> String {
    g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// One degree of one theorem comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub family: FamilySpec,
    pub n: usize,
    pub ring: RingSpec,
    pub delta: String,
    pub q: usize,
    pub tor: HomologyGroup,
    pub tor_oracle: HomologyGroup,
    pub ext: HomologyGroup,
    pub ext_oracle: HomologyGroup,
    /// Whether the theorem asserts anything in this degree.
    pub in_range: bool,
}

impl TheoremRow {
    pub fn tor_matches(&self) -> bool {
        self.tor == self.tor_oracle
    }

    pub fn ext_matches(&self) -> bool {
        self.ext == self.ext_oracle
    }

    /// Out-of-range rows are reported but never fail.
    pub fn holds(&self) -> bool {
        !self.in_range || (self.tor_matches() && self.ext_matches())
    }
}

/// The family a theorem is about and the last degree it covers, if any.
pub fn theorem_family(kind: TheoremKind, n: usize, r: Option<usize>) -> (FamilySpec, Option<usize>) {
    match kind {
        TheoremKind::Tanabe => (FamilySpec::Tanabe(r.unwrap_or(2)), None),
        TheoremKind::Tpp => (FamilySpec::TotallyPropagating, None),
        TheoremKind::Uniform => (FamilySpec::UniformBlock, None),
        TheoremKind::Partition => (FamilySpec::Partition, Some(n - 1)),
        TheoremKind::PartitionInvertible => (FamilySpec::Partition, None),
        TheoremKind::StabilityRange => (FamilySpec::Partition, Some((n - 1) / 2)),
    }
}

/// Diagram algebra against `Σ_n` for every `δ`, degrees `0..max_degree`.
pub fn theorem_rows(
    kind: TheoremKind,
    n: usize,
    r: Option<usize>,
    ring: RingSpec,
    deltas: &[Scalar],
    max_degree: usize,
    method: Method,
) -> Result<Vec<TheoremRow>> {
    let (family, last) = theorem_family(kind, n, r);
    if kind == TheoremKind::PartitionInvertible {
        // refuse before any computation
        for d in deltas {
            d.inverse()?;
        }
    }
    let hom = group_homology(n, ring, max_degree)?;
    let coh = group_cohomology(n, ring, max_degree)?;
    let mut rows = Vec::new();
    for d in deltas {
        let ctx = AlgebraContext::new(n, family, ring, d.clone())?;
        let (tor, ext) = compute_both(&ctx, max_degree, method)?;
        for q in 0..max_degree {
            rows.push(TheoremRow {
                family,
                n,
                ring,
                delta: d.to_string(),
                q,
                tor: tor[q].clone(),
                tor_oracle: hom[q].clone(),
                ext: ext[q].clone(),
                ext_oracle: coh[q].clone(),
                in_range: last.is_none_or(|l| q <= l),
            });
        }
    }
    Ok(rows)
}

/// One degree of the stability comparison between `P_n(δ)` and `P_{n-1}(δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityRow {
    pub n: usize,
    pub ring: RingSpec,
    pub delta: String,
    pub q: usize,
    pub ext: HomologyGroup,
    pub ext_previous: HomologyGroup,
}

impl StabilityRow {
    pub fn holds(&self) -> bool {
        self.ext == self.ext_previous
    }
}

/// `Ext^q` of `P_n(δ)` and `P_{n-1}(δ)` for every `q` with `2q + 1 <= n`.
pub fn stability_rows(n: usize, ring: RingSpec, deltas: &[Scalar], method: Method) -> Result<Vec<StabilityRow>> {
    if n < 2 {
        return Err(Error::invalid("the stability comparison needs n >= 2"));
    }
    let degrees = (n - 1) / 2 + 1;
    let mut rows = Vec::new();
    for d in deltas {
        let big = compute_ext(&AlgebraContext::new(n, FamilySpec::Partition, ring, d.clone())?, degrees, method)?;
        let small = compute_ext(&AlgebraContext::new(n - 1, FamilySpec::Partition, ring, d.clone())?, degrees, method)?;
        for q in 0..degrees {
            rows.push(StabilityRow {
                n,
                ring,
                delta: d.to_string(),
                q,
                ext: big[q].clone(),
                ext_previous: small[q].clone(),
            });
        }
    }
    Ok(rows)
}

fn cmd_theorem(cfg: &RunConfig, kind: TheoremKind) -> Result<Parts> {
    let n = cfg.n()?;
    let command = format!("theorem {}", kind.name());
    if kind == TheoremKind::StabilityRange {
        let rows = stability_rows(n, cfg.ring, &cfg.deltas, cfg.method)?;
        let all = rows.iter().all(StabilityRow::holds);
        let mut table = Table::new(&["family", "n", "ring", "delta", "q", "ext", "ext_previous", "match"]);
        for row in &rows {
            table.push(vec![
                "P".into(),
                n.to_string(),
                cfg.ring.to_string(),
                row.delta.clone(),
                row.q.to_string(),
                row.ext.describe(cfg.ring),
                row.ext_previous.describe(cfg.ring),
                row.holds().to_string(),
            ]);
        }
        let summary = vec![format!(
            "Ext^q of P_{n} against P_{} over {} for 2q + 1 <= {n}: {}",
            n - 1,
            cfg.ring,
            if all { "all match" } else { "mismatch" }
        )];
        let result = json!({"theorem": kind, "matches": all, "rows": rows});
        return Ok((command, Some(all), result, table, summary));
    }
    let q_max = cfg.max_degree(n);
    let rows = theorem_rows(kind, n, cfg.r, cfg.ring, &cfg.deltas, q_max, cfg.method)?;
    let (family, last) = theorem_family(kind, n, cfg.r);
    let all = rows.iter().all(TheoremRow::holds);
    let mut table = Table::new(&[
        "family",
        "n",
        "ring",
        "delta",
        "q",
        "in_range",
        "tor",
        "tor_oracle",
        "tor_match",
        "ext",
        "ext_oracle",
        "ext_match",
    ]);
    for row in &rows {
        table.push(vec![
            family.to_string(),
            n.to_string(),
            cfg.ring.to_string(),
            row.delta.clone(),
            row.q.to_string(),
            row.in_range.to_string(),
            row.tor.describe(cfg.ring),
            row.tor_oracle.describe(cfg.ring),
            row.tor_matches().to_string(),
            row.ext.describe(cfg.ring),
            row.ext_oracle.describe(cfg.ring),
            row.ext_matches().to_string(),
        ]);
    }
    let through = match last {
        Some(l) => l.min(q_max.saturating_sub(1)),
        None => q_max.saturating_sub(1),
    };
    let summary = vec![format!(
        "{family} n = {n} over {} against S_{n}, compared for q <= {through}: {}",
        cfg.ring,
        if all { "all match" } else { "mismatch" }
    )];
    let result = json!({
        "theorem": kind,
        "family": family,
        "compared_through": through,
        "matches": all,
        "rows": rows,
    });
    Ok((command, Some(all), result, table, summary))
}
