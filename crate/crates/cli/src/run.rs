use std::sync::Arc;
use std::time::Instant;

use pptlab_core::ladder::splitting_sequence_with;
use pptlab_core::verdict::{
    check_quick_criteria, fermat_exponent, qfs_height, regularity_test, ClassifyOptions, NuTable,
};
use pptlab_core::{analyze, Context, HypersurfaceInput, LadderOptions, Limits, SplitSequence};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cache::Cache;
use crate::parse::{parse_poly, ParseError};
use crate::record::{
    nu_records, ContextRecord, CriteriaRecord, ErrorBody, ErrorRecord, ResultRecord, Timings,
    SCHEMA_VERSION, TOOL_VERSION,
};

pub const MAX_DEPTH: usize = 24;
pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_EMAX: u32 = 5;
pub const MAX_EMAX: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Sequence,
    Ppt,
    Classify,
    QfsHeight,
    Fpt,
    Criteria,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sequence => "sequence",
            Command::Ppt => "ppt",
            Command::Classify => "classify",
            Command::QfsHeight => "qfs-height",
            Command::Fpt => "fpt",
            Command::Criteria => "criteria",
        }
    }

    fn uses_sequence(self) -> bool {
        !matches!(self, Command::Fpt | Command::Criteria)
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub p: u32,
    pub vars: Vec<String>,
    pub f: String,
    pub depth: usize,
    pub emax: u32,
    pub strict_r1: bool,
    pub trace: bool,
    pub limits: Limits,
}

impl Request {
    pub fn new(command: Command, p: u32, vars: &[&str], f: &str) -> Self {
        Request {
            command,
            p,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            f: f.to_string(),
            depth: DEFAULT_DEPTH,
            emax: DEFAULT_EMAX,
            strict_r1: false,
            trace: false,
            limits: Limits::default(),
        }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] pptlab_core::Error),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("corpus mismatch in {} row(s): {}", .0.len(), .0.join(", "))]
    CorpusMismatch(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(pptlab_core::Error::ResourceLimit { .. }) => 3,
            CliError::Core(e) if e.is_internal() => 4,
            CliError::CorpusMismatch(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Parse(ParseError::Syntax { .. }) => "SyntaxError".into(),
            CliError::Parse(ParseError::UnknownVariable { .. }) => "UnknownVariable".into(),
            CliError::Parse(ParseError::Arithmetic(_)) => "ArithmeticError".into(),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or("Error")
                    .to_string()
            }
            CliError::Usage(_) => "InvalidArgument".into(),
            CliError::CorpusMismatch(_) => "CorpusMismatch".into(),
        }
    }

    pub fn to_record(&self) -> ErrorRecord {
        ErrorRecord {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            error: ErrorBody {
                kind: self.kind(),
                message: self.to_string(),
                exit_code: self.exit_code(),
            },
        }
    }
}

/// The fields that determine a result. Renamed variables give a different
/// key: no alpha-renaming is attempted.
#[derive(Serialize)]
struct CanonicalRequest<'a> {
    version: &'a str,
    command: &'a str,
    p: u32,
    vars: &'a [String],
    f: &'a str,
    depth: Option<usize>,
    emax: Option<u32>,
    strict_r1: bool,
    trace: bool,
    max_monomials: usize,
    max_generators: usize,
}

pub fn request_key(req: &Request, canonical_f: &str) -> String {
    let canon = CanonicalRequest {
        version: TOOL_VERSION,
        command: req.command.name(),
        p: req.p,
        vars: &req.vars,
        f: canonical_f,
        depth: req.command.uses_sequence().then_some(req.depth),
        emax: (req.command == Command::Fpt).then_some(req.emax),
        strict_r1: req.strict_r1,
        trace: req.trace,
        max_monomials: req.limits.max_monomials,
        max_generators: req.limits.max_generators,
    };
    let bytes = serde_json::to_vec(&canon).expect("plain struct serializes");
    hex::encode(Sha256::digest(&bytes))
}

fn validate_request(req: &Request) -> Result<(), CliError> {
    if req.command.uses_sequence() && !(1..=MAX_DEPTH).contains(&req.depth) {
        return Err(CliError::Usage(format!(
            "depth must lie in 1..={MAX_DEPTH} (got {})",
            req.depth
        )));
    }
    if req.command == Command::Fpt && !(1..=MAX_EMAX).contains(&req.emax) {
        return Err(CliError::Usage(format!(
            "emax must lie in 1..={MAX_EMAX} (got {})",
            req.emax
        )));
    }
    Ok(())
}

/// Parses and validates the input polynomial of a request.
pub fn prepare(req: &Request) -> Result<HypersurfaceInput, CliError> {
    validate_request(req)?;
    let ctx: Arc<Context> = Context::with_limits(req.p, &req.vars, req.limits)?;
    let f = parse_poly(&req.f, &ctx)?;
    Ok(HypersurfaceInput::validate(&ctx, f)?)
}

pub fn run(req: &Request, cache: Option<&Cache>) -> Result<ResultRecord, CliError> {
    let h = prepare(req)?;
    let canonical_f = h.f_lift().to_string();
    let key = request_key(req, &canonical_f);
    if let Some(mut rec) = cache.and_then(|c| c.get(&key)) {
        rec.timings.cached = true;
        return Ok(rec);
    }
    let rec = compute(req, &h, key)?;
    if let Some(c) = cache {
        c.put(&rec.input_hash, &rec);
    }
    Ok(rec)
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn compute(req: &Request, h: &HypersurfaceInput, key: String) -> Result<ResultRecord, CliError> {
    let start = Instant::now();
    let mut rec = ResultRecord {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        command: req.command.name().to_string(),
        input_hash: key,
        context: ContextRecord {
            p: req.p,
            vars: req.vars.clone(),
            f: h.f_lift().to_string(),
        },
        depth: None,
        sequence: None,
        terminated_at_p: None,
        verdict: None,
        ppt: None,
        qfs_height: None,
        nu_table: None,
        fpt_approx: None,
        criteria: None,
        trace: None,
        timings: Timings::zeroed(),
    };

    let seq: Option<SplitSequence> = if req.command.uses_sequence() {
        let opts = LadderOptions {
            trace: req.trace,
            ..LadderOptions::default()
        };
        let seq = splitting_sequence_with(h, req.depth, opts)?;
        rec.depth = Some(req.depth);
        rec.sequence = Some(seq.values.clone());
        rec.terminated_at_p = seq.terminated_at_p;
        rec.timings.per_depth_ms = seq.step_times.iter().copied().map(ms).collect();
        rec.trace = seq.per_step_ideals.as_ref().map(|ideals| {
            ideals
                .iter()
                .map(|i| i.gens().iter().map(|g| g.to_string()).collect())
                .collect()
        });
        Some(seq)
    } else {
        None
    };

    match req.command {
        Command::Sequence => {}
        Command::Ppt | Command::Classify => {
            let seq = seq.as_ref().expect("sequence computed");
            let opts = ClassifyOptions {
                strict_r1: req.strict_r1,
            };
            let a = analyze(h, seq, opts)?;
            rec.verdict = Some((&a.verdict).into());
            rec.ppt = a.ppt.as_ref().map(Into::into);
            rec.criteria = Some(CriteriaRecord::new(&a.criteria, a.regular, a.fermat));
        }
        Command::QfsHeight => {
            rec.qfs_height = Some(qfs_height(seq.as_ref().expect("sequence computed")).into());
        }
        Command::Fpt => {
            let table = NuTable::compute(h.f_res(), req.emax)?;
            rec.fpt_approx = table.ratio(req.emax).as_ref().map(Into::into);
            rec.nu_table = Some(nu_records(&table));
        }
        Command::Criteria => {
            let report = check_quick_criteria(h)?;
            let fermat = fermat_exponent(h).filter(|&n| req.p > n);
            rec.criteria = Some(CriteriaRecord::new(&report, regularity_test(h), fermat));
        }
    }
    rec.timings.total_ms = ms(start.elapsed());
    Ok(rec)
}

/// Plain-text rendering of a record.
pub fn render_text(rec: &ResultRecord) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!(
        "f = {}  over p = {} in ({})",
        rec.context.f,
        rec.context.p,
        rec.context.vars.join(", ")
    ));
    if let Some(seq) = &rec.sequence {
        let vals: Vec<String> = seq.iter().map(u32::to_string).collect();
        line(format!("sequence: ({})", vals.join(", ")));
    }
    if let Some(v) = &rec.verdict {
        line(format!("verdict: {}", v.summary()));
    }
    if let Some(ppt) = &rec.ppt {
        line(format!(
            "ppt partial sum: {} (~{:.6})",
            ppt.partial.display(),
            ppt.partial.approx
        ));
        match &ppt.exact {
            Some(e) => line(format!(
                "ppt exact: {} (preperiod {}, period {}{})",
                e.value.display(),
                e.preperiod,
                e.period,
                if e.conjectural {
                    ", conjectural: period observed only"
                } else {
                    ""
                }
            )),
            None => line("ppt exact: no period detected".to_string()),
        }
    } else if rec.verdict.is_some() {
        line("ppt: undefined (sequence reaches p)".to_string());
    }
    if let Some(q) = &rec.qfs_height {
        let s = match (q.kind.as_str(), q.value) {
            ("Finite", Some(h)) => format!("quasi-F-split height: {h}"),
            ("ExceedsDepth", Some(d)) => format!("quasi-F-split height: > {d}"),
            _ => "quasi-F-split height: not quasi-F-split".to_string(),
        };
        line(s);
    }
    if let Some(table) = &rec.nu_table {
        for row in table {
            line(format!(
                "nu(p^{}) = {}  ratio {} (~{:.6})",
                row.e,
                row.nu,
                row.ratio.display(),
                row.ratio.approx
            ));
        }
    }
    if let Some(fpt) = &rec.fpt_approx {
        line(format!("fpt approximation: {}", fpt.display()));
    }
    if let Some(c) = &rec.criteria {
        if c.precondition {
            let sat = if c.satisfied.is_empty() {
                "none".to_string()
            } else {
                c.satisfied.join(", ")
            };
            line(format!("quick criteria satisfied: {sat}"));
        } else if let Some(note) = &c.note {
            line(format!("quick criteria: {note}"));
        }
        line(format!("regular: {}", if c.regular { "yes" } else { "no" }));
        if let Some(n) = c.fermat_exponent {
            line(format!("Fermat hypersurface of degree {n} with p > N"));
        }
    }
    if let Some(trace) = &rec.trace {
        for (i, gens) in trace.iter().enumerate() {
            line(format!("I_{} = ({})", i + 1, gens.join(", ")));
        }
    }
    out
}
