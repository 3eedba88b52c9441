//! Built-in worked examples with their expected results.

use rayon::prelude::*;
use serde::Serialize;

use crate::run::{run, CliError, Command, Request};
use crate::record::ResultRecord;

pub struct Row {
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub p: u32,
    pub vars: &'static str,
    pub f: &'static str,
    pub depth: usize,
    pub sequence: &'static [u32],
    pub verdict: &'static str,
    pub certified: bool,
    /// Expected exact threshold as `num/den`, when one is produced.
    pub ppt_exact: Option<&'static str>,
    pub ppt_partial: Option<&'static str>,
    pub annotation: Option<&'static str>,
}

const PP: &str = "PerfectoidPure";
const NPP: &str = "NotPerfectoidPure";

const QUARTIC_CROSS: &str =
    "x1^4 + x2^4 + x3^4 + x4^4 + x1^2*x2^2 + x1^2*x3^2 + x2^2*x3^2 + x1*x2*x3*(x1 + x2 + x3)";
const QUARTIC_CROSS_PLUS: &str = "x1^4 + x2^4 + x3^4 + x4^4 + x1^2*x2^2 + x1^2*x3^2 + x2^2*x3^2 \
     + x1*x2*x3*(x1 + x2 + x3) + p*x1*x2*x3*x4";

pub const ROWS: &[Row] = &[
    Row {
        name: "sum-of-squares-p2",
        tags: &["quick-criterion", "c3"],
        p: 2,
        vars: "x,y",
        f: "x^2 + y^2",
        depth: 7,
        sequence: &[0, 1, 1, 1, 1, 1, 1, 1],
        verdict: PP,
        certified: true,
        ppt_exact: Some("0"),
        ppt_partial: Some("0"),
        annotation: None,
    },
    Row {
        name: "sum-of-cubes-p3",
        tags: &["p-th-powers"],
        p: 3,
        vars: "x,y,z",
        f: "x^3 + y^3 + z^3",
        depth: 5,
        sequence: &[0, 2, 2, 2, 2, 2],
        verdict: PP,
        certified: false,
        ppt_exact: Some("0"),
        ppt_partial: Some("0"),
        annotation: Some("no quick criterion fires at p = 3; purity holds up to the computed depth"),
    },
    Row {
        name: "fermat-cubic-p2",
        tags: &["fermat", "quick-criterion", "c1"],
        p: 2,
        vars: "x,y,z",
        f: "x^3 + y^3 + z^3",
        depth: 7,
        sequence: &[0, 1, 0, 1, 0, 1, 0, 1],
        verdict: PP,
        certified: true,
        ppt_exact: Some("1/3"),
        ppt_partial: Some("42/128"),
        annotation: None,
    },
    Row {
        name: "fermat-quartic-p3",
        tags: &["fermat", "k3", "quick-criterion", "c1"],
        p: 3,
        vars: "x1..x4",
        f: "x1^4 + x2^4 + x3^4 + x4^4",
        depth: 6,
        sequence: &[0, 2, 0, 2, 0, 2, 0],
        verdict: PP,
        certified: true,
        ppt_exact: Some("1/4"),
        ppt_partial: None,
        annotation: None,
    },
    Row {
        name: "fermat-quartic-p2",
        tags: &["fermat", "k3", "quick-criterion", "c2"],
        p: 2,
        vars: "x1..x4",
        f: "x1^4 + x2^4 + x3^4 + x4^4",
        depth: 3,
        sequence: &[0, 1, 2, 2],
        verdict: NPP,
        certified: true,
        ppt_exact: None,
        ppt_partial: None,
        annotation: None,
    },
    Row {
        name: "fermat-quartic-plus-p2",
        tags: &["fermat", "k3", "quick-criterion", "c3"],
        p: 2,
        vars: "x1..x4",
        f: "x1^4 + x2^4 + x3^4 + x4^4 + p*x1*x2*x3*x4",
        depth: 5,
        sequence: &[0, 1, 1, 1, 1, 1],
        verdict: PP,
        certified: true,
        ppt_exact: Some("0"),
        ppt_partial: Some("0"),
        annotation: None,
    },
    Row {
        name: "fermat-quintic-p2",
        tags: &["fermat", "quick-criterion", "c2"],
        p: 2,
        vars: "x1..x5",
        f: "x1^5 + x2^5 + x3^5 + x4^5 + x5^5",
        depth: 3,
        sequence: &[0, 1, 2, 2],
        verdict: NPP,
        certified: true,
        ppt_exact: None,
        ppt_partial: None,
        annotation: Some("r = 1: flagged, outside the r >= 2 hypothesis of the general theorem"),
    },
    Row {
        name: "fermat-quintic-plus-p2",
        tags: &["fermat", "quick-criterion", "c3"],
        p: 2,
        vars: "x1..x5",
        f: "x1^5 + x2^5 + x3^5 + x4^5 + x5^5 + p*x1*x2*x3*x4*x5",
        depth: 6,
        sequence: &[0, 1, 1, 1, 1, 1, 1],
        verdict: PP,
        certified: true,
        ppt_exact: Some("0"),
        ppt_partial: Some("0"),
        annotation: None,
    },
    Row {
        name: "quartic-cross-terms-p2",
        tags: &["k3", "quick-criterion", "c2"],
        p: 2,
        vars: "x1..x4",
        f: QUARTIC_CROSS,
        depth: 3,
        sequence: &[0, 1, 2, 2],
        verdict: NPP,
        certified: true,
        ppt_exact: None,
        ppt_partial: None,
        annotation: None,
    },
    Row {
        name: "quartic-cross-terms-plus-p2",
        tags: &["k3", "quick-criterion", "c3"],
        p: 2,
        vars: "x1..x4",
        f: QUARTIC_CROSS_PLUS,
        depth: 5,
        sequence: &[0, 1, 1, 1, 1, 1],
        verdict: PP,
        certified: true,
        ppt_exact: Some("0"),
        ppt_partial: Some("0"),
        annotation: None,
    },
    Row {
        name: "fermat-cubic-p5",
        tags: &["fermat", "fermat-cy"],
        p: 5,
        vars: "x1..x3",
        f: "x1^3 + x2^3 + x3^3",
        depth: 4,
        sequence: &[0, 1, 0, 1, 0],
        verdict: PP,
        certified: true,
        ppt_exact: Some("19/24"),
        ppt_partial: Some("494/625"),
        annotation: None,
    },
    Row {
        name: "fermat-quartic-p5",
        tags: &["fermat", "fermat-cy", "k3"],
        p: 5,
        vars: "x1..x4",
        f: "x1^4 + x2^4 + x3^4 + x4^4",
        depth: 4,
        sequence: &[0, 0, 0, 0, 0],
        verdict: PP,
        certified: true,
        ppt_exact: Some("1"),
        ppt_partial: Some("624/625"),
        annotation: None,
    },
    Row {
        name: "fermat-cubic-p7",
        tags: &["fermat", "fermat-cy"],
        p: 7,
        vars: "x1..x3",
        f: "x1^3 + x2^3 + x3^3",
        depth: 4,
        sequence: &[0, 0, 0, 0, 0],
        verdict: PP,
        certified: true,
        ppt_exact: Some("1"),
        ppt_partial: Some("2400/2401"),
        annotation: None,
    },
    Row {
        name: "fermat-quartic-p7",
        tags: &["fermat", "fermat-cy", "k3"],
        p: 7,
        vars: "x1..x4",
        f: "x1^4 + x2^4 + x3^4 + x4^4",
        depth: 4,
        sequence: &[0, 2, 0, 2, 0],
        verdict: PP,
        certified: true,
        ppt_exact: Some("17/24"),
        ppt_partial: Some("1700/2401"),
        annotation: Some(
            "paper discrepancy: the published closed form 2/(p^2-1) = 1/24 holds only at p = 3; \
             the threshold sum over (0,2,0,2,...) gives (p^2-2p-1)/(p^2-1) = 17/24",
        ),
    },
    Row {
        name: "regular-3-minus-x2-p3",
        tags: &["regular"],
        p: 3,
        vars: "x",
        f: "3 - x^2",
        depth: 4,
        sequence: &[0, 1, 1, 1, 1],
        verdict: PP,
        certified: true,
        ppt_exact: Some("1/2"),
        ppt_partial: Some("40/81"),
        annotation: None,
    },
    Row {
        name: "regular-x-plus-y3-p2",
        tags: &["regular"],
        p: 2,
        vars: "x,y",
        f: "x + y^3",
        depth: 5,
        sequence: &[0, 0, 0, 0, 0, 0],
        verdict: PP,
        certified: true,
        ppt_exact: Some("1"),
        ppt_partial: Some("31/32"),
        annotation: None,
    },
    Row {
        name: "regular-x-plus-y3-p3",
        tags: &["regular"],
        p: 3,
        vars: "x,y",
        f: "x + y^3",
        depth: 5,
        sequence: &[0, 0, 0, 0, 0, 0],
        verdict: PP,
        certified: true,
        ppt_exact: Some("1"),
        ppt_partial: Some("242/243"),
        annotation: None,
    },
];

impl Row {
    pub fn matches_filter(&self, filter: &str) -> bool {
        filter.is_empty() || self.name.contains(filter) || self.tags.iter().any(|t| t.contains(filter))
    }

    pub fn request(&self) -> Request {
        let vars = crate::parse::expand_vars(self.vars).expect("corpus variable lists are valid");
        Request {
            vars,
            ..Request::new(Command::Ppt, self.p, &[], self.f).with_depth(self.depth)
        }
    }

    /// Differences between the record and the stored expectations.
    pub fn diff(&self, rec: &ResultRecord) -> Vec<String> {
        let mut out = Vec::new();
        if rec.sequence.as_deref() != Some(self.sequence) {
            out.push(format!(
                "sequence {:?}, expected {:?}",
                rec.sequence, self.sequence
            ));
        }
        match &rec.verdict {
            Some(v) if v.kind == self.verdict && v.certified == self.certified => {}
            Some(v) => out.push(format!(
                "verdict {} (certified {}), expected {} (certified {})",
                v.kind, v.certified, self.verdict, self.certified
            )),
            None => out.push("no verdict".to_string()),
        }
        let exact = rec
            .ppt
            .as_ref()
            .and_then(|p| p.exact.as_ref())
            .map(|e| e.value.display());
        if exact.as_deref() != self.ppt_exact {
            out.push(format!("exact ppt {exact:?}, expected {:?}", self.ppt_exact));
        }
        if let Some(want) = self.ppt_partial {
            let got = rec.ppt.as_ref().map(|p| p.partial.display());
            if got.as_deref() != Some(reduce(want).as_str()) {
                out.push(format!("partial ppt {got:?}, expected {want}"));
            }
        }
        out
    }
}

/// Reduces a literal `num/den` so expectations may be written unreduced.
fn reduce(s: &str) -> String {
    let Some((n, d)) = s.split_once('/') else {
        return s.to_string();
    };
    let (n, d): (u64, u64) = (n.parse().expect("numeric"), d.parse().expect("numeric"));
    let g = gcd(n, d);
    if d / g == 1 {
        (n / g).to_string()
    } else {
        format!("{}/{}", n / g, d / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Serialize)]
pub struct CorpusResult {
    pub name: String,
    pub tags: Vec<String>,
    pub annotation: Option<String>,
    pub ok: bool,
    pub mismatches: Vec<String>,
    pub record: Option<ResultRecord>,
}

/// Runs every row matching `filter` (all rows for an empty filter), in
/// parallel, and compares against the stored expectations.
pub fn run_corpus(filter: &str, cache: Option<&crate::cache::Cache>) -> Vec<CorpusResult> {
    let rows: Vec<&Row> = ROWS.iter().filter(|r| r.matches_filter(filter)).collect();
    rows.par_iter()
        .map(|row| {
            let (record, mismatches) = match run(&row.request(), cache) {
                Ok(rec) => {
                    let d = row.diff(&rec);
                    (Some(rec), d)
                }
                Err(e) => (None, vec![format!("error: {e}")]),
            };
            CorpusResult {
                name: row.name.to_string(),
                tags: row.tags.iter().map(|t| t.to_string()).collect(),
                annotation: row.annotation.map(str::to_string),
                ok: mismatches.is_empty(),
                mismatches,
                record,
            }
        })
        .collect()
}

pub fn check(results: &[CorpusResult]) -> Result<(), CliError> {
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.ok)
        .map(|r| r.name.clone())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::CorpusMismatch(bad))
    }
}

pub fn render_table(results: &[CorpusResult]) -> String {
    let mut out = format!(
        "{:<28} {:<6} {:<26} {:<34} {}\n",
        "example", "status", "sequence", "verdict", "ppt"
    );
    for r in results {
        let (seq, verdict, ppt) = match &r.record {
            Some(rec) => (
                rec.sequence
                    .as_ref()
                    .map(|s| format!("{s:?}"))
                    .unwrap_or_default(),
                rec.verdict.as_ref().map(|v| v.summary()).unwrap_or_default(),
                rec.ppt
                    .as_ref()
                    .map(|p| match &p.exact {
                        Some(e) => e.value.display(),
                        None => format!("~{}", p.partial.display()),
                    })
                    .unwrap_or_else(|| "-".to_string()),
            ),
            None => Default::default(),
        };
        out.push_str(&format!(
            "{:<28} {:<6} {:<26} {:<34} {}\n",
            r.name,
            if r.ok { "ok" } else { "FAIL" },
            seq,
            verdict,
            ppt
        ));
        for m in &r.mismatches {
            out.push_str(&format!("    mismatch: {m}\n"));
        }
        if let Some(a) = &r.annotation {
            out.push_str(&format!("    note: {a}\n"));
        }
    }
    out
}
