use std::io::Write;

use qcongruence::congruence::{Status, Strategy};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::CliError;

pub const CONJECTURE_TAG: &str = "conjecture-evidence";

/// Instance parameters of a row: `n` (with `d`, `r` for two-parameter
/// entries) on the q-side, `p` and `r` on the integer side.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RowParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
}

impl std::fmt::Display for RowParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = [("n", self.n), ("p", self.p), ("d", self.d), ("r", self.r)]
            .iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub id: String,
    pub params: RowParams,
    pub status: Status,
    pub strategy: Strategy,
    pub lhs_degree: i64,
    pub elapsed_ms: u64,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Self {
        let mut s = Summary::default();
        for r in rows {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inapplicable => s.inapplicable += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub engine_version: String,
    pub config: RunConfig,
    pub rows: Vec<Row>,
    pub summary: Summary,
    pub total_elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.ok() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Io(format!("bad report: {e}")))
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json())?,
            Format::Csv => self.write_csv(out)?,
            Format::Table => self.write_table(out)?,
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Flat<'a> {
            id: &'a str,
            n: Option<u64>,
            p: Option<u64>,
            d: Option<u64>,
            r: Option<u64>,
            status: Status,
            strategy: Strategy,
            lhs_degree: i64,
            elapsed_ms: u64,
            detail: &'a str,
            tag: &'a str,
        }
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            w.serialize(Flat {
                id: &r.id,
                n: r.params.n,
                p: r.params.p,
                d: r.params.d,
                r: r.params.r,
                status: r.status,
                strategy: r.strategy,
                lhs_degree: r.lhs_degree,
                elapsed_ms: r.elapsed_ms,
                detail: &r.detail,
                tag: r.tag.as_deref().unwrap_or(""),
            })
            .map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_table(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let params: Vec<String> = self.rows.iter().map(|r| r.params.to_string()).collect();
        let wid = self.rows.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        let wpar = params.iter().map(String::len).max().unwrap_or(6).max(6);
        writeln!(out, "{:wid$}  {:wpar$}  {:12}  {:>7}  {:>9}  detail", "id", "params", "status", "degree", "ms")?;
        for (r, p) in self.rows.iter().zip(&params) {
            let status = match &r.tag {
                Some(_) => format!("{}*", r.status),
                None => r.status.to_string(),
            };
            writeln!(out, "{:wid$}  {:wpar$}  {:12}  {:>7}  {:>9}  {}", r.id, p, status, r.lhs_degree, r.elapsed_ms, r.detail)?;
        }
        let s = &self.summary;
        writeln!(
            out,
            "\n{} pass, {} fail, {} inapplicable, {} error in {} ms (engine {})",
            s.pass, s.fail, s.inapplicable, s.error, self.total_elapsed_ms, self.engine_version
        )?;
        if self.rows.iter().any(|r| r.tag.is_some()) {
            writeln!(out, "* {CONJECTURE_TAG}: open conjecture, checked on this range only")?;
        }
        Ok(())
    }
}
