//! Report documents and their JSON / CSV serializations.
//!
//! Every real number is written with 17 significant digits, which is enough
//! to round-trip any binary64 value, so equal runs give equal bytes.

use std::collections::BTreeMap;
use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{Map, Value};

use super::campaign::CampaignOutcome;
use super::config::{CampaignConfig, OutputFormat};
use crate::andk::ChainReport;
use crate::error::{Error, Result};
use crate::hellinger::InequalityReport;

pub const TOOL: &str = "hnof";

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entry {
    Inequality(InequalityReport),
    Chain(Box<ChainReport>),
}

impl Entry {
    fn reports(&self) -> Box<dyn Iterator<Item = &InequalityReport> + '_> {
        match self {
            Entry::Inequality(r) => Box::new(std::iter::once(r)),
            Entry::Chain(c) => Box::new(c.reports()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMargin {
    pub family: String,
    pub count: usize,
    pub failed: usize,
    pub min_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass_count: usize,
    pub fail_count: usize,
    pub families: Vec<FamilyMargin>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: CampaignConfig,
    /// Named scalar results and other non-inequality output.
    pub values: Map<String, Value>,
    pub entries: Vec<Entry>,
    pub campaigns: Vec<CampaignOutcome>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, config: CampaignConfig) -> Self {
        Self {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config,
            values: Map::new(),
            entries: Vec::new(),
            campaigns: Vec::new(),
            summary: Summary {
                pass_count: 0,
                fail_count: 0,
                families: Vec::new(),
            },
        }
    }

    pub fn push(&mut self, report: InequalityReport) {
        self.entries.push(Entry::Inequality(report));
        self.summarize();
    }

    pub fn push_chain(&mut self, chain: ChainReport) {
        self.entries.push(Entry::Chain(Box::new(chain)));
        self.summarize();
    }

    pub fn push_campaign(&mut self, outcome: CampaignOutcome) {
        self.campaigns.push(outcome);
        self.summarize();
    }

    pub fn set_value(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.values.insert(key.into(), value);
    }

    pub fn all_hold(&self) -> bool {
        self.summary.fail_count == 0
    }

    /// Process exit status for this document.
    pub fn exit_code(&self) -> i32 {
        if self.all_hold() {
            0
        } else {
            1
        }
    }

    /// Recomputes the summary from the entries and campaigns.
    fn summarize(&mut self) {
        let mut families: BTreeMap<String, FamilyMargin> = BTreeMap::new();
        let mut add = |family: String, count: usize, failed: usize, margin: f64| {
            let e = families.entry(family.clone()).or_insert(FamilyMargin {
                family,
                count: 0,
                failed: 0,
                min_margin: f64::INFINITY,
            });
            e.count += count;
            e.failed += failed;
            if margin < e.min_margin || margin.is_nan() {
                e.min_margin = margin;
            }
        };
        for entry in &self.entries {
            for r in entry.reports() {
                add(family_of(&r.name).to_string(), 1, usize::from(!r.holds), r.margin);
            }
        }
        for c in &self.campaigns {
            for f in &c.families {
                let name = if f.family == c.campaign.name() {
                    f.family.clone()
                } else {
                    format!("{}/{}", c.campaign.name(), f.family)
                };
                add(name, f.count, f.failed, f.min_margin);
            }
        }
        let total: usize = families.values().map(|f| f.count).sum();
        let failed: usize = families.values().map(|f| f.failed).sum();
        self.summary = Summary {
            pass_count: total - failed,
            fail_count: failed,
            families: families.into_values().collect(),
        };
    }

    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter::default());
        self.serialize(&mut ser).expect("in-memory serialization");
        out.push(b'\n');
        String::from_utf8(out).expect("JSON is UTF-8")
    }

    /// One row per standalone report and one per campaign family.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record([
            "source", "name", "relation", "count", "failed", "lhs", "rhs", "min_margin", "tolerance",
        ])
        .map_err(csv_err)?;
        let mut row = |source: &str, r: &InequalityReport, count: usize, failed: usize, margin: f64| {
            w.write_record([
                source.to_string(),
                r.name.clone(),
                r.relation.as_str().to_string(),
                count.to_string(),
                failed.to_string(),
                sig17(r.lhs),
                sig17(r.rhs),
                sig17(margin),
                sig17(r.tolerance),
            ])
        };
        for entry in &self.entries {
            let source = match entry {
                Entry::Inequality(_) => "report".to_string(),
                Entry::Chain(c) => format!("chain/k={}", c.k),
            };
            for r in entry.reports() {
                row(&source, r, 1, usize::from(!r.holds), r.margin).map_err(csv_err)?;
            }
        }
        for c in &self.campaigns {
            for f in &c.families {
                row(c.campaign.name(), &f.worst, f.count, f.failed, f.min_margin).map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Reports named `a/b` are summarized under family `a`.
fn family_of(name: &str) -> &str {
    name.split('/').next().unwrap_or(name)
}

fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Pretty JSON with every `f64` written as `d.dddddddddddddddde±x`.
#[derive(Default)]
pub struct Sig17Formatter {
    inner: PrettyFormatter<'static>,
}

impl Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}
