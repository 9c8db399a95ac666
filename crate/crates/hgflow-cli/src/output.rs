//! Output payloads, the three renderers, and the deterministic thread pool.
//!
//! Every command produces one of three payload shapes: a check report, an
//! evaluation result, or a continuation trace.  Rendering is locale-free and
//! uses shortest round-trip float formatting, so a given payload always
//! produces byte-identical output.

use serde::Serialize;

use hgflow::Complex64;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Quotes one CSV field (RFC 4180 style).
fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn pairs(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().map(|&z| pair(z)).collect()
}

/// One named residual check.
#[derive(Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slot: Option<String>,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            relation: None,
            slot: None,
            residual,
            threshold,
            pass: residual.is_finite() && residual <= threshold,
        }
    }

    pub fn with_relation(mut self, id: String, slot: String) -> Self {
        self.relation = Some(id);
        self.slot = Some(slot);
        self
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub tolerance: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>, degree: Option<usize>, tolerance: f64) -> Self {
        Report { command: command.into(), seed, degree, tolerance, checks: Vec::new(), pass: true }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }
}

#[derive(Serialize)]
pub struct CoeffRow {
    pub m: Vec<usize>,
    pub value: [f64; 2],
}

#[derive(Serialize)]
pub struct EvalOut {
    pub command: String,
    pub method: String,
    pub x: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    pub value: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<CoeffRow>>,
}

#[derive(Serialize)]
pub struct SampleRow {
    pub s: f64,
    pub x: Vec<[f64; 2]>,
    pub y: Vec<[f64; 2]>,
}

#[derive(Serialize)]
pub struct ContinueOut {
    pub command: String,
    pub tolerance: f64,
    pub samples: Vec<SampleRow>,
    #[serde(rename = "final")]
    pub final_value: Vec<[f64; 2]>,
}

pub enum Payload {
    Report(Report),
    Eval(EvalOut),
    Continue(ContinueOut),
}

impl Payload {
    pub fn pass(&self) -> bool {
        match self {
            Payload::Report(r) => r.pass,
            Payload::Eval(_) | Payload::Continue(_) => true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = match self {
                    Payload::Report(r) => serde_json::to_string_pretty(r),
                    Payload::Eval(e) => serde_json::to_string_pretty(e),
                    Payload::Continue(c) => serde_json::to_string_pretty(c),
                }
                .expect("payloads serialize without maps or non-finite floats");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Payload::Report(r) => {
                let tabular = r.checks.iter().any(|c| c.relation.is_some());
                if tabular {
                    out.push_str("relation,slot,discrepancy,result\n");
                    for c in &r.checks {
                        out.push_str(&format!(
                            "{},{},{:e},{}\n",
                            c.relation.as_deref().unwrap_or(""),
                            csv_quote(c.slot.as_deref().unwrap_or("")),
                            c.residual,
                            if c.pass { "PASS" } else { "FAIL" }
                        ));
                    }
                } else {
                    out.push_str("check,residual,threshold,result\n");
                    for c in &r.checks {
                        out.push_str(&format!(
                            "{},{:e},{:e},{}\n",
                            csv_quote(&c.name),
                            c.residual,
                            c.threshold,
                            if c.pass { "PASS" } else { "FAIL" }
                        ));
                    }
                }
            }
            Payload::Eval(e) => {
                if let Some(rows) = &e.coefficients {
                    let n = e.x.len();
                    for i in 1..=n {
                        out.push_str(&format!("m_{i},"));
                    }
                    out.push_str("re,im\n");
                    for row in rows {
                        for mi in &row.m {
                            out.push_str(&format!("{mi},"));
                        }
                        out.push_str(&format!("{},{}\n", row.value[0], row.value[1]));
                    }
                } else {
                    out.push_str("re,im,tail_bound\n");
                    out.push_str(&format!("{},{}", e.value[0], e.value[1]));
                    match e.tail_bound {
                        Some(t) => out.push_str(&format!(",{t:e}\n")),
                        None => out.push_str(",\n"),
                    }
                }
            }
            Payload::Continue(c) => {
                let n = c.samples.first().map(|s| s.x.len()).unwrap_or(0);
                let rank = c.samples.first().map(|s| s.y.len()).unwrap_or(0);
                out.push('s');
                for i in 1..=n {
                    out.push_str(&format!(",x_{i}.re,x_{i}.im"));
                }
                for k in 1..=rank {
                    out.push_str(&format!(",y_{k}.re,y_{k}.im"));
                }
                out.push('\n');
                for row in &c.samples {
                    out.push_str(&format!("{}", row.s));
                    for xy in row.x.iter().chain(row.y.iter()) {
                        out.push_str(&format!(",{},{}", xy[0], xy[1]));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        match self {
            Payload::Report(r) => {
                out.push_str(&r.command);
                if let Some(seed) = r.seed {
                    out.push_str(&format!("  seed={seed}"));
                }
                if let Some(deg) = r.degree {
                    out.push_str(&format!("  degree={deg}"));
                }
                out.push_str(&format!("  tolerance={:e}\n", r.tolerance));
                let tabular = r.checks.iter().any(|c| c.relation.is_some());
                if tabular {
                    out.push_str(&format!(
                        "  {:<18} {:<6} {:<12} result\n",
                        "relation", "slot", "discrepancy"
                    ));
                    for c in &r.checks {
                        out.push_str(&format!(
                            "  {:<18} {:<6} {:<12} {}\n",
                            c.relation.as_deref().unwrap_or(""),
                            c.slot.as_deref().unwrap_or(""),
                            format!("{:.3e}", c.residual),
                            if c.pass { "PASS" } else { "FAIL" }
                        ));
                    }
                } else {
                    for c in &r.checks {
                        out.push_str(&format!(
                            "  {}  {:<40} residual {:.3e}  threshold {:e}\n",
                            if c.pass { "PASS" } else { "FAIL" },
                            c.name,
                            c.residual,
                            c.threshold
                        ));
                    }
                }
                let failed = r.checks.iter().filter(|c| !c.pass).count();
                if r.pass {
                    out.push_str(&format!("result: PASS ({} checks)\n", r.checks.len()));
                } else {
                    out.push_str(&format!(
                        "result: FAIL ({failed} of {} checks above tolerance)\n",
                        r.checks.len()
                    ));
                }
            }
            Payload::Eval(e) => {
                let xs: Vec<String> = e
                    .x
                    .iter()
                    .map(|&[re, im]| crate::input::fmt_complex(Complex64::new(re, im)))
                    .collect();
                out.push_str(&format!(
                    "F({}) = {}  [{}",
                    xs.join(", "),
                    crate::input::fmt_complex(Complex64::new(e.value[0], e.value[1])),
                    e.method
                ));
                if let Some(deg) = e.degree {
                    out.push_str(&format!(", degree {deg}"));
                }
                if let Some(nodes) = e.nodes {
                    out.push_str(&format!(", {nodes} nodes/axis"));
                }
                out.push_str("]\n");
                if let Some(t) = e.tail_bound {
                    out.push_str(&format!("tail bound {t:.3e}\n"));
                }
                if let Some(rows) = &e.coefficients {
                    for row in rows {
                        let m: Vec<String> = row.m.iter().map(|v| v.to_string()).collect();
                        out.push_str(&format!(
                            "c[{}] = {}\n",
                            m.join(","),
                            crate::input::fmt_complex(Complex64::new(row.value[0], row.value[1]))
                        ));
                    }
                }
            }
            Payload::Continue(c) => {
                for row in &c.samples {
                    let xs: Vec<String> = row
                        .x
                        .iter()
                        .map(|&[re, im]| crate::input::fmt_complex(Complex64::new(re, im)))
                        .collect();
                    let ys: Vec<String> = row
                        .y
                        .iter()
                        .map(|&[re, im]| crate::input::fmt_complex(Complex64::new(re, im)))
                        .collect();
                    out.push_str(&format!(
                        "s = {:<6} x = ({})  y = ({})\n",
                        row.s,
                        xs.join(", "),
                        ys.join(", ")
                    ));
                }
            }
        }
        out
    }
}

/// Worker-thread cap: HGFLOW_THREADS when set to a positive integer,
/// otherwise the machine's available parallelism.
pub fn thread_cap() -> usize {
    std::env::var("HGFLOW_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Maps `f` over `items` on up to `thread_cap()` threads.  Items are split
/// into contiguous chunks and results are reassembled in input order, so the
/// output does not depend on the thread count.
pub fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    if items.is_empty() {
        return Vec::new();
    }
    let cap = thread_cap().min(items.len());
    if cap <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(cap);
    let mut out = Vec::with_capacity(items.len());
    std::thread::scope(|scope| {
        let fr = &f;
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|ch| scope.spawn(move || ch.iter().map(fr).collect::<Vec<U>>()))
            .collect();
        for h in handles {
            out.extend(h.join().expect("worker thread panicked"));
        }
    });
    out
}
