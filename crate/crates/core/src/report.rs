//! Problem spec files, the `parabolica.report/1` document, and its
//! text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::grading::{LeviIrrepComponent, ParabolicGrading};
use crate::prolongation::{
    cohomology, construct_v, contact_bound_closed_form, contact_e_label, e_and_orders_of, grading_decomposition,
    top_eigen_gap, CohomologyReport, Orders,
};
use crate::root_system::{RootDatum, Weight};
use crate::verify::{verify_case, VerificationReport};
use crate::weights::{weyl_dim, IrrepLabel};

pub const REPORT_SCHEMA: &str = "parabolica.report/1";

/// Input document, JSON or TOML.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub lie_type: String,
    /// Crossed nodes, 1-based.
    pub sigma: Vec<usize>,
    /// Highest weight of `E` on the uncrossed nodes, in increasing node order.
    #[serde(default)]
    pub e_weight: Vec<i64>,
    /// Orders `r_j` keyed by crossed node; missing nodes default to 1.
    #[serde(default)]
    pub orders: BTreeMap<String, usize>,
    #[serde(default)]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_cap: Option<usize>,
    /// Highest weight of `V` itself; overrides `e_weight`/`orders` when
    /// those are absent and must agree with them otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_weight: Option<Vec<i64>>,
}

/// Error in an input document, with the offending field or position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError(pub String);

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl ProblemSpec {
    /// Parses by extension (`.json`, `.toml`); otherwise tries JSON, then
    /// TOML.
    pub fn parse(text: &str, path: Option<&Path>) -> std::result::Result<Self, SpecError> {
        let name = path.map(|p| p.display().to_string()).unwrap_or_else(|| "<spec>".into());
        let ext = path.and_then(|p| p.extension()).and_then(|e| e.to_str()).unwrap_or("");
        let json = || serde_json::from_str::<Self>(text).map_err(|e| SpecError(format!("{name}: {e}")));
        let toml = || toml::from_str::<Self>(text).map_err(|e| SpecError(format!("{name}: {}", e.to_string().trim_end())));
        match ext {
            "json" => json(),
            "toml" => toml(),
            _ => json().or_else(|je| toml().map_err(|te| SpecError(format!("{je}\n{te}")))),
        }
    }

    pub fn load(path: &Path) -> std::result::Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|e| SpecError(format!("{}: {e}", path.display())))?;
        Self::parse(&text, Some(path))
    }

    pub fn grading(&self) -> std::result::Result<ParabolicGrading, SpecError> {
        let field = |f: &str, e: Error| SpecError(format!("field `{f}`: {e}"));
        let d = RootDatum::from_type_str(&self.lie_type).map_err(|e| field("lie_type", e))?;
        ParabolicGrading::new(d, &self.sigma).map_err(|e| field("sigma", e))
    }

    pub fn parsed_orders(&self, g: &ParabolicGrading) -> std::result::Result<Orders, SpecError> {
        let sigma = g.sigma_labels();
        let mut out = Orders::new();
        for (k, &r) in &self.orders {
            let node: usize = k.trim().parse().map_err(|_| SpecError(format!("field `orders`: key `{k}` is not a node index")))?;
            if !sigma.contains(&node) {
                return Err(SpecError(format!("field `orders`: node {node} is not crossed")));
            }
            if r == 0 {
                return Err(SpecError(format!("field `orders`: order for node {node} must be positive")));
            }
            out.insert(node, r);
        }
        Ok(out)
    }

    /// `E` from `e_weight`.
    pub fn e_label(&self, g: &ParabolicGrading) -> std::result::Result<IrrepLabel, SpecError> {
        let want = g.levi_ss_nodes.len();
        if self.e_weight.len() != want {
            return Err(SpecError(format!(
                "field `e_weight`: expected {want} entries (uncrossed nodes {:?}), got {}",
                g.levi_labels(),
                self.e_weight.len()
            )));
        }
        if self.e_weight.iter().any(|&x| x < 0) {
            return Err(SpecError("field `e_weight`: entries must be nonnegative".into()));
        }
        Ok(IrrepLabel::levi(Weight(self.e_weight.clone())))
    }

    /// `V` from `v_weight` or from `E` and the orders.
    pub fn v_label(&self, g: &ParabolicGrading) -> std::result::Result<IrrepLabel, SpecError> {
        let has_e = !self.e_weight.is_empty() || !self.orders.is_empty();
        match &self.v_weight {
            Some(v) => {
                let label = IrrepLabel::ambient(Weight(v.clone()));
                weyl_dim(&g.datum, &label.weight).map_err(|e| SpecError(format!("field `v_weight`: {e}")))?;
                if has_e {
                    let built = self.constructed(g)?;
                    if built != label {
                        return Err(SpecError(format!(
                            "field `v_weight`: {} disagrees with e_weight/orders, which give {}",
                            label.weight, built.weight
                        )));
                    }
                }
                Ok(label)
            }
            None => self.constructed(g),
        }
    }

    fn constructed(&self, g: &ParabolicGrading) -> std::result::Result<IrrepLabel, SpecError> {
        let e = self.e_label(g)?;
        let orders = self.parsed_orders(g)?;
        construct_v(g, &e, &orders).map_err(|e| SpecError(format!("field `e_weight`: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    pub degree: i64,
    #[serde(with = "crate::decimal")]
    pub dim: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingSummary {
    pub lie_type: String,
    pub sigma: Vec<usize>,
    pub depth: usize,
    pub dims: Vec<GradedDim>,
    pub center_dim: usize,
    /// Uncrossed nodes grouped into connected components of the diagram.
    pub levi_components: Vec<Vec<usize>>,
    pub contact: bool,
    pub g_minus1: Vec<LeviIrrepComponent>,
}

impl GradingSummary {
    pub fn of(g: &ParabolicGrading) -> Self {
        let depth = g.depth as i64;
        let dims = (-depth..=depth).map(|i| GradedDim { degree: i, dim: BigUint::from(g.dim(i)) }).collect();
        GradingSummary {
            lie_type: g.datum.lie_type.map(|t| t.to_string()).unwrap_or_default(),
            sigma: g.sigma_labels(),
            depth: g.depth,
            dims,
            center_dim: g.center_dim,
            levi_components: levi_components(g),
            contact: g.is_contact(),
            g_minus1: g.g_minus1_decomposition(),
        }
    }
}

fn levi_components(g: &ParabolicGrading) -> Vec<Vec<usize>> {
    let nodes = &g.levi_ss_nodes;
    let mut seen = vec![false; nodes.len()];
    let mut out = Vec::new();
    for s in 0..nodes.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let a = nodes[comp[k]];
            for t in 0..nodes.len() {
                if !seen[t] && g.datum.cartan[a][nodes[t]] != 0 {
                    seen[t] = true;
                    comp.push(t);
                }
            }
            k += 1;
        }
        let mut labels: Vec<usize> = comp.into_iter().map(|t| nodes[t] + 1).collect();
        labels.sort_unstable();
        out.push(labels);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub grading: GradingSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_label: Option<IrrepLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Orders>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_label: Option<IrrepLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_decimal")]
    pub bound: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// `dim V_0, ..., dim V_N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading_dims: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologyReport>,
    /// Weighted jet fiber dimensions of `E` for orders `0..=N`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet_fiber_dims: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

mod opt_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

impl Report {
    fn new(command: &str, g: &ParabolicGrading) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            command: command.into(),
            grading: GradingSummary::of(g),
            e_label: None,
            orders: None,
            v_label: None,
            bound: None,
            n: None,
            grading_dims: None,
            cohomology: None,
            jet_fiber_dims: None,
            verification: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.verification.as_ref().is_some_and(|v| !v.pass)
    }
}

/// Errors of a command run: bad input (exit 2) or a failed check (exit 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunError {
    Input(String),
    Failure(String),
}

impl From<SpecError> for RunError {
    fn from(e: SpecError) -> Self {
        RunError::Input(e.0)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::Inconsistent(_) | Error::Construction(_) => RunError::Failure(e.to_string()),
            _ => RunError::Input(e.to_string()),
        }
    }
}

pub fn cmd_grade(spec: &ProblemSpec) -> std::result::Result<Report, RunError> {
    let g = spec.grading()?;
    Ok(Report::new("grade", &g))
}

fn fill_module(report: &mut Report, spec: &ProblemSpec, g: &ParabolicGrading) -> std::result::Result<IrrepLabel, RunError> {
    let v = spec.v_label(g)?;
    let (e, orders) = e_and_orders_of(g, &v)?;
    let dec = grading_decomposition(g, &v)?;
    let dim_e = weyl_dim(&g.levi, &e.weight)?;
    let n = top_eigen_gap(g, &v.weight)?;
    let dim_e: usize = dim_e.to_string().parse().map_err(|_| RunError::Input("dim E too large".into()))?;
    report.bound = Some(weyl_dim(&g.datum, &v.weight)?);
    report.n = Some(n);
    report.grading_dims = Some(dec.dims.iter().map(|d| d.to_string()).collect());
    report.cohomology = Some(cohomology(g, &v)?);
    report.jet_fiber_dims = Some((0..=n).map(|i| g.weighted_jet_fiber_dim(i, dim_e).to_string()).collect());
    report.e_label = Some(e);
    report.orders = Some(orders);
    report.v_label = Some(v.clone());
    Ok(v)
}

pub fn cmd_bound(spec: &ProblemSpec) -> std::result::Result<Report, RunError> {
    let g = spec.grading()?;
    let mut report = Report::new("bound", &g);
    fill_module(&mut report, spec, &g)?;
    Ok(report)
}

pub fn cmd_cohomology(spec: &ProblemSpec) -> std::result::Result<Report, RunError> {
    let g = spec.grading()?;
    let mut report = Report::new("cohomology", &g);
    fill_module(&mut report, spec, &g)?;
    Ok(report)
}

/// Runs the brute-force suite; a report with failed checks is still
/// returned so that it can be printed.
pub fn cmd_verify(spec: &ProblemSpec, cap: usize) -> std::result::Result<Report, RunError> {
    let g = spec.grading()?;
    let mut report = Report::new("verify", &g);
    let v = fill_module(&mut report, spec, &g)?;
    let sc = StructureConstants::build(g.datum.clone())?;
    report.verification = Some(verify_case(&sc, &g, &v, cap)?);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactRow {
    pub n: u64,
    pub r: u64,
    pub t: u64,
    #[serde(with = "crate::decimal")]
    pub closed_form: BigUint,
    #[serde(with = "crate::decimal")]
    pub weyl_dim: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactTable {
    pub schema: String,
    pub rows: Vec<ContactRow>,
}

impl ContactTable {
    pub fn mismatch(&self) -> Option<&ContactRow> {
        self.rows.iter().find(|r| r.closed_form != r.weyl_dim)
    }
}

/// Closed form against `weyl_dim(construct_V)` for `C_{n+1}`, `Σ = {1}`,
/// `E = S^t g_{-1}*`, over `1 <= n, r, t` up to the given bounds.
pub fn cmd_contact_table(n_max: u64, r_max: u64, t_max: u64) -> Result<ContactTable> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let d = RootDatum::from_type_str(&format!("C{}", n + 1))?;
        let g = ParabolicGrading::new(d, &[1])?;
        for t in 1..=t_max {
            let e = contact_e_label(&g, t as usize)?;
            for r in 1..=r_max {
                let v = construct_v(&g, &e, &Orders::from([(1, r as usize)]))?;
                rows.push(ContactRow { n, r, t, closed_form: contact_bound_closed_form(n, r, t), weyl_dim: weyl_dim(&g.datum, &v.weight)? });
            }
        }
    }
    Ok(ContactTable { schema: REPORT_SCHEMA.into(), rows })
}

pub fn render_contact_table(t: &ContactTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>3} {:>3} {:>3} {:>14} {:>14}  status", "n", "r", "t", "closed_form", "weyl_dim");
    for row in &t.rows {
        let status = if row.closed_form == row.weyl_dim { "ok" } else { "MISMATCH" };
        let _ = writeln!(s, "{:>3} {:>3} {:>3} {:>14} {:>14}  {status}", row.n, row.r, row.t, row.closed_form, row.weyl_dim);
    }
    s
}

fn set(nodes: &[usize]) -> String {
    format!("{{{}}}", nodes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","))
}

pub fn render_report(r: &Report) -> String {
    let g = &r.grading;
    let mut s = String::new();
    let _ = writeln!(s, "{} sigma={}", g.lie_type, set(&g.sigma));
    let _ = writeln!(s, "depth: {}", g.depth);
    let dims: Vec<String> = g.dims.iter().map(|d| format!("{}:{}", d.degree, d.dim)).collect();
    let _ = writeln!(s, "dims: {}", dims.join(" "));
    let _ = writeln!(s, "center dim: {}", g.center_dim);
    let comps: Vec<String> = g.levi_components.iter().map(|c| set(c)).collect();
    let _ = writeln!(s, "levi: {}", if comps.is_empty() { "-".into() } else { comps.join(" ") });
    let _ = writeln!(s, "contact: {}", g.contact);
    for c in &g.g_minus1 {
        let _ = writeln!(s, "g_-1 node {}: levi weight {} dim {}", c.node, c.levi_weight, c.dim);
    }
    if let (Some(e), Some(o)) = (&r.e_label, &r.orders) {
        let orders: Vec<String> = o.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(s, "E: {}  orders: {}", e.weight, orders.join(" "));
    }
    if let Some(v) = &r.v_label {
        let _ = writeln!(s, "V: {}", v.weight);
    }
    if let Some(b) = &r.bound {
        let _ = writeln!(s, "bound: {b}");
    }
    if let Some(n) = r.n {
        let _ = writeln!(s, "N: {n}");
    }
    if let Some(d) = &r.grading_dims {
        let _ = writeln!(s, "V_i dims: {}", d.join(" "));
    }
    if let Some(c) = &r.cohomology {
        let _ = writeln!(s, "H0: {} dim {}", c.h0.label.weight, c.h0.dim);
        for e in &c.h1 {
            let _ = writeln!(s, "H1 node {}: {} dim {} degree {}", e.node, e.label.weight, e.dim, e.grading_degree);
        }
    }
    if let Some(j) = &r.jet_fiber_dims {
        let _ = writeln!(s, "jet fiber dims: {}", j.join(" "));
    }
    if let Some(v) = &r.verification {
        for c in &v.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {} ({} us)", c.name, c.elapsed_us);
            if !c.pass {
                let _ = writeln!(s, "         expected {} got {}", c.expected, c.actual);
            }
        }
        let _ = writeln!(s, "verification: {} ({} ms)", if v.pass { "pass" } else { "FAIL" }, v.elapsed_ms);
    }
    s
}
