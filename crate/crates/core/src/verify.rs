//! Runs the brute-force check suite on one `(g, V)` pair and records each
//! check with its inputs, expected and actual values, and timing.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::chevalley::StructureConstants;
use crate::cochain::{CochainComplex, HodgeData};
use crate::error::Result;
use crate::grading::ParabolicGrading;
use crate::module::ModuleModel;
use crate::nilpotent::NilpotentModel;
use crate::projection::NaturalProjection;
use crate::prolongation::{e_and_orders_of, grading_decomposition, h1_multiplicities, kostant_h0, kostant_h1};
use crate::weights::{weyl_dim, IrrepLabel};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lie_type: String,
    /// Crossed nodes, 1-based.
    pub sigma: Vec<usize>,
    pub v_label: IrrepLabel,
    #[serde(with = "crate::decimal")]
    pub dim_v: BigUint,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Recorder {
    inputs: String,
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn run(&mut self, name: &str, f: impl FnOnce() -> (String, String, bool)) {
        let start = Instant::now();
        let (expected, actual, pass) = f();
        self.checks.push(CheckResult {
            name: name.to_string(),
            inputs: self.inputs.clone(),
            expected,
            actual,
            pass,
            elapsed_us: start.elapsed().as_micros() as u64,
        });
    }

    fn outcome(&mut self, name: &str, res: std::result::Result<(), String>, elapsed_us: u64) {
        let pass = res.is_ok();
        self.checks.push(CheckResult {
            name: name.to_string(),
            inputs: self.inputs.clone(),
            expected: "holds".into(),
            actual: res.err().unwrap_or_else(|| "holds".into()),
            pass,
            elapsed_us,
        });
    }
}

fn show<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

/// Full suite on `V` with highest weight `v_label` over grading `g`.
/// Module construction errors (size cap) are returned; failed checks are
/// recorded in the report.
pub fn verify_case(sc: &StructureConstants, g: &ParabolicGrading, v_label: &IrrepLabel, cap: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let lie_type = g.datum.lie_type.map(|t| t.to_string()).unwrap_or_default();
    let sigma = g.sigma_labels();
    let dim_v = weyl_dim(&g.datum, &v_label.weight)?;
    let (_, orders) = e_and_orders_of(g, v_label)?;
    let h0 = kostant_h0(g, v_label)?;
    let h1 = kostant_h1(g, v_label)?;
    let decomposition = grading_decomposition(g, v_label)?;
    let mm = ModuleModel::<Rational>::build(sc, v_label, cap)?;
    let nm = NilpotentModel::build(sc, g);
    let mut rec = Recorder { inputs: format!("{lie_type} sigma={sigma:?} V={}", v_label.weight), checks: Vec::new() };

    rec.run("module_relations", || match mm.check_relations(sc) {
        Ok(()) => ("holds".into(), "holds".into(), true),
        Err(e) => ("holds".into(), e, false),
    });
    rec.run("module_dimension", || (dim_v.to_string(), mm.dim().to_string(), BigUint::from(mm.dim()) == dim_v));
    rec.run("grading_tags", || {
        let mut dims = vec![0u64; decomposition.n + 1];
        for k in mm.grades(g) {
            if k >= dims.len() {
                dims.resize(k + 1, 0);
            }
            dims[k] += 1;
        }
        (show(&decomposition.dims), show(&dims), dims == decomposition.dims)
    });

    let cc = CochainComplex::build(sc, &mm, &nm, g);
    let t = Instant::now();
    let hd = match HodgeData::compute(&cc) {
        Ok(hd) => hd,
        Err(e) => {
            rec.outcome("hodge_data", Err(e.to_string()), t.elapsed().as_micros() as u64);
            return Ok(finish(lie_type, sigma, v_label, dim_v, rec, start));
        }
    };
    let hodge_us = t.elapsed().as_micros() as u64;
    rec.outcome("hodge_data", Ok(()), hodge_us);
    for (name, res, us) in hd.structural_checks(&cc) {
        rec.outcome(name, res, us);
    }

    rec.run("h0_dimension", || {
        let actual = cc.h0_dim();
        (h0.dim.to_string(), actual.to_string(), h0.dim == BigUint::from(actual))
    });
    let h1_total: BigUint = h1.iter().map(|e| e.dim.clone()).sum();
    rec.run("h1_dimension", || {
        let by_rank = cc.h1_dim();
        let by_box = hd.ker_box.cols();
        let pass = by_rank == by_box && BigUint::from(by_rank) == h1_total;
        (h1_total.to_string(), format!("rank {by_rank}, ker(box) {by_box}"), pass)
    });
    rec.run("h1_location", || {
        let mut expected: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &h1 {
            let dim: usize = e.dim.to_string().parse().unwrap_or(usize::MAX);
            *expected.entry(e.grading_degree as usize).or_insert(0) += dim;
        }
        let actual = hd.h1_location(&cc);
        let single = if expected.len() == 1 { hd.h1_location_check(&cc).ok() == expected.keys().next().copied() } else { true };
        (show(&expected), show(&actual), expected == actual && single)
    });
    rec.run("multiplicity_one", || match h1_multiplicities(g, v_label) {
        Ok(m) => (show(vec![1; m.len()]), show(m.iter().map(|p| p.1).collect::<Vec<_>>()), m.iter().all(|p| p.1 == 1)),
        Err(e) => ("multiplicity one".into(), e.to_string(), false),
    });

    let top = cc.top_grade();
    let min_r = orders.values().copied().min().unwrap_or(1);
    let dim0 = cc.v_indices(0).len();
    let phis: Vec<_> = (0..=top).map(|i| cc.phi_matrix(i)).collect();
    let ranks: Vec<usize> = phis.iter().map(|p| p.rank()).collect();
    rec.run("phi_injective", || {
        let dims: Vec<usize> = (0..=top).map(|i| cc.v_indices(i).len()).collect();
        (show(&dims), show(&ranks), dims == ranks)
    });
    rec.run("phi_isomorphism", || {
        let range = 0..min_r.min(top + 1);
        let expected: Vec<usize> = range.clone().map(|i| nm.pbw_basis(i).len() * dim0).collect();
        let actual: Vec<usize> = range.map(|i| ranks[i]).collect();
        (show(&expected), show(&actual), expected == actual)
    });

    let mut proj_detail = Vec::new();
    let mut proj_ok = true;
    let mut kernel_detail = Vec::new();
    let mut kernel_ok = true;
    let t = Instant::now();
    for entry in &h1 {
        let r = orders[&entry.node];
        match NaturalProjection::build(sc, &cc, g, entry.node, r) {
            Err(e) => {
                proj_ok = false;
                proj_detail.push(format!("node {}: {e}", entry.node));
            }
            Ok(p) => {
                let dim_ok = BigUint::from(p.image_dim()) == entry.dim;
                let ok = dim_ok && p.is_surjective() && p.is_equivariant();
                proj_ok &= ok;
                proj_detail.push(format!("node {} r={r}: image {} of {}, equivariant {}", entry.node, p.image_dim(), entry.dim, ok));
                if r <= top {
                    let vr = cc.v_indices(r);
                    for i in r..=top {
                        let vi = cc.unit_columns(&cc.v_indices(i));
                        let mut images = crate::linalg::Matrix::zeros(cc.v_dim(), 0);
                        for w in &nm.pbw_basis(i - r).monomials {
                            images = images.hcat(&cc.apply_expr(&nm.transpose::<Rational>(w), &vi));
                        }
                        let coords = images.select_rows(&vr);
                        if !p.matrix.mul(&phis[r]).mul(&coords).is_zero() {
                            kernel_ok = false;
                            kernel_detail.push(format!("node {} i={i}", entry.node));
                        }
                    }
                    if g.sigma.len() == 1 {
                        let source = nm.pbw_basis(r).len() * dim0;
                        if ranks[r] + p.image_dim() != source {
                            kernel_ok = false;
                            kernel_detail.push(format!("node {}: rank phi_r {} + {} != {source}", entry.node, ranks[r], p.image_dim()));
                        }
                    }
                }
            }
        }
    }
    let proj_us = t.elapsed().as_micros() as u64;
    rec.outcome("natural_projection", if proj_ok { Ok(()) } else { Err(proj_detail.join("; ")) }, proj_us);
    rec.outcome("phi_projection_kernel", if kernel_ok { Ok(()) } else { Err(kernel_detail.join("; ")) }, 0);

    rec.run("exactness", || match cc.exactness_check(min_r) {
        Ok(()) => (format!("exact for 0 < i < {min_r}"), "exact".into(), true),
        Err(i) => (format!("exact for 0 < i < {min_r}"), format!("fails at i = {i}"), false),
    });
    rec.run("splitting_symbol", || {
        let bad: Vec<String> = (1..=top)
            .filter_map(|j| hd.splitting_symbol_check(&cc, j).err().map(|c| format!("j={j} column {c}")))
            .collect();
        (format!("psi_j phi_j = -id for 1 <= j <= {top}"), if bad.is_empty() { "holds".into() } else { bad.join("; ") }, bad.is_empty())
    });
    Ok(finish(lie_type, sigma, v_label, dim_v, rec, start))
}

fn finish(lie_type: String, sigma: Vec<usize>, v_label: &IrrepLabel, dim_v: BigUint, rec: Recorder, start: Instant) -> VerificationReport {
    let pass = rec.checks.iter().all(|c| c.pass);
    VerificationReport {
        lie_type,
        sigma,
        v_label: v_label.clone(),
        dim_v,
        checks: rec.checks,
        pass,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
