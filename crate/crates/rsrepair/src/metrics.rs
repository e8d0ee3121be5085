use rsrepair_core::expsum::metrics_expsum;
use rsrepair_core::{FieldTower, Method, MetricsReport, RepairScheme};
use serde::Serialize;

use crate::error::{AppError, AppResult};

pub fn compute(tower: &FieldTower, scheme: &RepairScheme, method: Method) -> AppResult<MetricsReport> {
    Ok(match method {
        Method::Direct => scheme.metrics_direct(tower),
        Method::WeightFormula => scheme.metrics_weight(tower)?,
        Method::ExpSum => metrics_expsum(tower, scheme)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub direct: u64,
    pub weight: u64,
    pub expsum: u64,
    pub bandwidth: u64,
}

/// Runs all three routes and fails unless they give the same numbers.
pub fn cross_check(tower: &FieldTower, scheme: &RepairScheme) -> AppResult<CrossCheck> {
    let direct = scheme.metrics_direct(tower);
    let weight = scheme.metrics_weight(tower)?;
    let expsum = metrics_expsum(tower, scheme)?;
    if direct.per_node != weight.per_node {
        return Err(AppError::Mismatch("per-node counts differ between direct and weight routes".into()));
    }
    let ios = [direct.io_cost, weight.io_cost, expsum.io_cost];
    if ios.iter().any(|&v| v != ios[0]) {
        return Err(AppError::Mismatch(format!(
            "I/O cost direct = {}, weight = {}, expsum = {}",
            ios[0], ios[1], ios[2]
        )));
    }
    if expsum.bandwidth != direct.bandwidth {
        return Err(AppError::Mismatch(format!(
            "bandwidth direct = {}, normalized = {}",
            direct.bandwidth, expsum.bandwidth
        )));
    }
    Ok(CrossCheck { direct: ios[0], weight: ios[1], expsum: ios[2], bandwidth: direct.bandwidth })
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeJson {
    pub node: usize,
    pub nz: usize,
    pub rank: usize,
    /// The erased node; its row is informational and not counted.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub target: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricsJson {
    pub method: &'static str,
    pub n: usize,
    pub ell: usize,
    pub target: usize,
    pub io_cost: u64,
    pub bandwidth: u64,
    /// 1-based node numbers, target included and flagged.
    pub per_node: Vec<NodeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Direct => "direct",
        Method::WeightFormula => "weight",
        Method::ExpSum => "expsum",
    }
}

impl MetricsJson {
    pub fn new(scheme: &RepairScheme, report: &MetricsReport, cross_check: Option<CrossCheck>) -> Self {
        MetricsJson {
            method: method_name(report.method),
            n: scheme.code().n(),
            ell: scheme.ell(),
            target: scheme.target() + 1,
            io_cost: report.io_cost,
            bandwidth: report.bandwidth,
            per_node: report
                .per_node
                .iter()
                .enumerate()
                .map(|(i, m)| NodeJson { node: i + 1, nz: m.nz, rank: m.rank, target: i == scheme.target() })
                .collect(),
            cross_check,
        }
    }
}
