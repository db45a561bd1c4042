//! Experiment pipelines: `P_{r-1}` against `K_r f` on one graph, and the `G_4`
//! comparison against `184/605 · n²`.

use serde::Serialize;
use turangap_core::constructions::{g4_part_sizes, make_g4, BlowupMode, BlowupSpec, PartitionedGraph};
use turangap_core::lemmas::bounds::{general_lower_bound, general_upper_bound};
use turangap_core::rational::big_to_f64;
use turangap_core::solvers::{
    greedy_partition, kcut_cap, krfree_cap, krfree_from_parts, max_kcut_exact, max_kcut_local, max_krfree_exact,
    peel, SolverError,
};
use turangap_core::{Fraction, Graph};

use crate::report::CertificateJson;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMode {
    /// Exact when within the solver caps, otherwise labelled bounds.
    Auto,
    /// Exact or refuse.
    Exact,
    /// Heuristic lower bounds only.
    Bounds,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Construction(#[from] turangap_core::constructions::ConstructionError),
    #[error("{0}")]
    Invalid(String),
}

/// A computed quantity: exact optimum, or a lower bound from a heuristic.
#[derive(Debug, Clone, Serialize)]
pub struct Quantity {
    pub value: usize,
    pub exact: bool,
    pub certificate: CertificateJson,
}

const LOCAL_RESTARTS: usize = 16;

fn cut_quantity(g: &Graph, k: usize, mode: SolveMode, seed: u64) -> Result<Quantity, SolverError> {
    let within = g.n() <= kcut_cap(k);
    let cert = match (mode, within) {
        (SolveMode::Exact, _) | (SolveMode::Auto, true) => max_kcut_exact(g, k)?,
        _ => {
            let local = max_kcut_local(g, k, seed, LOCAL_RESTARTS)?;
            let greedy = greedy_partition(g, k)?;
            if greedy.value > local.value {
                greedy
            } else {
                local
            }
        }
    };
    Ok(Quantity {
        value: cert.value,
        exact: cert.solver.is_exact(),
        certificate: CertificateJson::partition(g.n(), &cert),
    })
}

/// `K_r f` exactly, or the `(r-1)`-partite lower bound `cut` when out of reach.
fn krfree_quantity(g: &Graph, r: usize, mode: SolveMode, cut: &Quantity) -> Result<Quantity, SolverError> {
    let within = g.n() <= krfree_cap(r);
    match (mode, within) {
        (SolveMode::Exact, _) | (SolveMode::Auto, true) => {
            let cert = max_krfree_exact(g, r)?;
            Ok(Quantity {
                value: cert.value,
                exact: true,
                certificate: CertificateJson::edges(g.n(), &cert),
            })
        }
        _ => {
            // an (r-1)-partite subgraph has no K_r
            let mut certificate = cut.certificate.clone();
            certificate.problem = "max-kr-free (from partition)".into();
            certificate.k_or_r = r;
            certificate.exact = false;
            Ok(Quantity {
                value: cut.value,
                exact: false,
                certificate,
            })
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub e: usize,
    pub r: usize,
    pub mode: SolveMode,
    pub p: Quantity,
    pub krfree: Quantity,
    /// Present only when both values are exact.
    pub equal: Option<bool>,
    pub min_degree: Option<usize>,
    pub min_degree_ratio: Option<f64>,
    /// `(3r−4)/(3r−1)`
    pub lower_threshold: Option<String>,
    /// `(4(3r−7)(r−1)+1)/(4(r−2)(3r−4))`
    pub upper_threshold: Option<String>,
    pub above_lower_threshold: Option<bool>,
    pub above_upper_threshold: Option<bool>,
}

pub fn gap(g: &Graph, r: usize, mode: SolveMode, seed: u64) -> Result<GapReport, ExperimentError> {
    if r < 2 {
        return Err(ExperimentError::Invalid(format!("r must be at least 2, got {r}")));
    }
    let p = cut_quantity(g, r - 1, mode, seed)?;
    let krfree = krfree_quantity(g, r, mode, &p)?;
    let equal = (p.exact && krfree.exact).then_some(p.value == krfree.value);
    let n = g.n();
    let min_degree = g.min_degree();
    let ratio = min_degree.map(|d| d as f64 / n as f64);
    let (lower, upper) = if r >= 3 {
        (Some(general_lower_bound(r)), Some(general_upper_bound(r)))
    } else {
        (None, None)
    };
    // δ > t·n, exactly, with t = p/q
    let above = |t: &Option<num_rational::BigRational>| -> Option<bool> {
        let t = t.as_ref()?;
        let d = min_degree?;
        let lhs = num_rational::BigRational::from_integer((d as i64).into());
        Some(lhs > t * num_rational::BigRational::from_integer((n as i64).into()))
    };
    Ok(GapReport {
        n,
        e: g.edge_count(),
        r,
        mode,
        equal,
        min_degree,
        min_degree_ratio: ratio,
        above_lower_threshold: above(&lower),
        above_upper_threshold: above(&upper),
        lower_threshold: lower.map(|x| x.to_string()),
        upper_threshold: upper.map(|x| x.to_string()),
        p,
        krfree,
    })
}

#[derive(Debug, Clone)]
pub struct Delta4Params {
    pub n: Option<usize>,
    pub sizes: Option<[usize; 5]>,
    pub apex: Option<usize>,
    pub theta: Fraction,
    pub seed: u64,
    pub blowup_mode: BlowupMode,
    pub mode: SolveMode,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartsSummary {
    /// Cross-part edges of the graph with θ-edges removed, certified `K_4`-free.
    pub value: usize,
    /// Cross-part edges of the full graph, counted directly.
    pub cross_edges: usize,
    /// `Σ |V_i||V_{i+1}| + θ-edges + apex · rest`
    pub formula: usize,
    pub theta_edges: usize,
    /// Keeping the θ-edges as well leaves a `K_4`; this is one.
    pub with_theta_witness: Option<Vec<usize>>,
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct PeelSummary {
    pub gamma: String,
    pub deleted: usize,
    pub remaining: usize,
    pub final_condition_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRecord {
    pub experiment: &'static str,
    pub version: &'static str,
    pub spec: BlowupSpec,
    pub apex: usize,
    pub n: usize,
    pub e: usize,
    pub min_degree: Option<usize>,
    pub mode: SolveMode,
    pub p3: Quantity,
    pub k4f: Quantity,
    pub parts: PartsSummary,
    /// Present only when both are exact.
    pub p3_below_k4f: Option<bool>,
    /// `184/605 · n²`
    pub target: f64,
    pub p3_below_target: bool,
    pub parts_vs_target: f64,
    pub peel: PeelSummary,
}

pub fn parts_formula(p: &PartitionedGraph) -> usize {
    let s = &p.part_sizes;
    let ring: usize = (0..5).map(|i| s[i] * s[(i + 1) % 5]).sum::<usize>() + p.theta_edges.len();
    let n: usize = s.iter().sum();
    let apex: usize = s[5..].iter().sum();
    // each apex part is joined to everything laid out before it
    let mut before = n - apex;
    let mut joins = 0;
    for &a in &s[5..] {
        joins += a * before;
        before += a;
    }
    ring + joins
}

pub fn experiment_delta4(params: &Delta4Params) -> Result<ExperimentRecord, ExperimentError> {
    let (sizes, apex) = match (params.sizes, params.apex, params.n) {
        (Some(s), Some(a), _) => (s, a),
        (None, None, Some(n)) => g4_part_sizes(n),
        _ => {
            return Err(ExperimentError::Invalid(
                "give either --n, or both --sizes and --apex".into(),
            ))
        }
    };
    let spec = BlowupSpec::new(sizes, params.theta)
        .with_seed(params.seed)
        .with_mode(params.blowup_mode);
    let pg = make_g4(&spec, apex)?;
    let g = &pg.graph;
    let n = g.n();
    if let Some(want) = params.n {
        if want != n {
            return Err(ExperimentError::Invalid(format!(
                "sizes give n = {n}, but --n is {want}"
            )));
        }
    }
    let p3 = cut_quantity(g, 3, params.mode, params.seed)?;
    let k4f = krfree_quantity(g, 4, params.mode, &p3)?;
    let plain = pg.without_theta_edges();
    let parts_cert = krfree_from_parts(&plain, &pg.part_of, 4)?;
    let with_theta_witness = match krfree_from_parts(g, &pg.part_of, 4) {
        Err(SolverError::SurvivingClique { witness, .. }) => Some(witness),
        Err(e) => return Err(e.into()),
        Ok(_) => None,
    };
    let parts = PartsSummary {
        value: parts_cert.value,
        cross_edges: g.edges().iter().filter(|&&(u, v)| pg.part_of[u] != pg.part_of[v]).count(),
        formula: parts_formula(&pg),
        theta_edges: pg.theta_edges.len(),
        with_theta_witness,
        certificate: CertificateJson::edges(n, &parts_cert),
    };
    let target = 184.0 / 605.0 * (n * n) as f64;
    let gamma = Fraction::new(8, 11);
    let trace = peel(g, gamma);
    Ok(ExperimentRecord {
        experiment: "delta4",
        version: crate::report::VERSION,
        apex,
        n,
        e: g.edge_count(),
        min_degree: g.min_degree(),
        mode: params.mode,
        p3_below_k4f: (p3.exact && k4f.exact).then_some(p3.value < k4f.value),
        // exact: 605 · P_3 < 184 · n²
        p3_below_target: 605 * p3.value < 184 * n * n,
        parts_vs_target: parts.value as f64 / target.max(f64::MIN_POSITIVE),
        target,
        peel: PeelSummary {
            gamma: gamma.to_string(),
            deleted: trace.steps.len(),
            remaining: trace.remaining.len(),
            final_condition_holds: trace.final_condition_holds(),
        },
        spec,
        p3,
        k4f,
        parts,
    })
}

/// Rows for the CSV export of an experiment record.
pub fn record_rows(rec: &ExperimentRecord) -> (Vec<String>, Vec<Vec<String>>) {
    let cols = [
        "n", "e", "min_degree", "p3", "p3_exact", "k4f", "k4f_exact", "parts", "theta_edges", "target",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let row = vec![
        rec.n.to_string(),
        rec.e.to_string(),
        rec.min_degree.map_or_else(String::new, |d| d.to_string()),
        rec.p3.value.to_string(),
        rec.p3.exact.to_string(),
        rec.k4f.value.to_string(),
        rec.k4f.exact.to_string(),
        rec.parts.value.to_string(),
        rec.parts.theta_edges.to_string(),
        format!("{:.6}", rec.target),
    ];
    (cols, vec![row])
}

/// `(3r−4)/(3r−1)` as a float, for display.
pub fn lower_threshold_f64(r: usize) -> f64 {
    big_to_f64(&general_lower_bound(r))
}
