//! The classification engine: shift reductions, the constructive pipeline,
//! and oracle cross-validation, joined by one dispatch.
//!
//! Every branch reduces to "pick a shift x, run the pipeline on the shifted
//! graph, map the verdict back through the parity law S(G) = p + S(G^x)
//! with p = x for odd n and identity for even n". Failures never guess:
//! construct mode degrades to the exhaustive oracle when n allows, and to
//! Unknown otherwise.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::finder;
use crate::gf2::{Gf2Basis, Multisign, RealizationVerdict};
use crate::graph::{GraphError, HamiltonianCycle, MultisignedGraph};
use crate::necklace::{realize_multisign, CoveringNecklace, NecklaceError};
use crate::oracle::{self, OracleError, EXHAUSTIVE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Construct,
    Oracle,
    Both,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "construct" => Ok(Mode::Construct),
            "oracle" => Ok(Mode::Oracle),
            "both" => Ok(Mode::Both),
            other => Err(format!("unknown mode {other:?}; use construct|oracle|both")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Necklace(#[from] NecklaceError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A reproducible construction proof: the necklace plus one realized cycle
/// per claimed multisign. Verification recomputes each cycle's multisign
/// from the edge labels alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub necklace: CoveringNecklace,
    pub realizations: Vec<(Multisign, HamiltonianCycle)>,
}

impl Certificate {
    pub fn to_text(&self) -> String {
        let mut out = self.necklace.to_text();
        for (target, cycle) in &self.realizations {
            let verts: Vec<String> =
                cycle.order().iter().map(|v| v.to_string()).collect();
            writeln!(out, "realize {target} {}", verts.join(" ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ClassifyError> {
        let mut realizations = Vec::new();
        let mut necklace_lines: Vec<&str> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            let mut fields = line.split_whitespace();
            if fields.next() != Some("realize") {
                necklace_lines.push(raw);
                continue;
            }
            // Keep necklace line numbering intact for its own parser.
            necklace_lines.push("");
            let bits = fields.next().ok_or_else(|| ClassifyError::Parse {
                line: line_no,
                msg: "realize needs a multisign and a cycle".to_string(),
            })?;
            let target: Multisign = bits.parse().map_err(|_| ClassifyError::Parse {
                line: line_no,
                msg: format!("bad multisign {bits:?}"),
            })?;
            let verts: Result<Vec<usize>, _> = fields.map(|f| f.parse()).collect();
            let verts = verts.map_err(|_| ClassifyError::Parse {
                line: line_no,
                msg: "bad vertex number".to_string(),
            })?;
            let n = verts.len();
            let cycle = HamiltonianCycle::new(verts, n).map_err(|e| ClassifyError::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            realizations.push((target, cycle));
        }
        let necklace = CoveringNecklace::parse(&necklace_lines.join("\n")).map_err(|e| {
            match e {
                NecklaceError::Parse { line, msg } => ClassifyError::Parse { line, msg },
                other => ClassifyError::Necklace(other),
            }
        })?;
        Ok(Certificate { necklace, realizations })
    }
}

/// Outcome of re-checking one `realize` line against the edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedRealization {
    pub claimed: Multisign,
    /// Recomputed multisign; absent when the cycle does not fit the graph.
    pub actual: Option<Multisign>,
    pub ok: bool,
}

/// Independent certificate check: recomputes every claimed multisign using
/// only the edge labels, trusting nothing from the construction.
pub fn verify_certificate(
    g: &MultisignedGraph,
    cert: &Certificate,
) -> Vec<CheckedRealization> {
    cert.realizations
        .iter()
        .map(|(claimed, cycle)| {
            if cycle.n() != g.n() || claimed.dim() != g.dim() {
                return CheckedRealization { claimed: *claimed, actual: None, ok: false };
            }
            let actual = g.ham_multisign(cycle);
            CheckedRealization { claimed: *claimed, actual: Some(actual), ok: actual == *claimed }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub verdict: RealizationVerdict,
    pub dim: usize,
    pub trace: Vec<String>,
    pub certificate: Option<Certificate>,
    pub oracle_checked: bool,
    /// The constructive pipeline was attempted and did not produce a verdict.
    pub construct_failed: bool,
    /// Construct and oracle schema lines, when they disagree (a bug).
    pub mismatch: Option<(String, String)>,
}

impl ClassificationReport {
    /// 0 = classified, 2 = Unknown, 3 = construct/oracle contradiction.
    pub fn exit_code(&self) -> i32 {
        if self.mismatch.is_some() {
            3
        } else if matches!(self.verdict, RealizationVerdict::Unknown) {
            2
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.trace {
            writeln!(out, "{line}").unwrap();
        }
        writeln!(out, "{}", self.verdict.schema_line(self.dim)).unwrap();
        if let Some((construct, oracle)) = &self.mismatch {
            writeln!(out, "mismatch construct=[{construct}] oracle=[{oracle}]").unwrap();
        }
        out
    }
}

/// The parity law: G' = G with x added to every edge label, and
/// S(G) = parity_offset + S(G'), with parity_offset = x for odd n (a
/// Hamiltonian cycle has n edges) and identity for even n.
pub fn shift_reduce(g: &MultisignedGraph, x: Multisign) -> (MultisignedGraph, Multisign) {
    let gx = g.add_constant(x);
    let parity = if g.n() % 2 == 1 { x } else { Multisign::zero(g.dim()) };
    (gx, parity)
}

/// Picks the shift the dispatch tree prescribes, with the branch name for
/// the trace: direct (no shift) when identity triangles dominate, the
/// maximal-count shift when an identity triangle exists, a shift making the
/// independent signs stay independent, or the subspace-case shift when the
/// census keys themselves form an independent set.
fn choose_shift(g: &MultisignedGraph) -> Option<(Multisign, &'static str)> {
    let m = g.dim();
    let census = g.triangle_census();
    let e = Multisign::zero(m);
    let max = census.values().copied().max()?;
    let eta_e = census.get(&e).copied().unwrap_or(0);
    if eta_e == max {
        return Some((e, "theorem-direct"));
    }
    let x_max = *census
        .iter()
        .find(|(_, &c)| c == max)
        .expect("max came from this map")
        .0;
    if eta_e > 0 {
        return Some((x_max, "lemma-shift"));
    }
    // A shift y keeping a full set of independent triangle signs independent.
    let x_sigs: Vec<Multisign> = finder::find_independent_triangles(g, m)
        .iter()
        .map(|t| t.multisign())
        .collect();
    for &y in census.keys() {
        let shifted: Vec<Multisign> = x_sigs.iter().map(|&x| x + y).collect();
        let independent = shifted.iter().all(|s| !s.is_zero())
            && Gf2Basis::span(&shifted, m).expect("uniform dimension").rank()
                == shifted.len();
        if independent {
            return Some((y, "corollary-shift"));
        }
    }
    // Subspace case: every triangle multisign sits in one independent set.
    let keys: Vec<Multisign> = census.keys().copied().collect();
    if keys.iter().all(|k| !k.is_zero())
        && Gf2Basis::span(&keys, m).expect("uniform dimension").rank() == keys.len()
    {
        return Some((x_max, "subspace-case"));
    }
    None
}

struct ConstructResult {
    verdict: RealizationVerdict,
    certificate: Certificate,
}

fn construct_with_shift(
    g: &MultisignedGraph,
    x: Multisign,
    branch: &str,
    trace: &mut Vec<String>,
) -> Option<ConstructResult> {
    trace.push(format!("step: dispatch -> {branch} shift {x}"));
    let (gx, parity) = shift_reduce(g, x);
    let out = match finder::run_pipeline(&gx) {
        Ok(out) => out,
        Err(err) => {
            trace.push(format!("step: pipeline -> failed ({err})"));
            return None;
        }
    };
    let basis = out.basis;
    let offset = basis.reduce(out.offset + parity);
    trace.push(format!(
        "step: pipeline -> coset rank {} offset {offset}",
        basis.rank()
    ));
    let verdict = if basis.is_full() {
        RealizationVerdict::Full
    } else if offset.is_zero() {
        RealizationVerdict::Subspace(basis.clone())
    } else {
        RealizationVerdict::Affine { offset, basis: basis.clone() }
    };
    // Certificate: one witness cycle per realized multisign (capped to the
    // offset and generators for very large cosets).
    let targets: Vec<Multisign> = if basis.rank() <= 12 {
        basis.enumerate().into_iter().map(|b| offset + b).collect()
    } else {
        let mut v = vec![offset];
        v.extend(basis.rows().iter().map(|&r| offset + r));
        v
    };
    let mut realizations = Vec::with_capacity(targets.len());
    for s in targets {
        let cycle = match realize_multisign(&gx, &out.necklace, s + parity) {
            Ok(Some(c)) => c,
            _ => {
                trace.push(format!("step: realize {s} -> failed"));
                return None;
            }
        };
        debug_assert_eq!(g.ham_multisign(&cycle), s);
        realizations.push((s, cycle));
    }
    Some(ConstructResult {
        verdict,
        certificate: Certificate { necklace: out.necklace, realizations },
    })
}

fn try_construct(g: &MultisignedGraph, trace: &mut Vec<String>) -> Option<ConstructResult> {
    let image = match oracle::cycle_space_image(g) {
        Ok(b) => b,
        Err(err) => {
            trace.push(format!("step: image -> failed ({err})"));
            return None;
        }
    };
    let census = g.triangle_census();
    trace.push(format!(
        "step: census {} distinct multisigns -> image rank {}",
        census.len(),
        image.rank()
    ));
    let Some((x, branch)) = choose_shift(g) else {
        trace.push("step: dispatch -> no applicable reduction".to_string());
        return None;
    };
    let result = construct_with_shift(g, x, branch, trace)?;
    // Restriction soundness: the realized coset generators lie in the
    // original cycle-space image (4-cycles are cycle-space elements and
    // shifts cancel on them).
    match &result.verdict {
        RealizationVerdict::Subspace(b) | RealizationVerdict::Affine { basis: b, .. } => {
            debug_assert!(b.rows().iter().all(|&r| image.contains(r)));
        }
        _ => {}
    }
    Some(result)
}

/// The subspace-case reduction on its own: applies only when every triangle
/// multisign lies in one linearly independent set; shifts by the most
/// frequent sign and classifies the rest constructively. `None` when the
/// hypothesis fails.
pub fn subspace_case(g: &MultisignedGraph) -> Option<ClassificationReport> {
    let m = g.dim();
    let census = g.triangle_census();
    let keys: Vec<Multisign> = census.keys().copied().collect();
    let hypothesis = !keys.is_empty()
        && keys.iter().all(|k| !k.is_zero())
        && Gf2Basis::span(&keys, m).expect("uniform dimension").rank() == keys.len();
    if !hypothesis {
        return None;
    }
    let max = census.values().copied().max().expect("nonempty");
    let x1 = *census.iter().find(|(_, &c)| c == max).expect("max exists").0;
    let mut trace = Vec::new();
    match construct_with_shift(g, x1, "subspace-case", &mut trace) {
        Some(res) => Some(ClassificationReport {
            verdict: res.verdict,
            dim: m,
            trace,
            certificate: Some(res.certificate),
            oracle_checked: false,
            construct_failed: false,
            mismatch: None,
        }),
        None => Some(ClassificationReport {
            verdict: RealizationVerdict::Unknown,
            dim: m,
            trace,
            certificate: None,
            oracle_checked: false,
            construct_failed: true,
            mismatch: None,
        }),
    }
}

/// Full classification in the requested mode. Construct mode falls back to
/// the oracle for small n instead of reporting Unknown; both-mode flags any
/// disagreement between the two (exit code 3, a bug by construction).
pub fn classify_instance(
    g: &MultisignedGraph,
    mode: Mode,
) -> Result<ClassificationReport, ClassifyError> {
    let m = g.dim();
    let mut trace = Vec::new();
    let report = |verdict, trace, certificate, oracle_checked, construct_failed, mismatch| {
        ClassificationReport {
            verdict,
            dim: m,
            trace,
            certificate,
            oracle_checked,
            construct_failed,
            mismatch,
        }
    };
    match mode {
        Mode::Oracle => {
            let verdict = oracle::classify_realized(g)?;
            trace.push("step: oracle -> classified".to_string());
            Ok(report(verdict, trace, None, true, false, None))
        }
        Mode::Construct => match try_construct(g, &mut trace) {
            Some(res) => Ok(report(res.verdict, trace, Some(res.certificate), false, false, None)),
            None if g.n() <= EXHAUSTIVE_CAP => {
                trace.push("step: fallback -> oracle".to_string());
                let verdict = oracle::classify_realized(g)?;
                Ok(report(verdict, trace, None, true, true, None))
            }
            None => {
                trace.push("step: fallback -> none (beyond exhaustive range)".to_string());
                Ok(report(RealizationVerdict::Unknown, trace, None, false, true, None))
            }
        },
        Mode::Both => {
            let res = try_construct(g, &mut trace);
            if g.n() > EXHAUSTIVE_CAP {
                trace.push("step: differential -> oracle skipped (beyond range)".to_string());
                return Ok(match res {
                    Some(r) => report(r.verdict, trace, Some(r.certificate), false, false, None),
                    None => report(RealizationVerdict::Unknown, trace, None, false, true, None),
                });
            }
            let oracle_verdict = oracle::classify_realized(g)?;
            match res {
                Some(r) => {
                    let cline = r.verdict.schema_line(m);
                    let oline = oracle_verdict.schema_line(m);
                    let mismatch =
                        if cline == oline { None } else { Some((cline, oline)) };
                    trace.push(format!(
                        "step: differential -> {}",
                        if mismatch.is_none() { "agree" } else { "MISMATCH" }
                    ));
                    Ok(report(oracle_verdict, trace, Some(r.certificate), true, false, mismatch))
                }
                None => {
                    trace.push(
                        "step: differential -> construct failed, oracle decides".to_string(),
                    );
                    Ok(report(oracle_verdict, trace, None, true, true, None))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use std::collections::BTreeSet;

    fn ms(s: &str) -> Multisign {
        s.parse().unwrap()
    }

    #[test]
    fn shift_reduce_matches_oracle_set_shift() {
        for seed in 0..6 {
            for n in [6, 7] {
                let g = instances::uniform_random(n, 2, seed).unwrap();
                let x = Multisign::from_bits(seed % 4, 2);
                let (gx, parity) = shift_reduce(&g, x);
                let s: BTreeSet<Multisign> = oracle::realized_multisigns(&g).unwrap();
                let shifted: BTreeSet<Multisign> = oracle::realized_multisigns(&gx)
                    .unwrap()
                    .into_iter()
                    .map(|v| v + parity)
                    .collect();
                assert_eq!(s, shifted, "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn identity_graph_classifies_as_trivial_subspace() {
        let g = instances::all_identity(7, 2).unwrap();
        let report = classify_instance(&g, Mode::Both).unwrap();
        assert_eq!(report.exit_code(), 0);
        assert!(report.mismatch.is_none());
        assert_eq!(report.verdict.schema_line(2), "verdict=Subspace offset=00 basis=");
    }

    #[test]
    fn sparse_full_rank_classifies_full_with_certificate() {
        let g = instances::normalized_sparse(16, 2).unwrap();
        let report = classify_instance(&g, Mode::Construct).unwrap();
        assert!(matches!(report.verdict, RealizationVerdict::Full));
        assert!(!report.construct_failed);
        let cert = report.certificate.expect("construct succeeded");
        assert_eq!(cert.realizations.len(), 4);
        assert!(verify_certificate(&g, &cert).iter().all(|c| c.ok));
    }

    #[test]
    fn case1_fixture_never_contradicts_oracle() {
        for variant in [instances::Case1Variant::Star, instances::Case1Variant::Triangle] {
            let g = instances::paper_case1(variant);
            let report = classify_instance(&g, Mode::Both).unwrap();
            assert!(report.mismatch.is_none());
            assert_ne!(report.exit_code(), 3);
            // The fixture is exceptional: the constructive path cannot
            // produce independent triangles away from the special edges.
            assert!(report.construct_failed);
            let set = report.verdict.realized_set(3).expect("oracle decided");
            assert!(!set.contains(&ms("111")));
        }
    }

    #[test]
    fn figure3_fixture_is_full_in_both_modes() {
        let g = instances::paper_figure3();
        let both = classify_instance(&g, Mode::Both).unwrap();
        assert!(matches!(both.verdict, RealizationVerdict::Full));
        assert!(both.mismatch.is_none());
        let construct = classify_instance(&g, Mode::Construct).unwrap();
        assert!(matches!(construct.verdict, RealizationVerdict::Full));
    }

    #[test]
    fn all_ones_single_sign_graph_hits_the_subspace_case() {
        for n in [6, 7] {
            let mut g = instances::all_identity(n, 1).unwrap();
            for v in 1..n {
                for u in 0..v {
                    g.set_sigma(u, v, ms("1"));
                }
            }
            let report = subspace_case(&g).expect("hypothesis holds");
            let expected = if n % 2 == 0 {
                "verdict=Subspace offset=0 basis="
            } else {
                "verdict=Affine offset=1 basis="
            };
            assert_eq!(report.verdict.schema_line(1), expected, "n={n}");
            let both = classify_instance(&g, Mode::Both).unwrap();
            assert!(both.mismatch.is_none(), "n={n}");
        }
    }

    #[test]
    fn subspace_case_declines_when_identity_triangles_exist() {
        let g = instances::normalized_sparse(8, 1).unwrap();
        assert!(subspace_case(&g).is_none());
    }

    #[test]
    fn certificate_round_trip_and_tamper_detection() {
        let g = instances::normalized_sparse(16, 2).unwrap();
        let report = classify_instance(&g, Mode::Construct).unwrap();
        let cert = report.certificate.unwrap();
        let text = cert.to_text();
        let parsed = Certificate::parse(&text).unwrap();
        assert_eq!(parsed, cert);
        assert!(verify_certificate(&g, &parsed).iter().all(|c| c.ok));

        // Swap two vertices in one realization so the multisign changes.
        let mut tampered = cert.clone();
        let (target, cycle) = tampered.realizations[1].clone();
        let order = cycle.order().to_vec();
        let swapped = (1..order.len())
            .flat_map(|i| ((i + 1)..order.len()).map(move |j| (i, j)))
            .find_map(|(i, j)| {
                let mut o = order.clone();
                o.swap(i, j);
                let h = HamiltonianCycle::new(o, g.n()).unwrap();
                (g.ham_multisign(&h) != target).then_some(h)
            })
            .expect("some swap moves a labeled edge");
        tampered.realizations[1] = (target, swapped);
        let checks = verify_certificate(&g, &tampered);
        assert!(checks.iter().any(|c| !c.ok));
    }

    #[test]
    fn oracle_mode_reports_other_when_set_is_unstructured() {
        let g = instances::paper_case1(instances::Case1Variant::Star);
        let report = classify_instance(&g, Mode::Oracle).unwrap();
        assert!(report.oracle_checked);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn report_text_has_trace_then_schema() {
        let g = instances::all_identity(6, 1).unwrap();
        let report = classify_instance(&g, Mode::Construct).unwrap();
        let text = report.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[..lines.len() - 1].iter().all(|l| l.starts_with("step: ")));
        assert!(lines.last().unwrap().starts_with("verdict="));
    }
}
