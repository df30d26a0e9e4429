//! Seeded property harness over the invariance and round-trip properties.
//!
//! Case `k` of a run with seed `s` draws from a ChaCha8 stream selected by
//! `k`, so cases are independent, run in parallel and reproduce in isolation.
//! Failing move sequences are shrunk by binary search, first dropping a
//! suffix of the trace and then folding a prefix into the starting graph.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convert::{psi_link, psi_stringlink, xi_link, xi_linear, xi_stringlink};
use crate::format::{render_gauss, render_move, WGraphFile};
use crate::gauss::{GaussDiagram, GaussMove, Kind};
use crate::milnor::milnor_invariants;
use crate::random::{
    random_diagram, random_forest, random_linear, random_move, random_upsilon_diagram, MoveKind,
};
use crate::wgraph::{is_isomorphic, Move, WGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Milnor tables of forests under welded moves.
    Moves,
    /// The same with self-virtualization interleaved.
    Sv,
    /// Milnor tables of ψ-images across one Υ move.
    Upsilon,
    /// ψ∘ξ∘ψ against ψ, and ψ∘ξ against linear graphs.
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Moves, Suite::Sv, Suite::Upsilon, Suite::Roundtrip];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Moves => "moves",
            Suite::Sv => "sv",
            Suite::Upsilon => "upsilon",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The reproducing data of a failed case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Trace { graph: WGraph, trace: Vec<Move> },
    Diagram(GaussDiagram),
    Graph(WGraph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub suite: Suite,
    pub index: usize,
    pub reason: String,
    pub witness: Witness,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} case {}: {}", self.suite, self.index, self.reason)?;
        match &self.witness {
            Witness::Trace { graph, trace } => {
                let file = WGraphFile::new(graph.clone());
                f.write_str(&file.render())?;
                for m in trace {
                    writeln!(f, "# move {}", render_move(m, &|g| file.names.name(g)))?;
                }
                Ok(())
            }
            Witness::Diagram(d) => f.write_str(&render_gauss(d)),
            Witness::Graph(g) => f.write_str(&WGraphFile::new(g.clone()).render()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    /// Failures in case order.
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The generator of case `index` in a run seeded with `seed`.
pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn run(suite: Suite, seed: u64, cases: usize) -> Report {
    let failures = (0..cases)
        .into_par_iter()
        .filter_map(|k| run_case(suite, seed, k))
        .collect();
    Report {
        suite,
        seed,
        cases,
        failures,
    }
}

/// Runs one case, returning its minimized failure if any.
pub fn run_case(suite: Suite, seed: u64, index: usize) -> Option<Failure> {
    let mut rng = case_rng(seed, index);
    let fail = |reason: String, witness: Witness| Failure {
        suite,
        index,
        reason,
        witness,
    };
    match suite {
        Suite::Moves | Suite::Sv => {
            let kinds: Vec<MoveKind> = if suite == Suite::Sv {
                let mut k = MoveKind::WELDED.to_vec();
                k.extend([MoveKind::SelfVirtualize; 4]);
                k
            } else {
                MoveKind::WELDED.to_vec()
            };
            let (graph, trace) = forest_case(&mut rng, &kinds);
            let reason = trace_failure(&graph, &trace)?;
            let (graph, trace) = minimize(graph, trace);
            Some(fail(reason, Witness::Trace { graph, trace }))
        }
        Suite::Upsilon => {
            let (d, a) = random_upsilon_diagram(&mut rng, 8);
            upsilon_failure(&d, a).map(|r| fail(r, Witness::Diagram(d)))
        }
        Suite::Roundtrip => {
            let kind = if rng.gen_bool(0.5) { Kind::StringLink } else { Kind::Link };
            let ncomp = rng.gen_range(1..=3);
            let d = random_diagram(&mut rng, kind, ncomp, 8);
            if let Some(r) = diagram_roundtrip_failure(&d) {
                return Some(fail(r, Witness::Diagram(d)));
            }
            let ncomp = rng.gen_range(1..=3);
            let g = random_linear(&mut rng, ncomp, 3, 4);
            linear_roundtrip_failure(&g).map(|r| fail(r, Witness::Graph(g)))
        }
    }
}

/// A forest with one to four components and a sequence of at most 20 moves
/// drawn from `kinds`.
pub fn forest_case<R: Rng + ?Sized>(rng: &mut R, kinds: &[MoveKind]) -> (WGraph, Vec<Move>) {
    let ncomp = rng.gen_range(1..=4);
    let graph = random_forest(rng, ncomp, 8, 6);
    let len = rng.gen_range(0..=20);
    let mut trace = Vec::with_capacity(len);
    let mut g = graph.clone();
    for _ in 0..len {
        let Some(m) = random_move(rng, &g, kinds) else { break };
        g = g.apply(&m).expect("random_move returns applicable moves");
        trace.push(m);
    }
    (graph, trace)
}

/// Why replaying `trace` on `graph` breaks Milnor invariance, if it does.
pub fn trace_failure(graph: &WGraph, trace: &[Move]) -> Option<String> {
    let before = match milnor_invariants(graph) {
        Ok(t) => t,
        Err(e) => return Some(format!("invariants of the start graph: {e}")),
    };
    let mut g = graph.clone();
    for (k, m) in trace.iter().enumerate() {
        g = match g.apply(m) {
            Ok(h) => h,
            Err(e) => return Some(format!("move {k} does not apply: {e}")),
        };
    }
    match milnor_invariants(&g) {
        Ok(after) if after == before => None,
        Ok(after) => Some(format!("tables differ:\n{before}--\n{after}")),
        Err(e) => Some(format!("invariants of the end graph: {e}")),
    }
}

fn replay(graph: &WGraph, trace: &[Move]) -> Option<WGraph> {
    trace.iter().try_fold(graph.clone(), |g, m| g.apply(m).ok())
}

/// Shortest failing prefix of the trace, then the latest intermediate graph
/// from which the remaining suffix still fails.
pub fn minimize(graph: WGraph, trace: Vec<Move>) -> (WGraph, Vec<Move>) {
    minimize_by(graph, trace, |g, t| trace_failure(g, t).is_some())
}

/// [`minimize`] against an arbitrary failure predicate.
pub fn minimize_by(
    graph: WGraph,
    trace: Vec<Move>,
    fails: impl Fn(&WGraph, &[Move]) -> bool,
) -> (WGraph, Vec<Move>) {
    let (mut lo, mut hi) = (0, trace.len());
    if fails(&graph, &[]) {
        hi = 0;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if fails(&graph, &trace[..mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let trace = trace[..hi].to_vec();
    let (mut lo, mut hi) = (0, trace.len());
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        let start = replay(&graph, &trace[..mid]).expect("prefix of an applicable trace");
        if fails(&start, &trace[mid..]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let start = replay(&graph, &trace[..lo]).expect("prefix of an applicable trace");
    (start, trace[lo..].to_vec())
}

/// Why the ψ-images before and after the Υ move at `arrow` have different
/// Milnor tables, if they do.
pub fn upsilon_failure(d: &GaussDiagram, arrow: crate::gauss::ArrowId) -> Option<String> {
    let e = match d.apply(&GaussMove::Upsilon { arrow, forward: true }) {
        Ok(e) => e,
        Err(err) => return Some(format!("Υ does not apply: {err}")),
    };
    let tables = [d, &e].map(|x| {
        psi_stringlink(x)
            .map_err(|err| err.to_string())
            .and_then(|g| milnor_invariants(&g).map_err(|err| err.to_string()))
    });
    match tables {
        [Ok(a), Ok(b)] if a == b => None,
        [Ok(a), Ok(b)] => Some(format!("tables differ:\n{a}--\n{b}")),
        [Err(err), _] | [_, Err(err)] => Some(err),
    }
}

/// Why ψ∘ξ∘ψ is not isomorphic to ψ on `d`, if it is not.
pub fn diagram_roundtrip_failure(d: &GaussDiagram) -> Option<String> {
    let attempt = || -> Result<bool, crate::convert::ConvertError> {
        Ok(match d.kind() {
            Kind::StringLink => {
                let g = psi_stringlink(d)?;
                is_isomorphic(&psi_stringlink(&xi_stringlink(&g)?)?, &g)
            }
            Kind::Link => {
                let g = psi_link(d)?;
                let orient = vec![true; g.num_components()];
                is_isomorphic(&psi_link(&xi_link(&g, &orient)?)?, &g)
            }
        })
    };
    match attempt() {
        Ok(true) => None,
        Ok(false) => Some("ψ∘ξ∘ψ is not isomorphic to ψ".into()),
        Err(e) => Some(e.to_string()),
    }
}

/// Why ψ∘ξ does not give back the linear graph `g`, if it does not.
pub fn linear_roundtrip_failure(g: &WGraph) -> Option<String> {
    match xi_linear(g).and_then(|d| psi_stringlink(&d)) {
        Ok(h) if is_isomorphic(&h, g) => None,
        Ok(_) => Some("ψ∘ξ is not isomorphic to the linear graph".into()),
        Err(e) => Some(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::{Gen, Sign, Word};
    use crate::wgraph::Edge;

    #[test]
    fn suites_pass_and_repeat() {
        for suite in Suite::ALL {
            let a = run(suite, 5, 40);
            assert!(a.passed(), "{}", a.failures[0]);
            assert_eq!(a, run(suite, 5, 40));
        }
    }

    #[test]
    fn suite_names() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>(), Ok(suite));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn minimizer_shrinks_to_the_culprit() {
        let g = WGraph::from_parts(
            &[(Gen(0), true), (Gen(1), true)],
            vec![Edge::new(Gen(0), Gen(1), Word::identity())],
        )
        .unwrap();
        let or = Move::ReverseEdge { edge: 0 };
        let bad = Move::Reid1 { edge: 0, sign: Sign::Neg };
        let trace = vec![or.clone(), or.clone(), bad.clone(), or.clone(), or];
        let fails = |_: &WGraph, t: &[Move]| t.contains(&bad);
        let (start, rest) = minimize_by(g.clone(), trace, fails);
        assert_eq!(start, g);
        assert_eq!(rest, vec![bad.clone()]);
        // Welded moves never fail the real check.
        let ok = vec![Move::Reid1 { edge: 0, sign: Sign::Pos }, bad];
        assert!(trace_failure(&g, &ok).is_none());
    }
}
