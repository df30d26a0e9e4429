//! Random generators for words, graphs, diagrams and moves.
//!
//! Everything draws from a caller-supplied [`Rng`], so a seeded generator
//! reproduces a run exactly.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::freegroup::{Gen, Letter, Sign, Word};
use crate::gauss::{ArrowId, Endpoint, GaussDiagram, Kind};
use crate::wgraph::{Edge, End, Move, WGraph};
use crate::wirtinger::{Presentation, PresentationOp};

pub fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, gens: &[Gen]) -> Letter {
    Letter::new(*gens.choose(rng).expect("nonempty alphabet"), random_sign(rng))
}

/// A reduced word of length at most `max_len` over `gens`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, gens: &[Gen], max_len: usize) -> Word {
    if gens.is_empty() {
        return Word::identity();
    }
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| random_letter(rng, gens)).collect()
}

/// A welded forest with `ncomp` components, each a random oriented tree on
/// at most `max_verts` vertices with one to three marked vertices. Labels
/// have at most `max_label` letters over all vertices.
pub fn random_forest<R: Rng + ?Sized>(rng: &mut R, ncomp: usize, max_verts: usize, max_label: usize) -> WGraph {
    let mut decl = Vec::new();
    let mut pairs = Vec::new();
    let mut next = 0u32;
    for _ in 0..ncomp {
        let n = rng.gen_range(1..=max_verts.max(1));
        let verts: Vec<Gen> = (0..n).map(|k| Gen(next + k as u32)).collect();
        next += n as u32;
        let nmarked = rng.gen_range(1..=3.min(n));
        let marked: Vec<Gen> = verts.choose_multiple(rng, nmarked).copied().collect();
        decl.extend(verts.iter().map(|v| (*v, marked.contains(v))));
        for k in 1..n {
            let parent = verts[rng.gen_range(0..k)];
            if rng.gen_bool(0.5) {
                pairs.push((parent, verts[k]));
            } else {
                pairs.push((verts[k], parent));
            }
        }
    }
    let all: Vec<Gen> = decl.iter().map(|(v, _)| *v).collect();
    pairs.shuffle(rng);
    let edges = pairs
        .into_iter()
        .map(|(a, b)| Edge::new(a, b, random_word(rng, &all, max_label)))
        .collect();
    WGraph::from_parts(&decl, edges).expect("generated forest is valid")
}

/// A linear graph that is the image of a string-link diagram: each component
/// is a forward path from its first to its last marked vertex, labels use
/// only unmarked vertices, every unmarked vertex occurs in some label and no
/// empty edge joins two unmarked vertices.
pub fn random_linear<R: Rng + ?Sized>(rng: &mut R, ncomp: usize, max_inner: usize, max_label: usize) -> WGraph {
    let mut decl = Vec::new();
    let mut paths = Vec::new();
    let mut inner = Vec::new();
    let mut next = 0u32;
    for _ in 0..ncomp {
        let k = rng.gen_range(0..=max_inner);
        let path: Vec<Gen> = (0..k + 2).map(|i| Gen(next + i as u32)).collect();
        next += k as u32 + 2;
        for (i, v) in path.iter().enumerate() {
            let marked = i == 0 || i == k + 1;
            decl.push((*v, marked));
            if !marked {
                inner.push(*v);
            }
        }
        paths.push(path);
    }
    let mut edges = Vec::new();
    for path in &paths {
        for pair in path.windows(2) {
            let both_inner = inner.contains(&pair[0]) && inner.contains(&pair[1]);
            let mut label = random_word(rng, &inner, max_label);
            while both_inner && label.is_identity() {
                label = random_word(rng, &inner, max_label.max(1));
            }
            edges.push(Edge::new(pair[0], pair[1], label));
        }
    }
    for v in &inner {
        if !edges.iter().any(|e| e.label.contains(*v)) {
            let i = rng.gen_range(0..edges.len());
            let l = Word::letter(Letter::new(*v, random_sign(rng)));
            edges[i].label = if rng.gen_bool(0.5) {
                edges[i].label.mul(&l)
            } else {
                l.mul(&edges[i].label)
            };
        }
    }
    // Appending a letter can cancel another occurrence; retry in that case.
    let lost = inner.iter().any(|v| !edges.iter().any(|e| e.label.contains(*v)));
    let empty_inner = edges
        .iter()
        .any(|e| e.label.is_identity() && inner.contains(&e.src) && inner.contains(&e.dst));
    if lost || empty_inner {
        return random_linear(rng, ncomp, max_inner, max_label);
    }
    WGraph::from_parts(&decl, edges).expect("generated linear graph is valid")
}

/// An unmarked graph on at most `max_verts` vertices, with some empty edges,
/// loops and matching Reid3 instances so presentation operations apply.
pub fn random_unmarked<R: Rng + ?Sized>(rng: &mut R, max_verts: usize, max_label: usize) -> WGraph {
    let n = rng.gen_range(1..=max_verts.max(1));
    let verts: Vec<Gen> = (0..n as u32).map(Gen).collect();
    let decl: Vec<(Gen, bool)> = verts.iter().map(|v| (*v, false)).collect();
    let nedges = rng.gen_range(0..=n + 1);
    let mut edges: Vec<Edge> = Vec::new();
    for _ in 0..nedges {
        let a = *verts.choose(rng).expect("vertices");
        let b = *verts.choose(rng).expect("vertices");
        let label = if rng.gen_bool(0.3) {
            Word::identity()
        } else {
            random_word(rng, &verts, max_label)
        };
        edges.push(Edge::new(a, b, label));
    }
    if !edges.is_empty() && rng.gen_bool(0.5) {
        let wit = edges.choose(rng).expect("edges").clone();
        let a = *verts.choose(rng).expect("vertices");
        let b = *verts.choose(rng).expect("vertices");
        edges.push(Edge::new(a, b, Word::gen(wit.src).mul(&wit.label)));
    }
    edges.shuffle(rng);
    WGraph::from_parts(&decl, edges).expect("generated graph is valid")
}

fn diagram_from<R: Rng + ?Sized>(
    rng: &mut R,
    kind: Kind,
    mut comps: Vec<Vec<Endpoint>>,
    mut signs: BTreeMap<ArrowId, Sign>,
    first_free: u32,
    extra: usize,
) -> GaussDiagram {
    let ncomp = comps.len();
    for k in 0..extra as u32 {
        let a = ArrowId(first_free + k);
        signs.insert(a, random_sign(rng));
        for p in [Endpoint::tail(a), Endpoint::head(a)] {
            let c = rng.gen_range(0..ncomp);
            let pos = rng.gen_range(0..=comps[c].len());
            comps[c].insert(pos, p);
        }
    }
    GaussDiagram::new(kind, comps, signs).expect("generated diagram is valid")
}

/// A diagram with `ncomp` components and at most `max_arrows` arrows with
/// uniformly placed endpoints.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, kind: Kind, ncomp: usize, max_arrows: usize) -> GaussDiagram {
    let n = rng.gen_range(0..=max_arrows);
    diagram_from(rng, kind, vec![Vec::new(); ncomp], BTreeMap::new(), 0, n)
}

/// A string-link diagram on two components containing a forward Υ pattern at
/// arrow `0`, together with that arrow. Arrows beyond the pattern are placed
/// outside it, so at most `max_arrows` arrows are used (at least four).
pub fn random_upsilon_diagram<R: Rng + ?Sized>(rng: &mut R, max_arrows: usize) -> (GaussDiagram, ArrowId) {
    let (a, a2, c, c2) = (ArrowId(0), ArrowId(1), ArrowId(2), ArrowId(3));
    let eps = random_sign(rng);
    let eta = random_sign(rng);
    let mut signs = BTreeMap::from([(a, eps), (a2, eps.flip()), (c, eta.flip()), (c2, eta)]);
    let mut next = 4;
    // Optional pair of head letters `w̄ = hX`, `w = hY` with adjacent tails
    // on the other component.
    let (mut wbar, mut w, mut other) = (Vec::new(), Vec::new(), Vec::new());
    if max_arrows >= 6 && rng.gen_bool(0.5) {
        let (x, y) = (ArrowId(4), ArrowId(5));
        let s = random_sign(rng);
        signs.insert(x, s);
        signs.insert(y, s.flip());
        wbar.push(Endpoint::head(x));
        w.push(Endpoint::head(y));
        other.extend([Endpoint::tail(x), Endpoint::tail(y)]);
        next = 6;
    }
    let (mut top, mut right) = (vec![Endpoint::tail(a), Endpoint::tail(a2)], vec![Endpoint::tail(c), Endpoint::tail(c2)]);
    top.shuffle(rng);
    right.shuffle(rng);
    let mut core = top;
    core.extend(wbar);
    core.extend([Endpoint::head(c), Endpoint::head(a2)]);
    core.extend(right);
    core.extend([Endpoint::head(a), Endpoint::head(c2)]);
    core.extend(w);
    // Extra arrows go before or after the core, with a separating head on
    // the second component so the w tails stay in their own run.
    let extra = rng.gen_range(0..=max_arrows.saturating_sub(next as usize));
    let mut comps = vec![Vec::new(), other];
    let mut signs_out = signs;
    let mut arrows = Vec::new();
    for k in 0..extra as u32 {
        let id = ArrowId(next + k);
        signs_out.insert(id, random_sign(rng));
        arrows.push(id);
    }
    let mut before = Vec::new();
    let mut after = Vec::new();
    for id in arrows {
        for p in [Endpoint::tail(id), Endpoint::head(id)] {
            let slot = rng.gen_range(0..3);
            match slot {
                0 => before.insert(rng.gen_range(0..=before.len()), p),
                1 => after.insert(rng.gen_range(0..=after.len()), p),
                _ => {
                    let len = comps[1].len();
                    let pos = if rng.gen_bool(0.5) { 0 } else { len };
                    comps[1].insert(pos, p);
                }
            }
        }
    }
    let mut seq = before;
    seq.extend(core);
    seq.extend(after);
    comps[0] = seq;
    let d = GaussDiagram::new(Kind::StringLink, comps, signs_out).expect("planted diagram is valid");
    if d.upsilon_pattern(a, true).is_ok() {
        (d, a)
    } else {
        // A filler tail landed next to the w tails or a head inside a run;
        // draw again.
        random_upsilon_diagram(rng, max_arrows)
    }
}

/// Kinds of w-graph moves drawn by [`random_move`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Contract,
    Expand,
    ReverseEdge,
    Stabilize,
    Reid1,
    Reid3,
    Push,
    Split,
    Merge,
    GenStabilize,
    RephrasedReid3,
    SelfVirtualize,
}

impl MoveKind {
    pub const PRIMITIVE: [MoveKind; 6] = [
        MoveKind::Contract,
        MoveKind::Expand,
        MoveKind::ReverseEdge,
        MoveKind::Stabilize,
        MoveKind::Reid1,
        MoveKind::Reid3,
    ];
    pub const DERIVED: [MoveKind; 5] = [
        MoveKind::Push,
        MoveKind::Split,
        MoveKind::Merge,
        MoveKind::GenStabilize,
        MoveKind::RephrasedReid3,
    ];
    /// Every welded move: primitive and derived, without SV.
    pub const WELDED: [MoveKind; 11] = [
        MoveKind::Contract,
        MoveKind::Expand,
        MoveKind::ReverseEdge,
        MoveKind::Stabilize,
        MoveKind::Reid1,
        MoveKind::Reid3,
        MoveKind::Push,
        MoveKind::Split,
        MoveKind::Merge,
        MoveKind::GenStabilize,
        MoveKind::RephrasedReid3,
    ];
}

fn subset<T: Copy, R: Rng + ?Sized>(rng: &mut R, xs: &[T]) -> Vec<T> {
    xs.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

/// One candidate of the given kind, not necessarily applicable.
fn candidate<R: Rng + ?Sized>(rng: &mut R, g: &WGraph, kind: MoveKind) -> Option<Move> {
    let verts: Vec<Gen> = g.vertices().map(|(v, _)| v).collect();
    let ne = g.edges().len();
    let pick_edge = |rng: &mut R| (ne > 0).then(|| rng.gen_range(0..ne));
    let other_letter = |rng: &mut R, v: Gen| {
        let others: Vec<Gen> = verts.iter().copied().filter(|u| *u != v).collect();
        (!others.is_empty()).then(|| random_letter(rng, &others))
    };
    let m = match kind {
        MoveKind::Contract => {
            let ok: Vec<usize> = (0..ne)
                .filter(|&i| {
                    let e = &g.edges()[i];
                    e.label.is_identity() && !e.is_loop() && !g.is_marked(e.dst)
                })
                .collect();
            Move::Contract { edge: *ok.choose(rng)? }
        }
        MoveKind::Expand => {
            let v = *verts.choose(rng)?;
            let ends: Vec<(usize, End)> = g.incident(v);
            let occ: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .enumerate()
                .flat_map(|(i, e)| {
                    e.label
                        .letters()
                        .iter()
                        .enumerate()
                        .filter(|(_, l)| l.gen == v)
                        .map(move |(p, _)| (i, p))
                })
                .collect();
            Move::Expand {
                vertex: v,
                ends: subset(rng, &ends),
                occurrences: subset(rng, &occ),
                at: rng.gen_range(0..=ne),
            }
        }
        MoveKind::ReverseEdge => Move::ReverseEdge { edge: pick_edge(rng)? },
        MoveKind::Stabilize | MoveKind::GenStabilize => {
            let ok: Vec<Gen> = verts
                .iter()
                .copied()
                .filter(|&b| !g.is_marked(b) && g.edges().iter().all(|e| e.dst != b))
                .filter(|&b| kind == MoveKind::GenStabilize || g.occurs_in_labels(b).is_none())
                .collect();
            let vertex = *ok.choose(rng)?;
            let letter = other_letter(rng, vertex)?;
            if kind == MoveKind::Stabilize {
                Move::Stabilize { vertex, letter }
            } else {
                Move::GenStabilize { vertex, letter }
            }
        }
        MoveKind::Reid1 => Move::Reid1 {
            edge: pick_edge(rng)?,
            sign: random_sign(rng),
        },
        MoveKind::Reid3 => {
            let mut ok = Vec::new();
            for (wi, wit) in g.edges().iter().enumerate() {
                let aw = Word::gen(wit.src).mul(&wit.label);
                let wb = wit.label.mul(&Word::gen(wit.dst));
                for (i, e) in g.edges().iter().enumerate() {
                    if i != wi && e.label == aw {
                        ok.push((i, wi, false));
                    }
                    if i != wi && e.label == wb {
                        ok.push((i, wi, true));
                    }
                }
            }
            let (edge, witness, backward) = *ok.choose(rng)?;
            Move::Reid3 {
                edge,
                witness,
                backward,
            }
        }
        MoveKind::Push => {
            let ok: Vec<Gen> = verts
                .iter()
                .copied()
                .filter(|&v| !g.is_marked(v) && g.occurs_in_labels(v).is_none())
                .filter(|&v| g.edges().iter().all(|e| !(e.src == v && e.dst == v)))
                .collect();
            let vertex = *ok.choose(rng)?;
            let others: Vec<Gen> = verts.iter().copied().filter(|u| *u != vertex).collect();
            Move::Push {
                vertex,
                word: random_word(rng, &others, 2),
            }
        }
        MoveKind::Split => {
            let edge = pick_edge(rng)?;
            Move::Split {
                edge,
                cut: rng.gen_range(0..=g.edges()[edge].label.len()),
            }
        }
        MoveKind::Merge => {
            let ok: Vec<Gen> = verts
                .iter()
                .copied()
                .filter(|&v| g.apply(&Move::Merge { vertex: v }).is_ok())
                .collect();
            Move::Merge { vertex: *ok.choose(rng)? }
        }
        MoveKind::RephrasedReid3 => {
            if ne < 2 {
                return None;
            }
            let edge = rng.gen_range(0..ne);
            let witness = (edge + rng.gen_range(1..ne)) % ne;
            let len = 2 * g.edges()[witness].label.len() + 2;
            Move::RephrasedReid3 {
                edge,
                pos: rng.gen_range(0..=g.edges()[edge].label.len()),
                witness,
                rotation: rng.gen_range(0..len),
                inverse: rng.gen_bool(0.5),
            }
        }
        MoveKind::SelfVirtualize => {
            let comp_of = g.comp_map();
            let mut ok = Vec::new();
            for (i, e) in g.edges().iter().enumerate() {
                let c = comp_of[&e.src];
                if e.label.is_identity() {
                    let same: Vec<Gen> = verts.iter().copied().filter(|v| comp_of[v] == c).collect();
                    ok.push(Move::SelfVirtualize {
                        edge: i,
                        letter: Some(random_letter(rng, &same)),
                    });
                } else if e.label.len() == 1 && comp_of[&e.label.letters()[0].gen] == c {
                    ok.push(Move::SelfVirtualize { edge: i, letter: None });
                }
            }
            ok.choose(rng)?.clone()
        }
    };
    Some(m)
}

/// A move of one of `kinds` that applies to `g`, or `None` if none was found
/// after a bounded number of draws.
pub fn random_move<R: Rng + ?Sized>(rng: &mut R, g: &WGraph, kinds: &[MoveKind]) -> Option<Move> {
    for _ in 0..64 {
        let kind = *kinds.choose(rng)?;
        if let Some(m) = candidate(rng, g, kind) {
            if g.apply(&m).is_ok() {
                return Some(m);
            }
        }
    }
    None
}

/// An applicable presentation operation, drawn uniformly among the kinds
/// that have at least one instance.
pub fn random_presentation_op<R: Rng + ?Sized>(rng: &mut R, p: &Presentation) -> Option<PresentationOp> {
    let mut by_kind: Vec<Vec<PresentationOp>> = vec![Vec::new(); 4];
    for (k, r) in p.relations.iter().enumerate() {
        if r.w.is_identity() && r.i != r.j {
            by_kind[0].push(PresentationOp::Eliminate { rel: k });
        }
        by_kind[1].push(PresentationOp::Flip { rel: k });
        for (wi, wit) in p.relations.iter().enumerate() {
            if wi == k {
                continue;
            }
            let aw = Word::gen(wit.i).mul(&wit.w);
            let wb = wit.w.mul(&Word::gen(wit.j));
            for (from, backward) in [(aw, false), (wb, true)] {
                if r.w == from {
                    by_kind[3].push(PresentationOp::Reid3 {
                        rel: k,
                        witness: wi,
                        backward,
                    });
                }
            }
        }
    }
    for &gen in &p.generators {
        if p.relations.iter().all(|r| r.j != gen) {
            let others: Vec<Gen> = p.generators.iter().copied().filter(|g| *g != gen).collect();
            if !others.is_empty() {
                by_kind[2].push(PresentationOp::Conjugate {
                    gen,
                    letter: random_letter(rng, &others),
                });
            }
        }
    }
    let kinds: Vec<&Vec<PresentationOp>> = by_kind.iter().filter(|v| !v.is_empty()).collect();
    kinds.choose(rng)?.choose(rng).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::is_welded_forest;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = random_forest(&mut rng, 3, 8, 6);
            assert!(is_welded_forest(&f));
            assert_eq!(f.validate(), Ok(()));
            let l = random_linear(&mut rng, 2, 3, 3);
            assert!(l.graph_type().iter().all(|t| *t == (2, 0)));
            let (d, a) = random_upsilon_diagram(&mut rng, 8);
            assert!(d.num_arrows() <= 8);
            assert!(d.upsilon_pattern(a, true).is_ok());
            let u = random_unmarked(&mut rng, 5, 3);
            assert!(u.graph_type().iter().all(|t| t.0 == 0));
        }
    }

    #[test]
    fn moves_apply() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..100 {
            let mut g = random_forest(&mut rng, 2, 5, 3);
            for _ in 0..20 {
                let m = random_move(&mut rng, &g, &MoveKind::WELDED).expect("some move applies");
                seen.insert(m.name());
                g = g.apply(&m).unwrap();
            }
        }
        assert_eq!(seen.len(), MoveKind::WELDED.len());
    }

    #[test]
    fn deterministic() {
        let a = random_forest(&mut ChaCha8Rng::seed_from_u64(3), 3, 6, 4);
        let b = random_forest(&mut ChaCha8Rng::seed_from_u64(3), 3, 6, 4);
        assert_eq!(a, b);
    }
}
