//! Maps between Gauss diagrams and w-graphs.
//!
//! `psi_*` turn a diagram into a linear or cyclic w-graph: one vertex per
//! tail, edges between consecutive tails labelled by the heads met on the
//! way. `xi_*` go back, first flattening a tree-shaped string-link graph into
//! a linear one by walking around it.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::freegroup::{reduce, Gen, Letter, Sign, Word};
use crate::gauss::{ArrowId, Endpoint, GaussDiagram, GaussError, Kind};
use crate::wgraph::{Edge, End, Move, WGraph, WGraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("expected a {0:?} diagram")]
    WrongKind(Kind),
    #[error("component {} has type {found:?}, expected {want:?}", comp + 1)]
    WrongType {
        comp: usize,
        found: (usize, usize),
        want: (usize, usize),
    },
    #[error("component {} is not an interval", .0 + 1)]
    NotLinear(usize),
    #[error("component {} is not a circle", .0 + 1)]
    NotCyclic(usize),
    #[error("planar ordering at vertex {0} is invalid")]
    Ordering(Gen),
    #[error("marked vertex {0} is not univalent")]
    NotUnivalent(Gen),
    #[error("{got} orientations given for {want} components")]
    Orientations { want: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] WGraphError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

/// Contracts empty non-loop edges between unmarked vertices, lowest edge id
/// first. Edges touching a marked vertex are kept.
pub fn contract_empty(g: &WGraph) -> WGraph {
    let mut h = g.clone();
    while let Some(i) = h.edges().iter().position(|e| {
        e.label.is_identity() && !e.is_loop() && !h.is_marked(e.src) && !h.is_marked(e.dst)
    }) {
        h.apply_in_place(&Move::Contract { edge: i })
            .expect("empty edge between unmarked vertices");
    }
    h
}

/// The word of the heads in `run`, each read as its tail vertex.
fn head_word(run: &[Endpoint], tail_vertex: &BTreeMap<ArrowId, Gen>, d: &GaussDiagram) -> Word {
    reduce(run.iter().filter(|p| p.is_head()).map(|p| {
        Letter::new(
            tail_vertex[&p.arrow],
            d.sign(p.arrow).expect("arrow of a valid diagram"),
        )
    }))
}

/// The w-graph of a string-link diagram. Per component the vertices are the
/// initial point, one per tail, and the final point; the two ends are
/// marked. Empty edges between tails are contracted afterwards.
pub fn psi_stringlink(d: &GaussDiagram) -> Result<WGraph, ConvertError> {
    if d.kind() != Kind::StringLink {
        return Err(ConvertError::WrongKind(Kind::StringLink));
    }
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        Gen(next - 1)
    };
    let mut tail_vertex = BTreeMap::new();
    // Per component: (vertex, end of the run before it, start of the run after).
    let mut points: Vec<Vec<(Gen, usize, usize)>> = Vec::new();
    let mut decl = Vec::new();
    for seq in d.components() {
        let start = fresh();
        decl.push((start, true));
        let mut pts = vec![(start, 0, 0)];
        for (i, p) in seq.iter().enumerate() {
            if p.is_tail() {
                let v = fresh();
                decl.push((v, false));
                tail_vertex.insert(p.arrow, v);
                pts.push((v, i, i + 1));
            }
        }
        let end = fresh();
        decl.push((end, true));
        pts.push((end, seq.len(), seq.len()));
        points.push(pts);
    }
    let mut edges = Vec::new();
    for (seq, pts) in d.components().iter().zip(&points) {
        for w in pts.windows(2) {
            let run = &seq[w[0].2..w[1].1];
            edges.push(Edge::new(w[0].0, w[1].0, head_word(run, &tail_vertex, d)));
        }
    }
    let g = WGraph::from_parts(&decl, edges)?;
    Ok(contract_empty(&g))
}

/// Components of a link diagram without tails; their ψ image is a single
/// vertex carrying a loop.
pub fn degenerate_components(d: &GaussDiagram) -> Vec<usize> {
    d.components()
        .iter()
        .enumerate()
        .filter(|(_, seq)| !seq.iter().any(|p| p.is_tail()))
        .map(|(c, _)| c)
        .collect()
}

/// The cyclic w-graph of a link diagram: tails in cyclic order, joined by
/// edges carrying the heads in between.
pub fn psi_link(d: &GaussDiagram) -> Result<WGraph, ConvertError> {
    if d.kind() != Kind::Link {
        return Err(ConvertError::WrongKind(Kind::Link));
    }
    let mut next = 0u32;
    let mut tail_vertex = BTreeMap::new();
    // Per component: the tail vertices with their positions, or the lone
    // vertex of a component without tails.
    let mut tails: Vec<Result<Vec<(Gen, usize)>, Gen>> = Vec::new();
    let mut decl = Vec::new();
    for seq in d.components() {
        let mut ts = Vec::new();
        for (i, p) in seq.iter().enumerate() {
            if p.is_tail() {
                let v = Gen(next);
                next += 1;
                tail_vertex.insert(p.arrow, v);
                ts.push((v, i));
                decl.push((v, false));
            }
        }
        if ts.is_empty() {
            let v = Gen(next);
            next += 1;
            decl.push((v, false));
            tails.push(Err(v));
        } else {
            tails.push(Ok(ts));
        }
    }
    let mut edges = Vec::new();
    for (seq, ts) in d.components().iter().zip(&tails) {
        let ts = match ts {
            Ok(ts) => ts,
            Err(v) => {
                edges.push(Edge::new(*v, *v, head_word(seq, &tail_vertex, d)));
                continue;
            }
        };
        let n = seq.len();
        for k in 0..ts.len() {
            let (a, i) = ts[k];
            let (b, j) = ts[(k + 1) % ts.len()];
            let gap = (j + n - i - 1) % n;
            let run: Vec<Endpoint> = (1..=gap).map(|s| seq[(i + s) % n]).collect();
            edges.push(Edge::new(a, b, head_word(&run, &tail_vertex, d)));
        }
    }
    let g = WGraph::from_parts(&decl, edges)?;
    Ok(contract_empty(&g))
}

/// Per vertex, a total order on incident edges: the out edge (towards the
/// final vertex) last and the in edge (towards the initial vertex, spine
/// vertices only) second to last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarOrdering {
    pub order: BTreeMap<Gen, Vec<usize>>,
}

/// Out and in edge of each vertex of a tree component with two univalent
/// marked ends.
struct TreeShape {
    /// Vertices from the initial to the final vertex.
    spine: Vec<Gen>,
    out: BTreeMap<Gen, usize>,
    inward: BTreeMap<Gen, usize>,
}

fn check_type(g: &WGraph, want: (usize, usize)) -> Result<(), ConvertError> {
    for (comp, t) in g.graph_type().into_iter().enumerate() {
        if t != want {
            return Err(ConvertError::WrongType {
                comp,
                found: t,
                want,
            });
        }
    }
    Ok(())
}

fn other_end(e: &Edge, v: Gen) -> Gen {
    if e.src == v {
        e.dst
    } else {
        e.src
    }
}

fn tree_shape(g: &WGraph, c: usize) -> Result<TreeShape, ConvertError> {
    let (start, end) = match g.marked(c) {
        [a, b] => (*a, *b),
        _ => return Err(ConvertError::NotLinear(c)),
    };
    // Parent edges of a search from the final vertex point towards it.
    let mut out = BTreeMap::new();
    let mut seen = BTreeSet::from([end]);
    let mut stack = vec![end];
    while let Some(v) = stack.pop() {
        for (i, _) in g.incident(v) {
            let u = other_end(&g.edges()[i], v);
            if seen.insert(u) {
                out.insert(u, i);
                stack.push(u);
            }
        }
    }
    let mut spine = vec![start];
    let mut inward = BTreeMap::new();
    let mut v = start;
    while v != end {
        let i = out[&v];
        let u = other_end(&g.edges()[i], v);
        inward.insert(u, i);
        spine.push(u);
        v = u;
    }
    Ok(TreeShape { spine, out, inward })
}

impl PlanarOrdering {
    /// Incident edges by id, then the in edge and the out edge moved to the
    /// end in that order.
    pub fn default_for(g: &WGraph) -> Result<PlanarOrdering, ConvertError> {
        check_type(g, (2, 0))?;
        let mut order = BTreeMap::new();
        for c in 0..g.num_components() {
            let shape = tree_shape(g, c)?;
            for v in g.component_vertices(c) {
                let mut es: Vec<usize> = g.incident(v).into_iter().map(|(i, _)| i).collect();
                es.sort_unstable();
                for special in [shape.inward.get(&v), shape.out.get(&v)].into_iter().flatten() {
                    es.retain(|i| i != special);
                    es.push(*special);
                }
                order.insert(v, es);
            }
        }
        Ok(PlanarOrdering { order })
    }
}

/// Expands every marked vertex that is not univalent, so that it hangs off
/// a fresh vertex carrying all its former edges.
pub fn pull_marked(g: &WGraph) -> Result<WGraph, ConvertError> {
    let mut h = g.clone();
    let marked: Vec<Gen> = (0..h.num_components()).flat_map(|c| h.marked(c).to_vec()).collect();
    for m in marked {
        if h.degree(m) == 1 {
            continue;
        }
        let ends = h.incident(m);
        let at = h.edges().len();
        h.apply_in_place(&Move::Expand {
            vertex: m,
            ends,
            occurrences: vec![],
            at,
        })?;
    }
    Ok(h)
}

struct Contour<'a> {
    g: &'a WGraph,
    ord: &'a PlanarOrdering,
    placed: Vec<Gen>,
    labels: Vec<Word>,
    acc: Vec<Letter>,
}

impl Contour<'_> {
    fn traverse(&mut self, i: usize, from: Gen) {
        let e = &self.g.edges()[i];
        if e.src == from {
            self.acc.extend_from_slice(e.label.letters());
        } else {
            self.acc.extend_from_slice(e.label.inverse().letters());
        }
    }

    fn place(&mut self, v: Gen) {
        if !self.placed.is_empty() {
            self.labels.push(reduce(std::mem::take(&mut self.acc)));
        }
        self.placed.push(v);
    }

    /// Explores the subtrees hanging off `v`, last child first, then places
    /// `v`.
    fn visit(&mut self, v: Gen, skip: &[usize]) {
        let children: Vec<usize> = self.ord.order[&v]
            .iter()
            .filter(|i| !skip.contains(i))
            .copied()
            .collect();
        for &i in children.iter().rev() {
            let u = other_end(&self.g.edges()[i], v);
            self.traverse(i, v);
            self.visit(u, &[i]);
            self.traverse(i, u);
        }
        self.place(v);
    }
}

/// Flattens a type-(2,0) graph with univalent marked vertices into a linear
/// one on the same vertices. Walking around each tree from the initial
/// vertex, a vertex is placed at its last visit; the edge between two
/// consecutive placements carries the signed concatenation of the labels
/// traversed in between.
pub fn linearize(g: &WGraph, ord: &PlanarOrdering) -> Result<WGraph, ConvertError> {
    check_type(g, (2, 0))?;
    let mut decl = Vec::new();
    let mut edges = Vec::new();
    for c in 0..g.num_components() {
        for &m in g.marked(c) {
            if g.degree(m) != 1 {
                return Err(ConvertError::NotUnivalent(m));
            }
        }
        let shape = tree_shape(g, c)?;
        for v in g.component_vertices(c) {
            let mut want: Vec<usize> = g.incident(v).into_iter().map(|(i, _)| i).collect();
            let got = ord.order.get(&v).ok_or(ConvertError::Ordering(v))?;
            let mut sorted = got.clone();
            sorted.sort_unstable();
            want.sort_unstable();
            let last_ok = shape.out.get(&v).is_none_or(|o| got.last() == Some(o));
            let pen_ok = match (shape.inward.get(&v), shape.out.get(&v)) {
                (Some(i), Some(_)) => got.len() >= 2 && got[got.len() - 2] == *i,
                (Some(i), None) => got.last() == Some(i),
                _ => true,
            };
            if sorted != want || !last_ok || !pen_ok {
                return Err(ConvertError::Ordering(v));
            }
        }
        let mut walk = Contour {
            g,
            ord,
            placed: Vec::new(),
            labels: Vec::new(),
            acc: Vec::new(),
        };
        for (k, &s) in shape.spine.iter().enumerate() {
            let skip: Vec<usize> = [shape.inward.get(&s), shape.out.get(&s)]
                .into_iter()
                .flatten()
                .copied()
                .collect();
            walk.visit(s, &skip);
            if k + 1 < shape.spine.len() {
                walk.traverse(shape.out[&s], s);
            }
        }
        for (k, &v) in walk.placed.iter().enumerate() {
            decl.push((v, g.is_marked(v)));
            if k > 0 {
                edges.push(Edge::new(walk.placed[k - 1], v, walk.labels[k - 1].clone()));
            }
        }
    }
    Ok(WGraph::from_parts(&decl, edges)?)
}

/// Walks an interval component from its first marked vertex: the vertices
/// in order and, between them, the labels read along the walk.
fn linear_path(g: &WGraph, c: usize) -> Result<(Vec<Gen>, Vec<Word>), ConvertError> {
    let (start, end) = match g.marked(c) {
        [a, b] => (*a, *b),
        _ => return Err(ConvertError::NotLinear(c)),
    };
    walk_simple(g, c, start, None)
        .filter(|(verts, _)| verts.last() == Some(&end))
        .ok_or(ConvertError::NotLinear(c))
}

/// Follows a component whose vertices have degree at most two from `start`.
/// For cycles the first step `(edge, forward)` is given and the start is not
/// repeated at the end.
fn walk_simple(
    g: &WGraph,
    c: usize,
    start: Gen,
    first: Option<(usize, bool)>,
) -> Option<(Vec<Gen>, Vec<Word>)> {
    let verts_c = g.component_vertices(c);
    if verts_c.iter().any(|v| g.degree(*v) > 2) {
        return None;
    }
    let nedges = (0..g.edges().len()).filter(|i| g.edge_comp(*i) == Ok(c)).count();
    let mut used = BTreeSet::new();
    let mut verts = vec![start];
    let mut labels = Vec::new();
    let mut v = start;
    let mut step = first;
    loop {
        let (i, forward) = match step.take() {
            Some(s) => s,
            None => match g.incident(v).into_iter().find(|(i, _)| !used.contains(i)) {
                Some((i, end)) => (i, end == End::Src),
                None => break,
            },
        };
        used.insert(i);
        let e = &g.edges()[i];
        let (label, next) = if forward {
            (e.label.clone(), e.dst)
        } else {
            (e.label.inverse(), e.src)
        };
        labels.push(label);
        v = next;
        if !(first.is_some() && v == start) {
            verts.push(v);
        }
    }
    (used.len() == nedges && verts.len() == verts_c.len()).then_some((verts, labels))
}

/// Reads a diagram off walks: each vertex contributes its tails, then the
/// edge after it contributes one head per letter.
fn read_walks(walks: &[(Vec<Gen>, Vec<Word>)], kind: Kind) -> Result<GaussDiagram, ConvertError> {
    let mut signs = BTreeMap::new();
    let mut tails: BTreeMap<Gen, Vec<ArrowId>> = BTreeMap::new();
    let mut heads: Vec<Vec<Vec<ArrowId>>> = Vec::new();
    for (_, labels) in walks {
        let mut per = Vec::new();
        for w in labels {
            let mut hs = Vec::new();
            for l in w.letters() {
                let a = ArrowId(signs.len() as u32);
                signs.insert(a, l.sign);
                tails.entry(l.gen).or_default().push(a);
                hs.push(a);
            }
            per.push(hs);
        }
        heads.push(per);
    }
    // An inner vertex whose occurrences all cancelled still needs a tail
    // run: it gets two opposite arrows with adjacent heads, which leave the
    // reduced labels unchanged.
    for ((verts, _), hs) in walks.iter().zip(heads.iter_mut()) {
        let inner = match kind {
            Kind::StringLink => 1..verts.len().saturating_sub(1),
            Kind::Link if verts.len() > 1 => 0..verts.len(),
            Kind::Link => 0..0,
        };
        for k in inner {
            if tails.contains_key(&verts[k]) {
                continue;
            }
            let pair = [Sign::Pos, Sign::Neg].map(|s| {
                let a = ArrowId(signs.len() as u32);
                signs.insert(a, s);
                a
            });
            tails.insert(verts[k], pair.to_vec());
            hs[k].splice(0..0, pair);
        }
    }
    let mut comps = Vec::new();
    for ((verts, _), hs) in walks.iter().zip(&heads) {
        let mut seq = Vec::new();
        for (k, v) in verts.iter().enumerate() {
            seq.extend(tails.get(v).into_iter().flatten().map(|a| Endpoint::tail(*a)));
            if let Some(h) = hs.get(k) {
                seq.extend(h.iter().map(|a| Endpoint::head(*a)));
            }
        }
        comps.push(seq);
    }
    Ok(GaussDiagram::new(kind, comps, signs)?)
}

/// A string-link diagram whose ψ image is the linearization of `g`. Marked
/// vertices are pulled off first so that they are univalent.
pub fn xi_stringlink(g: &WGraph) -> Result<GaussDiagram, ConvertError> {
    check_type(g, (2, 0))?;
    let h = pull_marked(g)?;
    let ord = PlanarOrdering::default_for(&h)?;
    let lin = linearize(&h, &ord)?;
    xi_linear(&lin)
}

/// Reads a linear graph directly, without flattening.
pub fn xi_linear(g: &WGraph) -> Result<GaussDiagram, ConvertError> {
    check_type(g, (2, 0))?;
    let walks = (0..g.num_components())
        .map(|c| linear_path(g, c))
        .collect::<Result<Vec<_>, _>>()?;
    read_walks(&walks, Kind::StringLink)
}

/// A link diagram read off a cyclic graph. `orientations[c]` chooses the
/// direction of component `c`: `true` runs along its lowest-numbered edge.
pub fn xi_link(g: &WGraph, orientations: &[bool]) -> Result<GaussDiagram, ConvertError> {
    check_type(g, (0, 1))?;
    if orientations.len() != g.num_components() {
        return Err(ConvertError::Orientations {
            want: g.num_components(),
            got: orientations.len(),
        });
    }
    let mut walks = Vec::new();
    for (c, &fwd) in orientations.iter().enumerate() {
        let i = (0..g.edges().len())
            .find(|i| g.edge_comp(*i) == Ok(c))
            .ok_or(ConvertError::NotCyclic(c))?;
        let e = &g.edges()[i];
        let start = if fwd { e.src } else { e.dst };
        let walk = walk_simple(g, c, start, Some((i, fwd))).ok_or(ConvertError::NotCyclic(c))?;
        walks.push(walk);
    }
    read_walks(&walks, Kind::Link)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::tests::diagram;
    use crate::gauss::GaussMove;
    use crate::wgraph::is_isomorphic;

    fn w(ls: &[(u32, i64)]) -> Word {
        crate::wgraph::tests::w(ls)
    }

    #[test]
    fn cancelled_vertex_survives_round_trip() {
        // The heads of 0 and 1 cancel, so the vertex of `t0 t1` occurs in no
        // label of the image.
        let d = diagram(Kind::StringLink, &["t0 t1 h2", "t2 h0 h1"], &[(0, 1), (1, -1), (2, 1)]);
        let g = psi_stringlink(&d).unwrap();
        assert_eq!(g.num_vertices(), 6);
        let back = psi_stringlink(&xi_stringlink(&g).unwrap()).unwrap();
        assert!(is_isomorphic(&back, &g));
        let l = diagram(Kind::Link, &["t0 t1 h2 t3 h3", "t2 h0 h1"], &[(0, 1), (1, -1), (2, 1), (3, 1)]);
        let g = psi_link(&l).unwrap();
        let back = psi_link(&xi_link(&g, &[true, true]).unwrap()).unwrap();
        assert!(is_isomorphic(&back, &g));
    }

    #[test]
    fn arrowless_string_link() {
        let d = diagram(Kind::StringLink, &["", ""], &[]);
        let g = psi_stringlink(&d).unwrap();
        assert_eq!(g.graph_type(), vec![(2, 0), (2, 0)]);
        assert_eq!(
            g.edges(),
            &[
                Edge::new(Gen(0), Gen(1), Word::identity()),
                Edge::new(Gen(2), Gen(3), Word::identity())
            ]
        );
        assert_eq!(xi_stringlink(&g).unwrap(), d);
    }

    #[test]
    fn single_arrow() {
        let d = diagram(Kind::StringLink, &["t0", "h0"], &[(0, 1)]);
        let g = psi_stringlink(&d).unwrap();
        assert_eq!(
            g.edges(),
            &[
                Edge::new(Gen(0), Gen(1), Word::identity()),
                Edge::new(Gen(1), Gen(2), Word::identity()),
                Edge::new(Gen(3), Gen(4), w(&[(1, 1)])),
            ]
        );
        assert_eq!(g.marked(1), &[Gen(3), Gen(4)]);
        assert!(xi_stringlink(&g).unwrap().same_diagram(&d));
    }

    #[test]
    fn adjacent_tails_merge() {
        let d = diagram(Kind::StringLink, &["t0 t1 h1", "h0"], &[(0, 1), (1, -1)]);
        let g = psi_stringlink(&d).unwrap();
        assert_eq!(g.num_vertices(), 5);
        let back = psi_stringlink(&xi_stringlink(&g).unwrap()).unwrap();
        assert!(is_isomorphic(&back, &g));
    }

    #[test]
    fn link_images() {
        let d = diagram(Kind::Link, &["t0 h0"], &[(0, -1)]);
        let g = psi_link(&d).unwrap();
        assert_eq!(g.edges(), &[Edge::new(Gen(0), Gen(0), w(&[(0, -1)]))]);
        let unknot = diagram(Kind::Link, &[""], &[]);
        let u = psi_link(&unknot).unwrap();
        assert_eq!(u.edges(), &[Edge::new(Gen(0), Gen(0), Word::identity())]);
        assert_eq!(degenerate_components(&unknot), vec![0]);
        assert_eq!(xi_link(&u, &[true]).unwrap(), unknot);
        assert!(xi_link(&g, &[true]).unwrap().same_diagram(&d));
    }

    #[test]
    fn hanging_edge_is_inserted() {
        // I -u-> a -v-> F with an empty edge a -> b.
        let g = WGraph::from_parts(
            &[(Gen(0), true), (Gen(1), false), (Gen(2), true), (Gen(3), false), (Gen(4), true), (Gen(5), true)],
            vec![
                Edge::new(Gen(0), Gen(1), w(&[(4, 1)])),
                Edge::new(Gen(1), Gen(2), w(&[(5, -1)])),
                Edge::new(Gen(1), Gen(3), Word::identity()),
                Edge::new(Gen(4), Gen(5), Word::identity()),
            ],
        )
        .unwrap();
        let ord = PlanarOrdering::default_for(&g).unwrap();
        assert_eq!(ord.order[&Gen(1)], vec![2, 0, 1]);
        let lin = linearize(&g, &ord).unwrap();
        assert_eq!(
            lin.edges(),
            &[
                Edge::new(Gen(0), Gen(3), w(&[(4, 1)])),
                Edge::new(Gen(3), Gen(1), Word::identity()),
                Edge::new(Gen(1), Gen(2), w(&[(5, -1)])),
                Edge::new(Gen(4), Gen(5), Word::identity()),
            ]
        );
    }

    #[test]
    fn linear_input_is_kept() {
        let d = diagram(Kind::StringLink, &["t0 h1 t2", "h0 t1 h2"], &[(0, 1), (1, -1), (2, 1)]);
        let g = psi_stringlink(&d).unwrap();
        let lin = linearize(&g, &PlanarOrdering::default_for(&g).unwrap()).unwrap();
        assert!(is_isomorphic(&lin, &g));
    }

    #[test]
    fn bad_ordering_rejected() {
        let d = diagram(Kind::StringLink, &["t0", "h0"], &[(0, 1)]);
        let g = psi_stringlink(&d).unwrap();
        let mut ord = PlanarOrdering::default_for(&g).unwrap();
        ord.order.get_mut(&Gen(1)).unwrap().reverse();
        assert_eq!(linearize(&g, &ord), Err(ConvertError::Ordering(Gen(1))));
        let h = psi_link(&diagram(Kind::Link, &["t0 h0"], &[(0, 1)])).unwrap();
        assert!(matches!(xi_stringlink(&h), Err(ConvertError::WrongType { .. })));
    }

    #[test]
    fn reversed_orientation_is_global_reversal() {
        let d = diagram(Kind::Link, &["t0 h1 h2", "t1 h0 t2"], &[(0, 1), (1, -1), (2, 1)]);
        let g = psi_link(&d).unwrap();
        let fwd = xi_link(&g, &[true, true]).unwrap();
        let rev = xi_link(&g, &[true, false]).unwrap();
        let gr = fwd.apply(&GaussMove::Gr { comp: 1 }).unwrap();
        assert!(is_isomorphic(&psi_link(&rev).unwrap(), &psi_link(&gr).unwrap()));
        assert!(is_isomorphic(&psi_link(&fwd).unwrap(), &g));
    }
}
