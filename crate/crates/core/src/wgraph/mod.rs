//! w-graphs: oriented graphs whose edges carry free-group words in the
//! vertices, with ordered components and ordered marked vertices.

mod iso;
mod macros;
mod moves;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::freegroup::{Gen, Letter, Word};

pub use iso::is_isomorphic;
pub use macros::expand_macro;
pub use moves::{End, Move};
pub use reduce::{is_reduced_form, to_reduced_form};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vertex {
    pub marked: bool,
    pub comp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: Gen,
    pub dst: Gen,
    pub label: Word,
}

impl Edge {
    pub fn new(src: Gen, dst: Gen, label: Word) -> Edge {
        Edge { src, dst, label }
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// Per-component `(marked count, first Betti number)`.
pub type GraphType = Vec<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WGraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Gen),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(Gen),
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("edge {edge} label uses {gen}, which is not a vertex")]
    LabelNotVertex { edge: usize, gen: Gen },
    #[error("component bookkeeping is inconsistent: {0}")]
    Components(String),
    #[error("edge {0} is not empty")]
    NonEmptyLabel(usize),
    #[error("edge {0} is a loop")]
    Loop(usize),
    #[error("vertex {0} is marked")]
    Marked(Gen),
    #[error("edge {edge} at vertex {vertex} is not oriented outwards")]
    NotOutward { vertex: Gen, edge: usize },
    #[error("vertex {vertex} occurs in the label of edge {edge}")]
    OccursInLabel { vertex: Gen, edge: usize },
    #[error("letter {0} may not use the central vertex")]
    CentralLetter(Gen),
    #[error("edge {edge} does not carry the label required by witness {witness}")]
    LabelMismatch { edge: usize, witness: usize },
    #[error("edge {0} cannot be its own witness")]
    SelfWitness(usize),
    #[error("vertex {0} is not bivalent with one incoming and one outgoing edge")]
    NotBivalent(Gen),
    #[error("letter {gen} is not in the component of edge {edge}")]
    ForeignLetter { edge: usize, gen: Gen },
    #[error("edge {0} is not a single same-component letter")]
    NotSelfLetter(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("move is primitive and has no expansion")]
    PrimitiveMove,
}

/// A w-graph. Edge indices are positions in the edge list; equality ignores
/// the fresh-id counter.
#[derive(Debug, Clone)]
pub struct WGraph {
    verts: BTreeMap<Gen, Vertex>,
    edges: Vec<Edge>,
    marked: Vec<Vec<Gen>>,
    next: u32,
}

impl PartialEq for WGraph {
    fn eq(&self, other: &WGraph) -> bool {
        self.verts == other.verts && self.edges == other.edges && self.marked == other.marked
    }
}

impl Eq for WGraph {}

impl WGraph {
    /// Builds a graph from vertices in declaration order. Components are the
    /// connected components, ordered by their first declared vertex; marked
    /// vertices keep declaration order within their component.
    pub fn from_parts(vertices: &[(Gen, bool)], edges: Vec<Edge>) -> Result<WGraph, WGraphError> {
        let mut index: BTreeMap<Gen, usize> = BTreeMap::new();
        for (i, (g, _)) in vertices.iter().enumerate() {
            if index.insert(*g, i).is_some() {
                return Err(WGraphError::DuplicateVertex(*g));
            }
        }
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (ei, e) in edges.iter().enumerate() {
            let s = *index.get(&e.src).ok_or(WGraphError::UnknownVertex(e.src))?;
            let d = *index.get(&e.dst).ok_or(WGraphError::UnknownVertex(e.dst))?;
            for g in e.label.gens() {
                if !index.contains_key(&g) {
                    return Err(WGraphError::LabelNotVertex { edge: ei, gen: g });
                }
            }
            let (rs, rd) = (find(&mut parent, s), find(&mut parent, d));
            if rs != rd {
                parent[rs.max(rd)] = rs.min(rd);
            }
        }
        let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut verts = BTreeMap::new();
        let mut marked: Vec<Vec<Gen>> = Vec::new();
        for (i, (g, m)) in vertices.iter().enumerate() {
            let r = find(&mut parent, i);
            let next_comp = comp_of_root.len();
            let c = *comp_of_root.entry(r).or_insert(next_comp);
            if c == marked.len() {
                marked.push(Vec::new());
            }
            if *m {
                marked[c].push(*g);
            }
            verts.insert(*g, Vertex { marked: *m, comp: c });
        }
        let next = verts.keys().next_back().map_or(0, |g| g.0 + 1);
        let g = WGraph {
            verts,
            edges,
            marked,
            next,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (Gen, Vertex)> + '_ {
        self.verts.iter().map(|(g, v)| (*g, *v))
    }

    pub fn vertex(&self, g: Gen) -> Option<Vertex> {
        self.verts.get(&g).copied()
    }

    pub fn has_vertex(&self, g: Gen) -> bool {
        self.verts.contains_key(&g)
    }

    pub fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Result<&Edge, WGraphError> {
        self.edges.get(i).ok_or(WGraphError::UnknownEdge(i))
    }

    pub fn num_components(&self) -> usize {
        self.marked.len()
    }

    /// Marked vertices of component `c`, in order.
    pub fn marked(&self, c: usize) -> &[Gen] {
        &self.marked[c]
    }

    pub fn comp_of(&self, g: Gen) -> Result<usize, WGraphError> {
        self.vertex(g).map(|v| v.comp).ok_or(WGraphError::UnknownVertex(g))
    }

    pub fn comp_map(&self) -> BTreeMap<Gen, usize> {
        self.verts.iter().map(|(g, v)| (*g, v.comp)).collect()
    }

    pub fn component_vertices(&self, c: usize) -> Vec<Gen> {
        self.verts
            .iter()
            .filter(|(_, v)| v.comp == c)
            .map(|(g, _)| *g)
            .collect()
    }

    /// Component of an edge, namely that of its source.
    pub fn edge_comp(&self, i: usize) -> Result<usize, WGraphError> {
        self.comp_of(self.edge(i)?.src)
    }

    pub fn is_marked(&self, g: Gen) -> bool {
        self.vertex(g).is_some_and(|v| v.marked)
    }

    /// Edge endpoints at `v`, loops listed once per end.
    pub fn incident(&self, v: Gen) -> Vec<(usize, End)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.src == v {
                out.push((i, End::Src));
            }
            if e.dst == v {
                out.push((i, End::Dst));
            }
        }
        out
    }

    pub fn degree(&self, v: Gen) -> usize {
        self.incident(v).len()
    }

    /// Whether `v` occurs in any label; returns the first such edge.
    pub fn occurs_in_labels(&self, v: Gen) -> Option<usize> {
        self.edges.iter().position(|e| e.label.contains(v))
    }

    pub fn graph_type(&self) -> GraphType {
        let mut counts = vec![(0usize, 0usize); self.num_components()];
        for v in self.verts.values() {
            counts[v.comp].1 += 1;
        }
        let mut edges = vec![0usize; self.num_components()];
        for e in &self.edges {
            edges[self.verts[&e.src].comp] += 1;
        }
        (0..self.num_components())
            .map(|c| (self.marked[c].len(), edges[c] + 1 - counts[c].1))
            .collect()
    }

    /// Total size of all labels.
    pub fn label_weight(&self) -> usize {
        self.edges.iter().map(|e| e.label.len()).sum()
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<(), WGraphError> {
        let ncomp = self.marked.len();
        let mut seen_marked = BTreeSet::new();
        for (c, ms) in self.marked.iter().enumerate() {
            for m in ms {
                let v = self.vertex(*m).ok_or(WGraphError::UnknownVertex(*m))?;
                if !v.marked || v.comp != c || !seen_marked.insert(*m) {
                    return Err(WGraphError::Components(format!(
                        "marked order lists {m} inconsistently"
                    )));
                }
            }
        }
        for (g, v) in &self.verts {
            if v.comp >= ncomp {
                return Err(WGraphError::Components(format!("{g} has no component")));
            }
            if v.marked && !seen_marked.contains(g) {
                return Err(WGraphError::Components(format!("{g} missing from marked order")));
            }
        }
        // Each stored component must be exactly one connected component.
        let mut adj: BTreeMap<Gen, Vec<Gen>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let s = self.vertex(e.src).ok_or(WGraphError::UnknownVertex(e.src))?;
            let d = self.vertex(e.dst).ok_or(WGraphError::UnknownVertex(e.dst))?;
            if s.comp != d.comp {
                return Err(WGraphError::Components(format!("edge {i} joins two components")));
            }
            for g in e.label.gens() {
                if !self.has_vertex(g) {
                    return Err(WGraphError::LabelNotVertex { edge: i, gen: g });
                }
            }
            adj.entry(e.src).or_default().push(e.dst);
            adj.entry(e.dst).or_default().push(e.src);
        }
        let mut reached = vec![false; ncomp];
        let mut visited = BTreeSet::new();
        for (g, v) in &self.verts {
            if visited.contains(g) {
                continue;
            }
            if reached[v.comp] {
                return Err(WGraphError::Components(format!(
                    "component {} is disconnected",
                    v.comp
                )));
            }
            reached[v.comp] = true;
            let mut stack = vec![*g];
            visited.insert(*g);
            while let Some(x) = stack.pop() {
                for y in adj.get(&x).into_iter().flatten() {
                    if visited.insert(*y) {
                        stack.push(*y);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(WGraphError::Components("empty component".into()));
        }
        Ok(())
    }

    /// Allocates a fresh unmarked vertex in component `comp`.
    fn fresh_vertex(&mut self, comp: usize) -> Gen {
        let g = Gen(self.next);
        self.next += 1;
        self.verts.insert(g, Vertex { marked: false, comp });
        g
    }

    /// The id the next fresh vertex will get.
    pub fn peek_fresh(&self) -> Gen {
        Gen(self.next)
    }

    /// Replaces `from` by `to` in endpoints and labels, and drops `from`.
    fn merge_vertex_into(&mut self, from: Gen, to: Gen) {
        for e in &mut self.edges {
            if e.src == from {
                e.src = to;
            }
            if e.dst == from {
                e.dst = to;
            }
            if e.label.contains(from) {
                e.label = e.label.rename(|g| if g == from { to } else { g });
            }
        }
        self.verts.remove(&from);
    }

    fn check_letter(&self, l: Letter) -> Result<(), WGraphError> {
        if self.has_vertex(l.gen) {
            Ok(())
        } else {
            Err(WGraphError::UnknownVertex(l.gen))
        }
    }

    fn check_word(&self, w: &Word) -> Result<(), WGraphError> {
        w.letters().iter().try_for_each(|l| self.check_letter(*l))
    }

    /// Drops marks and splits nothing else: the unmarked graph underlying a
    /// w-graph, with every component keeping its order.
    pub fn unmarked(&self) -> WGraph {
        let mut g = self.clone();
        for v in g.verts.values_mut() {
            v.marked = false;
        }
        for m in &mut g.marked {
            m.clear();
        }
        g
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::freegroup::Letter;

    pub(crate) fn w(ls: &[(u32, i64)]) -> Word {
        ls.iter()
            .map(|&(g, s)| Letter::new(Gen(g), crate::freegroup::Sign::from_i64(s).unwrap()))
            .collect()
    }

    #[test]
    fn types() {
        let g = WGraph::from_parts(
            &[(Gen(0), true), (Gen(1), true)],
            vec![Edge::new(Gen(0), Gen(1), Word::identity())],
        )
        .unwrap();
        assert_eq!(g.graph_type(), vec![(2, 0)]);
        let g = WGraph::from_parts(
            &[(Gen(0), false)],
            vec![Edge::new(Gen(0), Gen(0), w(&[(0, 1)]))],
        )
        .unwrap();
        assert_eq!(g.graph_type(), vec![(0, 1)]);
    }

    #[test]
    fn component_order_follows_declaration() {
        let g = WGraph::from_parts(
            &[(Gen(5), true), (Gen(1), true), (Gen(2), false), (Gen(6), true)],
            vec![
                Edge::new(Gen(5), Gen(6), Word::identity()),
                Edge::new(Gen(1), Gen(2), w(&[(5, 1)])),
            ],
        )
        .unwrap();
        assert_eq!(g.num_components(), 2);
        assert_eq!(g.marked(0), &[Gen(5), Gen(6)]);
        assert_eq!(g.marked(1), &[Gen(1)]);
        assert_eq!(g.comp_of(Gen(2)), Ok(1));
    }

    #[test]
    fn rejects_bad_labels() {
        let r = WGraph::from_parts(
            &[(Gen(0), false)],
            vec![Edge::new(Gen(0), Gen(0), w(&[(3, 1)]))],
        );
        assert!(matches!(r, Err(WGraphError::LabelNotVertex { .. })));
    }
}
