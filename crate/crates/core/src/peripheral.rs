//! Basings, path words, preferred longitudes, peripheral systems and the
//! normal form with one unmarked vertex per component.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::freegroup::{Gen, Word};
use crate::wgraph::{End, Move, WGraph, WGraphError};
use crate::wirtinger::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeripheralError {
    #[error("step {0} of the path does not start where the previous one ended")]
    NotConsecutive(usize),
    #[error("basing does not fit component {}", .0 + 1)]
    BadBasing(usize),
    #[error("component {} does not exist", .0 + 1)]
    UnknownComponent(usize),
    #[error("longitude {} of component {} does not exist", index + 1, comp + 1)]
    UnknownLongitude { comp: usize, index: usize },
    #[error("loop {0} cannot be precomposed by itself")]
    SelfPrecompose(usize),
    #[error("{0} is not a permutation of the loops")]
    BadPermutation(String),
    #[error(transparent)]
    Graph(#[from] WGraphError),
}

/// Edges with a direction flag: `true` runs from source to target.
pub type Path = Vec<(usize, bool)>;

/// Where `path` ends when started at `start`.
pub fn path_end(g: &WGraph, start: Gen, path: &[(usize, bool)]) -> Result<Gen, PeripheralError> {
    let mut v = start;
    for (k, &(i, fwd)) in path.iter().enumerate() {
        let e = g.edge(i)?;
        let (from, to) = if fwd { (e.src, e.dst) } else { (e.dst, e.src) };
        if from != v {
            return Err(PeripheralError::NotConsecutive(k));
        }
        v = to;
    }
    Ok(v)
}

/// The signed concatenation of the labels along `path`.
pub fn path_word(g: &WGraph, start: Gen, path: &[(usize, bool)]) -> Result<Word, PeripheralError> {
    path_end(g, start, path)?;
    let mut w = Word::identity();
    for &(i, fwd) in path {
        let l = &g.edges()[i].label;
        w = if fwd { w.mul(l) } else { w.mul(&l.inverse()) };
    }
    Ok(w)
}

fn reversed(path: &[(usize, bool)]) -> Path {
    path.iter().rev().map(|&(i, f)| (i, !f)).collect()
}

/// Per component: a meridian vertex, loops based there generating the cycle
/// space, and arcs to the marked vertices in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basing {
    pub meridians: Vec<Gen>,
    pub loops: Vec<Vec<Path>>,
    pub arcs: Vec<Vec<Path>>,
}

/// Tree paths from `root` along a depth-first spanning tree that explores
/// incident edges by id, and the edges left out of the tree.
pub fn spanning_tree(g: &WGraph, root: Gen) -> (BTreeMap<Gen, Path>, Vec<usize>) {
    let mut paths = BTreeMap::from([(root, Vec::new())]);
    let mut tree = BTreeSet::new();
    let mut stack = vec![root];
    let mut comp_edges = BTreeSet::new();
    while let Some(&v) = stack.last() {
        let next = g.incident(v).into_iter().find_map(|(i, end)| {
            comp_edges.insert(i);
            let e = &g.edges()[i];
            let (u, fwd) = match end {
                End::Src => (e.dst, true),
                End::Dst => (e.src, false),
            };
            (!paths.contains_key(&u)).then_some((i, u, fwd))
        });
        match next {
            Some((i, u, fwd)) => {
                let mut p = paths[&v].clone();
                p.push((i, fwd));
                paths.insert(u, p);
                tree.insert(i);
                stack.push(u);
            }
            None => {
                stack.pop();
            }
        }
    }
    let cotree = comp_edges.into_iter().filter(|i| !tree.contains(i)).collect();
    (paths, cotree)
}

impl Basing {
    /// The first marked vertex of each component (the least vertex when
    /// there is none), tree arcs and fundamental cycles ordered by edge id.
    pub fn canonical(g: &WGraph) -> Basing {
        let mut b = Basing {
            meridians: Vec::new(),
            loops: Vec::new(),
            arcs: Vec::new(),
        };
        for c in 0..g.num_components() {
            let mu = g
                .marked(c)
                .first()
                .copied()
                .unwrap_or_else(|| g.component_vertices(c)[0]);
            let (paths, cotree) = spanning_tree(g, mu);
            let loops = cotree
                .into_iter()
                .map(|i| {
                    let e = &g.edges()[i];
                    let mut p = paths[&e.src].clone();
                    p.push((i, true));
                    p.extend(reversed(&paths[&e.dst]));
                    p
                })
                .collect();
            b.meridians.push(mu);
            b.loops.push(loops);
            b.arcs.push(g.marked(c).iter().map(|m| paths[m].clone()).collect());
        }
        b
    }

    /// Checks loop and arc counts and endpoints against `g`.
    pub fn validate(&self, g: &WGraph) -> Result<(), PeripheralError> {
        let t = g.graph_type();
        if self.meridians.len() != t.len() || self.loops.len() != t.len() || self.arcs.len() != t.len() {
            return Err(PeripheralError::BadBasing(0));
        }
        for (c, &(m, b)) in t.iter().enumerate() {
            let mu = self.meridians[c];
            let bad = || PeripheralError::BadBasing(c);
            if g.comp_of(mu).ok() != Some(c) || self.loops[c].len() != b || self.arcs[c].len() != m {
                return Err(bad());
            }
            for l in &self.loops[c] {
                if path_end(g, mu, l).map_err(|_| bad())? != mu {
                    return Err(bad());
                }
            }
            for (a, target) in self.arcs[c].iter().zip(g.marked(c)) {
                if path_end(g, mu, a).map_err(|_| bad())? != *target {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }
}

pub fn canonical_basing(g: &WGraph) -> Basing {
    Basing::canonical(g)
}

/// `μ^{-|w|_i} · w`, where `|w|_i` counts letters of component `i`.
pub fn preferred(w: &Word, mu: Gen, comp_of: &BTreeMap<Gen, usize>, i: usize) -> Word {
    let k = w
        .letters()
        .iter()
        .filter(|l| comp_of.get(&l.gen) == Some(&i))
        .map(|l| l.sign.as_i64())
        .sum::<i64>();
    Word::gen(mu).pow(-k).mul(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralSystem {
    pub presentation: Presentation,
    pub meridians: Vec<Word>,
    pub loops: Vec<Vec<Word>>,
    pub arcs: Vec<Vec<Word>>,
}

/// Path words of the basing, normalized to preferred longitudes.
pub fn preferred_longitudes(g: &WGraph, basing: &Basing) -> Result<PeripheralSystem, PeripheralError> {
    basing.validate(g)?;
    let comp_of = g.comp_map();
    let mut loops = Vec::new();
    let mut arcs = Vec::new();
    for (c, &mu) in basing.meridians.iter().enumerate() {
        let norm = |p: &Path| path_word(g, mu, p).map(|w| preferred(&w, mu, &comp_of, c));
        loops.push(basing.loops[c].iter().map(norm).collect::<Result<Vec<_>, _>>()?);
        arcs.push(basing.arcs[c].iter().map(norm).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(PeripheralSystem {
        presentation: Presentation::from_wgraph(g),
        meridians: basing.meridians.iter().map(|m| Word::gen(*m)).collect(),
        loops,
        arcs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Longitude {
    Loop(usize),
    Arc(usize),
}

/// The generating operations of peripheral-system equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeripheralOp {
    /// `μ ↦ μ^w`, loop `j` moves to slot `perm[j]` and is conjugated by `w`,
    /// arcs get the prefix `w̄`.
    Conjugate { comp: usize, w: Word, perm: Vec<usize> },
    InvertLoop { comp: usize, index: usize },
    /// Prefixes `target` with loop `by` (or its inverse).
    Precompose {
        comp: usize,
        target: Longitude,
        by: usize,
        inverse: bool,
    },
}

impl PeripheralSystem {
    pub fn apply(&self, op: &PeripheralOp) -> Result<PeripheralSystem, PeripheralError> {
        let mut p = self.clone();
        let check = |c: usize| {
            if c < self.meridians.len() {
                Ok(())
            } else {
                Err(PeripheralError::UnknownComponent(c))
            }
        };
        let loop_at = |c: usize, j: usize| {
            self.loops[c].get(j).cloned().ok_or(PeripheralError::UnknownLongitude { comp: c, index: j })
        };
        match op {
            PeripheralOp::Conjugate { comp, w, perm } => {
                let c = *comp;
                check(c)?;
                let n = self.loops[c].len();
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return Err(PeripheralError::BadPermutation(format!("{perm:?}")));
                }
                p.meridians[c] = self.meridians[c].conjugate(w);
                for (j, l) in self.loops[c].iter().enumerate() {
                    p.loops[c][perm[j]] = l.conjugate(w);
                }
                for a in &mut p.arcs[c] {
                    *a = w.inverse().mul(a);
                }
            }
            PeripheralOp::InvertLoop { comp, index } => {
                check(*comp)?;
                p.loops[*comp][*index] = loop_at(*comp, *index)?.inverse();
            }
            PeripheralOp::Precompose {
                comp,
                target,
                by,
                inverse,
            } => {
                let c = *comp;
                check(c)?;
                let mut l = loop_at(c, *by)?;
                if *inverse {
                    l = l.inverse();
                }
                match *target {
                    Longitude::Loop(j) => {
                        if j == *by {
                            return Err(PeripheralError::SelfPrecompose(j));
                        }
                        p.loops[c][j] = l.mul(&loop_at(c, j)?);
                    }
                    Longitude::Arc(j) => {
                        let a = self.arcs[c]
                            .get(j)
                            .ok_or(PeripheralError::UnknownLongitude { comp: c, index: j })?;
                        p.arcs[c][j] = l.mul(a);
                    }
                }
            }
        }
        Ok(p)
    }

    /// Per component a `meridian` line, then `loop:` and `arc:` lines.
    pub fn render(&self, name: &dyn Fn(Gen) -> String) -> String {
        let word = |w: &Word| crate::format::render_word(w, name);
        let mut out = String::new();
        for c in 0..self.meridians.len() {
            out.push_str(&format!("component {}\n", c + 1));
            out.push_str(&format!("meridian {}\n", word(&self.meridians[c])));
            for l in &self.loops[c] {
                out.push_str(&format!("loop: {}\n", word(l)));
            }
            for a in &self.arcs[c] {
                out.push_str(&format!("arc: {}\n", word(a)));
            }
        }
        out
    }
}

/// A graph with one unmarked vertex per component, carrying loops and one
/// spoke to each marked vertex; the spoke to the first marked vertex is
/// empty. Labels only use the central vertices of other components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub graph: WGraph,
    pub centers: Vec<Gen>,
    /// Loop labels at each center, by edge index.
    pub loops: Vec<Vec<Word>>,
    /// Spoke labels, in marked order.
    pub arcs: Vec<Vec<Word>>,
    pub trace: Vec<Move>,
}

impl NormalForm {
    /// The words with center `k` renamed to the generator `k`, so that they
    /// live in the free group on the meridians.
    pub fn in_meridians(&self) -> (Vec<Vec<Word>>, Vec<Vec<Word>>) {
        let index: BTreeMap<Gen, Gen> = self
            .centers
            .iter()
            .enumerate()
            .map(|(k, c)| (*c, Gen(k as u32)))
            .collect();
        let ren = |ws: &Vec<Vec<Word>>| {
            ws.iter()
                .map(|v| v.iter().map(|w| w.rename(|g| index[&g])).collect())
                .collect()
        };
        (ren(&self.loops), ren(&self.arcs))
    }
}

struct Runner {
    g: WGraph,
    trace: Vec<Move>,
}

impl Runner {
    fn step(&mut self, m: Move) -> Result<(), WGraphError> {
        self.g.apply_in_place(&m)?;
        self.trace.push(m);
        Ok(())
    }

    fn comp_edges(&self, c: usize) -> Vec<usize> {
        (0..self.g.edges().len())
            .filter(|i| self.g.edge_comp(*i) == Ok(c))
            .collect()
    }

    fn unmarked(&self, c: usize) -> Vec<Gen> {
        self.g
            .component_vertices(c)
            .into_iter()
            .filter(|v| !self.g.is_marked(*v))
            .collect()
    }

    /// Makes every marked vertex a leaf that occurs in no label.
    fn pull_marked(&mut self) -> Result<(), WGraphError> {
        for c in 0..self.g.num_components() {
            for m in self.g.marked(c).to_vec() {
                if self.g.degree(m) == 1 && self.g.occurs_in_labels(m).is_none() {
                    continue;
                }
                let ends = self.g.incident(m);
                let occurrences = self
                    .g
                    .edges()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, e)| {
                        e.label
                            .letters()
                            .iter()
                            .enumerate()
                            .filter(|(_, l)| l.gen == m)
                            .map(move |(p, _)| (i, p))
                    })
                    .collect();
                let at = self.g.edges().len();
                self.step(Move::Expand {
                    vertex: m,
                    ends,
                    occurrences,
                    at,
                })?;
            }
            if self.unmarked(c).is_empty() {
                let first = self.comp_edges(c)[0];
                self.step(Move::Split { edge: first, cut: 0 })?;
            }
        }
        Ok(())
    }

    /// Removes letters of component `c` from its own labels by isolating each
    /// on an edge of its own and clearing it.
    fn strip_own(&mut self, c: usize) -> Result<(), WGraphError> {
        let comp_of = self.g.comp_map();
        loop {
            let hit = self.comp_edges(c).into_iter().find_map(|i| {
                self.g.edges()[i]
                    .label
                    .letters()
                    .iter()
                    .position(|l| comp_of.get(&l.gen) == Some(&c))
                    .map(|k| (i, k))
            });
            let Some((i, k)) = hit else { return Ok(()) };
            let mut j = i;
            let mut n1 = None;
            if k > 0 {
                n1 = Some(self.g.peek_fresh());
                self.step(Move::Split { edge: i, cut: k })?;
                j = i + 1;
            }
            let mut n2 = None;
            if self.g.edges()[j].label.len() > 1 {
                n2 = Some(self.g.peek_fresh());
                self.step(Move::Split { edge: j, cut: 1 })?;
            }
            self.step(Move::SelfVirtualize { edge: j, letter: None })?;
            for v in [n2, n1].into_iter().flatten() {
                self.step(Move::Merge { vertex: v })?;
            }
        }
    }

    /// Stripping after every contraction keeps the substituted conjugators
    /// from compounding across components.
    fn strip_all(&mut self) -> Result<(), WGraphError> {
        for c in 0..self.g.num_components() {
            self.strip_own(c)?;
        }
        Ok(())
    }

    /// Contracts unmarked vertices until each component keeps only its
    /// center, emptying each contracted edge by generalized stabilizations
    /// first. The cheapest edge over all components goes next, the cost of
    /// emptying at `x` being its label length times the occurrences of `x`.
    /// Loops only ever sit at centers: others are split open up front, and
    /// two non-centers are joined only along a single edge.
    fn sweep(&mut self, centers: &[Gen]) -> Result<(), WGraphError> {
        let mut i = 0;
        while i < self.g.edges().len() {
            let e = &self.g.edges()[i];
            if e.is_loop() && !centers.contains(&e.src) {
                self.step(Move::Split { edge: i, cut: 0 })?;
            }
            i += 1;
        }
        while let Some((i, x, keep_x)) = self.cheapest_edge(centers) {
            for (k, end) in self.g.incident(x) {
                if end == End::Dst {
                    self.step(Move::ReverseEdge { edge: k })?;
                }
            }
            while let Some(&l) = self.g.edges()[i].label.letters().first() {
                self.step(Move::GenStabilize {
                    vertex: x,
                    letter: l.inverse(),
                })?;
                self.strip_all()?;
            }
            if !keep_x {
                self.step(Move::ReverseEdge { edge: i })?;
            }
            self.step(Move::Contract { edge: i })?;
            self.strip_all()?;
        }
        Ok(())
    }

    /// Edge to contract next, the vertex to stabilize at, and whether that
    /// vertex survives the contraction.
    fn cheapest_edge(&self, centers: &[Gen]) -> Option<(usize, Gen, bool)> {
        let mut occ: BTreeMap<Gen, usize> = BTreeMap::new();
        let mut pairs: BTreeMap<(Gen, Gen), usize> = BTreeMap::new();
        let mut loops = BTreeSet::new();
        for e in self.g.edges() {
            for l in e.label.letters() {
                *occ.entry(l.gen).or_default() += 1;
            }
            if e.is_loop() {
                loops.insert(e.src);
            }
            *pairs.entry((e.src.min(e.dst), e.src.max(e.dst))).or_default() += 1;
        }
        let cost = |x: Gen, len: usize| (occ.get(&x).copied().unwrap_or(0) + 1) * len;
        let mut best: Option<(usize, usize, Gen, bool)> = None;
        for (i, e) in self.g.edges().iter().enumerate() {
            let (a, b) = (e.src, e.dst);
            if a == b || self.g.is_marked(a) || self.g.is_marked(b) {
                continue;
            }
            let len = e.label.len();
            let pick = match (centers.contains(&a), centers.contains(&b)) {
                (true, false) => (cost(b, len), b, false),
                (false, true) => (cost(a, len), a, false),
                (false, false) if pairs[&(a.min(b), a.max(b))] == 1 => {
                    match [a, b].into_iter().filter(|x| !loops.contains(x)).min_by_key(|x| cost(*x, len)) {
                        Some(x) => (cost(x, len), x, true),
                        None => continue,
                    }
                }
                _ => continue,
            };
            if best.is_none_or(|(c, ..)| pick.0 < c) {
                best = Some((pick.0, i, pick.1, pick.2));
            }
        }
        best.map(|(_, i, x, keep)| (i, x, keep))
    }

    /// Points every spoke away from the center.
    fn orient_spokes(&mut self, center: Gen) -> Result<(), WGraphError> {
        for (k, end) in self.g.incident(center) {
            if end == End::Dst && self.g.edges()[k].src != center {
                self.step(Move::ReverseEdge { edge: k })?;
            }
        }
        Ok(())
    }

    fn spoke(&self, center: Gen, m: Gen) -> usize {
        self.g
            .edges()
            .iter()
            .position(|e| e.src == center && e.dst == m)
            .expect("spoke to a marked vertex")
    }

    /// The unmarked neighbor of the marked leaf `m` across an empty edge,
    /// expanding `m` first when its edge carries a label. Centers chosen
    /// this way keep an empty first spoke, since the sweep never
    /// stabilizes at a center.
    fn empty_leaf_edge(&mut self, m: Gen) -> Result<Gen, WGraphError> {
        let ends = self.g.incident(m);
        if let [(i, _)] = ends[..] {
            let e = &self.g.edges()[i];
            let n = if e.src == m { e.dst } else { e.src };
            if e.label.is_identity() && !self.g.is_marked(n) {
                return Ok(n);
            }
        }
        let n = self.g.peek_fresh();
        let at = self.g.edges().len();
        self.step(Move::Expand {
            vertex: m,
            ends,
            occurrences: Vec::new(),
            at,
        })?;
        Ok(n)
    }

    /// Empties the spoke to the first marked vertex by generalized
    /// stabilizations at the center; loops are split open meanwhile.
    fn clear_first_spoke(&mut self, c: usize, center: Gen) -> Result<(), WGraphError> {
        let Some(&m) = self.g.marked(c).first() else { return Ok(()) };
        if self.g.edges()[self.spoke(center, m)].label.is_identity() {
            return Ok(());
        }
        let mut opened = Vec::new();
        while let Some(i) = self
            .g
            .edges()
            .iter()
            .position(|e| e.src == center && e.dst == center)
        {
            opened.push(self.g.peek_fresh());
            self.step(Move::Split { edge: i, cut: 0 })?;
            self.step(Move::ReverseEdge { edge: i + 1 })?;
        }
        loop {
            let s = self.spoke(center, m);
            let Some(&l) = self.g.edges()[s].label.letters().first() else { break };
            self.step(Move::GenStabilize {
                vertex: center,
                letter: l.inverse(),
            })?;
        }
        for n in opened {
            let second = self
                .g
                .edges()
                .iter()
                .rposition(|e| e.src == center && e.dst == n)
                .expect("split loop");
            self.step(Move::ReverseEdge { edge: second })?;
            self.step(Move::Merge { vertex: n })?;
        }
        Ok(())
    }
}

/// Brings `g` to normal form by self-virtualization, generalized
/// stabilizations and contractions, recording the trace. The meridian of
/// `basing` becomes the center of its component when it is unmarked.
pub fn chen_milnor_normal_form(g: &WGraph, basing: &Basing) -> Result<NormalForm, PeripheralError> {
    basing.validate(g)?;
    let mut r = Runner {
        g: g.clone(),
        trace: Vec::new(),
    };
    r.pull_marked()?;
    let ncomp = r.g.num_components();
    let mut centers = Vec::with_capacity(ncomp);
    r.strip_all()?;
    for c in 0..ncomp {
        let mu = basing.meridians[c];
        let center = if r.g.has_vertex(mu) && !r.g.is_marked(mu) {
            mu
        } else if let Some(&m) = r.g.marked(c).first() {
            r.empty_leaf_edge(m)?
        } else {
            r.unmarked(c)[0]
        };
        centers.push(center);
    }
    r.sweep(&centers)?;
    for &center in &centers {
        r.orient_spokes(center)?;
    }
    for (c, &center) in centers.iter().enumerate() {
        r.strip_own(c)?;
        r.clear_first_spoke(c, center)?;
    }
    for c in 0..ncomp {
        r.strip_own(c)?;
    }
    let g = r.g;
    let loops = centers
        .iter()
        .map(|&z| {
            g.edges()
                .iter()
                .filter(|e| e.src == z && e.dst == z)
                .map(|e| e.label.clone())
                .collect()
        })
        .collect();
    let arcs = centers
        .iter()
        .enumerate()
        .map(|(c, &z)| {
            g.marked(c)
                .iter()
                .map(|m| {
                    let e = g.edges().iter().find(|e| e.src == z && e.dst == *m);
                    e.expect("spoke").label.clone()
                })
                .collect()
        })
        .collect();
    Ok(NormalForm {
        graph: g,
        centers,
        loops,
        arcs,
        trace: r.trace,
    })
}

/// Loop and arc representatives in the free group on the meridians
/// (generator `k` standing for the meridian of component `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedData {
    pub loops: Vec<Vec<Word>>,
    pub arcs: Vec<Vec<Word>>,
}

pub fn reduced_peripheral_data(g: &WGraph, basing: &Basing) -> Result<ReducedData, PeripheralError> {
    let nf = chen_milnor_normal_form(g, basing)?;
    let (loops, arcs) = nf.in_meridians();
    Ok(ReducedData { loops, arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgraph::tests::w;
    use crate::wgraph::Edge;

    fn graph(decl: &[(u32, bool)], edges: &[(u32, u32, &[(u32, i64)])]) -> WGraph {
        let decl: Vec<(Gen, bool)> = decl.iter().map(|(g, m)| (Gen(*g), *m)).collect();
        let es = edges
            .iter()
            .map(|(a, b, l)| Edge::new(Gen(*a), Gen(*b), w(l)))
            .collect();
        WGraph::from_parts(&decl, es).unwrap()
    }

    /// Two strands; the second passes under the first.
    fn cross() -> WGraph {
        graph(
            &[(0, true), (1, false), (2, true), (3, true), (4, true)],
            &[(0, 1, &[]), (1, 2, &[]), (3, 4, &[(1, 1)])],
        )
    }

    #[test]
    fn path_words() {
        let g = graph(&[(0, false), (1, false), (2, false)], &[(0, 1, &[(2, 1)]), (2, 1, &[(0, 1)])]);
        assert_eq!(path_word(&g, Gen(0), &[(0, true)]).unwrap(), w(&[(2, 1)]));
        assert_eq!(path_word(&g, Gen(0), &[(0, true), (0, false)]).unwrap(), Word::identity());
        assert_eq!(path_word(&g, Gen(0), &[(0, true), (1, false)]).unwrap(), w(&[(2, 1), (0, -1)]));
        assert_eq!(
            path_word(&g, Gen(0), &[(1, true)]),
            Err(PeripheralError::NotConsecutive(0))
        );
    }

    #[test]
    fn canonical_basings() {
        let g = cross();
        let b = Basing::canonical(&g);
        assert_eq!(b.meridians, vec![Gen(0), Gen(3)]);
        assert_eq!(b.arcs[0], vec![vec![], vec![(0, true), (1, true)]]);
        assert!(b.loops.iter().all(|l| l.is_empty()));
        b.validate(&g).unwrap();
        let loop1 = graph(&[(0, false)], &[(0, 0, &[(0, 1)])]);
        let b = Basing::canonical(&loop1);
        assert_eq!(b.loops[0], vec![vec![(0, true)]]);
    }

    #[test]
    fn preferred_correction() {
        let comp_of = BTreeMap::from([(Gen(0), 0), (Gen(1), 1)]);
        let w21 = w(&[(1, 1), (0, 1)]);
        assert_eq!(preferred(&w21, Gen(0), &comp_of, 0), w(&[(0, -1), (1, 1), (0, 1)]));
        assert_eq!(preferred(&w(&[(1, 1)]), Gen(0), &comp_of, 0), w(&[(1, 1)]));
        assert_eq!(preferred(&w(&[(0, 1), (0, 1), (0, 1)]), Gen(0), &comp_of, 0), Word::identity());
    }

    #[test]
    fn equivalence_operations() {
        let g = graph(&[(0, false), (1, false)], &[(0, 0, &[(1, 1)]), (0, 0, &[]), (1, 1, &[(0, -1)])]);
        let ps = preferred_longitudes(&g, &Basing::canonical(&g)).unwrap();
        let id = PeripheralOp::Conjugate {
            comp: 0,
            w: Word::identity(),
            perm: vec![0, 1],
        };
        assert_eq!(ps.apply(&id).unwrap(), ps);
        let inv = PeripheralOp::InvertLoop { comp: 0, index: 0 };
        assert_eq!(ps.apply(&inv).unwrap().apply(&inv).unwrap(), ps);
        let pre = |inverse| PeripheralOp::Precompose {
            comp: 0,
            target: Longitude::Loop(1),
            by: 0,
            inverse,
        };
        assert_eq!(ps.apply(&pre(false)).unwrap().apply(&pre(true)).unwrap(), ps);
        let swap = PeripheralOp::Conjugate {
            comp: 0,
            w: w(&[(1, 1)]),
            perm: vec![1, 0],
        };
        let q = ps.apply(&swap).unwrap();
        assert_eq!(q.loops[0][1], ps.loops[0][0].conjugate(&w(&[(1, 1)])));
        assert!(ps.apply(&PeripheralOp::InvertLoop { comp: 1, index: 3 }).is_err());
    }

    fn check_shape(nf: &NormalForm) {
        let g = &nf.graph;
        for c in 0..g.num_components() {
            let unmarked: Vec<_> = g.component_vertices(c).into_iter().filter(|v| !g.is_marked(*v)).collect();
            assert_eq!(unmarked, vec![nf.centers[c]]);
            if let Some(a) = nf.arcs[c].first() {
                assert!(a.is_identity());
            }
        }
        let comp_of = g.comp_map();
        for e in g.edges() {
            for l in e.label.gens() {
                assert!(nf.centers.contains(&l));
                assert_ne!(comp_of[&l], comp_of[&e.src]);
            }
        }
    }

    #[test]
    fn normal_form_of_crossing() {
        let g = cross();
        let nf = chen_milnor_normal_form(&g, &Basing::canonical(&g)).unwrap();
        check_shape(&nf);
        let replay = nf.trace.iter().fold(g.clone(), |h, m| h.apply(m).unwrap());
        assert_eq!(replay, nf.graph);
        let (_, arcs) = nf.in_meridians();
        assert_eq!(arcs[1], vec![Word::identity(), w(&[(0, 1)])]);
        let again = chen_milnor_normal_form(&nf.graph, &Basing::canonical(&nf.graph)).unwrap();
        assert_eq!(again.graph, nf.graph);
        assert!(again.trace.is_empty());
    }

    #[test]
    fn empty_edge_contracts() {
        let g = graph(
            &[(0, true), (1, false), (2, false), (3, true)],
            &[(0, 1, &[]), (1, 2, &[]), (2, 3, &[])],
        );
        let nf = chen_milnor_normal_form(&g, &Basing::canonical(&g)).unwrap();
        check_shape(&nf);
        assert_eq!(nf.graph.num_vertices(), 3);
    }

    #[test]
    fn own_letter_removed() {
        // Comp 0: I -[a1]-> t -> F with a1 the own spine vertex; comp 1
        // carries a letter of t.
        let g = graph(
            &[(0, true), (1, false), (2, true), (3, true), (4, true)],
            &[(0, 1, &[(1, 1), (3, -1)]), (1, 2, &[]), (3, 4, &[(1, 1)])],
        );
        let nf = chen_milnor_normal_form(&g, &Basing::canonical(&g)).unwrap();
        check_shape(&nf);
        assert!(nf.trace.iter().any(|m| matches!(m, Move::SelfVirtualize { .. })));
    }

    #[test]
    fn loops_survive() {
        let g = graph(
            &[(0, false), (1, false), (2, false)],
            &[(0, 1, &[(2, 1)]), (1, 0, &[]), (2, 2, &[(0, 1)])],
        );
        let nf = chen_milnor_normal_form(&g, &Basing::canonical(&g)).unwrap();
        check_shape(&nf);
        assert_eq!(nf.loops[0].len(), 1);
        assert_eq!(nf.loops[1].len(), 1);
        let replay = nf.trace.iter().fold(g.clone(), |h, m| h.apply(m).unwrap());
        assert_eq!(replay, nf.graph);
    }
}
