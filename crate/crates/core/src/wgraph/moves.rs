//! Move descriptors and their direct application.
//!
//! Primitive moves are C (contract), E (expand), OR, S, R1, R3 and the
//! self-virtualization SV. Push, Split, Merge, GenStabilize and
//! RephrasedReid3 are derived: they are applied here in closed form and
//! [`super::expand_macro`] replays them as primitive sequences.

use crate::freegroup::{reduce, Gen, Letter, Sign, Word};

use super::{Edge, WGraph, WGraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Src,
    Dst,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// Removes an empty edge `(a, b, 1)` with `b` unmarked, identifying `b`
    /// with `a`.
    Contract { edge: usize },
    /// Inverse of contraction: a fresh vertex `n` receives the listed edge
    /// ends and label occurrences of `vertex`, and the edge `(vertex, n, 1)`
    /// is inserted at index `at`.
    Expand {
        vertex: Gen,
        ends: Vec<(usize, End)>,
        occurrences: Vec<(usize, usize)>,
        at: usize,
    },
    ReverseEdge { edge: usize },
    Stabilize { vertex: Gen, letter: Letter },
    Reid1 { edge: usize, sign: Sign },
    /// With witness `(a, b, w)`: forward turns the label `aw` into `wb`,
    /// backward the converse.
    Reid3 {
        edge: usize,
        witness: usize,
        backward: bool,
    },
    /// Outgoing labels get the prefix `word`, incoming ones the suffix
    /// `word⁻¹`.
    Push { vertex: Gen, word: Word },
    /// `(a, b, w1 w2)` becomes `(a, c, w1)` and `(c, b, w2)`, the latter
    /// inserted right after.
    Split { edge: usize, cut: usize },
    /// Inverse of split at a vertex with exactly one in and one out edge.
    Merge { vertex: Gen },
    /// Stabilization that also conjugates every occurrence of `vertex`.
    GenStabilize { vertex: Gen, letter: Letter },
    /// Inserts a rotation of `w̄ ā w b` (or of its inverse) at position
    /// `pos` of `edge`, where `witness = (a, b, w)`.
    RephrasedReid3 {
        edge: usize,
        pos: usize,
        witness: usize,
        rotation: usize,
        inverse: bool,
    },
    /// `Some(l)` decorates an empty edge by a same-component letter, `None`
    /// clears such a one-letter edge.
    SelfVirtualize { edge: usize, letter: Option<Letter> },
}

impl Move {
    pub fn is_primitive(&self) -> bool {
        matches!(
            self,
            Move::Contract { .. }
                | Move::Expand { .. }
                | Move::ReverseEdge { .. }
                | Move::Stabilize { .. }
                | Move::Reid1 { .. }
                | Move::Reid3 { .. }
                | Move::SelfVirtualize { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Move::Contract { .. } => "contract",
            Move::Expand { .. } => "expand",
            Move::ReverseEdge { .. } => "or",
            Move::Stabilize { .. } => "stab",
            Move::Reid1 { .. } => "r1",
            Move::Reid3 { .. } => "r3",
            Move::Push { .. } => "push",
            Move::Split { .. } => "split",
            Move::Merge { .. } => "merge",
            Move::GenStabilize { .. } => "genstab",
            Move::RephrasedReid3 { .. } => "rr3",
            Move::SelfVirtualize { .. } => "sv",
        }
    }
}

/// The letter sequence `w̄ ā w b` (or its inverse `b̄ w̄ a w`) of an edge
/// `(a, b, w)`, unreduced.
pub(crate) fn relator_letters(e: &Edge, inverse: bool) -> Vec<Letter> {
    let winv = e.label.inverse();
    let mut s: Vec<Letter> = Vec::new();
    s.extend_from_slice(winv.letters());
    s.push(Letter::neg(e.src));
    s.extend_from_slice(e.label.letters());
    s.push(Letter::pos(e.dst));
    if inverse {
        s.reverse();
        for l in &mut s {
            *l = l.inverse();
        }
    }
    s
}

impl WGraph {
    /// Applies one move, returning the new graph.
    pub fn apply(&self, m: &Move) -> Result<WGraph, WGraphError> {
        let mut g = self.clone();
        g.apply_in_place(m)?;
        debug_assert_eq!(g.validate(), Ok(()));
        Ok(g)
    }

    pub(crate) fn apply_in_place(&mut self, m: &Move) -> Result<(), WGraphError> {
        match m {
            Move::Contract { edge } => self.contract(*edge),
            Move::Expand {
                vertex,
                ends,
                occurrences,
                at,
            } => self.expand(*vertex, ends, occurrences, *at).map(|_| ()),
            Move::ReverseEdge { edge } => {
                let e = self.edges.get_mut(*edge).ok_or(WGraphError::UnknownEdge(*edge))?;
                std::mem::swap(&mut e.src, &mut e.dst);
                e.label = e.label.inverse();
                Ok(())
            }
            Move::Stabilize { vertex, letter } => self.stabilize(*vertex, *letter),
            Move::Reid1 { edge, sign } => {
                let e = self.edges.get_mut(*edge).ok_or(WGraphError::UnknownEdge(*edge))?;
                e.label = Word::letter(Letter::new(e.src, *sign)).mul(&e.label);
                Ok(())
            }
            Move::Reid3 {
                edge,
                witness,
                backward,
            } => self.reid3(*edge, *witness, *backward),
            Move::Push { vertex, word } => self.push(*vertex, word),
            Move::Split { edge, cut } => self.split(*edge, *cut).map(|_| ()),
            Move::Merge { vertex } => self.merge(*vertex),
            Move::GenStabilize { vertex, letter } => self.gen_stabilize(*vertex, *letter),
            Move::RephrasedReid3 {
                edge,
                pos,
                witness,
                rotation,
                inverse,
            } => self.rephrased_reid3(*edge, *pos, *witness, *rotation, *inverse),
            Move::SelfVirtualize { edge, letter } => self.self_virtualize(*edge, *letter),
        }
    }

    fn contract(&mut self, i: usize) -> Result<(), WGraphError> {
        let e = self.edge(i)?.clone();
        if !e.label.is_identity() {
            return Err(WGraphError::NonEmptyLabel(i));
        }
        if e.is_loop() {
            return Err(WGraphError::Loop(i));
        }
        if self.is_marked(e.dst) {
            return Err(WGraphError::Marked(e.dst));
        }
        self.edges.remove(i);
        self.merge_vertex_into(e.dst, e.src);
        Ok(())
    }

    pub(crate) fn expand(
        &mut self,
        v: Gen,
        ends: &[(usize, End)],
        occurrences: &[(usize, usize)],
        at: usize,
    ) -> Result<Gen, WGraphError> {
        let comp = self.comp_of(v)?;
        if at > self.edges.len() {
            return Err(WGraphError::Parameter(format!("insertion index {at} out of range")));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(ei, end) in ends {
            let e = self.edge(ei)?;
            let at_v = match end {
                End::Src => e.src == v,
                End::Dst => e.dst == v,
            };
            if !at_v || !seen.insert((ei, end)) {
                return Err(WGraphError::Parameter(format!(
                    "edge end ({ei}, {end:?}) is not a distinct end at {v}"
                )));
            }
        }
        let mut seen_occ = std::collections::BTreeSet::new();
        for &(ei, pos) in occurrences {
            let e = self.edge(ei)?;
            if e.label.letters().get(pos).map(|l| l.gen) != Some(v) || !seen_occ.insert((ei, pos)) {
                return Err(WGraphError::Parameter(format!(
                    "label position ({ei}, {pos}) is not a distinct occurrence of {v}"
                )));
            }
        }
        let n = self.fresh_vertex(comp);
        for &(ei, end) in ends {
            match end {
                End::Src => self.edges[ei].src = n,
                End::Dst => self.edges[ei].dst = n,
            }
        }
        for ei in seen_occ.iter().map(|(e, _)| *e).collect::<std::collections::BTreeSet<_>>() {
            let letters: Vec<Letter> = self.edges[ei]
                .label
                .letters()
                .iter()
                .enumerate()
                .map(|(p, l)| {
                    if seen_occ.contains(&(ei, p)) {
                        Letter::new(n, l.sign)
                    } else {
                        *l
                    }
                })
                .collect();
            self.edges[ei].label = reduce(letters);
        }
        self.edges.insert(at, Edge::new(v, n, Word::identity()));
        Ok(n)
    }

    /// Checks the S side conditions at `b`: unmarked, every incident edge
    /// outgoing and not a loop.
    fn check_outward(&self, b: Gen) -> Result<(), WGraphError> {
        let vb = self.vertex(b).ok_or(WGraphError::UnknownVertex(b))?;
        if vb.marked {
            return Err(WGraphError::Marked(b));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.dst == b {
                return Err(WGraphError::NotOutward { vertex: b, edge: i });
            }
        }
        Ok(())
    }

    fn stabilize(&mut self, b: Gen, l: Letter) -> Result<(), WGraphError> {
        self.check_outward(b)?;
        self.check_letter(l)?;
        if l.gen == b {
            return Err(WGraphError::CentralLetter(b));
        }
        if let Some(i) = self.occurs_in_labels(b) {
            return Err(WGraphError::OccursInLabel { vertex: b, edge: i });
        }
        let prefix = Word::letter(l);
        for e in &mut self.edges {
            if e.src == b {
                e.label = prefix.mul(&e.label);
            }
        }
        Ok(())
    }

    fn reid3(&mut self, i: usize, wi: usize, backward: bool) -> Result<(), WGraphError> {
        if i == wi {
            return Err(WGraphError::SelfWitness(i));
        }
        let wit = self.edge(wi)?.clone();
        let e = self.edge(i)?;
        let aw = Word::gen(wit.src).mul(&wit.label);
        let wb = wit.label.mul(&Word::gen(wit.dst));
        let (from, to) = if backward { (wb, aw) } else { (aw, wb) };
        if e.label != from {
            return Err(WGraphError::LabelMismatch { edge: i, witness: wi });
        }
        self.edges[i].label = to;
        Ok(())
    }

    /// Side conditions shared by Push: unmarked, absent from labels, no loop.
    fn check_pushable(&self, v: Gen) -> Result<(), WGraphError> {
        let vv = self.vertex(v).ok_or(WGraphError::UnknownVertex(v))?;
        if vv.marked {
            return Err(WGraphError::Marked(v));
        }
        if let Some(i) = self.occurs_in_labels(v) {
            return Err(WGraphError::OccursInLabel { vertex: v, edge: i });
        }
        if let Some(i) = self.edges.iter().position(|e| e.src == v && e.dst == v) {
            return Err(WGraphError::Loop(i));
        }
        Ok(())
    }

    fn push(&mut self, v: Gen, word: &Word) -> Result<(), WGraphError> {
        self.check_pushable(v)?;
        self.check_word(word)?;
        if word.contains(v) {
            return Err(WGraphError::CentralLetter(v));
        }
        let inv = word.inverse();
        for e in &mut self.edges {
            if e.src == v {
                e.label = word.mul(&e.label);
            } else if e.dst == v {
                e.label = e.label.mul(&inv);
            }
        }
        Ok(())
    }

    pub(crate) fn split(&mut self, i: usize, cut: usize) -> Result<Gen, WGraphError> {
        let e = self.edge(i)?.clone();
        if cut > e.label.len() {
            return Err(WGraphError::Parameter(format!(
                "cut {cut} beyond label of length {}",
                e.label.len()
            )));
        }
        let comp = self.comp_of(e.src)?;
        let (w1, w2) = e.label.split_at(cut);
        let c = self.fresh_vertex(comp);
        self.edges[i] = Edge::new(e.src, c, w1);
        self.edges.insert(i + 1, Edge::new(c, e.dst, w2));
        Ok(c)
    }

    /// The in and out edge of a mergeable vertex.
    pub(crate) fn merge_edges(&self, c: Gen) -> Result<(usize, usize), WGraphError> {
        self.check_pushable(c)?;
        let inc = self.incident(c);
        if inc.len() != 2 {
            return Err(WGraphError::NotBivalent(c));
        }
        let ein = inc.iter().find(|(_, end)| *end == End::Dst);
        let eout = inc.iter().find(|(_, end)| *end == End::Src);
        match (ein, eout) {
            (Some(&(a, _)), Some(&(b, _))) => Ok((a, b)),
            _ => Err(WGraphError::NotBivalent(c)),
        }
    }

    fn merge(&mut self, c: Gen) -> Result<(), WGraphError> {
        let (ein, eout) = self.merge_edges(c)?;
        let out = self.edges[eout].clone();
        let e = &mut self.edges[ein];
        e.dst = out.dst;
        e.label = e.label.mul(&out.label);
        self.edges.remove(eout);
        self.verts.remove(&c);
        Ok(())
    }

    fn gen_stabilize(&mut self, b: Gen, l: Letter) -> Result<(), WGraphError> {
        self.check_outward(b)?;
        self.check_letter(l)?;
        if l.gen == b {
            return Err(WGraphError::CentralLetter(b));
        }
        let conj = Word::gen(b).conjugate(&Word::letter(l));
        let prefix = Word::letter(l);
        for e in &mut self.edges {
            e.label = e.label.substitute(b, &conj);
            if e.src == b {
                e.label = prefix.mul(&e.label);
            }
        }
        Ok(())
    }

    /// The inserted word of a rephrased R3, as an unreduced sequence.
    pub(crate) fn rr3_insert(
        &self,
        witness: usize,
        rotation: usize,
        inverse: bool,
    ) -> Result<Vec<Letter>, WGraphError> {
        let s = relator_letters(self.edge(witness)?, inverse);
        if rotation >= s.len() {
            return Err(WGraphError::Parameter(format!(
                "rotation {rotation} out of range {}",
                s.len()
            )));
        }
        let mut y = s[rotation..].to_vec();
        y.extend_from_slice(&s[..rotation]);
        Ok(y)
    }

    fn rephrased_reid3(
        &mut self,
        i: usize,
        pos: usize,
        wi: usize,
        rotation: usize,
        inverse: bool,
    ) -> Result<(), WGraphError> {
        if i == wi {
            return Err(WGraphError::SelfWitness(i));
        }
        let label = self.edge(i)?.label.clone();
        if pos > label.len() {
            return Err(WGraphError::Parameter(format!(
                "position {pos} beyond label of length {}",
                label.len()
            )));
        }
        let y = self.rr3_insert(wi, rotation, inverse)?;
        let mut seq = label.letters()[..pos].to_vec();
        seq.extend(y);
        seq.extend_from_slice(&label.letters()[pos..]);
        self.edges[i].label = reduce(seq);
        Ok(())
    }

    fn self_virtualize(&mut self, i: usize, letter: Option<Letter>) -> Result<(), WGraphError> {
        let comp = self.edge_comp(i)?;
        match letter {
            Some(l) => {
                if !self.edge(i)?.label.is_identity() {
                    return Err(WGraphError::NonEmptyLabel(i));
                }
                if self.comp_of(l.gen)? != comp {
                    return Err(WGraphError::ForeignLetter { edge: i, gen: l.gen });
                }
                self.edges[i].label = Word::letter(l);
            }
            None => {
                let label = &self.edge(i)?.label;
                let ok = label.len() == 1 && self.comp_of(label.letters()[0].gen)? == comp;
                if !ok {
                    return Err(WGraphError::NotSelfLetter(i));
                }
                self.edges[i].label = Word::identity();
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::w;
    use super::*;

    fn path(labels: Vec<Word>, marked_ends: bool) -> WGraph {
        let n = labels.len() as u32 + 1;
        let verts: Vec<(Gen, bool)> = (0..n)
            .map(|i| (Gen(i), marked_ends && (i == 0 || i == n - 1)))
            .collect();
        let edges = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| Edge::new(Gen(i as u32), Gen(i as u32 + 1), l))
            .collect();
        WGraph::from_parts(&verts, edges).unwrap()
    }

    #[test]
    fn contract_merges_and_renames() {
        let p = path(vec![Word::identity(), w(&[(1, 1)])], true);
        assert_eq!(
            p.apply(&Move::Contract { edge: 1 }),
            Err(WGraphError::NonEmptyLabel(1))
        );
        let r = p.apply(&Move::ReverseEdge { edge: 0 }).unwrap();
        assert_eq!(r.apply(&Move::Contract { edge: 0 }), Err(WGraphError::Marked(Gen(0))));
        let g = WGraph::from_parts(
            &[(Gen(0), true), (Gen(1), false), (Gen(2), true)],
            vec![
                Edge::new(Gen(0), Gen(1), Word::identity()),
                Edge::new(Gen(1), Gen(2), w(&[(1, 1)])),
            ],
        )
        .unwrap();
        let h = g.apply(&Move::Contract { edge: 0 }).unwrap();
        assert_eq!(h.edges(), &[Edge::new(Gen(0), Gen(2), w(&[(0, 1)]))]);
        assert!(!h.has_vertex(Gen(1)));
        assert_eq!(h.graph_type(), g.graph_type());
    }

    #[test]
    fn expand_then_contract_is_identity() {
        let g = path(vec![w(&[(1, 1), (2, -1)]), w(&[(1, -1)])], true);
        let m = Move::Expand {
            vertex: Gen(1),
            ends: vec![(1, End::Src)],
            occurrences: vec![(0, 0)],
            at: 1,
        };
        let h = g.apply(&m).unwrap();
        assert_eq!(h.num_vertices(), 4);
        assert_eq!(h.apply(&Move::Contract { edge: 1 }).unwrap(), g);
    }

    #[test]
    fn reid1_pair_and_or_involution() {
        let g = path(vec![w(&[(2, 1)]), w(&[(0, -1)])], true);
        let h = g
            .apply(&Move::Reid1 { edge: 1, sign: Sign::Pos })
            .unwrap()
            .apply(&Move::Reid1 { edge: 1, sign: Sign::Neg })
            .unwrap();
        assert_eq!(h, g);
        let r = g
            .apply(&Move::ReverseEdge { edge: 0 })
            .unwrap()
            .apply(&Move::ReverseEdge { edge: 0 })
            .unwrap();
        assert_eq!(r, g);
    }

    #[test]
    fn push_through_bivalent_vertex() {
        // in-edge u·x, out-edge y; push x through vertex 1.
        let g = path(vec![w(&[(0, 1), (2, 1)]), w(&[(0, -1)])], true);
        let h = g
            .apply(&Move::Push {
                vertex: Gen(1),
                word: w(&[(2, 1)]),
            })
            .unwrap();
        assert_eq!(h.edges()[0].label, w(&[(0, 1)]));
        assert_eq!(h.edges()[1].label, w(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn split_and_merge() {
        let g = path(vec![w(&[(0, 1), (1, -1)])], true);
        let h = g.apply(&Move::Split { edge: 0, cut: 1 }).unwrap();
        let c = Gen(2);
        assert_eq!(h.edges()[0], Edge::new(Gen(0), c, w(&[(0, 1)])));
        assert_eq!(h.edges()[1], Edge::new(c, Gen(1), w(&[(1, -1)])));
        assert_eq!(h.apply(&Move::Merge { vertex: c }).unwrap(), g);
    }

    #[test]
    fn stabilize_side_conditions() {
        let g = path(vec![w(&[(0, 1)]), Word::identity()], true);
        assert_eq!(
            g.apply(&Move::Stabilize {
                vertex: Gen(1),
                letter: Letter::pos(Gen(0))
            }),
            Err(WGraphError::NotOutward {
                vertex: Gen(1),
                edge: 0
            })
        );
        let h = g.apply(&Move::ReverseEdge { edge: 0 }).unwrap();
        let s = h
            .apply(&Move::Stabilize {
                vertex: Gen(1),
                letter: Letter::pos(Gen(2)),
            })
            .unwrap();
        assert_eq!(s.edges()[0].label, w(&[(2, 1), (0, -1)]));
        assert_eq!(s.edges()[1].label, w(&[(2, 1)]));
    }

    #[test]
    fn reid3_and_rephrased() {
        // Witness (0,1,[2]); edge 1 labelled 0·2 becomes 2·1.
        let g = WGraph::from_parts(
            &[(Gen(0), false), (Gen(1), false), (Gen(2), false)],
            vec![
                Edge::new(Gen(0), Gen(1), w(&[(2, 1)])),
                Edge::new(Gen(1), Gen(2), w(&[(0, 1), (2, 1)])),
            ],
        )
        .unwrap();
        let h = g
            .apply(&Move::Reid3 {
                edge: 1,
                witness: 0,
                backward: false,
            })
            .unwrap();
        assert_eq!(h.edges()[1].label, w(&[(2, 1), (1, 1)]));
        let back = h
            .apply(&Move::Reid3 {
                edge: 1,
                witness: 0,
                backward: true,
            })
            .unwrap();
        assert_eq!(back, g);
        let r = g
            .apply(&Move::RephrasedReid3 {
                edge: 1,
                pos: 0,
                witness: 0,
                rotation: 0,
                inverse: false,
            })
            .unwrap();
        assert_eq!(
            r.edges()[1].label,
            w(&[(2, -1), (0, -1), (2, 1), (1, 1), (0, 1), (2, 1)])
        );
    }

    #[test]
    fn self_virtualization() {
        let g = path(vec![Word::identity()], true);
        let h = g
            .apply(&Move::SelfVirtualize {
                edge: 0,
                letter: Some(Letter::pos(Gen(1))),
            })
            .unwrap();
        assert_eq!(h.edges()[0].label, w(&[(1, 1)]));
        assert_eq!(
            h.apply(&Move::SelfVirtualize { edge: 0, letter: None }).unwrap(),
            g
        );
    }
}
