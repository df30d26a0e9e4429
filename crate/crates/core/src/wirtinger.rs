//! Wirtinger presentations and their dictionary with unmarked w-graphs.
//!
//! A relation `(j, i, w)` stands for `x̄_j · x_i^w`, i.e. the edge
//! `(x_i, x_j, w)`.

use std::fmt;

use thiserror::Error;

use crate::freegroup::{Gen, Letter, Word};
use crate::wgraph::{Edge, Move, WGraph, WGraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WirtingerError {
    #[error("relation {0} does not exist")]
    UnknownRelation(usize),
    #[error("generator {0} is not listed")]
    UnknownGenerator(Gen),
    #[error("relation {0} is not of the form x̄_j x_i with i ≠ j")]
    NotTrivial(usize),
    #[error("relation {rel} does not match witness {witness}")]
    Witness { rel: usize, witness: usize },
    #[error("conjugation of {0} is not admissible")]
    Conjugation(Gen),
    #[error(transparent)]
    Graph(#[from] WGraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub j: Gen,
    pub i: Gen,
    pub w: Word,
}

impl Relation {
    /// The relator `x̄_j x_i^w` as a word.
    pub fn relator(&self) -> Word {
        Word::gen(self.j).inverse().mul(&Word::gen(self.i).conjugate(&self.w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Gen>,
    pub relations: Vec<Relation>,
}

/// The four operations preserving the presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationOp {
    /// Drops `x_j` using the relation `x̄_j x_i` at index `rel`.
    Eliminate { rel: usize },
    /// Rewrites `x̄_j x_i^w` as `x̄_i x_j^{w̄}`.
    Flip { rel: usize },
    /// Substitutes `x_gen^letter` for `x_gen` in every relation. `x_gen` may
    /// not be the left generator `j` of any relation.
    Conjugate { gen: Gen, letter: Letter },
    /// With witness `x̄_b x_a^w`, turns the conjugator `x_a w` of `rel` into
    /// `w x_b` (or back when `backward`).
    Reid3 { rel: usize, witness: usize, backward: bool },
}

impl PresentationOp {
    /// The w-graph move this operation corresponds to.
    pub fn as_move(&self) -> Move {
        match *self {
            PresentationOp::Eliminate { rel } => Move::Contract { edge: rel },
            PresentationOp::Flip { rel } => Move::ReverseEdge { edge: rel },
            PresentationOp::Conjugate { gen, letter } => Move::GenStabilize { vertex: gen, letter },
            PresentationOp::Reid3 {
                rel,
                witness,
                backward,
            } => Move::Reid3 {
                edge: rel,
                witness,
                backward,
            },
        }
    }
}

impl Presentation {
    /// Generators are the vertices, component by component; one relation per
    /// edge. Marks are forgotten.
    pub fn from_wgraph(g: &WGraph) -> Presentation {
        let generators = (0..g.num_components())
            .flat_map(|c| g.component_vertices(c))
            .collect();
        let relations = g
            .edges()
            .iter()
            .map(|e| Relation {
                j: e.dst,
                i: e.src,
                w: e.label.clone(),
            })
            .collect();
        Presentation {
            generators,
            relations,
        }
    }

    /// The unmarked w-graph with one vertex per generator and one edge per
    /// relation. Components follow the generator order.
    pub fn to_wgraph(&self) -> Result<WGraph, WirtingerError> {
        let decl: Vec<(Gen, bool)> = self.generators.iter().map(|g| (*g, false)).collect();
        let edges = self
            .relations
            .iter()
            .map(|r| Edge::new(r.i, r.j, r.w.clone()))
            .collect();
        Ok(WGraph::from_parts(&decl, edges)?)
    }

    fn check_gen(&self, g: Gen) -> Result<(), WirtingerError> {
        if self.generators.contains(&g) {
            Ok(())
        } else {
            Err(WirtingerError::UnknownGenerator(g))
        }
    }

    fn relation(&self, k: usize) -> Result<&Relation, WirtingerError> {
        self.relations.get(k).ok_or(WirtingerError::UnknownRelation(k))
    }

    pub fn apply(&self, op: &PresentationOp) -> Result<Presentation, WirtingerError> {
        let mut p = self.clone();
        match *op {
            PresentationOp::Eliminate { rel } => {
                let r = self.relation(rel)?.clone();
                if !r.w.is_identity() || r.i == r.j {
                    return Err(WirtingerError::NotTrivial(rel));
                }
                p.relations.remove(rel);
                let rename = |g: Gen| if g == r.j { r.i } else { g };
                for q in &mut p.relations {
                    q.j = rename(q.j);
                    q.i = rename(q.i);
                    q.w = q.w.rename(rename);
                }
                p.generators.retain(|g| *g != r.j);
            }
            PresentationOp::Flip { rel } => {
                let r = self.relation(rel)?.clone();
                p.relations[rel] = Relation {
                    j: r.i,
                    i: r.j,
                    w: r.w.inverse(),
                };
            }
            PresentationOp::Conjugate { gen, letter } => {
                self.check_gen(gen)?;
                self.check_gen(letter.gen)?;
                if letter.gen == gen || self.relations.iter().any(|r| r.j == gen) {
                    return Err(WirtingerError::Conjugation(gen));
                }
                let conj = Word::gen(gen).conjugate(&Word::letter(letter));
                for q in &mut p.relations {
                    q.w = q.w.substitute(gen, &conj);
                    if q.i == gen {
                        q.w = Word::letter(letter).mul(&q.w);
                    }
                }
            }
            PresentationOp::Reid3 {
                rel,
                witness,
                backward,
            } => {
                if rel == witness {
                    return Err(WirtingerError::Witness { rel, witness });
                }
                let wit = self.relation(witness)?;
                let aw = Word::gen(wit.i).mul(&wit.w);
                let wb = wit.w.mul(&Word::gen(wit.j));
                let (from, to) = if backward { (wb, aw) } else { (aw, wb) };
                if self.relation(rel)?.w != from {
                    return Err(WirtingerError::Witness { rel, witness });
                }
                p.relations[rel].w = to;
            }
        }
        Ok(p)
    }
}

impl Presentation {
    /// A `gen` line, then one `rel b = a ^ w` line per relation, with
    /// generators printed by `name`.
    pub fn render(&self, name: &dyn Fn(Gen) -> String) -> String {
        let mut out = String::from("gen");
        for g in &self.generators {
            out.push(' ');
            out.push_str(&name(*g));
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str(&format!("rel {} = {}", name(r.j), name(r.i)));
            if !r.w.is_identity() {
                out.push_str(" ^ ");
                out.push_str(&crate::format::render_word(&r.w, name));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|g| g.to_string()))
    }
}
