//! Primitive expansions of the derived moves.
//!
//! Each derived move is rewritten into smaller moves computed on the current
//! graph, and those are expanded recursively while being applied to a scratch
//! copy, so the returned trace is fully primitive and replayable in order.

use crate::freegroup::{reduce, Gen, Letter, Word};

use super::moves::{End, Move};
use super::{WGraph, WGraphError};

/// Expands a derived move on `g` into primitive moves whose composition equals
/// `g.apply(m)`.
pub fn expand_macro(g: &WGraph, m: &Move) -> Result<Vec<Move>, WGraphError> {
    if m.is_primitive() {
        return Err(WGraphError::PrimitiveMove);
    }
    // Validate against the closed form first so errors match `apply`.
    g.apply(m)?;
    let mut scratch = g.clone();
    let mut out = Vec::new();
    run(&mut scratch, m, &mut out)?;
    Ok(out)
}

fn run(g: &mut WGraph, m: &Move, out: &mut Vec<Move>) -> Result<(), WGraphError> {
    if m.is_primitive() {
        g.apply_in_place(m)?;
        out.push(m.clone());
        return Ok(());
    }
    match m {
        Move::Push { vertex, word } => push(g, *vertex, word, out),
        Move::Split { edge, cut } => split(g, *edge, *cut, out),
        Move::Merge { vertex } => merge(g, *vertex, out),
        Move::GenStabilize { vertex, letter } => gen_stabilize(g, *vertex, *letter, out),
        Move::RephrasedReid3 {
            edge,
            pos,
            witness,
            rotation,
            inverse,
        } => rephrased_reid3(g, *edge, *pos, *witness, *rotation, *inverse, out),
        _ => unreachable!("primitive moves handled above"),
    }
}

/// Incoming edges are reversed, the word is stabilized in letter by letter
/// from its end, and the reversed edges are flipped back.
fn push(g: &mut WGraph, v: Gen, word: &Word, out: &mut Vec<Move>) -> Result<(), WGraphError> {
    let incoming: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.dst == v)
        .map(|(i, _)| i)
        .collect();
    for &i in &incoming {
        run(g, &Move::ReverseEdge { edge: i }, out)?;
    }
    for l in word.letters().iter().rev() {
        run(g, &Move::Stabilize { vertex: v, letter: *l }, out)?;
    }
    for &i in &incoming {
        run(g, &Move::ReverseEdge { edge: i }, out)?;
    }
    Ok(())
}

fn split(g: &mut WGraph, i: usize, cut: usize, out: &mut Vec<Move>) -> Result<(), WGraphError> {
    let e = g.edge(i)?.clone();
    let (_, w2) = e.label.split_at(cut);
    let c = g.peek_fresh();
    let expand = Move::Expand {
        vertex: e.dst,
        ends: vec![(i, End::Dst)],
        occurrences: vec![],
        at: i + 1,
    };
    run(g, &expand, out)?;
    run(g, &Move::ReverseEdge { edge: i + 1 }, out)?;
    if !w2.is_identity() {
        run(g, &Move::Push { vertex: c, word: w2 }, out)?;
    }
    Ok(())
}

fn merge(g: &mut WGraph, c: Gen, out: &mut Vec<Move>) -> Result<(), WGraphError> {
    let (_, eout) = g.merge_edges(c)?;
    let w2 = g.edge(eout)?.label.clone();
    if !w2.is_identity() {
        run(
            g,
            &Move::Push {
                vertex: c,
                word: w2.inverse(),
            },
            out,
        )?;
    }
    run(g, &Move::ReverseEdge { edge: eout }, out)?;
    run(g, &Move::Contract { edge: eout }, out)
}

fn gen_stabilize(
    g: &mut WGraph,
    b: Gen,
    alpha: Letter,
    out: &mut Vec<Move>,
) -> Result<(), WGraphError> {
    let ends: Vec<(usize, End)> = g.incident(b);
    let at = g.edges().len();
    let b2 = g.peek_fresh();
    run(
        g,
        &Move::Expand {
            vertex: b,
            ends,
            occurrences: vec![],
            at,
        },
        out,
    )?;
    // The new edge stays last throughout; it serves as the R3 witness.
    run(g, &Move::ReverseEdge { edge: at }, out)?;
    run(g, &Move::Stabilize { vertex: b2, letter: alpha }, out)?;
    loop {
        let hit = g.edges().iter().enumerate().find_map(|(i, e)| {
            e.label
                .letters()
                .iter()
                .position(|l| l.gen == b)
                .map(|p| (i, p, e.label.letters()[p].sign))
        });
        let Some((i, pos, sign)) = hit else { break };
        let (rotation, inverse) = match sign {
            crate::freegroup::Sign::Neg => (0, false),
            crate::freegroup::Sign::Pos => (1, true),
        };
        run(
            g,
            &Move::RephrasedReid3 {
                edge: i,
                pos,
                witness: at,
                rotation,
                inverse,
            },
            out,
        )?;
    }
    run(g, &Move::ReverseEdge { edge: at }, out)?;
    run(g, &Move::Stabilize { vertex: b, letter: alpha }, out)?;
    run(g, &Move::Contract { edge: at }, out)
}

/// Splits off a chain `x -ℓ1-> c -1-> f -1-> d -ℓ2-> y`, pushes so that the
/// middle edge carries the witness pattern, applies R3 and merges back.
fn rephrased_reid3(
    g: &mut WGraph,
    i: usize,
    pos: usize,
    wi: usize,
    rotation: usize,
    inverse: bool,
    out: &mut Vec<Move>,
) -> Result<(), WGraphError> {
    let wit = g.edge(wi)?.clone();
    let s = super::moves::relator_letters(&wit, inverse);
    let t = reduce(s[..rotation].iter().copied());
    let c = g.peek_fresh();
    run(g, &Move::Split { edge: i, cut: pos }, out)?;
    let d = g.peek_fresh();
    run(g, &Move::Split { edge: i + 1, cut: 0 }, out)?;
    let f = g.peek_fresh();
    run(g, &Move::Split { edge: i + 1, cut: 0 }, out)?;
    let witness = if wi > i { wi + 3 } else { wi };
    if !t.is_identity() {
        run(g, &Move::Push { vertex: d, word: t.clone() }, out)?;
    }
    let head = if inverse {
        wit.label.mul(&Word::gen(wit.dst))
    } else {
        Word::gen(wit.src).mul(&wit.label)
    };
    let word = head.mul(&t);
    if !word.is_identity() {
        run(g, &Move::Push { vertex: f, word }, out)?;
    }
    run(
        g,
        &Move::Reid3 {
            edge: i + 2,
            witness,
            backward: inverse,
        },
        out,
    )?;
    run(g, &Move::Merge { vertex: d }, out)?;
    run(g, &Move::Merge { vertex: f }, out)?;
    run(g, &Move::Merge { vertex: c }, out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::w;
    use super::super::Edge;
    use super::*;

    fn sample() -> WGraph {
        WGraph::from_parts(
            &[
                (Gen(0), true),
                (Gen(1), false),
                (Gen(2), false),
                (Gen(3), true),
                (Gen(4), true),
                (Gen(5), true),
            ],
            vec![
                Edge::new(Gen(0), Gen(1), w(&[(4, 1), (1, -1)])),
                Edge::new(Gen(1), Gen(2), w(&[(5, 1)])),
                Edge::new(Gen(2), Gen(3), w(&[(1, 1), (4, -1), (2, 1)])),
                Edge::new(Gen(4), Gen(5), w(&[(2, -1), (0, 1)])),
            ],
        )
        .unwrap()
    }

    fn check(g: &WGraph, m: &Move) {
        let direct = g.apply(m).unwrap();
        let trace = expand_macro(g, m).unwrap();
        assert!(trace.iter().all(|t| t.is_primitive()));
        let mut h = g.clone();
        for t in &trace {
            h = h.apply(t).unwrap();
        }
        assert_eq!(h, direct, "{m:?}");
        assert_eq!(direct.graph_type(), g.graph_type());
    }

    #[test]
    fn derived_moves_match_their_expansions() {
        let g = sample();
        for cut in 0..=3 {
            check(&g, &Move::Split { edge: 2, cut });
        }
        let s = g.apply(&Move::Split { edge: 0, cut: 1 }).unwrap();
        check(&s, &Move::Merge { vertex: Gen(6) });
        for rotation in 0..6 {
            for inverse in [false, true] {
                for pos in 0..=3 {
                    check(
                        &g,
                        &Move::RephrasedReid3 {
                            edge: 2,
                            pos,
                            witness: 0,
                            rotation,
                            inverse,
                        },
                    );
                }
            }
        }
        let h = g.apply(&Move::ReverseEdge { edge: 0 }).unwrap();
        check(
            &h,
            &Move::GenStabilize {
                vertex: Gen(1),
                letter: Letter::neg(Gen(4)),
            },
        );
        let p = WGraph::from_parts(
            &[(Gen(0), true), (Gen(1), false), (Gen(2), true), (Gen(3), true)],
            vec![
                Edge::new(Gen(0), Gen(1), w(&[(3, 1)])),
                Edge::new(Gen(1), Gen(2), w(&[(0, 1)])),
                Edge::new(Gen(1), Gen(3), w(&[])),
            ],
        )
        .unwrap();
        check(
            &p,
            &Move::Push {
                vertex: Gen(1),
                word: w(&[(3, 1), (0, -1)]),
            },
        );
    }

    #[test]
    fn primitive_input_rejected() {
        assert_eq!(
            expand_macro(&sample(), &Move::ReverseEdge { edge: 0 }),
            Err(WGraphError::PrimitiveMove)
        );
    }
}
