//! Reduced form: empty edges are loops, other labels have one letter, marked
//! vertices are univalent.

use crate::freegroup::Sign;

use super::moves::Move;
use super::{WGraph, WGraphError};

pub fn is_reduced_form(g: &WGraph) -> bool {
    let edges_ok = g
        .edges()
        .iter()
        .all(|e| if e.label.is_identity() { e.is_loop() } else { e.label.len() == 1 });
    let marked_ok = (0..g.num_components()).all(|c| g.marked(c).iter().all(|m| g.degree(*m) == 1));
    edges_ok && marked_ok
}

/// Brings `g` to reduced form, returning the result and the move trace.
pub fn to_reduced_form(g: &WGraph) -> Result<(WGraph, Vec<Move>), WGraphError> {
    let mut h = g.clone();
    let mut trace = Vec::new();
    let mut step = |h: &mut WGraph, m: Move| -> Result<(), WGraphError> {
        h.apply_in_place(&m)?;
        trace.push(m);
        Ok(())
    };
    // Contract non-loop empty edges, lowest edge id first.
    while let Some(i) = h
        .edges()
        .iter()
        .position(|e| e.label.is_identity() && !e.is_loop())
    {
        let e = h.edges()[i].clone();
        if !h.is_marked(e.dst) {
            step(&mut h, Move::Contract { edge: i })?;
        } else if !h.is_marked(e.src) {
            step(&mut h, Move::ReverseEdge { edge: i })?;
            step(&mut h, Move::Contract { edge: i })?;
        } else {
            step(&mut h, Move::Reid1 { edge: i, sign: Sign::Pos })?;
        }
    }
    // Make marked vertices univalent.
    let marked: Vec<_> = (0..h.num_components())
        .flat_map(|c| h.marked(c).to_vec())
        .collect();
    for m in marked {
        if h.degree(m) == 1 {
            continue;
        }
        let at = h.edges().len();
        let ends = h.incident(m);
        step(
            &mut h,
            Move::Expand {
                vertex: m,
                ends,
                occurrences: vec![],
                at,
            },
        )?;
        step(&mut h, Move::Reid1 { edge: at, sign: Sign::Pos })?;
    }
    // Split long labels one letter at a time.
    while let Some(i) = h.edges().iter().position(|e| e.label.len() > 1) {
        step(&mut h, Move::Split { edge: i, cut: 1 })?;
    }
    Ok((h, trace))
}

#[cfg(test)]
mod tests {
    use super::super::tests::w;
    use super::super::Edge;
    use super::*;
    use crate::freegroup::{Gen, Word};

    #[test]
    fn splits_and_contracts() {
        let g = WGraph::from_parts(
            &[(Gen(0), true), (Gen(1), false), (Gen(2), true)],
            vec![
                Edge::new(Gen(0), Gen(1), w(&[(0, 1), (1, -1)])),
                Edge::new(Gen(1), Gen(2), Word::identity()),
            ],
        )
        .unwrap();
        let (h, trace) = to_reduced_form(&g).unwrap();
        assert!(is_reduced_form(&h));
        assert_eq!(h.graph_type(), g.graph_type());
        let mut r = g.clone();
        for m in &trace {
            r = r.apply(m).unwrap();
        }
        assert_eq!(r, h);
        let (again, t2) = to_reduced_form(&h).unwrap();
        assert_eq!(again, h);
        assert!(t2.is_empty());
    }
}
