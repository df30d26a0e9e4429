//! Exchange moves, and sliding a tail across a run of heads whose word is
//! trivial.

use crate::freegroup::Sign;

use super::{mismatch, ArrowId, Endpoint, GaussDiagram, GaussError, GaussMove, Kind, Site};

fn step(d: &mut GaussDiagram, trace: &mut Vec<GaussMove>, m: GaussMove) -> Result<(), GaussError> {
    d.apply_in_place(&m)?;
    trace.push(m);
    Ok(())
}

/// Pushes the tail of `x` through the adjacent head of another arrow `A`:
/// rightwards when `forward`, leftwards otherwise. The head of `x` gets
/// conjugated by a fresh Reid2 pair whose tails sit next to `tA`. Returns the
/// new diagram and its Reid2/Reid3 trace.
pub fn exchange(d: &GaussDiagram, x: ArrowId, forward: bool) -> Result<(GaussDiagram, Vec<GaussMove>), GaussError> {
    let mut e = d.clone();
    let mut trace = Vec::new();
    exchange_in_place(&mut e, &mut trace, x, forward)?;
    Ok((e, trace))
}

fn exchange_in_place(
    d: &mut GaussDiagram,
    trace: &mut Vec<GaussMove>,
    x: ArrowId,
    forward: bool,
) -> Result<ArrowId, GaussError> {
    let (c, i) = d.tail_of(x)?;
    let j = if forward {
        d.succ(c, i)
    } else {
        let n = d.comps[c].len();
        match (i, d.kind) {
            (0, Kind::Link) if n > 1 => Some(n - 1),
            (0, _) => None,
            _ => Some(i - 1),
        }
    };
    let a = match j.map(|j| d.comps[c][j]) {
        Some(p) if p.is_head() && p.arrow != x => p.arrow,
        _ => return Err(mismatch(x, "tail is not next to the head of another arrow")),
    };
    let sa = d.sign(a)?;
    let (hc, hi) = d.head_of(x)?;
    let (tc, ti) = d.tail_of(a)?;
    let first = ArrowId(d.next);
    let (head, sign, swapped, c2) = if forward {
        (hi + 1, sa, false, first)
    } else {
        (hi, sa.flip(), true, ArrowId(d.next + 1))
    };
    step(
        d,
        trace,
        GaussMove::Reid2Insert {
            head: Site { comp: hc, pos: head },
            tail: Site { comp: tc, pos: ti + 1 },
            sign,
            tails_swapped: swapped,
            tails_first: true,
        },
    )?;
    step(d, trace, GaussMove::Reid3 { a: x, c: a, c2 })?;
    Ok(c2)
}

/// Moves `tX` next to `tY` by TC moves inside their common run of tails.
fn bring_adjacent(d: &mut GaussDiagram, trace: &mut Vec<GaussMove>, x: ArrowId, y: ArrowId) -> Result<(), GaussError> {
    let tx = Endpoint::tail(x);
    let ty = Endpoint::tail(y);
    let (c, _) = d.tail_of(y)?;
    let n = d.comps[c].len();
    let back = |i: usize| if i == 0 { n - 1 } else { i - 1 };
    // Find the direction in which tX is reached through tails only.
    let reach = |d: &GaussDiagram, left: bool| -> bool {
        let (_, mut i) = d.tail_of(y).expect("known arrow");
        for _ in 0..n {
            let j = if left {
                if i == 0 && d.kind != Kind::Link {
                    return false;
                }
                back(i)
            } else {
                match d.succ(c, i) {
                    Some(j) => j,
                    None => return false,
                }
            };
            let p = d.comps[c][j];
            if p == tx {
                return true;
            }
            if !p.is_tail() {
                return false;
            }
            i = j;
        }
        false
    };
    let left = if reach(d, true) {
        true
    } else if reach(d, false) {
        false
    } else {
        return Err(mismatch(x, "tails are not in one run"));
    };
    while d.adjacency(tx, ty)?.is_none() {
        let (_, i) = d.locate(ty)?;
        let pos = if left { back(i) } else { i };
        step(d, trace, GaussMove::Tc { comp: c, pos })?;
    }
    Ok(())
}

/// Slides the tail at `(comp, from)` rightwards to the gap `to`, across
/// heads whose word (each head read as the run of its tail, with its sign) is
/// trivial in the free group. The conjugating pairs created on the way are
/// cancelled by Reid2 moves. Returns the new diagram and the trace.
pub fn lemma_star(
    d: &GaussDiagram,
    comp: usize,
    from: usize,
    to: usize,
) -> Result<(GaussDiagram, Vec<GaussMove>), GaussError> {
    let seq = d.component(comp)?;
    if from >= to || to > seq.len() {
        return Err(GaussError::BadPosition { comp, pos: to });
    }
    let tx = seq[from];
    if !tx.is_tail() {
        return Err(mismatch(from, "not a tail"));
    }
    let x = tx.arrow;
    if to == from + 1 {
        return Ok((d.clone(), Vec::new()));
    }
    let region = &seq[from + 1..to];
    if region.contains(&Endpoint::head(x)) {
        return Err(mismatch(from, "own head between tail and target"));
    }
    // Check the word first: runs do not change while the tail slides.
    let mut stack: Vec<((usize, usize), Sign)> = Vec::new();
    for p in region.iter().filter(|p| p.is_head()) {
        let letter = (d.tail_run(p.arrow)?, d.sign(p.arrow)?);
        match stack.last() {
            Some(top) if top.0 == letter.0 && top.1 != letter.1 => {
                stack.pop();
            }
            _ => stack.push(letter),
        }
    }
    if !stack.is_empty() {
        return Err(GaussError::NontrivialWord);
    }
    let last = seq[to - 1];
    let mut e = d.clone();
    let mut trace = Vec::new();
    // Conjugating pairs around hX as (left head arrow, right head arrow).
    let mut pairs: Vec<(ArrowId, ArrowId)> = Vec::new();
    loop {
        let (_, i) = e.tail_of(x)?;
        let next = e.comps[comp][i + 1];
        if next.is_tail() {
            step(&mut e, &mut trace, GaussMove::Tc { comp, pos: i })?;
        } else {
            let c2 = exchange_in_place(&mut e, &mut trace, x, true)?;
            let pair = (c2, ArrowId(c2.0 + 1));
            match pairs.last() {
                Some(&(p, q))
                    if e.tail_run(p)? == e.tail_run(pair.0)? && e.sign(p)? != e.sign(pair.0)? =>
                {
                    pairs.pop();
                    bring_adjacent(&mut e, &mut trace, p, pair.0)?;
                    step(&mut e, &mut trace, GaussMove::Reid2Delete { a: pair.0, b: p })?;
                    bring_adjacent(&mut e, &mut trace, q, pair.1)?;
                    step(&mut e, &mut trace, GaussMove::Reid2Delete { a: q, b: pair.1 })?;
                }
                _ => pairs.push(pair),
            }
        }
        if next == last {
            break;
        }
    }
    debug_assert!(pairs.is_empty());
    Ok((e, trace))
}

#[cfg(test)]
mod tests {
    use super::super::parse_tokens;
    use super::super::tests::diagram;
    use super::*;

    fn replay(d: &GaussDiagram, trace: &[GaussMove]) -> GaussDiagram {
        trace.iter().fold(d.clone(), |e, m| e.apply(m).unwrap())
    }

    #[test]
    fn exchange_conjugates_the_head() {
        let d = diagram(Kind::StringLink, &["t0 h1 t1", "h0"], &[(0, 1), (1, -1)]);
        let (e, trace) = exchange(&d, ArrowId(0), true).unwrap();
        assert_eq!(replay(&d, &trace), e);
        let want = diagram(
            Kind::StringLink,
            &["h1 t0 t2 t1 t3", "h2 h0 h3"],
            &[(0, 1), (1, -1), (2, -1), (3, 1)],
        );
        assert_eq!(e, want);
        let (f, _) = exchange(&e, ArrowId(0), false).unwrap();
        assert_eq!(f.components()[0][0], Endpoint::tail(ArrowId(0)));
    }

    #[test]
    fn cancelling_pair() {
        // h1 and h2 have tails in one run with opposite signs.
        let d = diagram(
            Kind::StringLink,
            &["t0 h1 h2 t1 t2", "h0"],
            &[(0, 1), (1, 1), (2, -1)],
        );
        let (e, trace) = lemma_star(&d, 0, 0, 3).unwrap();
        assert_eq!(replay(&d, &trace), e);
        assert_eq!(e.num_arrows(), 3);
        assert_eq!(e.components()[1], parse_tokens("h0").unwrap());
        assert_eq!(e.components()[0][..3], parse_tokens("h1 h2 t0").unwrap()[..]);
    }

    #[test]
    fn empty_word_is_transposition() {
        let d = diagram(Kind::StringLink, &["t0 t1 h1", "h0"], &[(0, 1), (1, 1)]);
        let (e, trace) = lemma_star(&d, 0, 0, 2).unwrap();
        assert_eq!(trace, vec![GaussMove::Tc { comp: 0, pos: 0 }]);
        assert_eq!(e.components()[0][1], Endpoint::tail(ArrowId(0)));
    }

    #[test]
    fn nontrivial_word() {
        let d = diagram(Kind::StringLink, &["t0 h1 t1", "h0"], &[(0, 1), (1, 1)]);
        assert_eq!(lemma_star(&d, 0, 0, 2), Err(GaussError::NontrivialWord));
    }
}
