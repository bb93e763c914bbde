//! Word rewriting in `U`, independent of the memoized PBW product.
//!
//! A word is a sequence of letters, each either a polynomial or a generator.
//! The rules are applied one redex at a time:
//!
//! ```text
//! s t       -> (st)
//! a_i s     -> s a_i + a_i(s)
//! a_i a_j   -> a_j a_i + sum_k s^i_{k,j} a_k      (i > j)
//! ```
//!
//! Normal forms are words `s a_{i_1} ... a_{i_k}` with `i_1 <= ... <= i_k`.
//! The choice of redex is configurable so that strategy independence of the
//! normal form (confluence) can be tested.

use crate::envelope::{add_into, Algebra, Terms, UElement};
use crate::error::{Error, Result};
use crate::lierinehart::FreeLieRinehart;
use crate::ring::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Scalar(Polynomial),
    Gen(usize),
}

pub type Word = Vec<Letter>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Rewrite the leftmost redex first.
    Leftmost,
    /// Rewrite the rightmost redex first.
    Rightmost,
}

fn is_redex(a: &Letter, b: &Letter) -> bool {
    match (a, b) {
        (Letter::Scalar(_), Letter::Scalar(_)) => true,
        (Letter::Gen(_), Letter::Scalar(_)) => true,
        (Letter::Gen(i), Letter::Gen(j)) => i > j,
        (Letter::Scalar(_), Letter::Gen(_)) => false,
    }
}

fn find_redex(w: &Word, strategy: Strategy) -> Option<usize> {
    let mut positions = (0..w.len().saturating_sub(1)).filter(|&p| is_redex(&w[p], &w[p + 1]));
    match strategy {
        Strategy::Leftmost => positions.next(),
        Strategy::Rightmost => positions.next_back(),
    }
}

fn splice(w: &Word, p: usize, middle: Vec<Letter>) -> Word {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.extend_from_slice(&w[..p]);
    out.extend(middle);
    out.extend_from_slice(&w[p + 2..]);
    out
}

/// Rewrites a sum of words to normal form.
pub fn normalize(lr: &FreeLieRinehart, words: Vec<Word>, strategy: Strategy) -> Terms {
    let d = lr.rank();
    let mut pending = words;
    let mut out = Terms::new();
    while let Some(w) = pending.pop() {
        if w.iter().any(|l| matches!(l, Letter::Scalar(s) if s.is_zero())) {
            continue;
        }
        match find_redex(&w, strategy) {
            None => {
                let mut e = vec![0u32; d];
                let mut coeff = Polynomial::one(lr.ring());
                for l in &w {
                    match l {
                        Letter::Scalar(s) => coeff = &coeff * s,
                        Letter::Gen(i) => e[*i] += 1,
                    }
                }
                add_into(&mut out, e, coeff);
            }
            Some(p) => match (&w[p], &w[p + 1]) {
                (Letter::Scalar(s), Letter::Scalar(t)) => {
                    pending.push(splice(&w, p, vec![Letter::Scalar(s * t)]));
                }
                (Letter::Gen(i), Letter::Scalar(s)) => {
                    let (i, s) = (*i, s.clone());
                    pending.push(splice(&w, p, vec![Letter::Scalar(lr.anchor_basis(i, &s))]));
                    pending.push(splice(&w, p, vec![Letter::Scalar(s), Letter::Gen(i)]));
                }
                (Letter::Gen(i), Letter::Gen(j)) => {
                    let (i, j) = (*i, *j);
                    for k in 0..d {
                        let c = lr.structure_constant(i, k, j);
                        if !c.is_zero() {
                            pending.push(splice(
                                &w,
                                p,
                                vec![Letter::Scalar(c.clone()), Letter::Gen(k)],
                            ));
                        }
                    }
                    pending.push(splice(&w, p, vec![Letter::Gen(j), Letter::Gen(i)]));
                }
                (Letter::Scalar(_), Letter::Gen(_)) => unreachable!("not a redex"),
            },
        }
    }
    out
}

/// The word `s a^e` for one normal-form term.
pub fn term_word(e: &[u32], s: &Polynomial) -> Word {
    let mut w = vec![Letter::Scalar(s.clone())];
    for (i, &k) in e.iter().enumerate() {
        w.extend(std::iter::repeat_n(Letter::Gen(i), k as usize));
    }
    w
}

/// Product of two elements computed purely by word rewriting.
pub fn mul_by_rewriting(a: &UElement, b: &UElement, strategy: Strategy) -> Result<UElement> {
    if !crate::envelope::same_algebra(a.algebra(), b.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let lr: &Algebra = a.algebra();
    let mut words = Vec::new();
    for (e, s) in a.terms() {
        for (f, t) in b.terms() {
            let mut w = term_word(e, s);
            w.extend(term_word(f, t));
            words.push(w);
        }
    }
    UElement::from_terms(lr, normalize(lr, words, strategy))
}
