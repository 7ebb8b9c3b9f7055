//! Reference normal ordering by local rewriting.
//!
//! Independent of [`Monomial::product`](super::Monomial::product): a word
//! of generators is rewritten one adjacent pair at a time until every
//! surviving word is canonical. The caller chooses which out-of-order
//! pair to rewrite, so confluence of the rules can be tested directly.

use std::cmp::Ordering;

use super::{CarPolynomial, Generator, GenKind, Monomial};
use crate::coeff::Coeff;

/// Order between adjacent generators in a canonical word, or `None` when
/// the pair annihilates (`c_i c_i`, `c*_i c*_i`).
fn pair_order(a: &Generator, b: &Generator) -> Option<Ordering> {
    match (a.kind, b.kind) {
        (GenKind::Creation, GenKind::Annihilation) => Some(Ordering::Less),
        (GenKind::Annihilation, GenKind::Creation) => Some(Ordering::Greater),
        _ if a.site == b.site => None,
        _ => Some(a.site.cmp(&b.site)),
    }
}

/// Positions `p` such that the pair `(word[p], word[p+1])` must be rewritten.
pub fn rewrite_sites(word: &[Generator]) -> Vec<usize> {
    (0..word.len().saturating_sub(1))
        .filter(|&p| pair_order(&word[p], &word[p + 1]) != Some(Ordering::Less))
        .collect()
}

/// Normal-orders `word`, calling `choose` with the list of rewritable
/// positions and applying the rule at the returned index into that list.
pub fn normal_order_word<C: Coeff>(
    word: &[Generator],
    mut choose: impl FnMut(&[usize]) -> usize,
) -> CarPolynomial<C> {
    let mut out = CarPolynomial::zero();
    let mut pending: Vec<(i64, Vec<Generator>)> = vec![(1, word.to_vec())];
    while let Some((sign, w)) = pending.pop() {
        let sites = rewrite_sites(&w);
        if sites.is_empty() {
            let cr: Vec<_> = w.iter().filter(|g| g.is_creation()).map(|g| g.site).collect();
            let an: Vec<_> = w.iter().filter(|g| !g.is_creation()).map(|g| g.site).collect();
            let m = Monomial::from_sorted(&cr, &an).expect("canonical word");
            out.add_term(m, C::from_int(sign));
            continue;
        }
        let p = sites[choose(&sites) % sites.len()];
        let (a, b) = (w[p], w[p + 1]);
        match pair_order(&a, &b) {
            // c_i c_i = 0 or c*_i c*_i = 0: the word dies
            None => {}
            Some(_) => {
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                pending.push((-sign, swapped));
                if a.kind == GenKind::Annihilation && b.kind == GenKind::Creation && a.site == b.site {
                    let mut contracted = w.clone();
                    contracted.drain(p..p + 2);
                    pending.push((sign, contracted));
                }
            }
        }
    }
    out
}
