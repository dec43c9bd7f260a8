//! Exact moments of free semicircular families via non-crossing pair
//! partitions, and the truncated Stieltjes expansion they induce. This is
//! the combinatorial cross-check for the Dyson-equation solver: both
//! pipelines compute moments of the same limiting element `1 - q(s)` by
//! entirely different routes.

use std::collections::HashMap;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::ncpoly::{NCPolynomial, Symbol, Word};

#[derive(Debug, Error)]
pub enum FreeProbError {
    #[error("moment computation requires hermitian symbols only")]
    GeneralSymbol,
    #[error("word-count guard exceeded: k_max * deg = {0} > {1}")]
    SizeGuard(usize, usize),
    #[error("term budget exceeded while expanding powers ({0} words)")]
    TermBudget(usize),
    #[error("moment tail does not decay below 1e-14 by k = {0}; |z| too small")]
    TailNotDecaying(usize),
    #[error("moment has non-negligible imaginary part {0}")]
    NonRealMoment(f64),
}

/// Moments `tau((1 - q(s))^k)` for `k = 0..=k_max`.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub moments: Vec<f64>,
}

impl MomentTable {
    pub fn k_max(&self) -> usize {
        self.moments.len() - 1
    }
}

/// `tau(s_{w1} ... s_{wk})` for a word of semicircular labels: the number
/// of non-crossing pair partitions matching equal labels only. Odd-length
/// words have moment zero. Exact integer arithmetic.
pub fn semicircular_word_moment(word: &[u32]) -> u128 {
    let mut memo = HashMap::new();
    nc_pairings(word, &mut memo)
}

fn nc_pairings(word: &[u32], memo: &mut HashMap<Vec<u32>, u128>) -> u128 {
    let n = word.len();
    if n == 0 {
        return 1;
    }
    if n % 2 == 1 {
        return 0;
    }
    // Each label must appear an even number of times.
    {
        let mut counts = HashMap::new();
        for &l in word {
            *counts.entry(l).or_insert(0u32) += 1;
        }
        if counts.values().any(|c| c % 2 == 1) {
            return 0;
        }
    }
    if let Some(&v) = memo.get(word) {
        return v;
    }
    let mut total = 0u128;
    // Pair position 0 with an odd position carrying the same label; the
    // stretch in between and the tail pair up independently.
    for j in (1..n).step_by(2) {
        if word[j] == word[0] {
            let inner = nc_pairings(&word[1..j], memo);
            if inner != 0 {
                total += inner * nc_pairings(&word[j + 1..], memo);
            }
        }
    }
    memo.insert(word.to_vec(), total);
    total
}

fn word_labels(w: &Word) -> Result<Vec<u32>, FreeProbError> {
    w.0.iter()
        .map(|s| match s {
            Symbol::X(i) => Ok(*i),
            _ => Err(FreeProbError::GeneralSymbol),
        })
        .collect()
}

/// Moment of a polynomial in free semicirculars: sum over its words of
/// coefficient times the word moment.
fn poly_moment(
    p: &NCPolynomial,
    memo: &mut HashMap<Vec<u32>, u128>,
) -> Result<C64, FreeProbError> {
    let mut acc = C64::new(0.0, 0.0);
    for (w, c) in p.terms() {
        let labels = word_labels(w)?;
        let m = nc_pairings(&labels, memo);
        if m != 0 {
            acc += c * (m as f64);
        }
    }
    Ok(acc)
}

const WORD_GUARD: usize = 20;
const TERM_BUDGET: usize = 4_000_000;

/// Expands `(1 - q)^k` symbolically for `k <= k_max` and sums word
/// moments. Guarded by `k_max * deg(q) <= 20`.
pub fn limiting_moments(
    q_tilde: &NCPolynomial,
    k_max: usize,
) -> Result<MomentTable, FreeProbError> {
    if !q_tilde.is_hermitian_alphabet() {
        return Err(FreeProbError::GeneralSymbol);
    }
    let deg = q_tilde.degree();
    if k_max * deg > WORD_GUARD {
        return Err(FreeProbError::SizeGuard(k_max * deg, WORD_GUARD));
    }
    let p = NCPolynomial::one(q_tilde.alpha_star, 0).sub(q_tilde);
    let mut memo = HashMap::new();
    let mut moments = Vec::with_capacity(k_max + 1);
    let mut power = NCPolynomial::one(p.alpha_star, 0);
    for k in 0..=k_max {
        if k > 0 {
            power = power.mul(&p);
            if power.num_terms() > TERM_BUDGET {
                return Err(FreeProbError::TermBudget(power.num_terms()));
            }
        }
        moments.push(real_moment(&power, &mut memo)?);
    }
    Ok(MomentTable { moments })
}

fn real_moment(
    p: &NCPolynomial,
    memo: &mut HashMap<Vec<u32>, u128>,
) -> Result<f64, FreeProbError> {
    let m = poly_moment(p, memo)?;
    if m.im.abs() > 1e-9 * m.norm().max(1.0) {
        return Err(FreeProbError::NonRealMoment(m.im));
    }
    Ok(m.re)
}

/// Truncated Stieltjes expansion `-sum_{k<=d} tau((1-q)^k) / z^{k+1}` of
/// the resolvent trace of `1 - q(s)` at large `|z|`. Power expansion stops
/// once two consecutive terms contribute below 1e-16; the precondition is
/// that terms decay below 1e-14 before `k = d`.
pub fn stieltjes_tail_oracle(
    q_tilde: &NCPolynomial,
    z: C64,
    d: usize,
) -> Result<C64, FreeProbError> {
    if !q_tilde.is_hermitian_alphabet() {
        return Err(FreeProbError::GeneralSymbol);
    }
    let p = NCPolynomial::one(q_tilde.alpha_star, 0).sub(q_tilde);
    let mut memo = HashMap::new();
    let mut power = NCPolynomial::one(p.alpha_star, 0);
    let mut sum = C64::new(0.0, 0.0);
    let mut small_run = 0usize;
    let mut last_term = f64::INFINITY;
    for k in 0..=d {
        if k > 0 {
            power = power.mul(&p);
            if power.num_terms() > TERM_BUDGET {
                return Err(FreeProbError::TermBudget(power.num_terms()));
            }
        }
        let m = real_moment(&power, &mut memo)?;
        let term = C64::new(m, 0.0) / z.powu(k as u32 + 1);
        sum -= term;
        last_term = term.norm();
        if last_term < 1e-16 * sum.norm().max(1.0) {
            small_run += 1;
            if small_run >= 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    if last_term > 1e-14 * sum.norm().max(1.0) {
        return Err(FreeProbError::TailNotDecaying(d));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{hermitize, parse_poly};

    fn catalan(l: u32) -> u128 {
        // C_l = binom(2l, l) / (l + 1)
        let mut binom = 1u128;
        for i in 0..l {
            binom = binom * (2 * l - i) as u128 / (i + 1) as u128;
        }
        binom / (l as u128 + 1)
    }

    #[test]
    fn single_label_moments_are_catalan() {
        for l in 0..=8u32 {
            let word = vec![1u32; 2 * l as usize];
            assert_eq!(semicircular_word_moment(&word), catalan(l));
        }
        assert_eq!(semicircular_word_moment(&[1, 1]), 1);
        assert_eq!(semicircular_word_moment(&[1, 1, 1, 1]), 2);
    }

    #[test]
    fn alternating_word_vanishes() {
        assert_eq!(semicircular_word_moment(&[1, 2, 1, 2]), 0);
    }

    #[test]
    fn odd_length_vanishes() {
        assert_eq!(semicircular_word_moment(&[1, 1, 1]), 0);
        assert_eq!(semicircular_word_moment(&[2]), 0);
    }

    /// Independent oracle: enumerate all perfect matchings, test the
    /// non-crossing and equal-label conditions explicitly.
    fn brute_force_nc(word: &[u32]) -> u128 {
        fn rec(pairs: &mut Vec<(usize, usize)>, free: &mut Vec<usize>, word: &[u32]) -> u128 {
            if free.is_empty() {
                let crossing = pairs.iter().enumerate().any(|(i, &(a, b))| {
                    pairs[..i]
                        .iter()
                        .any(|&(c, d)| (c < a && a < d && d < b) || (a < c && c < b && b < d))
                });
                return if crossing { 0 } else { 1 };
            }
            let first = free[0];
            let mut total = 0;
            for idx in 1..free.len() {
                let second = free[idx];
                if word[first] != word[second] {
                    continue;
                }
                let mut rest: Vec<usize> = free.clone();
                rest.retain(|&p| p != first && p != second);
                pairs.push((first.min(second), first.max(second)));
                total += rec(pairs, &mut rest, word);
                pairs.pop();
            }
            total
        }
        if word.len() % 2 == 1 {
            return 0;
        }
        rec(&mut Vec::new(), &mut (0..word.len()).collect(), word)
    }

    #[test]
    fn matches_brute_force_enumeration() {
        let words: Vec<Vec<u32>> = vec![
            vec![1, 2, 2, 1],
            vec![1, 2, 1, 2],
            vec![1, 1, 2, 2, 3, 3],
            vec![1, 2, 3, 3, 2, 1],
            vec![1, 2, 2, 3, 3, 1],
            vec![1, 2, 1, 2, 2, 1, 2, 1],
            vec![1, 1, 1, 1, 2, 2, 1, 1],
            vec![3, 1, 1, 3, 3, 3],
        ];
        for w in words {
            assert_eq!(
                semicircular_word_moment(&w),
                brute_force_nc(&w),
                "word {w:?}"
            );
        }
    }

    #[test]
    fn shifted_semicircle_moments() {
        let q = parse_poly("x1", 1, 0).unwrap();
        let table = limiting_moments(&q, 4).unwrap();
        assert_eq!(table.moments, vec![1.0, 1.0, 2.0, 4.0, 9.0]);
    }

    #[test]
    fn zero_polynomial_moments() {
        let q = NCPolynomial::zero(1, 0);
        let table = limiting_moments(&q, 6).unwrap();
        assert!(table.moments.iter().all(|&m| m == 1.0));
    }

    #[test]
    fn circular_variance_cancels_first_moment() {
        // tau(1 - c c*) = 0 for a circular element of variance 1.
        let q = hermitize(&parse_poly("y1*y1'", 0, 1).unwrap()).unwrap();
        let table = limiting_moments(&q, 1).unwrap();
        assert_eq!(table.moments[0], 1.0);
        assert!(table.moments[1].abs() < 1e-15);
    }

    #[test]
    fn size_guard_trips() {
        let q = parse_poly("x1*x1*x1", 1, 0).unwrap();
        assert!(matches!(
            limiting_moments(&q, 7),
            Err(FreeProbError::SizeGuard(21, 20))
        ));
    }

    #[test]
    fn stieltjes_tail_geometric() {
        let q = NCPolynomial::zero(1, 0);
        let z = C64::new(0.0, 10.0);
        let got = stieltjes_tail_oracle(&q, z, 25).unwrap();
        let exact = C64::new(1.0, 0.0) / (C64::new(1.0, 0.0) - z);
        assert!((got - exact).norm() < 1e-14);
    }

    #[test]
    fn stieltjes_tail_semicircle() {
        // 1 - s has resolvent trace m(z) solving m^2 + (z - 1) m + 1 = 0.
        let q = parse_poly("x1", 1, 0).unwrap();
        let z = C64::new(0.0, 10.0);
        let got = stieltjes_tail_oracle(&q, z, 30).unwrap();
        let zm1 = z - 1.0;
        let disc = (zm1 * zm1 - 4.0).sqrt();
        let mut m = (-zm1 - disc) / 2.0;
        if m.im < 0.0 {
            m = (-zm1 + disc) / 2.0;
        }
        assert!((got - m).norm() < 1e-9, "got {got}, expected {m}");
    }

    #[test]
    fn tail_requires_large_z() {
        let q = parse_poly("4*x1", 1, 0).unwrap();
        let z = C64::new(0.0, 2.0);
        assert!(matches!(
            stieltjes_tail_oracle(&q, z, 12),
            Err(FreeProbError::TailNotDecaying(_))
        ));
    }
}
