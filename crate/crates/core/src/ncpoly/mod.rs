//! Noncommutative polynomials in hermitian symbols `x_a` and general
//! symbols `y_b`, `y_b*`.
//!
//! Polynomials are stored as a canonical map from words (finite symbol
//! sequences, ordered by degree then lexicographically) to complex
//! coefficients. Zero coefficients are never stored, so structural equality
//! is polynomial equality. Coefficients are combined exactly; no epsilon is
//! applied by the symbolic operations themselves.

mod parse;

pub use parse::parse_poly;

use std::collections::BTreeMap;
use std::fmt;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("variable {var} exceeds declared alphabet size {max}")]
    IndexOutOfRange { var: String, max: u32 },
    #[error("polynomial is not self-adjoint")]
    NotSelfAdjoint,
    #[error("constant term {0} is not real")]
    NonRealConstant(C64),
    #[error("polynomial contains general symbols; expected hermitian symbols only")]
    GeneralSymbol,
    #[error("polynomial has a nonzero constant term")]
    NonzeroConstant,
    #[error("assignment missing symbol {0}")]
    MissingSymbol(String),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A single noncommutative symbol. Indices are 1-based as written
/// (`x1`, `y2`, ...). The derived ordering (kind, then index) is the
/// lexicographic order used for canonical words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    X(u32),
    Y(u32),
    YAdj(u32),
}

impl Symbol {
    /// Image under the involution: `x* = x`, `y* <-> y`.
    pub fn involute(self) -> Symbol {
        match self {
            Symbol::X(i) => Symbol::X(i),
            Symbol::Y(i) => Symbol::YAdj(i),
            Symbol::YAdj(i) => Symbol::Y(i),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Symbol::X(i) | Symbol::Y(i) | Symbol::YAdj(i) => i,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::X(i) => write!(f, "x{i}"),
            Symbol::Y(i) => write!(f, "y{i}"),
            Symbol::YAdj(i) => write!(f, "y{i}'"),
        }
    }
}

/// A word of symbols, ordered by degree first and lexicographically within
/// a degree. The empty word is the constant term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reversed word with every symbol involuted.
    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.involute()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A noncommutative polynomial over a declared alphabet of `alpha_star`
/// hermitian symbols and `beta_star` general symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct NCPolynomial {
    pub alpha_star: u32,
    pub beta_star: u32,
    terms: BTreeMap<Word, C64>,
}

impl NCPolynomial {
    pub fn zero(alpha_star: u32, beta_star: u32) -> Self {
        NCPolynomial {
            alpha_star,
            beta_star,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alpha_star: u32, beta_star: u32, c: C64) -> Self {
        let mut p = Self::zero(alpha_star, beta_star);
        p.add_term(Word::empty(), c);
        p
    }

    pub fn one(alpha_star: u32, beta_star: u32) -> Self {
        Self::constant(alpha_star, beta_star, C64::new(1.0, 0.0))
    }

    pub fn symbol(alpha_star: u32, beta_star: u32, s: Symbol) -> Self {
        let mut p = Self::zero(alpha_star, beta_star);
        p.add_term(Word(vec![s]), C64::new(1.0, 0.0));
        p
    }

    /// Adds `c * w`, dropping the entry if the combined coefficient is
    /// exactly zero.
    pub fn add_term(&mut self, w: Word, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v == C64::new(0.0, 0.0) {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> C64 {
        self.terms.get(w).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> C64 {
        self.coeff(&Word::empty())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial uses no `y` symbols.
    pub fn is_hermitian_alphabet(&self) -> bool {
        self.terms
            .keys()
            .all(|w| w.0.iter().all(|s| matches!(s, Symbol::X(_))))
    }

    pub fn add(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.alpha_star = self.alpha_star.max(other.alpha_star);
        out.beta_star = self.beta_star.max(other.beta_star);
        for (w, c) in other.terms() {
            out.add_term(w.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &NCPolynomial) -> NCPolynomial {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.alpha_star, self.beta_star);
        for (w, v) in self.terms() {
            out.add_term(w.clone(), *v * c);
        }
        out
    }

    pub fn mul(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero(
            self.alpha_star.max(other.alpha_star),
            self.beta_star.max(other.beta_star),
        );
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Product truncated to words of length at most `max_len`.
    pub fn mul_truncated(&self, other: &NCPolynomial, max_len: usize) -> NCPolynomial {
        let mut out = NCPolynomial::zero(
            self.alpha_star.max(other.alpha_star),
            self.beta_star.max(other.beta_star),
        );
        for (w1, c1) in self.terms() {
            if w1.len() > max_len {
                continue;
            }
            for (w2, c2) in other.terms() {
                if w1.len() + w2.len() > max_len {
                    continue;
                }
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// The adjoint polynomial: words reversed and involuted, coefficients
    /// conjugated.
    pub fn adjoint(&self) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.alpha_star, self.beta_star);
        for (w, c) in self.terms() {
            out.add_term(w.adjoint(), c.conj());
        }
        out
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    /// Extracts the homogeneous part of the given degree.
    pub fn homogeneous_part(&self, deg: usize) -> NCPolynomial {
        let mut out = NCPolynomial::zero(self.alpha_star, self.beta_star);
        for (w, c) in self.terms() {
            if w.len() == deg {
                out.add_term(w.clone(), *c);
            }
        }
        out
    }
}

/// Splits a self-adjoint `p` into its real constant `c` and the shifted
/// polynomial `q = c - p`, so that `1 - q = p - c + 1` and `q(0) = 0`.
/// Downstream spectral quantities computed for `1 - q` live at
/// `E_internal = E - c + 1`.
pub fn shift_to_q(p: &NCPolynomial) -> Result<(f64, NCPolynomial), PolyError> {
    if !p.is_self_adjoint() {
        return Err(PolyError::NotSelfAdjoint);
    }
    let c = p.constant_term();
    if c.im != 0.0 {
        return Err(PolyError::NonRealConstant(c));
    }
    let q = NCPolynomial::constant(p.alpha_star, p.beta_star, C64::new(c.re, 0.0)).sub(p);
    Ok((c.re, q))
}

/// Substitutes `y_b = (x_{a*+b} + i x_{a*+b*+b}) / sqrt(2)` (and the
/// conjugate for `y_b*`), producing a polynomial over `a* + 2 b*`
/// hermitian symbols. Self-adjointness and `q(0) = 0` are preserved.
pub fn hermitize(q: &NCPolynomial) -> Result<NCPolynomial, PolyError> {
    if q.constant_term() != C64::new(0.0, 0.0) {
        return Err(PolyError::NonzeroConstant);
    }
    let a = q.alpha_star;
    let b = q.beta_star;
    let gamma_star = a + 2 * b;
    let inv_sqrt2 = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let sub = |s: Symbol| -> NCPolynomial {
        match s {
            Symbol::X(i) => NCPolynomial::symbol(gamma_star, 0, Symbol::X(i)),
            Symbol::Y(j) => {
                let re = NCPolynomial::symbol(gamma_star, 0, Symbol::X(a + j));
                let im = NCPolynomial::symbol(gamma_star, 0, Symbol::X(a + b + j));
                re.add(&im.scale(C64::new(0.0, 1.0))).scale(inv_sqrt2)
            }
            Symbol::YAdj(j) => {
                let re = NCPolynomial::symbol(gamma_star, 0, Symbol::X(a + j));
                let im = NCPolynomial::symbol(gamma_star, 0, Symbol::X(a + b + j));
                re.add(&im.scale(C64::new(0.0, -1.0))).scale(inv_sqrt2)
            }
        }
    };
    let mut out = NCPolynomial::zero(gamma_star, 0);
    for (w, c) in q.terms() {
        let mut acc = NCPolynomial::constant(gamma_star, 0, *c);
        for s in &w.0 {
            acc = acc.mul(&sub(*s));
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Truncated coefficients of the formal inverse `(1 - q)^{-1} = sum q^k`.
/// Complete for every word of length at most `order`; absent words have
/// coefficient zero.
#[derive(Debug, Clone)]
pub struct SeriesCoefficients {
    pub order: usize,
    coeffs: BTreeMap<Word, C64>,
}

impl SeriesCoefficients {
    pub fn coeff(&self, w: &Word) -> C64 {
        self.coeffs.get(w).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.coeffs.iter()
    }
}

/// Expands `sum_{k>=0} q^k` for all words of length at most `order`;
/// only powers `k <= order` contribute because `q(0) = 0`.
pub fn inverse_series(q: &NCPolynomial, order: usize) -> Result<SeriesCoefficients, PolyError> {
    if q.constant_term() != C64::new(0.0, 0.0) {
        return Err(PolyError::NonzeroConstant);
    }
    let mut acc = NCPolynomial::one(q.alpha_star, q.beta_star);
    let mut power = NCPolynomial::one(q.alpha_star, q.beta_star);
    for _ in 1..=order {
        power = power.mul_truncated(q, order);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
    }
    let coeffs = acc.terms.into_iter().collect();
    Ok(SeriesCoefficients { order, coeffs })
}

/// Matrix assignment for evaluation: one `N x N` matrix per declared
/// hermitian and general symbol. Adjoint symbols evaluate to conjugate
/// transposes of the `y` matrices.
pub struct Assignment<'a> {
    pub xs: &'a [Array2<C64>],
    pub ys: &'a [Array2<C64>],
}

impl<'a> Assignment<'a> {
    fn size(&self) -> Result<usize, PolyError> {
        let n = self
            .xs
            .first()
            .or_else(|| self.ys.first())
            .map(|m| m.nrows())
            .ok_or_else(|| PolyError::DimensionMismatch("no matrices supplied".into()))?;
        for m in self.xs.iter().chain(self.ys.iter()) {
            if m.nrows() != n || m.ncols() != n {
                return Err(PolyError::DimensionMismatch(format!(
                    "expected {n}x{n}, found {}x{}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(n)
    }
}

/// Evaluates the polynomial on the given matrices.
pub fn evaluate(p: &NCPolynomial, assignment: &Assignment) -> Result<Array2<C64>, PolyError> {
    let n = assignment.size()?;
    let fetch = |s: Symbol| -> Result<Array2<C64>, PolyError> {
        match s {
            Symbol::X(i) => assignment
                .xs
                .get((i - 1) as usize)
                .cloned()
                .ok_or_else(|| PolyError::MissingSymbol(format!("x{i}"))),
            Symbol::Y(i) => assignment
                .ys
                .get((i - 1) as usize)
                .cloned()
                .ok_or_else(|| PolyError::MissingSymbol(format!("y{i}"))),
            Symbol::YAdj(i) => assignment
                .ys
                .get((i - 1) as usize)
                .map(|m| m.t().mapv(|z| z.conj()))
                .ok_or_else(|| PolyError::MissingSymbol(format!("y{i}'"))),
        }
    };
    let mut out = Array2::<C64>::zeros((n, n));
    for (w, c) in p.terms() {
        if w.is_empty() {
            for i in 0..n {
                out[[i, i]] += *c;
            }
            continue;
        }
        let mut prod = fetch(w.0[0])?;
        for s in &w.0[1..] {
            prod = prod.dot(&fetch(*s)?);
        }
        out = out + prod.mapv(|z| z * c);
    }
    Ok(out)
}

fn fmt_f64(v: f64) -> String {
    // std's Display for f64 is the shortest decimal that round-trips and
    // never uses exponent notation, which the grammar lacks.
    format!("{v}")
}

fn fmt_coeff(c: C64) -> String {
    if c.im == 0.0 {
        fmt_f64(c.re)
    } else if c.re == 0.0 {
        format!("{}i", fmt_f64(c.im))
    } else if c.im < 0.0 {
        format!("({}-{}i)", fmt_f64(c.re), fmt_f64(-c.im))
    } else {
        format!("({}+{}i)", fmt_f64(c.re), fmt_f64(c.im))
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms() {
            // Pull a leading minus out of the coefficient so the printed
            // form stays inside the grammar (terms joined by + or -).
            let neg = c.re < 0.0 || (c.re == 0.0 && c.im < 0.0);
            let c = if neg { -*c } else { *c };
            if first {
                first = false;
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{}", fmt_coeff(c))?;
            } else if c == C64::new(1.0, 0.0) {
                write!(f, "{w}")?;
            } else {
                write!(f, "{}*{w}", fmt_coeff(c))?;
            }
        }
        Ok(())
    }
}
