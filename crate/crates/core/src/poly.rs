//! Exact sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors; zero coefficients are
//! never stored, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rational = BigRational;

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<u32>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Which letter the variables print with: `x1, x2, …` or `e1, e2, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    X,
    E,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::X => 'x',
            Basis::E => 'e',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_{index+1}` (0-based `index`).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(
            index < nvars,
            "variable index {index} out of range for {nvars} variables"
        );
        let mut exp = vec![0; nvars];
        exp[index] = 1;
        Self::monomial(nvars, exp, Rational::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest term.
    pub fn lex_leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable counts"
        );
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c · x^exp`.
    pub fn mul_term(&self, exp: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.weighted_degree(&vec![1; self.nvars])
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|e| weighted(e, weights)).max()
    }

    /// True for zero and for polynomials whose terms share one degree.
    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.keys().map(|e| weighted(e, weights));
        match degs.next() {
            None => true,
            Some(first) => degs.all(|d| d == first),
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Divides by lexicographic leading terms; a leading term of the running
    /// remainder that the divisor's leading term does not divide proves
    /// non-divisibility.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        if self.nvars != divisor.nvars {
            return Err(Error::VariableCount {
                expected: self.nvars,
                found: divisor.nvars,
            });
        }
        let (lead_exp, lead_coef) = divisor.lex_leading().ok_or(Error::NotDivisible)?;
        let lead_exp = lead_exp.clone();
        let lead_inv = lead_coef.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.lex_leading() {
            if !e.iter().zip(&lead_exp).all(|(a, b)| a >= b) {
                return Err(Error::NotDivisible);
            }
            let qe: Exponent = e.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
            let qc = c * &lead_inv;
            for (de, dc) in &divisor.terms {
                let shifted = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(shifted, -(dc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Applies a variable relabelling: variable `i` becomes variable
    /// `target[i]` in a ring of `nvars` variables.
    pub fn relabel(&self, target: &[usize], nvars: usize) -> Self {
        assert_eq!(target.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &a) in e.iter().enumerate() {
                ne[target[i]] += a;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// `self(x_{perm[0]}, …, x_{perm[d-1]})`: variable `i` is replaced by
    /// variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.relabel(perm, self.nvars)
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn compose(&self, images: &[SparsePoly]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VariableCount {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::domain(
                "substituted polynomials disagree on variable count",
            ));
        }
        let mut powers: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::one(target)]; self.nvars];
        let mut out = SparsePoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = SparsePoly::constant(target, c.clone());
            for (i, &a) in e.iter().enumerate() {
                while powers[i].len() <= a as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][a as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Sets the trailing `values.len()` variables to `values` and drops them.
    pub fn specialize_tail(&self, values: &[Rational]) -> Self {
        let keep = self.nvars - values.len();
        let mut out = Self::zero(keep);
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (a, val) in e[keep..].iter().zip(values) {
                v *= num_traits::pow(val.clone(), *a as usize);
            }
            out.add_term(e[..keep].to_vec(), v);
        }
        out
    }

    /// Formats in the text grammar with the given variable letter.
    pub fn to_text(&self, basis: Basis) -> String {
        let mut keyed: Vec<(&Exponent, &Rational)> = self.terms.iter().collect();
        keyed.sort_by(|a, b| grlex_cmp(b.0, a.0));
        if keyed.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in keyed.into_iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&a| a == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (v, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(format!("{}{}", basis.letter(), v + 1)),
                    a => factors.push(format!("{}{}^{}", basis.letter(), v + 1, a)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn to_json(&self, basis: Basis) -> PolyJson {
        PolyJson {
            vars: self.nvars,
            basis,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| TermJson {
                    coef: c.to_string(),
                    exp: e.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<(Self, Basis)> {
        let mut p = Self::zero(json.vars);
        for (i, t) in json.terms.iter().enumerate() {
            if t.exp.len() != json.vars {
                return Err(Error::VariableCount {
                    expected: json.vars,
                    found: t.exp.len(),
                });
            }
            let c =
                parse_rational(&t.coef).map_err(|message| Error::Parse { offset: i, message })?;
            p.add_term(t.exp.clone(), c);
        }
        Ok((p, json.basis))
    }
}

pub(crate) fn weighted(e: &[u32], weights: &[u32]) -> u32 {
    e.iter().zip(weights).map(|(a, w)| a * w).sum()
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(Basis::X))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_same(rhs);
        let mut out = SparsePoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $m(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// JSON shape of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub exp: Vec<u32>,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer {num:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid integer {den:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(n, d))
}

/// Parses the text grammar: signed terms `coef*x1^a1*x2^a2…` (or with `e`).
///
/// Returns the polynomial and the variable letter used. When `nvars` is
/// `None` the variable count is the largest index mentioned.
pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<(SparsePoly, Basis)> {
    Parser::new(text).parse(nvars)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type RawTerm = (Rational, Vec<(usize, u32)>);

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().expect("digits parse"))
    }

    fn small(&mut self) -> Result<u32> {
        let n = self.number()?;
        match u32::try_from(n) {
            Ok(v) => Ok(v),
            Err(_) => self.err("exponent or index too large"),
        }
    }

    fn factor(
        &mut self,
        letter: &mut Option<u8>,
        coef: &mut Rational,
        vars: &mut Vec<(usize, u32)>,
    ) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= Rational::from_integer(d);
                }
                *coef *= value;
                Ok(())
            }
            Some(c @ (b'x' | b'e')) => {
                if let Some(l) = *letter {
                    if l != c {
                        return self.err("mixed x and e variables");
                    }
                }
                *letter = Some(c);
                self.pos += 1;
                let idx = self.small()? as usize;
                if idx == 0 {
                    return self.err("variable indices start at 1");
                }
                let mut exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.small()?;
                }
                vars.push((idx - 1, exp));
                Ok(())
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn parse(mut self, nvars: Option<usize>) -> Result<(SparsePoly, Basis)> {
        let mut letter = None;
        let mut raw: Vec<RawTerm> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            match self.peek() {
                None if !first => break,
                None => return self.err("empty polynomial"),
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return self.err("expected '+' or '-'"),
            }
            first = false;
            let mut coef = sign;
            let mut vars = Vec::new();
            self.factor(&mut letter, &mut coef, &mut vars)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut letter, &mut coef, &mut vars)?;
            }
            raw.push((coef, vars));
        }
        let max_index = raw
            .iter()
            .flat_map(|(_, vs)| vs.iter().map(|(i, _)| i + 1))
            .max()
            .unwrap_or(0);
        let n = match nvars {
            Some(n) if n < max_index => {
                return Err(Error::VariableCount {
                    expected: n,
                    found: max_index,
                })
            }
            Some(n) => n,
            None => max_index,
        };
        let mut p = SparsePoly::zero(n);
        for (c, vs) in raw {
            let mut e = vec![0; n];
            for (i, a) in vs {
                e[i] += a;
            }
            p.add_term(e, c);
        }
        let basis = if letter == Some(b'e') {
            Basis::E
        } else {
            Basis::X
        };
        Ok((p, basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(n, i)
    }

    fn p(s: &str, n: usize) -> SparsePoly {
        parse_poly(s, Some(n)).unwrap().0
    }

    #[test]
    fn arithmetic_examples() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let prod = &a * &b;
        assert_eq!(prod, p("x1^2 - x2^2", 2));
        assert_eq!(prod.exact_divide(&b).unwrap(), a);
        assert_eq!(x(2, 0).exact_divide(&x(2, 1)), Err(Error::NotDivisible));
        assert_eq!(
            p("x1^2 + 1", 1).exact_divide(&p("x1 + 1", 1)),
            Err(Error::NotDivisible)
        );
        assert!(SparsePoly::zero(2).exact_divide(&b).unwrap().is_zero());
        assert_eq!(
            a.exact_divide(&SparsePoly::zero(2)),
            Err(Error::NotDivisible)
        );
    }

    #[test]
    fn printing_is_canonical() {
        assert_eq!(p("x2 - x1", 2).to_string(), "-x1 + x2");
        assert_eq!(
            p("3/6*x1^2*x2 - 2 + x1", 2).to_string(),
            "1/2*x1^2*x2 + x1 - 2"
        );
        assert_eq!(SparsePoly::zero(3).to_string(), "0");
        assert_eq!(p("e1^3 - 4*e1*e2", 2).to_text(Basis::E), "e1^3 - 4*e1*e2");
    }

    #[test]
    fn parser_errors() {
        assert!(parse_poly("x1 +", None).is_err());
        assert!(parse_poly("x0", None).is_err());
        assert!(parse_poly("x1*e2", None).is_err());
        assert!(parse_poly("1/0", None).is_err());
        assert!(parse_poly("x3", Some(2)).is_err());
        assert!(parse_poly("x1 x2", None).is_err());
        let (q, b) = parse_poly("-e2^2", None).unwrap();
        assert_eq!(b, Basis::E);
        assert_eq!(q.nvars(), 2);
    }

    #[test]
    fn compose_and_specialize() {
        // (e1, e2) ↦ (x1 + x2, x1 x2): e1^2 - 2 e2 = x1^2 + x2^2
        let g = p("e1^2 - 2*e2", 2);
        let images = [p("x1 + x2", 2), p("x1*x2", 2)];
        assert_eq!(g.compose(&images).unwrap(), p("x1^2 + x2^2", 2));
        let h = p("x1*x3 + x2^2*x3^2 + 1", 3);
        assert_eq!(h.specialize_tail(&[rat(2)]), p("2*x1 + 4*x2^2 + 1", 2));
    }

    #[test]
    fn json_shape() {
        let q = p("1/2*x1^2 - x2", 2);
        let j = serde_json::to_value(q.to_json(Basis::X)).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"vars": 2, "basis": "x", "terms": [
                {"coef": "1/2", "exp": [2, 0]}, {"coef": "-1", "exp": [0, 1]}]})
        );
        let back: PolyJson = serde_json::from_value(j).unwrap();
        assert_eq!(SparsePoly::from_json(&back).unwrap(), (q, Basis::X));
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec(
            (prop::collection::vec(0u32..4, nvars), -20i64..20, 1i64..6),
            0..6,
        )
        .prop_map(move |ts| {
            SparsePoly::from_terms(nvars, ts.into_iter().map(|(e, n, d)| (e, rat_frac(n, d))))
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(q in arb_poly(3)) {
            let text = q.to_text(Basis::X);
            prop_assert_eq!(parse_poly(&text, Some(3)).unwrap().0, q);
        }

        #[test]
        fn product_divides_back(a in arb_poly(3), b in arb_poly(3)) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
