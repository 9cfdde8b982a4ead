//! m-ary words, trees and forests together with the statistics that index the
//! cells of a non-commutative Hilbert scheme: critical pairs, the counts
//! `j(x')`, cell dimensions, and the bijections forests → J-tuples → B-tuples.
//!
//! Pairs `(k, w)` are ordered lexicographically in `k` and then in the word
//! order, which is plain lexicographic order with a proper prefix sorting
//! first. Restricted to a single tree this is the preorder of the tree drawn
//! with children in letter order, and the critical pairs are exactly the
//! leaves hanging off it. That observation drives [`jtuple_to_forest`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over the alphabet `{1, …, m}`; the empty word is ε.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    /// Parses a string of digits `1`–`9`; the empty string is ε.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c.to_digit(10) {
                Some(v) if v >= 1 => Ok(v as u8),
                _ => Err(Error::Parse {
                    offset: i,
                    message: format!("invalid letter {c:?} in word"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word `self · letter`.
    pub fn child(&self, letter: u8) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// The word with its last letter removed, or `None` for ε.
    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Digit string, empty for ε (the JSON encoding).
    pub fn encode(&self) -> String {
        self.0.iter().map(|l| char::from(b'0' + l)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.encode())
        }
    }
}

/// Compares two words: a proper prefix is smaller, otherwise the first
/// differing letter decides.
pub fn compare_words(a: &Word, b: &Word) -> Ordering {
    a.cmp(b)
}

/// A finite prefix-closed set of words, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Tree {
    words: Vec<Word>,
}

impl Tree {
    pub fn empty() -> Self {
        Tree { words: Vec::new() }
    }

    /// Builds a tree from arbitrary words, rejecting sets that are not closed
    /// under taking left subwords.
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        words.sort();
        words.dedup();
        for w in &words {
            if let Some(parent) = w.parent() {
                if words.binary_search(&parent).is_err() {
                    return Err(Error::domain(format!(
                        "word {w} present but its prefix {parent} is missing"
                    )));
                }
            }
        }
        Ok(Tree { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }
}

/// Tree order: more nodes is smaller; equal sizes compare at the first
/// differing position of the sorted word lists.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .words
            .len()
            .cmp(&self.words.len())
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A critical pair `(k', w')`; `root` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CriticalPair {
    pub root: usize,
    pub word: Word,
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.root, self.word)
    }
}

/// An `n`-tuple of `m`-ary trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    m: u32,
    trees: Vec<Tree>,
}

impl Forest {
    /// Validates that every letter lies in `1..=m`.
    pub fn new(m: u32, trees: Vec<Tree>) -> Result<Self> {
        for t in &trees {
            for w in t.words() {
                if let Some(&l) = w.letters().iter().find(|&&l| l == 0 || u32::from(l) > m) {
                    return Err(Error::domain(format!("letter {l} outside 1..={m}")));
                }
            }
        }
        Ok(Forest { m, trees })
    }

    /// The forest with `n` empty trees.
    pub fn empty(m: u32, n: usize) -> Self {
        Forest {
            m,
            trees: vec![Tree::empty(); n],
        }
    }

    /// Decodes the JSON shape: one array of digit strings per root.
    pub fn from_word_lists(m: u32, lists: &[Vec<String>]) -> Result<Self> {
        let trees = lists
            .iter()
            .map(|ws| Tree::new(ws.iter().map(|s| Word::parse(s)).collect::<Result<_>>()?))
            .collect::<Result<Vec<_>>>()?;
        Forest::new(m, trees)
    }

    pub fn to_word_lists(&self) -> Vec<Vec<String>> {
        self.trees
            .iter()
            .map(|t| t.words().iter().map(Word::encode).collect())
            .collect()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.trees.len()
    }

    /// Total node count.
    pub fn d(&self) -> usize {
        self.trees.iter().map(Tree::len).sum()
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    /// All pairs `(k, w)` with `w ∈ S_k`, ascending.
    pub fn nodes(&self) -> Vec<CriticalPair> {
        self.trees
            .iter()
            .enumerate()
            .flat_map(|(k, t)| {
                t.words().iter().map(move |w| CriticalPair {
                    root: k + 1,
                    word: w.clone(),
                })
            })
            .collect()
    }

    pub fn contains(&self, pair: &CriticalPair) -> bool {
        pair.root >= 1
            && pair.root <= self.trees.len()
            && self.trees[pair.root - 1].contains(&pair.word)
    }

    pub fn is_critical(&self, pair: &CriticalPair) -> bool {
        if pair.root == 0 || pair.root > self.trees.len() {
            return false;
        }
        let tree = &self.trees[pair.root - 1];
        match pair.word.parent() {
            None => tree.is_empty(),
            Some(parent) => {
                let last = *pair.word.letters().last().unwrap();
                u32::from(last) <= self.m && tree.contains(&parent) && !tree.contains(&pair.word)
            }
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (j, w) in t.words().iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}

/// Forest order: decided by the first differing tree.
pub fn compare_forests(a: &Forest, b: &Forest) -> Ordering {
    a.trees.cmp(&b.trees)
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_forests(self, other).then_with(|| self.m.cmp(&other.m))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every `m`-ary tree with exactly `k` nodes, for each `k ≤ max_nodes`.
fn trees_by_size(m: u32, max_nodes: usize) -> Vec<Vec<Tree>> {
    let mut by_size: Vec<Vec<Tree>> = vec![vec![Tree::empty()]];
    for k in 1..=max_nodes {
        let mut out = Vec::new();
        for sizes in compositions(k - 1, m as usize) {
            let mut partial: Vec<Vec<Word>> = vec![vec![Word::empty()]];
            for (i, &s) in sizes.iter().enumerate() {
                let letter = (i + 1) as u8;
                let mut next = Vec::new();
                for base in &partial {
                    for sub in &by_size[s] {
                        let mut words = base.clone();
                        words.extend(sub.words().iter().map(|w| {
                            let mut letters = vec![letter];
                            letters.extend_from_slice(w.letters());
                            Word(letters)
                        }));
                        next.push(words);
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|mut words| {
                words.sort();
                Tree { words }
            }));
        }
        by_size.push(out);
    }
    by_size
}

/// Weak compositions of `total` into exactly `parts` parts, lexicographic.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// All forests with `n` roots and `d` nodes, ascending in forest order.
pub fn enumerate_forests(m: u32, d: usize, n: usize) -> Vec<Forest> {
    let by_size = trees_by_size(m, d);
    let mut forests = Vec::new();
    for sizes in compositions(d, n) {
        let mut partial: Vec<Vec<Tree>> = vec![Vec::new()];
        for &s in &sizes {
            let mut next = Vec::with_capacity(partial.len() * by_size[s].len());
            for base in &partial {
                for t in &by_size[s] {
                    let mut trees = base.clone();
                    trees.push(t.clone());
                    next.push(trees);
                }
            }
            partial = next;
        }
        forests.extend(partial.into_iter().map(|trees| Forest { m, trees }));
    }
    forests.sort_by(compare_forests);
    forests
}

/// Number of critical pairs every forest in `F_{d,n}` has: `(m-1)d + n`.
/// Negative when the set of forests is empty (`m = 0`, `d > n`).
pub fn critical_count(m: u32, d: usize, n: usize) -> i64 {
    (i64::from(m) - 1) * d as i64 + n as i64
}

/// The critical pairs of `forest`, ascending.
pub fn critical_pairs(forest: &Forest) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for (k, tree) in forest.trees.iter().enumerate() {
        if tree.is_empty() {
            out.push(CriticalPair {
                root: k + 1,
                word: Word::empty(),
            });
            continue;
        }
        for w in tree.words() {
            for letter in 1..=forest.m {
                let child = w.child(letter as u8);
                if !tree.contains(&child) {
                    out.push(CriticalPair {
                        root: k + 1,
                        word: child,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// Number of nodes of `forest` strictly below the critical pair `pair`.
pub fn j_index(forest: &Forest, pair: &CriticalPair) -> Result<usize> {
    if !forest.is_critical(pair) {
        return Err(Error::domain(format!(
            "{pair} is not critical for {forest}"
        )));
    }
    let before: usize = forest.trees[..pair.root - 1].iter().map(Tree::len).sum();
    let tree = &forest.trees[pair.root - 1];
    let within = tree.words().partition_point(|w| w < &pair.word);
    Ok(before + within)
}

fn j_values(forest: &Forest) -> Vec<usize> {
    critical_pairs(forest)
        .iter()
        .map(|p| j_index(forest, p).expect("pair produced by critical_pairs"))
        .collect()
}

/// Cell dimension `d(S*) = Σ_{x'} j(x')`.
pub fn d_value(forest: &Forest) -> usize {
    j_values(forest).iter().sum()
}

/// Dimension of the ambient Hilbert scheme, `(m-1)d² + nd`.
pub fn ambient_dimension(m: u32, d: usize, n: usize) -> i64 {
    let d = d as i64;
    (i64::from(m) - 1) * d * d + n as i64 * d
}

/// Codimension of the cell, `Σ_{x'} (d - j(x'))`.
pub fn codim(forest: &Forest) -> i64 {
    ambient_dimension(forest.m, forest.d(), forest.n()) - d_value(forest) as i64
}

/// A polynomial in `t` with non-negative integer coefficients, index = power.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TPoly(pub Vec<u64>);

impl TPoly {
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs = Vec::new();
        for e in exps {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] += 1;
        }
        TPoly(coeffs)
    }

    /// Drops trailing zero coefficients.
    pub fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Highest power first: `t^12 + t^11 + 2*t^10 + t^9`.
impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, e) => write!(f, "t^{e}")?,
                (c, 1) => write!(f, "{c}*t")?,
                (c, e) => write!(f, "{c}*t^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `Σ_{S ∈ F_{d,n}} t^{d(S)}`.
pub fn poincare_polynomial(m: u32, d: usize, n: usize) -> TPoly {
    TPoly::from_exponents(enumerate_forests(m, d, n).iter().map(d_value))
}

/// `Σ_{S ∈ F_{d,n}} t^{codim(S)}`, the grading of the Chow ring.
pub fn poincare_polynomial_codim(m: u32, d: usize, n: usize) -> TPoly {
    TPoly::from_exponents(
        enumerate_forests(m, d, n)
            .iter()
            .map(|s| usize::try_from(codim(s)).expect("codimension is non-negative")),
    )
}

/// Sorted tuple `(j_1, …, j_{(m-1)d+n})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JTuple(pub Vec<usize>);

/// Tuple `(b_0, …, b_{d-1})` with `b_0 + … + b_i < (m-1)i + n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BTuple(pub Vec<usize>);

fn digits(values: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if values.iter().all(|&v| v < 10) {
        for v in values {
            write!(f, "{v}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = values.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for JTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        digits(&self.0, f)
    }
}

impl fmt::Display for BTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        digits(&self.0, f)
    }
}

impl BTuple {
    /// Codimension of the Chern monomial `c_1^{b_{d-1}} ⋯ c_d^{b_0}`.
    pub fn degree(&self) -> usize {
        let d = self.0.len();
        self.0.iter().enumerate().map(|(i, &b)| (d - i) * b).sum()
    }

    /// Exponent vector of the Chern monomial: entry `k-1` is `b_{d-k}`.
    pub fn chern_exponents(&self) -> Vec<u32> {
        self.0.iter().rev().map(|&b| b as u32).collect()
    }
}

pub fn forest_to_jtuple(forest: &Forest) -> JTuple {
    let mut js = j_values(forest);
    js.sort_unstable();
    JTuple(js)
}

/// `b_i = #{ν : j_ν = i}` for `i < d`.
pub fn jtuple_to_btuple(j: &JTuple, d: usize) -> BTuple {
    let mut b = vec![0; d];
    for &v in &j.0 {
        if v < d {
            b[v] += 1;
        }
    }
    BTuple(b)
}

/// Checks `b_0 + … + b_i < (m-1)i + n` for every `i`.
pub fn is_valid_btuple(b: &BTuple, m: u32, n: usize) -> bool {
    let mut sum = 0i64;
    b.0.iter().enumerate().all(|(i, &v)| {
        sum += v as i64;
        sum < (i64::from(m) - 1) * i as i64 + n as i64
    })
}

/// Membership in `J_{d,n}`: right length, sorted, bounded by `d`, and at most
/// `(m-1)i + n - 1` entries `≤ i` for each `i < d`.
pub fn is_valid_jtuple(j: &JTuple, m: u32, d: usize, n: usize) -> bool {
    let len = critical_count(m, d, n);
    len >= 0
        && j.0.len() as i64 == len
        && j.0.windows(2).all(|w| w[0] <= w[1])
        && j.0.iter().all(|&v| v <= d)
        && is_valid_btuple(&jtuple_to_btuple(j, d), m, n)
}

/// Inverse of [`jtuple_to_btuple`]: `b_i` copies of `i`, padded with `d`.
pub fn btuple_to_jtuple(b: &BTuple, m: u32, n: usize) -> Result<JTuple> {
    let d = b.0.len();
    if !is_valid_btuple(b, m, n) {
        return Err(Error::domain(format!(
            "{b} is not in B_{{{d},{n}}} for m={m}"
        )));
    }
    let len = critical_count(m, d, n);
    let mut j: Vec<usize> =
        b.0.iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c))
            .collect();
    if len < 0 || j.len() as i64 > len {
        return Err(Error::domain(format!(
            "{b} has too many entries for (m,n)=({m},{n})"
        )));
    }
    j.resize(len as usize, d);
    Ok(JTuple(j))
}

/// Rebuilds the forest whose J-tuple is `j`.
///
/// Interleaving `j_ν - j_{ν-1}` nodes before the `ν`-th critical pair yields
/// the preorder node/leaf sequence of the forest, which is then parsed root by
/// root.
pub fn jtuple_to_forest(j: &JTuple, m: u32, d: usize, n: usize) -> Result<Forest> {
    if !is_valid_jtuple(j, m, d, n) {
        return Err(Error::domain(format!(
            "{j} is not in J_{{{d},{n}}} for m={m}"
        )));
    }
    let mut code = Vec::with_capacity(d + j.0.len());
    let mut prev = 0;
    for &v in &j.0 {
        code.extend(std::iter::repeat_n(true, v - prev));
        code.push(false);
        prev = v;
    }
    code.extend(std::iter::repeat_n(true, d - prev));

    fn parse(code: &[bool], pos: &mut usize, m: u32, at: Word, out: &mut Vec<Word>) -> Result<()> {
        let internal = *code
            .get(*pos)
            .ok_or_else(|| Error::domain("J-tuple does not encode a forest"))?;
        *pos += 1;
        if internal {
            for letter in 1..=m {
                parse(code, pos, m, at.child(letter as u8), out)?;
            }
            out.push(at);
        }
        Ok(())
    }

    let mut pos = 0;
    let mut trees = Vec::with_capacity(n);
    for _ in 0..n {
        let mut words = Vec::new();
        parse(&code, &mut pos, m, Word::empty(), &mut words)?;
        words.sort();
        trees.push(Tree { words });
    }
    if pos != code.len() {
        return Err(Error::domain("J-tuple does not encode a forest"));
    }
    let forest = Forest { m, trees };
    if forest_to_jtuple(&forest) != *j {
        return Err(Error::domain("J-tuple does not encode a forest"));
    }
    Ok(forest)
}

/// All of `B_{d,n}`, ascending lexicographically.
pub fn enumerate_btuples(m: u32, d: usize, n: usize) -> Vec<BTuple> {
    fn rec(m: u32, n: usize, d: usize, sum: i64, prefix: &mut Vec<usize>, out: &mut Vec<BTuple>) {
        let i = prefix.len();
        if i == d {
            out.push(BTuple(prefix.clone()));
            return;
        }
        let bound = (i64::from(m) - 1) * i as i64 + n as i64;
        let mut b = 0;
        while sum + (b as i64) < bound {
            prefix.push(b);
            rec(m, n, d, sum + b as i64, prefix, out);
            prefix.pop();
            b += 1;
        }
    }
    let mut out = Vec::new();
    rec(m, n, d, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn tree(ws: &[&str]) -> Forest {
        Forest::new(
            2,
            vec![Tree::new(ws.iter().map(|s| w(s)).collect()).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn word_order_examples() {
        assert_eq!(compare_words(&w(""), &w("2")), Ordering::Less);
        assert_eq!(compare_words(&w("11"), &w("2")), Ordering::Less);
        assert_eq!(compare_words(&w("12"), &w("11")), Ordering::Greater);
    }

    #[test]
    fn tree_order_examples() {
        let a = tree(&["", "1", "11"]);
        let b = tree(&["", "1", "12"]);
        let c = tree(&["", "1", "2"]);
        let e = tree(&["", "2", "21"]);
        assert_eq!(compare_forests(&a, &b), Ordering::Less);
        assert_eq!(compare_forests(&c, &e), Ordering::Less);
        assert_eq!(compare_forests(&a, &a), Ordering::Equal);
        // bigger trees first
        let small = tree(&["", "1"]);
        assert_eq!(compare_forests(&a, &small), Ordering::Less);
    }

    #[test]
    fn rejects_non_prefix_closed() {
        assert!(Tree::new(vec![w(""), w("11")]).is_err());
        assert!(Forest::new(2, vec![Tree::new(vec![w(""), w("3")]).unwrap()]).is_err());
    }

    #[test]
    fn binary_trees_with_three_nodes() {
        let got: Vec<String> = enumerate_forests(2, 3, 1)
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(
            got,
            [
                "({ε,1,11})",
                "({ε,1,12})",
                "({ε,1,2})",
                "({ε,2,21})",
                "({ε,2,22})"
            ]
        );
    }

    #[test]
    fn empty_forest_case() {
        let fs = enumerate_forests(3, 0, 2);
        assert_eq!(fs.len(), 1);
        assert!(fs[0].trees().iter().all(Tree::is_empty));
        assert_eq!(d_value(&fs[0]), 0);
        assert_eq!(poincare_polynomial(3, 0, 2), TPoly(vec![1]));
    }

    #[test]
    fn critical_pair_examples() {
        let show = |f: &Forest| -> Vec<String> {
            critical_pairs(f).iter().map(|p| p.word.encode()).collect()
        };
        assert_eq!(show(&tree(&["", "1", "11"])), ["111", "112", "12", "2"]);
        assert_eq!(show(&tree(&["", "1", "2"])), ["11", "12", "21", "22"]);
        let empty = Forest::empty(2, 1);
        assert_eq!(
            critical_pairs(&empty),
            vec![CriticalPair {
                root: 1,
                word: Word::empty()
            }]
        );
    }

    #[test]
    fn j_index_examples_and_errors() {
        let a = tree(&["", "1", "11"]);
        let c = tree(&["", "1", "2"]);
        let pair = |s: &str| CriticalPair {
            root: 1,
            word: w(s),
        };
        assert_eq!(j_index(&a, &pair("2")).unwrap(), 3);
        assert_eq!(j_index(&c, &pair("11")).unwrap(), 2);
        assert_eq!(j_index(&Forest::empty(2, 1), &pair("")).unwrap(), 0);
        assert!(j_index(&a, &pair("1")).is_err());
        assert!(j_index(&a, &pair("22")).is_err());
        assert!(j_index(
            &a,
            &CriticalPair {
                root: 2,
                word: w("")
            }
        )
        .is_err());
    }

    #[test]
    fn dimensions_and_codimensions() {
        assert_eq!(d_value(&tree(&["", "1", "11"])), 12);
        assert_eq!(d_value(&tree(&["", "2", "22"])), 9);
        assert_eq!(codim(&tree(&["", "1", "11"])), 0);
        assert_eq!(codim(&tree(&["", "1", "12"])), 1);
        assert_eq!(codim(&tree(&["", "2", "22"])), 3);
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(
            poincare_polynomial(2, 3, 1).to_string(),
            "t^12 + t^11 + 2*t^10 + t^9"
        );
        assert_eq!(poincare_polynomial(2, 2, 1).to_string(), "t^6 + t^5");
        assert_eq!(poincare_polynomial_codim(2, 2, 1).to_string(), "t + 1");
        assert_eq!(poincare_polynomial(2, 0, 1).to_string(), "1");
    }

    #[test]
    fn worked_example_tuples() {
        let forests = enumerate_forests(2, 3, 1);
        let js: Vec<String> = forests
            .iter()
            .map(|f| forest_to_jtuple(f).to_string())
            .collect();
        assert_eq!(js, ["3333", "2333", "2233", "1333", "1233"]);
        let bs: Vec<String> = forests
            .iter()
            .map(|f| jtuple_to_btuple(&forest_to_jtuple(f), 3).to_string())
            .collect();
        assert_eq!(bs, ["000", "001", "002", "010", "011"]);
        assert_eq!(forest_to_jtuple(&Forest::empty(2, 1)), JTuple(vec![0]));
    }

    #[test]
    fn btuple_enumeration_small() {
        let got: Vec<String> = enumerate_btuples(2, 3, 1)
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(got, ["000", "001", "002", "010", "011"]);
        assert_eq!(enumerate_btuples(4, 1, 1), vec![BTuple(vec![0])]);
        assert_eq!(enumerate_btuples(2, 0, 1), vec![BTuple(vec![])]);
    }

    #[test]
    fn unary_and_nullary_cases() {
        // m = 1: a single chain; J = (d).
        let fs = enumerate_forests(1, 4, 1);
        assert_eq!(fs.len(), 1);
        assert_eq!(forest_to_jtuple(&fs[0]), JTuple(vec![4]));
        assert!(is_valid_jtuple(&JTuple(vec![4]), 1, 4, 1));
        assert!(!is_valid_jtuple(&JTuple(vec![3]), 1, 4, 1));
        // m = 0: trees are empty or a bare root.
        assert_eq!(enumerate_forests(0, 1, 1).len(), 1);
        assert!(enumerate_forests(0, 2, 1).is_empty());
        assert_eq!(enumerate_forests(0, 2, 3).len(), 3);
        assert!(enumerate_btuples(0, 2, 1).is_empty());
    }

    #[test]
    fn jtuple_rejects_garbage() {
        assert!(jtuple_to_forest(&JTuple(vec![1, 1, 3, 3]), 2, 3, 1).is_err());
        assert!(jtuple_to_forest(&JTuple(vec![3, 3, 3]), 2, 3, 1).is_err());
        assert!(btuple_to_jtuple(&BTuple(vec![2, 0]), 2, 1).is_err());
    }

    #[test]
    fn json_word_lists_round_trip() {
        let f = tree(&["", "1", "12"]);
        let lists = f.to_word_lists();
        assert_eq!(lists, vec![vec!["".to_string(), "1".into(), "12".into()]]);
        assert_eq!(Forest::from_word_lists(2, &lists).unwrap(), f);
    }
}
