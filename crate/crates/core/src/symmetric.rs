//! Symmetric functions in finitely many variables: elementary, monomial and
//! Schur polynomials, the discriminant, antisymmetrization, and the change of
//! coordinates into elementary symmetric functions.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, Exponent, Rational, SparsePoly};

/// A weakly decreasing sequence of non-negative integers. Trailing zeros are
/// dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The parts padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(len.max(v.len()), 0);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions with at most `rows` parts, each at most `cols`; ordered by size
/// and then lexicographically descending.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    fn rec(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()).expect("decreasing by construction"));
        if prefix.len() == rows {
            return;
        }
        for part in 1..=max {
            prefix.push(part);
            rec(rows, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
    out
}

/// Permutations of `0..n` with their signs, in Heap's-algorithm order.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![(perm.clone(), 1)];
    let mut c = vec![0usize; n];
    let mut sign = 1;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `e_k(x_1, …, x_d)`; zero when `k > d`.
pub fn elementary_symmetric(k: usize, d: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(d);
    if k > d {
        return out;
    }
    for subset in k_subsets(d, k) {
        let mut e = vec![0; d];
        for i in subset {
            e[i] = 1;
        }
        out.add_term(e, Rational::one());
    }
    out
}

/// Increasing `k`-subsets of `0..n`, lexicographic.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in start..n {
            if n - i < k - prefix.len() {
                break;
            }
            prefix.push(i);
            rec(i + 1, n, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Sum of the distinct monomials whose exponent multiset is `lambda`.
pub fn monomial_symmetric(lambda: &Partition, d: usize) -> Result<SparsePoly> {
    if lambda.len() > d {
        return Err(Error::domain(format!("{lambda} has more than {d} parts")));
    }
    let mut exps = lambda.padded(d);
    exps.sort_unstable();
    let mut out = SparsePoly::zero(d);
    loop {
        out.add_term(exps.clone(), Rational::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `∏_{i<j} (x_j - x_i)` over the variables `offset..offset+len` of a ring
/// with `nvars` variables.
fn vandermonde(nvars: usize, offset: usize, len: usize) -> SparsePoly {
    let mut out = SparsePoly::one(nvars);
    for i in offset..offset + len {
        for j in i + 1..offset + len {
            let diff = &SparsePoly::var(nvars, j) - &SparsePoly::var(nvars, i);
            out = &out * &diff;
        }
    }
    out
}

/// `Δ = ∏_{i<j} (x_j - x_i)` in `d` variables.
pub fn discriminant(d: usize) -> SparsePoly {
    vandermonde(d, 0, d)
}

/// `Δ_p(x_1..x_p) · Δ_q(x_{p+1}..x_{p+q})`.
pub fn discriminant_pq(p: usize, q: usize) -> SparsePoly {
    let d = p + q;
    &vandermonde(d, 0, p) * &vandermonde(d, p, q)
}

/// Which permutation group a polynomial is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryGroup {
    Full,
    /// `S_p × S_q` acting on the first `p` and the last `q` variables.
    Young(usize, usize),
}

/// Invariance under the adjacent transpositions generating the group.
pub fn is_symmetric(f: &SparsePoly, group: SymmetryGroup) -> bool {
    let d = f.nvars();
    let blocks: Vec<(usize, usize)> = match group {
        SymmetryGroup::Full => vec![(0, d)],
        SymmetryGroup::Young(p, q) => {
            if p + q != d {
                return false;
            }
            vec![(0, p), (p, q)]
        }
    };
    for (start, len) in blocks {
        for i in start..(start + len).saturating_sub(1) {
            let mut perm: Vec<usize> = (0..d).collect();
            perm.swap(i, i + 1);
            if f.permute(&perm) != *f {
                return false;
            }
        }
    }
    true
}

/// Signed sum `Σ_{w} sign(w) w.f` over permutations of the variables
/// `offset..offset+len`.
fn alternate(f: &SparsePoly, offset: usize, len: usize) -> SparsePoly {
    let d = f.nvars();
    let mut out = SparsePoly::zero(d);
    for (w, sign) in signed_permutations(len) {
        let mut perm: Vec<usize> = (0..d).collect();
        for (i, &wi) in w.iter().enumerate() {
            perm[offset + i] = offset + wi;
        }
        let c = rat(sign);
        for (e, v) in f.permute(&perm).terms() {
            out.add_term(e.clone(), v * &c);
        }
    }
    out
}

/// `ρ(f) = Δ^{-1} Σ_{w ∈ S_d} sign(w) w.f`.
pub fn rho(f: &SparsePoly) -> Result<SparsePoly> {
    let d = f.nvars();
    alternate(f, 0, d)
        .exact_divide(&discriminant(d))
        .map_err(|_| Error::invariant("alternating sum not divisible by the discriminant"))
}

/// `ρ_{p×q}(f) = Δ_{p×q}^{-1} Σ_{τ ∈ S_p × S_q} sign(τ) τ.f`.
pub fn rho_pq(f: &SparsePoly, p: usize, q: usize) -> Result<SparsePoly> {
    if p + q != f.nvars() {
        return Err(Error::VariableCount {
            expected: p + q,
            found: f.nvars(),
        });
    }
    let both = alternate(&alternate(f, 0, p), p, q);
    both.exact_divide(&discriminant_pq(p, q))
        .map_err(|_| Error::invariant("alternating sum not divisible by Δ_p×q"))
}

/// Schur polynomial `s_λ(x_1, …, x_d)` as the bialternant
/// `ρ(x_1^{λ_d} x_2^{λ_{d-1}+1} ⋯ x_d^{λ_1+d-1})`.
pub fn schur(lambda: &Partition, d: usize) -> Result<SparsePoly> {
    if lambda.len() > d {
        return Err(Error::domain(format!("{lambda} has more than {d} parts")));
    }
    let parts = lambda.padded(d);
    let exp: Exponent = (0..d).map(|i| parts[d - 1 - i] + i as u32).collect();
    rho(&SparsePoly::monomial(d, exp, Rational::one()))
}

/// Rewrites a symmetric polynomial in `d` variables as a polynomial in
/// `e_1, …, e_d` by repeatedly cancelling the lex-leading term `c·x^a` with
/// `c · e_1^{a_1-a_2} ⋯ e_d^{a_d}`.
pub fn to_elementary(f: &SparsePoly) -> Result<SparsePoly> {
    if !is_symmetric(f, SymmetryGroup::Full) {
        return Err(Error::domain("to_elementary needs a symmetric polynomial"));
    }
    let d = f.nvars();
    let es: Vec<SparsePoly> = (1..=d).map(|k| elementary_symmetric(k, d)).collect();
    let mut powers: Vec<Vec<SparsePoly>> = vec![vec![SparsePoly::one(d)]; d];
    let mut rem = f.clone();
    let mut out = SparsePoly::zero(d);
    while let Some((a, c)) = rem.lex_leading() {
        let a = a.clone();
        let c = c.clone();
        let e_exp: Exponent = (0..d)
            .map(|k| a[k] - if k + 1 < d { a[k + 1] } else { 0 })
            .collect();
        let mut term = SparsePoly::constant(d, c.clone());
        for (k, &power) in e_exp.iter().enumerate() {
            while powers[k].len() <= power as usize {
                let next = powers[k].last().unwrap() * &es[k];
                powers[k].push(next);
            }
            term = &term * &powers[k][power as usize];
        }
        rem = &rem - &term;
        out.add_term(e_exp, c);
    }
    Ok(out)
}

/// Substitutes `e_k ↦ e_k(x_1, …, x_d)`; inverse of [`to_elementary`].
pub fn expand_elementary(g: &SparsePoly) -> SparsePoly {
    let d = g.nvars();
    let es: Vec<SparsePoly> = (1..=d).map(|k| elementary_symmetric(k, d)).collect();
    g.compose(&es).expect("one image per variable")
}

/// `x_{start+1} ⋯ x_{end}` in a ring of `nvars` variables.
pub(crate) fn product_of_vars(nvars: usize, range: std::ops::Range<usize>) -> SparsePoly {
    let mut e = vec![0; nvars];
    for i in range {
        e[i] = 1;
    }
    SparsePoly::monomial(nvars, e, Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str, n: usize) -> SparsePoly {
        parse_poly(s, Some(n)).unwrap().0
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn permutations_and_signs() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        for (w, s) in &perms {
            let inversions = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| w[i] > w[j])
                .count();
            assert_eq!(*s, if inversions % 2 == 0 { 1 } else { -1 });
        }
        assert_eq!(signed_permutations(0), vec![(vec![], 1)]);
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_symmetric(1, 2), p("x1 + x2", 2));
        assert_eq!(elementary_symmetric(2, 3), p("x1*x2 + x1*x3 + x2*x3", 3));
        assert_eq!(elementary_symmetric(0, 4), SparsePoly::one(4));
        assert!(elementary_symmetric(3, 2).is_zero());
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(
            monomial_symmetric(&part(&[1, 1]), 2).unwrap(),
            p("x1*x2", 2)
        );
        assert_eq!(
            monomial_symmetric(&part(&[2]), 2).unwrap(),
            p("x1^2 + x2^2", 2)
        );
        let m21 = monomial_symmetric(&part(&[2, 1]), 3).unwrap();
        assert_eq!(m21.len(), 6);
        assert!(monomial_symmetric(&part(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(1), SparsePoly::one(1));
        assert_eq!(discriminant(2), p("x2 - x1", 2));
        assert_eq!(
            discriminant(3),
            &(&p("x2 - x1", 3) * &p("x3 - x1", 3)) * &p("x3 - x2", 3)
        );
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&p("x2", 2)).unwrap(), SparsePoly::one(2));
        assert!(rho(&p("x1 + x2", 2)).unwrap().is_zero());
        assert!(rho(&p("x1*x2*x3", 3)).unwrap().is_zero());
        assert_eq!(rho(&p("x2*x3^2", 3)).unwrap(), SparsePoly::one(3));
    }

    #[test]
    fn rho_pq_examples() {
        let b = p("3*x1^2*x2 - x2 + 5", 2);
        assert_eq!(rho_pq(&b, 1, 1).unwrap(), b);
        assert_eq!(rho_pq(&p("x2", 2), 2, 0).unwrap(), SparsePoly::one(2));
        let inv = p("x1 + x2*x3", 3);
        assert!(rho_pq(&inv, 1, 2).unwrap().is_zero());
        assert!(rho_pq(&b, 1, 2).is_err());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur(&part(&[1]), 2).unwrap(), p("x1 + x2", 2));
        assert_eq!(schur(&part(&[1, 1]), 2).unwrap(), p("x1*x2", 2));
        assert_eq!(schur(&part(&[2]), 2).unwrap(), p("x1^2 + x1*x2 + x2^2", 2));
        assert_eq!(schur(&Partition::empty(), 3).unwrap(), SparsePoly::one(3));
    }

    #[test]
    fn symmetry_checks() {
        assert!(is_symmetric(&p("x1 + x2", 2), SymmetryGroup::Full));
        assert!(!is_symmetric(&p("x1", 2), SymmetryGroup::Full));
        assert!(!is_symmetric(
            &p("x1 + x2*x3^2", 3),
            SymmetryGroup::Young(1, 2)
        ));
        assert!(is_symmetric(
            &p("x1*x2 + x1*x3", 3),
            SymmetryGroup::Young(1, 2)
        ));
        assert!(!is_symmetric(&p("x1*x2 + x1*x3", 3), SymmetryGroup::Full));
        assert!(!is_symmetric(&p("x1", 2), SymmetryGroup::Young(1, 2)));
    }

    #[test]
    fn to_elementary_examples() {
        assert_eq!(
            to_elementary(&p("x1^2 + x2^2", 2)).unwrap(),
            p("e1^2 - 2*e2", 2)
        );
        for k in 1..=3 {
            let ek = to_elementary(&elementary_symmetric(k, 3)).unwrap();
            assert_eq!(ek, SparsePoly::var(3, k - 1));
        }
        let e2 = elementary_symmetric(2, 3);
        assert_eq!(to_elementary(&(&e2 * &e2)).unwrap(), p("e2^2", 3));
        assert!(to_elementary(&p("x1", 2)).is_err());
    }

    #[test]
    fn box_partitions() {
        let shown: Vec<String> = partitions_in_box(1, 2)
            .iter()
            .map(|l| l.to_string())
            .collect();
        assert_eq!(shown, ["()", "(1)", "(2)"]);
        let shown: Vec<String> = partitions_in_box(2, 1)
            .iter()
            .map(|l| l.to_string())
            .collect();
        assert_eq!(shown, ["()", "(1)", "(1,1)"]);
        assert_eq!(partitions_in_box(2, 2).len(), 6);
        assert_eq!(partitions_in_box(0, 3).len(), 1);
        assert_eq!(partitions_in_box(3, 3).len(), 20);
    }
}
