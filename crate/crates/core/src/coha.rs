//! The Cohomological Hall algebra of the `m`-loop quiver.
//!
//! `H_d` is the ring of symmetric polynomials in `d` variables and the product
//! `H_p ⊗ H_q → H_{p+q}` is the shuffle sum
//!
//! ```text
//! (f*g)(x_1..x_d) = Σ_{I ⊔ J} f(x_I) g(x_J) ∏_{i∈I, j∈J} (x_j - x_i)^{m-1}
//! ```
//!
//! over complementary increasing index sequences. For `m = 0` the kernel has
//! exponent `-1`; the sum is then accumulated over the common denominator `Δ`
//! and divided exactly at the end.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, Basis, PolyJson, Rational, SparsePoly};
use crate::symmetric::{
    discriminant, discriminant_pq, elementary_symmetric, is_symmetric, k_subsets,
    partitions_in_box, product_of_vars, rho, rho_pq, schur, Partition, SymmetryGroup,
};

/// Number of loops of the quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LoopCount(pub u32);

/// An element of `H_d`: a symmetric polynomial in `d` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohaElement {
    d: usize,
    value: SparsePoly,
}

impl CohaElement {
    pub fn new(value: SparsePoly) -> Result<Self> {
        if !is_symmetric(&value, SymmetryGroup::Full) {
            return Err(Error::domain(format!("{value} is not symmetric")));
        }
        Ok(CohaElement {
            d: value.nvars(),
            value,
        })
    }

    /// A scalar in `H_0`.
    pub fn scalar(c: Rational) -> Self {
        CohaElement {
            d: 0,
            value: SparsePoly::constant(0, c),
        }
    }

    pub fn unit() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn value(&self) -> &SparsePoly {
        &self.value
    }

    pub fn into_value(self) -> SparsePoly {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_json(&self) -> CohaJson {
        CohaJson {
            d: self.d,
            poly: self.value.to_json(Basis::X),
        }
    }

    pub fn from_json(json: &CohaJson) -> Result<Self> {
        let (value, _) = SparsePoly::from_json(&json.poly)?;
        if value.nvars() != json.d {
            return Err(Error::VariableCount {
                expected: json.d,
                found: value.nvars(),
            });
        }
        CohaElement::new(value)
    }
}

impl std::fmt::Display for CohaElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[H_{}] {}", self.d, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohaJson {
    pub d: usize,
    pub poly: PolyJson,
}

/// `(d, k)` with `k = (m-1)·C(d,2) - deg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub d: usize,
    pub k: i64,
}

impl std::ops::Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree {
            d: self.d + rhs.d,
            k: self.k + rhs.k,
        }
    }
}

pub fn bidegree(f: &CohaElement, m: LoopCount) -> Result<BiDegree> {
    let ones = vec![1; f.d];
    if f.is_zero() || !f.value.is_homogeneous(&ones) {
        return Err(Error::domain(format!(
            "{f} is not a non-zero homogeneous element"
        )));
    }
    let deg = i64::from(f.value.degree().expect("non-zero"));
    let d = f.d as i64;
    Ok(BiDegree {
        d: f.d,
        k: (i64::from(m.0) - 1) * d * (d - 1) / 2 - deg,
    })
}

/// Sums `h(x_I, x_J) · ∏_{i∈I, j∈J} (x_j - x_i)^{m-1}` over all complementary
/// increasing `I` (size `p`) and `J`, where `h` lives in `d` variables and
/// `h(x_I, x_J)` places `x_I` in the first `p` slots.
pub fn shuffle_sum(h: &SparsePoly, p: usize, m: LoopCount) -> Result<SparsePoly> {
    let d = h.nvars();
    if p > d {
        return Err(Error::domain(format!(
            "block size {p} exceeds {d} variables"
        )));
    }
    let q = d - p;
    let shuffles = k_subsets(d, p);
    if m.0 == 0 {
        // 1/∏(x_j - x_i) = sign(σ) σ.Δ_{p×q} / Δ
        let lifted = h * &discriminant_pq(p, q);
        let mut numer = SparsePoly::zero(d);
        for left in &shuffles {
            let (target, sign) = shuffle_target(left, d);
            let c = rat(sign);
            for (e, v) in lifted.permute(&target).terms() {
                numer.add_term(e.clone(), v * &c);
            }
        }
        return numer
            .exact_divide(&discriminant(d))
            .map_err(|_| Error::invariant("m = 0 shuffle sum is not a polynomial"));
    }
    let mut out = SparsePoly::zero(d);
    for left in &shuffles {
        let (target, _) = shuffle_target(left, d);
        let right: Vec<usize> = target[p..].to_vec();
        let mut kernel = SparsePoly::one(d);
        for &i in left {
            for &j in &right {
                kernel = &kernel * &(&SparsePoly::var(d, j) - &SparsePoly::var(d, i));
            }
        }
        let term = &h.permute(&target) * &kernel.pow(m.0 - 1);
        out = &out + &term;
    }
    Ok(out)
}

/// Shuffle permutation sending slot `a < p` to `left[a]` and the remaining
/// slots to the complement in order, with its sign.
fn shuffle_target(left: &[usize], d: usize) -> (Vec<usize>, i64) {
    let mut target = left.to_vec();
    target.extend((0..d).filter(|i| !left.contains(i)));
    let p = left.len();
    let inversions = left
        .iter()
        .map(|&i| target[p..].iter().filter(|&&j| j < i).count())
        .sum::<usize>();
    (target, if inversions % 2 == 0 { 1 } else { -1 })
}

/// `f(x_1..x_p) · g(x_{p+1}..x_{p+q})`.
fn tensor(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    let (p, q) = (f.nvars(), g.nvars());
    let d = p + q;
    let left = f.relabel(&(0..p).collect::<Vec<_>>(), d);
    let right = g.relabel(&(p..d).collect::<Vec<_>>(), d);
    &left * &right
}

/// The CoHa product `f * g`.
pub fn coha_mul(f: &CohaElement, g: &CohaElement, m: LoopCount) -> Result<CohaElement> {
    let value = shuffle_sum(&tensor(&f.value, &g.value), f.d, m)?;
    if !is_symmetric(&value, SymmetryGroup::Full) {
        return Err(Error::invariant("CoHa product is not symmetric"));
    }
    Ok(CohaElement {
        d: f.d + g.d,
        value,
    })
}

/// `ψ_k`, the monomial `x^k` in `H_1`.
pub fn psi(k: u32) -> CohaElement {
    CohaElement {
        d: 1,
        value: SparsePoly::monomial(1, vec![k], Rational::one()),
    }
}

/// `ψ_{k_1} * ψ_{k_2} * ⋯`, folded left to right.
pub fn psi_product(ks: &[u32], m: LoopCount) -> Result<CohaElement> {
    let (first, rest) = ks
        .split_first()
        .ok_or_else(|| Error::domain("psi_product needs at least one index"))?;
    rest.iter()
        .try_fold(psi(*first), |acc, &k| coha_mul(&acc, &psi(k), m))
}

/// `f^{(p)} = x_{p+1} ⋯ x_d · ∏_{μ ≤ p < ν} (x_ν - x_μ)^m`.
pub fn forbidden_polynomial(p: usize, d: usize, m: LoopCount) -> Result<SparsePoly> {
    if p >= d {
        return Err(Error::domain(format!("need p < d, got p={p}, d={d}")));
    }
    let mut out = product_of_vars(d, p..d);
    let mut delta = SparsePoly::one(d);
    for mu in 0..p {
        for nu in p..d {
            delta = &delta * &(&SparsePoly::var(d, nu) - &SparsePoly::var(d, mu));
        }
    }
    out = &out * &delta.pow(m.0);
    Ok(out)
}

/// `ρ(b · f^{(p)})`, computed by full antisymmetrization over `S_d`.
pub fn tautological_relation(b: &SparsePoly, p: usize, m: LoopCount) -> Result<CohaElement> {
    let d = b.nvars();
    let f = forbidden_polynomial(p, d, m)?;
    CohaElement::new(rho(&(b * &f))?)
}

/// The shuffle expression for the same relation: `ρ_{p×q}(b)` multiplied by
/// `x_{p+1} ⋯ x_d` and pushed through [`shuffle_sum`].
pub fn tautological_relation_shuffle_form(
    b: &SparsePoly,
    p: usize,
    m: LoopCount,
) -> Result<CohaElement> {
    let d = b.nvars();
    if p >= d {
        return Err(Error::domain(format!("need p < d, got p={p}, d={d}")));
    }
    let h = &rho_pq(b, p, d - p)? * &product_of_vars(d, p..d);
    CohaElement::new(shuffle_sum(&h, p, m)?)
}

/// A basis of `Q[x]^{S_p × S_q}` over `Q[x]^{S_{p+q}}`: the Schur polynomials
/// `s_λ(x_1..x_p)` with `λ` in the `p × q` box. Each entry is returned with
/// its partition.
pub fn module_basis_labelled(p: usize, q: usize) -> Vec<(Partition, SparsePoly)> {
    let d = p + q;
    partitions_in_box(p, q as u32)
        .into_iter()
        .map(|lambda| {
            let s = schur(&lambda, p).expect("partition fits p rows");
            let embedded = s.relabel(&(0..p).collect::<Vec<_>>(), d);
            (lambda, embedded)
        })
        .collect()
}

pub fn module_basis(p: usize, q: usize) -> Vec<SparsePoly> {
    module_basis_labelled(p, q)
        .into_iter()
        .map(|(_, s)| s)
        .collect()
}

/// One generator `s_λ(x_1..x_p) * (e_q ∪ 1)` of the kernel ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelGenerator {
    pub p: usize,
    pub lambda: Partition,
    pub element: CohaElement,
}

/// The `2^d - 1` generators `f_{λ,p} * (e_q ∪ 1)`, `p = 0..d-1`.
pub fn kernel_generators(d: usize, m: LoopCount) -> Result<Vec<KernelGenerator>> {
    if d == 0 {
        return Err(Error::domain("kernel generators need d ≥ 1"));
    }
    let mut out = Vec::new();
    for p in 0..d {
        let q = d - p;
        let eq = CohaElement::new(elementary_symmetric(q, q))?;
        for lambda in partitions_in_box(p, q as u32) {
            let f = CohaElement::new(schur(&lambda, p)?)?;
            let element = coha_mul(&f, &eq, m)?;
            out.push(KernelGenerator { p, lambda, element });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::symmetric::monomial_symmetric;

    fn p(s: &str, n: usize) -> SparsePoly {
        parse_poly(s, Some(n)).unwrap().0
    }

    const M0: LoopCount = LoopCount(0);
    const M1: LoopCount = LoopCount(1);
    const M2: LoopCount = LoopCount(2);

    #[test]
    fn two_term_products() {
        assert!(coha_mul(&psi(0), &psi(0), M2).unwrap().is_zero());
        assert_eq!(
            coha_mul(&psi(0), &psi(1), M2).unwrap().value(),
            &p("x1^2 - 2*x1*x2 + x2^2", 2)
        );
        for a in 0..4 {
            let prod = coha_mul(&psi(a), &psi(a), M1).unwrap();
            let m_aa = monomial_symmetric(&Partition::new(vec![a, a]).unwrap(), 2).unwrap();
            assert_eq!(prod.value(), &m_aa.scale(&rat(2)));
        }
    }

    #[test]
    fn nullary_quiver_products() {
        for d in 2..=3u32 {
            let ks: Vec<u32> = (0..d).collect();
            assert_eq!(
                psi_product(&ks, M0).unwrap().value(),
                &SparsePoly::one(d as usize)
            );
        }
        assert_eq!(psi_product(&[0, 2], M0).unwrap().value(), &p("x1 + x2", 2));
        assert!(psi_product(&[1, 1], M0).unwrap().is_zero());
        assert!(psi_product(&[], M0).is_err());
    }

    #[test]
    fn unary_quiver_products() {
        let got = psi_product(&[2, 1], M1).unwrap();
        let want = monomial_symmetric(&Partition::new(vec![2, 1]).unwrap(), 2).unwrap();
        assert_eq!(got.value(), &want);
    }

    #[test]
    fn scalars_act_by_multiplication() {
        let three = CohaElement::scalar(rat(3));
        let f = psi_product(&[0, 1], M2).unwrap();
        assert_eq!(
            coha_mul(&three, &f, M2).unwrap().value(),
            &f.value().scale(&rat(3))
        );
        assert_eq!(coha_mul(&f, &CohaElement::unit(), M2).unwrap(), f);
    }

    #[test]
    fn psi_and_bidegrees() {
        assert_eq!(psi(0).value(), &SparsePoly::one(1));
        assert_eq!(psi(1).value(), &SparsePoly::var(1, 0));
        for m in 0..4 {
            for k in 0..5 {
                assert_eq!(
                    bidegree(&psi(k), LoopCount(m)).unwrap(),
                    BiDegree {
                        d: 1,
                        k: -i64::from(k)
                    }
                );
            }
        }
        assert_eq!(
            bidegree(&CohaElement::unit(), M2).unwrap(),
            BiDegree { d: 0, k: 0 }
        );
        let mixed = CohaElement::new(p("x1 + x2 + 1", 2)).unwrap();
        assert!(bidegree(&mixed, M2).is_err());
    }

    #[test]
    fn forbidden_examples() {
        assert_eq!(forbidden_polynomial(0, 3, M2).unwrap(), p("x1*x2*x3", 3));
        let x = |i| SparsePoly::var(2, i);
        let want = &x(1) * &(&x(1) - &x(0)).pow(2);
        assert_eq!(forbidden_polynomial(1, 2, M2).unwrap(), want);
        let y = |i| SparsePoly::var(3, i);
        let want = &(&y(2) * &(&y(2) - &y(0))) * &(&y(2) - &y(1));
        assert_eq!(forbidden_polynomial(2, 3, M1).unwrap(), want);
        assert!(forbidden_polynomial(3, 3, M1).is_err());
    }

    #[test]
    fn worked_tautological_relation() {
        // yz(y−x)(z−x) + xz(x−y)(z−y) + xy(x−z)(y−z)
        let x = |i| SparsePoly::var(3, i);
        let term = |a: usize, b: usize, c: usize| {
            &(&(&x(b) * &x(c)) * &(&x(b) - &x(a))) * &(&x(c) - &x(a))
        };
        let want = &(&term(0, 1, 2) + &term(1, 0, 2)) + &term(2, 0, 1);
        // x3 is the simplest b with ρ_{1×2}(b) = 1; b = 1 alternates to zero.
        let got = tautological_relation(&SparsePoly::var(3, 2), 1, M2).unwrap();
        assert_eq!(got.value(), &want);
        assert!(tautological_relation(&SparsePoly::one(3), 1, M2)
            .unwrap()
            .is_zero());
        let shuffled = tautological_relation_shuffle_form(&SparsePoly::var(3, 2), 1, M2).unwrap();
        assert_eq!(shuffled.value(), &want);
        for m in 0..3 {
            let r = tautological_relation(&SparsePoly::one(1), 0, LoopCount(m)).unwrap();
            assert_eq!(r.value(), &SparsePoly::var(1, 0));
        }
    }

    #[test]
    fn module_bases() {
        assert_eq!(
            module_basis(1, 2),
            vec![p("1", 3), p("x1", 3), p("x1^2", 3)]
        );
        assert_eq!(
            module_basis(2, 1),
            vec![p("1", 3), p("x1 + x2", 3), p("x1*x2", 3)]
        );
        assert_eq!(module_basis(0, 4), vec![SparsePoly::one(4)]);
        assert_eq!(module_basis(2, 2).len(), 6);
    }

    #[test]
    fn kernel_generator_shapes() {
        let gens = kernel_generators(1, M2).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].element.value(), &SparsePoly::var(1, 0));
        for d in 1..=4 {
            assert_eq!(kernel_generators(d, M1).unwrap().len(), (1 << d) - 1);
        }
        // m = 1: the unit entry for each p is e_q.
        for d in 1..=4 {
            for g in kernel_generators(d, M1).unwrap() {
                if g.lambda.is_empty() {
                    assert_eq!(g.element.value(), &elementary_symmetric(d - g.p, d));
                }
            }
        }
        let g3 = kernel_generators(3, M2).unwrap();
        assert_eq!(g3[0].element.value(), &elementary_symmetric(3, 3));
        assert!(kernel_generators(0, M2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = psi_product(&[1, 2], M2).unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: CohaJson = serde_json::from_str(&j).unwrap();
        assert_eq!(CohaElement::from_json(&back).unwrap(), f);
        assert!(CohaElement::new(p("x1", 2)).is_err());
    }
}
