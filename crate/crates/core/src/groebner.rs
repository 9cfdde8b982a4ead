//! Buchberger's algorithm over `Q` for weighted degree-reverse-lexicographic
//! orders.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{weighted, Exponent, Rational, SparsePoly};

/// Weighted degrevlex: compare weighted degree, then the monomial with the
/// smaller exponent in the last differing variable is larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn weighted_degrevlex(weights: Vec<u32>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::domain("monomial weights must be positive"));
        }
        Ok(MonomialOrder { weights })
    }

    /// `wt(e_i) = i` on `Q[e_1, …, e_d]`.
    pub fn elementary(d: usize) -> Self {
        MonomialOrder {
            weights: (1..=d as u32).collect(),
        }
    }

    /// Plain degrevlex.
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            weights: vec![1; nvars],
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self, e: &[u32]) -> u32 {
        weighted(e, &self.weights)
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| a.iter().rev().cmp(b.iter().rev()).reverse())
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Terms sorted by decreasing monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ordered {
    terms: Vec<(Exponent, Rational)>,
}

impl Ordered {
    fn from_sparse(p: &SparsePoly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Exponent, Rational)> =
            p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ordered { terms }
    }

    fn to_sparse(&self, nvars: usize) -> SparsePoly {
        SparsePoly::from_terms(nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Exponent {
        &self.terms[0].0
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            let inv = c.recip();
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
        self
    }

    /// `self - c · x^shift · other`, merging in order.
    fn sub_scaled(
        &self,
        c: &Rational,
        shift: &[u32],
        other: &Ordered,
        order: &MonomialOrder,
    ) -> Ordered {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = self.terms.iter().peekable();
        let mut right = other.terms.iter().map(|(e, v)| {
            let ne: Exponent = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            (ne, -(v * c))
        });
        let mut pending = right.next();
        loop {
            match (left.peek(), pending.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(left.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    pending = right.next();
                }
                (Some(l), Some(r)) => match order.cmp(&l.0, &r.0) {
                    Ordering::Greater => out.push(left.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        pending = right.next();
                    }
                    Ordering::Equal => {
                        let (e, v) = left.next().unwrap();
                        let sum = v + &pending.take().unwrap().1;
                        if !sum.is_zero() {
                            out.push((e.clone(), sum));
                        }
                        pending = right.next();
                    }
                },
            }
        }
        Ordered { terms: out }
    }
}

/// Fully reduces `f` modulo `basis` (monic elements).
fn reduce(f: &Ordered, basis: &[&Ordered], order: &MonomialOrder) -> Ordered {
    let mut rem = f.clone();
    let mut out = Vec::new();
    while !rem.is_zero() {
        let lead = rem.lead().clone();
        match basis.iter().find(|g| divides(g.lead(), &lead)) {
            Some(g) => {
                let c = rem.terms[0].1.clone();
                rem = rem.sub_scaled(&c, &quotient(&lead, g.lead()), g, order);
            }
            None => {
                out.push(rem.terms.remove(0));
            }
        }
    }
    Ordered { terms: out }
}

/// A reduced, monic Gröbner basis sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<SparsePoly>,
    ordered: Vec<Ordered>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn polys(&self) -> &[SparsePoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.ordered.iter().map(|g| g.lead().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.ordered
            .iter()
            .any(|g| g.lead().iter().all(|&a| a == 0))
    }

    pub fn normal_form(&self, p: &SparsePoly) -> Result<SparsePoly> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableCount {
                expected: self.nvars(),
                found: p.nvars(),
            });
        }
        let refs: Vec<&Ordered> = self.ordered.iter().collect();
        let f = Ordered::from_sparse(p, &self.order);
        Ok(reduce(&f, &refs, &self.order).to_sparse(self.nvars()))
    }

    pub fn contains(&self, p: &SparsePoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether every generator of `other` lies in this ideal and vice versa.
    pub fn same_ideal(&self, other: &GroebnerBasis) -> Result<bool> {
        for g in other.polys() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in self.polys() {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[SparsePoly], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let n = order.nvars();
    if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::VariableCount {
            expected: n,
            found: g.nvars(),
        });
    }
    let mut all: Vec<Ordered> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let inputs: Vec<Ordered> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Ordered::from_sparse(g, order).monic())
        .collect();
    for f in inputs {
        let refs: Vec<&Ordered> = basis.iter().map(|&i| &all[i]).collect();
        let h = reduce(&f, &refs, order);
        if !h.is_zero() {
            all.push(h.monic());
            update(&all, &mut basis, &mut pairs, order);
        }
    }

    while !pairs.is_empty() {
        let pos = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                order.cmp(&p.lcm, &q.lcm).then((p.i, p.j).cmp(&(q.i, q.j)))
            })
            .expect("non-empty");
        let pair = pairs.swap_remove(pos);
        let (f, g) = (&all[pair.i], &all[pair.j]);
        let s = Ordered { terms: Vec::new() }
            .sub_scaled(&-Rational::one(), &quotient(&pair.lcm, f.lead()), f, order)
            .sub_scaled(&Rational::one(), &quotient(&pair.lcm, g.lead()), g, order);
        let refs: Vec<&Ordered> = basis.iter().map(|&i| &all[i]).collect();
        let h = reduce(&s, &refs, order);
        if !h.is_zero() {
            all.push(h.monic());
            update(&all, &mut basis, &mut pairs, order);
        }
    }

    Ok(interreduce(
        basis.iter().map(|&i| all[i].clone()).collect(),
        order,
    ))
}

/// Gebauer–Möller update for the newest element `all.last()`.
fn update(all: &[Ordered], basis: &mut Vec<usize>, pairs: &mut Vec<Pair>, order: &MonomialOrder) {
    let h = all.len() - 1;
    let lh = all[h].lead();
    let mut fresh: Vec<Pair> = basis
        .iter()
        .map(|&g| Pair {
            i: g,
            j: h,
            lcm: lcm(all[g].lead(), lh),
        })
        .collect();
    fresh.sort_by(|a, b| order.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)));

    // Chain criterion among the new pairs; coprime pairs are kept until the
    // product criterion drops them below.
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in fresh.iter().enumerate() {
        let coprime_p = coprime(all[p.i].lead(), lh);
        let dominated = fresh[idx + 1..]
            .iter()
            .chain(kept.iter())
            .any(|q| divides(&q.lcm, &p.lcm));
        if coprime_p || !dominated {
            kept.push(p.clone());
        }
    }
    kept.retain(|p| !coprime(all[p.i].lead(), lh));

    pairs.retain(|p| {
        !(divides(lh, &p.lcm)
            && lcm(all[p.i].lead(), lh) != p.lcm
            && lcm(all[p.j].lead(), lh) != p.lcm)
    });
    pairs.extend(kept);

    basis.retain(|&g| !divides(lh, all[g].lead()));
    basis.push(h);
}

fn interreduce(mut polys: Vec<Ordered>, order: &MonomialOrder) -> GroebnerBasis {
    let n = order.nvars();
    polys.sort_by(|a, b| order.cmp(a.lead(), b.lead()));
    let mut minimal: Vec<Ordered> = Vec::new();
    for p in polys {
        if !minimal.iter().any(|g| divides(g.lead(), p.lead())) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Ordered> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g)
            .collect();
        reduced.push(reduce(&minimal[i], &others, order).monic());
    }
    GroebnerBasis {
        order: order.clone(),
        polys: reduced.iter().map(|g| g.to_sparse(n)).collect(),
        ordered: reduced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn e(s: &str, n: usize) -> SparsePoly {
        parse_poly(s, Some(n)).unwrap().0
    }

    fn gb(gens: &[&str], n: usize) -> GroebnerBasis {
        let gens: Vec<SparsePoly> = gens.iter().map(|s| e(s, n)).collect();
        buchberger(&gens, &MonomialOrder::elementary(n)).unwrap()
    }

    #[test]
    fn order_examples() {
        let o = MonomialOrder::elementary(3);
        assert_eq!(o.cmp(&[3, 0, 0], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1, 0], &[0, 0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 1], &[2, 0, 0]), Ordering::Greater);
        assert!(MonomialOrder::weighted_degrevlex(vec![1, 0]).is_err());
    }

    #[test]
    fn trivial_ideals() {
        let g = gb(&["e1"], 1);
        assert_eq!(g.polys(), &[e("e1", 1)]);
        let g = gb(&["1"], 2);
        assert_eq!(g.polys(), &[SparsePoly::one(2)]);
        assert!(g.is_unit_ideal());
        let g = gb(&["0"], 2);
        assert!(g.is_empty());
        assert_eq!(g.normal_form(&e("e1 + 3", 2)).unwrap(), e("e1 + 3", 2));
    }

    #[test]
    fn worked_relations() {
        let g = gb(&["e3", "e2^2", "e1^3 - 4*e1*e2", "e1^4"], 3);
        let want: Vec<SparsePoly> = ["e3", "e1^2*e2", "e1^3 - 4*e1*e2", "e2^2"]
            .iter()
            .map(|s| e(s, 3))
            .collect();
        let mut got = g.polys().to_vec();
        got.sort_by_key(|p| p.to_string());
        let mut want_sorted = want.clone();
        want_sorted.sort_by_key(|p| p.to_string());
        assert_eq!(got, want_sorted);
        assert_eq!(g.normal_form(&e("e1^3", 3)).unwrap(), e("4*e1*e2", 3));
        assert_eq!(g.normal_form(&e("e1*e2", 3)).unwrap(), e("e1*e2", 3));
        assert!(g.contains(&e("e1^4", 3)).unwrap());
        assert!(g.normal_form(&e("e1", 2)).is_err());
    }

    #[test]
    fn cyclic_ideal_is_closed() {
        let n = 3;
        let gens = ["e1 + e2 + e3", "e1*e2 + e2*e3 + e1*e3", "e1*e2*e3 - 1"];
        let g = buchberger(
            &gens.iter().map(|s| e(s, n)).collect::<Vec<_>>(),
            &MonomialOrder::degrevlex(n),
        )
        .unwrap();
        for s in gens {
            assert!(g.contains(&e(s, n)).unwrap());
        }
        // every S-polynomial of the output reduces to zero
        let polys = g.polys();
        for a in polys {
            for b in polys {
                let (la, lb) = (lead(a, g.order()), lead(b, g.order()));
                let l = lcm(&la, &lb);
                let s = &a.mul_term(&quotient(&l, &la), &Rational::one())
                    - &b.mul_term(&quotient(&l, &lb), &Rational::one());
                assert!(g.contains(&s).unwrap());
            }
        }
        assert!(!g.is_unit_ideal());
    }

    fn lead(p: &SparsePoly, o: &MonomialOrder) -> Exponent {
        Ordered::from_sparse(p, o).lead().clone()
    }

    #[test]
    fn ideal_equality() {
        let a = gb(&["e1^2", "e2"], 2);
        let b = gb(&["e2 + e1^2", "e2"], 2);
        let c = gb(&["e1", "e2"], 2);
        assert!(a.same_ideal(&b).unwrap());
        assert!(!a.same_ideal(&c).unwrap());
    }
}
