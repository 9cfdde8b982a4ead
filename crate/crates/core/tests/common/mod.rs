#![allow(dead_code)]

use coha_hilb::coha::CohaElement;
use coha_hilb::poly::{rat, rat_frac, Rational, SparsePoly};
use coha_hilb::symmetric::{monomial_symmetric, partitions_in_box};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_coefficient<R: Rng>(rng: &mut R) -> Rational {
    let num = loop {
        let v = rng.gen_range(-6..=6);
        if v != 0 {
            break v;
        }
    };
    if rng.gen_bool(0.2) {
        rat_frac(num, rng.gen_range(2..=4))
    } else {
        rat(num)
    }
}

/// A few terms with exponents up to `max_exp`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, terms: usize, max_exp: u32) -> SparsePoly {
    let mut p = SparsePoly::zero(nvars);
    for _ in 0..terms {
        let e = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        p.add_term(e, random_coefficient(rng));
    }
    p
}

/// A combination of monomial symmetric functions of a single degree.
pub fn random_symmetric_homogeneous<R: Rng>(rng: &mut R, d: usize, degree: u32) -> SparsePoly {
    let lambdas: Vec<_> = partitions_in_box(d, degree)
        .into_iter()
        .filter(|l| l.size() == degree)
        .collect();
    let mut p = SparsePoly::zero(d);
    for l in lambdas.choose_multiple(rng, 2) {
        p = &p
            + &monomial_symmetric(l, d)
                .unwrap()
                .scale(&random_coefficient(rng));
    }
    if p.is_zero() {
        p = monomial_symmetric(&lambdas[0], d).unwrap();
    }
    p
}

/// A symmetric polynomial with components in several degrees.
pub fn random_symmetric<R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> SparsePoly {
    if d == 0 {
        return SparsePoly::constant(0, random_coefficient(rng));
    }
    let mut p = SparsePoly::zero(d);
    for _ in 0..2 {
        let deg = rng.gen_range(0..=max_degree);
        p = &p + &random_symmetric_homogeneous(rng, d, deg);
    }
    p
}

pub fn random_element<R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> CohaElement {
    CohaElement::new(random_symmetric(rng, d, max_degree)).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, d: usize) -> (Vec<usize>, i64) {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let inversions = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    (perm, if inversions % 2 == 0 { 1 } else { -1 })
}
