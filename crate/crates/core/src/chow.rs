//! Presentations of `A*(Hilb_{d,1})` as quotients of `Q[e_1, …, e_d]`.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coha::{kernel_generators, LoopCount};
use crate::error::{Error, Result};
use crate::forest::{enumerate_btuples, poincare_polynomial_codim};
use crate::groebner::{buchberger, GroebnerBasis, MonomialOrder};
use crate::poly::{rat, Basis, Exponent, Rational, SparsePoly};
use crate::symmetric::{is_symmetric, to_elementary, SymmetryGroup};

/// The kernel generators rewritten in `e_1, …, e_d`, zeros dropped.
pub fn kernel_generators_e(m: u32, d: usize) -> Result<Vec<SparsePoly>> {
    let mut out = Vec::new();
    for g in kernel_generators(d, LoopCount(m))? {
        let value = g.element.value();
        if !is_symmetric(value, SymmetryGroup::Full) {
            return Err(Error::invariant(format!(
                "generator for p={}, λ={} is not symmetric: {}",
                g.p, g.lambda, value
            )));
        }
        let e = to_elementary(value)?;
        if !e.is_zero() {
            out.push(e);
        }
    }
    Ok(out)
}

pub fn kernel_ideal(m: u32, d: usize) -> Result<GroebnerBasis> {
    buchberger(&kernel_generators_e(m, d)?, &MonomialOrder::elementary(d))
}

/// Calls `visit` on every monomial of weighted degree at most `max_deg`
/// outside the leading-term ideal.
fn walk_standard(g: &GroebnerBasis, max_deg: Option<u32>, visit: &mut dyn FnMut(&Exponent)) {
    let leads = g.leading_monomials();
    let weights = g.order().weights().to_vec();
    let n = weights.len();
    let bound: Vec<Option<u32>> = (0..n)
        .map(|i| {
            leads
                .iter()
                .filter(|l| l.iter().enumerate().all(|(k, &a)| k == i || a == 0))
                .map(|l| l[i])
                .min()
        })
        .collect();
    let blocked = |e: &[u32]| leads.iter().any(|l| l.iter().zip(e).all(|(a, b)| a <= b));

    fn rec(
        i: usize,
        e: &mut Exponent,
        deg: u32,
        ctx: &(Vec<u32>, Vec<Option<u32>>, Option<u32>),
        blocked: &dyn Fn(&[u32]) -> bool,
        visit: &mut dyn FnMut(&Exponent),
    ) {
        let (weights, bound, max_deg) = ctx;
        if i == weights.len() {
            visit(e);
            return;
        }
        let mut a = 0;
        loop {
            let d = deg + a * weights[i];
            if max_deg.is_some_and(|m| d > m) || bound[i].is_some_and(|b| a >= b) {
                break;
            }
            e[i] = a;
            if blocked(e) {
                break;
            }
            rec(i + 1, e, d, ctx, blocked, visit);
            a += 1;
        }
        e[i] = 0;
    }

    if blocked(&vec![0; n]) {
        return;
    }
    let ctx = (weights, bound, max_deg);
    rec(0, &mut vec![0; n], 0, &ctx, &blocked, visit);
}

/// Whether every variable has a pure power among the leading monomials.
pub fn is_finite_quotient(g: &GroebnerBasis) -> bool {
    if g.is_unit_ideal() {
        return true;
    }
    let leads = g.leading_monomials();
    (0..g.nvars()).all(|i| {
        leads
            .iter()
            .any(|l| l[i] > 0 && l.iter().enumerate().all(|(k, &a)| k == i || a == 0))
    })
}

/// Monomials outside the leading-term ideal, in increasing order, or `None`
/// if there are infinitely many.
pub fn standard_monomials(g: &GroebnerBasis) -> Option<Vec<Exponent>> {
    if !is_finite_quotient(g) {
        return None;
    }
    let mut out = Vec::new();
    walk_standard(g, None, &mut |e| out.push(e.clone()));
    let order = g.order().clone();
    out.sort_by(|a, b| order.cmp(a, b));
    Some(out)
}

/// Dimensions of the weighted-degree components `0..=max_deg` of the quotient.
pub fn hilbert_function(g: &GroebnerBasis, max_deg: u32) -> Vec<usize> {
    let mut dims = vec![0; max_deg as usize + 1];
    let order = g.order().clone();
    walk_standard(g, Some(max_deg), &mut |e| {
        dims[order.degree(e) as usize] += 1
    });
    dims
}

/// The full Hilbert function of a finite-dimensional quotient, trailing zeros
/// removed.
pub fn hilbert_series(g: &GroebnerBasis) -> Option<Vec<usize>> {
    let std = standard_monomials(g)?;
    let mut dims = Vec::new();
    for e in &std {
        let c = g.order().degree(e) as usize;
        if dims.len() <= c {
            dims.resize(c + 1, 0);
        }
        dims[c] += 1;
    }
    Some(dims)
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].recip();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            let (top, bottom) = rows.split_at_mut(i);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                *x -= y * &f;
            }
        }
        r += 1;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernBasisVerdict {
    /// `∏ e_k^{b_{d-k}}` for each B-tuple.
    pub monomials: Vec<Exponent>,
    pub independent: bool,
    pub quotient_dimension: Option<usize>,
    pub is_basis: bool,
    /// Whether the monomials are exactly the standard monomials of the
    /// reduced basis. Recorded, not required.
    pub equals_standard_monomials: bool,
}

pub fn verify_chern_basis_with(g: &GroebnerBasis, m: u32) -> Result<ChernBasisVerdict> {
    let d = g.nvars();
    let monomials: Vec<Exponent> = enumerate_btuples(m, d, 1)
        .iter()
        .map(|b| b.chern_exponents())
        .collect();
    let std = standard_monomials(g);
    let quotient_dimension = std.as_ref().map(Vec::len);
    let independent = match &std {
        Some(std) => {
            let rows = monomials
                .iter()
                .map(|e| {
                    let nf = g.normal_form(&SparsePoly::monomial(d, e.clone(), rat(1)))?;
                    Ok(std.iter().map(|s| nf.coefficient(s)).collect())
                })
                .collect::<Result<Vec<Vec<Rational>>>>()?;
            rank(rows) == monomials.len()
        }
        None => false,
    };
    let equals_standard_monomials = std.as_ref().is_some_and(|s| {
        s.iter().collect::<BTreeSet<_>>() == monomials.iter().collect::<BTreeSet<_>>()
    });
    Ok(ChernBasisVerdict {
        is_basis: independent && quotient_dimension == Some(monomials.len()),
        monomials,
        independent,
        quotient_dimension,
        equals_standard_monomials,
    })
}

/// Whether the B-indexed Chern monomials form a basis of the quotient.
pub fn verify_chern_basis(m: u32, d: usize) -> Result<ChernBasisVerdict> {
    verify_chern_basis_with(&kernel_ideal(m, d)?, m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareVerdict {
    /// `Σ t^{codim S}` over forests, by degree.
    pub forests: Vec<u64>,
    /// The Hilbert function of the quotient.
    pub hilbert: Option<Vec<u64>>,
    pub matches: bool,
}

pub fn verify_poincare_match_with(g: &GroebnerBasis, m: u32) -> PoincareVerdict {
    let forests = poincare_polynomial_codim(m, g.nvars(), 1).trimmed().0;
    let hilbert: Option<Vec<u64>> =
        hilbert_series(g).map(|h| h.into_iter().map(|v| v as u64).collect());
    PoincareVerdict {
        matches: hilbert.as_ref() == Some(&forests),
        forests,
        hilbert,
    }
}

pub fn verify_poincare_match(m: u32, d: usize) -> Result<PoincareVerdict> {
    Ok(verify_poincare_match_with(&kernel_ideal(m, d)?, m))
}

/// Drops generators one at a time, last first, whenever the rest still
/// generate the same ideal. The result is inclusion-minimal but depends on
/// the input order.
pub fn minimal_generators(gens: &[SparsePoly], order: &MonomialOrder) -> Result<Vec<SparsePoly>> {
    let mut keep: Vec<SparsePoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for i in (0..keep.len()).rev() {
        let rest: Vec<SparsePoly> = keep
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        if buchberger(&rest, order)?.contains(&keep[i])? {
            keep.remove(i);
        }
    }
    Ok(keep)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub chern_basis: bool,
    pub poincare_match: bool,
    pub chern_monomials_are_standard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub m: u32,
    pub d: usize,
    pub generators: Vec<String>,
    pub groebner: Vec<String>,
    pub hilbert: Vec<usize>,
    pub standard_monomials: Vec<String>,
    pub verdicts: Verdicts,
}

fn monomial_text(e: &Exponent) -> String {
    SparsePoly::monomial(e.len(), e.clone(), rat(1)).to_text(Basis::E)
}

pub fn presentation_report(m: u32, d: usize) -> Result<PresentationReport> {
    let order = MonomialOrder::elementary(d);
    let gens = kernel_generators_e(m, d)?;
    let g = buchberger(&gens, &order)?;
    let mut minimal = minimal_generators(&gens, &order)?;
    minimal.sort_by(|a, b| {
        let (la, lb) = (
            a.weighted_degree(order.weights()),
            b.weighted_degree(order.weights()),
        );
        la.cmp(&lb)
            .then_with(|| a.to_text(Basis::E).cmp(&b.to_text(Basis::E)))
    });
    let chern = verify_chern_basis_with(&g, m)?;
    let poincare = verify_poincare_match_with(&g, m);
    let std = standard_monomials(&g).unwrap_or_default();
    Ok(PresentationReport {
        m,
        d,
        generators: minimal.iter().map(|p| p.to_text(Basis::E)).collect(),
        groebner: g.polys().iter().map(|p| p.to_text(Basis::E)).collect(),
        hilbert: hilbert_series(&g).unwrap_or_default(),
        standard_monomials: std.iter().map(monomial_text).collect(),
        verdicts: Verdicts {
            chern_basis: chern.is_basis,
            poincare_match: poincare.matches,
            chern_monomials_are_standard: chern.equals_standard_monomials,
        },
    })
}

/// Leading local monomial of `p` (degrevlex in the first `local` variables)
/// and its coefficient as a polynomial in the remaining ones.
fn leading_local_coefficient(p: &SparsePoly, local: usize) -> SparsePoly {
    let order = MonomialOrder::degrevlex(local);
    let lead = p
        .terms()
        .map(|(e, _)| e[..local].to_vec())
        .max_by(|a, b| order.cmp(a, b))
        .unwrap_or_else(|| vec![0; local]);
    let params = p.nvars() - local;
    SparsePoly::from_terms(
        params,
        p.terms()
            .filter(|(e, _)| e[..local] == lead[..])
            .map(|(e, c)| (e[local..].to_vec(), c.clone())),
    )
}

fn evaluate(p: &SparsePoly, values: &[Rational]) -> Rational {
    p.specialize_tail(values).coefficient(&[])
}

/// Generic length of `Q[y_1..y_k]/(polys)` where the first `local` variables
/// are the `y`'s and the rest are parameters. Parameters are drawn from the
/// integers in `[-100, 100]`; each trial computes the quotient dimension and
/// the minimum over finite trials is returned.
pub fn local_multiplicity(
    polys: &[SparsePoly],
    local: usize,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    let nvars = polys
        .first()
        .ok_or_else(|| Error::domain("local_multiplicity needs at least one polynomial"))?
        .nvars();
    if local == 0 || local > nvars {
        return Err(Error::domain(format!(
            "cannot take {local} local variables out of {nvars}"
        )));
    }
    if let Some(p) = polys.iter().find(|p| p.nvars() != nvars) {
        return Err(Error::VariableCount {
            expected: nvars,
            found: p.nvars(),
        });
    }
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let params = nvars - local;
    let leads: Vec<SparsePoly> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| leading_local_coefficient(p, local))
        .collect();
    let order = MonomialOrder::degrevlex(local);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<usize> = None;
    for _ in 0..trials {
        let values = (0..1000)
            .map(|_| {
                (0..params)
                    .map(|_| rat(rng.gen_range(-100..=100)))
                    .collect::<Vec<Rational>>()
            })
            .find(|v| leads.iter().all(|l| !evaluate(l, v).is_zero()))
            .ok_or_else(|| Error::domain("every sample zeroes a leading coefficient"))?;
        let specialized: Vec<SparsePoly> =
            polys.iter().map(|p| p.specialize_tail(&values)).collect();
        let g = buchberger(&specialized, &order)?;
        if let Some(std) = standard_monomials(&g) {
            best = Some(best.map_or(std.len(), |b| b.min(std.len())));
        }
    }
    best.ok_or_else(|| Error::domain("quotient is infinite-dimensional in every trial"))
}
