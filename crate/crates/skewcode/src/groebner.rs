//! Buchberger's algorithm over prime fields plus a solution enumerator
//! for the zero-dimensional systems produced by the constraint builder.
//!
//! The Groebner machinery requires `B = F_p`; characteristic-4 rings use
//! the exhaustive assignment engine instead.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::symbolic::{is_prime, MultiPoly};

/// Monomial order on exponent vectors. `Lex` (the default) treats the
/// first variable as most significant, which makes lex bases eliminate
/// the g-variables first in the constraint-system layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().map(|&x| x as u32).sum();
                let db: u32 = b.iter().map(|&x| x as u32).sum();
                da.cmp(&db).then_with(|| {
                    // Ties: the vector whose last differing exponent is
                    // smaller is the larger monomial.
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// Generators over a prime field with a fixed monomial order.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    pub p: u32,
    pub nvars: usize,
    pub order: MonomialOrder,
    pub gens: Vec<MultiPoly>,
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p.
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn leading_term<'a>(p: &'a MultiPoly, order: MonomialOrder) -> Option<(&'a Vec<u16>, u32)> {
    p.terms
        .iter()
        .max_by(|(ea, _), (eb, _)| order.compare(ea, eb))
        .map(|(e, &c)| (e, c))
}

fn divides(e: &[u16], by: &[u16]) -> bool {
    e.iter().zip(by).all(|(x, y)| x >= y)
}

impl IdealBasis {
    pub fn new(p: u32, nvars: usize, order: MonomialOrder, gens: Vec<MultiPoly>) -> Result<IdealBasis> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        debug_assert!(gens.iter().all(|g| g.m == p && g.nvars == nvars));
        Ok(IdealBasis {
            p,
            nvars,
            order,
            gens,
        })
    }
}

/// Full normal form: no monomial of the result is divisible by a leading
/// monomial of the basis.
pub fn reduce(poly: &MultiPoly, basis: &IdealBasis) -> MultiPoly {
    let p = basis.p;
    let leads: Vec<(Vec<u16>, u32)> = basis
        .gens
        .iter()
        .filter_map(|g| leading_term(g, basis.order).map(|(e, c)| (e.clone(), c)))
        .collect();
    let mut r = poly.clone();
    'outer: loop {
        // Scan monomials from largest down; reduce the first reducible one.
        let mut monomials: Vec<(Vec<u16>, u32)> =
            r.terms.iter().map(|(e, &c)| (e.clone(), c)).collect();
        monomials.sort_by(|(a, _), (b, _)| basis.order.compare(b, a));
        for (expo, coeff) in &monomials {
            for (g, (le, lc)) in basis.gens.iter().zip(&leads) {
                if !divides(expo, le) {
                    continue;
                }
                // r -= (coeff / lc) * (expo / le) * g
                let factor_expo: Vec<u16> = expo.iter().zip(le).map(|(x, y)| x - y).collect();
                let factor_coeff = (*coeff as u64 * inv_mod_p(*lc, p) as u64 % p as u64) as u32;
                let mut mono = MultiPoly::zero(p, r.nvars);
                mono.terms.insert(factor_expo, factor_coeff);
                r = r.sub(&mono.mul(g));
                continue 'outer;
            }
        }
        return r;
    }
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder, p: u32) -> MultiPoly {
    let (ef, cf) = leading_term(f, order).expect("nonzero");
    let (eg, cg) = leading_term(g, order).expect("nonzero");
    let lcm: Vec<u16> = ef.iter().zip(eg).map(|(a, b)| *a.max(b)).collect();
    let mut mf = MultiPoly::zero(p, f.nvars);
    mf.terms.insert(
        lcm.iter().zip(ef).map(|(l, e)| l - e).collect(),
        inv_mod_p(cf, p),
    );
    let mut mg = MultiPoly::zero(p, g.nvars);
    mg.terms.insert(
        lcm.iter().zip(eg).map(|(l, e)| l - e).collect(),
        inv_mod_p(cg, p),
    );
    mf.mul(f).sub(&mg.mul(g))
}

/// Reduced Groebner basis via Buchberger with deterministic normal pair
/// selection. With the field equations among the generators, the result
/// is `{1}` exactly when the system has no solution in `B^nvars`.
pub fn buchberger(input: &IdealBasis) -> Result<IdealBasis> {
    if !is_prime(input.p) {
        return Err(Error::NonPrimeModulus(input.p));
    }
    let p = input.p;
    let order = input.order;
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in &input.gens {
        if !g.is_zero() {
            basis.push(g.clone());
        }
    }
    basis.sort();
    basis.dedup();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let pair_key = |basis: &[MultiPoly], (i, j): (usize, usize)| {
        let (ei, _) = leading_term(&basis[i], order).unwrap();
        let (ej, _) = leading_term(&basis[j], order).unwrap();
        let lcm: Vec<u16> = ei.iter().zip(ej).map(|(a, b)| *a.max(b)).collect();
        let deg: u32 = lcm.iter().map(|&x| x as u32).sum();
        (deg, lcm, i, j)
    };
    while !pairs.is_empty() {
        // Normal strategy: smallest lcm degree first, ties broken
        // lexicographically for reproducibility.
        pairs.sort_by_key(|&pr| pair_key(&basis, pr));
        let (i, j) = pairs.remove(0);
        let (ei, _) = leading_term(&basis[i], order).unwrap();
        let (ej, _) = leading_term(&basis[j], order).unwrap();
        // Coprime leading monomials always reduce to zero (first
        // Buchberger criterion).
        if ei.iter().zip(ej).all(|(a, b)| *a.min(b) == 0) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order, p);
        let current = IdealBasis {
            p,
            nvars: input.nvars,
            order,
            gens: basis.clone(),
        };
        let r = reduce(&s, &current);
        if !r.is_zero() {
            for t in 0..basis.len() {
                pairs.push((t, basis.len()));
            }
            basis.push(r);
        }
    }

    // Auto-reduce: replace each generator by its normal form against the
    // others. Elements are withdrawn and reduced one at a time so that a
    // zero normal form is always justified by polynomials that remain in
    // the basis (reducing all elements in one simultaneous pass could
    // discard several mutually-reducing generators at once and shrink
    // the ideal).
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < basis.len() {
            let g = basis.remove(i);
            let rest = IdealBasis {
                p,
                nvars: input.nvars,
                order,
                gens: basis.clone(),
            };
            let r = reduce(&g, &rest);
            if r.is_zero() {
                changed = true;
            } else {
                if r != g {
                    changed = true;
                }
                basis.insert(i, r);
                i += 1;
            }
        }
        basis.sort();
        basis.dedup();
        if !changed {
            break;
        }
    }
    for g in &mut basis {
        let (_, lc) = leading_term(g, order).unwrap();
        if lc != 1 {
            *g = g.scale(inv_mod_p(lc, p));
        }
    }
    basis.sort();
    Ok(IdealBasis {
        p,
        nvars: input.nvars,
        order,
        gens: basis,
    })
}

/// True when the basis is exactly `{1}` (inconsistent system).
pub fn is_trivial(basis: &IdealBasis) -> bool {
    basis.gens.len() == 1 && basis.gens[0].as_constant().is_some_and(|c| c != 0)
}

/// Solution-set engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveEngine {
    /// Branch on variables, substituting and pruning on contradictions;
    /// prime modulus only.
    GroebnerBranch,
    /// Evaluate every assignment in `m^nvars`; any modulus.
    Exhaustive,
}

/// All common zeros of the system in `B^nvars`, sorted.
pub fn enumerate_solutions(
    polys: &[MultiPoly],
    m: u32,
    nvars: usize,
    engine: SolveEngine,
    budget: u128,
) -> Result<Vec<Vec<u32>>> {
    match engine {
        SolveEngine::Exhaustive => {
            let total = (m as u128)
                .checked_pow(nvars as u32)
                .unwrap_or(u128::MAX);
            if total > budget {
                return Err(Error::BudgetExceeded {
                    size: total,
                    budget,
                });
            }
            let mut sols: Vec<Vec<u32>> = (0..total as u64)
                .into_par_iter()
                .filter_map(|idx| {
                    let mut t = idx;
                    let assignment: Vec<u32> = (0..nvars)
                        .map(|_| {
                            let v = (t % m as u64) as u32;
                            t /= m as u64;
                            v
                        })
                        .collect();
                    polys
                        .iter()
                        .all(|p| p.eval(&assignment) == 0)
                        .then_some(assignment)
                })
                .collect();
            sols.sort();
            Ok(sols)
        }
        SolveEngine::GroebnerBranch => {
            if !is_prime(m) {
                return Err(Error::NonPrimeModulus(m));
            }
            let mut sols = Vec::new();
            let mut assignment = vec![0u32; nvars];
            branch(polys, m, nvars, 0, &mut assignment, &mut sols);
            sols.sort();
            Ok(sols)
        }
    }
}

fn branch(
    polys: &[MultiPoly],
    m: u32,
    nvars: usize,
    var: usize,
    assignment: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    // Contradiction and completion checks on the current partial system.
    let mut pending = Vec::new();
    for p in polys {
        match p.as_constant() {
            Some(0) => {}
            Some(_) => return,
            None => pending.push(p.clone()),
        }
    }
    if var == nvars {
        debug_assert!(pending.is_empty());
        out.push(assignment.clone());
        return;
    }
    // Unit propagation: a polynomial `c·x_v` with all earlier variables
    // substituted forces x_v = 0 whenever only the single-variable
    // monomial remains; more general single-variable polynomials are
    // handled by the trial loop below pruning all but the roots.
    for value in 0..m {
        assignment[var] = value;
        let next: Vec<MultiPoly> = pending.iter().map(|p| p.substitute(var, value)).collect();
        branch(&next, m, nvars, var + 1, assignment, out);
    }
    assignment[var] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{derivation_by_name, endomorphism_by_name};
    use crate::ring::builtin_ring;
    use crate::skew::SkewContext;
    use crate::symbolic::build_constraint_system;
    use std::sync::Arc;

    fn var(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(2, n, i)
    }

    #[test]
    fn reduce_examples() {
        let x = var(2, 0);
        let y = var(2, 1);
        let basis = IdealBasis::new(2, 2, MonomialOrder::Lex, vec![y.clone()]).unwrap();
        assert!(reduce(&x.mul(&y).add(&y), &basis).is_zero());
        // x^2 + x reduces to 0 modulo x^2 - x (char 2: same polynomial).
        let fe = x.mul(&x).sub(&x);
        let basis = IdealBasis::new(2, 2, MonomialOrder::Lex, vec![fe]).unwrap();
        assert!(reduce(&x.mul(&x).add(&x), &basis).is_zero());
    }

    #[test]
    fn buchberger_examples() {
        let x = var(2, 0);
        let y = var(2, 1);
        let gb = buchberger(
            &IdealBasis::new(2, 2, MonomialOrder::Lex, vec![x.add(&y), y.clone()]).unwrap(),
        )
        .unwrap();
        assert_eq!(gb.gens, vec![y.clone(), x.clone()]);
        let gb = buchberger(
            &IdealBasis::new(
                2,
                2,
                MonomialOrder::Lex,
                vec![x.clone(), x.add(&MultiPoly::constant(2, 2, 1))],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(is_trivial(&gb));
    }

    #[test]
    fn groebner_properties_on_random_f2_systems() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as u32
        };
        for _ in 0..30 {
            let nvars = 3;
            let mut gens = Vec::new();
            for _ in 0..3 {
                let mut p = MultiPoly::zero(2, nvars);
                for _ in 0..4 {
                    let expo: Vec<u16> = (0..nvars).map(|_| (next() % 2) as u16).collect();
                    let mut mono = MultiPoly::zero(2, nvars);
                    mono.terms.insert(expo, 1);
                    p = p.add(&mono);
                }
                if !p.is_zero() {
                    gens.push(p);
                }
            }
            // Field equations keep the variety inside F2^3.
            for v in 0..nvars {
                let y = var(nvars, v);
                gens.push(y.mul(&y).sub(&y));
            }
            let basis = IdealBasis::new(2, nvars, MonomialOrder::Lex, gens.clone()).unwrap();
            let gb = buchberger(&basis).unwrap();
            // Every generator reduces to zero modulo the basis.
            for g in &gens {
                assert!(reduce(g, &gb).is_zero());
            }
            // All S-polynomials of the basis reduce to zero.
            for i in 0..gb.gens.len() {
                for j in 0..i {
                    let s = s_polynomial(&gb.gens[i], &gb.gens[j], gb.order, 2);
                    assert!(reduce(&s, &gb).is_zero());
                }
            }
            // Trivial basis iff no solutions.
            let sols =
                enumerate_solutions(&gens, 2, nvars, SolveEngine::Exhaustive, 1 << 20).unwrap();
            assert_eq!(is_trivial(&gb), sols.is_empty());
            // Engines agree.
            let branch_sols =
                enumerate_solutions(&gens, 2, nvars, SolveEngine::GroebnerBranch, 1 << 20)
                    .unwrap();
            assert_eq!(sols, branch_sols);
        }
    }

    #[test]
    fn grevlex_order_is_a_valid_alternative() {
        let x = var(2, 0);
        let y = var(2, 1);
        // x > y^2 under lex, y^2 > x under grevlex.
        let ex = vec![1u16, 0];
        let ey2 = vec![0u16, 2];
        assert_eq!(MonomialOrder::Lex.compare(&ex, &ey2), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.compare(&ex, &ey2), Ordering::Less);
        let gens = vec![x.add(&y), y.mul(&y).sub(&y)];
        let lex = buchberger(&IdealBasis::new(2, 2, MonomialOrder::Lex, gens.clone()).unwrap())
            .unwrap();
        let grev =
            buchberger(&IdealBasis::new(2, 2, MonomialOrder::GrevLex, gens.clone()).unwrap())
                .unwrap();
        // Same variety either way.
        for basis in [&lex, &grev] {
            let sols =
                enumerate_solutions(&basis.gens, 2, 2, SolveEngine::Exhaustive, 1 << 10).unwrap();
            assert_eq!(sols, vec![vec![0, 0], vec![1, 1]]);
        }
    }

    #[test]
    fn solution_enumeration_examples() {
        let x = var(1, 0);
        let fe = x.mul(&x).sub(&x);
        let sols = enumerate_solutions(&[fe], 2, 1, SolveEngine::GroebnerBranch, 1 << 10).unwrap();
        assert_eq!(sols, vec![vec![0], vec![1]]);

        let x = var(2, 0);
        let y = var(2, 1);
        let gens = vec![
            x.add(&y).add(&MultiPoly::constant(2, 2, 1)),
            x.mul(&y),
            x.mul(&x).sub(&x),
            y.mul(&y).sub(&y),
        ];
        for engine in [SolveEngine::GroebnerBranch, SolveEngine::Exhaustive] {
            let sols = enumerate_solutions(&gens, 2, 2, engine, 1 << 10).unwrap();
            assert_eq!(sols, vec![vec![0, 1], vec![1, 0]]);
        }
    }

    #[test]
    fn non_prime_modulus_is_rejected() {
        let x = MultiPoly::var(4, 1, 0);
        assert!(matches!(
            IdealBasis::new(4, 1, MonomialOrder::Lex, vec![x.clone()]),
            Err(Error::NonPrimeModulus(4))
        ));
        assert!(matches!(
            enumerate_solutions(&[x.clone()], 4, 1, SolveEngine::GroebnerBranch, 1 << 10),
            Err(Error::NonPrimeModulus(4))
        ));
        // The exhaustive engine accepts characteristic 4.
        let sols = enumerate_solutions(&[x], 4, 1, SolveEngine::Exhaustive, 1 << 10).unwrap();
        assert_eq!(sols, vec![vec![0]]);
    }

    #[test]
    fn budget_is_enforced() {
        let x = var(1, 0);
        assert!(matches!(
            enumerate_solutions(&[x], 2, 30, SolveEngine::Exhaustive, 1 << 20),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn inconsistent_5_3_system_has_trivial_basis() {
        // The [5,3] Euclidean search over F2v finds nothing; the
        // constraint system is inconsistent for every unit hbar_k (the
        // only unit of F2v is 1).
        let ring = Arc::new(builtin_ring("F2v").unwrap());
        for theta_name in ["theta1", "theta2", "theta3", "theta4"] {
            let theta = endomorphism_by_name(&ring, theta_name).unwrap();
            for delta in crate::maps::enumerate_derivations(&ring, &theta).unwrap() {
                let ctx = SkewContext::new(Arc::clone(&ring), theta.clone(), delta).unwrap();
                let sys = build_constraint_system(&ctx, None, 5, 3, &ring.one()).unwrap();
                let basis =
                    IdealBasis::new(2, sys.nvars, MonomialOrder::Lex, sys.polys.clone()).unwrap();
                let gb = buchberger(&basis).unwrap();
                assert!(is_trivial(&gb), "{}", ctx.label());
                let sols = enumerate_solutions(
                    &sys.polys,
                    2,
                    sys.nvars,
                    SolveEngine::GroebnerBranch,
                    1 << 20,
                )
                .unwrap();
                assert!(sols.is_empty(), "{}", ctx.label());
            }
        }
    }

    #[test]
    fn algorithm_system_engines_agree() {
        let ring = Arc::new(builtin_ring("F2v").unwrap());
        let theta = endomorphism_by_name(&ring, "theta2").unwrap();
        let delta = derivation_by_name(&ring, &theta, "delta2").unwrap();
        let ctx = SkewContext::new(Arc::clone(&ring), theta, delta).unwrap();
        let sys = build_constraint_system(&ctx, None, 4, 3, &ring.one()).unwrap();
        let a = enumerate_solutions(&sys.polys, 2, sys.nvars, SolveEngine::Exhaustive, 1 << 20)
            .unwrap();
        let b = enumerate_solutions(
            &sys.polys,
            2,
            sys.nvars,
            SolveEngine::GroebnerBranch,
            1 << 20,
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}
