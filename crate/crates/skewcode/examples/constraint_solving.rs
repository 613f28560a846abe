//! The symbolic layer behind the Groebner search: build the polynomial
//! constraint system whose zeros are exactly the dual-containing codes,
//! compute a reduced Groebner basis, and enumerate solutions.

use std::sync::Arc;

use skewcode::groebner::{buchberger, enumerate_solutions, IdealBasis, MonomialOrder, SolveEngine};
use skewcode::maps::{derivation_by_name, endomorphism_by_name};
use skewcode::ring::builtin_ring;
use skewcode::skew::SkewContext;
use skewcode::symbolic::build_constraint_system;

fn main() -> skewcode::Result<()> {
    let ring = Arc::new(builtin_ring("F2v")?);
    let theta = endomorphism_by_name(&ring, "theta2")?;
    let delta = derivation_by_name(&ring, &theta, "delta2")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;

    // [4,3] with hbar leading coefficient 1: unknowns are the F2
    // coordinates of g_0 and hbar_0..hbar_2.
    let sys = build_constraint_system(&ctx, None, 4, 3, &ring.one())?;
    println!(
        "constraint system for {} [4,3]: {} variables ({:?}), {} polynomials",
        ctx.label(),
        sys.nvars,
        sys.names,
        sys.polys.len()
    );
    println!("{}\n", sys.dump());

    // A reduced Groebner basis; {1} would mean no solution.
    let basis = IdealBasis::new(2, sys.nvars, MonomialOrder::Lex, sys.polys.clone())?;
    let gb = buchberger(&basis)?;
    println!("reduced Groebner basis ({} elements):", gb.gens.len());
    for p in &gb.gens {
        println!("  {}", p.format(&sys.names));
    }

    // Every zero of the system is a dual-containing code.
    let sols = enumerate_solutions(&sys.polys, 2, sys.nvars, SolveEngine::GroebnerBranch, 1 << 20)?;
    println!("\n{} solution(s):", sols.len());
    for sol in &sols {
        let (g, hbar) = sys.solution_to_polys(sol);
        println!("  g = {:<12} hbar = {}", g.format(), hbar.format());
    }

    // An infeasible case: no [5,3] dual-containing code exists over
    // F2v, so the Groebner basis collapses to {1}.
    let sys = build_constraint_system(&ctx, None, 5, 3, &ring.one())?;
    let basis = IdealBasis::new(2, sys.nvars, MonomialOrder::Lex, sys.polys.clone())?;
    let gb = buchberger(&basis)?;
    println!(
        "\n[5,3] basis is {{1}} (no dual-containing code): {}",
        skewcode::groebner::is_trivial(&gb)
    );
    Ok(())
}
