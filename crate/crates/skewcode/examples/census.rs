//! Census of two-sided multiples: all monic f of degree n with a fixed
//! generator g as both a right divisor (f = h*g) and a left divisor
//! (f = g*hbar), with centrality flags.

use std::sync::Arc;

use skewcode::maps::{derivation_by_name, endomorphism_by_name};
use skewcode::ring::builtin_ring;
use skewcode::search::f_census;
use skewcode::skew::{parse_poly, SkewContext};

fn main() -> skewcode::Result<()> {
    let ring = Arc::new(builtin_ring("F2v")?);
    let theta = endomorphism_by_name(&ring, "theta3")?;
    let delta = derivation_by_name(&ring, &theta, "delta3")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;

    let g = parse_poly(&ctx, "X^2 + X + v + 1")?;
    let census = f_census(&g, 6)?;
    println!(
        "{} monic f of degree 6 with g = {} two-sided:",
        census.len(),
        g.format()
    );
    for rec in &census {
        println!(
            "  f = {}\n    h = {} | {} hbar(s) | central: {}",
            rec.f.format(),
            rec.h.format(),
            rec.hbars.len(),
            rec.central
        );
    }

    // The commutative contrast: with theta = id and delta = 0 every
    // monic multiple of g is two-sided and h = hbar.
    let f4 = Arc::new(builtin_ring("F4")?);
    let ctx = SkewContext::commutative(Arc::clone(&f4));
    let g = parse_poly(&ctx, "X + 1")?;
    let census = f_census(&g, 3)?;
    println!(
        "\ncommutative F4[X], g = X + 1, n = 3: {} multiples, h always in the hbar-set: {}",
        census.len(),
        census.iter().all(|r| r.hbars.contains(&r.h))
    );
    Ok(())
}
