//! Test whether the dual of a dual-containing code is itself a cyclic
//! module code, i.e. generated by a single monic polynomial of degree k.

use std::sync::Arc;

use skewcode::code::{CodeSpec, DEFAULT_BUDGET};
use skewcode::maps::{derivation_by_name, endomorphism_by_name};
use skewcode::ring::builtin_ring;
use skewcode::search::{dual_is_cyclic, find_dual_containing, SearchEngine};
use skewcode::skew::SkewContext;

fn main() -> skewcode::Result<()> {
    let ring = Arc::new(builtin_ring("F2v")?);

    for (theta_name, delta_name, n, k) in [
        ("theta2", "delta2", 4usize, 3usize),
        ("theta3", "delta3", 6, 4),
    ] {
        let theta = endomorphism_by_name(&ring, theta_name)?;
        let delta = derivation_by_name(&ring, &theta, delta_name)?;
        let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;
        let res = find_dual_containing(&ctx, None, n, k, SearchEngine::Groebner, DEFAULT_BUDGET)?;
        println!("{} [{n},{k}]:", ctx.label());
        for found in &res.codes {
            let code = CodeSpec::from_generator(&ctx, n, found.g.clone(), None)?;
            match dual_is_cyclic(&code, None, DEFAULT_BUDGET)? {
                Some(gperp) => println!(
                    "  g = {:<20} dual IS cyclic, generated by {}",
                    found.g.format(),
                    gperp.format()
                ),
                None => println!("  g = {:<20} dual is NOT a cyclic module code", found.g.format()),
            }
        }
        println!();
    }
    Ok(())
}
