//! Find all dual-containing cyclic module codes for a context, with
//! both search engines, and compare their answers.

use std::sync::Arc;

use skewcode::code::DEFAULT_BUDGET;
use skewcode::maps::{derivation_by_name, endomorphism_by_name, hermitian_involutions};
use skewcode::ring::builtin_ring;
use skewcode::search::{find_dual_containing, SearchEngine};
use skewcode::skew::SkewContext;

fn main() -> skewcode::Result<()> {
    let ring = Arc::new(builtin_ring("F2v")?);

    // Euclidean [4,3] under (theta2, delta2): three codes.
    let theta = endomorphism_by_name(&ring, "theta2")?;
    let delta = derivation_by_name(&ring, &theta, "delta2")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;
    for engine in [SearchEngine::Groebner, SearchEngine::Exhaustive] {
        let res = find_dual_containing(&ctx, None, 4, 3, engine, DEFAULT_BUDGET)?;
        println!(
            "{} [4,3] via {}: {:?} ({} ms)",
            ctx.label(),
            engine.as_str(),
            res.generators(),
            res.elapsed_ms
        );
    }

    // Euclidean [6,4] under (theta3, delta3): four codes, with witness
    // counts showing the many (hbar, f) pairs behind each generator.
    let theta = endomorphism_by_name(&ring, "theta3")?;
    let delta = derivation_by_name(&ring, &theta, "delta3")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;
    let res = find_dual_containing(&ctx, None, 6, 4, SearchEngine::Groebner, DEFAULT_BUDGET)?;
    println!("\n{} [6,4]:", ctx.label());
    for code in &res.codes {
        println!(
            "  g = {} with {} (hbar, f) witnesses",
            code.g.format(),
            code.witnesses.len()
        );
    }

    // Hermitian [4,2]: sigma is the order-2 automorphism v -> v + 1.
    let sigma = hermitian_involutions(&ring)
        .into_iter()
        .find(|m| m.order == Some(2))
        .unwrap();
    println!(
        "\nHermitian inner product with sigma: {}",
        sigma.describe(&ring)
    );
    let theta = endomorphism_by_name(&ring, "theta2")?;
    let delta = derivation_by_name(&ring, &theta, "delta1")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;
    let res = find_dual_containing(&ctx, Some(&sigma), 4, 2, SearchEngine::Groebner, DEFAULT_BUDGET)?;
    println!(
        "{} [4,2] Hermitian dual-containing: {:?}",
        ctx.label(),
        res.generators()
    );
    Ok(())
}
