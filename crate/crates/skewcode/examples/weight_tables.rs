//! Weight enumerators of individual codes and aggregated best-distance
//! tables over all (theta, delta) contexts of a ring.

use std::sync::Arc;

use skewcode::code::{CodeSpec, DEFAULT_BUDGET};
use skewcode::maps::{derivation_by_name, endomorphism_by_name, hermitian_involutions};
use skewcode::ring::builtin_ring;
use skewcode::search::{best_distance_cell, format_distance_cell, SearchEngine};
use skewcode::skew::{parse_poly, SkewContext};

fn main() -> skewcode::Result<()> {
    // One code, several weights.
    let ring = Arc::new(builtin_ring("F2v")?);
    let theta = endomorphism_by_name(&ring, "theta2")?;
    let delta = derivation_by_name(&ring, &theta, "delta2")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;
    let g = parse_poly(&ctx, "X^2 + vX + v")?;
    if let Ok(code) = CodeSpec::from_generator(&ctx, 4, g, None) {
        for weight in ["hamming", "lee", "bachoc"] {
            let counts = code.weight_enumerator(weight, DEFAULT_BUDGET)?;
            let dist = code.min_distance(weight, DEFAULT_BUDGET)?;
            println!(
                "{} [4,2] {weight}: enumerator {:?}, min distance {dist}",
                code.g.format(),
                counts
            );
        }
    }

    // Euclidean best-distance cells over all contexts of F2v; the empty
    // set means no dual-containing code exists at those parameters.
    println!("\nF2v Euclidean best (hamming, lee, bachoc):");
    for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 3), (6, 4)] {
        let cell = best_distance_cell(
            &ring,
            None,
            n,
            k,
            &["hamming", "lee", "bachoc"],
            SearchEngine::Groebner,
            DEFAULT_BUDGET,
        )?;
        println!("  [{n},{k}]: {}", format_distance_cell(&cell));
    }

    // A Hermitian cell for comparison.
    let sigma = hermitian_involutions(&ring)
        .into_iter()
        .find(|m| m.order == Some(2))
        .unwrap();
    let cell = best_distance_cell(
        &ring,
        Some(&sigma),
        4,
        2,
        &["hamming", "lee", "bachoc"],
        SearchEngine::Groebner,
        DEFAULT_BUDGET,
    )?;
    println!("\nF2v Hermitian [4,2]: {}", format_distance_cell(&cell));
    Ok(())
}
