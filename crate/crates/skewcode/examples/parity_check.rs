//! Construct a cyclic module code C = Rg/Rf, print its generator
//! matrix, M-matrix, and parity check, and test dual containment.

use std::sync::Arc;

use skewcode::code::{CodeSpec, DEFAULT_BUDGET};
use skewcode::maps::{derivation_by_name, endomorphism_by_name};
use skewcode::ring::builtin_ring;
use skewcode::skew::{parse_poly, SkewContext};

fn main() -> skewcode::Result<()> {
    let ring = Arc::new(builtin_ring("F2v")?);
    let theta = endomorphism_by_name(&ring, "theta3")?;
    let delta = derivation_by_name(&ring, &theta, "delta3")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;

    let g = parse_poly(&ctx, "X^2 + X + v + 1")?;
    let code = CodeSpec::from_generator(&ctx, 6, g, None)?;
    println!(
        "[{}, {}] code over {} with g = {}, f = {}, hbar = {}",
        code.n,
        code.k,
        ctx.label(),
        code.g.format(),
        code.f.format(),
        code.hbar.format()
    );

    println!("\nGenerator matrix (row i = X^i * g):");
    println!("{}", code.generator_matrix().format(&ring));
    println!("\nM-matrix (row i = X^(i-1) * hbar mod f):");
    println!("{}", code.m_matrix().format(&ring));
    println!("\nParity check H (transpose of the last n-k columns of M):");
    println!("{}", code.parity_check().format(&ring));

    // G * H^T = 0 and the dual-containment test (sigma(M))^T * M = 0.
    let gh = code
        .generator_matrix()
        .mul(&ring, &code.parity_check().transpose());
    println!("\nG * H^T is zero: {}", gh.is_zero(&ring));
    println!(
        "dual-containing (Euclidean): {}",
        code.is_dual_containing(None)?
    );

    // Encode a message and confirm membership via the M-matrix kernel.
    let msg: Vec<_> = (0..code.k).map(|i| ring.element(i % ring.order())).collect();
    let word = code.encode(&msg)?;
    let rendered: Vec<String> = word.iter().map(|e| ring.format_element(e)).collect();
    println!("\nencoded ({}) -> [{}]", code.k, rendered.join(", "));
    println!("membership check: {}", code.is_codeword(&word)?);
    println!("codebook size: {}", code.codewords(DEFAULT_BUDGET)?.len());
    Ok(())
}
