//! Arithmetic in the skew polynomial ring A[X; theta, delta], where
//! X*a = theta(a)*X + delta(a): multiplication, right and left division,
//! and two-sided multiples.

use std::sync::Arc;

use skewcode::maps::{derivation_by_name, endomorphism_by_name};
use skewcode::ring::builtin_ring;
use skewcode::skew::{left_multiples, parse_poly, SkewContext, SkewPoly};

fn main() -> skewcode::Result<()> {
    // F2[u]/(u^2) with theta(u) = 0 and delta(u) = u.
    let ring = Arc::new(builtin_ring("F2u")?);
    let theta = endomorphism_by_name(&ring, "theta2")?;
    let delta = derivation_by_name(&ring, &theta, "delta3")?;
    let ctx = SkewContext::new(Arc::clone(&ring), theta, delta)?;
    println!("R = {}", ctx.label());

    // Noncommutativity: X*u vs u*X.
    let u = ring.parse_element("u")?;
    let xu = SkewPoly::x(&ctx).multiply(&SkewPoly::constant(&ctx, u.clone()))?;
    let ux = SkewPoly::constant(&ctx, u).multiply(&SkewPoly::x(&ctx))?;
    println!("X*u = {}   but   u*X = {}", xu.format(), ux.format());

    // A two-sided multiple: f = h*g = g*hbar.
    let g = parse_poly(&ctx, "X^2 + uX + u + 1")?;
    let f = parse_poly(&ctx, "X^4 + (u + 1)X^3 + X + u + 1")?;

    // Right division recovers h with f = h*g and remainder 0.
    let (h, r) = f.right_divide(&g)?;
    println!(
        "{} = ({}) * ({}) + {}",
        f.format(),
        h.format(),
        g.format(),
        r.format()
    );

    // All hbar of degree <= 2 with g*hbar = f (the left-multiple solver).
    println!("hbar with g*hbar = f:");
    for hbar in left_multiples(&f, &g, 2)? {
        println!("  {}", hbar.format());
    }

    // Left division needs theta to be an automorphism; the Frobenius
    // twist on F4 qualifies.
    let f4 = Arc::new(builtin_ring("F4")?);
    let frob = endomorphism_by_name(&f4, "theta2")?;
    let zero = derivation_by_name(&f4, &frob, "delta1")?;
    let fctx = SkewContext::new(Arc::clone(&f4), frob, zero)?;
    let p = parse_poly(&fctx, "X^3 + aX + 1")?;
    let d = parse_poly(&fctx, "X + a")?;
    let (lq, lr) = p.left_divide(&d)?;
    println!(
        "\nIn {}: {} = ({}) * ({}) + {}",
        fctx.label(),
        p.format(),
        d.format(),
        lq.format(),
        lr.format()
    );
    // Verify: d * lq + lr = p.
    let check = d.multiply(&lq)?.add(&lr)?;
    assert_eq!(check, p);
    println!("left-division identity verified");
    Ok(())
}
