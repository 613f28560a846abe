//! Enumerate the endomorphisms of a ring and, for each, all of its
//! theta-derivations, flagging inner derivations.

use skewcode::maps::{enumerate_derivations, enumerate_endomorphisms, inner_witnesses};
use skewcode::ring::builtin_ring;

fn main() -> skewcode::Result<()> {
    for name in ["F2v", "F2u", "F4", "GR42"] {
        let ring = builtin_ring(name)?;
        println!("== {name} ==");
        for theta in enumerate_endomorphisms(&ring) {
            let kind = if theta.is_automorphism {
                match theta.order {
                    Some(o) => format!("automorphism of order {o}"),
                    None => "automorphism".to_string(),
                }
            } else {
                "proper endomorphism".to_string()
            };
            println!("{} ({kind}): {}", theta.label, theta.describe(&ring));
            for delta in enumerate_derivations(&ring, &theta)? {
                let witnesses = inner_witnesses(&ring, &theta, &delta);
                let inner = match witnesses.first() {
                    Some(beta) => format!(
                        " inner, e.g. delta(a) = beta*a - theta(a)*beta with beta = {}",
                        ring.format_element(beta)
                    ),
                    None => String::new(),
                };
                println!("  {}: {}{inner}", delta.label, delta.describe(&ring));
            }
        }
        println!();
    }
    Ok(())
}
