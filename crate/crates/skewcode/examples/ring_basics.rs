//! Build finite commutative Frobenius rings from structure constants,
//! do arithmetic, and inspect units and weight functions.

use skewcode::ring::{builtin_ring, Ring, RingSpec, BUILTIN_NAMES};

fn show(ring: &Ring) {
    println!(
        "{}: order {}, characteristic {}, rank {}",
        ring.name(),
        ring.order(),
        ring.characteristic(),
        ring.rank()
    );
    let units: Vec<String> = ring.units().iter().map(|u| ring.format_element(u)).collect();
    println!("  units: {{{}}}", units.join(", "));
}

fn main() -> skewcode::Result<()> {
    for name in BUILTIN_NAMES {
        show(&builtin_ring(name)?);
    }

    // Arithmetic in F2[v]/(v^2+v): v^2 = v, (v+1)v = 0.
    let f2v = builtin_ring("F2v")?;
    let v = f2v.parse_element("v")?;
    let v1 = f2v.parse_element("v+1")?;
    println!(
        "\nIn F2v: v*v = {}, (v+1)*v = {}, v+(v+1) = {}",
        f2v.format_element(&f2v.mul(&v, &v)),
        f2v.format_element(&f2v.mul(&v1, &v)),
        f2v.format_element(&f2v.add(&v, &v1)),
    );

    // Weight functions differ per ring.
    for (ring_name, weight) in [("F2v", "bachoc"), ("F2u", "euclidean"), ("F4", "lee")] {
        let ring = builtin_ring(ring_name)?;
        let values: Vec<String> = ring
            .elements()
            .map(|e| {
                format!(
                    "{}:{}",
                    ring.format_element(&e),
                    ring.element_weight(weight, &e).unwrap()
                )
            })
            .collect();
        println!("{ring_name} {weight} weights: {}", values.join(", "));
    }

    // A custom ring from an explicit specification: Z9 = Z/9Z.
    let z9 = Ring::new(RingSpec {
        name: "Z9".into(),
        characteristic: 9,
        rank: 1,
        basis: vec!["one".into()],
        mu: vec![vec![vec![1]]],
        weights: Default::default(),
    })?;
    show(&z9);
    Ok(())
}
