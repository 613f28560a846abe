//! Unitary endomorphisms, theta-derivations and Hermitian involutions of a
//! finite ring, enumerated from their basis-generator images.
//!
//! Both kinds of map fix the prime subring (an endomorphism sends 1 to 1,
//! a derivation annihilates it), so every map is determined by the images
//! of the basis generators `a_2, ..., a_s` and extends B-linearly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Endomorphism,
    Derivation,
}

/// A ring map stored as basis-generator images plus the full value table
/// over the ring. Immutable value object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingMap {
    pub kind: MapKind,
    /// Canonical label, e.g. `theta2` or `delta3`, assigned by enumeration
    /// order. Maps built directly from images carry a synthesized label.
    pub label: String,
    /// Image of each basis element `a_1, ..., a_s`. For endomorphisms the
    /// image of `a_1` is 1, for derivations it is 0.
    pub images: Vec<RingElement>,
    /// Element index -> image index.
    pub table: Vec<usize>,
    pub is_automorphism: bool,
    /// Order when the map is an automorphism.
    pub order: Option<u32>,
}

impl RingMap {
    pub fn apply(&self, ring: &Ring, e: &RingElement) -> RingElement {
        ring.element(self.table[ring.index_of(e)])
    }

    pub fn apply_index(&self, index: usize) -> usize {
        self.table[index]
    }

    /// Apply the map `times` times.
    pub fn apply_pow(&self, ring: &Ring, e: &RingElement, times: usize) -> RingElement {
        let mut idx = ring.index_of(e);
        for _ in 0..times {
            idx = self.table[idx];
        }
        ring.element(idx)
    }

    pub fn is_identity(&self, ring: &Ring) -> bool {
        (0..ring.order()).all(|i| self.table[i] == i)
    }

    /// Inverse map, when the map is a bijection.
    pub fn inverse(&self, ring: &Ring) -> Option<RingMap> {
        if !self.is_automorphism {
            return None;
        }
        let mut table = vec![0usize; ring.order()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        let images = (0..ring.rank())
            .map(|i| ring.element(table[ring.index_of(&ring.basis_element(i))]))
            .collect();
        Some(RingMap {
            kind: MapKind::Endomorphism,
            label: format!("{}^-1", self.label),
            images,
            table,
            is_automorphism: true,
            order: self.order,
        })
    }

    /// `images(v) = ...` rendering for --show-images style output.
    pub fn describe(&self, ring: &Ring) -> String {
        let parts: Vec<String> = (1..ring.rank())
            .map(|i| {
                format!(
                    "{} -> {}",
                    ring.spec().basis[i],
                    ring.format_element(&self.images[i])
                )
            })
            .collect();
        if parts.is_empty() {
            // Rank-1 ring: the map is determined by its action on 1.
            format!(
                "1 -> {}",
                ring.format_element(&self.images[0])
            )
        } else {
            parts.join(", ")
        }
    }
}

/// B-linear extension of generator images to a full value table.
pub(crate) fn extend_linearly(ring: &Ring, images: &[RingElement]) -> Vec<usize> {
    (0..ring.order())
        .map(|idx| {
            let e = ring.element(idx);
            let mut acc = ring.zero();
            for (i, &c) in e.coords.iter().enumerate() {
                acc = ring.add(&acc, &ring.scalar_mul(c, &images[i]));
            }
            ring.index_of(&acc)
        })
        .collect()
}

pub(crate) fn is_multiplicative(ring: &Ring, table: &[usize]) -> bool {
    // Exhaustive over all pairs; |A| <= 16 for the builtins.
    for a in 0..ring.order() {
        let ea = ring.element(a);
        let ta = ring.element(table[a]);
        for b in 0..ring.order() {
            let eb = ring.element(b);
            let tb = ring.element(table[b]);
            if table[ring.index_of(&ring.mul(&ea, &eb))] != ring.index_of(&ring.mul(&ta, &tb)) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn satisfies_leibniz(ring: &Ring, theta: &RingMap, table: &[usize]) -> bool {
    for a in 0..ring.order() {
        let ea = ring.element(a);
        let da = ring.element(table[a]);
        let ta = ring.element(theta.table[a]);
        for b in 0..ring.order() {
            let eb = ring.element(b);
            let db = ring.element(table[b]);
            let lhs = ring.element(table[ring.index_of(&ring.mul(&ea, &eb))]);
            let rhs = ring.add(&ring.mul(&da, &eb), &ring.mul(&ta, &db));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn automorphism_order(ring: &Ring, table: &[usize]) -> Option<u32> {
    let mut seen = vec![false; ring.order()];
    for &j in table {
        if seen[j] {
            return None; // not injective
        }
        seen[j] = true;
    }
    let mut power: Vec<usize> = table.to_vec();
    let identity: Vec<usize> = (0..ring.order()).collect();
    let mut t = 1u32;
    while power != identity {
        power = power.iter().map(|&j| table[j]).collect();
        t += 1;
    }
    Some(t)
}

/// Iterate all tuples of images for `a_2..a_s` (the image of `a_1` is
/// forced), in canonical index order.
fn image_candidates(ring: &Ring) -> Vec<Vec<usize>> {
    let free = ring.rank() - 1;
    let n = ring.order();
    let total = n.pow(free as u32);
    (0..total)
        .map(|mut t| {
            (0..free)
                .map(|_| {
                    let i = t % n;
                    t /= n;
                    i
                })
                .collect()
        })
        .collect()
}

/// All unitary endomorphisms, labelled `theta1, theta2, ...` with
/// automorphisms listed first, each group sorted by generator images.
pub fn enumerate_endomorphisms(ring: &Ring) -> Vec<RingMap> {
    let mut found: Vec<RingMap> = Vec::new();
    for cand in image_candidates(ring) {
        let mut images = vec![ring.one()];
        images.extend(cand.iter().map(|&i| ring.element(i)));
        let table = extend_linearly(ring, &images);
        if !is_multiplicative(ring, &table) {
            continue;
        }
        let order = automorphism_order(ring, &table);
        found.push(RingMap {
            kind: MapKind::Endomorphism,
            label: String::new(),
            is_automorphism: order.is_some(),
            order,
            images,
            table,
        });
    }
    // Automorphisms first, then proper endomorphisms, each sorted by
    // generator images.
    found.sort_by(|a, b| {
        b.is_automorphism
            .cmp(&a.is_automorphism)
            .then_with(|| a.images.cmp(&b.images))
    });
    for (i, map) in found.iter_mut().enumerate() {
        map.label = format!("theta{}", i + 1);
    }
    found
}

/// All theta-derivations for a fixed endomorphism, sorted by generator
/// images. Labels `delta1, delta2, ...` are ring-wide: a derivation's
/// index is its position among the images that occur as a derivation for
/// *some* endomorphism of the ring, so the same label always denotes the
/// same map regardless of which theta it is paired with.
pub fn enumerate_derivations(ring: &Ring, theta: &RingMap) -> Result<Vec<RingMap>> {
    if theta.kind != MapKind::Endomorphism || !is_multiplicative(ring, &theta.table) {
        return Err(Error::NotEndomorphism);
    }
    let universe = derivation_image_universe(ring);
    let mut found: Vec<RingMap> = Vec::new();
    for cand in image_candidates(ring) {
        let mut images = vec![ring.zero()];
        images.extend(cand.iter().map(|&i| ring.element(i)));
        let table = extend_linearly(ring, &images);
        if !satisfies_leibniz(ring, theta, &table) {
            continue;
        }
        let pos = universe
            .binary_search(&images)
            .expect("derivation image must be in the ring-wide universe");
        found.push(RingMap {
            kind: MapKind::Derivation,
            label: format!("delta{}", pos + 1),
            is_automorphism: false,
            order: None,
            images,
            table,
        });
    }
    found.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(found)
}

/// Sorted generator-image tuples that define a derivation for at least one
/// unitary endomorphism of the ring.
fn derivation_image_universe(ring: &Ring) -> Vec<Vec<RingElement>> {
    let thetas = enumerate_endomorphisms(ring);
    let mut universe: Vec<Vec<RingElement>> = Vec::new();
    for cand in image_candidates(ring) {
        let mut images = vec![ring.zero()];
        images.extend(cand.iter().map(|&i| ring.element(i)));
        let table = extend_linearly(ring, &images);
        if thetas.iter().any(|t| satisfies_leibniz(ring, t, &table)) {
            universe.push(images);
        }
    }
    universe.sort();
    universe
}

/// All beta with `delta(x) = beta x - theta(x) beta` for every x; empty
/// means the derivation is not inner.
pub fn inner_witnesses(ring: &Ring, theta: &RingMap, delta: &RingMap) -> Vec<RingElement> {
    ring.elements()
        .filter(|beta| {
            ring.elements().all(|x| {
                let expect = delta.apply(ring, &x);
                let got = ring.sub(
                    &ring.mul(beta, &x),
                    &ring.mul(&theta.apply(ring, &x), beta),
                );
                expect == got
            })
        })
        .collect()
}

/// Smallest `t >= 1` with `theta^t = id` when theta is an automorphism.
pub fn map_order(ring: &Ring, theta: &RingMap) -> Option<u32> {
    automorphism_order(ring, &theta.table)
}

/// The identity endomorphism.
pub fn identity_endomorphism(ring: &Ring) -> RingMap {
    let images: Vec<RingElement> = (0..ring.rank()).map(|i| ring.basis_element(i)).collect();
    let table = (0..ring.order()).collect();
    RingMap {
        kind: MapKind::Endomorphism,
        label: "id".into(),
        images,
        table,
        is_automorphism: true,
        order: Some(1),
    }
}

/// The zero theta-derivation.
pub fn zero_derivation(ring: &Ring) -> RingMap {
    RingMap {
        kind: MapKind::Derivation,
        label: "0".into(),
        images: vec![ring.zero(); ring.rank()],
        table: vec![ring.index_of(&ring.zero()); ring.order()],
        is_automorphism: false,
        order: None,
    }
}

/// Automorphisms sigma with sigma^2 = id (candidates for the Hermitian
/// inner product), identity included.
pub fn hermitian_involutions(ring: &Ring) -> Vec<RingMap> {
    enumerate_endomorphisms(ring)
        .into_iter()
        .filter(|m| matches!(m.order, Some(1) | Some(2)))
        .collect()
}

/// Check that sigma is an automorphism of order dividing 2.
pub fn validate_sigma(ring: &Ring, sigma: &RingMap) -> Result<()> {
    if !is_multiplicative(ring, &sigma.table) {
        return Err(Error::BadSigma);
    }
    match automorphism_order(ring, &sigma.table) {
        Some(1) | Some(2) => Ok(()),
        _ => Err(Error::BadSigma),
    }
}

/// Resolve an endomorphism by canonical name (`theta2`, `id`) or by an
/// explicit generator-image list like `v->v+1`.
pub fn endomorphism_by_name(ring: &Ring, name: &str) -> Result<RingMap> {
    if name == "id" {
        return Ok(identity_endomorphism(ring));
    }
    if let Some(images) = parse_image_list(ring, name)? {
        let map = endomorphism_from_generator_images(ring, &images)?;
        return Ok(map);
    }
    enumerate_endomorphisms(ring)
        .into_iter()
        .find(|m| m.label == name)
        .ok_or_else(|| Error::UnknownMap(name.to_string()))
}

/// Resolve a derivation for theta by canonical name (`delta3`, `0`) or by
/// an explicit image list.
pub fn derivation_by_name(ring: &Ring, theta: &RingMap, name: &str) -> Result<RingMap> {
    if name == "0" || name == "zero" {
        return Ok(zero_derivation(ring));
    }
    if let Some(images) = parse_image_list(ring, name)? {
        let map = derivation_from_generator_images(ring, theta, &images)?;
        return Ok(map);
    }
    enumerate_derivations(ring, theta)?
        .into_iter()
        .find(|m| m.label == name)
        .ok_or_else(|| Error::UnknownMap(name.to_string()))
}

/// Build and validate an endomorphism from images of `a_2..a_s`.
pub fn endomorphism_from_generator_images(
    ring: &Ring,
    generator_images: &[RingElement],
) -> Result<RingMap> {
    if generator_images.len() != ring.rank() - 1 {
        return Err(Error::BadShape(format!(
            "expected {} generator images",
            ring.rank() - 1
        )));
    }
    let mut images = vec![ring.one()];
    images.extend_from_slice(generator_images);
    let table = extend_linearly(ring, &images);
    if !is_multiplicative(ring, &table) {
        return Err(Error::NotEndomorphism);
    }
    let order = automorphism_order(ring, &table);
    // Reuse the canonical label when this map appears in the enumeration.
    let label = enumerate_endomorphisms(ring)
        .into_iter()
        .find(|m| m.table == table)
        .map(|m| m.label)
        .unwrap_or_else(|| "theta?".into());
    Ok(RingMap {
        kind: MapKind::Endomorphism,
        label,
        is_automorphism: order.is_some(),
        order,
        images,
        table,
    })
}

/// Build and validate a theta-derivation from images of `a_2..a_s`.
pub fn derivation_from_generator_images(
    ring: &Ring,
    theta: &RingMap,
    generator_images: &[RingElement],
) -> Result<RingMap> {
    if generator_images.len() != ring.rank() - 1 {
        return Err(Error::BadShape(format!(
            "expected {} generator images",
            ring.rank() - 1
        )));
    }
    let mut images = vec![ring.zero()];
    images.extend_from_slice(generator_images);
    let table = extend_linearly(ring, &images);
    if !satisfies_leibniz(ring, theta, &table) {
        return Err(Error::NotEndomorphism);
    }
    let label = enumerate_derivations(ring, theta)?
        .into_iter()
        .find(|m| m.table == table)
        .map(|m| m.label)
        .unwrap_or_else(|| "delta?".into());
    Ok(RingMap {
        kind: MapKind::Derivation,
        label,
        is_automorphism: false,
        order: None,
        images,
        table,
    })
}

/// Parse `v->v+1` or `v->v+1,u->0` image syntax; returns None when the
/// text does not look like an image list.
fn parse_image_list(ring: &Ring, text: &str) -> Result<Option<Vec<RingElement>>> {
    if !text.contains("->") {
        return Ok(None);
    }
    let mut images = vec![None; ring.rank() - 1];
    for part in text.split(',') {
        let (label, value) = part
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("bad image `{part}`")))?;
        let label = label.trim();
        let pos = ring.spec().basis[1..]
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{label}`")))?;
        images[pos] = Some(ring.parse_element(value.trim())?);
    }
    images
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .map(Some)
        .ok_or_else(|| Error::Parse("missing generator image".into()))
}
