//! Finite commutative unitary rings presented as free modules over their
//! prime subring `B = Z/mZ`, with multiplication given by structure
//! constants on a basis `a_1, ..., a_s` (where `a_1 = 1`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Presentation of a finite commutative ring: characteristic `m`, rank `s`
/// over the prime subring, basis labels and structure constants
/// `a_i * a_j = sum_k mu[i][j][k] a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub name: String,
    pub characteristic: u32,
    pub rank: usize,
    pub basis: Vec<String>,
    pub mu: Vec<Vec<Vec<u32>>>,
    /// Optional per-element weight tables (indexed by element index),
    /// e.g. "lee", "bachoc", "euclidean". Hamming is always available.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, Vec<u32>>,
}

/// Element of a ring, stored as its coordinate vector over `B`, each
/// coordinate reduced into `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    pub coords: Vec<u32>,
}

impl RingElement {
    pub fn new(coords: Vec<u32>) -> Self {
        RingElement { coords }
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Elements are ordered by their index `sum coords[i] * m^i`, i.e. by
/// coordinates compared from the highest basis generator down.
impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.iter().rev().cmp(other.coords.iter().rev())
    }
}

/// A validated ring context. Immutable after construction; all element
/// operations are pure.
#[derive(Debug)]
pub struct Ring {
    spec: RingSpec,
    order: usize,
    units: OnceLock<Vec<RingElement>>,
    inverses: OnceLock<Vec<Option<usize>>>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Ring {}

impl Ring {
    /// Validate a presentation and build the ring context.
    ///
    /// Checks that `mu` is symmetric (commutativity), that the induced
    /// multiplication is associative on all basis triples and that `a_1`
    /// acts as the identity.
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let m = spec.characteristic;
        let s = spec.rank;
        if m < 2 {
            return Err(Error::BadShape(format!("characteristic {m} < 2")));
        }
        if s < 1 {
            return Err(Error::BadShape("rank must be at least 1".into()));
        }
        if spec.basis.len() != s {
            return Err(Error::BadShape(format!(
                "expected {s} basis labels, got {}",
                spec.basis.len()
            )));
        }
        if spec.mu.len() != s || spec.mu.iter().any(|p| p.len() != s || p.iter().any(|r| r.len() != s)) {
            return Err(Error::BadShape(format!("mu must be a {s}x{s}x{s} array")));
        }
        for plane in &spec.mu {
            for row in plane {
                for &c in row {
                    if c >= m {
                        return Err(Error::BadShape(format!("mu entry {c} not in [0, {m})")));
                    }
                }
            }
        }
        for (name, table) in &spec.weights {
            let order = (m as usize).pow(s as u32);
            if table.len() != order {
                return Err(Error::BadShape(format!(
                    "weight table `{name}` has {} entries, ring has {order} elements",
                    table.len()
                )));
            }
        }
        let order = (m as usize)
            .checked_pow(s as u32)
            .ok_or_else(|| Error::BadShape("ring order overflows".into()))?;
        let ring = Ring {
            spec,
            order,
            units: OnceLock::new(),
            inverses: OnceLock::new(),
        };
        // Commutativity of the structure constants.
        for i in 0..s {
            for j in 0..i {
                if ring.spec.mu[i][j] != ring.spec.mu[j][i] {
                    return Err(Error::NonCommutative { i: i + 1, j: j + 1 });
                }
            }
        }
        // a_1 is the multiplicative identity.
        for i in 0..s {
            if ring.basis_product(0, i) != ring.basis_element(i) {
                return Err(Error::NoIdentity(i + 1));
            }
        }
        // Associativity on all basis triples.
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    let left = ring.mul(&ring.basis_product(i, j), &ring.basis_element(k));
                    let right = ring.mul(&ring.basis_element(i), &ring.basis_product(j, k));
                    if left != right {
                        return Err(Error::NonAssociative {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(ring)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.characteristic
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Number of elements, `m^s`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> RingElement {
        RingElement::new(vec![0; self.spec.rank])
    }

    pub fn one(&self) -> RingElement {
        let mut c = vec![0; self.spec.rank];
        c[0] = 1;
        RingElement::new(c)
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        let mut c = vec![0; self.spec.rank];
        c[i] = 1;
        RingElement::new(c)
    }

    /// Element from a coordinate vector; coordinates are reduced mod `m`.
    pub fn from_coords(&self, coords: &[u32]) -> Result<RingElement> {
        if coords.len() != self.spec.rank {
            return Err(Error::BadShape(format!(
                "expected {} coordinates, got {}",
                self.spec.rank,
                coords.len()
            )));
        }
        let m = self.spec.characteristic;
        Ok(RingElement::new(coords.iter().map(|&c| c % m).collect()))
    }

    /// Element from an integer coordinate vector (signed, arbitrary range).
    pub fn from_ints(&self, coords: &[i64]) -> Result<RingElement> {
        if coords.len() != self.spec.rank {
            return Err(Error::BadShape(format!(
                "expected {} coordinates, got {}",
                self.spec.rank,
                coords.len()
            )));
        }
        let m = self.spec.characteristic as i64;
        Ok(RingElement::new(
            coords.iter().map(|&c| (c.rem_euclid(m)) as u32).collect(),
        ))
    }

    /// Index of an element in the canonical enumeration `sum c_i m^i`.
    pub fn index_of(&self, e: &RingElement) -> usize {
        e.coords_index(self.spec.characteristic)
    }

    /// Inverse of `index_of`.
    pub fn element(&self, mut index: usize) -> RingElement {
        let m = self.spec.characteristic as usize;
        let mut coords = vec![0u32; self.spec.rank];
        for c in coords.iter_mut() {
            *c = (index % m) as u32;
            index /= m;
        }
        RingElement::new(coords)
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    pub fn is_zero(&self, e: &RingElement) -> bool {
        e.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let m = self.spec.characteristic;
        RingElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| (x + y) % m)
                .collect(),
        )
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        let m = self.spec.characteristic;
        RingElement::new(a.coords.iter().map(|&x| (m - x) % m).collect())
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    /// `mu[i][j][k]`: the `a_k`-coordinate of `a_i * a_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.spec.mu[i][j][k]
    }

    /// Multiply by a scalar from the prime subring.
    pub fn scalar_mul(&self, c: u32, a: &RingElement) -> RingElement {
        let m = self.spec.characteristic;
        RingElement::new(a.coords.iter().map(|&x| (x * (c % m)) % m).collect())
    }

    fn basis_product(&self, i: usize, j: usize) -> RingElement {
        RingElement::new(self.spec.mu[i][j].clone())
    }

    /// Bilinear extension of the structure constants; commutative.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let m = self.spec.characteristic as u64;
        let s = self.spec.rank;
        let mut acc = vec![0u64; s];
        for i in 0..s {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..s {
                if b.coords[j] == 0 {
                    continue;
                }
                let c = (a.coords[i] as u64 * b.coords[j] as u64) % m;
                for k in 0..s {
                    acc[k] = (acc[k] + c * self.spec.mu[i][j][k] as u64) % m;
                }
            }
        }
        RingElement::new(acc.into_iter().map(|x| x as u32).collect())
    }

    /// Units, found by exhaustive pairing, sorted by canonical index.
    pub fn units(&self) -> &[RingElement] {
        self.units.get_or_init(|| {
            let one = self.one();
            self.elements()
                .filter(|a| self.elements().any(|b| self.mul(a, &b) == one))
                .collect()
        })
    }

    fn inverse_table(&self) -> &[Option<usize>] {
        self.inverses.get_or_init(|| {
            let one = self.one();
            (0..self.order)
                .map(|i| {
                    let a = self.element(i);
                    (0..self.order).find(|&j| self.mul(&a, &self.element(j)) == one)
                })
                .collect()
        })
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        self.inverse_table()[self.index_of(a)].is_some()
    }

    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        self.inverse_table()[self.index_of(a)].map(|j| self.element(j))
    }

    /// Per-element weight under a named convention. `hamming` is built in;
    /// the others come from the spec's weight tables.
    pub fn element_weight(&self, weight: &str, e: &RingElement) -> Result<u32> {
        if weight == "hamming" {
            return Ok(if self.is_zero(e) { 0 } else { 1 });
        }
        let table = self
            .spec
            .weights
            .get(weight)
            .ok_or_else(|| Error::WeightUndefinedForRing {
                weight: weight.to_string(),
                ring: self.spec.name.clone(),
            })?;
        Ok(table[self.index_of(e)])
    }

    /// Render an element as a sum over basis labels, e.g. `v + 1`, `3u + 3`.
    pub fn format_element(&self, e: &RingElement) -> String {
        let mut out = String::new();
        // Highest basis generator first, constant term last.
        for i in (0..self.spec.rank).rev() {
            let c = e.coords[i];
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if i == 0 {
                let _ = write!(out, "{c}");
            } else if c == 1 {
                out.push_str(&self.spec.basis[i]);
            } else {
                let _ = write!(out, "{c}{}", self.spec.basis[i]);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parse an element from the rendered form, e.g. `v + 1`, `3u+3`, `0`.
    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        let mut acc = self.zero();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            acc = self.add(&acc, &self.parse_term(term)?);
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str) -> Result<RingElement> {
        // A term is an optional decimal scalar followed by an optional
        // basis label: `3u`, `u`, `3`, `0`.
        let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
        let rest = term[digits.len()..].trim();
        let scalar: u32 = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad scalar in `{term}`")))?
        };
        if rest.is_empty() {
            return Ok(self.scalar_mul(scalar, &self.one()));
        }
        let idx = self
            .spec
            .basis
            .iter()
            .position(|b| b == rest)
            .ok_or_else(|| Error::Parse(format!("unknown basis label `{rest}`")))?;
        Ok(self.scalar_mul(scalar, &self.basis_element(idx)))
    }
}

impl RingElement {
    fn coords_index(&self, m: u32) -> usize {
        let mut idx = 0usize;
        for &c in self.coords.iter().rev() {
            idx = idx * m as usize + c as usize;
        }
        idx
    }
}

/// Names of the builtin rings.
pub const BUILTIN_NAMES: &[&str] = &["F2", "F4", "F2v", "F2u", "Z4", "GR42"];

/// Canonical presentations for the rings used throughout.
pub fn builtin(name: &str) -> Result<RingSpec> {
    let spec = match name {
        "F2" => RingSpec {
            name: "F2".into(),
            characteristic: 2,
            rank: 1,
            basis: vec!["1".into()],
            mu: vec![vec![vec![1]]],
            weights: [("lee".to_string(), vec![0, 1])].into_iter().collect(),
        },
        // F4 = F2(a) with a^2 = a + 1.
        "F4" => RingSpec {
            name: "F4".into(),
            characteristic: 2,
            rank: 2,
            basis: vec!["1".into(), "a".into()],
            mu: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![1, 1]],
            ],
            weights: [
                ("lee".to_string(), vec![0, 2, 1, 1]),
                ("euclidean".to_string(), vec![0, 1, 2, 1]),
            ]
            .into_iter()
            .collect(),
        },
        // F2[v]/(v^2 + v): v * v = v.
        "F2v" => RingSpec {
            name: "F2v".into(),
            characteristic: 2,
            rank: 2,
            basis: vec!["1".into(), "v".into()],
            mu: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![0, 1]],
            ],
            weights: [
                ("lee".to_string(), vec![0, 2, 1, 1]),
                ("bachoc".to_string(), vec![0, 1, 2, 2]),
            ]
            .into_iter()
            .collect(),
        },
        // F2[u]/(u^2): u * u = 0.
        "F2u" => RingSpec {
            name: "F2u".into(),
            characteristic: 2,
            rank: 2,
            basis: vec!["1".into(), "u".into()],
            mu: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![0, 0]],
            ],
            weights: [
                ("lee".to_string(), vec![0, 1, 2, 1]),
                ("euclidean".to_string(), vec![0, 1, 4, 1]),
            ]
            .into_iter()
            .collect(),
        },
        "Z4" => RingSpec {
            name: "Z4".into(),
            characteristic: 4,
            rank: 1,
            basis: vec!["1".into()],
            mu: vec![vec![vec![1]]],
            weights: [
                ("lee".to_string(), vec![0, 1, 2, 1]),
                ("euclidean".to_string(), vec![0, 1, 4, 1]),
            ]
            .into_iter()
            .collect(),
        },
        // GR(4,2) = Z4[u]/(u^2 + u + 1): u * u = 3u + 3.
        "GR42" => RingSpec {
            name: "GR42".into(),
            characteristic: 4,
            rank: 2,
            basis: vec!["1".into(), "u".into()],
            mu: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![3, 3]],
            ],
            weights: BTreeMap::new(),
        },
        other => return Err(Error::UnknownRing(other.to_string())),
    };
    Ok(spec)
}

/// Build a builtin ring directly.
pub fn builtin_ring(name: &str) -> Result<Ring> {
    Ring::new(builtin(name)?)
}

/// Load a ring spec from a JSON file.
pub fn load_ring_spec(path: &std::path::Path) -> Result<RingSpec> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Resolve a ring argument: a builtin name, or a path to a spec file.
pub fn resolve_ring(name: &str, file: Option<&std::path::Path>) -> Result<Ring> {
    if let Some(path) = file {
        return Ring::new(load_ring_spec(path)?);
    }
    Ring::new(builtin(name)?)
}
