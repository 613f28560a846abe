//! Symbolic layer for the constraint-system construction: multivariate
//! polynomials over `B = Z/mZ`, ring elements with unknown B-coordinates,
//! and skew polynomials with symbolic coefficients.
//!
//! Unknowns are the B-coordinates of the non-leading coefficients of `g`
//! and `hbar`; everything an endomorphism or derivation does to them is
//! B-linear, so the parity-check entries become polynomial expressions in
//! those unknowns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::RingMap;
use crate::ring::{Ring, RingElement};
use crate::skew::{SkewContext, SkewPoly};

/// Sparse multivariate polynomial over `Z/mZ`. Exponent vectors all have
/// the same length (the ambient variable count); zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiPoly {
    pub m: u32,
    pub nvars: usize,
    /// exponent vector -> coefficient in [1, m)
    pub terms: BTreeMap<Vec<u16>, u32>,
}

pub(crate) fn is_prime(m: u32) -> bool {
    m >= 2 && (2..m).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

impl MultiPoly {
    pub fn zero(m: u32, nvars: usize) -> MultiPoly {
        MultiPoly {
            m,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: u32, nvars: usize, c: u32) -> MultiPoly {
        let mut p = MultiPoly::zero(m, nvars);
        if c % m != 0 {
            p.terms.insert(vec![0; nvars], c % m);
        }
        p
    }

    pub fn var(m: u32, nvars: usize, i: usize) -> MultiPoly {
        let mut expo = vec![0u16; nvars];
        expo[i] = 1;
        let mut p = MultiPoly::zero(m, nvars);
        p.terms.insert(expo, 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (possibly 0).
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.iter().all(|&x| x == 0))
                .map(|(_, &c)| c),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    fn insert_term(&mut self, expo: Vec<u16>, c: u32) {
        let c = c % self.m;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(expo);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = (*o.get() + c) % self.m;
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!((self.m, self.nvars), (other.m, other.nvars));
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.insert_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.m, self.nvars);
        for (e, &c) in &self.terms {
            out.terms.insert(e.clone(), self.m - c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.m, self.nvars);
        for (e, &t) in &self.terms {
            let v = (t * (c % self.m)) % self.m;
            if v != 0 {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!((self.m, self.nvars), (other.m, other.nvars));
        let mut out = MultiPoly::zero(self.m, self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let expo: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(expo, ca * cb);
            }
        }
        out
    }

    /// Reduce exponents with the field equations `x^p = x` (so
    /// `e >= 1` maps to `((e-1) mod (p-1)) + 1`). Only valid when the
    /// modulus is prime; a no-op otherwise.
    pub fn field_reduced(&self) -> MultiPoly {
        if !is_prime(self.m) {
            return self.clone();
        }
        let p = self.m as u16;
        let mut out = MultiPoly::zero(self.m, self.nvars);
        for (e, &c) in &self.terms {
            let expo: Vec<u16> = e
                .iter()
                .map(|&x| if x == 0 { 0 } else { (x - 1) % (p - 1) + 1 })
                .collect();
            out.insert_term(expo, c);
        }
        out
    }

    pub fn eval(&self, assignment: &[u32]) -> u32 {
        debug_assert_eq!(assignment.len(), self.nvars);
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut t = c as u64;
            for (i, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    t = (t * assignment[i] as u64) % self.m as u64;
                }
            }
            acc = (acc + t) % self.m as u64;
        }
        acc as u32
    }

    /// Substitute a concrete value for one variable.
    pub fn substitute(&self, var: usize, value: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.m, self.nvars);
        for (e, &c) in &self.terms {
            let mut t = c as u64;
            for _ in 0..e[var] {
                t = (t * value as u64) % self.m as u64;
            }
            if t == 0 {
                continue;
            }
            let mut expo = e.clone();
            expo[var] = 0;
            out.insert_term(expo, t as u32);
        }
        out
    }

    /// Render with the given variable names, highest monomial first in
    /// plain lexicographic exponent order.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, &c) in self.terms.iter().rev() {
            let mut t = String::new();
            let is_const = e.iter().all(|&x| x == 0);
            if c != 1 || is_const {
                let _ = write!(t, "{c}");
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !t.is_empty() {
                    t.push('*');
                }
                t.push_str(&names[i]);
                if x > 1 {
                    let _ = write!(t, "^{x}");
                }
            }
            parts.push(t);
        }
        parts.join(" + ")
    }
}

/// Ring element with polynomial B-coordinates: `Σ coords[i] · a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymElement {
    pub coords: Vec<MultiPoly>,
}

impl SymElement {
    pub fn zero(ring: &Ring, nvars: usize) -> SymElement {
        SymElement {
            coords: vec![MultiPoly::zero(ring.characteristic(), nvars); ring.rank()],
        }
    }

    pub fn from_constant(ring: &Ring, nvars: usize, e: &RingElement) -> SymElement {
        SymElement {
            coords: e
                .coords
                .iter()
                .map(|&c| MultiPoly::constant(ring.characteristic(), nvars, c))
                .collect(),
        }
    }

    /// The unknown element `y = Σ_j var(start+j) · a_j`.
    pub fn from_vars(ring: &Ring, nvars: usize, start: usize) -> SymElement {
        SymElement {
            coords: (0..ring.rank())
                .map(|j| MultiPoly::var(ring.characteristic(), nvars, start + j))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `Some(element)` when every coordinate is constant.
    pub fn as_constant(&self) -> Option<RingElement> {
        let coords: Option<Vec<u32>> = self.coords.iter().map(|p| p.as_constant()).collect();
        coords.map(RingElement::new)
    }

    pub fn add(&self, other: &SymElement) -> SymElement {
        SymElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SymElement) -> SymElement {
        SymElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Product using the structure constants, exponent-reduced when B is a
    /// prime field.
    pub fn mul(&self, ring: &Ring, other: &SymElement) -> SymElement {
        let m = ring.characteristic();
        let nvars = self.coords[0].nvars;
        let s = ring.rank();
        let mut coords = vec![MultiPoly::zero(m, nvars); s];
        for i in 0..s {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..s {
                if other.coords[j].is_zero() {
                    continue;
                }
                let prod = self.coords[i].mul(&other.coords[j]);
                for (k, coord) in coords.iter_mut().enumerate() {
                    let mu = ring.structure_constant(i, j, k);
                    if mu != 0 {
                        *coord = coord.add(&prod.scale(mu));
                    }
                }
            }
        }
        SymElement {
            coords: coords.into_iter().map(|c| c.field_reduced()).collect(),
        }
    }

    /// Apply an endomorphism or derivation coordinate-wise: the map is
    /// B-linear, so `map(Σ P_i a_i) = Σ_j (Σ_i P_i · γ_{i,j}) a_j` with
    /// `γ_{i,j}` the B-coordinates of the basis images.
    pub fn apply_map(&self, ring: &Ring, map: &RingMap) -> SymElement {
        let m = ring.characteristic();
        let nvars = self.coords[0].nvars;
        let s = ring.rank();
        let mut coords = vec![MultiPoly::zero(m, nvars); s];
        for (i, p) in self.coords.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let image = &map.images[i];
            for (j, coord) in coords.iter_mut().enumerate() {
                if image.coords[j] != 0 {
                    *coord = coord.add(&p.scale(image.coords[j]));
                }
            }
        }
        SymElement { coords }
    }

    pub fn eval(&self, assignment: &[u32]) -> RingElement {
        RingElement::new(self.coords.iter().map(|p| p.eval(assignment)).collect())
    }
}

/// Skew polynomial with symbolic coefficients, low degree first. The
/// coefficient list is kept at its constructed length; trailing symbolic
/// zeros are only trimmed when literally zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymSkewPoly {
    ctx: Arc<SkewContext>,
    pub coeffs: Vec<SymElement>,
}

impl SymSkewPoly {
    pub fn from_coeffs(ctx: &Arc<SkewContext>, mut coeffs: Vec<SymElement>) -> SymSkewPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SymSkewPoly {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    pub fn zero(ctx: &Arc<SkewContext>) -> SymSkewPoly {
        SymSkewPoly {
            ctx: Arc::clone(ctx),
            coeffs: Vec::new(),
        }
    }

    pub fn from_concrete(p: &SkewPoly, nvars: usize) -> SymSkewPoly {
        let ctx = p.ctx();
        SymSkewPoly {
            ctx: Arc::clone(ctx),
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| SymElement::from_constant(&ctx.ring, nvars, c))
                .collect(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize, nvars: usize) -> SymElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| SymElement::zero(&self.ctx.ring, nvars))
    }

    pub fn add(&self, other: &SymSkewPoly) -> SymSkewPoly {
        let nvars = self.nvars().max(other.nvars());
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeff(i, nvars).add(&other.coeff(i, nvars)))
            .collect();
        SymSkewPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &SymSkewPoly) -> SymSkewPoly {
        let nvars = self.nvars().max(other.nvars());
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeff(i, nvars).sub(&other.coeff(i, nvars)))
            .collect();
        SymSkewPoly::from_coeffs(&self.ctx, coeffs)
    }

    fn nvars(&self) -> usize {
        self.coeffs.first().map_or(0, |c| c.coords[0].nvars)
    }

    /// `X * p` via the symbolic commutation rule.
    pub fn times_x(&self) -> SymSkewPoly {
        let ring = &self.ctx.ring;
        let nvars = self.nvars();
        let mut coeffs = vec![SymElement::zero(ring, nvars); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = c.apply_map(ring, &self.ctx.theta);
            let d = c.apply_map(ring, &self.ctx.delta);
            coeffs[j + 1] = coeffs[j + 1].add(&t);
            coeffs[j] = coeffs[j].add(&d);
        }
        SymSkewPoly::from_coeffs(&self.ctx, coeffs)
    }

    /// Left scale by a symbolic ring element.
    pub fn scale(&self, a: &SymElement) -> SymSkewPoly {
        let ring = &self.ctx.ring;
        SymSkewPoly::from_coeffs(
            &self.ctx,
            self.coeffs.iter().map(|c| a.mul(ring, c)).collect(),
        )
    }

    pub fn multiply(&self, other: &SymSkewPoly) -> SymSkewPoly {
        let mut acc = SymSkewPoly::zero(&self.ctx);
        let mut shifted = other.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = shifted.times_x();
            }
            if !c.is_zero() {
                acc = acc.add(&shifted.scale(c));
            }
        }
        acc
    }

    /// Right division by a divisor with a concrete invertible leading
    /// coefficient. Variables in the divisor's lower coefficients are fine;
    /// a symbolic leading coefficient is not.
    pub fn right_divide(&self, g: &SymSkewPoly) -> Result<(SymSkewPoly, SymSkewPoly)> {
        let ring = &self.ctx.ring;
        let nvars = self.nvars().max(g.nvars());
        let g_deg = g.degree().ok_or(Error::NonInvertibleLead)?;
        let g_lead = g.coeffs[g_deg]
            .as_constant()
            .ok_or(Error::SymbolicLead)?;
        let g_lead_inv = ring.inverse(&g_lead).ok_or(Error::NonInvertibleLead)?;
        let mut r = self.clone();
        let mut q = SymSkewPoly::zero(&self.ctx);
        while r.degree().is_some_and(|d| d >= g_deg) {
            let d = r.degree().unwrap();
            let shift = d - g_deg;
            let scalar = SymElement::from_constant(
                ring,
                nvars,
                &self.ctx.theta.apply_pow(ring, &g_lead_inv, shift),
            );
            let c = r.coeffs[d].mul(ring, &scalar);
            let mut term_coeffs = vec![SymElement::zero(ring, nvars); shift];
            term_coeffs.push(c);
            let term = SymSkewPoly::from_coeffs(&self.ctx, term_coeffs);
            q = q.add(&term);
            let prod = term.multiply(g);
            r = r.sub(&prod);
            // The top term cancels exactly; enforce it so a symbolic
            // cancellation failure cannot loop forever.
            if r.degree().is_some_and(|rd| rd >= d) {
                let mut coeffs = r.coeffs;
                coeffs.truncate(d);
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                debug_assert!(false, "leading term did not cancel in symbolic division");
                r = SymSkewPoly {
                    ctx: Arc::clone(&self.ctx),
                    coeffs,
                };
            }
        }
        Ok((q, r))
    }

    pub fn eval(&self, assignment: &[u32]) -> SkewPoly {
        SkewPoly::from_coeffs(
            &self.ctx,
            self.coeffs
                .iter()
                .map(|c| c.eval(assignment))
                .collect(),
        )
    }
}

/// The polynomial constraint system for one choice of `hbar_k`: unknowns
/// are the B-coordinates of `g_0..g_{n-k-1}` and `hbar_0..hbar_{k-1}`,
/// with g-variables first (supporting elimination orders for `g`).
#[derive(Debug)]
pub struct ConstraintSystem {
    pub ctx: Arc<SkewContext>,
    pub n: usize,
    pub k: usize,
    pub nvars: usize,
    pub names: Vec<String>,
    pub hbar_k: RingElement,
    /// Remainder-zero and dual-containment constraints; field equations
    /// `y^p - y` appended when B is a prime field.
    pub polys: Vec<MultiPoly>,
}

impl ConstraintSystem {
    /// Reconstruct `(g, hbar)` from an assignment of the unknowns.
    pub fn solution_to_polys(&self, assignment: &[u32]) -> (SkewPoly, SkewPoly) {
        let ring = &self.ctx.ring;
        let s = ring.rank();
        let coeff = |base: usize| {
            RingElement::new((0..s).map(|j| assignment[base + j] % ring.characteristic()).collect())
        };
        let mut g_coeffs: Vec<RingElement> =
            (0..self.n - self.k).map(|i| coeff(i * s)).collect();
        g_coeffs.push(ring.one());
        let g = SkewPoly::from_coeffs(&self.ctx, g_coeffs);
        let h_base = (self.n - self.k) * s;
        let mut h_coeffs: Vec<RingElement> =
            (0..self.k).map(|i| coeff(h_base + i * s)).collect();
        h_coeffs.push(self.hbar_k.clone());
        let hbar = SkewPoly::from_coeffs(&self.ctx, h_coeffs);
        (g, hbar)
    }

    /// One polynomial per line, for debugging and cross-tool comparison.
    pub fn dump(&self) -> String {
        self.polys
            .iter()
            .map(|p| p.format(&self.names))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Symbolic generic `g` (monic, degree n−k) and `hbar` (leading
/// coefficient `hbar_k`, degree k) over the standard variable layout.
fn generic_g_hbar(
    ctx: &Arc<SkewContext>,
    n: usize,
    k: usize,
    hbar_k: &RingElement,
    nvars: usize,
) -> (SymSkewPoly, SymSkewPoly) {
    let ring = &ctx.ring;
    let s = ring.rank();
    let mut g_coeffs: Vec<SymElement> = (0..n - k)
        .map(|i| SymElement::from_vars(ring, nvars, i * s))
        .collect();
    g_coeffs.push(SymElement::from_constant(ring, nvars, &ring.one()));
    let h_base = (n - k) * s;
    let mut h_coeffs: Vec<SymElement> = (0..k)
        .map(|i| SymElement::from_vars(ring, nvars, h_base + i * s))
        .collect();
    h_coeffs.push(SymElement::from_constant(ring, nvars, hbar_k));
    (
        SymSkewPoly::from_coeffs(ctx, g_coeffs),
        SymSkewPoly::from_coeffs(ctx, h_coeffs),
    )
}

/// Build the Algorithm-1 constraint system for one unit `hbar_k`:
/// (a) field equations when B is a prime field, (b) the remainder of the
/// right division of `f = g·hbar` by `g` must vanish, and (c) every entry
/// of `(σ(M))ᵀ·M` must vanish, where row `i` of `M` holds the
/// coefficients of `X^{i-1}·hbar mod f`.
pub fn build_constraint_system(
    ctx: &Arc<SkewContext>,
    sigma: Option<&RingMap>,
    n: usize,
    k: usize,
    hbar_k: &RingElement,
) -> Result<ConstraintSystem> {
    let ring = &ctx.ring;
    let s = ring.rank();
    let m = ring.characteristic();
    if k == 0 || k >= n {
        return Err(Error::BadCode(format!("need 0 < k < n, got n={n}, k={k}")));
    }
    if ring.inverse(hbar_k).is_none() {
        return Err(Error::NonInvertibleLead);
    }
    if let Some(sig) = sigma {
        crate::maps::validate_sigma(ring, sig)?;
    }
    let nvars = s * n; // s(n−k) g-vars + s·k hbar-vars
    let mut names = Vec::with_capacity(nvars);
    for i in 0..n - k {
        for j in 1..=s {
            names.push(format!("g{i}_{j}"));
        }
    }
    for i in 0..k {
        for j in 1..=s {
            names.push(format!("h{i}_{j}"));
        }
    }

    let (g, hbar) = generic_g_hbar(ctx, n, k, hbar_k, nvars);
    let f = g.multiply(&hbar);
    let mut polys: Vec<MultiPoly> = Vec::new();

    // (b) remainder constraints: g must right-divide f.
    let (_, r) = f.right_divide(&g)?;
    for c in &r.coeffs {
        for p in &c.coords {
            if !p.is_zero() {
                polys.push(p.clone());
            }
        }
    }

    // The leading coefficient of f is concrete; a monic f is required for
    // the code construction, so reject hbar_k that cannot give one.
    let f_lead = f.coeffs[n]
        .as_constant()
        .expect("leading coefficient of f contains no variable");
    if f_lead != ring.one() {
        return Err(Error::BadCode(format!(
            "f = g*hbar has leading coefficient {}, not 1",
            ring.format_element(&f_lead)
        )));
    }

    // (c) dual-containment: rows of M are X^{i-1}·hbar mod f.
    let mut rows: Vec<Vec<SymElement>> = Vec::with_capacity(n);
    let mut p = hbar.clone();
    for i in 0..n {
        if i > 0 {
            p = p.times_x();
        }
        let (_, rem) = p.right_divide(&f)?;
        rows.push((0..n).map(|j| rem.coeff(j, nvars)).collect());
    }
    let sig_rows: Vec<Vec<SymElement>> = match sigma {
        Some(sig) if !sig.is_identity(ring) => rows
            .iter()
            .map(|row| row.iter().map(|e| e.apply_map(ring, sig)).collect())
            .collect(),
        _ => rows.clone(),
    };
    // Entry (a, b) of (σ(M))ᵀ·M = Σ_t σ(M)[t][a] · M[t][b].
    for a in 0..n {
        for b in 0..n {
            let mut acc = SymElement::zero(ring, nvars);
            for t in 0..n {
                acc = acc.add(&sig_rows[t][a].mul(ring, &rows[t][b]));
            }
            for coord in &acc.coords {
                let coord = coord.field_reduced();
                if !coord.is_zero() {
                    polys.push(coord);
                }
            }
        }
    }

    // (a) field equations y^p − y when B is a prime field.
    if is_prime(m) {
        for v in 0..nvars {
            let y = MultiPoly::var(m, nvars, v);
            let mut yp = y.clone();
            for _ in 1..m {
                yp = yp.mul(&y);
            }
            polys.push(yp.sub(&y));
        }
    }

    polys.sort();
    polys.dedup();
    polys.retain(|p| !p.is_zero());
    Ok(ConstraintSystem {
        ctx: Arc::clone(ctx),
        n,
        k,
        nvars,
        names,
        hbar_k: hbar_k.clone(),
        polys,
    })
}
