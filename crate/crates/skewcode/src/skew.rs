//! Skew polynomial arithmetic in `R = A[X; theta, delta]`.
//!
//! Multiplication extends the commutation rule `X a = theta(a) X + delta(a)`
//! by associativity and distributivity. Right division works whenever the
//! divisor has an invertible leading coefficient; left division additionally
//! needs theta to be an automorphism.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{solve_all, ModMatrix};
use crate::maps::{self, RingMap};
use crate::ring::{Ring, RingElement};

/// Shared (ring, theta, delta) context for skew polynomials.
#[derive(Debug)]
pub struct SkewContext {
    pub ring: Arc<Ring>,
    pub theta: RingMap,
    pub delta: RingMap,
}

impl PartialEq for SkewContext {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.theta.table == other.theta.table
            && self.delta.table == other.delta.table
    }
}
impl Eq for SkewContext {}

impl SkewContext {
    /// Validate that theta is a unitary endomorphism and delta is a
    /// theta-derivation, then freeze the context.
    pub fn new(ring: Arc<Ring>, theta: RingMap, delta: RingMap) -> Result<Arc<SkewContext>> {
        if !maps::is_multiplicative(&ring, &theta.table)
            || theta.apply(&ring, &ring.one()) != ring.one()
        {
            return Err(Error::NotEndomorphism);
        }
        if !maps::satisfies_leibniz(&ring, &theta, &delta.table) {
            return Err(Error::NotEndomorphism);
        }
        Ok(Arc::new(SkewContext { ring, theta, delta }))
    }

    /// Commutative context (theta = id, delta = 0).
    pub fn commutative(ring: Arc<Ring>) -> Arc<SkewContext> {
        let theta = maps::identity_endomorphism(&ring);
        let delta = maps::zero_derivation(&ring);
        SkewContext::new(ring, theta, delta).expect("identity context is always valid")
    }

    pub fn label(&self) -> String {
        format!(
            "{}[X;{},{}]",
            self.ring.name(),
            self.theta.label,
            self.delta.label
        )
    }
}

fn same_ctx(a: &Arc<SkewContext>, b: &Arc<SkewContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Skew polynomial: coefficient list indexed by degree, normalized so the
/// last stored coefficient is nonzero (empty list = zero polynomial).
#[derive(Debug, Clone)]
pub struct SkewPoly {
    ctx: Arc<SkewContext>,
    coeffs: Vec<RingElement>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.coeffs == other.coeffs
    }
}
impl Eq for SkewPoly {}

impl SkewPoly {
    pub fn zero(ctx: &Arc<SkewContext>) -> SkewPoly {
        SkewPoly {
            ctx: Arc::clone(ctx),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<SkewContext>) -> SkewPoly {
        SkewPoly::constant(ctx, ctx.ring.one())
    }

    pub fn constant(ctx: &Arc<SkewContext>, c: RingElement) -> SkewPoly {
        SkewPoly::from_coeffs(ctx, vec![c])
    }

    pub fn monomial(ctx: &Arc<SkewContext>, c: RingElement, degree: usize) -> SkewPoly {
        let mut coeffs = vec![ctx.ring.zero(); degree];
        coeffs.push(c);
        SkewPoly::from_coeffs(ctx, coeffs)
    }

    /// `X` as a polynomial.
    pub fn x(ctx: &Arc<SkewContext>) -> SkewPoly {
        SkewPoly::monomial(ctx, ctx.ring.one(), 1)
    }

    pub fn from_coeffs(ctx: &Arc<SkewContext>, mut coeffs: Vec<RingElement>) -> SkewPoly {
        while coeffs.last().is_some_and(|c| ctx.ring.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    /// Build from coordinate vectors, low degree first.
    pub fn from_coord_list(ctx: &Arc<SkewContext>, coords: &[Vec<u32>]) -> Result<SkewPoly> {
        let coeffs = coords
            .iter()
            .map(|c| ctx.ring.from_coords(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(SkewPoly::from_coeffs(ctx, coeffs))
    }

    pub fn to_coord_list(&self) -> Vec<Vec<u32>> {
        self.coeffs.iter().map(|c| c.coords.clone()).collect()
    }

    pub fn ctx(&self) -> &Arc<SkewContext> {
        &self.ctx
    }

    pub fn ring(&self) -> &Ring {
        &self.ctx.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` marks the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.ring.zero())
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(&self.ctx.ring.one())
    }

    /// Coefficient vector padded to length `n` (low degree first).
    pub fn coeff_vector(&self, n: usize) -> Vec<RingElement> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_ctx(other)?;
        let ring = &self.ctx.ring;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| ring.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(SkewPoly::from_coeffs(&self.ctx, coeffs))
    }

    pub fn neg(&self) -> SkewPoly {
        let ring = &self.ctx.ring;
        SkewPoly::from_coeffs(&self.ctx, self.coeffs.iter().map(|c| ring.neg(c)).collect())
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(&other.neg())
    }

    /// Left multiplication by a ring constant: `a * p`.
    pub fn scale(&self, a: &RingElement) -> SkewPoly {
        let ring = &self.ctx.ring;
        SkewPoly::from_coeffs(
            &self.ctx,
            self.coeffs.iter().map(|c| ring.mul(a, c)).collect(),
        )
    }

    /// `X * p`, via the commutation rule.
    pub fn times_x(&self) -> SkewPoly {
        let ring = &self.ctx.ring;
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = self.ctx.theta.apply(ring, c);
            let d = self.ctx.delta.apply(ring, c);
            coeffs[j + 1] = ring.add(&coeffs[j + 1], &t);
            coeffs[j] = ring.add(&coeffs[j], &d);
        }
        SkewPoly::from_coeffs(&self.ctx, coeffs)
    }

    /// Product `self * other` extending `X a = theta(a) X + delta(a)`.
    pub fn multiply(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_ctx(other)?;
        let ring = &self.ctx.ring;
        if self.is_zero() || other.is_zero() {
            return Ok(SkewPoly::zero(&self.ctx));
        }
        let mut acc = SkewPoly::zero(&self.ctx);
        let mut shifted = other.clone(); // X^i * other
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = shifted.times_x();
            }
            if !ring.is_zero(c) {
                acc = acc.add(&shifted.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// Right division: `self = q * g + r` with `deg r < deg g`.
    pub fn right_divide(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_ctx(g)?;
        let ring = &self.ctx.ring;
        let g_deg = g.degree().ok_or(Error::NonInvertibleLead)?;
        let g_lead_inv = ring
            .inverse(g.leading().unwrap())
            .ok_or(Error::NonInvertibleLead)?;
        let mut r = self.clone();
        let mut q = SkewPoly::zero(&self.ctx);
        while r.degree().is_some_and(|d| d >= g_deg) {
            let d = r.degree().unwrap();
            let shift = d - g_deg;
            let c = ring.mul(
                r.leading().unwrap(),
                &self.ctx.theta.apply_pow(ring, &g_lead_inv, shift),
            );
            let term = SkewPoly::monomial(&self.ctx, c, shift);
            q = q.add(&term)?;
            r = r.sub(&term.multiply(g)?)?;
            debug_assert!(r.degree().map_or(true, |rd| rd < d));
        }
        Ok((q, r))
    }

    /// Left division: `self = g * q + r` with `deg r < deg g`. Requires
    /// theta to be an automorphism.
    pub fn left_divide(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_ctx(g)?;
        let ring = &self.ctx.ring;
        let theta_inv = self
            .ctx
            .theta
            .inverse(ring)
            .ok_or(Error::NotAutomorphism)?;
        let g_deg = g.degree().ok_or(Error::NonInvertibleLead)?;
        let g_lead_inv = ring
            .inverse(g.leading().unwrap())
            .ok_or(Error::NonInvertibleLead)?;
        let mut r = self.clone();
        let mut q = SkewPoly::zero(&self.ctx);
        while r.degree().is_some_and(|d| d >= g_deg) {
            let d = r.degree().unwrap();
            let shift = d - g_deg;
            let c = theta_inv.apply_pow(ring, &ring.mul(&g_lead_inv, r.leading().unwrap()), g_deg);
            let term = SkewPoly::monomial(&self.ctx, c, shift);
            q = q.add(&term)?;
            r = r.sub(&g.multiply(&term)?)?;
            debug_assert!(r.degree().map_or(true, |rd| rd < d));
        }
        Ok((q, r))
    }

    /// True iff the polynomial commutes with `X` and with every ring
    /// constant (checked exhaustively over the ring).
    pub fn is_central(&self) -> bool {
        let ctx = &self.ctx;
        let x = SkewPoly::x(ctx);
        if self.multiply(&x).unwrap() != x.multiply(self).unwrap() {
            return false;
        }
        for a in ctx.ring.elements() {
            let ca = SkewPoly::constant(ctx, a);
            if self.multiply(&ca).unwrap() != ca.multiply(self).unwrap() {
                return false;
            }
        }
        true
    }

    fn check_ctx(&self, other: &SkewPoly) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Deterministic sort key: degree, then coefficient indices from the
    /// constant term up.
    pub fn sort_key(&self) -> Vec<usize> {
        let ring = &self.ctx.ring;
        let mut key = vec![self.coeffs.len()];
        key.extend(self.coeffs.iter().map(|c| ring.index_of(c)));
        key
    }

    /// Pretty form, e.g. `X^2 + uX + u + 1`.
    pub fn format(&self) -> String {
        let ring = &self.ctx.ring;
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if ring.is_zero(c) {
                continue;
            }
            let coeff = ring.format_element(c);
            let part = match i {
                0 => coeff,
                _ => {
                    let xpow = if i == 1 { "X".into() } else { format!("X^{i}") };
                    if c == &ring.one() {
                        xpow
                    } else if coeff.contains(" + ") {
                        format!("({coeff}){xpow}")
                    } else {
                        format!("{coeff}{xpow}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// All `hbar` with `deg hbar <= d` and `g * hbar = f`, computed by solving
/// the B-linear system in hbar's coordinates (the map `hbar -> g * hbar`
/// is B-linear because theta fixes B and delta annihilates it).
pub fn left_multiples(f: &SkewPoly, g: &SkewPoly, d: usize) -> Result<Vec<SkewPoly>> {
    if !same_ctx(f.ctx(), g.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let ctx = f.ctx();
    let ring = &ctx.ring;
    let s = ring.rank();
    let m = ring.characteristic();
    let g_deg = match g.degree() {
        Some(dd) => dd,
        // g = 0: solutions exist only for f = 0, and then every hbar works.
        None => {
            if !f.is_zero() {
                return Ok(Vec::new());
            }
            let mut out = Vec::new();
            let total = (ring.order() as u128).pow(d as u32 + 1);
            for t in 0..total {
                let mut tt = t;
                let coeffs: Vec<RingElement> = (0..=d)
                    .map(|_| {
                        let e = ring.element((tt % ring.order() as u128) as usize);
                        tt /= ring.order() as u128;
                        e
                    })
                    .collect();
                out.push(SkewPoly::from_coeffs(ctx, coeffs));
            }
            out.sort_by_key(|p| p.sort_key());
            out.dedup();
            return Ok(out);
        }
    };
    let max_deg = (g_deg + d).max(f.degree().unwrap_or(0));
    let n_rows = s * (max_deg + 1);
    let n_cols = s * (d + 1);
    let mut a = ModMatrix::zero(n_rows, n_cols, m);
    for i in 0..=d {
        for j in 0..s {
            let basis_mono = SkewPoly::monomial(ctx, ring.basis_element(j), i);
            let image = g.multiply(&basis_mono)?;
            for (deg, coeff) in image.coeffs().iter().enumerate() {
                for (k, &c) in coeff.coords.iter().enumerate() {
                    a.set(deg * s + k, i * s + j, c as i64);
                }
            }
        }
    }
    let mut b = vec![0i64; n_rows];
    for (deg, coeff) in f.coeffs().iter().enumerate() {
        for (k, &c) in coeff.coords.iter().enumerate() {
            b[deg * s + k] = c as i64;
        }
    }
    let mut out: Vec<SkewPoly> = solve_all(&a, &b)
        .into_iter()
        .map(|x| {
            let coeffs = (0..=d)
                .map(|i| RingElement::new(x[i * s..(i + 1) * s].to_vec()))
                .collect();
            SkewPoly::from_coeffs(ctx, coeffs)
        })
        .collect();
    out.sort_by_key(|p| p.sort_key());
    out.dedup();
    Ok(out)
}

/// Parse the pretty form (`X^2 + uX + u + 1`, `X^4 - u`, ...).
pub fn parse_poly(ctx: &Arc<SkewContext>, text: &str) -> Result<SkewPoly> {
    let ring = &ctx.ring;
    let mut acc = SkewPoly::zero(ctx);
    for (sign, term) in split_terms(text)? {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        let (coeff_text, degree) = split_x_part(term)?;
        let coeff = if coeff_text.is_empty() {
            ring.one()
        } else {
            let inner = coeff_text
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(&coeff_text);
            ring.parse_element(inner)?
        };
        let coeff = if sign { ring.neg(&coeff) } else { coeff };
        acc = acc.add(&SkewPoly::monomial(ctx, coeff, degree))?;
    }
    Ok(acc)
}

/// Split into signed terms at top-level `+`/`-`.
fn split_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    let mut negative = false;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parens in `{text}`")))?;
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !current.trim().is_empty() {
                    out.push((negative, current.trim().to_string()));
                } else if !out.is_empty() || negative {
                    return Err(Error::Parse(format!("dangling sign in `{text}`")));
                }
                current = String::new();
                negative = ch == '-';
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parens in `{text}`")));
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("trailing sign in `{text}`")));
    }
    out.push((negative, current.trim().to_string()));
    Ok(out)
}

/// Split a term into its coefficient text and X-degree.
fn split_x_part(term: &str) -> Result<(String, usize)> {
    match term.rfind('X') {
        None => Ok((term.to_string(), 0)),
        Some(pos) => {
            let coeff = term[..pos].trim().to_string();
            let rest = term[pos + 1..].trim();
            let degree = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad exponent in `{term}`")))?
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
            };
            Ok((coeff, degree))
        }
    }
}

/// Iterate all polynomials of degree `< len_bound` coefficients (i.e. with
/// `len_bound` coefficient slots), low degree first, in canonical order.
pub fn all_polys_with_coeff_slots<'a>(
    ctx: &'a Arc<SkewContext>,
    slots: usize,
) -> impl Iterator<Item = Vec<RingElement>> + 'a {
    let order = ctx.ring.order();
    let total = (order as u128).pow(slots as u32);
    (0..total).map(move |mut t| {
        (0..slots)
            .map(|_| {
                let e = ctx.ring.element((t % order as u128) as usize);
                t /= order as u128;
                e
            })
            .collect()
    })
}
