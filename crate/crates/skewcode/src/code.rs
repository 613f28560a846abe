//! Cyclic left module codes `C = Rg/Rf` in `R/Rf`: generator matrix,
//! kernel matrix `M`, parity check `H`, Hermitian duals, weight
//! enumerators and the dual-containment test.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{self, RingMap};
use crate::ring::{Ring, RingElement};
use crate::skew::{left_multiples, SkewContext, SkewPoly};

/// Default enumeration budget for codeword-set operations: `|A|^k` must
/// stay at or below this.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Rectangular matrix of ring elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixA {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RingElement>,
}

impl MatrixA {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> MatrixA {
        MatrixA {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> MatrixA {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        MatrixA {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[RingElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatrixA {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        MatrixA {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Apply a ring map to every entry.
    pub fn map_entries(&self, ring: &Ring, map: &RingMap) -> MatrixA {
        MatrixA {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| map.apply(ring, e)).collect(),
        }
    }

    pub fn mul(&self, ring: &Ring, other: &MatrixA) -> MatrixA {
        assert_eq!(self.cols, other.rows);
        let mut out = MatrixA::zero(ring, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = ring.zero();
                for t in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(r, t), other.get(t, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.data.iter().all(|e| ring.is_zero(e))
    }

    /// Row-major coordinate dump, one integer list per entry.
    pub fn to_coord_rows(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.coords.clone()).collect())
            .collect()
    }

    pub fn format(&self, ring: &Ring) -> String {
        (0..self.rows)
            .map(|r| {
                let cells: Vec<String> =
                    self.row(r).iter().map(|e| ring.format_element(e)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A validated cyclic left module code `Rg/Rf` with `f = g·ħ` and `g`
/// also a right divisor of `f`.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    ctx: Arc<SkewContext>,
    pub n: usize,
    pub k: usize,
    pub g: SkewPoly,
    pub hbar: SkewPoly,
    pub f: SkewPoly,
    pub sigma: Option<RingMap>,
}

/// Serialization form for a code, mirroring the on-disk JSON layout.
#[derive(Debug, Serialize, Deserialize)]
pub struct CodeRecord {
    pub ring: String,
    pub theta: String,
    pub delta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    pub n: usize,
    pub k: usize,
    pub g: Vec<Vec<u32>>,
    pub hbar: Vec<Vec<u32>>,
    pub f: Vec<Vec<u32>>,
}

impl CodeSpec {
    /// Validate the defining data: `g` monic of degree `n−k`, `ħ` of
    /// degree `k` with invertible leading coefficient, `f = g·ħ` monic of
    /// degree `n`, and `g` a right divisor of `f`.
    pub fn new(
        ctx: &Arc<SkewContext>,
        n: usize,
        k: usize,
        g: SkewPoly,
        hbar: SkewPoly,
        sigma: Option<RingMap>,
    ) -> Result<CodeSpec> {
        if k == 0 || k >= n {
            return Err(Error::BadCode(format!("need 0 < k < n, got n={n}, k={k}")));
        }
        let ring = &ctx.ring;
        if g.degree() != Some(n - k) || !g.is_monic() {
            return Err(Error::BadCode(format!(
                "g must be monic of degree {}",
                n - k
            )));
        }
        if hbar.degree() != Some(k) || ring.inverse(hbar.leading().unwrap()).is_none() {
            return Err(Error::BadCode(format!(
                "hbar must have degree {k} and an invertible leading coefficient"
            )));
        }
        let f = g.multiply(&hbar)?;
        if f.degree() != Some(n) || !f.is_monic() {
            return Err(Error::BadCode(format!(
                "f = g*hbar must be monic of degree {n}"
            )));
        }
        let (_, r) = f.right_divide(&g)?;
        if !r.is_zero() {
            return Err(Error::BadCode(
                "g is not a right divisor of f = g*hbar".into(),
            ));
        }
        if let Some(s) = &sigma {
            maps::validate_sigma(ring, s)?;
        }
        Ok(CodeSpec {
            ctx: Arc::clone(ctx),
            n,
            k,
            g,
            hbar,
            f,
            sigma,
        })
    }

    /// Build a code from a monic generator alone by searching for a
    /// two-sided witness: enumerate monic `h` of degree `k`, set
    /// `f = h·g`, and keep the first `f` admitting a degree-`k` left
    /// multiple with invertible lead. Returns `NoTwoSidedMultiple` when no
    /// `f` works.
    pub fn from_generator(
        ctx: &Arc<SkewContext>,
        n: usize,
        g: SkewPoly,
        sigma: Option<RingMap>,
    ) -> Result<CodeSpec> {
        let deg_g = g.degree().unwrap_or(0);
        if deg_g >= n {
            return Err(Error::BadCode(format!("deg g = {deg_g} must be < n = {n}")));
        }
        let k = n - deg_g;
        for hbar in two_sided_witnesses(ctx, &g, n)? {
            return CodeSpec::new(ctx, n, k, g, hbar, sigma);
        }
        Err(Error::NoTwoSidedMultiple {
            g: g.format(),
            n,
        })
    }

    pub fn ctx(&self) -> &Arc<SkewContext> {
        &self.ctx
    }

    pub fn ring(&self) -> &Ring {
        &self.ctx.ring
    }

    /// `k×n` matrix whose row `i` holds the coefficients of `X^i · g`.
    pub fn generator_matrix(&self) -> MatrixA {
        let mut rows = Vec::with_capacity(self.k);
        let mut p = self.g.clone();
        for i in 0..self.k {
            if i > 0 {
                p = p.times_x();
            }
            rows.push(p.coeff_vector(self.n));
        }
        MatrixA::from_rows(rows)
    }

    /// Coefficients of `(Σ b_i X^i) · g`; equals the message times the
    /// generator matrix.
    pub fn encode(&self, message: &[RingElement]) -> Result<Vec<RingElement>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                got: message.len(),
                want: self.k,
            });
        }
        let b = SkewPoly::from_coeffs(&self.ctx, message.to_vec());
        Ok(b.multiply(&self.g)?.coeff_vector(self.n))
    }

    /// `n×n` matrix whose row `i` holds the coefficients of the right
    /// remainder of `X^i · ħ` modulo `f`.
    pub fn m_matrix(&self) -> MatrixA {
        let mut rows = Vec::with_capacity(self.n);
        let mut p = self.hbar.clone();
        for i in 0..self.n {
            if i > 0 {
                p = p.times_x();
            }
            let (_, r) = p.right_divide(&self.f).expect("f is monic");
            rows.push(r.coeff_vector(self.n));
        }
        MatrixA::from_rows(rows)
    }

    /// `(n−k)×n` parity check: the transpose of the right-most `n−k`
    /// columns of the `M` matrix. `G · Hᵀ = 0`.
    pub fn parity_check(&self) -> MatrixA {
        let m = self.m_matrix();
        let r = self.n - self.k;
        let mut rows = Vec::with_capacity(r);
        for j in 0..r {
            rows.push((0..self.n).map(|i| m.get(i, self.k + j).clone()).collect());
        }
        MatrixA::from_rows(rows)
    }

    /// Generators of the sigma-dual `C^⊥σ`: sigma applied entrywise to
    /// the parity check.
    pub fn hermitian_dual_generators(&self, sigma: &RingMap) -> Result<MatrixA> {
        maps::validate_sigma(self.ring(), sigma)?;
        Ok(self.parity_check().map_entries(self.ring(), sigma))
    }

    /// All codewords (`|A|^k` vectors), enumerated as A-combinations of
    /// the generator matrix rows.
    pub fn codewords(&self, budget: u128) -> Result<Vec<Vec<RingElement>>> {
        span_rows(self.ring(), &self.generator_matrix(), budget)
    }

    /// Coefficient list indexed by weight value; entry `w` counts the
    /// codewords of total weight `w`.
    pub fn weight_enumerator(&self, weight: &str, budget: u128) -> Result<Vec<u64>> {
        let ring = self.ring();
        // Probe the table once so an undefined weight errors before the
        // enumeration starts.
        ring.element_weight(weight, &ring.zero())?;
        let mut counts = Vec::new();
        for word in self.codewords(budget)? {
            let w: u32 = word
                .iter()
                .map(|e| ring.element_weight(weight, e).expect("probed above"))
                .sum();
            let w = w as usize;
            if counts.len() <= w {
                counts.resize(w + 1, 0u64);
            }
            counts[w] += 1;
        }
        Ok(counts)
    }

    /// Minimum weight over the nonzero codewords.
    pub fn min_distance(&self, weight: &str, budget: u128) -> Result<u32> {
        let counts = self.weight_enumerator(weight, budget)?;
        counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w as u32)
            .ok_or_else(|| Error::BadCode("code has no nonzero codeword".into()))
    }

    /// Dual containment `C^⊥σ ⊆ C`, tested as `(σ(M))ᵀ · M = 0` with
    /// `σ = id` for the Euclidean inner product.
    pub fn is_dual_containing(&self, sigma: Option<&RingMap>) -> Result<bool> {
        let ring = self.ring();
        if let Some(s) = sigma {
            maps::validate_sigma(ring, s)?;
        }
        let m = self.m_matrix();
        let ms = match sigma {
            Some(s) => m.map_entries(ring, s),
            None => m.clone(),
        };
        Ok(ms.transpose().mul(ring, &m).is_zero(ring))
    }

    /// Membership oracle: a word is a codeword iff `w · M = 0`.
    pub fn is_codeword(&self, word: &[RingElement]) -> Result<bool> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch {
                got: word.len(),
                want: self.n,
            });
        }
        let ring = self.ring();
        let m = self.m_matrix();
        Ok((0..self.n).all(|c| {
            let mut acc = ring.zero();
            for (i, w) in word.iter().enumerate() {
                acc = ring.add(&acc, &ring.mul(w, m.get(i, c)));
            }
            ring.is_zero(&acc)
        }))
    }

    /// Rebuild a validated code from its serialization form, resolving
    /// the ring by name (builtin names only) and the maps by label.
    pub fn from_record(record: &CodeRecord) -> Result<CodeSpec> {
        let ring = Arc::new(crate::ring::builtin_ring(&record.ring)?);
        let theta = maps::endomorphism_by_name(&ring, &record.theta)?;
        let delta = maps::derivation_by_name(&ring, &theta, &record.delta)?;
        let sigma = record
            .sigma
            .as_deref()
            .map(|s| maps::endomorphism_by_name(&ring, s))
            .transpose()?;
        let ctx = SkewContext::new(ring, theta, delta)?;
        let g = SkewPoly::from_coord_list(&ctx, &record.g)?;
        let hbar = SkewPoly::from_coord_list(&ctx, &record.hbar)?;
        let code = CodeSpec::new(&ctx, record.n, record.k, g, hbar, sigma)?;
        if code.f.to_coord_list() != record.f {
            return Err(Error::BadCode("stored f does not match g*hbar".into()));
        }
        Ok(code)
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            ring: self.ring().name().to_string(),
            theta: self.ctx.theta.label.clone(),
            delta: self.ctx.delta.label.clone(),
            sigma: self.sigma.as_ref().map(|s| s.label.clone()),
            n: self.n,
            k: self.k,
            g: self.g.to_coord_list(),
            hbar: self.hbar.to_coord_list(),
            f: self.f.to_coord_list(),
        }
    }
}

/// All degree-`k` left multiples `ħ` of some monic two-sided `f = h·g`
/// of degree `n`, with invertible leading coefficient, in canonical
/// order. Enumerates monic `h` of degree `k` (so `f = h·g` is monic) and
/// solves `g·ħ = f` linearly.
pub fn two_sided_witnesses(
    ctx: &Arc<SkewContext>,
    g: &SkewPoly,
    n: usize,
) -> Result<Vec<SkewPoly>> {
    let ring = &ctx.ring;
    let deg_g = g.degree().ok_or(Error::NonInvertibleLead)?;
    let k = n
        .checked_sub(deg_g)
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::BadCode(format!("deg g = {deg_g} must be < n = {n}")))?;
    let mut out = Vec::new();
    for lower in crate::skew::all_polys_with_coeff_slots(ctx, k) {
        let mut coeffs = lower;
        coeffs.push(ring.one());
        let h = SkewPoly::from_coeffs(ctx, coeffs);
        let f = h.multiply(g)?;
        for hbar in left_multiples(&f, g, k)? {
            if hbar.degree() == Some(k) && ring.inverse(hbar.leading().unwrap()).is_some() {
                out.push(hbar);
            }
        }
    }
    out.sort_by_key(|p| p.sort_key());
    out.dedup();
    Ok(out)
}

/// All A-linear combinations of the rows of a matrix. Errors when the
/// span size `|A|^rows` exceeds the budget.
pub fn span_rows(ring: &Ring, mat: &MatrixA, budget: u128) -> Result<Vec<Vec<RingElement>>> {
    let size = (ring.order() as u128)
        .checked_pow(mat.rows as u32)
        .unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut word = vec![ring.zero(); mat.cols];
    let mut stack = vec![(0usize, word.clone())];
    // Depth-first over coefficient choices per row; iterative to keep the
    // row count unbounded by stack depth.
    while let Some((row, acc)) = stack.pop() {
        if row == mat.rows {
            out.push(acc);
            continue;
        }
        for a in ring.elements() {
            for (c, slot) in word.iter_mut().enumerate() {
                *slot = ring.add(&acc[c], &ring.mul(&a, mat.get(row, c)));
            }
            stack.push((row + 1, word.clone()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
