//! Search orchestration: find all dual-containing cyclic module codes
//! for a context, census the two-sided multiples of a generator, test
//! whether a dual is again a cyclic module code, and aggregate count and
//! best-distance tables.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{span_rows, CodeRecord, CodeSpec, MatrixA};
use crate::error::{Error, Result};
use crate::groebner::{enumerate_solutions, SolveEngine};
use crate::maps::{enumerate_derivations, enumerate_endomorphisms, validate_sigma, RingMap};
use crate::ring::Ring;
use crate::skew::{all_polys_with_coeff_slots, left_multiples, SkewContext, SkewPoly};
use crate::symbolic::{build_constraint_system, is_prime, MultiPoly, SymSkewPoly};

/// Search back end. `Groebner` works over prime-field coordinates
/// (characteristic-2 builtins); `Exhaustive` works over any ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchEngine {
    Groebner,
    Exhaustive,
}

impl SearchEngine {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchEngine::Groebner => "groebner",
            SearchEngine::Exhaustive => "exhaustive",
        }
    }
}

impl FromStr for SearchEngine {
    type Err = Error;

    fn from_str(s: &str) -> Result<SearchEngine> {
        match s {
            "groebner" => Ok(SearchEngine::Groebner),
            "exhaustive" => Ok(SearchEngine::Exhaustive),
            other => Err(Error::Parse(format!(
                "unknown engine {other:?}; expected \"groebner\" or \"exhaustive\""
            ))),
        }
    }
}

/// The engine that can handle the ring: Groebner when the coordinate
/// field is prime, exhaustive otherwise.
pub fn auto_engine(ring: &Ring) -> SearchEngine {
    if is_prime(ring.characteristic()) {
        SearchEngine::Groebner
    } else {
        SearchEngine::Exhaustive
    }
}

/// One dual-containing code, deduplicated by its monic generator; the
/// witnesses are all `(ħ, f = g·ħ)` pairs found by the engine.
#[derive(Debug, Clone)]
pub struct FoundCode {
    pub g: SkewPoly,
    pub witnesses: Vec<(SkewPoly, SkewPoly)>,
}

impl FoundCode {
    /// A validated `CodeSpec` from the first witness.
    pub fn code(&self, ctx: &Arc<SkewContext>, n: usize, sigma: Option<RingMap>) -> Result<CodeSpec> {
        let (hbar, _) = self.witnesses.first().ok_or_else(|| {
            Error::BadCode("found code without witnesses".into())
        })?;
        let k = n - self.g.degree().unwrap_or(0);
        CodeSpec::new(ctx, n, k, self.g.clone(), hbar.clone(), sigma)
    }
}

/// Result of one `(ring, θ, δ, σ, n, k)` search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub ctx: Arc<SkewContext>,
    pub sigma: Option<RingMap>,
    pub n: usize,
    pub k: usize,
    pub engine: SearchEngine,
    pub codes: Vec<FoundCode>,
    pub elapsed_ms: u128,
}

impl SearchResult {
    /// Formatted generator list, in canonical order.
    pub fn generators(&self) -> Vec<String> {
        self.codes.iter().map(|c| c.g.format()).collect()
    }

    /// One serializable record per code, carrying the first witness.
    pub fn records(&self) -> Vec<CodeRecord> {
        self.codes
            .iter()
            .filter_map(|c| {
                c.code(&self.ctx, self.n, self.sigma.clone())
                    .ok()
                    .map(|code| code.to_record())
            })
            .collect()
    }
}

fn budget_check(size: u128, budget: u128) -> Result<()> {
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(())
}

fn sorted_units(ring: &Ring) -> Vec<crate::ring::RingElement> {
    let mut units = ring.units().to_vec();
    units.sort_by_key(|u| ring.index_of(u));
    units
}

/// All dual-containing cyclic module codes `Rg/Rf ⊂ R/Rf` with the given
/// parameters: complete over monic `g` of degree `n−k`, with every
/// witness `(ħ, f = g·ħ = h·g)` attached.
pub fn find_dual_containing(
    ctx: &Arc<SkewContext>,
    sigma: Option<&RingMap>,
    n: usize,
    k: usize,
    engine: SearchEngine,
    budget: u128,
) -> Result<SearchResult> {
    find_dual_containing_limited(ctx, sigma, n, k, engine, budget, usize::MAX)
}

/// Like [`find_dual_containing`], but keeps at most `max_witnesses`
/// witnesses per generator. The set of generators is unchanged; table
/// aggregation only needs one witness per code, and skipping the rest
/// avoids materializing the full (possibly `|A|^k`-sized) witness sets.
fn find_dual_containing_limited(
    ctx: &Arc<SkewContext>,
    sigma: Option<&RingMap>,
    n: usize,
    k: usize,
    engine: SearchEngine,
    budget: u128,
    max_witnesses: usize,
) -> Result<SearchResult> {
    if k == 0 || k >= n {
        return Err(Error::BadCode(format!("need 0 < k < n, got n={n}, k={k}")));
    }
    let ring = &ctx.ring;
    if let Some(sig) = sigma {
        validate_sigma(ring, sig)?;
    }
    let start = Instant::now();
    let mut codes = match engine {
        SearchEngine::Exhaustive => exhaustive_search(ctx, sigma, n, k, budget, max_witnesses)?,
        SearchEngine::Groebner => groebner_search(ctx, sigma, n, k, budget)?,
    };
    for c in &mut codes {
        c.witnesses.truncate(max_witnesses);
    }
    codes.sort_by_cached_key(|c| c.g.sort_key());
    for c in &mut codes {
        c.witnesses.sort_by_cached_key(|(h, f)| (h.sort_key(), f.sort_key()));
        c.witnesses.dedup_by_key(|(h, _)| h.sort_key());
    }
    Ok(SearchResult {
        ctx: Arc::clone(ctx),
        sigma: sigma.cloned(),
        n,
        k,
        engine,
        codes,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Row-reduce the affine system whose rows are `[coefficients | rhs]`
/// over `F_p` and return a particular solution plus a kernel basis, or
/// `None` when the system is inconsistent.
fn solve_affine_fp(
    p: u32,
    mut rows: Vec<Vec<u32>>,
    nvars: usize,
) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let inv = |a: u32| -> u32 {
        // Fermat inverse; p is prime and a != 0.
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; nvars];
    let mut rank = 0usize;
    for col in 0..nvars {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let s = inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * s as u64 % p as u64) as u32;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..=nvars {
                    let sub = (factor as u64 * rows[rank][c] as u64) % p as u64;
                    rows[r][c] = ((rows[r][c] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // Inconsistent when a zero row has a nonzero right-hand side.
    if rows[rank..].iter().any(|r| r[nvars] != 0) {
        return None;
    }
    let mut particular = vec![0u32; nvars];
    for col in 0..nvars {
        if let Some(r) = pivot_of_col[col] {
            particular[col] = rows[r][nvars];
        }
    }
    let mut kernel = Vec::new();
    for free in 0..nvars {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u32; nvars];
        v[free] = 1;
        for col in 0..nvars {
            if let Some(r) = pivot_of_col[col] {
                v[col] = (p - rows[r][free] % p) % p;
            }
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}

/// All witnesses `(ħ, f = g·ħ)` for a fixed monic `g` over a prime-
/// characteristic ring, found by linear algebra: for fixed `g` the map
/// `ħ ↦ rem(g·ħ, g)` is `F_p`-linear, so the witness set for each unit
/// leading coefficient of `ħ` is an affine subspace rather than a set
/// that must be found by enumerating all of `A^k`.
fn witnesses_by_linear_solve(
    ctx: &Arc<SkewContext>,
    g: &SkewPoly,
    n: usize,
    k: usize,
    units: &[crate::ring::RingElement],
    max_witnesses: usize,
) -> Result<Vec<(SkewPoly, SkewPoly)>> {
    let ring = &ctx.ring;
    let p = ring.characteristic();
    let d = ring.rank();
    let deg_g = n - k;
    let nvars = d * k;
    let flat = |poly: &SkewPoly| -> Vec<u32> {
        let mut v = vec![0u32; d * (n + 1)];
        for (i, c) in poly.coeffs().iter().enumerate() {
            v[i * d..(i + 1) * d].copy_from_slice(&c.coords);
        }
        v
    };
    // Constant part of the system: column i*d+j holds the remainder of
    // g * (basis_j X^i) modulo g, flattened to F_p coordinates. The full
    // products are kept so each witness f can later be assembled by
    // coordinate arithmetic instead of a fresh skew multiplication.
    let mut rows = vec![vec![0u32; nvars + 1]; d * deg_g];
    let mut products = Vec::with_capacity(nvars);
    for i in 0..k {
        for j in 0..d {
            let mono = SkewPoly::monomial(ctx, ring.basis_element(j), i);
            let prod = g.multiply(&mono)?;
            let (_, r) = prod.right_divide(g)?;
            for t in 0..deg_g {
                for (b, &v) in r.coeff(t).coords.iter().enumerate() {
                    rows[t * d + b][i * d + j] = v;
                }
            }
            products.push(flat(&prod));
        }
    }
    let mut witnesses = Vec::new();
    for unit in units {
        let lead = g.multiply(&SkewPoly::monomial(ctx, unit.clone(), k))?;
        if lead.degree() != Some(n) || !lead.is_monic() {
            continue;
        }
        let lead_flat = flat(&lead);
        let (_, r) = lead.right_divide(g)?;
        let mut system = rows.clone();
        for t in 0..deg_g {
            for (b, &v) in r.coeff(t).coords.iter().enumerate() {
                system[t * d + b][nvars] = (p - v % p) % p;
            }
        }
        let Some((particular, kernel)) = solve_affine_fp(p, system, nvars) else {
            continue;
        };
        let total = (p as u128).pow(kernel.len() as u32);
        for idx in 0..total {
            if witnesses.len() >= max_witnesses {
                return Ok(witnesses);
            }
            let mut x = particular.clone();
            let mut t = idx;
            for kv in &kernel {
                let digit = (t % p as u128) as u32;
                t /= p as u128;
                if digit != 0 {
                    for (xi, &kvi) in x.iter_mut().zip(kv) {
                        *xi = (*xi + digit * kvi) % p;
                    }
                }
            }
            let mut coeffs = Vec::with_capacity(k + 1);
            for i in 0..k {
                coeffs.push(ring.from_coords(&x[i * d..(i + 1) * d])?);
            }
            coeffs.push(unit.clone());
            let hbar = SkewPoly::from_coeffs(ctx, coeffs);
            // f = g * hbar assembled from the precomputed products.
            let mut fv = lead_flat.clone();
            for (c, &xc) in x.iter().enumerate() {
                if xc != 0 {
                    for (fi, &pi) in fv.iter_mut().zip(&products[c]) {
                        *fi = (*fi + xc * pi) % p;
                    }
                }
            }
            let f_coeffs = fv
                .chunks(d)
                .map(|chunk| crate::ring::RingElement::new(chunk.to_vec()))
                .collect();
            let f = SkewPoly::from_coeffs(ctx, f_coeffs);
            debug_assert!(f.degree() == Some(n) && f.is_monic());
            witnesses.push((hbar, f));
        }
    }
    Ok(witnesses)
}

fn exhaustive_search(
    ctx: &Arc<SkewContext>,
    sigma: Option<&RingMap>,
    n: usize,
    k: usize,
    budget: u128,
    max_witnesses: usize,
) -> Result<Vec<FoundCode>> {
    let ring = &ctx.ring;
    budget_check(
        (ring.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX),
        budget,
    )?;
    let prime = is_prime(ring.characteristic());
    let units = sorted_units(ring);
    let g_candidates: Vec<Vec<crate::ring::RingElement>> =
        all_polys_with_coeff_slots(ctx, n - k).collect();
    let results: Vec<Result<Option<FoundCode>>> = g_candidates
        .into_par_iter()
        .map(|mut lower| {
            lower.push(ring.one());
            let g = SkewPoly::from_coeffs(ctx, lower);
            if prime {
                let first = witnesses_by_linear_solve(ctx, &g, n, k, &units, 1)?;
                let Some((hbar, _)) = first.first() else {
                    return Ok(None);
                };
                // Containment depends only on g; test it once before
                // materializing the full witness set.
                let code = CodeSpec::new(ctx, n, k, g.clone(), hbar.clone(), sigma.cloned())?;
                if !code.is_dual_containing(sigma)? {
                    return Ok(None);
                }
                let witnesses = if max_witnesses <= 1 {
                    first
                } else {
                    witnesses_by_linear_solve(ctx, &g, n, k, &units, max_witnesses)?
                };
                return Ok(Some(FoundCode { g, witnesses }));
            }
            let mut witnesses = Vec::new();
            let mut contained: Option<bool> = None;
            for h_lower in all_polys_with_coeff_slots(ctx, k) {
                for unit in &units {
                    let mut coeffs = h_lower.clone();
                    coeffs.push(unit.clone());
                    let hbar = SkewPoly::from_coeffs(ctx, coeffs);
                    let f = g.multiply(&hbar)?;
                    if f.degree() != Some(n) || !f.is_monic() {
                        continue;
                    }
                    let (_, r) = f.right_divide(&g)?;
                    if !r.is_zero() {
                        continue;
                    }
                    // Containment depends only on g; test it on the
                    // first witness and reuse the verdict.
                    if contained.is_none() {
                        let code =
                            CodeSpec::new(ctx, n, k, g.clone(), hbar.clone(), sigma.cloned())?;
                        contained = Some(code.is_dual_containing(sigma)?);
                    }
                    if contained == Some(false) {
                        return Ok(None);
                    }
                    witnesses.push((hbar, f));
                    if witnesses.len() >= max_witnesses {
                        return Ok(Some(FoundCode { g, witnesses }));
                    }
                }
            }
            if contained == Some(true) {
                Ok(Some(FoundCode { g, witnesses }))
            } else {
                Ok(None)
            }
        })
        .collect();
    let mut codes = Vec::new();
    for r in results {
        if let Some(c) = r? {
            codes.push(c);
        }
    }
    Ok(codes)
}

fn groebner_search(
    ctx: &Arc<SkewContext>,
    sigma: Option<&RingMap>,
    n: usize,
    k: usize,
    budget: u128,
) -> Result<Vec<FoundCode>> {
    let ring = &ctx.ring;
    let m = ring.characteristic();
    if !is_prime(m) {
        return Err(Error::NonPrimeModulus(m));
    }
    let systems: Vec<_> = sorted_units(ring)
        .into_iter()
        .filter_map(|unit| match build_constraint_system(ctx, sigma, n, k, &unit) {
            Ok(sys) => Some(Ok(sys)),
            // A non-monic f for this leading coefficient: not part of
            // the search space.
            Err(Error::BadCode(_)) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    let per_unit: Vec<Result<Vec<(SkewPoly, SkewPoly, SkewPoly)>>> = systems
        .par_iter()
        .map(|sys| {
            let sols = enumerate_solutions(
                &sys.polys,
                m,
                sys.nvars,
                SolveEngine::GroebnerBranch,
                budget,
            )?;
            let mut triples = Vec::new();
            for sol in &sols {
                let (g, hbar) = sys.solution_to_polys(sol);
                let f = g.multiply(&hbar)?;
                // Independent verification of each candidate solution.
                let code = CodeSpec::new(ctx, n, k, g.clone(), hbar.clone(), sigma.cloned())?;
                if !code.is_dual_containing(sigma)? {
                    return Err(Error::BadCode(format!(
                        "constraint solution g = {} is not dual-containing",
                        g.format()
                    )));
                }
                triples.push((g, hbar, f));
            }
            Ok(triples)
        })
        .collect();
    let mut by_g: Vec<FoundCode> = Vec::new();
    for batch in per_unit {
        for (g, hbar, f) in batch? {
            match by_g.iter_mut().find(|c| c.g == g) {
                Some(c) => c.witnesses.push((hbar, f)),
                None => by_g.push(FoundCode {
                    g,
                    witnesses: vec![(hbar, f)],
                }),
            }
        }
    }
    Ok(by_g)
}

/// One monic `f` of degree `n` with `g` as a two-sided divisor: the
/// unique monic `h` with `f = h·g`, every `ħ` of degree `k` with unit
/// leading coefficient satisfying `f = g·ħ`, and whether `f` is central.
#[derive(Debug, Clone)]
pub struct CensusRecord {
    pub f: SkewPoly,
    pub h: SkewPoly,
    pub hbars: Vec<SkewPoly>,
    pub central: bool,
}

/// All monic `f` of degree `n` for which `g` is both a right divisor
/// (`f = h·g`) and a left divisor (`f = g·ħ` for some `ħ`).
pub fn f_census(g: &SkewPoly, n: usize) -> Result<Vec<CensusRecord>> {
    let ctx = g.ctx();
    let ring = g.ring();
    let deg_g = g.degree().ok_or(Error::NonInvertibleLead)?;
    let k = n
        .checked_sub(deg_g)
        .filter(|&k| k > 0)
        .ok_or_else(|| Error::BadCode(format!("deg g = {deg_g} must be < n = {n}")))?;
    let mut out = Vec::new();
    for mut h_lower in all_polys_with_coeff_slots(ctx, k) {
        h_lower.push(ring.one());
        let h = SkewPoly::from_coeffs(ctx, h_lower);
        let f = h.multiply(g)?;
        let hbars: Vec<SkewPoly> = left_multiples(&f, g, k)?
            .into_iter()
            .filter(|p| p.degree() == Some(k) && ring.inverse(p.leading().unwrap()).is_some())
            .collect();
        if !hbars.is_empty() {
            let central = f.is_central();
            out.push(CensusRecord {
                f,
                h,
                hbars,
                central,
            });
        }
    }
    out.sort_by_key(|r| r.f.sort_key());
    Ok(out)
}

fn dual_generator_matrix(code: &CodeSpec, sigma: Option<&RingMap>) -> Result<MatrixA> {
    match sigma {
        Some(s) => code.hermitian_dual_generators(s),
        None => Ok(code.parity_check()),
    }
}

fn matrix_row_polys(ctx: &Arc<SkewContext>, mat: &MatrixA) -> Vec<SkewPoly> {
    (0..mat.rows)
        .map(|i| SkewPoly::from_coeffs(ctx, mat.row(i).to_vec()))
        .collect()
}

fn sorted_span(ring: &Ring, mat: &MatrixA, budget: u128) -> Result<Vec<Vec<crate::ring::RingElement>>> {
    let mut rows = span_rows(ring, mat, budget)?;
    rows.dedup();
    Ok(rows)
}

/// Monic degree-`k` candidates `g⊥` whose right division leaves zero
/// remainder on every row of the dual generator matrix.
fn cyclic_dual_candidates(
    code: &CodeSpec,
    rows: &[SkewPoly],
    engine: SearchEngine,
    budget: u128,
) -> Result<Vec<SkewPoly>> {
    let ctx = code.ctx();
    let ring = code.ring();
    let k = code.k;
    match engine {
        SearchEngine::Exhaustive => {
            budget_check(
                (ring.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX),
                budget,
            )?;
            let mut out = Vec::new();
            for mut lower in all_polys_with_coeff_slots(ctx, k) {
                lower.push(ring.one());
                let cand = SkewPoly::from_coeffs(ctx, lower);
                let mut ok = true;
                for p in rows {
                    let (_, r) = p.right_divide(&cand)?;
                    if !r.is_zero() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    out.push(cand);
                }
            }
            Ok(out)
        }
        SearchEngine::Groebner => {
            let m = ring.characteristic();
            if !is_prime(m) {
                return Err(Error::NonPrimeModulus(m));
            }
            let s = ring.rank();
            let nvars = s * k;
            let mut coeffs: Vec<crate::symbolic::SymElement> = (0..k)
                .map(|i| crate::symbolic::SymElement::from_vars(ring, nvars, i * s))
                .collect();
            coeffs.push(crate::symbolic::SymElement::from_constant(
                ring,
                nvars,
                &ring.one(),
            ));
            let generic = SymSkewPoly::from_coeffs(ctx, coeffs);
            let mut polys: Vec<MultiPoly> = Vec::new();
            for v in 0..nvars {
                let y = MultiPoly::var(m, nvars, v);
                let mut fe = y.clone();
                for _ in 1..m {
                    fe = fe.mul(&y);
                }
                polys.push(fe.sub(&y));
            }
            for p in rows {
                let sym = SymSkewPoly::from_concrete(p, nvars);
                let (_, r) = sym.right_divide(&generic)?;
                for c in &r.coeffs {
                    for q in &c.coords {
                        if !q.is_zero() {
                            polys.push(q.clone());
                        }
                    }
                }
            }
            polys.sort();
            polys.dedup();
            let sols =
                enumerate_solutions(&polys, m, nvars, SolveEngine::GroebnerBranch, budget)?;
            let mut out = Vec::new();
            for sol in &sols {
                let mut coeffs: Vec<crate::ring::RingElement> = (0..k)
                    .map(|i| {
                        crate::ring::RingElement::new(
                            (0..s).map(|j| sol[i * s + j]).collect(),
                        )
                    })
                    .collect();
                coeffs.push(ring.one());
                out.push(SkewPoly::from_coeffs(ctx, coeffs));
            }
            out.sort_by_key(|p| p.sort_key());
            Ok(out)
        }
    }
}

/// If the σ-dual of the code is itself a cyclic module code, its unique
/// monic generator `g⊥` of degree `k`; `None` otherwise. A candidate
/// qualifies when every dual generator row has zero remainder under
/// right division by `g⊥` and the module spanned by `X^j·g⊥`
/// (`j = 0..n−k−1`) equals the dual codebook exactly.
pub fn dual_is_cyclic(
    code: &CodeSpec,
    sigma: Option<&RingMap>,
    budget: u128,
) -> Result<Option<SkewPoly>> {
    let engine = auto_engine(code.ring());
    dual_is_cyclic_with_engine(code, sigma, engine, budget)
}

pub fn dual_is_cyclic_with_engine(
    code: &CodeSpec,
    sigma: Option<&RingMap>,
    engine: SearchEngine,
    budget: u128,
) -> Result<Option<SkewPoly>> {
    let ctx = code.ctx();
    let ring = code.ring();
    if let Some(s) = sigma {
        validate_sigma(ring, s)?;
    }
    let dual = dual_generator_matrix(code, sigma)?;
    let rows = matrix_row_polys(ctx, &dual);
    let dual_book = sorted_span(ring, &dual, budget)?;
    let mut matches = Vec::new();
    for cand in cyclic_dual_candidates(code, &rows, engine, budget)? {
        let span_mat = MatrixA::from_rows(
            (0..code.n - code.k)
                .scan(cand.clone(), |acc, j| {
                    let row = acc.coeff_vector(code.n);
                    if j + 1 < code.n - code.k {
                        *acc = acc.times_x();
                    }
                    Some(row)
                })
                .collect(),
        );
        if sorted_span(ring, &span_mat, budget)? == dual_book {
            matches.push(cand);
        }
    }
    debug_assert!(matches.len() <= 1, "monic dual generator must be unique");
    Ok(matches.into_iter().next())
}

/// Every `(θ, δ)` context of the ring, in canonical map order.
pub fn contexts_for_ring(ring: &Arc<Ring>) -> Result<Vec<Arc<SkewContext>>> {
    let mut out = Vec::new();
    for theta in enumerate_endomorphisms(ring) {
        for delta in enumerate_derivations(ring, &theta)? {
            out.push(SkewContext::new(Arc::clone(ring), theta.clone(), delta)?);
        }
    }
    Ok(out)
}

/// Per-context search counts for one `[n, k]`: the number of
/// dual-containing codes and, of those, how many have a dual that is
/// again a cyclic module code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextCounts {
    pub theta: String,
    pub delta: String,
    pub dual_containing: usize,
    pub cyclic_dual: usize,
}

pub fn count_table_row(
    ring: &Arc<Ring>,
    sigma: Option<&RingMap>,
    n: usize,
    k: usize,
    engine: SearchEngine,
    budget: u128,
) -> Result<Vec<ContextCounts>> {
    let contexts = contexts_for_ring(ring)?;
    contexts
        .par_iter()
        .map(|ctx| {
            let result = find_dual_containing_limited(ctx, sigma, n, k, engine, budget, 1)?;
            let mut cyclic = 0;
            for c in &result.codes {
                let code = c.code(ctx, n, sigma.cloned())?;
                if dual_is_cyclic(&code, sigma, budget)?.is_some() {
                    cyclic += 1;
                }
            }
            Ok(ContextCounts {
                theta: ctx.theta.label.clone(),
                delta: ctx.delta.label.clone(),
                dual_containing: result.codes.len(),
                cyclic_dual: cyclic,
            })
        })
        .collect()
}

/// A best-distance table cell: `None` when no dual-containing code
/// exists (∅); otherwise one entry per requested weight, `None` inside
/// when the enumeration budget was exceeded ("?").
pub type DistanceCell = Option<Vec<Option<u32>>>;

pub fn best_distance_cell(
    ring: &Arc<Ring>,
    sigma: Option<&RingMap>,
    n: usize,
    k: usize,
    weights: &[&str],
    engine: SearchEngine,
    budget: u128,
) -> Result<DistanceCell> {
    let contexts = contexts_for_ring(ring)?;
    let per_ctx: Vec<Result<Vec<CodeSpec>>> = contexts
        .par_iter()
        .map(|ctx| {
            let result = find_dual_containing_limited(ctx, sigma, n, k, engine, budget, 1)?;
            result
                .codes
                .iter()
                .map(|c| c.code(ctx, n, sigma.cloned()))
                .collect()
        })
        .collect();
    let mut codes = Vec::new();
    for batch in per_ctx {
        codes.extend(batch?);
    }
    if codes.is_empty() {
        return Ok(None);
    }
    // One codebook enumeration per code covers every requested weight.
    let per_code: Vec<Result<Option<Vec<u32>>>> = codes
        .par_iter()
        .map(|code| {
            let words = match code.codewords(budget) {
                Ok(words) => words,
                Err(Error::BudgetExceeded { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let ring = code.ring();
            let mut mins = vec![u32::MAX; weights.len()];
            for word in &words {
                if word.iter().all(|e| ring.is_zero(e)) {
                    continue;
                }
                for (w, weight) in weights.iter().enumerate() {
                    let mut total = 0u32;
                    for e in word {
                        total += ring.element_weight(weight, e)?;
                    }
                    mins[w] = mins[w].min(total);
                }
            }
            Ok(Some(mins))
        })
        .collect();
    let mut best: Vec<Option<u32>> = vec![None; weights.len()];
    let mut exceeded = false;
    for entry in per_code {
        match entry? {
            Some(mins) => {
                for (w, d) in mins.into_iter().enumerate() {
                    best[w] = Some(best[w].map_or(d, |c: u32| c.max(d)));
                }
            }
            // Any unenumerable code makes the maximum unknown.
            None => exceeded = true,
        }
    }
    if exceeded {
        best = vec![None; weights.len()];
    }
    Ok(Some(best))
}

/// Formatted cell matching the published table style: `∅`, `?`, or a
/// comma-separated distance list.
pub fn format_distance_cell(cell: &DistanceCell) -> String {
    match cell {
        None => "∅".to_string(),
        Some(values) => values
            .iter()
            .map(|v| v.map_or("?".to_string(), |d| d.to_string()))
            .collect::<Vec<_>>()
            .join(","),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{derivation_by_name, endomorphism_by_name, hermitian_involutions};
    use crate::ring::builtin_ring;
    use crate::skew::parse_poly;

    const BUDGET: u128 = 1 << 24;

    fn ctx_for(ring_name: &str, theta: &str, delta: &str) -> Arc<SkewContext> {
        let ring = Arc::new(builtin_ring(ring_name).unwrap());
        let th = endomorphism_by_name(&ring, theta).unwrap();
        let dl = derivation_by_name(&ring, &th, delta).unwrap();
        SkewContext::new(ring, th, dl).unwrap()
    }

    #[test]
    fn f2v_4_3_per_map_counts_match() {
        // Expected dual-containing counts per (theta, delta) for [4,3].
        let expected = [
            ("theta1", "delta1", 1),
            ("theta2", "delta1", 1),
            ("theta2", "delta2", 3),
            ("theta2", "delta3", 1),
            ("theta2", "delta4", 1),
            ("theta3", "delta1", 1),
            ("theta3", "delta3", 2),
            ("theta4", "delta1", 1),
            ("theta4", "delta4", 2),
        ];
        for (theta, delta, count) in expected {
            let ctx = ctx_for("F2v", theta, delta);
            let res =
                find_dual_containing(&ctx, None, 4, 3, SearchEngine::Groebner, BUDGET).unwrap();
            assert_eq!(res.codes.len(), count, "({theta},{delta})");
            let exh =
                find_dual_containing(&ctx, None, 4, 3, SearchEngine::Exhaustive, BUDGET).unwrap();
            assert_eq!(res.generators(), exh.generators(), "({theta},{delta})");
        }
    }

    #[test]
    fn f2v_6_4_theta3_delta3_has_four_generators() {
        let ctx = ctx_for("F2v", "theta3", "delta3");
        let res = find_dual_containing(&ctx, None, 6, 4, SearchEngine::Groebner, BUDGET).unwrap();
        let gens = res.generators();
        assert_eq!(gens.len(), 4);
        assert!(gens.contains(&"X^2 + X + v + 1".to_string()));
        assert!(gens.contains(&"X^2 + (v + 1)X + 1".to_string()));
        // Every witness is sound.
        for c in &res.codes {
            assert!(!c.witnesses.is_empty());
            for (hbar, f) in &c.witnesses {
                assert_eq!(&c.g.multiply(hbar).unwrap(), f);
                let (_, r) = f.right_divide(&c.g).unwrap();
                assert!(r.is_zero());
            }
            let code = c.code(&ctx, 6, None).unwrap();
            assert!(code.is_dual_containing(None).unwrap());
        }
    }

    #[test]
    fn f2v_6_4_census_has_eight_noncentral_f() {
        let ctx = ctx_for("F2v", "theta3", "delta3");
        let g = parse_poly(&ctx, "X^2 + X + v + 1").unwrap();
        let census = f_census(&g, 6).unwrap();
        assert_eq!(census.len(), 8);
        for rec in &census {
            assert!(!rec.central);
            assert_eq!(rec.hbars.len(), 16);
            assert!(rec.f.is_monic());
            assert_eq!(rec.h.multiply(&g).unwrap(), rec.f);
            for hbar in &rec.hbars {
                assert_eq!(g.multiply(hbar).unwrap(), rec.f);
            }
        }
    }

    #[test]
    fn f2u_census_contains_worked_product() {
        let ctx = ctx_for("F2u", "theta2", "delta3");
        let g = parse_poly(&ctx, "X^2 + uX + u + 1").unwrap();
        let census = f_census(&g, 4).unwrap();
        let f = parse_poly(&ctx, "X^4 + (u + 1)X^3 + X + u + 1").unwrap();
        let rec = census.iter().find(|r| r.f == f).expect("worked f present");
        let hb1 = parse_poly(&ctx, "(u + 1)X^2 + (u + 1)X + u + 1").unwrap();
        let hb2 = parse_poly(&ctx, "(u + 1)X^2 + X + u + 1").unwrap();
        assert!(rec.hbars.contains(&hb1));
        assert!(rec.hbars.contains(&hb2));
    }

    #[test]
    fn commutative_census_is_all_multiples() {
        // theta = id, delta = 0 over F4: every monic multiple qualifies
        // and hbar-set = {h}.
        let ctx = ctx_for("F4", "theta1", "delta1");
        let g = parse_poly(&ctx, "X + 1").unwrap();
        let census = f_census(&g, 3).unwrap();
        assert_eq!(census.len(), 16); // all monic h of degree 2
        for rec in &census {
            assert!(rec.hbars.contains(&rec.h));
        }
    }

    #[test]
    fn f2v_4_3_dual_cyclicity_witnesses() {
        let ctx = ctx_for("F2v", "theta2", "delta2");
        let cases = [
            ("X + 1", Some("X^3 + X^2 + X + 1")),
            ("X + v", None),
            ("X + v + 1", None),
        ];
        for (g_text, expected) in cases {
            let g = parse_poly(&ctx, g_text).unwrap();
            let code = CodeSpec::from_generator(&ctx, 4, g, None).unwrap();
            for engine in [SearchEngine::Groebner, SearchEngine::Exhaustive] {
                let got = dual_is_cyclic_with_engine(&code, None, engine, BUDGET).unwrap();
                assert_eq!(got.map(|p| p.format()).as_deref(), expected, "{g_text}");
            }
        }
    }

    #[test]
    fn gr42_4_2_self_dual_codes_with_zero_derivation() {
        // GR(4,2) with theta2 and the zero derivation: 8 generators,
        // all with Hamming enumerator 1 + 60w^3 + 195w^4.
        let ring = Arc::new(builtin_ring("GR42").unwrap());
        let theta = endomorphism_by_name(&ring, "theta2").unwrap();
        let delta = enumerate_derivations(&ring, &theta)
            .unwrap()
            .into_iter()
            .find(|d| d.images.iter().all(|e| ring.is_zero(e)))
            .unwrap();
        let ctx = SkewContext::new(Arc::clone(&ring), theta, delta).unwrap();
        let res = find_dual_containing(&ctx, None, 4, 2, SearchEngine::Exhaustive, BUDGET).unwrap();
        assert_eq!(res.codes.len(), 8);
        for c in &res.codes {
            let code = c.code(&ctx, 4, None).unwrap();
            let we = code.weight_enumerator("hamming", BUDGET).unwrap();
            assert_eq!(we, vec![1, 0, 0, 60, 195]);
        }
    }

    #[test]
    fn hermitian_search_rejects_bad_sigma() {
        let ring = Arc::new(builtin_ring("F2v").unwrap());
        let ctx = SkewContext::commutative(Arc::clone(&ring));
        // theta3 is a proper endomorphism, not an involution.
        let bad = endomorphism_by_name(&ring, "theta3").unwrap();
        assert!(matches!(
            find_dual_containing(&ctx, Some(&bad), 4, 2, SearchEngine::Groebner, BUDGET),
            Err(Error::BadSigma)
        ));
    }

    #[test]
    fn f2v_hermitian_4_2_cell_matches() {
        let ring = Arc::new(builtin_ring("F2v").unwrap());
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
            BUDGET,
        )
        .unwrap();
        assert_eq!(cell, Some(vec![Some(2), Some(2), Some(4)]));
    }

    #[test]
    fn f2v_euclidean_empty_cell() {
        let ring = Arc::new(builtin_ring("F2v").unwrap());
        let cell = best_distance_cell(
            &ring,
            None,
            5,
            3,
            &["hamming"],
            SearchEngine::Groebner,
            BUDGET,
        )
        .unwrap();
        assert_eq!(cell, None);
        assert_eq!(format_distance_cell(&cell), "∅");
    }

    #[test]
    fn count_row_4_3_matches_published_counts() {
        let ring = Arc::new(builtin_ring("F2v").unwrap());
        let rows = count_table_row(&ring, None, 4, 3, SearchEngine::Groebner, BUDGET).unwrap();
        let find = |t: &str, d: &str| {
            rows.iter()
                .find(|r| r.theta == t && r.delta == d)
                .unwrap_or_else(|| panic!("missing ({t},{d})"))
        };
        assert_eq!(find("theta2", "delta2").dual_containing, 3);
        assert_eq!(find("theta2", "delta2").cyclic_dual, 1);
        assert_eq!(find("theta3", "delta3").dual_containing, 2);
        assert_eq!(find("theta3", "delta3").cyclic_dual, 1);
        assert_eq!(rows.len(), 9);
        for r in &rows {
            assert!(r.cyclic_dual <= r.dual_containing);
        }
    }

    #[test]
    fn search_is_deterministic() {
        let ctx = ctx_for("F2v", "theta3", "delta3");
        let a = find_dual_containing(&ctx, None, 6, 4, SearchEngine::Groebner, BUDGET).unwrap();
        let b = find_dual_containing(&ctx, None, 6, 4, SearchEngine::Groebner, BUDGET).unwrap();
        assert_eq!(a.generators(), b.generators());
        let wa: Vec<Vec<String>> = a
            .codes
            .iter()
            .map(|c| c.witnesses.iter().map(|(h, _)| h.format()).collect())
            .collect();
        let wb: Vec<Vec<String>> = b
            .codes
            .iter()
            .map(|c| c.witnesses.iter().map(|(h, _)| h.format()).collect())
            .collect();
        assert_eq!(wa, wb);
    }
}
