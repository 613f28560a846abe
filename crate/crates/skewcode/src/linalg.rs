//! Linear systems over Z/mZ for small m (m prime or not), solved by
//! diagonalizing with unimodular row and column operations. Entries are
//! kept reduced mod m; the integer transforms preserve congruences, so the
//! diagonal system is equivalent to the original one mod m.

/// Dense matrix over Z/mZ with i64 entries in `[0, m)`.
#[derive(Debug, Clone)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub m: i64,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zero(rows: usize, cols: usize, m: u32) -> Self {
        ModMatrix {
            rows,
            cols,
            m: m as i64,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, m: u32) -> Self {
        let mut mat = Self::zero(n, n, m);
        for i in 0..n {
            mat.set(i, i, 1);
        }
        mat
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v.rem_euclid(self.m);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub(&mut self, a: usize, b: usize, q: i64) {
        for c in 0..self.cols {
            let v = self.get(a, c) - q * self.get(b, c);
            self.set(a, c, v);
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub(&mut self, a: usize, b: usize, q: i64) {
        for r in 0..self.rows {
            let v = self.get(r, a) - q * self.get(r, b);
            self.set(r, a, v);
        }
    }
}

fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 == 1 {
        Some(t0.rem_euclid(m))
    } else {
        None
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// All solutions of `A x = b (mod m)`, as coordinate vectors in `[0, m)`.
/// The solution set is a coset of the kernel; it is enumerated exactly.
pub fn solve_all(a: &ModMatrix, b: &[i64]) -> Vec<Vec<u32>> {
    assert_eq!(b.len(), a.rows);
    let m = a.m;
    let mut w = a.clone();
    let mut rhs: Vec<i64> = b.iter().map(|&x| x.rem_euclid(m)).collect();
    let mut v = ModMatrix::identity(a.cols, m as u32);

    let rank_bound = a.rows.min(a.cols);
    let mut t = 0usize;
    while t < rank_bound {
        // Move a nonzero entry of the trailing submatrix to (t, t).
        let mut pivot = None;
        'outer: for i in t..w.rows {
            for j in t..w.cols {
                if w.get(i, j) != 0 {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        rhs.swap(t, pi);
        w.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Euclidean elimination until row t and column t are clear.
        loop {
            let p = w.get(t, t);
            debug_assert!(p != 0);
            let mut changed = false;
            for i in (t + 1)..w.rows {
                let e = w.get(i, t);
                if e != 0 {
                    let q = e / p;
                    w.row_sub(i, t, q);
                    rhs[i] = (rhs[i] - q * rhs[t]).rem_euclid(m);
                    if w.get(i, t) != 0 {
                        // Remainder is a smaller pivot candidate.
                        w.swap_rows(t, i);
                        rhs.swap(t, i);
                        changed = true;
                        break;
                    }
                }
            }
            if changed {
                continue;
            }
            for j in (t + 1)..w.cols {
                let e = w.get(t, j);
                if e != 0 {
                    let q = e / p;
                    w.col_sub(j, t, q);
                    v.col_sub(j, t, q);
                    if w.get(t, j) != 0 {
                        w.swap_cols(t, j);
                        v.swap_cols(t, j);
                        changed = true;
                        break;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        t += 1;
    }
    let rank = t;

    // Rows past the diagonal must have zero right-hand side.
    for (i, &r) in rhs.iter().enumerate().skip(rank) {
        debug_assert!((rank..w.rows).contains(&i));
        if r != 0 {
            return Vec::new();
        }
    }

    // Per-coordinate solution sets for y, where x = V y.
    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(a.cols);
    for i in 0..a.cols {
        if i < rank {
            let d = w.get(i, i);
            let g = gcd(d, m);
            if rhs[i] % g != 0 {
                return Vec::new();
            }
            let md = m / g;
            let base = (rhs[i] / g) * inv_mod(d / g, md).expect("coprime by construction");
            let base = base.rem_euclid(md);
            choices.push((0..g).map(|j| (base + j * md).rem_euclid(m)).collect());
        } else {
            choices.push((0..m).collect());
        }
    }

    // Enumerate the product of choices and map back through V.
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    let mut out = Vec::with_capacity(total.min(1 << 20) as usize);
    let mut idx = vec![0usize; a.cols];
    loop {
        let y: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let mut x = vec![0u32; a.cols];
        for (r, xr) in x.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (c, &yc) in y.iter().enumerate() {
                acc = (acc + v.get(r, c) * yc) % m;
            }
            *xr = acc.rem_euclid(m) as u32;
        }
        out.push(x);
        // Mixed-radix increment.
        let mut pos = 0;
        loop {
            if pos == a.cols {
                out.sort();
                out.dedup();
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(a: &ModMatrix, b: &[i64]) -> Vec<Vec<u32>> {
        let m = a.m as u32;
        let total = (m as u64).pow(a.cols as u32);
        let mut out = Vec::new();
        for t in 0..total {
            let mut x = vec![0u32; a.cols];
            let mut tt = t;
            for xc in x.iter_mut() {
                *xc = (tt % m as u64) as u32;
                tt /= m as u64;
            }
            let ok = (0..a.rows).all(|r| {
                let mut acc = 0i64;
                for c in 0..a.cols {
                    acc += a.get(r, c) * x[c] as i64;
                }
                acc.rem_euclid(a.m) == b[r].rem_euclid(a.m)
            });
            if ok {
                out.push(x);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_on_random_systems() {
        // Deterministic LCG so the test is reproducible.
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as u32
        };
        for &m in &[2u32, 3, 4, 6] {
            for _ in 0..40 {
                let rows = 1 + (next() % 4) as usize;
                let cols = 1 + (next() % 4) as usize;
                let mut a = ModMatrix::zero(rows, cols, m);
                for r in 0..rows {
                    for c in 0..cols {
                        a.set(r, c, (next() % m) as i64);
                    }
                }
                let b: Vec<i64> = (0..rows).map(|_| (next() % m) as i64).collect();
                let fast = solve_all(&a, &b);
                let slow = brute_force(&a, &b);
                assert_eq!(fast, slow, "m={m} rows={rows} cols={cols}");
            }
        }
    }

    #[test]
    fn inconsistent_system_has_no_solutions() {
        let mut a = ModMatrix::zero(2, 1, 4);
        a.set(0, 0, 2);
        a.set(1, 0, 2);
        // 2x = 1 has no solution mod 4.
        assert!(solve_all(&a, &[1, 0]).is_empty());
    }
}
