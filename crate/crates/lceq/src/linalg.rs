//! Linear algebra over `F_2` and `Z/2^r`.
//!
//! Two families of solvers back the equivalence decisions:
//!
//! - bit-packed `F_2` systems (incremental reduced row echelon form with a
//!   particular solution and a kernel basis), used for the quadruple
//!   equations of the local-Clifford test;
//! - kernel computation over `Z/2^r`, used to find the multisets compatible
//!   with the level-r incidence conditions. Generating sets are brought to
//!   Howell normal form, the canonical echelon form for modules over
//!   `Z/2^r` (unlike fields, a row span here is not determined by an
//!   arbitrary echelon basis — the annihilator multiples must be closed
//!   over, which is exactly what the Howell form does).

use std::fmt;

// ============================================================================
// F_2 systems
// ============================================================================

const WORD_BITS: usize = 64;

#[inline(always)]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS).max(1)
}

#[inline(always)]
pub(crate) fn get_bit(words: &[u64], i: usize) -> bool {
    words[i / WORD_BITS] >> (i % WORD_BITS) & 1 != 0
}

#[inline(always)]
pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
}

#[inline(always)]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub(crate) fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * WORD_BITS + words[i].trailing_zeros() as usize)
}

pub(crate) fn lowest_bit_from(words: &[u64], from: usize) -> Option<usize> {
    let start = from / WORD_BITS;
    for (i, &word) in words.iter().enumerate().skip(start) {
        let mut w = word;
        if i == start {
            w &= !0u64 << (from % WORD_BITS);
        }
        if w != 0 {
            return Some(i * WORD_BITS + w.trailing_zeros() as usize);
        }
    }
    None
}

/// An incremental linear system over `F_2`, kept in reduced row echelon
/// form. Equations stream in; inconsistency is detected immediately.
pub struct F2System {
    ncols: usize,
    words: usize,
    rows: Vec<(Vec<u64>, bool)>,   // coefficient words + right-hand side
    pivot_row: Vec<Option<usize>>, // column -> index into rows
    pivots: Vec<usize>,            // row -> pivot column
    consistent: bool,
}

/// A solved `F_2` system: one particular solution plus a kernel basis.
/// Solutions are exactly `particular + span(kernel)`.
pub struct F2Solution {
    pub ncols: usize,
    pub particular: Vec<u64>,
    pub kernel: Vec<Vec<u64>>,
}

impl F2System {
    pub fn new(ncols: usize) -> Self {
        F2System {
            ncols,
            words: words_for(ncols),
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            pivots: Vec::new(),
            consistent: true,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_free(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Adds `coeffs · x = rhs`. Returns whether the system is still
    /// consistent. `coeffs` must span `ncols` bits.
    pub fn add_equation(&mut self, coeffs: &[u64], rhs: bool) -> bool {
        debug_assert_eq!(coeffs.len(), self.words);
        if !self.consistent {
            return false;
        }
        let mut row = coeffs.to_vec();
        let mut b = rhs;
        // Eliminate every bit sitting in an existing pivot column. Each XOR
        // clears the scanned bit and only touches higher positions, so a
        // single ascending sweep fully reduces the row.
        let mut from = 0;
        while let Some(p) = lowest_bit_from(&row, from) {
            match self.pivot_row[p] {
                Some(i) => {
                    let (prow, pb) = self.rows[i].clone();
                    b ^= pb;
                    xor_into(&mut row, &prow);
                    from = p; // bit p is now clear; rescan from here
                }
                None => from = p + 1, // pivot-less bit, keep it
            }
        }
        match lowest_bit(&row) {
            None => {
                if b {
                    self.consistent = false;
                }
                self.consistent
            }
            Some(p) => {
                // New pivot: clear column p from every earlier row. The
                // remaining bits of `row` are pivot-less, so older rows
                // stay clean of other pivot columns.
                for i in 0..self.rows.len() {
                    if get_bit(&self.rows[i].0, p) {
                        self.rows[i].1 ^= b;
                        let row = row.clone();
                        xor_into(&mut self.rows[i].0, &row);
                    }
                }
                self.pivot_row[p] = Some(self.rows.len());
                self.pivots.push(p);
                self.rows.push((row, b));
                true
            }
        }
    }

    /// Convenience: adds an equation whose support is given as column
    /// indices.
    pub fn add_sparse_equation(&mut self, cols: &[usize], rhs: bool) -> bool {
        let mut row = vec![0u64; self.words];
        for &c in cols {
            debug_assert!(c < self.ncols);
            row[c / WORD_BITS] ^= 1 << (c % WORD_BITS);
        }
        self.add_equation(&row, rhs)
    }

    /// Particular solution and kernel basis, or `None` if inconsistent.
    pub fn solve(&self) -> Option<F2Solution> {
        if !self.consistent {
            return None;
        }
        let sol_words = words_for(self.ncols);
        let mut particular = vec![0u64; sol_words];
        for (i, &(ref _row, b)) in self.rows.iter().enumerate() {
            if b {
                set_bit(&mut particular, self.pivots[i]);
            }
        }
        let mut kernel = Vec::with_capacity(self.num_free());
        for f in 0..self.ncols {
            if self.pivot_row[f].is_some() {
                continue;
            }
            let mut v = vec![0u64; sol_words];
            set_bit(&mut v, f);
            for (i, (row, _)) in self.rows.iter().enumerate() {
                if get_bit(row, f) {
                    set_bit(&mut v, self.pivots[i]);
                }
            }
            kernel.push(v);
        }
        Some(F2Solution {
            ncols: self.ncols,
            particular,
            kernel,
        })
    }
}

impl F2Solution {
    /// The solution `particular + Σ kernel[i]` over the set bits of `mask`
    /// (one bit per kernel basis vector).
    pub fn combination(&self, mask: u64) -> Vec<u64> {
        let mut v = self.particular.clone();
        for (i, k) in self.kernel.iter().enumerate() {
            if mask >> i & 1 != 0 {
                xor_into(&mut v, k);
            }
        }
        v
    }
}

/// A growing `F_2` span that remembers, for every basis row, which of the
/// inserted vectors XOR to it. `express` then rewrites any member of the
/// span as a combination of the original insertions.
pub struct F2Span {
    words: usize,
    combo_words: usize,
    inserted: usize,
    rows: Vec<(Vec<u64>, Vec<u64>)>, // vector, combination over insertions
    pivot_row: Vec<Option<usize>>,
}

impl F2Span {
    /// `width` is the vector length in bits; `max_inserts` bounds how many
    /// vectors will ever be inserted (sizing the combination bitmasks).
    pub fn new(width: usize, max_inserts: usize) -> Self {
        F2Span {
            words: words_for(width),
            combo_words: words_for(max_inserts),
            inserted: 0,
            rows: Vec::new(),
            pivot_row: vec![None; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[u64]> {
        self.rows.iter().map(|(v, _)| v.as_slice())
    }

    /// Inserts a vector, returning `true` when it enlarged the span.
    pub fn insert(&mut self, vec: &[u64]) -> bool {
        debug_assert_eq!(vec.len(), self.words);
        let mut v = vec.to_vec();
        let mut combo = vec![0u64; self.combo_words];
        set_bit(&mut combo, self.inserted);
        self.inserted += 1;
        while let Some(p) = lowest_bit(&v) {
            match self.pivot_row[p] {
                Some(i) => {
                    let (rv, rc) = self.rows[i].clone();
                    xor_into(&mut v, &rv);
                    xor_into(&mut combo, &rc);
                }
                None => {
                    self.pivot_row[p] = Some(self.rows.len());
                    self.rows.push((v, combo));
                    return true;
                }
            }
        }
        false
    }

    /// Writes `vec` as a XOR of inserted vectors (bitmask over insertion
    /// order), or `None` when it lies outside the span.
    pub fn express(&self, vec: &[u64]) -> Option<Vec<u64>> {
        debug_assert_eq!(vec.len(), self.words);
        let mut v = vec.to_vec();
        let mut combo = vec![0u64; self.combo_words];
        while let Some(p) = lowest_bit(&v) {
            let i = self.pivot_row[p]?;
            let (rv, rc) = &self.rows[i];
            xor_into(&mut v, rv);
            xor_into(&mut combo, rc);
        }
        Some(combo)
    }
}

// ============================================================================
// Z/2^r
// ============================================================================

/// 2-adic valuation of a nonzero residue.
#[inline(always)]
pub fn val2(x: u32) -> u32 {
    debug_assert!(x != 0);
    x.trailing_zeros()
}

/// Inverse of an odd residue mod `2^r` (Newton iteration mod `2^32`,
/// then masked).
pub fn inv_mod_2r(u: u32, r: u32) -> u32 {
    debug_assert!(u % 2 == 1);
    let mut x = 1u32;
    for _ in 0..5 {
        x = x.wrapping_mul(2u32.wrapping_sub(u.wrapping_mul(x)));
    }
    debug_assert_eq!(u.wrapping_mul(x), 1);
    x & mask(r)
}

#[inline(always)]
fn mask(r: u32) -> u32 {
    if r >= 32 {
        u32::MAX
    } else {
        (1u32 << r) - 1
    }
}

fn vec_is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `dst -= c * src (mod 2^r)`.
fn sub_scaled(dst: &mut [u32], src: &[u32], c: u32, r: u32) {
    let m = mask(r);
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = d.wrapping_sub(c.wrapping_mul(s)) & m;
    }
}

fn scale(v: &mut [u32], c: u32, r: u32) {
    let m = mask(r);
    for x in v.iter_mut() {
        *x = x.wrapping_mul(c) & m;
    }
}

fn dot(a: &[u32], b: &[u32], r: u32) -> u32 {
    let m = mask(r);
    let mut acc = 0u32;
    for (&x, &y) in a.iter().zip(b) {
        acc = acc.wrapping_add(x.wrapping_mul(y));
    }
    acc & m
}

/// Generators of `{x : A·x ≡ 0 (mod 2^r)}` in Howell normal form.
///
/// Equations are processed one at a time: the current generating set is
/// intersected with each new hyperplane by pivoting on a generator of
/// minimal 2-adic valuation, correcting the others exactly, and keeping the
/// annihilator multiple of the pivot.
pub fn z2r_kernel(r: u32, cols: usize, equations: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = mask(r);
    // Start from the identity generators.
    let mut gens: Vec<Vec<u32>> = (0..cols)
        .map(|i| {
            let mut e = vec![0u32; cols];
            e[i] = 1;
            e
        })
        .collect();
    for a in equations {
        debug_assert_eq!(a.len(), cols);
        let vals: Vec<u32> = gens.iter().map(|g| dot(a, g, r)).collect();
        let Some(jstar) = (0..gens.len())
            .filter(|&j| vals[j] != 0)
            .min_by_key(|&j| val2(vals[j]))
        else {
            continue;
        };
        let t = val2(vals[jstar]);
        let unit = vals[jstar] >> t;
        let uinv = inv_mod_2r(unit, r);
        let pivot = gens[jstar].clone();
        for j in 0..gens.len() {
            if j == jstar || vals[j] == 0 {
                continue;
            }
            debug_assert!(val2(vals[j]) >= t);
            let c = (vals[j] >> t).wrapping_mul(uinv) & m;
            sub_scaled(&mut gens[j], &pivot, c, r);
            debug_assert_eq!(dot(a, &gens[j], r), 0);
        }
        if t >= 1 {
            // 2^(r-t) · pivot survives inside the hyperplane.
            scale(&mut gens[jstar], 1 << (r - t), r);
            debug_assert_eq!(dot(a, &gens[jstar], r), 0);
        } else {
            gens.remove(jstar);
        }
        gens.retain(|g| !vec_is_zero(g));
    }
    howell_normalize(r, gens)
}

/// Howell normal form of the row span of `rows` over `Z/2^r`.
///
/// Unique for the span: pivots are powers of two in strictly increasing
/// columns, entries above a pivot are reduced modulo it, and annihilator
/// multiples of every pivot row are folded back in so each leading column
/// of the span is represented.
pub fn howell_normalize(r: u32, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let Some(cols) = rows.first().map(|row| row.len()) else {
        return Vec::new();
    };
    let mut pool: Vec<Vec<u32>> = rows.into_iter().filter(|v| !vec_is_zero(v)).collect();
    let mut result: Vec<(usize, u32, Vec<u32>)> = Vec::new(); // pivot col, exponent, row
    for col in 0..cols {
        let Some(best) = pool
            .iter()
            .enumerate()
            .filter(|(_, row)| row[col] != 0)
            .min_by_key(|(_, row)| val2(row[col]))
            .map(|(i, _)| i)
        else {
            continue;
        };
        let mut pivot = pool.swap_remove(best);
        let t = val2(pivot[col]);
        let unit = pivot[col] >> t;
        scale(&mut pivot, inv_mod_2r(unit, r), r);
        debug_assert_eq!(pivot[col], 1 << t);
        for row in pool.iter_mut() {
            if row[col] != 0 {
                debug_assert!(val2(row[col]) >= t);
                let c = row[col] >> t;
                sub_scaled(row, &pivot, c, r);
                debug_assert_eq!(row[col], 0);
            }
        }
        if t >= 1 {
            // Keep the annihilator multiple so the span's lower-column
            // content is not lost (Howell closure).
            let mut ann = pivot.clone();
            scale(&mut ann, 1 << (r - t), r);
            ann[col] = 0; // 2^r ≡ 0; make the zero explicit for the filter
            if !vec_is_zero(&ann) {
                pool.push(ann);
            }
        }
        pool.retain(|v| !vec_is_zero(v));
        result.push((col, t, pivot));
    }
    debug_assert!(pool.is_empty(), "rows beyond the last column remained");
    // Reduce entries above each pivot modulo the pivot value.
    for i in 0..result.len() {
        let (col, t, row_i) = {
            let (c, t, ref row) = result[i];
            (c, t, row.clone())
        };
        for prev in result.iter_mut().take(i) {
            let e = prev.2[col];
            if e >> t != 0 {
                sub_scaled(&mut prev.2, &row_i, e >> t, r);
                debug_assert!(prev.2[col] < (1 << t));
            }
        }
    }
    result.into_iter().map(|(_, _, row)| row).collect()
}

/// Pretty-printer for small residue matrices in test failures.
pub fn format_rows(rows: &[Vec<u32>]) -> String {
    let mut s = String::new();
    for row in rows {
        s.push_str(&format!("{row:?}\n"));
    }
    s
}

impl fmt::Debug for F2System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F2System(ncols={}, rank={}, consistent={})",
            self.ncols,
            self.rank(),
            self.consistent
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    // Small deterministic generator; tests must not depend on global RNG.
    struct XorShift(u64);
    impl XorShift {
        fn next(&mut self) -> u64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            self.0
        }
        fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    #[test]
    fn inverse_mod_powers_of_two() {
        for r in 1..=16u32 {
            let m = mask(r);
            for u in (1..1u64 << r.min(12)).step_by(2) {
                let u = u as u32;
                assert_eq!(u.wrapping_mul(inv_mod_2r(u, r)) & m, 1 & m);
            }
        }
    }

    #[test]
    fn f2_system_against_brute_force() {
        let mut rng = XorShift(0x1234_5678_9abc_def0);
        for trial in 0..60 {
            let ncols = 1 + (rng.below(9)) as usize; // up to 9 unknowns
            let neqs = (rng.below(12)) as usize;
            let mut sys = F2System::new(ncols);
            let mut eqs: Vec<(u64, bool)> = Vec::new();
            for _ in 0..neqs {
                let coeffs = rng.next() & ((1u64 << ncols) - 1);
                let rhs = rng.next() & 1 == 1;
                eqs.push((coeffs, rhs));
                sys.add_equation(&[coeffs], rhs);
            }
            // Brute-force the solution set.
            let mut brute = BTreeSet::new();
            for x in 0..1u64 << ncols {
                if eqs
                    .iter()
                    .all(|&(c, b)| ((c & x).count_ones() % 2 == 1) == b)
                {
                    brute.insert(x);
                }
            }
            match sys.solve() {
                None => assert!(brute.is_empty(), "trial {trial}: missed solutions"),
                Some(sol) => {
                    assert!(!brute.is_empty(), "trial {trial}: spurious consistency");
                    let mut got = BTreeSet::new();
                    let k = sol.kernel.len();
                    assert!(k <= 63);
                    for mask in 0..1u64 << k {
                        got.insert(sol.combination(mask)[0]);
                    }
                    assert_eq!(got, brute, "trial {trial}: solution sets differ");
                }
            }
        }
    }

    #[test]
    fn f2_system_detects_contradiction() {
        let mut sys = F2System::new(3);
        assert!(sys.add_sparse_equation(&[0, 1], true));
        assert!(sys.add_sparse_equation(&[1, 2], true));
        assert!(!sys.add_sparse_equation(&[0, 2], true)); // sum of the others
        assert!(!sys.is_consistent());
        assert!(sys.solve().is_none());
    }

    #[test]
    fn f2_span_expressions() {
        let mut rng = XorShift(0xfeed_beef_cafe_f00d);
        for _ in 0..40 {
            let width = 1 + rng.below(40) as usize;
            let mut span = F2Span::new(width, 32);
            let mut inserted: Vec<u64> = Vec::new();
            for _ in 0..rng.below(20) {
                let v = rng.next() & ((1u64 << width.min(63)) - 1).max(1);
                span.insert(&[v]);
                inserted.push(v);
            }
            // Any XOR of inserted vectors must be expressible, and the
            // returned combination must reproduce it.
            for _ in 0..20 {
                let pick = rng.next();
                let mut target = 0u64;
                for (i, &v) in inserted.iter().enumerate() {
                    if pick >> i & 1 != 0 {
                        target ^= v;
                    }
                }
                let combo = span.express(&[target]).expect("member of span");
                let mut rebuilt = 0u64;
                for (i, &v) in inserted.iter().enumerate() {
                    if get_bit(&combo, i) {
                        rebuilt ^= v;
                    }
                }
                assert_eq!(rebuilt, target);
            }
        }
    }

    /// Exhaustively closes a generating set over Z/2^r into the full
    /// subgroup it spans.
    fn close_span(r: u32, cols: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
        let m = mask(r);
        let mut set = BTreeSet::new();
        set.insert(vec![0u32; cols]);
        for g in gens {
            let snapshot: Vec<Vec<u32>> = set.iter().cloned().collect();
            for base in snapshot {
                for c in 1..1u32 << r {
                    let mut v = base.clone();
                    for (x, &gx) in v.iter_mut().zip(g) {
                        *x = x.wrapping_add(c.wrapping_mul(gx)) & m;
                    }
                    set.insert(v);
                }
            }
        }
        set
    }

    #[test]
    fn z2r_kernel_exhaustive_mod4() {
        let r = 2u32;
        let cols = 5usize;
        let mut rng = XorShift(0x0dd0_c0de_1357_9bdf);
        for trial in 0..25 {
            let neqs = rng.below(7) as usize;
            let eqs: Vec<Vec<u32>> = (0..neqs)
                .map(|_| (0..cols).map(|_| rng.below(4) as u32).collect())
                .collect();
            let gens = z2r_kernel(r, cols, &eqs);
            // Brute force over all 4^5 vectors.
            let mut brute = BTreeSet::new();
            for code in 0..(1u32 << (2 * cols)) {
                let x: Vec<u32> = (0..cols).map(|i| code >> (2 * i) & 3).collect();
                if eqs.iter().all(|a| dot(a, &x, r) == 0) {
                    brute.insert(x);
                }
            }
            let spanned = close_span(r, cols, &gens);
            assert_eq!(
                spanned,
                brute,
                "trial {trial}: kernel differs\neqs:\n{}gens:\n{}",
                format_rows(&eqs),
                format_rows(&gens)
            );
        }
    }

    #[test]
    fn z2r_kernel_structured_cases() {
        // No equations: the kernel is everything, i.e. the identity.
        let gens = z2r_kernel(3, 3, &[]);
        assert_eq!(gens.len(), 3);
        for (i, g) in gens.iter().enumerate() {
            let mut e = vec![0u32; 3];
            e[i] = 1;
            assert_eq!(*g, e);
        }
        // x_i ≡ 0 for all i: trivial kernel.
        let eye: Vec<Vec<u32>> = (0..3)
            .map(|i| {
                let mut e = vec![0u32; 3];
                e[i] = 1;
                e
            })
            .collect();
        assert!(z2r_kernel(3, 3, &eye).is_empty());
        // 2·x_i ≡ 0 mod 8: kernel is 4·Z in each coordinate.
        let twos: Vec<Vec<u32>> = (0..3)
            .map(|i| {
                let mut e = vec![0u32; 3];
                e[i] = 2;
                e
            })
            .collect();
        let gens = z2r_kernel(3, 3, &twos);
        assert_eq!(gens.len(), 3);
        for (i, g) in gens.iter().enumerate() {
            let mut e = vec![0u32; 3];
            e[i] = 4;
            assert_eq!(*g, e);
        }
    }

    #[test]
    fn howell_form_is_canonical() {
        let r = 3u32;
        let m = mask(r);
        let mut rng = XorShift(0xaaaa_5555_3333_cccc);
        for _ in 0..30 {
            let cols = 4usize;
            let nrows = 1 + rng.below(4) as usize;
            let rows: Vec<Vec<u32>> = (0..nrows)
                .map(|_| (0..cols).map(|_| rng.below(8) as u32).collect())
                .collect();
            let reference = howell_normalize(r, rows.clone());
            // Apply span-preserving transformations: unit scalings, row
            // additions, duplications, permutations.
            let mut alt = rows.clone();
            for _ in 0..12 {
                match rng.below(4) {
                    0 => {
                        let i = rng.below(alt.len() as u64) as usize;
                        let u = (rng.below(4) as u32) * 2 + 1;
                        scale(&mut alt[i], u, r);
                    }
                    1 => {
                        let i = rng.below(alt.len() as u64) as usize;
                        let j = rng.below(alt.len() as u64) as usize;
                        if i != j {
                            let src = alt[j].clone();
                            let c = rng.below(8) as u32;
                            for (d, s) in alt[i].iter_mut().zip(&src) {
                                *d = d.wrapping_add(c.wrapping_mul(*s)) & m;
                            }
                        }
                    }
                    2 => {
                        let i = rng.below(alt.len() as u64) as usize;
                        let dup = alt[i].clone();
                        alt.push(dup);
                    }
                    _ => {
                        let i = rng.below(alt.len() as u64) as usize;
                        let j = rng.below(alt.len() as u64) as usize;
                        alt.swap(i, j);
                    }
                }
            }
            assert_eq!(howell_normalize(r, alt), reference);
        }
    }

    #[test]
    fn howell_closure_property() {
        // The classic example where naive echelon loses span content:
        // row (2, 1) over Z/4. Its span contains (0, 2) = 2·(2,1) mod 4,
        // whose leading column differs; Howell must expose it.
        let rows = vec![vec![2u32, 1]];
        let hf = howell_normalize(2, rows);
        assert_eq!(hf, vec![vec![2, 1], vec![0, 2]]);
    }
}
