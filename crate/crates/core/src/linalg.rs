//! Sparse exact rank computation over Q and over prime fields.
//!
//! Columns are eliminated against a growing set of pivot rows. Over Q the
//! elimination is fraction-free: every update is `lead(p)·c − lead(c)·p`
//! followed by a gcd reduction, so entries stay integral; i128 arithmetic
//! is used first and the computation restarts with big integers in the
//! unlikely event of an overflow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// A sparse integer matrix stored column-major; rows are `u32` indices,
/// each column sorted by row.
#[derive(Debug, Clone, Default)]
pub struct SparseIntMat {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMat {
    pub fn new(rows: usize, ncols: usize) -> Self {
        SparseIntMat {
            rows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Adds `value` at (row, col); entries for one column may be pushed in
    /// any order and are normalized by `finish_column`.
    pub fn push(&mut self, row: u32, col: usize, value: i64) {
        self.cols[col].push((row, value));
    }

    /// Sorts and combines duplicate rows of one column, dropping zeros.
    pub fn finish_column(&mut self, col: usize) {
        let c = &mut self.cols[col];
        c.sort_unstable_by_key(|&(r, _)| r);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(c.len());
        for &(r, v) in c.iter() {
            match out.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => out.push((r, v)),
            }
        }
        out.retain(|&(_, v)| v != 0);
        *c = out;
    }

    /// The product with another matrix is zero: used for ∂∂ = 0 checks.
    pub fn compose_is_zero(&self, earlier: &SparseIntMat) -> bool {
        // self: C_i → C_{i-1}, earlier: C_{i+1} → C_i; check self ∘ earlier = 0
        for col in &earlier.cols {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for &(mid, v) in col {
                for &(r, w) in &self.cols[mid as usize] {
                    *acc.entry(r).or_insert(0) += v * w;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }

    pub fn rank_modp(&self, p: u64) -> usize {
        rank_modp_cols(&self.cols, p)
    }

    pub fn rank_exact(&self) -> usize {
        rank_exact_cols(&self.cols)
    }
}

pub fn rank_modp_cols(cols: &[Vec<(u32, i64)>], p: u64) -> usize {
    let pi = p as i128;
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<(u32, u64)> = col
            .iter()
            .filter_map(|&(r, v)| {
                let m = (((v as i128) % pi + pi) % pi) as u64;
                (m != 0).then_some((r, m))
            })
            .collect();
        loop {
            let Some(&(lead_row, lead_val)) = c.first() else {
                break;
            };
            match pivots.get(&lead_row) {
                None => {
                    // normalize so the pivot entry is 1
                    let inv = mod_inverse(lead_val, p);
                    for e in c.iter_mut() {
                        e.1 = mulmod(e.1, inv, p);
                    }
                    pivots.insert(lead_row, c);
                    rank += 1;
                    break;
                }
                Some(pivot) => {
                    c = axpy_modp(&c, pivot, p.wrapping_sub(lead_val), p);
                }
            }
        }
    }
    rank
}

/// c + scale·pivot over F_p, assuming both sorted; the lead of c cancels.
fn axpy_modp(c: &[(u32, u64)], pivot: &[(u32, u64)], scale: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(c.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < pivot.len() {
        let take_c = j >= pivot.len() || (i < c.len() && c[i].0 < pivot[j].0);
        let take_p = i >= c.len() || (j < pivot.len() && pivot[j].0 < c[i].0);
        if take_c {
            out.push(c[i]);
            i += 1;
        } else if take_p {
            let v = mulmod(pivot[j].1, scale, p);
            if v != 0 {
                out.push((pivot[j].0, v));
            }
            j += 1;
        } else {
            let v = (c[i].1 + mulmod(pivot[j].1, scale, p)) % p;
            if v != 0 {
                out.push((c[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime; Fermat
    let mut result: u64 = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

pub fn rank_exact_cols(cols: &[Vec<(u32, i64)>]) -> usize {
    match rank_exact_i128(cols) {
        Some(rank) => rank,
        None => rank_exact_big(cols),
    }
}

fn rank_exact_i128(cols: &[Vec<(u32, i64)>]) -> Option<usize> {
    let mut pivots: HashMap<u32, Vec<(u32, i128)>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<(u32, i128)> = col.iter().map(|&(r, v)| (r, v as i128)).collect();
        loop {
            let Some(&(lead_row, lead_val)) = c.first() else {
                break;
            };
            match pivots.get(&lead_row) {
                None => {
                    reduce_gcd_i128(&mut c);
                    pivots.insert(lead_row, c);
                    rank += 1;
                    break;
                }
                Some(pivot) => {
                    c = axpy_exact_i128(&c, pivot, pivot[0].1, lead_val)?;
                }
            }
        }
    }
    Some(rank)
}

/// pl·c − cl·pivot with the lead cancelling; None on overflow.
fn axpy_exact_i128(
    c: &[(u32, i128)],
    pivot: &[(u32, i128)],
    pl: i128,
    cl: i128,
) -> Option<Vec<(u32, i128)>> {
    let mut out = Vec::with_capacity(c.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < pivot.len() {
        let take_c = j >= pivot.len() || (i < c.len() && c[i].0 < pivot[j].0);
        let take_p = i >= c.len() || (j < pivot.len() && pivot[j].0 < c[i].0);
        if take_c {
            out.push((c[i].0, pl.checked_mul(c[i].1)?));
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, cl.checked_mul(pivot[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = pl
                .checked_mul(c[i].1)?
                .checked_sub(cl.checked_mul(pivot[j].1)?)?;
            if v != 0 {
                out.push((c[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    let mut res = out;
    reduce_gcd_i128(&mut res);
    Some(res)
}

fn reduce_gcd_i128(c: &mut [(u32, i128)]) {
    let mut g: i128 = 0;
    for &(_, v) in c.iter() {
        g = g.gcd(&v.abs());
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for e in c.iter_mut() {
            e.1 /= g;
        }
    }
}

fn rank_exact_big(cols: &[Vec<(u32, i64)>]) -> usize {
    let mut pivots: HashMap<u32, Vec<(u32, BigInt)>> = HashMap::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<(u32, BigInt)> = col.iter().map(|&(r, v)| (r, BigInt::from(v))).collect();
        loop {
            let Some((lead_row, lead_val)) = c.first().map(|(r, v)| (*r, v.clone())) else {
                break;
            };
            match pivots.get(&lead_row) {
                None => {
                    reduce_gcd_big(&mut c);
                    pivots.insert(lead_row, c);
                    rank += 1;
                    break;
                }
                Some(pivot) => {
                    let pl = pivot[0].1.clone();
                    let mut out: Vec<(u32, BigInt)> = Vec::with_capacity(c.len() + pivot.len());
                    let (mut i, mut j) = (0, 0);
                    while i < c.len() || j < pivot.len() {
                        let take_c =
                            j >= pivot.len() || (i < c.len() && c[i].0 < pivot[j].0);
                        let take_p =
                            i >= c.len() || (j < pivot.len() && pivot[j].0 < c[i].0);
                        if take_c {
                            out.push((c[i].0, &pl * &c[i].1));
                            i += 1;
                        } else if take_p {
                            out.push((pivot[j].0, -(&lead_val * &pivot[j].1)));
                            j += 1;
                        } else {
                            let v = &pl * &c[i].1 - &lead_val * &pivot[j].1;
                            if !v.is_zero() {
                                out.push((c[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    reduce_gcd_big(&mut out);
                    c = out;
                }
            }
        }
    }
    rank
}

fn reduce_gcd_big(c: &mut [(u32, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in c.iter() {
        g = g.gcd(v);
    }
    if g > BigInt::from(1) {
        for e in c.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: Vec<Vec<(u32, i64)>>) -> SparseIntMat {
        let mut m = SparseIntMat::new(rows, cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            for (r, v) in c {
                m.push(r, j, v);
            }
            m.finish_column(j);
        }
        m
    }

    #[test]
    fn rank_of_identity_block() {
        let m = mat(3, vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]]);
        assert_eq!(m.rank_exact(), 3);
        assert_eq!(m.rank_modp(2), 3);
    }

    #[test]
    fn rank_detects_dependence() {
        // col3 = col1 + col2
        let m = mat(
            3,
            vec![
                vec![(0, 1), (1, 2)],
                vec![(1, 1), (2, 5)],
                vec![(0, 1), (1, 3), (2, 5)],
            ],
        );
        assert_eq!(m.rank_exact(), 2);
    }

    #[test]
    fn rank_differs_by_field() {
        // the 1x1 matrix [2] has rank 1 over Q and F_3 but 0 over F_2
        let m = mat(1, vec![vec![(0, 2)]]);
        assert_eq!(m.rank_exact(), 1);
        assert_eq!(m.rank_modp(3), 1);
        assert_eq!(m.rank_modp(2), 0);
    }

    #[test]
    fn fraction_free_survives_growth() {
        // a dense-ish 6x6 with awkward entries; compare against a known rank
        let cols: Vec<Vec<(u32, i64)>> = (0..6)
            .map(|j| {
                (0..6)
                    .map(|r| (r as u32, ((r * j + r + 1) % 7) as i64 - 3))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            })
            .collect();
        let m = mat(6, cols);
        let exact = m.rank_exact();
        // rank over a large prime equals rank over Q for this small matrix
        assert_eq!(m.rank_modp(1_000_003), exact);
    }

    #[test]
    fn compose_zero_check() {
        // ∂1: edges→vertices, ∂2: triangle→edges of a filled triangle
        let d1 = mat(
            3,
            vec![
                vec![(0, -1), (1, 1)],
                vec![(1, -1), (2, 1)],
                vec![(0, -1), (2, 1)],
            ],
        );
        let d2 = mat(3, vec![vec![(0, 1), (1, 1), (2, -1)]]);
        assert!(d1.compose_is_zero(&d2));
        assert_eq!(d1.rank_exact(), 2);
        assert_eq!(d2.rank_exact(), 1);
    }
}
