//! Functorial mod-p group homology of elementary abelian quotients via
//! normalized bar complexes, and the flag chain complex whose homology
//! gives the E² page of the orbit-category spectral sequence.
//!
//! Everything here lives over F_p with V = F_p^r, r ≤ 3. Subgroups of V
//! are subspaces in reduced row-echelon form; the quotient V/L is realized
//! by canonical coset representatives (reduction modulo the echelon basis),
//! which makes the coefficient functor H_t(V/•) strictly functorial: a
//! flag deletion applies the representative-level projection coordinatewise
//! to bar tuples.

use num_traits::Zero;

use crate::error::SpectralError;

pub const DEFAULT_BAR_BUDGET: usize = 1_000_000;

type FpVec = Vec<u8>;

/// Dense matrix over F_p, row-major.
#[derive(Debug, Clone)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: u64) {
        let idx = r * self.cols + c;
        self.data[idx] = (self.data[idx] + v) % self.p;
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize().len()
    }

    /// In-place row echelon; returns the pivot columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = mod_inv(self.get(row, col), p);
            for c in col..self.cols {
                let v = self.get(row, c);
                self.set(row, c, v * inv % p);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let f = self.get(r, col);
                    for c in col..self.cols {
                        let v = (self.get(r, c) + (p - f) * self.get(row, c)) % p;
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right nullspace (vectors x with M·x = 0).
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut x = vec![0u64; self.cols];
            x[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                // row r reads x_pc + Σ m[r][c]·x_c = 0 over the free columns
                let coeff = m.get(r, free);
                if coeff != 0 {
                    x[pc] = (p - coeff) % p;
                }
            }
            basis.push(x);
        }
        basis
    }

    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                acc = (acc + self.get(r, c) * (x[c] % self.p)) % self.p;
            }
            out[r] = acc;
        }
        out
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// A subspace of F_p^r in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    pub basis: Vec<FpVec>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical representative of v + L: eliminate pivot coordinates.
    pub fn reduce(&self, v: &[u8], p: u8) -> FpVec {
        let mut out = v.to_vec();
        for b in &self.basis {
            let pivot = b.iter().position(|&x| x != 0).unwrap();
            let c = out[pivot] % p;
            if c != 0 {
                for i in 0..out.len() {
                    out[i] = (out[i] + (p - c) * b[i] % p * 1) % p;
                }
            }
        }
        out
    }

    pub fn contains(&self, other: &Subspace, p: u8) -> bool {
        other
            .basis
            .iter()
            .all(|v| self.reduce(v, p).iter().all(|&x| x == 0))
    }
}

/// Canonical echelon form of the span of `vectors` in F_p^r.
pub fn span(vectors: &[FpVec], r: usize, p: u8) -> Subspace {
    let mut mat = FpMat::zero(p as u64, vectors.len(), r);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            mat.set(i, j, x as u64);
        }
    }
    mat.echelonize();
    let mut basis = Vec::new();
    for row in 0..mat.rows {
        let v: FpVec = (0..r).map(|c| mat.get(row, c) as u8).collect();
        if v.iter().any(|&x| x != 0) {
            basis.push(v);
        }
    }
    Subspace { basis }
}

/// Every subspace of F_p^r of dimension < r (the proper ones, including 0).
pub fn proper_subspaces(r: usize, p: u8) -> Vec<Subspace> {
    let vectors = all_vectors(r, p);
    let nonzero: Vec<FpVec> = vectors.iter().filter(|v| !is_zero(v)).cloned().collect();
    let mut out = std::collections::BTreeSet::new();
    out.insert(Subspace { basis: Vec::new() });
    // spans of subsets of size ≤ r−1 cover all proper subspaces
    let mut frontier: Vec<Subspace> = vec![Subspace { basis: Vec::new() }];
    while let Some(s) = frontier.pop() {
        for v in &nonzero {
            let mut gens = s.basis.clone();
            gens.push(v.clone());
            let bigger = span(&gens, r, p);
            if bigger.dim() < r && out.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    out.into_iter().collect()
}

pub fn all_vectors(r: usize, p: u8) -> Vec<FpVec> {
    let mut out = vec![vec![0u8; r]];
    for i in 0..r {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in out {
            for c in 0..p {
                let mut w = v.clone();
                w[i] = c;
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn is_zero(v: &[u8]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Normalized bar complex of a quotient V/L with V = F_p^r, truncated at
/// tmax, with explicit homology bases per degree.
#[derive(Debug)]
pub struct BarModel {
    pub p: u8,
    pub rank: usize,
    pub modulus: Subspace,
    /// Canonical coset representatives; index 0 is the identity.
    pub reps: Vec<FpVec>,
    pub nonid: Vec<FpVec>,
    pub tmax: usize,
    /// dims[t] = (#nonid)^t.
    pub dims: Vec<usize>,
    pub homology_dims: Vec<usize>,
    solvers: Vec<HomologySolver>,
}

#[derive(Debug)]
struct HomologySolver {
    p: u64,
    /// columns spanning boundaries then homology representatives, echelonized
    /// with bookkeeping so cycles can be expressed in the combined basis
    echelon: Vec<EchelonCol>,
    n_boundary: usize,
    pub reps: Vec<Vec<u64>>,
}

#[derive(Debug)]
struct EchelonCol {
    lead: usize,
    vec: Vec<u64>,
    /// expression of `vec` in the original columns
    expr: Vec<u64>,
}

impl HomologySolver {
    /// columns: boundary spanning set then candidate cycles; keeps the
    /// candidates that extend the boundary echelon as homology basis.
    fn build(p: u64, boundaries: &[Vec<u64>], cycles: &[Vec<u64>]) -> Self {
        let mut echelon: Vec<EchelonCol> = Vec::new();
        let mut kept: Vec<Vec<u64>> = Vec::new();
        let mut n_boundary = 0;
        let mut originals: Vec<Vec<u64>> = Vec::new();
        let insert = |v: &Vec<u64>,
                          echelon: &mut Vec<EchelonCol>,
                          originals: &mut Vec<Vec<u64>>|
         -> bool {
            let mut w = v.clone();
            let mut expr = vec![0u64; originals.len() + 1];
            expr[originals.len()] = 1;
            for col in echelon.iter() {
                let c = w[col.lead] % p;
                if c != 0 {
                    let f = (p - c) % p;
                    for i in 0..w.len() {
                        w[i] = (w[i] + f * col.vec[i]) % p;
                    }
                    for (i, &e) in col.expr.iter().enumerate() {
                        expr[i] = (expr[i] + f * e) % p;
                    }
                }
            }
            if let Some(lead) = w.iter().position(|&x| x % p != 0) {
                let inv = mod_inv(w[lead] % p, p);
                let vec: Vec<u64> = w.iter().map(|&x| x * inv % p).collect();
                let expr: Vec<u64> = expr.iter().map(|&x| x * inv % p).collect();
                originals.push(v.clone());
                echelon.push(EchelonCol { lead, vec, expr });
                true
            } else {
                false
            }
        };
        for b in boundaries {
            if insert(b, &mut echelon, &mut originals) {
                n_boundary += 1;
            }
        }
        for z in cycles {
            if insert(z, &mut echelon, &mut originals) {
                kept.push(z.clone());
            }
        }
        // normalize expression lengths
        let total = originals.len();
        for col in echelon.iter_mut() {
            col.expr.resize(total, 0);
        }
        HomologySolver {
            p,
            echelon,
            n_boundary,
            reps: kept,
        }
    }

    fn homology_dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the cycle `z` in the homology basis.
    fn coords(&self, z: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = z.iter().map(|&x| x % p).collect();
        let mut used = vec![0u64; self.echelon.len()];
        for (k, col) in self.echelon.iter().enumerate() {
            let c = w[col.lead] % p;
            if c != 0 {
                used[k] = c;
                let f = (p - c) % p;
                for i in 0..w.len() {
                    w[i] = (w[i] + f * col.vec[i]) % p;
                }
            }
        }
        assert!(
            w.iter().all(|&x| x % p == 0),
            "vector is not a cycle of this complex"
        );
        // translate echelon usage back to original-column usage
        let total = self
            .echelon
            .last()
            .map(|c| c.expr.len())
            .unwrap_or(self.n_boundary + self.reps.len());
        let mut orig = vec![0u64; total];
        for (k, &c) in used.iter().enumerate() {
            if c != 0 {
                for (i, &e) in self.echelon[k].expr.iter().enumerate() {
                    orig[i] = (orig[i] + c * e) % p;
                }
            }
        }
        orig[self.n_boundary..].to_vec()
    }
}

/// The tuple basis of degree t is indexed in mixed radix over the
/// nonidentity representatives.
fn tuple_of(index: usize, t: usize, q: usize) -> Vec<usize> {
    let mut out = vec![0usize; t];
    let mut i = index;
    for slot in (0..t).rev() {
        out[slot] = i % q;
        i /= q;
    }
    out
}

fn index_of(tuple: &[usize], q: usize) -> usize {
    tuple.iter().fold(0, |acc, &d| acc * q + d)
}

pub fn bar_model(
    p: u8,
    rank: usize,
    modulus: &Subspace,
    tmax: usize,
    budget: usize,
) -> Result<BarModel, SpectralError> {
    let all = all_vectors(rank, p);
    let mut reps: Vec<FpVec> = all
        .iter()
        .map(|v| modulus.reduce(v, p))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    reps.sort();
    debug_assert!(is_zero(&reps[0]));
    let nonid: Vec<FpVec> = reps.iter().filter(|v| !is_zero(v)).cloned().collect();
    let q = nonid.len();
    let dims: Vec<usize> = (0..=tmax + 1).map(|t| q.pow(t as u32)).collect();
    // basis budget, plus a guard on dense boundary-matrix size
    let worst = (1..dims.len()).map(|t| dims[t] * dims[t - 1]).max().unwrap_or(0);
    if dims.iter().any(|&d| d > budget) || worst > budget.saturating_mul(32) {
        return Err(SpectralError::BudgetExceeded {
            count: (*dims.iter().max().unwrap()).max(worst / 32),
            budget,
        });
    }
    let rep_index: std::collections::BTreeMap<FpVec, usize> = nonid
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let add = |a: usize, b: usize| -> Option<usize> {
        let mut sum: FpVec = nonid[a]
            .iter()
            .zip(nonid[b].iter())
            .map(|(&x, &y)| (x + y) % p)
            .collect();
        sum = modulus.reduce(&sum, p);
        if is_zero(&sum) {
            None
        } else {
            Some(rep_index[&sum])
        }
    };
    // boundary matrices: ∂_t for t = 1..=tmax+1
    let pm = p as u64;
    let mut boundary_cols: Vec<Vec<Vec<u64>>> = Vec::new(); // [t-1][col] = dense col in degree t−1
    for t in 1..=tmax + 1 {
        let mut cols = Vec::with_capacity(dims[t]);
        for idx in 0..dims[t] {
            let tuple = tuple_of(idx, t, q);
            let mut col = vec![0u64; dims[t - 1]];
            // drop the first entry
            add_signed(&mut col, index_of(&tuple[1..], q), 1, pm);
            // glue adjacent entries with sign (−1)^i
            for i in 1..t {
                if let Some(glued) = add(tuple[i - 1], tuple[i]) {
                    let mut face = Vec::with_capacity(t - 1);
                    face.extend_from_slice(&tuple[..i - 1]);
                    face.push(glued);
                    face.extend_from_slice(&tuple[i + 1..]);
                    let sign = if i % 2 == 0 { 1 } else { pm - 1 };
                    add_signed(&mut col, index_of(&face, q), sign, pm);
                }
            }
            // drop the last entry, sign (−1)^t
            let sign = if t % 2 == 0 { 1 } else { pm - 1 };
            add_signed(&mut col, index_of(&tuple[..t - 1], q), sign, pm);
            cols.push(col);
        }
        boundary_cols.push(cols);
    }
    // homology solvers per degree 0..=tmax
    let mut solvers = Vec::with_capacity(tmax + 1);
    for t in 0..=tmax {
        let cycles: Vec<Vec<u64>> = if t == 0 {
            vec![vec![1u64]]
        } else {
            let cols = &boundary_cols[t - 1];
            let mut mat = FpMat::zero(pm, dims[t - 1], dims[t]);
            for (c, col) in cols.iter().enumerate() {
                for (r, &v) in col.iter().enumerate() {
                    if v != 0 {
                        mat.set(r, c, v);
                    }
                }
            }
            mat.nullspace()
        };
        let boundaries: &[Vec<u64>] = &boundary_cols[t];
        let solver = HomologySolver::build(pm, boundaries, &cycles);
        solvers.push(solver);
    }
    let homology_dims = solvers.iter().map(|s| s.homology_dim()).collect();
    Ok(BarModel {
        p,
        rank,
        modulus: modulus.clone(),
        reps,
        nonid,
        tmax,
        dims,
        homology_dims,
        solvers,
    })
}

fn add_signed(col: &mut [u64], row: usize, v: u64, p: u64) {
    col[row] = (col[row] + v) % p;
}

/// Convenience: bar homology of W = F_p^rank itself.
pub fn bar_homology(p: u8, rank: usize, tmax: usize) -> Result<BarModel, SpectralError> {
    bar_model(p, rank, &Subspace { basis: Vec::new() }, tmax, DEFAULT_BAR_BUDGET)
}

impl BarModel {
    pub fn homology_dim(&self, t: usize) -> usize {
        self.homology_dims[t]
    }

    /// ∂∂ = 0 of the normalized bar complex (checked by composing the
    /// per-tuple boundary twice).
    pub fn check_dd_zero(&self) -> bool {
        // columns rebuilt on demand; cheap at these sizes
        let pm = self.p as u64;
        for t in 2..=self.tmax {
            for idx in 0..self.dims[t] {
                let mut acc = vec![0u64; self.dims[t - 2]];
                let col = self.boundary_col(idx, t);
                for (mid, &v) in col.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    let inner = self.boundary_col(mid, t - 1);
                    for (r, &w) in inner.iter().enumerate() {
                        acc[r] = (acc[r] + v * w) % pm;
                    }
                }
                if acc.iter().any(|&x| x != 0) {
                    return false;
                }
            }
        }
        true
    }

    fn boundary_col(&self, idx: usize, t: usize) -> Vec<u64> {
        let q = self.nonid.len();
        let pm = self.p as u64;
        let tuple = tuple_of(idx, t, q);
        let mut col = vec![0u64; self.dims[t - 1]];
        add_signed(&mut col, index_of(&tuple[1..], q), 1, pm);
        for i in 1..t {
            let mut sum: FpVec = self.nonid[tuple[i - 1]]
                .iter()
                .zip(self.nonid[tuple[i]].iter())
                .map(|(&x, &y)| (x + y) % self.p)
                .collect();
            sum = self.modulus.reduce(&sum, self.p);
            if !is_zero(&sum) {
                let glued = self.nonid.iter().position(|v| *v == sum).unwrap();
                let mut face = Vec::with_capacity(t - 1);
                face.extend_from_slice(&tuple[..i - 1]);
                face.push(glued);
                face.extend_from_slice(&tuple[i + 1..]);
                let sign = if i % 2 == 0 { 1 } else { pm - 1 };
                add_signed(&mut col, index_of(&face, q), sign, pm);
            }
        }
        let sign = if t % 2 == 0 { 1 } else { pm - 1 };
        add_signed(&mut col, index_of(&tuple[..t - 1], q), sign, pm);
        col
    }
}

/// Matrix of H_t(f): H_t(src) → H_t(tgt) for a homomorphism given on
/// canonical representatives. Tuples acquiring an identity map to zero.
pub fn induced_bar_map(
    src: &BarModel,
    tgt: &BarModel,
    f: impl Fn(&[u8]) -> FpVec,
    t: usize,
) -> FpMat {
    let pm = src.p as u64;
    let q_src = src.nonid.len();
    let tgt_index: std::collections::BTreeMap<FpVec, usize> = tgt
        .nonid
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let h_src = src.homology_dims[t];
    let h_tgt = tgt.homology_dims[t];
    let mut out = FpMat::zero(pm, h_tgt, h_src);
    for (j, rep) in src.solvers[t].reps.iter().enumerate() {
        // push the cycle forward tuple by tuple
        let mut image = vec![0u64; tgt.dims[t]];
        for (idx, &c) in rep.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if t == 0 {
                image[0] = (image[0] + c) % pm;
                continue;
            }
            let tuple = tuple_of(idx, t, q_src);
            let mut img_tuple = Vec::with_capacity(t);
            let mut dead = false;
            for &w in &tuple {
                let fv = tgt.modulus.reduce(&f(&src.nonid[w]), tgt.p);
                if is_zero(&fv) {
                    dead = true;
                    break;
                }
                img_tuple.push(tgt_index[&fv]);
            }
            if !dead {
                let q_tgt = tgt.nonid.len();
                let target_idx = index_of(&img_tuple, q_tgt);
                image[target_idx] = (image[target_idx] + c) % pm;
            }
        }
        let coords = tgt.solvers[t].coords(&image);
        for (i, &v) in coords.iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// E¹ and E² grids of the flag chain complex with H_t(V/L_0) coefficients.
#[derive(Debug)]
pub struct SpectralPages {
    pub rank: usize,
    pub p: u8,
    pub smax: usize,
    pub tmax: usize,
    pub e1: Vec<Vec<usize>>,
    pub e2: Vec<Vec<usize>>,
    /// flags[s] lists the (s+1)-term chains of proper subspaces, as indices
    /// into `subspaces`.
    pub flags: Vec<Vec<Vec<usize>>>,
    pub subspaces: Vec<Subspace>,
}

pub fn e1_e2_pages(
    rank: usize,
    p: u8,
    tmax: usize,
    budget: usize,
) -> Result<SpectralPages, SpectralError> {
    let smax = rank.saturating_sub(1);
    let subspaces = proper_subspaces(rank, p);
    let n = subspaces.len();
    let le: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| subspaces[j].contains(&subspaces[i], p) && i != j)
                .collect()
        })
        .collect();
    // flags by length
    let mut flags: Vec<Vec<Vec<usize>>> = Vec::new();
    flags.push((0..n).map(|i| vec![i]).collect());
    for s in 1..=smax {
        let mut next = Vec::new();
        for f in &flags[s - 1] {
            let last = *f.last().unwrap();
            for j in 0..n {
                if le[last][j] {
                    let mut g = f.clone();
                    g.push(j);
                    next.push(g);
                }
            }
        }
        flags.push(next);
    }
    // bar models per subspace
    let models: Vec<BarModel> = subspaces
        .iter()
        .map(|l| bar_model(p, rank, l, tmax, budget))
        .collect::<Result<_, _>>()?;
    // block offsets per flag: dimension contributed is dim H_t(V/L_0)
    let mut e1 = vec![vec![0usize; tmax + 1]; smax + 1];
    for (s, fs) in flags.iter().enumerate() {
        for t in 0..=tmax {
            e1[s][t] = fs.iter().map(|f| models[f[0]].homology_dims[t]).collect::<Vec<_>>().iter().sum();
        }
    }
    // d¹ per row t, then E² = homology of the row
    let mut e2 = vec![vec![0usize; tmax + 1]; smax + 1];
    for t in 0..=tmax {
        // assemble D_s: E¹_{s,t} → E¹_{s−1,t} for s = 1..=smax
        let mut mats: Vec<FpMat> = Vec::new();
        for s in 1..=smax {
            let src_flags = &flags[s];
            let dst_flags = &flags[s - 1];
            let dst_offsets = offsets(dst_flags, &models, t);
            let src_offsets = offsets(src_flags, &models, t);
            let rows = e1[s - 1][t];
            let cols = e1[s][t];
            let mut mat = FpMat::zero(p as u64, rows, cols);
            let flag_pos: std::collections::BTreeMap<&[usize], usize> = dst_flags
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            for (fi, f) in src_flags.iter().enumerate() {
                let src_model = &models[f[0]];
                let h_dim = src_model.homology_dims[t];
                for del in 0..=s {
                    let face: Vec<usize> = f
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != del)
                        .map(|(_, &l)| l)
                        .collect();
                    let di = flag_pos[face.as_slice()];
                    let sign_neg = del % 2 == 1;
                    if del == 0 {
                        // coefficient map H_t(V/L_0) → H_t(V/L_1)
                        let tgt_model = &models[f[1]];
                        let l1 = subspaces[f[1]].clone();
                        let pp = p;
                        let block = induced_bar_map(
                            src_model,
                            tgt_model,
                            |v| l1.reduce(v, pp),
                            t,
                        );
                        for r in 0..block.rows {
                            for c in 0..block.cols {
                                let v = block.get(r, c);
                                if v != 0 {
                                    mat.add_at(dst_offsets[di] + r, src_offsets[fi] + c, v);
                                }
                            }
                        }
                    } else {
                        let v = if sign_neg { p as u64 - 1 } else { 1 };
                        for k in 0..h_dim {
                            mat.add_at(dst_offsets[di] + k, src_offsets[fi] + k, v);
                        }
                    }
                }
            }
            mats.push(mat);
        }
        // d²-free page: E²_{s,t} = dim ker(D_s) − rank(D_{s+1})
        for s in 0..=smax {
            let rank_in = if s < smax { mats.get(s).map(|m| m.rank()).unwrap_or(0) } else { 0 };
            let dim_here = e1[s][t];
            let rank_out = if s >= 1 { mats[s - 1].rank() } else { 0 };
            let kernel = dim_here - rank_out;
            e2[s][t] = kernel - rank_in;
        }
        // d¹ ∘ d¹ = 0 on every row
        for s in 2..=smax {
            debug_assert!(compose_is_zero(&mats[s - 2], &mats[s - 1]));
        }
    }
    Ok(SpectralPages {
        rank,
        p,
        smax,
        tmax,
        e1,
        e2,
        flags,
        subspaces,
    })
}

fn offsets(flags: &[Vec<usize>], models: &[BarModel], t: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(flags.len());
    let mut acc = 0;
    for f in flags {
        out.push(acc);
        acc += models[f[0]].homology_dims[t];
    }
    out
}

fn compose_is_zero(outer: &FpMat, inner: &FpMat) -> bool {
    // outer: E_{s−1} ← E_s, inner: E_s ← E_{s+1}
    for c in 0..inner.cols {
        let col: Vec<u64> = (0..inner.rows).map(|r| inner.get(r, c)).collect();
        let composed = outer.mul_vec(&col);
        if composed.iter().any(|&x| !x.is_zero()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_homology_of_cyclic_groups() {
        let c2 = bar_homology(2, 1, 6).unwrap();
        assert_eq!(c2.homology_dims, vec![1, 1, 1, 1, 1, 1, 1]);
        assert!(c2.check_dd_zero());
        let c3 = bar_homology(3, 1, 4).unwrap();
        assert_eq!(c3.homology_dims, vec![1, 1, 1, 1, 1]);
        assert!(c3.check_dd_zero());
    }

    #[test]
    fn bar_homology_of_klein_grows_linearly() {
        let v = bar_homology(2, 2, 5).unwrap();
        assert_eq!(v.homology_dims, vec![1, 2, 3, 4, 5, 6]);
        assert!(v.check_dd_zero());
    }

    #[test]
    fn bar_homology_of_trivial_group() {
        let t = bar_homology(2, 0, 3).unwrap();
        assert_eq!(t.homology_dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn bar_homology_of_rank2_p3() {
        let v = bar_homology(3, 2, 3).unwrap();
        assert_eq!(v.homology_dims, vec![1, 2, 3, 4]);
    }

    #[test]
    fn budget_guard_fires() {
        assert!(matches!(
            bar_model(2, 3, &Subspace { basis: vec![] }, 8, 1000),
            Err(SpectralError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn induced_map_identity_and_zero() {
        let v = bar_homology(2, 2, 3).unwrap();
        let id = induced_bar_map(&v, &v, |x| x.to_vec(), 2);
        assert_eq!((id.rows, id.cols), (3, 3));
        assert_eq!(id.rank(), 3);
        // quotient by a line: rank-1 image on H_1
        let lines = proper_subspaces(2, 2);
        let line = lines.iter().find(|s| s.dim() == 1).unwrap();
        let q = bar_model(2, 2, line, 3, DEFAULT_BAR_BUDGET).unwrap();
        assert_eq!(q.homology_dims, vec![1, 1, 1, 1]);
        let proj = induced_bar_map(&v, &q, |x| x.to_vec(), 1);
        assert_eq!((proj.rows, proj.cols), (1, 2));
        assert_eq!(proj.rank(), 1);
        // map to the trivial group kills positive degrees
        let t = bar_homology(2, 0, 3).unwrap();
        let _ = t;
    }

    #[test]
    fn subspace_enumeration_counts() {
        assert_eq!(proper_subspaces(1, 2).len(), 1);
        assert_eq!(proper_subspaces(2, 2).len(), 4); // 0 and three lines
        assert_eq!(proper_subspaces(2, 3).len(), 5); // 0 and four lines
        assert_eq!(proper_subspaces(3, 2).len(), 15); // 0, 7 lines, 7 planes
    }

    #[test]
    fn klein_pages_match_known_values() {
        let pages = e1_e2_pages(2, 2, 4, DEFAULT_BAR_BUDGET).unwrap();
        // E¹_{0,t} = (t+1) + 3·1, E¹_{1,t} = 3(t+1)
        for t in 0..=4 {
            assert_eq!(pages.e1[0][t], t + 4);
            assert_eq!(pages.e1[1][t], 3 * (t + 1));
        }
        // E²_{0,0} = 1 and the column above it vanishes
        assert_eq!(pages.e2[0][0], 1);
        for t in 1..=4 {
            assert_eq!(pages.e2[0][t], 0, "conjectured vanishing at s=0, t={t}");
        }
        // E²_{1,t} = 2t−1 for t ≥ 1; zero at t = 0
        assert_eq!(pages.e2[1][0], 0);
        for t in 1..=4 {
            assert_eq!(pages.e2[1][t], 2 * t - 1);
        }
    }

    #[test]
    fn rank1_pages_are_the_group_itself() {
        let pages = e1_e2_pages(1, 2, 4, DEFAULT_BAR_BUDGET).unwrap();
        // single column s = 0 over the single flag (0): E² = H_t(V)
        for t in 0..=4 {
            assert_eq!(pages.e2[0][t], 1);
        }
    }

    #[test]
    fn p3_rank2_pages() {
        let pages = e1_e2_pages(2, 3, 2, DEFAULT_BAR_BUDGET).unwrap();
        assert_eq!(pages.e2[0][0], 1);
        assert_eq!(pages.e2[0][1], 0);
        assert_eq!(pages.e2[0][2], 0);
        // E²_{1,t} = pt−1 at rank 2
        assert_eq!(pages.e2[1][1], 2);
        assert_eq!(pages.e2[1][2], 5);
    }
}
