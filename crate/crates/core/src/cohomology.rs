//! Chevalley-Eilenberg (co)homology of the nilradical per weight block, and
//! the Dirac operators `C`, `C⁻`, `D = C + C⁻` on `M ⊗ S`.
//!
//! Every computation here is per weight: `D` preserves the total weight and
//! the differentials preserve the cochain weight, so each block is a finite
//! exact linear-algebra problem. Windows only decide which blocks get
//! enumerated; they never truncate a block.
//!
//! The two sides are assembled independently: the CE differentials from the
//! textbook alternating-sum formulas, the Clifford-side operators from
//! `block_action` and the spin module. [`correspondence_check`] compares them
//! entrywise (`C = d`, `C⁻ = −2∂` under the standard identification of
//! cochains with `M ⊗ ∧u`) and is the artifact's master consistency gate.

use crate::error::{Error, Result};
use crate::liestruct::Gen;
use crate::matrix::{intersection_dim, Mat};
use crate::rational::{q_int, q_ratio, Q};
use crate::rootdata::{ParabolicDatum, Weight};
use crate::spinor::spin_basis;
use crate::wmod::Module;
use num_traits::Zero;
use std::sync::Arc;

/// Which nilpotent algebra and which variance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    UbarCohomology,
    UCohomology,
    UHomology,
    UbarHomology,
}

impl Direction {
    pub fn is_cohomology(&self) -> bool {
        matches!(self, Direction::UbarCohomology | Direction::UCohomology)
    }

    /// Whether the nilpotent algebra is spanned by `e`-vectors (`u`) or
    /// `f`-vectors (`ū`).
    fn uses_e_vectors(&self) -> bool {
        matches!(self, Direction::UCohomology | Direction::UHomology)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Direction::UbarCohomology => "ubar-cohomology",
            Direction::UCohomology => "u-cohomology",
            Direction::UHomology => "u-homology",
            Direction::UbarHomology => "ubar-homology",
        }
    }

    pub fn parse(s: &str) -> Option<Direction> {
        match s {
            "ubar-cohomology" => Some(Direction::UbarCohomology),
            "u-cohomology" => Some(Direction::UCohomology),
            "u-homology" => Some(Direction::UHomology),
            "ubar-homology" => Some(Direction::UbarHomology),
            _ => None,
        }
    }
}

/// One weight block of a Chevalley-Eilenberg complex: per-degree bases of
/// `M ⊗ ∧•` labels and the differential matrices.
pub struct BlockComplex {
    pub weight: Weight,
    pub direction: Direction,
    /// `basis[p]` lists `(mask, module_basis_index)`; bit `i` of the mask is
    /// the `i`-th root of `Δ(u)`.
    pub basis: Vec<Vec<(u32, usize)>>,
    /// For cohomology, `maps[p] : degree p → p+1`; for homology,
    /// `maps[p] : degree p → p−1` (with `maps[0]` empty).
    pub maps: Vec<Mat>,
}

impl BlockComplex {
    pub fn chain_dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    /// Per-degree dimensions of `H^p` (or `H_p`).
    pub fn homology_dims(&self) -> Vec<usize> {
        let n = self.basis.len();
        (0..n).map(|p| self.homology_dim(p)).collect()
    }

    pub fn homology_dim(&self, p: usize) -> usize {
        let (out_rank, in_rank) = self.ranks_at(p);
        self.basis[p].len() - out_rank - in_rank
    }

    /// (rank of the map out of degree p, rank of the map into degree p)
    fn ranks_at(&self, p: usize) -> (usize, usize) {
        let n = self.basis.len();
        if self.direction.is_cohomology() {
            let out_rank = if p + 1 < n { self.maps[p].rank() } else { 0 };
            let in_rank = if p > 0 { self.maps[p - 1].rank() } else { 0 };
            (out_rank, in_rank)
        } else {
            let out_rank = if p > 0 { self.maps[p].rank() } else { 0 };
            let in_rank = if p + 1 < n { self.maps[p + 1].rank() } else { 0 };
            (out_rank, in_rank)
        }
    }

    /// Representative cycles for the classes in degree `p`, as columns.
    /// Deterministic: kernel-basis columns that extend the boundary space.
    pub fn homology_reps(&self, p: usize) -> Mat {
        let n = self.basis.len();
        let dim_p = self.basis[p].len();
        let (kernel, image) = if self.direction.is_cohomology() {
            let kernel = if p + 1 < n { self.maps[p].nullspace() } else { Mat::identity(dim_p) };
            let image = if p > 0 { self.maps[p - 1].clone() } else { Mat::zero(dim_p, 0) };
            (kernel, image)
        } else {
            let kernel = if p > 0 { self.maps[p].nullspace() } else { Mat::identity(dim_p) };
            let image = if p + 1 < n { self.maps[p + 1].clone() } else { Mat::zero(dim_p, 0) };
            (kernel, image)
        };
        // columns of `kernel` that add new pivots after the image columns
        let stacked = image.hstack(&kernel);
        let (_, pivots) = stacked.rref();
        let img_rank = image.rank();
        let mut reps = Mat::zero(dim_p, self.homology_dim(p));
        let mut j = 0;
        for &pv in pivots.iter().skip(img_rank) {
            let col = pv - image.cols;
            for r in 0..dim_p {
                reps.set(r, j, kernel.get(r, col).clone());
            }
            j += 1;
        }
        reps
    }

    /// `d ∘ d = 0` on this block, exactly.
    pub fn check_square_zero(&self) -> bool {
        let n = self.basis.len();
        if self.direction.is_cohomology() {
            for p in 0..n.saturating_sub(2) {
                if !self.maps[p + 1].mul(&self.maps[p]).is_zero() {
                    return false;
                }
            }
        } else {
            for p in 2..n {
                if !self.maps[p - 1].mul(&self.maps[p]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Euler characteristic identity: alternating sums of chain dims and of
    /// homology dims agree (rank-nullity, exact).
    pub fn euler_characteristics_agree(&self) -> bool {
        let chains: i64 = self
            .chain_dims()
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let homs: i64 = self
            .homology_dims()
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        chains == homs
    }
}

fn nilpotent_gens(pd: &ParabolicDatum, use_e: bool) -> Vec<Gen> {
    pd.delta_u.iter().map(|&r| if use_e { Gen::E(r) } else { Gen::F(r) }).collect()
}

fn mask_weight(m: &Module, pd: &ParabolicDatum, gens: &[Gen], mask: u32) -> Weight {
    let mut w = Weight::zero(pd.rd.rank);
    for (i, g) in gens.iter().enumerate() {
        if mask & (1 << i) != 0 {
            w = w.add(m.la.gen_weight(*g));
        }
    }
    w
}

/// Chevalley-Eilenberg complex of the chosen direction at one weight.
///
/// For cohomology the block at `lam` consists of the cochains of weight
/// `lam`: pairs `(T, m)` with `m ∈ M_{lam + Σ_{i∈T} wt(x_i)}`. For homology
/// it consists of the chains `m ⊗ x_T` with `m ∈ M_{lam − Σ_{i∈T} wt(x_i)}`.
pub fn lie_cohomology(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    lam: &Weight,
    direction: Direction,
) -> Result<BlockComplex> {
    let gens = nilpotent_gens(pd, direction.uses_e_vectors());
    let n = gens.len();
    // basis per degree
    let mut basis: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        let p = mask.count_ones() as usize;
        let mw = mask_weight(m, pd, &gens, mask);
        let m_weight = if direction.is_cohomology() { lam.add(&mw) } else { lam.sub(&mw) };
        let d = m.dim(&m_weight);
        for j in 0..d {
            basis[p].push((mask, j));
        }
    }
    for b in basis.iter_mut() {
        b.sort_unstable();
    }
    let index: Vec<std::collections::HashMap<(u32, usize), usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, k)| (*k, i)).collect())
        .collect();

    let mut maps = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let mat = if direction.is_cohomology() {
            if p == n {
                Mat::zero(0, basis[p].len())
            } else {
                coboundary(m, pd, lam, &gens, &basis[p], basis[p + 1].len(), &index[p + 1])?
            }
        } else if p == 0 {
            Mat::zero(0, basis[p].len())
        } else {
            boundary(m, pd, lam, &gens, &basis[p], basis[p - 1].len(), &index[p - 1])?
        };
        maps.push(mat);
    }
    Ok(BlockComplex { weight: lam.clone(), direction, basis, maps })
}

/// Sign for sorting generator `k` into the sorted subset `mask` (which must
/// not contain `k`): parity of the number of set bits below `k`.
fn insert_sign(mask: u32, k: usize) -> Q {
    let below = (mask & ((1u32 << k) - 1)).count_ones();
    if below % 2 == 0 {
        q_int(1)
    } else {
        q_int(-1)
    }
}

/// Bracket of two nilpotent-algebra generators expressed in that algebra:
/// list of (generator position, coefficient).
fn nil_bracket(m: &Module, gens: &[Gen], a: usize, b: usize) -> Vec<(usize, Q)> {
    let br = m.la.bracket_gens(gens[a], gens[b]);
    br.iter()
        .map(|(g, c)| {
            let pos =
                gens.iter().position(|x| x == g).expect("nilradical is closed under brackets");
            (pos, c.clone())
        })
        .collect()
}

fn coboundary(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    lam: &Weight,
    gens: &[Gen],
    src: &[(u32, usize)],
    dst_len: usize,
    dst_index: &std::collections::HashMap<(u32, usize), usize>,
) -> Result<Mat> {
    let n = gens.len();
    let mut out = Mat::zero(dst_len, src.len());
    for (col, &(t_mask, mj)) in src.iter().enumerate() {
        let src_mw = lam.add(&mask_weight(m, pd, gens, t_mask));
        // action terms: dφ(x_R) picks up (−1)^a x_{r_a} φ(R∖a) whenever
        // R∖a = T, i.e. R = T ∪ {y} for y ∉ T, with a the position of y in R
        for y in 0..n {
            if t_mask & (1 << y) != 0 {
                continue;
            }
            let r_mask = t_mask | (1 << y);
            let a = (r_mask & ((1u32 << y) - 1)).count_ones() as usize;
            let sign = if a % 2 == 0 { q_int(1) } else { q_int(-1) };
            let block = m.act_gen(gens[y], &src_mw)?;
            for r in 0..block.rows {
                let v = block.get(r, mj);
                if !v.is_zero() {
                    let row = dst_index[&(r_mask, r)];
                    out.add_to(row, col, &(v * &sign));
                }
            }
        }
        // bracket terms: (−1)^{a+b} φ([x_{r_a}, x_{r_b}] ∧ R∖{a,b}) with
        // [x_a, x_b] = Σ_k c_k x_k; contributes when {k} ∪ (R∖{a,b}) = T
        for r_mask in supersets_of_codim(t_mask, n) {
            let rs: Vec<usize> = (0..n).filter(|i| r_mask & (1 << i) != 0).collect();
            for (a, &ra) in rs.iter().enumerate() {
                for (b, &rb) in rs.iter().enumerate().skip(a + 1) {
                    let rest = r_mask & !(1 << ra) & !(1 << rb);
                    let sign_ab = if (a + b) % 2 == 0 { q_int(1) } else { q_int(-1) };
                    for (k, c) in nil_bracket(m, gens, ra, rb) {
                        if rest & (1 << k) != 0 {
                            continue;
                        }
                        if (rest | (1 << k)) != t_mask {
                            continue;
                        }
                        let total = &sign_ab * c * insert_sign(rest, k);
                        let row = dst_index[&(r_mask, mj)];
                        out.add_to(row, col, &total);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Masks with exactly one more bit than `t_mask` (the degree p+1 sets whose
/// bracket terms can hit the cochain supported on `t_mask`).
fn supersets_of_codim(t_mask: u32, n: usize) -> Vec<u32> {
    // the bracket term removes two factors and inserts one, so R has one
    // more element than T; R need not contain T
    let p1 = t_mask.count_ones() + 1;
    (0u32..(1 << n)).filter(|r| r.count_ones() == p1).collect()
}

fn boundary(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    lam: &Weight,
    gens: &[Gen],
    src: &[(u32, usize)],
    dst_len: usize,
    dst_index: &std::collections::HashMap<(u32, usize), usize>,
) -> Result<Mat> {
    let mut out = Mat::zero(dst_len, src.len());
    for (col, &(t_mask, mj)) in src.iter().enumerate() {
        let src_mw = lam.sub(&mask_weight(m, pd, gens, t_mask));
        let ts: Vec<usize> = (0..gens.len()).filter(|i| t_mask & (1 << i) != 0).collect();
        // ∂(m ⊗ x_1∧…∧x_p) = Σ_a (−1)^{a+1} x_a m ⊗ (omit a)
        //                  + Σ_{a<b} (−1)^{a+b} m ⊗ [x_a,x_b] ∧ (omit a,b)
        // (0-based a; the action-term sign makes C⁻ = −2∂ hold on the nose)
        for (a, &ta) in ts.iter().enumerate() {
            let rest = t_mask & !(1 << ta);
            let sign = if (a + 1) % 2 == 0 { q_int(1) } else { q_int(-1) };
            let block = m.act_gen(gens[ta], &src_mw)?;
            for r in 0..block.rows {
                let v = block.get(r, mj);
                if !v.is_zero() {
                    let row = dst_index[&(rest, r)];
                    out.add_to(row, col, &(v * &sign));
                }
            }
        }
        for (a, &ta) in ts.iter().enumerate() {
            for (b, &tb) in ts.iter().enumerate().skip(a + 1) {
                let rest = t_mask & !(1 << ta) & !(1 << tb);
                let sign_ab = if (a + b) % 2 == 0 { q_int(1) } else { q_int(-1) };
                for (k, c) in nil_bracket(m, gens, ta, tb) {
                    if rest & (1 << k) != 0 {
                        continue;
                    }
                    let total = &sign_ab * c * insert_sign(rest, k);
                    let row = dst_index[&(rest | (1 << k), mj)];
                    out.add_to(row, col, &total);
                }
            }
        }
    }
    Ok(out)
}

/// One weight block of `M ⊗ S` with the operators `C`, `C⁻` and `D = C + C⁻`.
pub struct DiracBlock {
    pub weight: Weight,
    /// `(spin mask, module basis index)`, ordered by (degree, mask, index);
    /// the module part lives at `weight − ρ(ū) − Σ_{β∈T} β`.
    pub basis: Vec<(u32, usize)>,
    pub c_plus: Mat,
    pub c_minus: Mat,
    pub dirac: Mat,
}

impl DiracBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, idx: usize) -> bool {
        self.basis[idx].0.count_ones() % 2 == 1
    }
}

/// Assembles `C`, `C⁻` and `D` on the `lam`-block of `M ⊗ S`, from
/// `block_action` and the Clifford action. The quadratic Clifford correction
/// vanishes when `u` is abelian and is assembled from the bracket table
/// otherwise; `D` preserves the total weight.
pub fn dirac_block(m: &Arc<Module>, pd: &Arc<ParabolicDatum>, lam: &Weight) -> Result<DiracBlock> {
    let sm = spin_basis(pd);
    let nu = pd.dim_u();
    let mut basis: Vec<(u32, usize)> = Vec::new();
    for mask in 0u32..(1 << nu) {
        let mw = lam.sub(&sm.basis[mask as usize].weight);
        for j in 0..m.dim(&mw) {
            basis.push((mask, j));
        }
    }
    basis.sort_by_key(|&(mask, j)| (mask.count_ones(), mask, j));
    let index: std::collections::HashMap<(u32, usize), usize> =
        basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let dim = basis.len();
    let mut c_plus = Mat::zero(dim, dim);
    let mut c_minus = Mat::zero(dim, dim);

    for (col, &(mask, mj)) in basis.iter().enumerate() {
        let m_weight = lam.sub(&sm.basis[mask as usize].weight);
        // C  = Σ_i f_{β_i} ⊗ e_i  −  ¼ Σ_{i,j} 1 ⊗ e_i e_j [f_i, f_j]
        // C⁻ = Σ_i e_{β_i} ⊗ f_i  −  ¼ Σ_{i,j} 1 ⊗ f_i f_j [e_i, e_j]
        for &ri in &pd.delta_u {
            // linear term of C
            if let Some((mask2, s)) = sm.act_basis(Gen::E(ri), mask)? {
                let block = m.act_gen(Gen::F(ri), &m_weight)?;
                for r in 0..block.rows {
                    let v = block.get(r, mj);
                    if !v.is_zero() {
                        let row = index[&(mask2, r)];
                        c_plus.add_to(row, col, &(v * &s));
                    }
                }
            }
            // linear term of C⁻
            if let Some((mask2, s)) = sm.act_basis(Gen::F(ri), mask)? {
                let block = m.act_gen(Gen::E(ri), &m_weight)?;
                for r in 0..block.rows {
                    let v = block.get(r, mj);
                    if !v.is_zero() {
                        let row = index[&(mask2, r)];
                        c_minus.add_to(row, col, &(v * &s));
                    }
                }
            }
        }
        // quadratic Clifford corrections
        let quarter = q_ratio(-1, 4);
        for &ri in &pd.delta_u {
            for &rj in &pd.delta_u {
                // C: −¼ e_i e_j [f_i, f_j],  [f_i, f_j] ∈ ū
                let br = m.la.bracket_gens(Gen::F(ri), Gen::F(rj)).clone();
                for (g, cc) in &br {
                    let Gen::F(rk) = g else { unreachable!("[ū,ū] ⊆ ū") };
                    if let Some((m1, s1)) = sm.act_basis(Gen::F(*rk), mask)? {
                        if let Some((m2, s2)) = sm.act_basis(Gen::E(rj), m1)? {
                            if let Some((m3, s3)) = sm.act_basis(Gen::E(ri), m2)? {
                                let coeff = &quarter * cc * s1 * s2 * s3;
                                let row = index[&(m3, mj)];
                                c_plus.add_to(row, col, &coeff);
                            }
                        }
                    }
                }
                // C⁻: −¼ f_i f_j [e_i, e_j],  [e_i, e_j] ∈ u
                let br = m.la.bracket_gens(Gen::E(ri), Gen::E(rj)).clone();
                for (g, cc) in &br {
                    let Gen::E(rk) = g else { unreachable!("[u,u] ⊆ u") };
                    if let Some((m1, s1)) = sm.act_basis(Gen::E(*rk), mask)? {
                        if let Some((m2, s2)) = sm.act_basis(Gen::F(rj), m1)? {
                            if let Some((m3, s3)) = sm.act_basis(Gen::F(ri), m2)? {
                                let coeff = &quarter * cc * s1 * s2 * s3;
                                let row = index[&(m3, mj)];
                                c_minus.add_to(row, col, &coeff);
                            }
                        }
                    }
                }
            }
        }
    }
    let dirac = c_plus.add(&c_minus);
    Ok(DiracBlock { weight: lam.clone(), basis, c_plus, c_minus, dirac })
}

/// Dirac cohomology of one block, split by spin parity.
pub struct DiracCohomology {
    pub weight: Weight,
    pub dim_plus: usize,
    pub dim_minus: usize,
    /// Representative vectors (columns, in the even/odd sub-basis).
    pub reps_plus: Mat,
    pub reps_minus: Mat,
}

/// `ker D / (ker D ∩ im D)` on the `lam`-block, split by parity; exact.
pub fn dirac_cohomology(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    lam: &Weight,
) -> Result<DiracCohomology> {
    let db = dirac_block(m, pd, lam)?;
    let even: Vec<usize> = (0..db.dim()).filter(|&i| !db.parity(i)).collect();
    let odd: Vec<usize> = (0..db.dim()).filter(|&i| db.parity(i)).collect();
    let restrict = |rows: &[usize], cols: &[usize]| -> Mat {
        let mut out = Mat::zero(rows.len(), cols.len());
        for (r, &ri) in rows.iter().enumerate() {
            for (c, &ci) in cols.iter().enumerate() {
                out.set(r, c, db.dirac.get(ri, ci).clone());
            }
        }
        out
    };
    // D is odd: it maps even ↔ odd
    let d_eo = restrict(&odd, &even); // even → odd
    let d_oe = restrict(&even, &odd); // odd → even
    let compute = |d_out: &Mat, d_in: &Mat, side_dim: usize| -> (usize, Mat) {
        let kernel = d_out.nullspace();
        let dim_h = kernel.cols - intersection_dim(&kernel, d_in);
        let stacked = d_in.hstack(&kernel);
        let (_, pivots) = stacked.rref();
        let img_rank = d_in.rank();
        let mut reps = Mat::zero(side_dim, dim_h);
        let mut j = 0;
        for &pv in pivots.iter().skip(img_rank) {
            if pv < d_in.cols {
                continue;
            }
            let col = pv - d_in.cols;
            for r in 0..side_dim {
                reps.set(r, j, kernel.get(r, col).clone());
            }
            j += 1;
        }
        (dim_h, reps)
    };
    let (dim_plus, reps_plus) = compute(&d_eo, &d_oe, even.len());
    let (dim_minus, reps_minus) = compute(&d_oe, &d_eo, odd.len());
    Ok(DiracCohomology { weight: lam.clone(), dim_plus, dim_minus, reps_plus, reps_minus })
}

/// The master consistency gate: under the identification of `(M ⊗ S)_λ`
/// with the `ū`-cochains (and `u`-chains) of weight `λ − ρ(ū)`,
/// `matrix(C) = matrix(d)` and `matrix(C⁻) = −2 · matrix(∂)` entrywise.
/// Reports the first mismatch.
pub fn correspondence_check(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    lam: &Weight,
) -> Result<()> {
    let db = dirac_block(m, pd, lam)?;
    let lam_c = lam.sub(&pd.rho_ubar);
    let cochain = lie_cohomology(m, pd, &lam_c, Direction::UbarCohomology)?;
    let chain = lie_cohomology(m, pd, &lam_c, Direction::UHomology)?;

    // embed the graded complexes into the Dirac basis ordering
    let index: std::collections::HashMap<(u32, usize), usize> =
        db.basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let nu = pd.dim_u();
    let dim = db.dim();

    let mut d_full = Mat::zero(dim, dim);
    for p in 0..nu {
        let map = &cochain.maps[p];
        for (c, &src_key) in cochain.basis[p].iter().enumerate() {
            let col = *index.get(&src_key).ok_or_else(|| {
                Error::VerificationMismatch(format!(
                    "cochain basis {src_key:?} missing from the Dirac block at {lam}"
                ))
            })?;
            for (r, &dst_key) in cochain.basis[p + 1].iter().enumerate() {
                let v = map.get(r, c);
                if !v.is_zero() {
                    let row = index[&dst_key];
                    d_full.set(row, col, v.clone());
                }
            }
        }
    }
    let mut bd_full = Mat::zero(dim, dim);
    for p in 1..=nu {
        let map = &chain.maps[p];
        for (c, &src_key) in chain.basis[p].iter().enumerate() {
            let col = index[&src_key];
            for (r, &dst_key) in chain.basis[p - 1].iter().enumerate() {
                let v = map.get(r, c);
                if !v.is_zero() {
                    let row = index[&dst_key];
                    bd_full.set(row, col, v.clone());
                }
            }
        }
    }

    for r in 0..dim {
        for c in 0..dim {
            let lhs = db.c_plus.get(r, c);
            let rhs = d_full.get(r, c);
            if lhs != rhs {
                return Err(Error::VerificationMismatch(format!(
                    "C ≠ d at λ={lam}, entry ({r},{c}): C = {}, d = {}",
                    crate::rational::format_q(lhs),
                    crate::rational::format_q(rhs)
                )));
            }
            let lhs = db.c_minus.get(r, c);
            let rhs = bd_full.get(r, c).clone() * q_int(-2);
            if *lhs != rhs {
                return Err(Error::VerificationMismatch(format!(
                    "C⁻ ≠ −2∂ at λ={lam}, entry ({r},{c}): C⁻ = {}, −2∂ = {}",
                    crate::rational::format_q(lhs),
                    crate::rational::format_q(&rhs)
                )));
            }
        }
    }
    Ok(())
}
