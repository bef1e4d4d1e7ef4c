//! Root systems, Weyl groups, weights and parabolic data for the rank ≤ 2
//! types `A1`, `A1xA1`, `A2` and `B2`.
//!
//! Weights are stored in fundamental-weight coordinates (rationals), so the
//! `i`-th coordinate of a weight `λ` is the eigenvalue `λ(h_i)` of the `i`-th
//! simple coroot. Half-integral `ρ`-shifts and non-integral cuspidal
//! parameters are exact in this basis; simple-root coordinates are recovered
//! through the inverse Cartan matrix.
//!
//! `B2` and `C2` are the same abstract datum; the label is normalized to
//! `B2`, with the first simple root long (Cartan matrix rows `[2,-1]`,
//! `[-2,2]`).

use crate::error::{Error, Result};
use crate::rational::{is_integer, q_int, Q};
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Q) -> Weight {
        Weight(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    /// The scalar by which the coroot `h_i` acts on this weight space.
    pub fn eval_coroot(&self, i: usize) -> Q {
        self.0[i].clone()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(crate::rational::format_q).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// One positive root, with all coordinate views precomputed.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coordinates over the simple roots (nonnegative integers).
    pub simple: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub fund: Weight,
    /// The coroot `h_β` as an integer combination of simple coroots.
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

/// A Weyl group element, stored as its integer matrix on fundamental
/// coordinates together with its length.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub mat: Vec<Vec<i64>>,
    pub length: usize,
    /// A reduced word in simple reflections (empty for the identity).
    pub word: Vec<usize>,
}

#[derive(Debug)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    /// `cartan[i][j] = α_j(h_i)`.
    pub cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    pub positive_roots: Vec<Root>,
    pub weyl: Vec<WeylElement>,
    pub rho: Weight,
}

/// Builds the root datum for one of the supported type labels.
pub fn build_root_system(type_label: &str) -> Result<Arc<RootDatum>> {
    let label = match type_label {
        "A1" => "A1",
        "A1xA1" | "A1XA1" | "A1x A1" => "A1xA1",
        "A2" => "A2",
        "B2" | "C2" => "B2",
        other => return Err(Error::UnknownType(other.to_string())),
    };
    let (cartan, roots, coroots): (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>) = match label {
        "A1" => (vec![vec![2]], vec![vec![1]], vec![vec![1]]),
        "A1xA1" => (
            vec![vec![2, 0], vec![0, 2]],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        "A2" => (
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        ),
        "B2" => (
            vec![vec![2, -1], vec![-2, 2]],
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]],
            vec![vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 1]],
        ),
        _ => unreachable!(),
    };
    let rank = cartan.len();
    let positive_roots: Vec<Root> = roots
        .into_iter()
        .zip(coroots)
        .map(|(simple, coroot)| {
            let fund = Weight(
                (0..rank)
                    .map(|i| {
                        q_int((0..rank).map(|j| cartan[i][j] * simple[j]).sum::<i64>())
                    })
                    .collect(),
            );
            Root { simple, fund, coroot }
        })
        .collect();
    let cartan_inv = invert_cartan(&cartan);
    let rho = Weight(vec![q_int(1); rank]);
    let weyl = enumerate_weyl(rank, &cartan, &positive_roots, &cartan_inv);
    Ok(Arc::new(RootDatum { label: label.to_string(), rank, cartan, cartan_inv, positive_roots, weyl, rho }))
}

fn invert_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = cartan.len();
    let m = crate::matrix::Mat::from_rows(
        cartan.iter().map(|row| row.iter().map(|&x| q_int(x)).collect()).collect(),
    );
    let inv = m.inverse().expect("Cartan matrix is invertible");
    (0..n).map(|r| (0..n).map(|c| inv.get(r, c).clone()).collect()).collect()
}

/// Matrix of the simple reflection `s_i` on fundamental coordinates:
/// `s_i(λ) = λ - λ_i α_i`, and `α_i` has fundamental coordinates
/// `cartan[.][i]`.
fn simple_reflection_matrix(rank: usize, cartan: &[Vec<i64>], i: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; rank]; rank];
    for j in 0..rank {
        m[j][j] = 1;
        m[j][i] -= cartan[j][i];
    }
    m
}

fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for r in 0..n {
        for k in 0..n {
            if a[r][k] == 0 {
                continue;
            }
            for c in 0..n {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    out
}

fn apply_i64(m: &[Vec<i64>], w: &Weight) -> Weight {
    let n = w.rank();
    Weight(
        (0..n)
            .map(|r| {
                let mut acc = Q::zero();
                for c in 0..n {
                    if m[r][c] != 0 {
                        acc += &w.0[c] * q_int(m[r][c]);
                    }
                }
                acc
            })
            .collect(),
    )
}

fn enumerate_weyl(
    rank: usize,
    cartan: &[Vec<i64>],
    positive_roots: &[Root],
    cartan_inv: &[Vec<Q>],
) -> Vec<WeylElement> {
    let gens: Vec<Vec<Vec<i64>>> =
        (0..rank).map(|i| simple_reflection_matrix(rank, cartan, i)).collect();
    let id: Vec<Vec<i64>> = (0..rank)
        .map(|r| (0..rank).map(|c| i64::from(r == c)).collect())
        .collect();
    let mut elements: Vec<WeylElement> = vec![WeylElement { mat: id, length: 0, word: vec![] }];
    let mut seen: Vec<Vec<Vec<i64>>> = vec![elements[0].mat.clone()];
    let mut frontier = vec![0usize];
    while let Some(next) = {
        let mut new_frontier = Vec::new();
        for &idx in &frontier {
            let base = elements[idx].clone();
            for (i, g) in gens.iter().enumerate() {
                // right multiplication: w * s_i
                let m = mat_mul_i64(&base.mat, g);
                if !seen.contains(&m) {
                    seen.push(m.clone());
                    let mut word = base.word.clone();
                    word.push(i);
                    elements.push(WeylElement { mat: m, length: 0, word });
                    new_frontier.push(elements.len() - 1);
                }
            }
        }
        if new_frontier.is_empty() { None } else { Some(new_frontier) }
    } {
        frontier = next;
    }
    // length = number of positive roots sent negative
    for el in &mut elements {
        el.length = positive_roots
            .iter()
            .filter(|root| {
                let img = apply_i64(&el.mat, &root.fund);
                // negative root: simple-root coordinates all <= 0
                let coords = root_coords_of(cartan_inv, &img);
                coords.iter().all(|c| *c <= Q::zero())
            })
            .count();
    }
    elements.sort_by(|a, b| (a.length, &a.word).cmp(&(b.length, &b.word)));
    elements
}

fn root_coords_of(cartan_inv: &[Vec<Q>], w: &Weight) -> Vec<Q> {
    let n = w.rank();
    (0..n)
        .map(|i| {
            let mut acc = Q::zero();
            for j in 0..n {
                acc += &cartan_inv[i][j] * &w.0[j];
            }
            acc
        })
        .collect()
}

impl RootDatum {
    pub fn weight(&self, coords: Vec<Q>) -> Weight {
        assert_eq!(coords.len(), self.rank);
        Weight(coords)
    }

    /// Coordinates of `w` over the simple roots. Always defined for
    /// semisimple rank ≤ 2 data (the Cartan matrix is invertible).
    pub fn root_coords(&self, w: &Weight) -> Vec<Q> {
        root_coords_of(&self.cartan_inv, w)
    }

    /// Membership in the root lattice `Q`: integrality of simple-root coords.
    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coords(w).iter().all(is_integer)
    }

    pub fn apply_weyl(&self, w: &WeylElement, lam: &Weight) -> Weight {
        apply_i64(&w.mat, lam)
    }

    /// The ρ-shifted dot action `w · λ = w(λ + ρ) − ρ`.
    pub fn dot_action(&self, w: &WeylElement, lam: &Weight) -> Weight {
        self.apply_weyl(w, &lam.add(&self.rho)).sub(&self.rho)
    }

    /// The dot orbit `{(w, w·λ)}` with duplicate weights collapsed
    /// (the representative of smallest length, then lexicographic word, wins).
    pub fn dot_orbit(&self, lam: &Weight) -> Vec<(usize, Weight)> {
        let mut out: Vec<(usize, Weight)> = Vec::new();
        for (i, w) in self.weyl.iter().enumerate() {
            let img = self.dot_action(w, lam);
            if !out.iter().any(|(_, v)| *v == img) {
                out.push((i, img));
            }
        }
        out
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut v = vec![Q::zero(); self.rank];
        v[i] = q_int(1);
        Weight(v)
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[i]
    }

    /// Index of the positive root with the given simple-root coordinates.
    pub fn find_positive_root(&self, simple: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.simple == simple)
    }

    /// Builds the parabolic datum for a subset `I` of simple-root indices.
    pub fn parabolic(self: &Arc<Self>, levi: &BTreeSet<usize>) -> Result<Arc<ParabolicDatum>> {
        if levi.iter().any(|&i| i >= self.rank) {
            return Err(Error::ConfigGeneral(format!(
                "levi subset index out of range for rank {}",
                self.rank
            )));
        }
        let mut delta_l = Vec::new();
        let mut delta_u = Vec::new();
        for (idx, root) in self.positive_roots.iter().enumerate() {
            let in_levi_span = root
                .simple
                .iter()
                .enumerate()
                .all(|(j, &k)| k == 0 || levi.contains(&j));
            if in_levi_span {
                delta_l.push(idx);
            } else {
                delta_u.push(idx);
            }
        }
        let mut rho_u = Weight::zero(self.rank);
        for &idx in &delta_u {
            rho_u = rho_u.add(&self.positive_roots[idx].fund);
        }
        rho_u = rho_u.scale(&crate::rational::q_ratio(1, 2));
        let rho_ubar = rho_u.neg();
        Ok(Arc::new(ParabolicDatum {
            rd: Arc::clone(self),
            levi: levi.clone(),
            delta_l,
            delta_u,
            rho_u,
            rho_ubar,
        }))
    }

    pub fn borel(self: &Arc<Self>) -> Arc<ParabolicDatum> {
        self.parabolic(&BTreeSet::new()).expect("empty levi subset is valid")
    }

    /// Human-readable name for a positive root index (e.g. `alpha1+alpha2`).
    pub fn root_name(&self, idx: usize) -> String {
        let root = &self.positive_roots[idx];
        let mut parts = Vec::new();
        for (j, &k) in root.simple.iter().enumerate() {
            let base = if self.rank == 1 { "alpha".to_string() } else { format!("alpha{}", j + 1) };
            match k {
                0 => {}
                1 => parts.push(base),
                n => parts.push(format!("{n}{base}")),
            }
        }
        parts.join("+")
    }
}

/// A box window in simple-root coordinates: the weights `base + Σ k_i α_i`
/// with `|k_i| ≤ radius`. Windows select which blocks get enumerated; every
/// per-block computation is exact regardless of the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub base: Weight,
    pub radius: i64,
}

impl Window {
    pub fn new(base: Weight, radius: i64) -> Self {
        Window { base, radius }
    }

    /// Window weights in lexicographic order of the root-coordinate offsets.
    pub fn weights(&self, rd: &RootDatum) -> Vec<Weight> {
        let rank = rd.rank;
        let mut out = Vec::new();
        let mut ks = vec![-self.radius; rank];
        loop {
            let mut w = self.base.clone();
            for (i, &k) in ks.iter().enumerate() {
                w = w.add(&rd.simple_root(i).fund.scale(&q_int(k)));
            }
            out.push(w);
            // increment the ks counter lexicographically
            let mut i = rank;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if ks[i] < self.radius {
                    ks[i] += 1;
                    for k in ks.iter_mut().skip(i + 1) {
                        *k = -self.radius;
                    }
                    break;
                }
            }
        }
    }

    pub fn contains(&self, rd: &RootDatum, w: &Weight) -> bool {
        let coords = rd.root_coords(&w.sub(&self.base));
        coords.iter().all(|c| {
            is_integer(c) && {
                let n: i64 = crate::rational::floor_q(c).try_into().unwrap_or(i64::MAX);
                n.abs() <= self.radius
            }
        })
    }
}

/// Parabolic decomposition data: `Δ = Δ(l) ⊔ Δ(u) ⊔ Δ(ū)` with
/// `Δ(u) = Δ⁺ \ Δ(l)` and `ρ(u)` the half sum over `Δ(u)`.
#[derive(Debug)]
pub struct ParabolicDatum {
    pub rd: Arc<RootDatum>,
    pub levi: BTreeSet<usize>,
    /// Positive roots lying in the Levi span.
    pub delta_l: Vec<usize>,
    /// Positive roots of the nilradical `u`.
    pub delta_u: Vec<usize>,
    pub rho_u: Weight,
    pub rho_ubar: Weight,
}

impl ParabolicDatum {
    pub fn dim_u(&self) -> usize {
        self.delta_u.len()
    }

    pub fn is_borel(&self) -> bool {
        self.levi.is_empty()
    }

    pub fn is_improper(&self) -> bool {
        self.delta_u.is_empty()
    }

    /// `ht_p(ν) = Σ_{α ∉ I} k_α` where `ν = Σ k_α α`.
    pub fn parabolic_height(&self, nu: &Weight) -> Result<Q> {
        if nu.rank() != self.rd.rank {
            return Err(Error::NotInRootSpan);
        }
        let coords = self.rd.root_coords(nu);
        let mut acc = Q::zero();
        for (i, c) in coords.iter().enumerate() {
            if !self.levi.contains(&i) {
                acc += c;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_q, q_ratio};

    fn w(rd: &RootDatum, coords: &[&str]) -> Weight {
        rd.weight(coords.iter().map(|s| parse_q(s).unwrap()).collect())
    }

    #[test]
    fn classified_sizes() {
        // |Δ⁺| and |W| match the classified values.
        for (label, pos, wsize) in [("A1", 1, 2), ("A2", 3, 6), ("B2", 4, 8), ("A1xA1", 2, 4)] {
            let rd = build_root_system(label).unwrap();
            assert_eq!(rd.positive_roots.len(), pos, "{label}");
            assert_eq!(rd.weyl.len(), wsize, "{label}");
        }
        assert!(build_root_system("G2").is_err());
    }

    #[test]
    fn a1_rho_is_half_alpha() {
        let rd = build_root_system("A1").unwrap();
        assert_eq!(rd.rho, w(&rd, &["1"]));
        let alpha = &rd.positive_roots[0];
        assert_eq!(alpha.fund.scale(&q_ratio(1, 2)), rd.rho);
    }

    #[test]
    fn a2_positive_roots() {
        let rd = build_root_system("A2").unwrap();
        let simples: Vec<&[i64]> = rd.positive_roots.iter().map(|r| r.simple.as_slice()).collect();
        assert_eq!(simples, vec![&[1, 0][..], &[0, 1], &[1, 1]]);
        // rho has all fundamental coordinates 1
        assert_eq!(rd.rho, w(&rd, &["1", "1"]));
    }

    #[test]
    fn every_root_weyl_conjugate_to_simple_of_its_length() {
        for label in ["A1", "A1xA1", "A2", "B2"] {
            let rd = build_root_system(label).unwrap();
            // Symmetrize the Cartan matrix: d_i cartan[i][j] = d_j cartan[j][i]
            // with d_i proportional to (α_i, α_i). Rank ≤ 2 so a direct solve:
            let d: Vec<i64> = if label == "B2" { vec![2, 1] } else { vec![1; rd.rank] };
            for i in 0..rd.rank {
                for j in 0..rd.rank {
                    assert_eq!(d[i] * rd.cartan[i][j], d[j] * rd.cartan[j][i]);
                }
            }
            // d(β) = k_i d_i / c_i for any i with k_i ≠ 0, where β = Σ k_i α_i
            // and h_β = Σ c_i h_i; this is the squared-length class of β.
            let length_class = |root: &Root| -> Q {
                let i = root.simple.iter().position(|&k| k != 0).unwrap();
                q_int(root.simple[i] * d[i]) / q_int(root.coroot[i])
            };
            for (ri, root) in rd.positive_roots.iter().enumerate() {
                let found = rd.weyl.iter().any(|wl| {
                    (0..rd.rank).any(|i| {
                        rd.apply_weyl(wl, &root.fund) == rd.positive_roots[i].fund
                            && length_class(&rd.positive_roots[i]) == length_class(root)
                    })
                });
                assert!(found, "{label}: root {ri} not conjugate to a simple root");
            }
        }
    }

    #[test]
    fn parabolic_examples() {
        // (A1, I=∅) → Δ(u) = {α}, ρ(u) = α/2
        let a1 = build_root_system("A1").unwrap();
        let pd = a1.borel();
        assert_eq!(pd.delta_u, vec![0]);
        assert_eq!(pd.rho_u, a1.rho);

        // (A2, I={α1}) → Δ(u) = {α2, α1+α2}, dim u = 2
        let a2 = build_root_system("A2").unwrap();
        let pd = a2.parabolic(&BTreeSet::from([0])).unwrap();
        assert_eq!(pd.delta_l, vec![0]);
        assert_eq!(pd.delta_u, vec![1, 2]);
        assert_eq!(pd.dim_u(), 2);

        // (A2, I=B) → u = 0, l = g
        let pd = a2.parabolic(&BTreeSet::from([0, 1])).unwrap();
        assert!(pd.is_improper());
        assert!(pd.rho_u.is_zero());
        // ρ(u) + ρ(ū) = 0 and ρ(u of I=∅) = ρ
        let borel = a2.borel();
        assert!(borel.rho_u.add(&borel.rho_ubar).is_zero());
        assert_eq!(borel.rho_u, a2.rho);
    }

    #[test]
    fn delta_u_closed_under_addition() {
        for label in ["A2", "B2"] {
            let rd = build_root_system(label).unwrap();
            for levi in [BTreeSet::new(), BTreeSet::from([0]), BTreeSet::from([1])] {
                let pd = rd.parabolic(&levi).unwrap();
                for &i in &pd.delta_u {
                    for &j in &pd.delta_u {
                        let sum: Vec<i64> = rd.positive_roots[i]
                            .simple
                            .iter()
                            .zip(&rd.positive_roots[j].simple)
                            .map(|(a, b)| a + b)
                            .collect();
                        if let Some(k) = rd.find_positive_root(&sum) {
                            assert!(pd.delta_u.contains(&k), "{label}: Δ(u) not closed");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_height_examples() {
        let a2 = build_root_system("A2").unwrap();
        let pd = a2.parabolic(&BTreeSet::from([0])).unwrap();
        // ν = α1+α2 → 1
        let nu = a2.positive_roots[2].fund.clone();
        assert_eq!(pd.parabolic_height(&nu).unwrap(), q_int(1));
        // ν ∈ Q(l) → 0
        let alpha1 = a2.positive_roots[0].fund.clone();
        assert_eq!(pd.parabolic_height(&alpha1).unwrap(), q_int(0));

        let a1 = build_root_system("A1").unwrap();
        let pd = a1.borel();
        let nu = a1.positive_roots[0].fund.scale(&q_int(3));
        assert_eq!(pd.parabolic_height(&nu).unwrap(), q_int(3));
    }

    #[test]
    fn parabolic_height_additive() {
        let b2 = build_root_system("B2").unwrap();
        let pd = b2.parabolic(&BTreeSet::from([1])).unwrap();
        let x = w(&b2, &["3/2", "-1"]);
        let y = w(&b2, &["-1/3", "5"]);
        let hx = pd.parabolic_height(&x).unwrap();
        let hy = pd.parabolic_height(&y).unwrap();
        assert_eq!(pd.parabolic_height(&x.add(&y)).unwrap(), hx + hy);
    }

    #[test]
    fn dot_orbit_examples() {
        let a1 = build_root_system("A1").unwrap();
        // λ = 0 → {(e, 0), (s_α, −α)}
        let orbit = a1.dot_orbit(&Weight::zero(1));
        assert_eq!(orbit.len(), 2);
        assert_eq!(orbit[0].1, Weight::zero(1));
        assert_eq!(orbit[1].1, a1.positive_roots[0].fund.neg());
        // λ = −ρ → single point {−ρ}
        let orbit = a1.dot_orbit(&a1.rho.neg());
        assert_eq!(orbit.len(), 1);
        assert_eq!(orbit[0].1, a1.rho.neg());
    }

    #[test]
    fn dot_orbit_a2_oracle() {
        // Oracle: multiply the reflection matrices directly and collect the
        // images of ρ; the dot orbit of 0 must reproduce W(ρ) − ρ.
        let a2 = build_root_system("A2").unwrap();
        let s0 = simple_reflection_matrix(2, &a2.cartan, 0);
        let s1 = simple_reflection_matrix(2, &a2.cartan, 1);
        let mut mats = vec![vec![vec![1, 0], vec![0, 1]]];
        loop {
            let mut grew = false;
            for m in mats.clone() {
                for g in [&s0, &s1] {
                    let p = mat_mul_i64(&m, g);
                    if !mats.contains(&p) {
                        mats.push(p);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        assert_eq!(mats.len(), 6);
        let mut expected: Vec<Weight> =
            mats.iter().map(|m| apply_i64(m, &a2.rho).sub(&a2.rho)).collect();
        expected.sort();
        expected.dedup();
        assert_eq!(expected.len(), 6);

        let mut got: Vec<Weight> = a2.dot_orbit(&Weight::zero(2)).into_iter().map(|p| p.1).collect();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn dot_orbit_closed_and_divides() {
        for label in ["A2", "B2"] {
            let rd = build_root_system(label).unwrap();
            for lam in [Weight::zero(2), w(&rd, &["1", "0"]), w(&rd, &["-1", "-1"]), w(&rd, &["1/2", "1/3"])] {
                let orbit = rd.dot_orbit(&lam);
                assert_eq!(rd.weyl.len() % orbit.len(), 0, "{label}: |orbit| divides |W|");
                // closure under composing Weyl elements: w'·(w·λ) stays in the orbit
                for (wi, mu) in &orbit {
                    for w2 in &rd.weyl {
                        let comp = rd.dot_action(w2, mu);
                        assert!(orbit.iter().any(|(_, v)| *v == comp), "{label} {wi}");
                    }
                }
            }
        }
    }

    #[test]
    fn root_lattice_membership() {
        let a2 = build_root_system("A2").unwrap();
        assert!(a2.in_root_lattice(&a2.positive_roots[2].fund));
        assert!(a2.in_root_lattice(&a2.rho)); // ρ = α1+α2 for A2
        assert!(!a2.in_root_lattice(&a2.fundamental_weight(0)));
        let a1 = build_root_system("A1").unwrap();
        assert!(!a1.in_root_lattice(&a1.rho));
        assert!(a1.in_root_lattice(&a1.rho.scale(&q_int(2))));
    }
}
