//! The spin module `∧u ⊗ C_{ρ(ū)}` with its Clifford action and parity
//! grading.
//!
//! Basis elements are subsets `T ⊆ Δ(u)` (wedge monomials in the fixed root
//! order), of weight `ρ(ū) + Σ_{β∈T} β` and parity `|T| mod 2`. The Clifford
//! relation is `vw + wv = 2(v,w)` with `(e_β, f_γ) = δ_{βγ}`; `e_β` acts by a
//! signed wedge and `f_β` by contraction scaled by 2, which keeps every
//! scalar rational (no square roots are split between the two actions).

use crate::error::{Error, Result};
use crate::liestruct::Gen;
use crate::rational::{q_int, Q};
use crate::rootdata::{ParabolicDatum, Weight};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A wedge monomial `e_{β_1} ∧ … ∧ e_{β_p}` of the spin module.
#[derive(Clone, Debug)]
pub struct SpinBasisElement {
    /// Bit `i` set means the `i`-th root of `Δ(u)` (in `pd.delta_u` order)
    /// is present.
    pub mask: u32,
    pub weight: Weight,
    /// `|T| mod 2`; odd = true.
    pub parity: bool,
}

impl SpinBasisElement {
    pub fn degree(&self) -> u32 {
        self.mask.count_ones()
    }
}

/// The spin module for a parabolic datum: `2^{dim u}` wedge monomials in
/// subset-mask order.
pub struct SpinModule {
    pub pd: Arc<ParabolicDatum>,
    pub basis: Vec<SpinBasisElement>,
}

/// Enumerates the spin basis in subset order (the empty monomial first).
pub fn spin_basis(pd: &Arc<ParabolicDatum>) -> SpinModule {
    let n = pd.dim_u();
    let mut basis = Vec::with_capacity(1 << n);
    for mask in 0u32..(1u32 << n) {
        let mut weight = pd.rho_ubar.clone();
        for (i, &ri) in pd.delta_u.iter().enumerate() {
            if mask & (1 << i) != 0 {
                weight = weight.add(&pd.rd.positive_roots[ri].fund);
            }
        }
        basis.push(SpinBasisElement { mask, weight, parity: mask.count_ones() % 2 == 1 });
    }
    SpinModule { pd: Arc::clone(pd), basis }
}

impl SpinModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Position of `root_index` (a positive-root index) within `Δ(u)`.
    fn u_position(&self, root_index: usize) -> Option<usize> {
        self.pd.delta_u.iter().position(|&r| r == root_index)
    }

    /// Clifford action of a basis vector of `s = u ⊕ ū` on one wedge
    /// monomial. Returns the image as `(mask, coefficient)`, or None when the
    /// action is zero.
    pub fn act_basis(&self, v: Gen, mask: u32) -> Result<Option<(u32, Q)>> {
        let (root_index, is_wedge) = match v {
            Gen::E(i) => (i, true),
            Gen::F(i) => (i, false),
            Gen::H(_) => {
                return Err(Error::Internal("Cartan generators are not in s = u ⊕ ū".into()))
            }
        };
        let pos = self
            .u_position(root_index)
            .ok_or_else(|| Error::Internal(format!("root index {root_index} is not in Δ(u)")))?;
        let bit = 1u32 << pos;
        // sign from moving past the factors that precede `pos` in root order
        let crossings = (mask & (bit - 1)).count_ones();
        let sign = if crossings % 2 == 0 { q_int(1) } else { q_int(-1) };
        if is_wedge {
            if mask & bit != 0 {
                return Ok(None); // e_β ∧ e_β = 0
            }
            Ok(Some((mask | bit, sign)))
        } else {
            if mask & bit == 0 {
                return Ok(None); // contraction of an absent factor
            }
            // contraction carries the factor 2 so that e_β f_β + f_β e_β = 2
            Ok(Some((mask & !bit, sign * q_int(2))))
        }
    }

    /// Clifford action on a dense spin vector.
    pub fn act(&self, v: Gen, x: &[Q]) -> Result<Vec<Q>> {
        assert_eq!(x.len(), self.dim());
        let mut out = vec![Q::zero(); self.dim()];
        for (mask, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((m2, s)) = self.act_basis(v, mask as u32)? {
                out[m2 as usize] += s * c;
            }
        }
        Ok(out)
    }
}

/// Finitely supported integer character, used for `ch S⁺` and `ch S⁻`.
pub type CharMap = BTreeMap<Weight, i64>;

/// The characters of the even and odd halves of the spin module.
/// `ch S⁺ − ch S⁻ = Σ_T (−1)^{|T|} X^{ρ(ū)+ΣT}`.
pub fn spin_character(pd: &Arc<ParabolicDatum>) -> (CharMap, CharMap) {
    let sm = spin_basis(pd);
    let mut plus = CharMap::new();
    let mut minus = CharMap::new();
    for b in &sm.basis {
        let target = if b.parity { &mut minus } else { &mut plus };
        *target.entry(b.weight.clone()).or_insert(0) += 1;
    }
    plus.retain(|_, v| *v != 0);
    minus.retain(|_, v| *v != 0);
    (plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_ratio;
    use crate::rootdata::build_root_system;
    use num_traits::One;
    use std::collections::BTreeSet;

    #[test]
    fn a1_spin_basis() {
        let rd = build_root_system("A1").unwrap();
        let pd = rd.borel();
        let sm = spin_basis(&pd);
        assert_eq!(sm.dim(), 2);
        // ∅: weight −α/2 = −ρ, even; {α}: weight +ρ, odd
        assert_eq!(sm.basis[0].weight, rd.rho.neg());
        assert!(!sm.basis[0].parity);
        assert_eq!(sm.basis[1].weight, rd.rho);
        assert!(sm.basis[1].parity);
    }

    #[test]
    fn improper_parabolic_single_element() {
        let rd = build_root_system("A2").unwrap();
        let pd = rd.parabolic(&BTreeSet::from([0, 1])).unwrap();
        let sm = spin_basis(&pd);
        assert_eq!(sm.dim(), 1);
        assert!(sm.basis[0].weight.is_zero());
        assert!(!sm.basis[0].parity);
        let (plus, minus) = spin_character(&pd);
        assert_eq!(plus, CharMap::from([(Weight::zero(2), 1)]));
        assert!(minus.is_empty());
    }

    #[test]
    fn a2_borel_eight_elements() {
        let rd = build_root_system("A2").unwrap();
        let pd = rd.borel();
        let sm = spin_basis(&pd);
        assert_eq!(sm.dim(), 8);
        // weights symmetric under negation as a multiset when l = h
        let mut ws: Vec<Weight> = sm.basis.iter().map(|b| b.weight.clone()).collect();
        let mut neg: Vec<Weight> = ws.iter().map(|w| w.neg()).collect();
        ws.sort();
        neg.sort();
        assert_eq!(ws, neg);
    }

    #[test]
    fn a1_paper_action_values() {
        // f·(e) = 2·(1) and e·(e) = 0 in the sl2 spin module
        let rd = build_root_system("A1").unwrap();
        let pd = rd.borel();
        let sm = spin_basis(&pd);
        let (m, c) = sm.act_basis(Gen::F(0), 0b1).unwrap().unwrap();
        assert_eq!((m, c), (0b0, q_int(2)));
        assert!(sm.act_basis(Gen::E(0), 0b1).unwrap().is_none());
        // e·(1) = e
        let (m, c) = sm.act_basis(Gen::E(0), 0b0).unwrap().unwrap();
        assert_eq!((m, c), (0b1, Q::one()));
        // h is not a vector of s
        assert!(sm.act_basis(Gen::H(0), 0b0).is_err());
    }

    #[test]
    fn clifford_relation_all_pairs() {
        // v·(w·x) + w·(v·x) = 2(v,w)x with (e_β, f_γ) = δ_{βγ}.
        let cases: Vec<(&str, BTreeSet<usize>)> = vec![
            ("A1", BTreeSet::new()),
            ("A1xA1", BTreeSet::new()),
            ("A2", BTreeSet::new()),
            ("A2", BTreeSet::from([0])),
            ("B2", BTreeSet::new()),
        ];
        for (label, levi) in cases {
            let rd = build_root_system(label).unwrap();
            let pd = rd.parabolic(&levi).unwrap();
            let sm = spin_basis(&pd);
            let mut vectors = Vec::new();
            for &ri in &pd.delta_u {
                vectors.push(Gen::E(ri));
                vectors.push(Gen::F(ri));
            }
            for &v in &vectors {
                for &w in &vectors {
                    let pairing = match (v, w) {
                        (Gen::E(i), Gen::F(j)) | (Gen::F(i), Gen::E(j)) if i == j => q_int(2),
                        _ => q_int(0),
                    };
                    for x in 0..sm.dim() {
                        let mut xvec = vec![Q::zero(); sm.dim()];
                        xvec[x] = Q::one();
                        let vw = sm.act(v, &sm.act(w, &xvec).unwrap()).unwrap();
                        let wv = sm.act(w, &sm.act(v, &xvec).unwrap()).unwrap();
                        for (k, (a, b)) in vw.iter().zip(wv.iter()).enumerate() {
                            let expected = if k == x { pairing.clone() } else { Q::zero() };
                            assert_eq!(a + b, expected, "{label} {v:?} {w:?} at {x}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn action_flips_parity() {
        let rd = build_root_system("B2").unwrap();
        let pd = rd.borel();
        let sm = spin_basis(&pd);
        for &ri in &pd.delta_u {
            for v in [Gen::E(ri), Gen::F(ri)] {
                for b in &sm.basis {
                    if let Some((m2, _)) = sm.act_basis(v, b.mask).unwrap() {
                        assert_ne!(sm.basis[m2 as usize].parity, b.parity, "parity must flip");
                    }
                }
            }
        }
    }

    #[test]
    fn spin_character_examples() {
        let rd = build_root_system("A1").unwrap();
        let pd = rd.borel();
        let (plus, minus) = spin_character(&pd);
        assert_eq!(plus, CharMap::from([(rd.rho.neg(), 1)]));
        assert_eq!(minus, CharMap::from([(rd.rho.clone(), 1)]));

        // A2, I={α1}: 4 weights, alternating parities; oracle by direct
        // enumeration over subsets of Δ(u) = {α2, α1+α2}.
        let rd = build_root_system("A2").unwrap();
        let pd = rd.parabolic(&BTreeSet::from([0])).unwrap();
        let (plus, minus) = spin_character(&pd);
        let a2 = rd.positive_roots[1].fund.clone();
        let a12 = rd.positive_roots[2].fund.clone();
        let rho_ubar = a2.add(&a12).scale(&q_ratio(-1, 2));
        let mut exp_plus = CharMap::new();
        let mut exp_minus = CharMap::new();
        for t in 0u32..4 {
            let mut w = rho_ubar.clone();
            if t & 1 != 0 {
                w = w.add(&a2);
            }
            if t & 2 != 0 {
                w = w.add(&a12);
            }
            let target = if t.count_ones() % 2 == 1 { &mut exp_minus } else { &mut exp_plus };
            *target.entry(w).or_insert(0) += 1;
        }
        assert_eq!(plus, exp_plus);
        assert_eq!(minus, exp_minus);
        assert_eq!(plus.values().sum::<i64>() + minus.values().sum::<i64>(), 4);
    }

    #[test]
    fn graded_character_matches_wedge_degrees() {
        // Σ_basis (−1)^{parity} X^{weight} = Σ_i (−1)^i ch(∧^i u) · X^{ρ(ū)}
        let rd = build_root_system("B2").unwrap();
        let pd = rd.borel();
        let sm = spin_basis(&pd);
        let mut lhs: BTreeMap<Weight, i64> = BTreeMap::new();
        for b in &sm.basis {
            *lhs.entry(b.weight.clone()).or_insert(0) += if b.parity { -1 } else { 1 };
        }
        lhs.retain(|_, v| *v != 0);
        let mut rhs: BTreeMap<Weight, i64> = BTreeMap::new();
        for mask in 0u32..(1 << pd.dim_u()) {
            let mut w = pd.rho_ubar.clone();
            for (i, &ri) in pd.delta_u.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    w = w.add(&rd.positive_roots[ri].fund);
                }
            }
            *rhs.entry(w).or_insert(0) += if mask.count_ones() % 2 == 1 { -1 } else { 1 };
        }
        rhs.retain(|_, v| *v != 0);
        assert_eq!(lhs, rhs);
    }
}
