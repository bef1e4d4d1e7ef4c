//! Virtual h-characters, the spin index, the Dirac index, their pairing, and
//! the identity checks that tie them together.
//!
//! Sign ledger: the crate fixes the realization `S = ∧u ⊗ C_{ρ(ū)}` with
//! wedge-parity grading. With that convention the `ū`-side Euler identity
//! (spin index = alternating `H^•(ū, M)` shifted by `ρ(ū)`) holds on the
//! nose, while the `u`-side identities (and the induced-module index formula)
//! hold with the explicit global factor `ε = (−1)^{dim u}`. All pairing-level
//! results are ε-independent because ε enters both arguments and `ε² = 1`.

use crate::cohomology::{dirac_cohomology, lie_cohomology, Direction};
use crate::error::{Error, Result};

use crate::rootdata::{ParabolicDatum, Weight, Window};
use crate::spinor::spin_character as spin_character_maps;
use crate::wmod::{dual, Module};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    SpinIndex,
    DiracIndex,
    Explicit,
}

/// An integer-valued function on weights, lazily evaluable, optionally
/// carrying a certified finite support set (a set outside of which the
/// evaluator is provably zero).
pub struct VirtualCharacter {
    evaluator: Arc<dyn Fn(&Weight) -> i64 + Send + Sync>,
    /// Certified support: sorted `(weight, value)` pairs with nonzero values.
    pub support: Option<Vec<(Weight, i64)>>,
    pub provenance: Provenance,
}

impl VirtualCharacter {
    pub fn eval(&self, w: &Weight) -> i64 {
        (self.evaluator)(w)
    }

    /// An explicit finitely supported character; certified by construction.
    pub fn from_map(map: BTreeMap<Weight, i64>) -> Self {
        let support: Vec<(Weight, i64)> =
            map.iter().filter(|(_, &v)| v != 0).map(|(w, &v)| (w.clone(), v)).collect();
        let m = map.clone();
        VirtualCharacter {
            evaluator: Arc::new(move |w| m.get(w).copied().unwrap_or(0)),
            support: Some(support),
            provenance: Provenance::Explicit,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.support.is_some()
    }
}

/// Characters of `S⁺` and `S⁻` as virtual characters.
pub fn spin_character(pd: &Arc<ParabolicDatum>) -> (VirtualCharacter, VirtualCharacter) {
    let (plus, minus) = spin_character_maps(pd);
    (VirtualCharacter::from_map(plus), VirtualCharacter::from_map(minus))
}

/// The signed spin shifts `(−1)^{|T|} X^{ρ(ū)+ΣT}` over subsets of `Δ(u)`.
fn spin_shifts(pd: &ParabolicDatum) -> Vec<(Weight, i64)> {
    let n = pd.dim_u();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let mut w = pd.rho_ubar.clone();
        for (i, &ri) in pd.delta_u.iter().enumerate() {
            if mask & (1 << i) != 0 {
                w = w.add(&pd.rd.positive_roots[ri].fund);
            }
        }
        let sign = if mask.count_ones() % 2 == 1 { -1 } else { 1 };
        out.push((w, sign));
    }
    out
}

/// The highest weight behind a (possibly dualized) highest-weight
/// constructor, used for support certification.
fn hw_like(m: &Arc<Module>) -> Option<Weight> {
    if let Some(l) = m.highest_weight() {
        return Some(l);
    }
    match m.kind_tag() {
        "dual_of" => hw_like(m.inner_module()?),
        _ => None,
    }
}

/// The spin index `I(M) = M⊗S⁺ − M⊗S⁻` as a virtual h-character:
/// `I(λ) = Σ_T (−1)^{|T|} dim M_{λ − ρ(ū) − ΣT}`.
///
/// Certification: for highest-weight constructors over the Borel, the
/// candidate support is `W(λ+ρ)` (the ρ-shifted linear Weyl orbit); the
/// evaluator is checked on the candidates and on a one-coset halo around
/// them. Pass a window to additionally attempt the cuspidal zero-certificate
/// (constant block dimensions plus bijectivity along a commuting set spanning
/// the root lattice, verified on the window).
pub fn spin_index(m: &Arc<Module>, pd: &Arc<ParabolicDatum>) -> Result<VirtualCharacter> {
    spin_index_windowed(m, pd, None)
}

pub fn spin_index_windowed(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    window: Option<&Window>,
) -> Result<VirtualCharacter> {
    let shifts = spin_shifts(pd);
    let mc = Arc::clone(m);
    let shifts_for_eval = shifts.clone();
    let evaluator: Evaluator = Arc::new(move |w: &Weight| -> i64 {
        shifts_for_eval
            .iter()
            .map(|(s, sign)| sign * mc.dim(&w.sub(s)) as i64)
            .sum()
    });
    let support = certify_support(m, pd, &evaluator, window)?;
    Ok(VirtualCharacter { evaluator, support, provenance: Provenance::SpinIndex })
}

/// The Dirac index: `I(λ) = dim⁺ − dim⁻` of the Dirac cohomology block.
/// Requires an infinitesimal character (the hypothesis under which the Dirac
/// index computes the spin index).
pub fn dirac_index(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    window: Option<&Window>,
) -> Result<VirtualCharacter> {
    if !m.has_infinitesimal_character() {
        return Err(Error::NoInfinitesimalCharacter);
    }
    let mc = Arc::clone(m);
    let pdc = Arc::clone(pd);
    let evaluator: Evaluator = Arc::new(move |w: &Weight| -> i64 {
        let dc = dirac_cohomology(&mc, &pdc, w).expect("dirac block");
        dc.dim_plus as i64 - dc.dim_minus as i64
    });
    let support = certify_support(m, pd, &evaluator, window)?;
    Ok(VirtualCharacter { evaluator, support, provenance: Provenance::DiracIndex })
}

type Evaluator = Arc<dyn Fn(&Weight) -> i64 + Send + Sync>;

fn certify_support(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    evaluator: &Evaluator,
    window: Option<&Window>,
) -> Result<Option<Vec<(Weight, i64)>>> {
    let rd = &pd.rd;
    // Highest-weight constructors over the Borel: candidates = W(λ+ρ).
    if pd.is_borel() {
        if let Some(hw) = hw_like(m) {
            let shifted = hw.add(&rd.rho);
            let mut candidates: Vec<Weight> =
                rd.weyl.iter().map(|w| rd.apply_weyl(w, &shifted)).collect();
            candidates.sort();
            candidates.dedup();
            let mut support = Vec::new();
            for c in &candidates {
                let v = evaluator(c);
                if v != 0 {
                    support.push((c.clone(), v));
                }
            }
            // one-coset halo: candidate ± each root must evaluate to zero
            for c in &candidates {
                for root in &rd.positive_roots {
                    for probe in [c.add(&root.fund), c.sub(&root.fund)] {
                        if candidates.contains(&probe) {
                            continue;
                        }
                        if evaluator(&probe) != 0 {
                            return Err(Error::CertificationFailed(probe.to_string()));
                        }
                    }
                }
            }
            return Ok(Some(support));
        }
    }
    // Cuspidal zero-certificate over a window.
    if let Some(win) = window {
        if certify_zero_by_bijectivity(m, pd, win, evaluator)? {
            return Ok(Some(Vec::new()));
        }
    }
    Ok(None)
}

/// The structural vanishing certificate: a commuting set `Γ` spanning the
/// root lattice acts bijectively on every window block (so block dimensions
/// are constant along full cosets) and the evaluator vanishes on the window.
fn certify_zero_by_bijectivity(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    win: &Window,
    evaluator: &Evaluator,
) -> Result<bool> {
    let rd = &pd.rd;
    // candidate commuting sets spanning Q, by type
    let gamma_sets: Vec<Vec<crate::liestruct::SignedRoot>> = match rd.label.as_str() {
        "A1" => vec![vec![crate::liestruct::SignedRoot { pos_index: 0, positive: true }]],
        "A1xA1" => vec![vec![
            crate::liestruct::SignedRoot { pos_index: 0, positive: true },
            crate::liestruct::SignedRoot { pos_index: 1, positive: true },
        ]],
        _ => vec![],
    };
    'sets: for gammas in gamma_sets {
        if m.la.is_commuting_set(&gammas).is_err() {
            continue;
        }
        let mut nonempty = false;
        for w in win.weights(rd) {
            if m.dim(&w) > 0 {
                nonempty = true;
            }
            for g in &gammas {
                let gw = m.la.signed_root_weight(g);
                let w_up = w.add(&gw);
                let Ok(block) = m.act_gen(g.localized_gen(), &w_up) else {
                    continue 'sets;
                };
                if block.rows != block.cols || (block.rows > 0 && block.inverse().is_none()) {
                    continue 'sets;
                }
            }
        }
        if !nonempty {
            continue;
        }
        for w in win.weights(rd) {
            if evaluator(&w) != 0 {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// The pairing `Σ_λ A(λ)·B(λ)` over a certified support. Equals the
/// four-term Hom formula for virtual h-modules because `Hom_h(C_λ, C_μ)` is
/// `δ_{λμ}`-dimensional and `A = A⁺ − A⁻` pointwise.
pub fn pair_virtual(a: &VirtualCharacter, b: &VirtualCharacter) -> Result<i64> {
    if let Some(sup) = &a.support {
        return Ok(sup.iter().map(|(w, v)| v * b.eval(w)).sum());
    }
    if let Some(sup) = &b.support {
        return Ok(sup.iter().map(|(w, v)| v * a.eval(w)).sum());
    }
    Err(Error::NoCertifiedSupport)
}

/// One named check of [`verify_index_identities`].
pub struct IdentityCheck {
    pub name: &'static str,
    pub applicable: bool,
    /// `(weight, lhs, rhs)` for every pointwise mismatch.
    pub mismatches: Vec<(Weight, i64, i64)>,
}

impl IdentityCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub struct IndexIdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IndexIdentityReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok())
    }
}

/// Runs the index identity suite on a window:
///
/// (a) spin index = alternating `H^•(ū, M)` at `λ − ρ(ū)` (exact);
/// (b) spin index = `ε ·` alternating `H^•(u, M)` at `λ − ρ(u)` with
///     `ε = (−1)^{dim u}`;
/// (c) Dirac index = spin index pointwise (needs infinitesimal character);
/// (d) transitivity through the Levi: composing the `(l,h)`-spin shifts with
///     the `(g,l)`-index reproduces the `(g,h)`-index;
/// (e) induced-module index: the index of `M_p(V)` is `ε · ch V` shifted by
///     `ρ(u)` (only when `M` is induced from `pd` itself);
/// (f) dual invariance: the spin index of `M^∨` equals that of `M`.
pub fn verify_index_identities(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    window: &Window,
) -> Result<IndexIdentityReport> {
    let rd = &pd.rd;
    let weights = window.weights(rd);
    let eps: i64 = if pd.dim_u() % 2 == 0 { 1 } else { -1 };
    let idx = spin_index(m, pd)?;
    let mut checks = Vec::new();

    // (a) ū-side Euler identity, exact
    let mut mism = Vec::new();
    for w in &weights {
        let lhs = idx.eval(w);
        let bc = lie_cohomology(m, pd, &w.sub(&pd.rho_ubar), Direction::UbarCohomology)?;
        let rhs: i64 = bc
            .homology_dims()
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        if lhs != rhs {
            mism.push((w.clone(), lhs, rhs));
        }
    }
    checks.push(IdentityCheck { name: "ubar-euler", applicable: true, mismatches: mism });

    // (b) u-side Euler identity with ε
    let mut mism = Vec::new();
    for w in &weights {
        let lhs = idx.eval(w);
        let bc = lie_cohomology(m, pd, &w.sub(&pd.rho_u), Direction::UCohomology)?;
        let rhs: i64 = bc
            .homology_dims()
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        if lhs != eps * rhs {
            mism.push((w.clone(), lhs, eps * rhs));
        }
    }
    checks.push(IdentityCheck { name: "u-euler-eps", applicable: true, mismatches: mism });

    // (c) Dirac index = spin index
    let mut mism = Vec::new();
    let applicable = m.has_infinitesimal_character();
    if applicable {
        for w in &weights {
            let dc = dirac_cohomology(m, pd, w)?;
            let lhs = dc.dim_plus as i64 - dc.dim_minus as i64;
            let rhs = idx.eval(w);
            if lhs != rhs {
                mism.push((w.clone(), lhs, rhs));
            }
        }
    }
    checks.push(IdentityCheck { name: "dirac-equals-spin", applicable, mismatches: mism });

    // (d) transitivity through the Levi: I_{g,h} = I_{l,h} ∘ I_{g,l}
    let mut mism = Vec::new();
    let borel = rd.borel();
    let full = spin_index(m, &borel)?;
    // (l,h)-spin shifts over Δ⁺(l)
    let mut levi_shifts: Vec<(Weight, i64)> = Vec::new();
    let nl = pd.delta_l.len();
    for mask in 0u32..(1 << nl) {
        let mut w = Weight::zero(rd.rank);
        for (i, &ri) in pd.delta_l.iter().enumerate() {
            if mask & (1 << i) != 0 {
                w = w.add(&rd.positive_roots[ri].fund);
            }
        }
        let mut rho_l = Weight::zero(rd.rank);
        for &ri in &pd.delta_l {
            rho_l = rho_l.add(&rd.positive_roots[ri].fund);
        }
        let rho_ubar_l = rho_l.scale(&crate::rational::q_ratio(-1, 2));
        let sign = if mask.count_ones() % 2 == 1 { -1 } else { 1 };
        levi_shifts.push((rho_ubar_l.add(&w), sign));
    }
    for w in &weights {
        let lhs = full.eval(w);
        let rhs: i64 = levi_shifts.iter().map(|(s, sign)| sign * idx.eval(&w.sub(s))).sum();
        if lhs != rhs {
            mism.push((w.clone(), lhs, rhs));
        }
    }
    checks.push(IdentityCheck { name: "transitivity", applicable: true, mismatches: mism });

    // (e) induced index: I(M_p(V)) = ε · ch V shifted by ρ(u)
    let mut mism = Vec::new();
    let applicable_e = match m.induced_parts() {
        Some((mpd, _)) => Arc::ptr_eq(mpd, pd) || (mpd.levi == pd.levi),
        None => false,
    };
    if applicable_e {
        let (_, v) = m.induced_parts().expect("checked");
        for w in &weights {
            let lhs = idx.eval(w);
            let rhs = eps * v_dim(v, pd, &w.sub(&pd.rho_u)) as i64;
            if lhs != rhs {
                mism.push((w.clone(), lhs, rhs));
            }
        }
    }
    checks.push(IdentityCheck { name: "induced-index-eps", applicable: applicable_e, mismatches: mism });

    // (f) dual invariance
    let mut mism = Vec::new();
    let dm = dual(m);
    let didx = spin_index(&dm, pd)?;
    for w in &weights {
        let lhs = didx.eval(w);
        let rhs = idx.eval(w);
        if lhs != rhs {
            mism.push((w.clone(), lhs, rhs));
        }
    }
    checks.push(IdentityCheck { name: "dual-invariance", applicable: true, mismatches: mism });

    Ok(IndexIdentityReport { checks })
}

fn v_dim(v: &crate::wmod::LeviModule, pd: &Arc<ParabolicDatum>, w: &Weight) -> usize {
    // exposes the Levi-module support for check (e)
    match v {
        crate::wmod::LeviModule::CLambda(l0) => usize::from(w == l0),
        crate::wmod::LeviModule::InflatedCuspidal { gamma, base, .. } => {
            let coords = pd.rd.root_coords(&w.sub(base));
            let ok = coords.iter().enumerate().all(|(i, c)| {
                if i == *gamma {
                    crate::rational::is_integer(c)
                } else {
                    c.is_zero()
                }
            });
            usize::from(ok)
        }
    }
}

/// Serializes a certified character as JSON-lines records
/// `{"weight": [...], "value": n}`.
pub fn character_jsonl(ch: &VirtualCharacter) -> Result<String> {
    #[derive(serde::Serialize)]
    struct CharRecord {
        weight: Vec<String>,
        value: i64,
    }
    let sup = ch.support.as_ref().ok_or(Error::NoCertifiedSupport)?;
    let mut out = String::new();
    for (w, v) in sup {
        let rec = CharRecord {
            weight: w.0.iter().map(crate::rational::format_q).collect(),
            value: *v,
        };
        out.push_str(&serde_json::to_string(&rec).expect("json"));
        out.push('\n');
    }
    Ok(out)
}

/// Convenience: the spin index evaluated as an explicit map over a window.
pub fn index_table(
    m: &Arc<Module>,
    pd: &Arc<ParabolicDatum>,
    window: &Window,
) -> Result<Vec<(Weight, i64)>> {
    let idx = spin_index(m, pd)?;
    Ok(window.weights(&pd.rd).into_iter().map(|w| { let v = idx.eval(&w); (w, v) }).collect())
}
