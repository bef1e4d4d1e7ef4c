//! Euler-Poincaré pairings via the reduction formulas, and the harness that
//! checks them against the index pairing.
//!
//! `EP(M, N)` is evaluated by dispatch mirroring the structure of `M`:
//! induced modules collapse to alternating sums of Levi-level pairings
//! against the nilradical cohomology of `N`; simple highest weight modules
//! decompose into Verma classes first; a cuspidal first argument flips
//! through the dual; and the cuspidal-cuspidal case is reported as
//! theorem-based (the index pairing, which the main theorem equates with
//! `EP`), never as an independent computation.
//!
//! At the Cartan level `EP_{h,h}` is plain Hom-dimension counting: the
//! category of semisimple `h`-modules has no higher extensions.

use crate::cohomology::{lie_cohomology, Direction};
use crate::error::{Error, Result};
use crate::index::{pair_virtual, spin_index_windowed};
use crate::rational::{floor_q, is_integer, q_int};
use crate::rootdata::{ParabolicDatum, Weight, Window};
use crate::wmod::{dual, verma, LeviModule, Module};
use num_traits::{Signed, Zero};
use std::sync::Arc;

/// How an EP value was obtained. `TheoremBased` marks values that invoke the
/// pairing theorem rather than an independent Euler-characteristic
/// computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EpMethod {
    InducedCollapse,
    VermaDecomposition,
    DualFlip,
    TheoremBased,
}

impl EpMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EpMethod::InducedCollapse => "induced-collapse",
            EpMethod::VermaDecomposition => "verma-decomposition",
            EpMethod::DualFlip => "dual-flip",
            EpMethod::TheoremBased => "theorem-based",
        }
    }
}

/// An EP pairing value with its provenance.
#[derive(Clone, Debug)]
pub struct EPResult {
    pub value: i64,
    pub method: EpMethod,
    /// Which reductions fired, one entry per step.
    pub audit: Vec<String>,
}

/// Classifies a module for the dispatch table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum DispatchClass {
    Induced,
    SimpleHw,
    Cuspidal,
    DualOfVerma,
    Unsupported,
}

fn classify(m: &Arc<Module>) -> DispatchClass {
    match m.kind_tag() {
        "verma" | "induced" => DispatchClass::Induced,
        "simple_hw" => DispatchClass::SimpleHw,
        "cuspidal_sl2" => DispatchClass::Cuspidal,
        "dual_of" => {
            let inner = m.inner_module().expect("dual has an inner module");
            match classify(inner) {
                // simple modules are self-dual; duals of cuspidals are cuspidal
                DispatchClass::SimpleHw => DispatchClass::SimpleHw,
                DispatchClass::Cuspidal => DispatchClass::Cuspidal,
                DispatchClass::Induced if inner.kind_tag() == "verma" => {
                    DispatchClass::DualOfVerma
                }
                _ => DispatchClass::Unsupported,
            }
        }
        _ => DispatchClass::Unsupported,
    }
}

/// The highest weight of the underlying simple/Verma constructor, unwrapping
/// duals (simples are self-dual; dual Vermas share the Verma's K-class).
fn unwrap_hw(m: &Arc<Module>) -> Option<(Weight, bool)> {
    if let Some(l) = m.highest_weight() {
        return Some((l, m.kind_tag() == "simple_hw"));
    }
    if m.kind_tag() == "dual_of" {
        return unwrap_hw(m.inner_module()?);
    }
    None
}

/// `EP(M_p(V), N) = Σ_i (−1)^i EP_{l,h}(V, H^i(u, N))`.
///
/// For `l = h` the inner pairing is Hom-dimension counting, so the value is
/// the alternating sum of `dim H^i(u, N)` at the single weight of `V`. For a
/// proper Levi the inner pairing is evaluated through the level-`l` index
/// pairing (the rank-induction step), which vanishes for a cuspidal `V`; the
/// method tag is downgraded to theorem-based accordingly.
pub fn ep_induced(
    pd: &Arc<ParabolicDatum>,
    v: &LeviModule,
    n: &Arc<Module>,
    window: &Window,
) -> Result<EPResult> {
    match v {
        LeviModule::CLambda(l0) => {
            if pd.delta_l.is_empty() {
                // l = h: the category of semisimple h-modules has no higher
                // extensions, so the inner pairing is Hom-dimension counting
                // at the single weight of V; exact independent of the window
                let bc = lie_cohomology(n, pd, l0, Direction::UCohomology)?;
                let value: i64 = bc
                    .homology_dims()
                    .iter()
                    .enumerate()
                    .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
                    .sum();
                return Ok(EPResult {
                    value,
                    method: EpMethod::InducedCollapse,
                    audit: vec![format!(
                        "induced-collapse: alternating H^i(u, N) at the V-weight {l0}"
                    )],
                });
            }
            // l ⊋ h: rank induction evaluates the inner pairing through the
            // level-l index pairing. The level-l index of C_λ0 is the finite
            // signed set λ0 + ρ(ū_l) + ΣT over T ⊆ Δ⁺(l), so
            //   EP_l(C_λ0, H^i) = Σ_{T,S} (−1)^{|T|+|S|} dim H^i_{λ0+ΣT−ΣS}.
            let rd = &pd.rd;
            let nl = pd.delta_l.len();
            let mut shifts: Vec<(Weight, i64)> = Vec::new();
            for mask in 0u32..(1 << nl) {
                let mut w = Weight::zero(rd.rank);
                for (i, &ri) in pd.delta_l.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        w = w.add(&rd.positive_roots[ri].fund);
                    }
                }
                let sign = if mask.count_ones() % 2 == 1 { -1 } else { 1 };
                shifts.push((w, sign));
            }
            let mut value = 0i64;
            for (t_shift, t_sign) in &shifts {
                for (s_shift, s_sign) in &shifts {
                    let w = l0.add(t_shift).sub(s_shift);
                    let bc = lie_cohomology(n, pd, &w, Direction::UCohomology)?;
                    let alt: i64 = bc
                        .homology_dims()
                        .iter()
                        .enumerate()
                        .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
                        .sum();
                    value += t_sign * s_sign * alt;
                }
            }
            Ok(EPResult {
                value,
                method: EpMethod::TheoremBased,
                audit: vec![
                    "induced-collapse: EP(M_p(V), N) = Σ (−1)^i EP_l(V, H^i(u,N))".into(),
                    "rank-induction: EP_l(C_λ, ·) evaluated via the level-l index pairing".into(),
                ],
            })
        }
        LeviModule::InflatedCuspidal { gamma, mu0, mu1, base } => {
            // level-l index of a cuspidal V vanishes: on the support coset
            // the e_γ/f_γ coefficients (μ1 − k) and (μ0 + k) never vanish,
            // so blocks are constant one-dimensional and the alternating
            // (l,h)-spin sum collapses to 0. Verify the claim on the window.
            let mut saw_support = false;
            for w in window.weights(&pd.rd) {
                let d = w.sub(base);
                let coords = pd.rd.root_coords(&d);
                let on_coset = coords
                    .iter()
                    .enumerate()
                    .all(|(i, c)| if i == *gamma { is_integer(c) } else { c.is_zero() });
                if !on_coset {
                    continue;
                }
                saw_support = true;
                let k = coords[*gamma].clone();
                let e_coeff = mu1 - &k;
                let f_coeff = mu0 + &k;
                if e_coeff == q_int(0) || f_coeff == q_int(0) {
                    return Err(Error::Internal(
                        "non-integral cuspidal parameters cannot vanish".into(),
                    ));
                }
            }
            if !saw_support {
                return Err(Error::WindowTooSmall(format!(
                    "no weight of supp V = {base} + Z{} falls in the window",
                    pd.rd.root_name(*gamma)
                )));
            }
            Ok(EPResult {
                value: 0,
                method: EpMethod::TheoremBased,
                audit: vec![
                    "induced-collapse: EP(M_p(V), N) = Σ (−1)^i EP_l(V, H^i(u,N))".into(),
                    "rank-induction: EP_l(V, ·) evaluated via the level-l index pairing".into(),
                    "index-vanishing: the level-l index of a cuspidal V is 0 (bijectivity checked on the window)".into(),
                ],
            })
        }
    }
}

/// Solves `[L(λ)] = Σ c_μ [M(μ)]` over the dot-orbit candidates `μ ≤ λ`,
/// descending by height (a unitriangular system), and verifies the character
/// identity on every window weight.
pub fn verma_coefficients(
    la: &Arc<crate::liestruct::LieAlgebra>,
    lambda: &Weight,
    window: &Window,
) -> Result<Vec<(Weight, i64)>> {
    let rd = &la.rd;
    let mut candidates: Vec<(Weight, i64)> = Vec::new();
    for (_, mu) in rd.dot_orbit(lambda) {
        let diff = lambda.sub(&mu);
        let coords = rd.root_coords(&diff);
        let ok = coords.iter().all(|c| is_integer(c) && !c.is_negative());
        if ok {
            let ht: i64 = coords
                .iter()
                .map(|c| {
                    let n: i64 = floor_q(c).try_into().expect("small heights");
                    n
                })
                .sum();
            candidates.push((mu, ht));
        }
    }
    candidates.sort_by(|a, b| (a.1, a.0.clone()).cmp(&(b.1, b.0.clone())));
    // ht_p-monotonicity shadow: candidates have ht(λ−μ) ≥ 0 with equality
    // only at μ = λ
    debug_assert!(candidates.iter().filter(|(_, h)| *h == 0).count() == 1);

    let l = crate::wmod::simple_hw(la, lambda)?;
    let vermas: Vec<Arc<Module>> = candidates
        .iter()
        .map(|(mu, _)| verma(la, mu))
        .collect::<Result<_>>()?;
    let mut coeffs: Vec<i64> = Vec::with_capacity(candidates.len());
    for (i, (mu, _)) in candidates.iter().enumerate() {
        let mut c = l.dim(mu) as i64;
        for j in 0..i {
            c -= coeffs[j] * vermas[j].dim(mu) as i64;
        }
        coeffs.push(c);
    }
    // verification over the window: ch L(λ) = Σ c_μ ch M(μ)
    for w in window.weights(rd) {
        let lhs = l.dim(&w) as i64;
        let rhs: i64 = coeffs
            .iter()
            .zip(&vermas)
            .map(|(c, m)| c * m.dim(&w) as i64)
            .sum();
        if lhs != rhs {
            return Err(Error::WindowTooSmall(format!(
                "character identity fails at {w}: dim L = {lhs}, Σ c·dim M = {rhs}"
            )));
        }
    }
    Ok(candidates
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| *c != 0)
        .map(|((mu, _), c)| (mu, c))
        .collect())
}

/// `EP(M, N)` by structural dispatch on `M`.
pub fn ep_pair(m: &Arc<Module>, n: &Arc<Module>, window: &Window) -> Result<EPResult> {
    match classify(m) {
        DispatchClass::Induced => {
            let (pd, v) = m.induced_parts().expect("induced");
            let pd = Arc::clone(pd);
            ep_induced(&pd, &v.clone(), n, window)
        }
        DispatchClass::SimpleHw => {
            let (lambda, _) = unwrap_hw(m).expect("simple highest weight");
            let coeffs = verma_coefficients(&m.la, &lambda, window)?;
            let borel = m.la.rd.borel();
            let mut value = 0i64;
            let mut audit = vec![format!(
                "verma-decomposition: [L{lambda}] = {}",
                coeffs
                    .iter()
                    .map(|(mu, c)| format!("{c}·[M{mu}]"))
                    .collect::<Vec<_>>()
                    .join(" + ")
            )];
            let mut method = EpMethod::VermaDecomposition;
            for (mu, c) in &coeffs {
                let part = ep_induced(&borel, &LeviModule::CLambda(mu.clone()), n, window)?;
                value += c * part.value;
                if part.method == EpMethod::TheoremBased {
                    method = EpMethod::TheoremBased;
                }
                audit.extend(part.audit);
            }
            Ok(EPResult { value, method, audit })
        }
        DispatchClass::DualOfVerma => {
            // [M(μ)^∨] = [M(μ)] in the Grothendieck group (equal characters,
            // hence equal composition multiplicities), and EP descends to
            // K-classes
            let (lambda, _) = unwrap_hw(m).expect("dual of verma");
            let vm = verma(&m.la, &lambda)?;
            let mut res = ep_pair(&vm, n, window)?;
            res.audit.insert(0, "k-class: [M^∨] = [M] (equal characters)".into());
            Ok(res)
        }
        DispatchClass::Cuspidal => match classify(n) {
            DispatchClass::Cuspidal => {
                // both cuspidal: theorem-based value through the index pairing
                let borel = m.la.rd.borel();
                let im = spin_index_windowed(m, &borel, Some(window))?;
                let r#in = spin_index_windowed(n, &borel, Some(window))?;
                let value = pair_virtual(&im, &r#in)?;
                Ok(EPResult {
                    value,
                    method: EpMethod::TheoremBased,
                    audit: vec![
                        "twist-reduction: cuspidal-cuspidal extensions reduce through the twisting-functor isomorphisms; no finite algorithm computes them directly".into(),
                        "theorem-based: EP equals the index pairing; both cuspidal indices vanish (certified on the window)".into(),
                    ],
                })
            }
            DispatchClass::Unsupported => Err(Error::DispatchUnsupported(n.kind_tag().into())),
            _ => {
                // flip through the dual: EP(M, N) = EP(N^∨, M^∨), with
                // simples self-dual and dual Vermas sharing the Verma class
                let n_dual = dual(n);
                let m_dual = dual(m);
                let mut res = ep_pair(&n_dual, &m_dual, window)?;
                res.audit.insert(
                    0,
                    "dual-flip: EP(M, N) = EP(N^∨, M^∨) with M cuspidal".into(),
                );
                res.method = match res.method {
                    EpMethod::TheoremBased => EpMethod::TheoremBased,
                    _ => EpMethod::DualFlip,
                };
                Ok(res)
            }
        },
        DispatchClass::Unsupported => Err(Error::DispatchUnsupported(m.kind_tag().into())),
    }
}

/// The outcome of one pairing-equality verification.
pub struct Main2Report {
    pub ep: EPResult,
    pub index_pair: i64,
    pub equal: bool,
    /// True when the EP side itself invoked the pairing theorem, in which
    /// case `equal` is consistency-by-construction rather than independent.
    pub theorem_based: bool,
    pub notes: Vec<String>,
}

/// Verifies `EP(M, N) = [I(M), I(N)]` with both sides computed independently
/// whenever the EP dispatch did not invoke the theorem. For a simple
/// non-highest-weight `M` (a cuspidal), additionally checks the corollary
/// `EP(M, N) = EP(N, M) = 0`.
pub fn verify_main2(m: &Arc<Module>, n: &Arc<Module>, window: &Window) -> Result<Main2Report> {
    let ep = ep_pair(m, n, window)?;
    let borel = m.la.rd.borel();
    let im = spin_index_windowed(m, &borel, Some(window))?;
    let i_n = spin_index_windowed(n, &borel, Some(window))?;
    let index_pair = pair_virtual(&im, &i_n)?;
    let equal = ep.value == index_pair;
    let theorem_based = ep.method == EpMethod::TheoremBased;
    let mut notes = Vec::new();
    if theorem_based {
        notes.push("EP side is theorem-based: equality is consistent by construction".into());
        if classify(m) == DispatchClass::Cuspidal && classify(n) == DispatchClass::Cuspidal {
            // the structural expectation: both indices vanish
            if index_pair != 0 {
                return Err(Error::VerificationMismatch(format!(
                    "cuspidal index pairing expected 0, got {index_pair}"
                )));
            }
            notes.push("cuspidal indices certified zero on the window".into());
        }
    }
    if classify(m) == DispatchClass::Cuspidal || classify(n) == DispatchClass::Cuspidal {
        let fwd = ep.value;
        let bwd = ep_pair(n, m, window)?.value;
        if fwd != 0 || bwd != 0 {
            notes.push(format!(
                "corollary violation: EP(M,N) = {fwd}, EP(N,M) = {bwd} with a cuspidal argument"
            ));
        } else {
            notes.push("corollary: EP(M,N) = EP(N,M) = 0 with a cuspidal argument".into());
        }
    }
    Ok(Main2Report { ep, index_pair, equal, theorem_based, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liestruct::chevalley_basis;
    use crate::rational::{parse_q, q_ratio};
    use crate::rootdata::build_root_system;
    use crate::wmod::{cuspidal_sl2, simple_hw};

    fn wq(coords: &[&str]) -> Weight {
        Weight(coords.iter().map(|s| parse_q(s).unwrap()).collect())
    }

    #[test]
    fn ep_induced_a1_examples() {
        let la = chevalley_basis(&build_root_system("A1").unwrap());
        let pd = la.rd.borel();
        let win = Window::new(Weight::zero(1), 8);
        let m0 = verma(&la, &Weight::zero(1)).unwrap();
        let l0 = simple_hw(&la, &Weight::zero(1)).unwrap();
        let f = cuspidal_sl2(&la, &q_ratio(1, 2), &q_ratio(1, 2)).unwrap();
        let alpha = la.rd.positive_roots[0].fund.clone();

        // EP(M(0), M(0)) = 1
        let r = ep_induced(&pd, &LeviModule::CLambda(Weight::zero(1)), &m0, &win).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.method, EpMethod::InducedCollapse);
        // EP(M(0), L(0)) = 1 and EP(M(−α), L(0)) = −1
        let r = ep_induced(&pd, &LeviModule::CLambda(Weight::zero(1)), &l0, &win).unwrap();
        assert_eq!(r.value, 1);
        let r = ep_induced(&pd, &LeviModule::CLambda(alpha.neg()), &l0, &win).unwrap();
        assert_eq!(r.value, -1);
        // EP(M(λ), F_μ) = 0 for all λ
        for k in [-2i64, -1, 0, 1, 3] {
            let r = ep_induced(&pd, &LeviModule::CLambda(wq(&[&k.to_string()])), &f, &win).unwrap();
            assert_eq!(r.value, 0, "λ-coord {k}");
        }
    }

    #[test]
    fn verma_coefficients_a1() {
        let la = chevalley_basis(&build_root_system("A1").unwrap());
        let win = Window::new(Weight::zero(1), 8);
        let alpha = la.rd.positive_roots[0].fund.clone();
        // λ = 0 → [(0, 1), (−α, −1)]
        let cs = verma_coefficients(&la, &Weight::zero(1), &win).unwrap();
        assert_eq!(cs, vec![(Weight::zero(1), 1), (alpha.neg(), -1)]);
        // λ = −ρ → [(−ρ, 1)]
        let cs = verma_coefficients(&la, &la.rd.rho.neg(), &win).unwrap();
        assert_eq!(cs, vec![(la.rd.rho.neg(), 1)]);
        // λ = 3·fund → [(3, 1), (s·3 = −5, −1)]
        let win3 = Window::new(wq(&["3"]), 8);
        let cs = verma_coefficients(&la, &wq(&["3"]), &win3).unwrap();
        assert_eq!(cs, vec![(wq(&["3"]), 1), (wq(&["-5"]), -1)]);
    }

    #[test]
    fn verma_coefficients_a2_trivial() {
        // the rank-2 triangular solve: 6 alternating terms for L(0)
        let la = chevalley_basis(&build_root_system("A2").unwrap());
        let win = Window::new(Weight::zero(2), 5);
        let cs = verma_coefficients(&la, &Weight::zero(2), &win).unwrap();
        assert_eq!(cs.len(), 6);
        // coefficients are (−1)^{l(w)} against the dot orbit
        for (mu, c) in &cs {
            let w = la
                .rd
                .weyl
                .iter()
                .find(|w| la.rd.dot_action(w, &Weight::zero(2)) == *mu)
                .expect("candidate in the dot orbit");
            assert_eq!(*c, if w.length % 2 == 0 { 1 } else { -1 }, "μ={mu}");
        }
    }

    #[test]
    fn ep_pair_a1_table() {
        let la = chevalley_basis(&build_root_system("A1").unwrap());
        let win = Window::new(Weight::zero(1), 8);
        let alpha = la.rd.positive_roots[0].fund.clone();
        let m0 = verma(&la, &Weight::zero(1)).unwrap();
        let l0 = simple_hw(&la, &Weight::zero(1)).unwrap();
        let f = cuspidal_sl2(&la, &q_ratio(1, 2), &q_ratio(1, 2)).unwrap();

        // EP(L(0), L(0)) = 2 through the Verma decomposition
        let r = ep_pair(&l0, &l0, &win).unwrap();
        assert_eq!((r.value, r.method), (2, EpMethod::VermaDecomposition));
        // EP(L(0), F) = 0
        let r = ep_pair(&l0, &f, &win).unwrap();
        assert_eq!(r.value, 0);
        // EP(F, F') = 0, theorem-based
        let f2 = cuspidal_sl2(&la, &q_ratio(1, 3), &q_ratio(1, 3)).unwrap();
        let r = ep_pair(&f, &f2, &win).unwrap();
        assert_eq!((r.value, r.method), (0, EpMethod::TheoremBased));
        // EP(F, L(0)) flips through the dual
        let r = ep_pair(&f, &l0, &win).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.audit.iter().any(|a| a.starts_with("dual-flip")));
        // EP(F, M(0)) uses the K-class of the dual Verma
        let r = ep_pair(&f, &m0, &win).unwrap();
        assert_eq!(r.value, 0);
        // additivity fixture: EP(L(0), N) = EP(M(0), N) − EP(M(−α), N)
        for n in [&m0, &l0, &f] {
            let whole = ep_pair(&l0, n, &win).unwrap().value;
            let top = ep_pair(&m0, n, &win).unwrap().value;
            let sub = ep_pair(&verma(&la, &alpha.neg()).unwrap(), n, &win).unwrap().value;
            assert_eq!(whole, top - sub);
        }
    }

    #[test]
    fn main2_a1_pairs() {
        let la = chevalley_basis(&build_root_system("A1").unwrap());
        let win = Window::new(Weight::zero(1), 8);
        let m0 = verma(&la, &Weight::zero(1)).unwrap();
        let l0 = simple_hw(&la, &Weight::zero(1)).unwrap();
        // (M(λ), L(0)) for λ ∈ {0, −α}: both sides 1 and −1
        let r = verify_main2(&m0, &l0, &win).unwrap();
        assert!(r.equal);
        assert_eq!((r.ep.value, r.index_pair), (1, 1));
        let m1 = verma(&la, &la.rd.positive_roots[0].fund.neg()).unwrap();
        let r = verify_main2(&m1, &l0, &win).unwrap();
        assert!(r.equal);
        assert_eq!((r.ep.value, r.index_pair), (-1, -1));
    }

    #[test]
    fn main2_a2_simple_simple() {
        // (L(0), L(0)) on A2: both sides independently computed; the EP side
        // resolves through the 6-term decomposition, the index side is the
        // Weyl-orbit square count
        let la = chevalley_basis(&build_root_system("A2").unwrap());
        let win = Window::new(Weight::zero(2), 5);
        let l0 = simple_hw(&la, &Weight::zero(2)).unwrap();
        let r = verify_main2(&l0, &l0, &win).unwrap();
        assert!(r.equal, "ep = {}, index = {}", r.ep.value, r.index_pair);
        assert_eq!(r.ep.value, 6);
        assert!(!r.theorem_based);
    }

    #[test]
    fn dual_flip_consistency() {
        // where both dispatch paths exist the values agree
        let la = chevalley_basis(&build_root_system("A1").unwrap());
        let win = Window::new(Weight::zero(1), 8);
        let l0 = simple_hw(&la, &Weight::zero(1)).unwrap();
        let f = cuspidal_sl2(&la, &q_ratio(1, 2), &q_ratio(1, 2)).unwrap();
        let direct = ep_pair(&l0, &f, &win).unwrap().value;
        let flipped = ep_pair(&f, &l0, &win).unwrap().value;
        assert_eq!(direct, flipped);
    }

    #[test]
    fn generalized_verma_pairing_matches_index_side() {
        // M_p(C_0) over A2 with Levi {α1}: the EP value goes through the
        // level-l index pairing; the independently computed index pairing of
        // verify_main2 is the oracle.
        let la = chevalley_basis(&build_root_system("A2").unwrap());
        let pd = la.rd.parabolic(&std::collections::BTreeSet::from([0])).unwrap();
        let m = crate::wmod::induce_parabolic(
            &la,
            &pd,
            LeviModule::CLambda(Weight::zero(2)),
        )
        .unwrap();
        let win = Window::new(Weight::zero(2), 4);
        for n in [
            verma(&la, &Weight::zero(2)).unwrap(),
            simple_hw(&la, &Weight::zero(2)).unwrap(),
        ] {
            let r = verify_main2(&m, &n, &win).unwrap();
            assert!(r.equal, "ep = {} vs index = {}", r.ep.value, r.index_pair);
        }
        // and against the parabolically induced cuspidal neighbour: zero
        let v = LeviModule::InflatedCuspidal {
            gamma: 0,
            mu0: q_ratio(3, 4),
            mu1: q_ratio(1, 4),
            base: wq(&["1/2", "0"]),
        };
        let r = ep_induced(&pd, &v, &m, &Window::new(wq(&["1/2", "0"]), 4)).unwrap();
        assert_eq!((r.value, r.method), (0, EpMethod::TheoremBased));
    }

    #[test]
    fn window_too_small_reported() {
        let la = chevalley_basis(&build_root_system("A2").unwrap());
        let pd = la.rd.parabolic(&std::collections::BTreeSet::from([0])).unwrap();
        let v = LeviModule::InflatedCuspidal {
            gamma: 0,
            mu0: q_ratio(3, 4),
            mu1: q_ratio(1, 4),
            base: wq(&["1/2", "0"]),
        };
        let n = verma(&la, &Weight::zero(2)).unwrap();
        // a window whose coset misses supp V entirely
        let win = Window::new(Weight::zero(2), 2);
        assert!(matches!(
            ep_induced(&pd, &v, &n, &win),
            Err(Error::WindowTooSmall(_))
        ));
    }
}
