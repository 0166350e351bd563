//! Formal sums of continued Langlands parameters.
//!
//! Nothing here classifies parameters or rewrites them to final form; the
//! module materialises, term by term, the sums obtained by tensoring standard
//! modules with multisets of torus weights: the weight multisets attached to
//! `k`, `∧^n k` and `τ_λ`, the Zuckerman expansion of the trivial
//! representation, and the resulting expansion of `C[N_θ]` for split forms.
//! The table of θ-stable tori, their imaginary positive systems and the
//! orbit codimensions `ℓ` is input data.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;

use crate::charring::irreducible_character;
use crate::error::{Error, Result};
use crate::ktheta::RealFormConfig;
use crate::lattice::Weight;
use crate::nilcone::cn_irrep_series;
use crate::rootdata::{classify_roots, InvolutionData, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSystem {
    pub id: String,
    /// A positive system for the imaginary roots of the torus.
    pub imaginary_positive: BTreeSet<Weight>,
    /// Codimension of the corresponding `K`-orbit on the flag variety.
    pub ell: u32,
}

/// One conjugacy class of θ-stable maximal tori. Its character lattice is
/// identified with that of the ambient root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDatum {
    pub label: String,
    pub lattice_rank: usize,
    pub theta: InvolutionData,
    pub positive_systems: Vec<PositiveSystem>,
}

impl TorusDatum {
    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        let label = self.label.as_str();
        fn bad<T>(label: &str, msg: String) -> Result<T> {
            Err(Error::InvalidTorus(format!("{label}: {msg}")))
        }
        if self.lattice_rank != datum.rank() {
            return bad(label, format!("lattice rank {} but the group has rank {}", self.lattice_rank, datum.rank()));
        }
        let classes = classify_roots(datum, &self.theta).or_else(|e| bad(label, format!("{e}")))?;
        let imaginary = classes.imaginary();
        if self.positive_systems.is_empty() {
            return bad(label, "no positive systems listed".into());
        }
        let mut ids = BTreeSet::new();
        for ps in &self.positive_systems {
            if !ids.insert(ps.id.as_str()) {
                return bad(label, format!("duplicate positive system id {}", ps.id));
            }
            for a in &ps.imaginary_positive {
                if !imaginary.contains(a) {
                    return bad(label, format!("positive system {} contains {a}, which is not an imaginary root", ps.id));
                }
            }
            for a in &imaginary {
                if ps.imaginary_positive.contains(a) == ps.imaginary_positive.contains(&-a) {
                    return bad(label, format!("positive system {} must contain exactly one of ±{a}", ps.id));
                }
            }
            for a in &ps.imaginary_positive {
                for b in &ps.imaginary_positive {
                    let s = a + b;
                    if imaginary.contains(&s) && !ps.imaginary_positive.contains(&s) {
                        return bad(label, format!("positive system {} is not closed: {a} + {b}", ps.id));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn positive_system(&self, id: &str) -> Option<&PositiveSystem> {
        self.positive_systems.iter().find(|p| p.id == id)
    }
}

/// `2ρ_iR` for a positive system: the sum of its imaginary positive roots
/// (zero when there are no imaginary roots).
pub fn two_rho_imaginary(ps: &PositiveSystem, rank: usize) -> Weight {
    ps.imaginary_positive.iter().fold(Weight::zero(rank), |acc, a| acc + a.clone())
}

/// A continued parameter `(H, γ, Φ^+)` with `γ = γ₀ (+ ρ_iR)`; the `ρ_iR`
/// summand is kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContinuedParameter {
    pub torus: String,
    pub gamma0: Weight,
    pub rho_ir: bool,
    pub positive_system: String,
}

impl ContinuedParameter {
    pub fn gamma_description(&self) -> String {
        if self.rho_ir {
            format!("rho_iR + {}", self.gamma0)
        } else {
            format!("{}", self.gamma0)
        }
    }
}

impl fmt::Display for ContinuedParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}, {}, {})", self.torus, self.gamma_description(), self.positive_system)
    }
}

/// Integer combination of `[I(Γ)] q^n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalStandardSum {
    terms: BTreeMap<(u32, ContinuedParameter), i64>,
}

impl FormalStandardSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, coefficient: i64, parameter: ContinuedParameter, q_power: u32) {
        if coefficient == 0 {
            return;
        }
        let key = (q_power, parameter);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += coefficient;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn merge(&mut self, other: &FormalStandardSum) {
        for (c, p, q) in other.terms() {
            self.add(c, p.clone(), q);
        }
    }

    /// `(coefficient, parameter, q_power)` ordered by q-power, torus, then γ.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ContinuedParameter, u32)> {
        self.terms.iter().map(|((q, p), &c)| (c, p, *q))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Signed sum of the coefficients in each q-degree `0..=max_degree`.
    pub fn coefficient_mass(&self, max_degree: u32) -> Vec<i64> {
        let mut out = alloc::vec![0; max_degree as usize + 1];
        for (c, _, q) in self.terms() {
            if q <= max_degree {
                out[q as usize] += c;
            }
        }
        out
    }
}

/// A finite multiset of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, w: Weight, count: u64) {
        if count > 0 {
            *self.entries.entry(w).or_insert(0) += count;
        }
    }

    pub fn count(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// Size counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &c)| (w, c))
    }

    /// Multiset union (sum of counts).
    pub fn union(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.insert(w.clone(), c);
        }
        out
    }
}

impl FromIterator<Weight> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = Weight>>(iter: I) -> Self {
        let mut m = WeightMultiset::new();
        for w in iter {
            m.insert(w, 1);
        }
        m
    }
}

/// `S_H(k)` together with the number of zero weights appended for the fixed
/// part of the Cartan subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KWeightMultiset {
    pub weights: WeightMultiset,
    pub toral_correction: usize,
}

/// Weights of `k` on the torus `H`: compact imaginary roots, one
/// representative of each complex pair `{α, θα}` (the lexicographically
/// smaller), `|Δ_R^+|` zeros, and `dim h^θ` further zeros. The total must
/// equal `dim_k`.
pub fn s_h_of_k(torus: &TorusDatum, datum: &RootDatum, dim_k: usize) -> Result<KWeightMultiset> {
    torus.validate(datum)?;
    let classes = classify_roots(datum, &torus.theta)?;
    let mut weights = WeightMultiset::new();
    for a in &classes.imaginary_compact {
        weights.insert(a.clone(), 1);
    }
    for a in &classes.complex {
        let t = torus.theta.apply(a);
        if *a < t {
            weights.insert(a.clone(), 1);
        }
    }
    let positive: BTreeSet<&Weight> = datum.positive_roots().iter().collect();
    let real_positive = classes.real.iter().filter(|a| positive.contains(a)).count() as u64;
    let zero = Weight::zero(datum.rank());
    weights.insert(zero.clone(), real_positive);
    let toral_correction = torus.theta.fixed_dimension();
    weights.insert(zero, toral_correction as u64);
    if weights.total() != dim_k as u64 {
        return Err(Error::InvalidTorus(format!(
            "{}: weights of k on this torus number {}, but dim k = {dim_k}",
            torus.label,
            weights.total()
        )));
    }
    Ok(KWeightMultiset { weights, toral_correction })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `S_H(∧^n)`: sums over all `n`-element sub-multisets of `s` (counted as
/// subsets of positions, so the result has `C(|s|, n)` elements).
pub fn s_h_of_wedge(s: &WeightMultiset, n: u32) -> WeightMultiset {
    let distinct: Vec<(&Weight, u64)> = s.iter().collect();
    let rank = distinct.first().map_or(0, |(w, _)| w.rank());
    let mut out = WeightMultiset::new();
    fn rec(
        distinct: &[(&Weight, u64)],
        idx: usize,
        remaining: u64,
        acc: Weight,
        count: u64,
        out: &mut WeightMultiset,
    ) {
        if remaining == 0 {
            out.insert(acc, count);
            return;
        }
        if idx == distinct.len() {
            return;
        }
        let (w, m) = distinct[idx];
        for k in 0..=m.min(remaining) {
            rec(distinct, idx + 1, remaining - k, &acc + &w.scaled(k as i64), count * binomial(m, k), out);
        }
    }
    if n == 0 {
        // The empty sum; its rank is taken from the multiset when available.
        out.insert(Weight::zero(rank), 1);
        return out;
    }
    rec(&distinct, 0, u64::from(n), Weight::zero(rank), 1, &mut out);
    out
}

/// `S_H(τ_λ)`: the weights of `τ_λ` with multiplicity.
pub fn s_h_of_tau(datum: &RootDatum, lam: &Weight) -> Result<WeightMultiset> {
    let ch = irreducible_character(datum, lam)?;
    let mut out = WeightMultiset::new();
    for (w, m) in ch.terms() {
        debug_assert!(m > 0);
        out.insert(w.clone(), m as u64);
    }
    Ok(out)
}

/// `[I(H, γ, Φ^+)] ⊗ χ = Σ_{μ ∈ S} [I(H, γ + μ, Φ^+)]`.
pub fn tensor_standard(p: &ContinuedParameter, s: &WeightMultiset) -> Result<FormalStandardSum> {
    let mut out = FormalStandardSum::new();
    for (mu, count) in s.iter() {
        if mu.rank() != p.gamma0.rank() {
            return Err(Error::RankMismatch { context: "tensor weight", expected: p.gamma0.rank(), found: mu.rank() });
        }
        let shifted = ContinuedParameter { gamma0: &p.gamma0 + mu, ..p.clone() };
        out.add(count as i64, shifted, 0);
    }
    Ok(out)
}

fn sign(exponent: u64) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `triv = Σ_H Σ_{Δ^+} (-1)^{ℓ(Δ^+)} [I(H, ρ_iR, Δ_iR^+)]`, one term per row
/// of the supplied torus table.
pub fn zuckerman_expansion(tori: &[TorusDatum]) -> Result<FormalStandardSum> {
    if tori.is_empty() {
        return Err(Error::InvalidTorus("the torus table is empty".into()));
    }
    let mut out = FormalStandardSum::new();
    for t in tori {
        for ps in &t.positive_systems {
            let p = ContinuedParameter {
                torus: t.label.clone(),
                gamma0: Weight::zero(t.lattice_rank),
                rho_ir: true,
                positive_system: ps.id.clone(),
            };
            out.add(sign(u64::from(ps.ell)), p, 0);
        }
    }
    Ok(out)
}

/// Expansion of `C[N_θ]|_K` in continued parameters through q-degree
/// `truncation`:
///
/// `Σ_H Σ_{Δ^+} Σ_λ Σ_μ Σ_{R ⊆ S_H(k)} (-1)^{ℓ+|R|} M(λ,μ) M_q(λ,0)
///  [I(H, ρ_iR + μ + ΣR, Δ_iR^+)] q^{|R|}`.
pub fn theorem_branching_sum(
    config: &RealFormConfig,
    tori: &[TorusDatum],
    truncation: u32,
) -> Result<FormalStandardSum> {
    if !config.split_mod_center {
        return Err(Error::NotSplit);
    }
    if tori.is_empty() {
        return Err(Error::InvalidTorus("the torus table is empty".into()));
    }
    let datum = &config.g_datum;
    let irreps = cn_irrep_series(datum, truncation);
    let mut tau_weights: BTreeMap<Weight, WeightMultiset> = BTreeMap::new();
    for (_, layer) in irreps.layers() {
        for lam in layer.keys() {
            if !tau_weights.contains_key(lam) {
                tau_weights.insert(lam.clone(), s_h_of_tau(datum, lam)?);
            }
        }
    }
    let mut out = FormalStandardSum::new();
    for torus in tori {
        let k_weights = s_h_of_k(torus, datum, config.dims.k)?.weights;
        let max_n = truncation.min(k_weights.total() as u32);
        let wedges: Vec<WeightMultiset> = (0..=max_n).map(|n| s_h_of_wedge(&k_weights, n)).collect();
        for ps in &torus.positive_systems {
            for (d, layer) in irreps.layers() {
                for (lam, &graded_mult) in layer {
                    for (n, wedge) in wedges.iter().enumerate() {
                        let q_power = d + n as u32;
                        if q_power > truncation {
                            break;
                        }
                        let s = sign(u64::from(ps.ell) + n as u64) * graded_mult;
                        for (mu, weight_mult) in tau_weights[lam].iter() {
                            for (nu, subsets) in wedge.iter() {
                                let p = ContinuedParameter {
                                    torus: torus.label.clone(),
                                    gamma0: mu + nu,
                                    rho_ir: true,
                                    positive_system: ps.id.clone(),
                                };
                                out.add(s * weight_mult as i64 * subsets as i64, p, q_power);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `|λ + 2ρ_c|²` for a dominant weight of `K`.
pub fn k_norm_squared(k_datum: &RootDatum, lam: &Weight) -> Result<Rational64> {
    if lam.rank() != k_datum.rank() {
        return Err(Error::RankMismatch { context: "K weight", expected: k_datum.rank(), found: lam.rank() });
    }
    if !k_datum.is_dominant(lam) {
        return Err(Error::NotDominant(lam.clone()));
    }
    let shifted = lam + k_datum.two_rho();
    Ok(k_datum.inner_product(&shifted, &shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;
    use alloc::vec;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }
    fn a1() -> RootDatum {
        RootDatum::from_cartan(&[vec![2]]).unwrap()
    }
    fn split_torus() -> TorusDatum {
        TorusDatum {
            label: "split".into(),
            lattice_rank: 1,
            theta: InvolutionData::new(IntMatrix::from_rows(&[vec![-1]], 1).unwrap(), []),
            positive_systems: vec![PositiveSystem { id: "s".into(), imaginary_positive: BTreeSet::new(), ell: 0 }],
        }
    }
    fn compact_torus() -> TorusDatum {
        let ps = |id: &str, root: i64| PositiveSystem {
            id: id.into(),
            imaginary_positive: BTreeSet::from([w(&[root])]),
            ell: 1,
        };
        TorusDatum {
            label: "compact".into(),
            lattice_rank: 1,
            theta: InvolutionData::new(IntMatrix::identity(1), []),
            positive_systems: vec![ps("c+", 2), ps("c-", -2)],
        }
    }
    fn param(gamma: i64) -> ContinuedParameter {
        ContinuedParameter { torus: "split".into(), gamma0: w(&[gamma]), rho_ir: true, positive_system: "s".into() }
    }

    #[test]
    fn s_h_of_k_examples() {
        let d = a1();
        let split = s_h_of_k(&split_torus(), &d, 1).unwrap();
        assert_eq!(split.weights.count(&w(&[0])), 1);
        assert_eq!(split.toral_correction, 0);
        let compact = s_h_of_k(&compact_torus(), &d, 1).unwrap();
        assert_eq!(compact.weights.total(), 1);
        assert_eq!(compact.toral_correction, 1);
        assert!(s_h_of_k(&split_torus(), &d, 2).is_err());

        let t = RootDatum::torus(1).unwrap();
        let torus_only = s_h_of_k(&split_torus(), &t, 0).unwrap();
        assert!(torus_only.weights.is_empty());
    }

    #[test]
    fn s_h_of_k_complex_pairs() {
        let d = RootDatum::from_cartan(&[vec![2, 0], vec![0, 2]]).unwrap();
        let torus = TorusDatum {
            label: "swap".into(),
            lattice_rank: 2,
            theta: InvolutionData::new(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2).unwrap(), []),
            positive_systems: vec![PositiveSystem { id: "x".into(), imaginary_positive: BTreeSet::new(), ell: 0 }],
        };
        let s = s_h_of_k(&torus, &d, 3).unwrap();
        // {α1, α2} → α2 = [0, 2] < [2, 0]; {−α1, −α2} → [−2, 0].
        assert_eq!(s.weights.count(&w(&[0, 2])), 1);
        assert_eq!(s.weights.count(&w(&[-2, 0])), 1);
        assert_eq!(s.weights.count(&w(&[0, 0])), 1);
    }

    #[test]
    fn torus_validation() {
        let d = a1();
        let mut t = compact_torus();
        t.positive_systems[0].imaginary_positive.insert(w(&[-2]));
        assert!(t.validate(&d).is_err());
        let mut t = split_torus();
        t.positive_systems[0].imaginary_positive.insert(w(&[2]));
        assert!(t.validate(&d).is_err());
        let mut t = compact_torus();
        t.positive_systems[1].id = "c+".into();
        assert!(t.validate(&d).is_err());
        let mut t = split_torus();
        t.lattice_rank = 2;
        assert!(t.validate(&d).is_err());
        assert!(compact_torus().validate(&d).is_ok());
    }

    #[test]
    fn wedge_examples() {
        let s: WeightMultiset = [w(&[0])].into_iter().collect();
        assert_eq!(s_h_of_wedge(&s, 0), [w(&[0])].into_iter().collect());
        assert_eq!(s_h_of_wedge(&s, 1), s);
        assert!(s_h_of_wedge(&s, 2).is_empty());
        let ab: WeightMultiset = [w(&[1, 0]), w(&[0, 1])].into_iter().collect();
        assert_eq!(s_h_of_wedge(&ab, 2), [w(&[1, 1])].into_iter().collect());
        let mut multi = WeightMultiset::new();
        multi.insert(w(&[0]), 3);
        multi.insert(w(&[2]), 1);
        let total: u64 = (0..=4).map(|n| s_h_of_wedge(&multi, n).total()).sum();
        assert_eq!(total, 16);
        assert_eq!(s_h_of_wedge(&multi, 2).count(&w(&[0])), 3);
        assert_eq!(s_h_of_wedge(&multi, 2).count(&w(&[2])), 3);
    }

    #[test]
    fn tau_examples() {
        let d = a1();
        assert_eq!(s_h_of_tau(&d, &w(&[0])).unwrap(), [w(&[0])].into_iter().collect());
        assert_eq!(s_h_of_tau(&d, &w(&[2])).unwrap(), [w(&[-2]), w(&[0]), w(&[2])].into_iter().collect());
        let a2 = RootDatum::from_cartan(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let adj = s_h_of_tau(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(adj.total(), 8);
        assert_eq!(adj.count(&w(&[0, 0])), 2);
        assert!(a2.roots().iter().all(|r| adj.count(r) == 1));
        assert!(s_h_of_tau(&d, &w(&[-2])).is_err());
    }

    #[test]
    fn tensor_examples() {
        let p = param(0);
        let triv: WeightMultiset = [w(&[0])].into_iter().collect();
        let t = tensor_standard(&p, &triv).unwrap();
        assert_eq!(t.terms().collect::<Vec<_>>(), vec![(1, &p, 0)]);
        let adj: WeightMultiset = [w(&[-2]), w(&[0]), w(&[2])].into_iter().collect();
        let t = tensor_standard(&p, &adj).unwrap();
        let gammas: Vec<Weight> = t.terms().map(|(_, p, _)| p.gamma0.clone()).collect();
        assert_eq!(gammas, vec![w(&[-2]), w(&[0]), w(&[2])]);
        let mut doubled = WeightMultiset::new();
        doubled.insert(w(&[2]), 2);
        let t = tensor_standard(&p, &doubled).unwrap();
        assert_eq!(t.terms().next().unwrap().0, 2);
        assert!(tensor_standard(&p, &[w(&[0, 0])].into_iter().collect()).is_err());
    }

    #[test]
    fn tensor_is_additive() {
        let p = param(4);
        let s1: WeightMultiset = [w(&[-2]), w(&[0])].into_iter().collect();
        let s2: WeightMultiset = [w(&[0]), w(&[6])].into_iter().collect();
        let mut merged = tensor_standard(&p, &s1).unwrap();
        merged.merge(&tensor_standard(&p, &s2).unwrap());
        assert_eq!(tensor_standard(&p, &s1.union(&s2)).unwrap(), merged);
    }

    #[test]
    fn zuckerman_examples() {
        let one = zuckerman_expansion(&[split_torus()]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.terms().next().unwrap().0, 1);
        let sl2 = zuckerman_expansion(&[split_torus(), compact_torus()]).unwrap();
        let signs: Vec<i64> = sl2.terms().map(|(c, _, _)| c).collect();
        assert_eq!(signs, vec![-1, -1, 1]);
        assert!(zuckerman_expansion(&[]).is_err());
    }

    #[test]
    fn k_norm_examples() {
        let t = RootDatum::torus(1).unwrap();
        assert_eq!(k_norm_squared(&t, &w(&[2])).unwrap(), Rational64::from_integer(4));
        assert_eq!(k_norm_squared(&t, &w(&[0])).unwrap(), Rational64::from_integer(0));
        let a1 = a1();
        assert_eq!(k_norm_squared(&a1, &w(&[0])).unwrap(), Rational64::from_integer(2));
        assert!(k_norm_squared(&a1, &w(&[-1])).is_err());
    }

    #[test]
    fn k_norm_independent_of_positive_system() {
        let b2 = RootDatum::from_cartan(&[vec![2, -2], vec![-1, 2]]).unwrap();
        for lam in [w(&[0, 0]), w(&[1, 0]), w(&[2, 3])] {
            let base = k_norm_squared(&b2, &lam).unwrap();
            for e in b2.weyl_group() {
                // Positive system e(Φ^+): ρ becomes e(ρ), λ becomes e(λ).
                let moved = &e.apply(&lam) + &e.apply(b2.two_rho());
                assert_eq!(b2.inner_product(&moved, &moved), base);
            }
        }
    }
}
