//! Virtual torus characters, truncated q-graded character series and
//! decomposition of Weyl-invariant characters into irreducibles.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, Weight};
use crate::qcombinatorics::weyl_multiplicity;
use crate::rootdata::RootDatum;

/// A virtual character of a torus: a finitely supported map from weights to
/// integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusCharacter {
    rank: usize,
    terms: BTreeMap<Weight, i64>,
}

impl TorusCharacter {
    pub fn zero(rank: usize) -> Self {
        TorusCharacter { rank, terms: BTreeMap::new() }
    }

    /// `e^0`.
    pub fn trivial(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), 1)
    }

    pub fn monomial(weight: Weight, multiplicity: i64) -> Self {
        let mut ch = Self::zero(weight.rank());
        ch.add_term(weight, multiplicity);
        ch
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut ch = Self::zero(rank);
        for (w, m) in terms {
            if w.rank() != rank {
                return Err(Error::RankMismatch { context: "character term", expected: rank, found: w.rank() });
            }
            ch.add_term(w, m);
        }
        Ok(ch)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, weight: Weight, multiplicity: i64) {
        debug_assert_eq!(weight.rank(), self.rank);
        if multiplicity == 0 {
            return;
        }
        match self.terms.entry(weight) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += multiplicity;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(multiplicity);
            }
        }
    }

    pub fn multiplicity(&self, weight: &Weight) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities (the virtual dimension).
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn add_scaled(&mut self, other: &TorusCharacter, k: i64) {
        debug_assert_eq!(self.rank, other.rank);
        for (w, m) in other.terms() {
            self.add_term(w.clone(), m * k);
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero(self.rank);
        out.add_scaled(self, k);
        out
    }

    /// Convolution product.
    pub fn mul(&self, other: &TorusCharacter) -> Result<TorusCharacter> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { context: "character product", expected: self.rank, found: other.rank });
        }
        let mut out = Self::zero(self.rank);
        for (a, ma) in self.terms() {
            for (b, mb) in other.terms() {
                out.add_term(a + b, ma * mb);
            }
        }
        Ok(out)
    }

    /// `w ↦ -w` on the support.
    pub fn dual(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, m) in self.terms() {
            out.add_term(-w, m);
        }
        out
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, m)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}e^{w}")?;
        }
        Ok(())
    }
}

/// A q-series of torus characters cut off above degree `truncation`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedCharacter {
    rank: usize,
    truncation: u32,
    layers: BTreeMap<u32, TorusCharacter>,
}

impl GradedCharacter {
    pub fn zero(rank: usize, truncation: u32) -> Self {
        GradedCharacter { rank, truncation, layers: BTreeMap::new() }
    }

    /// `e^0` in degree 0.
    pub fn trivial(rank: usize, truncation: u32) -> Self {
        let mut g = Self::zero(rank, truncation);
        g.add_to_layer(0, &TorusCharacter::trivial(rank));
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Adds `ch` to the degree-`degree` layer; ignored above the truncation.
    pub fn add_to_layer(&mut self, degree: u32, ch: &TorusCharacter) {
        debug_assert_eq!(ch.rank(), self.rank);
        if degree > self.truncation || ch.is_zero() {
            return;
        }
        let layer = self.layers.entry(degree).or_insert_with(|| TorusCharacter::zero(self.rank));
        layer.add_scaled(ch, 1);
        if layer.is_zero() {
            self.layers.remove(&degree);
        }
    }

    pub fn add_term(&mut self, degree: u32, weight: Weight, multiplicity: i64) {
        self.add_to_layer(degree, &TorusCharacter::monomial(weight, multiplicity));
    }

    pub fn layer(&self, degree: u32) -> TorusCharacter {
        self.layers.get(&degree).cloned().unwrap_or_else(|| TorusCharacter::zero(self.rank))
    }

    /// Non-zero layers in increasing degree.
    pub fn layers(&self) -> impl Iterator<Item = (u32, &TorusCharacter)> {
        self.layers.iter().map(|(&d, ch)| (d, ch))
    }

    /// Mass of every layer `0..=truncation`.
    pub fn masses(&self) -> Vec<i64> {
        (0..=self.truncation).map(|d| self.layers.get(&d).map_or(0, TorusCharacter::mass)).collect()
    }

    pub fn truncated(&self, truncation: u32) -> Self {
        let truncation = truncation.min(self.truncation);
        GradedCharacter {
            rank: self.rank,
            truncation,
            layers: self.layers.range(..=truncation).map(|(&d, ch)| (d, ch.clone())).collect(),
        }
    }

    /// Sum of all layers (evaluation at q = 1 of the truncated series).
    pub fn total(&self) -> TorusCharacter {
        let mut out = TorusCharacter::zero(self.rank);
        for ch in self.layers.values() {
            out.add_scaled(ch, 1);
        }
        out
    }

    pub fn add(&self, other: &GradedCharacter) -> Result<GradedCharacter> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { context: "graded sum", expected: self.rank, found: other.rank });
        }
        let mut out = self.truncated(other.truncation);
        for (d, ch) in other.layers() {
            out.add_to_layer(d, ch);
        }
        Ok(out)
    }

    /// Applies `f` to every layer, producing a series over a torus of rank
    /// `target_rank`.
    pub fn map_layers(
        &self,
        target_rank: usize,
        mut f: impl FnMut(&TorusCharacter) -> Result<TorusCharacter>,
    ) -> Result<GradedCharacter> {
        let mut out = GradedCharacter::zero(target_rank, self.truncation);
        for (d, ch) in self.layers() {
            let image = f(ch)?;
            if image.rank() != target_rank {
                return Err(Error::RankMismatch { context: "layer map", expected: target_rank, found: image.rank() });
            }
            out.add_to_layer(d, &image);
        }
        Ok(out)
    }
}

/// Cauchy product of two graded characters, truncated to the smaller of the
/// two truncations.
pub fn graded_mul(a: &GradedCharacter, b: &GradedCharacter) -> Result<GradedCharacter> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch { context: "graded product", expected: a.rank, found: b.rank });
    }
    let truncation = a.truncation.min(b.truncation);
    let mut out = GradedCharacter::zero(a.rank, truncation);
    for (da, ca) in a.layers() {
        for (db, cb) in b.layers() {
            if da + db <= truncation {
                out.add_to_layer(da + db, &ca.mul(cb)?);
            }
        }
    }
    Ok(out)
}

/// Multiplicities of irreducible representations per degree, labelled by
/// highest weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrrepSeries {
    truncation: u32,
    layers: BTreeMap<u32, BTreeMap<Weight, i64>>,
}

impl IrrepSeries {
    pub fn new(truncation: u32) -> Self {
        IrrepSeries { truncation, layers: BTreeMap::new() }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn add(&mut self, degree: u32, label: Weight, multiplicity: i64) {
        if degree > self.truncation || multiplicity == 0 {
            return;
        }
        let layer = self.layers.entry(degree).or_default();
        let e = layer.entry(label.clone()).or_insert(0);
        *e += multiplicity;
        if *e == 0 {
            layer.remove(&label);
            if layer.is_empty() {
                self.layers.remove(&degree);
            }
        }
    }

    pub fn multiplicity(&self, degree: u32, label: &Weight) -> i64 {
        self.layers.get(&degree).and_then(|l| l.get(label)).copied().unwrap_or(0)
    }

    pub fn layer(&self, degree: u32) -> Option<&BTreeMap<Weight, i64>> {
        self.layers.get(&degree)
    }

    pub fn layers(&self) -> impl Iterator<Item = (u32, &BTreeMap<Weight, i64>)> {
        self.layers.iter().map(|(&d, l)| (d, l))
    }

    /// `(degree, label, multiplicity)` in increasing degree, then by the
    /// height of the label, then lexicographically.
    pub fn rows(&self, datum: &RootDatum) -> Vec<(u32, Weight, i64)> {
        let mut rows: Vec<(u32, Weight, i64)> = Vec::new();
        for (d, layer) in self.layers() {
            let mut labelled: Vec<(Weight, i64)> = layer.iter().map(|(w, &m)| (w.clone(), m)).collect();
            labelled.sort_by_cached_key(|(w, _)| (label_height_key(datum, w), w.clone()));
            rows.extend(labelled.into_iter().map(|(w, m)| (d, w, m)));
        }
        rows
    }
}

// Height of the root-span part of a label; rational so labels outside the
// root lattice still sort.
fn label_height_key(datum: &RootDatum, w: &Weight) -> num_rational::Rational64 {
    datum.rational_root_coords(w).into_iter().sum()
}

/// Character of the irreducible representation of highest weight `lam`.
pub fn irreducible_character(datum: &RootDatum, lam: &Weight) -> Result<TorusCharacter> {
    if lam.rank() != datum.rank() {
        return Err(Error::RankMismatch { context: "highest weight", expected: datum.rank(), found: lam.rank() });
    }
    if !datum.is_dominant(lam) {
        return Err(Error::NotDominant(lam.clone()));
    }
    let mut ch = TorusCharacter::zero(datum.rank());
    for mu in datum.dominant_weights_below(lam) {
        let m = weyl_multiplicity(datum, lam, &mu)?;
        if m == 0 {
            continue;
        }
        for nu in datum.orbit(&mu) {
            ch.add_term(nu, m);
        }
    }
    Ok(ch)
}

fn check_weyl_invariant(datum: &RootDatum, ch: &TorusCharacter) -> Result<()> {
    for (w, m) in ch.terms() {
        for i in 0..datum.semisimple_rank() {
            let r = datum.simple_reflection(i, w);
            let mr = ch.multiplicity(&r);
            if mr != m {
                return Err(Error::NotWeylInvariant {
                    weight: w.clone(),
                    multiplicity: m,
                    reflected: r,
                    reflected_multiplicity: mr,
                });
            }
        }
    }
    Ok(())
}

/// Writes a Weyl-invariant virtual character as an integer combination of
/// irreducible characters, by repeatedly stripping off a maximal dominant
/// weight of the support.
pub fn decompose_into_irreducibles(datum: &RootDatum, ch: &TorusCharacter) -> Result<BTreeMap<Weight, i64>> {
    if ch.rank() != datum.rank() {
        return Err(Error::RankMismatch { context: "character", expected: datum.rank(), found: ch.rank() });
    }
    check_weyl_invariant(datum, ch)?;
    let mut rest = ch.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let dominant: Vec<&Weight> = rest.terms().map(|(w, _)| w).filter(|w| datum.is_dominant(w)).collect();
        // Maximal in dominance order; ties broken by the lexicographically
        // largest coordinates.
        let top = dominant
            .iter()
            .rev()
            .find(|w| !dominant.iter().any(|v| v != *w && datum.dominates(v, w)))
            .map(|w| (*w).clone())
            .expect("an invariant non-zero character has a dominant maximal weight");
        let m = rest.multiplicity(&top);
        rest.add_scaled(&irreducible_character(datum, &top)?, -m);
        out.insert(top, m);
    }
    Ok(out)
}

/// Pushes a character forward along the lattice map `r` (target rank =
/// rows of `r`).
pub fn restrict_character(ch: &TorusCharacter, r: &IntMatrix) -> Result<TorusCharacter> {
    if r.cols() != ch.rank() {
        return Err(Error::RankMismatch { context: "restriction source", expected: r.cols(), found: ch.rank() });
    }
    let mut out = TorusCharacter::zero(r.rows());
    for (w, m) in ch.terms() {
        out.add_term(r.apply(w), m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }
    fn ch1(terms: &[(i64, i64)]) -> TorusCharacter {
        TorusCharacter::from_terms(1, terms.iter().map(|&(x, m)| (w(&[x]), m))).unwrap()
    }
    fn a1() -> RootDatum {
        RootDatum::from_cartan(&[vec![2]]).unwrap()
    }
    fn a2() -> RootDatum {
        RootDatum::from_cartan(&[vec![2, -1], vec![-1, 2]]).unwrap()
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut c = ch1(&[(2, 1), (0, 1)]);
        c.add_term(w(&[2]), -1);
        assert_eq!(c, ch1(&[(0, 1)]));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn graded_mul_examples() {
        let mut a = GradedCharacter::zero(1, 4);
        a.add_to_layer(1, &ch1(&[(2, 3), (-2, 1)]));
        a.add_to_layer(3, &ch1(&[(0, 5)]));
        let one = GradedCharacter::trivial(1, 4);
        assert_eq!(graded_mul(&a, &one).unwrap(), a);

        let mut x = GradedCharacter::trivial(1, 6);
        x.add_term(1, w(&[0]), -1);
        let sq = graded_mul(&x, &x).unwrap();
        let mut expected = GradedCharacter::trivial(1, 6);
        expected.add_term(1, w(&[0]), -2);
        expected.add_term(2, w(&[0]), 1);
        assert_eq!(sq, expected);

        // Σ_m (χ_{-2m} + … + χ_{2m}) q^m times (χ_0 − χ_0 q).
        let n = 6;
        let mut cn = GradedCharacter::zero(1, n);
        for m in 0..=n as i64 {
            for k in -m..=m {
                cn.add_term(m as u32, w(&[2 * k]), 1);
            }
        }
        let mut wedge = GradedCharacter::trivial(1, n);
        wedge.add_term(1, w(&[0]), -1);
        let prod = graded_mul(&cn, &wedge).unwrap();
        assert_eq!(prod.layer(0), ch1(&[(0, 1)]));
        for m in 1..=n as i64 {
            assert_eq!(prod.layer(m as u32), ch1(&[(2 * m, 1), (-2 * m, 1)]));
        }

        let other_rank = GradedCharacter::trivial(2, 3);
        assert!(graded_mul(&a, &other_rank).is_err());
    }

    #[test]
    fn truncation_is_min_of_operands() {
        let a = GradedCharacter::trivial(1, 3);
        let b = GradedCharacter::trivial(1, 7);
        assert_eq!(graded_mul(&a, &b).unwrap().truncation(), 3);
        let mut c = GradedCharacter::zero(1, 2);
        c.add_term(5, w(&[0]), 1);
        assert!(c.layers().next().is_none());
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(irreducible_character(&a2(), &w(&[0, 0])).unwrap(), TorusCharacter::trivial(2));
        assert_eq!(irreducible_character(&a1(), &w(&[2])).unwrap(), ch1(&[(-2, 1), (0, 1), (2, 1)]));
        let std3 = irreducible_character(&a2(), &w(&[1, 0])).unwrap();
        assert_eq!(std3.len(), 3);
        assert!(std3.terms().all(|(_, m)| m == 1));
        assert!(irreducible_character(&a2(), &w(&[1, -1])).is_err());
    }

    #[test]
    fn decompose_examples() {
        let d = a1();
        assert_eq!(
            decompose_into_irreducibles(&d, &TorusCharacter::trivial(1)).unwrap(),
            BTreeMap::from([(w(&[0]), 1)])
        );
        let adj = irreducible_character(&d, &w(&[2])).unwrap();
        let sq = adj.mul(&adj).unwrap();
        assert_eq!(
            decompose_into_irreducibles(&d, &sq).unwrap(),
            BTreeMap::from([(w(&[4]), 1), (w(&[2]), 1), (w(&[0]), 1)])
        );
        let virt = ch1(&[(2, 1), (0, -1), (-2, 1)]);
        assert_eq!(
            decompose_into_irreducibles(&d, &virt).unwrap(),
            BTreeMap::from([(w(&[2]), 1), (w(&[0]), -2)])
        );
        let err = decompose_into_irreducibles(&d, &ch1(&[(2, 1)])).unwrap_err();
        assert!(matches!(err, Error::NotWeylInvariant { .. }));
    }

    #[test]
    fn decompose_then_reexpand_a2() {
        let d = a2();
        let a = irreducible_character(&d, &w(&[1, 0])).unwrap();
        let b = irreducible_character(&d, &w(&[1, 1])).unwrap();
        let mut prod = a.mul(&b).unwrap();
        prod.add_scaled(&irreducible_character(&d, &w(&[0, 3])).unwrap(), -2);
        let dec = decompose_into_irreducibles(&d, &prod).unwrap();
        let mut back = TorusCharacter::zero(2);
        for (lam, m) in &dec {
            back.add_scaled(&irreducible_character(&d, lam).unwrap(), *m);
        }
        assert_eq!(back, prod);
        assert_eq!(dec.get(&w(&[0, 3])), Some(&-2));
    }

    #[test]
    fn restriction_examples() {
        let adj = ch1(&[(-2, 1), (0, 1), (2, 1)]);
        assert_eq!(restrict_character(&adj, &IntMatrix::identity(1)).unwrap(), adj);
        let zero = IntMatrix::zeros(1, 1);
        assert_eq!(restrict_character(&adj, &zero).unwrap(), ch1(&[(0, 3)]));
        let wrong = IntMatrix::zeros(1, 2);
        assert!(restrict_character(&adj, &wrong).is_err());
        // A1×A1 → diagonal.
        let r = IntMatrix::from_rows(&[vec![1, 1]], 2).unwrap();
        let c = TorusCharacter::from_terms(2, [(w(&[2, 0]), 1), (w(&[0, 2]), 1)]).unwrap();
        assert_eq!(restrict_character(&c, &r).unwrap(), ch1(&[(2, 2)]));
    }
}
