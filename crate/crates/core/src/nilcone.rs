//! Graded character of the ring of regular functions on the nilpotent cone:
//! the multiplicity of `τ_λ` in degree `n` is the `q^n` coefficient of
//! `M_q(λ, 0)`.

use alloc::collections::BTreeMap;

use crate::charring::{irreducible_character, GradedCharacter, IrrepSeries, TorusCharacter};
use crate::error::Result;
use crate::lattice::Weight;
use crate::qcombinatorics::lusztig_mq;
use crate::rootdata::RootDatum;

/// Height bound on highest weights that can occur up to degree `truncation`:
/// a degree-`n` contributor is a sum of `n` positive roots.
pub fn contributor_height_bound(datum: &RootDatum, truncation: u32) -> u32 {
    truncation * datum.highest_root_height() as u32
}

/// `C[N]` as a q-graded sum of irreducibles, through degree `truncation`.
pub fn cn_irrep_series(datum: &RootDatum, truncation: u32) -> IrrepSeries {
    cn_irrep_series_within(datum, truncation, contributor_height_bound(datum, truncation))
}

/// Like [`cn_irrep_series`] but scanning dominant root-lattice weights up to
/// an explicit height.
pub fn cn_irrep_series_within(datum: &RootDatum, truncation: u32, height_bound: u32) -> IrrepSeries {
    let zero = Weight::zero(datum.rank());
    let mut series = IrrepSeries::new(truncation);
    for lam in datum.dominant_weights_up_to_height(height_bound) {
        debug_assert!(datum.simple_root_coords(&lam).is_some(), "{lam} is outside the root lattice");
        let mq = lusztig_mq(datum, &lam, &zero).expect("enumerated weights are dominant");
        for (d, c) in mq.terms() {
            if d <= truncation {
                series.add(d, lam.clone(), c);
            }
        }
    }
    series
}

/// `C[N]` as a q-graded torus character.
pub fn cn_torus_character(datum: &RootDatum, truncation: u32) -> Result<GradedCharacter> {
    expand_irreps(datum, &cn_irrep_series(datum, truncation))
}

/// Expands every `τ_λ` of a series into its torus character.
pub fn expand_irreps(datum: &RootDatum, series: &IrrepSeries) -> Result<GradedCharacter> {
    let mut characters: BTreeMap<Weight, TorusCharacter> = BTreeMap::new();
    let mut out = GradedCharacter::zero(datum.rank(), series.truncation());
    for (d, layer) in series.layers() {
        for (lam, &m) in layer {
            if !characters.contains_key(lam) {
                characters.insert(lam.clone(), irreducible_character(datum, lam)?);
            }
            out.add_to_layer(d, &characters[lam].scaled(m));
        }
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

    #[test]
    fn a1_series() {
        let d = RootDatum::from_cartan(&[vec![2]]).unwrap();
        let s = cn_irrep_series(&d, 3);
        for m in 0..=3u32 {
            let layer = s.layer(m).unwrap();
            assert_eq!(layer.len(), 1);
            assert_eq!(layer.get(&w(&[2 * m as i64])), Some(&1));
        }
        let ch = cn_torus_character(&d, 6).unwrap();
        assert_eq!(ch.masses(), vec![1, 3, 5, 7, 9, 11, 13]);
        assert_eq!(
            ch.layer(1),
            TorusCharacter::from_terms(1, [(w(&[-2]), 1), (w(&[0]), 1), (w(&[2]), 1)]).unwrap()
        );
        assert_eq!(ch.layer(0), TorusCharacter::trivial(1));
    }

    #[test]
    fn a2_low_degrees() {
        let d = RootDatum::from_cartan(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let s = cn_irrep_series(&d, 2);
        assert_eq!(s.layer(0).unwrap().len(), 1);
        assert_eq!(s.multiplicity(0, &w(&[0, 0])), 1);
        let deg1 = s.layer(1).unwrap();
        assert_eq!(deg1.len(), 1);
        assert_eq!(deg1.get(&w(&[1, 1])), Some(&1));
        // Degree 2 of C[N] for sl3: Sym^2(sl3) minus the quadratic invariant.
        let ch = cn_torus_character(&d, 2).unwrap();
        assert_eq!(ch.masses(), vec![1, 8, 35]);
    }

    #[test]
    fn bound_is_not_binding() {
        for cartan in [
            vec![vec![2]],
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![2, -2], vec![-1, 2]],
            vec![vec![2, -1], vec![-3, 2]],
        ] {
            let d = RootDatum::from_cartan(&cartan).unwrap();
            let n = 4;
            let bound = contributor_height_bound(&d, n);
            let wider = cn_irrep_series_within(&d, n, bound + d.highest_root_height() as u32 + 2);
            assert_eq!(cn_irrep_series(&d, n), wider);
            for (_, layer) in wider.layers() {
                assert!(layer.values().all(|&m| m > 0));
            }
        }
    }
}
