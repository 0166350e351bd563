//! The graded `K`-character of functions on the `K`-nilpotent cone of a
//! split real form: restrict the graded character of `C[N]` to the torus of
//! `K` and multiply by the signed exterior algebra class of `k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::charring::{
    decompose_into_irreducibles, graded_mul, restrict_character, GradedCharacter, IrrepSeries, TorusCharacter,
};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, Weight};
use crate::nilcone::cn_torus_character;
use crate::rootdata::{InvolutionData, RootDatum};

/// Dimensions of `g`, `k`, `p` and of a maximal split torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dimensions {
    pub g: usize,
    pub k: usize,
    pub p: usize,
    pub rank_split: usize,
}

/// A real form `(G, θ, K)` described at the level of tori.
///
/// `restriction` maps `X*(T_G)` to `X*(T_K)` (rows index `T_K` coordinates).
/// `k_weights` lists the weights of `k` under `T_K` with multiplicity, zero
/// weights of the toral part included. When present, `k_datum` is the root
/// datum of `K` written directly in `T_K` coordinates.
#[derive(Clone, Debug)]
pub struct RealFormConfig {
    pub name: String,
    pub g_datum: RootDatum,
    pub involution: InvolutionData,
    pub k_torus_rank: usize,
    pub restriction: IntMatrix,
    pub k_weights: Vec<Weight>,
    pub k_datum: Option<RootDatum>,
    pub dims: Dimensions,
    pub split_mod_center: bool,
}

impl RealFormConfig {
    /// Cross-checks all fields. Messages name the offending field by its
    /// path in the configuration file.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        self.involution
            .validate(&self.g_datum)
            .or_else(|e| bad(format!("involution: {e}")))?;
        if self.k_torus_rank == 0 {
            return bad("k.torus_rank: must be positive".into());
        }
        if self.restriction.rows() != self.k_torus_rank || self.restriction.cols() != self.g_datum.rank() {
            return bad(format!(
                "k.restriction: expected a {}x{} matrix, found {}x{}",
                self.k_torus_rank,
                self.g_datum.rank(),
                self.restriction.rows(),
                self.restriction.cols()
            ));
        }
        for (i, w) in self.k_weights.iter().enumerate() {
            if w.rank() != self.k_torus_rank {
                return bad(format!("k.weights[{i}]: expected rank {}, found {}", self.k_torus_rank, w.rank()));
            }
        }
        if self.k_weights.len() != self.dims.k {
            return bad(format!(
                "k.weights: {} weights listed but dims.k = {}",
                self.k_weights.len(),
                self.dims.k
            ));
        }
        let counts = weight_counts(&self.k_weights);
        for (w, &m) in &counts {
            if counts.get(&-w).copied().unwrap_or(0) != m {
                return bad(format!("k.weights: multiset is not symmetric under negation at {w}"));
            }
        }
        if let Some(kd) = &self.k_datum {
            if kd.rank() != self.k_torus_rank {
                return bad(format!("k.datum: rank {} does not match k.torus_rank {}", kd.rank(), self.k_torus_rank));
            }
            for (w, &m) in &counts {
                for i in 0..kd.semisimple_rank() {
                    let r = kd.simple_reflection(i, w);
                    if counts.get(&r).copied().unwrap_or(0) != m {
                        return bad(format!("k.weights: not invariant under the Weyl group of k.datum at {w}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn weight_counts(ws: &[Weight]) -> BTreeMap<Weight, usize> {
    let mut counts = BTreeMap::new();
    for w in ws {
        *counts.entry(w.clone()).or_insert(0) += 1;
    }
    counts
}

/// `Σ_n (-1)^n [∧^n V] q^n` for the representation with weights `weights`,
/// i.e. the expansion of `Π_w (1 - e^w q)`.
pub fn wedge_class(weights: &[Weight], rank: usize, truncation: u32) -> GradedCharacter {
    let mut acc = GradedCharacter::trivial(rank, truncation);
    for w in weights {
        let mut factor = GradedCharacter::trivial(rank, truncation);
        factor.add_term(1, w.clone(), -1);
        acc = graded_mul(&acc, &factor).expect("ranks agree");
    }
    acc
}

/// `Σ_n [S^n V] q^n`, i.e. the expansion of `Π_w 1 / (1 - e^w q)`.
pub fn symmetric_class(weights: &[Weight], rank: usize, truncation: u32) -> GradedCharacter {
    let mut acc = GradedCharacter::trivial(rank, truncation);
    for w in weights {
        let mut factor = GradedCharacter::zero(rank, truncation);
        for j in 0..=truncation {
            factor.add_term(j, w.scaled(i64::from(j)), 1);
        }
        acc = graded_mul(&acc, &factor).expect("ranks agree");
    }
    acc
}

/// Outcome of [`koszul_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub truncation: u32,
    /// First degree where the product differs from the trivial series,
    /// with the offending layer of the product.
    pub first_failure: Option<(u32, TorusCharacter)>,
}

impl KoszulReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `C[k*] ⊗ [∧(k)] = triv` through degree `truncation`, where
/// `C[k*]` is the symmetric algebra on the negated weights.
pub fn koszul_check(weights: &[Weight], rank: usize, truncation: u32) -> KoszulReport {
    let negated: Vec<Weight> = weights.iter().map(|w| -w).collect();
    let product = graded_mul(
        &symmetric_class(&negated, rank, truncation),
        &wedge_class(weights, rank, truncation),
    )
    .expect("ranks agree");
    let trivial = GradedCharacter::trivial(rank, truncation);
    let first_failure = (0..=truncation)
        .find(|&d| product.layer(d) != trivial.layer(d))
        .map(|d| (d, product.layer(d)));
    KoszulReport { truncation, first_failure }
}

/// Whether [`cn_theta_character`] insists on the split hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SplitHypothesis {
    #[default]
    Enforce,
    /// Evaluate the formula anyway; the result is only known to describe
    /// the cone for split (modulo center) forms.
    Waive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCharacter {
    pub series: GradedCharacter,
    /// Per-degree decomposition into irreducibles of `K`, when the config
    /// carries a root datum for `K`.
    pub k_types: Option<IrrepSeries>,
    /// Set when the split hypothesis was waived for a non-split config.
    pub hypothesis_waived: bool,
}

/// `C[N_θ]|_K = C[N]|_K ⊗ [∧(k)]` through degree `truncation`.
pub fn cn_theta_character(
    config: &RealFormConfig,
    truncation: u32,
    hypothesis: SplitHypothesis,
) -> Result<ThetaCharacter> {
    if !config.split_mod_center && hypothesis == SplitHypothesis::Enforce {
        return Err(Error::NotSplit);
    }
    if config.restriction.cols() != config.g_datum.rank() || config.restriction.rows() != config.k_torus_rank {
        return Err(Error::RankMismatch {
            context: "restriction matrix",
            expected: config.k_torus_rank,
            found: config.restriction.rows(),
        });
    }
    let cn = cn_torus_character(&config.g_datum, truncation)?;
    let restricted = cn.map_layers(config.k_torus_rank, |ch| restrict_character(ch, &config.restriction))?;
    let wedge = wedge_class(&config.k_weights, config.k_torus_rank, truncation);
    let series = graded_mul(&restricted, &wedge)?;
    let k_types = match &config.k_datum {
        Some(kd) => {
            let mut table = IrrepSeries::new(truncation);
            for (d, layer) in series.layers() {
                for (lam, m) in decompose_into_irreducibles(kd, layer)? {
                    table.add(d, lam, m);
                }
            }
            Some(table)
        }
        None => None,
    };
    Ok(ThetaCharacter { series, k_types, hypothesis_waived: !config.split_mod_center })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionIdentity {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    /// False when the identity only applies to split forms and the config is
    /// not split; such identities do not affect [`DimensionReport::passed`].
    pub applicable: bool,
}

impl DimensionIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub identities: Vec<DimensionIdentity>,
}

impl DimensionReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|i| !i.applicable || i.holds())
    }
}

/// Checks the dimension bookkeeping behind the complete-intersection
/// argument: `dim N_θ = dim N + dim p - dim g`, with `dim N_θ = dim p -
/// dim h_s` and `dim N = dim g - rank g` (= number of roots), plus the
/// Iwasawa count `dim g = dim k + dim h_s + (dim g - dim h_s) / 2`. The last
/// two are only asserted for split forms.
pub fn dimension_check(config: &RealFormConfig) -> DimensionReport {
    let d = config.dims;
    let (g, k, p, a) = (d.g as i64, d.k as i64, d.p as i64, d.rank_split as i64);
    let rank_g = config.g_datum.rank() as i64;
    let dim_n = g - rank_g;
    let identities = alloc::vec![
        DimensionIdentity { name: "dim g = dim k + dim p", lhs: g, rhs: k + p, applicable: true },
        DimensionIdentity {
            name: "dim N = number of roots",
            lhs: dim_n,
            rhs: config.g_datum.roots().len() as i64,
            applicable: true,
        },
        DimensionIdentity {
            name: "dim N_theta = dim N + dim p - dim g",
            lhs: p - a,
            rhs: dim_n + p - g,
            applicable: config.split_mod_center,
        },
        DimensionIdentity {
            name: "2 dim g = 2 dim k + 2 dim h_s + (dim g - dim h_s)",
            lhs: 2 * g,
            rhs: 2 * k + 2 * a + (g - a),
            applicable: config.split_mod_center,
        },
    ];
    DimensionReport { identities }
}
