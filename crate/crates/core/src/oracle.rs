//! Brute-force graded dimensions and torus characters of explicit affine
//! cones, by exact linear algebra in each degree.
//!
//! The degree-`n` slice of the ideal is spanned by `m·g` for monomials `m`
//! and generators `g` of complementary degree; its rank over `Q` is computed
//! by sparse Gaussian elimination with arbitrary-precision rationals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::charring::{GradedCharacter, TorusCharacter};
use crate::error::{Error, Result};
use crate::ktheta::{cn_theta_character, RealFormConfig, SplitHypothesis};
use crate::lattice::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelVariable {
    pub name: String,
    /// Weight under the maximal torus of `K`.
    pub weight: Weight,
}

/// A polynomial in the model variables, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, Vec<u32>)>) -> Self {
        let mut p = Self::new();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(terms.iter().map(|(c, e)| (BigRational::from_integer(BigInt::from(*c)), e.to_vec())))
    }

    pub fn add_term(&mut self, coefficient: BigRational, exponents: Vec<u32>) {
        if coefficient.is_zero() {
            return;
        }
        let e = self.terms.entry(exponents.clone()).or_insert_with(BigRational::zero);
        *e += coefficient;
        if e.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConeModel {
    variables: Vec<ModelVariable>,
    generators: Vec<Polynomial>,
    rank: usize,
    generator_degrees: Vec<u32>,
}

fn monomial_weight(variables: &[ModelVariable], exps: &[u32], rank: usize) -> Weight {
    let mut w = Weight::zero(rank);
    for (v, &e) in variables.iter().zip(exps) {
        w += &v.weight.scaled(i64::from(e));
    }
    w
}

impl AffineConeModel {
    /// Validates that names are unique, weights share a rank, and every
    /// generator is nonzero and homogeneous in degree and weight.
    pub fn new(variables: Vec<ModelVariable>, generators: Vec<Polynomial>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if variables.is_empty() {
            return bad("the model has no variables".into());
        }
        let rank = variables[0].weight.rank();
        let mut names = BTreeSet::new();
        for v in &variables {
            if !names.insert(v.name.as_str()) {
                return bad(format!("duplicate variable name {}", v.name));
            }
            if v.weight.rank() != rank {
                return bad(format!("variable {} has weight of rank {}, expected {rank}", v.name, v.weight.rank()));
            }
        }
        let mut generator_degrees = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return bad(format!("generator {i} is zero"));
            }
            let mut degree = None;
            let mut weight = None;
            for (e, _) in g.terms() {
                if e.len() != variables.len() {
                    return bad(format!(
                        "generator {i}: exponent vector of length {}, expected {}",
                        e.len(),
                        variables.len()
                    ));
                }
                let d: u32 = e.iter().sum();
                let w = monomial_weight(&variables, e, rank);
                if *degree.get_or_insert(d) != d {
                    return bad(format!("generator {i} is not homogeneous in degree"));
                }
                if *weight.get_or_insert_with(|| w.clone()) != w {
                    return bad(format!("generator {i} is not homogeneous in weight"));
                }
            }
            generator_degrees.push(degree.unwrap_or(0));
        }
        Ok(Self { variables, generators, rank, generator_degrees })
    }

    pub fn variables(&self) -> &[ModelVariable] {
        &self.variables
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Rank of the weight lattice.
    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Order in which monomials index the columns of each slice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    #[default]
    Lex,
    /// Reverse lexicographic on exponent vectors.
    RevLex,
}

fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == nvars {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(nvars, idx + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, 0, degree, &mut Vec::new(), &mut out);
    }
    out
}

fn ordered(mut monomials: Vec<Vec<u32>>, order: MonomialOrder) -> Vec<Vec<u32>> {
    match order {
        MonomialOrder::Lex => monomials.sort_by(|a, b| b.cmp(a)),
        MonomialOrder::RevLex => monomials.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev())),
    }
    monomials
}

type SparseRow = BTreeMap<usize, BigRational>;

/// Row echelon form built one row at a time.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn insert(&mut self, mut row: SparseRow) {
        while let Some((&lead, c)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&lead) else {
                let inv = c.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.pivots.insert(lead, row);
                return;
            };
            let factor = c.clone();
            for (col, v) in pivot {
                let e = row.entry(*col).or_insert_with(BigRational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(col);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn product_row(m: &[u32], g: &Polynomial, index: &BTreeMap<Vec<u32>, usize>) -> SparseRow {
    let mut row = SparseRow::new();
    for (e, c) in g.terms() {
        let prod: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
        row.insert(index[&prod], c.clone());
    }
    row
}

/// Degree-`n` dimension of the coordinate ring, `n = 0..=truncation`.
pub fn hilbert_by_degree(model: &AffineConeModel, truncation: u32) -> Vec<u64> {
    hilbert_by_degree_with_order(model, truncation, MonomialOrder::default())
}

/// As [`hilbert_by_degree`], eliminating over the whole degree slice with
/// columns in the given order.
pub fn hilbert_by_degree_with_order(model: &AffineConeModel, truncation: u32, order: MonomialOrder) -> Vec<u64> {
    let nvars = model.variables.len();
    (0..=truncation)
        .map(|n| {
            let columns = ordered(monomials_of_degree(nvars, n), order);
            let index: BTreeMap<Vec<u32>, usize> =
                columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ech = Echelon::default();
            for (g, &d) in model.generators.iter().zip(&model.generator_degrees) {
                if d > n {
                    continue;
                }
                for m in monomials_of_degree(nvars, n - d) {
                    ech.insert(product_row(&m, g, &index));
                }
            }
            (columns.len() - ech.rank()) as u64
        })
        .collect()
}

/// Torus character of each degree slice of the coordinate ring.
pub fn graded_character_by_degree(model: &AffineConeModel, truncation: u32) -> GradedCharacter {
    graded_character_by_degree_with_order(model, truncation, MonomialOrder::default())
}

/// As [`graded_character_by_degree`], with an explicit column order.
pub fn graded_character_by_degree_with_order(
    model: &AffineConeModel,
    truncation: u32,
    order: MonomialOrder,
) -> GradedCharacter {
    let nvars = model.variables.len();
    let rank = model.rank;
    let mut out = GradedCharacter::zero(rank, truncation);
    for n in 0..=truncation {
        // Monomials of degree n split into weight blocks; each product m·g
        // lies in a single block.
        let mut blocks: BTreeMap<Weight, Vec<Vec<u32>>> = BTreeMap::new();
        for m in monomials_of_degree(nvars, n) {
            blocks.entry(monomial_weight(&model.variables, &m, rank)).or_default().push(m);
        }
        let mut echelons: BTreeMap<Weight, (BTreeMap<Vec<u32>, usize>, Echelon)> = BTreeMap::new();
        for (w, ms) in &blocks {
            let index = ordered(ms.clone(), order).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
            echelons.insert(w.clone(), (index, Echelon::default()));
        }
        for (g, &d) in model.generators.iter().zip(&model.generator_degrees) {
            if d > n {
                continue;
            }
            for m in monomials_of_degree(nvars, n - d) {
                let (e, _) = g.terms().next().expect("generators are nonzero");
                let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                let w = monomial_weight(&model.variables, &prod, rank);
                let (index, ech) = echelons.get_mut(&w).expect("product weight has a block");
                let row = product_row(&m, g, index);
                ech.insert(row);
            }
        }
        let mut layer = TorusCharacter::zero(rank);
        for (w, (index, ech)) in &echelons {
            layer.add_term(w.clone(), (index.len() - ech.rank()) as i64);
        }
        out.add_to_layer(n, &layer);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerComparison {
    pub degree: u32,
    pub formula: TorusCharacter,
    pub oracle: TorusCharacter,
}

impl LayerComparison {
    pub fn agrees(&self) -> bool {
        self.formula == self.oracle
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub truncation: u32,
    pub layers: Vec<LayerComparison>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.layers.iter().all(LayerComparison::agrees)
    }

    pub fn first_disagreement(&self) -> Option<&LayerComparison> {
        self.layers.iter().find(|l| !l.agrees())
    }
}

/// Layer-by-layer comparison of the product formula with the model.
pub fn compare_with_formula(
    config: &RealFormConfig,
    model: &AffineConeModel,
    truncation: u32,
    hypothesis: SplitHypothesis,
) -> Result<OracleReport> {
    if model.rank != config.k_torus_rank {
        return Err(Error::RankMismatch {
            context: "oracle model weights",
            expected: config.k_torus_rank,
            found: model.rank,
        });
    }
    let formula = cn_theta_character(config, truncation, hypothesis)?.series;
    let oracle = graded_character_by_degree(model, truncation);
    let layers = (0..=truncation)
        .map(|degree| LayerComparison { degree, formula: formula.layer(degree), oracle: oracle.layer(degree) })
        .collect();
    Ok(OracleReport { truncation, layers })
}
