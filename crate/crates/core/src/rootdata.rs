//! Root data, Weyl groups and the classification of roots under an
//! involution.
//!
//! A [`RootDatum`] lives in a character lattice of some rank `n` with a fixed
//! integer basis. Simple roots are lattice vectors, simple coroots are vectors
//! in the dual basis and the pairing is the dot product. When built from a
//! Cartan matrix the basis is the fundamental-weight basis, so the simple
//! coroots are the unit vectors and dominance is coordinatewise
//! non-negativity. A general datum may also carry a central torus (lattice
//! rank larger than the number of simple roots), which is how reductive groups
//! such as `GL_2` or `SO_2` are described.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{rational_inverse, rational_rank, IntMatrix, Weight};
use crate::qcombinatorics::PartitionCache;

/// Default cap on the number of Weyl group elements enumerated.
pub const DEFAULT_WEYL_CAP: usize = 10_000_000;

const POSITIVE_ROOT_CAP: usize = 100_000;

/// An element of the Weyl group together with a reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: IntMatrix,
    pub length: usize,
}

impl WeylElement {
    pub fn apply(&self, w: &Weight) -> Weight {
        self.matrix.apply(w)
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Weight>,
    cartan: IntMatrix,
    // (α_i, α_i) / 2 under the invariant form, 1 for the short roots of each
    // simple factor.
    half_norms: Vec<Rational64>,
    // Inverse of the transposed Cartan matrix: maps coroot pairings to
    // simple-root coordinates.
    pairing_to_root_coords: Vec<Vec<Rational64>>,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i64>>,
    roots: BTreeSet<Weight>,
    two_rho: Weight,
    weyl: Vec<WeylElement>,
    pub(crate) partitions: PartitionCache,
}

impl Clone for RootDatum {
    fn clone(&self) -> Self {
        RootDatum {
            rank: self.rank,
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
            cartan: self.cartan.clone(),
            half_norms: self.half_norms.clone(),
            pairing_to_root_coords: self.pairing_to_root_coords.clone(),
            positive_roots: self.positive_roots.clone(),
            positive_root_coords: self.positive_root_coords.clone(),
            roots: self.roots.clone(),
            two_rho: self.two_rho.clone(),
            weyl: self.weyl.clone(),
            partitions: self.partitions.clone(),
        }
    }
}

impl RootDatum {
    /// Semisimple root datum in the fundamental-weight basis.
    pub fn from_cartan(cartan: &[Vec<i64>]) -> Result<Self> {
        Self::from_cartan_with_cap(cartan, DEFAULT_WEYL_CAP)
    }

    pub fn from_cartan_with_cap(cartan: &[Vec<i64>], weyl_cap: usize) -> Result<Self> {
        let r = cartan.len();
        if r == 0 {
            return Err(Error::EmptyCartan);
        }
        for (row, entries) in cartan.iter().enumerate() {
            if entries.len() != r {
                return Err(Error::NotSquare { row, len: entries.len(), expected: r });
            }
        }
        // α_i = Σ_j A_ij ω_j, α_i^∨ = e_i in the dual basis.
        let simple_roots = cartan.iter().map(|row| Weight::new(row.clone())).collect();
        let simple_coroots = (0..r).map(|i| Weight::unit(r, i)).collect();
        Self::build(r, simple_roots, simple_coroots, weyl_cap)
    }

    /// General (possibly non-semisimple) root datum on a lattice of rank `rank`.
    pub fn new(rank: usize, simple_roots: Vec<Weight>, simple_coroots: Vec<Weight>) -> Result<Self> {
        Self::build(rank, simple_roots, simple_coroots, DEFAULT_WEYL_CAP)
    }

    /// A torus of the given rank: no roots at all.
    pub fn torus(rank: usize) -> Result<Self> {
        Self::new(rank, Vec::new(), Vec::new())
    }

    fn build(
        rank: usize,
        simple_roots: Vec<Weight>,
        simple_coroots: Vec<Weight>,
        weyl_cap: usize,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::RankMismatch { context: "root datum lattice", expected: 1, found: 0 });
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::RankMismatch {
                context: "simple coroots",
                expected: simple_roots.len(),
                found: simple_coroots.len(),
            });
        }
        for w in simple_roots.iter().chain(&simple_coroots) {
            if w.rank() != rank {
                return Err(Error::RankMismatch { context: "simple root", expected: rank, found: w.rank() });
            }
        }
        let r = simple_roots.len();
        let mut cartan = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                cartan.set(i, j, simple_roots[i].dot(simple_coroots[j].coords()));
            }
        }
        validate_cartan(&cartan)?;
        let half_norms = symmetrize(&cartan)?;
        check_positive_definite(&cartan, &half_norms)?;

        let pairing_to_root_coords = if r == 0 {
            Vec::new()
        } else {
            rational_inverse(&cartan.transpose().to_rational())
                .ok_or_else(|| Error::NotFiniteType("singular Cartan matrix".into()))?
        };

        let positive_root_coords = positive_roots_by_closure(&cartan)?;
        let positive_roots: Vec<Weight> = positive_root_coords
            .iter()
            .map(|c| combine(rank, &simple_roots, c))
            .collect();
        let mut roots = BTreeSet::new();
        for a in &positive_roots {
            roots.insert(a.clone());
            roots.insert(-a);
        }
        let mut two_rho = Weight::zero(rank);
        for a in &positive_roots {
            two_rho += a;
        }

        let weyl = enumerate_weyl_group(rank, &simple_roots, &simple_coroots, weyl_cap)?;

        Ok(RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            half_norms,
            pairing_to_root_coords,
            positive_roots,
            positive_root_coords,
            roots,
            two_rho,
            weyl,
            partitions: PartitionCache::default(),
        })
    }

    /// Rank of the character lattice.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Weight] {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Positive roots ordered by height, then by simple-root coordinates.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Simple-root coordinates of [`Self::positive_roots`], index-aligned.
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    pub fn roots(&self) -> &BTreeSet<Weight> {
        &self.roots
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.roots.contains(w)
    }

    /// Twice the half-sum of positive roots.
    pub fn two_rho(&self) -> &Weight {
        &self.two_rho
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn pairing(&self, weight: &Weight, coweight: &Weight) -> i64 {
        weight.dot(coweight.coords())
    }

    /// `⟨w, α_i^∨⟩` for each simple coroot.
    pub fn coroot_pairings(&self, w: &Weight) -> Vec<i64> {
        self.simple_coroots.iter().map(|c| w.dot(c.coords())).collect()
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple_coroots.iter().all(|c| w.dot(c.coords()) >= 0)
    }

    pub fn simple_reflection(&self, i: usize, w: &Weight) -> Weight {
        let p = w.dot(self.simple_coroots[i].coords());
        w - &self.simple_roots[i].scaled(p)
    }

    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        'outer: loop {
            for i in 0..self.semisimple_rank() {
                if cur.dot(self.simple_coroots[i].coords()) < 0 {
                    cur = self.simple_reflection(i, &cur);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// The Weyl orbit of `w`, generated by simple reflections.
    pub fn orbit(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.semisimple_rank() {
                let next = self.simple_reflection(i, &cur);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Weight with the given simple-root coordinates.
    pub fn from_root_coords(&self, coords: &[i64]) -> Weight {
        combine(self.rank, &self.simple_roots, coords)
    }

    /// Coordinates of the projection of `w` onto the span of the simple
    /// roots, in the basis of simple roots.
    pub fn rational_root_coords(&self, w: &Weight) -> Vec<Rational64> {
        let p = self.coroot_pairings(w);
        self.pairing_to_root_coords
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&p)
                    .fold(Rational64::zero(), |acc, (m, &v)| acc + m * Rational64::from_integer(v))
            })
            .collect()
    }

    /// Simple-root coordinates of `w`, or `None` if `w` is not in the root
    /// lattice.
    pub fn simple_root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        let c: Vec<i64> = self
            .rational_root_coords(w)
            .into_iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<_>>()?;
        (self.from_root_coords(&c) == *w).then_some(c)
    }

    /// Sum of the simple-root coordinates, for root-lattice weights.
    pub fn height(&self, w: &Weight) -> Option<i64> {
        self.simple_root_coords(w).map(|c| c.iter().sum())
    }

    /// Height of the highest root (maximum over simple factors); 0 for a torus.
    pub fn highest_root_height(&self) -> i64 {
        self.positive_root_coords
            .iter()
            .map(|c| c.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// `μ ≤ λ` in the dominance order: `λ - μ` is a non-negative integer
    /// combination of simple roots.
    pub fn dominates(&self, lam: &Weight, mu: &Weight) -> bool {
        self.simple_root_coords(&(lam - mu))
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// The invariant form: short roots of every simple factor have squared
    /// length 2, the central part is Euclidean in lattice coordinates and
    /// orthogonal to the roots.
    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Rational64 {
        let ca = self.rational_root_coords(a);
        let pb = self.coroot_pairings(b);
        let mut acc = Rational64::zero();
        for i in 0..self.semisimple_rank() {
            acc += ca[i] * self.half_norms[i] * Rational64::from_integer(pb[i]);
        }
        let za = self.central_part(a, &ca);
        let zb = self.central_part(b, &self.rational_root_coords(b));
        for (x, y) in za.iter().zip(&zb) {
            acc += x * y;
        }
        acc
    }

    fn central_part(&self, w: &Weight, root_coords: &[Rational64]) -> Vec<Rational64> {
        let mut z: Vec<Rational64> = w.coords().iter().map(|&v| Rational64::from_integer(v)).collect();
        for (c, alpha) in root_coords.iter().zip(&self.simple_roots) {
            for (zk, &ak) in z.iter_mut().zip(alpha.coords()) {
                *zk -= c * Rational64::from_integer(ak);
            }
        }
        z
    }

    /// Weyl's dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
    pub fn weyl_dimension(&self, lam: &Weight) -> Result<i64> {
        if !self.is_dominant(lam) {
            return Err(Error::NotDominant(lam.clone()));
        }
        let shifted = &lam.scaled(2) + &self.two_rho;
        let mut dim = Rational64::one();
        for a in &self.positive_roots {
            dim *= self.inner_product(&shifted, a) / self.inner_product(&self.two_rho, a);
        }
        debug_assert!(dim.is_integer());
        Ok(dim.to_integer())
    }

    /// Dominant weights in the root lattice of height at most `bound`,
    /// ordered by height and then lexicographically.
    pub fn dominant_weights_up_to_height(&self, bound: u32) -> Vec<Weight> {
        let r = self.semisimple_rank();
        let mut out = Vec::new();
        let mut coords = vec![0i64; r];
        compositions_up_to(&mut coords, 0, bound as i64, &mut |c| {
            let w = self.from_root_coords(c);
            if self.is_dominant(&w) {
                out.push((c.iter().sum::<i64>(), w));
            }
        });
        out.sort();
        out.into_iter().map(|(_, w)| w).collect()
    }

    /// Dominant weights `μ` with `μ ≤ λ`, including `λ` itself.
    pub fn dominant_weights_below(&self, lam: &Weight) -> Vec<Weight> {
        let bounds: Vec<i64> = self
            .rational_root_coords(lam)
            .iter()
            .map(|c| c.floor().to_integer().max(0))
            .collect();
        let mut out = Vec::new();
        let mut coords = vec![0i64; bounds.len()];
        boxed_points(&mut coords, 0, &bounds, &mut |c| {
            let mu = lam - &self.from_root_coords(c);
            if self.is_dominant(&mu) {
                out.push(mu);
            }
        });
        out.sort();
        out
    }

    /// Turns memoization of the partition function on or off. Disabling
    /// also clears the stored table.
    pub fn set_partition_cache(&self, enabled: bool) {
        self.partitions.set_enabled(enabled);
    }

    pub fn partition_cache(&self) -> &PartitionCache {
        &self.partitions
    }
}

fn combine(rank: usize, basis: &[Weight], coords: &[i64]) -> Weight {
    let mut w = Weight::zero(rank);
    for (b, &c) in basis.iter().zip(coords) {
        if c != 0 {
            w += &b.scaled(c);
        }
    }
    w
}

fn compositions_up_to(coords: &mut Vec<i64>, idx: usize, remaining: i64, f: &mut impl FnMut(&[i64])) {
    if idx == coords.len() {
        f(coords);
        return;
    }
    for v in 0..=remaining {
        coords[idx] = v;
        compositions_up_to(coords, idx + 1, remaining - v, f);
    }
    coords[idx] = 0;
}

fn boxed_points(coords: &mut Vec<i64>, idx: usize, bounds: &[i64], f: &mut impl FnMut(&[i64])) {
    if idx == coords.len() {
        f(coords);
        return;
    }
    for v in 0..=bounds[idx] {
        coords[idx] = v;
        boxed_points(coords, idx + 1, bounds, f);
    }
    coords[idx] = 0;
}

fn validate_cartan(a: &IntMatrix) -> Result<()> {
    let r = a.rows();
    for i in 0..r {
        if a.get(i, i) != 2 {
            return Err(Error::BadDiagonal { index: i, value: a.get(i, i) });
        }
        for j in 0..r {
            if i == j {
                continue;
            }
            if a.get(i, j) > 0 {
                return Err(Error::PositiveOffDiagonal { row: i, col: j, value: a.get(i, j) });
            }
            if (a.get(i, j) == 0) != (a.get(j, i) == 0) {
                return Err(Error::ZeroPattern { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Solves `A_ij L_j = A_ji L_i` per connected component, normalised so the
/// smallest `L` in each component is 1.
fn symmetrize(a: &IntMatrix) -> Result<Vec<Rational64>> {
    let r = a.rows();
    let mut l: Vec<Option<Rational64>> = vec![None; r];
    for start in 0..r {
        if l[start].is_some() {
            continue;
        }
        let mut component = vec![start];
        l[start] = Some(Rational64::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let li = l[i].unwrap();
            for j in 0..r {
                if j == i || a.get(i, j) == 0 {
                    continue;
                }
                let lj = li * Rational64::new(a.get(j, i), a.get(i, j));
                match l[j] {
                    None => {
                        l[j] = Some(lj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != lj => return Err(Error::NotSymmetrizable { node: start }),
                    Some(_) => {}
                }
            }
        }
        let min = component.iter().map(|&i| l[i].unwrap()).min().unwrap();
        for &i in &component {
            l[i] = Some(l[i].unwrap() / min);
        }
    }
    Ok(l.into_iter().map(Option::unwrap).collect())
}

fn check_positive_definite(a: &IntMatrix, half_norms: &[Rational64]) -> Result<()> {
    let r = a.rows();
    // Gram matrix of the simple roots: (α_i, α_j) = A_ij L_j.
    let mut g: Vec<Vec<Rational64>> = (0..r)
        .map(|i| (0..r).map(|j| Rational64::from_integer(a.get(i, j)) * half_norms[j]).collect())
        .collect();
    for k in 0..r {
        if !g[k][k].is_positive() {
            return Err(Error::NotFiniteType(format!("invariant form is not positive definite (pivot {k})")));
        }
        for i in k + 1..r {
            let f = g[i][k] / g[k][k];
            for j in k..r {
                let sub = g[k][j] * f;
                g[i][j] -= sub;
            }
        }
    }
    Ok(())
}

fn positive_roots_by_closure(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let r = a.rows();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut level: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut ordered = Vec::new();
    while !level.is_empty() {
        level.sort();
        for b in &level {
            all.insert(b.clone());
        }
        ordered.extend(level.iter().cloned());
        if ordered.len() > POSITIVE_ROOT_CAP {
            return Err(Error::NotFiniteType(format!(
                "positive root closure exceeded {POSITIVE_ROOT_CAP} roots"
            )));
        }
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in &level {
            for i in 0..r {
                let is_simple_i = beta.iter().enumerate().all(|(j, &c)| c == i64::from(i == j));
                if is_simple_i {
                    continue;
                }
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if !all.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..r).map(|j| beta[j] * a.get(j, i)).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        level = next.into_iter().collect();
    }
    Ok(ordered)
}

fn enumerate_weyl_group(
    rank: usize,
    simple_roots: &[Weight],
    simple_coroots: &[Weight],
    cap: usize,
) -> Result<Vec<WeylElement>> {
    let gens: Vec<IntMatrix> = simple_roots
        .iter()
        .zip(simple_coroots)
        .map(|(a, c)| {
            let mut m = IntMatrix::identity(rank);
            for x in 0..rank {
                for y in 0..rank {
                    m.set(x, y, m.get(x, y) - a.coords()[x] * c.coords()[y]);
                }
            }
            m
        })
        .collect();
    let identity = WeylElement { word: Vec::new(), matrix: IntMatrix::identity(rank), length: 0 };
    let mut seen: BTreeMap<IntMatrix, ()> = BTreeMap::new();
    seen.insert(identity.matrix.clone(), ());
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        for (i, g) in gens.iter().enumerate() {
            let m = elements[head].matrix.mul(g);
            if seen.contains_key(&m) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::WeylGroupTooLarge { cap });
            }
            seen.insert(m.clone(), ());
            let mut word = elements[head].word.clone();
            word.push(i);
            let length = word.len();
            elements.push(WeylElement { word, matrix: m, length });
        }
        head += 1;
    }
    Ok(elements)
}

/// An involution of the character lattice with a compact/noncompact marking
/// of its imaginary roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionData {
    pub theta: IntMatrix,
    pub compact: BTreeSet<Weight>,
}

/// The four root classes determined by an involution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootClassification {
    pub imaginary_compact: BTreeSet<Weight>,
    pub imaginary_noncompact: BTreeSet<Weight>,
    pub real: BTreeSet<Weight>,
    pub complex: BTreeSet<Weight>,
}

impl RootClassification {
    pub fn imaginary(&self) -> BTreeSet<Weight> {
        self.imaginary_compact.union(&self.imaginary_noncompact).cloned().collect()
    }
}

impl InvolutionData {
    pub fn new(theta: IntMatrix, compact: impl IntoIterator<Item = Weight>) -> Self {
        InvolutionData { theta, compact: compact.into_iter().collect() }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        self.theta.apply(w)
    }

    /// Dimension of the fixed subspace of the involution.
    pub fn fixed_dimension(&self) -> usize {
        let n = self.theta.rows();
        let mut m = self.theta.to_rational();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= Rational64::one();
        }
        n - rational_rank(m)
    }

    /// Checks every structural requirement against `datum`.
    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        let n = datum.rank();
        if self.theta.rows() != n || self.theta.cols() != n {
            return Err(Error::RankMismatch { context: "involution matrix", expected: n, found: self.theta.rows() });
        }
        if !self.theta.mul(&self.theta).is_identity() {
            return Err(Error::InvalidInvolution("theta does not square to the identity".into()));
        }
        for a in datum.roots() {
            if !datum.is_root(&self.apply(a)) {
                return Err(Error::InvalidInvolution(format!("theta sends the root {a} to a non-root")));
            }
        }
        for c in &self.compact {
            if c.rank() != n || !datum.is_root(c) {
                return Err(Error::InvalidInvolution(format!("compact mark {c} is not a root")));
            }
            if self.apply(c) != *c {
                return Err(Error::InvalidInvolution(format!("compact mark {c} is not imaginary")));
            }
            if !self.compact.contains(&-c) {
                return Err(Error::InvalidInvolution(format!("compact marks contain {c} but not its negative")));
            }
        }
        // Brackets of root spaces respect k/p parity.
        let imaginary: Vec<&Weight> = datum.roots().iter().filter(|a| self.apply(a) == **a).collect();
        for (i, a) in imaginary.iter().enumerate() {
            for b in &imaginary[i..] {
                let s = *a + *b;
                if !datum.is_root(&s) {
                    continue;
                }
                let parity = |w: &Weight| usize::from(!self.compact.contains(w));
                if (parity(a) + parity(b)) % 2 != parity(&s) {
                    return Err(Error::InvalidInvolution(format!(
                        "compact marking is inconsistent on {a} + {b} = {s}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Splits the roots of `datum` into imaginary compact, imaginary noncompact,
/// real and complex classes.
pub fn classify_roots(datum: &RootDatum, inv: &InvolutionData) -> Result<RootClassification> {
    inv.validate(datum)?;
    let mut out = RootClassification::default();
    for a in datum.roots() {
        let t = inv.apply(a);
        if t == *a {
            if inv.compact.contains(a) {
                out.imaginary_compact.insert(a.clone());
            } else {
                out.imaginary_noncompact.insert(a.clone());
            }
        } else if t == -a {
            out.real.insert(a.clone());
        } else {
            out.complex.insert(a.clone());
        }
    }
    Ok(out)
}
