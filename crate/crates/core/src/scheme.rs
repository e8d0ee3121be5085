//! Linear repair schemes: repair matrices, I/O cost and bandwidth,
//! normalization, equivalence transforms, and node repair.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::basis::BasisPair;
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rs::RsCode;
use crate::subspace::{coefficient_tuples, Subspace};
use rand::Rng;

/// A linear repair scheme for one node of `RS(𝒜, n - r)`: ℓ dual codewords
/// `g_1, …, g_ℓ` (polynomials of degree `< r`) whose values at the target
/// point span F over B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairScheme {
    code: RsCode,
    basis: BasisPair,
    polys: Vec<Poly>,
    target: usize,
}

/// Which route produced a [`MetricsReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    WeightFormula,
    ExpSum,
}

/// Per-node counts for one repair matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeMetrics {
    /// Nonzero columns of `W_i` (subsymbols read).
    pub nz: usize,
    /// `rank(W_i)` (subsymbols sent).
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricsReport {
    /// One entry per node in enumeration order, the target included.
    /// Empty when the method does not look at individual nodes.
    pub per_node: Vec<NodeMetrics>,
    pub io_cost: u64,
    pub bandwidth: u64,
    pub method: Method,
}

impl RepairScheme {
    /// Validates degrees and the repair condition at `target`.
    pub fn new(tower: &FieldTower, code: RsCode, basis: BasisPair, polys: Vec<Poly>, target: usize) -> Result<Self> {
        let ell = tower.ell() as usize;
        if basis.ell() != ell {
            return Err(Error::InvalidScheme(format!("basis has {} elements, expected {ell}", basis.ell())));
        }
        if polys.len() != ell {
            return Err(Error::InvalidScheme(format!("expected {ell} polynomials, got {}", polys.len())));
        }
        if target >= code.n() {
            return Err(Error::InvalidScheme(format!("target {target} out of range for n = {}", code.n())));
        }
        let r = code.r();
        for (j, g) in polys.iter().enumerate() {
            if g.coeffs().iter().any(|&c| !tower.is_valid(c)) {
                return Err(Error::InvalidScheme(format!("g_{} has a coefficient outside the field", j + 1)));
            }
            if let Some(d) = g.degree() {
                if d >= r {
                    return Err(Error::InvalidScheme(format!(
                        "g_{} has degree {d}; dual codewords of RS(A, n - r) need degree < r = {r}",
                        j + 1
                    )));
                }
            }
        }
        let scheme = RepairScheme { code, basis, polys, target };
        let rank = scheme.repair_matrix(tower, target).rank(tower);
        if rank < ell {
            return Err(Error::InvalidScheme(format!(
                "values g_j(alpha) at the target span only {rank} of {ell} dimensions over B"
            )));
        }
        Ok(scheme)
    }

    /// A random valid scheme on a random `d`-dimensional evaluation set:
    /// `m0` of the polynomials get a random nonconstant part of degree `< r`,
    /// all constant terms form a basis, and the result is mixed by a random
    /// invertible matrix over B.
    pub fn random<R: Rng + ?Sized>(tower: &FieldTower, d: usize, r: usize, m0: usize, rng: &mut R) -> Result<Self> {
        let ell = tower.ell() as usize;
        if d == 0 || d > ell || m0 > ell || r < 1 {
            return Err(Error::InvalidScheme(format!("bad random parameters d = {d}, r = {r}, m0 = {m0}")));
        }
        let random_element = |rng: &mut R| Element::from_index(rng.gen_range(0..tower.order()));
        let mut gens = Vec::new();
        let mut a = Subspace::zero(tower);
        while a.dim() < d {
            gens.push(random_element(rng));
            a = Subspace::span(tower, &gens);
        }
        let code = RsCode::with_redundancy(tower, a, r)?;
        let basis = BasisPair::random(tower, rng);
        let constants = BasisPair::random(tower, rng);
        let polys: Vec<Poly> = constants
            .beta()
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                let mut coeffs = vec![c];
                if j < m0 && r > 1 {
                    let deg = rng.gen_range(1..r);
                    coeffs.extend((1..deg).map(|_| random_element(rng)));
                    let mut lead = random_element(rng);
                    while lead.is_zero() {
                        lead = random_element(rng);
                    }
                    coeffs.push(lead);
                }
                Poly::new(coeffs)
            })
            .collect();
        let scheme = Self::new(tower, code, basis, polys, 0)?;
        let sub = tower.subfield_elements();
        loop {
            let rows: Vec<Vec<Element>> =
                (0..ell).map(|_| (0..ell).map(|_| sub[rng.gen_range(0..sub.len())]).collect()).collect();
            let m = Matrix::from_rows(&rows, ell);
            if m.rank(tower) == ell {
                return scheme.transform(tower, &m);
            }
        }
    }

    pub fn code(&self) -> &RsCode {
        &self.code
    }

    pub fn basis(&self) -> &BasisPair {
        &self.basis
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn ell(&self) -> usize {
        self.polys.len()
    }

    /// Same polynomials aimed at another node.
    pub fn retarget(&self, tower: &FieldTower, target: usize) -> Result<Self> {
        Self::new(tower, self.code.clone(), self.basis.clone(), self.polys.clone(), target)
    }

    /// `W(j, s) = Tr(g_j(α) β_s)` at an arbitrary point α.
    pub fn repair_matrix_at(&self, tower: &FieldTower, alpha: Element) -> Matrix<Element> {
        let ell = self.ell();
        let mut w = Matrix::zeros(tower, ell, ell);
        for (j, g) in self.polys.iter().enumerate() {
            let v = g.eval(tower, alpha);
            if v.is_zero() {
                continue;
            }
            for (s, &b) in self.basis.beta().iter().enumerate() {
                w[(j, s)] = tower.trace_to_subfield(tower.mul(v, b));
            }
        }
        w
    }

    /// `W_i` for node `i` (0-based, enumeration order).
    pub fn repair_matrix(&self, tower: &FieldTower, i: usize) -> Matrix<Element> {
        self.repair_matrix_at(tower, self.code.points()[i])
    }

    /// Counts nonzero columns and ranks of every `W_i`.
    pub fn metrics_direct(&self, tower: &FieldTower) -> MetricsReport {
        self.metrics_with(tower, Method::Direct, |w| w.nonzero_columns(tower) as u64)
    }

    /// Like [`Self::metrics_direct`], but `nz(W_i)` comes from the
    /// Hamming-weight identity over all `u ∈ B^ℓ`.
    pub fn metrics_weight(&self, tower: &FieldTower) -> Result<MetricsReport> {
        let mut failure = None;
        let report = self.metrics_with(tower, Method::WeightFormula, |w| match nz_via_weight(tower, w) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(report),
        }
    }

    fn metrics_with(
        &self,
        tower: &FieldTower,
        method: Method,
        mut nz: impl FnMut(&Matrix<Element>) -> u64,
    ) -> MetricsReport {
        let mut per_node = Vec::with_capacity(self.code.n());
        let (mut io, mut bw) = (0u64, 0u64);
        for i in 0..self.code.n() {
            let w = self.repair_matrix(tower, i);
            let node = NodeMetrics { nz: nz(&w) as usize, rank: w.rank(tower) };
            if i != self.target {
                io += node.nz as u64;
                bw += node.rank as u64;
            }
            per_node.push(node);
        }
        MetricsReport { per_node, io_cost: io, bandwidth: bw, method }
    }

    /// `g̃ = M g` for an invertible `M` over B.
    pub fn transform(&self, tower: &FieldTower, m: &Matrix<Element>) -> Result<Self> {
        let ell = self.ell();
        if m.rows() != ell || m.cols() != ell {
            return Err(Error::InvalidScheme(format!("transform must be {ell}x{ell}")));
        }
        if (0..ell).any(|i| m.row(i).iter().any(|&x| !tower.is_valid(x) || !tower.is_in_subfield(x))) {
            return Err(Error::InvalidScheme("transform entries must lie in B".into()));
        }
        if m.rank(tower) < ell {
            return Err(Error::SingularMatrix);
        }
        let polys = (0..ell).map(|j| Poly::linear_combination(tower, m.row(j), &self.polys)).collect();
        Self::new(tower, self.code.clone(), self.basis.clone(), polys, self.target)
    }

    /// Finds an equivalent normalized scheme.
    ///
    /// `U = {u : g_u constant}` is the left kernel of the matrix whose rows
    /// are the vectorized nonconstant coefficients. Its reduced basis becomes
    /// the last `ℓ - m` rows of the transform; the first `m` rows are unit
    /// vectors chosen greedily in index order.
    pub fn normalize(&self, tower: &FieldTower) -> Result<NormalForm> {
        let ell = self.ell();
        let r = self.code.r();
        let width = ell * r.saturating_sub(1);
        let rows: Vec<Vec<Element>> = self
            .polys
            .iter()
            .map(|g| (1..r).flat_map(|e| self.basis.vectorize(tower, g.coeff(e))).collect())
            .collect();
        let a = Matrix::from_rows(&rows, width);
        let kernel = if width == 0 {
            (0..ell).map(|i| unit(ell, i)).collect()
        } else {
            a.left_kernel(tower)
        };
        let mut kernel = Matrix::from_rows(&kernel, ell).rref(tower).0.to_rows();
        kernel.retain(|row| row.iter().any(|x| !x.is_zero()));
        let m = ell - kernel.len();

        let mut extension: Vec<Vec<Element>> = Vec::with_capacity(m);
        for i in 0..ell {
            if extension.len() == m {
                break;
            }
            let e = unit(ell, i);
            let mut trial = extension.clone();
            trial.extend(kernel.iter().cloned());
            trial.push(e.clone());
            if Matrix::from_rows(&trial, ell).rank(tower) == trial.len() {
                extension.push(e);
            }
        }
        let mut transform_rows = extension;
        transform_rows.extend(kernel);
        let transform = Matrix::from_rows(&transform_rows, ell);
        let scheme = self.transform(tower, &transform)?;

        let mut covered = vec![false; ell];
        for g in &scheme.polys[m..] {
            debug_assert!(g.is_constant());
            for (s, c) in scheme.basis.dual_vectorize(tower, g.coeff(0)).into_iter().enumerate() {
                covered[s] |= !c.is_zero();
            }
        }
        let support: Vec<usize> = (0..ell).filter(|&s| !covered[s]).collect();
        if support.len() > m {
            return Err(Error::InvalidScheme(format!(
                "constant block misses {} coordinates but only {m} polynomials are nonconstant",
                support.len()
            )));
        }
        Ok(NormalForm { scheme, m, support, transform })
    }
}

fn unit(n: usize, i: usize) -> Vec<Element> {
    let mut v = vec![Element::ZERO; n];
    v[i] = Element::ONE;
    v
}

/// An `(m, t)`-normalized scheme: `g_{m+1..ℓ}` are constants whose dual
/// coordinates jointly vanish exactly on `support` (`t = |support|`), and
/// no nonzero combination of `g_{1..m}` is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub scheme: RepairScheme,
    pub m: usize,
    /// Coordinates (0-based) missed by every constant polynomial.
    pub support: Vec<usize>,
    /// `M` with `g̃ = M g` relative to the scheme that was normalized.
    pub transform: Matrix<Element>,
}

impl NormalForm {
    pub fn t(&self) -> usize {
        self.support.len()
    }

    /// The `m × t` block of `W_i` on rows `1..m` and columns in the support.
    pub fn reduced_matrix(&self, tower: &FieldTower, i: usize) -> Matrix<Element> {
        let w = self.scheme.repair_matrix(tower, i);
        let mut out = Matrix::zeros(tower, self.m, self.t());
        for j in 0..self.m {
            for (c, &s) in self.support.iter().enumerate() {
                out[(j, c)] = w[(j, s)];
            }
        }
        out
    }

    /// `(n-1)ℓ - n t + Σ_i nz(Ŵ_i)`, summing over every node.
    pub fn io_cost_from_reduced(&self, tower: &FieldTower) -> u64 {
        let n = self.scheme.code().n() as u64;
        let ell = self.scheme.ell() as u64;
        let total: u64 = (0..n as usize)
            .map(|i| self.reduced_matrix(tower, i).nonzero_columns(tower) as u64)
            .sum();
        (n - 1) * ell + total - n * self.t() as u64
    }
}

/// `nz(G)` through `Σ_{u ∈ B^k} wt(uG) / (q^(k-1)(q-1))` for a `k`-row `G`.
pub fn nz_via_weight(tower: &FieldTower, g: &Matrix<Element>) -> Result<u64> {
    let k = g.rows();
    if k == 0 {
        return Ok(0);
    }
    let q = tower.q() as u64;
    let mut total = 0u64;
    let mut partial = vec![vec![Element::ZERO; g.cols()]; k + 1];
    weight_sum(tower, g, 0, &mut partial, &mut total);
    let divisor = q.pow(k as u32 - 1) * (q - 1);
    if !total.is_multiple_of(divisor) {
        return Err(Error::NonIntegerSum { divisor, detail: format!("weight sum {total}") });
    }
    Ok(total / divisor)
}

fn weight_sum(tower: &FieldTower, g: &Matrix<Element>, depth: usize, partial: &mut [Vec<Element>], total: &mut u64) {
    if depth == g.rows() {
        *total += partial[depth].iter().filter(|x| !x.is_zero()).count() as u64;
        return;
    }
    for &c in tower.subfield_elements() {
        let (head, tail) = partial.split_at_mut(depth + 1);
        for (s, slot) in tail[0].iter_mut().enumerate() {
            *slot = tower.add(head[depth][s], tower.mul(c, g[(depth, s)]));
        }
        weight_sum(tower, g, depth + 1, partial, total);
    }
}

/// Subsymbol reads and sends recorded while repairing a node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AccessCounter {
    /// Per node, the subsymbol positions read.
    pub accessed: Vec<Vec<usize>>,
    /// Per node, subsymbols sent to the replacement node.
    pub transmitted: Vec<usize>,
}

impl AccessCounter {
    pub fn new(n: usize) -> Self {
        AccessCounter { accessed: vec![Vec::new(); n], transmitted: vec![0; n] }
    }

    pub fn total_accessed(&self) -> u64 {
        self.accessed.iter().map(|v| v.len() as u64).sum()
    }

    pub fn total_transmitted(&self) -> u64 {
        self.transmitted.iter().map(|&v| v as u64).sum()
    }
}

struct HelperPlan {
    node: usize,
    /// Columns of `W_i` with a nonzero entry: the positions the helper reads.
    columns: Vec<usize>,
    /// Reduced row basis `R` of `W_i`; the helper sends `R x`.
    rows: Matrix<Element>,
    /// `C` with `W_i = C R`; the receiver expands the message with it.
    expand: Matrix<Element>,
}

/// Precomputed per-helper work for repairing the scheme's target node.
pub struct RepairPlan {
    helpers: Vec<HelperPlan>,
    target_matrix: Matrix<Element>,
    target: usize,
    n: usize,
}

impl RepairPlan {
    pub fn new(tower: &FieldTower, scheme: &RepairScheme) -> Result<Self> {
        let n = scheme.code().n();
        let target_matrix = scheme.repair_matrix(tower, scheme.target());
        if target_matrix.rank(tower) < scheme.ell() {
            return Err(Error::SingularRepairMatrix);
        }
        let mut helpers = Vec::new();
        for i in (0..n).filter(|&i| i != scheme.target()) {
            let w = scheme.repair_matrix(tower, i);
            let (r, pivots) = w.rref(tower);
            if pivots.is_empty() {
                continue;
            }
            let rows = Matrix::from_rows(&r.to_rows()[..pivots.len()], w.cols());
            let mut expand = Matrix::zeros(tower, w.rows(), pivots.len());
            for j in 0..w.rows() {
                for (k, &pc) in pivots.iter().enumerate() {
                    expand[(j, k)] = w[(j, pc)];
                }
            }
            let columns = (0..w.cols()).filter(|&s| (0..w.rows()).any(|j| !w[(j, s)].is_zero())).collect();
            helpers.push(HelperPlan { node: i, columns, rows, expand });
        }
        Ok(RepairPlan { helpers, target_matrix, target: scheme.target(), n })
    }

    /// Rebuilds the target symbol from the other nodes' stored subsymbols.
    pub fn repair(
        &self,
        tower: &FieldTower,
        basis: &BasisPair,
        codeword: &[Element],
        counter: &mut AccessCounter,
    ) -> Result<Element> {
        assert_eq!(codeword.len(), self.n, "codeword length");
        if counter.accessed.len() != self.n {
            *counter = AccessCounter::new(self.n);
        }
        let ell = basis.ell();
        let mut rhs = vec![Element::ZERO; ell];
        for h in &self.helpers {
            let stored = basis.vectorize(tower, codeword[h.node]);
            let mut read = vec![Element::ZERO; ell];
            for &s in &h.columns {
                read[s] = stored[s];
                counter.accessed[h.node].push(s);
            }
            let message = h.rows.mul_vec(tower, &read);
            counter.transmitted[h.node] += message.len();
            let contribution = h.expand.mul_vec(tower, &message);
            for (acc, c) in rhs.iter_mut().zip(contribution) {
                *acc = tower.sub(*acc, c);
            }
        }
        let x = self.target_matrix.solve(tower, &rhs).ok_or(Error::SingularRepairMatrix)?;
        Ok(basis.devectorize(tower, &x))
    }

    pub fn target(&self) -> usize {
        self.target
    }
}

/// One-shot repair of the target node of `scheme`.
pub fn repair_node(
    tower: &FieldTower,
    scheme: &RepairScheme,
    codeword: &[Element],
    counter: &mut AccessCounter,
) -> Result<Element> {
    RepairPlan::new(tower, scheme)?.repair(tower, scheme.basis(), codeword, counter)
}

/// All `u ∈ B^m`, excluding zero, used by callers that need `g_u`.
pub fn nonzero_combinations(tower: &FieldTower, m: usize) -> impl Iterator<Item = Vec<Element>> + '_ {
    coefficient_tuples(tower, m).skip(1)
}
