//! B-linear subspaces of F and of B^m.
//!
//! Subspaces of F are held over the prime field: a GF(p) row-reduced basis
//! of coordinate vectors, closed under multiplication by B. A canonical
//! B-basis is read off greedily from the reduced rows and fixes the
//! enumeration order.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::subfield_rank;
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};
use crate::linalg::{Matrix, PrimeField};

/// Largest subspace `elements` will materialize.
pub const ENUMERATION_BUDGET: u64 = 1 << 20;

/// A B-linear subspace of F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    /// GF(p) row-reduced basis, one coordinate vector per row.
    prime_rows: Vec<Vec<u32>>,
    /// Canonical basis over B.
    basis: Vec<Element>,
    degree: usize,
}

impl Subspace {
    pub fn zero(tower: &FieldTower) -> Self {
        Self::from_prime_vectors(tower, &[])
    }

    pub fn full(tower: &FieldTower) -> Self {
        let n = tower.degree() as usize;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Self::from_prime_vectors(tower, &rows)
    }

    /// The B-span of `gens`.
    pub fn span(tower: &FieldTower, gens: &[Element]) -> Self {
        let mut vecs = Vec::new();
        for &g in gens {
            for &c in tower.subfield_prime_basis() {
                vecs.push(tower.coords(tower.mul(c, g)));
            }
        }
        Self::from_prime_vectors(tower, &vecs)
    }

    /// Builds the subspace from GF(p) vectors whose span is already B-closed.
    fn from_prime_vectors(tower: &FieldTower, vecs: &[Vec<u32>]) -> Self {
        let f = PrimeField { p: tower.p() };
        let degree = tower.degree() as usize;
        let (r, pivots) = Matrix::from_rows(vecs, degree).rref(&f);
        let prime_rows: Vec<Vec<u32>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let mut basis: Vec<Element> = Vec::new();
        let target = prime_rows.len() / tower.a() as usize;
        let greedy = tower.a() > 1;
        for row in &prime_rows {
            if basis.len() == target {
                break;
            }
            let e = tower.from_coords(row).expect("reduced rows are valid coordinates");
            basis.push(e);
            if greedy && subfield_rank(tower, &basis) < basis.len() {
                basis.pop();
            }
        }
        debug_assert_eq!(basis.len() * tower.a() as usize, prime_rows.len(), "span is not B-closed");
        Subspace { prime_rows, basis, degree }
    }

    /// Every subspace of dimension `dim`, one per reduced echelon form in
    /// the standard-basis coordinates.
    pub fn all_of_dim(tower: &FieldTower, dim: usize) -> Vec<Subspace> {
        let ell = tower.ell() as usize;
        if dim > ell {
            return Vec::new();
        }
        let standard = crate::basis::BasisPair::standard(tower);
        let mut out = Vec::new();
        let mut pivots: Vec<usize> = (0..dim).collect();
        loop {
            let free: Vec<(usize, usize)> = (0..dim)
                .flat_map(|i| ((pivots[i] + 1)..ell).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            for fill in coefficient_tuples(tower, free.len()) {
                let mut rows = vec![vec![Element::ZERO; ell]; dim];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = Element::ONE;
                }
                for (&(i, c), &x) in free.iter().zip(&fill) {
                    rows[i][c] = x;
                }
                let gens: Vec<Element> = rows.iter().map(|r| standard.devectorize(tower, r)).collect();
                out.push(Self::span(tower, &gens));
            }
            // Next combination of pivot columns.
            let Some(i) = (0..dim).rev().find(|&i| pivots[i] < ell - dim + i) else {
                break;
            };
            pivots[i] += 1;
            for j in i + 1..dim {
                pivots[j] = pivots[j - 1] + 1;
            }
        }
        out
    }

    /// `K = ker Tr_{F/B}`.
    pub fn trace_kernel(tower: &FieldTower) -> Self {
        Self::scaled_trace_kernel(tower, Element::ONE).expect("1 is nonzero")
    }

    /// `β^(-1) K = {x : Tr(βx) = 0}`.
    pub fn scaled_trace_kernel(tower: &FieldTower, beta: Element) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(Self::kernel(tower, |x| tower.trace_to_subfield(tower.mul(beta, x))))
    }

    /// Kernel of a B-linear map `F → F`.
    pub fn kernel(tower: &FieldTower, map: impl Fn(Element) -> Element) -> Self {
        let f = PrimeField { p: tower.p() };
        let m = map_matrix(tower, &map);
        Self::from_prime_vectors(tower, &m.nullspace(&f))
    }

    /// `{x : map(x) ∈ w}`. Fails unless `w` lies in the image of `map`.
    pub fn preimage(tower: &FieldTower, map: impl Fn(Element) -> Element, w: &Subspace) -> Result<Self> {
        let f = PrimeField { p: tower.p() };
        let image = w.image_of_full(tower, &map);
        if w.basis.iter().any(|&b| !image.contains(tower, b)) {
            return Err(Error::WNotInImage);
        }
        let h = w.annihilator(tower);
        let m = map_matrix(tower, &map);
        let composed = h.mul(&f, &m);
        Ok(Self::from_prime_vectors(tower, &composed.nullspace(&f)))
    }

    fn image_of_full(&self, tower: &FieldTower, map: impl Fn(Element) -> Element) -> Self {
        let gens: Vec<Element> = (0..self.degree).map(|i| map(tower.from_coords(&unit(self.degree, i)).unwrap())).collect();
        Self::from_prime_vectors(tower, &gens.iter().map(|&g| tower.coords(g)).collect::<Vec<_>>())
    }

    /// Image of this subspace under a B-linear map.
    pub fn image(&self, tower: &FieldTower, map: impl Fn(Element) -> Element) -> Self {
        let gens: Vec<Element> = self.basis.iter().map(|&b| map(b)).collect();
        Self::span(tower, &gens)
    }

    /// Exact intersection via the stacked annihilators.
    pub fn intersect(tower: &FieldTower, spaces: &[Subspace]) -> Result<Self> {
        let degree = tower.degree() as usize;
        if spaces.iter().any(|s| s.degree != degree) {
            return Err(Error::AmbientMismatch);
        }
        let Some(first) = spaces.first() else {
            return Ok(Self::full(tower));
        };
        let f = PrimeField { p: tower.p() };
        let mut rows = Vec::new();
        for s in spaces {
            rows.extend(s.annihilator(tower).to_rows());
        }
        if rows.is_empty() {
            return Ok(first.clone());
        }
        let stacked = Matrix::from_rows(&rows, degree);
        Ok(Self::from_prime_vectors(tower, &stacked.nullspace(&f)))
    }

    /// `self + other`.
    pub fn sum(&self, tower: &FieldTower, other: &Subspace) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::AmbientMismatch);
        }
        let mut rows = self.prime_rows.clone();
        rows.extend(other.prime_rows.iter().cloned());
        Ok(Self::from_prime_vectors(tower, &rows))
    }

    /// Rows `h` with `h·x = 0` exactly for coordinate vectors `x` in the space.
    fn annihilator(&self, tower: &FieldTower) -> Matrix<u32> {
        let f = PrimeField { p: tower.p() };
        let r = Matrix::from_rows(&self.prime_rows, self.degree);
        Matrix::from_rows(&r.nullspace(&f), self.degree)
    }

    pub fn contains(&self, tower: &FieldTower, x: Element) -> bool {
        let f = PrimeField { p: tower.p() };
        let mut rows = self.prime_rows.clone();
        rows.push(tower.coords(x));
        Matrix::from_rows(&rows, self.degree).rank(&f) == self.prime_rows.len()
    }

    /// Dimension over B.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis over B.
    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn is_subspace_of(&self, tower: &FieldTower, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(tower, b))
    }

    /// All `q^dim` elements: B-coefficient vectors on the canonical basis in
    /// lexicographic order, first coordinate most significant. Starts at 0.
    pub fn elements(&self, tower: &FieldTower) -> Result<Vec<Element>> {
        let size = (tower.q() as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        if size > ENUMERATION_BUDGET {
            return Err(Error::TooLarge { size, budget: ENUMERATION_BUDGET });
        }
        let mut out = vec![Element::ZERO];
        for &b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * tower.q() as usize);
            for &x in &out {
                for &c in tower.subfield_elements() {
                    next.push(tower.add(x, tower.mul(c, b)));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// GF(p) matrix of a map on F, acting on coordinate column vectors.
fn map_matrix(tower: &FieldTower, map: &impl Fn(Element) -> Element) -> Matrix<u32> {
    let n = tower.degree() as usize;
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|i| tower.coords(map(tower.from_coords(&unit(n, i)).unwrap())))
        .collect();
    Matrix::from_rows(&cols, n).transpose()
}

/// A subspace of B^m, held as a row-reduced basis over B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSubspace {
    m: usize,
    rows: Vec<Vec<Element>>,
}

impl VectorSubspace {
    pub fn span(tower: &FieldTower, m: usize, vectors: &[Vec<Element>]) -> Self {
        let (r, pivots) = Matrix::from_rows(vectors, m).rref(tower);
        VectorSubspace { m, rows: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect() }
    }

    pub fn full(tower: &FieldTower, m: usize) -> Self {
        let rows: Vec<Vec<Element>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { Element::ONE } else { Element::ZERO }).collect())
            .collect();
        Self::span(tower, m, &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Element>] {
        &self.rows
    }

    pub fn contains(&self, tower: &FieldTower, v: &[Element]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(&rows, self.m).rank(tower) == self.rows.len()
    }

    pub fn intersect(&self, tower: &FieldTower, other: &VectorSubspace) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::AmbientMismatch);
        }
        let annihilator = |s: &VectorSubspace| Matrix::from_rows(&s.rows, s.m).nullspace(tower);
        let mut h = annihilator(self);
        h.extend(annihilator(other));
        let kernel = Matrix::from_rows(&h, self.m).nullspace(tower);
        Ok(Self::span(tower, self.m, &kernel))
    }

    /// All elements in lexicographic coefficient order on the reduced basis.
    pub fn elements(&self, tower: &FieldTower) -> Result<Vec<Vec<Element>>> {
        let size = (tower.q() as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        if size > ENUMERATION_BUDGET {
            return Err(Error::TooLarge { size, budget: ENUMERATION_BUDGET });
        }
        Ok(coefficient_tuples(tower, self.dim())
            .map(|c| {
                let mut v = vec![Element::ZERO; self.m];
                for (ci, row) in c.iter().zip(&self.rows) {
                    for (vj, &rj) in v.iter_mut().zip(row) {
                        *vj = tower.add(*vj, tower.mul(*ci, rj));
                    }
                }
                v
            })
            .collect())
    }
}

/// Iterates over B^k in lexicographic order (first coordinate most
/// significant, B in `subfield_elements` order).
pub fn coefficient_tuples(tower: &FieldTower, k: usize) -> impl Iterator<Item = Vec<Element>> + '_ {
    let q = tower.q() as u64;
    let total = q.pow(k as u32);
    let sub = tower.subfield_elements();
    (0..total).map(move |mut idx| {
        let mut v = vec![Element::ZERO; k];
        for slot in v.iter_mut().rev() {
            *slot = sub[(idx % q) as usize];
            idx /= q;
        }
        v
    })
}
