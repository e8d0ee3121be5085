//! Reed–Solomon codes evaluated on a B-linear subspace of F.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::BasisPair;
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};
use crate::linalg::dot;
use crate::poly::Poly;
use crate::subspace::Subspace;

/// `RS(𝒜, k)`: evaluations of polynomials of degree `< k` on the points of
/// `𝒜`, taken in enumeration order (so node 0 is the point 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsCode {
    subspace: Subspace,
    points: Vec<Element>,
    k: usize,
}

impl RsCode {
    pub fn new(tower: &FieldTower, subspace: Subspace, k: usize) -> Result<Self> {
        let points = subspace.elements(tower)?;
        let n = points.len();
        if k == 0 || k >= n {
            return Err(Error::InvalidCode(format!("need 1 <= k < n, got k = {k}, n = {n}")));
        }
        Ok(RsCode { subspace, points, k })
    }

    /// `RS(𝒜, n - r)`.
    pub fn with_redundancy(tower: &FieldTower, subspace: Subspace, r: usize) -> Result<Self> {
        let n = (tower.q() as usize).pow(subspace.dim() as u32);
        if r == 0 || r >= n {
            return Err(Error::InvalidCode(format!("need 1 <= r < n, got r = {r}, n = {n}")));
        }
        Self::new(tower, subspace, n - r)
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn points(&self) -> &[Element] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Redundancy `r = n - k`.
    pub fn r(&self) -> usize {
        self.n() - self.k
    }

    pub fn encode(&self, tower: &FieldTower, message: &Poly) -> Result<Vec<Element>> {
        if let Some(d) = message.degree() {
            if d >= self.k {
                return Err(Error::DegreeTooHigh { degree: d, bound: self.k - 1 });
            }
        }
        Ok(self.points.iter().map(|&a| message.eval(tower, a)).collect())
    }

    pub fn random_message<R: Rng + ?Sized>(&self, tower: &FieldTower, rng: &mut R) -> Poly {
        Poly::new((0..self.k).map(|_| Element::from_index(rng.gen_range(0..tower.order()))).collect())
    }

    pub fn random_codeword(&self, tower: &FieldTower, seed: u64) -> Vec<Element> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = self.random_message(tower, &mut rng);
        self.encode(tower, &m).expect("message degree below k")
    }

    /// The dual code `RS(𝒜, n - k)`.
    pub fn dual(&self) -> Self {
        RsCode { subspace: self.subspace.clone(), points: self.points.clone(), k: self.r() }
    }
}

/// Outcome of pairing random codewords with random dual codewords.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualCheckReport {
    pub trials: usize,
    /// Pairs whose inner product over F was nonzero.
    pub scalar_failures: usize,
    /// Pairs whose vectorized inner product over B was nonzero.
    pub vector_failures: usize,
    /// Pairs where the two checks disagreed.
    pub disagreements: usize,
}

impl DualCheckReport {
    pub fn passed(&self) -> bool {
        self.scalar_failures == 0 && self.vector_failures == 0 && self.disagreements == 0
    }
}

/// Checks `Σ g_i c_i = 0` for random `c ∈ RS(𝒜,k)`, `g ∈ RS(𝒜,n-k)`, and the
/// vectorized form `Σ_i Φ_𝓑̂(g_i) · Φ_𝓑(c_i) = 0` over B.
pub fn dual_inner_product_check(
    tower: &FieldTower,
    code: &RsCode,
    basis: &BasisPair,
    trials: usize,
    seed: u64,
) -> DualCheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dual = code.dual();
    let mut report = DualCheckReport { trials, ..Default::default() };
    for _ in 0..trials {
        let c = code.encode(tower, &code.random_message(tower, &mut rng)).unwrap();
        let g = dual.encode(tower, &dual.random_message(tower, &mut rng)).unwrap();
        let scalar = g.iter().zip(&c).fold(Element::ZERO, |acc, (&x, &y)| tower.add(acc, tower.mul(x, y)));
        let vector = g.iter().zip(&c).fold(Element::ZERO, |acc, (&x, &y)| {
            let d = dot(tower, &basis.dual_vectorize(tower, x), &basis.vectorize(tower, y));
            tower.add(acc, d)
        });
        report.scalar_failures += usize::from(!scalar.is_zero());
        report.vector_failures += usize::from(!vector.is_zero());
        report.disagreements += usize::from(scalar.is_zero() != vector.is_zero());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use alloc::vec;

    fn gf16() -> FieldTower {
        FieldTower::new(2, 1, 4).unwrap()
    }

    #[test]
    fn encode_examples() {
        let f = gf16();
        let code = RsCode::new(&f, Subspace::full(&f), 3).unwrap();
        assert!(code.encode(&f, &Poly::zero()).unwrap().iter().all(|c| c.is_zero()));
        let c = Element::from_index(9);
        assert!(code.encode(&f, &Poly::constant(c)).unwrap().iter().all(|&x| x == c));
        let x = Poly::new(vec![Element::ZERO, Element::ONE]);
        assert_eq!(code.encode(&f, &x).unwrap(), code.points().to_vec());
        let high = Poly::new(vec![Element::ONE; 4]);
        assert_eq!(code.encode(&f, &high).unwrap_err(), Error::DegreeTooHigh { degree: 3, bound: 2 });
        assert!(RsCode::new(&f, Subspace::full(&f), 16).is_err());
        assert!(RsCode::new(&f, Subspace::full(&f), 0).is_err());
    }

    #[test]
    fn random_codewords() {
        let f = gf16();
        let code = RsCode::new(&f, Subspace::full(&f), 5).unwrap();
        assert_eq!(code.random_codeword(&f, 7), code.random_codeword(&f, 7));
        for seed in 0..20 {
            let c = code.random_codeword(&f, seed);
            let wt = c.iter().filter(|x| !x.is_zero()).count();
            assert!(wt == 0 || wt > code.n() - code.k());
        }
        let const_code = RsCode::new(&f, Subspace::full(&f), 1).unwrap();
        let c = const_code.random_codeword(&f, 3);
        assert!(c.iter().all(|&x| x == c[0]));
    }

    #[test]
    fn duality_random_pairs() {
        let f = gf16();
        let code = RsCode::new(&f, Subspace::full(&f), 14).unwrap();
        let bp = BasisPair::standard(&f);
        let report = dual_inner_product_check(&f, &code, &bp, 100, 1);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn duality_monomials_exhaustive() {
        let f = gf16();
        let a = Subspace::span(&f, &[Element::from_index(3), Element::from_index(4), Element::from_index(8)]);
        for k in 1..8 {
            let code = RsCode::new(&f, a.clone(), k).unwrap();
            for i in 0..k {
                for j in 0..code.n() - k {
                    let s = code
                        .points()
                        .iter()
                        .fold(Element::ZERO, |acc, &x| f.add(acc, f.pow(x, (i + j) as u64)));
                    assert!(s.is_zero(), "k={k} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn mds_every_k_columns_invertible() {
        let f = gf16();
        let k = 3;
        let code = RsCode::new(&f, Subspace::full(&f), k).unwrap();
        let pts = code.points();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                for c in b + 1..pts.len() {
                    let rows: Vec<Vec<Element>> =
                        (0..k).map(|e| [pts[a], pts[b], pts[c]].iter().map(|&x| f.pow(x, e as u64)).collect()).collect();
                    assert_eq!(Matrix::from_rows(&rows, 3).rank(&f), 3);
                }
            }
        }
    }
}
