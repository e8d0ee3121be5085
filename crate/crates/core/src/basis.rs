//! Bases of F over B, their trace-dual bases, and coordinate maps.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};
use crate::linalg::Matrix;

/// A basis `β` of F over B together with its dual basis `γ`,
/// i.e. `Tr(γ_i β_j) = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPair {
    beta: Vec<Element>,
    gamma: Vec<Element>,
}

impl BasisPair {
    /// Computes the dual of `beta` by inverting its trace Gram matrix.
    pub fn dual_basis(tower: &FieldTower, beta: &[Element]) -> Result<Self> {
        let ell = tower.ell() as usize;
        let rank = subfield_rank(tower, beta);
        if beta.len() != ell || rank != ell {
            return Err(Error::DependentBasis { rank, expected: ell });
        }
        let gamma = dual_of(tower, beta).ok_or(Error::DependentBasis { rank, expected: ell })?;
        Ok(BasisPair { beta: beta.to_vec(), gamma })
    }

    /// Accepts a basis together with a claimed dual and checks the pairing.
    pub fn from_parts(tower: &FieldTower, beta: Vec<Element>, gamma: Vec<Element>) -> Result<Self> {
        let pair = Self::dual_basis(tower, &beta)?;
        if pair.gamma != gamma {
            return Err(Error::NotDual);
        }
        Ok(pair)
    }

    /// Power basis `1, x, …, x^(ℓ-1)` when B is the prime field, and powers
    /// of the primitive element otherwise.
    pub fn standard(tower: &FieldTower) -> Self {
        let beta = standard_elements(tower);
        let gamma = dual_of(tower, &beta).expect("power basis is independent");
        BasisPair { beta, gamma }
    }

    /// Draws elements uniformly until they form a basis.
    pub fn random<R: Rng + ?Sized>(tower: &FieldTower, rng: &mut R) -> Self {
        let ell = tower.ell() as usize;
        let mut beta = Vec::with_capacity(ell);
        while beta.len() < ell {
            let x = Element::from_index(rng.gen_range(0..tower.order()));
            beta.push(x);
            if subfield_rank(tower, &beta) < beta.len() {
                beta.pop();
            }
        }
        Self::dual_basis(tower, &beta).expect("independent by construction")
    }

    pub fn beta(&self) -> &[Element] {
        &self.beta
    }

    pub fn gamma(&self) -> &[Element] {
        &self.gamma
    }

    pub fn ell(&self) -> usize {
        self.beta.len()
    }

    /// The pair with the roles of `β` and `γ` exchanged.
    pub fn swapped(&self) -> Self {
        BasisPair { beta: self.gamma.clone(), gamma: self.beta.clone() }
    }

    /// Coordinates of `alpha` in `β`: `(Tr(α γ_i))_i`.
    pub fn vectorize(&self, tower: &FieldTower, alpha: Element) -> Vec<Element> {
        self.gamma.iter().map(|&g| tower.trace_to_subfield(tower.mul(alpha, g))).collect()
    }

    /// Coordinates of `theta` in `γ`: `(Tr(θ β_i))_i`.
    pub fn dual_vectorize(&self, tower: &FieldTower, theta: Element) -> Vec<Element> {
        self.beta.iter().map(|&b| tower.trace_to_subfield(tower.mul(theta, b))).collect()
    }

    /// `Σ v_i β_i`.
    pub fn devectorize(&self, tower: &FieldTower, v: &[Element]) -> Element {
        combine(tower, v, &self.beta)
    }

    /// `Σ v_i γ_i`.
    pub fn dual_devectorize(&self, tower: &FieldTower, v: &[Element]) -> Element {
        combine(tower, v, &self.gamma)
    }
}

fn combine(tower: &FieldTower, v: &[Element], basis: &[Element]) -> Element {
    assert_eq!(v.len(), basis.len(), "coordinate vector has wrong length");
    v.iter()
        .zip(basis)
        .fold(Element::ZERO, |acc, (&c, &b)| tower.add(acc, tower.mul(c, b)))
}

fn standard_elements(tower: &FieldTower) -> Vec<Element> {
    let ell = tower.ell() as u64;
    if tower.a() == 1 {
        let p = tower.p();
        (0..ell as u32).map(|i| Element::from_index(p.pow(i))).collect()
    } else {
        (0..ell).map(|i| tower.primitive_power(i)).collect()
    }
}

fn dual_of(tower: &FieldTower, beta: &[Element]) -> Option<Vec<Element>> {
    let ell = beta.len();
    let mut gram = Matrix::zeros(tower, ell, ell);
    for i in 0..ell {
        for j in 0..ell {
            gram[(i, j)] = tower.trace_to_subfield(tower.mul(beta[i], beta[j]));
        }
    }
    let c = gram.inverse(tower)?;
    Some((0..ell).map(|i| combine(tower, c.row(i), beta)).collect())
}

/// Dimension over B of the span of `elems`.
pub fn subfield_rank(tower: &FieldTower, elems: &[Element]) -> usize {
    if elems.is_empty() {
        return 0;
    }
    let reference = BasisPair::standard(tower);
    let rows: Vec<Vec<Element>> = elems.iter().map(|&e| reference.vectorize(tower, e)).collect();
    Matrix::from_rows(&rows, tower.ell() as usize).rank(tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gf4_dual_of_one_zeta() {
        let f = FieldTower::new(2, 1, 2).unwrap();
        let zeta = Element::from_index(2);
        let bp = BasisPair::dual_basis(&f, &[Element::ONE, zeta]).unwrap();
        // Oracle: brute-force search for γ with Tr(γ_i β_j) = δ_ij.
        let beta = [Element::ONE, zeta];
        let mut expected = Vec::new();
        for i in 0..2 {
            let g = f
                .elements()
                .find(|&g| (0..2).all(|j| f.trace_to_subfield(f.mul(g, beta[j])) == Element::from_index((i == j) as u32)))
                .unwrap();
            expected.push(g);
        }
        assert_eq!(bp.gamma(), &expected[..]);
        assert_eq!(bp.gamma(), &[f.mul(zeta, zeta), Element::ONE]);
    }

    #[test]
    fn dual_is_involution_and_degree_one() {
        let f = FieldTower::new(3, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let bp = BasisPair::random(&f, &mut rng);
            let back = BasisPair::dual_basis(&f, bp.gamma()).unwrap();
            assert_eq!(back.gamma(), bp.beta());
        }
        let b = FieldTower::new(5, 1, 1).unwrap();
        let x = Element::from_index(3);
        let bp = BasisPair::dual_basis(&b, &[x]).unwrap();
        assert_eq!(bp.gamma(), &[b.inv(x).unwrap()]);
    }

    #[test]
    fn rejects_dependent() {
        let f = FieldTower::new(2, 1, 3).unwrap();
        let x = Element::from_index(2);
        let err = BasisPair::dual_basis(&f, &[x, x, Element::ONE]).unwrap_err();
        assert_eq!(err, Error::DependentBasis { rank: 2, expected: 3 });
        let zeta_sq = Element::from_index(4);
        let bp = BasisPair::standard(&f);
        assert_eq!(
            BasisPair::from_parts(&f, bp.beta().to_vec(), vec![zeta_sq; 3]).unwrap_err(),
            Error::NotDual
        );
    }

    #[test]
    fn vectorize_roundtrip_and_pairing() {
        for (p, a, ell) in [(2, 1, 4), (3, 1, 2), (2, 2, 2), (2, 1, 8)] {
            let f = FieldTower::new(p, a, ell).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64 * 100 + ell as u64);
            let bp = BasisPair::random(&f, &mut rng);
            for (j, &b) in bp.beta().iter().enumerate() {
                let v = bp.vectorize(&f, b);
                for (i, &c) in v.iter().enumerate() {
                    assert_eq!(c, Element::from_index((i == j) as u32));
                }
            }
            for x in f.elements() {
                assert_eq!(bp.devectorize(&f, &bp.vectorize(&f, x)), x);
                assert_eq!(bp.dual_devectorize(&f, &bp.dual_vectorize(&f, x)), x);
            }
            let step = if f.order() > 64 { 13 } else { 1 };
            for theta in f.elements().step_by(step) {
                let vt = bp.dual_vectorize(&f, theta);
                for alpha in f.elements().step_by(step) {
                    let va = bp.vectorize(&f, alpha);
                    let lhs = crate::linalg::dot(&f, &vt, &va);
                    assert_eq!(lhs, f.trace_to_subfield(f.mul(theta, alpha)));
                }
            }
        }
    }

    #[test]
    fn vectorize_is_injective() {
        let f = FieldTower::new(2, 1, 5).unwrap();
        let bp = BasisPair::standard(&f);
        let mut seen: Vec<Vec<Element>> = f.elements().map(|x| bp.vectorize(&f, x)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 32);
    }
}
