//! Univariate polynomials over F, stored low-to-high.

use alloc::vec::Vec;

use crate::gf::{Element, FieldTower};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Element>,
}

impl Poly {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<Element>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Element) -> Self {
        Poly::new(alloc::vec![c])
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Element {
        self.coeffs.get(i).copied().unwrap_or(Element::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, tower: &FieldTower, x: Element) -> Element {
        self.coeffs
            .iter()
            .rev()
            .fold(Element::ZERO, |acc, &c| tower.add(tower.mul(acc, x), c))
    }

    pub fn add(&self, tower: &FieldTower, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| tower.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, tower: &FieldTower, c: Element) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| tower.mul(a, c)).collect())
    }

    /// `Σ c_j p_j`.
    pub fn linear_combination(tower: &FieldTower, cs: &[Element], ps: &[Poly]) -> Poly {
        cs.iter()
            .zip(ps)
            .fold(Poly::zero(), |acc, (&c, p)| if c.is_zero() { acc } else { acc.add(tower, &p.scale(tower, c)) })
    }
}
