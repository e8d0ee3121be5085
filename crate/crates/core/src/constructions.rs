//! Explicit repair schemes and the linearized-polynomial solver they use.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{subfield_rank, BasisPair};
use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rs::RsCode;
use crate::scheme::RepairScheme;
use crate::subspace::Subspace;

/// `L(x) = Σ_j θ_j x^(q^j)`, a B-linear map on F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<Element>,
}

impl QPolynomial {
    pub fn new(coeffs: Vec<Element>) -> Self {
        QPolynomial { coeffs }
    }

    /// `L(x) = αx`.
    pub fn scalar(alpha: Element) -> Self {
        QPolynomial { coeffs: vec![alpha] }
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// The q-degree t (so the ordinary degree is `q^t`).
    pub fn q_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, tower: &FieldTower, x: Element) -> Element {
        self.coeffs.iter().enumerate().fold(Element::ZERO, |acc, (j, &c)| {
            tower.add(acc, tower.mul(c, tower.frobenius(x, j as i64)))
        })
    }

    /// The same map as an ordinary polynomial.
    pub fn to_poly(&self, tower: &FieldTower) -> Poly {
        let q = tower.q() as usize;
        let deg = q.pow(self.q_degree() as u32);
        let mut c = vec![Element::ZERO; deg + 1];
        for (j, &t) in self.coeffs.iter().enumerate() {
            c[q.pow(j as u32)] = t;
        }
        Poly::new(c)
    }
}

/// Finds `L` of q-degree `t` with `θ_t = 1` and `L(F) = ∩ β_i^(-1) K`.
///
/// `Tr(β L(x)) = 0` for all x is equivalent to
/// `Σ_j β^(q^j) · θ_(t-j)^(q^j) = 0`, a Moore system in the unknowns
/// `v_j = θ_(t-j)^(q^j)`.
pub fn qpoly_annihilator(tower: &FieldTower, betas: &[Element]) -> Result<QPolynomial> {
    let t = betas.len();
    if t == 0 {
        return Ok(QPolynomial::scalar(Element::ONE));
    }
    if t >= tower.ell() as usize {
        return Err(Error::ParamViolation(format!("need t < ell, got t = {t}")));
    }
    if subfield_rank(tower, betas) < t {
        return Err(Error::DependentBetas);
    }
    let rows: Vec<Vec<Element>> =
        betas.iter().map(|&b| (0..=t).map(|j| tower.frobenius(b, j as i64)).collect()).collect();
    let kernel = Matrix::from_rows(&rows, t + 1).nullspace(tower);
    let v = kernel
        .into_iter()
        .find(|v| !v[0].is_zero())
        .ok_or(Error::NoSolution)?;
    let scale = tower.inv(v[0]).ok_or(Error::NoSolution)?;
    let mut theta = vec![Element::ZERO; t + 1];
    for (j, &vj) in v.iter().enumerate() {
        theta[t - j] = tower.frobenius(tower.mul(vj, scale), -(j as i64));
    }
    debug_assert_eq!(theta[t], Element::ONE);
    Ok(QPolynomial { coeffs: theta })
}

/// How Construction 1 picks its primitive element θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaStrategy {
    /// At ℓ = 4, the first primitive root of `x² + x + ζ`. Other ℓ fall back
    /// to [`ThetaStrategy::Search`].
    PaperExample,
    /// The first primitive element, in index order, for which the four
    /// prescribed basis elements are independent.
    Search,
}

#[derive(Clone, Debug)]
pub struct Construction1 {
    pub scheme: RepairScheme,
    pub zeta: Element,
    pub theta: Element,
    /// The strategy that actually produced θ.
    pub strategy: ThetaStrategy,
    /// `η_1..η_4`.
    pub eta: [Element; 4],
    /// `λ_1..λ_4`.
    pub lambda: [Element; 4],
}

fn construction1_betas(tower: &FieldTower, zeta: Element, theta: Element) -> [Element; 4] {
    let sq = |x: Element| tower.mul(x, x);
    let t2 = sq(theta);
    let b1 = sq(tower.add(tower.add(t2, tower.mul(tower.add(zeta, Element::ONE), theta)), Element::ONE));
    let b2 = sq(tower.mul(zeta, theta));
    let b4 = sq(tower.add(theta, Element::ONE));
    [b1, b2, Element::ONE, b4]
}

/// Full-length scheme for `q = 2`, even `ℓ ≥ 4`, `r = 3`, built from four
/// quadratic polynomials and `ℓ - 4` constants.
pub fn construction1(tower: &FieldTower, strategy: ThetaStrategy) -> Result<Construction1> {
    let ell = tower.ell() as usize;
    if tower.q() != 2 || !ell.is_multiple_of(2) || ell < 4 {
        return Err(Error::ParamViolation(format!(
            "needs q = 2 and even ell >= 4, got q = {}, ell = {ell}",
            tower.q()
        )));
    }
    let zeta = tower
        .elements()
        .find(|&x| tower.multiplicative_order(x) == Some(3))
        .ok_or(Error::NoSuitableTheta)?;
    let independent = |theta: Element| subfield_rank(tower, &construction1_betas(tower, zeta, theta)) == 4;

    let paper = (strategy == ThetaStrategy::PaperExample && ell == 4)
        .then(|| {
            tower.elements().find(|&x| {
                tower.is_primitive(x)
                    && tower.add(tower.add(tower.mul(x, x), x), zeta).is_zero()
                    && independent(x)
            })
        })
        .flatten();
    let (theta, used) = match paper {
        Some(t) => (t, ThetaStrategy::PaperExample),
        None => (
            tower
                .elements()
                .find(|&x| tower.is_primitive(x) && independent(x))
                .ok_or(Error::NoSuitableTheta)?,
            ThetaStrategy::Search,
        ),
    };

    let mut beta: Vec<Element> = construction1_betas(tower, zeta, theta).to_vec();
    for x in tower.elements().skip(1) {
        if beta.len() == ell {
            break;
        }
        beta.push(x);
        if subfield_rank(tower, &beta) < beta.len() {
            beta.pop();
        }
    }
    let basis = BasisPair::dual_basis(tower, &beta)?;
    let g = basis.gamma();
    let eta = [Element::ONE, zeta, tower.mul(zeta, theta), theta];
    let omega = [g[2], tower.add(g[1], g[3]), tower.add(g[0], g[2]), g[3]];
    let mut lambda = [Element::ZERO; 4];
    for j in 0..4 {
        let b = if j < 2 { beta[0] } else { beta[1] };
        lambda[j] = tower.mul(tower.mul(eta[j], eta[j]), b);
    }
    let mut polys: Vec<Poly> = (0..4).map(|j| Poly::new(vec![omega[j], eta[j], lambda[j]])).collect();
    polys.extend(g[4..].iter().map(|&c| Poly::constant(c)));

    let code = RsCode::with_redundancy(tower, Subspace::full(tower), 3)?;
    let scheme = RepairScheme::new(tower, code, basis, polys, 0)?;
    Ok(Construction1 { scheme, zeta, theta, strategy: used, eta, lambda })
}

/// Parameters of Construction 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Construction2Params {
    pub d: u32,
    pub s: u32,
    pub m: u32,
    pub r: u64,
}

#[derive(Clone, Debug)]
pub struct Construction2 {
    pub scheme: RepairScheme,
    pub lpoly: QPolynomial,
    pub w: Subspace,
}

impl Construction2Params {
    pub fn validate(&self, tower: &FieldTower) -> Result<()> {
        let (q, ell) = (tower.q() as u64, tower.ell());
        let Construction2Params { d, s, m, r } = *self;
        let fail = |msg: alloc::string::String| Err(Error::ParamViolation(msg));
        if d == 0 || d > ell {
            return fail(format!("need 1 <= d <= ell, got d = {d}"));
        }
        if s >= d || s >= ell {
            return fail(format!("need s <= d - 1 and s < ell, got s = {s}"));
        }
        if r < q.pow(s) + 1 {
            return fail(format!("need r >= q^s + 1 = {}, got r = {r}", q.pow(s) + 1));
        }
        if m == 0 || m > ell - d + s + 1 {
            return fail(format!("need 1 <= m <= ell - d + s + 1 = {}, got m = {m}", ell - d + s + 1));
        }
        if ell % m != 0 {
            return fail(format!("need m | ell, got m = {m}, ell = {ell}"));
        }
        if q.pow(d) <= r {
            return fail(format!("need q^d > r, got q^d = {}, r = {r}", q.pow(d)));
        }
        Ok(())
    }
}

/// First elements of `pool`, in order, that extend `start` to `count`
/// elements independent over B.
fn greedy_independent(
    tower: &FieldTower,
    start: Vec<Element>,
    count: usize,
    pool: impl Iterator<Item = Element>,
    span_of: impl Fn(&[Element]) -> Vec<Element>,
) -> Vec<Element> {
    let mut chosen = start;
    for x in pool {
        if chosen.len() >= count {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(x);
        let spanned = span_of(&trial);
        if subfield_rank(tower, &spanned) == spanned.len() {
            chosen = trial;
        }
    }
    chosen
}

/// Scheme on an evaluation subspace of dimension d built from a
/// linearized polynomial; `m` polynomials are `γ_j L + γ_j`, the rest are
/// the constants `γ_j`.
pub fn construction2(tower: &FieldTower, params: Construction2Params) -> Result<Construction2> {
    params.validate(tower)?;
    let ell = tower.ell() as usize;
    let Construction2Params { d, s, m, r } = params;
    let (s, m) = (s as usize, m as usize);

    // Basis of GF(q^m) over B, then of F over GF(q^m), both starting at 1.
    let small: Vec<Element> = tower.elements().filter(|&x| tower.frobenius(x, m as i64) == x).collect();
    let inner = greedy_independent(tower, vec![Element::ONE], m, small.into_iter().skip(1), |v| v.to_vec());
    let outer = greedy_independent(
        tower,
        vec![Element::ONE],
        ell / m,
        tower.elements().skip(1),
        |lams| lams.iter().flat_map(|&l| inner.iter().map(move |&g| tower.mul(l, g))).collect(),
    );
    if inner.len() != m || outer.len() != ell / m {
        return Err(Error::NoSolution);
    }
    let gamma: Vec<Element> =
        outer.iter().flat_map(|&l| inner.iter().map(move |&g| tower.mul(l, g))).collect();
    let basis = BasisPair::dual_basis(tower, &gamma)?.swapped();
    let beta = basis.beta().to_vec();

    let lpoly = qpoly_annihilator(tower, &beta[1..=s])?;
    let kernels = (1..ell - d as usize + s + 1)
        .map(|i| Subspace::scaled_trace_kernel(tower, beta[i]))
        .collect::<Result<Vec<_>>>()?;
    let w = Subspace::intersect(tower, &kernels)?;
    let a = Subspace::preimage(tower, |x| lpoly.eval(tower, x), &w)?;
    debug_assert_eq!(a.dim(), d as usize);

    let lp = lpoly.to_poly(tower);
    let polys: Vec<Poly> = gamma
        .iter()
        .enumerate()
        .map(|(j, &g)| if j < m { lp.scale(tower, g).add(tower, &Poly::constant(g)) } else { Poly::constant(g) })
        .collect();
    let code = RsCode::with_redundancy(tower, a, r as usize)?;
    let scheme = RepairScheme::new(tower, code, basis, polys, 0)?;
    Ok(Construction2 { scheme, lpoly, w })
}

/// Full-length scheme with `m = s + 1` polynomials `L_j(x) + γ_j`, where
/// `L_j` has q-degree `s` and `L_j(F) = ∩_{i ≠ j, i ≤ m} β_i^(-1) K`.
/// Unlike [`construction2`] it needs no divisibility of ℓ by `m`.
pub fn full_length_construction(tower: &FieldTower, s: u32, r: u64) -> Result<RepairScheme> {
    let ell = tower.ell();
    let q = tower.q() as u64;
    if s >= ell {
        return Err(Error::ParamViolation(format!("need s < ell, got s = {s}")));
    }
    if r < q.pow(s) + 1 {
        return Err(Error::ParamViolation(format!("need r >= q^s + 1 = {}, got r = {r}", q.pow(s) + 1)));
    }
    if tower.order() as u64 <= r {
        return Err(Error::ParamViolation(format!("need q^ell > r, got r = {r}")));
    }
    let m = s as usize + 1;
    let basis = BasisPair::standard(tower);
    let beta = basis.beta();
    let mut polys = Vec::with_capacity(ell as usize);
    for (j, &g) in basis.gamma().iter().enumerate() {
        if j < m {
            let others: Vec<Element> = (0..m).filter(|&i| i != j).map(|i| beta[i]).collect();
            let l = qpoly_annihilator(tower, &others)?.to_poly(tower);
            polys.push(l.add(tower, &Poly::constant(g)));
        } else {
            polys.push(Poly::constant(g));
        }
    }
    let code = RsCode::with_redundancy(tower, Subspace::full(tower), r as usize)?;
    RepairScheme::new(tower, code, basis, polys, 0)
}
