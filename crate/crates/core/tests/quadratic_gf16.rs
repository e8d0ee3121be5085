//! The four-quadratic scheme over GF(16), checked against hand-computed
//! values.

use rsrepair_core::constructions::{construction1, Construction1, ThetaStrategy};
use rsrepair_core::linalg::Matrix;
use rsrepair_core::{Element, FieldTower};

fn setup() -> (FieldTower, Construction1) {
    let f = FieldTower::new(2, 1, 4).unwrap();
    let c = construction1(&f, ThetaStrategy::PaperExample).unwrap();
    (f, c)
}

fn bits(rows: [[u32; 4]; 4]) -> Matrix<Element> {
    let rows: Vec<Vec<Element>> = rows.iter().map(|r| r.iter().map(|&x| Element::from_index(x)).collect()).collect();
    Matrix::from_rows(&rows, 4)
}

#[test]
fn theta_is_root_of_defining_quadratic() {
    let (f, c) = setup();
    assert_eq!(c.strategy, ThetaStrategy::PaperExample);
    assert!(f.is_primitive(c.theta));
    let v = f.add(f.add(f.mul(c.theta, c.theta), c.theta), c.zeta);
    assert!(v.is_zero());
    assert_eq!(f.multiplicative_order(c.zeta), Some(3));
}

#[test]
fn basis_and_dual_are_theta_powers() {
    let (f, c) = setup();
    let th = |k: u64| f.pow(c.theta, k);
    assert_eq!(c.scheme.basis().beta(), &[th(14), th(12), Element::ONE, th(8)]);
    assert_eq!(c.scheme.basis().gamma(), &[th(8), th(2), th(11), th(5)]);
}

#[test]
fn polynomials_match() {
    let (f, c) = setup();
    let th = |k: u64| f.pow(c.theta, k);
    let g = c.scheme.basis().gamma();
    let expected = [
        [g[2], Element::ONE, th(14)],
        [f.add(g[1], g[3]), th(5), th(9)],
        [f.add(g[0], g[2]), th(6), th(9)],
        [g[3], th(1), th(14)],
    ];
    for (poly, want) in c.scheme.polys().iter().zip(expected) {
        assert_eq!(poly.coeffs(), &want);
    }
}

#[test]
fn deficient_repair_matrices() {
    let (f, c) = setup();
    let th = |k: u64| f.pow(c.theta, k);
    let w7 = bits([[0, 1, 1, 1], [0, 0, 0, 0], [0, 0, 1, 1], [1, 0, 0, 1]]);
    let w9 = bits([[0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 0], [1, 0, 1, 1]]);
    let w11 = bits([[0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0], [1, 0, 1, 0]]);
    assert_eq!(c.scheme.repair_matrix_at(&f, th(6)), w7);
    assert_eq!(c.scheme.repair_matrix_at(&f, th(8)), w9);
    assert_eq!(c.scheme.repair_matrix_at(&f, th(10)), w11);

    // Points α_1 = 0, α_i = θ^(i-1); only i = 7, 9, 11 lose rank.
    let mut deficient = Vec::new();
    for i in 1..=16u64 {
        let alpha = if i == 1 { Element::ZERO } else { th(i - 1) };
        let w = c.scheme.repair_matrix_at(&f, alpha);
        if w.rank(&f) < w.nonzero_columns(&f) {
            deficient.push(i);
        }
    }
    assert_eq!(deficient, vec![7, 9, 11]);
}

#[test]
fn io_cost_and_bandwidth() {
    let (f, c) = setup();
    let m = c.scheme.metrics_direct(&f);
    assert_eq!(m.io_cost, 44);
    assert_eq!(m.bandwidth, 41);
}

#[test]
fn quadratic_coefficient_relations() {
    for ell in [4u32, 6, 8] {
        let f = FieldTower::new(2, 1, ell).unwrap();
        let c = construction1(&f, ThetaStrategy::Search).unwrap();
        let b = c.scheme.basis().beta();
        let (l, e) = (c.lambda, c.eta);
        let sq = |x: Element| f.mul(x, x);
        let sum = |xs: &[Element]| xs.iter().fold(Element::ZERO, |a, &x| f.add(a, x));
        assert_eq!(sum(&[l[0], l[2], l[3]]), f.mul(b[2], sq(sum(&[e[0], e[2], e[3]]))), "ell = {ell}");
        assert_eq!(sum(&[l[1], l[3]]), f.mul(b[2], sq(sum(&[e[1], e[3]]))), "ell = {ell}");
        assert_eq!(sum(&[l[1], l[2], l[3]]), f.mul(b[3], sq(sum(&[e[1], e[2], e[3]]))), "ell = {ell}");
        assert_eq!(sum(&[l[0], l[2]]), f.mul(b[3], sq(sum(&[e[0], e[2]]))), "ell = {ell}");
    }
}

/// `U_s = {u ∈ F_2^4 : λ_u = β_s η_u²}` as bitmasks (bit j for e_(j+1)).
fn u_sets(f: &FieldTower, c: &Construction1) -> Vec<Vec<u32>> {
    let b = c.scheme.basis().beta();
    (0..4)
        .map(|s| {
            (0u32..16)
                .filter(|&u| {
                    let pick = |xs: &[Element; 4]| {
                        (0..4).filter(|j| u >> j & 1 == 1).fold(Element::ZERO, |a, j| f.add(a, xs[j]))
                    };
                    let eta = pick(&c.eta);
                    pick(&c.lambda) == f.mul(b[s], f.mul(eta, eta))
                })
                .collect()
        })
        .collect()
}

#[test]
fn coordinate_subspaces() {
    let (f, c) = setup();
    let span = |a: u32, b: u32| {
        let mut v = vec![0, a, b, a ^ b];
        v.sort();
        v
    };
    let (e1, e2, e3, e4) = (1u32, 2, 4, 8);
    let expected = vec![
        span(e1, e2),
        span(e3, e4),
        span(e1 ^ e3 ^ e4, e2 ^ e4),
        span(e2 ^ e3 ^ e4, e1 ^ e3),
    ];
    let got = u_sets(&f, &c);
    assert_eq!(got, expected);

    // ω_u for u in U_s stays in β_s^(-1) K.
    let b = c.scheme.basis().beta();
    let omega: Vec<Element> = c.scheme.polys()[..4].iter().map(|g| g.coeff(0)).collect();
    for (s, set) in got.iter().enumerate() {
        for &u in set {
            let w = (0..4).filter(|j| u >> j & 1 == 1).fold(Element::ZERO, |a, j| f.add(a, omega[j]));
            assert!(f.trace_to_subfield(f.mul(b[s], w)).is_zero());
        }
    }
}
