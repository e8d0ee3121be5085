use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsrepair_core::constructions::{construction1, construction2, Construction2Params, ThetaStrategy};
use rsrepair_core::expsum::io_cost_expsum;
use rsrepair_core::linalg::Matrix;
use rsrepair_core::scheme::{repair_node, AccessCounter, RepairPlan};
use rsrepair_core::{Element, FieldTower, RepairScheme};

fn random_scheme(rng: &mut ChaCha8Rng) -> (FieldTower, RepairScheme) {
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let max_ell = if p == 2 { 6 } else { 4 };
    let ell = rng.gen_range(2..=max_ell);
    let f = FieldTower::new(p, 1, ell).unwrap();
    let d = rng.gen_range(2..=ell) as usize;
    let r = rng.gen_range(2..=3);
    let m0 = rng.gen_range(0..=ell as usize);
    let s = RepairScheme::random(&f, d, r, m0, rng).unwrap();
    (f, s)
}

fn random_invertible(f: &FieldTower, ell: usize, rng: &mut ChaCha8Rng) -> Matrix<Element> {
    let sub = f.subfield_elements();
    loop {
        let rows: Vec<Vec<Element>> =
            (0..ell).map(|_| (0..ell).map(|_| sub[rng.gen_range(0..sub.len())]).collect()).collect();
        let m = Matrix::from_rows(&rows, ell);
        if m.rank(f) == ell {
            return m;
        }
    }
}

#[test]
fn three_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..60 {
        let (f, s) = random_scheme(&mut rng);
        let direct = s.metrics_direct(&f);
        let weight = s.metrics_weight(&f).unwrap();
        assert_eq!(direct.per_node, weight.per_node);
        assert_eq!(direct.io_cost, weight.io_cost);
        let nf = s.normalize(&f).unwrap();
        assert_eq!(io_cost_expsum(&f, &nf).unwrap(), direct.io_cost);
        assert_eq!(nf.io_cost_from_reduced(&f), direct.io_cost);
    }
}

#[test]
fn equivalent_schemes_share_metrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let (f, s) = random_scheme(&mut rng);
        let m = random_invertible(&f, s.ell(), &mut rng);
        let t = s.transform(&f, &m).unwrap();
        assert_eq!(s.metrics_direct(&f), t.metrics_direct(&f));
        // W̃_i = M W_i
        for i in 0..s.code().n() {
            assert_eq!(t.repair_matrix(&f, i), m.mul(&f, &s.repair_matrix(&f, i)));
        }
    }
}

#[test]
fn normal_form_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let (f, s) = random_scheme(&mut rng);
        let nf = s.normalize(&f).unwrap();
        let polys = nf.scheme.polys();
        assert!(polys[nf.m..].iter().all(|g| g.is_constant()));
        assert!(nf.t() <= nf.m);
        // No nonzero combination of the first m polynomials is constant.
        for u in rsrepair_core::scheme::nonzero_combinations(&f, nf.m) {
            let g = rsrepair_core::Poly::linear_combination(&f, &u, &polys[..nf.m]);
            assert!(!g.is_constant());
        }
    }
}

#[test]
fn rank_splits_when_support_is_full() {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..60 {
        let (f, s) = random_scheme(&mut rng);
        let nf = s.normalize(&f).unwrap();
        if nf.t() != nf.m {
            continue;
        }
        checked += 1;
        let ell = s.ell();
        for i in 0..s.code().n() {
            let full = nf.scheme.repair_matrix(&f, i).rank(&f);
            assert_eq!(full, nf.reduced_matrix(&f, i).rank(&f) + ell - nf.m);
        }
    }
    assert!(checked > 5);
}

#[test]
fn repair_recovers_symbol_and_matches_tallies() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for trial in 0..25u64 {
        let (f, s) = random_scheme(&mut rng);
        let metrics = s.metrics_direct(&f);
        let plan = RepairPlan::new(&f, &s).unwrap();
        for seed in 0..4 {
            let c = s.code().random_codeword(&f, trial * 100 + seed);
            let mut counter = AccessCounter::new(s.code().n());
            let got = plan.repair(&f, s.basis(), &c, &mut counter).unwrap();
            assert_eq!(got, c[s.target()]);
            assert_eq!(counter.total_accessed(), metrics.io_cost);
            assert_eq!(counter.total_transmitted(), metrics.bandwidth);
        }
    }
}

#[test]
fn constructions_repair_correctly() {
    let f = FieldTower::new(2, 1, 6).unwrap();
    let schemes = [
        construction1(&f, ThetaStrategy::Search).unwrap().scheme,
        construction2(&f, Construction2Params { d: 5, s: 1, m: 3, r: 3 }).unwrap().scheme,
    ];
    for s in &schemes {
        let metrics = s.metrics_direct(&f);
        for seed in 0..10 {
            let c = s.code().random_codeword(&f, seed);
            let mut counter = AccessCounter::new(s.code().n());
            assert_eq!(repair_node(&f, s, &c, &mut counter).unwrap(), c[0]);
            assert_eq!(counter.total_accessed(), metrics.io_cost);
            assert_eq!(counter.total_transmitted(), metrics.bandwidth);
        }
    }
}

#[test]
fn every_node_is_repairable_by_retargeting() {
    let f = FieldTower::new(2, 1, 4).unwrap();
    let s = construction2(&f, Construction2Params { d: 3, s: 0, m: 2, r: 2 }).unwrap().scheme;
    let c = s.code().random_codeword(&f, 99);
    let mut repaired = 0;
    for i in 0..s.code().n() {
        if let Ok(t) = s.retarget(&f, i) {
            let mut counter = AccessCounter::new(s.code().n());
            assert_eq!(repair_node(&f, &t, &c, &mut counter).unwrap(), c[i]);
            repaired += 1;
        }
    }
    assert!(repaired >= 1);
}
