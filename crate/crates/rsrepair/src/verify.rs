//! Numerical verification suites. Each suite compares a library result
//! against an independent computation (brute force, enumeration or a
//! closed form) and reports every disagreement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsrepair_core::bounds::{bmin, bmin_budget, r3cond_max_bruteforce, BoundQuery};
use rsrepair_core::constructions::{construction2, full_length_construction, qpoly_annihilator, Construction2Params};
use rsrepair_core::expsum::{subspace_char_sum, weil_check};
use rsrepair_core::linalg::Matrix;
use rsrepair_core::rs::dual_inner_product_check;
use rsrepair_core::scheme::nz_via_weight;
use rsrepair_core::{BasisPair, Element, FieldTower, Poly, RepairScheme, RsCode, Subspace};
use serde::Serialize;

use crate::error::{AppError, AppResult};
use crate::metrics::cross_check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    ExpSum,
    Weil,
    Char,
    Duality,
    Lemma5,
    R3Cond,
    Tightness,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::ExpSum, Suite::Weil, Suite::Char, Suite::Duality, Suite::Lemma5, Suite::R3Cond, Suite::Tightness];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ExpSum => "expsum",
            Suite::Weil => "weil",
            Suite::Char => "char",
            Suite::Duality => "duality",
            Suite::Lemma5 => "lemma5",
            Suite::R3Cond => "r3cond",
            Suite::Tightness => "tightness",
        }
    }
}

/// How much work randomized suites do. Exhaustive suites ignore `size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub size: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 1, size: 200 }
    }
}

const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub pass: bool,
    pub checks: u64,
    pub failures: u64,
    /// The first few failures, described.
    pub details: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite: suite.name(), pass: true, ..Default::default() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            self.pass = false;
            if self.details.len() < MAX_REPORTED {
                self.details.push(describe());
            }
        }
    }

    fn fail(&mut self, what: String) {
        self.check(false, || what);
    }
}

pub fn run(suite: Suite, opts: Options) -> AppResult<SuiteReport> {
    match suite {
        Suite::ExpSum => expsum(opts),
        Suite::Weil => weil(opts),
        Suite::Char => char_dichotomy(),
        Suite::Duality => duality(opts),
        Suite::Lemma5 => trace_kernels(),
        Suite::R3Cond => r3cond(),
        Suite::Tightness => tightness(),
    }
}

fn tower(p: u32, a: u32, ell: u32) -> AppResult<FieldTower> {
    Ok(FieldTower::new(p, a, ell)?)
}

fn random_element(f: &FieldTower, rng: &mut ChaCha8Rng) -> Element {
    Element::from_index(rng.gen_range(0..f.order()))
}

/// A random normalized-then-mixed scheme with the parameter mix the
/// agreement check is specified over.
pub fn random_scheme(rng: &mut ChaCha8Rng) -> AppResult<(FieldTower, RepairScheme)> {
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let ell = rng.gen_range(2..=6);
    let f = tower(p, 1, ell)?;
    let d = rng.gen_range(2..=ell) as usize;
    let r = rng.gen_range(2..=3);
    let m0 = rng.gen_range(0..=ell as usize);
    let s = RepairScheme::random(&f, d, r, m0, rng)?;
    Ok((f, s))
}

/// Direct, weight-formula and character-sum I/O cost on random schemes,
/// plus the weight formula against a column scan on random matrices.
fn expsum(opts: Options) -> AppResult<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::ExpSum);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..opts.size {
        let (f, s) = random_scheme(&mut rng)?;
        match cross_check(&f, &s) {
            Ok(c) => {
                let nf = s.normalize(&f)?;
                let reduced = nf.io_cost_from_reduced(&f);
                rep.check(reduced == c.direct, || format!("scheme {i}: reduced-block cost {reduced} vs {}", c.direct));
            }
            Err(AppError::Mismatch(m)) => rep.fail(format!("scheme {i} over GF({}^{}): {m}", f.p(), f.ell())),
            Err(e) => return Err(e),
        }
    }
    let fields = [tower(2, 1, 4)?, tower(3, 1, 2)?, tower(2, 2, 2)?];
    for i in 0..opts.size * 5 / 2 {
        let f = &fields[i % fields.len()];
        let sub = f.subfield_elements();
        let (k, m) = (rng.gen_range(1..=4), rng.gen_range(1..=6));
        let rows: Vec<Vec<Element>> =
            (0..k).map(|_| (0..m).map(|_| sub[rng.gen_range(0..sub.len())]).collect()).collect();
        let g = Matrix::from_rows(&rows, m);
        let scan = g.nonzero_columns(f) as u64;
        let weight = nz_via_weight(f, &g)?;
        rep.check(scan == weight, || format!("matrix {i}: weight formula {weight}, column scan {scan}"));
    }
    Ok(rep)
}

/// `|Σ χ(f(α))| ≤ (e-1) q^(ℓ/2)` for random f with `p ∤ e`.
fn weil(opts: Options) -> AppResult<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Weil);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fields = [tower(2, 1, 5)?, tower(2, 1, 8)?, tower(3, 1, 4)?, tower(5, 1, 3)?, tower(2, 2, 3)?];
    for i in 0..opts.size {
        let f = &fields[i % fields.len()];
        let p = f.p() as usize;
        let e = loop {
            let e = rng.gen_range(1..=9);
            if e % p != 0 {
                break e;
            }
        };
        let mut coeffs: Vec<Element> = (0..e).map(|_| random_element(f, &mut rng)).collect();
        let lead = loop {
            let x = random_element(f, &mut rng);
            if !x.is_zero() {
                break x;
            }
        };
        coeffs.push(lead);
        let r = weil_check(f, &Poly::new(coeffs))?;
        rep.check(r.pass, || format!("GF({}^{}), degree {e}: |sum| = {} > {}", f.p(), f.degree(), r.magnitude, r.bound));
    }
    Ok(rep)
}

/// `Σ_{α∈G} χ(βα)` is `|G|` or 0 for every subspace G and scalar β, over
/// GF(16), GF(81) and GF(16) as a GF(4)-space. The library routine
/// errors if its summation and its membership test disagree; here the
/// sum is also recomputed from scratch.
fn char_dichotomy() -> AppResult<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Char);
    for f in [tower(2, 1, 4)?, tower(3, 1, 4)?, tower(2, 2, 2)?] {
        let p = f.p() as usize;
        for dim in 0..=f.ell() as usize {
            for g in Subspace::all_of_dim(&f, dim) {
                let elems = g.elements(&f)?;
                for beta in f.elements().skip(1) {
                    let mut counts = vec![0i64; p];
                    for &a in &elems {
                        counts[f.absolute_trace(f.mul(beta, a)) as usize] += 1;
                    }
                    let size = elems.len() as i64;
                    let trivial = counts[0] == size;
                    let vanishes = counts.iter().all(|&c| c == counts[0]);
                    let expected = if trivial { size } else { 0 };
                    match subspace_char_sum(&f, &g, beta) {
                        Ok(v) => rep.check((trivial || vanishes) && v == expected, || {
                            format!("GF({}^{}) dim {dim}, beta {}: sum {v}, counts {counts:?}", f.p(), f.degree(), beta.index())
                        }),
                        Err(e) => rep.fail(format!("GF({}^{}) dim {dim}: {e}", f.p(), f.degree())),
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Codewords are orthogonal to dual codewords, over F and after
/// vectorization; random bases pair with their duals.
fn duality(opts: Options) -> AppResult<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Duality);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fields = [tower(2, 1, 4)?, tower(3, 1, 3)?, tower(2, 2, 2)?, tower(2, 1, 6)?];
    let rounds = (opts.size / 10).max(1);
    for i in 0..rounds {
        let f = &fields[i % fields.len()];
        let ell = f.ell() as usize;
        let d = rng.gen_range(1..=ell);
        let mut gens = Vec::new();
        let mut a = Subspace::zero(f);
        while a.dim() < d {
            gens.push(random_element(f, &mut rng));
            a = Subspace::span(f, &gens);
        }
        let n = a.elements(f)?.len();
        let k = rng.gen_range(1..n);
        let code = RsCode::new(f, a, k)?;
        let basis = BasisPair::random(f, &mut rng);
        let r = dual_inner_product_check(f, &code, &basis, 20, rng.gen());
        rep.check(r.passed(), || format!("round {i}: {r:?}"));
        for (x, &b) in basis.beta().iter().enumerate() {
            for (y, &g) in basis.gamma().iter().enumerate() {
                let t = f.trace_to_subfield(f.mul(b, g));
                let want = if x == y { Element::ONE } else { Element::ZERO };
                rep.check(t == want, || format!("round {i}: Tr(beta_{x} gamma_{y}) = {}", t.index()));
            }
        }
    }
    Ok(rep)
}

/// Every β-tuple whose span has dimension `t ≤ 3` (given by reduced
/// bases, with and without a redundant extra element):
/// `|∩ β_j^(-1) K| = q^(ℓ-t)` by counting, and the q-polynomial for the
/// tuple has exactly that set as its image. GF(2^ℓ) for ℓ ≤ 8, GF(3^ℓ)
/// for ℓ ≤ 5, GF(4^3).
fn trace_kernels() -> AppResult<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Lemma5);
    let mut fields: Vec<FieldTower> = (2..=8).map(|l| tower(2, 1, l)).collect::<AppResult<_>>()?;
    fields.extend((2..=5).map(|l| tower(3, 1, l)).collect::<AppResult<Vec<_>>>()?);
    fields.push(tower(2, 2, 3)?);
    for f in &fields {
        let ell = f.ell() as usize;
        let q = f.q() as usize;
        let all: Vec<Element> = f.elements().collect();
        for t in 1..=3.min(ell) {
            for s in Subspace::all_of_dim(f, t) {
                let betas = s.basis().to_vec();
                let in_kernels = |x: Element, bs: &[Element]| bs.iter().all(|&b| f.trace_to_subfield(f.mul(b, x)).is_zero());
                let count = all.iter().filter(|&&x| in_kernels(x, &betas)).count();
                let want = q.pow((ell - t) as u32);
                rep.check(count == want, || format!("GF({}^{}), span dim {t}: |meet| = {count}, want {want}", f.p(), f.degree()));
                if t >= 2 {
                    let mut padded = betas.clone();
                    padded.push(f.add(betas[0], betas[1]));
                    let c2 = all.iter().filter(|&&x| in_kernels(x, &padded)).count();
                    rep.check(c2 == want, || format!("GF({}^{}), dependent tuple: |meet| = {c2}, want {want}", f.p(), f.degree()));
                }
                if t < ell {
                    let l = qpoly_annihilator(f, &betas)?;
                    let mut image: Vec<Element> = all.iter().map(|&x| l.eval(f, x)).collect();
                    image.sort();
                    image.dedup();
                    let inside = image.iter().all(|&y| in_kernels(y, &betas));
                    rep.check(inside && image.len() == want, || {
                        format!("GF({}^{}), t = {t}: image size {}, contained {inside}", f.p(), f.degree(), image.len())
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Literal minimum of `Σ b_i` over `b ∈ [0, m]^(n-1)` subject to the budget,
/// enumerating how many `b_i` take each value.
pub fn bmin_enumerated(q: u64, ell: u32, d: u32, m: u32, r: u64) -> AppResult<Option<u64>> {
    let budget = bmin_budget(q, ell, d, m, r)?;
    let helpers = q.pow(d) - 1;
    let mut best: Option<u64> = None;
    let mut counts = vec![0u64; m as usize + 1];
    fn go(
        v: usize,
        left: u64,
        counts: &mut Vec<u64>,
        q: u64,
        m: u32,
        budget: i128,
        best: &mut Option<u64>,
    ) {
        if v == counts.len() - 1 {
            counts[v] = left;
            let cost: i128 = counts.iter().enumerate().map(|(b, &c)| c as i128 * (q as i128).pow(m - b as u32)).sum();
            if cost <= budget {
                let total: u64 = counts.iter().enumerate().map(|(b, &c)| b as u64 * c).sum();
                *best = Some(best.map_or(total, |x| x.min(total)));
            }
            return;
        }
        for c in 0..=left {
            counts[v] = c;
            go(v + 1, left - c, counts, q, m, budget, best);
        }
    }
    go(0, helpers, &mut counts, q, m, budget, &mut best);
    Ok(best)
}

/// The exhaustive `r = 3` maximization against `(ℓ-d+2) 2^(d-1)`, and the
/// balancing solver against literal enumeration.
fn r3cond() -> AppResult<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::R3Cond);
    for ell in 2..=8u32 {
        for d in 2..=ell {
            let head = ell - d + 2;
            let res = r3cond_max_bruteforce(ell, d, ell)?;
            let want = (head as u128) << (d - 1);
            rep.check(res.max() == Some(want), || format!("ell {ell}, d {d}: max {:?}, want {want}", res.max()));
            let shape_ok = res.argmax.iter().any(|(t, m, _)| t == m && *m <= 2 * head);
            rep.check(shape_ok, || format!("ell {ell}, d {d}: no maximizer with t' = m <= {}", 2 * head));
        }
    }
    for (q, d) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (7, 1), (8, 1), (9, 1), (16, 1)] {
        for ell in d..=(d + 3).min(8) {
            if q.pow(ell) > 1 << 16 {
                continue;
            }
            for r in [2u64, 3] {
                if r == 3 && q != 2 {
                    continue;
                }
                for m in 0..=ell {
                    let solver = bmin(q, ell, d, m, r).ok();
                    let literal = bmin_enumerated(q, ell, d, m, r)?;
                    rep.check(solver == literal, || {
                        format!("bmin q {q} ell {ell} d {d} m {m} r {r}: solver {solver:?}, literal {literal:?}")
                    });
                }
            }
        }
    }
    for (r, want) in [(2u64, 48i64), (3, 38)] {
        let bq = BoundQuery::new(2, 4, 4, r)?;
        let via = bq.bandwidth_via_bmin()?;
        let closed = bq.bandwidth_lower_bound()?.value;
        rep.check(via == want && closed == want, || format!("GF(16), r = {r}: bmin route {via}, closed form {closed}, want {want}"));
    }
    Ok(rep)
}

/// Where a bound is known to be tight, a constructed scheme meets it:
/// `r = 2` with `(ℓ-d+1) | ℓ`, and `r = 3`, `q = 2` with `d = ℓ` or
/// `(ℓ-d+2) | ℓ`, over every field with `q^ℓ ≤ 2^12`.
pub fn tightness() -> AppResult<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Tightness);
    for case in tightness_cases() {
        let f = tower(case.p, case.a, case.ell)?;
        let scheme = match case.kind {
            TightKind::Linearized(params) => construction2(&f, params)?.scheme,
            TightKind::FullLength { s } => full_length_construction(&f, s, case.r)?,
        };
        let io = scheme.metrics_direct(&f).io_cost as i64;
        let lb = BoundQuery::new(f.q() as u64, case.ell, case.d, case.r)?.io_lower_bound()?;
        rep.check(io == lb.value && lb.tight_known, || {
            format!("q {} ell {} d {} r {}: io {io}, bound {}", f.q(), case.ell, case.d, case.r, lb.value)
        });
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug)]
pub enum TightKind {
    Linearized(Construction2Params),
    FullLength { s: u32 },
}

#[derive(Clone, Copy, Debug)]
pub struct TightCase {
    pub p: u32,
    pub a: u32,
    pub ell: u32,
    pub d: u32,
    pub r: u64,
    pub kind: TightKind,
}

/// Every parameter tuple in the tight regimes with `q^ℓ ≤ 2^12`, `ℓ ≥ 2`
/// and `r < q^d`. Full-length codes whose `m` does not divide ℓ use the
/// full-length construction.
pub fn tightness_cases() -> Vec<TightCase> {
    let mut out = Vec::new();
    for (p, a) in [(2u32, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
        let q = (p as u64).pow(a);
        let mut ell = 2u32;
        while q.pow(ell) <= 1 << 12 {
            for d in 1..=ell {
                let n = q.pow(d);
                let mut push = |r: u64, s: u32, m: u32| {
                    if r >= n {
                        return;
                    }
                    let kind = if ell.is_multiple_of(m) {
                        TightKind::Linearized(Construction2Params { d, s, m, r })
                    } else if d == ell {
                        TightKind::FullLength { s }
                    } else {
                        return;
                    };
                    out.push(TightCase { p, a, ell, d, r, kind });
                };
                if ell.is_multiple_of(ell - d + 1) {
                    push(2, 0, ell - d + 1);
                }
                if q == 2 && (d == ell || ell.is_multiple_of(ell - d + 2)) {
                    push(3, 1, ell - d + 2);
                }
            }
            ell += 1;
        }
    }
    out
}
