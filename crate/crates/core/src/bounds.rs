//! Lower bounds on I/O cost and repair bandwidth, plus brute-force solvers
//! for the optimization problems behind them.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    Io,
    Bandwidth,
}

/// Parameters of a bound query. `n = q^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub q: u64,
    pub ell: u32,
    pub d: u32,
    pub r: u64,
}

/// Which bound produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Full-length codes with `r ≤ p`, from the Weil estimate.
    IoWeil,
    /// `r = 2`, any q.
    IoRedundancyTwo,
    /// `r = 3`, `q = 2`.
    IoRedundancyThree,
    /// `r = 2`, `d = ℓ`, `q > 2`.
    BandwidthFullLength,
    /// `r = 2`, `d = ℓ`, `q = 2`.
    BandwidthFullLengthBinary,
    /// `r = 2`, `d < ℓ`, `(ℓ-d+1) | ℓ`.
    BandwidthDivisible,
    /// `r = 3`, `q = 2`, `d = ℓ` or `(ℓ-d+2) | ℓ`.
    BandwidthRedundancyThree,
}

impl BoundKind {
    pub fn quantity(self) -> Quantity {
        match self {
            BoundKind::IoWeil | BoundKind::IoRedundancyTwo | BoundKind::IoRedundancyThree => Quantity::Io,
            _ => Quantity::Bandwidth,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: i64,
    pub kind: BoundKind,
    /// Whether a construction is known to meet the bound with equality.
    pub tight_known: bool,
}

impl BoundQuery {
    pub fn new(q: u64, ell: u32, d: u32, r: u64) -> Result<Self> {
        if crate::gf::prime_power(q).is_none() {
            return Err(Error::ParamViolation(format!("q = {q} is not a prime power")));
        }
        if d == 0 || d > ell {
            return Err(Error::ParamViolation(format!("need 1 <= d <= ell, got d = {d}, ell = {ell}")));
        }
        if r < 2 {
            return Err(Error::ParamViolation(format!("need r >= 2, got {r}")));
        }
        let n = q.checked_pow(d).ok_or_else(|| Error::ParamViolation("q^d overflows".into()))?;
        if r >= n {
            return Err(Error::ParamViolation(format!("need r < n = {n}")));
        }
        q.checked_pow(ell).ok_or_else(|| Error::ParamViolation("q^ell overflows".into()))?;
        Ok(BoundQuery { q, ell, d, r })
    }

    pub fn n(&self) -> u64 {
        self.q.pow(self.d)
    }

    fn full(&self) -> i64 {
        ((self.n() - 1) * self.ell as u64) as i64
    }

    fn p(&self) -> u64 {
        crate::gf::prime_power(self.q).map(|(p, _)| p as u64).unwrap_or(self.q)
    }

    /// A specific I/O bound, if its hypotheses hold.
    pub fn io_bound(&self, kind: BoundKind) -> Result<Bound> {
        let (q, ell, d, r) = (self.q, self.ell as u64, self.d as u64, self.r);
        let unsupported = |why: &str| Err(Error::UnsupportedRegime(why.into()));
        match kind {
            BoundKind::IoWeil => {
                if d != ell || r > self.p() || ell < 2 {
                    return unsupported("needs d = ell >= 2 and r <= char(F)");
                }
                // (r-2)(q-1) q^(ℓ/2 - 1), floored exactly when ℓ is odd.
                let c = (r - 2) as u128 * (q - 1) as u128;
                let slack = if ell % 2 == 0 {
                    c * (q as u128).pow(ell as u32 / 2 - 1)
                } else {
                    isqrt(c * c * (q as u128).pow(ell as u32 - 2))
                };
                let value = self.full() - q.pow(ell as u32 - 1) as i64 - slack as i64;
                Ok(Bound { value, kind, tight_known: r == 2 })
            }
            BoundKind::IoRedundancyTwo => {
                if r != 2 {
                    return unsupported("needs r = 2");
                }
                let value = self.full() - ((ell - d + 1) * q.pow(d as u32 - 1)) as i64;
                Ok(Bound { value, kind, tight_known: ell % (ell - d + 1) == 0 })
            }
            BoundKind::IoRedundancyThree => {
                if r != 3 || q != 2 {
                    return unsupported("needs r = 3 and q = 2");
                }
                let value = self.full() - ((ell - d + 2) << (d - 1)) as i64;
                let tight = d == ell || ell % (ell - d + 2) == 0;
                Ok(Bound { value, kind, tight_known: tight })
            }
            _ => unsupported("not an I/O bound"),
        }
    }

    /// Every applicable I/O bound.
    pub fn io_bounds(&self) -> Vec<Bound> {
        [BoundKind::IoWeil, BoundKind::IoRedundancyTwo, BoundKind::IoRedundancyThree]
            .into_iter()
            .filter_map(|k| self.io_bound(k).ok())
            .collect()
    }

    /// The strongest applicable I/O bound.
    pub fn io_lower_bound(&self) -> Result<Bound> {
        best(self.io_bounds(), "no I/O bound covers these parameters")
    }

    /// A specific bandwidth bound, if its hypotheses hold.
    pub fn bandwidth_bound(&self, kind: BoundKind) -> Result<Bound> {
        let (q, ell, d, r) = (self.q, self.ell as i64, self.d as i64, self.r);
        let n1 = (self.n() - 1) as i64;
        let unsupported = |why: &str| Err(Error::UnsupportedRegime(why.into()));
        let value = match kind {
            BoundKind::BandwidthFullLength => {
                if r != 2 || d != ell || q <= 2 {
                    return unsupported("needs r = 2, d = ell, q > 2");
                }
                n1 * ell - pow_i(q, ell - 1)
            }
            BoundKind::BandwidthFullLengthBinary => {
                if r != 2 || d != ell || q != 2 || ell < 2 {
                    return unsupported("needs r = 2, d = ell >= 2, q = 2");
                }
                n1 * ell - 3 * pow_i(2, ell - 2)
            }
            BoundKind::BandwidthDivisible => {
                if r != 2 || d >= ell || ell % (ell - d + 1) != 0 {
                    return unsupported("needs r = 2, d < ell, (ell - d + 1) | ell");
                }
                n1 * d - ceil_pow(q, 2 * d - ell - 1)
            }
            BoundKind::BandwidthRedundancyThree => {
                if r != 3 || q != 2 || !(d == ell || ell % (ell - d + 2) == 0) {
                    return unsupported("needs r = 3, q = 2, and d = ell or (ell - d + 2) | ell");
                }
                n1 * (d - 1) - ceil_pow(2, 2 * d - ell - 1) + floor_pow(2, 3 * d - 2 * ell - 4)
            }
            _ => return unsupported("not a bandwidth bound"),
        };
        let tight_known = matches!(kind, BoundKind::BandwidthFullLength | BoundKind::BandwidthFullLengthBinary);
        Ok(Bound { value, kind, tight_known })
    }

    pub fn bandwidth_bounds(&self) -> Vec<Bound> {
        [
            BoundKind::BandwidthFullLength,
            BoundKind::BandwidthFullLengthBinary,
            BoundKind::BandwidthDivisible,
            BoundKind::BandwidthRedundancyThree,
        ]
        .into_iter()
        .filter_map(|k| self.bandwidth_bound(k).ok())
        .collect()
    }

    pub fn bandwidth_lower_bound(&self) -> Result<Bound> {
        best(self.bandwidth_bounds(), "no bandwidth bound covers these parameters")
    }

    /// The bandwidth bound recomputed from [`bmin`]: the minimum over the
    /// admissible `m` of `(n-1)(ℓ-m) + bmin(m)`.
    pub fn bandwidth_via_bmin(&self) -> Result<i64> {
        let (q, ell, d, r) = (self.q, self.ell, self.d, self.r);
        let ms: Vec<u32> = match r {
            2 if d == ell && q == 2 => (1..=2.min(ell)).collect(),
            2 if d == ell => [1].into(),
            2 => [ell - d + 1].into(),
            3 if q == 2 => (1..=(2 * (ell - d + 2)).min(ell)).collect(),
            _ => return Err(Error::UnsupportedRegime("needs r = 2, or r = 3 with q = 2".into())),
        };
        let n1 = self.n() as i64 - 1;
        ms.into_iter()
            .filter_map(|m| bmin(q, ell, d, m, r).ok().map(|b| n1 * (ell - m) as i64 + b as i64))
            .min()
            .ok_or_else(|| Error::Infeasible("no admissible m".into()))
    }
}

fn best(bounds: Vec<Bound>, why: &str) -> Result<Bound> {
    bounds
        .into_iter()
        .max_by_key(|b| b.value)
        .ok_or_else(|| Error::UnsupportedRegime(why.into()))
}

fn pow_i(q: u64, e: i64) -> i64 {
    q.pow(e as u32) as i64
}

/// `⌈q^e⌉`, which is 1 for negative `e`.
fn ceil_pow(q: u64, e: i64) -> i64 {
    if e >= 0 { pow_i(q, e) } else { 1 }
}

/// `⌊q^e⌋`, which is 0 for negative `e`.
fn floor_pow(q: u64, e: i64) -> i64 {
    if e >= 0 { pow_i(q, e) } else { 0 }
}

pub fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = libm::sqrt(x as f64) as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Right-hand side of the counting constraint on `Σ_{i≥2} q^(m - b_i)`.
pub fn bmin_budget(q: u64, ell: u32, d: u32, m: u32, r: u64) -> Result<i128> {
    if m > ell {
        return Err(Error::ParamViolation(format!("need m <= ell, got m = {m}")));
    }
    let p = |e: u32| (q as i128).pow(e);
    match r {
        2 => Ok(p(d) + p(ell) - p(ell - m) - 1),
        3 if q == 2 => Ok(p(ell + 1) + p(d) - p(ell - m + 1) - 1),
        _ => Err(Error::UnsupportedRegime("needs r = 2, or r = 3 with q = 2".into())),
    }
}

/// Minimum of `Σ_{i=2}^n b_i` over `0 ≤ b_i ≤ m` subject to
/// `Σ q^(m - b_i) ≤ budget`, where `n = q^d`.
///
/// The sum of `q^(m - b_i)` is convex in each `b_i`, so for a fixed total
/// the balanced assignment (all `b_i ∈ {v, v+1}`) minimizes it. The
/// smallest total whose balanced assignment fits is the answer.
pub fn bmin(q: u64, ell: u32, d: u32, m: u32, r: u64) -> Result<u64> {
    let budget = bmin_budget(q, ell, d, m, r)?;
    let helpers = (q as i128).pow(d) - 1;
    let lhs = |s: i128| {
        let (v, rem) = (s / helpers, s % helpers);
        let hi = (q as i128).pow(m - v as u32);
        if rem == 0 {
            helpers * hi
        } else {
            (helpers - rem) * hi + rem * (hi / q as i128)
        }
    };
    let max_total = helpers * m as i128;
    if lhs(max_total) > budget {
        return Err(Error::Infeasible(format!("even b_i = m exceeds the budget {budget}")));
    }
    // lhs is nonincreasing in s: binary search the first fit.
    let (mut lo, mut hi) = (0i128, max_total);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if lhs(mid) <= budget {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo as u64)
}

/// Result of the exhaustive maximization behind the `r = 3` bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R3Max {
    /// Maximum of `2^(d-m) Σ 2^(a_i)`, scaled by `2^ℓ` to stay integral.
    pub max_scaled: u128,
    pub ell: u32,
    /// Every maximizer as `(t', m, a)`.
    pub argmax: Vec<(u32, u32, Vec<u32>)>,
}

impl R3Max {
    /// The maximum itself when it is an integer.
    pub fn max(&self) -> Option<u128> {
        let s = 1u128 << self.ell;
        self.max_scaled.is_multiple_of(s).then(|| self.max_scaled / s)
    }
}

pub const R3_MAX_ELL: u32 = 10;

/// Enumerates `t' ≤ m ≤ min(ℓ, m_max)` and `m-1 ≥ a_1 ≥ … ≥ a_t' ≥ 0` with
/// `Σ_{i ≤ min(t', ℓ-d+2)} a_i ≤ (ℓ-d+1) m`, maximizing `2^(d-m) Σ 2^(a_i)`.
pub fn r3cond_max_bruteforce(ell: u32, d: u32, m_max: u32) -> Result<R3Max> {
    if ell > R3_MAX_ELL {
        return Err(Error::BudgetExceeded(format!("ell = {ell} exceeds {R3_MAX_ELL}")));
    }
    if d == 0 || d > ell {
        return Err(Error::ParamViolation(format!("need 1 <= d <= ell, got d = {d}")));
    }
    let mut best = R3Max { max_scaled: 0, ell, argmax: Vec::new() };
    let head = ell - d + 2;
    for m in 1..=ell.min(m_max) {
        let cap = (ell - d + 1) * m;
        for t in 1..=m {
            let mut a = Vec::with_capacity(t as usize);
            visit(&mut a, t, m - 1, &mut |a| {
                let prefix: u32 = a.iter().take(head as usize).sum();
                if prefix > cap {
                    return;
                }
                let sum: u128 = a.iter().map(|&x| 1u128 << x).sum();
                let scaled = sum << (d + ell - m);
                if scaled > best.max_scaled {
                    best.max_scaled = scaled;
                    best.argmax.clear();
                }
                if scaled == best.max_scaled {
                    best.argmax.push((t, m, a.to_vec()));
                }
            });
        }
    }
    Ok(best)
}

/// Calls `f` on every nonincreasing sequence of length `len` bounded by `top`.
fn visit(a: &mut Vec<u32>, len: u32, top: u32, f: &mut impl FnMut(&[u32])) {
    if a.len() == len as usize {
        f(a);
        return;
    }
    let bound = a.last().copied().unwrap_or(top);
    for x in (0..=bound).rev() {
        a.push(x);
        visit(a, len, top, f);
        a.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(q: u64, ell: u32, d: u32, r: u64) -> BoundQuery {
        BoundQuery::new(q, ell, d, r).unwrap()
    }

    #[test]
    fn io_examples() {
        let b = q(2, 4, 4, 2).io_lower_bound().unwrap();
        assert_eq!(b.value, 52);
        assert_eq!(q(2, 4, 4, 3).io_lower_bound().unwrap().value, 44);
        let b = q(2, 6, 4, 2).io_lower_bound().unwrap();
        assert_eq!((b.value, b.kind, b.tight_known), (66, BoundKind::IoRedundancyTwo, true));
        assert!(matches!(q(3, 3, 2, 3).io_lower_bound(), Err(Error::UnsupportedRegime(_))));
        assert!(matches!(q(2, 4, 3, 4).io_lower_bound(), Err(Error::UnsupportedRegime(_))));
    }

    #[test]
    fn weil_io_bound_odd_ell() {
        // q = 5, ℓ = 3, r = 4: slack = floor(2·4·sqrt(5)) = floor(17.88…) = 17.
        let b = q(5, 3, 3, 4).io_bound(BoundKind::IoWeil).unwrap();
        assert_eq!(b.value, 124 * 3 - 25 - 17);
        // Even ℓ is exact: q = 3, ℓ = 2, r = 3: slack = 1·2·1.
        let b = q(3, 2, 2, 3).io_bound(BoundKind::IoWeil).unwrap();
        assert_eq!(b.value, 8 * 2 - 3 - 2);
    }

    #[test]
    fn bandwidth_examples() {
        assert_eq!(q(2, 4, 4, 2).bandwidth_lower_bound().unwrap().value, 48);
        assert_eq!(q(2, 4, 4, 3).bandwidth_lower_bound().unwrap().value, 38);
        let b = q(3, 2, 2, 2).bandwidth_lower_bound().unwrap();
        assert_eq!((b.value, b.kind), (13, BoundKind::BandwidthFullLength));
        assert!(q(2, 5, 3, 2).bandwidth_lower_bound().is_err());
        assert_eq!(q(2, 6, 4, 2).bandwidth_lower_bound().unwrap().value, 15 * 4 - 2);
    }

    #[test]
    fn bmin_examples() {
        assert_eq!(bmin(2, 4, 4, 2, 2).unwrap(), 18);
        assert_eq!(15 * 2 + bmin(2, 4, 4, 2, 2).unwrap(), 48);
        assert_eq!(bmin(2, 4, 4, 4, 3).unwrap(), 38);
        assert_eq!(bmin(2, 4, 4, 0, 2).unwrap(), 0);
        assert_eq!(bmin(3, 3, 3, 0, 2).unwrap(), 0);
    }

    #[test]
    fn bmin_route_matches_closed_forms() {
        for (qq, ell) in [(2u64, 2u32), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (4, 2), (5, 2)] {
            for d in 1..=ell {
                for r in [2u64, 3] {
                    let Ok(bq) = BoundQuery::new(qq, ell, d, r) else { continue };
                    for kind in [
                        BoundKind::BandwidthFullLength,
                        BoundKind::BandwidthFullLengthBinary,
                        BoundKind::BandwidthDivisible,
                        BoundKind::BandwidthRedundancyThree,
                    ] {
                        let Ok(b) = bq.bandwidth_bound(kind) else { continue };
                        if kind == BoundKind::BandwidthRedundancyThree && 2 * (ell - d + 2) > ell {
                            continue;
                        }
                        if kind == BoundKind::BandwidthDivisible && d < 2 {
                            continue;
                        }
                        assert_eq!(bq.bandwidth_via_bmin().unwrap(), b.value, "{bq:?} {kind:?}");
                    }
                }
            }
        }
    }

    /// Oracle: minimum over all multisets `{b_2..b_n} ⊆ [0, m]`.
    fn bmin_enumerate(q: u64, ell: u32, d: u32, m: u32, r: u64) -> Option<u64> {
        let budget = bmin_budget(q, ell, d, m, r).ok()?;
        let helpers = q.pow(d) as usize - 1;
        let mut best: Option<u64> = None;
        let mut counts = alloc::vec![0usize; m as usize + 1];
        fn rec(
            level: usize,
            left: usize,
            counts: &mut [usize],
            q: u64,
            m: u32,
            budget: i128,
            best: &mut Option<u64>,
        ) {
            if level == counts.len() - 1 {
                counts[level] = left;
                let lhs: i128 = counts.iter().enumerate().map(|(b, &c)| c as i128 * (q as i128).pow(m - b as u32)).sum();
                if lhs <= budget {
                    let total: u64 = counts.iter().enumerate().map(|(b, &c)| (b * c) as u64).sum();
                    *best = Some(best.map_or(total, |x| x.min(total)));
                }
                return;
            }
            for c in 0..=left {
                counts[level] = c;
                rec(level + 1, left - c, counts, q, m, budget, best);
            }
        }
        rec(0, helpers, &mut counts, q, m, budget, &mut best);
        best
    }

    #[test]
    fn bmin_matches_enumeration_small_n() {
        for (qq, ell) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (4, 2)] {
            for d in 1..=ell {
                if qq.pow(d) > 16 {
                    continue;
                }
                for m in 0..=ell {
                    for r in [2u64, 3] {
                        if r == 3 && qq != 2 {
                            continue;
                        }
                        let fast = bmin(qq, ell, d, m, r).ok();
                        let slow = bmin_enumerate(qq, ell, d, m, r);
                        assert_eq!(fast, slow, "q={qq} ell={ell} d={d} m={m} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn r3cond_examples() {
        let res = r3cond_max_bruteforce(4, 4, 4).unwrap();
        assert_eq!(res.max(), Some(16));
        assert!(res.argmax.contains(&(4, 4, alloc::vec![2, 2, 2, 2])));
        assert_eq!(r3cond_max_bruteforce(4, 2, 4).unwrap().max(), Some(8));
        assert_eq!(r3cond_max_bruteforce(6, 4, 6).unwrap().max(), Some(32));
        assert!(matches!(r3cond_max_bruteforce(11, 4, 11), Err(Error::BudgetExceeded(_))));
    }

    proptest! {
        #[test]
        fn io_bound_never_exceeds_trivial(qq in prop_oneof![Just(2u64), Just(3), Just(4), Just(5)], ell in 1u32..7, d in 1u32..7, r in 2u64..6) {
            prop_assume!(d <= ell);
            if let Ok(bq) = BoundQuery::new(qq, ell, d, r) {
                for b in bq.io_bounds() {
                    prop_assert!(b.value <= ((bq.n() - 1) * ell as u64) as i64);
                }
            }
        }
    }
}
