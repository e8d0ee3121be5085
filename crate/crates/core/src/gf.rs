//! Exact arithmetic in F = GF(p^(a·ℓ)) and its subfield B = GF(q), q = p^a.
//!
//! Elements are stored as the base-p integer `Σ c_i p^i` of their coordinate
//! vector `(c_0, …, c_{aℓ-1})` in the polynomial basis of the modulus.
//! Multiplication goes through log/exp tables over a primitive element, so a
//! tower is cheap to query but costs `O(p^(aℓ))` memory to build.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default cap on the field size, as a power of two.
pub const DEFAULT_MAX_FIELD_BITS: u32 = 20;

/// Largest cap the packed representation supports.
const HARD_MAX_FIELD_BITS: u32 = 30;

/// An element of F, identified by its packed coordinate index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    /// Element with the given packed index. The index must be below the
    /// field order of whatever tower it is used with.
    pub const fn from_index(index: u32) -> Self {
        Element(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field tower GF(p) ⊆ B = GF(p^a) ⊆ F = GF(p^(a·ℓ)).
#[derive(Clone, Debug)]
pub struct FieldTower {
    p: u32,
    a: u32,
    ell: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: Element,
    subfield_generator: Option<Element>,
    subfield: Vec<Element>,
    subfield_prime_basis: Vec<Element>,
    trace_monomials: Vec<Element>,
    abs_trace_monomials: Vec<u32>,
}

impl FieldTower {
    /// Builds GF(p^(a·ℓ)) with the smallest monic irreducible modulus, where
    /// coefficient vectors are ordered by the integer `Σ c_i p^i`.
    pub fn new(p: u32, a: u32, ell: u32) -> Result<Self> {
        Self::with_max_bits(p, a, ell, DEFAULT_MAX_FIELD_BITS)
    }

    pub fn with_max_bits(p: u32, a: u32, ell: u32, max_bits: u32) -> Result<Self> {
        let degree = check_params(p, a, ell, max_bits)?;
        let modulus = smallest_irreducible(p, degree).ok_or(Error::NoIrreducible)?;
        Self::build(p, a, ell, modulus)
    }

    /// Builds the tower over an explicitly given modulus (low-to-high, monic).
    pub fn from_modulus(p: u32, a: u32, ell: u32, modulus: &[u32], max_bits: u32) -> Result<Self> {
        let degree = check_params(p, a, ell, max_bits)?;
        let ok = modulus.len() == degree as usize + 1
            && modulus[degree as usize] == 1
            && modulus.iter().all(|&c| c < p)
            && is_irreducible(modulus, p);
        if !ok {
            return Err(Error::ReducibleModulus { p, degree });
        }
        Self::build(p, a, ell, modulus.to_vec())
    }

    fn build(p: u32, a: u32, ell: u32, modulus: Vec<u32>) -> Result<Self> {
        let degree = a * ell;
        let mut pow_p = Vec::with_capacity(degree as usize + 1);
        let mut acc = 1u32;
        for _ in 0..=degree {
            pow_p.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let order = pow_p[degree as usize];
        let slow = SlowArith { p, n: degree as usize, modulus: &modulus, pow_p: &pow_p };

        let group = (order - 1) as u64;
        let factors = prime_factors(group);
        let primitive = (1..order)
            .find(|&g| factors.iter().all(|&f| slow.pow(g, group / f) != 1))
            .ok_or(Error::NoIrreducible)?;

        let mut exp = vec![0u32; (order - 1) as usize];
        let mut log = vec![0u32; order as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = slow.mul(cur, primitive);
        }

        let mut tower = FieldTower {
            p,
            a,
            ell,
            degree,
            order,
            modulus,
            pow_p,
            exp,
            log,
            primitive: Element(primitive),
            subfield_generator: None,
            subfield: Vec::new(),
            subfield_prime_basis: Vec::new(),
            trace_monomials: Vec::new(),
            abs_trace_monomials: Vec::new(),
        };

        if a > 1 {
            let q = tower.q() as u64;
            let sg = tower.pow(tower.primitive, (order as u64 - 1) / (q - 1));
            tower.subfield_generator = Some(sg);
            tower.subfield.push(Element::ZERO);
            let mut x = Element::ONE;
            for _ in 0..q - 1 {
                tower.subfield.push(x);
                x = tower.mul(x, sg);
            }
            tower.subfield_prime_basis = (0..a as u64).map(|i| tower.pow(sg, i)).collect();
        } else {
            tower.subfield = (0..p).map(Element).collect();
            tower.subfield_prime_basis = vec![Element::ONE];
        }

        tower.trace_monomials = (0..degree as usize)
            .map(|i| {
                let mono = Element(tower.pow_p[i]);
                (0..ell as i64).fold(Element::ZERO, |s, j| tower.add(s, tower.frobenius(mono, j)))
            })
            .collect();
        tower.abs_trace_monomials = (0..degree as usize)
            .map(|i| {
                let mono = Element(tower.pow_p[i]);
                let mut s = Element::ZERO;
                let mut y = mono;
                for _ in 0..degree {
                    s = tower.add(s, y);
                    y = tower.pow(y, p as u64);
                }
                debug_assert!(s.0 < p);
                s.0
            })
            .collect();
        Ok(tower)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// Extension degree ℓ = [F : B].
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Subfield size q = p^a.
    pub fn q(&self) -> u32 {
        self.pow_p[self.a as usize]
    }

    /// Degree a·ℓ of F over GF(p).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements of F.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> Element {
        self.primitive
    }

    /// Generator of B*, absent when B is the prime field.
    pub fn subfield_generator(&self) -> Option<Element> {
        self.subfield_generator
    }

    /// The q elements of B: `0, 1, …, p-1` for a prime subfield, otherwise
    /// `0` followed by the powers of the subfield generator.
    pub fn subfield_elements(&self) -> &[Element] {
        &self.subfield
    }

    /// `{1, g, …, g^(a-1)}` for the subfield generator g; spans B over GF(p).
    pub fn subfield_prime_basis(&self) -> &[Element] {
        &self.subfield_prime_basis
    }

    /// All elements of F in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(Element)
    }

    pub fn is_valid(&self, x: Element) -> bool {
        x.0 < self.order
    }

    pub fn coords(&self, x: Element) -> Vec<u32> {
        let mut v = x.0;
        (0..self.degree)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Element> {
        if coords.len() != self.degree as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidCoordinates(format!("{coords:?}")));
        }
        Ok(Element(coords.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum()))
    }

    pub fn add(&self, x: Element, y: Element) -> Element {
        if self.p == 2 {
            return Element(x.0 ^ y.0);
        }
        self.digitwise(x, y, |a, b| (a + b) % self.p)
    }

    pub fn sub(&self, x: Element, y: Element) -> Element {
        if self.p == 2 {
            return Element(x.0 ^ y.0);
        }
        self.digitwise(x, y, |a, b| (a + self.p - b) % self.p)
    }

    pub fn neg(&self, x: Element) -> Element {
        if self.p == 2 {
            return x;
        }
        self.digitwise(Element::ZERO, x, |a, b| (a + self.p - b) % self.p)
    }

    fn digitwise(&self, x: Element, y: Element, op: impl Fn(u32, u32) -> u32) -> Element {
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            if a == 0 && b == 0 {
                break;
            }
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Element(out)
    }

    /// Multiplies by an element of the prime field GF(p).
    pub fn scale_prime(&self, x: Element, c: u32) -> Element {
        let c = c % self.p;
        match c {
            0 => Element::ZERO,
            1 => x,
            _ => self.digitwise(x, Element::ZERO, |a, _| (a * c) % self.p),
        }
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        if x.0 == 0 || y.0 == 0 {
            return Element::ZERO;
        }
        let m = self.order - 1;
        let s = self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64;
        Element(self.exp[(s % m as u64) as usize])
    }

    pub fn inv(&self, x: Element) -> Option<Element> {
        if x.0 == 0 {
            return None;
        }
        let m = self.order - 1;
        let l = self.log[x.0 as usize];
        Some(Element(self.exp[((m - l) % m) as usize]))
    }

    pub fn div(&self, x: Element, y: Element) -> Option<Element> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    pub fn pow(&self, x: Element, e: u64) -> Element {
        if e == 0 {
            return Element::ONE;
        }
        if x.0 == 0 {
            return Element::ZERO;
        }
        let m = (self.order - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        Element(self.exp[((l as u128 * e as u128) % m as u128) as usize])
    }

    /// `log_g(x)` for the tower's primitive element g.
    pub fn discrete_log(&self, x: Element) -> Option<u32> {
        (x.0 != 0).then(|| self.log[x.0 as usize])
    }

    /// `g^e` for the tower's primitive element g.
    pub fn primitive_power(&self, e: u64) -> Element {
        self.pow(self.primitive, e)
    }

    pub fn multiplicative_order(&self, x: Element) -> Option<u64> {
        let l = self.discrete_log(x)? as u64;
        let m = (self.order - 1) as u64;
        Some(m / gcd(l, m))
    }

    pub fn is_primitive(&self, x: Element) -> bool {
        self.multiplicative_order(x) == Some((self.order - 1) as u64)
    }

    /// The q-Frobenius applied k times; negative k inverts it.
    pub fn frobenius(&self, x: Element, k: i64) -> Element {
        let k = k.rem_euclid(self.ell as i64) as u64;
        if x.0 == 0 || k == 0 {
            return x;
        }
        let m = (self.order - 1) as u64;
        self.pow(x, mod_pow(self.q() as u64, k, m))
    }

    pub fn is_in_subfield(&self, x: Element) -> bool {
        self.frobenius(x, 1) == x
    }

    /// `Tr_{F/B}(x) = Σ_{i<ℓ} x^(q^i)`, an element of B embedded in F.
    pub fn trace_to_subfield(&self, x: Element) -> Element {
        let mut acc = Element::ZERO;
        if self.p == 2 {
            let mut v = x.0;
            let mut i = 0;
            while v != 0 {
                if v & 1 == 1 {
                    acc.0 ^= self.trace_monomials[i].0;
                }
                v >>= 1;
                i += 1;
            }
            return acc;
        }
        for (c, t) in self.coords(x).into_iter().zip(&self.trace_monomials) {
            if c != 0 {
                acc = self.add(acc, self.scale_prime(*t, c));
            }
        }
        acc
    }

    /// Trace down to GF(p), as a residue in `[0, p)`.
    pub fn absolute_trace(&self, x: Element) -> u32 {
        if self.p == 2 {
            let mut v = x.0;
            let mut acc = 0u32;
            let mut i = 0;
            while v != 0 {
                if v & 1 == 1 {
                    acc ^= self.abs_trace_monomials[i];
                }
                v >>= 1;
                i += 1;
            }
            return acc;
        }
        let p = self.p as u64;
        let s: u64 = self
            .coords(x)
            .into_iter()
            .zip(&self.abs_trace_monomials)
            .map(|(c, &t)| c as u64 * t as u64 % p)
            .sum();
        (s % p) as u32
    }
}

fn check_params(p: u32, a: u32, ell: u32, max_bits: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if a == 0 || ell == 0 {
        return Err(Error::InvalidDegree { a, ell });
    }
    let degree = a.checked_mul(ell).ok_or(Error::InvalidDegree { a, ell })?;
    let cap = max_bits.min(HARD_MAX_FIELD_BITS);
    let mut size: u64 = 1;
    for _ in 0..degree {
        size = size.saturating_mul(p as u64);
        if size > 1u64 << cap {
            return Err(Error::FieldTooLarge { p, degree, max_bits: cap });
        }
    }
    Ok(degree)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^a` as `(p, a)` when q is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut a = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        a += 1;
    }
    (rest == 1).then_some((p as u32, a))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Polynomial-basis arithmetic used only while the log tables are built.
struct SlowArith<'a> {
    p: u32,
    n: usize,
    modulus: &'a [u32],
    pow_p: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, mut v: u32) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        if self.p == 2 {
            let mut prod = 0u64;
            let mut b = y as u64;
            let mut shift = 0;
            while b != 0 {
                if b & 1 == 1 {
                    prod ^= (x as u64) << shift;
                }
                b >>= 1;
                shift += 1;
            }
            let modbits: u64 = self.modulus.iter().enumerate().map(|(i, &c)| (c as u64) << i).sum();
            for i in (self.n..2 * self.n).rev() {
                if prod >> i & 1 == 1 {
                    prod ^= modbits << (i - self.n);
                }
            }
            return prod as u32;
        }
        let p = self.p as u64;
        let a = self.digits(x);
        let b = self.digits(y);
        let mut prod = vec![0u64; 2 * self.n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
            }
        }
        for i in (self.n..2 * self.n).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &mj) in self.modulus.iter().enumerate() {
                let idx = i - self.n + j;
                prod[idx] = (prod[idx] + (p - c) * mj as u64) % p;
            }
        }
        prod[..self.n].iter().zip(self.pow_p).map(|(&d, &w)| d as u32 * w).sum()
    }

    fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}

/// Remainder of `f` modulo the monic `h` over GF(p); both low-to-high.
fn poly_rem(f: &[u32], h: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dh = h.len() - 1;
    let p = p as u64;
    for i in (dh..r.len()).rev() {
        let c = r[i] % p;
        if c == 0 {
            continue;
        }
        for (j, &hj) in h.iter().enumerate() {
            let idx = i - dh + j;
            r[idx] = (r[idx] + (p - c) * hj as u64) % p;
        }
    }
    r.truncate(dh);
    r.into_iter().map(|c| (c % p) as u32).collect()
}

/// Trial division by every monic polynomial of degree at most half of `f`'s.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut h = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                h.push((v % p as u64) as u32);
                v /= p as u64;
            }
            h.push(1);
            if poly_rem(f, &h, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, degree: u32) -> Option<Vec<u32>> {
    let count = (p as u64).checked_pow(degree)?;
    (0..count).find_map(|idx| {
        let mut f = Vec::with_capacity(degree as usize + 1);
        let mut v = idx;
        for _ in 0..degree {
            f.push((v % p as u64) as u32);
            v /= p as u64;
        }
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}
