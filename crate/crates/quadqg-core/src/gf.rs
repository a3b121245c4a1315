//! Finite fields `GF(p^k)` of odd order.
//!
//! Elements are handled as integer codes in `[0, q)`: the base-`p` digits of
//! a code, little-endian, are the coefficients of the polynomial residue
//! (constant term first). Codes `0` and `1` are the additive and
//! multiplicative identities. The quadratic character is precomputed at
//! construction, as are exp/log tables for small orders.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Integer code of a field element.
pub type Elem = u64;

/// Table-backed fields are refused beyond this order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// exp/log tables are built only up to this order.
const EXP_LOG_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// `p` is not an odd prime.
    NotOddPrime(u64),
    /// extension degree must be at least 1.
    ZeroDegree,
    /// `p^k` exceeds [`MAX_FIELD_ORDER`].
    OrderTooLarge(u64),
    /// supplied modulus is not monic of degree `k` with coefficients in `[0, p)`.
    BadModulus,
    /// supplied modulus is reducible over `F_p`.
    ReducibleModulus,
    /// inverse of zero requested.
    ZeroInverse,
    /// Frobenius exponent out of `[0, k)`.
    BadFrobeniusExponent(u32),
    /// not a subfield of this field.
    NotASubfield,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            FieldError::ZeroDegree => write!(f, "extension degree must be >= 1"),
            FieldError::OrderTooLarge(q) => {
                write!(f, "field order {q} exceeds the table cap {MAX_FIELD_ORDER}")
            }
            FieldError::BadModulus => write!(f, "modulus must be monic of degree k over F_p"),
            FieldError::ReducibleModulus => write!(f, "supplied modulus is reducible"),
            FieldError::ZeroInverse => write!(f, "inverse of zero"),
            FieldError::BadFrobeniusExponent(j) => write!(f, "Frobenius exponent {j} out of range"),
            FieldError::NotASubfield => write!(f, "not a subfield of this field"),
        }
    }
}

/// The field automorphism `x -> x^{p^j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FieldAutomorphism {
    pub exponent: u32,
}

/// A subfield of a [`FiniteField`], as an explicit element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfield {
    degree: u32,
    order: u64,
    elements: Vec<Elem>,
    member: Vec<bool>,
}

impl Subfield {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Sorted list of element codes.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.member.get(x as usize).copied().unwrap_or(false)
    }
}

/// `GF(p^k)` with `p` an odd prime. Immutable after construction.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus, ascending coefficients, length `k + 1`.
    modulus: Vec<u64>,
    /// Quadratic character per element code.
    chi: Vec<i8>,
    /// `exp[i] = g^i` for a fixed primitive `g`; empty if `q > EXP_LOG_LIMIT`.
    exp: Vec<Elem>,
    /// `log[x]` with `log[0]` unused; empty if exp is empty.
    log: Vec<u32>,
}

impl FiniteField {
    /// Builds `GF(p^k)` with the default modulus: the lexicographically
    /// smallest monic irreducible of degree `k`, coefficients compared
    /// ascending from the constant term. Deterministic and reproducible.
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        Self::build(p, k, None)
    }

    /// Builds `GF(p^k)` with a caller-supplied monic irreducible modulus
    /// (ascending coefficients, length `k + 1`).
    pub fn with_modulus(p: u64, k: u32, modulus: &[u64]) -> Result<Self, FieldError> {
        Self::build(p, k, Some(modulus))
    }

    fn build(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self, FieldError> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p).ok_or(FieldError::OrderTooLarge(u64::MAX))?;
            if q > MAX_FIELD_ORDER {
                return Err(FieldError::OrderTooLarge(q));
            }
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1
                    || m[k as usize] != 1
                    || m.iter().any(|&c| c >= p)
                {
                    return Err(FieldError::BadModulus);
                }
                if !poly_is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus);
                }
                m.to_vec()
            }
            None => default_modulus(p, k),
        };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            chi: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        if q <= EXP_LOG_LIMIT {
            field.build_exp_log();
        }
        field.build_chi();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// All element codes, `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    /// `sqrt(q)` when the order is a perfect square of a prime power.
    pub fn sqrt_order(&self) -> Option<u64> {
        if self.k.is_multiple_of(2) {
            Some(pow_u64(self.p, self.k / 2))
        } else {
            None
        }
    }

    fn digits(&self, x: Elem) -> Vec<u64> {
        let mut d = vec![0; self.k as usize];
        let mut x = x;
        for v in d.iter_mut() {
            *v = x % self.p;
            x /= self.p;
        }
        d
    }

    fn pack_digits(&self, d: &[u64]) -> Elem {
        let mut x = 0;
        for &c in d.iter().rev() {
            x = x * self.p + c;
        }
        x
    }

    /// Element whose polynomial coefficients are `coeffs` (ascending).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Elem {
        let mut d = vec![0; self.k as usize];
        for (v, &c) in d.iter_mut().zip(coeffs) {
            *v = c % self.p;
        }
        self.pack_digits(&d)
    }

    /// Ascending coefficient list of an element.
    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        self.digits(x)
    }

    /// Pretty form `c0+c1*x+...` for logs.
    pub fn pretty(&self, x: Elem) -> String {
        if self.k == 1 {
            return format!("{x}");
        }
        let d = self.digits(x);
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in d.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 if c == 1 => String::from("x"),
                1 => format!("{c}*x"),
                _ if c == 1 => format!("x^{i}"),
                _ => format!("{c}*x^{i}"),
            });
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join("+")
        }
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.k == 1 {
            return (x + y) % self.p;
        }
        let mut p1 = x;
        let mut p2 = y;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.k {
            out += ((p1 % self.p + p2 % self.p) % self.p) * scale;
            p1 /= self.p;
            p2 /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, x: Elem) -> Elem {
        if self.k == 1 {
            return (self.p - x % self.p) % self.p;
        }
        let mut p1 = x;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.k {
            out += ((self.p - p1 % self.p) % self.p) * scale;
            p1 /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if !self.exp.is_empty() {
            if x == 0 || y == 0 {
                return 0;
            }
            let n = self.q - 1;
            return self.exp[((self.log[x as usize] as u64 + self.log[y as usize] as u64) % n)
                as usize];
        }
        self.mul_slow(x, y)
    }

    fn mul_slow(&self, x: Elem, y: Elem) -> Elem {
        if self.k == 1 {
            return x * y % self.p;
        }
        let a = self.digits(x);
        let b = self.digits(y);
        let k = self.k as usize;
        let mut buf = vec![0u64; 2 * k - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                buf[i + j] = (buf[i + j] + ai * bj) % self.p;
            }
        }
        // reduce mod the monic modulus
        for d in (k..2 * k - 1).rev() {
            let c = buf[d];
            if c == 0 {
                continue;
            }
            buf[d] = 0;
            for j in 0..k {
                let m = self.modulus[j];
                if m != 0 {
                    buf[d - k + j] = (buf[d - k + j] + (self.p - m) * c) % self.p;
                }
            }
        }
        self.pack_digits(&buf[..k])
    }

    pub fn inv(&self, x: Elem) -> Result<Elem, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroInverse);
        }
        if !self.exp.is_empty() {
            let n = self.q - 1;
            return Ok(self.exp[((n - self.log[x as usize] as u64) % n) as usize]);
        }
        Ok(self.pow(x, self.q - 2))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let n = self.q - 1;
            let l = (self.log[x as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return self.exp[l];
        }
        let mut base = x;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// Quadratic character: `0` at zero, `1` on nonzero squares, `-1` otherwise.
    pub fn chi(&self, x: Elem) -> i8 {
        self.chi[x as usize]
    }

    /// Smallest-coded nonsquare; the canonical witness for `Q_{a,b} ~ Q_{b,a}`.
    pub fn canonical_nonsquare(&self) -> Elem {
        (0..self.q).find(|&x| self.chi[x as usize] == -1).expect("odd field has nonsquares")
    }

    /// `x^{p^j}` for `0 <= j < k`.
    pub fn frobenius(&self, x: Elem, j: u32) -> Elem {
        debug_assert!(j < self.k);
        self.pow(x, pow_u64(self.p, j))
    }

    /// A fixed primitive element of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        if !self.exp.is_empty() {
            return self.exp[1];
        }
        self.find_primitive()
    }

    fn find_primitive(&self) -> Elem {
        let n = self.q - 1;
        let factors = prime_factors(n);
        'outer: for g in 2..self.q {
            for &r in &factors {
                if self.pow(g, n / r) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    fn build_exp_log(&mut self) {
        let g = self.find_primitive();
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u64; n];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u64;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, g);
        }
        self.exp = exp;
        self.log = log;
    }

    fn build_chi(&mut self) {
        let mut chi = vec![-1i8; self.q as usize];
        chi[0] = 0;
        if !self.exp.is_empty() {
            for i in (0..(self.q - 1) as usize).step_by(2) {
                chi[self.exp[i] as usize] = 1;
            }
        } else {
            for y in 1..self.q {
                chi[self.mul_slow(y, y) as usize] = 1;
            }
        }
        self.chi = chi;
    }

    /// Smallest subfield containing `seed`, computed as the closure of
    /// `seed ∪ {0, 1}` under addition and multiplication.
    pub fn subfield_generated_by(&self, seed: &[Elem]) -> Subfield {
        let mut member = vec![false; self.q as usize];
        let mut elems: Vec<Elem> = Vec::new();
        for &x in seed.iter().chain([0, 1].iter()) {
            if !member[x as usize] {
                member[x as usize] = true;
                elems.push(x);
            }
        }
        let mut fresh = 0;
        while fresh < elems.len() {
            let x = elems[fresh];
            fresh += 1;
            for i in 0..fresh {
                let y = elems[i];
                for z in [self.add(x, y), self.mul(x, y)] {
                    if !member[z as usize] {
                        member[z as usize] = true;
                        elems.push(z);
                    }
                }
            }
        }
        elems.sort_unstable();
        let order = elems.len() as u64;
        let degree = degree_of_order(self.p, order)
            .expect("closure under + and * of a set containing 1 is a subfield");
        Subfield {
            degree,
            order,
            elements: elems,
            member,
        }
    }

    /// The subfield of degree `m`, if `m` divides `k`.
    pub fn subfield_of_degree(&self, m: u32) -> Option<Subfield> {
        if m == 0 || !self.k.is_multiple_of(m) {
            return None;
        }
        let fixed = pow_u64(self.p, m);
        let mut member = vec![false; self.q as usize];
        let mut elems = Vec::new();
        for x in 0..self.q {
            if self.pow(x, fixed) == x {
                member[x as usize] = true;
                elems.push(x);
            }
        }
        debug_assert_eq!(elems.len() as u64, fixed);
        Some(Subfield {
            degree: m,
            order: fixed,
            elements: elems,
            member,
        })
    }

    /// `Gal(F | K)`: the `k/m` automorphisms `x -> x^{p^{m t}}`.
    pub fn galois_group_over(&self, sub: &Subfield) -> Result<Vec<FieldAutomorphism>, FieldError> {
        let m = sub.degree;
        if m == 0 || !self.k.is_multiple_of(m) || sub.order != pow_u64(self.p, m) {
            return Err(FieldError::NotASubfield);
        }
        Ok((0..self.k / m)
            .map(|t| FieldAutomorphism { exponent: m * t })
            .collect())
    }
}

fn degree_of_order(p: u64, order: u64) -> Option<u32> {
    let mut q = 1u64;
    for m in 1..=64 {
        q = q.checked_mul(p)?;
        if q == order {
            return Some(m);
        }
        if q > order {
            return None;
        }
    }
    None
}

pub(crate) fn pow_u64(base: u64, e: u32) -> u64 {
    let mut acc = 1u64;
    for _ in 0..e {
        acc *= base;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

// ---- dense polynomial arithmetic over F_p (modulus search only) ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let k = f.len() - 1;
    let mut buf = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            buf[i + j] = (buf[i + j] + ai * bj) % p;
        }
    }
    for d in (k..buf.len()).rev() {
        let c = buf[d];
        if c == 0 {
            continue;
        }
        buf[d] = 0;
        for j in 0..k {
            if f[j] != 0 {
                buf[d - k + j] = (buf[d - k + j] + (p - f[j]) * c) % p;
            }
        }
    }
    buf.truncate(k);
    poly_trim(&mut buf);
    buf
}

fn poly_powmod(g: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = g.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lead_inv = inv_mod_p(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = *a.last().unwrap() * lead_inv % p;
            if c != 0 {
                for (i, &bi) in b.iter().enumerate() {
                    a[shift + i] = (a[shift + i] + (p - bi) * c % p) % p;
                }
            }
            a.pop();
            poly_trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
    a
}

/// `x^{p^j} mod f`, by `j` successive `p`-th powers.
fn frobenius_poly(f: &[u64], p: u64, j: u32) -> Vec<u64> {
    let mut g = vec![0u64, 1];
    for _ in 0..j {
        g = poly_powmod(&g, p, f, p);
    }
    g
}

/// Irreducibility over `F_p` of a monic polynomial of degree `>= 1`:
/// `x^{p^k} == x (mod f)` and `gcd(x^{p^{k/t}} - x, f) = 1` for prime `t | k`.
pub(crate) fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let xqk = frobenius_poly(f, p, k);
    let mut diff = xqk;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for t in prime_factors(k as u64) {
        let d = k / t as u32;
        let mut g = frobenius_poly(f, p, d);
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        poly_trim(&mut g);
        let gcd = poly_gcd(&g, f, p);
        if gcd.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing
/// coefficients ascending from the constant term.
fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let total = pow_u64(p, k);
    let mut f = vec![0u64; k as usize + 1];
    f[k as usize] = 1;
    for i in 0..total {
        // digit 0 is the constant term and the most significant comparison key
        let mut rest = i;
        for j in (0..k as usize).rev() {
            f[j] = rest % p;
            rest /= p;
        }
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_construction() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn f9_default_modulus_is_x2_plus_1() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.order(), 9);
    }

    #[test]
    fn even_p_rejected() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), FieldError::NotOddPrime(4));
        assert_eq!(FiniteField::new(2, 3).unwrap_err(), FieldError::NotOddPrime(2));
        assert!(FiniteField::new(9, 1).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 2x + 1 = (x+1)^2 over F_3
        assert_eq!(
            FiniteField::with_modulus(3, 2, &[1, 2, 1]).unwrap_err(),
            FieldError::ReducibleModulus
        );
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        let f9 = FiniteField::new(3, 2).unwrap();
        let i = f9.element_from_coeffs(&[0, 1]);
        assert_eq!(f9.mul(i, i), 2); // x^2 = -1 = 2
        for x in f9.elements() {
            assert_eq!(f9.add(x, f9.neg(x)), 0);
        }
    }

    #[test]
    fn inverse_and_division() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert!(f9.inv(0).is_err());
        for x in 1..f9.order() {
            assert_eq!(f9.mul(x, f9.inv(x).unwrap()), 1);
        }
    }

    #[test]
    fn chi_examples() {
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.chi(3), -1); // squares mod 7: {1,2,4}
        assert_eq!(f7.chi(0), 0);
        assert_eq!(f7.chi(2), 1);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.chi(2), 1); // -1 = i^2 is a square in F_9
    }

    #[test]
    fn chi_counts_and_euler_criterion() {
        for (p, k) in [(7, 1), (3, 2), (5, 2), (3, 3)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            let squares = f.elements().filter(|&x| f.chi(x) == 1).count() as u64;
            let nonsquares = f.elements().filter(|&x| f.chi(x) == -1).count() as u64;
            assert_eq!(squares, (q - 1) / 2);
            assert_eq!(nonsquares, (q - 1) / 2);
            // Euler spot-check: x^{(q-1)/2} is 1 on squares
            for x in 1..q {
                let e = f.pow(x, (q - 1) / 2);
                assert_eq!(if e == 1 { 1 } else { -1 }, f.chi(x));
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let one_plus_i = f9.element_from_coeffs(&[1, 1]);
        let one_plus_2i = f9.element_from_coeffs(&[1, 2]);
        assert_eq!(f9.frobenius(one_plus_i, 1), one_plus_2i);
        for x in f9.elements() {
            assert_eq!(f9.frobenius(x, 0), x);
        }
    }

    #[test]
    fn frobenius_fixed_points() {
        let f = FiniteField::new(3, 4).unwrap();
        for j in 0..4u32 {
            let fixed = f.elements().filter(|&x| f.frobenius(x, j) == x).count() as u64;
            assert_eq!(fixed, pow_u64(3, gcd(j, 4)));
        }
    }

    fn gcd(a: u32, b: u32) -> u32 {
        if a == 0 {
            b
        } else {
            gcd(b % a, a)
        }
    }

    #[test]
    fn subfield_examples() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.subfield_generated_by(&[2]).order(), 3);
        let i = f9.element_from_coeffs(&[0, 1]);
        assert_eq!(f9.subfield_generated_by(&[i]).order(), 9);
        let f25 = FiniteField::new(5, 2).unwrap();
        assert_eq!(f25.subfield_generated_by(&[2]).order(), 5);
    }

    #[test]
    fn galois_groups() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let f3 = f9.subfield_of_degree(1).unwrap();
        let gal = f9.galois_group_over(&f3).unwrap();
        assert_eq!(gal.iter().map(|a| a.exponent).collect::<Vec<_>>(), vec![0, 1]);
        let whole = f9.subfield_of_degree(2).unwrap();
        assert_eq!(f9.galois_group_over(&whole).unwrap().len(), 1);
        let f27 = FiniteField::new(3, 3).unwrap();
        let f3 = f27.subfield_of_degree(1).unwrap();
        let gal = f27.galois_group_over(&f3).unwrap();
        assert_eq!(gal.iter().map(|a| a.exponent).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn perron_properties() {
        // each nonzero square is a sum of two nonsquares and vice versa;
        // all four character combinations of a+x exist for each a
        for (p, k) in [(5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            let of_chi = |c: i8| {
                let f = &f;
                (0..q).filter(move |&x| f.chi(x) == c)
            };
            for x in 1..q {
                let want = f.chi(x);
                let found = of_chi(-want).any(|u| {
                    let v = f.sub(x, u);
                    f.chi(v) == -want
                });
                assert!(found, "q={q} x={x} not a sum of two opposite-character elements");
            }
            // all four character combinations of (x, a+x); holds once q >= 11
            if q >= 11 {
                for a in 1..q {
                    for eps_x in [1i8, -1] {
                        for eps_sum in [1i8, -1] {
                            let found =
                                of_chi(eps_x).any(|x| f.chi(f.add(a, x)) == eps_sum);
                            assert!(found, "q={q} a={a} missing combination");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn default_modulus_reproducible() {
        let f1 = FiniteField::new(5, 3).unwrap();
        let f2 = FiniteField::new(5, 3).unwrap();
        assert_eq!(f1.modulus(), f2.modulus());
        assert_eq!(f1.chi, f2.chi);
        assert_eq!(f1.exp, f2.exp);
    }

    #[test]
    fn canonical_nonsquare_is_smallest() {
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.canonical_nonsquare(), 3);
    }

    proptest! {
        #[test]
        fn chi_is_multiplicative(x in 0u64..2187, y in 0u64..2187) {
            let f = FiniteField::new(3, 7).unwrap();
            prop_assert_eq!(f.chi(f.mul(x, y)), f.chi(x) * f.chi(y));
        }

        #[test]
        fn mul_matches_slow_path(x in 0u64..625, y in 0u64..625) {
            let f = FiniteField::new(5, 4).unwrap();
            prop_assert_eq!(f.mul(x, y), f.mul_slow(x, y));
        }

        #[test]
        fn frobenius_is_additive_and_multiplicative(x in 0u64..729, y in 0u64..729, j in 0u32..6) {
            let f = FiniteField::new(3, 6).unwrap();
            prop_assert_eq!(f.frobenius(f.add(x, y), j), f.add(f.frobenius(x, j), f.frobenius(y, j)));
            prop_assert_eq!(f.frobenius(f.mul(x, y), j), f.mul(f.frobenius(x, j), f.frobenius(y, j)));
        }
    }
}
