//! Exact arithmetic in prime fields GF(p) and extension fields GF(p^m).
//!
//! Elements are stored as canonical integer codes in `[0, p^m)`: the base-p
//! digit expansion (little-endian) of the representing polynomial. For m = 1
//! the code is simply the residue. Fields up to `q = 2^20` are supported;
//! fields with `q <= 2^16` get log/antilog tables, larger ones fall back to
//! direct polynomial arithmetic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;
/// Fields up to this size get precomputed log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 16;

/// A field element, as its canonical integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {0} exceeds the supported maximum {MAX_FIELD_SIZE}")]
    FieldTooLarge(u64),
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: u32, got: usize },
    #[error("modulus coefficient {0} is not reduced mod {1}")]
    BadModulusCoefficient(u64, u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("code {0} is not an element of a field with {1} elements")]
    NotAnElement(u64, u64),
}

/// Arithmetic operations understood by [`FieldSpec::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    /// Raises the first operand to the integer power given by the second
    /// operand's code.
    Pow,
}

/// A fully-validated description of GF(p^m).
///
/// Immutable after creation; all arithmetic goes through `&self` and is pure,
/// so a spec can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, little-endian coefficients `c0..=cm`. Empty when m = 1.
    modulus: Vec<u64>,
    primitive: Fe,
    /// `exp[i] = primitive^i` for `i in 0..2(q-1)`, when tables are built.
    exp: Option<Vec<u64>>,
    /// `log[code]` for nonzero codes, when tables are built.
    log: Option<Vec<u32>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds GF(p^m). When `modulus` is `None` and m > 1, the
    /// lexicographically smallest primitive polynomial of degree m over
    /// GF(p) is selected (smallest integer code of its low coefficients).
    /// A supplied modulus must be monic of degree m and irreducible; it does
    /// not have to be primitive.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = checked_pow(p, m).ok_or(FieldError::FieldTooLarge(u64::MAX))?;
        if q > MAX_FIELD_SIZE {
            return Err(FieldError::FieldTooLarge(q));
        }

        let modulus = if m == 1 {
            Vec::new()
        } else if let Some(cs) = modulus {
            if cs.len() != m as usize + 1 || cs[m as usize] != 1 {
                return Err(FieldError::BadModulusDegree {
                    expected: m,
                    got: cs.len().saturating_sub(1),
                });
            }
            for &c in cs {
                if c >= p {
                    return Err(FieldError::BadModulusCoefficient(c, p));
                }
            }
            if !poly_is_irreducible(cs, p) {
                return Err(FieldError::ReducibleModulus(p));
            }
            cs.to_vec()
        } else {
            smallest_primitive_polynomial(p, m)
        };

        let mut field = FieldSpec {
            p,
            m,
            q,
            modulus,
            primitive: Fe(0),
            exp: None,
            log: None,
        };
        field.primitive = field.find_primitive_element();
        debug_assert!(field.has_full_order(field.primitive));
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// Number of elements, p^m.
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Modulus coefficients (little-endian, monic). Empty for m = 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn primitive_element(&self) -> Fe {
        self.primitive
    }

    /// Validates an integer code as an element of this field.
    pub fn element(&self, code: u64) -> Result<Fe, FieldError> {
        if code < self.q {
            Ok(Fe(code))
        } else {
            Err(FieldError::NotAnElement(code, self.q))
        }
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.m == 1 {
            Fe((a.0 + b.0) % self.p)
        } else if self.p == 2 {
            Fe(a.0 ^ b.0)
        } else {
            let mut out = 0;
            let mut mult = 1;
            let (mut x, mut y) = (a.0, b.0);
            for _ in 0..self.m {
                out += mult * ((x % self.p + y % self.p) % self.p);
                x /= self.p;
                y /= self.p;
                mult *= self.p;
            }
            Fe(out)
        }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.m == 1 {
            Fe((self.p - a.0) % self.p)
        } else if self.p == 2 {
            a
        } else {
            let mut out = 0;
            let mut mult = 1;
            let mut x = a.0;
            for _ in 0..self.m {
                out += mult * ((self.p - x % self.p) % self.p);
                x /= self.p;
                mult *= self.p;
            }
            Fe(out)
        }
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        if let (Some(exp), Some(log)) = (&self.exp, &self.log) {
            let i = log[a.0 as usize] as usize + log[b.0 as usize] as usize;
            return Fe(exp[i]);
        }
        self.raw_mul(a, b)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let (Some(exp), Some(log)) = (&self.exp, &self.log) {
            let i = (self.q - 1) as usize - log[a.0 as usize] as usize;
            return Ok(Fe(exp[i]));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        // Reduce via the multiplicative group order.
        e %= self.q - 1;
        if e == 0 {
            return Fe::ONE;
        }
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Dispatcher used by callers that carry the operation as data.
    pub fn arith(&self, a: Fe, b: Fe, op: ArithOp) -> Result<Fe, FieldError> {
        self.element(a.0)?;
        match op {
            ArithOp::Pow => {}
            _ => {
                self.element(b.0)?;
            }
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow => Ok(self.pow(a, b.0)),
        }
    }

    /// Multiplicative order of `a` (errors on zero).
    pub fn order(&self, a: Fe) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut ord = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while ord % r == 0 && self.pow(a, ord / r) == Fe::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Renders an element as a polynomial in `a` (the residue class of x),
    /// e.g. `a^3+2a+1`. Prime-field elements render as plain integers.
    pub fn render(&self, x: Fe) -> String {
        if self.m == 1 || x.is_zero() {
            return x.0.to_string();
        }
        let mut terms = Vec::new();
        let mut v = x.0;
        for d in 0..self.m {
            let c = v % self.p;
            v /= self.p;
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && d > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let var = match d {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{d}"),
            };
            terms.push(format!("{coeff}{var}"));
        }
        terms.reverse();
        terms.join("+")
    }

    fn raw_mul(&self, a: Fe, b: Fe) -> Fe {
        if self.m == 1 {
            return Fe(a.0 * b.0 % self.p);
        }
        if self.p == 2 {
            // Carryless multiply, then reduce by the modulus bit pattern.
            let mask: u64 = self.modulus.iter().rev().fold(0, |acc, &c| (acc << 1) | c);
            let mut prod: u128 = 0;
            let mut x = a.0 as u128;
            let mut y = b.0;
            while y > 0 {
                if y & 1 == 1 {
                    prod ^= x;
                }
                x <<= 1;
                y >>= 1;
            }
            let deg = self.m;
            let top = 128 - prod.leading_zeros();
            let mut bits = top;
            while bits > deg {
                prod ^= (mask as u128) << (bits - 1 - deg);
                bits = 128 - prod.leading_zeros();
            }
            Fe(prod as u64)
        } else {
            let da = self.digits(a.0);
            let db = self.digits(b.0);
            let m = self.m as usize;
            let mut conv = vec![0u64; 2 * m - 1];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    conv[i + j] = (conv[i + j] + x * y) % self.p;
                }
            }
            // Reduce modulo the monic modulus.
            for i in (m..2 * m - 1).rev() {
                let c = conv[i];
                if c == 0 {
                    continue;
                }
                conv[i] = 0;
                let shift = i - m;
                for (j, &mc) in self.modulus.iter().enumerate().take(m) {
                    let idx = shift + j;
                    conv[idx] = (conv[idx] + (self.p - mc % self.p) * c) % self.p;
                }
            }
            let mut out = 0;
            let mut mult = 1;
            for &c in conv.iter().take(m) {
                out += mult * c;
                mult *= self.p;
            }
            Fe(out)
        }
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut out = vec![0; self.m as usize];
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn has_full_order(&self, a: Fe) -> bool {
        if a.is_zero() {
            return false;
        }
        let n = self.q - 1;
        if n == 0 {
            return true;
        }
        self.pow(a, n) == Fe::ONE && prime_factors(n).iter().all(|&r| self.pow(a, n / r) != Fe::ONE)
    }

    fn find_primitive_element(&self) -> Fe {
        if self.q == 2 {
            return Fe::ONE;
        }
        if self.m > 1 {
            // The residue class of x generates whenever the modulus is
            // primitive; the default modulus always is.
            let x = Fe(self.p);
            if self.has_full_order(x) {
                return x;
            }
        }
        for code in 2..self.q {
            if self.has_full_order(Fe(code)) {
                return Fe(code);
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u64; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut acc = Fe::ONE;
        for i in 0..n {
            exp[i] = acc.0;
            exp[i + n] = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.raw_mul(acc, self.primitive);
        }
        debug_assert_eq!(acc, Fe::ONE);
        self.exp = Some(exp);
        self.log = Some(log);
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    let mut out: u64 = 1;
    for _ in 0..m {
        out = out.checked_mul(p)?;
        if out > MAX_FIELD_SIZE {
            return None;
        }
    }
    Some(out)
}

/// Polynomial remainder over GF(p); inputs little-endian, divisor monic.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + (p - bc % p) * lead) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial-division irreducibility test for a monic polynomial over GF(p).
pub fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if f[0] == 0 {
        // Divisible by x (degree-1 polys x+c are still fine: deg 1 below).
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        // All monic divisor candidates of degree d, enumerated by the
        // integer code of their low coefficients.
        let mut count: u64 = 1;
        for _ in 0..d {
            count *= p;
        }
        for code in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut v = code;
            for gc in g.iter_mut().take(d) {
                *gc = v % p;
                v /= p;
            }
            g[d] = 1;
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c % p == 0) {
                return false;
            }
        }
    }
    true
}

/// Order of x modulo a monic irreducible f over GF(p): builds the quotient
/// ring arithmetic directly, without a full FieldSpec.
fn x_has_full_order(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u32;
    let q = {
        let mut acc: u64 = 1;
        for _ in 0..m {
            acc *= p;
        }
        acc
    };
    let spec = FieldSpec {
        p,
        m,
        q,
        modulus: f.to_vec(),
        primitive: Fe(p),
        exp: None,
        log: None,
    };
    spec.has_full_order(Fe(p))
}

/// The lexicographically smallest primitive polynomial of degree m over
/// GF(p): smallest integer code of the non-leading coefficients among monic
/// irreducible polynomials whose root generates the multiplicative group.
pub fn smallest_primitive_polynomial(p: u64, m: u32) -> Vec<u64> {
    let count = {
        let mut acc: u64 = 1;
        for _ in 0..m {
            acc *= p;
        }
        acc
    };
    for code in 1..count {
        let mut f = vec![0u64; m as usize + 1];
        let mut v = code;
        for c in f.iter_mut().take(m as usize) {
            *c = v % p;
            v /= p;
        }
        f[m as usize] = 1;
        if f[0] != 0 && poly_is_irreducible(&f, p) && x_has_full_order(&f, p) {
            return f;
        }
    }
    unreachable!("a primitive polynomial of every degree exists over GF(p)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf7_primitive_element_order_by_enumeration() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f.primitive_element(), Fe(3));
        // Oracle: enumerate powers directly.
        let mut acc = Fe::ONE;
        let mut seen = Vec::new();
        for _ in 0..6 {
            acc = f.mul(acc, Fe(3));
            seen.push(acc);
        }
        assert_eq!(acc, Fe::ONE);
        seen.pop();
        assert!(!seen.contains(&Fe::ONE));
    }

    #[test]
    fn gf16_default_modulus_and_primitive() {
        let f = FieldSpec::new(2, 4, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]); // x^4 + x + 1
        let a = f.primitive_element();
        assert_eq!(a, Fe(2));
        // alpha^15 = 1, alpha^5 != 1, alpha^3 != 1 by repeated squaring.
        assert_eq!(f.pow(a, 15), Fe::ONE);
        assert_ne!(f.pow(a, 5), Fe::ONE);
        assert_ne!(f.pow(a, 3), Fe::ONE);
    }

    #[test]
    fn gf2_trivial_group() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.primitive_element(), Fe::ONE);
    }

    #[test]
    fn arith_examples() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.mul(Fe(3), Fe(5)), Fe(1)); // 15 mod 7

        let f16 = FieldSpec::new(2, 4, Some(&[1, 1, 0, 0, 1])).unwrap();
        let a = Fe(2);
        assert_eq!(f16.mul(a, f16.pow(a, 3)), Fe(3)); // alpha^4 = alpha + 1

        for x in 0..16 {
            assert_eq!(f16.mul(Fe(x), Fe::ONE), Fe(x));
        }
    }

    #[test]
    fn arith_dispatcher() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f.arith(Fe(3), Fe(5), ArithOp::Add).unwrap(), Fe(1));
        assert_eq!(f.arith(Fe(3), Fe(5), ArithOp::Sub).unwrap(), Fe(5));
        assert_eq!(f.arith(Fe(3), Fe(5), ArithOp::Mul).unwrap(), Fe(1));
        assert_eq!(f.arith(Fe(3), Fe(5), ArithOp::Div).unwrap(), Fe(2));
        assert_eq!(f.arith(Fe(3), Fe(0), ArithOp::Inv).unwrap(), Fe(5));
        // Pow reads the second operand as a plain integer exponent.
        assert_eq!(f.arith(Fe(3), Fe(6), ArithOp::Pow).unwrap(), Fe(1));
        assert!(matches!(
            f.arith(Fe(3), Fe(0), ArithOp::Div),
            Err(FieldError::DivisionByZero)
        ));
        assert!(matches!(
            f.arith(Fe(3), Fe(9), ArithOp::Mul),
            Err(FieldError::NotAnElement(9, 7))
        ));
    }

    #[test]
    fn inverses_exhaustive_small_fields() {
        for (p, m) in [(2, 1), (7, 1), (2, 4), (3, 2), (5, 2), (2, 8), (251, 1)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for code in 1..f.q() {
                let a = Fe(code);
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), Fe::ONE, "GF({}) code {}", f.q(), code);
            }
        }
    }

    #[test]
    fn frobenius_additivity() {
        for (p, m) in [(3, 2), (5, 2), (2, 6), (7, 2)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            for a in 0..f.q().min(64) {
                for b in 0..f.q().min(64) {
                    let lhs = f.pow(f.add(Fe(a), Fe(b)), p);
                    let rhs = f.add(f.pow(Fe(a), p), f.pow(Fe(b), p));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn primitive_order_invariant() {
        for (p, m) in [(2, 4), (3, 3), (31, 1), (2, 10)] {
            let f = FieldSpec::new(p, m, None).unwrap();
            let g = f.primitive_element();
            let n = f.q() - 1;
            assert_eq!(f.pow(g, n), Fe::ONE);
            for r in prime_factors(n) {
                assert_ne!(f.pow(g, n / r), Fe::ONE);
            }
        }
    }

    #[test]
    fn large_binary_field_no_tables() {
        let f = FieldSpec::new(2, 17, None).unwrap();
        assert_eq!(f.q(), 1 << 17);
        assert!(f.exp.is_none());
        let a = f.primitive_element();
        assert_eq!(f.pow(a, f.q() - 1), Fe::ONE);
        // q - 1 = 131071 is prime, so every non-unit element generates.
        assert!(is_prime(f.q() - 1));
        for code in [3u64, 1234, 99999] {
            let x = Fe(code);
            assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
            assert_eq!(f.mul(f.pow(x, 5), f.pow(x, 7)), f.pow(x, 12));
        }
    }

    #[test]
    fn odd_extension_above_table_limit() {
        // 3^11 = 177147 > 2^16 exercises the digit-vector path.
        let f = FieldSpec::new(3, 11, None).unwrap();
        assert!(f.exp.is_none());
        for code in [2u64, 500, 100_000] {
            let x = Fe(code);
            assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
        }
        let g = f.primitive_element();
        assert_eq!(f.pow(g, f.q() - 1), Fe::ONE);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            FieldSpec::new(6, 1, None),
            Err(FieldError::NonPrime(6))
        ));
        assert!(matches!(
            FieldSpec::new(7, 0, None),
            Err(FieldError::ZeroDegree)
        ));
        // x^4 + 1 = (x^2+x+1)^2 ... actually reducible over GF(2) anyway.
        assert!(matches!(
            FieldSpec::new(2, 4, Some(&[1, 0, 0, 0, 1])),
            Err(FieldError::ReducibleModulus(2))
        ));
        // Non-monic.
        assert!(FieldSpec::new(3, 2, Some(&[1, 0, 2])).is_err());
        let f = FieldSpec::new(7, 1, None).unwrap();
        assert!(matches!(f.inv(Fe::ZERO), Err(FieldError::DivisionByZero)));
        assert!(f.element(7).is_err());
    }

    #[test]
    fn non_primitive_irreducible_modulus_still_works() {
        // x^4+x^3+x^2+x+1 is irreducible over GF(2) but x has order 5,
        // so the primitive element must be found by scanning.
        let f = FieldSpec::new(2, 4, Some(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(f.order(Fe(2)).unwrap(), 5);
        assert!(f.has_full_order(f.primitive_element()));
    }

    #[test]
    fn render_polynomials() {
        let f = FieldSpec::new(2, 4, None).unwrap();
        assert_eq!(f.render(Fe(0)), "0");
        assert_eq!(f.render(Fe(1)), "1");
        assert_eq!(f.render(Fe(2)), "a");
        assert_eq!(f.render(Fe(3)), "a+1");
        assert_eq!(f.render(Fe(13)), "a^3+a^2+1");
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(f9.render(Fe(7)), "2a+1");
    }
}
