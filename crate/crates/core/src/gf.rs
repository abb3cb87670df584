//! GF(2^t) arithmetic for 2 <= t <= 16 with log/exp tables, plus dense
//! polynomials over the field (evaluation, division, Lagrange interpolation).
//!
//! Each field uses a fixed published modulus (for t = 8 that is
//! x^8 + x^4 + x^3 + x^2 + 1 = 0x11d). The constructor re-verifies
//! irreducibility by trial division and primitivity of x while filling the
//! tables, so a bad constant cannot slip through silently.

use crate::{Error, Result};

/// Field element, always `< 2^t` for the owning context.
pub type FieldElem = u16;

/// One primitive modulus per degree, index `t - 2`. Bit k = coefficient of x^k.
const MODULI: [u32; 15] = [
    0x7,     // t=2:  x^2 + x + 1
    0xb,     // t=3:  x^3 + x + 1
    0x13,    // t=4:  x^4 + x + 1
    0x25,    // t=5:  x^5 + x^2 + 1
    0x43,    // t=6:  x^6 + x + 1
    0x89,    // t=7:  x^7 + x^3 + 1
    0x11d,   // t=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // t=9:  x^9 + x^4 + 1
    0x409,   // t=10: x^10 + x^3 + 1
    0x805,   // t=11: x^11 + x^2 + 1
    0x1053,  // t=12: x^12 + x^6 + x^4 + x + 1
    0x201b,  // t=13: x^13 + x^4 + x^3 + x + 1
    0x4443,  // t=14: x^14 + x^10 + x^6 + x + 1
    0x8003,  // t=15: x^15 + x + 1
    0x1100b, // t=16: x^16 + x^12 + x^3 + x + 1
];

pub struct FieldCtx {
    t: u32,
    modulus: u32,
    q: usize,
    exp: Vec<u16>, // exp[i] = x^i, doubled so mul needs no reduction mod q-1
    log: Vec<u16>,
}

impl FieldCtx {
    pub fn new(t: u32) -> Result<Self> {
        if !(2..=16).contains(&t) {
            return Err(Error::invalid(format!(
                "field degree must be in 2..=16, got {t}"
            )));
        }
        let modulus = MODULI[(t - 2) as usize];
        if !poly2_irreducible(modulus) {
            return Err(Error::invalid(format!(
                "modulus {modulus:#x} for t={t} is reducible"
            )));
        }
        let q = 1usize << t;
        let mut exp = vec![0u16; 2 * (q - 1)];
        let mut log = vec![u16::MAX; q];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().enumerate().take(q - 1) {
            if log[x as usize] != u16::MAX {
                return Err(Error::invalid(format!(
                    "modulus {modulus:#x} for t={t} is not primitive"
                )));
            }
            *slot = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x >> t != 0 {
                x ^= modulus;
            }
        }
        if x != 1 {
            return Err(Error::invalid(format!(
                "x^(2^{t}-1) != 1 for modulus {modulus:#x}"
            )));
        }
        let (lo, hi) = exp.split_at_mut(q - 1);
        hi.copy_from_slice(lo);
        Ok(FieldCtx { t, modulus, q, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.t
    }

    /// Field size q = 2^t.
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Validates that `v` is a field element.
    pub fn elem(&self, v: u64) -> Result<FieldElem> {
        if v < self.q as u64 {
            Ok(v as FieldElem)
        } else {
            Err(Error::invalid(format!(
                "{v} is not an element of GF(2^{})",
                self.t
            )))
        }
    }

    /// x^i for 0 <= i < q-1; powers of the generator in order.
    pub fn generator_power(&self, i: usize) -> FieldElem {
        debug_assert!(i < self.q - 1);
        self.exp[i]
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!((a as usize) < self.q && (b as usize) < self.q);
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!((a as usize) < self.q && (b as usize) < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        debug_assert!((a as usize) < self.q);
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.exp[self.q - 1 - self.log[a as usize] as usize])
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        debug_assert!((a as usize) < self.q);
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize]
    }
}

/// Remainder of binary polynomial division (carry-less).
fn poly2_rem(mut num: u64, den: u64) -> u64 {
    debug_assert!(den != 0);
    let dd = 63 - den.leading_zeros();
    while num != 0 {
        let dn = 63 - num.leading_zeros();
        if dn < dd {
            break;
        }
        num ^= den << (dn - dd);
    }
    num
}

/// Trial division by every binary polynomial of degree 1..=deg/2.
fn poly2_irreducible(p: u32) -> bool {
    let deg = 31 - p.leading_zeros();
    for d in 1..=deg / 2 {
        for den in (1u64 << d)..(1u64 << (d + 1)) {
            if poly2_rem(p as u64, den) == 0 {
                return false;
            }
        }
    }
    true
}

/// Dense polynomial over GF(2^t): `coeffs[k]` multiplies x^k, trailing
/// zeros trimmed, zero polynomial = empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, f: &FieldCtx, x: FieldElem) -> FieldElem {
        let mut acc: FieldElem = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn add(f: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = vec![0; n];
        for (k, o) in out.iter_mut().enumerate() {
            let ca = a.coeffs.get(k).copied().unwrap_or(0);
            let cb = b.coeffs.get(k).copied().unwrap_or(0);
            *o = f.add(ca, cb);
        }
        Poly::from_coeffs(out)
    }

    pub fn mul(f: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(ca, cb));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn mul_scalar(f: &FieldCtx, a: &Poly, s: FieldElem) -> Poly {
        Poly::from_coeffs(a.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn div_rem(f: &FieldCtx, num: &Poly, den: &Poly) -> Result<(Poly, Poly)> {
        let dd = den
            .degree()
            .ok_or_else(|| Error::invalid("polynomial division by zero".to_string()))?;
        let lead_inv = f.inv(den.coeffs[dd])?;
        let mut rem = num.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), Poly::from_coeffs(rem)));
        }
        let mut quot = vec![0; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            quot[k - dd] = qc;
            for (j, &dc) in den.coeffs.iter().enumerate() {
                rem[k - dd + j] = f.add(rem[k - dd + j], f.mul(qc, dc));
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Unique polynomial of degree < points.len() through the given points
    /// (Lagrange). Errors on a repeated x coordinate.
    pub fn interpolate(f: &FieldCtx, points: &[(FieldElem, FieldElem)]) -> Result<Poly> {
        for (i, (xi, _)) in points.iter().enumerate() {
            for (xj, _) in &points[..i] {
                if xi == xj {
                    return Err(Error::DuplicatePoint);
                }
            }
        }
        if points.is_empty() {
            return Ok(Poly::zero());
        }
        // master(x) = prod (x + x_j); each basis poly is master / (x + x_i)
        let mut master = Poly::constant(1);
        for &(xj, _) in points {
            master = Poly::mul(f, &master, &Poly::from_coeffs(vec![xj, 1]));
        }
        let mut acc = Poly::zero();
        for &(xi, yi) in points {
            if yi == 0 {
                continue;
            }
            let (basis, rem) = Poly::div_rem(f, &master, &Poly::from_coeffs(vec![xi, 1]))?;
            debug_assert!(rem.is_zero());
            let denom = basis.eval(f, xi);
            let scale = f.mul(yi, f.inv(denom)?);
            acc = Poly::add(f, &acc, &Poly::mul_scalar(f, &basis, scale));
        }
        Ok(acc)
    }
}
