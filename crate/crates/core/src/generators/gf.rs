//! Finite fields GF(q) for prime powers q <= 16 as explicit lookup tables.
//!
//! Elements of GF(p^e) are polynomials over GF(p) of degree < e, encoded by their
//! base-p digits (constant term least significant). Extension fields reduce modulo
//! the Conway polynomial of that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order with bundled tables.
pub const MAX_FIELD_ORDER: usize = 16;

/// `q = p^e` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub q: usize,
    pub p: usize,
    pub e: u32,
}

impl PrimePower {
    pub fn new(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::input(format!("{q} is not a prime power")));
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut rest = q;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::input(format!("{q} is not a prime power")));
        }
        Ok(Self { q, p, e })
    }
}

/// Monic Conway polynomials, low-order coefficients first (leading 1 omitted).
fn conway(q: usize) -> Option<&'static [usize]> {
    match q {
        4 => Some(&[1, 1]),
        8 => Some(&[1, 1, 0]),
        9 => Some(&[2, 2]),
        16 => Some(&[1, 1, 0, 0]),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct GaloisField {
    order: PrimePower,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl GaloisField {
    pub fn new(order: PrimePower) -> Result<Self> {
        let PrimePower { q, p, e } = order;
        if q > MAX_FIELD_ORDER {
            return Err(Error::input(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let e = e as usize;
        let modulus: Vec<usize> = if e == 1 {
            Vec::new()
        } else {
            conway(q).expect("every prime power <= 16 has a bundled polynomial").to_vec()
        };
        let digits = |x: usize| -> Vec<usize> {
            let mut d = Vec::with_capacity(e);
            let mut x = x;
            for _ in 0..e {
                d.push(x % p);
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;

                let mut prod = vec![0usize; 2 * e];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // x^e = -(modulus) reduction, highest degree first
                for deg in (e..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (k, m) in modulus.iter().enumerate() {
                        let idx = deg - e + k;
                        prod[idx] = (prod[idx] + (p - m) * c) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..e]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or_else(|| Error::input(format!("reduction polynomial for GF({q}) is not irreducible")))?;
            inv[a] = b as u8;
        }
        Ok(Self {
            order,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.order.q
    }

    pub fn order(&self) -> PrimePower {
        self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q() + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn dot3(&self, x: &[usize; 3], y: &[usize; 3]) -> usize {
        let mut s = 0;
        for i in 0..3 {
            s = self.add(s, self.mul(x[i], y[i]));
        }
        s
    }

    /// Exhaustive check of the field axioms over all elements.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let q = self.q();
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv[a] as usize) != 1 {
                return Err(format!("multiplicative inverse fails at {a}"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a},{b})"));
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(PrimePower::new(9).unwrap(), PrimePower { q: 9, p: 3, e: 2 });
        assert_eq!(PrimePower::new(13).unwrap().e, 1);
        for bad in [0, 1, 6, 10, 12, 15] {
            assert!(PrimePower::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn all_bundled_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = GaloisField::new(PrimePower::new(q).unwrap()).unwrap();
            f.verify_axioms().unwrap_or_else(|e| panic!("GF({q}): {e}"));
            for a in 1..q {
                assert!(f.inv(a).is_some());
            }
        }
    }

    #[test]
    fn characteristic_is_p() {
        for q in [4, 8, 9, 16] {
            let f = GaloisField::new(PrimePower::new(q).unwrap()).unwrap();
            let p = f.order().p;
            for a in 0..q {
                let mut s = 0;
                for _ in 0..p {
                    s = f.add(s, a);
                }
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn oversized_field_rejected() {
        assert!(GaloisField::new(PrimePower::new(17).unwrap()).is_err());
    }
}
