//! Exact dyadic arithmetic used as the fallback path of the sign predicates.
//!
//! Every finite `f64` is `m * 2^e` for integers `m`, `e`; sums and products of
//! such values stay dyadic, so determinants of input coordinates are computed
//! without any rounding.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: i32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn from_f64(v: f64) -> Self {
        debug_assert!(v.is_finite());
        if v == 0.0 {
            return Self::zero();
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let fraction = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let m = BigInt::from(m);
        Dyadic { mantissa: if negative { -m } else { m }, exp: e }
    }

    pub fn signum(&self) -> i8 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i32) {
        match a.exp.cmp(&b.exp) {
            Ordering::Equal => (a.mantissa.clone(), b.mantissa.clone(), a.exp),
            Ordering::Less => {
                let shift = (b.exp - a.exp) as usize;
                (a.mantissa.clone(), &b.mantissa << shift, a.exp)
            }
            Ordering::Greater => {
                let shift = (a.exp - b.exp) as usize;
                (&a.mantissa << shift, b.mantissa.clone(), b.exp)
            }
        }
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.mantissa.is_zero() {
            return rhs.clone();
        }
        if rhs.mantissa.is_zero() {
            return self.clone();
        }
        let (a, b, exp) = Dyadic::aligned(self, rhs);
        Dyadic { mantissa: a + b, exp }
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.mantissa.is_zero() || rhs.mantissa.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mantissa: &self.mantissa * &rhs.mantissa, exp: self.exp + rhs.exp }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exp: self.exp }
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Dyadic {
    pub fn cmp_value(&self, other: &Dyadic) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

/// Exact `det [[a, b], [c, d]]` of dyadic entries.
pub fn det2(a: &Dyadic, b: &Dyadic, c: &Dyadic, d: &Dyadic) -> Dyadic {
    &(a * d) - &(b * c)
}

/// Exact 3x3 determinant with rows `u`, `v`, `w`.
pub fn det3(u: [&Dyadic; 3], v: [&Dyadic; 3], w: [&Dyadic; 3]) -> Dyadic {
    let m0 = det2(v[1], v[2], w[1], w[2]);
    let m1 = det2(v[0], v[2], w[0], w[2]);
    let m2 = det2(v[0], v[1], w[0], w[1]);
    &(&(u[0] * &m0) - &(u[1] * &m1)) + &(u[2] * &m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_roundtrips_small_values() {
        for v in [1.0, -2.5, 0.1, 1e-300, -1e300, f64::MIN_POSITIVE / 4.0] {
            let d = Dyadic::from_f64(v);
            let back = d.mantissa.to_string().parse::<f64>().unwrap() * 2f64.powi(d.exp);
            if v.abs() > 1e-290 && v.abs() < 1e290 {
                assert_eq!(back, v);
            }
            assert_eq!(d.signum(), v.signum() as i8);
        }
    }

    #[test]
    fn sums_are_exact() {
        // 1e16 + 1 - 1e16 is 0 in f64 but 1 exactly.
        let a = Dyadic::from_f64(1e16);
        let one = Dyadic::from_f64(1.0);
        let r = &(&a + &one) - &a;
        assert_eq!(r.cmp_value(&one), Ordering::Equal);
    }
}
