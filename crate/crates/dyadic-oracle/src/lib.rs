//! Exact dyadic-rational reference arithmetic for tests.
//!
//! Every finite `f64` is a dyadic rational `m * 2^e`. [`Dyadic`] represents
//! such numbers with an unbounded integer mantissa, so sums and products of
//! floats can be evaluated *exactly* and compared against the results of
//! ordinary floating-point or double-double code. A small fixed-point
//! evaluator supplies sine and cosine references good to better than 2^-230.
//!
//! This crate is test tooling. Nothing here is tuned for speed and none of
//! it should be linked into shipped binaries.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Fractional bits carried by the fixed-point trig evaluator.
pub const TRIG_FRAC_BITS: u32 = 250;

/// floor(pi/2 * 2^250), precomputed with 400-bit arithmetic.
const PI_OVER_2_X2POW250: &str =
    "2841965444466924408439335490451014551979635760378065859052907430608897613017";

/// An exact dyadic rational `mant * 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "Dyadic::from_f64 requires a finite value");
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            // subnormal (or zero)
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Dyadic {
            mant: BigInt::from(mant) * sign,
            exp,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic {
            mant: BigInt::from(v),
            exp: 0,
        }
    }

    /// 2^k as a dyadic value.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mant: BigInt::from(1),
            exp: k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.mant.is_zero() {
            return other.clone();
        }
        if other.mant.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        Dyadic { mant: a + b, exp }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let diff = self.sub(other);
        if diff.mant.is_zero() {
            Ordering::Equal
        } else if diff.mant.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn eq_value(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }

    /// |self| <= |other|, exactly.
    pub fn abs_le(&self, other: &Self) -> bool {
        self.abs().cmp_value(&other.abs()) != Ordering::Greater
    }

    /// Lossy conversion for diagnostics (top 53 bits, truncated).
    pub fn approx_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let neg = self.mant.is_negative();
        let mag = self.mant.abs();
        let bits = mag.bits() as i64;
        let shift = bits - 53;
        let (top, exp) = if shift > 0 {
            (mag >> shift as u64, self.exp + shift)
        } else {
            (mag << (-shift) as u64, self.exp + shift)
        };
        let digits = top.to_u64_digits().1;
        let m = digits.first().copied().unwrap_or(0) as f64;
        let v = m * (exp as f64).exp2();
        if neg {
            -v
        } else {
            v
        }
    }
}

/// Exact `a + b` over f64 inputs.
pub fn exact_add(a: f64, b: f64) -> Dyadic {
    Dyadic::from_f64(a).add(&Dyadic::from_f64(b))
}

/// Exact `a * b` over f64 inputs.
pub fn exact_mul(a: f64, b: f64) -> Dyadic {
    Dyadic::from_f64(a).mul(&Dyadic::from_f64(b))
}

/// Exact value of an unevaluated double-double pair `hi + lo`.
pub fn exact_pair(hi: f64, lo: f64) -> Dyadic {
    exact_add(hi, lo)
}

fn pi_over_2_fix() -> BigInt {
    PI_OVER_2_X2POW250.parse().expect("valid integer literal")
}

/// pi/2 as a dyadic value, accurate to 2^-250.
pub fn pi_over_2() -> Dyadic {
    Dyadic::new(pi_over_2_fix(), -(TRIG_FRAC_BITS as i64))
}

/// Round a dyadic value to the fixed-point grid `2^-TRIG_FRAC_BITS`
/// (truncated toward zero; error below one grid unit).
fn to_fix(v: &Dyadic) -> BigInt {
    let shift = v.exp + TRIG_FRAC_BITS as i64;
    if shift >= 0 {
        &v.mant << shift as u64
    } else {
        &v.mant >> (-shift) as u64
    }
}

fn fix_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> TRIG_FRAC_BITS as u64
}

/// Sine and cosine of an exact angle, via reduction modulo a 250-bit pi/2
/// and a Taylor series evaluated in 250-bit fixed point.
///
/// The returned values are accurate to a few units of 2^-234 for |theta|
/// up to about 2^16 — far tighter than anything asserted against them.
pub fn sincos(theta: &Dyadic) -> (Dyadic, Dyadic) {
    let pi2 = pi_over_2_fix();
    let t = to_fix(theta);

    // k = nearest integer to theta / (pi/2)
    let num = if t.is_negative() {
        &t * 2 - &pi2
    } else {
        &t * 2 + &pi2
    };
    let k_big = num / (&pi2 * 2);
    let r = &t - &k_big * &pi2;

    let quadrant: BigInt = ((&k_big % 4) + 4) % 4;
    let quadrant = quadrant.to_u64_digits().1.first().copied().unwrap_or(0);

    let (s, c) = sincos_series(&r);
    let (sin_fix, cos_fix) = match quadrant {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    let e = -(TRIG_FRAC_BITS as i64);
    (Dyadic::new(sin_fix, e), Dyadic::new(cos_fix, e))
}

/// Taylor series for |r| <= pi/4 + slack, in fixed point.
fn sincos_series(r: &BigInt) -> (BigInt, BigInt) {
    let r2 = fix_mul(r, r);

    // sin r = r - r^3/3! + ...
    let mut sin = r.clone();
    let mut term = r.clone();
    let mut k: i64 = 1;
    loop {
        term = fix_mul(&term, &r2) / ((2 * k) * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sin -= &term;
        } else {
            sin += &term;
        }
        k += 1;
    }

    // cos r = 1 - r^2/2! + ...
    let one = BigInt::from(1) << TRIG_FRAC_BITS as u64;
    let mut cos = one.clone();
    let mut term = one;
    let mut k: i64 = 1;
    loop {
        term = fix_mul(&term, &r2) / ((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            cos -= &term;
        } else {
            cos += &term;
        }
        k += 1;
    }

    (sin, cos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Dyadic, b: f64, tol: f64) {
        let diff = a.sub(&Dyadic::from_f64(b)).abs();
        assert!(
            diff.cmp_value(&Dyadic::from_f64(tol)) == Ordering::Less,
            "|{} - {}| >= {}",
            a.approx_f64(),
            b,
            tol
        );
    }

    #[test]
    fn exact_sum_of_point_one_and_point_two() {
        let exact = exact_add(0.1, 0.2);
        let rounded = Dyadic::from_f64(0.1 + 0.2);
        assert!(!exact.eq_value(&rounded)); // 0.3 is not representable
        let resid = exact.sub(&rounded);
        assert!(resid.abs_le(&Dyadic::from_f64(1e-16)));
    }

    #[test]
    fn exact_product_splits() {
        let big = (1u64 << 27) as f64 + 1.0;
        let exact = exact_mul(big, big);
        // (2^27+1)^2 = 2^54 + 2^28 + 1 — one bit beyond f64.
        let expect = Dyadic::from_i64((1i64 << 54) + (1i64 << 28) + 1);
        assert!(exact.eq_value(&expect));
    }

    #[test]
    fn sincos_matches_native_at_machine_scale() {
        for &x in &[0.0, 0.5, 1.0, -0.7, 1.5, 3.0, -2.9, 10.25, 100.5] {
            let (s, c) = sincos(&Dyadic::from_f64(x));
            close(&s, x.sin(), 1e-15);
            close(&c, x.cos(), 1e-15);
        }
    }

    #[test]
    fn sincos_pythagorean_identity() {
        for &x in &[0.3, 1.1, 7.7, -42.0] {
            let (s, c) = sincos(&Dyadic::from_f64(x));
            let one = Dyadic::from_i64(1);
            let resid = s.mul(&s).add(&c.mul(&c)).sub(&one).abs();
            assert!(resid.abs_le(&Dyadic::pow2(-230)));
        }
    }

    #[test]
    fn quarter_turn_is_exact_to_reference_precision() {
        let (s, c) = sincos(&pi_over_2());
        let one = Dyadic::from_i64(1);
        assert!(s.sub(&one).abs().abs_le(&Dyadic::pow2(-230)));
        assert!(c.abs().abs_le(&Dyadic::pow2(-230)));
    }
}
