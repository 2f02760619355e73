//! The decimal rounding operator and the rounded-arithmetic policy that the
//! experiment modules inject at the end of each computation step.
//!
//! `round_places(x, p, tie)` returns the nearest multiple of `10^-p` to `x`
//! (ties resolved by `tie`), stored as the nearest native binary float to
//! that decimal. `round_sig` is the same operator anchored at `n`
//! significant digits of `x`'s own magnitude.
//!
//! Rounding is evaluated exactly: the float is decomposed into an integer
//! scaled by a power of two, the decimal quantization is performed in
//! integer arithmetic (a `u128` fast path, with a decimal-string path when
//! the magnitudes overflow it), and the quantized decimal is converted back
//! through the platform's correctly-rounded decimal parser. The same inputs
//! therefore produce bit-identical results on every platform.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// How a value exactly halfway between two representable decimals rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieRule {
    /// Ties round to the larger magnitude (spreadsheet ROUND behavior).
    #[default]
    HalfAwayFromZero,
    /// Ties round to the even last digit (IEEE default-style).
    HalfEven,
}

/// How many decimal digits survive each arithmetic step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrecisionSpec {
    /// Native 64-bit arithmetic, no injection.
    Native,
    /// Software double-double arithmetic (~32 significant decimal digits).
    Extended,
    /// Keep `n` significant decimal digits, 1 <= n <= 17.
    SigDigits(u32),
    /// Round at `10^-p`, -15 <= p <= 15 (negative p rounds left of the
    /// decimal point).
    DecimalPlaces(i32),
}

pub const SIG_DIGITS_MIN: u32 = 1;
pub const SIG_DIGITS_MAX: u32 = 17;
pub const DECIMAL_PLACES_MIN: i32 = -15;
pub const DECIMAL_PLACES_MAX: i32 = 15;

impl PrecisionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PrecisionSpec::SigDigits(n) if !(SIG_DIGITS_MIN..=SIG_DIGITS_MAX).contains(&n) => {
                Err(Error::Parameter(format!(
                    "significant digits must be in [{SIG_DIGITS_MIN}, {SIG_DIGITS_MAX}], got {n}"
                )))
            }
            PrecisionSpec::DecimalPlaces(p)
                if !(DECIMAL_PLACES_MIN..=DECIMAL_PLACES_MAX).contains(&p) =>
            {
                Err(Error::Parameter(format!(
                    "decimal places must be in [{DECIMAL_PLACES_MIN}, {DECIMAL_PLACES_MAX}], got {p}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Sort key for "nominal precision": digit policies order by their digit
    /// count, then Native, then Extended.
    pub fn precision_rank(&self) -> (u8, i32) {
        match *self {
            PrecisionSpec::SigDigits(n) => (0, n as i32),
            PrecisionSpec::DecimalPlaces(p) => (0, p),
            PrecisionSpec::Native => (1, 0),
            PrecisionSpec::Extended => (2, 0),
        }
    }
}

impl fmt::Display for PrecisionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PrecisionSpec::Native => write!(f, "native"),
            PrecisionSpec::Extended => write!(f, "extended"),
            PrecisionSpec::SigDigits(n) => write!(f, "{n}"),
            PrecisionSpec::DecimalPlaces(p) => write!(f, "places:{p}"),
        }
    }
}

impl FromStr for PrecisionSpec {
    type Err = Error;

    /// Accepts `native`, `extended`, an integer digit count (significant
    /// digits), or `places:<p>` for fixed decimal places.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = match s.to_ascii_lowercase().as_str() {
            "native" => PrecisionSpec::Native,
            "extended" => PrecisionSpec::Extended,
            _ => {
                if let Some(p) = s.strip_prefix("places:") {
                    let p: i32 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parameter(format!("invalid decimal places '{p}'")))?;
                    PrecisionSpec::DecimalPlaces(p)
                } else {
                    let n: u32 = s
                        .parse()
                        .map_err(|_| Error::Parameter(format!("invalid precision '{s}'")))?;
                    PrecisionSpec::SigDigits(n)
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// The rounding policy injected by the experiment runners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoundingPolicy {
    pub spec: PrecisionSpec,
    pub tie_rule: TieRule,
}

impl RoundingPolicy {
    pub fn new(spec: PrecisionSpec, tie_rule: TieRule) -> Self {
        RoundingPolicy { spec, tie_rule }
    }

    pub fn native() -> Self {
        Self::new(PrecisionSpec::Native, TieRule::default())
    }

    pub fn extended() -> Self {
        Self::new(PrecisionSpec::Extended, TieRule::default())
    }

    pub fn sig_digits(n: u32) -> Self {
        Self::new(PrecisionSpec::SigDigits(n), TieRule::default())
    }

    pub fn decimal_places(p: i32) -> Self {
        Self::new(PrecisionSpec::DecimalPlaces(p), TieRule::default())
    }

    /// Applies the policy to one scalar. Native and Extended pass the value
    /// through (extended values are rounded along a separate path in the
    /// `extended` module); the digit policies quantize it.
    pub fn apply(&self, x: f64) -> Result<f64> {
        match self.spec {
            PrecisionSpec::Native | PrecisionSpec::Extended => {
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(Error::NonFinite(x))
                }
            }
            PrecisionSpec::SigDigits(n) => round_sig(x, n, self.tie_rule),
            PrecisionSpec::DecimalPlaces(p) => round_places(x, p, self.tie_rule),
        }
    }
}

impl Default for RoundingPolicy {
    fn default() -> Self {
        Self::native()
    }
}

/// Rounds `x` at `10^-p`: `round_places(1234.0, -2, ..) == 1200.0`.
///
/// The result is the nearest native float to the exact decimal rounding;
/// rounding it again at the same `p` is a fixed point.
pub fn round_places(x: f64, p: i32, tie_rule: TieRule) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    if !(DECIMAL_PLACES_MIN..=DECIMAL_PLACES_MAX).contains(&p) {
        return Err(Error::Parameter(format!(
            "decimal places must be in [{DECIMAL_PLACES_MIN}, {DECIMAL_PLACES_MAX}], got {p}"
        )));
    }
    Ok(round_at(x, p, tie_rule))
}

/// Rounds `x` to `n` significant decimal digits.
///
/// Equivalent to `round_places(x, n - 1 - floor(log10 |x|))` for nonzero
/// `x`, with the decimal exponent determined exactly.
pub fn round_sig(x: f64, n: u32, tie_rule: TieRule) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    if !(SIG_DIGITS_MIN..=SIG_DIGITS_MAX).contains(&n) {
        return Err(Error::Parameter(format!(
            "significant digits must be in [{SIG_DIGITS_MIN}, {SIG_DIGITS_MAX}], got {n}"
        )));
    }
    if x == 0.0 {
        return Ok(x);
    }
    let p = n as i32 - 1 - floor_log10_exact(x.abs());
    Ok(round_at(x, p, tie_rule))
}

// ---------------------------------------------------------------------------
// Exact rounding core
// ---------------------------------------------------------------------------

/// Splits a finite nonzero float into `(mantissa, exponent)` with
/// `|x| = mantissa * 2^exponent`.
fn decompose(ax: f64) -> (u64, i64) {
    let bits = ax.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    }
}

/// Exact decimal rounding of `x` at `10^-p` with unrestricted `p`.
/// Callers validate ranges; this function only requires `x` finite.
fn round_at(x: f64, p: i32, tie_rule: TieRule) -> f64 {
    if x == 0.0 {
        return x; // preserves the sign of zero
    }
    let negative = x < 0.0;
    let ax = x.abs();
    let magnitude = match round_at_u128(ax, p, tie_rule) {
        Some(v) => v,
        None => round_at_decimal_string(ax, p, tie_rule),
    };
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Integer fast path. `|x| * 10^p` is formed exactly as a `u128` fraction
/// `num / den`; `None` when the scaling would overflow 128 bits.
fn round_at_u128(ax: f64, p: i32, tie_rule: TieRule) -> Option<f64> {
    let (m, e) = decompose(ax);
    let s2 = e + p as i64; // power of two in |x| * 10^p
    let s5 = p as i64; // power of five

    // shifts must keep a leading zero so 2*rem below never overflows
    fn shl_checked(v: u128, shift: i64) -> Option<u128> {
        let shift = u32::try_from(shift).ok()?;
        if 128 - v.leading_zeros() + shift > 127 {
            return None;
        }
        Some(v << shift)
    }

    let mut num = m as u128;
    let mut den = 1u128;
    if s5 > 0 {
        num = num.checked_mul(pow5_u128(s5)?)?;
        if num.leading_zeros() == 0 {
            return None;
        }
    } else if s5 < 0 {
        den = den.checked_mul(pow5_u128(-s5)?)?;
        if den.leading_zeros() == 0 {
            return None;
        }
    }
    if s2 > 0 {
        num = shl_checked(num, s2)?;
    } else if s2 < 0 {
        den = shl_checked(den, -s2)?;
    }

    let q0 = num / den;
    let rem = num % den;
    let round_up = match (2 * rem).cmp(&den) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match tie_rule {
            TieRule::HalfAwayFromZero => true,
            TieRule::HalfEven => q0 & 1 == 1,
        },
    };
    let q = q0 + u128::from(round_up);
    Some(units_to_f64(q, p))
}

/// Converts the exact decimal `q * 10^-p` to the nearest float.
fn units_to_f64(q: u128, p: i32) -> f64 {
    if q == 0 {
        return 0.0;
    }
    // A single multiply or divide by an exact power of ten commits exactly
    // one rounding, so the result is the nearest float to the decimal.
    if q < (1u128 << 53) && p.unsigned_abs() <= 22 {
        let qf = q as f64;
        return match p.cmp(&0) {
            Ordering::Equal => qf,
            Ordering::Greater => qf / POW10_EXACT[p as usize],
            Ordering::Less => qf * POW10_EXACT[p.unsigned_abs() as usize],
        };
    }
    format!("{q}e{}", -p)
        .parse()
        .expect("integer-exponent decimal always parses")
}

/// Decimal-string path for magnitudes outside the integer fast path.
/// Formats the exact decimal expansion of `ax`, quantizes the digit string
/// at `10^-p`, and re-parses.
fn round_at_decimal_string(ax: f64, p: i32, tie_rule: TieRule) -> f64 {
    // 800 fractional digits cover the longest exact expansion of any f64
    // (767 significant digits); the remainder is zero padding.
    let s = format!("{ax:.800e}");
    let (mantissa, exp) = s.split_once('e').expect("exponential format");
    let k: i32 = exp.parse().expect("valid exponent");
    let digits: Vec<u8> = mantissa
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();

    // Digit i sits at place value 10^(k - i); keep places >= 10^-p.
    let keep = k as i64 + p as i64 + 1;
    if keep < 0 {
        return 0.0;
    }
    let keep = keep as usize;

    let (mut kept, first_dropped, tail_nonzero) = if keep >= digits.len() {
        (digits.clone(), 0u8, false)
    } else {
        let tail_nonzero = digits[keep + 1..].iter().any(|&d| d != 0);
        (digits[..keep].to_vec(), digits[keep], tail_nonzero)
    };

    let round_up = match first_dropped.cmp(&5) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            tail_nonzero
                || match tie_rule {
                    TieRule::HalfAwayFromZero => true,
                    TieRule::HalfEven => kept.last().is_some_and(|&d| d & 1 == 1),
                }
        }
    };
    if round_up {
        let mut i = kept.len();
        loop {
            if i == 0 {
                kept.insert(0, 1);
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    if kept.iter().all(|&d| d == 0) {
        return 0.0;
    }

    let q: String = kept.iter().map(|&d| char::from(b'0' + d)).collect();
    format!("{q}e{}", -p)
        .parse()
        .expect("integer-exponent decimal always parses")
}

fn pow5_u128(k: i64) -> Option<u128> {
    // 5^55 is the largest power of five that fits in a u128.
    if k > 55 {
        return None;
    }
    Some(5u128.pow(k as u32))
}

/// Exact powers of ten representable in f64.
const POW10_EXACT: [f64; 23] = [
    1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14, 1e15, 1e16,
    1e17, 1e18, 1e19, 1e20, 1e21, 1e22,
];

// ---------------------------------------------------------------------------
// Exact decimal exponent
// ---------------------------------------------------------------------------

const POW10_TABLE_MIN: i32 = -324;
const POW10_TABLE_MAX: i32 = 308;

struct Pow10Entry {
    val: f64,
    /// Ordering of `val` relative to the exact power of ten it approximates.
    side: Ordering,
}

fn pow10_table() -> &'static Vec<Pow10Entry> {
    static TABLE: OnceLock<Vec<Pow10Entry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (POW10_TABLE_MIN..=POW10_TABLE_MAX)
            .map(|k| {
                let val: f64 = format!("1e{k}").parse().expect("power of ten parses");
                let side = if (0..=22).contains(&k) {
                    Ordering::Equal
                } else {
                    side_of_pow10(val, k)
                };
                Pow10Entry { val, side }
            })
            .collect()
    })
}

/// Compares the float nearest to `10^k` against the exact `10^k` by
/// inspecting its exact decimal expansion.
fn side_of_pow10(val: f64, k: i32) -> Ordering {
    let s = format!("{val:.800e}");
    let (mantissa, exp) = s.split_once('e').expect("exponential format");
    let k2: i32 = exp.parse().expect("valid exponent");
    match k2.cmp(&k) {
        Ordering::Less => Ordering::Less,
        Ordering::Greater => Ordering::Greater,
        Ordering::Equal => {
            // Same leading place: 10^k is "1" followed by zeros.
            let digits = mantissa.bytes().filter(u8::is_ascii_digit);
            let mut first = true;
            for d in digits {
                if first {
                    first = false;
                    match d.cmp(&b'1') {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                if d != b'0' {
                    return Ordering::Greater;
                }
            }
            Ordering::Equal
        }
    }
}

/// `ax` versus exact `10^k`, for positive finite `ax`.
fn cmp_pow10(ax: f64, k: i32) -> Ordering {
    if k > POW10_TABLE_MAX {
        return Ordering::Less; // every finite float is below 10^309
    }
    if k < POW10_TABLE_MIN {
        return Ordering::Greater; // every positive float is above 10^-325
    }
    let entry = &pow10_table()[(k - POW10_TABLE_MIN) as usize];
    match ax.partial_cmp(&entry.val).expect("finite comparison") {
        Ordering::Equal => entry.side,
        other => other,
    }
}

/// Exact `floor(log10 |x|)` for positive finite `ax`.
///
/// A floating estimate is corrected by comparisons against exact powers of
/// ten, so values a hair below a power of ten land in the right decade.
fn floor_log10_exact(ax: f64) -> i32 {
    debug_assert!(ax > 0.0 && ax.is_finite());
    let mut k = ax.log10().floor() as i32;
    while cmp_pow10(ax, k) == Ordering::Less {
        k -= 1;
    }
    while cmp_pow10(ax, k + 1) != Ordering::Less {
        k += 1;
    }
    k
}

#[cfg(test)]
#[allow(clippy::approx_constant)] // decimal literals are test vectors
mod tests {
    use super::*;

    const AWAY: TieRule = TieRule::HalfAwayFromZero;
    const EVEN: TieRule = TieRule::HalfEven;

    #[test]
    fn paper_round_example() {
        assert_eq!(round_places(1234.0, -2, AWAY).unwrap(), 1200.0);
    }

    #[test]
    fn zero_is_a_fixed_point() {
        assert_eq!(round_places(0.0, 5, AWAY).unwrap(), 0.0);
        assert!(round_places(-0.0, 5, AWAY).unwrap().is_sign_negative());
        assert_eq!(round_sig(0.0, 7, AWAY).unwrap(), 0.0);
    }

    #[test]
    fn tie_rules_differ_on_true_ties() {
        assert_eq!(round_places(2.5, 0, AWAY).unwrap(), 3.0);
        assert_eq!(round_places(2.5, 0, EVEN).unwrap(), 2.0);
        assert_eq!(round_places(3.5, 0, EVEN).unwrap(), 4.0);
        assert_eq!(round_places(-2.5, 0, AWAY).unwrap(), -3.0);
        assert_eq!(round_places(-2.5, 0, EVEN).unwrap(), -2.0);
        // 0.125 is exact in binary: a true tie at two places.
        assert_eq!(round_places(0.125, 2, AWAY).unwrap(), 0.13);
        assert_eq!(round_places(0.125, 2, EVEN).unwrap(), 0.12);
    }

    #[test]
    fn pi_at_four_places() {
        assert_eq!(round_places(3.14159265358979, 4, AWAY).unwrap(), 3.1416);
    }

    #[test]
    fn sig_digit_examples() {
        assert_eq!(round_sig(0.0871557427476582, 7, AWAY).unwrap(), 0.08715574);
        assert_eq!(round_sig(1.0, 1, AWAY).unwrap(), 1.0);
        assert_eq!(round_sig(1.0, 17, AWAY).unwrap(), 1.0);
        assert_eq!(round_sig(-123456.0, 2, AWAY).unwrap(), -120000.0);
        assert_eq!(round_sig(0.9961946980917455, 7, AWAY).unwrap(), 0.9961947);
    }

    #[test]
    fn policy_apply_modes() {
        let x = 0.12345678901234567;
        assert_eq!(RoundingPolicy::native().apply(x).unwrap(), x);
        assert_eq!(RoundingPolicy::extended().apply(x).unwrap(), x);
        assert_eq!(
            RoundingPolicy::sig_digits(7)
                .apply(0.9961946980917455)
                .unwrap(),
            0.9961947
        );
        assert_eq!(
            RoundingPolicy::decimal_places(-2).apply(1234.0).unwrap(),
            1200.0
        );
    }

    #[test]
    fn domain_and_parameter_errors() {
        assert!(matches!(
            round_places(f64::NAN, 2, AWAY),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            round_places(f64::INFINITY, 2, AWAY),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            round_places(1.0, 16, AWAY),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            round_places(1.0, -16, AWAY),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(round_sig(1.0, 0, AWAY), Err(Error::Parameter(_))));
        assert!(matches!(round_sig(1.0, 18, AWAY), Err(Error::Parameter(_))));
        assert!(matches!(
            RoundingPolicy::native().apply(f64::NAN),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn seventeen_digits_is_near_identity() {
        for &x in &[
            0.1,
            2.0 / 3.0,
            std::f64::consts::PI,
            6.02214076e23,
            -1.7976931348623157e308,
            5e-324,
        ] {
            assert_eq!(round_sig(x, 17, AWAY).unwrap(), x, "x = {x:e}");
        }
    }

    #[test]
    fn exact_decimal_exponent() {
        assert_eq!(floor_log10_exact(1.0), 0);
        assert_eq!(floor_log10_exact(9.999999999999999), 0);
        assert_eq!(floor_log10_exact(10.0), 1);
        assert_eq!(floor_log10_exact(0.1), -1); // 0.1 stores slightly above 1e-1
        assert_eq!(floor_log10_exact(1e22), 22);
        // 1e23 is not representable; its nearest float lies below 10^23.
        assert_eq!(floor_log10_exact(1e23), 22);
        assert_eq!(floor_log10_exact(1e-300), -300);
        assert_eq!(floor_log10_exact(5e-324), -324);
        assert_eq!(floor_log10_exact(f64::MAX), 308);
    }

    #[test]
    fn string_path_matches_u128_path() {
        // Exercise both engines on values where the fast path applies.
        let cases = [
            (3.141592653589793, 4),
            (0.0871557427476582, 8),
            (1234.0, -2),
            (2.5, 0),
            (9.999999999999999e-5, 6),
            (123456789.123456, -3),
        ];
        for &(x, p) in &cases {
            for tie in [AWAY, EVEN] {
                let fast = round_at_u128(x, p, tie).expect("fast path applies");
                let slow = round_at_decimal_string(x, p, tie);
                assert_eq!(fast.to_bits(), slow.to_bits(), "x={x}, p={p}, {tie:?}");
            }
        }
    }

    #[test]
    fn extreme_magnitudes_take_string_path() {
        // |log10 x| > 300 and subnormals overflow the u128 scaling.
        let x = 1.2345678901234567e307;
        assert_eq!(round_sig(x, 3, AWAY).unwrap(), 1.23e307);
        let tiny = 5e-324; // min subnormal
        assert_eq!(round_sig(tiny, 1, AWAY).unwrap(), 5e-324);
        assert_eq!(round_places(tiny, 15, AWAY).unwrap(), 0.0);
        assert_eq!(round_places(1e307, 15, AWAY).unwrap(), 1e307);
    }

    #[test]
    fn idempotence_spot_checks() {
        for &x in &[3.14159265358979, -0.000123456, 987654.321, 5e-324, 1e300] {
            for &n in &[1u32, 3, 7, 12, 17] {
                let once = round_sig(x, n, AWAY).unwrap();
                assert_eq!(round_sig(once, n, AWAY).unwrap(), once);
            }
            for &p in &[-15i32, -2, 0, 4, 15] {
                let once = round_places(x, p, AWAY).unwrap();
                assert_eq!(round_places(once, p, AWAY).unwrap(), once);
            }
        }
    }

    #[test]
    fn sign_symmetry() {
        for &x in &[3.14159, 0.000123456, 98765.4321, 2.5, 0.125] {
            for &n in &[1u32, 5, 9, 17] {
                assert_eq!(
                    round_sig(-x, n, AWAY).unwrap(),
                    -round_sig(x, n, AWAY).unwrap()
                );
                assert_eq!(
                    round_sig(-x, n, EVEN).unwrap(),
                    -round_sig(x, n, EVEN).unwrap()
                );
            }
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "native".parse::<PrecisionSpec>().unwrap(),
            PrecisionSpec::Native
        );
        assert_eq!(
            "Extended".parse::<PrecisionSpec>().unwrap(),
            PrecisionSpec::Extended
        );
        assert_eq!(
            "7".parse::<PrecisionSpec>().unwrap(),
            PrecisionSpec::SigDigits(7)
        );
        assert_eq!(
            "places:-2".parse::<PrecisionSpec>().unwrap(),
            PrecisionSpec::DecimalPlaces(-2)
        );
        assert!("0".parse::<PrecisionSpec>().is_err());
        assert!("18".parse::<PrecisionSpec>().is_err());
        assert!("places:16".parse::<PrecisionSpec>().is_err());
        assert!("seven".parse::<PrecisionSpec>().is_err());
    }

    #[test]
    fn precision_rank_ordering() {
        let mut specs = vec![
            PrecisionSpec::Extended,
            PrecisionSpec::SigDigits(7),
            PrecisionSpec::Native,
            PrecisionSpec::SigDigits(12),
        ];
        specs.sort_by_key(|s| s.precision_rank());
        assert_eq!(
            specs,
            vec![
                PrecisionSpec::SigDigits(7),
                PrecisionSpec::SigDigits(12),
                PrecisionSpec::Native,
                PrecisionSpec::Extended,
            ]
        );
    }
}
