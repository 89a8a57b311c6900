use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `(C_0, C_1, C_1', C_2, C_3)` for the quadratic family.
pub const QUADRATIC_PRESET: [i64; 5] = [1, 2, 1, 12, 13];

/// Explicit constants, all exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsLedger {
    pub k: u32,
    pub q: u32,
    pub inputs: [BigRational; 5],
    pub c6: BigRational,
    pub c7: BigRational,
    pub c8: BigRational,
    pub c9: BigRational,
    pub delta: BigRational,
    pub omega: BigRational,
    /// `q_min = 2^12 (2 C_1)^{1/(2δ)}`: base `2 C_1` and exponent `1/(2δ)`.
    pub q_min_base: BigRational,
    pub q_min_exponent: BigRational,
    /// `log_2 q_min` when `2 C_1` is a power of two.
    pub q_min_log2: Option<BigRational>,
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn log2_exact(x: &BigRational) -> Option<i64> {
    if !x.is_integer() || x <= &BigRational::zero() {
        return None;
    }
    let n = x.to_integer();
    let bits = n.bits();
    (n == BigInt::one() << (bits - 1)).then_some(bits as i64 - 1)
}

/// Evaluate the constants for `K` numerator and `Q` denominator factors from
/// `(C_0, C_1, C_1', C_2, C_3)`.
pub fn theorem_constants(k: u32, q: u32, inputs: [BigRational; 5]) -> ConstantsLedger {
    let [c0, c1, _c1p, c2, c3] = inputs.clone();
    let kr = r(k as i64);
    let qr = r(q as i64);
    let kq = r((k + q) as i64);
    let one = r(1);
    let c6 = r(2) * &c0 * std::cmp::max(one, &kq * &c0);
    let c7 = &kr * &c0 * &c2 + &c6 * &c0 * &c2;
    let tail = &c0 * &c3 + r(4) * &qr + r(2);
    let c8 = &kr * (&c0 * &c3 + r(2) * &qr) + &c6 * &tail;
    let c9 = &c8 / (r(6) * &c7) + &tail / (r(2) * &c0 * &c2);
    let inner = std::cmp::max(c7.clone(), r(7) * &kq * &c0 * &c0 * &c0 * &c2);
    let delta = (r(24) * inner).recip();
    let base = r(2) * &c1;
    let exponent = (r(2) * &delta).recip();
    let q_min_log2 = log2_exact(&base).map(|b| r(12) + r(b) * &exponent);
    ConstantsLedger {
        k,
        q,
        inputs,
        c6,
        c7,
        c8,
        c9,
        delta,
        omega: BigRational::new(1.into(), 84.into()),
        q_min_base: base,
        q_min_exponent: exponent,
        q_min_log2,
    }
}

impl ConstantsLedger {
    pub fn quadratic(k: u32, q: u32) -> Self {
        theorem_constants(k, q, QUADRATIC_PRESET.map(r))
    }
}
