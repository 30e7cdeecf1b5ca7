//! Gamma and reciprocal gamma via the Lanczos approximation (g = 10.900511,
//! eleven coefficients), accurate to close to machine precision over the
//! argument range used here.

const LANCZOS_G: f64 = 10.900511;

const LANCZOS_COEFFS: [f64; 11] = [
    2.485_740_891_387_536e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_4,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

// 2 sqrt(e / pi)
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;

/// True when `x` sits exactly on a pole of the gamma function.
pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && libm::floor(x) == x
}

/// Γ(x). Returns infinity or NaN on the poles; use [`rgamma`] where the
/// zero-at-pole convention is wanted.
pub(crate) fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        core::f64::consts::PI / (libm::sin(core::f64::consts::PI * x) * gamma(1.0 - x))
    } else {
        let mut s = LANCZOS_COEFFS[0];
        for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            s += c / (x + k as f64 - 1.0);
        }
        s * TWO_SQRT_E_OVER_PI * libm::pow((x - 0.5 + LANCZOS_G) / core::f64::consts::E, x - 0.5)
    }
}

/// 1/Γ(x), returning exactly 0 on the poles (x = 0, −1, −2, …).
pub(crate) fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}
