use crate::{Error, Result};

// Lanczos coefficients (Pugh 2004, r = 10.900511), the set statrs uses.
const LANCZOS_R: f64 = 10.900511;
const LANCZOS_DK: [f64; 11] = [
    2.485_740_891_387_535_655_46e-5,
    1.051_423_785_817_219_742_10,
    -3.456_870_972_220_162_354_69,
    4.512_277_094_668_948_237_00,
    -2.982_852_253_235_766_557_21,
    1.056_397_115_771_267_130_77,
    -1.954_287_731_916_458_695_83e-1,
    1.709_705_434_044_412_243_07e-2,
    -5.719_261_174_043_057_812_83e-4,
    4.633_994_733_599_056_367_08e-6,
    -2.719_949_084_886_077_039_10e-9,
];
// ln(2 sqrt(e / pi))
const LN_TWO_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

// Stirling series coefficients B_{2k} / (2k (2k-1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];
const STIRLING_MIN: f64 = 15.0;
const LN_SQRT_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `ln Gamma(x)` for `x > 0`.
///
/// Lanczos below 15, Stirling series above. Relative error stays below
/// `1e-13` on `[0.5, 500]` away from the zeros at `x = 1, 2`, where the
/// absolute error is a few ulp instead.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma requires a positive finite argument, got {x}"
        )));
    }
    Ok(if x >= STIRLING_MIN {
        stirling(x)
    } else if x >= 0.5 {
        lanczos(x)
    } else {
        lanczos(x + 1.0) - x.ln()
    })
}

fn lanczos(x: f64) -> f64 {
    let s = LANCZOS_DK
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_DK[0], |s, (i, &dk)| s + dk / (x + i as f64 - 1.0));
    s.ln() + LN_TWO_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln()
}

fn stirling(x: f64) -> f64 {
    let z = 1.0 / (x * x);
    let mut p = 1.0 / x;
    let mut tail = 0.0;
    for c in STIRLING {
        tail += c * p;
        p *= z;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_TWO_PI + tail
}

/// `ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b)`.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}
