use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ(x) is finite in double precision.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(format!("gamma requires x > 0, got {x}")));
    }
    if x > GAMMA_MAX_ARG {
        return Err(domain(format!("gamma overflows for x = {x}")));
    }
    Ok(gamma_positive(x))
}

fn gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum in its accurate range.
        return gamma_positive(x + 1.0) / x;
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // Split the power to stay finite up to GAMMA_MAX_ARG.
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * acc
}

/// Γ(x) on the whole real line except the poles, via reflection.
pub(crate) fn gamma_real(x: f64) -> Result<f64> {
    if x > 0.0 {
        return gamma_fn(x);
    }
    if x == x.floor() {
        return Err(domain(format!("gamma has a pole at {x}")));
    }
    let s = (PI * x).sin();
    Ok(PI / (s * gamma_fn(1.0 - x)?))
}

/// 1/Γ(x), zero at the poles.
pub(crate) fn rgamma_real(x: f64) -> Result<f64, Error> {
    if x <= 0.0 && x == x.floor() {
        return Ok(0.0);
    }
    Ok(1.0 / gamma_real(x)?)
}

// Taylor coefficients of 1/Γ(z) = Σ c_k z^k, k = 1..=26.
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
];

/// Quantities needed by Temme's series for |mu| <= 1/2:
/// `(gam1, gam2, 1/Γ(1+mu), 1/Γ(1-mu))` with
/// gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu), gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12);
    // 1/Γ(1+mu) = Σ c_k mu^(k-1); split into even and odd parts in mu.
    let mu2 = mu * mu;
    let mut even = 0.0;
    let mut odd = 0.0;
    for (k, c) in RGAMMA_TAYLOR.iter().enumerate().rev() {
        // k is the zero-based power of mu
        if k % 2 == 0 {
            even = even * mu2 + c;
        } else {
            odd = odd * mu2 + c;
        }
    }
    // 1/Γ(1+mu) = even + mu*odd, 1/Γ(1-mu) = even - mu*odd
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (-odd, even, gampl, gammi)
}
