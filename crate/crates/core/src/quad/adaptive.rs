use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadError, QuadOptions, QuadValue, QuadratureResult};
use crate::error::{domain, Error, Result};

// 21-point Kronrod extension of the 10-point Gauss rule. Odd indices of
// XGK are the Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_766_088,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

pub(crate) const RULE_POINTS: usize = 21;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment<T> {
    pub a: f64,
    pub b: f64,
    pub value: T,
    pub error: f64,
}

/// One application of the 21-point rule on [a, b].
pub(crate) fn gk21<T, F>(f: &mut F, a: f64, b: f64) -> Result<Segment<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<T> {
        let v = f(x)?;
        if !v.is_finite_value() {
            return Err(Error::NonFinite(x));
        }
        Ok(v)
    };
    let fc = eval(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::zero();
    let mut res_abs = fc.modulus() * WGK[10];
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod = kronrod + (f1 + f2) * WGK[j];
        res_abs += WGK[j] * (f1.modulus() + f2.modulus());
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).modulus();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).modulus() + (fv2[j] - mean).modulus());
    }
    let abs_half = half.abs();
    let value = kronrod * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    let error = rescale_error(((kronrod - gauss) * half).modulus(), res_abs, res_asc);
    Ok(Segment { a, b, value, error })
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

struct Ranked<T>(Segment<T>);

impl<T> PartialEq for Ranked<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T> Eq for Ranked<T> {}
impl<T> PartialOrd for Ranked<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Ranked<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

/// Global adaptive integration over the panels delimited by `points`
/// (strictly increasing, at least two entries).
pub(crate) fn adaptive<T, F>(
    mut f: F,
    points: &[f64],
    opts: &QuadOptions,
) -> std::result::Result<QuadratureResult<T>, QuadError<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    opts.validate()?;
    if points.len() < 2 || points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(domain("integration breakpoints must be strictly increasing").into());
    }
    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Segment<T>> = Vec::new();
    let mut evaluations = 0usize;
    let mut total = T::zero();
    let mut total_err = 0.0;
    for w in points.windows(2) {
        let seg = gk21(&mut f, w[0], w[1])?;
        evaluations += RULE_POINTS;
        total = total + seg.value;
        total_err += seg.error;
        heap.push(Ranked(seg));
    }
    loop {
        if total_err <= opts.target(total.modulus()) {
            break;
        }
        let Some(Ranked(worst)) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        // Stop refining segments at the resolution of the abscissae.
        if !(worst.a < mid && mid < worst.b)
            || (worst.b - worst.a) <= 1e3 * f64::EPSILON * worst.a.abs().max(worst.b.abs())
        {
            settled.push(worst);
            continue;
        }
        if evaluations + 2 * RULE_POINTS > opts.max_evaluations {
            heap.push(Ranked(worst));
            let best = summarize(heap, settled, evaluations);
            return Err(QuadError::NotConverged(best));
        }
        let left = gk21(&mut f, worst.a, mid)?;
        let right = gk21(&mut f, mid, worst.b)?;
        evaluations += 2 * RULE_POINTS;
        total = total - worst.value + left.value + right.value;
        total_err += left.error + right.error - worst.error;
        heap.push(Ranked(left));
        heap.push(Ranked(right));
    }
    Ok(summarize(heap, settled, evaluations))
}

/// Sum segments left to right so the result does not depend on heap order.
fn summarize<T: QuadValue>(
    heap: BinaryHeap<Ranked<T>>,
    mut segments: Vec<Segment<T>>,
    evaluations: usize,
) -> QuadratureResult<T> {
    segments.extend(heap.into_iter().map(|r| r.0));
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = T::zero();
    let mut error = 0.0;
    for s in &segments {
        value = value + s.value;
        error += s.error;
    }
    QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
    }
}

/// Adaptive integration of a smooth function over a finite interval [a, b].
pub fn integrate_interval<T, F>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> std::result::Result<QuadratureResult<T>, QuadError<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    try_integrate_interval(|x| Ok(f(x)), a, b, opts)
}

/// Fallible-integrand form of [`integrate_interval`].
pub fn try_integrate_interval<T, F>(
    f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> std::result::Result<QuadratureResult<T>, QuadError<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain("finite interval endpoints required").into());
    }
    if a == b {
        return Ok(QuadratureResult {
            value: T::zero(),
            error_estimate: 0.0,
            evaluations: 1,
        });
    }
    if a > b {
        return try_integrate_interval(f, b, a, opts).map(|r| r.scaled(-1.0));
    }
    adaptive(f, &[a, b], opts)
}
