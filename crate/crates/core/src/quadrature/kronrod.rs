//! Scaled 7/15-point Gauss–Kronrod panel.

use crate::scalar::{lit, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

/// Gauss weights for `XGK[1]`, `XGK[3]`, `XGK[5]` and the centre.
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_64, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// `(ln ∫_a^b e^{g}, ln error)` for a log-integrand `g`.
///
/// Returns the offending abscissa if `g` is NaN or `+∞` at a node.
pub(crate) fn panel<T: Real, G: Fn(T) -> T>(g: G, a: T, b: T) -> Result<(T, T), T> {
    let half = (b - a) * lit(0.5);
    let centre = (a + b) * lit(0.5);

    let mut xs = [T::zero(); 15];
    let mut wk = [T::zero(); 15];
    let mut wg = [T::zero(); 15];
    for j in 0..7 {
        let dx = half * lit(XGK[j]);
        xs[2 * j] = centre - dx;
        xs[2 * j + 1] = centre + dx;
        wk[2 * j] = lit(WGK[j]);
        wk[2 * j + 1] = lit(WGK[j]);
        if j % 2 == 1 {
            wg[2 * j] = lit(WG[j / 2]);
            wg[2 * j + 1] = lit(WG[j / 2]);
        }
    }
    xs[14] = centre;
    wk[14] = lit(WGK[7]);
    wg[14] = lit(WG[3]);

    let mut ln_vals = [T::zero(); 15];
    let mut top = T::neg_infinity();
    for i in 0..15 {
        let v = g(xs[i]);
        if v.is_nan() || v == T::infinity() {
            return Err(xs[i]);
        }
        ln_vals[i] = v;
        top = top.max(v);
    }
    if top == T::neg_infinity() {
        return Ok((T::neg_infinity(), T::neg_infinity()));
    }

    let mut vals = [T::zero(); 15];
    let mut kron = T::zero();
    let mut gauss = T::zero();
    for i in 0..15 {
        vals[i] = (ln_vals[i] - top).exp();
        kron = kron + wk[i] * vals[i];
        gauss = gauss + wg[i] * vals[i];
    }
    let mean = kron * lit(0.5);
    let mut resasc = T::zero();
    for i in 0..15 {
        resasc = resasc + wk[i] * (vals[i] - mean).abs();
    }
    let resabs = kron;
    let mut err = (kron - gauss).abs();
    if resasc != T::zero() && err != T::zero() {
        let ratio = lit::<T>(200.0) * err / resasc;
        err = resasc * T::one().min(ratio.powf(lit(1.5)));
    }
    let floor = lit::<T>(50.0) * T::epsilon() * resabs;
    if floor > err {
        err = floor;
    }

    let ln_half = half.abs().ln();
    Ok((kron.ln() + top + ln_half, err.ln() + top + ln_half))
}
