//! Quadrature rules: composite Simpson on uniform samples and composite
//! Gauss–Legendre on panels.

use num_complex::Complex64;

/// Composite Simpson weights for `n` uniform samples (`n` odd, `n ≥ 3`) with spacing `h`.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 3 && n % 2 == 1, "Simpson needs an odd number of samples");
    (0..n)
        .map(|k| {
            let c = if k == 0 || k == n - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect()
}

/// Composite Simpson sum of uniformly spaced complex samples.
pub fn simpson(samples: &[Complex64], h: f64) -> Complex64 {
    simpson_weights(samples.len(), h)
        .iter()
        .zip(samples)
        .map(|(w, s)| s * w)
        .sum()
}

/// Simpson rule for `f` on `[a, b]` with `n` (odd) nodes.
pub fn simpson_fn<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / (n - 1) as f64;
    let samples: Vec<Complex64> = (0..n).map(|k| f(a + k as f64 * h)).collect();
    simpson(&samples, h)
}

const GL_X: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL_W: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_3,
    0.219_086_362_515_982,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

/// Composite 10-point Gauss–Legendre rule on `panels` equal panels.
pub fn gauss_legendre<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> Complex64 {
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in GL_X.iter().zip(GL_W) {
            s += (f(mid + half * x) + f(mid - half * x)) * w;
        }
        total += s * half;
    }
    total
}

/// Real-valued convenience wrapper around [`gauss_legendre`].
pub fn gauss_legendre_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    gauss_legendre(|x| Complex64::new(f(x), 0.0), a, b, panels).re
}
