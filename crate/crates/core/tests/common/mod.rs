//! Reference energies (magnitudes; every bound energy is negative) for
//! a = 2, b = 7 and ℓ = 0..=5.

#![allow(dead_code)]

use spectra_core::Params;

pub const A: f64 = 2.0;
pub const B: f64 = 7.0;

pub fn params(ell: u32) -> Params {
    Params::new(A, B, ell).unwrap()
}

/// TRA, per ℓ.
pub const TRA_REF: [&[f64]; 6] = [
    &[
        195.833847586,
        90.848444079,
        33.647121748,
        8.633176082,
        1.041599359,
        0.007529895,
    ],
    &[
        192.405028790,
        88.568922492,
        32.322076951,
        8.001943877,
        0.842693957,
    ],
    &[
        185.564643590,
        84.011634455,
        29.665398497,
        6.731617802,
        0.440432619,
    ],
    &[175.349754004, 77.183141968, 25.665506229, 4.806042927],
    &[161.822874281, 68.103260502, 20.314596934, 2.219811322],
    &[145.081815855, 56.825420015, 13.650143026],
];

/// Laguerre basis of size 100, with the scale λ used for each ℓ.
pub const LAG_REF: [(f64, &[f64]); 6] = [
    (
        0.25,
        &[
            198.053812, 95.107392, 37.503431, 10.649435, 1.563860, 0.025307,
        ],
    ),
    (
        0.30,
        &[194.485062, 92.507287, 35.790301, 9.698773, 1.193393],
    ),
    (
        0.25,
        &[187.382284, 87.351047, 32.419721, 7.867300, 0.540802],
    ),
    (0.30, &[176.816075, 79.728921, 27.507836, 5.305988]),
    (0.25, &[162.895376, 69.782625, 21.242776, 2.281243]),
    (0.35, &[145.771664, 57.714758, 13.908937]),
];

/// Laguerre basis at λ = 0.25, ℓ = 0, for increasing sizes.
pub const CONV_REF: [(usize, [f64; 6]); 5] = [
    (
        30,
        [
            197.492537252,
            94.314048133,
            36.915040547,
            10.375623268,
            1.494065003,
            0.021836656,
        ],
    ),
    (
        40,
        [
            198.052373573,
            95.104944526,
            37.501405664,
            10.648439288,
            1.563599312,
            0.025369900,
        ],
    ),
    (
        50,
        [
            198.053810517,
            95.107389328,
            37.503429021,
            10.649434217,
            1.563859420,
            0.025380133,
        ],
    ),
    (
        70,
        [
            198.053811738,
            95.107391512,
            37.503430893,
            10.649435153,
            1.563859664,
            0.025339205,
        ],
    ),
    (
        100,
        [
            198.053811718,
            95.107391514,
            37.503430893,
            10.649435153,
            1.563859663,
            0.025307315,
        ],
    ),
];

/// Finite differences, k = 8, M = 1000.
pub const FD_REF: [&[f64]; 6] = [
    &[
        198.053811725,
        95.107391509,
        37.503430893,
        10.649435153,
        1.563859663,
        0.025300267,
    ],
    &[
        194.485061786,
        92.507287345,
        35.790300903,
        9.698773354,
        1.193393381,
    ],
    &[
        187.382284129,
        87.351046558,
        32.419721196,
        7.867299662,
        0.540802068,
    ],
    &[176.816074818, 79.728921145, 27.507836187, 5.305987630],
    &[162.895376078, 69.782624776, 21.242775651, 2.281242651],
    &[145.771664441, 57.714757854, 13.908937252],
];

/// Largest `|computed| − reference` deviation, or `None` on a count mismatch.
pub fn max_deviation(energies: &[f64], reference: &[f64]) -> Option<f64> {
    (energies.len() == reference.len()).then(|| {
        energies
            .iter()
            .zip(reference)
            .map(|(e, r)| (e.abs() - r).abs())
            .fold(0.0, f64::max)
    })
}

pub mod identities;
