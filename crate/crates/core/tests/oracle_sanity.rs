#![allow(clippy::excessive_precision)]

mod common;
use common::*;

#[test]
fn oracles_reproduce_reference_values() {
    assert!((k_oracle(0.5, 1.0) - 0.46106850444789456).abs() < 1e-15);
    assert!((k_oracle(0.75, 2.0) - 0.127902978629179026).abs() < 1e-15);
    assert!((k_oracle(1.75, 2.0) - 0.211305510812741027).abs() < 1e-15);
    assert!((k_oracle(2.75, 2.0) - 0.497687622551475823).abs() < 1e-15);
    assert!((k_oracle(0.0, 0.001) - 7.0236888005623813).abs() < 1e-13);
    assert!((j1_series_dd(10.0) - 0.043472746168861436).abs() < 1e-16);
    assert!((gamma_stirling(0.25) / 3.625609908221908 - 1.0).abs() < 1e-13, "{}", gamma_stirling(0.25));
    assert!((hyp2f1_series(0.5, 1.5, 2.5, 0.5) - 1.210841860059132).abs() < 1e-15);
    for (r, e) in [(0.5, -1.529987068257268), (1.0, -0.08231530021891433), (2.0, -0.003213904836677738)] {
        let v = field_free_fourier_oracle(1.0, r);
        assert!((v / e - 1.0).abs() < 1e-9, "r={r}: {v} vs {e}");
    }
}
