use graph_slepian::{c64, slepian_1d, DftDesign};
use proptest::prelude::*;

fn fig_design() -> DftDesign {
    DftDesign::centered(512, 129, 256, 17).unwrap()
}

#[test]
fn step_shape_at_shannon_number() {
    let d = fig_design();
    let k = d.shannon_number();
    assert!((k - 4.2832).abs() < 1e-4);
    let b = slepian_1d(&d).unwrap();
    let sum: f64 = b.mu().iter().sum();
    assert!((sum - k).abs() < 1e-10, "sum {sum} vs K {k}");
    let above = b.count_above(0.5);
    assert!(above == 4 || above == 5, "{above} above 0.5");
    assert!(b.mu()[0] > 0.999);
    assert!(b.mu()[16] < 1e-3);
}

#[test]
fn symmetric_setup_gives_symmetric_magnitudes() {
    let b = slepian_1d(&fig_design()).unwrap();
    let v = b.vectors();
    for k in 0..6 {
        for d in 0..=255 {
            let l = v[(256 - d, k)].norm();
            let r = v[(256 + d.min(255), k)].norm();
            assert!((l - r).abs() < 1e-8, "vector {k}, offset {d}: {l} vs {r}");
        }
    }
    assert!(b.imag_residue() < 1e-8);
    assert_eq!(b.real_vectors().unwrap().ncols(), 17);
}

#[test]
fn reflected_interval_keeps_concentrations() {
    let d = DftDesign::new(96, 11, 10..40).unwrap();
    let a = slepian_1d(&d).unwrap();
    let b = slepian_1d(&d.reflected()).unwrap();
    assert_eq!(d.reflected().interval(), (56..86).collect::<Vec<_>>());
    for (x, y) in a.mu().iter().zip(b.mu()) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn first_vector_unimodal_over_interval() {
    let b = slepian_1d(&fig_design()).unwrap();
    let v = b.vectors();
    let mags: Vec<f64> = b.interval().iter().map(|&i| v[(i, 0)].norm()).collect();
    let peak = mags
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert!(mags[..=peak].windows(2).all(|w| w[0] <= w[1] + 1e-12));
    assert!(mags[peak..].windows(2).all(|w| w[0] + 1e-12 >= w[1]));
    assert_eq!(b.interval()[peak], 256);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn double_orthogonality_and_parseval(
        n in 8usize..80,
        nw_frac in 0.05f64..1.0,
        start_frac in 0.0f64..0.9,
        len_frac in 0.05f64..1.0,
    ) {
        let n_w = ((n as f64 * nw_frac) as usize).clamp(1, n);
        let start = (n as f64 * start_frac) as usize;
        let len = (((n - start) as f64 * len_frac) as usize).max(1);
        let d = DftDesign::new(n, n_w, start..start + len).unwrap();
        let b = slepian_1d(&d).unwrap();
        let (g, s) = b.grams();
        for i in 0..n_w {
            for j in 0..n_w {
                let e = if i == j { c64::new(1.0, 0.0) } else { c64::new(0.0, 0.0) };
                prop_assert!((g[(i, j)] - e).norm() < 1e-8);
                let m = if i == j { c64::new(b.mu()[i], 0.0) } else { c64::new(0.0, 0.0) };
                prop_assert!((s[(i, j)] - m).norm() < 1e-8);
            }
            let cn: f64 = b.coefficients().col(i).iter().map(|z| z.norm_sqr()).sum();
            let vn: f64 = b.vectors().col(i).iter().map(|z| z.norm_sqr()).sum();
            prop_assert!((cn - vn).abs() < 1e-10);
        }
        prop_assert!(b.mu().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(b.mu().iter().all(|&m| (-1e-10..=1.0 + 1e-10).contains(&m)));
        let sum: f64 = b.mu().iter().sum();
        prop_assert!((sum - d.shannon_number()).abs() < 1e-9);
    }
}
