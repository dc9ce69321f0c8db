use oscbath_browser::{occupation_rows, plateau_values, spectrum_pairs, MAX_STEPS};

#[test]
fn occupation_layout() {
    let rows = occupation_rows("bare", 0.1, 2.0, 1.0, 10.0, 5).unwrap();
    assert_eq!(rows.len(), 20);
    assert_eq!(rows[16], 10.0);
    for r in rows.chunks(4) {
        assert!((r[1] - r[2] - r[3]).abs() < 1e-12);
    }
    let d = occupation_rows("dressed-mode-sum", 0.1, 2.0, 1.0, 10.0, 2).unwrap();
    assert!((d[5] - 0.181154).abs() < 1e-5);
}

#[test]
fn rejects_bad_input() {
    assert!(occupation_rows("sideways", 0.1, 2.0, 1.0, 10.0, 5).is_err());
    assert!(occupation_rows("bare", 0.1, 2.0, 1.0, 10.0, MAX_STEPS + 1).is_err());
    assert!(occupation_rows("bare", 1.0, 2.0, 1.0, 10.0, 5).is_err());
    assert!(spectrum_pairs(0.1, 10.0, 100_000).is_err());
}

#[test]
fn plateau_order() {
    let v = plateau_values(0.1, 2.0).unwrap();
    assert!((v[0] - 0.156518).abs() < 1e-6);
    assert!((v[1] - 0.16194).abs() < 1e-4);
    assert!((v[2] - 0.144755).abs() < 1e-5);
}

#[test]
fn spectrum_weights_sum_to_one() {
    let s = spectrum_pairs(0.1, 20.0, 64).unwrap();
    assert_eq!(s.len(), 130);
    let total: f64 = s.chunks(2).map(|p| p[1]).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert!(s.chunks(2).zip(s.chunks(2).skip(1)).all(|(a, b)| a[0] < b[0]));
}
