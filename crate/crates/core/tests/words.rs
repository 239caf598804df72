use baumsweet::words::{self, WordError, IDENTITIES};

#[test]
fn every_identity_holds() {
    for id in IDENTITIES {
        let o = words::check_word_identity(id).unwrap();
        assert!(o.holds, "{id}: {}", o.detail);
    }
    assert!(matches!(
        words::check_word_identity("nope"),
        Err(WordError::UnknownIdentity(_))
    ));
}

#[test]
fn fixed_point_prefixes() {
    let nu = words::nu_morphism().fixed_point(5, 6).unwrap();
    assert_eq!(words::render_letters(&nu), "fbcade");
    assert_eq!(words::render_binary(&words::h_parity_word(8)), "01000110");
    let fib = words::fibonacci_morphism().fixed_point(0, 8).unwrap();
    assert_eq!(words::render_binary(&fib), "01001010");
    assert_eq!(
        words::fibonacci_morphism().fixed_point(1, 4),
        Err(WordError::NotProlongable(1))
    );
}

#[test]
fn delta_words_render() {
    let d = words::delta_words(2, 3).unwrap();
    assert_eq!(words::render_x(&d[0]), "x1");
    assert!(words::delta_words(1, 3).is_err());
}

#[test]
fn frequency_families() {
    let l = words::frequency_estimate("l", 100_000).unwrap();
    assert_eq!(l.len, 100_000);
    assert!((l.ones as f64 / l.len as f64 - l.limit).abs() < 0.005);
    let d = words::frequency_estimate("delta:3", 20).unwrap();
    assert!((d.ones as f64 / d.len as f64 - d.limit).abs() < 1e-3);
    let h = words::frequency_estimate("h_blocks", 20).unwrap();
    assert!((h.ones as f64 / h.len as f64 - 0.5).abs() < 0.01);
    assert!(words::frequency_estimate("l_r:3", 1000).is_ok());
    assert!(matches!(
        words::frequency_estimate("zeta", 5),
        Err(WordError::UnknownFamily(_))
    ));
    assert_eq!(
        words::frequency_estimate("delta:1", 5),
        Err(WordError::BadR(1))
    );
    assert_eq!(words::frequency_estimate("h", 0), Err(WordError::EmptyWord));
}
