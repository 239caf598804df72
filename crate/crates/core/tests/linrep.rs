use baumsweet::linrep::{self, Guess, LinRepError};
use baumsweet::seq;

fn found(values: &[u128], max_dim: usize) -> linrep::LinRep {
    match linrep::linrep_guess(values, 2, max_dim).unwrap() {
        Guess::Found(rep) => rep,
        Guess::Failed { rank_profile } => panic!("no representation, profile {rank_profile:?}"),
    }
}

#[test]
fn thue_morse_and_moser() {
    let t: Vec<u128> = (0..1024).map(|n| seq::thue_morse(n).into()).collect();
    let rep = found(&t, 4);
    assert!(rep.dim() <= 2);
    assert_eq!(linrep::first_mismatch(&rep, &t), None);
    let m: Vec<u128> = (0..1024).map(seq::moser_de_bruijn).collect();
    assert!(found(&m, 4).dim() <= 2);
}

#[test]
fn extends_beyond_the_prefix() {
    let u: Vec<u128> = (0..512).map(seq::u_seq).collect();
    let rep = found(&u, 2);
    for n in [1000u64, 4095, 70_000] {
        assert_eq!(
            rep.eval(n.into()),
            num_rational::BigRational::from_integer(seq::u_seq(n).into())
        );
    }
}

#[test]
fn baum_sweet_is_not_low_dimensional() {
    let l = seq::generate(seq::SeqId::LSeq, 4096).unwrap().values;
    match linrep::linrep_guess(&l, 2, 8).unwrap() {
        Guess::Found(rep) => panic!("unexpected representation of dimension {}", rep.dim()),
        Guess::Failed { rank_profile } => assert!(rank_profile.windows(2).all(|w| w[0] < w[1])),
    }
}

#[test]
fn errors() {
    assert!(matches!(
        linrep::linrep_guess(&[1, 2], 2, 4),
        Err(LinRepError::InsufficientPrefix { .. })
    ));
    assert_eq!(
        linrep::linrep_guess(&[0; 100], 1, 2).err(),
        Some(LinRepError::BadBase)
    );
    assert_eq!(
        linrep::rank_profile(&[0; 100], 2, &[]),
        Err(LinRepError::NoDepths)
    );
}
