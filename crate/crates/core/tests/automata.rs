use baumsweet::automata::{self, fig1, fig2, fig3, fig4, AutomatonError, Dfao};
use baumsweet::kernel::{kernel_empirical, kernel_exact, KernelError};
use baumsweet::seq;

#[test]
fn fixtures_agree_with_sequences() {
    for n in 0..20_000u64 {
        assert_eq!(fig1().eval(n.into()), u32::from(seq::baum_sweet(n)));
        assert_eq!(fig2().eval(n.into()), u32::from(seq::q_seq(n)));
        assert_eq!(fig3().eval(n.into()), u32::from(seq::q_seq(n)));
    }
}

#[test]
fn json_round_trip() {
    for a in [fig1(), fig2(), fig3(), fig4(3).unwrap()] {
        let j = a.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: automata::AutomatonJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Dfao::from_json(&back).unwrap(), a);
    }
}

#[test]
fn dot_lists_every_state() {
    let dot = fig2().to_dot();
    assert!(dot.starts_with("digraph"));
    for s in 0..fig2().state_count() {
        assert!(dot.contains(&format!("s{s} [")));
    }
    assert_eq!(dot, fig2().to_dot());
}

#[test]
fn rebase_composes() {
    let a = fig1().rebase(2).unwrap().rebase(2).unwrap();
    let b = fig1().rebase(4).unwrap();
    assert_eq!(a.base(), 16);
    assert_eq!(automata::first_disagreement(&a, &b, 50_000), None);
    assert_eq!(
        automata::first_disagreement(&fig2().rebase(2).unwrap(), &fig3(), 50_000),
        None
    );
}

#[test]
fn construction_errors() {
    assert_eq!(
        Dfao::new(1, 0, vec![vec![0]], vec![0]),
        Err(AutomatonError::BadBase(1))
    );
    assert_eq!(Dfao::new(2, 0, vec![], vec![]), Err(AutomatonError::Empty));
    assert!(matches!(
        Dfao::new(2, 0, vec![vec![0, 3]], vec![0]),
        Err(AutomatonError::BadTarget { .. })
    ));
    assert!(matches!(
        automata::fixture("fig9"),
        Err(AutomatonError::UnknownFixture(_))
    ));
    assert_eq!(fig4(1), Err(AutomatonError::BadR(1)));
}

#[test]
fn kernel_exact_against_prefix_classes() {
    for a in [
        fig1(),
        fig2(),
        fig3(),
        automata::baum_sweet_r_automaton(3).unwrap(),
    ] {
        let exact = kernel_exact(&a).unwrap();
        let k = a.base();
        let depth = 3;
        let bound = 512;
        let prefix: Vec<u128> = (0..(k as u128).pow(depth) * bound as u128)
            .map(|n| a.eval(n).into())
            .collect();
        let emp = kernel_empirical(&prefix, k, depth, bound).unwrap();
        assert_eq!(emp.classes, exact.len());
        assert!(emp.heuristic);
    }
}

#[test]
fn kernel_errors() {
    let short = vec![0u128; 10];
    assert!(matches!(
        kernel_empirical(&short, 2, 4, 256),
        Err(KernelError::InsufficientPrefix { .. })
    ));
    // output changes on a trailing 0 digit
    let a = Dfao::new(2, 0, vec![vec![1, 0], vec![1, 1]], vec![0, 1]).unwrap();
    assert_eq!(kernel_exact(&a), Err(KernelError::NotZeroStable));
}
