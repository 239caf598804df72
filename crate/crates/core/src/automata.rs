//! Deterministic finite automata with output.
//!
//! Input is the base-`k` expansion of `n` read least significant digit
//! first; `n = 0` is the empty word and yields the initial state's output.
//! Expansions are canonical, so no leading zeros are ever fed.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("base must be at least 2, got {0}")]
    BadBase(u64),
    #[error("automaton has no states")]
    Empty,
    #[error("initial state {0} out of range")]
    BadInit(usize),
    #[error("transition from state {state} on digit {digit} goes to missing state {to}")]
    BadTarget { state: usize, digit: u32, to: usize },
    #[error("state {state} has {got} transitions, expected {base}")]
    NotTotal { state: usize, got: usize, base: u32 },
    #[error("parameter r must be in 2..=8, got {0}")]
    BadR(u32),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, AutomatonError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    init: usize,
    delta: Vec<Vec<usize>>,
    out: Vec<u32>,
}

/// Base-`k` digits of `n`, least significant first. Empty for `n = 0`.
pub fn digits_lsb(mut n: u128, k: u32) -> Vec<u32> {
    let k = u128::from(k);
    let mut d = Vec::new();
    while n > 0 {
        d.push((n % k) as u32);
        n /= k;
    }
    d
}

impl Dfao {
    pub fn new(base: u32, init: usize, delta: Vec<Vec<usize>>, out: Vec<u32>) -> Result<Dfao> {
        if base < 2 {
            return Err(AutomatonError::BadBase(u64::from(base)));
        }
        if delta.is_empty() || out.len() != delta.len() {
            return Err(AutomatonError::Empty);
        }
        if init >= delta.len() {
            return Err(AutomatonError::BadInit(init));
        }
        for (state, row) in delta.iter().enumerate() {
            if row.len() != base as usize {
                return Err(AutomatonError::NotTotal {
                    state,
                    got: row.len(),
                    base,
                });
            }
            for (digit, &to) in row.iter().enumerate() {
                if to >= delta.len() {
                    return Err(AutomatonError::BadTarget {
                        state,
                        digit: digit as u32,
                        to,
                    });
                }
            }
        }
        Ok(Dfao {
            base,
            init,
            delta,
            out,
        })
    }

    /// Build from `(from, digits, to)` edge groups.
    pub fn from_edges(
        base: u32,
        out: Vec<u32>,
        init: usize,
        edges: &[(usize, &[u32], usize)],
    ) -> Result<Dfao> {
        let mut delta = vec![vec![usize::MAX; base as usize]; out.len()];
        for &(from, digits, to) in edges {
            for &d in digits {
                delta[from][d as usize] = to;
            }
        }
        for (state, row) in delta.iter().enumerate() {
            let got = row.iter().filter(|&&t| t != usize::MAX).count();
            if got != base as usize {
                return Err(AutomatonError::NotTotal { state, got, base });
            }
        }
        Dfao::new(base, init, delta, out)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn output(&self, state: usize) -> u32 {
        self.out[state]
    }

    pub fn step(&self, state: usize, digit: u32) -> usize {
        self.delta[state][digit as usize]
    }

    pub fn run(&self, state: usize, digits: &[u32]) -> usize {
        digits.iter().fold(state, |s, &d| self.step(s, d))
    }

    pub fn eval(&self, n: u128) -> u32 {
        let mut s = self.init;
        let k = u128::from(self.base);
        let mut n = n;
        while n > 0 {
            s = self.delta[s][(n % k) as usize];
            n /= k;
        }
        self.out[s]
    }

    /// True iff reading a 0 never changes the output. Under this condition
    /// trailing (most significant) zeros are harmless and every reachable
    /// state of the minimized automaton is a distinct kernel element.
    pub fn is_zero_stable(&self) -> bool {
        self.reachable()
            .iter()
            .all(|&s| self.out[self.delta[s][0]] == self.out[s])
    }

    /// Reachable states in breadth-first order from the initial state.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.delta.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.init]);
        seen[self.init] = true;
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for &t in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Minimal automaton computing the same function, with states numbered
    /// in breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfao {
        let reach = self.reachable();
        let mut class: HashMap<usize, usize> = HashMap::new();
        {
            let mut ids: BTreeMap<u32, usize> = BTreeMap::new();
            for &s in &reach {
                let next = ids.len();
                let c = *ids.entry(self.out[s]).or_insert(next);
                class.insert(s, c);
            }
        }
        let mut count = class.values().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next: HashMap<usize, usize> = HashMap::new();
            for &s in &reach {
                let sig = (
                    class[&s],
                    self.delta[s].iter().map(|t| class[t]).collect::<Vec<_>>(),
                );
                let fresh = ids.len();
                let c = *ids.entry(sig).or_insert(fresh);
                next.insert(s, c);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber by BFS from the initial class
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut rep: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([self.init]);
        number.insert(class[&self.init], 0);
        rep.push(self.init);
        while let Some(s) = queue.pop_front() {
            for &t in &self.delta[s] {
                if let std::collections::hash_map::Entry::Vacant(e) = number.entry(class[&t]) {
                    e.insert(rep.len());
                    rep.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = rep
            .iter()
            .map(|&s| self.delta[s].iter().map(|t| number[&class[t]]).collect())
            .collect();
        let out = rep.iter().map(|&s| self.out[s]).collect();
        Dfao {
            base: self.base,
            init: 0,
            delta,
            out,
        }
    }

    /// The base-`k^m` automaton computing the same function: each new digit
    /// is fed as `m` base-`k` digits, least significant first.
    pub fn rebase(&self, m: u32) -> Result<Dfao> {
        assert!(m >= 1, "rebase power must be positive");
        let new_base = u64::from(self.base).pow(m);
        if new_base > 1 << 16 {
            return Err(AutomatonError::BadBase(new_base));
        }
        let delta = self
            .delta
            .iter()
            .enumerate()
            .map(|(s, _)| {
                (0..new_base)
                    .map(|d| {
                        let mut digits = digits_lsb(u128::from(d), self.base);
                        digits.resize(m as usize, 0);
                        self.run(s, &digits)
                    })
                    .collect()
            })
            .collect();
        Dfao::new(new_base as u32, self.init, delta, self.out.clone())
    }

    /// Graphviz rendering. Node labels are outputs, the initial state is
    /// drawn bold, parallel edges are merged with their digits listed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph dfao {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (i, &o) in self.out.iter().enumerate() {
            let style = if i == self.init {
                ", style=bold, penwidth=2"
            } else {
                ""
            };
            let _ = writeln!(s, "  s{i} [label=\"{o}\"{style}];");
        }
        for (from, row) in self.delta.iter().enumerate() {
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (d, &to) in row.iter().enumerate() {
                groups.entry(to).or_default().push(d);
            }
            for (to, digits) in groups {
                let label: Vec<String> = digits.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "  s{from} -> s{to} [label=\"{}\"];", label.join(", "));
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> AutomatonJson {
        AutomatonJson {
            base: self.base,
            states: self
                .out
                .iter()
                .enumerate()
                .map(|(id, &out)| StateJson { id, out })
                .collect(),
            init: self.init,
            edges: self
                .delta
                .iter()
                .enumerate()
                .flat_map(|(from, row)| {
                    row.iter().enumerate().map(move |(d, &to)| EdgeJson {
                        from,
                        digit: d as u32,
                        to,
                    })
                })
                .collect(),
        }
    }

    pub fn from_json(j: &AutomatonJson) -> Result<Dfao> {
        let n = j.states.len();
        let mut out = vec![0; n];
        for st in &j.states {
            if st.id >= n {
                return Err(AutomatonError::Json(format!(
                    "state id {} out of range",
                    st.id
                )));
            }
            out[st.id] = st.out;
        }
        let mut delta = vec![vec![usize::MAX; j.base as usize]; n];
        for e in &j.edges {
            if e.from >= n || e.digit >= j.base {
                return Err(AutomatonError::Json(format!("bad edge {e:?}")));
            }
            delta[e.from][e.digit as usize] = e.to;
        }
        for (state, row) in delta.iter().enumerate() {
            if let Some(d) = row.iter().position(|&t| t == usize::MAX) {
                return Err(AutomatonError::NotTotal {
                    state,
                    got: d,
                    base: j.base,
                });
            }
        }
        Dfao::new(j.base, j.init, delta, out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub base: u32,
    pub states: Vec<StateJson>,
    pub init: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub id: usize,
    pub out: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub digit: u32,
    pub to: usize,
}

/// The Figure 1 automaton for `b_n` (base 2).
pub fn fig1() -> Dfao {
    Dfao::from_edges(
        2,
        vec![1, 1, 0],
        0,
        &[
            (0, &[0], 1),
            (0, &[1], 0),
            (1, &[0], 0),
            (1, &[1], 2),
            (2, &[0, 1], 2),
        ],
    )
    .expect("valid fixture")
}

/// The Figure 2 automaton for `q_n` (base 2).
pub fn fig2() -> Dfao {
    Dfao::from_edges(
        2,
        vec![0, 0, 1, 0, 1],
        0,
        &[
            (0, &[0], 1),
            (0, &[1], 2),
            (1, &[0], 3),
            (1, &[1], 4),
            (2, &[0], 4),
            (2, &[1], 3),
            (3, &[0, 1], 3),
            (4, &[0, 1], 2),
        ],
    )
    .expect("valid fixture")
}

/// The Figure 3 automaton for `q_n` (base 4).
pub fn fig3() -> Dfao {
    fig4(2).expect("r = 2 is valid")
}

/// The Figure 4 automaton for `q^(r)_n` (base `2^r`).
pub fn fig4(r: u32) -> Result<Dfao> {
    if !(2..=8).contains(&r) {
        return Err(AutomatonError::BadR(r));
    }
    let big_r = 1u32 << r;
    let high: Vec<u32> = (3..big_r).collect();
    let c1_to_c2: Vec<u32> = std::iter::once(0).chain(high.iter().copied()).collect();
    let all: Vec<u32> = (0..big_r).collect();
    let c3_to_c2: Vec<u32> = (2..big_r).collect();
    Dfao::from_edges(
        big_r,
        vec![0, 0, 1],
        0,
        &[
            (0, &c1_to_c2, 1),
            (0, &[1, 2], 2),
            (1, &all, 1),
            (2, &[0, 1], 2),
            (2, &c3_to_c2, 1),
        ],
    )
}

/// Base-2 automaton for `b^(r)_n`: states track the length mod `r` of the
/// current block of 0's, plus a dead state.
pub fn baum_sweet_r_automaton(r: u32) -> Result<Dfao> {
    if !(2..=64).contains(&r) {
        return Err(AutomatonError::BadR(r));
    }
    let r = r as usize;
    let dead = r;
    let mut delta = Vec::with_capacity(r + 1);
    for c in 0..r {
        let on_one = if c == 0 { 0 } else { dead };
        delta.push(vec![(c + 1) % r, on_one]);
    }
    delta.push(vec![dead, dead]);
    let mut out = vec![1; r];
    out.push(0);
    Dfao::new(2, 0, delta, out)
}

/// Parse `fig1`, `fig2`, `fig3` or `fig4:r`.
pub fn fixture(name: &str) -> Result<Dfao> {
    match name {
        "fig1" => Ok(fig1()),
        "fig2" => Ok(fig2()),
        "fig3" => Ok(fig3()),
        _ => match name.strip_prefix("fig4:").map(str::parse::<u32>) {
            Some(Ok(r)) => fig4(r),
            _ => Err(AutomatonError::UnknownFixture(name.to_string())),
        },
    }
}

/// First `n < bound` where the two automata disagree.
pub fn first_disagreement(a: &Dfao, b: &Dfao, bound: u128) -> Option<u128> {
    (0..bound).find(|&n| a.eval(n) != b.eval(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq;

    #[test]
    fn fixture_examples() {
        assert_eq!(fig1().eval(2), 0);
        assert_eq!(fig1().eval(0), 1);
        assert_eq!(fig3().eval(6), 1);
        assert_eq!(fig1().state_count(), 3);
        assert_eq!(fig2().state_count(), 5);
        assert_eq!(fig3().state_count(), 3);
    }

    #[test]
    fn figures_match_sequences() {
        for n in 0..1 << 14 {
            assert_eq!(fig1().eval(n) as u8, seq::baum_sweet(n as u64));
            assert_eq!(fig2().eval(n) as u8, seq::q_seq(n as u64));
            assert_eq!(fig3().eval(n) as u8, seq::q_seq(n as u64));
        }
        for r in 2..5 {
            let a = fig4(r).unwrap();
            let b = baum_sweet_r_automaton(r).unwrap();
            for n in 0..5000u64 {
                assert_eq!(a.eval(n.into()) as u8, seq::q_seq_r(r, n));
                assert_eq!(b.eval(n.into()) as u8, seq::baum_sweet_r(r, n));
            }
        }
    }

    #[test]
    fn minimization_counts() {
        assert_eq!(fig1().minimize().state_count(), 3);
        assert_eq!(fig2().minimize().state_count(), 5);
        let m = fig2().minimize();
        assert_eq!(m.minimize(), m);
        // duplicate the dead state of fig1
        let dup = Dfao::new(
            2,
            0,
            vec![vec![1, 0], vec![0, 2], vec![3, 2], vec![2, 3]],
            vec![1, 1, 0, 0],
        )
        .unwrap();
        assert_eq!(dup.minimize().state_count(), 3);
        assert_eq!(first_disagreement(&dup, &fig1(), 1 << 12), None);
    }

    #[test]
    fn rebase_examples() {
        let r = fig2().rebase(2).unwrap();
        assert_eq!(first_disagreement(&r, &fig3(), 1 << 14), None);
        assert_eq!(fig1().rebase(1).unwrap(), fig1());
        let f = fig1().rebase(2).unwrap();
        for n in 0..1 << 12 {
            assert_eq!(f.eval(n), fig1().eval(n));
        }
    }

    #[test]
    fn figures_are_zero_stable() {
        for a in [fig1(), fig2(), fig3(), fig4(4).unwrap()] {
            assert!(a.is_zero_stable());
        }
    }

    #[test]
    fn dot_shapes() {
        let d = fig1().to_dot();
        assert!(d.contains("s2 -> s2 [label=\"0, 1\"]"));
        assert!(d.contains("s0 [label=\"1\", style=bold"));
        assert_eq!(
            d.matches("[label=\"").count() - d.matches(" -> ").count(),
            3
        );
        let d3 = fig3().to_dot();
        assert!(d3.contains("s2 -> s1 [label=\"2, 3\"]"));
        let one = Dfao::new(2, 0, vec![vec![0, 0]], vec![7]).unwrap();
        assert!(one.to_dot().contains("s0 -> s0 [label=\"0, 1\"]"));
    }

    #[test]
    fn json_roundtrip() {
        let a = fig2();
        let j = a.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: AutomatonJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Dfao::from_json(&back).unwrap(), a);
    }

    #[test]
    fn bad_inputs() {
        assert!(fig4(1).is_err());
        assert!(fixture("fig9").is_err());
        assert_eq!(fixture("fig4:3").unwrap().base(), 8);
        assert!(Dfao::new(2, 0, vec![vec![0]], vec![0]).is_err());
        assert!(Dfao::new(2, 0, vec![vec![0, 5]], vec![0]).is_err());
    }
}
