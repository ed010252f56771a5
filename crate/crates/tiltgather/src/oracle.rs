//! Exact minimum-length gathering by state-space search.
//!
//! Two particles are cheap: BFS over ordered pairs of cells, at most n² states.
//! Arbitrary configurations need BFS over occupied-cell sets, which explodes
//! quickly, so that search takes a state cap and may answer "unknown".

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::grid::Polyomino;
use crate::sim::{step, Command, Configuration};

pub const DEFAULT_STATE_CAP: usize = 2_000_000;
pub const MAX_EXHAUSTIVE_LEN: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("expected two particles, got {0}")]
    NotAPair(usize),
    #[error("configuration is empty")]
    Empty,
    #[error("maxLen {0} exceeds the exhaustive-search guard of {MAX_EXHAUSTIVE_LEN}")]
    TooLong(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigSearch {
    Found(Vec<Command>),
    /// The state cap was hit before a gathered configuration was reached.
    Unknown { explored: usize },
}

/// Minimum-length merge of a two-particle configuration (already merged: 0).
pub fn optimal_pair(p: &Polyomino, a: &Configuration) -> Result<(usize, Vec<Command>), OracleError> {
    match a.len() {
        0 => return Err(OracleError::Empty),
        1 => return Ok((0, Vec::new())),
        2 => {}
        k => return Err(OracleError::NotAPair(k)),
    }
    let n = p.n();
    let id = |i: usize, j: usize| i * n + j;
    let (s0, s1) = (a.indices()[0] as usize, a.indices()[1] as usize);
    let mut parent = vec![u32::MAX; n * n];
    let mut via = vec![0u8; n * n];
    let start = id(s0, s1);
    parent[start] = start as u32;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let (i, j) = (s / n, s % n);
        if i == j {
            let mut seq = Vec::new();
            let mut cur = s;
            while cur != start {
                seq.push(Command::ALL[via[cur] as usize]);
                cur = parent[cur] as usize;
            }
            seq.reverse();
            return Ok((seq.len(), seq));
        }
        for (k, &c) in Command::ALL.iter().enumerate() {
            let t = id(p.step_index(i, c), p.step_index(j, c));
            if parent[t] == u32::MAX {
                parent[t] = s as u32;
                via[t] = k as u8;
                queue.push_back(t);
            }
        }
    }
    unreachable!("two particles in a connected polyomino can always be merged")
}

/// BFS over reachable configurations, aborting once more than `state_cap`
/// distinct configurations have been seen.
pub fn optimal_config(p: &Polyomino, a: &Configuration, state_cap: usize) -> Result<ConfigSearch, OracleError> {
    if a.is_empty() {
        return Err(OracleError::Empty);
    }
    let mut states: Vec<(Configuration, usize, Command)> = vec![(a.clone(), usize::MAX, Command::U)];
    let mut seen: HashSet<Configuration> = HashSet::from([a.clone()]);
    let mut head = 0;
    while head < states.len() {
        if states[head].0.is_gathered() {
            let mut seq = Vec::new();
            let mut cur = head;
            while states[cur].1 != usize::MAX {
                seq.push(states[cur].2);
                cur = states[cur].1;
            }
            seq.reverse();
            return Ok(ConfigSearch::Found(seq));
        }
        for c in Command::ALL {
            let next = step(p, &states[head].0, c);
            if !seen.contains(&next) {
                if states.len() >= state_cap {
                    return Ok(ConfigSearch::Unknown { explored: states.len() });
                }
                seen.insert(next.clone());
                states.push((next, head, c));
            }
        }
        head += 1;
    }
    unreachable!("gathering is always possible")
}

/// Tries every sequence of length 0, 1, ..., `max_len` in lexicographic
/// order (u < d < l < r) and returns the first that gathers.
pub fn exhaustive(p: &Polyomino, a: &Configuration, max_len: usize) -> Result<Option<Vec<Command>>, OracleError> {
    if max_len > MAX_EXHAUSTIVE_LEN {
        return Err(OracleError::TooLong(max_len));
    }
    if a.is_empty() {
        return Err(OracleError::Empty);
    }
    fn dfs(p: &Polyomino, a: &Configuration, left: usize, seq: &mut Vec<Command>) -> bool {
        if left == 0 {
            return a.is_gathered();
        }
        for c in Command::ALL {
            seq.push(c);
            if dfs(p, &step(p, a, c), left - 1, seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
    for len in 0..=max_len {
        let mut seq = Vec::with_capacity(len);
        if dfs(p, a, len, &mut seq) {
            return Ok(Some(seq));
        }
    }
    Ok(None)
}
