//! Direct evaluation of Takeuchi's function
//! `t(x,y,z) = if x <= y then y else t(t(x-1,y,z), t(y-1,z,x), t(z-1,x,y))`
//! together with `T(x,y,z)`, the number of else-branch invocations made by
//! plain recursive evaluation.
//!
//! Memoisation never changes the count: a memo hit contributes the full
//! count of the subtree it replaces.

use std::collections::HashMap;

use rug::Integer;

use crate::error::{Error, Result};
use crate::sequences::SequenceTable;

pub const DEFAULT_BUDGET: usize = 10_000_000;
pub const DEFAULT_ORACLE_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TakState {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl TakState {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        TakState { x, y, z }
    }

    fn children(self) -> [TakState; 3] {
        let TakState { x, y, z } = self;
        [
            TakState::new(x - 1, y, z),
            TakState::new(y - 1, z, x),
            TakState::new(z - 1, x, y),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TakEntry {
    pub value: i64,
    pub count: Integer,
}

/// Memo from states to their value and else-count.
#[derive(Debug, Default)]
pub struct TakMemo {
    entries: HashMap<TakState, TakEntry>,
    budget: usize,
}

enum Phase {
    Enter,
    Children,
    Outer(TakState),
}

impl TakMemo {
    pub fn new(budget: usize) -> Self {
        TakMemo {
            entries: HashMap::new(),
            budget,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TakState, &TakEntry)> {
        self.entries.iter()
    }

    fn insert(&mut self, s: TakState, e: TakEntry) -> Result<()> {
        if self.entries.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        self.entries.insert(s, e);
        Ok(())
    }

    /// Evaluates with an explicit work stack.
    pub fn eval(&mut self, root: TakState) -> Result<TakEntry> {
        let mut stack = vec![(root, Phase::Enter)];
        while let Some((s, phase)) = stack.pop() {
            match phase {
                Phase::Enter => {
                    if self.entries.contains_key(&s) {
                        continue;
                    }
                    if s.x <= s.y {
                        self.insert(
                            s,
                            TakEntry {
                                value: s.y,
                                count: Integer::new(),
                            },
                        )?;
                        continue;
                    }
                    stack.push((s, Phase::Children));
                    for c in s.children() {
                        if !self.entries.contains_key(&c) {
                            stack.push((c, Phase::Enter));
                        }
                    }
                }
                Phase::Children => {
                    let [a, b, c] = s.children().map(|c| self.entries[&c].value);
                    let outer = TakState::new(a, b, c);
                    stack.push((s, Phase::Outer(outer)));
                    if !self.entries.contains_key(&outer) {
                        stack.push((outer, Phase::Enter));
                    }
                }
                Phase::Outer(outer) => {
                    let mut count = Integer::from(1);
                    for c in s.children() {
                        count += &self.entries[&c].count;
                    }
                    let o = &self.entries[&outer];
                    count += &o.count;
                    let value = o.value;
                    self.insert(s, TakEntry { value, count })?;
                }
            }
        }
        Ok(self.entries[&root].clone())
    }
}

pub fn tak_value(x: i64, y: i64, z: i64) -> Result<i64> {
    TakMemo::new(DEFAULT_BUDGET)
        .eval(TakState::new(x, y, z))
        .map(|e| e.value)
}

pub fn tak_count(x: i64, y: i64, z: i64) -> Result<Integer> {
    TakMemo::new(DEFAULT_BUDGET)
        .eval(TakState::new(x, y, z))
        .map(|e| e.count)
}

/// Plain recursion without memo, for cross-checking small arguments.
pub fn tak_unmemoized(x: i64, y: i64, z: i64) -> (i64, u64) {
    if x <= y {
        return (y, 0);
    }
    let (a, ca) = tak_unmemoized(x - 1, y, z);
    let (b, cb) = tak_unmemoized(y - 1, z, x);
    let (c, cc) = tak_unmemoized(z - 1, x, y);
    let (v, cv) = tak_unmemoized(a, b, c);
    (v, 1 + ca + cb + cc + cv)
}

/// `T(n, 0, n+1)` for `n <= N`, sharing one memo.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleTable {
    pub table: SequenceTable<Integer>,
    /// First `n` whose evaluation exceeded the budget, if any.
    pub cutoff: Option<usize>,
    pub memo_entries: usize,
}

pub fn oracle_table(n_max: usize, budget: usize) -> OracleTable {
    let mut memo = TakMemo::new(budget);
    let mut values = Vec::with_capacity(n_max + 1);
    let mut cutoff = None;
    for n in 0..=n_max {
        match memo.eval(TakState::new(n as i64, 0, n as i64 + 1)) {
            Ok(e) => values.push(e.count),
            Err(_) => {
                cutoff = Some(n);
                break;
            }
        }
    }
    OracleTable {
        table: SequenceTable::new("takeuchi-oracle", values),
        cutoff,
        memo_entries: memo.len(),
    }
}
