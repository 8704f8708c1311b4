//! Shared kernelization outcome types and the rule-trace format.
//!
//! A kernelization either decides the instance outright or emits an
//! equivalent reduced instance whose vertex count is bounded by a function of
//! the parameter alone. Every rule firing is recorded in an ordered trace,
//! serialized one line per firing as `<ruleId> k=<k-after> removed=<ids>`
//! (edges print as `u-v`).

use crate::graph::{EdgeSet, VertexSet};
use crate::instance::Instance;
use std::fmt;

/// Items affected by a rule firing, in original-instance ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Affected {
    Vertices(Vec<usize>),
    Edges(Vec<(usize, usize)>),
    None,
}

/// One rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleFiring {
    pub rule: &'static str,
    pub k_after: usize,
    pub affected: Affected,
}

impl fmt::Display for RuleFiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={} removed=", self.rule, self.k_after)?;
        match &self.affected {
            Affected::Vertices(vs) => {
                let s: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
                write!(f, "{}", s.join(","))
            }
            Affected::Edges(es) => {
                let s: Vec<String> =
                    es.iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
                write!(f, "{}", s.join(","))
            }
            Affected::None => write!(f, "-"),
        }
    }
}

/// Decision or reduction produced by a kernel.
#[derive(Clone, Debug)]
pub enum KernelResult {
    Decided(bool),
    /// Equivalent reduced instance; `orig_ids[i]` is the original id of the
    /// reduced instance's vertex `i`.
    Reduced { instance: Instance, orig_ids: Vec<usize> },
}

impl KernelResult {
    pub fn decided(&self) -> Option<bool> {
        match self {
            KernelResult::Decided(b) => Some(*b),
            KernelResult::Reduced { .. } => None,
        }
    }
}

/// Full kernelization outcome: the result, the ordered rule trace, and the
/// forced edits accumulated by solution-forcing rules (in original ids).
#[derive(Clone, Debug)]
pub struct KernelOutcome {
    pub result: KernelResult,
    pub trace: Vec<RuleFiring>,
    /// Vertices every solution must delete (vertex-deletion kernels).
    pub forced_deletions: VertexSet,
    /// Edges every solution must add (edge kernels).
    pub forced_additions: EdgeSet,
    /// Edges every solution must delete (edge kernels).
    pub forced_edge_deletions: EdgeSet,
}

impl KernelOutcome {
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        for f in &self.trace {
            out.push_str(&f.to_string());
            out.push('\n');
        }
        out
    }
}

/// Mutable helper carried through a kernelization run.
#[derive(Clone, Debug, Default)]
pub struct Trace(pub Vec<RuleFiring>);

impl Trace {
    pub fn fire(&mut self, rule: &'static str, k_after: usize, affected: Affected) {
        self.0.push(RuleFiring { rule, k_after, affected });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_line_format() {
        let f = RuleFiring {
            rule: "UCVD1",
            k_after: 2,
            affected: Affected::Vertices(vec![4]),
        };
        assert_eq!(f.to_string(), "UCVD1 k=2 removed=5");
        let f = RuleFiring {
            rule: "EEER4",
            k_after: 0,
            affected: Affected::Edges(vec![(0, 3)]),
        };
        assert_eq!(f.to_string(), "EEER4 k=0 removed=1-4");
    }
}
