//! Linear-delay enumeration engines over a pruned [`ExpressionDag`].
//!
//! All engines keep the current solution in a boolean vector over vertices
//! that basis nodes overwrite in place, and count node visits between
//! consecutive emissions.

mod enum1;
mod enum2;
mod enum3;

pub use enum1::Enum1;
pub use enum2::Enum2;
pub use enum3::Enum3;

use std::fmt;
use std::str::FromStr;

use crate::dag::{ExpressionDag, NodeKind};
use crate::error::EnumError;

/// Work done between two emissions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VisitStats {
    pub nodes: u64,
    pub products: u64,
    pub basis: u64,
}

impl VisitStats {
    pub(crate) fn record(&mut self, kind: &NodeKind) {
        self.nodes += 1;
        match kind {
            NodeKind::Product(..) => self.products += 1,
            NodeKind::Union(..) => {}
            _ => self.basis += 1,
        }
    }
}

/// A pull-based solution source.
pub trait Enumerator {
    /// Moves to the next solution. Returns `false` once the family is
    /// exhausted; the engine is then back in its initial state.
    fn advance(&mut self) -> Result<bool, EnumError>;

    /// Membership vector of the current solution.
    fn current(&self) -> &[bool];

    /// Visits since the previous call to `advance` returned.
    fn last_interval(&self) -> VisitStats;

    /// True when every selector and state is at its initial value.
    fn is_idle(&self) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Enum1,
    Enum2,
    Enum3,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Enum1, Engine::Enum2, Engine::Enum3];

    pub fn start<'a>(self, dag: &'a ExpressionDag) -> Box<dyn Enumerator + 'a> {
        match self {
            Engine::Enum1 => Box::new(Enum1::new(dag)),
            Engine::Enum2 => Box::new(Enum2::new(dag)),
            Engine::Enum3 => Box::new(Enum3::new(dag)),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Enum1 => "enum1",
            Engine::Enum2 => "enum2",
            Engine::Enum3 => "enum3",
        })
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "enum1" => Ok(Engine::Enum1),
            "enum2" => Ok(Engine::Enum2),
            "enum3" => Ok(Engine::Enum3),
            other => Err(format!("unknown engine {other:?}; expected enum1, enum2 or enum3")),
        }
    }
}

/// Emitted solutions with the visit statistics of the interval preceding
/// each one, plus the work spent after the last emission.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionStream {
    pub solutions: Vec<Vec<usize>>,
    pub intervals: Vec<VisitStats>,
    pub tail: VisitStats,
}

pub fn members(d: &[bool]) -> Vec<usize> {
    d.iter().enumerate().filter(|&(_, &x)| x).map(|(v, _)| v).collect()
}

/// Drives `engine` to exhaustion, or until `limit` solutions were emitted.
pub fn run(engine: &mut dyn Enumerator, limit: Option<usize>) -> Result<SolutionStream, EnumError> {
    let mut stream = SolutionStream::default();
    loop {
        if limit.is_some_and(|k| stream.solutions.len() >= k) {
            return Ok(stream);
        }
        if !engine.advance()? {
            stream.tail = engine.last_interval();
            return Ok(stream);
        }
        stream.solutions.push(members(engine.current()));
        stream.intervals.push(engine.last_interval());
    }
}

pub fn enumerate(dag: &ExpressionDag, engine: Engine) -> Result<SolutionStream, EnumError> {
    run(engine.start(dag).as_mut(), None)
}

pub fn enum1(dag: &ExpressionDag) -> Result<SolutionStream, EnumError> {
    enumerate(dag, Engine::Enum1)
}

pub fn enum2(dag: &ExpressionDag) -> Result<SolutionStream, EnumError> {
    enumerate(dag, Engine::Enum2)
}

pub fn enum3(dag: &ExpressionDag) -> Result<SolutionStream, EnumError> {
    enumerate(dag, Engine::Enum3)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DelayProfile {
    /// Largest node-visit count over all intervals, including the one before
    /// the first emission and the one after the last.
    pub max: u64,
    pub mean: f64,
    pub first: u64,
    pub tail: u64,
    pub max_products: u64,
}

pub fn delay_profile(stream: &SolutionStream) -> DelayProfile {
    let all = stream.intervals.iter().chain(std::iter::once(&stream.tail));
    let max = all.clone().map(|s| s.nodes).max().unwrap_or(0);
    let max_products = all.map(|s| s.products).max().unwrap_or(0);
    let total: u64 = stream.intervals.iter().map(|s| s.nodes).sum::<u64>() + stream.tail.nodes;
    let mean = if stream.intervals.is_empty() { 0.0 } else { total as f64 / stream.intervals.len() as f64 };
    DelayProfile {
        max,
        mean,
        first: stream.intervals.first().map_or(0, |s| s.nodes),
        tail: stream.tail.nodes,
        max_products,
    }
}

pub(crate) fn violation(node: usize, msg: &str) -> EnumError {
    EnumError::ProtocolViolation { node, msg: msg.to_string() }
}
