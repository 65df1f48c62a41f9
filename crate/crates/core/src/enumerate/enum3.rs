//! `PRODUCE-FIRST` / `PRODUCE-NEXT` requests with `DONE` / `LAST` replies.
//!
//! A node answers `LAST` together with its final solution, so no extra round
//! is needed to discover the end. Every block of messages on a channel reads
//! `PRODUCE-FIRST, (DONE, PRODUCE-NEXT)*, LAST`.

use crate::dag::{ExpressionDag, NodeKind};
use crate::error::EnumError;

use super::{violation, Enumerator, VisitStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Request {
    First,
    Next,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reply {
    Done,
    Last,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Dormant,
    /// Union: child 1 is producing.
    Child1,
    /// Union: child 1 finished; the next request starts child 2.
    StartChild2,
    /// Union: child 2 is producing.
    Child2,
    /// Product: child 2 is cycling; the flag records whether child 1 has
    /// already produced its last solution.
    Working { outer_done: bool },
    /// Product: child 2 finished a cycle; the next request advances child 1.
    InnerFinished,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    node: usize,
    req: Request,
    stage: u8,
}

pub struct Enum3<'a> {
    dag: &'a ExpressionDag,
    state: Vec<State>,
    stack: Vec<Frame>,
    d: Vec<bool>,
    stats: VisitStats,
    finished: bool,
    /// Requests received per node, and how many of them were `PRODUCE-FIRST`.
    requests: Vec<u64>,
    firsts: Vec<u64>,
}

impl<'a> Enum3<'a> {
    pub fn new(dag: &'a ExpressionDag) -> Self {
        let len = dag.nodes.len();
        Self {
            dag,
            state: vec![State::Dormant; len],
            stack: Vec::new(),
            d: vec![false; dag.n],
            stats: VisitStats::default(),
            finished: false,
            requests: vec![0; len],
            firsts: vec![0; len],
        }
    }

    /// Per node: total requests received and the number of blocks started.
    pub fn channel_counts(&self) -> (&[u64], &[u64]) {
        (&self.requests, &self.firsts)
    }

    fn call(&mut self, node: usize, req: Request) -> Result<Reply, EnumError> {
        self.stack.push(Frame { node, req, stage: 0 });
        let mut reply: Option<Reply> = None;
        while let Some(frame) = self.stack.last_mut() {
            let u = frame.node;
            let kind = self.dag.nodes[u].kind;
            if frame.stage == 0 {
                self.stats.record(&kind);
                self.requests[u] += 1;
                if frame.req == Request::First {
                    self.firsts[u] += 1;
                }
            }
            match kind {
                NodeKind::BasisIn(v) | NodeKind::BasisOut(v) => {
                    if frame.req != Request::First {
                        return Err(violation(u, "PRODUCE-NEXT sent to a basis node"));
                    }
                    self.d[v] = matches!(kind, NodeKind::BasisIn(_));
                    reply = Some(Reply::Last);
                    self.stack.pop();
                }
                NodeKind::BasisNull(_) => return Err(violation(u, "null basis node in a pruned DAG")),
                NodeKind::Union(a, b) => {
                    if frame.stage == 0 {
                        let (next, child, req) = match (frame.req, self.state[u]) {
                            (Request::First, State::Dormant) => (State::Child1, a, Request::First),
                            (Request::Next, State::Child1) => (State::Child1, a, Request::Next),
                            (Request::Next, State::StartChild2) => (State::Child2, b, Request::First),
                            (Request::Next, State::Child2) => (State::Child2, b, Request::Next),
                            _ => return Err(violation(u, "request does not match union state")),
                        };
                        self.state[u] = next;
                        frame.stage = 1;
                        self.stack.push(Frame { node: child, req, stage: 0 });
                        continue;
                    }
                    let r = reply.take().ok_or_else(|| violation(u, "union resumed without a reply"))?;
                    reply = Some(match (r, self.state[u]) {
                        (Reply::Done, _) => Reply::Done,
                        (Reply::Last, State::Child1) => {
                            self.state[u] = State::StartChild2;
                            Reply::Done
                        }
                        (Reply::Last, _) => {
                            self.state[u] = State::Dormant;
                            Reply::Last
                        }
                    });
                    self.stack.pop();
                }
                NodeKind::Product(a, b) => match frame.stage {
                    0 => {
                        let req = match (frame.req, self.state[u]) {
                            (Request::First, State::Dormant) => Request::First,
                            (Request::Next, State::InnerFinished) => Request::Next,
                            (Request::Next, State::Working { .. }) => {
                                frame.stage = 2;
                                self.stack.push(Frame { node: b, req: Request::Next, stage: 0 });
                                continue;
                            }
                            _ => return Err(violation(u, "request does not match product state")),
                        };
                        frame.stage = 1;
                        self.stack.push(Frame { node: a, req, stage: 0 });
                    }
                    1 => {
                        let r = reply.take().ok_or_else(|| violation(u, "product resumed without a reply"))?;
                        self.state[u] = State::Working { outer_done: r == Reply::Last };
                        frame.stage = 2;
                        self.stack.push(Frame { node: b, req: Request::First, stage: 0 });
                    }
                    _ => {
                        let r = reply.take().ok_or_else(|| violation(u, "product resumed without a reply"))?;
                        let State::Working { outer_done } = self.state[u] else {
                            return Err(violation(u, "inner reply outside a working phase"));
                        };
                        reply = Some(match (r, outer_done) {
                            (Reply::Done, _) => Reply::Done,
                            (Reply::Last, true) => {
                                self.state[u] = State::Dormant;
                                Reply::Last
                            }
                            (Reply::Last, false) => {
                                self.state[u] = State::InnerFinished;
                                Reply::Done
                            }
                        });
                        self.stack.pop();
                    }
                },
            }
        }
        reply.ok_or_else(|| violation(node, "no reply reached the master"))
    }
}

impl Enumerator for Enum3<'_> {
    fn advance(&mut self) -> Result<bool, EnumError> {
        self.stats = VisitStats::default();
        if self.finished {
            self.finished = false;
            return Ok(false);
        }
        let req = if self.state[self.dag.target] == State::Dormant { Request::First } else { Request::Next };
        let r = self.call(self.dag.target, req)?;
        self.finished = r == Reply::Last;
        Ok(true)
    }

    fn current(&self) -> &[bool] {
        &self.d
    }

    fn last_interval(&self) -> VisitStats {
        self.stats
    }

    fn is_idle(&self) -> bool {
        !self.finished && self.stack.is_empty() && self.state.iter().all(|&s| s == State::Dormant)
    }
}
