//! Lazy iteration in the style of nested generators.
//!
//! `FIRST` writes a node's first solution and is always answered `DONE`.
//! `NEXT` moves to the following solution and answers `DONE`, or answers
//! `STOP` without touching the output when the node has no more solutions.
//! Products run child 1 as the outer loop and child 2 as the inner loop, so
//! the outer child's part of the output is left alone while the inner one
//! advances. The `STOP` round after the last solution is the dummy visit.

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
    Stop,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    node: usize,
    req: Request,
    stage: u8,
}

pub struct Enum1<'a> {
    dag: &'a ExpressionDag,
    second: Vec<bool>,
    stack: Vec<Frame>,
    d: Vec<bool>,
    stats: VisitStats,
    started: bool,
}

impl<'a> Enum1<'a> {
    pub fn new(dag: &'a ExpressionDag) -> Self {
        Self {
            dag,
            second: vec![false; dag.nodes.len()],
            stack: Vec::new(),
            d: vec![false; dag.n],
            stats: VisitStats::default(),
            started: false,
        }
    }

    fn call(&mut self, node: usize, req: Request) -> Result<Reply, EnumError> {
        self.stack.push(Frame { node, req, stage: 0 });
        let mut reply: Option<Reply> = None;
        while let Some(frame) = self.stack.last_mut() {
            let u = frame.node;
            let kind = self.dag.nodes[u].kind;
            if frame.stage == 0 {
                self.stats.record(&kind);
            }
            match kind {
                NodeKind::BasisIn(v) | NodeKind::BasisOut(v) => {
                    reply = Some(match frame.req {
                        Request::First => {
                            self.d[v] = matches!(kind, NodeKind::BasisIn(_));
                            Reply::Done
                        }
                        Request::Next => Reply::Stop,
                    });
                    self.stack.pop();
                }
                NodeKind::BasisNull(_) => return Err(violation(u, "null basis node in a pruned DAG")),
                NodeKind::Union(a, b) => match (frame.req, frame.stage) {
                    (Request::First, 0) => {
                        self.second[u] = false;
                        frame.stage = 1;
                        self.stack.push(Frame { node: a, req: Request::First, stage: 0 });
                    }
                    (Request::First, _) => {
                        expect_done(u, reply.take())?;
                        reply = Some(Reply::Done);
                        self.stack.pop();
                    }
                    (Request::Next, 0) => {
                        frame.stage = 1;
                        let child = if self.second[u] { b } else { a };
                        self.stack.push(Frame { node: child, req: Request::Next, stage: 0 });
                    }
                    (Request::Next, 1) => {
                        let r = reply.take().ok_or_else(|| violation(u, "union resumed without a reply"))?;
                        match (r, self.second[u]) {
                            (Reply::Done, _) => {
                                reply = Some(Reply::Done);
                                self.stack.pop();
                            }
                            (Reply::Stop, false) => {
                                self.second[u] = true;
                                frame.stage = 2;
                                self.stack.push(Frame { node: b, req: Request::First, stage: 0 });
                            }
                            (Reply::Stop, true) => {
                                self.second[u] = false;
                                reply = Some(Reply::Stop);
                                self.stack.pop();
                            }
                        }
                    }
                    (Request::Next, _) => {
                        expect_done(u, reply.take())?;
                        reply = Some(Reply::Done);
                        self.stack.pop();
                    }
                },
                NodeKind::Product(a, b) => match (frame.req, frame.stage) {
                    (Request::First, 0) => {
                        frame.stage = 1;
                        self.stack.push(Frame { node: a, req: Request::First, stage: 0 });
                    }
                    (Request::First, 1) => {
                        expect_done(u, reply.take())?;
                        frame.stage = 2;
                        self.stack.push(Frame { node: b, req: Request::First, stage: 0 });
                    }
                    (Request::First, _) => {
                        expect_done(u, reply.take())?;
                        reply = Some(Reply::Done);
                        self.stack.pop();
                    }
                    (Request::Next, 0) => {
                        frame.stage = 1;
                        self.stack.push(Frame { node: b, req: Request::Next, stage: 0 });
                    }
                    (Request::Next, 1) => match reply.take() {
                        Some(Reply::Done) => {
                            reply = Some(Reply::Done);
                            self.stack.pop();
                        }
                        Some(Reply::Stop) => {
                            frame.stage = 2;
                            self.stack.push(Frame { node: a, req: Request::Next, stage: 0 });
                        }
                        None => return Err(violation(u, "product resumed without a reply")),
                    },
                    (Request::Next, 2) => match reply.take() {
                        Some(Reply::Done) => {
                            frame.stage = 3;
                            self.stack.push(Frame { node: b, req: Request::First, stage: 0 });
                        }
                        Some(Reply::Stop) => {
                            reply = Some(Reply::Stop);
                            self.stack.pop();
                        }
                        None => return Err(violation(u, "product resumed without a reply")),
                    },
                    (Request::Next, _) => {
                        expect_done(u, reply.take())?;
                        reply = Some(Reply::Done);
                        self.stack.pop();
                    }
                },
            }
        }
        reply.ok_or_else(|| violation(node, "no reply reached the master"))
    }
}

fn expect_done(node: usize, r: Option<Reply>) -> Result<(), EnumError> {
    match r {
        Some(Reply::Done) => Ok(()),
        Some(Reply::Stop) => Err(violation(node, "FIRST answered with STOP")),
        None => Err(violation(node, "resumed without a reply")),
    }
}

impl Enumerator for Enum1<'_> {
    fn advance(&mut self) -> Result<bool, EnumError> {
        self.stats = VisitStats::default();
        let req = if self.started { Request::Next } else { Request::First };
        let r = self.call(self.dag.target, req)?;
        self.started = r == Reply::Done;
        Ok(self.started)
    }

    fn current(&self) -> &[bool] {
        &self.d
    }

    fn last_interval(&self) -> VisitStats {
        self.stats
    }

    fn is_idle(&self) -> bool {
        !self.started && self.stack.is_empty() && self.second.iter().all(|&s| !s)
    }
}
