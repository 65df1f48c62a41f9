//! Message passing with `VISIT` / `V+NEXT` requests and `DONE` / `LAST` replies.
//!
//! `VISIT` writes the node's current solution into the output vector.
//! `V+NEXT` does the same and then advances; the reply is `LAST` when the
//! solution just written was the node's last one, after which the node has
//! wrapped around to its first solution.

use crate::dag::{ExpressionDag, NodeKind};
use crate::error::EnumError;

use super::{violation, Enumerator, VisitStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Request {
    Visit,
    VisitNext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reply {
    Done,
    Last,
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    node: usize,
    req: Request,
    stage: u8,
}

pub struct Enum2<'a> {
    dag: &'a ExpressionDag,
    /// Union nodes: `false` while child 1 is active.
    second: Vec<bool>,
    stack: Vec<Frame>,
    d: Vec<bool>,
    stats: VisitStats,
    finished: bool,
}

impl<'a> Enum2<'a> {
    pub fn new(dag: &'a ExpressionDag) -> Self {
        Self {
            dag,
            second: vec![false; dag.nodes.len()],
            stack: Vec::new(),
            d: vec![false; dag.n],
            stats: VisitStats::default(),
            finished: false,
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
                    self.d[v] = matches!(kind, NodeKind::BasisIn(_));
                    reply = Some(match frame.req {
                        Request::Visit => Reply::Done,
                        Request::VisitNext => Reply::Last,
                    });
                    self.stack.pop();
                }
                NodeKind::BasisNull(_) => return Err(violation(u, "null basis node in a pruned DAG")),
                NodeKind::Union(a, b) => {
                    if frame.stage == 0 {
                        frame.stage = 1;
                        let child = if self.second[u] { b } else { a };
                        let req = frame.req;
                        self.stack.push(Frame { node: child, req, stage: 0 });
                        continue;
                    }
                    let r = reply.take().ok_or_else(|| violation(u, "union resumed without a reply"))?;
                    let out = match (frame.req, r) {
                        (Request::Visit, Reply::Done) => Reply::Done,
                        (Request::Visit, Reply::Last) => return Err(violation(u, "LAST in reply to VISIT")),
                        (Request::VisitNext, Reply::Done) => Reply::Done,
                        (Request::VisitNext, Reply::Last) => {
                            if self.second[u] {
                                self.second[u] = false;
                                Reply::Last
                            } else {
                                self.second[u] = true;
                                Reply::Done
                            }
                        }
                    };
                    reply = Some(out);
                    self.stack.pop();
                }
                NodeKind::Product(a, b) => match (frame.req, frame.stage) {
                    (Request::Visit, 0) => {
                        frame.stage = 1;
                        self.stack.push(Frame { node: a, req: Request::Visit, stage: 0 });
                    }
                    (Request::Visit, 1) => {
                        if reply.take() != Some(Reply::Done) {
                            return Err(violation(u, "VISIT not answered with DONE"));
                        }
                        frame.stage = 2;
                        self.stack.push(Frame { node: b, req: Request::Visit, stage: 0 });
                    }
                    (Request::Visit, _) => {
                        if reply.take() != Some(Reply::Done) {
                            return Err(violation(u, "VISIT not answered with DONE"));
                        }
                        reply = Some(Reply::Done);
                        self.stack.pop();
                    }
                    (Request::VisitNext, 0) => {
                        frame.stage = 1;
                        self.stack.push(Frame { node: a, req: Request::VisitNext, stage: 0 });
                    }
                    (Request::VisitNext, 1) => {
                        // child 1 is the inner loop; child 2 advances when it wraps
                        let r = reply.take().ok_or_else(|| violation(u, "product resumed without a reply"))?;
                        let (stage, req) = match r {
                            Reply::Done => (2, Request::Visit),
                            Reply::Last => (3, Request::VisitNext),
                        };
                        frame.stage = stage;
                        self.stack.push(Frame { node: b, req, stage: 0 });
                    }
                    (Request::VisitNext, 2) => {
                        if reply.take() != Some(Reply::Done) {
                            return Err(violation(u, "VISIT not answered with DONE"));
                        }
                        reply = Some(Reply::Done);
                        self.stack.pop();
                    }
                    (Request::VisitNext, _) => {
                        if reply.is_none() {
                            return Err(violation(u, "product resumed without a reply"));
                        }
                        self.stack.pop();
                    }
                },
            }
        }
        reply.ok_or_else(|| violation(node, "no reply reached the master"))
    }
}

impl Enumerator for Enum2<'_> {
    fn advance(&mut self) -> Result<bool, EnumError> {
        self.stats = VisitStats::default();
        if self.finished {
            self.finished = false;
            return Ok(false);
        }
        let r = self.call(self.dag.target, Request::VisitNext)?;
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
        !self.finished && self.stack.is_empty() && self.second.iter().all(|&s| !s)
    }
}
