use super::{find_channels, AllowableCertificate, Arc, Channel, DiagramPath, PathError};
use crate::diagram::Diagram;

#[derive(Clone, Copy, Debug)]
struct Step {
    to: usize,
    pos_here: usize,
    pos_there: usize,
    channel: Option<usize>,
}

struct Frame {
    v: usize,
    in_pos: Option<usize>,
    next: usize,
    channels: usize,
}

/// Depth-first enumeration of allowable paths in a fixed, deterministic order.
///
/// Partial paths are cut as soon as a corner below 2 appears, so only the
/// complete paths that reach `p/q` count towards the bound.
pub struct AllowablePaths<'a> {
    d: &'a Diagram,
    channels: Vec<Channel>,
    adj: Vec<Vec<Step>>,
    stack: Vec<Frame>,
    // step index taken out of each frame but the last
    trail: Vec<usize>,
    visited: Vec<bool>,
    complete: usize,
    bound: Option<usize>,
    done: bool,
}

impl<'a> AllowablePaths<'a> {
    pub fn new(d: &'a Diagram, bound: Option<usize>) -> Self {
        let channels = find_channels(d);
        let n = d.vertices().len();
        let mut adj: Vec<Vec<Step>> = vec![Vec::new(); n];
        for &[a, b] in d.edges() {
            let (pa, pb) = (d.ray_position(a, b).unwrap(), d.ray_position(b, a).unwrap());
            adj[a].push(Step {
                to: b,
                pos_here: pa,
                pos_there: pb,
                channel: None,
            });
            adj[b].push(Step {
                to: a,
                pos_here: pb,
                pos_there: pa,
                channel: None,
            });
        }
        for (i, c) in channels.iter().enumerate() {
            let (a, b) = (c.endpoint_a, c.endpoint_b);
            let (pa, pb) = (c.position_at(d, a).unwrap(), c.position_at(d, b).unwrap());
            adj[a].push(Step {
                to: b,
                pos_here: pa,
                pos_there: pb,
                channel: Some(i),
            });
            adj[b].push(Step {
                to: a,
                pos_here: pb,
                pos_there: pa,
                channel: Some(i),
            });
        }
        for list in &mut adj {
            list.sort_by_key(|s| (s.to, s.channel.map_or(0, |c| c + 1)));
        }
        let mut visited = vec![false; n];
        visited[d.start()] = true;
        AllowablePaths {
            d,
            channels,
            adj,
            stack: vec![Frame {
                v: d.start(),
                in_pos: None,
                next: 0,
                channels: 0,
            }],
            trail: Vec::new(),
            visited,
            complete: 0,
            bound,
            done: false,
        }
    }

    /// Complete paths (allowable or not) reached so far.
    pub fn complete_paths(&self) -> usize {
        self.complete
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    fn arc(&self, from: usize, step: &Step) -> Arc {
        match step.channel {
            None => Arc::Edge { from, to: step.to },
            Some(i) => Arc::Channel {
                channel: self.channels[i],
                from,
                to: step.to,
            },
        }
    }

    fn certificate(&self, last: Step) -> AllowableCertificate {
        let mut arcs = Vec::with_capacity(self.stack.len());
        for (frame, &si) in self.stack.iter().zip(&self.trail) {
            arcs.push(self.arc(frame.v, &self.adj[frame.v][si]));
        }
        let top = self.stack.last().unwrap();
        arcs.push(self.arc(top.v, &last));
        let path = DiagramPath::new(self.d, arcs).expect("search builds simple paths");
        AllowableCertificate::new(path).expect("search only yields allowable paths")
    }
}

impl Iterator for AllowablePaths<'_> {
    type Item = Result<AllowableCertificate, PathError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let target = self.d.end();
        loop {
            let Some(frame) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let v = frame.v;
            if frame.next >= self.adj[v].len() {
                self.stack.pop();
                self.trail.pop();
                self.visited[v] = false;
                continue;
            }
            let si = frame.next;
            frame.next += 1;
            let step = self.adj[v][si];
            if self.visited[step.to] {
                continue;
            }
            if let Some(ip) = frame.in_pos {
                if ip.abs_diff(step.pos_here) < 2 {
                    continue;
                }
            }
            let channels = frame.channels + usize::from(step.channel.is_some());
            if step.to == target {
                self.complete += 1;
                if self.bound.is_some_and(|b| self.complete > b) {
                    self.done = true;
                    return Some(Err(PathError::BoundExceeded(self.bound.unwrap())));
                }
                if channels > 0 {
                    return Some(Ok(self.certificate(step)));
                }
                continue;
            }
            self.trail.push(si);
            self.visited[step.to] = true;
            self.stack.push(Frame {
                v: step.to,
                in_pos: Some(step.pos_there),
                next: 0,
                channels,
            });
        }
    }
}

/// Every allowable path of `d`, failing once more than `max_paths` complete
/// paths have been seen.
pub fn exhaustive_allowable_paths(d: &Diagram, max_paths: usize) -> AllowablePaths<'_> {
    AllowablePaths::new(d, Some(max_paths))
}

#[derive(Clone, Debug)]
pub struct ObstructionSearch {
    /// First allowable path with a corner above 2, if any.
    pub found: Option<AllowableCertificate>,
    /// Allowable paths examined before stopping.
    pub allowable_seen: usize,
    /// Largest corner over the examined allowable paths.
    pub max_corner_seen: Option<usize>,
}

/// Looks for an allowable path with some corner number above 2, stopping at
/// the first one.
pub fn search_obstruction(
    d: &Diagram,
    bound: Option<usize>,
) -> Result<ObstructionSearch, PathError> {
    let mut out = ObstructionSearch {
        found: None,
        allowable_seen: 0,
        max_corner_seen: None,
    };
    for cert in AllowablePaths::new(d, bound) {
        let cert = cert?;
        out.allowable_seen += 1;
        out.max_corner_seen = out.max_corner_seen.max(Some(cert.max_corner));
        if cert.max_corner > 2 {
            out.found = Some(cert);
            break;
        }
    }
    Ok(out)
}
