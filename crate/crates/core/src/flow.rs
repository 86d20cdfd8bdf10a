//! Small Dinic max-flow used for connectivity, disjoint paths and indegree realization.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub(crate) struct FlowNet {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    pub fn new(n: usize) -> Self {
        FlowNet {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Adds an arc and returns its index; the reverse residual arc is `index ^ 1`.
    pub fn add(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.cap.push(cap);
        self.adj[from].push(id);
        self.head.push(from);
        self.cap.push(0);
        self.adj[to].push(id + 1);
        id
    }

    pub fn flow_on(&self, arc: usize) -> i64 {
        self.cap[arc ^ 1]
    }

    pub fn head_of(&self, arc: usize) -> usize {
        self.head[arc]
    }

    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_forward(arc: usize) -> bool {
        arc.is_multiple_of(2)
    }

    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        while total < limit {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &a in &self.adj[v] {
                    let w = self.head[a];
                    if self.cap[a] > 0 && level[w] == usize::MAX {
                        level[w] = level[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if level[t] == usize::MAX {
                break;
            }
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, limit - total, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    fn augment(&mut self, v: usize, t: usize, f: i64, level: &[usize], iter: &mut [usize]) -> i64 {
        if v == t {
            return f;
        }
        while iter[v] < self.adj[v].len() {
            let a = self.adj[v][iter[v]];
            let w = self.head[a];
            if self.cap[a] > 0 && level[w] == level[v] + 1 {
                let d = self.augment(w, t, f.min(self.cap[a]), level, iter);
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            iter[v] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_parallel_routes() {
        let mut net = FlowNet::new(4);
        net.add(0, 1, 1);
        net.add(0, 2, 1);
        net.add(1, 3, 1);
        net.add(2, 3, 1);
        net.add(1, 2, 5);
        assert_eq!(net.max_flow(0, 3, i64::MAX), 2);
    }

    #[test]
    fn limit_is_respected() {
        let mut net = FlowNet::new(2);
        net.add(0, 1, 10);
        assert_eq!(net.max_flow(0, 1, 3), 3);
    }
}
