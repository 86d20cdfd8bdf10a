//! Directed multigraphs with a base edge, plus the combinatorics built on them:
//! connectivity, series classes, cycles, spanning trees, arches and Whitney moves.
//!
//! Vertex and edge ids are strings. Internally both are indexed by their position
//! in lexicographic order, and every tie-break uses that order.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::flow::FlowNet;
use crate::orcyc::OrCycMorphism;

#[derive(Debug, Clone)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<String>,
    tail: Vec<usize>,
    head: Vec<usize>,
    base: usize,
    vindex: HashMap<String, usize>,
    eindex: HashMap<String, usize>,
    adj: Vec<Vec<(usize, usize)>>,
    tree: SpanningTree,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.tail == other.tail
            && self.head == other.head
            && self.base == other.base
    }
}

impl Eq for Multigraph {}

/// Lowest-id-first spanning tree, rooted at vertex 0.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    in_tree: Vec<bool>,
    /// (edge to parent, parent) for every non-root vertex.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    /// Vertices in BFS order from the root.
    order: Vec<usize>,
}

/// A walk given by edges and the direction each is crossed (+1 along the edge, -1 against).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub start: usize,
    pub edges: Vec<usize>,
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arch {
    pub edges: Vec<usize>,
    pub tips: (usize, usize),
    pub complement: Vec<usize>,
}

/// Builds and validates a graph from `(edge id, tail, head)` triples.
pub fn build_graph<S: AsRef<str>>(edge_list: &[(S, S, S)], base_edge: &str) -> Result<Multigraph> {
    let mut seen = BTreeSet::new();
    let mut vset = BTreeSet::new();
    for (id, t, h) in edge_list {
        let (id, t, h) = (id.as_ref(), t.as_ref(), h.as_ref());
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicateEdgeId(id.to_string()));
        }
        if t == h {
            return Err(Error::LoopEdge(id.to_string()));
        }
        vset.insert(t.to_string());
        vset.insert(h.to_string());
    }
    if edge_list.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !seen.contains(base_edge) {
        return Err(Error::MissingBaseEdge(base_edge.to_string()));
    }
    let vertices: Vec<String> = vset.into_iter().collect();
    let edges: Vec<String> = seen.into_iter().collect();
    let vindex: HashMap<String, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let eindex: HashMap<String, usize> = edges.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let mut tail = vec![0; edges.len()];
    let mut head = vec![0; edges.len()];
    for (id, t, h) in edge_list {
        let e = eindex[id.as_ref()];
        tail[e] = vindex[t.as_ref()];
        head[e] = vindex[h.as_ref()];
    }
    let base = eindex[base_edge];
    Multigraph::from_indices(vertices, edges, tail, head, base)
}

impl Multigraph {
    fn from_indices(
        vertices: Vec<String>,
        edges: Vec<String>,
        tail: Vec<usize>,
        head: Vec<usize>,
        base: usize,
    ) -> Result<Multigraph> {
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in 0..edges.len() {
            adj[tail[e]].push((head[e], e));
            adj[head[e]].push((tail[e], e));
        }
        for list in adj.iter_mut() {
            list.sort_by_key(|&(_, e)| e);
        }
        let vindex = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let eindex = edges.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut g = Multigraph {
            vertices,
            edges,
            tail,
            head,
            base,
            vindex,
            eindex,
            adj,
            tree: SpanningTree {
                in_tree: Vec::new(),
                parent: Vec::new(),
                depth: Vec::new(),
                order: Vec::new(),
            },
        };
        if components(&g, |_| true, |_| true).1 != 1 {
            return Err(Error::Disconnected);
        }
        g.tree = SpanningTree::lowest_first(&g);
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edges
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vindex.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, name: &str) -> Result<usize> {
        self.eindex.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    /// o(e)
    pub fn tail(&self, e: usize) -> usize {
        self.tail[e]
    }

    /// t(e)
    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        if self.tail[e] == v {
            self.head[e]
        } else {
            self.tail[e]
        }
    }

    pub fn base_edge(&self) -> usize {
        self.base
    }

    /// t(ê), the vertex every class representative is reduced at.
    pub fn base_vertex(&self) -> usize {
        self.head[self.base]
    }

    /// (neighbour, edge) pairs, sorted by edge index.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn spanning_tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn edge_list(&self) -> Vec<(String, String, String)> {
        (0..self.num_edges())
            .map(|e| {
                (
                    self.edges[e].clone(),
                    self.vertices[self.tail[e]].clone(),
                    self.vertices[self.head[e]].clone(),
                )
            })
            .collect()
    }

    /// Same graph with a different base edge.
    pub fn with_base(&self, e: usize) -> Multigraph {
        let mut g = self.clone();
        g.base = e;
        g
    }

    /// Same graph with the edges in `flip` reversed.
    pub fn reoriented(&self, flip: &[usize]) -> Multigraph {
        let mut tail = self.tail.clone();
        let mut head = self.head.clone();
        for &e in flip {
            std::mem::swap(&mut tail[e], &mut head[e]);
        }
        Multigraph::from_indices(self.vertices.clone(), self.edges.clone(), tail, head, self.base)
            .expect("reorientation keeps the graph valid")
    }

    /// Copy with vertices and edges renamed; the index order is recomputed from the new names.
    pub fn renamed(&self, vname: impl Fn(&str) -> String, ename: impl Fn(&str) -> String) -> Multigraph {
        let list: Vec<(String, String, String)> = (0..self.num_edges())
            .map(|e| {
                (
                    ename(&self.edges[e]),
                    vname(&self.vertices[self.tail[e]]),
                    vname(&self.vertices[self.head[e]]),
                )
            })
            .collect();
        build_graph(&list, &ename(&self.edges[self.base])).expect("renaming keeps the graph valid")
    }

    /// Boundary of an integer cochain: each edge adds its coefficient at t(e) and removes it at o(e).
    pub fn boundary_int(&self, cochain: &[i64]) -> Vec<i64> {
        let mut d = vec![0i64; self.num_vertices()];
        for (e, &a) in cochain.iter().enumerate() {
            d[self.head[e]] += a;
            d[self.tail[e]] -= a;
        }
        d
    }
}

impl SpanningTree {
    fn lowest_first(g: &Multigraph) -> SpanningTree {
        let n = g.num_vertices();
        let mut uf = UnionFind::new(n);
        let mut in_tree = vec![false; g.num_edges()];
        for e in 0..g.num_edges() {
            if uf.union(g.tail(e), g.head(e)) {
                in_tree[e] = true;
            }
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &(w, e) in g.neighbors(v) {
                if in_tree[e] && !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((e, v));
                    depth[w] = depth[v] + 1;
                    order.push(w);
                }
            }
        }
        SpanningTree {
            in_tree,
            parent,
            depth,
            order,
        }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// Non-tree edges in index order; these index the fundamental cycles.
    pub fn cotree(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| !self.in_tree[e]).collect()
    }

    /// The tree path from `u` to `v` as (edge, traversal sign) steps.
    pub fn path(&self, g: &Multigraph, u: usize, v: usize) -> Vec<(usize, i8)> {
        let mut from_u = Vec::new();
        let mut from_v = Vec::new();
        let (mut a, mut b) = (u, v);
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (e, p) = self.parent[a].expect("non-root has a parent");
                from_u.push((e, if g.tail(e) == a { 1 } else { -1 }));
                a = p;
            } else {
                let (e, p) = self.parent[b].expect("non-root has a parent");
                // crossed from p to b on the way out
                from_v.push((e, if g.tail(e) == p { 1 } else { -1 }));
                b = p;
            }
        }
        from_u.extend(from_v.into_iter().rev());
        from_u
    }

    /// Integer cochain supported on the tree with boundary `d`. Requires deg d = 0.
    pub fn lift(&self, g: &Multigraph, d: &[i64]) -> Vec<i64> {
        debug_assert_eq!(d.iter().sum::<i64>(), 0);
        let mut sub = d.to_vec();
        let mut a = vec![0i64; g.num_edges()];
        for &v in self.order.iter().rev() {
            if let Some((e, p)) = self.parent[v] {
                a[e] = if g.head(e) == v { sub[v] } else { -sub[v] };
                sub[p] += sub[v];
            }
        }
        a
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Component labels over alive vertices using alive edges, and the number of components.
pub(crate) fn components(
    g: &Multigraph,
    edge_alive: impl Fn(usize) -> bool,
    vertex_alive: impl Fn(usize) -> bool,
) -> (Vec<usize>, usize) {
    let n = g.num_vertices();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if !vertex_alive(s) || label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(w, e) in g.neighbors(v) {
                if edge_alive(e) && vertex_alive(w) && label[w] == usize::MAX {
                    label[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

pub fn genus(g: &Multigraph) -> i64 {
    g.num_edges() as i64 - g.num_vertices() as i64 + 1
}

pub fn is_two_connected(g: &Multigraph) -> bool {
    let n = g.num_vertices();
    if n < 3 {
        return n == 2;
    }
    (0..n).all(|cut| components(g, |_| true, |v| v != cut).1 == 1)
}

/// Minimum number of edges whose removal disconnects the graph.
pub fn edge_connectivity(g: &Multigraph) -> usize {
    let n = g.num_vertices();
    let mut best = usize::MAX;
    for t in 1..n {
        let mut net = FlowNet::new(n);
        for e in 0..g.num_edges() {
            net.add(g.tail(e), g.head(e), 1);
            net.add(g.head(e), g.tail(e), 1);
        }
        best = best.min(net.max_flow(0, t, i64::MAX) as usize);
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

pub fn connectivity_profile(g: &Multigraph) -> (bool, usize) {
    (is_two_connected(g), edge_connectivity(g))
}

/// Class index for every edge; e and l share a class iff removing both disconnects.
pub fn series_labels(g: &Multigraph) -> Result<Vec<usize>> {
    let m = g.num_edges();
    for e in 0..m {
        if components(g, |x| x != e, |_| true).1 != 1 {
            return Err(Error::NotTwoEdgeConnected);
        }
    }
    let mut uf = UnionFind::new(m);
    for a in 0..m {
        for b in a + 1..m {
            if components(g, |x| x != a && x != b, |_| true).1 != 1 {
                uf.union(a, b);
            }
        }
    }
    let mut relabel = HashMap::new();
    Ok((0..m)
        .map(|e| {
            let r = uf.find(e);
            let next = relabel.len();
            *relabel.entry(r).or_insert(next)
        })
        .collect())
}

pub fn series_classes(g: &Multigraph) -> Result<Vec<Vec<usize>>> {
    let labels = series_labels(g)?;
    let count = labels.iter().max().map_or(0, |&x| x + 1);
    let mut classes = vec![Vec::new(); count];
    for (e, &c) in labels.iter().enumerate() {
        classes[c].push(e);
    }
    Ok(classes)
}

impl EdgePath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    /// Visited vertices, starting with `start`; a closed walk repeats it at the end.
    pub fn vertices(&self, g: &Multigraph) -> Vec<usize> {
        let mut out = vec![self.start];
        for (&e, &s) in self.edges.iter().zip(&self.signs) {
            out.push(if s > 0 { g.head(e) } else { g.tail(e) });
        }
        out
    }

    /// Checks that consecutive steps connect and that signs match the crossing direction.
    pub fn is_walk(&self, g: &Multigraph) -> bool {
        let mut at = self.start;
        for (&e, &s) in self.edges.iter().zip(&self.signs) {
            let (from, to) = if s > 0 { (g.tail(e), g.head(e)) } else { (g.head(e), g.tail(e)) };
            if from != at || !(s == 1 || s == -1) {
                return false;
            }
            at = to;
        }
        self.edges.len() == self.signs.len()
    }

    pub fn is_simple_cycle(&self, g: &Multigraph) -> bool {
        if self.edges.is_empty() || !self.is_walk(g) {
            return false;
        }
        let vs = self.vertices(g);
        if vs.last() != Some(&self.start) {
            return false;
        }
        let distinct_v: BTreeSet<_> = vs[..vs.len() - 1].iter().collect();
        let distinct_e: BTreeSet<_> = self.edges.iter().collect();
        distinct_v.len() == self.edges.len() && distinct_e.len() == self.edges.len()
    }

    /// The algebraic path: coefficient = traversal sign on each crossed edge.
    pub fn cochain(&self, num_edges: usize) -> Vec<i64> {
        let mut c = vec![0i64; num_edges];
        for (&e, &s) in self.edges.iter().zip(&self.signs) {
            c[e] += s as i64;
        }
        c
    }

    pub fn reversed(&self, g: &Multigraph) -> EdgePath {
        let end = *self.vertices(g).last().unwrap();
        EdgePath {
            start: end,
            edges: self.edges.iter().rev().copied().collect(),
            signs: self.signs.iter().rev().map(|s| -s).collect(),
        }
    }
}

/// Shortest path from `u` to `v`, neighbours explored in edge order.
pub fn shortest_path(g: &Multigraph, u: usize, v: usize) -> EdgePath {
    let n = g.num_vertices();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &(y, e) in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((e, x));
                queue.push_back(y);
            }
        }
    }
    let mut edges = Vec::new();
    let mut signs = Vec::new();
    let mut at = v;
    while at != u {
        let (e, p) = prev[at].expect("graph is connected");
        edges.push(e);
        signs.push(if g.tail(e) == p { 1 } else { -1 });
        at = p;
    }
    edges.reverse();
    signs.reverse();
    EdgePath { start: u, edges, signs }
}

pub fn cycle_through_edges(g: &Multigraph, a: usize, b: usize) -> Result<EdgePath> {
    cycle_through_edges_ranked(g, a, b, None)
}

/// Like [`cycle_through_edges`], but the search prefers edges with lower `rank[e]`.
/// Different rankings can produce different (equally valid) cycles.
pub fn cycle_through_edges_ranked(g: &Multigraph, a: usize, b: usize, rank: Option<&[usize]>) -> Result<EdgePath> {
    let no_cycle = || Error::NoCommonCycle(g.edge_name(a).to_string(), g.edge_name(b).to_string());
    if a == b {
        return Err(no_cycle());
    }
    let n = g.num_vertices();
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        net.add(vin(v), vout(v), 1);
    }
    let mut order: Vec<usize> = (0..g.num_edges()).filter(|&e| e != a && e != b).collect();
    if let Some(r) = rank {
        order.sort_by_key(|&e| (r[e], e));
    }
    // arc index -> graph edge, for reading the paths back
    let mut arc_edge = HashMap::new();
    for &e in &order {
        let (x, y) = (g.tail(e), g.head(e));
        arc_edge.insert(net.add(vout(x), vin(y), 1), e);
        arc_edge.insert(net.add(vout(y), vin(x), 1), e);
    }
    net.add(src, vin(g.tail(a)), 1);
    net.add(src, vin(g.head(a)), 1);
    net.add(vout(g.tail(b)), sink, 1);
    net.add(vout(g.head(b)), sink, 1);
    if net.max_flow(src, sink, 2) < 2 {
        return Err(no_cycle());
    }
    // follow one unit of flow from an endpoint of `a` to an endpoint of `b`
    let trace = |start: usize| -> (Vec<(usize, i8)>, usize) {
        let mut steps = Vec::new();
        let mut v = start;
        loop {
            let out = vout(v);
            let next = net
                .out_arcs(out)
                .iter()
                .copied()
                .find(|&arc| FlowNet::is_forward(arc) && net.flow_on(arc) > 0 && arc_edge.contains_key(&arc));
            match next {
                Some(arc) => {
                    let e = arc_edge[&arc];
                    let w = net.head_of(arc) / 2;
                    steps.push((e, if g.tail(e) == v { 1 } else { -1 }));
                    v = w;
                }
                None => return (steps, v),
            }
        }
    };
    let (p1, end1) = trace(g.tail(a));
    let (p2, end2) = trace(g.head(a));
    // a forward, then p2 to end2, then b to end1, then p1 backwards to o(a)
    let mut edges = vec![a];
    let mut signs = vec![1i8];
    for (e, s) in p2 {
        edges.push(e);
        signs.push(s);
    }
    if g.tail(b) == end2 && g.head(b) == end1 {
        edges.push(b);
        signs.push(1);
    } else if g.head(b) == end2 && g.tail(b) == end1 {
        edges.push(b);
        signs.push(-1);
    } else {
        return Err(Error::Internal("disjoint paths do not meet the second edge".into()));
    }
    for (e, s) in p1.into_iter().rev() {
        edges.push(e);
        signs.push(-s);
    }
    let cycle = EdgePath {
        start: g.tail(a),
        edges,
        signs,
    };
    if !cycle.is_simple_cycle(g) {
        return Err(Error::Internal("spliced cycle is not simple".into()));
    }
    Ok(cycle)
}

/// One cycle per non-tree edge f: f forwards, then the tree path back to o(f).
pub fn fundamental_cycles(g: &Multigraph) -> Vec<EdgePath> {
    let tree = g.spanning_tree();
    tree.cotree()
        .into_iter()
        .map(|f| {
            let mut edges = vec![f];
            let mut signs = vec![1i8];
            for (e, s) in tree.path(g, g.head(f), g.tail(f)) {
                edges.push(e);
                signs.push(s);
            }
            EdgePath {
                start: g.tail(f),
                edges,
                signs,
            }
        })
        .collect()
}

/// Every arch, found by splitting at each pair of vertices.
pub fn find_arches(g: &Multigraph) -> Result<Vec<Arch>> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let n = g.num_vertices();
    let mut found = BTreeSet::new();
    for v in 0..n {
        for w in v + 1..n {
            let (label, count) = components(g, |_| true, |x| x != v && x != w);
            if count < 2 {
                continue;
            }
            let mut comp_edges = vec![Vec::new(); count];
            let mut direct = Vec::new();
            for e in 0..g.num_edges() {
                let (x, y) = (g.tail(e), g.head(e));
                let inner = [x, y].into_iter().find(|&u| u != v && u != w);
                match inner {
                    Some(u) => comp_edges[label[u]].push(e),
                    None => direct.push(e),
                }
            }
            if count > 20 || direct.len() > 20 {
                return Err(Error::Internal("too many arch candidates".into()));
            }
            for cmask in 1u64..(1u64 << count) - 1 {
                for dmask in 0u64..(1u64 << direct.len()) {
                    let mut edges: Vec<usize> = (0..count)
                        .filter(|c| cmask >> c & 1 == 1)
                        .flat_map(|c| comp_edges[c].iter().copied())
                        .collect();
                    edges.extend((0..direct.len()).filter(|i| dmask >> i & 1 == 1).map(|i| direct[i]));
                    edges.sort_unstable();
                    let complement = (0..g.num_edges()).filter(|e| edges.binary_search(e).is_err()).collect();
                    found.insert(Arch {
                        edges,
                        tips: (v, w),
                        complement,
                    });
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Checks an edge set against the arch definition directly.
pub fn is_arch(g: &Multigraph, x: &Arch) -> bool {
    let inside: BTreeSet<usize> = x.edges.iter().copied().collect();
    if inside.is_empty() || inside.len() == g.num_edges() {
        return false;
    }
    let touched = |set: &dyn Fn(usize) -> bool| -> BTreeSet<usize> {
        (0..g.num_edges())
            .filter(|&e| set(e))
            .flat_map(|e| [g.tail(e), g.head(e)])
            .collect()
    };
    let vx = touched(&|e| inside.contains(&e));
    let vy = touched(&|e| !inside.contains(&e));
    let shared: Vec<usize> = vx.intersection(&vy).copied().collect();
    let (v, w) = x.tips;
    let mut tips = [v, w];
    tips.sort_unstable();
    shared == tips && vx.len() >= 3 && vy.len() >= 3
}

/// Reglues the arch with its tips exchanged. Edge ids, orientations and base are kept;
/// the returned morphism is the identity on edge ids.
pub fn whitney_move(g: &Multigraph, x: &Arch) -> Result<(Multigraph, OrCycMorphism)> {
    if x.edges.contains(&g.base_edge()) {
        return Err(Error::BaseEdgeInArch);
    }
    if !is_arch(g, x) {
        return Err(Error::NotAnArch);
    }
    let (v, w) = x.tips;
    let swap = |u: usize| {
        if u == v {
            w
        } else if u == w {
            v
        } else {
            u
        }
    };
    let mut tail = g.tail.clone();
    let mut head = g.head.clone();
    for &e in &x.edges {
        tail[e] = swap(tail[e]);
        head[e] = swap(head[e]);
    }
    let moved = Multigraph::from_indices(g.vertices.clone(), g.edges.clone(), tail, head, g.base)?;
    let ids: Vec<usize> = (0..g.num_edges()).collect();
    let morphism = OrCycMorphism::new(g, &moved, &ids)?;
    Ok((moved, morphism))
}
