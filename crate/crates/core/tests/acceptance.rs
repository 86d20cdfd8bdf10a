//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::io::Write;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use rigidlift::divisor::{
    effective_divisors, enumerate_picard, is_effective_class, q_reduce, DEFAULT_MAX_CLASSES,
};
use rigidlift::multigraph::{
    cycle_through_edges_ranked, edge_connectivity, find_arches, genus, is_two_connected, series_classes, whitney_move,
};
use rigidlift::orcyc::{
    compose, diagram_defect, is_rigid, lift_to_graph_isomorphism, lowering_divisor, nonrigidity_witness,
    push_divisor, rigidity_divisor, rigidity_divisor_via_cochains, s1_image_preserved, theta_preserved,
};
use rigidlift::orientation::effectiveness_certificate;
use rigidlift::{build_graph, fixtures, Divisor, DivisorClass, EdgeState, Multigraph, OrCycMorphism, PartialOrientation};

// exactness is the only tolerance: every comparison below is integer or class equality
const RIGID_EXAMPLE_SECONDS: f64 = 1.0;
const SAMPLED_MORPHISMS: usize = 1000;
const DIAGRAM_TRIPLES: usize = 1000;
const PICARD_GRAPHS: usize = 50;
const CERTIFICATE_CASES: usize = 10_000;
const MOVE_SEQUENCES: usize = 100;
const SHUFFLE_SEEDS: usize = 10;
const SHUFFLED_MORPHISMS: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn div(g: &Multigraph, terms: &[(&str, i64)]) -> Divisor {
    let mut d = Divisor::zero(g.num_vertices());
    for &(v, k) in terms {
        d[g.vertex(v).unwrap()] += k;
    }
    d
}

fn names(g: &Multigraph, d: &Divisor) -> String {
    rigidlift::io::format_divisor(g, d)
}

fn chern(g: &Multigraph) -> Divisor {
    rigidlift::orientation::chern_class(g, &PartialOrientation::base(g)).unwrap()
}

// ---------------------------------------------------------------- graph family

/// Every 2-connected, 2-edge-connected loopless multigraph with at most 5 vertices,
/// at most 8 edges and genus at least 2, one per isomorphism class.
fn small_family() -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let pair_index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
        let relabel: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| pairs.iter().map(|&(a, b)| pair_index(p[a], p[b])).collect())
            .collect();
        let mut seen = HashSet::new();
        for m in (n + 1)..=8 {
            let mut mult = vec![0u8; pairs.len()];
            compositions(&mut mult, 0, m, &mut |mult| {
                let mut deg = vec![0; n];
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    deg[a] += mult[k];
                    deg[b] += mult[k];
                }
                if deg.iter().any(|&d| d < 2) {
                    return;
                }
                let canon = relabel
                    .iter()
                    .map(|r| {
                        let mut v = vec![0u8; mult.len()];
                        for k in 0..mult.len() {
                            v[r[k]] = mult[k];
                        }
                        v
                    })
                    .min()
                    .unwrap();
                if !seen.insert(canon.clone()) {
                    return;
                }
                let mut edges = Vec::new();
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    for _ in 0..canon[k] {
                        let id = format!("f{}", edges.len());
                        edges.push((id, format!("u{a}"), format!("u{b}")));
                    }
                }
                if let Ok(g) = build_graph(&edges, "f0") {
                    if genus(&g) >= 2 && is_two_connected(&g) && edge_connectivity(&g) >= 2 {
                        out.push(g);
                    }
                }
            });
        }
    }
    out
}

fn compositions(mult: &mut Vec<u8>, k: usize, left: usize, f: &mut impl FnMut(&[u8])) {
    if k + 1 == mult.len() {
        mult[k] = left as u8;
        f(mult);
        return;
    }
    for x in 0..=left {
        mult[k] = x as u8;
        compositions(mult, k + 1, left - x, f);
    }
    mult[k] = 0;
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

// ---------------------------------------------------------------- morphism sampler

/// A base-preserving cyclic bijection out of `g` rebased at `base`: Whitney moves,
/// reorientation, vertex relabelling and a permutation inside series classes.
fn sample_morphism(g: &Multigraph, base: usize, rng: &mut StdRng) -> OrCycMorphism {
    let src = g.with_base(base);
    let mut t = src.clone();
    for _ in 0..rng.gen_range(0..=3) {
        let arches: Vec<_> = find_arches(&t).unwrap().into_iter().filter(|a| !a.edges.contains(&base)).collect();
        if let Some(a) = arches.choose(rng) {
            t = whitney_move(&t, a).unwrap().0;
        }
    }
    let flip: Vec<usize> = (0..t.num_edges()).filter(|_| rng.gen_bool(0.3)).collect();
    t = t.reoriented(&flip);
    let mut order: Vec<String> = t.vertex_names().to_vec();
    order.shuffle(rng);
    let old: Vec<String> = t.vertex_names().to_vec();
    t = t.renamed(|v| order[old.iter().position(|x| x == v).unwrap()].clone(), |e| e.to_string());
    let mut sigma: Vec<usize> = (0..t.num_edges()).collect();
    if rng.gen_bool(0.7) {
        for class in series_classes(&t).unwrap() {
            let mut shuffled = class.clone();
            shuffled.shuffle(rng);
            for (a, b) in class.iter().zip(&shuffled) {
                sigma[*a] = *b;
            }
        }
    }
    let target = t.with_base(sigma[base]);
    OrCycMorphism::new(&src, &target, &sigma).unwrap()
}

fn sampled_morphisms(family: &[Multigraph], count: usize, seed: u64) -> Vec<OrCycMorphism> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    // every base edge of every graph at least once, then random extras
    for g in family {
        for base in 0..g.num_edges() {
            out.push(sample_morphism(g, base, &mut rng));
        }
    }
    while out.len() < count {
        let g = family.choose(&mut rng).unwrap();
        let base = rng.gen_range(0..g.num_edges());
        out.push(sample_morphism(g, base, &mut rng));
    }
    out
}

fn random_full(g: &Multigraph, rng: &mut StdRng) -> PartialOrientation {
    PartialOrientation(
        (0..g.num_edges())
            .map(|_| if rng.gen_bool(0.5) { EdgeState::Forward } else { EdgeState::Backward })
            .collect(),
    )
}

// ---------------------------------------------------------------- oracles

/// Spanning-tree count as the determinant of a reduced Laplacian, by fraction-free elimination.
fn kirchhoff(g: &Multigraph) -> i128 {
    let n = g.num_vertices();
    if n == 1 {
        return 1;
    }
    let mut a = vec![vec![0i128; n - 1]; n - 1];
    for e in 0..g.num_edges() {
        let (u, v) = (g.tail(e), g.head(e));
        for (x, y) in [(u, v), (v, u)] {
            if x > 0 {
                a[x - 1][x - 1] += 1;
                if y > 0 {
                    a[x - 1][y - 1] -= 1;
                }
            }
        }
    }
    let m = n - 1;
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

fn random_connected(rng: &mut StdRng) -> Multigraph {
    let n = rng.gen_range(2..=7);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for _ in 0..rng.gen_range(0..=6) {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        edges.push((u, v));
    }
    let list: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (format!("e{i:02}"), format!("v{u}"), format!("v{v}")))
        .collect();
    build_graph(&list, "e00").unwrap()
}

fn theta_set(g: &Multigraph) -> BTreeSet<DivisorClass> {
    let k = genus(g) - 1;
    effective_divisors(g.num_vertices(), k).iter().map(|d| DivisorClass::of(g, d)).collect()
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m = fixtures::rigid_morphism();
    let (g, h) = (m.source(), m.target());
    let mut fails = Vec::new();
    if m.signs() != [1, 1, -1, -1, 1, -1, 1] {
        fails.push(format!("signs {:?}", m.signs()));
    }
    if chern(g) != div(g, &[("v3", 1), ("v4", 1)]) {
        fails.push(format!("c(G) = {}", names(g, &chern(g))));
    }
    if chern(h) != div(h, &[("w2", 1), ("w5", 1)]) {
        fails.push(format!("c(H) = {}", names(h, &chern(h))));
    }
    if !rigidity_divisor(&m).is_zero() || !rigidity_divisor_via_cochains(&m).unwrap().is_zero() {
        fails.push("rigidity divisor nonzero".into());
    }
    if !is_rigid(&m).unwrap() {
        fails.push("not rigid".into());
    }
    match lift_to_graph_isomorphism(&m) {
        Ok(lift) => {
            let moved: Vec<(&str, &str)> = (0..h.num_edges())
                .filter(|&r| lift.psi[r] != r)
                .map(|r| (h.edge_name(r), h.edge_name(lift.psi[r])))
                .collect();
            if moved != [("r3", "r7"), ("r7", "r3")] {
                fails.push(format!("psi moves {moved:?}"));
            }
            if !lift.verify(&m) {
                fails.push("composite is not an isomorphism".into());
            }
        }
        Err(e) => fails.push(format!("lift failed: {e}")),
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= RIGID_EXAMPLE_SECONDS {
        fails.push(format!("took {secs:.3}s"));
    }
    if fails.is_empty() {
        outcome(true, format!("signs, Chern classes, E = 0, psi = (r3 r7), isomorphism verified in {secs:.3}s"))
    } else {
        outcome(false, fails.join("; "))
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let m = fixtures::nonrigid_morphism();
    let (j, k) = (m.source(), m.target());
    let mut fails = Vec::new();
    let mut notes = Vec::new();
    if m.signs() != [1, 1, -1, 1, -1, 1] {
        fails.push(format!("signs {:?}", m.signs()));
    }
    if chern(j) != div(j, &[("v3", 1), ("v4", 2), ("v1", -1)]) {
        fails.push(format!("c(J) = {}", names(j, &chern(j))));
    }
    if chern(k) != div(k, &[("w3", 1), ("w4", 1)]) {
        fails.push(format!("c(K) = {}", names(k, &chern(k))));
    }
    let e = rigidity_divisor(&m);
    if rigidity_divisor_via_cochains(&m).unwrap() != e {
        fails.push("divisor and cochain routes disagree".into());
    }
    let expected = div(k, &[("w2", 1), ("w3", 3), ("w4", -4)]);
    let w4 = k.vertex("w4").unwrap();
    let reduced_expected = q_reduce(k, &expected, w4);
    if reduced_expected != div(k, &[("w3", 1), ("w1", 1), ("w4", -2)]) {
        notes.push(format!("w2+3w3-4w4 reduces at w4 to {}", names(k, &reduced_expected)));
    }
    if DivisorClass::of(k, &expected) != e {
        fails.push(format!(
            "E reduced at w4 is {} (expected class reduces to {})",
            names(k, &q_reduce(k, e.rep(), w4)),
            names(k, &reduced_expected)
        ));
    }
    if is_rigid(&m).unwrap() {
        fails.push("reported rigid".into());
    }
    match nonrigidity_witness(&m) {
        Ok(w) if w.verify(&m) => notes.push(format!("witness {} verifies", names(j, w.source_class.rep()))),
        Ok(_) => fails.push("witness does not verify".into()),
        Err(err) => fails.push(format!("no witness: {err}")),
    }
    // the quoted answer S^2(v1 + v4), checked as a witness in its own right
    let quoted = div(j, &[("v1", 1), ("v4", 1)]).add_at(j.base_vertex(), -2);
    let in_source = is_effective_class(j, &quoted.clone().add_at(j.base_vertex(), 2));
    let image = push_divisor(&m, &quoted).add_at(k.base_vertex(), 2);
    if !(in_source && !is_effective_class(k, &image)) {
        fails.push(format!("S2(v1+v4) is not a witness: image {} is effective", names(k, &image)));
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= RIGID_EXAMPLE_SECONDS {
        fails.push(format!("took {secs:.3}s"));
    }
    let detail = [fails.clone(), notes].concat().join("; ");
    outcome(fails.is_empty(), format!("{detail} ({secs:.3}s)"))
}

fn criterion_3(family: &[Multigraph], morphisms: &[OrCycMorphism]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let (mut agree, mut rigid, mut lifted, mut reversed) = (0, 0, 0, 0);
    let mut disagreements = Vec::new();
    for (i, m) in morphisms.iter().enumerate() {
        let e_zero = rigidity_divisor(m).is_zero();
        let mut commutes = diagram_defect(m, &PartialOrientation::base(m.source())).unwrap().is_zero();
        for _ in 0..3 {
            let u = random_full(m.source(), &mut rng);
            commutes &= diagram_defect(m, &u).unwrap().is_zero();
        }
        let theta = theta_preserved(m, DEFAULT_MAX_CLASSES).unwrap();
        let s1 = s1_image_preserved(m);
        let cochain_route = rigidity_divisor_via_cochains(m).unwrap().is_zero();
        let mut reverses = false;
        if e_zero {
            rigid += 1;
            if let Ok(lift) = lift_to_graph_isomorphism(m) {
                lifted += 1;
                reverses = lift.reverses_base;
                reversed += reverses as usize;
            }
        }
        if [commutes, theta, s1, cochain_route].iter().all(|&p| p == e_zero) {
            agree += 1;
        } else {
            disagreements.push((i, e_zero, commutes, theta, s1, reverses));
        }
    }
    let n = morphisms.len();
    let s1_only_on_reversed = disagreements.iter().filter(|d| d.1 && d.2 && d.3 && !d.4 && d.5).count();
    let sample: Vec<String> = disagreements
        .iter()
        .take(3)
        .map(|(i, e, c, t, s, _)| format!("#{i}: E=0 {e}, diagram {c}, theta {t}, S1 {s}"))
        .collect();
    outcome(
        agree == n && n >= SAMPLED_MORPHISMS,
        format!(
            "{} graphs, {agree}/{n} morphisms agree on all four predicates ({rigid} rigid, {} not); \
             {lifted}/{rigid} rigid ones lift to isomorphisms, {reversed} of them reversing the base edge; \
             {s1_only_on_reversed}/{} disagreements are S1 alone on base-reversing isomorphisms {}",
            family.len(),
            n - rigid,
            disagreements.len(),
            sample.join(" ")
        ),
    )
}

fn criterion_4(morphisms: &[OrCycMorphism]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut ok = 0;
    let mut first_bad = None;
    for t in 0..DIAGRAM_TRIPLES {
        let m = &morphisms[rng.gen_range(0..morphisms.len())];
        let g = m.source();
        let mut u = random_full(g, &mut rng);
        let x: Vec<usize> = (0..g.num_edges()).filter(|_| rng.gen_bool(0.3)).collect();
        for &e in &x {
            u.0[e] = EdgeState::Unoriented;
        }
        let lhs = diagram_defect(m, &u).unwrap();
        let rhs = DivisorClass::of(m.target(), &(rigidity_divisor(m).rep() + lowering_divisor(m, &x).rep()));
        if lhs == rhs {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(t);
        }
    }
    outcome(
        ok == DIAGRAM_TRIPLES,
        format!("{ok}/{DIAGRAM_TRIPLES} triples satisfy defect = E + L_X{}", match first_bad {
            Some(t) => format!(", first failure at #{t}"),
            None => String::new(),
        }),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut ok = 0;
    let mut largest = 0;
    let mut bad = Vec::new();
    for _ in 0..PICARD_GRAPHS {
        let g = random_connected(&mut rng);
        let count = enumerate_picard(&g, 0, DEFAULT_MAX_CLASSES).unwrap().len() as i128;
        let det = kirchhoff(&g);
        largest = largest.max(det);
        if count == det {
            ok += 1;
        } else {
            bad.push(format!("{count} vs {det}"));
        }
    }
    outcome(
        ok == PICARD_GRAPHS,
        format!("{ok}/{PICARD_GRAPHS} graphs match the Kirchhoff determinant (largest {largest}) {}", bad.join(" ")),
    )
}

fn box_divisors(n: usize, lo: i64, hi: i64, degree: i64, f: &mut impl FnMut(&Divisor)) {
    fn go(d: &mut Vec<i64>, k: usize, lo: i64, hi: i64, left: i64, f: &mut impl FnMut(&Divisor)) {
        if k + 1 == d.len() {
            if (lo..=hi).contains(&left) {
                d[k] = left;
                f(&Divisor(d.clone()));
            }
            return;
        }
        for x in lo..=hi {
            d[k] = x;
            go(d, k + 1, lo, hi, left - x, f);
        }
    }
    let mut d = vec![0; n];
    go(&mut d, 0, lo, hi, degree, f);
}

fn criterion_6(family: &[Multigraph]) -> Outcome {
    let mut graphs = vec![fixtures::theta(), fixtures::j(), fixtures::k(), fixtures::g(), fixtures::h()];
    graphs.extend(family.iter().filter(|g| g.num_vertices() <= 4).take(30).cloned());
    let (mut checked, mut violations) = (0usize, 0usize);
    for g in &graphs {
        let gg = genus(g);
        for degree in gg..=gg + 2 {
            box_divisors(g.num_vertices(), -2, gg + 2, degree, &mut |d| {
                checked += 1;
                if !is_effective_class(g, d) {
                    violations += 1;
                }
            });
        }
    }
    let mut rng = StdRng::seed_from_u64(6);
    let mut pool = graphs.clone();
    pool.extend(family.iter().cloned());
    let (mut matched, mut verified, mut sourceless) = (0, 0, 0);
    for _ in 0..CERTIFICATE_CASES {
        let g = pool.choose(&mut rng).unwrap();
        let n = g.num_vertices();
        let degree = rng.gen_range(-2..genus(g));
        let mut d = Divisor((0..n).map(|_| rng.gen_range(-3..=3)).collect());
        let fix = rng.gen_range(0..n);
        d[fix] += degree - d.degree();
        let cert = effectiveness_certificate(g, &d).unwrap();
        matched += (cert.is_sourceless() == is_effective_class(g, &d)) as usize;
        verified += cert.verify(g, &d) as usize;
        sourceless += cert.is_sourceless() as usize;
    }
    outcome(
        violations == 0 && matched == CERTIFICATE_CASES && verified == CERTIFICATE_CASES,
        format!(
            "{checked} divisors of degree g..g+2 all effective ({violations} violations); \
             certificates: {matched}/{CERTIFICATE_CASES} branch matches, {verified} re-verify, {sourceless} sourceless"
        ),
    )
}

fn criterion_7(family: &[Multigraph]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let pool: Vec<&Multigraph> = family.iter().filter(|g| !find_arches(g).unwrap().is_empty()).collect();
    let (mut sequences, mut single_ok, mut single_total, mut parity_ok) = (0, 0, 0, 0);
    while sequences < MOVE_SEQUENCES {
        let g = pool.choose(&mut rng).unwrap().with_base(0);
        let mut current = g.clone();
        let mut count = vec![0usize; g.num_edges()];
        let mut composite: Option<OrCycMorphism> = None;
        for _ in 0..rng.gen_range(1..=5) {
            let arches: Vec<_> =
                find_arches(&current).unwrap().into_iter().filter(|a| !a.edges.contains(&0)).collect();
            let Some(arch) = arches.choose(&mut rng) else { break };
            let (next, m) = whitney_move(&current, arch).unwrap();
            single_total += 1;
            single_ok += (0..g.num_edges()).all(|e| (m.sign(e) == -1) == arch.edges.contains(&e)) as usize;
            for &e in &arch.edges {
                count[e] += 1;
            }
            composite = Some(match composite {
                None => m,
                Some(c) => compose(&m, &c).unwrap(),
            });
            current = next;
        }
        let Some(composite) = composite else { continue };
        sequences += 1;
        let ids: Vec<usize> = (0..g.num_edges()).collect();
        let direct = OrCycMorphism::new(&g, &current, &ids).unwrap();
        let parity = (0..g.num_edges()).all(|e| (direct.sign(e) == -1) == (count[e] % 2 == 1));
        parity_ok += (parity && direct.signs() == composite.signs()) as usize;
    }
    outcome(
        single_ok == single_total && parity_ok == sequences,
        format!(
            "{single_ok}/{single_total} moves reverse exactly their arch; \
             {parity_ok}/{sequences} sequences obey the odd-count parity law"
        ),
    )
}

fn criterion_8(family: &[Multigraph]) -> Outcome {
    let mut graphs = vec![fixtures::theta(), fixtures::j(), fixtures::k(), fixtures::g(), fixtures::h()];
    graphs.extend(family.iter().filter(|g| g.num_vertices() <= 4).cloned());
    let (mut translates, mut fixed) = (0usize, 0usize);
    for g in &graphs {
        let s = theta_set(g);
        for d in enumerate_picard(g, 0, DEFAULT_MAX_CLASSES).unwrap() {
            if d.is_zero() {
                continue;
            }
            translates += 1;
            let moved: BTreeSet<DivisorClass> = s.iter().map(|c| DivisorClass::of(g, &(c.rep() + d.rep()))).collect();
            fixed += (moved == s) as usize;
        }
    }
    outcome(
        fixed == 0,
        format!("{} graphs, {translates} nonzero translates, {fixed} leave the special set fixed", graphs.len()),
    )
}

fn criterion_9(morphisms: &[OrCycMorphism]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut cases: Vec<OrCycMorphism> = vec![fixtures::rigid_morphism(), fixtures::nonrigid_morphism()];
    let mut picks = morphisms.to_vec();
    picks.shuffle(&mut rng);
    cases.extend(picks.into_iter().take(SHUFFLED_MORPHISMS));
    let (mut stable, mut cycle_changes) = (0, 0);
    for m in &cases {
        let g = m.source();
        let mut same = true;
        for _ in 0..SHUFFLE_SEEDS {
            let mut rank: Vec<usize> = (0..g.num_edges()).collect();
            rank.shuffle(&mut rng);
            let again = OrCycMorphism::with_ranking(g, m.target(), m.edge_map(), Some(&rank)).unwrap();
            same &= again.signs() == m.signs();
            for u in 0..g.num_edges() {
                if u == g.base_edge() {
                    continue;
                }
                let a = cycle_through_edges_ranked(g, g.base_edge(), u, None).unwrap();
                let b = cycle_through_edges_ranked(g, g.base_edge(), u, Some(&rank)).unwrap();
                let (sa, sb): (BTreeSet<_>, BTreeSet<_>) = (a.edges.into_iter().collect(), b.edges.into_iter().collect());
                cycle_changes += (sa != sb) as usize;
            }
        }
        stable += same as usize;
    }
    outcome(
        stable == cases.len(),
        format!(
            "{stable}/{} morphisms give identical signs under {SHUFFLE_SEEDS} shuffles ({cycle_changes} covering cycles differed)",
            cases.len()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let family = small_family();
    let morphisms = sampled_morphisms(&family, SAMPLED_MORPHISMS, 33);
    let results: Vec<(usize, Outcome)> = std::thread::scope(|s| {
        let (f, m) = (&family, &morphisms);
        let handles = vec![
            (1, s.spawn(criterion_1)),
            (2, s.spawn(criterion_2)),
            (3, s.spawn(move || criterion_3(f, m))),
            (4, s.spawn(move || criterion_4(m))),
            (5, s.spawn(criterion_5)),
            (6, s.spawn(move || criterion_6(f))),
            (7, s.spawn(move || criterion_7(f))),
            (8, s.spawn(move || criterion_8(f))),
            (9, s.spawn(move || criterion_9(m))),
        ];
        handles
            .into_iter()
            .map(|(i, h)| {
                let o = h.join().unwrap_or_else(|_| outcome(false, "panicked"));
                (i, o)
            })
            .collect()
    });
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (i, o) in &results {
        writeln!(out, "criterion {i}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail).unwrap();
        failed += (!o.pass) as usize;
    }
    writeln!(
        out,
        "acceptance: {}/{} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    )
    .unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
