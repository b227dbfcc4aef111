//! Connected odd-valent graphs and the cochains `Φ(Γ)` obtained by placing
//! `τ̄₁` and trace tensors at the vertices and contracting along edges with
//! `ω`.

use std::collections::BTreeSet;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cohomology::{Cochain, HComplex};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::{next_permutation, BasisContext};

/// Vertex flavour: the alternating trivalent vertex fed by `τ̄₁`, or a
/// symmetric vertex of odd valence `m` fed by `trace(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    Alt3,
    Sym(u8),
}

impl VertexType {
    pub fn valence(&self) -> usize {
        match self {
            VertexType::Alt3 => 3,
            VertexType::Sym(m) => *m as usize,
        }
    }

    /// Contribution to the weight `n`, which is also the degree of the
    /// derivation placed at the vertex.
    pub fn weight(&self) -> usize {
        match self {
            VertexType::Alt3 => 1,
            VertexType::Sym(m) => *m as usize,
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexType::Alt3 => write!(f, "alt3"),
            VertexType::Sym(m) => write!(f, "sym{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub d: usize,
    pub n: usize,
}

/// Connected multigraph with odd valences; loops count twice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OddGraph {
    vertices: Vec<VertexType>,
    /// Unordered pairs stored as `(min, max)`, sorted.
    edges: Vec<(usize, usize)>,
}

impl OddGraph {
    pub fn new(vertices: Vec<VertexType>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let d = vertices.len();
        if d == 0 {
            return Err(Error::Invalid("graph has no vertices".into()));
        }
        for v in &vertices {
            if let VertexType::Sym(m) = v {
                if *m < 3 || m % 2 == 0 {
                    return Err(Error::Invalid(format!("symmetric vertex valence {m} is not odd >= 3")));
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let mut ends = vec![0usize; d];
        for &(a, b) in &edges {
            if b >= d {
                return Err(Error::Invalid(format!("edge ({a},{b}) references a missing vertex")));
            }
            ends[a] += 1;
            ends[b] += 1;
        }
        for (i, v) in vertices.iter().enumerate() {
            if ends[i] != v.valence() {
                return Err(Error::Invalid(format!(
                    "vertex {i} has {} edge ends but valence {}",
                    ends[i],
                    v.valence()
                )));
            }
        }
        let g = OddGraph { vertices, edges };
        if !g.is_connected() {
            return Err(Error::Invalid("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Two symmetric vertices of valence `m` joined by `m` edges.
    pub fn gamma(m: usize) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) || m > u8::MAX as usize {
            return Err(Error::Invalid(format!("Γ_m needs odd m >= 3, got {m}")));
        }
        Self::new(vec![VertexType::Sym(m as u8); 2], vec![(0, 1); m])
    }

    /// Two alternating trivalent vertices joined by three edges.
    pub fn theta_alt() -> Self {
        Self::new(vec![VertexType::Alt3; 2], vec![(0, 1); 3]).expect("theta graph")
    }

    pub fn vertices(&self) -> &[VertexType] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn is_connected(&self) -> bool {
        let d = self.vertices.len();
        let mut seen = vec![false; d];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn alt_count(&self) -> usize {
        self.vertices.iter().filter(|v| **v == VertexType::Alt3).count()
    }
}

/// `d` = number of vertices, `n` = total weight; checks
/// `n + 2·#alt3 = 2·#edges`.
pub fn bidegree(graph: &OddGraph) -> Result<Bidegree> {
    let d = graph.vertices.len();
    let n: usize = graph.vertices.iter().map(|v| v.weight()).sum();
    if n + 2 * graph.alt_count() != 2 * graph.edges.len() || !n.is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "edge count {} inconsistent with weight {n} and {} alternating vertices",
            graph.edges.len(),
            graph.alt_count()
        )));
    }
    Ok(Bidegree { d, n })
}

impl fmt::Display for OddGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let es: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "[{}] {{{}}}", vs.join(","), es.join(","))
    }
}

// ---------------------------------------------------------------------------
// Φ
// ---------------------------------------------------------------------------

type VertexTensor = FxHashMap<u64, Rational>;

fn factorial(m: usize) -> Rational {
    (1..=m as i64).fold(Rational::ONE, |acc, i| &acc * &Rational::from_int(i))
}

/// Slot layout: every edge takes the next free slot at each endpoint, the
/// lower vertex being the tail.
struct Layout {
    /// `(tail vertex, tail slot, head vertex, head slot)` per edge.
    edges: Vec<(usize, usize, usize, usize)>,
    valence: Vec<usize>,
}

fn layout(graph: &OddGraph) -> Layout {
    let mut next = vec![0usize; graph.vertices.len()];
    let mut edges = Vec::with_capacity(graph.edges.len());
    for &(a, b) in &graph.edges {
        let sa = next[a];
        next[a] += 1;
        let sb = next[b];
        next[b] += 1;
        edges.push((a, sa, b, sb));
    }
    Layout { edges, valence: graph.vertices.iter().map(|v| v.valence()).collect() }
}

/// Full contraction of the vertex tensors along the edges for one fixed slot
/// layout.
fn contract(ctx: &BasisContext, lay: &Layout, tensors: &[&VertexTensor]) -> Rational {
    let d = lay.valence.len();
    let mut slots: Vec<Vec<u8>> = lay.valence.iter().map(|&v| vec![0u8; v]).collect();
    // vertex becomes complete after the last edge touching it
    let mut last_edge = vec![0usize; d];
    for (e, &(a, _, b, _)) in lay.edges.iter().enumerate() {
        last_edge[a] = e;
        last_edge[b] = e;
    }
    fn code(n: usize, w: &[u8]) -> u64 {
        w.iter().fold(0u64, |acc, &l| acc * n as u64 + l as u64)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ctx: &BasisContext,
        lay: &Layout,
        tensors: &[&VertexTensor],
        last_edge: &[usize],
        slots: &mut [Vec<u8>],
        e: usize,
        acc: &Rational,
        total: &mut Rational,
    ) {
        if e == lay.edges.len() {
            *total += acc;
            return;
        }
        let n = ctx.n();
        let (a, sa, b, sb) = lay.edges[e];
        for x in 0..n as u8 {
            let y = ctx.partner(x);
            slots[a][sa] = x;
            slots[b][sb] = y;
            let mut f = acc * &Rational::from_int(ctx.omega(x, y));
            let ends: &[usize] = if a == b { &[a] } else { &[a, b] };
            for &v in ends {
                if last_edge[v] == e {
                    match tensors[v].get(&code(n, &slots[v])) {
                        Some(c) => f = &f * c,
                        None => {
                            f = Rational::ZERO;
                            break;
                        }
                    }
                }
            }
            if !f.is_zero() {
                rec(ctx, lay, tensors, last_edge, slots, e + 1, &f, total);
            }
        }
    }
    let mut total = Rational::ZERO;
    rec(ctx, lay, tensors, &last_edge, &mut slots, 0, &Rational::ONE, &mut total);
    total
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Assignments of tuple positions to vertices respecting degrees, with
/// their signs.
fn assignments(vertex_degrees: &[usize], tuple_degrees: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let d = vertex_degrees.len();
    let mut out = Vec::new();
    let mut cur = vec![usize::MAX; d];
    let mut used = vec![false; d];
    fn rec(
        v: usize,
        vd: &[usize],
        td: &[usize],
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, i64)>,
    ) {
        if v == vd.len() {
            out.push((cur.clone(), permutation_sign(cur)));
            return;
        }
        for p in 0..td.len() {
            if !used[p] && td[p] == vd[v] {
                used[p] = true;
                cur[v] = p;
                rec(v + 1, vd, td, cur, used, out);
                used[p] = false;
            }
        }
    }
    rec(0, vertex_degrees, tuple_degrees, &mut cur, &mut used, &mut out);
    out
}

/// `Φ(Γ)` as a cochain on the slice `bidegree(Γ)` of the complex of
/// `h_{g,1}`.
///
/// Slots are matched by one fixed layout and the result is multiplied by
/// `Π valence!`; since vertex tensors are symmetric or alternating this equals
/// the sum over all slot matchings, counted with sign at alternating
/// vertices.
pub fn phi_cochain(graph: &OddGraph, cx: &mut HComplex) -> Result<Cochain> {
    let bd = bidegree(graph)?;
    let g = cx.g();
    if graph.alt_count() > 0 && g < 3 {
        return Err(Error::Precondition(format!(
            "alternating vertices need g >= 3 for a nonzero U-projection, got g = {g}"
        )));
    }
    let ctx = cx.context();
    let slice = cx.slice(bd.d, bd.n)?;
    let lay = layout(graph);

    let vertex_degrees: Vec<usize> = graph.vertices.iter().map(|v| v.weight()).collect();
    let mut sorted_vd = vertex_degrees.clone();
    sorted_vd.sort_unstable();

    let mut tables: FxHashMap<(VertexType, u32), VertexTensor> = FxHashMap::default();
    let needed: BTreeSet<VertexType> = graph.vertices.iter().copied().collect();
    for vt in needed {
        match vt {
            VertexType::Alt3 => {
                for (i, e) in cx.tau1_bar_basis()?.iter().enumerate() {
                    let t = e.to_tensor();
                    tables.insert((vt, i as u32), t.terms().map(|(w, c)| (*w, c.clone())).collect());
                }
            }
            VertexType::Sym(m) => {
                for (i, s) in cx.trace_basis(m as usize)?.iter().enumerate() {
                    let t = s.to_tensor();
                    tables.insert((vt, i as u32), t.terms().map(|(w, c)| (*w, c.clone())).collect());
                }
            }
        }
    }
    let empty = VertexTensor::default();
    let norm: Rational = graph.vertices.iter().fold(Rational::ONE, |acc, v| &acc * &factorial(v.valence()));

    let mut values = Vec::new();
    for (idx, t) in slice.tuples().iter().enumerate() {
        let td: Vec<usize> = t.iter().map(|x| x.0 as usize).collect();
        let mut sorted_td = td.clone();
        sorted_td.sort_unstable();
        if sorted_td != sorted_vd {
            continue;
        }
        let mut total = Rational::ZERO;
        for (assign, sign) in assignments(&vertex_degrees, &td) {
            let tensors: Vec<&VertexTensor> = graph
                .vertices
                .iter()
                .zip(&assign)
                .map(|(vt, &p)| tables.get(&(*vt, t[p].1)).unwrap_or(&empty))
                .collect();
            if tensors.iter().any(|x| x.is_empty()) {
                continue;
            }
            let v = contract(&ctx, &lay, &tensors);
            if !v.is_zero() {
                total += &(&v * &Rational::from_int(sign));
            }
        }
        if !total.is_zero() {
            values.push((idx as u32, &total * &norm));
        }
    }
    Ok(Cochain { g, d: bd.d, n: bd.n, values })
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Upper bound on adjacency matrices examined by [`enumerate_graphs`].
pub const ENUMERATION_CAP: usize = 2_000_000;

fn vertex_multisets(d: usize, n_max: usize) -> Vec<Vec<VertexType>> {
    let mut types = vec![VertexType::Alt3];
    let mut m = 3;
    while m <= n_max && m <= u8::MAX as usize {
        types.push(VertexType::Sym(m as u8));
        m += 2;
    }
    let mut out = Vec::new();
    fn rec(types: &[VertexType], start: usize, d: usize, left: usize, cur: &mut Vec<VertexType>, out: &mut Vec<Vec<VertexType>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..types.len() {
            let w = types[i].weight();
            // remaining vertices weigh at least 1 each
            if w + (d - cur.len() - 1) <= left {
                cur.push(types[i]);
                rec(types, i, d, left - w, cur, out);
                cur.pop();
            }
        }
    }
    rec(&types, 0, d, n_max, &mut Vec::new(), &mut out);
    out
}

/// Upper-triangular adjacency code (loops on the diagonal).
fn adjacency_code(d: usize, adj: &[Vec<u8>], perm: &[usize]) -> Vec<u8> {
    let mut code = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in i..d {
            code.push(adj[perm[i]][perm[j]]);
        }
    }
    code
}

fn canonical_code(types: &[VertexType], adj: &[Vec<u8>]) -> Vec<u8> {
    let d = types.len();
    // blocks of equal type (types are sorted)
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..d {
        if i > 0 && types[i] == types[i - 1] {
            blocks.last_mut().unwrap().push(i);
        } else {
            blocks.push(vec![i]);
        }
    }
    let mut best: Option<Vec<u8>> = None;
    let mut perms: Vec<Vec<usize>> = blocks.clone();
    loop {
        let perm: Vec<usize> = perms.iter().flatten().copied().collect();
        let code = adjacency_code(d, adj, &perm);
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        // odometer over block permutations
        let mut advanced = false;
        for (p, b) in perms.iter_mut().zip(&blocks) {
            if next_usize_permutation(p) {
                advanced = true;
                break;
            }
            *p = b.clone();
        }
        if !advanced {
            break;
        }
    }
    best.unwrap()
}

fn next_usize_permutation(v: &mut [usize]) -> bool {
    let mut bytes: Vec<u8> = v.iter().map(|&x| x as u8).collect();
    if next_permutation(&mut bytes) {
        for (a, b) in v.iter_mut().zip(bytes) {
            *a = b as usize;
        }
        true
    } else {
        false
    }
}

/// All connected odd-valent graphs with `d ≤ d_max` and `n ≤ n_max`, one per
/// isomorphism class, ordered by `(d, n, vertex types, adjacency code)`.
pub fn enumerate_graphs(d_max: usize, n_max: usize) -> Result<Vec<OddGraph>> {
    if d_max > 10 {
        return Err(Error::ResourceCap { what: "graph enumeration vertices".into(), needed: d_max, cap: 10 });
    }
    let mut found: BTreeSet<(usize, usize, Vec<VertexType>, Vec<u8>)> = BTreeSet::new();
    let mut examined = 0usize;
    // valence sum must be even, and every valence is odd
    for d in (2..=d_max).step_by(2) {
        for types in vertex_multisets(d, n_max) {
            let n: usize = types.iter().map(|t| t.weight()).sum();
            let mut adj = vec![vec![0u8; d]; d];
            let mut residual: Vec<usize> = types.iter().map(|t| t.valence()).collect();
            let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
            #[allow(clippy::too_many_arguments)]
            fn rec(
                p: usize,
                pairs: &[(usize, usize)],
                adj: &mut Vec<Vec<u8>>,
                residual: &mut Vec<usize>,
                types: &[VertexType],
                n: usize,
                examined: &mut usize,
                found: &mut BTreeSet<(usize, usize, Vec<VertexType>, Vec<u8>)>,
            ) -> Result<()> {
                if p == pairs.len() {
                    *examined += 1;
                    if *examined > ENUMERATION_CAP {
                        return Err(Error::ResourceCap {
                            what: "graph enumeration".into(),
                            needed: *examined,
                            cap: ENUMERATION_CAP,
                        });
                    }
                    let d = types.len();
                    let mut edges = Vec::new();
                    for i in 0..d {
                        for j in i..d {
                            let m = if i == j { adj[i][i] / 2 } else { adj[i][j] };
                            edges.extend(std::iter::repeat_n((i, j), m as usize));
                        }
                    }
                    if OddGraph::new(types.to_vec(), edges).is_ok() {
                        let diag: Vec<Vec<u8>> = (0..d)
                            .map(|i| (0..d).map(|j| if i == j { adj[i][i] / 2 } else { adj[i][j] }).collect())
                            .collect();
                        found.insert((d, n, types.to_vec(), canonical_code(types, &diag)));
                    }
                    return Ok(());
                }
                let (i, j) = pairs[p];
                // row i closes at its last pair
                let closes_row = j == types.len() - 1;
                if i == j {
                    let mut l = 0;
                    while 2 * l <= residual[i] {
                        adj[i][i] = 2 * l as u8;
                        residual[i] -= 2 * l;
                        if !(closes_row && residual[i] != 0) {
                            rec(p + 1, pairs, adj, residual, types, n, examined, found)?;
                        }
                        residual[i] += 2 * l;
                        l += 1;
                    }
                    adj[i][i] = 0;
                } else {
                    let lo = if closes_row { residual[i] } else { 0 };
                    let hi = residual[i].min(residual[j]);
                    for m in lo..=hi {
                        adj[i][j] = m as u8;
                        adj[j][i] = m as u8;
                        residual[i] -= m;
                        residual[j] -= m;
                        rec(p + 1, pairs, adj, residual, types, n, examined, found)?;
                        residual[i] += m;
                        residual[j] += m;
                    }
                    adj[i][j] = 0;
                    adj[j][i] = 0;
                }
                Ok(())
            }
            rec(0, &pairs, &mut adj, &mut residual, &types, n, &mut examined, &mut found)?;
        }
    }
    found
        .into_iter()
        .map(|(d, _, types, code)| {
            let mut edges = Vec::new();
            let mut it = code.into_iter();
            for i in 0..d {
                for j in i..d {
                    let m = it.next().unwrap();
                    edges.extend(std::iter::repeat_n((i, j), m as usize));
                }
            }
            OddGraph::new(types, edges)
        })
        .collect()
}

/// Canonical representative of the isomorphism class of `graph`.
pub fn canonical_form(graph: &OddGraph) -> OddGraph {
    let d = graph.vertices.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| graph.vertices[i]);
    let mut pos = vec![0; d];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let types: Vec<VertexType> = order.iter().map(|&i| graph.vertices[i]).collect();
    let mut adj = vec![vec![0u8; d]; d];
    for &(a, b) in &graph.edges {
        let (x, y) = (pos[a], pos[b]);
        if x == y {
            adj[x][x] += 1;
        } else {
            adj[x][y] += 1;
            adj[y][x] += 1;
        }
    }
    let code = canonical_code(&types, &adj);
    let mut edges = Vec::new();
    let mut it = code.into_iter();
    for i in 0..d {
        for j in i..d {
            edges.extend(std::iter::repeat_n((i, j), it.next().unwrap() as usize));
        }
    }
    OddGraph::new(types, edges).expect("relabelled graph stays valid")
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valence: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
}

impl OddGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| match v {
                    VertexType::Alt3 => VertexJson { id, kind: "alt3".into(), valence: None },
                    VertexType::Sym(m) => VertexJson { id, kind: "sym".into(), valence: Some(*m as usize) },
                })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let mut pos: FxHashMap<usize, usize> = FxHashMap::default();
        let mut vertices = Vec::with_capacity(j.vertices.len());
        for (i, v) in j.vertices.iter().enumerate() {
            if pos.insert(v.id, i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex id {}", v.id)));
            }
            let t = match (v.kind.as_str(), v.valence) {
                ("alt3", None | Some(3)) => VertexType::Alt3,
                ("alt3", Some(m)) => return Err(Error::Invalid(format!("alt3 vertex with valence {m}"))),
                ("sym", Some(m)) if m <= u8::MAX as usize => VertexType::Sym(m as u8),
                ("sym", _) => return Err(Error::Invalid("sym vertex needs a valence".into())),
                (other, _) => return Err(Error::Invalid(format!("unknown vertex type {other:?}"))),
            };
            vertices.push(t);
        }
        let edges = j
            .edges
            .iter()
            .map(|[a, b]| match (pos.get(a), pos.get(b)) {
                (Some(&x), Some(&y)) => Ok((x, y)),
                _ => Err(Error::Invalid(format!("edge [{a},{b}] references an unknown vertex"))),
            })
            .collect::<Result<Vec<_>>>()?;
        OddGraph::new(vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bidegrees() {
        assert_eq!(bidegree(&OddGraph::gamma(3).unwrap()).unwrap(), Bidegree { d: 2, n: 6 });
        assert_eq!(bidegree(&OddGraph::gamma(5).unwrap()).unwrap(), Bidegree { d: 2, n: 10 });
        assert_eq!(bidegree(&OddGraph::theta_alt()).unwrap(), Bidegree { d: 2, n: 2 });
    }

    #[test]
    fn invalid_graphs() {
        assert!(OddGraph::new(vec![VertexType::Sym(3); 2], vec![(0, 1); 2]).is_err());
        assert!(OddGraph::new(vec![VertexType::Sym(4); 2], vec![(0, 1); 4]).is_err());
        let two_thetas = vec![(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)];
        assert!(OddGraph::new(vec![VertexType::Alt3; 4], two_thetas).is_err());
    }

    #[test]
    fn enumeration_small() {
        let gs = enumerate_graphs(2, 2).unwrap();
        let dumbbell = OddGraph::new(vec![VertexType::Alt3; 2], vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(gs, vec![OddGraph::theta_alt(), dumbbell]);
        let gs = enumerate_graphs(2, 6).unwrap();
        assert!(gs.contains(&OddGraph::gamma(3).unwrap()));
        for g in &gs {
            let b = bidegree(g).unwrap();
            assert!(b.d <= 2 && b.n <= 6);
            assert_eq!(canonical_form(g), *g);
        }
    }

    #[test]
    fn sign_of_permutations() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }

    #[test]
    fn json_round_trip() {
        let g = OddGraph::gamma(5).unwrap();
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert!(s.contains("\"type\":\"sym\",\"valence\":5"));
        let back = OddGraph::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
