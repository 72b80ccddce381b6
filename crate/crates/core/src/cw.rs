//! The CW complex `BLC_z`: cells, edge endpoints, components, Euler
//! characteristics, 2-cell attachments, low homology and collapses.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::ancestry::{count_table, for_each_ancestry, preancestries, Ancestry, CountTable, WordCtx};
use crate::clifford::Quat;
use crate::error::{Error, Result};
use crate::order::{u_pm_from, u_star, ClosureCache};
use crate::util::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tameness {
    Tame,
    Wild,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub ancestry: Ancestry,
    pub dim: usize,
    pub component: usize,
    /// Indices of the cells of `U*_ε`, when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<usize>>,
    /// Oriented edge cycle `(edge, ±1)` of a tame 2-cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<(usize, i8)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tameness: Option<Tameness>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Compute `U*_ε` for every cell of dimension `≥ 2` (needed for collapses and tameness).
    pub faces: bool,
    /// Cross-check every edge against the order module.
    pub check_edges: bool,
}

impl BuildOptions {
    pub fn full() -> Self {
        Self { faces: true, check_edges: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellComplex {
    pub word: String,
    pub z: String,
    #[serde(skip)]
    pub r: Quat,
    pub cells: Vec<Cell>,
    /// Endpoint cell indices `(A, B)` per edge cell index.
    #[serde(skip)]
    pub endpoints: HashMap<usize, (usize, usize)>,
    pub components: usize,
}

/// The two vertices of a dimension-1 cell, as sign masks: `sign ∘ ε` and its flip along the face boundary.
pub fn edge_endpoints(ctx: &WordCtx, a: &Ancestry) -> Result<(u64, u64)> {
    let flips = a
        .preancestry()
        .face_boundary(ctx)
        .ok_or_else(|| Error::InvalidAncestry(format!("{a} is not of dimension 1")))?;
    let m = a.sign_mask();
    Ok((m, flips.iter().fold(m, |m, &k| m ^ 1 << (k - 1))))
}

/// All ancestries with `P(ε) = acute σ · r`, sorted by dimension then sign pattern.
pub fn cells_of(ctx: &WordCtx, r: Quat) -> Vec<Ancestry> {
    let mut out = Vec::new();
    for pre in preancestries(ctx) {
        for_each_ancestry(ctx, &pre, |e, rr| {
            if rr == r {
                out.push(Ancestry::new(ctx, e.to_vec()).expect("enumerated"));
            }
        });
    }
    out.sort_by(|a, b| (a.dim(), a.eps()).cmp(&(b.dim(), b.eps())));
    out
}

pub fn build_complex(ctx: &WordCtx, r: Quat, opts: BuildOptions) -> Result<CellComplex> {
    let ancs = cells_of(ctx, r);
    let cache = ClosureCache::new();
    let index: HashMap<Ancestry, usize> = ancs.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let vertex: HashMap<u64, usize> =
        ancs.iter().enumerate().filter(|(_, a)| a.dim() == 0).map(|(i, a)| (a.sign_mask(), i)).collect();
    let mut uf = UnionFind::new(ancs.len());
    let mut endpoints = HashMap::new();
    let mut faces: Vec<Option<Vec<usize>>> = vec![None; ancs.len()];
    for (i, a) in ancs.iter().enumerate() {
        match a.dim() {
            0 => faces[i] = Some(Vec::new()),
            1 => {
                let (ma, mb) = edge_endpoints(ctx, a)?;
                let lookup = |m: u64| {
                    vertex.get(&m).copied().ok_or_else(|| Error::Inconsistent(format!("endpoint of {a} has a different P")))
                };
                let (va, vb) = (lookup(ma)?, lookup(mb)?);
                if opts.check_edges {
                    let mut star: Vec<usize> = u_star(ctx, &cache, a).iter().map(|b| index[b]).collect();
                    star.sort_unstable();
                    let mut rule = vec![va, vb];
                    rule.sort_unstable();
                    if star != rule {
                        return Err(Error::Inconsistent(format!("edge rule and order disagree on {a}")));
                    }
                }
                uf.union(i, va);
                uf.union(i, vb);
                endpoints.insert(i, (va, vb));
                faces[i] = Some(vec![va, vb]);
            }
            _ => {
                let v = *vertex
                    .get(&a.sign_mask())
                    .ok_or_else(|| Error::Inconsistent(format!("sign vector of {a} has a different P")))?;
                uf.union(i, v);
                if opts.faces {
                    let mut f: Vec<usize> = u_star(ctx, &cache, a)
                        .iter()
                        .map(|b| index.get(b).copied().ok_or_else(|| Error::Inconsistent(format!("face of {a} outside BL_z"))))
                        .collect::<Result<_>>()?;
                    f.sort_unstable();
                    faces[i] = Some(f);
                }
            }
        }
    }
    let (labels, components) = uf.labels();
    let mut cells: Vec<Cell> = ancs
        .into_iter()
        .zip(faces)
        .zip(&labels)
        .map(|((a, f), &c)| Cell { dim: a.dim(), ancestry: a, component: c, faces: f, boundary: None, tameness: None })
        .collect();
    for c in &cells {
        if let Some(f) = &c.faces {
            if f.iter().any(|&j| cells[j].component != c.component) {
                return Err(Error::Inconsistent(format!("{} spans two components", c.ancestry)));
            }
        }
    }
    let mut cx = CellComplex {
        word: ctx.word().to_string(),
        z: ctx.z(r).to_string(),
        r,
        cells: Vec::new(),
        endpoints,
        components,
    };
    if opts.faces {
        for i in 0..cells.len() {
            let d = cells[i].dim;
            if d == 0 {
                continue;
            }
            let (t, b) = if d == 1 {
                (Tameness::Tame, None)
            } else if d == 2 {
                two_cell(ctx, &cells, &cx.endpoints, i)
            } else {
                (higher_cell_evidence(&cells, &cx.endpoints, i), None)
            };
            cells[i].tameness = Some(t);
            cells[i].boundary = b;
        }
    } else {
        for c in cells.iter_mut().filter(|c| c.dim == 1) {
            c.tameness = Some(Tameness::Tame);
        }
    }
    cx.cells = cells;
    Ok(cx)
}

/// Tameness and oriented boundary of the 2-cell `i`.
fn two_cell(
    ctx: &WordCtx,
    cells: &[Cell],
    endpoints: &HashMap<usize, (usize, usize)>,
    i: usize,
) -> (Tameness, Option<Vec<(usize, i8)>>) {
    let faces = cells[i].faces.as_ref().expect("faces computed");
    if faces.iter().any(|&j| cells[j].dim >= 2) {
        return (Tameness::Undetermined, None);
    }
    let verts: Vec<usize> = faces.iter().copied().filter(|&j| cells[j].dim == 0).collect();
    let edges: Vec<usize> = faces.iter().copied().filter(|&j| cells[j].dim == 1).collect();
    let mut inc: HashMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
    for &e in &edges {
        let (a, b) = endpoints[&e];
        match (inc.contains_key(&a), inc.contains_key(&b)) {
            (true, true) => {
                inc.get_mut(&a).unwrap().push(e);
                inc.get_mut(&b).unwrap().push(e);
            }
            _ => return (Tameness::Wild, None),
        }
    }
    if verts.len() != edges.len() || verts.len() < 2 || inc.values().any(|l| l.len() != 2) {
        return (Tameness::Wild, None);
    }
    let star: Vec<Ancestry> = faces.iter().map(|&j| cells[j].ancestry.clone()).collect();
    let Ok((um, up)) = u_pm_from(ctx, &cells[i].ancestry, &star) else {
        return (Tameness::Undetermined, None);
    };
    let pos: HashMap<&Ancestry, usize> = faces.iter().map(|&j| (&cells[j].ancestry, j)).collect();
    let Some(&start) = um.first().and_then(|a| pos.get(a)) else {
        return (Tameness::Wild, None);
    };
    let (a, b) = endpoints[&start];
    let label = |v: usize| cells[v].ancestry.to_string();
    let mut at = if label(a) <= label(b) { a } else { b };
    let mut e = start;
    let mut cycle = Vec::with_capacity(edges.len());
    loop {
        let (ea, eb) = endpoints[&e];
        let (sign, next) = if at == ea { (1, eb) } else { (-1, ea) };
        cycle.push((e, sign));
        at = next;
        let l = &inc[&at];
        e = if l[0] == e { l[1] } else { l[0] };
        if e == start {
            break;
        }
        if cycle.len() > edges.len() {
            return (Tameness::Wild, None);
        }
    }
    if cycle.len() != edges.len() {
        return (Tameness::Wild, None);
    }
    let pairing = |set: &[Ancestry]| -> i64 {
        let ids: Vec<usize> = set.iter().filter_map(|a| pos.get(a).copied()).collect();
        cycle.iter().filter(|(e, _)| ids.contains(e)).map(|&(_, s)| s as i64).sum()
    };
    if pairing(&um).abs() == 1 && pairing(&up).abs() == 1 {
        (Tameness::Tame, Some(cycle))
    } else {
        (Tameness::Wild, None)
    }
}

/// Necessary conditions for a `d ≥ 3` cell: `U*_ε` connected with `χ = χ(S^{d−1})`.
fn higher_cell_evidence(cells: &[Cell], endpoints: &HashMap<usize, (usize, usize)>, i: usize) -> Tameness {
    let d = cells[i].dim;
    let faces = cells[i].faces.as_ref().expect("faces computed");
    let chi: i64 = faces.iter().map(|&j| if cells[j].dim.is_multiple_of(2) { 1 } else { -1 }).sum();
    let local: HashMap<usize, usize> = faces.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut uf = UnionFind::new(faces.len());
    for &j in faces {
        if cells[j].dim == 1 {
            let (a, b) = endpoints[&j];
            match (local.get(&a), local.get(&b)) {
                (Some(&x), Some(&y)) => {
                    uf.union(local[&j], x);
                    uf.union(local[&j], y);
                }
                _ => return Tameness::Wild,
            }
        }
    }
    let vertices: Vec<usize> = faces.iter().filter(|&&j| cells[j].dim == 0).map(|j| local[j]).collect();
    let connected = vertices.windows(2).all(|w| uf.find(w[0]) == uf.find(w[1]));
    let sphere = if (d - 1).is_multiple_of(2) { 2 } else { 0 };
    if chi == sphere && connected {
        Tameness::Undetermined
    } else {
        Tameness::Wild
    }
}

impl CellComplex {
    pub fn cells_by_dim(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|c| c.dim).max().unwrap_or(0);
        let mut v = vec![0; top + 1];
        for c in &self.cells {
            v[c.dim] += 1;
        }
        v
    }

    pub fn euler(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn component_euler(&self) -> Vec<i64> {
        let mut v = vec![0; self.components];
        for c in &self.cells {
            v[c.component] += if c.dim % 2 == 0 { 1 } else { -1 };
        }
        v
    }

    pub fn component_cells(&self, comp: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].component == comp).collect()
    }

    /// Components whose only cell is a thin vertex.
    pub fn thin_components(&self, ctx: &WordCtx) -> usize {
        let mut size = vec![0; self.components];
        for c in &self.cells {
            size[c.component] += 1;
        }
        self.cells.iter().filter(|c| size[c.component] == 1 && c.ancestry.is_thin(ctx)).count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph blc {\n  node [shape=point];\n");
        let _ = writeln!(s, "  label=\"{} at z = {}\";", self.word, self.z);
        for (i, c) in self.cells.iter().enumerate().filter(|(_, c)| c.dim == 0) {
            let _ = writeln!(s, "  v{i} [xlabel=\"{}\"];", c.ancestry);
        }
        for (i, c) in self.cells.iter().enumerate().filter(|(_, c)| c.dim == 1) {
            let (a, b) = self.endpoints[&i];
            let _ = writeln!(s, "  v{a} -- v{b} [label=\"{}\"];", c.ancestry);
        }
        for (i, c) in self.cells.iter().enumerate().filter(|(_, c)| c.dim >= 2) {
            let _ = writeln!(s, "  c{i} [shape=box, label=\"{} (dim {})\"];", c.ancestry, c.dim);
            if let Some(b) = &c.boundary {
                for (e, _) in b {
                    let (a, _) = self.endpoints[e];
                    let _ = writeln!(s, "  c{i} -- v{a} [style=dotted];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// `χ(BL_z) = Σ (−1)^{dim ε₀} N_{ε₀}(z)`.
pub fn euler_by_formula(table: &CountTable, r: Quat) -> i64 {
    table.euler(r)
}

// ---------------------------------------------------------------------------
// Homology
// ---------------------------------------------------------------------------

/// Nonzero diagonal of the Smith normal form of an integer matrix.
pub fn smith_diagonal(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                let q = m[r][t] / m[t][t];
                if q != 0 {
                    for c in t..cols {
                        m[r][c] -= q * m[t][c];
                    }
                }
                if m[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                let q = m[t][c] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[c] -= q * row[t];
                    }
                }
                if m[t][c] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                let bad = (t + 1..rows).flat_map(|r| (t + 1..cols).map(move |c| (r, c))).find(|&(r, c)| m[r][c] % m[t][t] != 0);
                match bad {
                    Some((r, _)) => {
                        for c in t..cols {
                            m[t][c] += m[r][c];
                        }
                        continue;
                    }
                    None => break,
                }
            }
            let (pr, pc) = (t..rows)
                .flat_map(|r| (t..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| m[r][c] != 0 && (r == t || c == t))
                .min_by_key(|&(r, c)| m[r][c].abs())
                .expect("nonzero pivot");
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComponentHomology {
    pub component: usize,
    pub h0_rank: usize,
    pub h1_rank: usize,
    pub h1_torsion: Vec<i64>,
    /// False when some 2-cell of the component has no known attachment.
    pub exact: bool,
}

impl ComponentHomology {
    pub fn h1_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        match self.h1_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.h1_torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `H₀` and `H₁` per component; requires a complex built with `faces`.
pub fn homology_low(cx: &CellComplex) -> Vec<ComponentHomology> {
    (0..cx.components)
        .map(|comp| {
            let ids = cx.component_cells(comp);
            let vs: Vec<usize> = ids.iter().copied().filter(|&i| cx.cells[i].dim == 0).collect();
            let es: Vec<usize> = ids.iter().copied().filter(|&i| cx.cells[i].dim == 1).collect();
            let fs: Vec<usize> = ids.iter().copied().filter(|&i| cx.cells[i].dim == 2).collect();
            let vpos: HashMap<usize, usize> = vs.iter().enumerate().map(|(k, &v)| (v, k)).collect();
            let epos: HashMap<usize, usize> = es.iter().enumerate().map(|(k, &e)| (e, k)).collect();
            let mut d1 = vec![vec![0i64; es.len()]; vs.len()];
            for (k, e) in es.iter().enumerate() {
                let (a, b) = cx.endpoints[e];
                d1[vpos[&a]][k] -= 1;
                d1[vpos[&b]][k] += 1;
            }
            let mut exact = true;
            let mut d2 = vec![Vec::new(); es.len()];
            for f in &fs {
                match &cx.cells[*f].boundary {
                    Some(b) => {
                        let mut col = vec![0i64; es.len()];
                        for &(e, s) in b {
                            col[epos[&e]] += s as i64;
                        }
                        for (row, v) in d2.iter_mut().zip(col) {
                            row.push(v);
                        }
                    }
                    None => exact = false,
                }
            }
            let rank1 = smith_diagonal(d1).len();
            let s2 = smith_diagonal(d2);
            ComponentHomology {
                component: comp,
                h0_rank: 1,
                h1_rank: es.len() - rank1 - s2.len(),
                h1_torsion: s2.into_iter().filter(|&x| x > 1).collect(),
                exact,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Collapses
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub component: usize,
    pub euler: i64,
    pub cells: usize,
    /// Free pairs `(face, coface)` removed, in order.
    pub steps: Vec<(String, String)>,
    pub remaining: usize,
    pub collapsed: bool,
}

/// Greedy elementary collapses per component; requires a complex built with `faces`.
pub fn collapse_evidence(cx: &CellComplex) -> Vec<CollapseReport> {
    let n = cx.cells.len();
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in cx.cells.iter().enumerate() {
        for &f in c.faces.as_deref().unwrap_or(&[]) {
            cofaces[f].push(i);
        }
    }
    let mut alive = vec![true; n];
    let mut live_co: Vec<usize> = cofaces.iter().map(Vec::len).collect();
    let euler = cx.component_euler();
    let mut reports: Vec<CollapseReport> = (0..cx.components)
        .map(|c| CollapseReport { component: c, euler: euler[c], cells: 0, steps: Vec::new(), remaining: 0, collapsed: false })
        .collect();
    for c in &cx.cells {
        reports[c.component].cells += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(f) = queue.pop_front() {
        if !alive[f] || live_co[f] != 1 {
            continue;
        }
        let c = *cofaces[f].iter().find(|&&c| alive[c]).expect("one live coface");
        if cx.cells[c].dim != cx.cells[f].dim + 1 || live_co[c] != 0 {
            continue;
        }
        alive[f] = false;
        alive[c] = false;
        reports[cx.cells[f].component]
            .steps
            .push((cx.cells[f].ancestry.to_string(), cx.cells[c].ancestry.to_string()));
        for dead in [f, c] {
            for &g in cx.cells[dead].faces.as_deref().unwrap_or(&[]) {
                live_co[g] -= 1;
                if alive[g] {
                    queue.push_back(g);
                }
            }
        }
    }
    for (i, c) in cx.cells.iter().enumerate() {
        if alive[i] {
            reports[c.component].remaining += 1;
        }
    }
    for r in &mut reports {
        r.collapsed = r.remaining == 1;
    }
    reports
}

// ---------------------------------------------------------------------------
// Census over all z
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub z: String,
    pub re: String,
    pub cells: Vec<u64>,
    pub euler: i64,
    pub components: usize,
    pub thin: usize,
    pub thick: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub word: String,
    pub rows: Vec<CensusRow>,
    pub components: usize,
    pub thin: usize,
    pub thick: usize,
}

impl Census {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("z,re,cells,euler,components,thin,thick\n");
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "{},{},{},{},{},{},{}", r.z, r.re, cells.join(";"), r.euler, r.components, r.thin, r.thick);
        }
        s
    }
}

/// Components of every `BL_z`, using only vertices and edges.
pub fn component_census(ctx: &WordCtx) -> Result<Census> {
    let ell = ctx.len();
    if ell > 24 {
        return Err(Error::TooLarge { n: ctx.n(), max: 6 });
    }
    let table = count_table(ctx);
    let mut r_of = vec![Quat::ONE; 1 << ell];
    fn signs(ctx: &WordCtx, k: usize, mask: usize, q: Quat, out: &mut [Quat]) {
        if k == ctx.len() {
            out[mask] = q.inv();
            return;
        }
        let i = ctx.letter(k + 1);
        signs(ctx, k + 1, mask, q.conj_acute(i), out);
        signs(ctx, k + 1, mask | 1 << k, q.acute_sandwich(i), out);
    }
    signs(ctx, 0, 0, Quat::ONE, &mut r_of);
    let mut uf = UnionFind::new(1 << ell);
    let mut degree = vec![0u32; 1 << ell];
    for pre in preancestries(ctx).iter().filter(|p| p.dim() == 1) {
        let flip = pre.face_boundary(ctx).unwrap().iter().fold(0usize, |m, &k| m | 1 << (k - 1));
        let marked = pre.marked();
        let k1 = marked[0] - 1;
        let free: Vec<usize> = pre.unmarked().iter().map(|k| k - 1).collect();
        for bits in 0usize..(1 << free.len()) {
            let a = free.iter().enumerate().fold(1usize << k1, |m, (j, &k)| if bits >> j & 1 == 1 { m | 1 << k } else { m });
            let b = a ^ flip;
            debug_assert_eq!(r_of[a], r_of[b]);
            uf.union(a, b);
            degree[a] += 1;
            degree[b] += 1;
        }
    }
    let mut roots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for m in 0..1usize << ell {
        roots.entry(r_of[m].index()).or_default().push(uf.find(m));
    }
    let thin_masks: std::collections::HashSet<usize> = if ctx.blocks() == 0 {
        crate::ancestry::thin_ancestries(ctx)?.iter().map(|a| a.sign_mask() as usize).collect()
    } else {
        Default::default()
    };
    let mut rows = Vec::new();
    let (mut tc, mut tt, mut tk) = (0, 0, 0);
    for r in ctx.coset() {
        let mut comps: Vec<usize> = roots.get(&r.index()).cloned().unwrap_or_default();
        comps.sort_unstable();
        comps.dedup();
        let thin = (0..1usize << ell).filter(|&m| r_of[m] == r && degree[m] == 0 && thin_masks.contains(&m)).count();
        let components = comps.len();
        tc += components;
        tt += thin;
        tk += components - thin;
        rows.push(CensusRow {
            z: ctx.z(r).to_string(),
            re: ctx.re(r).to_string(),
            cells: table.cells_by_dim(r),
            euler: table.euler(r),
            components,
            thin,
            thick: components - thin,
        });
    }
    Ok(Census { word: ctx.word().to_string(), rows, components: tc, thin: tt, thick: tk })
}
