//! Bounded search for a signed bijection between the spinor and Cramer coordinates.
//!
//! Both quadric families consist of 10 four-term quadrics with 40 distinct
//! monomials, each occurring in exactly one quadric. A signed bijection
//! carries one span onto the other only if it maps monomials of the first
//! family onto monomials of the second, quadric by quadric. The search assigns
//! spinor coordinates one at a time and keeps three partial bijections
//! consistent: on variables, on quadrics, and on torus-weight classes of the
//! 136 quadratic monomials. Signs of a complete candidate are then a linear
//! system over GF(2).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{cramer_242_quadrics, ogr_quadrics, verify_identification, CoordMap};
use crate::error::Result;
use crate::poly::{MultiPoly, Var, VarTable};
use crate::weights::coordinate_weight;

const N: usize = 16;

/// Per-family data: which quadric each monomial `v_i v_j` belongs to (with
/// the sign of its coefficient) and its torus-weight class.
struct Family {
    vars: Vec<Var>,
    quadric: Vec<Vec<Option<(usize, bool)>>>,
    weight_class: Vec<Vec<usize>>,
}

impl Family {
    fn new(vars: Vec<Var>, qs: &[MultiPoly], weight: impl Fn(Var) -> Vec<i64>) -> Self {
        let mut quadric = vec![vec![None; N]; N];
        for (k, q) in qs.iter().enumerate() {
            for (e, c) in q.terms() {
                let idx: Vec<usize> =
                    e.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d as usize)).collect();
                let negative = *c < num_rational::BigRational::from_integer(0.into());
                quadric[idx[0]][idx[1]] = Some((k, negative));
                quadric[idx[1]][idx[0]] = Some((k, negative));
            }
        }
        let weights: Vec<Vec<i64>> = vars.iter().map(|&v| weight(v)).collect();
        let mut classes: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let mut weight_class = vec![vec![0; N]; N];
        for i in 0..N {
            for j in i..N {
                let w: Vec<i64> = weights[i].iter().zip(&weights[j]).map(|(a, b)| a + b).collect();
                let next = classes.len();
                let id = *classes.entry(w).or_insert(next);
                weight_class[i][j] = id;
                weight_class[j][i] = id;
            }
        }
        Family { vars, quadric, weight_class }
    }

    fn weight_class_count(&self) -> usize {
        self.weight_class.iter().flatten().max().map_or(0, |m| m + 1)
    }
}

/// Doubled spinor weights: `±1` per index according to membership of the
/// even subset labelling the coordinate.
fn spinor_weight(v: Var) -> Vec<i64> {
    let member: Vec<bool> = match v {
        Var::SpinorScalar => vec![false; 5],
        Var::SpinorSkew(i, j) => (1..=5).map(|k| k == i || k == j).collect(),
        Var::SpinorVector(i) => (1..=5).map(|k| k != i).collect(),
        _ => unreachable!("spinor table"),
    };
    member.into_iter().map(|m| if m { 1 } else { -1 }).collect()
}

/// Cramer weights reduced modulo the weight of ω, which the ω-less equations
/// only respect up to that character. ω has coefficient 1 at `b_1`, so
/// subtracting `w[b_1]·χ_ω` gives a canonical representative.
fn cramer_weight(v: Var) -> Vec<i64> {
    let w = coordinate_weight(2, 2, v).expect("Cr(2,4,2) coordinate");
    let chi = coordinate_weight(2, 2, Var::Omega).expect("ω weight");
    let (w, chi) = (w.exponents(), chi.exponents());
    let k = w[2];
    w.iter().zip(chi).map(|(a, c)| a - k * c).collect()
}

#[derive(Clone)]
struct State {
    phi: [Option<usize>; N],
    used: [bool; N],
    q_fwd: Vec<Option<usize>>,
    q_bwd: Vec<Option<usize>>,
    w_fwd: Vec<Option<usize>>,
    w_bwd: Vec<Option<usize>>,
}

fn link(fwd: &mut [Option<usize>], bwd: &mut [Option<usize>], a: usize, b: usize) -> bool {
    match (fwd[a], bwd[b]) {
        (None, None) => {
            fwd[a] = Some(b);
            bwd[b] = Some(a);
            true
        }
        (Some(x), Some(y)) => x == b && y == a,
        _ => false,
    }
}

struct Searcher<'a> {
    src: &'a Family,
    dst: &'a Family,
    order: Vec<usize>,
}

impl Searcher<'_> {
    fn assign(&self, state: &State, v: usize, c: usize) -> Option<State> {
        if state.used[c] {
            return None;
        }
        let mut st = state.clone();
        st.phi[v] = Some(c);
        st.used[c] = true;
        for u in 0..N {
            let Some(cu) = st.phi[u] else { continue };
            let (a, b) = (self.src.quadric[u][v], self.dst.quadric[cu][c]);
            match (a, b) {
                (None, None) => {}
                (Some((qa, _)), Some((qb, _))) => {
                    if !link(&mut st.q_fwd, &mut st.q_bwd, qa, qb) {
                        return None;
                    }
                }
                _ => return None,
            }
            let (wa, wb) = (self.src.weight_class[u][v], self.dst.weight_class[cu][c]);
            if !link(&mut st.w_fwd, &mut st.w_bwd, wa, wb) {
                return None;
            }
        }
        Some(st)
    }

    /// Depth-first search below `state`; `on_complete` returns true to stop.
    fn run(
        &self,
        state: &State,
        depth: usize,
        candidates: &[Vec<usize>],
        nodes: &mut u64,
        budget: u64,
        on_complete: &mut dyn FnMut(&[usize; N]) -> bool,
    ) -> bool {
        if depth == N {
            let phi = state.phi.map(|x| x.unwrap());
            return on_complete(&phi);
        }
        let v = self.order[depth];
        for &c in &candidates[depth] {
            if *nodes >= budget {
                return true;
            }
            *nodes += 1;
            if let Some(next) = self.assign(state, v, c) {
                if self.run(&next, depth + 1, candidates, nodes, budget, on_complete) {
                    return true;
                }
            }
        }
        false
    }
}

/// Signs `σ_v` and quadric scalars `τ_q` with
/// `coeff(e)·σ_u σ_v = τ_q · coeff'(φ(e))` for every monomial `e = uv`,
/// solved over GF(2) (bit 1 = negative).
fn solve_signs(src: &Family, dst: &Family, phi: &[usize; N], q_fwd: &[Option<usize>]) -> Option<[i64; N]> {
    const UNKNOWNS: usize = N + 10;
    let mut rows: Vec<(u32, bool)> = Vec::new();
    for u in 0..N {
        for v in u..N {
            let Some((q, neg)) = src.quadric[u][v] else { continue };
            let (_, neg2) = dst.quadric[phi[u]][phi[v]]?;
            q_fwd[q]?;
            let mut bits = 1u32 << (N + q);
            bits ^= 1 << u;
            bits ^= 1 << v;
            rows.push((bits, neg ^ neg2));
        }
    }
    let mut pivots: Vec<(usize, u32, bool)> = Vec::new();
    for (mut bits, mut rhs) in rows {
        for &(col, pb, pr) in &pivots {
            if bits & (1 << col) != 0 {
                bits ^= pb;
                rhs ^= pr;
            }
        }
        if bits == 0 {
            if rhs {
                return None;
            }
            continue;
        }
        let col = bits.trailing_zeros() as usize;
        for p in pivots.iter_mut() {
            if p.1 & (1 << col) != 0 {
                p.1 ^= bits;
                p.2 ^= rhs;
            }
        }
        pivots.push((col, bits, rhs));
    }
    // free unknowns set to 0 (positive)
    let mut solution = [false; UNKNOWNS];
    for &(col, _, rhs) in &pivots {
        solution[col] = rhs;
    }
    let mut signs = [1i64; N];
    for (k, s) in signs.iter_mut().enumerate() {
        if solution[k] {
            *s = -1;
        }
    }
    Some(signs)
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Verified maps in the order found.
    pub maps: Vec<CoordMap>,
    pub nodes: u64,
    pub log: String,
}

impl SearchOutcome {
    pub fn first(&self) -> Option<&CoordMap> {
        self.maps.first()
    }
}

/// Spinor coordinates in breadth-first order of the monomial graph from `x`,
/// so every new coordinate meets an already placed one.
fn assignment_order(src: &Family) -> Vec<usize> {
    let mut order = vec![0];
    let mut seen = [false; N];
    seen[0] = true;
    let mut k = 0;
    while k < order.len() {
        let u = order[k];
        for (v, done) in seen.iter_mut().enumerate() {
            if !*done && src.quadric[u][v].is_some() {
                *done = true;
                order.push(v);
            }
        }
        k += 1;
    }
    for (v, s) in seen.iter().enumerate() {
        if !s {
            order.push(v);
        }
    }
    order
}

/// Searches for signed bijections, stopping at the first verified map or when
/// `budget` variable assignments have been tried.
pub fn search_identification(seed: u64, budget: u64) -> Result<SearchOutcome> {
    search_identification_all(seed, budget, 1)
}

/// Like [`search_identification`] but collects up to `limit` verified maps.
/// The first level of the search tree is split across threads; each branch
/// gets an equal share of the budget and results are merged in branch order.
pub fn search_identification_all(seed: u64, budget: u64, limit: usize) -> Result<SearchOutcome> {
    let spinor = VarTable::spinor();
    let cramer = VarTable::cramer(2, 2, false, false);
    let src = Family::new(spinor.vars().to_vec(), &ogr_quadrics(), spinor_weight);
    let dst = Family::new(cramer.vars().to_vec(), &cramer_242_quadrics(), cramer_weight);
    let mut log = String::new();
    writeln!(log, "seed {seed}").unwrap();
    writeln!(log, "budget {budget}").unwrap();
    writeln!(
        log,
        "weight classes of quadratic monomials: spinor {}, cramer {}",
        src.weight_class_count(),
        dst.weight_class_count()
    )
    .unwrap();

    let order = assignment_order(&src);
    let names: Vec<String> = order.iter().map(|&v| src.vars[v].to_string()).collect();
    writeln!(log, "assignment order {}", names.join(" ")).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<Vec<usize>> = (0..N)
        .map(|_| {
            let mut c: Vec<usize> = (0..N).collect();
            c.shuffle(&mut rng);
            c
        })
        .collect();

    let searcher = Searcher { src: &src, dst: &dst, order: order.clone() };
    let root = State {
        phi: [None; N],
        used: [false; N],
        q_fwd: vec![None; 10],
        q_bwd: vec![None; 10],
        w_fwd: vec![None; N * N],
        w_bwd: vec![None; N * N],
    };
    let share = budget.div_ceil(N as u64);

    struct Branch {
        nodes: u64,
        complete: u64,
        unsigned: u64,
        rejected: u64,
        maps: Vec<CoordMap>,
    }

    let branches: Vec<Branch> = candidates[0]
        .par_iter()
        .map(|&c| {
            let mut b = Branch { nodes: 0, complete: 0, unsigned: 0, rejected: 0, maps: Vec::new() };
            if share == 0 {
                return b;
            }
            b.nodes = 1;
            let Some(st) = searcher.assign(&root, order[0], c) else {
                return b;
            };
            let mut nodes = 1;
            let mut complete = 0;
            let mut unsigned = 0;
            let mut rejected = 0;
            let mut maps = Vec::new();
            let mut on_complete = |phi: &[usize; N]| -> bool {
                complete += 1;
                // the quadric bijection is fixed by φ; rebuild it for the sign system
                let mut q_fwd = vec![None; 10];
                for u in 0..N {
                    for v in u..N {
                        if let (Some((qa, _)), Some((qb, _))) = (src.quadric[u][v], dst.quadric[phi[u]][phi[v]]) {
                            q_fwd[qa] = Some(qb);
                        }
                    }
                }
                let Some(signs) = solve_signs(&src, &dst, phi, &q_fwd) else {
                    unsigned += 1;
                    return false;
                };
                let entries = (0..N).map(|u| (src.vars[u], dst.vars[phi[u]], signs[u])).collect();
                let map = CoordMap::new(entries).expect("search builds bijections");
                if verify_identification(&map).unwrap_or(false) {
                    maps.push(map);
                    maps.len() >= limit
                } else {
                    rejected += 1;
                    false
                }
            };
            searcher.run(&st, 1, &candidates, &mut nodes, share, &mut on_complete);
            b.nodes = nodes;
            b.complete = complete;
            b.unsigned = unsigned;
            b.rejected = rejected;
            b.maps = maps;
            b
        })
        .collect();

    let mut maps = Vec::new();
    let mut nodes = 0;
    for (&c, b) in candidates[0].iter().zip(&branches) {
        nodes += b.nodes;
        writeln!(
            log,
            "branch {} -> {}: nodes {}, complete {}, sign-inconsistent {}, span-rejected {}, verified {}",
            names[0],
            dst.vars[c],
            b.nodes,
            b.complete,
            b.unsigned,
            b.rejected,
            b.maps.len()
        )
        .unwrap();
        for m in &b.maps {
            if maps.len() < limit {
                maps.push(m.clone());
            }
        }
    }
    writeln!(log, "nodes {nodes}").unwrap();
    match maps.first() {
        Some(m) => {
            let pairs: Vec<String> = m
                .entries()
                .iter()
                .map(|(s, t, sign)| format!("{s}->{}{t}", if *sign < 0 { "-" } else { "" }))
                .collect();
            writeln!(log, "found {} map(s); first: {}", maps.len(), pairs.join(" ")).unwrap();
        }
        None => writeln!(log, "not found").unwrap(),
    }
    Ok(SearchOutcome { maps, nodes, log })
}
