//! Gathering strategies.
//!
//! * SSP: move one particle to where the other *was*, along a shortest path; repeat.
//! * DSP: in a simple polyomino, walk the follower rectangle by rectangle along
//!   the contact tree towards the other particle's rectangle, then close the
//!   gap horizontally. With holes, follow a shortest path to where the other
//!   particle was and replan once the pair is closer than the rest of the plan.
//! * MTE: repeatedly send the particle farther from an extreme pixel `q` to `q`.
//! * MSTE: greedily apply the command that most decreases the distance sum to an
//!   extreme pixel; when no command helps, merge a pair with MTE.
//!
//! Two-particle routines run inside a many-particle configuration: every
//! particle moves with every command, and bystanders may merge along the way.
//! The follower of a pair is the one that comes first in row-major order.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decomp::{decompose, RectDecomposition, RectTree};
use crate::grid::{Cell, CornerType, Polyomino, Quadrant};
use crate::sim::{step, Command, Configuration};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrategyError {
    #[error("expected two particles, got {0}")]
    NotAPair(usize),
    #[error("configuration is empty")]
    Empty,
    #[error("need at least two particles to select a pair, got {0}")]
    TooFewParticles(usize),
    #[error("step limit must be positive")]
    ZeroLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Ssp,
    Dsp,
    Mte,
    Mste,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Ssp, Strategy::Dsp, Strategy::Mte, Strategy::Mste];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Ssp => "ssp",
            Strategy::Dsp => "dsp",
            Strategy::Mte => "mte",
            Strategy::Mste => "mste",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Strategy::ALL.into_iter().find(|x| x.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairPolicy {
    Random,
    MostDistant,
}

impl PairPolicy {
    pub fn name(self) -> &'static str {
        match self {
            PairPolicy::Random => "random",
            PairPolicy::MostDistant => "distant",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Some(PairPolicy::Random),
            "distant" | "most-distant" | "mostdistant" => Some(PairPolicy::MostDistant),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadrantChoice {
    /// The extreme pixel with the smallest initial distance sum (ties NE < NW < SE < SW).
    Auto,
    Fixed(Quadrant),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrategyConfig {
    pub strategy: Strategy,
    pub pair: PairPolicy,
    pub preprocess: bool,
    pub quadrant: QuadrantChoice,
    pub seed: u64,
    /// `None` means [`default_step_limit`].
    pub step_limit: Option<usize>,
}

impl Default for StrategyConfig {
    fn default() -> Self {
        StrategyConfig {
            strategy: Strategy::Mste,
            pair: PairPolicy::Random,
            preprocess: false,
            quadrant: QuadrantChoice::Auto,
            seed: 0,
            step_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub sequence: Vec<Command>,
    pub length: usize,
    pub gathered: bool,
    pub wall_time_ms: f64,
    /// Particle count after every command.
    pub trace: Vec<usize>,
}

/// `50 · max(1, D) · max(1, ⌊k/4⌋)`; the clamp keeps a single cell usable.
pub fn default_step_limit(p: &Polyomino) -> usize {
    50 * (p.diameter() as usize).max(1) * (p.corners().k() / 4).max(1)
}

/// Lazily cached BFS rows. Rows are kept for every source on moderate
/// polyominoes; on huge ones only the latest row is kept.
pub(crate) struct Dists<'a> {
    p: &'a Polyomino,
    rows: Vec<Option<Box<[u32]>>>,
    last: Option<(usize, Box<[u32]>)>,
}

const CACHE_ALL_ROWS_UP_TO: usize = 6000;

impl<'a> Dists<'a> {
    pub(crate) fn new(p: &'a Polyomino) -> Self {
        let rows = if p.n() <= CACHE_ALL_ROWS_UP_TO { vec![None; p.n()] } else { Vec::new() };
        Dists { p, rows, last: None }
    }

    pub(crate) fn row(&mut self, src: usize) -> &[u32] {
        if self.rows.is_empty() {
            if self.last.as_ref().map(|l| l.0) != Some(src) {
                self.last = Some((src, self.p.bfs(src).into_boxed_slice()));
            }
            return &self.last.as_ref().unwrap().1;
        }
        let p = self.p;
        self.rows[src].get_or_insert_with(|| p.bfs(src).into_boxed_slice())
    }
}

/// Greedy descent along `dist` (a BFS row towards some target), trying
/// commands in u, d, l, r order. Yields a shortest path.
fn path_along(p: &Polyomino, dist: &[u32], from: usize) -> Vec<Command> {
    let mut out = Vec::with_capacity(dist[from] as usize);
    let mut cur = from;
    while dist[cur] > 0 {
        let c = Command::ALL
            .into_iter()
            .find(|&c| dist[p.step_index(cur, c)] + 1 == dist[cur])
            .expect("BFS row has a descending neighbor");
        out.push(c);
        cur = p.step_index(cur, c);
    }
    out
}

/// Shortest path from `from` to `to`, extracted greedily in u, d, l, r order.
pub fn shortest_path(p: &Polyomino, from: Cell, to: Cell) -> Option<Vec<Command>> {
    let (f, t) = (p.index_of(from)?, p.index_of(to)?);
    Some(path_along(p, &p.bfs(t), f))
}

/// A growing command sequence applied to the whole configuration.
struct Run<'a> {
    p: &'a Polyomino,
    conf: Configuration,
    seq: Vec<Command>,
    trace: Vec<usize>,
    limit: usize,
}

impl<'a> Run<'a> {
    fn new(p: &'a Polyomino, conf: Configuration, limit: usize) -> Self {
        Run { p, conf, seq: Vec::new(), trace: Vec::new(), limit }
    }

    /// Applies `c` unless the limit is reached.
    fn push(&mut self, c: Command) -> bool {
        if self.seq.len() >= self.limit {
            return false;
        }
        self.conf = step(self.p, &self.conf, c);
        self.seq.push(c);
        self.trace.push(self.conf.len());
        true
    }

    fn finish(self, started: Instant) -> RunResult {
        RunResult {
            length: self.seq.len(),
            gathered: self.conf.len() == 1,
            sequence: self.seq,
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            trace: self.trace,
        }
    }
}

/// Merges the particles at `a` and `b`. Returns false if the limit hit first.
fn merge_ssp(run: &mut Run, dists: &mut Dists, a: usize, b: usize) -> bool {
    let p = run.p;
    let (mut f, mut t) = (a.min(b), a.max(b));
    while f != t {
        for c in path_along(p, dists.row(t), f) {
            if !run.push(c) {
                return false;
            }
            f = p.step_index(f, c);
            t = p.step_index(t, c);
            if f == t {
                return true;
            }
        }
    }
    true
}

/// The contact tree of a simple polyomino, `None` when it has holes.
fn rect_tree(p: &Polyomino) -> Option<(RectDecomposition, RectTree)> {
    let dec = decompose(p);
    let tree = RectTree::new(&dec).ok()?;
    Some((dec, tree))
}

/// Each command moves the follower one cell closer to the next rectangle on
/// the tree path, or along the shared row once both are in one rectangle.
/// The follower never revisits a rectangle, which keeps the merge within `D`.
fn merge_dsp_tree(run: &mut Run, (dec, tree): &(RectDecomposition, RectTree), a: usize, b: usize) -> bool {
    let p = run.p;
    let (mut f, mut t) = (a.min(b), a.max(b));
    while f != t {
        let (fc, tc) = (p.cell(f), p.cell(t));
        let c = match tree.next_hop(dec.cell_to_rect[f], dec.cell_to_rect[t]) {
            Some(next) => {
                let r = dec.rects[next];
                if fc.x < r.x0 {
                    Command::R
                } else if fc.x > r.x1 {
                    Command::L
                } else if r.y > fc.y {
                    Command::U
                } else {
                    Command::D
                }
            }
            None if tc.x > fc.x => Command::R,
            None => Command::L,
        };
        if !run.push(c) {
            return false;
        }
        f = p.step_index(f, c);
        t = p.step_index(t, c);
    }
    true
}

fn merge_dsp(run: &mut Run, dists: &mut Dists, tree: Option<&(RectDecomposition, RectTree)>, a: usize, b: usize) -> bool {
    if let Some(tree) = tree {
        return merge_dsp_tree(run, tree, a, b);
    }
    let p = run.p;
    let (mut f, mut t) = (a.min(b), a.max(b));
    if f == t {
        return true;
    }
    let mut plan = path_along(p, dists.row(t), f);
    let mut pos = 0;
    loop {
        let c = plan[pos];
        pos += 1;
        if !run.push(c) {
            return false;
        }
        f = p.step_index(f, c);
        t = p.step_index(t, c);
        if f == t {
            return true;
        }
        let remaining = plan.len() - pos;
        // Replan at the end of the plan, or as soon as a shorter path exists.
        if remaining == 0 || (dists.row(t)[f] as usize) < remaining {
            plan = path_along(p, dists.row(t), f);
            pos = 0;
        }
    }
}

fn merge_mte(run: &mut Run, dists: &mut Dists, a: usize, b: usize, q: usize) -> bool {
    let p = run.p;
    let dq: Box<[u32]> = dists.row(q).into();
    let (mut a, mut b) = (a.min(b), a.max(b));
    while a != b {
        // Larger distance to q moves; ties go to the row-major first particle.
        let mover = if dq[b] > dq[a] { b } else { a };
        for c in path_along(p, &dq, mover) {
            if !run.push(c) {
                return false;
            }
            a = p.step_index(a, c);
            b = p.step_index(b, c);
            if a == b {
                return true;
            }
        }
    }
    true
}

/// The extreme pixel minimizing the summed distance to `conf`.
fn auto_extreme(p: &Polyomino, dists: &mut Dists, conf: &Configuration) -> Quadrant {
    let mut best = (u64::MAX, Quadrant::NE);
    for q in Quadrant::ALL {
        let e = p.index_of(p.extreme_pixel(q)).unwrap();
        let row = dists.row(e);
        let sum: u64 = conf.indices().iter().map(|&i| row[i as usize] as u64).sum();
        if sum < best.0 {
            best = (sum, q);
        }
    }
    best.1
}

fn resolve_quadrant(p: &Polyomino, dists: &mut Dists, conf: &Configuration, choice: QuadrantChoice) -> Quadrant {
    match choice {
        QuadrantChoice::Auto => auto_extreme(p, dists, conf),
        QuadrantChoice::Fixed(q) => q,
    }
}

fn pick_pair(
    conf: &Configuration,
    policy: PairPolicy,
    rng: &mut ChaCha8Rng,
    dists: &mut Dists,
) -> Result<(usize, usize), StrategyError> {
    let occ = conf.indices();
    let m = occ.len();
    if m < 2 {
        return Err(StrategyError::TooFewParticles(m));
    }
    match policy {
        PairPolicy::Random => {
            let i = rng.gen_range(0..m);
            let mut j = rng.gen_range(0..m - 1);
            if j >= i {
                j += 1;
            }
            Ok((occ[i.min(j)] as usize, occ[i.max(j)] as usize))
        }
        PairPolicy::MostDistant => {
            let mut best = (0u32, 0usize, 0usize);
            for (x, &i) in occ.iter().enumerate() {
                let row = dists.row(i as usize);
                for &j in &occ[x + 1..] {
                    let d = row[j as usize];
                    if d > best.0 {
                        best = (d, i as usize, j as usize);
                    }
                }
            }
            Ok((best.1, best.2))
        }
    }
}

/// Picks two particles: uniformly at random, or the pair at maximal distance
/// (ties: row-major first on the first cell, then the second).
pub fn select_pair(
    p: &Polyomino,
    a: &Configuration,
    policy: PairPolicy,
    rng: &mut ChaCha8Rng,
) -> Result<(Cell, Cell), StrategyError> {
    let mut dists = Dists::new(p);
    let (i, j) = pick_pair(a, policy, rng, &mut dists)?;
    Ok((p.cell(i), p.cell(j)))
}

/// The corner type with the fewest cells (ties NW < NE < SW < SE).
pub fn preprocess_corner_type(p: &Polyomino) -> CornerType {
    let corners = p.corners();
    CornerType::ALL.into_iter().min_by_key(|&t| corners.of(t).len()).unwrap()
}

/// Plays `⟨h, v⟩^D` for the sparsest corner type, leaving at most `⌊k/4⌋`
/// occupied cells, all of them corners of that type.
pub fn preprocess_corners(p: &Polyomino, a: &Configuration) -> (Vec<Command>, Configuration) {
    let (h, v) = preprocess_corner_type(p).commands();
    let seq: Vec<Command> = (0..p.diameter()).flat_map(|_| [h, v]).collect();
    let out = crate::sim::apply(p, a, &seq, false).0;
    (seq, out)
}

fn two_particle(
    p: &Polyomino,
    a: &Configuration,
    limit: usize,
    merge: impl FnOnce(&mut Run, &mut Dists, usize, usize) -> bool,
) -> Result<RunResult, StrategyError> {
    if limit == 0 {
        return Err(StrategyError::ZeroLimit);
    }
    let started = Instant::now();
    let mut run = Run::new(p, a.clone(), limit);
    match a.len() {
        0 => return Err(StrategyError::Empty),
        1 => return Ok(run.finish(started)),
        2 => {}
        k => return Err(StrategyError::NotAPair(k)),
    }
    let mut dists = Dists::new(p);
    let (x, y) = (a.indices()[0] as usize, a.indices()[1] as usize);
    merge(&mut run, &mut dists, x, y);
    Ok(run.finish(started))
}

pub fn dsp(p: &Polyomino, a: &Configuration, limit: usize) -> Result<RunResult, StrategyError> {
    let tree = rect_tree(p);
    two_particle(p, a, limit, |run, dists, x, y| merge_dsp(run, dists, tree.as_ref(), x, y))
}

pub fn ssp(p: &Polyomino, a: &Configuration, limit: usize) -> Result<RunResult, StrategyError> {
    two_particle(p, a, limit, merge_ssp)
}

pub fn mte(p: &Polyomino, a: &Configuration, quadrant: QuadrantChoice, limit: usize) -> Result<RunResult, StrategyError> {
    two_particle(p, a, limit, |run, dists, x, y| {
        let q = resolve_quadrant(p, dists, a, quadrant);
        let qi = p.index_of(p.extreme_pixel(q)).unwrap();
        merge_mte(run, dists, x, y, qi)
    })
}

fn run_mste(run: &mut Run, dists: &mut Dists, cfg: &StrategyConfig, rng: &mut ChaCha8Rng) {
    let p = run.p;
    let q = resolve_quadrant(p, dists, &run.conf, cfg.quadrant);
    let e = p.index_of(p.extreme_pixel(q)).unwrap();
    let de: Box<[u32]> = dists.row(e).into();
    let sum = |conf: &Configuration| conf.indices().iter().map(|&i| de[i as usize] as u64).sum::<u64>();
    while run.conf.len() > 1 {
        let current = sum(&run.conf);
        let mut best: Option<(u64, Command)> = None;
        for c in Command::ALL {
            let s = sum(&step(p, &run.conf, c));
            if s < current && best.is_none_or(|(b, _)| s < b) {
                best = Some((s, c));
            }
        }
        let progressed = match best {
            Some((_, c)) => run.push(c),
            None => {
                let (a, b) = pick_pair(&run.conf, cfg.pair, rng, dists).expect("at least two particles");
                merge_mte(run, dists, a, b, e)
            }
        };
        if !progressed {
            return;
        }
    }
}

pub fn mste(p: &Polyomino, a: &Configuration, cfg: &StrategyConfig) -> Result<RunResult, StrategyError> {
    let mut c = *cfg;
    c.strategy = Strategy::Mste;
    c.preprocess = false;
    gather(p, a, &c)
}

/// Optional corner preprocessing, then MSTE on the whole swarm, or repeated
/// pair selection and two-particle merging for the other strategies.
pub fn gather(p: &Polyomino, a: &Configuration, cfg: &StrategyConfig) -> Result<RunResult, StrategyError> {
    if a.is_empty() {
        return Err(StrategyError::Empty);
    }
    let limit = cfg.step_limit.unwrap_or_else(|| default_step_limit(p));
    if limit == 0 {
        return Err(StrategyError::ZeroLimit);
    }
    let started = Instant::now();
    let mut run = Run::new(p, a.clone(), limit);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut dists = Dists::new(p);
    if cfg.preprocess && run.conf.len() > 1 {
        let (h, v) = preprocess_corner_type(p).commands();
        'pre: for _ in 0..p.diameter() {
            for c in [h, v] {
                if run.conf.len() == 1 || !run.push(c) {
                    break 'pre;
                }
            }
        }
    }
    match cfg.strategy {
        Strategy::Mste => run_mste(&mut run, &mut dists, cfg, &mut rng),
        s => {
            let e = (s == Strategy::Mte).then(|| {
                let q = resolve_quadrant(p, &mut dists, &run.conf, cfg.quadrant);
                p.index_of(p.extreme_pixel(q)).unwrap()
            });
            let tree = if s == Strategy::Dsp { rect_tree(p) } else { None };
            while run.conf.len() > 1 {
                let (x, y) = pick_pair(&run.conf, cfg.pair, &mut rng, &mut dists)?;
                let merged = match s {
                    Strategy::Ssp => merge_ssp(&mut run, &mut dists, x, y),
                    Strategy::Dsp => merge_dsp(&mut run, &mut dists, tree.as_ref(), x, y),
                    _ => merge_mte(&mut run, &mut dists, x, y, e.unwrap()),
                };
                if !merged {
                    break;
                }
            }
        }
    }
    Ok(run.finish(started))
}
