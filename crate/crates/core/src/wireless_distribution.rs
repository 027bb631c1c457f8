//! Content dissemination along path networks.
//!
//! Mobile nodes: node 1 holds the content, transmission is instant within
//! range `D`, and every node may move at speed `v`; we want the earliest
//! time by which all nodes hold the content.
//!
//! Sensor nodes: the content goes left to right and back; node `i` may
//! process it only after its release time `pt(i)`, either on the way out
//! (possibly waiting for `pt(i)`) or on the way back. We minimize the time
//! until node 1 gets it back.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for floating-point comparisons.
pub const EPS: f64 = 1e-9;

/// Iteration cap for the makespan binary search.
pub const BSEARCH_ITERATIONS: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MobilePathInstance {
    pub x: Vec<f64>,
    #[serde(rename = "D")]
    pub range: f64,
    #[serde(rename = "v")]
    pub speed: f64,
}

impl MobilePathInstance {
    pub fn new(x: Vec<f64>, range: f64, speed: f64) -> Result<Self> {
        let inst = MobilePathInstance { x, range, speed };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.is_empty() {
            return Err(Error::Invalid("at least one node is required".into()));
        }
        if self.x.iter().any(|c| !c.is_finite()) {
            return Err(Error::Invalid("coordinates must be finite".into()));
        }
        if self.x.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("coordinates must be non-decreasing".into()));
        }
        if !(self.range > 0.0 && self.range.is_finite()) {
            return Err(Error::Invalid("transmission range D must be positive".into()));
        }
        if !(self.speed > 0.0 && self.speed.is_finite()) {
            return Err(Error::Invalid("speed v must be positive".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// A sound makespan bound: the last node alone can walk to node 1.
    pub fn makespan_upper_bound(&self) -> f64 {
        (self.x[self.x.len() - 1] - self.x[0]) / self.speed
    }
}

/// Per-node receipt times and positions. Node `i` receives the content at
/// `tmin[i]` while standing at `xmax[i]`, from node `i-1` standing at
/// `sender_pos[i]` (`sender_pos[0]` is node 1's own position).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobileSchedule {
    pub tmin: Vec<f64>,
    pub xmax: Vec<f64>,
    pub sender_pos: Vec<f64>,
}

impl MobileSchedule {
    pub fn makespan(&self) -> f64 {
        *self.tmin.last().expect("schedules are nonempty")
    }

    /// Replays the certificates: every hop is within range, and every
    /// node's motion (to its receipt point, then on to its sending point)
    /// respects the speed limit.
    pub fn verify(&self, inst: &MobilePathInstance, tol: f64) -> Result<()> {
        let (d, v) = (inst.range, inst.speed);
        let fail = |i: usize, what: &str| Err(Error::Invalid(format!("node {}: {what}", i + 1)));
        for i in 0..inst.len() {
            if (self.xmax[i] - inst.x[i]).abs() > v * self.tmin[i] + tol {
                return fail(i, "cannot reach its receipt point in time");
            }
            if i == 0 {
                continue;
            }
            if self.tmin[i] + tol < self.tmin[i - 1] {
                return fail(i, "receives before its sender");
            }
            if (self.sender_pos[i] - self.xmax[i - 1]).abs() > v * (self.tmin[i] - self.tmin[i - 1]) + tol {
                return fail(i, "sender cannot reach its sending point in time");
            }
            if (self.xmax[i] - self.sender_pos[i]).abs() > d + tol {
                return fail(i, "hop longer than the transmission range");
            }
        }
        Ok(())
    }
}

/// Linear forward sweep. For node `i`, with `gap = x(i) - xmax(i-1)`:
/// if `gap > D` and node `i` can close the excess alone before node `i-1`
/// receives, it does so and waits; if it cannot, both nodes approach each
/// other after `Tmin(i-1)`; if `gap <= D`, node `i` drifts right while
/// waiting, staying in range.
pub fn mobile_makespan_linear(inst: &MobilePathInstance) -> Result<MobileSchedule> {
    inst.validate()?;
    let (x, d, v) = (&inst.x, inst.range, inst.speed);
    let n = x.len();
    let mut tmin = vec![0.0; n];
    let mut xmax = vec![x[0]; n];
    let mut sender_pos = vec![x[0]; n];
    for i in 1..n {
        let prev_t = tmin[i - 1];
        let prev_x = xmax[i - 1];
        if x[i] - prev_x > d {
            let tdif = (x[i] - prev_x - d) / v;
            if tdif <= prev_t {
                tmin[i] = prev_t;
                xmax[i] = prev_x + d;
                sender_pos[i] = prev_x;
            } else {
                let moved = x[i] - v * prev_t;
                let tdif2 = (moved - prev_x - d) / (2.0 * v);
                tmin[i] = prev_t + tdif2;
                xmax[i] = x[i] - tmin[i] * v;
                sender_pos[i] = prev_x + v * tdif2;
            }
        } else {
            let tdif = (prev_x + d - x[i]) / v;
            tmin[i] = prev_t;
            xmax[i] = x[i] + v * prev_t.min(tdif);
            sender_pos[i] = prev_x;
        }
    }
    Ok(MobileSchedule { tmin, xmax, sender_pos })
}

/// Whether every node can hold the content by time `t`.
///
/// Sweeps backwards with `Tmax(i) = t` and `xmin(i)`, the leftmost point
/// at which node `i` may receive while still relaying rightwards in range:
/// `xmin(n) = x(n) - v t` and `xmin(i) = max(x(i) - v t, xmin(i+1) - D)`.
/// Infeasible as soon as node `i` cannot reach `xmin(i)` within `Tmax(i)`.
pub fn mobile_feasible(inst: &MobilePathInstance, t: f64) -> bool {
    let (x, d, v) = (&inst.x, inst.range, inst.speed);
    if t < 0.0 {
        return false;
    }
    let n = x.len();
    let mut xmin = x[n - 1] - v * t;
    for i in (0..n - 1).rev() {
        xmin = (x[i] - v * t).max(xmin - d);
        if (x[i] - xmin).abs() > v * t + EPS {
            return false;
        }
    }
    true
}

/// Binary search over the makespan in `[0, tm]` using [`mobile_feasible`],
/// for at most [`BSEARCH_ITERATIONS`] rounds or until the bracket is
/// narrower than `eps`. Returns the feasible end of the bracket.
pub fn mobile_makespan_bsearch(inst: &MobilePathInstance, tm: f64, eps: f64) -> Result<f64> {
    inst.validate()?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Invalid("eps must be positive".into()));
    }
    if !tm.is_finite() || tm < 0.0 {
        return Err(Error::Invalid("upper bound TM must be non-negative".into()));
    }
    if mobile_feasible(inst, 0.0) {
        return Ok(0.0);
    }
    if !mobile_feasible(inst, tm) {
        return Err(Error::Invalid(format!("upper bound TM = {tm} is not feasible")));
    }
    let (mut lo, mut hi) = (0.0, tm);
    for _ in 0..BSEARCH_ITERATIONS {
        if hi - lo < eps {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mobile_feasible(inst, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensorRegime {
    /// Intermediate nodes take no processing time.
    ZeroD,
    /// Intermediate nodes share one processing duration.
    UniformDp,
    /// Integer processing durations.
    GeneralInteger,
}

/// Sensor path instance. `pt` and `d` hold one entry per node; the entry
/// for node 1 (index 0) is ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorPathInstance {
    pub x: Vec<f64>,
    pub s: f64,
    pub pt: Vec<f64>,
    pub d: Vec<f64>,
    pub regime: SensorRegime,
}

impl SensorPathInstance {
    pub fn new(x: Vec<f64>, s: f64, pt: Vec<f64>, d: Vec<f64>, regime: SensorRegime) -> Result<Self> {
        let inst = SensorPathInstance { x, s, pt, d, regime };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.x.len();
        if n < 2 {
            return Err(Error::Invalid("a sensor path needs at least two nodes".into()));
        }
        if self.pt.len() != n || self.d.len() != n {
            return Err(Error::Invalid(format!("pt and d need {n} entries each")));
        }
        let finite = |v: &[f64]| v.iter().all(|c| c.is_finite());
        if !finite(&self.x) || !finite(&self.pt) || !finite(&self.d) {
            return Err(Error::Invalid("all values must be finite".into()));
        }
        if self.x.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("coordinates must be non-decreasing".into()));
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::Invalid("propagation speed s must be positive".into()));
        }
        if self.pt[1..].windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("release times must be non-decreasing from node 2 on".into()));
        }
        if self.d[1..].iter().any(|&d| d < 0.0) {
            return Err(Error::Invalid("processing durations must be non-negative".into()));
        }
        let middle = &self.d[1..n - 1];
        match self.regime {
            SensorRegime::ZeroD if middle.iter().any(|&d| d != 0.0) => {
                Err(Error::Invalid("zero_d requires d(i) = 0 for intermediate nodes".into()))
            }
            SensorRegime::UniformDp if middle.windows(2).any(|w| w[0] != w[1]) => {
                Err(Error::Invalid("uniform_dp requires equal intermediate durations".into()))
            }
            SensorRegime::GeneralInteger if self.d[1..].iter().any(|d| d.fract() != 0.0) => {
                Err(Error::Invalid("general_integer requires integer durations".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Travel time from node 1 to node `i` (0-based).
    fn reach(&self, i: usize) -> f64 {
        (self.x[i] - self.x[0]).abs() / self.s
    }

    fn require(&self, regime: SensorRegime) -> Result<()> {
        self.validate()?;
        if self.regime != regime {
            return Err(Error::Invalid(format!("instance regime is {:?}, expected {regime:?}", self.regime)));
        }
        Ok(())
    }
}

/// Minimum forward-pass waiting time and the resulting round-trip duration.
#[derive(Debug, Clone, PartialEq)]
pub struct WaitingPlan {
    pub tmin: f64,
    pub total: f64,
    /// `table[i][j]`: the DP row of node `i + 1` (0-based rows), `+∞` where
    /// unreachable.
    pub table: Vec<Vec<f64>>,
}

/// `max{L, pt(n)} + d(n) + L` with `L = |x(n) - x(1)| / s`: nobody waits on
/// the way out and everyone else processes on the way back.
pub fn sensor_duration_zero_d(inst: &SensorPathInstance) -> Result<f64> {
    inst.require(SensorRegime::ZeroD)?;
    let n = inst.len();
    let reach = inst.reach(n - 1);
    Ok(reach.max(inst.pt[n - 1]) + inst.d[n - 1] + reach)
}

/// Final step shared by both DPs: node `n` waits for `pt(n)` if early.
fn finish_at_last_node(reach_n: f64, release_n: f64, row: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut tmin = f64::INFINITY;
    for (wait, busy) in row {
        if wait.is_infinite() {
            continue;
        }
        let tr = reach_n + wait + busy;
        tmin = tmin.min(if tr < release_n { wait + release_n - tr } else { wait });
    }
    tmin
}

/// `O(n²)` DP over `Twmin(i, j)`, the least waiting time once the content
/// reaches node `i` after `j` nodes processed it on the way out.
pub fn sensor_duration_uniform(inst: &SensorPathInstance, dp: f64) -> Result<WaitingPlan> {
    inst.require(SensorRegime::UniformDp)?;
    let n = inst.len();
    if inst.d[1..n - 1].iter().any(|&d| d != dp) {
        return Err(Error::Invalid(format!("intermediate durations differ from dp = {dp}")));
    }
    let inf = f64::INFINITY;
    let mut table = vec![vec![inf; n]; n - 1];
    for row in table.iter_mut() {
        row[0] = 0.0;
    }
    for i in 1..n - 1 {
        let (release, reach) = (inst.pt[i], inst.reach(i));
        for j in 1..=i {
            let mut best = inf;
            let with = table[i - 1][j - 1];
            if with.is_finite() {
                let tr = reach + with + (j - 1) as f64 * dp;
                best = best.min(if tr <= release { with + (release - tr) } else { with });
            }
            let without = table[i - 1][j];
            if without.is_finite() {
                let tr2 = reach + without + j as f64 * dp;
                if tr2 < release {
                    best = best.min(without);
                }
            }
            table[i][j] = best;
        }
    }
    let row = table[n - 2].iter().enumerate().map(|(j, &w)| (w, j as f64 * dp));
    let tmin = finish_at_last_node(inst.reach(n - 1), inst.pt[n - 1], row);
    let total = 2.0 * inst.reach(n - 1) + (n - 2) as f64 * dp + inst.d[n - 1] + tmin;
    Ok(WaitingPlan { tmin, total, table })
}

/// Pseudo-polynomial DP over `Twmin(i, tproc)`, the least waiting time when
/// the content leaves node `i` after `tproc` units of processing so far.
pub fn sensor_duration_general(inst: &SensorPathInstance) -> Result<WaitingPlan> {
    inst.require(SensorRegime::GeneralInteger)?;
    let n = inst.len();
    let d: Vec<usize> = inst.d.iter().map(|&v| v as usize).collect();
    let tmax: usize = d[1..].iter().sum();
    let inf = f64::INFINITY;
    let mut table = vec![vec![inf; tmax + 1]; n - 1];
    table[0][0] = 0.0;
    for i in 1..n - 1 {
        let (release, reach) = (inst.pt[i], inst.reach(i));
        let (prev, rows) = table.split_at_mut(i);
        let (prev, cur) = (&prev[i - 1], &mut rows[0]);
        for (tproc, &wait) in prev.iter().enumerate() {
            if wait.is_infinite() {
                continue;
            }
            let tr = reach + wait + tproc as f64;
            let done = tproc + d[i];
            if tr < release {
                cur[tproc] = cur[tproc].min(wait);
                cur[done] = cur[done].min(wait + release - tr);
            } else {
                cur[done] = cur[done].min(wait);
            }
        }
    }
    let row = table[n - 2].iter().enumerate().map(|(tp, &w)| (w, tp as f64));
    let tmin = finish_at_last_node(inst.reach(n - 1), inst.pt[n - 1], row);
    let total = 2.0 * inst.reach(n - 1) + tmin + tmax as f64;
    Ok(WaitingPlan { tmin, total, table })
}

/// Dispatches on the instance regime; returns `(Tmin, total)` (`Tmin` is 0
/// in the zero-duration regime).
pub fn sensor_duration(inst: &SensorPathInstance) -> Result<(f64, f64)> {
    match inst.regime {
        SensorRegime::ZeroD => {
            let total = sensor_duration_zero_d(inst)?;
            let n = inst.len();
            let wait = (inst.pt[n - 1] - inst.reach(n - 1)).max(0.0);
            Ok((wait, total))
        }
        SensorRegime::UniformDp => {
            let dp = if inst.len() > 2 { inst.d[1] } else { 0.0 };
            sensor_duration_uniform(inst, dp).map(|p| (p.tmin, p.total))
        }
        SensorRegime::GeneralInteger => sensor_duration_general(inst).map(|p| (p.tmin, p.total)),
    }
}
