//! Wynn's epsilon algorithm for accelerating slowly converging sequences of
//! partial sums.

/// Runs the epsilon algorithm over `seq` and returns the estimate from the
/// highest even column that uses the last element, together with a crude
/// error estimate (distance to the previous even-column estimate).
pub fn wynn_epsilon(seq: &[f64]) -> (f64, f64) {
    let n = seq.len();
    match n {
        0 => return (0.0, f64::INFINITY),
        1 => return (seq[0], f64::INFINITY),
        2 => return (seq[1], (seq[1] - seq[0]).abs()),
        _ => {}
    }
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = seq.to_vec();
    let mut best = seq[n - 1];
    let mut best_err = (seq[n - 1] - seq[n - 2]).abs();
    let mut last_even = seq[n - 2];
    let mut column = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 || !diff.is_finite() {
                return (best, best_err);
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        column += 1;
        if column % 2 == 0 {
            let est = next[next.len() - 1];
            if !est.is_finite() {
                break;
            }
            // Estimate from the same column one step earlier, if any.
            let earlier = if next.len() >= 2 { next[next.len() - 2] } else { last_even };
            let err = (est - earlier).abs();
            if err < best_err {
                best = est;
                best_err = err;
            }
            last_even = est;
        }
        prev = cur;
        cur = next;
    }
    (best, best_err)
}

/// Accumulates partial sums of a (possibly complex) series and extrapolates
/// their limit component-wise.
#[derive(Debug, Clone, Default)]
pub struct EpsilonTable {
    re: Vec<f64>,
    im: Vec<f64>,
    window: usize,
}

impl EpsilonTable {
    pub fn new(window: usize) -> Self {
        EpsilonTable { re: Vec::new(), im: Vec::new(), window: window.max(3) }
    }

    pub fn push(&mut self, parts: [f64; 2]) {
        self.re.push(parts[0]);
        self.im.push(parts[1]);
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    /// Current extrapolated limit and its error estimate.
    pub fn estimate(&self) -> ([f64; 2], f64) {
        let start = self.re.len().saturating_sub(self.window);
        let (re, er) = wynn_epsilon(&self.re[start..]);
        let (im, ei) = wynn_epsilon(&self.im[start..]);
        ([re, im], er.hypot(ei))
    }
}
