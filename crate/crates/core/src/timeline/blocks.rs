use super::RangeStore;

/// Block partition: slots split into blocks of `k`, each block keeping a
/// pending addition and its cached extremes (without that addition).
#[derive(Debug, Clone)]
pub struct BlockPartition {
    k: usize,
    values: Vec<i64>,
    lazy: Vec<i64>,
    min: Vec<i64>,
    max: Vec<(i64, usize)>,
}

impl BlockPartition {
    pub fn from_values(values: &[i64], k: usize) -> Self {
        assert!(!values.is_empty() && k > 0);
        let blocks = values.len().div_ceil(k);
        let mut bp = BlockPartition {
            k,
            values: values.to_vec(),
            lazy: vec![0; blocks],
            min: vec![0; blocks],
            max: vec![(0, 0); blocks],
        };
        for block in 0..blocks {
            bp.refresh(block);
        }
        bp
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    fn span(&self, block: usize) -> (usize, usize) {
        (block * self.k, ((block + 1) * self.k).min(self.values.len()) - 1)
    }

    fn refresh(&mut self, block: usize) {
        let (lo, hi) = self.span(block);
        let mut mn = i64::MAX;
        let mut mx = (i64::MIN, lo);
        for t in lo..=hi {
            let v = self.values[t];
            mn = mn.min(v);
            if v > mx.0 {
                mx = (v, t);
            }
        }
        self.min[block] = mn;
        self.max[block] = mx;
    }
}

impl RangeStore for BlockPartition {
    fn len(&self) -> usize {
        self.values.len()
    }

    fn add(&mut self, a: usize, b: usize, delta: i64) {
        let (ba, bb) = (a / self.k, b / self.k);
        for block in ba..=bb {
            let (lo, hi) = self.span(block);
            if a <= lo && hi <= b {
                self.lazy[block] += delta;
            } else {
                for t in lo.max(a)..=hi.min(b) {
                    self.values[t] += delta;
                }
                self.refresh(block);
            }
        }
    }

    fn min(&self, a: usize, b: usize) -> i64 {
        let mut best = i64::MAX;
        for block in a / self.k..=b / self.k {
            let (lo, hi) = self.span(block);
            let lazy = self.lazy[block];
            if a <= lo && hi <= b {
                best = best.min(self.min[block] + lazy);
            } else {
                for t in lo.max(a)..=hi.min(b) {
                    best = best.min(self.values[t] + lazy);
                }
            }
        }
        best
    }

    fn max(&self, a: usize, b: usize) -> (i64, usize) {
        let mut best = (i64::MIN, usize::MAX);
        // blocks are visited left to right, so strict `>` keeps the leftmost
        for block in a / self.k..=b / self.k {
            let (lo, hi) = self.span(block);
            let lazy = self.lazy[block];
            if a <= lo && hi <= b {
                let (v, t) = self.max[block];
                if v + lazy > best.0 {
                    best = (v + lazy, t);
                }
            } else {
                for t in lo.max(a)..=hi.min(b) {
                    if self.values[t] + lazy > best.0 {
                        best = (self.values[t] + lazy, t);
                    }
                }
            }
        }
        best
    }
}
