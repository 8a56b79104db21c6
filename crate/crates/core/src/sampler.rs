//! Fenwick tree over integer weights: point update and inverse prefix-sum
//! search, both O(log n). Sampling draws a uniform integer in `[0, total)` and
//! returns the slot whose cumulative weight range contains it, which is exact
//! proportional selection.

use rand::Rng;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Fenwick {
    tree: Vec<u64>,
    total: u64,
}

impl Fenwick {
    pub fn push(&mut self, weight: u64) {
        let i = self.tree.len() + 1;
        // A new node at index i covers (i - lowbit(i), i]; seed it with the
        // sums of the children it absorbs.
        let low = i & i.wrapping_neg();
        let mut sum = weight;
        let mut j = i - 1;
        let stop = i - low;
        while j > stop {
            sum += self.tree[j - 1];
            j -= j & j.wrapping_neg();
        }
        self.tree.push(sum);
        self.total += weight;
    }

    pub fn add(&mut self, index: usize, delta: u64) {
        let mut i = index + 1;
        while i <= self.tree.len() {
            self.tree[i - 1] += delta;
            i += i & i.wrapping_neg();
        }
        self.total += delta;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Smallest index whose inclusive prefix sum exceeds `target`.
    fn find(&self, mut target: u64) -> usize {
        let n = self.tree.len();
        let mut pos = 0usize;
        let mut step = if n == 0 {
            0
        } else {
            1usize << (usize::BITS - 1 - n.leading_zeros())
        };
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next - 1] <= target {
                pos = next;
                target -= self.tree[next - 1];
            }
            step >>= 1;
        }
        pos
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        if self.total == 0 {
            return None;
        }
        Some(self.find(rng.gen_range(0..self.total)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_matches_linear_scan() {
        let weights = [3u64, 0, 1, 7, 0, 0, 2, 5, 1];
        let mut f = Fenwick::default();
        for &w in &weights {
            f.push(w);
        }
        assert_eq!(f.total(), weights.iter().sum::<u64>());
        for target in 0..f.total() {
            let mut acc = 0;
            let expected = weights
                .iter()
                .position(|&w| {
                    acc += w;
                    acc > target
                })
                .unwrap();
            assert_eq!(f.find(target), expected, "target {target}");
        }
    }

    #[test]
    fn add_after_push() {
        let mut f = Fenwick::default();
        for _ in 0..13 {
            f.push(0);
        }
        f.add(12, 4);
        f.add(5, 1);
        assert_eq!(f.total(), 5);
        assert_eq!(f.find(0), 5);
        assert_eq!(f.find(1), 12);
        assert_eq!(f.find(4), 12);
    }
}
