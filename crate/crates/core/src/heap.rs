//! Indexed binary min-heap over dense item ids with a position map, so a key
//! can be changed in either direction in O(log n).

/// Min-heap of items `0..capacity` keyed by `K`.
///
/// Keys are compared with `PartialOrd`; incomparable keys (NaN) are not
/// supported.
#[derive(Debug, Clone)]
pub struct IndexedMinHeap<K> {
    heap: Vec<usize>,
    pos: Vec<usize>,
    keys: Vec<Option<K>>,
}

const ABSENT: usize = usize::MAX;

impl<K: PartialOrd + Copy> IndexedMinHeap<K> {
    pub fn with_capacity(capacity: usize) -> Self {
        IndexedMinHeap {
            heap: Vec::with_capacity(capacity),
            pos: vec![ABSENT; capacity],
            keys: vec![None; capacity],
        }
    }

    /// Heap holding every item `i` with key `keys[i]`, built in O(n).
    pub fn from_keys(keys: Vec<K>) -> Self {
        let n = keys.len();
        let mut h = IndexedMinHeap {
            heap: (0..n).collect(),
            pos: (0..n).collect(),
            keys: keys.into_iter().map(Some).collect(),
        };
        for i in (0..n / 2).rev() {
            h.sift_down(i);
        }
        h
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.heap.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    #[inline]
    pub fn contains(&self, item: usize) -> bool {
        self.pos.get(item).is_some_and(|&p| p != ABSENT)
    }

    pub fn key(&self, item: usize) -> Option<K> {
        if self.contains(item) {
            self.keys[item]
        } else {
            None
        }
    }

    pub fn peek(&self) -> Option<(usize, K)> {
        self.heap.first().map(|&i| (i, self.key_of(i)))
    }

    pub fn push(&mut self, item: usize, key: K) {
        if item >= self.pos.len() {
            self.pos.resize(item + 1, ABSENT);
            self.keys.resize(item + 1, None);
        }
        assert!(!self.contains(item), "item {item} already in heap");
        self.keys[item] = Some(key);
        self.pos[item] = self.heap.len();
        self.heap.push(item);
        self.sift_up(self.heap.len() - 1);
    }

    pub fn pop(&mut self) -> Option<(usize, K)> {
        let top = *self.heap.first()?;
        let key = self.key_of(top);
        let last = self.heap.pop().expect("non-empty");
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = 0;
            self.sift_down(0);
        }
        self.pos[top] = ABSENT;
        Some((top, key))
    }

    /// Set a new key for an item in the heap. Returns `false` if absent.
    pub fn change_key(&mut self, item: usize, key: K) -> bool {
        if !self.contains(item) {
            return false;
        }
        let old = self.key_of(item);
        self.keys[item] = Some(key);
        let p = self.pos[item];
        if key < old {
            self.sift_up(p);
        } else {
            self.sift_down(p);
        }
        true
    }

    #[inline]
    fn key_of(&self, item: usize) -> K {
        self.keys[item].expect("key set for heap item")
    }

    #[inline]
    fn less(&self, a: usize, b: usize) -> bool {
        self.key_of(self.heap[a]) < self.key_of(self.heap[b])
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.pos[self.heap[a]] = a;
        self.pos[self.heap[b]] = b;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.less(i, parent) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let n = self.heap.len();
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut smallest = i;
            if l < n && self.less(l, smallest) {
                smallest = l;
            }
            if r < n && self.less(r, smallest) {
                smallest = r;
            }
            if smallest == i {
                break;
            }
            self.swap(i, smallest);
            i = smallest;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pops_in_order_with_changes() {
        let mut h = IndexedMinHeap::from_keys(vec![5, 3, 8, 1, 9]);
        assert_eq!(h.peek(), Some((3, 1)));
        assert!(h.change_key(4, 0));
        assert!(h.change_key(3, 10));
        let order: Vec<usize> = std::iter::from_fn(|| h.pop().map(|(i, _)| i)).collect();
        assert_eq!(order, [4, 1, 0, 2, 3]);
        assert!(!h.change_key(0, 1));
        assert!(h.is_empty());
    }

    #[test]
    fn push_grows() {
        let mut h = IndexedMinHeap::with_capacity(0);
        h.push(7, 2.5);
        h.push(2, 1.5);
        assert_eq!(h.len(), 2);
        assert_eq!(h.key(7), Some(2.5));
        assert_eq!(h.pop(), Some((2, 1.5)));
        assert!(!h.contains(2));
    }

    #[derive(Debug, Clone)]
    enum Op {
        Change(usize, i32),
        Pop,
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![
            (0usize..32, -50i32..50).prop_map(|(i, k)| Op::Change(i, k)),
            Just(Op::Pop),
        ]
    }

    proptest! {
        // model: a plain vector searched linearly, ties broken by item id
        #[test]
        fn matches_linear_model(keys in prop::collection::vec(-50i32..50, 1..32),
                                ops in prop::collection::vec(op(), 0..100)) {
            let n = keys.len();
            let mut h = IndexedMinHeap::from_keys(keys.iter().enumerate().map(|(i, &k)| (k, i)).collect());
            let mut model: Vec<Option<i32>> = keys.iter().copied().map(Some).collect();
            for op in ops {
                match op {
                    Op::Change(i, k) => {
                        let i = i % n;
                        let present = model[i].is_some();
                        prop_assert_eq!(h.change_key(i, (k, i)), present);
                        if present { model[i] = Some(k); }
                    }
                    Op::Pop => {
                        let expected = model.iter().enumerate()
                            .filter_map(|(i, k)| k.map(|k| (k, i)))
                            .min();
                        let got = h.pop().map(|(i, (k, _))| (k, i));
                        prop_assert_eq!(got, expected);
                        if let Some((_, i)) = expected { model[i] = None; }
                    }
                }
            }
        }
    }
}
