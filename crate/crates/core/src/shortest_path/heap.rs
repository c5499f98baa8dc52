//! Addressable binary min-heap with decrease-key.

use crate::graph::NodeId;

const ABSENT: usize = usize::MAX;

/// Min-heap over node ids keyed by `K`; ties resolve to the smaller node id.
#[derive(Debug)]
pub(crate) struct IndexedHeap<K> {
    heap: Vec<(K, NodeId)>,
    position: Vec<usize>,
}

impl<K: Ord + Copy> IndexedHeap<K> {
    pub fn new(node_count: usize) -> Self {
        IndexedHeap {
            heap: Vec::new(),
            position: vec![ABSENT; node_count],
        }
    }

    /// Inserts `node` or lowers its key. Returns false if `key` is not an
    /// improvement.
    pub fn push_or_decrease(&mut self, node: NodeId, key: K) -> bool {
        match self.position[node] {
            ABSENT => {
                self.heap.push((key, node));
                let at = self.heap.len() - 1;
                self.position[node] = at;
                self.sift_up(at);
                true
            }
            at => {
                if key >= self.heap[at].0 {
                    return false;
                }
                self.heap[at].0 = key;
                self.sift_up(at);
                true
            }
        }
    }

    pub fn pop(&mut self) -> Option<(K, NodeId)> {
        if self.heap.is_empty() {
            return None;
        }
        let last = self.heap.len() - 1;
        self.swap(0, last);
        let top = self.heap.pop().expect("nonempty");
        self.position[top.1] = ABSENT;
        if !self.heap.is_empty() {
            self.sift_down(0);
        }
        Some(top)
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.position[self.heap[a].1] = a;
        self.position[self.heap[b].1] = b;
    }

    fn sift_up(&mut self, mut at: usize) {
        while at > 0 {
            let parent = (at - 1) / 2;
            if self.heap[at] < self.heap[parent] {
                self.swap(at, parent);
                at = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut at: usize) {
        let len = self.heap.len();
        loop {
            let left = 2 * at + 1;
            let right = left + 1;
            let mut best = at;
            if left < len && self.heap[left] < self.heap[best] {
                best = left;
            }
            if right < len && self.heap[right] < self.heap[best] {
                best = right;
            }
            if best == at {
                break;
            }
            self.swap(at, best);
            at = best;
        }
    }
}
