/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Labels each element by its set, numbering sets in order of their
    /// smallest element. Two structures describe the same partition iff
    /// their labelings are equal.
    pub fn canonical_labels(&mut self) -> Vec<u8> {
        let n = self.len();
        let mut label_of_root = vec![u8::MAX; n];
        let mut next = 0u8;
        (0..n)
            .map(|x| {
                let r = self.find(x);
                if label_of_root[r] == u8::MAX {
                    label_of_root[r] = next;
                    next += 1;
                }
                label_of_root[r]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_find() {
        let mut d = DisjointSets::new(5);
        assert!(d.union(0, 3));
        assert!(d.union(3, 4));
        assert!(!d.union(0, 4));
        assert!(d.same(0, 4));
        assert!(!d.same(1, 2));
        assert_eq!(d.canonical_labels(), vec![0, 1, 2, 0, 0]);
    }

    #[test]
    fn labels_ignore_union_order() {
        let mut a = DisjointSets::new(4);
        a.union(2, 3);
        a.union(1, 3);
        let mut b = DisjointSets::new(4);
        b.union(1, 2);
        b.union(3, 1);
        assert_eq!(a.canonical_labels(), b.canonical_labels());
    }
}
