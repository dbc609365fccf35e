use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// The `i`-simplices are stored as one flat, lexicographically sorted array
/// of strictly increasing vertex tuples with stride `i + 1`. Lexicographic
/// order makes the extensions of a simplex by one larger vertex contiguous in
/// the next level; `children[i][s]..children[i][s + 1]` is that range, which
/// turns the levels into a prefix trie for face lookups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    levels: Vec<Vec<u32>>,
    children: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            levels: Vec::new(),
            children: Vec::new(),
        }
    }

    /// `levels[0]` must list every vertex `0..vertex_count`.
    fn from_levels(vertex_count: usize, mut levels: Vec<Vec<u32>>) -> Self {
        while levels.last().is_some_and(|l| l.is_empty()) {
            levels.pop();
        }
        let children = (0..levels.len())
            .map(|dim| {
                let count = levels[dim].len() / (dim + 1);
                let mut offsets = vec![0u32; count + 1];
                if let Some(next) = levels.get(dim + 1) {
                    let mut parent = 0usize;
                    for (idx, s) in next.chunks_exact(dim + 2).enumerate() {
                        let prefix = &s[..dim + 1];
                        while &levels[dim][parent * (dim + 1)..(parent + 1) * (dim + 1)] != prefix {
                            parent += 1;
                            offsets[parent] = idx as u32;
                        }
                    }
                    let total = (next.len() / (dim + 2)) as u32;
                    for o in &mut offsets[parent + 1..] {
                        *o = total;
                    }
                }
                offsets
            })
            .collect();
        SimplicialComplex {
            vertex_count,
            levels,
            children,
        }
    }

    /// The complex generated by `simplices` (all faces are added) together
    /// with every vertex in `0..vertex_count`.
    pub fn from_simplices<I, S>(vertex_count: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
        if vertex_count > 0 {
            levels.push((0..vertex_count as u32).map(|v| vec![v]).collect());
        }
        for s in simplices {
            let mut s = s.as_ref().to_vec();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("simplex {s:?} repeats a vertex")));
            }
            if s.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::invalid(format!(
                    "simplex {s:?} has a vertex out of range"
                )));
            }
            // Every nonempty subset is a face.
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| s[b])
                    .collect();
                let dim = face.len() - 1;
                if levels.len() <= dim {
                    levels.resize(dim + 1, Vec::new());
                }
                levels[dim].push(face);
            }
        }
        let levels = levels
            .into_iter()
            .map(|mut level| {
                level.sort_unstable();
                level.dedup();
                level.concat()
            })
            .collect();
        Ok(SimplicialComplex::from_levels(vertex_count, levels))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_empty(&self) -> bool {
        self.levels.first().is_none_or(|l| l.is_empty())
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        (0..self.levels.len())
            .rev()
            .find(|&d| !self.levels[d].is_empty())
    }

    /// Number of `dim`-simplices.
    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.len() / (dim + 1))
    }

    /// Simplex counts by dimension, `f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        match self.dimension() {
            Some(top) => (0..=top).map(|d| self.count(d)).collect(),
            None => Vec::new(),
        }
    }

    pub fn total_count(&self) -> usize {
        (0..self.levels.len()).map(|d| self.count(d)).sum()
    }

    pub fn simplices(&self, dim: usize) -> std::slice::ChunksExact<'_, u32> {
        match self.levels.get(dim) {
            Some(level) => level.chunks_exact(dim + 1),
            None => [].chunks_exact(dim + 1),
        }
    }

    pub fn simplex(&self, dim: usize, index: usize) -> &[u32] {
        &self.levels[dim][index * (dim + 1)..(index + 1) * (dim + 1)]
    }

    /// Index of the extension of simplex `node` (of dimension `dim`) by `vertex`.
    fn child(&self, dim: usize, node: usize, vertex: u32) -> Option<usize> {
        let offsets = self.children.get(dim)?;
        let next = self.levels.get(dim + 1)?;
        let (mut lo, mut hi) = (offsets[node] as usize, offsets[node + 1] as usize);
        let stride = dim + 2;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match next[mid * stride + dim + 1].cmp(&vertex) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Walks down the trie from simplex `node` of dimension `dim`.
    fn descend(&self, mut dim: usize, mut node: usize, path: &[u32]) -> Option<usize> {
        for &v in path {
            node = self.child(dim, node, v)?;
            dim += 1;
        }
        Some(node)
    }

    /// Position of `simplex` among the simplices of its dimension.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let (&first, rest) = simplex.split_first()?;
        if first as usize >= self.count(0) || self.levels[0][first as usize] != first {
            return None;
        }
        self.descend(0, first as usize, rest)
    }

    /// Indices of the codimension-one faces of a `dim`-simplex, paired with
    /// the position of the removed vertex, sorted by index.
    pub fn face_indices(
        &self,
        simplex: &[u32],
        prefix: &mut Vec<usize>,
        out: &mut Vec<(u32, usize)>,
    ) {
        out.clear();
        let k = simplex.len();
        if k < 2 {
            return;
        }
        // prefix[t] = index of simplex[..=t] in level t.
        prefix.clear();
        prefix.push(simplex[0] as usize);
        for t in 1..k - 1 {
            let node = self
                .child(t - 1, prefix[t - 1], simplex[t])
                .expect("closed under faces");
            prefix.push(node);
        }
        let first = self
            .descend(0, simplex[1] as usize, &simplex[2..])
            .expect("closed under faces");
        out.push((first as u32, 0));
        for skip in 1..k {
            let idx = self
                .descend(skip - 1, prefix[skip - 1], &simplex[skip + 1..])
                .expect("closed under faces");
            out.push((idx as u32, skip));
        }
        out.sort_unstable();
    }

    /// Every codimension-one face of every stored simplex is stored.
    pub fn is_closed_under_faces(&self) -> bool {
        let mut face = Vec::new();
        (1..self.levels.len()).all(|dim| {
            self.simplices(dim).all(|s| {
                (0..s.len()).all(|skip| {
                    face.clear();
                    face.extend(
                        s.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != skip)
                            .map(|(_, v)| *v),
                    );
                    self.index_of(&face).is_some()
                })
            })
        })
    }
}

/// The order complex of a finite poset: one vertex per list position, one
/// simplex per nonempty chain.
///
/// `leq` must be a partial order on `elements`; reflexivity, antisymmetry
/// and transitivity are checked.
pub fn order_complex<E>(elements: &[E], leq: impl Fn(&E, &E) -> bool) -> Result<SimplicialComplex> {
    let n = elements.len();
    if n > u32::MAX as usize {
        return Err(Error::invalid("poset too large"));
    }
    let mut less = vec![false; n * n];
    for i in 0..n {
        if !leq(&elements[i], &elements[i]) {
            return Err(Error::invalid(format!(
                "order is not reflexive at position {i}"
            )));
        }
        for j in 0..n {
            if i != j && leq(&elements[i], &elements[j]) {
                less[i * n + j] = true;
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if less[i * n + j] && less[j * n + i] {
                return Err(Error::invalid(format!(
                    "order is not antisymmetric at positions {i}, {j}"
                )));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !less[i * n + j] {
                continue;
            }
            for k in 0..n {
                if less[j * n + k] && !less[i * n + k] {
                    return Err(Error::invalid(format!(
                        "order is not transitive at positions {i}, {j}, {k}"
                    )));
                }
            }
        }
    }
    if n == 0 {
        return Ok(SimplicialComplex::empty());
    }

    // Keep the given order when it is already a linear extension; otherwise
    // sorting by the number of strict predecessors gives one.
    let identity = (0..n).all(|i| (0..i).all(|j| !less[i * n + j]));
    let mut ext: Vec<usize> = (0..n).collect();
    if !identity {
        let below: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| less[i * n + j]).count())
            .collect();
        ext.sort_by_key(|&v| below[v]);
    }

    let successors: Vec<Vec<u32>> = (0..n)
        .map(|a| {
            ((a + 1)..n)
                .filter(|&b| less[ext[a] * n + ext[b]])
                .map(|b| b as u32)
                .collect()
        })
        .collect();

    let mut levels: Vec<Vec<u32>> = Vec::new();
    let mut chain: Vec<u32> = Vec::with_capacity(n);
    // Depth-first over increasing chains: for the identity extension this
    // emits every level already in lexicographic order.
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        chain.clear();
        chain.push(root);
        emit(&mut levels, &chain);
        stack.push((root, 0));
        while let Some((v, next)) = stack.last_mut() {
            let succ = &successors[*v as usize];
            if *next < succ.len() {
                let w = succ[*next];
                *next += 1;
                chain.push(w);
                emit(&mut levels, &chain);
                stack.push((w, 0));
            } else {
                stack.pop();
                chain.pop();
            }
        }
    }

    if !identity {
        for (dim, level) in levels.iter_mut().enumerate() {
            let mut tuples: Vec<Vec<u32>> = level
                .chunks_exact(dim + 1)
                .map(|s| {
                    let mut t: Vec<u32> = s.iter().map(|&v| ext[v as usize] as u32).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            tuples.sort_unstable();
            *level = tuples.concat();
        }
    }
    Ok(SimplicialComplex::from_levels(n, levels))
}

fn emit(levels: &mut Vec<Vec<u32>>, chain: &[u32]) {
    let dim = chain.len() - 1;
    if levels.len() <= dim {
        levels.resize_with(dim + 1, Vec::new);
    }
    levels[dim].extend_from_slice(chain);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_poset_gives_empty_complex() {
        let k = order_complex::<u32>(&[], |a, b| a <= b).unwrap();
        assert!(k.is_empty());
        assert_eq!(k.dimension(), None);
    }

    #[test]
    fn antichain_has_only_vertices() {
        let k = order_complex(&[1, 2, 3, 4], |a, b| a == b).unwrap();
        assert_eq!(k.f_vector(), vec![4]);
    }

    #[test]
    fn interval_below_six_in_two_three() {
        // (0, 6) in ⟨2,3⟩ is {2, 3, 4} with 2 < 4 only.
        let k = order_complex(&[2u64, 3, 4], |a, b| a == b || (*a, *b) == (2, 4)).unwrap();
        assert_eq!(k.f_vector(), vec![3, 1]);
        assert_eq!(k.simplices(1).next().unwrap(), &[0, 2]);
    }

    #[test]
    fn chain_gives_full_simplex() {
        let k = order_complex(&[0u32, 1, 2, 3], |a, b| a <= b).unwrap();
        assert_eq!(k.f_vector(), vec![4, 6, 4, 1]);
        assert!(k.is_closed_under_faces());
    }

    #[test]
    fn non_linear_extension_input_is_relabelled_consistently() {
        // Reverse order of the list: position 0 is the top.
        let k = order_complex(&[3u32, 2, 1], |a, b| a <= b).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.index_of(&[0, 1, 2]), Some(0));
        assert!(k.is_closed_under_faces());
    }

    #[test]
    fn rejects_non_orders() {
        assert!(order_complex(&[1u32, 2], |a, b| a != b).is_err());
        assert!(order_complex(&[1u32, 2], |_, _| true).is_err());
        // 0 < 1 < 2 but not 0 < 2.
        let rel = |a: &u32, b: &u32| a == b || (*a, *b) == (0, 1) || (*a, *b) == (1, 2);
        assert!(order_complex(&[0u32, 1, 2], rel).is_err());
    }

    #[test]
    fn from_simplices_closes_faces() {
        let k = SimplicialComplex::from_simplices(3, [[0u32, 1, 2]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert!(SimplicialComplex::from_simplices(2, [[0u32, 0]]).is_err());
        assert!(SimplicialComplex::from_simplices(2, [[0u32, 5]]).is_err());
    }
}
