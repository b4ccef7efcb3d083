use crate::error::TreeError;

/// Most vertices for which chain extensions are enumerated.
pub const EXTENSION_CAP: usize = 8;

/// A rooted tree on vertices `0..m` with root `0` and `parents[i] < i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    parents: Vec<Option<usize>>,
}

impl RootedTree {
    pub fn new(parents: Vec<Option<usize>>) -> Result<RootedTree, TreeError> {
        match parents.first() {
            None => return Err(TreeError::InvalidTree("a tree needs a root".into())),
            Some(Some(_)) => {
                return Err(TreeError::InvalidTree("vertex 0 must be the root".into()))
            }
            Some(None) => {}
        }
        for (i, p) in parents.iter().enumerate().skip(1) {
            match p {
                Some(p) if *p < i => {}
                Some(p) => {
                    return Err(TreeError::InvalidTree(format!(
                        "parent {p} of vertex {i} does not precede it"
                    )))
                }
                None => {
                    return Err(TreeError::InvalidTree(format!("vertex {i} has no parent")))
                }
            }
        }
        Ok(RootedTree { parents })
    }

    /// Parses the JSON-style encoding where the root's parent is `-1`.
    pub fn from_signed(parents: &[i64]) -> Result<RootedTree, TreeError> {
        let converted = parents
            .iter()
            .map(|&p| usize::try_from(p).ok())
            .collect::<Vec<_>>();
        if parents.iter().skip(1).any(|&p| p < 0) || parents.first().is_some_and(|&p| p != -1) {
            return Err(TreeError::InvalidTree(format!(
                "expected -1 for the root and nonnegative parents elsewhere, got {parents:?}"
            )));
        }
        RootedTree::new(converted)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.parents
            .iter()
            .map(|p| p.map_or(-1, |p| p as i64))
            .collect()
    }

    pub fn single() -> RootedTree {
        RootedTree {
            parents: vec![None],
        }
    }

    pub fn chain(m: usize) -> RootedTree {
        assert!(m > 0);
        RootedTree {
            parents: (0..m).map(|i| i.checked_sub(1)).collect(),
        }
    }

    /// A root with `k` leaves.
    pub fn star(k: usize) -> RootedTree {
        RootedTree {
            parents: std::iter::once(None)
                .chain((0..k).map(|_| Some(0)))
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parents.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parents[v]
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (v + 1..self.parents.len())
            .filter(|&c| self.parents[c] == Some(v))
            .collect()
    }

    /// Every parent array with at most `max_vertices` vertices, in order of
    /// size and then lexicographically. Isomorphic trees appear repeatedly.
    pub fn all_up_to(max_vertices: usize) -> Vec<RootedTree> {
        let mut out = Vec::new();
        let mut level = vec![vec![None]];
        for m in 1..=max_vertices {
            out.extend(level.iter().map(|p| RootedTree { parents: p.clone() }));
            if m == max_vertices {
                break;
            }
            level = level
                .into_iter()
                .flat_map(|p| {
                    (0..m).map(move |q| {
                        let mut next = p.clone();
                        next.push(Some(q));
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// All linear extensions, most significant vertex first: every vertex
    /// follows its parent. Lexicographic order of the sequences.
    pub fn chain_extensions(&self) -> Result<Vec<Vec<usize>>, TreeError> {
        let m = self.vertex_count();
        if m > EXTENSION_CAP {
            return Err(TreeError::TooLarge {
                vertices: m,
                cap: EXTENSION_CAP,
            });
        }
        let mut out = Vec::new();
        let mut placed = vec![false; m];
        let mut seq = Vec::with_capacity(m);
        self.extend(&mut placed, &mut seq, &mut out);
        Ok(out)
    }

    fn extend(&self, placed: &mut [bool], seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if seq.len() == placed.len() {
            out.push(seq.clone());
            return;
        }
        for v in 0..placed.len() {
            let ready = !placed[v] && self.parents[v].is_none_or(|p| placed[p]);
            if ready {
                placed[v] = true;
                seq.push(v);
                self.extend(placed, seq, out);
                seq.pop();
                placed[v] = false;
            }
        }
    }
}
