//! Finite posets and preorders given extensionally.
//!
//! The order is stored as its reflexive-transitive closure, one up-set per
//! element. Discrete orders (only `x <= x`) carry no matrix at all so that
//! large discrete object sets, such as a full tuple power, stay cheap.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[i]` holds every `j` with `i <= j`; `None` for the discrete order.
    up: Option<Vec<FixedBitSet>>,
}

impl Poset {
    pub fn discrete<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate element name `{n}`")));
            }
        }
        Ok(Poset {
            names,
            index,
            up: None,
        })
    }

    /// Builds the reflexive-transitive closure of `pairs`, each `(lo, hi)`
    /// meaning `lo <= hi`. Cycles are kept, so the result may be a preorder;
    /// see [`Poset::antisymmetry_violations`].
    pub fn from_pairs<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut p = Poset::discrete(names)?;
        let n = p.len();
        if pairs.iter().all(|&(a, b)| a == b && a < n) {
            return Ok(p);
        }
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(i);
                s
            })
            .collect();
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::input(format!(
                    "order pair ({lo}, {hi}) out of range for {n} elements"
                )));
            }
            up[lo].insert(hi);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        p.up = Some(up);
        p.normalize();
        Ok(p)
    }

    pub fn from_named_pairs<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        pairs: &[(String, String)],
    ) -> Result<Self> {
        let p = Poset::discrete(names)?;
        let mut idx = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            idx.push((p.require(lo)?, p.require(hi)?));
        }
        Poset::from_pairs(p.names, &idx)
    }

    /// Builds an order from a relation that is already reflexive and transitive.
    pub(crate) fn from_leq_fn<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut p = Poset::discrete(names)?;
        let n = p.len();
        let up = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if i == j || leq(i, j) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        p.up = Some(up);
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        if let Some(up) = &self.up {
            if up.iter().all(|row| row.count_ones(..) == 1) {
                self.up = None;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownName {
            kind: "element",
            name: name.to_string(),
        })
    }

    pub fn is_discrete(&self) -> bool {
        self.up.is_none()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        match &self.up {
            None => i == j,
            Some(up) => up[i].contains(j),
        }
    }

    /// Non-reflexive pairs `(lo, hi)` of the closed order, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let Some(up) = &self.up else {
            return Vec::new();
        };
        up.iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }

    /// Elements strictly below `i`.
    pub fn strictly_below(&self, i: usize) -> Vec<usize> {
        match &self.up {
            None => Vec::new(),
            Some(up) => (0..self.len())
                .filter(|&j| j != i && up[j].contains(i))
                .collect(),
        }
    }

    /// Pairs `i != j` with `i <= j` and `j <= i`, each reported once.
    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| i < j && self.leq(j, i))
            .collect()
    }

    /// Whether `f` (given on indices into `self`, landing in `target`) is monotone.
    pub fn monotone_violation(
        &self,
        target: &Poset,
        f: impl Fn(usize) -> usize,
    ) -> Option<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .find(|&(i, j)| !target.leq(f(i), f(j)))
    }
}
