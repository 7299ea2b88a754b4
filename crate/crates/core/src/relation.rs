//! Sorted domains, arities, tuples and closed-below relations.
//!
//! Values are stored as indices into their sort's poset. A tuple over an
//! arity `U` lists one value per sort of `U`, in the domain's sort order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{product_size, Cap, Error, Result};
use crate::order::Poset;

/// An `N`-indexed family of finite value posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedDomain {
    sorts: Vec<String>,
    sort_index: HashMap<String, usize>,
    values: Vec<Poset>,
}

/// A set of sort indices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Arity(Vec<usize>);

impl Arity {
    pub fn new(sorts: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = sorts.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Arity(v)
    }

    pub fn empty() -> Self {
        Arity(Vec::new())
    }

    pub fn sorts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, sort: usize) -> bool {
        self.0.binary_search(&sort).is_ok()
    }

    pub fn is_subset(&self, other: &Arity) -> bool {
        self.0.iter().all(|s| other.contains(*s))
    }

    pub fn union(&self, other: &Arity) -> Arity {
        Arity::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn intersection(&self, other: &Arity) -> Arity {
        Arity(
            self.0
                .iter()
                .copied()
                .filter(|s| other.contains(*s))
                .collect(),
        )
    }

    /// Position of each sort of `self` inside `larger`. `self` must be a subset.
    pub(crate) fn positions_in(&self, larger: &Arity) -> Vec<usize> {
        self.0
            .iter()
            .map(|s| larger.0.binary_search(s).expect("arity is a subset"))
            .collect()
    }
}

/// A tuple tagged with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    pub arity: Arity,
    pub values: Vec<usize>,
}

impl Tuple {
    pub fn new(arity: Arity, values: Vec<usize>) -> Result<Self> {
        if arity.len() != values.len() {
            return Err(Error::input(format!(
                "tuple has {} values for an arity of {} sorts",
                values.len(),
                arity.len()
            )));
        }
        Ok(Tuple { arity, values })
    }

    /// The empty tuple, of empty arity.
    pub fn empty() -> Self {
        Tuple {
            arity: Arity::empty(),
            values: Vec::new(),
        }
    }
}

/// Restriction of `x` to the sorts of `onto`.
pub fn project_tuple(x: &Tuple, onto: &Arity) -> Result<Tuple> {
    if !onto.is_subset(&x.arity) {
        return Err(Error::input(
            "projection target is not a subset of the tuple's arity",
        ));
    }
    Ok(Tuple {
        arity: onto.clone(),
        values: project_values(&x.values, &onto.positions_in(&x.arity)),
    })
}

pub(crate) fn project_values(values: &[usize], positions: &[usize]) -> Vec<usize> {
    positions.iter().map(|&p| values[p]).collect()
}

/// Meronymy order: `y <= x` when `x` is a projection of `y`. The empty
/// tuple is above everything.
pub fn tuple_leq(y: &Tuple, x: &Tuple) -> bool {
    x.arity.is_subset(&y.arity)
        && project_values(&y.values, &x.arity.positions_in(&y.arity)) == x.values
}

/// A set of tuples sharing one arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Relation {
    arity: Arity,
    tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn new(arity: Arity, tuples: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for t in tuples {
            if t.len() != arity.len() {
                return Err(Error::input(format!(
                    "tuple has {} values for an arity of {} sorts",
                    t.len(),
                    arity.len()
                )));
            }
            set.insert(t);
        }
        Ok(Relation { arity, tuples: set })
    }

    pub fn empty(arity: Arity) -> Self {
        Relation {
            arity,
            tuples: BTreeSet::new(),
        }
    }

    pub fn arity(&self) -> &Arity {
        &self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, values: &[usize]) -> bool {
        self.tuples.contains(values)
    }

    /// Tuples in canonical (lexicographic value-index) order.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tuples.iter()
    }

    pub fn tuples(&self) -> impl Iterator<Item = Tuple> + '_ {
        self.tuples.iter().map(|v| Tuple {
            arity: self.arity.clone(),
            values: v.clone(),
        })
    }

    pub(crate) fn insert(&mut self, values: Vec<usize>) {
        debug_assert_eq!(values.len(), self.arity.len());
        self.tuples.insert(values);
    }

    /// Same-arity inclusion.
    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.tuples.is_subset(&other.tuples)
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_arity(other)?;
        Ok(Relation {
            arity: self.arity.clone(),
            tuples: self.tuples.union(&other.tuples).cloned().collect(),
        })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_arity(other)?;
        Ok(Relation {
            arity: self.arity.clone(),
            tuples: self.tuples.intersection(&other.tuples).cloned().collect(),
        })
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.same_arity(other)?;
        Ok(Relation {
            arity: self.arity.clone(),
            tuples: self.tuples.difference(&other.tuples).cloned().collect(),
        })
    }

    fn same_arity(&self, other: &Relation) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::input("relations have different arities"));
        }
        Ok(())
    }

    /// Image under projection onto `onto` (a subset of this relation's arity).
    pub fn project(&self, onto: &Arity) -> Result<Relation> {
        if !onto.is_subset(&self.arity) {
            return Err(Error::input(
                "projection target is not a subset of the relation's arity",
            ));
        }
        let pos = onto.positions_in(&self.arity);
        Ok(Relation {
            arity: onto.clone(),
            tuples: self
                .tuples
                .iter()
                .map(|t| project_values(t, &pos))
                .collect(),
        })
    }
}

/// `S:V <= R:U`: `U ⊆ V` and the projection of `S` onto `U` lies inside `R`.
pub fn projective_containment(s: &Relation, r: &Relation) -> bool {
    if !r.arity.is_subset(&s.arity) {
        return false;
    }
    let pos = r.arity.positions_in(&s.arity);
    s.tuples
        .iter()
        .all(|t| r.tuples.contains(&project_values(t, &pos)))
}

impl SortedDomain {
    pub fn new<S: Into<String>>(sorts: impl IntoIterator<Item = (S, Poset)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut values = Vec::new();
        let mut sort_index = HashMap::new();
        for (i, (name, poset)) in sorts.into_iter().enumerate() {
            let name = name.into();
            if sort_index.insert(name.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate sort `{name}`")));
            }
            names.push(name);
            values.push(poset);
        }
        Ok(SortedDomain {
            sorts: names,
            sort_index,
            values,
        })
    }

    /// Every sort gets the same discrete value list.
    pub fn uniform<S: AsRef<str>>(sorts: &[S], values: &[S]) -> Result<Self> {
        let vals = Poset::discrete(values.iter().map(|v| v.as_ref().to_string()))?;
        SortedDomain::new(sorts.iter().map(|s| (s.as_ref().to_string(), vals.clone())))
    }

    pub fn num_sorts(&self) -> usize {
        self.sorts.len()
    }

    pub fn sort_names(&self) -> &[String] {
        &self.sorts
    }

    pub fn sort_name(&self, a: usize) -> &str {
        &self.sorts[a]
    }

    pub fn sort_index(&self, name: &str) -> Result<usize> {
        self.sort_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownName {
                kind: "sort",
                name: name.to_string(),
            })
    }

    pub fn values(&self, a: usize) -> &Poset {
        &self.values[a]
    }

    pub fn is_discrete(&self) -> bool {
        self.values.iter().all(Poset::is_discrete)
    }

    pub fn full_arity(&self) -> Arity {
        Arity((0..self.sorts.len()).collect())
    }

    pub fn arity_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Arity> {
        let idx = names
            .iter()
            .map(|n| self.sort_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arity::new(idx))
    }

    pub fn power_size(&self, u: &Arity) -> usize {
        product_size(u.sorts().iter().map(|&a| self.values[a].len()))
    }

    /// `D^U` with tuples in lexicographic order (first sort most significant).
    pub fn power(&self, u: &Arity, cap: Cap) -> Result<Relation> {
        cap.check(self.power_size(u), "power")?;
        Ok(Relation {
            arity: u.clone(),
            tuples: self.power_iter(u).collect(),
        })
    }

    /// Lazy enumeration of `D^U` in lexicographic order. Does not check the cap.
    pub fn power_iter(&self, u: &Arity) -> PowerIter {
        let radices: Vec<usize> = u.sorts().iter().map(|&a| self.values[a].len()).collect();
        let done = radices.contains(&0);
        PowerIter {
            current: vec![0; radices.len()],
            radices,
            done,
        }
    }

    /// Index of a full tuple in the lexicographic enumeration of `D^N`.
    pub fn full_tuple_index(&self, values: &[usize]) -> usize {
        values
            .iter()
            .zip(&self.values)
            .fold(0, |acc, (&v, p)| acc * p.len() + v)
    }

    pub fn full_tuple_at(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.values.len()];
        for (slot, p) in out.iter_mut().zip(&self.values).rev() {
            *slot = index % p.len();
            index /= p.len();
        }
        out
    }

    /// Componentwise value order on tuples of one arity.
    pub fn values_leq(&self, u: &Arity, lo: &[usize], hi: &[usize]) -> bool {
        u.sorts()
            .iter()
            .zip(lo.iter().zip(hi))
            .all(|(&a, (&x, &y))| self.values[a].leq(x, y))
    }

    pub fn value_index(&self, a: usize, name: &str) -> Result<usize> {
        self.values[a]
            .index_of(name)
            .ok_or_else(|| Error::UnknownName {
                kind: "value",
                name: format!("{name} (sort {})", self.sorts[a]),
            })
    }

    /// `(v1,...,vk)` using value names.
    pub fn render_values(&self, u: &Arity, values: &[usize]) -> String {
        let parts: Vec<&str> = u
            .sorts()
            .iter()
            .zip(values)
            .map(|(&a, &v)| self.values[a].name(v))
            .collect();
        format!("({})", parts.join(","))
    }

    /// `{a1=v1,...}`; names a tuple together with its arity.
    pub fn render_tagged(&self, t: &Tuple) -> String {
        let parts: Vec<String> = t
            .arity
            .sorts()
            .iter()
            .zip(&t.values)
            .map(|(&a, &v)| format!("{}={}", self.sorts[a], self.values[a].name(v)))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn render_arity(&self, u: &Arity) -> String {
        let parts: Vec<&str> = u.sorts().iter().map(|&a| self.sorts[a].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Parses a rendered `(v1,...,vk)` tuple over `u`.
    pub fn parse_values(&self, u: &Arity, text: &str) -> Result<Vec<usize>> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::input(format!("`{text}` is not a parenthesized tuple")))?;
        let parts: Vec<&str> = if inner.is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(str::trim).collect()
        };
        if parts.len() != u.len() {
            return Err(Error::input(format!(
                "`{text}` has {} values for an arity of {} sorts",
                parts.len(),
                u.len()
            )));
        }
        u.sorts()
            .iter()
            .zip(parts)
            .map(|(&a, p)| self.value_index(a, p))
            .collect()
    }

    /// Pairs `(present, missing)` witnessing that `r` is not closed below.
    pub fn closed_below_violations(&self, r: &Relation) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for t in &r.tuples {
            for (pos, &a) in r.arity.sorts().iter().enumerate() {
                for lower in self.values[a].strictly_below(t[pos]) {
                    let mut y = t.clone();
                    y[pos] = lower;
                    if !r.tuples.contains(&y) {
                        out.push((t.clone(), y));
                    }
                }
            }
        }
        out
    }

    /// Smallest closed-below relation containing `r`.
    pub fn close_below(&self, r: &Relation) -> Relation {
        let mut out = r.clone();
        let mut stack: Vec<Vec<usize>> = r.tuples.iter().cloned().collect();
        while let Some(t) = stack.pop() {
            for (pos, &a) in r.arity.sorts().iter().enumerate() {
                for lower in self.values[a].strictly_below(t[pos]) {
                    let mut y = t.clone();
                    y[pos] = lower;
                    if out.tuples.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
        }
        out
    }
}

/// Mixed-radix counter over a tuple power.
pub struct PowerIter {
    radices: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl Iterator for PowerIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut pos = self.radices.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.radices[pos] {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}

/// All tuples over the union arity whose projections land in every input
/// relation. This is the infimum of the family under projective containment.
pub fn natural_join(rels: &[&Relation], cap: Cap) -> Result<Relation> {
    let (first, rest) = rels
        .split_first()
        .ok_or_else(|| Error::input("natural join of an empty family"))?;
    let mut acc = (*first).clone();
    for r in rest {
        acc = join_pair(&acc, r, cap)?;
    }
    Ok(acc)
}

fn join_pair(left: &Relation, right: &Relation, cap: Cap) -> Result<Relation> {
    let shared = left.arity.intersection(&right.arity);
    let union = left.arity.union(&right.arity);
    let left_key = shared.positions_in(&left.arity);
    let right_key = shared.positions_in(&right.arity);

    let mut index: HashMap<Vec<usize>, Vec<&Vec<usize>>> = HashMap::new();
    for t in &right.tuples {
        index
            .entry(project_values(t, &right_key))
            .or_default()
            .push(t);
    }

    // Where each output column comes from.
    let sources: Vec<(bool, usize)> = union
        .sorts()
        .iter()
        .map(|s| match left.arity.0.binary_search(s) {
            Ok(p) => (true, p),
            Err(_) => (
                false,
                right.arity.0.binary_search(s).expect("sort in union"),
            ),
        })
        .collect();

    let mut out = Relation::empty(union);
    for l in &left.tuples {
        let Some(matches) = index.get(&project_values(l, &left_key)) else {
            continue;
        };
        for r in matches {
            let joined = sources
                .iter()
                .map(|&(from_left, p)| if from_left { l[p] } else { r[p] })
                .collect();
            out.tuples.insert(joined);
            cap.check(out.len(), "natural join")?;
        }
    }
    Ok(out)
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
