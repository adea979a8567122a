//! Refutation search over explicitly built symmetric trees.
//!
//! A branch is a tree of worlds labelled with NNF formulas. Creating a child
//! links it to its parent in both directions, so `□φ` at any world sends `φ`
//! to the parent as well as to the children. Every formula in a world at
//! distance `i` from the root has degree at most `deg - i`, so trees have
//! depth at most the degree of the input and the search terminates without
//! blocking.
//!
//! Branching is semantic (`a` | `¬a ∧ b`) with dependency-directed
//! backjumping: every label entry records the branch levels it rests on.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::rc::Rc;

use indexmap::IndexMap;

use super::nnf::{Arena, Id, Nnf};
use super::Logic;
use crate::kripke::{Frame, Model, PointedModel, State};

/// Sorted set of branch levels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Deps(Rc<Vec<u32>>);

impl Deps {
    fn single(level: u32) -> Deps {
        Deps(Rc::new(vec![level]))
    }

    fn contains(&self, level: u32) -> bool {
        self.0.binary_search(&level).is_ok()
    }

    fn without(&self, level: u32) -> Deps {
        Deps(Rc::new(
            self.0.iter().copied().filter(|&l| l != level).collect(),
        ))
    }

    fn union(&self, other: &Deps) -> Deps {
        if other.0.is_empty() || Rc::ptr_eq(&self.0, &other.0) {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Deps(Rc::new(out))
    }
}

#[derive(Debug, Clone)]
struct World {
    label: IndexMap<Id, Deps>,
    parent: Option<usize>,
    children: Vec<usize>,
    /// Branch levels the existence of this world rests on.
    exists: Deps,
}

impl World {
    fn new(parent: Option<usize>, exists: Deps) -> World {
        World {
            label: IndexMap::new(),
            parent,
            children: Vec::new(),
            exists,
        }
    }
}

#[derive(Debug, Clone)]
struct Branch {
    worlds: Vec<World>,
    queue: VecDeque<(usize, Id)>,
}

pub(crate) enum Outcome {
    Closed,
    Open(PointedModel),
    Exhausted,
}

pub(crate) struct Search<'a> {
    arena: &'a Arena,
    logic: Logic,
    budget: usize,
    spent: usize,
}

enum Step {
    Closed(Deps),
    Open(Branch),
    Exhausted,
}

impl<'a> Search<'a> {
    pub(crate) fn new(arena: &'a Arena, logic: Logic, budget: usize) -> Search<'a> {
        Search {
            arena,
            logic,
            budget,
            spent: 0,
        }
    }

    pub(crate) fn spent(&self) -> usize {
        self.spent
    }

    /// Tries to build a model of `root` (an NNF id).
    pub(crate) fn run(&mut self, root: Id) -> Outcome {
        let mut branch = Branch {
            worlds: vec![World::new(None, Deps::default())],
            queue: VecDeque::new(),
        };
        if self.add(&mut branch, 0, root, &Deps::default()).is_err() {
            return Outcome::Closed;
        }
        match self.search(branch, 0) {
            Step::Closed(_) => Outcome::Closed,
            Step::Exhausted => Outcome::Exhausted,
            Step::Open(branch) => Outcome::Open(self.extract(&branch)),
        }
    }

    fn tick(&mut self) -> bool {
        self.spent += 1;
        self.spent <= self.budget
    }

    fn search(&mut self, mut branch: Branch, level: u32) -> Step {
        match self.saturate(&mut branch) {
            Err(clash) => return Step::Closed(clash),
            Ok(false) => return Step::Exhausted,
            Ok(true) => {}
        }
        let Some((w, a, b, deps)) = self.pick_disjunction(&branch) else {
            return Step::Open(branch);
        };
        if !self.tick() {
            return Step::Exhausted;
        }

        let mut left = branch.clone();
        let left_clash = match self.add(&mut left, w, a, &deps.union(&Deps::single(level))) {
            Err(clash) => clash,
            Ok(()) => match self.search(left, level + 1) {
                Step::Closed(clash) => clash,
                other => return other,
            },
        };
        if !left_clash.contains(level) {
            return Step::Closed(left_clash);
        }
        let because = deps.union(&left_clash.without(level));
        let neg_a = self.arena.neg(a);
        if let Err(clash) = self.add(&mut branch, w, neg_a, &because) {
            return Step::Closed(clash);
        }
        if let Err(clash) = self.add(&mut branch, w, b, &because) {
            return Step::Closed(clash);
        }
        self.search(branch, level + 1)
    }

    fn neighbours(&self, branch: &Branch, w: usize) -> Vec<usize> {
        let world = &branch.worlds[w];
        let mut out: Vec<usize> = world.parent.into_iter().collect();
        out.extend_from_slice(&world.children);
        if self.logic == Logic::Ktb {
            out.push(w);
        }
        out
    }

    fn add(&self, branch: &mut Branch, w: usize, f: Id, deps: &Deps) -> Result<(), Deps> {
        let world = &mut branch.worlds[w];
        if world.label.contains_key(&f) {
            return Ok(());
        }
        let deps = deps.union(&world.exists);
        if self.arena.node(f) == Nnf::False {
            return Err(deps);
        }
        if let Some(other) = world.label.get(&self.arena.neg(f)) {
            return Err(deps.union(other));
        }
        world.label.insert(f, deps);
        branch.queue.push_back((w, f));
        Ok(())
    }

    /// Applies every deterministic rule to a fixpoint. `Ok(false)` means the budget ran out.
    fn saturate(&mut self, branch: &mut Branch) -> Result<bool, Deps> {
        loop {
            while let Some((w, f)) = branch.queue.pop_front() {
                self.expand(branch, w, f)?;
            }
            if self.propagate_units(branch)? {
                continue;
            }
            match self.witness_diamonds(branch)? {
                None => return Ok(false),
                Some(true) => continue,
                Some(false) => return Ok(true),
            }
        }
    }

    fn expand(&self, branch: &mut Branch, w: usize, f: Id) -> Result<(), Deps> {
        let deps = branch.worlds[w].label[&f].clone();
        match self.arena.node(f) {
            Nnf::And(a, b) => {
                self.add(branch, w, a, &deps)?;
                self.add(branch, w, b, &deps)?;
            }
            Nnf::Or(a, b) => {
                if let Some((g, d)) = self.unit(branch, w, a, b, &deps) {
                    self.add(branch, w, g, &d)?;
                }
            }
            Nnf::Box(a) => {
                for v in self.neighbours(branch, w) {
                    self.add(branch, v, a, &deps)?;
                }
            }
            Nnf::True | Nnf::False | Nnf::Lit(..) | Nnf::Dia(_) => {}
        }
        Ok(())
    }

    /// The disjunct forced by the complement of the other one, if any.
    fn unit(&self, branch: &Branch, w: usize, a: Id, b: Id, deps: &Deps) -> Option<(Id, Deps)> {
        let label = &branch.worlds[w].label;
        if label.contains_key(&a) || label.contains_key(&b) {
            return None;
        }
        if let Some(d) = label.get(&self.arena.neg(a)) {
            return Some((b, deps.union(d)));
        }
        if let Some(d) = label.get(&self.arena.neg(b)) {
            return Some((a, deps.union(d)));
        }
        None
    }

    fn propagate_units(&self, branch: &mut Branch) -> Result<bool, Deps> {
        let mut forced = Vec::new();
        for (w, world) in branch.worlds.iter().enumerate() {
            for (&f, deps) in &world.label {
                if let Nnf::Or(a, b) = self.arena.node(f) {
                    if let Some((g, d)) = self.unit(branch, w, a, b, deps) {
                        forced.push((w, g, d));
                    }
                }
            }
        }
        let changed = !forced.is_empty();
        for (w, g, d) in forced {
            self.add(branch, w, g, &d)?;
        }
        Ok(changed)
    }

    /// Creates a child for every unwitnessed diamond, and a successor for a
    /// lonely root under seriality. `None` means the budget ran out.
    fn witness_diamonds(&mut self, branch: &mut Branch) -> Result<Option<bool>, Deps> {
        let mut created = false;
        let mut w = 0;
        while w < branch.worlds.len() {
            let pending: Vec<(Id, Deps)> = branch.worlds[w]
                .label
                .iter()
                .filter_map(|(&f, d)| match self.arena.node(f) {
                    Nnf::Dia(a) => Some((a, d.clone())),
                    _ => None,
                })
                .collect();
            for (a, deps) in pending {
                let witnessed = self
                    .neighbours(branch, w)
                    .into_iter()
                    .any(|v| branch.worlds[v].label.contains_key(&a));
                if witnessed {
                    continue;
                }
                if !self.tick() {
                    return Ok(None);
                }
                let child = self.create_child(branch, w, deps.clone())?;
                self.add(branch, child, a, &deps)?;
                created = true;
            }
            if self.logic == Logic::Kdb
                && branch.worlds[w].parent.is_none()
                && branch.worlds[w].children.is_empty()
            {
                if !self.tick() {
                    return Ok(None);
                }
                self.create_child(branch, w, Deps::default())?;
                created = true;
            }
            w += 1;
        }
        Ok(Some(created))
    }

    fn create_child(&self, branch: &mut Branch, w: usize, exists: Deps) -> Result<usize, Deps> {
        let child = branch.worlds.len();
        let exists = exists.union(&branch.worlds[w].exists);
        branch.worlds.push(World::new(Some(w), exists));
        branch.worlds[w].children.push(child);
        let boxes: Vec<(Id, Deps)> = branch.worlds[w]
            .label
            .iter()
            .filter_map(|(&f, d)| match self.arena.node(f) {
                Nnf::Box(a) => Some((a, d.clone())),
                _ => None,
            })
            .collect();
        for (a, d) in boxes {
            self.add(branch, child, a, &d)?;
        }
        Ok(child)
    }

    fn pick_disjunction(&self, branch: &Branch) -> Option<(usize, Id, Id, Deps)> {
        for (w, world) in branch.worlds.iter().enumerate() {
            for (&f, deps) in &world.label {
                if let Nnf::Or(a, b) = self.arena.node(f) {
                    if !world.label.contains_key(&a) && !world.label.contains_key(&b) {
                        return Some((w, a, b, deps.clone()));
                    }
                }
            }
        }
        None
    }

    fn extract(&self, branch: &Branch) -> PointedModel {
        let n = branch.worlds.len();
        let mut edges = Vec::new();
        for (w, world) in branch.worlds.iter().enumerate() {
            for &c in &world.children {
                edges.push((w, c));
                edges.push((c, w));
            }
            if self.logic == Logic::Ktb {
                edges.push((w, w));
            }
        }
        let mut valuation: BTreeMap<_, BTreeSet<State>> = BTreeMap::new();
        for (w, world) in branch.worlds.iter().enumerate() {
            for &f in world.label.keys() {
                if let Nnf::Lit(atom, true) = self.arena.node(f) {
                    valuation
                        .entry(self.arena.atom(atom).clone())
                        .or_default()
                        .insert(w);
                }
            }
        }
        let frame = Frame::new(n, edges).expect("tableau worlds are in range");
        let model = Model::new(frame, valuation).expect("tableau valuation is in range");
        PointedModel::new(model, 0).expect("root world exists")
    }
}
