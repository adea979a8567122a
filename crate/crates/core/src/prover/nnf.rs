//! Hash-consed negation normal form, closed under negation.

use std::collections::HashMap;

use crate::formula::{Atom, Formula, Node};

pub(crate) type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Nnf {
    True,
    False,
    Lit(u32, bool),
    And(Id, Id),
    Or(Id, Id),
    Box(Id),
    Dia(Id),
}

#[derive(Debug, Default)]
pub(crate) struct Arena {
    nodes: Vec<Nnf>,
    ids: HashMap<Nnf, Id>,
    neg: Vec<Option<Id>>,
    atoms: Vec<Atom>,
    atom_ids: HashMap<Atom, u32>,
}

impl Arena {
    /// Builds the arena for `f` and returns it with the id of `nnf(¬f)`.
    pub(crate) fn for_refutation(f: &Formula) -> (Arena, Id) {
        let mut arena = Arena::default();
        let mut memo = HashMap::new();
        let root = arena.convert(f, false, &mut memo);
        let mut i = 0;
        while i < arena.nodes.len() {
            arena.negate(i as Id);
            i += 1;
        }
        (arena, root)
    }

    pub(crate) fn node(&self, id: Id) -> Nnf {
        self.nodes[id as usize]
    }

    pub(crate) fn neg(&self, id: Id) -> Id {
        self.neg[id as usize].expect("arena is closed under negation")
    }

    pub(crate) fn atom(&self, index: u32) -> &Atom {
        &self.atoms[index as usize]
    }

    fn intern(&mut self, node: Nnf) -> Id {
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.neg.push(None);
        self.ids.insert(node, id);
        id
    }

    fn atom_index(&mut self, atom: &Atom) -> u32 {
        if let Some(&i) = self.atom_ids.get(atom) {
            return i;
        }
        let i = self.atoms.len() as u32;
        self.atoms.push(atom.clone());
        self.atom_ids.insert(atom.clone(), i);
        i
    }

    /// NNF of `f` when `positive`, of `¬f` otherwise.
    fn convert(
        &mut self,
        f: &Formula,
        positive: bool,
        memo: &mut HashMap<(*const Node, bool), Id>,
    ) -> Id {
        if let Some(&id) = memo.get(&(f.ptr(), positive)) {
            return id;
        }
        let id = match f.node() {
            Node::Bot => self.intern(if positive { Nnf::False } else { Nnf::True }),
            Node::Atom(a) => {
                let index = self.atom_index(a);
                self.intern(Nnf::Lit(index, positive))
            }
            Node::Not(g) => self.convert(g, !positive, memo),
            Node::Or(a, b) => {
                let (a, b) = (
                    self.convert(a, positive, memo),
                    self.convert(b, positive, memo),
                );
                self.intern(if positive {
                    Nnf::Or(a, b)
                } else {
                    Nnf::And(a, b)
                })
            }
            Node::Box(g) => {
                let g = self.convert(g, positive, memo);
                self.intern(if positive { Nnf::Box(g) } else { Nnf::Dia(g) })
            }
        };
        memo.insert((f.ptr(), positive), id);
        id
    }

    fn negate(&mut self, id: Id) -> Id {
        if let Some(n) = self.neg[id as usize] {
            return n;
        }
        let negated = match self.node(id) {
            Nnf::True => Nnf::False,
            Nnf::False => Nnf::True,
            Nnf::Lit(a, pos) => Nnf::Lit(a, !pos),
            Nnf::And(a, b) => Nnf::Or(self.negate(a), self.negate(b)),
            Nnf::Or(a, b) => Nnf::And(self.negate(a), self.negate(b)),
            Nnf::Box(a) => Nnf::Dia(self.negate(a)),
            Nnf::Dia(a) => Nnf::Box(self.negate(a)),
        };
        let n = self.intern(negated);
        self.neg[id as usize] = Some(n);
        self.neg[n as usize] = Some(id);
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn negation_is_an_involution() {
        let f = parse("[+] (x -> <> #p) & ~[] false").unwrap();
        let (arena, root) = Arena::for_refutation(&f);
        for id in 0..arena.nodes.len() as Id {
            assert_eq!(arena.neg(arena.neg(id)), id);
            assert_ne!(arena.neg(id), id);
        }
        assert!(matches!(arena.node(root), Nnf::Or(..)));
    }

    #[test]
    fn shared_subterms_are_interned_once() {
        let x = parse("x").unwrap();
        let f = x.and(&x).or(&x.and(&x));
        let (arena, _) = Arena::for_refutation(&f);
        // x, ¬x, x∧x / ¬x∨¬x, and the root pair
        assert_eq!(arena.nodes.len(), 6);
    }
}
