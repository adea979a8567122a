//! Canonical printing with minimal parentheses.
//!
//! Expanded connectives are re-sugared where the core shape is recognised,
//! so `¬(¬a ∨ ¬b)` prints as `a & b` and a literal `⊞φ` expansion as `[+] φ`.

use super::{strip_guarded_box, Atom, Formula, Node, Polarity};

enum View<'a> {
    Bot,
    Top,
    Atom(&'a Atom),
    Not(&'a Formula),
    Or(&'a Formula, &'a Formula),
    And(&'a Formula, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Iff(&'a Formula, &'a Formula),
    Box(&'a Formula),
    Diamond(&'a Formula),
    Guarded(Polarity, Formula),
}

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const PREFIX: u8 = 5;
const ATOMIC: u8 = 6;

fn view(f: &Formula) -> View<'_> {
    match f.node() {
        Node::Bot => View::Bot,
        Node::Atom(a) => View::Atom(a),
        Node::Box(inner) => View::Box(inner),
        Node::Not(inner) => {
            if let Node::Bot = inner.node() {
                return View::Top;
            }
            if let Some((a, b)) = f.as_conjunction() {
                if let (Some((a1, a2)), Some((b1, b2))) = (a.as_implication(), b.as_implication()) {
                    if a1 == b2 && a2 == b1 {
                        return View::Iff(a1, a2);
                    }
                }
                return View::And(a, b);
            }
            if let Node::Box(boxed) = inner.node() {
                if let Node::Not(body) = boxed.node() {
                    return View::Diamond(body);
                }
            }
            View::Not(inner)
        }
        Node::Or(a, b) => {
            for polarity in [Polarity::Plus, Polarity::Minus] {
                if let Some(body) = strip_guarded_box(polarity, f) {
                    return View::Guarded(polarity, body);
                }
            }
            match a.node() {
                Node::Not(a) => View::Imp(a, b),
                _ => View::Or(a, b),
            }
        }
    }
}

fn precedence(v: &View<'_>) -> u8 {
    match v {
        View::Bot | View::Top | View::Atom(_) => ATOMIC,
        View::Not(_) | View::Box(_) | View::Diamond(_) | View::Guarded(..) => PREFIX,
        View::And(..) => AND,
        View::Or(..) => OR,
        View::Imp(..) => IMP,
        View::Iff(..) => IFF,
    }
}

fn write(f: &Formula, min_prec: u8, out: &mut String) {
    let v = view(f);
    let prec = precedence(&v);
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    match v {
        View::Bot => out.push_str("false"),
        View::Top => out.push_str("true"),
        View::Atom(a) => out.push_str(&a.to_string()),
        View::Not(g) => {
            out.push('~');
            write(g, PREFIX, out);
        }
        View::Box(g) => {
            out.push_str("[] ");
            write(g, PREFIX, out);
        }
        View::Diamond(g) => {
            out.push_str("<> ");
            write(g, PREFIX, out);
        }
        View::Guarded(polarity, g) => {
            out.push_str(match polarity {
                Polarity::Plus => "[+] ",
                Polarity::Minus => "[-] ",
            });
            write(&g, PREFIX, out);
        }
        View::And(a, b) => binary(a, " & ", b, AND, true, out),
        View::Or(a, b) => binary(a, " | ", b, OR, true, out),
        View::Imp(a, b) => binary(a, " -> ", b, IMP, false, out),
        View::Iff(a, b) => binary(a, " <-> ", b, IFF, false, out),
    }
    if parens {
        out.push(')');
    }
}

fn binary(a: &Formula, op: &str, b: &Formula, prec: u8, left_assoc: bool, out: &mut String) {
    let (lmin, rmin) = if left_assoc {
        (prec, prec + 1)
    } else {
        (prec + 1, prec)
    };
    write(a, lmin, out);
    out.push_str(op);
    write(b, rmin, out);
}

/// Prints `f` so that [`super::parse`] reads back a structurally equal formula.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, IFF, &mut out);
    out
}
