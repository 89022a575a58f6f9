use super::{Formula, Term};

const T_SUM: u8 = 1;
const T_APP: u8 = 2;
const T_UNARY: u8 = 3;

const F_IMP: u8 = 1;
const F_OR: u8 = 2;
const F_AND: u8 = 3;
const F_UNIT: u8 = 4;

/// Prints with the fewest parentheses the grammar needs.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    term_at(t, T_SUM, &mut out);
    out
}

/// Prints with the fewest parentheses the grammar needs.
pub fn print_formula(a: &Formula) -> String {
    let mut out = String::new();
    formula_at(a, F_IMP, &mut out);
    out
}

fn term_at(t: &Term, min: u8, out: &mut String) {
    let own = match t {
        Term::Sum(..) => T_SUM,
        Term::App(..) => T_APP,
        _ => T_UNARY,
    };
    let wrap = own < min;
    if wrap {
        out.push('(');
    }
    match t {
        Term::Constant(n) | Term::Variable(n) => out.push_str(n),
        Term::Sum(l, r) => {
            term_at(l, T_SUM, out);
            out.push_str(" + ");
            term_at(r, T_APP, out);
        }
        Term::App(l, r) => {
            term_at(l, T_APP, out);
            out.push('.');
            term_at(r, T_UNARY, out);
        }
        Term::Bang(inner) => {
            out.push('!');
            term_at(inner, T_UNARY, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

fn formula_at(a: &Formula, min: u8, out: &mut String) {
    let own = match a {
        Formula::Implies(..) => F_IMP,
        Formula::Or(..) => F_OR,
        Formula::And(..) => F_AND,
        _ => F_UNIT,
    };
    let wrap = own < min;
    if wrap {
        out.push('(');
    }
    match a {
        Formula::Atom(p) => out.push_str(p),
        Formula::Falsum => out.push_str("_|_"),
        Formula::Implies(l, r) => {
            formula_at(l, F_OR, out);
            out.push_str(" -> ");
            formula_at(r, F_IMP, out);
        }
        Formula::Or(l, r) => {
            formula_at(l, F_OR, out);
            out.push_str(" \\/ ");
            formula_at(r, F_AND, out);
        }
        Formula::And(l, r) => {
            formula_at(l, F_AND, out);
            out.push_str(" /\\ ");
            formula_at(r, F_UNIT, out);
        }
        Formula::Just(t, body) => {
            term_at(t, T_SUM, out);
            out.push(':');
            formula_at(body, F_UNIT, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

/// Prints every compound subterm inside parentheses.
pub fn print_term_full(t: &Term) -> String {
    match t {
        Term::Constant(n) | Term::Variable(n) => n.clone(),
        Term::Sum(l, r) => format!("({} + {})", print_term_full(l), print_term_full(r)),
        Term::App(l, r) => format!("({}.{})", print_term_full(l), print_term_full(r)),
        Term::Bang(inner) => format!("!{}", print_term_full(inner)),
    }
}

/// Prints every compound subformula inside parentheses.
pub fn print_formula_full(a: &Formula) -> String {
    match a {
        Formula::Atom(p) => p.clone(),
        Formula::Falsum => "_|_".into(),
        Formula::Implies(l, r) => format!("({} -> {})", print_formula_full(l), print_formula_full(r)),
        Formula::Or(l, r) => format!("({} \\/ {})", print_formula_full(l), print_formula_full(r)),
        Formula::And(l, r) => format!("({} /\\ {})", print_formula_full(l), print_formula_full(r)),
        Formula::Just(t, body) => format!("({}:{})", print_term_full(t), print_formula_full(body)),
    }
}
