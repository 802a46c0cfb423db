use super::Term;
use crate::types::print_type;

const BINDER: u8 = 0;
const APP: u8 = 1;
const ATOM: u8 = 2;

fn level(t: &Term) -> u8 {
    match t {
        Term::Var(_) | Term::Star | Term::Pair(..) => ATOM,
        Term::App(..) | Term::TApp(..) | Term::Proj(..) => APP,
        _ => BINDER,
    }
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write(t, BINDER, &mut out);
    out
}

fn write(t: &Term, ctx: u8, out: &mut String) {
    let paren = level(t) < ctx;
    if paren {
        out.push('(');
    }
    match t {
        Term::Var(x) => out.push_str(&x.name()),
        Term::Star => out.push('*'),
        Term::Pair(a, b) => {
            out.push('(');
            write(a, BINDER, out);
            out.push_str(", ");
            write(b, BINDER, out);
            out.push(')');
        }
        Term::Proj(i, a) => {
            out.push_str(&format!("pi{i} "));
            write(a, ATOM, out);
        }
        Term::App(f, a) => {
            write(f, APP, out);
            out.push(' ');
            write(a, ATOM, out);
        }
        Term::TApp(f, ty) => {
            write(f, APP, out);
            out.push_str(&format!(" {{{}}}", print_type(ty)));
        }
        Term::Lam(x, ty, body) => {
            out.push_str(&format!("lam {x} : {}. ", print_type(ty)));
            write(body, BINDER, out);
        }
        Term::TLam(x, body) => {
            out.push_str(&format!("Lam {x}. "));
            write(body, BINDER, out);
        }
        Term::Mu(a, ty, body) => {
            out.push_str(&format!("mu {a} : {}. ", print_type(ty)));
            write(body, BINDER, out);
        }
        Term::Mu2(a, ta, b, tb, body) => {
            out.push_str(&format!("mu ({a} : {}, {b} : {}). ", print_type(ta), print_type(tb)));
            write(body, BINDER, out);
        }
        Term::Name(a, body) => {
            out.push_str(&format!("[{a}] "));
            write(body, BINDER, out);
        }
        Term::Name2(a, b, body) => {
            out.push_str(&format!("[{a}, {b}] "));
            write(body, BINDER, out);
        }
    }
    if paren {
        out.push(')');
    }
}
