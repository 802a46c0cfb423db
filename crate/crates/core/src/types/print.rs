use super::TypeExpr;

// Precedence levels: forall < arrow < par < prod < atom.
const FORALL: u8 = 0;
const ARROW: u8 = 1;
const PAR: u8 = 2;
const PROD: u8 = 3;
const ATOM: u8 = 4;

fn level(t: &TypeExpr) -> u8 {
    match t {
        TypeExpr::Forall(..) => FORALL,
        TypeExpr::Arrow(..) => ARROW,
        TypeExpr::Par(..) => PAR,
        TypeExpr::Prod(..) => PROD,
        _ => ATOM,
    }
}

pub fn print_type(t: &TypeExpr) -> String {
    let mut out = String::new();
    write(t, FORALL, &mut out);
    out
}

fn write(t: &TypeExpr, ctx: u8, out: &mut String) {
    let paren = level(t) < ctx;
    if paren {
        out.push('(');
    }
    match t {
        TypeExpr::Top => out.push('T'),
        TypeExpr::Bot => out.push_str("_|_"),
        TypeExpr::Var(x) => out.push_str(&x.name()),
        TypeExpr::Prod(a, b) => {
            write(a, PROD, out);
            out.push_str(" * ");
            write(b, ATOM, out);
        }
        TypeExpr::Par(a, b) => {
            write(a, PAR, out);
            out.push_str(" /\\ ");
            write(b, PROD, out);
        }
        TypeExpr::Arrow(a, b) => {
            write(a, PAR, out);
            out.push_str(" -> ");
            // the right operand extends to the end of the group
            write(b, FORALL, out);
        }
        TypeExpr::Forall(x, body) => {
            out.push_str("forall ");
            out.push_str(&x.name());
            out.push_str(". ");
            write(body, FORALL, out);
        }
    }
    if paren {
        out.push(')');
    }
}
