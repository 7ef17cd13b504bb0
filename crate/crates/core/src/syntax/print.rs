use super::{Formula, Node};

/// Canonical, fully parenthesized text. `#T`, `#F` and `<->` are re-sugared,
/// everything else is printed as stored, so `parse(print(φ))` rebuilds `φ`.
pub fn print(phi: &Formula) -> String {
    let mut out = String::new();
    write(phi, &mut out);
    out
}

fn write(f: &Formula, out: &mut String) {
    if f.is_top() {
        out.push_str("#T");
        return;
    }
    if f.is_bot() {
        out.push_str("#F");
        return;
    }
    if let Some((a, b)) = f.as_iff() {
        return binary(a, "<->", b, out);
    }
    match f.node() {
        Node::Prop(s) => out.push_str(s),
        Node::Not(a) => {
            out.push('~');
            write(a, out);
        }
        Node::Implies(a, b) => binary(a, "->", b, out),
        Node::And(a, b) => binary(a, "&", b, out),
        Node::Or(a, b) => binary(a, "|", b, out),
        Node::Dep { premises, conclusion } if premises.is_empty() => {
            out.push_str("C ");
            write(conclusion, out);
        }
        Node::Dep { premises, conclusion } => {
            out.push_str("D(");
            list(premises, out);
            out.push_str("; ");
            write(conclusion, out);
            out.push(')');
        }
        Node::Indep { left, conditions, right } => {
            out.push_str("I(");
            list(left, out);
            out.push_str(if conditions.is_empty() { ";" } else { "; " });
            list(conditions, out);
            out.push_str("; ");
            list(right, out);
            out.push(')');
        }
        Node::RelDep { condition, premises, conclusion } => {
            out.push_str("D^{");
            write(condition, out);
            out.push_str("}(");
            list(premises, out);
            out.push_str("; ");
            write(conclusion, out);
            out.push(')');
        }
        Node::UBox(a) => {
            out.push_str("[U]");
            write(a, out);
        }
    }
}

fn binary(a: &Formula, op: &str, b: &Formula, out: &mut String) {
    out.push('(');
    write(a, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write(b, out);
    out.push(')');
}

fn list(items: &[Formula], out: &mut String) {
    for (i, f) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write(f, out);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Fragment};
    use super::*;

    #[test]
    fn examples() {
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        assert_eq!(print(&Formula::constancy(p.clone())), "C p");
        assert_eq!(print(&Formula::indep(vec![q.clone()], vec![p.clone()], vec![q.clone()])), "I(q; p; q)");
        assert_eq!(print(&Formula::and(p.clone(), Formula::constancy(p.clone()))), "(p & C p)");
        assert_eq!(print(&Formula::indep(vec![p.clone()], vec![], vec![q])), "I(p;; q)");
        assert_eq!(print(&Formula::constancy(Formula::top())), "C #T");
    }

    #[test]
    fn iff_and_sugar_round_trip() {
        for text in ["(C p <-> C ~p)", "D^{p}(q; r)", "D^{(p & q)}(; r)", "~[U]~p", "(#T -> #F)"] {
            let f = parse(text, Fragment::LD_REL).or_else(|_| parse(text, Fragment::LU)).unwrap();
            assert_eq!(print(&f), text);
        }
    }
}
