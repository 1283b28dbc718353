//! Plain-text renderings for `--format table`.

use mixvol::inequality::{LinearInequality, MonomialInequality};
use mixvol::rational;

pub fn lines<I: IntoIterator<Item = S>, S: AsRef<str>>(rows: I) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(r.as_ref());
        out.push('\n');
    }
    out
}

fn product(side: &std::collections::BTreeMap<mixvol::IndexPoint, u32>) -> String {
    side.iter()
        .map(|(p, e)| if *e == 1 { format!("MV{p}") } else { format!("MV{p}^{e}") })
        .collect::<Vec<_>>()
        .join("·")
}

pub fn monomial(mi: &MonomialInequality) -> String {
    let c = if mi.log2_const == 0 { String::new() } else { format!("2^{}·", mi.log2_const) };
    format!("{} ≤ {c}{}", product(&mi.lhs), product(&mi.rhs))
}

pub fn linear(li: &LinearInequality) -> String {
    let terms: Vec<String> = li
        .coeffs
        .iter()
        .map(|(p, a)| format!("{}·mv{p}", rational::format(a)))
        .collect();
    format!("{} ≤ {}", terms.join(" + "), rational::format(&li.constant))
}
