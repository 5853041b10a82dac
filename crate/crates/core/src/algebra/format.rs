//! Shared text rendering for sums of `coefficient * monomial` terms. The
//! output is accepted back by the expression parser.

use num_traits::{One, Signed, Zero};

use super::{MultiIndex, Scalar};

/// `x0^2*x1`, or the empty string for the constant monomial.
pub(crate) fn monomial_text(prefix: &str, exps: &MultiIndex) -> String {
    named_monomial_text(
        exps.components()
            .iter()
            .enumerate()
            .map(|(j, &e)| (format!("{prefix}{j}"), e)),
    )
}

pub(crate) fn named_monomial_text<I: IntoIterator<Item = (String, u32)>>(factors: I) -> String {
    factors
        .into_iter()
        .filter(|(_, e)| *e > 0)
        .map(|(name, e)| if e == 1 { name } else { format!("{name}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn join(coef: String, mono: &str) -> String {
    if mono.is_empty() {
        coef
    } else {
        format!("{coef}*{mono}")
    }
}

/// Returns `(negative, body)` for one term.
fn term_text(c: &Scalar, mono: &str) -> (bool, String) {
    if c.is_real() {
        let neg = c.re().is_negative();
        let a = c.re().abs();
        let body = if a.is_one() && !mono.is_empty() {
            mono.to_string()
        } else {
            join(Scalar::real(a).to_string(), mono)
        };
        (neg, body)
    } else if c.re().is_zero() {
        let neg = c.im().is_negative();
        let a = c.im().abs();
        let coef = if a.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", Scalar::real(a))
        };
        (neg, join(coef, mono))
    } else {
        (false, join(format!("({c})"), mono))
    }
}

pub(crate) fn format_sum<I: IntoIterator<Item = (Scalar, String)>>(terms: I) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let (neg, body) = term_text(&c, &mono);
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
