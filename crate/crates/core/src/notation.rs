//! Text forms of affine Weyl group elements.
//!
//! Two printed forms:
//! * word form `s0*s1*s2`, with `:τ` appended when the length-zero part is
//!   not the identity (`τ` in translation form);
//! * translation form `t[λ]*w[i,j,...]` where `λ` is in the coordinates of `X`
//!   and `w[...]` is a word in the finite simple reflections.
//!
//! The parser accepts any `*`-separated product of `e`, `s<i>`, `s<i>,<j>,...`,
//! `<i>,<j>,...`, `t[...]` and `w[...]`, optionally followed by `:` and a
//! second product.

use crate::affine_weyl::{AffineWeylElement, AffineWeylGroup};
use crate::error::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| parse_err(format!("bad index '{}'", x.trim())))
        })
        .collect()
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| parse_err(format!("bad coordinate '{}'", x.trim())))
        })
        .collect()
}

/// Parses a comma-separated index list such as a facet. `""` and `"[]"` are
/// the empty list.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let s = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .unwrap_or(s);
    parse_usize_list(s)
}

fn bracketed(factor: &str, head: char) -> Option<&str> {
    factor
        .strip_prefix(head)?
        .trim_start()
        .strip_prefix('[')?
        .strip_suffix(']')
}

fn parse_word(g: &AffineWeylGroup, word: &[usize]) -> Result<AffineWeylElement> {
    if let Some(&i) = word.iter().find(|&&i| i >= g.num_generators()) {
        return Err(parse_err(format!("no simple reflection s{i}")));
    }
    Ok(g.from_word(word))
}

fn parse_factor(g: &AffineWeylGroup, factor: &str) -> Result<AffineWeylElement> {
    let factor = factor.trim();
    if factor.is_empty() {
        return Err(parse_err("empty factor"));
    }
    if factor == "e" {
        return Ok(g.identity());
    }
    if let Some(inner) = bracketed(factor, 't') {
        let coords = parse_i64_list(inner)?;
        if coords.len() != g.dim() {
            return Err(parse_err(format!(
                "translation has {} coordinates, expected {}",
                coords.len(),
                g.dim()
            )));
        }
        return Ok(AffineWeylElement::translation_by(&coords));
    }
    if let Some(inner) = bracketed(factor, 'w') {
        let word = parse_usize_list(inner)?;
        if let Some(&i) = word.iter().find(|&&i| !g.finite_indices().contains(&i)) {
            return Err(parse_err(format!("s{i} is not a finite simple reflection")));
        }
        return parse_word(g, &word);
    }
    let list = factor.strip_prefix('s').unwrap_or(factor);
    let word = parse_usize_list(list)?;
    parse_word(g, &word)
}

fn parse_product(g: &AffineWeylGroup, s: &str) -> Result<AffineWeylElement> {
    let mut acc = g.identity();
    for factor in split_top_level(s, '*') {
        acc = acc.compose(&parse_factor(g, factor)?);
    }
    Ok(acc)
}

/// Splits on `sep` outside of brackets.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_element(g: &AffineWeylGroup, s: &str) -> Result<AffineWeylElement> {
    let parts = split_top_level(s.trim(), ':');
    match parts.as_slice() {
        [a] => parse_product(g, a),
        [a, b] => Ok(parse_product(g, a)?.compose(&parse_product(g, b)?)),
        _ => Err(parse_err(format!("too many ':' in '{s}'"))),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("*")
    }
}

pub fn format_translation_form(g: &AffineWeylGroup, w: &AffineWeylElement) -> String {
    let t = format!("t[{}]", join(w.translation()));
    if w.finite().is_identity() {
        return t;
    }
    let word: Vec<usize> = g
        .datum()
        .finite_reduced_word(w.finite())
        .into_iter()
        .map(|i| g.affine_index_of_finite(i))
        .collect();
    if w.translation().iter().all(|&x| x == 0) {
        format!("w[{}]", join(&word))
    } else {
        format!("{t}*w[{}]", join(&word))
    }
}

pub fn format_word_form(g: &AffineWeylGroup, w: &AffineWeylElement) -> String {
    let (word, tau) = g.reduced_word(w);
    if tau.is_identity() {
        format_word(&word)
    } else {
        format!("{}:{}", format_word(&word), format_translation_form(g, &tau))
    }
}
