use parahoric_core::notation::{format_translation_form, format_word_form, parse_element, parse_index_list};
use serde::Serialize;

use crate::cli::WeylCommand;
use crate::context::{outln, print_json, Context, Format};
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct Reduced {
    element: String,
    word: Vec<usize>,
    omega: String,
    length: usize,
}

pub fn run(ctx: &Context, cmd: &WeylCommand) -> CliResult<()> {
    let json = ctx.format(Format::Text) == Format::Json;
    match cmd {
        WeylCommand::Reduce { datum, elt } => {
            let g = ctx.group(datum.datum.as_deref())?;
            let x = parse_element(&g, elt)?;
            let (word, tau) = g.reduced_word(&x);
            let out = Reduced {
                element: format_translation_form(&g, &x),
                omega: format_translation_form(&g, &tau),
                length: word.len(),
                word,
            };
            if json {
                print_json(&out);
            } else {
                outln!("{}", format_word_form(&g, &x));
            }
        }
        WeylCommand::Length { datum, elt } => {
            let g = ctx.group(datum.datum.as_deref())?;
            let l = g.length(&parse_element(&g, elt)?);
            if json {
                print_json(&serde_json::json!({ "length": l }));
            } else {
                outln!("{l}");
            }
        }
        WeylCommand::Leq { datum, u, w } => {
            let g = ctx.group(datum.datum.as_deref())?;
            let leq = g.bruhat_leq(&parse_element(&g, u)?, &parse_element(&g, w)?);
            if json {
                print_json(&serde_json::json!({ "leq": leq }));
            } else {
                outln!("{leq}");
            }
        }
        WeylCommand::Demazure { datum, word, elts } => {
            let g = ctx.group(datum.datum.as_deref())?;
            let d = match word {
                Some(w) => {
                    let word = parse_index_list(w)?;
                    if let Some(&i) = word.iter().find(|&&i| i >= g.num_generators()) {
                        return Err(CliError::Usage(format!(
                            "generator s{i} out of range (0..{})",
                            g.num_generators()
                        )));
                    }
                    g.demazure_product(&word)
                }
                None => {
                    let mut acc = g.identity();
                    for e in elts {
                        acc = g.demazure(&acc, &parse_element(&g, e)?);
                    }
                    acc
                }
            };
            if json {
                let (word, tau) = g.reduced_word(&d);
                print_json(&Reduced {
                    element: format_translation_form(&g, &d),
                    omega: format_translation_form(&g, &tau),
                    length: word.len(),
                    word,
                });
            } else {
                outln!("{}", format_word_form(&g, &d));
            }
        }
    }
    Ok(())
}

