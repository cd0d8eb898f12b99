use parahoric_core::hecke::{Basis, HeckeAlgebra};
use parahoric_core::notation::{format_translation_form, parse_element};
use parahoric_core::satake::{LeviDatum, LeviHeckeElement, MonoidAlgebraElement, SatakeTransform};
use parahoric_core::{AffineWeylElement, AffineWeylGroup};
use serde::Serialize;

use crate::cli::SatakeArgs;
use crate::commands::hecke::read_element;
use crate::context::{outln, print_json, Context, Format};
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct ImageTerm {
    rep: String,
    coeff: u64,
}

#[derive(Serialize)]
struct SatakeOutput {
    facet: Vec<usize>,
    levi: Vec<usize>,
    prime: u64,
    closed_component: Option<String>,
    has_levi_point: Option<bool>,
    image: Vec<ImageTerm>,
    display: String,
}

#[derive(Serialize)]
struct LambdaRow {
    z: Vec<i64>,
    length: usize,
    rep: String,
}

fn image(g: &AffineWeylGroup, x: &LeviHeckeElement) -> Vec<ImageTerm> {
    x.terms()
        .iter()
        .map(|(y, &c)| ImageTerm {
            rep: format_translation_form(g, y),
            coeff: c,
        })
        .collect()
}

fn monoid_image(g: &AffineWeylGroup, m: &MonoidAlgebraElement) -> Vec<ImageTerm> {
    m.terms()
        .iter()
        .map(|(z, &c)| ImageTerm {
            rep: format_translation_form(g, &AffineWeylElement::translation_by(z)),
            coeff: c,
        })
        .collect()
}

fn parse_coweight(g: &AffineWeylGroup, s: &str) -> CliResult<Vec<i64>> {
    let x = parse_element(g, s)?;
    if !x.is_translation() {
        return Err(CliError::Usage(format!("'{s}' is not a translation")));
    }
    Ok(x.translation().to_vec())
}

pub fn run(ctx: &Context, args: &SatakeArgs) -> CliResult<()> {
    let g = ctx.group(args.alg.datum.datum.as_deref())?;
    let facet = ctx.facet(&g, args.alg.facet.as_deref())?;
    let simple = ctx.levi(args.levi.as_deref())?;
    let levi = match &args.lambda {
        Some(l) => LeviDatum::with_cocharacter(&g, &simple, &parse_coweight(&g, l)?)?,
        None => LeviDatum::standard(&g, &simple)?,
    };
    if args.list_lambda_minus {
        let cap = ctx.length_cap(args.cap, "--cap")?;
        // Λ₋ only needs the facet; the prime is irrelevant
        let s = SatakeTransform::new(&g, facet, levi, args.alg.p.or(ctx.config.prime).unwrap_or(2))?;
        let rows: Vec<LambdaRow> = s
            .lambda_minus(cap)?
            .into_iter()
            .map(|(z, w)| LambdaRow {
                length: g.length(&AffineWeylElement::translation_by(&z)),
                rep: format_translation_form(&g, w.rep()),
                z,
            })
            .collect();
        match ctx.format(Format::Text) {
            Format::Json => print_json(&rows),
            Format::Text => {
                outln!("{:<20} {:>6}  rep", "z", "length");
                for r in &rows {
                    outln!("{:<20} {:>6}  {}", format!("{:?}", r.z), r.length, r.rep);
                }
            }
        }
        return Ok(());
    }

    let prime = ctx.prime(args.alg.p)?;
    let h = HeckeAlgebra::new(&g, facet.clone(), prime)?;
    let mut s = SatakeTransform::new(&g, facet.clone(), levi, prime)?;
    if let Some(cap) = ctx.chain_cap(args.chain_cap) {
        s = s.with_chain_cap(cap);
    }
    let out = ctx.cached(&g, |_| {
        let (closed, has_point, img) = match (&args.w, &args.input) {
            (Some(w), _) => {
                let class = h.class_of(&parse_element(&g, w)?);
                if args.special {
                    let m = s.special_satake_phi(&class)?;
                    let z = s.antidominant_translation(class.rep())?;
                    let label = s.component_of(&AffineWeylElement::translation_by(&z));
                    (Some(format_translation_form(&g, label.rep())), Some(true), (monoid_image(&g, &m), m.to_string()))
                } else {
                    let c = s.closed_attractor_component(&class)?;
                    let has = s.component_has_levi_point(&c);
                    let img = s.satake_phi(&class)?;
                    (Some(format_translation_form(&g, c.rep())), Some(has), (image(&g, &img), img.format(&g)))
                }
            }
            (None, Some(path)) => {
                let a = read_element(&h, path)?;
                if args.special {
                    let mut m = MonoidAlgebraElement::zero(prime);
                    for (w, &c) in h.to_basis(&a, Basis::Phi)?.terms() {
                        m = m.add(&s.special_satake_phi(w)?.scale(c));
                    }
                    (None, None, (monoid_image(&g, &m), m.to_string()))
                } else {
                    let img = s.satake(&h, &a)?;
                    (None, None, (image(&g, &img), img.format(&g)))
                }
            }
            (None, None) => return Err(CliError::Usage("give --w, --input or --list-lambda-minus".into())),
        };
        Ok(SatakeOutput {
            facet: facet.indices().to_vec(),
            levi: s.levi().simple().to_vec(),
            prime,
            closed_component: closed,
            has_levi_point: has_point,
            image: img.0,
            display: img.1,
        })
    })?;
    match ctx.format(Format::Json) {
        Format::Json => print_json(&out),
        Format::Text => {
            if let Some(c) = &out.closed_component {
                outln!("closed component: {c}");
            }
            if let Some(b) = out.has_levi_point {
                outln!("meets Levi:       {b}");
            }
            outln!("image:            {}", out.display);
        }
    }
    Ok(())
}
