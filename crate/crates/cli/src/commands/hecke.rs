use std::path::Path;

use parahoric_core::affine_weyl::AffineWeylGroup;
use parahoric_core::hecke::{format_polynomial, Basis, ConvolutionWitness, HeckeAlgebra, HeckeElement, HeckeElementWire};
use parahoric_core::notation::{format_translation_form, parse_element};
use parahoric_core::{CartanDatum, Error};
use serde::{Deserialize, Serialize};

use crate::cli::{BasisArg, HeckeCommand};
use crate::context::{outln, print_json, Context, Format};
use crate::error::{CliError, CliResult};

/// Output of `hecke multiply`, and the input of `hecke replay`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub datum: String,
    pub result: HeckeElementWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessWire>>,
}

/// One term product `c · φ_left * φ_right = c · φ_result`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessWire {
    pub coeff: u64,
    pub left: String,
    pub right: String,
    pub tau_left: String,
    pub word_left: Vec<usize>,
    pub word_right: Vec<usize>,
    pub tau_right: String,
    pub demazure: String,
    pub result: String,
}

impl WitnessWire {
    fn new(g: &AffineWeylGroup, coeff: u64, w: &ConvolutionWitness) -> Self {
        let f = |x| format_translation_form(g, x);
        WitnessWire {
            coeff,
            left: f(w.left.rep()),
            right: f(w.right.rep()),
            tau_left: f(&w.tau_left),
            word_left: w.word_left.clone(),
            word_right: w.word_right.clone(),
            tau_right: f(&w.tau_right),
            demazure: f(&w.demazure),
            result: f(w.result.rep()),
        }
    }

    fn parse(&self, h: &HeckeAlgebra<'_>) -> CliResult<ConvolutionWitness> {
        let g = h.group();
        let p = |s: &str| parse_element(g, s);
        Ok(ConvolutionWitness {
            left: h.class_of(&p(&self.left)?),
            right: h.class_of(&p(&self.right)?),
            tau_left: p(&self.tau_left)?,
            word_left: self.word_left.clone(),
            word_right: self.word_right.clone(),
            tau_right: p(&self.tau_right)?,
            demazure: p(&self.demazure)?,
            result: h.class_of(&p(&self.result)?),
        })
    }
}

pub fn basis(b: BasisArg) -> Basis {
    match b {
        BasisArg::Phi => Basis::Phi,
        BasisArg::Indicator => Basis::Indicator,
    }
}

pub fn read_element(h: &HeckeAlgebra<'_>, path: &Path) -> CliResult<HeckeElement> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
    let wire: HeckeElementWire = serde_json::from_str(&text)
        .map_err(|e| CliError::Core(Error::Parse(format!("{}: {e}", path.display()))))?;
    Ok(h.from_wire(&wire)?)
}

fn operand(h: &HeckeAlgebra<'_>, w: Option<&str>, file: Option<&Path>) -> CliResult<HeckeElement> {
    match (w, file) {
        (Some(w), _) => Ok(h.phi(&h.class_of(&parse_element(h.group(), w)?))),
        (None, Some(path)) => read_element(h, path),
        (None, None) => Err(CliError::Usage("missing operand".into())),
    }
}

/// Both bases, one per line.
pub fn describe(h: &HeckeAlgebra<'_>, a: &HeckeElement) -> CliResult<String> {
    let phi = h.to_basis(a, Basis::Phi)?;
    let ind = h.to_basis(a, Basis::Indicator)?;
    Ok(format!("phi:       {}\nindicator: {}", h.format(&phi), h.format(&ind)))
}

fn product(h: &HeckeAlgebra<'_>, a: &HeckeElement, b: &HeckeElement, witness: bool) -> CliResult<Product> {
    let result = h.convolve(a, b)?;
    let witnesses = if witness {
        let g = h.group();
        let p = h.prime();
        let (pa, pb) = (h.to_basis(a, Basis::Phi)?, h.to_basis(b, Basis::Phi)?);
        let mut out = Vec::new();
        for (w1, &c1) in pa.terms() {
            for (w2, &c2) in pb.terms() {
                let (_, wit) = h.convolve_phi_classes(w1, w2);
                let coeff = ((c1 as u128 * c2 as u128) % p as u128) as u64;
                out.push(WitnessWire::new(g, coeff, &wit));
            }
        }
        Some(out)
    } else {
        None
    };
    Ok(Product {
        datum: h.group().datum().cartan().canonical_string(),
        result: h.to_wire(&result),
        witnesses,
    })
}

fn print_product(ctx: &Context, h: &HeckeAlgebra<'_>, out: &Product) -> CliResult<()> {
    match ctx.format(Format::Json) {
        Format::Json => print_json(out),
        Format::Text => {
            outln!("{}", describe(h, &h.from_wire(&out.result)?)?);
            for w in out.witnesses.iter().flatten() {
                outln!(
                    "{} * φ_{{{}}} * φ_{{{}}}: D({:?} ++ {:?}) = {} -> φ_{{{}}}",
                    w.coeff, w.left, w.right, w.word_left, w.word_right, w.demazure, w.result
                );
            }
        }
    }
    Ok(())
}

pub fn run(ctx: &Context, cmd: &HeckeCommand) -> CliResult<()> {
    match cmd {
        HeckeCommand::Multiply { alg, w1, w2, a, b, witness } => {
            let g = ctx.group(alg.datum.datum.as_deref())?;
            let facet = ctx.facet(&g, alg.facet.as_deref())?;
            let h = HeckeAlgebra::new(&g, facet, ctx.prime(alg.p)?)?;
            let out = ctx.cached(&g, |_| {
                let x = operand(&h, w1.as_deref(), a.as_deref())?;
                let y = operand(&h, w2.as_deref(), b.as_deref())?;
                product(&h, &x, &y, *witness)
            })?;
            print_product(ctx, &h, &out)
        }
        HeckeCommand::Replay { witness } => {
            let text = std::fs::read_to_string(witness)
                .map_err(|e| CliError::io(format!("reading {}", witness.display()), e))?;
            let doc: Product = serde_json::from_str(&text)
                .map_err(|e| CliError::Core(Error::Parse(format!("{}: {e}", witness.display()))))?;
            let wits = doc
                .witnesses
                .as_ref()
                .ok_or_else(|| CliError::Precondition("document carries no witnesses".into()))?;
            let g = ctx.group(Some(&CartanDatum::parse(&doc.datum)?.canonical_string()))?;
            let facet = g.facet(&doc.result.facet)?;
            let h = HeckeAlgebra::new(&g, facet, doc.result.prime)?;
            let out = ctx.cached(&g, |_| {
                let mut sum = h.zero(Basis::Phi);
                let mut replayed = Vec::with_capacity(wits.len());
                for w in wits {
                    let parsed = w.parse(&h)?;
                    let class = h.replay(&parsed)?;
                    sum = h.add(&sum, &h.scale(&h.phi(&class), w.coeff)?)?;
                    replayed.push(WitnessWire::new(&g, w.coeff % h.prime(), &parsed));
                }
                let result = h.to_basis(&sum, doc.result.basis)?;
                if result != h.from_wire(&doc.result)? {
                    return Err(CliError::Precondition("witnesses do not sum to the recorded result".into()));
                }
                Ok(Product {
                    datum: g.datum().cartan().canonical_string(),
                    result: h.to_wire(&result),
                    witnesses: Some(replayed),
                })
            })?;
            print_product(ctx, &h, &out)
        }
        HeckeCommand::Basis { alg, to, from, w, input } => {
            let g = ctx.group(alg.datum.datum.as_deref())?;
            let facet = ctx.facet(&g, alg.facet.as_deref())?;
            let h = HeckeAlgebra::new(&g, facet, ctx.prime(alg.p)?)?;
            let out = ctx.cached(&g, |_| {
                let a = match (w, input) {
                    (Some(w), _) => {
                        let class = h.class_of(&parse_element(&g, w)?);
                        match basis(*from) {
                            Basis::Phi => h.phi(&class),
                            Basis::Indicator => h.indicator(&class),
                        }
                    }
                    (None, Some(path)) => read_element(&h, path)?,
                    (None, None) => return Err(CliError::Usage("missing element".into())),
                };
                Ok(h.to_basis(&a, basis(*to))?)
            })?;
            match ctx.format(Format::Json) {
                Format::Json => print_json(&h.to_wire(&out)),
                Format::Text => outln!("{}", describe(&h, &out)?),
            }
            Ok(())
        }
        HeckeCommand::Pointcount { datum, facet, w } => {
            let g = ctx.group(datum.datum.as_deref())?;
            let facet = ctx.facet(&g, facet.as_deref())?;
            // cell counts do not depend on the coefficient field
            let h = HeckeAlgebra::new(&g, facet, 2)?;
            let class = h.class_of(&parse_element(&g, w)?);
            let coeffs = h.point_count_polynomial(&class)?;
            match ctx.format(Format::Text) {
                Format::Text => outln!("{}", format_polynomial(&coeffs)),
                Format::Json => print_json(&serde_json::json!({
                    "rep": format_translation_form(&g, class.rep()),
                    "coefficients": coeffs,
                    "polynomial": format_polynomial(&coeffs),
                })),
            }
            Ok(())
        }
    }
}
