use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::cli::CacheCommand;
use crate::context::{outln, print_json, Context, Format};
use crate::error::CliResult;

pub fn run(ctx: &Context, cmd: &CacheCommand) -> CliResult<()> {
    let cache = ctx.require_cache()?;
    let json = ctx.format(Format::Text) == Format::Json;
    match cmd {
        CacheCommand::Stats => {
            let s = cache.stats()?;
            if json {
                print_json(&s);
            } else {
                outln!("entries:  {}", s.entries);
                outln!("hits:     {}", s.hits);
                outln!("misses:   {}", s.misses);
                outln!("hit rate: {:.3}", s.hit_rate);
            }
        }
        CacheCommand::Clear => {
            let removed = cache.clear()?;
            if json {
                print_json(&serde_json::json!({ "removed": removed }));
            } else {
                outln!("removed {removed} entries");
            }
        }
        CacheCommand::Warm { datum, facet, len } => {
            let g = ctx.group(datum.datum.as_deref())?;
            let f = ctx.facet(&g, facet.as_deref())?;
            let len = ctx.length_cap(*len, "--len")?;
            let session = cache.load(&g)?;
            let classes: BTreeSet<_> = g
                .elements_up_to_length(len)?
                .iter()
                .map(|w| g.double_coset_rep(w, &f))
                .filter(|d| g.length(d.rep()) <= len)
                .collect();
            let classes: Vec<_> = classes.into_iter().collect();
            classes
                .par_iter()
                .map(|d| g.enumerate_lower_interval(d, &f).map(|_| ()))
                .collect::<Result<Vec<()>, _>>()?;
            let written = cache.store(&g, &session)?;
            if json {
                print_json(&serde_json::json!({ "classes": classes.len(), "written": written }));
            } else {
                outln!("{} interval entries ({written} new)", classes.len());
            }
        }
    }
    Ok(())
}
