//! Regenerate the five standard figure sweeps (fig3 through fig7) as CSV
//! data files and SVG charts, exactly as the `figures` subcommand does.

use std::path::Path;

use a2g_sim::commands::cmd_figures;
use a2g_sim::config::RunConfig;

fn main() -> a2g_sim::Result<()> {
    let out_dir = Path::new("target/example-out/figures");
    let written = cmd_figures(&RunConfig::default(), out_dir)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    println!("\n{} files under {}", written.len(), out_dir.display());
    Ok(())
}
