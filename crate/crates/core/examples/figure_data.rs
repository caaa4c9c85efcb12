//! Writes the CSV tables and manifest for every figure.
//!
//! Usage: cargo run --example figure_data -- [output_dir]

use std::path::PathBuf;

use exciton_dimer::cli;

fn main() -> exciton_dimer::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("exciton-dimer-figures"));
    for figure in ["fig1", "fig2", "fig3"] {
        for path in cli::cmd_figures(figure, &dir, &serde_json::Value::Null)? {
            println!("{}", path.display());
        }
    }
    Ok(())
}
