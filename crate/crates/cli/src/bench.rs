//! The `bench` subcommand: wall-clock rows for chains of complete blocks,
//! block sum against dense scan. CSV on stdout, schema `family,n,method,ms`.

use std::io::Write;
use std::time::Instant;

use blockdet::bpartition::{det_via_bpartitions, per_via_bpartitions};
use blockdet::exact::{det_exact, per_exact_bounded};
use blockdet::generators::FamilySpec;
use blockdet::block_decompose;

use crate::compute::Quantity;
use crate::Failure;

pub struct BenchConfig {
    /// Vertices per complete block.
    pub block_size: usize,
    /// Chains of 1..=blocks blocks are timed.
    pub blocks: usize,
    /// The dense scan is skipped above this order; the block sum never is.
    pub dense_max_n: usize,
    pub quantity: Quantity,
}

pub const CSV_HEADER: &str = "family,n,method,ms";

/// A descriptor contains commas, so the family field is always quoted.
fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn run(cfg: &BenchConfig, out: &mut impl Write) -> Result<(), Failure> {
    if cfg.block_size < 2 {
        return Err(Failure::Input("blocks need at least two vertices".into()));
    }
    if cfg.blocks < 1 {
        return Err(Failure::Input("need at least one block".into()));
    }
    writeln!(out, "{CSV_HEADER}").map_err(|e| Failure::Input(e.to_string()))?;
    for k in 1..=cfg.blocks {
        let spec = FamilySpec::BlockGraph {
            sizes: vec![cfg.block_size; k],
            attach: Vec::new(),
        };
        let g = spec.generate()?;
        let family = csv_field(&spec.to_string());
        let n = g.n();
        let d = block_decompose(&g)?;

        let start = Instant::now();
        let block_value = match cfg.quantity {
            Quantity::Det => det_via_bpartitions(&g, &d)?,
            Quantity::Per => per_via_bpartitions(&g, &d)?,
        };
        let ms = start.elapsed().as_secs_f64() * 1e3;
        writeln!(out, "{family},{n},bpartition,{ms:.3}")
            .map_err(|e| Failure::Input(e.to_string()))?;

        if n <= cfg.dense_max_n {
            let start = Instant::now();
            let dense_value = match cfg.quantity {
                Quantity::Det => det_exact(&g),
                Quantity::Per => per_exact_bounded(&g, n)?,
            };
            let ms = start.elapsed().as_secs_f64() * 1e3;
            writeln!(out, "{family},{n},dense,{ms:.3}")
                .map_err(|e| Failure::Input(e.to_string()))?;
            if dense_value != block_value {
                return Err(Failure::Check(format!(
                    "bench cross-check failed on {spec}: block sum {block_value}, dense {dense_value}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_schema_and_agreement() {
        let cfg = BenchConfig {
            block_size: 4,
            blocks: 3,
            dense_max_n: 7,
            quantity: Quantity::Per,
        };
        let mut out = Vec::new();
        run(&cfg, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        // Three bpartition rows; dense ones only for n = 4 and n = 7.
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 5);
        assert!(rows[0].starts_with("\"block-graph:4\",4,bpartition,"));
        assert!(rows[1].starts_with("\"block-graph:4\",4,dense,"));
        assert!(rows[4].starts_with("\"block-graph:4,4,4\",10,bpartition,"));
        for row in rows {
            let rest = row.strip_prefix('"').unwrap();
            let (family, rest) = rest.split_once('"').unwrap();
            assert!(family.starts_with("block-graph:"));
            // Leading empty piece, then n, method, ms.
            assert_eq!(rest.split(',').count(), 4);
        }
    }

    #[test]
    fn tiny_blocks_are_rejected() {
        let cfg = BenchConfig {
            block_size: 1,
            blocks: 1,
            dense_max_n: 0,
            quantity: Quantity::Det,
        };
        assert_eq!(run(&cfg, &mut Vec::new()).unwrap_err().exit_code(), 2);
    }
}
