//! The `det` and `per` subcommands: load a graph, evaluate it by the chosen
//! strategy, cross-check the value against an independent route, report.

use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use clap::ValueEnum;
use num_traits::ToPrimitive;

use blockdet::bpartition::{det_via_bpartitions, per_via_bpartitions};
use blockdet::closed_forms::{
    closed_form_det, closed_form_per, det_neg_mixed_complete_float, det_neg_mixed_star_float,
};
use blockdet::exact::{
    det_exact, det_via_cycle_covers, per_exact, per_via_cycle_covers, CYCLE_COVER_BOUND,
    DEFAULT_PERMANENT_BOUND,
};
use blockdet::generators::FamilySpec;
use blockdet::{block_decompose, ExactValue, SignedDigraph};

use crate::report::{FloatCheck, RunReport};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Det,
    Per,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Det => "det",
            Quantity::Per => "per",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Block sum when the graph has at least two blocks, dense otherwise.
    Auto,
    /// Sum over assignments of cut vertices to blocks.
    Bpartition,
    /// Fraction-free elimination (det) or subset scan (per).
    Dense,
    /// Brute-force census of spanning cycle collections.
    CycleCover,
    /// Per-family formula; needs a --family descriptor.
    ClosedForm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Bpartition => "bpartition",
            Method::Dense => "dense",
            Method::CycleCover => "cycle-cover",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// A graph plus where it came from; the descriptor is kept so closed forms
/// and float checks know the family parameters.
#[derive(Debug)]
pub struct Input {
    pub label: String,
    pub family: Option<FamilySpec>,
    pub graph: SignedDigraph,
}

pub fn load_family(descriptor: &str) -> Result<Input, Failure> {
    let spec = FamilySpec::from_str(descriptor)?;
    let graph = spec.generate()?;
    Ok(Input {
        label: descriptor.to_string(),
        family: Some(spec),
        graph,
    })
}

pub fn load_file(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let graph = SignedDigraph::from_sdg(&text)?;
    Ok(Input {
        label: path.display().to_string(),
        family: None,
        graph,
    })
}

/// `auto` picks the block sum exactly when it applies and pays off:
/// a connected graph of at least two blocks with loop-free cut vertices.
pub fn resolve_method(method: Method, g: &SignedDigraph) -> Method {
    if method != Method::Auto {
        return method;
    }
    match block_decompose(g) {
        Ok(d)
            if d.block_count() >= 2
                && !d.cut_vertices().iter().any(|&v| g.has_loop_at(v)) =>
        {
            Method::Bpartition
        }
        _ => Method::Dense,
    }
}

fn evaluate(
    g: &SignedDigraph,
    family: Option<&FamilySpec>,
    quantity: Quantity,
    method: Method,
) -> Result<ExactValue, Failure> {
    match method {
        Method::Auto => unreachable!("resolved before evaluation"),
        Method::Dense => match quantity {
            Quantity::Det => Ok(det_exact(g)),
            Quantity::Per => Ok(per_exact(g)?),
        },
        Method::Bpartition => {
            let d = block_decompose(g)?;
            Ok(match quantity {
                Quantity::Det => det_via_bpartitions(g, &d)?,
                Quantity::Per => per_via_bpartitions(g, &d)?,
            })
        }
        Method::CycleCover => Ok(match quantity {
            Quantity::Det => det_via_cycle_covers(g)?,
            Quantity::Per => per_via_cycle_covers(g)?,
        }),
        Method::ClosedForm => {
            let spec = family.ok_or_else(|| {
                Failure::Method("closed-form evaluation needs a --family descriptor".into())
            })?;
            Ok(match quantity {
                Quantity::Det => closed_form_det(spec)?,
                Quantity::Per => closed_form_per(spec)?,
            })
        }
    }
}

/// Recompute by an independent route where one is feasible. Returns the
/// status string and, on disagreement, the reference value.
fn cross_check(
    g: &SignedDigraph,
    quantity: Quantity,
    method: Method,
    value: &ExactValue,
) -> (String, Option<ExactValue>) {
    let reference = if method == Method::Dense {
        // The dense oracles are the usual referee; referee the referee with
        // the cover census when the graph is small enough.
        if g.n() <= CYCLE_COVER_BOUND {
            match quantity {
                Quantity::Det => det_via_cycle_covers(g).ok(),
                Quantity::Per => per_via_cycle_covers(g).ok(),
            }
        } else {
            None
        }
    } else {
        match quantity {
            Quantity::Det => Some(det_exact(g)),
            Quantity::Per => (g.n() <= DEFAULT_PERMANENT_BOUND)
                .then(|| per_exact(g).ok())
                .flatten(),
        }
    };
    match reference {
        None => ("skipped".into(), None),
        Some(r) if r == *value => ("ok".into(), None),
        Some(r) => ("mismatch".into(), Some(r)),
    }
}

fn float_check(family: Option<&FamilySpec>, quantity: Quantity, value: &ExactValue) -> Option<FloatCheck> {
    if quantity != Quantity::Det {
        return None;
    }
    let float = match family? {
        FamilySpec::NegMixedComplete { n } => det_neg_mixed_complete_float(*n).ok()?,
        FamilySpec::NegMixedStar { sizes } => det_neg_mixed_star_float(sizes).ok()?,
        _ => return None,
    };
    let exact = value.to_f64()?;
    Some(FloatCheck {
        value: float,
        relative_error: (float - exact).abs() / exact.abs().max(1.0),
    })
}

/// Evaluate and report. A `Failure` in the second slot means the value was
/// computed and reported but disagreed with the cross-check; the caller
/// should still print the report, then exit 1.
pub fn run(
    input: &Input,
    quantity: Quantity,
    method: Method,
) -> Result<(RunReport, Option<Failure>), Failure> {
    let resolved = resolve_method(method, &input.graph);
    let start = Instant::now();
    let value = evaluate(&input.graph, input.family.as_ref(), quantity, resolved)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (status, reference) = cross_check(&input.graph, quantity, resolved, &value);
    let failure = reference.map(|r| {
        Failure::Check(format!(
            "cross-check failed on {}: {} says {value}, reference says {r}",
            input.label,
            resolved.name(),
        ))
    });
    let report = RunReport {
        input: input.label.clone(),
        quantity: quantity.name().into(),
        method: resolved.name().into(),
        value: value.to_string(),
        elapsed_ms,
        cross_check: status,
        float_check: float_check(input.family.as_ref(), quantity, &value),
    };
    Ok((report, failure))
}
