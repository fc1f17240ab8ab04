//! Plain-text interchange format for signed digraphs.
//!
//! ```text
//! # comment lines and trailing # comments are ignored
//! sdg 5
//! edge 0 1 -1      # symmetric pair of arcs, one line
//! arc 3 4 1        # single directed arc (or a loop: arc 2 2 1)
//! ```
//!
//! The writer is canonical: header first, then all `edge` lines sorted by
//! endpoints, then all `arc` lines sorted likewise. Parsing the writer's
//! output reproduces the graph exactly, weight for weight.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::SignedDigraph;

impl SignedDigraph {
    /// Canonical text form of the graph.
    pub fn to_sdg(&self) -> String {
        let mut edges = Vec::new();
        let mut singles = Vec::new();
        for (u, v, w) in self.arcs() {
            if u < v && self.weight(v, u) == Some(w) {
                edges.push((u, v, w));
            } else if u > v && self.weight(v, u) == Some(w) {
                // reverse half of an edge line
            } else {
                singles.push((u, v, w));
            }
        }
        let mut out = format!("sdg {}\n", self.n());
        for (u, v, w) in edges {
            out.push_str(&format!("edge {u} {v} {w}\n"));
        }
        for (u, v, w) in singles {
            out.push_str(&format!("arc {u} {v} {w}\n"));
        }
        out
    }

    /// Parses the text format. Loops (`arc v v w`) are accepted.
    pub fn from_sdg(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut arcs: Vec<(u32, u32, i64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let head = tok.next().unwrap();
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match head {
                "sdg" => {
                    if n.is_some() {
                        return Err(parse_err("repeated sdg header".into()));
                    }
                    let count = tok
                        .next()
                        .ok_or_else(|| parse_err("sdg header needs a vertex count".into()))?;
                    n = Some(
                        count
                            .parse()
                            .map_err(|_| parse_err(format!("bad vertex count {count:?}")))?,
                    );
                    if tok.next().is_some() {
                        return Err(parse_err("trailing tokens after vertex count".into()));
                    }
                }
                "edge" | "arc" => {
                    if n.is_none() {
                        return Err(parse_err(format!("{head} line before sdg header")));
                    }
                    let mut field = |name: &str| {
                        tok.next()
                            .ok_or_else(|| Error::Parse {
                                line: line_no,
                                message: format!("{head} line is missing {name}"),
                            })
                            .and_then(|s| {
                                s.parse::<i64>().map_err(|_| Error::Parse {
                                    line: line_no,
                                    message: format!("bad {name} {s:?}"),
                                })
                            })
                    };
                    let u = field("tail")?;
                    let v = field("head")?;
                    let w = field("weight")?;
                    if !(0..=u32::MAX as i64).contains(&u) || !(0..=u32::MAX as i64).contains(&v) {
                        return Err(parse_err("vertex labels must be non-negative".into()));
                    }
                    let (u, v) = (u as u32, v as u32);
                    if tok.next().is_some() {
                        return Err(parse_err("trailing tokens after weight".into()));
                    }
                    if head == "edge" {
                        if u == v {
                            return Err(parse_err(format!(
                                "edge {u} {v} is a loop; use arc for loops"
                            )));
                        }
                        arcs.push((u, v, w));
                        arcs.push((v, u, w));
                    } else {
                        arcs.push((u, v, w));
                    }
                }
                other => {
                    return Err(parse_err(format!("unknown directive {other:?}")));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: text.lines().count() + 1,
            message: "missing sdg header".into(),
        })?;
        SignedDigraph::with_loops(n, &arcs)
    }
}

impl fmt::Display for SignedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sdg())
    }
}

impl FromStr for SignedDigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignedDigraph::from_sdg(s)
    }
}
