use std::fmt::Write as _;

use kvn_core::kvn::{enumerate_dyadics, orbit_points};
use kvn_core::minkowski::{e_map, enumerate_rationals, phi, phi_inverse};
use kvn_core::rational::{format_sig, Rational};
use kvn_core::stats::{
    cell_discrepancy, emit_scatter_svg, orbit_strings, points_csv, weyl_sum, FLOAT_DIGITS,
};
use kvn_core::walsh::{level_set_table, walsh_eval, walsh_inner_product, WalshIndex};
use kvn_core::{Error, GeneratorSet, Limits, Point, Result};
use serde_json::{json, Value};

use crate::{Cli, Command, Direction, EnumKind, Format, MapKind, Source};

fn parse_point(gens: &GeneratorSet, s: &str) -> Result<Point> {
    let p: Point = s.parse()?;
    p.ensure_dim(gens.dim())?;
    p.ensure_in_simplex()?;
    Ok(p)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn rational_json(x: &Rational) -> Value {
    json!({ "exact": x.to_string(), "decimal": format_sig(x, FLOAT_DIGITS) })
}

/// Points with their final orbits, plus Φ-partners when given.
fn emit_points(
    cli: &Cli,
    gens: &GeneratorSet,
    points: &[Point],
    phi_images: Option<&[Point]>,
) -> Result<String> {
    let orbits = orbit_strings(points, gens.limits().orbit_states)?;
    Ok(match cli.format {
        Format::Csv => points_csv(gens.dim(), points, &orbits, phi_images),
        Format::Json => {
            let rows: Vec<Value> = points
                .iter()
                .zip(&orbits)
                .enumerate()
                .map(|(i, (p, o))| {
                    let mut row = json!({ "index": i, "orbit": o, "point": p.to_string() });
                    if let Some(imgs) = phi_images {
                        row["phi_image"] = json!(imgs[i].to_string());
                    }
                    row
                })
                .collect();
            pretty(&Value::Array(rows))
        }
    })
}

fn parse_pair(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse {
        what: "index pair M,L",
        input: s.to_string(),
    };
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn usage(what: &'static str) -> Error {
    Error::Parse {
        what,
        input: String::new(),
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    let gens = GeneratorSet::with_limits(cli.dim, Limits::from_env())?;
    let g = &gens;
    match &cli.command {
        Command::Matrices => Ok(pretty(&g.to_json())),

        Command::Orbit { map, point, count } => {
            let p = parse_point(g, point)?;
            let pts = match map {
                MapKind::K => orbit_points(g, &p, *count)?,
                MapKind::E => {
                    let mut pts = Vec::with_capacity(*count);
                    let mut q = p;
                    for i in 0..*count {
                        if i > 0 {
                            q = e_map(g, &q)?;
                        }
                        pts.push(q.clone());
                    }
                    pts
                }
            };
            emit_points(cli, g, &pts, None)
        }

        Command::Enum { kind, count } => match kind {
            EnumKind::Dyadic => emit_points(cli, g, &enumerate_dyadics(g, *count)?, None),
            EnumKind::Rational => {
                let pts = enumerate_rationals(g, *count)?;
                let imgs = pts.iter().map(|q| phi(g, q)).collect::<Result<Vec<_>>>()?;
                emit_points(cli, g, &pts, Some(&imgs))
            }
        },

        Command::Walsh {
            m,
            point,
            table,
            inner,
        } => {
            if let Some(s) = point {
                let m = WalshIndex(m.ok_or_else(|| usage("--m"))?);
                let p = parse_point(g, s)?;
                let v = walsh_eval(g, m, &p)?;
                return Ok(match cli.format {
                    Format::Csv => format!("m,point,value\n{},\"{p}\",{v}\n", m.0),
                    Format::Json => pretty(&json!({ "m": m.0, "point": p.to_string(), "value": v })),
                });
            }
            if let Some(t) = table {
                if *t == 0 || *t > 16 {
                    return Err(usage("--table level in 1..=16"));
                }
                let tab = level_set_table(g, *t)?;
                return Ok(match cli.format {
                    Format::Csv => tab.to_csv(),
                    Format::Json => pretty(&json!({
                        "level": tab.level,
                        "indices": tab.indices.iter().map(|m| m.0).collect::<Vec<_>>(),
                        "words": tab.words.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "values": tab.values,
                    })),
                });
            }
            if let Some(s) = inner {
                let (a, b) = parse_pair(s)?;
                let v = walsh_inner_product(WalshIndex(a), WalshIndex(b));
                return Ok(match cli.format {
                    Format::Csv => format!("m,l,inner_product\n{a},{b},{v}\n"),
                    Format::Json => pretty(&json!({ "m": a, "l": b, "inner_product": v.to_string() })),
                });
            }
            Err(usage("one of --point, --table, --inner"))
        }

        Command::Weyl { m, point, k } => {
            if *m == 0 || *k == 0 {
                return Err(usage("--m and --k must be positive"));
            }
            let p = parse_point(g, point)?;
            let v = weyl_sum(g, WalshIndex(*m), &p, *k)?;
            Ok(match cli.format {
                Format::Csv => format!(
                    "m,k,point,value,decimal\n{m},{k},\"{p}\",{v},{}\n",
                    format_sig(&v, FLOAT_DIGITS)
                ),
                Format::Json => pretty(&json!({
                    "m": m, "k": k, "point": p.to_string(), "value": rational_json(&v),
                })),
            })
        }

        Command::Discrepancy {
            source,
            depth,
            count,
            point,
        } => {
            if *count == 0 {
                return Err(usage("--count must be positive"));
            }
            let pts = match source {
                Source::Dyadic => enumerate_dyadics(g, *count)?,
                Source::Rational => enumerate_rationals(g, *count)?,
                Source::Orbit => {
                    let s = point.as_deref().ok_or_else(|| usage("--point"))?;
                    orbit_points(g, &parse_point(g, s)?, *count)?
                }
            };
            let rep = cell_discrepancy(&pts, *depth)?;
            Ok(match cli.format {
                Format::Csv => {
                    let mut out = String::from("word,count\n");
                    for (w, c) in &rep.counts {
                        let _ = writeln!(out, "{w},{c}");
                    }
                    let _ = writeln!(
                        out,
                        "max_abs_deviation,{},{}",
                        rep.max_abs_deviation,
                        format_sig(&rep.max_abs_deviation, FLOAT_DIGITS)
                    );
                    out
                }
                Format::Json => pretty(&json!({
                    "t": rep.t,
                    "k": rep.k,
                    "counts": rep.counts.iter().map(|(w, c)| (w.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
                    "max_abs_deviation": rational_json(&rep.max_abs_deviation),
                })),
            })
        }

        Command::Minkowski { dir, point } => {
            let p = parse_point(g, point)?;
            let q = match dir {
                Direction::Forward => phi(g, &p)?,
                Direction::Inverse => phi_inverse(g, &p)?,
            };
            Ok(match cli.format {
                Format::Csv => format!("input,output\n\"{p}\",\"{q}\"\n"),
                Format::Json => pretty(&json!({ "input": p.to_string(), "output": q.to_string() })),
            })
        }

        Command::Figure4 { count, out, kind } => {
            if g.dim() != 2 {
                return Err(Error::DimensionUnsupported {
                    supported: 2,
                    got: g.dim(),
                });
            }
            let pts = match kind {
                EnumKind::Rational => enumerate_rationals(g, *count)?,
                EnumKind::Dyadic => enumerate_dyadics(g, *count)?,
            };
            emit_scatter_svg(&pts, out)?;
            Ok(format!("wrote {} points to {}\n", pts.len(), out.display()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn run_args(args: &[&str]) -> Result<String> {
        let mut full = vec!["kvn"];
        full.extend_from_slice(args);
        run(&Cli::parse_from(full))
    }

    #[test]
    fn minkowski_round_trip() {
        let out = run_args(&["--dim", "1", "minkowski", "--dir", "forward", "--point", "1/3"]).unwrap();
        assert_eq!(out, "input,output\n\"1/3\",\"1/4\"\n");
        let err = run_args(&["--dim", "1", "minkowski", "--dir", "inverse", "--point", "1/3"]).unwrap_err();
        assert!(matches!(err, Error::NotDyadic(_)));
    }

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pair("3, 5").unwrap(), (3, 5));
        assert!(parse_pair("3").is_err());
    }

    #[test]
    fn walsh_needs_a_mode() {
        assert!(run_args(&["walsh", "--m", "3"]).is_err());
        let out = run_args(&["--dim", "1", "walsh", "--inner", "5,5"]).unwrap();
        assert_eq!(out, "m,l,inner_product\n5,5,1\n");
    }
}
