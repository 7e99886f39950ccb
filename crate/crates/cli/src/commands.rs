use crate::cache::{warm, CharacterCache};
use crate::output::{monomial, Report};
use crate::{Command, Engine, Failure, HurwitzArgs, SeriesArgs, Which};
use hurwitz_core::chambers::{
    chamber_of, fit_polynomial, structure_check, wall_crossing, ChamberError, ChamberSpec,
    FittedPolynomial, Sign, WallSpec,
};
use hurwitz_core::completed::completed_cycle;
use hurwitz_core::cutjoin::{build_q, evolve, power_sum_seed};
use hurwitz_core::fock::vev_fock;
use hurwitz_core::hurwitz::{h_char, h_connected, HurwitzQuery};
use hurwitz_core::intersection::{
    extract_brackets, f_series, g_from_brackets, g_from_hurwitz, g_series, QSpacePolynomial,
};
use hurwitz_core::wedge::{connected_patterns, hurwitz_patterns};
use hurwitz_core::{Error, Partition, Poly, Rational};
use serde_json::{json, Value};

type Outcome = std::result::Result<Report, Failure>;

pub fn run(cmd: &Command, cache: Option<&CharacterCache>) -> Outcome {
    match cmd {
        Command::Hurwitz(args) => hurwitz(args, cache),
        Command::CompletedCycle { r } => completed(*r),
        Command::Cutjoin { r, weight } => cutjoin(*r, *weight),
        Command::Chamber { r, s, point } => chamber(*r, *s, point, cache),
        Command::Wallcross {
            r,
            s,
            wall,
            point,
            eval,
            count,
        } => wallcross(*r, *s, wall, point, eval, *count, cache),
        Command::Brackets { r, g, n } => brackets(*r, *g, *n),
        Command::Series(args) => series(args),
    }
}

fn precondition(msg: impl Into<String>) -> Failure {
    Failure::Core(Error::Precondition(msg.into()))
}

fn parse_partition(text: &str, what: &str) -> std::result::Result<Partition, Failure> {
    text.parse::<Partition>()
        .map_err(|e| precondition(format!("--{what}: {e}")))
}

fn hurwitz(args: &HurwitzArgs, cache: Option<&CharacterCache>) -> Outcome {
    let mu = parse_partition(&args.mu, "mu")?;
    let nu = parse_partition(&args.nu, "nu")?;
    let q = HurwitzQuery::new(args.r, args.s, mu.clone(), nu.clone(), args.connected)?;
    let engines: Vec<Engine> = match args.engine {
        Engine::All if args.connected => vec![Engine::Char, Engine::Patterns],
        Engine::All => vec![Engine::Char, Engine::Fock, Engine::Patterns],
        Engine::Fock if args.connected => {
            return Err(precondition("the fock engine computes disconnected numbers only"))
        }
        e => vec![e],
    };
    let mut values: Vec<(&str, Rational)> = Vec::new();
    for e in engines {
        let v = match e {
            Engine::Char => {
                warm(cache, q.degree());
                if args.connected {
                    h_connected(&q)?
                } else {
                    h_char(&q)?
                }
            }
            Engine::Fock => vev_fock(args.r, args.s, &mu, &nu)?,
            Engine::Patterns if args.connected => connected_patterns(args.r, args.s, &mu, &nu)?,
            Engine::Patterns => hurwitz_patterns(args.r, args.s, &mu, &nu)?,
            Engine::All => unreachable!(),
        };
        let name = match e {
            Engine::Char => "char",
            Engine::Fock => "fock",
            _ => "patterns",
        };
        values.push((name, v));
    }
    let agreement = values.iter().all(|(_, v)| *v == values[0].1);
    let value = values[0].1.clone();
    let json = json!({
        "r": args.r,
        "s": args.s,
        "mu": mu.to_string(),
        "nu": nu.to_string(),
        "connected": args.connected,
        "genus": q.genus().to_string(),
        "value": value.to_string(),
        "engines_used": values.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
        "engine_values": values.iter().map(|(n, v)| (n.to_string(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
        "agreement": agreement,
    });
    let rows = values
        .iter()
        .map(|(n, v)| {
            vec![
                args.r.to_string(),
                args.s.to_string(),
                mu.to_string(),
                nu.to_string(),
                args.connected.to_string(),
                q.genus().to_string(),
                n.to_string(),
                v.to_string(),
            ]
        })
        .collect();
    let report = Report {
        json,
        header: vec!["r", "s", "mu", "nu", "connected", "genus", "engine", "value"],
        rows,
    };
    if agreement {
        Ok(report)
    } else {
        Err(Failure::Mismatch(report))
    }
}

fn completed(r: u32) -> Outcome {
    let el = completed_cycle(r)?;
    let rows: Vec<Vec<String>> = el
        .terms()
        .map(|(p, c)| vec![p.to_string(), c.to_string()])
        .collect();
    Ok(Report {
        json: json!({ "r": r, "cycle": r + 1, "terms": el.to_json() }),
        header: vec!["partition", "coefficient"],
        rows,
    })
}

fn cutjoin(r: u32, weight: u32) -> Outcome {
    if weight == 0 {
        return Err(precondition("--weight must be positive"));
    }
    let q = build_q(r + 1, weight)?;
    let records = q.to_records();
    let rows = records
        .iter()
        .map(|rec| {
            vec![
                rec.derivatives.clone(),
                rec.multiplications.clone(),
                rec.coefficient.clone(),
            ]
        })
        .collect();
    Ok(Report {
        json: json!({
            "r": r,
            "weight_cap": weight,
            "rules": records,
            "operator": q.render(),
        }),
        header: vec!["derivatives", "multiplications", "coefficient"],
        rows,
    })
}

fn parse_point(text: &str) -> std::result::Result<(Vec<u32>, Vec<u32>), Failure> {
    let (x, y) = text
        .split_once(';')
        .ok_or_else(|| precondition(format!("point `{text}` must look like `x1,x2;y1,y2`")))?;
    let side = |s: &str| -> std::result::Result<Vec<u32>, Failure> {
        s.split(',')
            .map(|v| {
                v.trim()
                    .parse::<u32>()
                    .map_err(|_| precondition(format!("bad coordinate `{v}` in `{text}`")))
            })
            .collect()
    };
    Ok((side(x)?, side(y)?))
}

fn chamber_at(x: &[u32], y: &[u32]) -> std::result::Result<ChamberSpec, Failure> {
    chamber_of(x, y).map_err(|e| match e {
        ChamberError::OnWall(w) => precondition(format!("point lies on the wall {w}")),
        ChamberError::NotInV => precondition("coordinates must be positive with equal sums"),
    })
}

fn chamber_json(c: &ChamberSpec) -> Value {
    Value::Array(
        c.signs
            .iter()
            .map(|(w, s)| {
                json!({
                    "wall": w.to_string(),
                    "sign": if *s == Sign::Plus { "+" } else { "-" },
                })
            })
            .collect(),
    )
}

fn poly_rows(fit: &FittedPolynomial) -> Vec<Vec<String>> {
    let names = fit.variable_names();
    fit.poly
        .terms()
        .map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            let mono = if mono.is_empty() { "1".into() } else { mono.join("*") };
            vec![mono, c.to_string()]
        })
        .collect()
}

fn chamber(r: u32, s: u32, point: &str, cache: Option<&CharacterCache>) -> Outcome {
    let (x, y) = parse_point(point)?;
    let c = chamber_at(&x, &y)?;
    warm(cache, x.iter().sum::<u32>().min(8));
    let fit = fit_polynomial(r, s, &c)?;
    let report = structure_check(&fit);
    Ok(Report {
        json: json!({
            "r": r,
            "s": s,
            "point": point,
            "chamber": chamber_json(&c),
            "variables": fit.variable_names(),
            "polynomial": fit.render(),
            "samples": fit.samples.len(),
            "structure": report,
        }),
        header: vec!["monomial", "coefficient"],
        rows: poly_rows(&fit),
    })
}

fn parse_wall(text: &str, m: usize, n: usize) -> std::result::Result<WallSpec, Failure> {
    let (i, j) = text
        .split_once(';')
        .ok_or_else(|| precondition(format!("wall `{text}` must look like `1;1` or `1,2;3`")))?;
    let side = |s: &str| -> std::result::Result<Vec<usize>, Failure> {
        s.split(',')
            .map(|v| match v.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(precondition(format!("bad index `{v}` in wall `{text}`"))),
            })
            .collect()
    };
    Ok(WallSpec::new(m, n, side(i)?, side(j)?)?)
}

/// Lattice points of increasing degree with `x_I - y_J > 0`.
fn positive_points(wall: &WallSpec, m: usize, n: usize, count: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    fn comps(d: u32, k: usize) -> Vec<Vec<u32>> {
        if k == 1 {
            return vec![vec![d]];
        }
        (1..d)
            .flat_map(|a| {
                comps(d - a, k - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
            })
            .collect()
    }
    let mut out = Vec::new();
    for d in 2.. {
        for x in comps(d, m) {
            for y in comps(d, n) {
                if wall.value(&x, &y) > 0 {
                    out.push((x.clone(), y));
                    if out.len() == count {
                        return out;
                    }
                }
            }
        }
        if d > 64 {
            return out;
        }
    }
    out
}

fn wallcross(
    r: u32,
    s: u32,
    wall: &str,
    point: &str,
    eval: &[String],
    count: usize,
    cache: Option<&CharacterCache>,
) -> Outcome {
    let (x, y) = parse_point(point)?;
    let c1 = chamber_at(&x, &y)?;
    let wall = parse_wall(wall, x.len(), y.len())?;
    let c2 = c1.across(&wall)?;
    warm(cache, 8);
    let f1 = fit_polynomial(r, s, &c1)?;
    let f2 = fit_polynomial(r, s, &c2)?;
    let points = if eval.is_empty() {
        positive_points(&wall, x.len(), y.len(), count)
    } else {
        eval.iter().map(|p| parse_point(p)).collect::<std::result::Result<_, _>>()?
    };
    let rep = wall_crossing(&f1, &f2, &wall, &points)?;
    let rows = rep
        .points
        .iter()
        .map(|p| {
            let fmt = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            vec![
                format!("{};{}", fmt(&p.x), fmt(&p.y)),
                p.delta.to_string(),
                p.lhs.clone(),
                p.rhs.clone(),
                p.equal.to_string(),
            ]
        })
        .collect();
    let passed = rep.passed();
    let report = Report {
        json: json!({
            "r": r,
            "s": s,
            "wall": wall.to_string(),
            "chamber_plus": chamber_json(if f1.chamber.sign_of(&wall) == Some(Sign::Plus) { &f1.chamber } else { &f2.chamber }),
            "chamber_minus": chamber_json(if f1.chamber.sign_of(&wall) == Some(Sign::Plus) { &f2.chamber } else { &f1.chamber }),
            "points": rep.points,
            "passed": passed,
        }),
        header: vec!["point", "delta", "lhs", "rhs", "equal"],
        rows,
    };
    if passed {
        Ok(report)
    } else {
        Err(Failure::Mismatch(report))
    }
}

fn brackets(r: u32, g: u32, n: u32) -> Outcome {
    let table = extract_brackets(r, g, n)?;
    let rows_typed = table.rows();
    let rows = rows_typed
        .iter()
        .map(|b| {
            vec![
                b.r.to_string(),
                b.g.to_string(),
                b.n.to_string(),
                b.k.to_string(),
                b.degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                b.value.to_string(),
            ]
        })
        .collect();
    Ok(Report {
        json: serde_json::to_value(&rows_typed).expect("bracket rows serialise"),
        header: vec!["r", "g", "n", "k", "degrees", "value"],
        rows,
    })
}

fn series_rows(f: &QSpacePolynomial, letter: &str, param: &str) -> Vec<Vec<String>> {
    f.terms()
        .map(|(mu, c)| vec![monomial(letter, mu), c.render_with(&[param])])
        .collect()
}

fn series(args: &SeriesArgs) -> Outcome {
    if args.r == 0 || args.weight == 0 {
        return Err(precondition("need --r >= 1 and --weight >= 1"));
    }
    let (f, letter, param) = match args.which {
        Which::G => (g_series(args.r, args.weight, args.u_cap)?, "q", "u"),
        Which::F => (f_series(args.r, args.weight)?, "q", "u"),
        Which::H => {
            let q = build_q(args.r + 1, args.weight)?;
            let layers = evolve(&q, args.u_cap as usize, &power_sum_seed::<Rational>(args.weight))?;
            let mut h = QSpacePolynomial::zero();
            for (m, layer) in layers.iter().enumerate() {
                let beta = Poly::var_pow(0, m as i32);
                h = h.add(&layer.map_coefficients(|c| beta.scale(c)));
            }
            (h, "p", "beta")
        }
    };
    let mut checks = serde_json::Map::new();
    if args.check {
        if args.which != Which::G {
            return Err(precondition("--check applies to --which G"));
        }
        let from_brackets = g_from_brackets(args.r, args.weight, args.u_cap)? == f;
        let from_flow = g_from_hurwitz(args.r, args.weight, args.u_cap)? == f;
        checks.insert("brackets".into(), Value::Bool(from_brackets));
        checks.insert("cut_and_join".into(), Value::Bool(from_flow));
    }
    let rows = series_rows(&f, letter, param);
    let terms: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "monomial": r[0], "coefficient": r[1] }))
        .collect();
    let ok = checks.values().all(|v| v == &Value::Bool(true));
    let report = Report {
        json: json!({
            "which": format!("{:?}", args.which),
            "r": args.r,
            "weight_cap": args.weight,
            "u_cap": args.u_cap,
            "terms": terms,
            "checks": checks,
        }),
        header: vec!["monomial", "coefficient"],
        rows,
    };
    if ok {
        Ok(report)
    } else {
        Err(Failure::Mismatch(report))
    }
}
