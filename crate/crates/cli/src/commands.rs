use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::sync::Arc;

use minvol::polytope::{min_bound, parse_points, LatticePoint, Polytope};
use minvol::regularity::{format_heights, regularity_certificate, Regularity};
use minvol::search::{survey_each, SearchError, SearchParams, SurveyRow};
use minvol::triangulation::{
    build, format_certificate, parse_certificate, validate, Build, PointConfig, Triangulation,
    TriangulationError,
};
use num_bigint::BigInt;

const NOT_APPLICABLE: &str = "n/a (c = 0)";

#[derive(Debug)]
pub enum Failure {
    /// A checked mathematical property does not hold.
    Violation(String),
    /// Unreadable or inconsistent input.
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Violation(m) | Failure::Input(m) => f.write_str(m),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_points(path: &Path) -> Result<Vec<LatticePoint>, Failure> {
    let (_, points) = parse_points(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(points)
}

fn load_polytope(path: &Path) -> Result<Polytope, Failure> {
    Polytope::from_points(&load_points(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_config(path: &Path, config_points: bool) -> Result<Arc<PointConfig>, Failure> {
    let config = if config_points {
        PointConfig::from_points(load_points(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    } else {
        PointConfig::lattice(load_polytope(path)?)
    };
    Ok(Arc::new(config))
}

/// Certificate whose point set must match the configuration named by `file`.
fn load_triangulation(
    file: &Path,
    cert: &Path,
    config_points: bool,
) -> Result<Triangulation, Failure> {
    let expected = load_config(file, config_points)?;
    let parsed = parse_certificate(&read(cert)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", cert.display())))?;
    let want: BTreeSet<&LatticePoint> = expected.points().iter().collect();
    let got: BTreeSet<&LatticePoint> = parsed.points.iter().collect();
    if parsed.dim != expected.dim() || got.len() != parsed.points.len() || want != got {
        let which = if config_points {
            "points of"
        } else {
            "lattice points of"
        };
        return Err(Failure::Input(format!(
            "{}: point set differs from the {which} {}",
            cert.display(),
            file.display()
        )));
    }
    parsed.into_triangulation().map_err(|e| match e {
        TriangulationError::DegenerateSimplex(_) => Failure::Violation(e.to_string()),
        _ => Failure::Input(format!("{}: {e}", cert.display())),
    })
}

fn run_build(config: Arc<PointConfig>) -> Result<Build, Failure> {
    build(config).map_err(|e| match e {
        TriangulationError::BoundViolation { .. }
        | TriangulationError::InvalidResult(_)
        | TriangulationError::Invariant(_) => Failure::Violation(e.to_string()),
        _ => Failure::Input(e.to_string()),
    })
}

pub fn analyze(file: &Path, with_build: bool, with_regular: bool) -> Result<(), Failure> {
    let p = load_polytope(file)?;
    let census = p.lattice_census();
    let (b, c) = (census.b(), census.c());
    let volume = p.normalized_volume();
    println!("d: {}", p.dim());
    println!("b: {b}");
    println!("c: {c}");
    println!("volume: {}", p.volume());
    println!("normalized_volume: {volume}");
    let mut holds = true;
    if c == 0 {
        println!("bound: {NOT_APPLICABLE}");
        println!("bound_holds: {NOT_APPLICABLE}");
        println!("castelnuovo: {NOT_APPLICABLE}");
    } else {
        let bound = min_bound(p.dim(), b, c).map_err(|e| Failure::Input(e.to_string()))?;
        holds = volume >= bound;
        println!("bound: {bound}");
        println!("bound_holds: {holds}");
        println!("castelnuovo: {}", volume == bound);
    }
    if with_build {
        if c == 0 {
            println!("triangulation_size: {NOT_APPLICABLE}");
        } else {
            let out = run_build(Arc::new(PointConfig::lattice(p)))?;
            let t = &out.triangulation;
            println!("triangulation_size: {}", t.len());
            println!("unimodular: {}", t.is_unimodular());
            if with_regular {
                println!("regular: {}", regularity_certificate(t).is_regular());
            }
        }
    }
    if holds {
        Ok(())
    } else {
        Err(Failure::Violation(
            "normalized volume is below the bound".into(),
        ))
    }
}

pub fn triangulate(file: &Path, out: &Path, config_points: bool) -> Result<(), Failure> {
    let config = load_config(file, config_points)?;
    if config.c() == 0 {
        return Err(Failure::Input(format!(
            "{}: no interior point in the configuration",
            file.display()
        )));
    }
    let result = run_build(config)?;
    let t = &result.triangulation;
    fs::write(out, format_certificate(t))
        .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    let cfg = t.config();
    let sizes: Vec<String> = result.stage_sizes().iter().map(usize::to_string).collect();
    println!("simplices: {}", t.len());
    println!("bound: {}", result.bound);
    println!("stages: {}", sizes.join(" "));
    println!("cone: point {} ({})", result.apex, cfg.point(result.apex));
    for tr in &result.traces {
        println!(
            "step {}: point {} ({}) e = {} q = {} increment = {}",
            tr.step,
            tr.point,
            cfg.point(tr.point),
            tr.e,
            tr.q,
            tr.increment()
        );
    }
    Ok(())
}

pub fn verify(file: &Path, cert: &Path, config_points: bool) -> Result<(), Failure> {
    let t = load_triangulation(file, cert, config_points)?;
    let cfg = t.config();
    let report = validate(&t);
    println!("simplices: {}", t.len());
    println!("volume_sum: {}", t.volume_sum());
    println!("normalized_volume: {}", cfg.polytope().normalized_volume());
    let bound: Option<BigInt> = (cfg.c() > 0)
        .then(|| min_bound(cfg.dim(), cfg.b(), cfg.c()))
        .transpose()
        .map_err(|e| Failure::Input(e.to_string()))?;
    match &bound {
        Some(bound) => println!("bound: {bound}"),
        None => println!("bound: {NOT_APPLICABLE}"),
    }
    let failure = if let Some(v) = report.first() {
        Some(v.to_string())
    } else {
        bound
            .filter(|bound| &BigInt::from(t.len()) < bound)
            .map(|bound| format!("count bound: {} simplices < {bound}", t.len()))
    };
    match failure {
        None => {
            println!("result: PASS");
            Ok(())
        }
        Some(msg) => {
            println!("result: FAIL: {msg}");
            Err(Failure::Violation(msg))
        }
    }
}

pub fn regular(file: &Path, cert: &Path, config_points: bool) -> Result<(), Failure> {
    let t = load_triangulation(file, cert, config_points)?;
    let report = validate(&t);
    if let Some(v) = report.first() {
        return Err(Failure::Violation(format!("not a triangulation: {v}")));
    }
    match regularity_certificate(&t) {
        Regularity::Regular(h) => print!("{}", format_heights(&h)),
        Regularity::NotRegular(_) => println!("NOT REGULAR"),
    }
    Ok(())
}

pub fn search(params: &SearchParams) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut emit = |line: &str| {
        writeln!(out, "{line}")
            .and_then(|_| out.flush())
            .expect("writing to stdout");
    };
    emit(SurveyRow::HEADER);
    survey_each(params, |row| emit(&row.to_tsv())).map_err(|e| match e {
        SearchError::InvalidParams(_) => Failure::Input(e.to_string()),
        _ => Failure::Violation(e.to_string()),
    })
}
