//! Experiment configuration: TOML document, command line overrides, and
//! domain construction.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use billiard_core::domain::{builtin, BoundaryComponent, Domain};
use billiard_core::geometry;
use billiard_core::map::PhasePoint;
use billiard_core::{BoundarySegment, Point2, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// The on-disk configuration document.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub steps: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub bins: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub initial: Option<InitialPoint>,
    pub domain: DomainConfig,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialPoint {
    pub component: usize,
    pub s0: f64,
    pub theta0: f64,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub builtin: Option<BuiltinSpec>,
    pub components: Option<Vec<ComponentSpec>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinSpec {
    pub name: String,
    #[serde(default)]
    pub params: BuiltinParams,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinParams {
    pub radius: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub vertices: Option<Vec<[f64; 2]>>,
    pub straight: Option<f64>,
    pub outer_radius: Option<f64>,
    pub inner_radius: Option<f64>,
    pub offset: Option<[f64; 2]>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComponentSpec {
    Circle {
        #[serde(default)]
        center: Option<[f64; 2]>,
        radius: f64,
    },
    Ellipse {
        #[serde(default)]
        center: Option<[f64; 2]>,
        a: f64,
        b: f64,
        #[serde(default)]
        rotation: Option<f64>,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Stadium {
        straight: f64,
        radius: f64,
        #[serde(default)]
        center: Option<[f64; 2]>,
    },
    Chain {
        segments: Vec<SegmentSpec>,
    },
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SegmentSpec {
    Line {
        from: [f64; 2],
        to: [f64; 2],
    },
    CircularArc {
        center: [f64; 2],
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
    EllipticalArc {
        center: [f64; 2],
        a: f64,
        b: f64,
        rotation: f64,
        start_param: f64,
        sweep: f64,
    },
}

/// Command line overrides applied on top of the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub steps: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub bins: Option<usize>,
    pub component: Option<usize>,
    pub s0: Option<f64>,
    pub theta0: Option<f64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

/// A fully resolved experiment.
pub struct Experiment {
    pub domain: Domain<f64>,
    pub domain_hash: String,
    pub steps: usize,
    pub samples: usize,
    pub seed: u64,
    pub bins: usize,
    pub initial: Option<PhasePoint<f64>>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

pub fn load(path: &Path, over: Overrides) -> Result<Experiment> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let file: ConfigFile = toml::from_str(&text)
        .with_context(|| format!("invalid config document {}", path.display()))?;

    let domain = build_domain(&file.domain)?;
    let domain_hash = hash_domain(&file.domain)?;

    let steps = over.steps.or(file.steps).unwrap_or(1000);
    let samples = over.samples.or(file.samples).unwrap_or(100);
    let seed = over.seed.or(file.seed).unwrap_or(0);
    let bins = over.bins.or(file.bins).unwrap_or(50);
    if steps < 2 {
        bail!("steps must be at least 2, got {steps}");
    }
    if samples < 1 {
        bail!("samples must be at least 1, got {samples}");
    }
    if bins < 2 {
        bail!("bins must be at least 2, got {bins}");
    }

    let initial_cfg = match (over.component, over.s0, over.theta0) {
        (None, None, None) => file.initial,
        (Some(component), Some(s0), Some(theta0)) => Some(InitialPoint {
            component,
            s0,
            theta0,
        }),
        _ => bail!("--component, --s0 and --theta0 must be given together"),
    };
    let initial = initial_cfg
        .map(|p| {
            PhasePoint::new(&domain, p.component, p.s0, p.theta0)
                .map_err(|e| anyhow!("invalid initial phase point: {e}"))
        })
        .transpose()?;

    Ok(Experiment {
        domain,
        domain_hash,
        steps,
        samples,
        seed,
        bins,
        initial,
        format: over.format.or(file.format).unwrap_or(OutputFormat::Csv),
        out: over.out.or(file.out),
    })
}

/// Short hash of the canonical JSON form of the domain description.
fn hash_domain(cfg: &DomainConfig) -> Result<String> {
    let canonical = serde_json::to_string(cfg).context("serialize domain config")?;
    let digest = Sha256::digest(canonical.as_bytes());
    Ok(digest[..8].iter().map(|b| format!("{b:02x}")).collect())
}

pub fn build_domain(cfg: &DomainConfig) -> Result<Domain<f64>> {
    match (&cfg.builtin, &cfg.components) {
        (Some(_), Some(_)) => {
            bail!("config must give either domain.builtin or domain.components, not both")
        }
        (None, None) => bail!("config must give a domain (domain.builtin or domain.components)"),
        (Some(b), None) => build_builtin(b),
        (None, Some(list)) => {
            let mut components = Vec::with_capacity(list.len());
            for (i, spec) in list.iter().enumerate() {
                components.push(
                    build_component(spec).with_context(|| format!("domain.components[{i}]"))?,
                );
            }
            Domain::build(components).map_err(|e| anyhow!("invalid domain: {e}"))
        }
    }
}

fn need(p: Option<f64>, name: &str, builtin: &str) -> Result<f64> {
    p.ok_or_else(|| anyhow!("builtin '{builtin}' requires parameter '{name}'"))
}

fn build_builtin(spec: &BuiltinSpec) -> Result<Domain<f64>> {
    let p = &spec.params;
    let name = spec.name.as_str();
    let dom = match name {
        "circle" => builtin::circle(need(p.radius, "radius", name)?),
        "ellipse" => builtin::ellipse(need(p.a, "a", name)?, need(p.b, "b", name)?),
        "polygon" => {
            let verts = p
                .vertices
                .as_ref()
                .ok_or_else(|| anyhow!("builtin 'polygon' requires parameter 'vertices'"))?;
            let pts: Vec<Point2> = verts.iter().map(|v| Point2::new(v[0], v[1])).collect();
            builtin::polygon(&pts)
        }
        "stadium" => builtin::stadium(
            need(p.straight, "straight", name)?,
            need(p.radius, "radius", name)?,
        ),
        "concentric_annulus" => builtin::concentric_annulus(
            need(p.outer_radius, "outer_radius", name)?,
            need(p.inner_radius, "inner_radius", name)?,
        ),
        "asymmetric_annulus" => {
            let off = p.offset.unwrap_or([0.0, 0.0]);
            builtin::asymmetric_annulus(
                need(p.outer_radius, "outer_radius", name)?,
                need(p.inner_radius, "inner_radius", name)?,
                Vec2::new(off[0], off[1]),
            )
        }
        other => bail!(
            "unknown builtin table '{other}' (expected circle, ellipse, polygon, stadium, \
             concentric_annulus or asymmetric_annulus)"
        ),
    };
    dom.map_err(|e| anyhow!("invalid builtin domain: {e}"))
}

fn build_component(spec: &ComponentSpec) -> Result<BoundaryComponent<f64>> {
    let segs: Vec<BoundarySegment> = match spec {
        ComponentSpec::Circle { center, radius } => {
            let c = center.unwrap_or([0.0, 0.0]);
            vec![geometry::BoundarySegment::circular_arc(
                Point2::new(c[0], c[1]),
                *radius,
                0.0,
                std::f64::consts::TAU,
            )?]
        }
        ComponentSpec::Ellipse {
            center,
            a,
            b,
            rotation,
        } => {
            let c = center.unwrap_or([0.0, 0.0]);
            vec![geometry::BoundarySegment::elliptical_arc(
                Point2::new(c[0], c[1]),
                *a,
                *b,
                rotation.unwrap_or(0.0),
                0.0,
                std::f64::consts::TAU,
            )?]
        }
        ComponentSpec::Polygon { vertices } => {
            if vertices.len() < 3 {
                bail!("polygon component needs at least 3 vertices");
            }
            let n = vertices.len();
            (0..n)
                .map(|i| {
                    geometry::BoundarySegment::line(
                        Point2::new(vertices[i][0], vertices[i][1]),
                        Point2::new(vertices[(i + 1) % n][0], vertices[(i + 1) % n][1]),
                    )
                    .map_err(anyhow::Error::from)
                })
                .collect::<Result<_>>()?
        }
        ComponentSpec::Stadium {
            straight,
            radius,
            center,
        } => {
            let c = center.unwrap_or([0.0, 0.0]);
            let h = straight / 2.0;
            let r = *radius;
            vec![
                geometry::BoundarySegment::line(
                    Point2::new(c[0] - h, c[1] - r),
                    Point2::new(c[0] + h, c[1] - r),
                )?,
                geometry::BoundarySegment::circular_arc(
                    Point2::new(c[0] + h, c[1]),
                    r,
                    -std::f64::consts::FRAC_PI_2,
                    std::f64::consts::PI,
                )?,
                geometry::BoundarySegment::line(
                    Point2::new(c[0] + h, c[1] + r),
                    Point2::new(c[0] - h, c[1] + r),
                )?,
                geometry::BoundarySegment::circular_arc(
                    Point2::new(c[0] - h, c[1]),
                    r,
                    std::f64::consts::FRAC_PI_2,
                    std::f64::consts::PI,
                )?,
            ]
        }
        ComponentSpec::Chain { segments } => {
            segments.iter().map(build_segment).collect::<Result<_>>()?
        }
    };
    BoundaryComponent::new(segs).map_err(|e| anyhow!("invalid component: {e}"))
}

fn build_segment(spec: &SegmentSpec) -> Result<BoundarySegment> {
    Ok(match spec {
        SegmentSpec::Line { from, to } => geometry::BoundarySegment::line(
            Point2::new(from[0], from[1]),
            Point2::new(to[0], to[1]),
        )?,
        SegmentSpec::CircularArc {
            center,
            radius,
            start_angle,
            sweep,
        } => geometry::BoundarySegment::circular_arc(
            Point2::new(center[0], center[1]),
            *radius,
            *start_angle,
            *sweep,
        )?,
        SegmentSpec::EllipticalArc {
            center,
            a,
            b,
            rotation,
            start_param,
            sweep,
        } => geometry::BoundarySegment::elliptical_arc(
            Point2::new(center[0], center[1]),
            *a,
            *b,
            *rotation,
            *start_param,
            *sweep,
        )?,
    })
}
