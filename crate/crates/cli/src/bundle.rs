//! Scene bundles: a `bundle.toml` naming the track, region, route-graph,
//! scene-configuration, vocabulary, lexicon and grammar files.
//!
//! ```toml
//! schema = "scenetalk.bundle/1"
//! tracks = "tracks.jsonl"
//! regions = "regions.json"
//! route_graph = "route_graph.json"   # optional
//! scene = "scene.toml"
//! vocab = "vocab.toml"
//! lexicon = "../../data/lexicon.toml" # optional, defaults to the built-in one
//! grammar = "../../data/grammar.cfg"  # optional, defaults to the built-in one
//! ```
//!
//! Relative paths are resolved against the bundle file's directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use scenetalk_core::geometry::{Box2, Observation, Point2, Track, TrackKind};
use scenetalk_core::narrative::{Scene, SceneConfig};
use scenetalk_core::schemas::RouteGraph;
use scenetalk_core::time::TimePoint;
use scenetalk_nlg::{Grammar, Lexicon, Vocabulary};

use crate::error::{from_json, from_toml, CliError, Location};

pub const BUNDLE_SCHEMA: &str = "scenetalk.bundle/1";
pub const TRACKS_SCHEMA: &str = "scenetalk.tracks/1";
pub const REGIONS_SCHEMA: &str = "scenetalk.regions/1";
pub const ROUTE_GRAPH_SCHEMA: &str = "scenetalk.route_graph/1";

pub const DEFAULT_LEXICON: &str = include_str!("../../../data/lexicon.toml");
pub const DEFAULT_GRAMMAR: &str = include_str!("../../../data/grammar.cfg");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleFile {
    schema: String,
    tracks: PathBuf,
    regions: PathBuf,
    route_graph: Option<PathBuf>,
    scene: PathBuf,
    vocab: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    grammar: Option<PathBuf>,
}

/// Everything needed to narrate one scene.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub path: PathBuf,
    pub scene: Scene,
    pub config: SceneConfig,
    pub config_path: PathBuf,
    pub vocab: Vocabulary,
    pub lexicon: Lexicon,
    pub grammar: Grammar,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(Location::file(path), e))
}

fn check_schema(path: &Path, line: usize, found: &str, expected: &str) -> Result<(), CliError> {
    if found == expected {
        Ok(())
    } else {
        Err(CliError::input(Location::line(path, line), format!("schema `{found}`, expected `{expected}`")))
    }
}

impl Bundle {
    /// Loads a bundle from its `bundle.toml` or from the directory holding it.
    /// `config` replaces the scene configuration named in the bundle.
    pub fn load(path: &Path, config: Option<&Path>) -> Result<Bundle, CliError> {
        let file = if path.is_dir() { path.join("bundle.toml") } else { path.to_path_buf() };
        let src = read(&file)?;
        let spec: BundleFile = toml::from_str(&src).map_err(|e| from_toml(&file, &src, e))?;
        check_schema(&file, 1, &spec.schema, BUNDLE_SCHEMA)?;
        let dir = file.parent().unwrap_or(Path::new("."));
        let at = |p: &Path| dir.join(p);

        let tracks = load_tracks(&at(&spec.tracks))?;
        let regions = load_regions(&at(&spec.regions))?;
        let route_graph = spec.route_graph.as_ref().map(|p| load_route_graph(&at(p))).transpose()?;
        let config_path = config.map(Path::to_path_buf).unwrap_or_else(|| at(&spec.scene));
        let config = load_config(&config_path)?;
        let vocab = match &spec.vocab {
            Some(p) => load_vocab(&at(p))?,
            None => Vocabulary::default(),
        };
        let lexicon = load_lexicon(spec.lexicon.as_ref().map(|p| at(p)).as_deref())?;
        let grammar = load_grammar(spec.grammar.as_ref().map(|p| at(p)).as_deref())?;
        let scene = Scene::new(tracks, regions, route_graph).map_err(|e| CliError::input(Location::file(&file), e))?;
        Ok(Bundle { path: file, scene, config, config_path, vocab, lexicon, grammar })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    schema: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TrackRecord {
    entity_id: String,
    kind: TrackKind,
    t: f64,
    /// `[xmin, ymin, xmax, ymax]`
    #[serde(default, rename = "box")]
    bbox: Option<[f64; 4]>,
    #[serde(default)]
    point: Option<[f64; 2]>,
    #[serde(default)]
    depth: Option<f64>,
    #[serde(default)]
    depth_extent: Option<[f64; 2]>,
}

/// Line-delimited observations. The first non-blank line is the header
/// `{"schema": "scenetalk.tracks/1"}`; every further line is one record
/// `{entity_id, kind, t, box?, point?, depth?, depth_extent?}`, in
/// increasing `t` per entity.
pub fn load_tracks(path: &Path) -> Result<Vec<Track>, CliError> {
    let src = read(path)?;
    parse_tracks(path, &src)
}

pub fn parse_tracks(path: &Path, src: &str) -> Result<Vec<Track>, CliError> {
    let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (n, header) = lines.next().ok_or_else(|| CliError::input(Location::file(path), "empty tracks file"))?;
    let header: Header = serde_json::from_str(header).map_err(|e| CliError::input(Location::line(path, n), e))?;
    check_schema(path, n, &header.schema, TRACKS_SCHEMA)?;

    let mut grouped: BTreeMap<String, (TrackKind, Vec<Observation>)> = BTreeMap::new();
    for (n, line) in lines {
        let at = || Location::line(path, n);
        let r: TrackRecord = serde_json::from_str(line).map_err(|e| CliError::input(at(), e))?;
        let obs = Observation {
            at: TimePoint::from_secs(r.t).map_err(|e| CliError::input(at(), e))?,
            bbox: r.bbox.map(Box2::from_corners).transpose().map_err(|e| CliError::input(at(), e))?,
            point: r.point.map(|[x, y]| Point2::new(x, y)),
            depth: r.depth,
            depth_extent: r.depth_extent.map(|[near, far]| (near, far)),
        };
        // A one-observation track checks the record on its own line.
        Track::new(r.entity_id.clone(), r.kind, vec![obs.clone()]).map_err(|e| CliError::input(at(), e))?;
        let (kind, list) = grouped.entry(r.entity_id.clone()).or_insert_with(|| (r.kind, Vec::new()));
        if *kind != r.kind {
            return Err(CliError::input(at(), format!("`{}` was first given kind {}", r.entity_id, kind.name())));
        }
        if list.last().is_some_and(|prev| prev.at >= obs.at) {
            return Err(CliError::input(at(), format!("observations of `{}` must be in increasing time", r.entity_id)));
        }
        list.push(obs);
    }
    grouped
        .into_iter()
        .map(|(id, (kind, obs))| Track::new(id, kind, obs).map_err(|e| CliError::input(Location::file(path), e)))
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionsFile {
    schema: String,
    regions: Vec<RegionRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionRecord {
    name: String,
    #[serde(rename = "box")]
    bbox: [f64; 4],
}

/// `{"schema": "scenetalk.regions/1", "regions": [{"name", "box": [xmin, ymin, xmax, ymax]}]}`
pub fn load_regions(path: &Path) -> Result<Vec<(String, Box2)>, CliError> {
    let src = read(path)?;
    let file: RegionsFile = serde_json::from_str(&src).map_err(|e| from_json(path, e))?;
    check_schema(path, 1, &file.schema, REGIONS_SCHEMA)?;
    file.regions
        .into_iter()
        .map(|r| {
            let b = Box2::from_corners(r.bbox)
                .map_err(|e| CliError::input(Location::file(path), format!("region `{}`: {e}", r.name)))?;
            Ok((r.name, b))
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RouteGraphFile {
    schema: String,
    nodes: Vec<NodeRecord>,
    edges: Vec<[String; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeRecord {
    name: String,
    region: String,
}

/// `{"schema": "scenetalk.route_graph/1", "nodes": [{"name", "region"}], "edges": [["a", "b"]]}`
pub fn load_route_graph(path: &Path) -> Result<RouteGraph, CliError> {
    let src = read(path)?;
    let file: RouteGraphFile = serde_json::from_str(&src).map_err(|e| from_json(path, e))?;
    check_schema(path, 1, &file.schema, ROUTE_GRAPH_SCHEMA)?;
    RouteGraph::new(file.nodes.into_iter().map(|n| (n.name, n.region)), file.edges.into_iter().map(|[a, b]| (a, b)))
        .map_err(|e| CliError::input(Location::file(path), e))
}

pub fn load_config(path: &Path) -> Result<SceneConfig, CliError> {
    let src = read(path)?;
    toml::from_str(&src).map_err(|e| from_toml(path, &src, e))
}

pub fn load_vocab(path: &Path) -> Result<Vocabulary, CliError> {
    let src = read(path)?;
    Vocabulary::from_toml_str(&src).map_err(|e| CliError::from_load(path, e))
}

pub fn load_lexicon(path: Option<&Path>) -> Result<Lexicon, CliError> {
    match path {
        Some(p) => Lexicon::from_toml_str(&read(p)?).map_err(|e| CliError::from_load(p, e)),
        None => {
            Lexicon::from_toml_str(DEFAULT_LEXICON).map_err(|e| CliError::from_load(Path::new("<built-in lexicon>"), e))
        }
    }
}

pub fn load_grammar(path: Option<&Path>) -> Result<Grammar, CliError> {
    match path {
        Some(p) => Grammar::from_text(&read(p)?).map_err(|e| CliError::from_load(p, e)),
        None => {
            Grammar::from_text(DEFAULT_GRAMMAR).map_err(|e| CliError::from_load(Path::new("<built-in grammar>"), e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn track_diagnostics_name_the_line() {
        let p = Path::new("tracks.jsonl");
        let ok = "{\"schema\":\"scenetalk.tracks/1\"}\n\
                  {\"entity_id\":\"a\",\"kind\":\"person\",\"t\":0.0,\"point\":[1,2]}\n\
                  {\"entity_id\":\"a\",\"kind\":\"person\",\"t\":0.5,\"point\":[1,3]}\n";
        let tracks = parse_tracks(p, ok).unwrap();
        assert_eq!(tracks.len(), 1);
        assert_eq!(tracks[0].observations().len(), 2);

        let cases = [
            (format!("{ok}{{\"entity_id\":\"a\",\"kind\":\"person\",\"t\":0.2,\"point\":[1,3]}}\n"), 4),
            (format!("{ok}{{\"entity_id\":\"a\",\"kind\":\"gaze\",\"t\":0.9,\"point\":[1,3]}}\n"), 4),
            (format!("{ok}\n{{\"entity_id\":\"b\",\"kind\":\"object\",\"t\":1.0,\"box\":[3,0,1,1]}}\n"), 5),
            (format!("{ok}{{\"entity_id\":\"b\",\"kind\":\"object\",\"t\":1.0}}\n"), 4),
            (format!("{ok}{{\"entity_id\":\"b\",\"kind\":\"object\",\"t\":1.0,\"point\":[1,1],\"colour\":2}}\n"), 4),
            ("{\"schema\":\"scenetalk.tracks/9\"}\n".to_string(), 1),
        ];
        for (src, line) in cases {
            match parse_tracks(p, &src) {
                Err(CliError::Input { at, .. }) => assert_eq!(at.line, Some(line), "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn built_in_language_data_loads() {
        load_lexicon(None).unwrap();
        load_grammar(None).unwrap();
    }
}
