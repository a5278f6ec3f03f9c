//! Deterministic SVG: walks over their pyramid network, six-vertex height
//! maps, lozenge tilings, and per-level tile diagrams of the 3D tilings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use fredkin1d::{height_profile, SpinChain};
use lozengemod::{height_field as loz_height, LozengeTiling, TriDomain};
use sixvertex::{Kind, SixVertexConfig};

use crate::{write_atomic, CliError, Format, Model, RunSpec};

/// Which ground-basis state to draw when no input file is given.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Pick {
    Max,
    Min,
}

const PALETTE: [&str; 9] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f"];
const SHADES: [&str; 3] = ["#f2f2f2", "#b3b3b3", "#595959"];

fn color(c: u8) -> &'static str {
    PALETTE[(c.max(1) as usize - 1) % PALETTE.len()]
}

struct Svg {
    w: f64,
    h: f64,
    body: String,
}

impl Svg {
    fn new(w: f64, h: f64) -> Self {
        Svg { w, h, body: String::new() }
    }
    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}" stroke-width="{width:.2}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}" stroke="black" stroke-width="1"/>"#
        );
    }
    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, stroke: &str) {
        let p: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(self.body, r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>"#, p.join(" "));
    }
    fn circle(&mut self, c: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}" fill="{fill}"/>"#, c.0, c.1);
    }
    fn text(&mut self, at: (f64, f64), size: f64, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" font-size="{size:.1}" text-anchor="middle" dominant-baseline="middle" font-family="monospace">{s}</text>"#,
            at.0, at.1
        );
    }
    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.w, self.h, self.w, self.h, self.body
        )
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), msg: e.to_string() })
}

fn pick_by<T>(items: Vec<T>, pick: Pick, key: impl Fn(&T) -> i64) -> Result<T, CliError> {
    let it = items.into_iter();
    match pick {
        Pick::Max => it.max_by_key(|t| key(t)),
        Pick::Min => it.min_by_key(|t| key(t)),
    }
    .ok_or_else(|| CliError::Input("empty ground basis".into()))
}

/// Walk above its network: level `l` of tower `i` is drawn at row `top − l`,
/// so the full top layer sits on top.
pub(crate) fn render_walk(chain: &SpinChain) -> String {
    let n = chain.len();
    let prof = height_profile(chain);
    let hmax = *prof.heights.iter().max().unwrap_or(&0) as f64;
    let (cell, pad) = (40.0, 20.0);
    let top = n / 2;
    let walk_h = (hmax + 1.0) * cell;
    let mut svg = Svg::new(n as f64 * cell + 2.0 * pad, walk_h + (top + 1) as f64 * cell + 3.0 * pad);
    let base = pad + hmax * cell;
    for (i, sp) in chain.spins.iter().enumerate() {
        let a = (pad + i as f64 * cell, base - prof.heights[i] as f64 * cell);
        let b = (pad + (i + 1) as f64 * cell, base - prof.heights[i + 1] as f64 * cell);
        svg.line(a, b, color(sp.color), 3.0);
        svg.circle(a, 3.0, "black");
    }
    svg.circle((pad + n as f64 * cell, base), 3.0, "black");
    let y0 = walk_h + 2.0 * pad;
    for (i, &h) in fredkin1d::tower_heights(n).iter().enumerate() {
        for l in (top + 1 - h)..=top {
            let (x, y) = (pad + i as f64 * cell, y0 + (top - l) as f64 * cell);
            svg.rect(x + 2.0, y + 2.0, cell - 4.0, cell - 4.0, "#dde8f5");
            svg.text((x + cell / 2.0, y + cell / 2.0), 10.0, &format!("{i},{l}"));
        }
        let sp = chain.spins[i];
        let y = y0 + h as f64 * cell + cell / 2.0;
        svg.text((pad + i as f64 * cell + cell / 2.0, y), 12.0, &sp.to_string());
    }
    svg.finish()
}

/// Dual heights on the grid with the spins between them.
pub(crate) fn render_sixvertex(c: &SixVertexConfig) -> Result<String, CliError> {
    let l = c.l();
    let f = sixvertex::height_field(c)?;
    let (cell, pad) = (60.0, 30.0);
    let side = l as f64 * cell + 2.0 * pad;
    let mut svg = Svg::new(side, side);
    // dual point (x, y) with x, y ∈ −1..L−1; y grows upwards
    let at = |x: f64, y: f64| (pad + (x + 1.0) * cell, side - pad - (y + 1.0) * cell);
    for x in -1..l as i64 {
        for y in -1..l as i64 {
            let p = at(x as f64, y as f64);
            let ring = x < 0 || y < 0 || x == l as i64 - 1 || y == l as i64 - 1;
            svg.circle(p, 13.0, if ring { "#e6e6e6" } else { "#fff3c4" });
            svg.text(p, 13.0, &f.get(x, y).to_string());
        }
    }
    for site in SixVertexConfig::sites(l) {
        let [a, b] = site.duals();
        let (pa, pb) = (at(a.0 as f64, a.1 as f64), at(b.0 as f64, b.1 as f64));
        let mid = ((pa.0 + pb.0) / 2.0, (pa.1 + pb.1) / 2.0);
        let sp = c.get(site);
        // arrow across the dual bond: H spins point up/down, V spins right/left
        let d = if sp.up { 1.0 } else { -1.0 } * cell * 0.22;
        let (tail, head) = match site.kind {
            Kind::H => ((mid.0, mid.1 + d), (mid.0, mid.1 - d)),
            Kind::V => ((mid.0 - d, mid.1), (mid.0 + d, mid.1)),
        };
        svg.line(tail, head, color(sp.color), 3.0);
        svg.circle(head, 4.0, color(sp.color));
    }
    Ok(svg.finish())
}

fn tri_xy(v: (i64, i64), scale: f64, origin: (f64, f64)) -> (f64, f64) {
    let (a, b) = (v.0 as f64, v.1 as f64);
    (origin.0 + scale * (a + b / 2.0), origin.1 - scale * b * 3f64.sqrt() / 2.0)
}

/// Bounding box of the domain in lattice-plane coordinates (unit scale).
fn domain_box(d: &TriDomain) -> (f64, f64, f64, f64) {
    let mut bx = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &v in d.vertices() {
        let (x, y) = tri_xy(v, 1.0, (0.0, 0.0));
        bx = (bx.0.min(x), bx.1.min(y), bx.2.max(x), bx.3.max(y));
    }
    bx
}

fn mid(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

/// Three shades by lozenge orientation, outlines between lozenges, and each
/// de Bruijn line segment drawn in its colour.
pub(crate) fn render_lozenge(d: &TriDomain, t: &LozengeTiling) -> Result<String, CliError> {
    if d.is_empty() {
        return Err(CliError::Input("empty domain".into()));
    }
    t.check_matching(d)?;
    let (scale, pad) = (50.0, 20.0);
    let (x0, y0, x1, y1) = domain_box(d);
    let origin = (pad - scale * x0, pad - scale * y0);
    let mut svg = Svg::new(scale * (x1 - x0) + 2.0 * pad, scale * (y1 - y0) + 2.0 * pad);
    let xy = |v| tri_xy(v, scale, origin);
    for (i, f) in d.faces().iter().enumerate() {
        let shade = SHADES[t.diag[i] as usize];
        let p: Vec<(f64, f64)> = f.verts().iter().map(|&v| xy(v)).collect();
        svg.polygon(&p, shade, shade);
    }
    for (i, f) in d.faces().iter().enumerate() {
        for k in 0..3u8 {
            if k != t.diag[i] {
                let [a, b] = f.edge(k);
                svg.line(xy(a), xy(b), "black", 1.5);
            }
        }
    }
    for (i, f) in d.faces().iter().enumerate() {
        let [da, db] = f.edge(t.diag[i]);
        let centre = mid(xy(da), xy(db));
        for k in 0..3u8 {
            if k != t.diag[i] {
                let [a, b] = f.edge(k);
                svg.line(mid(xy(a), xy(b)), centre, color(t.colors[i][k as usize]), 2.5);
            }
        }
    }
    Ok(svg.finish())
}

/// One panel per level, each cell labelled with its tile.
fn render_cube_levels(c: &SixVertexConfig) -> Result<String, CliError> {
    let cn = sixvertex::build_network(c.l(), c.s())?;
    let t = sixvertex::tiling_from_config(&cn, c)?;
    let levels: std::collections::BTreeSet<usize> = t.tiles.keys().map(|k| k.1).collect();
    let l = c.l();
    let (cell, pad) = (56.0, 24.0);
    let panel = l as f64 * cell + pad;
    let mut svg = Svg::new(levels.len() as f64 * panel + pad, panel + 2.0 * pad);
    for (p, &lev) in levels.iter().enumerate() {
        let ox = pad + p as f64 * panel;
        svg.text((ox + panel / 2.0 - pad / 2.0, pad / 2.0), 12.0, &format!("level {lev}"));
        for ((site, tl), tile) in &t.tiles {
            if *tl != lev {
                continue;
            }
            let [a, b] = site.duals();
            let cx = ox + ((a.0 + b.0) as f64 / 2.0 + 1.0) * cell;
            let cy = pad + panel - ((a.1 + b.1) as f64 / 2.0 + 1.0) * cell;
            let fill = if tile.index == 1 || tile.index == 5 { "#eeeeee" } else { "#cfe3f7" };
            svg.rect(cx - cell * 0.3, cy - cell * 0.3, cell * 0.6, cell * 0.6, fill);
            svg.text((cx, cy), 9.0, &tile.to_string());
        }
    }
    Ok(svg.finish())
}

fn render_prism_levels(d: &TriDomain, t: &LozengeTiling, s: u8) -> Result<String, CliError> {
    let pn = lozengemod::build_network(d, s)?;
    let pt = lozengemod::tiling_from_config(&pn, t)?;
    let levels: std::collections::BTreeSet<usize> = pt.tiles.keys().map(|k| k.1).collect();
    let (scale, pad) = (60.0, 24.0);
    let (x0, y0, x1, y1) = domain_box(d);
    let (pw, ph) = (scale * (x1 - x0) + pad, scale * (y1 - y0) + pad);
    let mut svg = Svg::new(levels.len() as f64 * pw + pad, ph + 2.0 * pad);
    for (p, &lev) in levels.iter().enumerate() {
        let origin = (pad + p as f64 * pw - scale * x0, 1.5 * pad - scale * y0);
        svg.text((pad + p as f64 * pw + pw / 2.0, pad / 2.0), 12.0, &format!("level {lev}"));
        for (i, f) in d.faces().iter().enumerate() {
            let pts: Vec<(f64, f64)> = f.verts().iter().map(|&v| tri_xy(v, scale, origin)).collect();
            match pt.tiles.get(&(i, lev)) {
                Some(tile) => {
                    let fill = match tile.arrows() {
                        2 => "#eeeeee",
                        3 => "#cfe3f7",
                        _ => "#f7d9cf",
                    };
                    svg.polygon(&pts, fill, "black");
                    let c = ((pts[0].0 + pts[1].0 + pts[2].0) / 3.0, (pts[0].1 + pts[1].1 + pts[2].1) / 3.0);
                    svg.text(c, 7.0, &tile.to_string());
                }
                None => svg.polygon(&pts, "none", "#cccccc"),
            }
        }
    }
    Ok(svg.finish())
}

fn parse_label(text: &str) -> Result<Vec<u8>, CliError> {
    text.trim()
        .split(['.', ',', ' ', '\n'])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u8>().map_err(|_| CliError::Input(format!("bad label entry {t:?}"))))
        .collect()
}

/// Renders one configuration: read from `input` (chain text, six-vertex JSON,
/// or a lozenge label as written by `enumerate`), else the max/min-weight
/// ground-basis state. `exploded` draws the per-level tiles instead.
pub fn cmd_render(spec: &RunSpec, input: Option<&Path>, pick: Pick, exploded: bool) -> Result<PathBuf, CliError> {
    spec.validate()?;
    if spec.format != Format::Svg {
        return Err(CliError::Input("render writes svg (--format svg)".into()));
    }
    let size = spec.sizes.first().copied();
    let (svg, what) = match spec.model {
        Model::Fredkin1d => {
            let n = size.expect("validated");
            let chain = match input {
                Some(p) => SpinChain::parse(&read_input(p)?, spec.s)?,
                None => pick_by(fredkin1d::enumerate_ground_basis(n, spec.s)?, pick, |c| height_profile(c).area)?,
            };
            if exploded {
                return Err(CliError::Input("per-level diagrams are drawn for the 2D models".into()));
            }
            (render_walk(&chain), format!("walk_{}", spec.tag(Some(chain.len()))))
        }
        Model::Sixvertex => {
            let l = size.expect("validated");
            let c = match input {
                Some(p) => SixVertexConfig::from_json(&read_input(p)?)?,
                None => pick_by(sixvertex::enumerate_ground_basis(l, spec.s)?, pick, |c| sixvertex::volume(c).unwrap_or(0))?,
            };
            if exploded {
                (render_cube_levels(&c)?, format!("levels_{}", spec.tag(Some(c.l()))))
            } else {
                (render_sixvertex(&c)?, format!("config_{}", spec.tag(Some(c.l()))))
            }
        }
        Model::Lozenge => {
            let d = spec.load_domain()?;
            if d.is_empty() {
                return Err(CliError::Input("empty domain".into()));
            }
            let t = match input {
                Some(p) => LozengeTiling::from_label(&d, spec.s, &parse_label(&read_input(p)?)?)?,
                None => pick_by(lozengemod::enumerate_ground_basis(&d, spec.s)?, pick, |t| {
                    loz_height(&d, &t.diag).map(|h| h.volume12()).unwrap_or(0)
                })?,
            };
            if exploded {
                (render_prism_levels(&d, &t, spec.s)?, format!("levels_{}", spec.tag(None)))
            } else {
                (render_lozenge(&d, &t)?, format!("tiling_{}", spec.tag(None)))
            }
        }
    };
    let suffix = match (input, pick) {
        (Some(_), _) => "input",
        (None, Pick::Max) => "max",
        (None, Pick::Min) => "min",
    };
    let path = spec.out.join(format!("{what}_{suffix}.svg"));
    write_atomic(&path, &svg)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_render_is_stable() {
        let c = SpinChain::parse("U1 U1 D1 D1", 1).unwrap();
        let a = render_walk(&c);
        assert_eq!(a, render_walk(&c));
        // towers of 1, 2, 2, 1 boxes
        assert_eq!(a.matches("<rect x").count(), 6);
    }

    #[test]
    fn lozenge_shades_every_face() {
        let d = TriDomain::named("hex1").unwrap();
        let t = lozengemod::enumerate_ground_basis(&d, 1).unwrap().remove(0);
        let svg = render_lozenge(&d, &t).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 6);
    }

    #[test]
    fn labels_parse_with_any_separator() {
        assert_eq!(parse_label("1.2.3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_label("1 2,3\n").unwrap(), vec![1, 2, 3]);
        assert!(parse_label("1.x").is_err());
    }
}
