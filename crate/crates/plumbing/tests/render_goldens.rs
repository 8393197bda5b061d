//! Frozen golden renderings and the endpoint-marker contract: wire endpoints
//! parsed back from a document always agree with the trace.

mod common;

use common::corpus;
use plumbing::{render_city, render_config, City, PipeConfig, RenderFormat, RenderOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ascii_opts() -> RenderOptions {
    RenderOptions::default()
}

fn svg_opts() -> RenderOptions {
    RenderOptions {
        format: RenderFormat::Svg,
        ..RenderOptions::default()
    }
}

/// Rewrites the fixtures from the current implementation. Run with
/// `UPDATE_GOLDENS=1 cargo test -p plumbing --test render_goldens`.
#[test]
fn regenerate_goldens_when_requested() {
    if std::env::var_os("UPDATE_GOLDENS").is_none() {
        return;
    }
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/goldens");
    let city = City::yoshi_hill(2).unwrap();
    let cfg = PipeConfig::new(city.clone(), vec![plumbing::CellId::new(1, 1)]).unwrap();
    let all_cross = PipeConfig::all_crossings(city.clone());
    std::fs::write(
        format!("{dir}/yoshi_hill_2_city.txt"),
        render_city(&city, &ascii_opts()).unwrap(),
    )
    .unwrap();
    std::fs::write(
        format!("{dir}/yoshi_hill_2_config.txt"),
        render_config(&cfg, &ascii_opts()).unwrap(),
    )
    .unwrap();
    std::fs::write(
        format!("{dir}/yoshi_hill_2_city.svg"),
        render_city(&city, &svg_opts()).unwrap(),
    )
    .unwrap();
    std::fs::write(
        format!("{dir}/yoshi_hill_2_config.svg"),
        render_config(&all_cross, &svg_opts()).unwrap(),
    )
    .unwrap();
}

#[test]
fn golden_ascii_city() {
    let city = City::yoshi_hill(2).unwrap();
    let text = render_city(&city, &ascii_opts()).unwrap();
    assert_eq!(text, include_str!("goldens/yoshi_hill_2_city.txt"));
}

#[test]
fn golden_ascii_config() {
    let city = City::yoshi_hill(2).unwrap();
    let cfg = PipeConfig::new(city, vec![plumbing::CellId::new(1, 1)]).unwrap();
    let text = render_config(&cfg, &ascii_opts()).unwrap();
    assert_eq!(text, include_str!("goldens/yoshi_hill_2_config.txt"));
}

#[test]
fn golden_svg_city() {
    let city = City::yoshi_hill(2).unwrap();
    let svg = render_city(&city, &svg_opts()).unwrap();
    assert_eq!(svg, include_str!("goldens/yoshi_hill_2_city.svg"));
}

#[test]
fn golden_svg_config() {
    let city = City::yoshi_hill(2).unwrap();
    let cfg = PipeConfig::all_crossings(city);
    let svg = render_config(&cfg, &svg_opts()).unwrap();
    assert_eq!(svg, include_str!("goldens/yoshi_hill_2_config.svg"));
}

/// Wire exiting at each customer, read back from the ASCII `->` line.
fn parse_ascii_exits(text: &str) -> Vec<usize> {
    let line = text
        .lines()
        .find(|l| l.starts_with("->"))
        .expect("exit marker line");
    line.trim_start_matches("->")
        .split_whitespace()
        .map(|w| w.parse().unwrap())
        .collect()
}

/// (wire, customer) pairs read back from the SVG endpoint circles.
fn parse_svg_endpoints(svg: &str) -> Vec<(usize, usize)> {
    svg.lines()
        .filter(|l| l.contains(r#"class="endpoint""#))
        .map(|l| {
            let grab = |key: &str| -> usize {
                let start = l.find(key).expect(key) + key.len();
                l[start..].split('"').next().unwrap().parse().unwrap()
            };
            (grab(r#"data-wire=""#), grab(r#"data-customer=""#))
        })
        .collect()
}

#[test]
fn rendered_endpoints_agree_with_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for city in corpus() {
        for _ in 0..5 {
            let elbows: Vec<_> = city
                .cells()
                .iter()
                .copied()
                .filter(|_| rng.random_bool(0.5))
                .collect();
            let cfg = PipeConfig::new(city.clone(), elbows).unwrap();
            let inverse = cfg.trace().permutation.inverse();

            let text = render_config(&cfg, &ascii_opts()).unwrap();
            let exits = parse_ascii_exits(&text);
            assert_eq!(exits.len(), city.m());
            for (customer, wire) in exits.iter().enumerate() {
                assert_eq!(*wire, inverse.image(customer + 1));
            }

            let svg = render_config(&cfg, &svg_opts()).unwrap();
            let endpoints = parse_svg_endpoints(&svg);
            assert_eq!(endpoints.len(), city.m());
            for (wire, customer) in endpoints {
                assert_eq!(wire, inverse.image(customer));
            }
        }
    }
}

#[test]
fn svg_documents_are_well_formed_with_one_group_per_cell() {
    for city in corpus().into_iter().take(6) {
        for doc in [
            render_city(&city, &svg_opts()).unwrap(),
            render_config(&PipeConfig::all_crossings(city.clone()), &svg_opts()).unwrap(),
        ] {
            let parsed = roxmltree::Document::parse(&doc).expect("well-formed XML");
            let cells = parsed
                .descendants()
                .filter(|n| n.attribute("class") == Some("cell"))
                .count();
            assert_eq!(cells, city.cell_count());
        }
    }
}

#[test]
fn greedy_and_antigreedy_renders_differ_only_at_differing_cells() {
    let city = City::yoshi_hill(3).unwrap();
    let sigma: plumbing::Permutation = "214365".parse().unwrap();
    let mario = plumbing::greedy_facet(&city, &sigma).unwrap();
    let luigi = plumbing::antigreedy_facet(&city, &sigma).unwrap();
    assert_ne!(mario.elbows(), luigi.elbows());

    let doc_m = render_config(&mario, &ascii_opts()).unwrap();
    let doc_l = render_config(&luigi, &ascii_opts()).unwrap();

    // character positions where the two documents disagree must lie in the
    // glyph band of a cell whose type differs (center row, columns 2x-1..2x+1)
    let differing: Vec<_> = city
        .cells()
        .iter()
        .filter(|c| mario.is_elbow(**c) != luigi.is_elbow(**c))
        .collect();
    assert!(!differing.is_empty());
    let emax = *city.top_elevations().iter().max().unwrap();
    let label_rows = 1; // canvas starts after the faucet label line
    let first_canvas_e = emax - 1; // top canvas row after trimming blanks
    let lines_m: Vec<&str> = doc_m.lines().collect();
    let lines_l: Vec<&str> = doc_l.lines().collect();
    assert_eq!(lines_m.len(), lines_l.len());
    for (row, (lm, ll)) in lines_m.iter().zip(&lines_l).enumerate() {
        let mut cols: Vec<usize> = Vec::new();
        for (i, (a, b)) in lm.chars().zip(ll.chars()).enumerate() {
            if a != b {
                cols.push(i);
            }
        }
        if cols.is_empty() {
            continue;
        }
        let allowed: Vec<usize> = differing
            .iter()
            .filter(|c| {
                // canvas row of this cell's center
                let center_row = label_rows + (2 * (first_canvas_e - c.e())) as usize + 1;
                center_row == row
            })
            .flat_map(|c| [2 * c.x() - 1, 2 * c.x(), 2 * c.x() + 1])
            .collect();
        for col in cols {
            assert!(
                allowed.contains(&col),
                "unexpected diff at row {row} col {col}:\n{doc_m}\nvs\n{doc_l}"
            );
        }
    }
}

#[test]
fn color_mode_only_adds_ansi_codes() {
    let city = City::yoshi_hill(3).unwrap();
    let cfg = PipeConfig::all_crossings(city);
    let plain = render_config(&cfg, &ascii_opts()).unwrap();
    let colored = render_config(
        &cfg,
        &RenderOptions {
            color: true,
            ..RenderOptions::default()
        },
    )
    .unwrap();
    let stripped: String = {
        let mut out = String::new();
        let mut rest = colored.as_str();
        while let Some(start) = rest.find('\x1b') {
            out.push_str(&rest[..start]);
            let after = &rest[start..];
            let end = after.find('m').expect("ANSI sequence terminator");
            rest = &after[end + 1..];
        }
        out.push_str(rest);
        out
    };
    assert_eq!(stripped, plain);
}
