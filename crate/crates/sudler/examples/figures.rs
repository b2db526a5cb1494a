//! Generates the four reproduction figures (CSV + SVG) into ./figures/.
//!
//! Run with: cargo run --example figures

use std::fs::File;

use sudler::analysis::{figure_data, FigureId};
use sudler::product::DEFAULT_PRECISION_BITS as BITS;
use sudler::report::{comment_line, figure_rows, scatter_svg, write_csv, Series, FIGURE_HEADER};

fn main() {
    std::fs::create_dir_all("figures").unwrap();
    for id in FigureId::ALL {
        let data = figure_data(id, BITS).unwrap();
        let csv_path = format!("figures/{id}.csv");
        let mut comment = comment_line(&data.spec.to_string(), BITS);
        if data.truncated {
            comment.push_str(" truncated=true");
        }
        write_csv(
            File::create(&csv_path).unwrap(),
            &comment,
            &FIGURE_HEADER,
            figure_rows(&data),
        )
        .unwrap();

        let mut series: Vec<Series> = Vec::new();
        for row in &data.rows {
            match series.iter_mut().find(|s| s.label == row.series) {
                Some(s) => s.points.push((row.n as f64, row.p)),
                None => series.push(Series {
                    label: row.series.clone(),
                    points: vec![(row.n as f64, row.p)],
                }),
            }
        }
        let svg_path = format!("figures/{id}.svg");
        std::fs::write(&svg_path, scatter_svg(&id.to_string(), "n", "P_{q_n}", &series)).unwrap();
        println!(
            "{id}: {} rows{} -> {csv_path}, {svg_path}",
            data.rows.len(),
            if data.truncated { " (truncated at the desk bound)" } else { "" }
        );
    }
}
