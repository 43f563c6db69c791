//! gnuplot script emission for sweep results.
//!
//! The script reads the sweep CSV by relative path and writes four PNGs:
//! collective-to-single steering, single-to-collective steering, both
//! monogamy residual families, and directional pairs with two-way / one-way /
//! no-way shading.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::steering::SteeringClass;
use crate::sweep::{columns, SweepRow, CLASS_COLUMNS};

/// 1-based gnuplot column index of a CSV column.
fn col(name: &str) -> usize {
    columns()
        .iter()
        .position(|c| *c == name)
        .map(|i| i + 1)
        .unwrap_or_else(|| panic!("no column {name}"))
}

const TWO_WAY_RGB: &str = "#e41a1c";
const ONE_WAY_RGB: &str = "#4daf4a";
const NO_WAY_RGB: &str = "#377eb8";

struct Curve<'a> {
    column: &'a str,
    title: &'a str,
    style: &'a str,
}

fn curve(column: &'static str, title: &'static str, style: &'static str) -> Curve<'static> {
    Curve {
        column,
        title,
        style,
    }
}

fn plot_line(out: &mut String, csv: &str, curves: &[Curve], has_data: bool) {
    if !has_data {
        out.push_str("plot NaN notitle\n");
        return;
    }
    let parts: Vec<String> = curves
        .iter()
        .map(|c| {
            format!(
                "'{csv}' skip 1 using {}:{} with lines {} title '{}'",
                col("r"),
                col(c.column),
                c.style,
                c.title
            )
        })
        .collect();
    let _ = writeln!(out, "plot {}", parts.join(", \\\n     "));
}

/// Contiguous class intervals, widened by half a grid step so the bands tile the axis.
fn class_bands(rows: &[SweepRow], column: &str) -> Vec<(f64, f64, SteeringClass)> {
    let ok: Vec<&SweepRow> = rows.iter().filter(|r| r.is_ok()).collect();
    if ok.is_empty() {
        return Vec::new();
    }
    let (r_min, r_max) = (ok[0].r, ok[ok.len() - 1].r);
    let half = if ok.len() > 1 {
        0.5 * (r_max - r_min) / (ok.len() - 1) as f64
    } else {
        0.0
    };
    let mut bands: Vec<(f64, f64, SteeringClass)> = Vec::new();
    for row in ok {
        let class = row.class(column).expect("class column");
        match bands.last_mut() {
            Some(last) if last.2 == class => last.1 = row.r,
            _ => bands.push((row.r, row.r, class)),
        }
    }
    bands
        .into_iter()
        .map(|(lo, hi, c)| ((lo - half).max(r_min), (hi + half).min(r_max), c))
        .collect()
}

pub fn format_plot_script(rows: &[SweepRow], csv_name: &str) -> String {
    let has_data = rows.iter().any(|r| r.is_ok());
    let (r_lo, r_hi) = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) if b.r > a.r => (a.r, b.r),
        _ => (0.0, 2.0),
    };

    let mut s = String::new();
    s.push_str("# gnuplot script written by optosteer; run with: gnuplot <this file>\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile missing 'NaN'\n");
    s.push_str("set terminal pngcairo size 1200,900 enhanced font ',10'\n");
    let _ = writeln!(s, "set xrange [{r_lo}:{r_hi}]");
    s.push_str("set xlabel 'r'\n");
    s.push_str("set ylabel 'G (nats)'\n");
    s.push_str("set key top right\n\n");

    // collective -> single mode
    s.push_str("set output 'steering_collective_to_single.png'\n");
    s.push_str("set multiplot layout 2,2\n");
    for (title, coll, a, b) in [
        (
            "(BC)->A",
            curve("g_bc_a", "G (BC)->A", "lw 2 lc rgb 'black'"),
            curve("g_b_a", "G B->A", "dt 2 lc rgb 'red'"),
            curve("g_c_a", "G C->A", "dt 3 lc rgb 'blue'"),
        ),
        (
            "(AC)->B",
            curve("g_ac_b", "G (AC)->B", "lw 2 lc rgb 'black'"),
            curve("g_a_b", "G A->B", "dt 2 lc rgb 'red'"),
            curve("g_c_b", "G C->B", "dt 3 lc rgb 'blue'"),
        ),
        (
            "(AB)->C",
            curve("g_ab_c", "G (AB)->C", "lw 2 lc rgb 'black'"),
            curve("g_a_c", "G A->C", "dt 2 lc rgb 'red'"),
            curve("g_b_c", "G B->C", "dt 3 lc rgb 'blue'"),
        ),
    ] {
        let _ = writeln!(s, "set title '{title}'");
        plot_line(&mut s, csv_name, &[coll, a, b], has_data);
    }
    s.push_str("set title 'monogamy residuals (ij)/k'\n");
    plot_line(
        &mut s,
        csv_name,
        &[
            curve("res_col_a", "(BC)/A", "lc rgb 'red'"),
            curve("res_col_b", "(AC)/B", "lc rgb 'green'"),
            curve("res_col_c", "(AB)/C", "lc rgb 'blue'"),
        ],
        has_data,
    );
    s.push_str("unset multiplot\n\n");

    // single mode -> collective
    s.push_str("set output 'steering_single_to_collective.png'\n");
    s.push_str("set multiplot layout 2,2\n");
    for (title, coll, a, b) in [
        (
            "A->(BC)",
            curve("g_a_bc", "G A->(BC)", "lw 2 lc rgb 'black'"),
            curve("g_a_b", "G A->B", "dt 2 lc rgb 'red'"),
            curve("g_a_c", "G A->C", "dt 3 lc rgb 'blue'"),
        ),
        (
            "B->(AC)",
            curve("g_b_ac", "G B->(AC)", "lw 2 lc rgb 'black'"),
            curve("g_b_a", "G B->A", "dt 2 lc rgb 'red'"),
            curve("g_b_c", "G B->C", "dt 3 lc rgb 'blue'"),
        ),
        (
            "C->(AB)",
            curve("g_c_ab", "G C->(AB)", "lw 2 lc rgb 'black'"),
            curve("g_c_a", "G C->A", "dt 2 lc rgb 'red'"),
            curve("g_c_b", "G C->B", "dt 3 lc rgb 'blue'"),
        ),
    ] {
        let _ = writeln!(s, "set title '{title}'");
        plot_line(&mut s, csv_name, &[coll, a, b], has_data);
    }
    s.push_str("set title 'monogamy residuals k/(ij)'\n");
    plot_line(
        &mut s,
        csv_name,
        &[
            curve("res_dist_a", "A/(BC)", "lc rgb 'red'"),
            curve("res_dist_b", "B/(AC)", "lc rgb 'green'"),
            curve("res_dist_c", "C/(AB)", "lc rgb 'blue'"),
        ],
        has_data,
    );
    s.push_str("unset multiplot\n\n");

    // both residual families
    s.push_str("set output 'monogamy_residuals.png'\n");
    s.push_str("set title 'CKW-type steering monogamy residuals'\n");
    s.push_str("set ylabel 'residual (nats)'\n");
    plot_line(
        &mut s,
        csv_name,
        &[
            curve("res_col_a", "(BC)/A", "lc rgb 'red'"),
            curve("res_col_b", "(AC)/B", "lc rgb 'green'"),
            curve("res_col_c", "(AB)/C", "lc rgb 'blue'"),
            curve("res_dist_a", "A/(BC)", "dt 2 lc rgb 'red'"),
            curve("res_dist_b", "B/(AC)", "dt 2 lc rgb 'green'"),
            curve("res_dist_c", "C/(AB)", "dt 2 lc rgb 'blue'"),
        ],
        has_data,
    );
    s.push_str("set ylabel 'G (nats)'\n\n");

    // directional pairs with class shading
    s.push_str("set output 'steering_directions.png'\n");
    s.push_str("set multiplot layout 2,2\n");
    let panels = [
        (
            "class_bc_a",
            "(BC)/A",
            curve("g_bc_a", "G (BC)->A", "lw 2 lc rgb 'black'"),
            curve("g_a_bc", "G A->(BC)", "lw 2 dt 2 lc rgb 'black'"),
        ),
        (
            "class_ac_b",
            "(AC)/B",
            curve("g_ac_b", "G (AC)->B", "lw 2 lc rgb 'black'"),
            curve("g_b_ac", "G B->(AC)", "lw 2 dt 2 lc rgb 'black'"),
        ),
        (
            "class_ab_c",
            "(AB)/C",
            curve("g_ab_c", "G (AB)->C", "lw 2 lc rgb 'black'"),
            curve("g_c_ab", "G C->(AB)", "lw 2 dt 2 lc rgb 'black'"),
        ),
        (
            "class_ab",
            "A/B",
            curve("g_a_b", "G A->B", "lw 2 lc rgb 'gray40'"),
            curve("g_b_a", "G B->A", "lw 2 dt 2 lc rgb 'gray40'"),
        ),
    ];
    debug_assert!(panels.iter().all(|p| CLASS_COLUMNS.contains(&p.0)));
    for (class_col, title, fwd, back) in panels {
        s.push_str("unset object\n");
        for (i, (lo, hi, class)) in class_bands(rows, class_col).into_iter().enumerate() {
            let rgb = match class {
                SteeringClass::TwoWay => TWO_WAY_RGB,
                SteeringClass::OneWayXtoY | SteeringClass::OneWayYtoX => ONE_WAY_RGB,
                SteeringClass::NoWay => NO_WAY_RGB,
            };
            let _ = writeln!(
                s,
                "set object {} rect from {lo:.6},graph 0 to {hi:.6},graph 1 fc rgb '{rgb}' fs transparent solid 0.25 noborder behind",
                i + 1
            );
        }
        let _ = writeln!(s, "set title '{title}'");
        plot_line(&mut s, csv_name, &[fwd, back], has_data);
    }
    s.push_str("unset multiplot\n");
    s.push_str("unset output\n");
    s
}

pub fn emit_plot_script(rows: &[SweepRow], path: &Path, csv_name: &str) -> Result<()> {
    fs::write(path, format_plot_script(rows, csv_name)).map_err(|e| Error::io(path, e))
}
