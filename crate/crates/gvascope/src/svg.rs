//! Dependency-free SVG 1.1 chart rendering.
//!
//! All charts share a fixed 800x500 viewBox and are emitted with fixed
//! two-decimal coordinates, so identical inputs produce byte-identical
//! documents. Scree charts use a logarithmic value axis when the supplied
//! baseline model was fitted in log space; every other axis is linear.

use crate::baseline::{predict, FitSpace, RegressionModel, ScreeOrdering};
use crate::error::{Error, Result};
use crate::indicators::ShareEntry;
use crate::irregularity::IrregularityEntry;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 25.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 55.0;

const STYLE: &str = "\
.data { fill: #1f6f8b; stroke: none; }\n\
.data-line { fill: none; stroke: #1f6f8b; stroke-width: 1.5; }\n\
.baseline { fill: none; stroke: #c0392b; stroke-width: 1.5; stroke-dasharray: 6 4; }\n\
.mark { fill: #1f6f8b; }\n\
.mark.flagged { fill: #c0392b; }\n\
.axis { stroke: #333333; stroke-width: 1; }\n\
.zero { stroke: #333333; stroke-width: 1; }\n\
.threshold { stroke: #c0392b; stroke-width: 1; stroke-dasharray: 4 3; }\n\
.tick-label { font: 11px sans-serif; fill: #333333; }\n\
.axis-label { font: 13px sans-serif; fill: #111111; }\n";

/// Linear map from a data interval onto a pixel interval.
#[derive(Debug, Clone, Copy)]
struct Scale {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Scale {
    fn new(lo: f64, hi: f64, px_lo: f64, px_hi: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) };
        Self { lo, hi, px_lo, px_hi }
    }

    fn px(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn fmt_tick(v: f64) -> String {
    let a = v.abs();
    if a >= 1000.0 {
        format!("{v:.0}")
    } else if a >= 1.0 {
        format!("{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

fn document(body: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" \
         width=\"800\" height=\"500\">\n<style>\n{STYLE}</style>\n{body}</svg>\n"
    )
}

fn axes(x: &Scale, y: &Scale, x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    let x0 = px(x.px_lo);
    let x1 = px(x.px_hi);
    let y0 = px(y.px_lo);
    let y1 = px(y.px_hi);
    out.push_str(&format!(
        "<line class=\"axis\" x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\"/>\n"
    ));
    out.push_str(&format!(
        "<line class=\"axis\" x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\"/>\n"
    ));
    out.push_str(&format!(
        "<text class=\"axis-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>\n",
        px((x.px_lo + x.px_hi) / 2.0),
        px(HEIGHT - 12.0),
    ));
    out.push_str(&format!(
        "<text class=\"axis-label\" x=\"18\" y=\"{mid}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {mid})\">{y_label}</text>\n",
        mid = px((y.px_lo + y.px_hi) / 2.0),
    ));
    out
}

fn x_ticks(x: &Scale, positions: &[(f64, String)], y_axis_px: f64) -> String {
    let mut out = String::new();
    for (value, label) in positions {
        let xp = px(x.px(*value));
        out.push_str(&format!(
            "<line class=\"axis\" x1=\"{xp}\" y1=\"{y0}\" x2=\"{xp}\" y2=\"{y2}\"/>\n",
            y0 = px(y_axis_px),
            y2 = px(y_axis_px + 4.0),
        ));
        out.push_str(&format!(
            "<text class=\"tick-label\" x=\"{xp}\" y=\"{yt}\" text-anchor=\"middle\">{label}</text>\n",
            yt = px(y_axis_px + 17.0),
        ));
    }
    out
}

fn y_ticks<F: Fn(f64) -> f64>(y: &Scale, inverse: F) -> String {
    let mut out = String::new();
    for i in 0..=4 {
        let t = y.lo + (y.hi - y.lo) * i as f64 / 4.0;
        let yp = px(y.px(t));
        out.push_str(&format!(
            "<line class=\"axis\" x1=\"{x0}\" y1=\"{yp}\" x2=\"{x1}\" y2=\"{yp}\"/>\n",
            x0 = px(MARGIN_LEFT - 4.0),
            x1 = px(MARGIN_LEFT),
        ));
        out.push_str(&format!(
            "<text class=\"tick-label\" x=\"{xt}\" y=\"{yt}\" text-anchor=\"end\">{label}</text>\n",
            xt = px(MARGIN_LEFT - 8.0),
            yt = px(y.px(t) + 4.0),
            label = fmt_tick(inverse(t)),
        ));
    }
    out
}

fn rank_tick_positions(n: usize) -> Vec<(f64, String)> {
    let step = n.div_ceil(20).max(1);
    (1..=n)
        .step_by(step)
        .map(|r| (r as f64, r.to_string()))
        .collect()
}

/// Renders a scree spectrum with its fitted baseline as a dashed curve.
///
/// The model is expected to have been fitted on the ordering (values must
/// be positive when the model is log-space). Axes are labeled with rank
/// and value; the value axis is logarithmic for log-space models.
pub fn render_scree_svg(ordering: &ScreeOrdering, model: &RegressionModel) -> Result<String> {
    if ordering.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = ordering.len();
    let log_axis = model.space == FitSpace::Log;
    let transform = |v: f64| if log_axis { v.ln() } else { v };
    let inverse = |t: f64| if log_axis { t.exp() } else { t };

    let baseline_xs: Vec<f64> = if n == 1 {
        vec![0.75, 1.0, 1.25]
    } else {
        (0..(2 * n - 1)).map(|i| 1.0 + i as f64 * 0.5).collect()
    };
    let mut t_lo = f64::INFINITY;
    let mut t_hi = f64::NEG_INFINITY;
    for t in ordering
        .values()
        .map(transform)
        .chain(baseline_xs.iter().map(|&bx| transform(predict(model, bx))))
    {
        t_lo = t_lo.min(t);
        t_hi = t_hi.max(t);
    }
    let pad = (t_hi - t_lo).max(1e-9) * 0.05;
    let y = Scale::new(t_lo - pad, t_hi + pad, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let x = Scale::new(0.5, n as f64 + 0.5, MARGIN_LEFT, WIDTH - MARGIN_RIGHT);

    let mut body = axes(&x, &y, "rank", "value");
    body.push_str(&x_ticks(&x, &rank_tick_positions(n), HEIGHT - MARGIN_BOTTOM));
    body.push_str(&y_ticks(&y, inverse));

    let baseline_points: Vec<String> = baseline_xs
        .iter()
        .map(|&bx| format!("{},{}", px(x.px(bx)), px(y.px(transform(predict(model, bx))))))
        .collect();
    body.push_str(&format!(
        "<polyline class=\"baseline\" points=\"{}\"/>\n",
        baseline_points.join(" ")
    ));

    if n > 1 {
        let data_points: Vec<String> = ordering
            .ranked
            .iter()
            .map(|(rank, _, value)| {
                format!("{},{}", px(x.px(*rank as f64)), px(y.px(transform(*value))))
            })
            .collect();
        body.push_str(&format!(
            "<polyline class=\"data-line\" points=\"{}\"/>\n",
            data_points.join(" ")
        ));
    }
    for (rank, id, value) in &ordering.ranked {
        body.push_str(&format!(
            "<circle class=\"data\" cx=\"{}\" cy=\"{}\" r=\"3.5\"><title>{}: {}</title></circle>\n",
            px(x.px(*rank as f64)),
            px(y.px(transform(*value))),
            id.slug,
            value,
        ));
    }
    Ok(document(&body))
}

/// Renders a value-added share spectrum by industry ordinal with its
/// fitted baseline, on linear axes.
pub fn render_share_svg(entries: &[ShareEntry], model: &RegressionModel) -> Result<String> {
    if entries.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ordinals: Vec<f64> = entries.iter().map(|e| e.id.ordinal as f64).collect();
    let o_lo = ordinals.iter().cloned().fold(f64::INFINITY, f64::min);
    let o_hi = ordinals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let mut v_lo = f64::INFINITY;
    let mut v_hi = f64::NEG_INFINITY;
    for v in entries
        .iter()
        .map(|e| e.k_gva)
        .chain(ordinals.iter().map(|&o| predict(model, o)))
    {
        v_lo = v_lo.min(v);
        v_hi = v_hi.max(v);
    }
    let pad = (v_hi - v_lo).max(1e-9) * 0.08;
    let y = Scale::new(v_lo - pad, v_hi + pad, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let x = Scale::new(o_lo - 0.5, o_hi + 0.5, MARGIN_LEFT, WIDTH - MARGIN_RIGHT);

    let mut body = axes(&x, &y, "industry", "K_GVA");
    let tick_positions: Vec<(f64, String)> = entries
        .iter()
        .map(|e| (e.id.ordinal as f64, e.id.ordinal.to_string()))
        .collect();
    body.push_str(&x_ticks(&x, &tick_positions, HEIGHT - MARGIN_BOTTOM));
    body.push_str(&y_ticks(&y, |t| t));

    let baseline_points: Vec<String> = ordinals
        .iter()
        .map(|&o| format!("{},{}", px(x.px(o)), px(y.px(predict(model, o)))))
        .collect();
    body.push_str(&format!(
        "<polyline class=\"baseline\" points=\"{}\"/>\n",
        baseline_points.join(" ")
    ));
    if entries.len() > 1 {
        let data_points: Vec<String> = entries
            .iter()
            .map(|e| format!("{},{}", px(x.px(e.id.ordinal as f64)), px(y.px(e.k_gva))))
            .collect();
        body.push_str(&format!(
            "<polyline class=\"data-line\" points=\"{}\"/>\n",
            data_points.join(" ")
        ));
    }
    for e in entries {
        body.push_str(&format!(
            "<circle class=\"data\" cx=\"{}\" cy=\"{}\" r=\"3.5\"><title>{}: {:.4}</title></circle>\n",
            px(x.px(e.id.ordinal as f64)),
            px(y.px(e.k_gva)),
            e.id.slug,
            e.k_gva,
        ));
    }
    Ok(document(&body))
}

/// Renders irregularity coefficients as bars with a zero line and the
/// flag threshold; flagged entries carry the `flagged` class.
pub fn render_irregularity_svg(entries: &[IrregularityEntry], tau: f64) -> Result<String> {
    if entries.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = entries.len();
    let mut k_lo: f64 = 0.0;
    let mut k_hi: f64 = tau;
    for e in entries {
        k_lo = k_lo.min(e.k_irr);
        k_hi = k_hi.max(e.k_irr);
    }
    let pad = (k_hi - k_lo).max(1e-9) * 0.08;
    let y = Scale::new(k_lo - pad, k_hi + pad, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let x = Scale::new(0.5, n as f64 + 0.5, MARGIN_LEFT, WIDTH - MARGIN_RIGHT);

    let mut body = axes(&x, &y, "industry", "K_irr");
    let tick_positions: Vec<(f64, String)> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (i as f64 + 1.0, e.id.ordinal.to_string()))
        .collect();
    let step = n.div_ceil(20).max(1);
    let tick_positions: Vec<(f64, String)> =
        tick_positions.into_iter().step_by(step).collect();
    body.push_str(&x_ticks(&x, &tick_positions, HEIGHT - MARGIN_BOTTOM));
    body.push_str(&y_ticks(&y, |t| t));

    let zero_y = y.px(0.0);
    let tau_y = y.px(tau);
    body.push_str(&format!(
        "<line class=\"zero\" x1=\"{x0}\" y1=\"{yp}\" x2=\"{x1}\" y2=\"{yp}\"/>\n",
        x0 = px(x.px_lo),
        x1 = px(x.px_hi),
        yp = px(zero_y),
    ));
    body.push_str(&format!(
        "<line class=\"threshold\" x1=\"{x0}\" y1=\"{yp}\" x2=\"{x1}\" y2=\"{yp}\"/>\n",
        x0 = px(x.px_lo),
        x1 = px(x.px_hi),
        yp = px(tau_y),
    ));

    let slot = (x.px_hi - x.px_lo) / n as f64;
    let bar_w = (slot * 0.6).min(40.0);
    for (i, e) in entries.iter().enumerate() {
        let center = x.px(i as f64 + 1.0);
        let top = y.px(e.k_irr).min(zero_y);
        let height = (y.px(e.k_irr) - zero_y).abs();
        let class = if e.flagged { "mark flagged" } else { "mark" };
        body.push_str(&format!(
            "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\">\
             <title>{}: {:.2}</title></rect>\n",
            px(center - bar_w / 2.0),
            px(top),
            px(bar_w),
            px(height),
            e.id.slug,
            e.k_irr,
        ));
    }
    Ok(document(&body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accounts::{reference_table1, IndustryId};
    use crate::baseline::{fit_equilibrium_baseline, fit_ols, scree_order};

    fn irr_entry(ordinal: u32, k_irr: f64, flagged: bool) -> IrregularityEntry {
        IrregularityEntry {
            id: IndustryId::new(ordinal, format!("i{ordinal}")),
            year: 2022,
            gva_exp: 1.0,
            gva_reg: 1.0,
            k_irr,
            flagged,
        }
    }

    #[test]
    fn reference_scree_chart_has_nineteen_points_and_dashed_baseline() {
        let ordering = scree_order(&reference_table1(), 2022).unwrap();
        let model = fit_equilibrium_baseline(&ordering, FitSpace::Log).unwrap();
        let svg = render_scree_svg(&ordering, &model).unwrap();
        assert_eq!(svg.matches("<circle class=\"data\"").count(), 19);
        assert!(svg.contains("class=\"baseline\""));
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains(">rank</text>"));
        assert!(svg.contains(">value</text>"));
    }

    #[test]
    fn single_point_ordering_renders_one_mark() {
        let ordering = ScreeOrdering {
            ranked: vec![(1, IndustryId::new(1, "solo"), 42.0)],
        };
        let model = fit_ols(&[1.0, 2.0], &[42.0, 21.0]).unwrap();
        let svg = render_scree_svg(&ordering, &model).unwrap();
        assert_eq!(svg.matches("<circle class=\"data\"").count(), 1);
    }

    #[test]
    fn identical_inputs_render_identically() {
        let ordering = scree_order(&reference_table1(), 2022).unwrap();
        let model = fit_equilibrium_baseline(&ordering, FitSpace::Log).unwrap();
        let a = render_scree_svg(&ordering, &model).unwrap();
        let b = render_scree_svg(&ordering, &model).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_inputs_are_errors() {
        let ordering = ScreeOrdering { ranked: vec![] };
        let model = fit_ols(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(
            render_scree_svg(&ordering, &model).unwrap_err(),
            Error::EmptyInput
        );
        assert_eq!(
            render_irregularity_svg(&[], 0.1).unwrap_err(),
            Error::EmptyInput
        );
        assert_eq!(
            render_share_svg(&[], &model).unwrap_err(),
            Error::EmptyInput
        );
    }

    #[test]
    fn published_style_values_render_above_zero_line() {
        let ks = [0.15, 0.21, 0.20, 0.25, 0.28, 0.31, 0.28];
        let entries: Vec<IrregularityEntry> = ks
            .iter()
            .enumerate()
            .map(|(i, &k)| irr_entry(i as u32 + 1, k, k > 0.1))
            .collect();
        let svg = render_irregularity_svg(&entries, 0.1).unwrap();
        assert_eq!(svg.matches("<rect class=\"mark").count(), 7);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let zero_y: f64 = doc
            .descendants()
            .find(|node| node.attribute("class") == Some("zero"))
            .and_then(|node| node.attribute("y1"))
            .unwrap()
            .parse()
            .unwrap();
        for node in doc
            .descendants()
            .filter(|n| n.has_tag_name("rect"))
        {
            let top: f64 = node.attribute("y").unwrap().parse().unwrap();
            let height: f64 = node.attribute("height").unwrap().parse().unwrap();
            // bars for positive coefficients hang from the zero line upward
            assert!(top < zero_y);
            assert!((top + height - zero_y).abs() < 0.02);
        }
    }

    #[test]
    fn zero_entries_sit_on_the_zero_line() {
        let entries = vec![irr_entry(1, 0.0, false), irr_entry(2, 0.0, false)];
        let svg = render_irregularity_svg(&entries, 0.1).unwrap();
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let zero_y: f64 = doc
            .descendants()
            .find(|node| node.attribute("class") == Some("zero"))
            .and_then(|node| node.attribute("y1"))
            .unwrap()
            .parse()
            .unwrap();
        for node in doc.descendants().filter(|n| n.has_tag_name("rect")) {
            let top: f64 = node.attribute("y").unwrap().parse().unwrap();
            let height: f64 = node.attribute("height").unwrap().parse().unwrap();
            assert_eq!(top, zero_y);
            assert_eq!(height, 0.0);
        }
    }

    #[test]
    fn flagged_class_marks_exactly_the_flagged_entry() {
        let entries = vec![irr_entry(1, 0.3, true), irr_entry(2, 0.05, false)];
        let svg = render_irregularity_svg(&entries, 0.1).unwrap();
        assert_eq!(svg.matches("class=\"mark flagged\"").count(), 1);
        assert_eq!(svg.matches("class=\"mark\"").count(), 1);
    }

    #[test]
    fn charts_are_well_formed_xml_with_viewbox() {
        let ordering = scree_order(&reference_table1(), 2022).unwrap();
        let model = fit_equilibrium_baseline(&ordering, FitSpace::Log).unwrap();
        for svg in [
            render_scree_svg(&ordering, &model).unwrap(),
            render_irregularity_svg(&[irr_entry(1, 0.2, true)], 0.1).unwrap(),
        ] {
            let doc = roxmltree::Document::parse(&svg).unwrap();
            let root = doc.root_element();
            assert_eq!(root.tag_name().name(), "svg");
            assert_eq!(root.attribute("viewBox"), Some("0 0 800 500"));
        }
    }
}
