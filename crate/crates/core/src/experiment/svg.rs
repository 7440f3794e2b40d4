//! Static SVG figures written by hand, no plotting dependency.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const BINS: usize = 40;

/// Histogram of `N p` (density-normalized) with the Porter-Thomas density of
/// `y = N p`, `((N-1)/N) (1 - y/N)^(N-2)`, overlaid as a path.
pub fn porter_thomas_histogram(values: &[f64], dim: u64) -> String {
    let n = dim as f64;
    let scaled: Vec<f64> = values.iter().map(|p| p * n).collect();
    let x_max = scaled.iter().copied().fold(6.0_f64, f64::max).min(n).ceil().max(1.0);
    let width = x_max / BINS as f64;
    let mut counts = vec![0usize; BINS];
    for &y in &scaled {
        let b = ((y / width) as usize).min(BINS - 1);
        counts[b] += 1;
    }
    let total = scaled.len().max(1) as f64;
    let density: Vec<f64> = counts.iter().map(|&c| c as f64 / (total * width)).collect();
    let pt = |y: f64| {
        if dim < 2 {
            0.0
        } else {
            (n - 1.0) / n * (1.0 - y / n).max(0.0).powf(n - 2.0)
        }
    };
    let y_max = density.iter().copied().fold(pt(0.0), f64::max).max(1e-12) * 1.05;
    let px = |x: f64| MARGIN + x / x_max * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - y / y_max * (HEIGHT - 2.0 * MARGIN);

    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (b, &d) in density.iter().enumerate() {
        let x0 = px(b as f64 * width);
        let x1 = px((b + 1) as f64 * width);
        let y0 = py(d);
        s.push_str(&format!(
            "<rect x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#8fb3d9\" stroke=\"#3b6ea5\" stroke-width=\"0.5\"/>\n",
            x1 - x0,
            py(0.0) - y0
        ));
    }
    let mut path = String::new();
    for k in 0..=200 {
        let x = x_max * k as f64 / 200.0;
        path.push_str(&format!(
            "{}{:.2},{:.2} ",
            if k == 0 { "M" } else { "L" },
            px(x),
            py(pt(x))
        ));
    }
    s.push_str(&format!(
        "<path d=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n",
        path.trim_end()
    ));
    let axis_y = py(0.0);
    s.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{axis_y:.2}\" x2=\"{:.2}\" y2=\"{axis_y:.2}\" stroke=\"black\"/>\n",
        WIDTH - MARGIN
    ));
    s.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{axis_y:.2}\" stroke=\"black\"/>\n"
    ));
    for k in 0..=4 {
        let x = x_max * k as f64 / 4.0;
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{x:.1}</text>\n",
            px(x),
            axis_y + 16.0
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">N p (N = {dim}, {} samples)</text>\n",
        WIDTH / 2.0,
        HEIGHT - 12.0,
        values.len()
    ));
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_formed() {
        let svg = porter_thomas_histogram(&[0.1, 0.2, 0.05, 0.0], 8);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<rect").count(), BINS + 1);
        assert_eq!(svg.matches("<path").count(), 1);
    }
}
