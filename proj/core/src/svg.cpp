#include "elpath/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "elpath/csv.hpp"
#include "elpath/errors.hpp"

namespace elpath {

namespace {

constexpr std::array<std::string_view, 6> kPalette{
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string_view factor_color(MeteoFactor f) {
  return kPalette[static_cast<std::size_t>(f)];
}

// Linear data->pixel map; a degenerate data range lands mid-viewport.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double px_lo = 0.0;
  double px_hi = 1.0;

  double map(double v) const {
    if (hi == lo) return 0.5 * (px_lo + px_hi);
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

std::string fmt(double v) {
  // Plot coordinates need no round-trip fidelity; two decimals keeps the
  // files small and byte-stable.
  const double r = std::round(v * 100.0) / 100.0;
  return format_double(r);
}

void open_svg(std::string& out, int width, int height) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
  out += std::to_string(width);
  out += "\" height=\"";
  out += std::to_string(height);
  out += "\" viewBox=\"0 0 " + std::to_string(width) + ' ' +
         std::to_string(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// extra must not restate the attributes emitted here: duplicates make the
// XML invalid, so the font size is a parameter instead.
void text(std::string& out, double x, double y, const std::string& s,
          const std::string& extra = {}, int font_size = 12) {
  out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
         "\" font-family=\"sans-serif\" font-size=\"" +
         std::to_string(font_size) + "\"" +
         (extra.empty() ? "" : " " + extra) + ">" + s + "</text>\n";
}

void line(std::string& out, double x1, double y1, double x2, double y2,
          const std::string& stroke, const std::string& extra = {}) {
  out += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" +
         fmt(x2) + "\" y2=\"" + fmt(y2) + "\" stroke=\"" + stroke + "\"" +
         (extra.empty() ? "" : " " + extra) + "/>\n";
}

void frame(std::string& out, const Axis& x, const Axis& y) {
  out += "<rect x=\"" + fmt(x.px_lo) + "\" y=\"" + fmt(y.px_hi) +
         "\" width=\"" + fmt(x.px_hi - x.px_lo) + "\" height=\"" +
         fmt(y.px_lo - y.px_hi) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

void write_file(const std::filesystem::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write '" + file.string() + "'");
  }
  out << body;
}

}  // namespace

void write_dtoa_svg(const std::filesystem::path& file, const TimeSeries& dtoa) {
  const int width = 900;
  const int height = 300;
  std::string svg;
  open_svg(svg, width, height);
  text(svg, 20, 24, "Arrival-time deviation (us) over elapsed hours",
       "font-weight=\"bold\"", 14);

  if (!dtoa.empty()) {
    const UtcSeconds t0 = dtoa.timestamp(0);
    const auto [vmin, vmax] =
        std::minmax_element(dtoa.values().begin(), dtoa.values().end());
    const double span_h =
        static_cast<double>(dtoa.timestamp(dtoa.size() - 1) - t0) / 3600.0;
    Axis x{0.0, span_h > 0.0 ? span_h : 1.0, 60.0, width - 20.0};
    Axis y{*vmin, *vmax, height - 40.0, 40.0};
    frame(svg, x, y);
    if (*vmin < 0.0 && *vmax > 0.0) {
      line(svg, x.px_lo, y.map(0.0), x.px_hi, y.map(0.0), "#bbbbbb",
           "stroke-dasharray=\"4 3\"");
    }
    std::string points;
    for (std::size_t i = 0; i < dtoa.size(); ++i) {
      const double h = static_cast<double>(dtoa.timestamp(i) - t0) / 3600.0;
      points += fmt(x.map(h)) + ',' + fmt(y.map(dtoa.value(i))) + ' ';
    }
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" "
           "points=\"" +
           points + "\"/>\n";
    text(svg, 8, y.map(*vmax) + 4, fmt(*vmax));
    text(svg, 8, y.map(*vmin) + 4, fmt(*vmin));
    text(svg, x.px_lo, height - 14.0, "0 h");
    text(svg, x.px_hi - 50, height - 14.0, fmt(span_h) + " h");
  } else {
    text(svg, 60, 150, "no samples");
  }
  svg += "</svg>\n";
  write_file(file, svg);
}

void write_scatter_svg(const std::filesystem::path& file,
                       const TimeSeries& dtoa,
                       std::span<const FieldEstimate> fields_at_sample,
                       const CorrelationProfile& profile,
                       std::size_t sample_index, std::size_t n_samples) {
  const int panel_w = 290;
  const int panel_h = 230;
  const int cols = 3;
  const int rows = 2;
  const int width = cols * panel_w + 20;
  const int height = rows * panel_h + 50;

  std::string svg;
  open_svg(svg, width, height);
  std::string subtitle = "path sample " + std::to_string(sample_index);
  if (sample_index == 1) subtitle += " (transmitter)";
  if (sample_index == n_samples) subtitle += " (receiver)";
  text(svg, 20, 24,
       "Factor estimates vs arrival-time deviation, " + subtitle,
       "font-weight=\"bold\"", 14);

  int panel = 0;
  for (const MeteoFactor f : kAllFactors) {
    const FieldEstimate* field = nullptr;
    for (const FieldEstimate& candidate : fields_at_sample) {
      if (candidate.factor == f && candidate.sample_index == sample_index) {
        field = &candidate;
        break;
      }
    }
    const int col = panel % cols;
    const int row = panel / cols;
    ++panel;
    const double x0 = 10.0 + col * panel_w;
    const double y0 = 40.0 + row * panel_h;
    Axis x{0.0, 1.0, x0 + 45.0, x0 + panel_w - 15.0};
    Axis y{0.0, 1.0, y0 + panel_h - 35.0, y0 + 25.0};

    std::string title(factor_name(f));
    const ProfileCell* cell = profile.find(sample_index, f);
    if (cell && cell->defined) {
      title += " (r=" + format_double(std::round(cell->r * 1.0e4) / 1.0e4) + ")";
    } else {
      title += " (r undefined)";
    }
    text(svg, x0 + 45.0, y0 + 16.0, title);

    if (!field || field->series.empty() || dtoa.empty()) {
      frame(svg, x, y);
      text(svg, x0 + 60.0, y0 + panel_h / 2.0, "no data");
      continue;
    }

    // Pair on shared timestamps.
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < dtoa.size() && j < field->series.size()) {
      if (dtoa.timestamp(i) < field->series.timestamp(j)) {
        ++i;
      } else if (field->series.timestamp(j) < dtoa.timestamp(i)) {
        ++j;
      } else {
        xs.push_back(field->series.value(j));
        ys.push_back(dtoa.value(i));
        ++i;
        ++j;
      }
    }
    if (xs.empty()) {
      frame(svg, x, y);
      text(svg, x0 + 60.0, y0 + panel_h / 2.0, "no paired samples");
      continue;
    }
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    x.lo = *xmin;
    x.hi = *xmax;
    y.lo = *ymin;
    y.hi = *ymax;
    frame(svg, x, y);
    for (std::size_t p = 0; p < xs.size(); ++p) {
      svg += "<circle cx=\"" + fmt(x.map(xs[p])) + "\" cy=\"" +
             fmt(y.map(ys[p])) + "\" r=\"1.5\" fill=\"" +
             std::string(factor_color(f)) + "\" fill-opacity=\"0.6\"/>\n";
    }
    text(svg, x.px_lo, y.px_lo + 16.0, fmt(*xmin));
    text(svg, x.px_hi - 40.0, y.px_lo + 16.0, fmt(*xmax));
    text(svg, x0 + 2.0, y.px_hi + 6.0, fmt(*ymax));
    text(svg, x0 + 2.0, y.px_lo, fmt(*ymin));
  }
  svg += "</svg>\n";
  write_file(file, svg);
}

void write_profile_svg(const std::filesystem::path& file,
                       const CorrelationProfile& profile) {
  const int width = 900;
  const int height = 420;
  std::string svg;
  open_svg(svg, width, height);
  text(svg, 20, 24, "Correlation coefficient along the path",
       "font-weight=\"bold\"", 14);

  std::size_t max_sample = 1;
  for (const ProfileCell& cell : profile.cells) {
    max_sample = std::max(max_sample, cell.sample_index);
  }
  Axis x{1.0, static_cast<double>(std::max<std::size_t>(max_sample, 2)), 60.0,
         width - 170.0};
  Axis y{-1.05, 1.05, height - 40.0, 40.0};
  frame(svg, x, y);
  for (const double gy : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    line(svg, x.px_lo, y.map(gy), x.px_hi, y.map(gy), "#dddddd");
    text(svg, 24, y.map(gy) + 4, fmt(gy));
  }
  text(svg, x.px_lo, height - 14.0, "1");
  text(svg, x.px_hi - 20.0, height - 14.0, std::to_string(max_sample));
  text(svg, (x.px_lo + x.px_hi) / 2.0 - 40.0, height - 14.0,
       "path sample index");

  double legend_y = 50.0;
  for (const MeteoFactor f : kAllFactors) {
    // Sample-indexed r values for this factor; gaps split the polyline.
    std::map<std::size_t, const ProfileCell*> by_sample;
    for (const ProfileCell& cell : profile.cells) {
      if (cell.factor == f) by_sample[cell.sample_index] = &cell;
    }
    if (by_sample.empty()) continue;

    const std::string color(factor_color(f));
    std::string points;
    for (const auto& [sample, cell] : by_sample) {
      if (!cell->defined) {
        if (!points.empty()) {
          svg += "<polyline fill=\"none\" stroke=\"" + color +
                 "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
          points.clear();
        }
        continue;
      }
      points += fmt(x.map(static_cast<double>(sample))) + ',' +
                fmt(y.map(cell->r)) + ' ';
    }
    if (!points.empty()) {
      svg += "<polyline fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    }

    line(svg, width - 150.0, legend_y, width - 120.0, legend_y, color,
         "stroke-width=\"3\"");
    text(svg, width - 114.0, legend_y + 4, std::string(factor_name(f)));
    legend_y += 18.0;
  }
  svg += "</svg>\n";
  write_file(file, svg);
}

}  // namespace elpath
