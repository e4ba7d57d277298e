#include "bcl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>

#include "bcl/geometry.hpp"

namespace bcl {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

const char* const kPalette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f", "#bcbd22"};
constexpr const char* kCutStroke = "#d62728";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

// One plotting axis, linear or base-10 logarithmic.
struct Scale {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double from = 0.0, to = 1.0;  // pixel range

  double map(double v) const {
    const double a = log ? std::log10(v) : v;
    const double b = log ? std::log10(lo) : lo;
    const double c = log ? std::log10(hi) : hi;
    return from + (a - b) / (c - b) * (to - from);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int a = static_cast<int>(std::floor(std::log10(lo) + 1e-9));
      const int b = static_cast<int>(std::ceil(std::log10(hi) - 1e-9));
      const bool sparse = b - a < 2;
      for (int e = a; e <= b; ++e) {
        for (double m : {1.0, 2.0, 5.0}) {
          if (m != 1.0 && !sparse) continue;
          const double v = m * std::pow(10.0, e);
          if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) out.push_back(v);
        }
      }
      return out;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      step = m * mag;
      if (step >= raw) break;
    }
    for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + step * 1e-9; v += step) {
      out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    }
    return out;
  }
};

Scale make_scale(std::vector<double> values, bool log, double from, double to, bool pad = true) {
  std::erase_if(values, [&](double v) { return !std::isfinite(v) || (log && v <= 0.0); });
  Scale s;
  s.log = log;
  s.from = from;
  s.to = to;
  if (values.empty()) {
    s.lo = log ? 1.0 : 0.0;
    s.hi = log ? 10.0 : 1.0;
    return s;
  }
  s.lo = *std::min_element(values.begin(), values.end());
  s.hi = *std::max_element(values.begin(), values.end());
  if (log) {
    if (pad) {
      s.lo /= 1.25;
      s.hi *= 1.25;
    }
    if (s.hi <= s.lo) s.hi = s.lo * 10.0;
  } else {
    const double span = s.hi > s.lo ? s.hi - s.lo : std::max(std::abs(s.hi), 1.0);
    if (pad) {
      s.lo -= 0.08 * span;
      s.hi += 0.08 * span;
    }
    if (s.hi <= s.lo) s.hi = s.lo + 1.0;
  }
  return s;
}

class Canvas {
 public:
  Canvas() {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
         << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void axes(const Scale& x, const Scale& y, const std::string& title, const std::string& xlabel,
            const std::string& ylabel) {
    out_ << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    out_ << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
         << "\" height=\"" << num(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : x.ticks()) {
      const double px = x.map(t);
      out_ << "<line x1=\"" << num(px) << "\" y1=\"" << num(kHeight - kBottom) << "\" x2=\"" << num(px)
           << "\" y2=\"" << num(kHeight - kBottom + 5) << "\" stroke=\"black\"/>\n";
      out_ << "<text x=\"" << num(px) << "\" y=\"" << num(kHeight - kBottom + 19)
           << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    for (double t : y.ticks()) {
      const double py = y.map(t);
      out_ << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kLeft) << "\" y2=\""
           << num(py) << "\" stroke=\"black\"/>\n";
      out_ << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">" << num(t)
           << "</text>\n";
    }
    out_ << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kTop - 14)
         << "\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    out_ << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 14)
         << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    out_ << "<text x=\"18\" y=\"" << num((kTop + kHeight - kBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
         << num((kTop + kHeight - kBottom) / 2) << ")\">" << ylabel << "</text>\n";
    out_ << "</g>\n";
  }

  void marker(double px, double py, const char* color, double r = 4.0) {
    out_ << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"" << num(r) << "\" fill=\"" << color
         << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* color, double width,
                const char* dash = nullptr) {
    if (pts.size() < 2) return;
    out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << '"';
    if (dash) out_ << " stroke-dasharray=\"" << dash << '"';
    out_ << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
    }
    out_ << "\"/>\n";
  }

  void legend(const std::vector<std::pair<std::string, const char*>>& entries) {
    double y = kTop + 18;
    for (const auto& [label, color] : entries) {
      out_ << "<rect x=\"" << num(kWidth - kRight - 190) << "\" y=\"" << num(y - 9) << "\" width=\"12\" height=\"12\" fill=\""
           << color << "\"/>\n";
      out_ << "<text x=\"" << num(kWidth - kRight - 172) << "\" y=\"" << num(y + 1)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
      y += 18;
    }
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

Scale x_scale(const std::vector<double>& v, bool log) { return make_scale(v, log, kLeft, kWidth - kRight); }
Scale y_scale(const std::vector<double>& v, bool log) { return make_scale(v, log, kHeight - kBottom, kTop); }

Plot loglog_error(const CsvTable& t) {
  const auto n = t.numbers("n");
  const auto e = t.numbers("mean_e_n_perm");
  const LineFit fit = fit_loglog(n, e);
  const Scale x = x_scale(n, true);
  const Scale y = y_scale(e, true);
  Canvas c;
  c.axes(x, y, "Mean misclassification error", "n", "mean e_n");
  if (std::isfinite(fit.slope)) {
    std::vector<std::pair<double, double>> line;
    for (double v : {x.lo, x.hi}) line.emplace_back(x.map(v), y.map(std::exp(fit.intercept) * std::pow(v, fit.slope)));
    c.polyline(line, kCutStroke, 1.5, "6 4");
  }
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] > 0 && e[i] > 0 && std::isfinite(e[i])) c.marker(x.map(n[i]), y.map(e[i]), kPalette[0]);
  }
  c.legend({{"mean e_n", kPalette[0]}, {"fit, slope " + num(fit.slope), kCutStroke}});
  Plot p;
  p.svg = c.finish();
  if (std::isfinite(fit.slope)) p.fit = fit;
  return p;
}

Plot degree_regularity_plot(const CsvTable& t) {
  const auto n = t.numbers("n");
  const auto ratio = t.numbers("mean_deg_ratio");
  const auto dmax = t.numbers("mean_deg_max");
  const auto dmin = t.numbers("mean_deg_min");
  std::vector<double> of_means(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    of_means[i] = dmin[i] > 0 ? dmax[i] / dmin[i] : std::numeric_limits<double>::quiet_NaN();
  }
  std::vector<double> all = ratio;
  all.insert(all.end(), of_means.begin(), of_means.end());
  const Scale x = x_scale(n, true);
  const Scale y = y_scale(all, false);
  Canvas c;
  c.axes(x, y, "Degree regularity", "n", "max degree / min degree");
  for (const std::vector<double>* series : std::initializer_list<const std::vector<double>*>{&ratio, &of_means}) {
    const char* color = series == &ratio ? kCutStroke : kPalette[1];
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (!std::isfinite((*series)[i]) || n[i] <= 0) continue;
      pts.emplace_back(x.map(n[i]), y.map((*series)[i]));
      c.marker(pts.back().first, pts.back().second, color);
    }
    c.polyline(pts, color, 1.5);
  }
  c.legend({{"mean of max/min", kCutStroke}, {"mean max / mean min", kPalette[1]}});
  return {c.finish(), std::nullopt};
}

Plot giant_fraction_plot(const CsvTable& t) {
  const auto n = t.numbers("n");
  const auto g = t.numbers("mean_giant_fraction");
  std::vector<double> range = g;
  range.push_back(1.0);
  const Scale x = x_scale(n, true);
  const Scale y = y_scale(range, false);
  Canvas c;
  c.axes(x, y, "Giant component", "n", "mean fraction of vertices in the giant component");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!std::isfinite(g[i]) || n[i] <= 0) continue;
    pts.emplace_back(x.map(n[i]), y.map(g[i]));
    c.marker(pts.back().first, pts.back().second, kPalette[0]);
  }
  c.polyline(pts, kPalette[0], 1.5);
  return {c.finish(), std::nullopt};
}

Plot partition_scatter(const CsvTable& t) {
  const auto xs = t.numbers("x");
  const auto ys = t.numbers("y");
  const auto labels = t.numbers("label");
  double w = 0, h = 0;
  if (auto it = t.meta.find("domain"); it != t.meta.end()) {
    const RectDomain d = RectDomain::parse(it->second);
    w = d.width();
    h = d.height();
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      w = std::max(w, xs[i]);
      h = std::max(h, ys[i]);
    }
  }
  // Equal units on both axes.
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  const double unit = std::min(plot_w / std::max(w, 1e-12), plot_h / std::max(h, 1e-12));
  Scale x = make_scale({0.0, w}, false, kLeft, kLeft + unit * w, false);
  Scale y = make_scale({0.0, h}, false, kTop + unit * h, kTop, false);
  Canvas c;
  c.axes(x, y, "Computed partition", "x", "y");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto l = static_cast<std::size_t>(std::max(0.0, labels[i]));
    c.marker(x.map(xs[i]), y.map(ys[i]), kPalette[l % std::size(kPalette)], 1.8);
  }
  if (auto it = t.meta.find("cut"); it != t.meta.end()) {
    std::istringstream in(it->second);
    std::string orientation;
    double pos = 0.0;
    in >> orientation >> pos;
    if (orientation == "horizontal") {
      c.polyline({{x.map(0), y.map(pos)}, {x.map(w), y.map(pos)}}, kCutStroke, 2.5);
    } else if (orientation == "vertical") {
      c.polyline({{x.map(pos), y.map(0)}, {x.map(pos), y.map(h)}}, kCutStroke, 2.5);
    }
  }
  return {c.finish(), std::nullopt};
}

}  // namespace

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::numbers(const std::string& name) const {
  const auto c = column(name);
  if (!c) throw MissingColumn("input has no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (*c >= row.size()) throw InvalidArgument("short row in column '" + name + "'");
    out.push_back(parse_number(row[*c]));
  }
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string body = line.substr(1);
      const auto sp = body.find(' ');
      t.meta[trim(body.substr(0, sp))] = sp == std::string::npos ? "" : trim(body.substr(sp + 1));
      continue;
    }
    if (t.header.empty()) {
      t.header = split(line);
    } else {
      t.rows.push_back(split(line));
    }
  }
  if (t.header.empty()) throw InvalidArgument("input has no header row");
  return t;
}

PlotKind parse_plot_kind(const std::string& text) {
  if (text == "loglog") return PlotKind::LogLogError;
  if (text == "degree") return PlotKind::DegreeRegularity;
  if (text == "giant") return PlotKind::GiantFraction;
  if (text == "scatter") return PlotKind::PartitionScatter;
  throw InvalidArgument("unknown plot kind '" + text + "' (loglog, degree, giant, scatter)");
}

Plot render_plot(PlotKind kind, const CsvTable& table) {
  switch (kind) {
    case PlotKind::LogLogError:
      return loglog_error(table);
    case PlotKind::DegreeRegularity:
      return degree_regularity_plot(table);
    case PlotKind::GiantFraction:
      return giant_fraction_plot(table);
    case PlotKind::PartitionScatter:
      return partition_scatter(table);
  }
  throw InvalidArgument("unknown plot kind");
}

}  // namespace bcl
