#include "mmdbound/plot.hpp"

#include "mmdbound/errors.hpp"
#include "mmdbound/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace mmdb {

PlotKind plot_kind_for(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::power: return PlotKind::power;
    case ExperimentKind::bounds_vs_gamma: return PlotKind::bounds;
    case ExperimentKind::optimal_gamma: return PlotKind::optgamma;
    case ExperimentKind::mse: return PlotKind::mse;
  }
  return PlotKind::power;
}

PlotKind parse_plot_kind(const std::string& text) {
  if (text == "power") return PlotKind::power;
  if (text == "bounds") return PlotKind::bounds;
  if (text == "optgamma") return PlotKind::optgamma;
  if (text == "mse") return PlotKind::mse;
  throw ValidationError("unknown plot kind '" + text + "'");
}

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // y may be inf (gap)
};

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 160, kTop = 30, kBottom = 50;
constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::vector<Series> collect(const Table& t, PlotKind kind) {
  std::vector<Series> out;
  auto series_for = [&](const std::string& label) -> Series& {
    for (auto& s : out)
      if (s.label == label) return s;
    out.push_back({label, {}});
    return out.back();
  };
  switch (kind) {
    case PlotKind::power: {
      const auto n = t.column("n"), m = t.column("method");
      const auto sigma = t.numeric("sigma"), rate = t.numeric("reject_rate");
      for (std::size_t i = 0; i < t.rows.size(); ++i)
        series_for(t.rows[i][m] + " n=" + t.rows[i][n]).points.emplace_back(sigma[i], rate[i]);
      break;
    }
    case PlotKind::bounds:
    case PlotKind::optgamma: {
      const auto xi = t.column("xi");
      const auto x = t.numeric("lambda_or_n"), g = t.numeric("boundG"), h = t.numeric("boundH");
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        series_for("G xi=" + t.rows[i][xi]).points.emplace_back(x[i], g[i]);
        series_for("H xi=" + t.rows[i][xi]).points.emplace_back(x[i], h[i]);
      }
      break;
    }
    case PlotKind::mse: {
      const auto x = t.numeric("gamma"), g = t.numeric("boundG"), h = t.numeric("boundH");
      const auto e = t.numeric("empirical_mse");
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        // Bounds are on |theta_hat - theta0|; squared to share the MSE scale.
        series_for("G^2").points.emplace_back(x[i], g[i] * g[i]);
        series_for("H^2").points.emplace_back(x[i], h[i] * h[i]);
        series_for("empirical MSE").points.emplace_back(x[i], e[i]);
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::string render_plot(const Table& table, PlotKind kind) {
  if (table.rows.empty()) throw SchemaError("cannot plot an empty table");
  const std::vector<Series> series = collect(table, kind);
  const bool log_y = kind == PlotKind::mse || kind == PlotKind::optgamma;
  const bool log_x = kind != PlotKind::power;

  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!log_y || y > 0.0) && (!log_x || x > 0.0);
  };
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series)
    for (auto [x, y] : s.points)
      if (usable(x, y)) {
        x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
      }
  if (!std::isfinite(x_lo)) throw SchemaError("table has no finite points to plot");
  auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
  double ax0 = tx(x_lo), ax1 = tx(x_hi), ay0 = ty(y_lo), ay1 = ty(y_hi);
  if (kind == PlotKind::power) ay0 = 0.0, ay1 = std::max(ay1, 1.0);
  if (ax1 <= ax0) ax0 -= 0.5, ax1 += 0.5;
  if (ay1 <= ay0) ay0 -= 0.5, ay1 += 0.5;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (tx(x) - ax0) / (ax1 - ax0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (ty(y) - ay0) / (ay1 - ay0)) * ph; };
  auto num = [](double v) { return format_num(std::round(v * 100.0) / 100.0); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = ax0 + (ax1 - ax0) * i / 4.0, fy = ay0 + (ay1 - ay0) * i / 4.0;
    const double xv = log_x ? std::pow(10.0, fx) : fx, yv = log_y ? std::pow(10.0, fy) : fy;
    const double sx = kLeft + pw * i / 4.0, sy = kTop + ph * (1.0 - i / 4.0);
    svg << "<text x=\"" << num(sx) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">"
        << format_num(std::round(xv * 1000.0) / 1000.0) << "</text>\n";
    svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy + 4) << "\" text-anchor=\"end\">"
        << format_num(log_y ? std::round(yv * 1e6) / 1e6 : std::round(yv * 1000.0) / 1000.0) << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % kPalette.size()];
    std::string d;
    bool pen_down = false;
    for (auto [x, y] : s.points) {
      if (!usable(x, y)) {
        pen_down = false;
        continue;
      }
      d += (pen_down ? " L" : (d.empty() ? "M" : " M")) + num(px(x)) + "," + num(py(y));
      pen_down = true;
    }
    svg << "<path class=\"series\" data-label=\"" << s.label << "\" d=\"" << d << "\" fill=\"none\" stroke=\""
        << colour << "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(k) + 8.0;
    svg << "<text x=\"" << num(kWidth - kRight + 10) << "\" y=\"" << num(ly) << "\" fill=\"" << colour << "\">"
        << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const Table& table, PlotKind kind, const std::filesystem::path& path) {
  write_text(path, render_plot(table, kind));
}

}  // namespace mmdb
