#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "riskgrad/harness.hpp"

namespace riskgrad {

namespace {

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string csv_path_for(const std::string& chart_path) {
  if (chart_path.size() > 4 && chart_path.substr(chart_path.size() - 4) == ".svg")
    return chart_path.substr(0, chart_path.size() - 4) + ".csv";
  return chart_path + ".csv";
}

} // namespace

AxisRange chart_axis_range(const AggregateTable& table, const std::string& metric) {
  const auto& mean = table.mean_of(metric);
  const auto& std_dev = table.std_of(metric);
  if (mean.empty()) throw ConfigError("chart: empty table");

  AxisRange r;
  r.x_min = table.iters.front();
  r.x_max = table.iters.back();
  if (r.x_max == r.x_min) r.x_max = r.x_min + 1.0;
  r.y_min = mean[0] - std_dev[0];
  r.y_max = mean[0] + std_dev[0];
  for (std::size_t t = 1; t < mean.size(); ++t) {
    r.y_min = std::min(r.y_min, mean[t] - std_dev[t]);
    r.y_max = std::max(r.y_max, mean[t] + std_dev[t]);
  }
  if (r.y_max == r.y_min) {
    double pad = std::max(1.0, std::abs(r.y_min) * 0.1);
    r.y_min -= pad;
    r.y_max += pad;
  }
  return r;
}

void emit_chart(const AggregateTable& table, const std::string& metric, const std::string& path) {
  if (metric.empty()) throw ConfigError("chart: empty metric name");
  const auto& mean = table.mean_of(metric); // validates the metric name
  const auto& std_dev = table.std_of(metric);
  AxisRange range = chart_axis_range(table, metric);

  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  auto sx = [&](double x) {
    return kLeft + (x - range.x_min) / (range.x_max - range.x_min) * plot_w;
  };
  auto sy = [&](double y) {
    return kTop + (range.y_max - y) / (range.y_max - range.y_min) * plot_h;
  };

  std::ofstream out(path);
  if (!out) throw ConfigError("chart: cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // +/- one std band.
  out << "<polygon fill=\"#4a90d9\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
  for (std::size_t t = 0; t < mean.size(); ++t)
    out << fmt6(sx(table.iters[t])) << ',' << fmt6(sy(mean[t] + std_dev[t])) << ' ';
  for (std::size_t t = mean.size(); t-- > 0;)
    out << fmt6(sx(table.iters[t])) << ',' << fmt6(sy(mean[t] - std_dev[t])) << ' ';
  out << "\"/>\n";

  // Mean line.
  out << "<polyline fill=\"none\" stroke=\"#1f5fa6\" stroke-width=\"1.5\" points=\"";
  for (std::size_t t = 0; t < mean.size(); ++t)
    out << fmt6(sx(table.iters[t])) << ',' << fmt6(sy(mean[t])) << ' ';
  out << "\"/>\n";

  // Axes.
  out << "<line x1=\"" << fmt6(kLeft) << "\" y1=\"" << fmt6(kTop) << "\" x2=\"" << fmt6(kLeft)
      << "\" y2=\"" << fmt6(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt6(kLeft) << "\" y1=\"" << fmt6(kTop + plot_h) << "\" x2=\""
      << fmt6(kLeft + plot_w) << "\" y2=\"" << fmt6(kTop + plot_h) << "\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int k = 0; k <= kTicks; ++k) {
    double fx = range.x_min + (range.x_max - range.x_min) * k / kTicks;
    double px = sx(fx);
    out << "<line x1=\"" << fmt6(px) << "\" y1=\"" << fmt6(kTop + plot_h) << "\" x2=\"" << fmt6(px)
        << "\" y2=\"" << fmt6(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt6(px) << "\" y=\"" << fmt6(kTop + plot_h + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(fx) << "</text>\n";

    double fy = range.y_min + (range.y_max - range.y_min) * k / kTicks;
    double py = sy(fy);
    out << "<line x1=\"" << fmt6(kLeft - 5) << "\" y1=\"" << fmt6(py) << "\" x2=\"" << fmt6(kLeft)
        << "\" y2=\"" << fmt6(py) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt6(kLeft - 8) << "\" y=\"" << fmt6(py + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(fy) << "</text>\n";
  }

  out << "<text x=\"" << fmt6(kLeft + plot_w / 2) << "\" y=\"20\" font-size=\"14\" "
      << "text-anchor=\"middle\">" << metric << " (mean over " << table.num_runs
      << " runs, band = 1 std)</text>\n";
  out << "<text x=\"" << fmt6(kLeft + plot_w / 2) << "\" y=\"" << fmt6(kHeight - 8)
      << "\" font-size=\"13\" text-anchor=\"middle\">iteration</text>\n";
  out << "</svg>\n";
  if (!out) throw ConfigError("chart: write failed for '" + path + "'");

  write_aggregate_csv(table, metric, csv_path_for(path));
}

} // namespace riskgrad
