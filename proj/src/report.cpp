// Run-directory reporting: hour-of-day x month heatmaps per device series,
// storage SOC traces, and a cost table, all as deterministic flat SVG/CSV.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "h2plan/cli.hpp"

namespace h2plan::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// five-stop blue->yellow ramp
std::string color(double frac) {
    static const double stops[5][3] = {{68, 1, 84},
                                       {59, 82, 139},
                                       {33, 145, 140},
                                       {94, 201, 98},
                                       {253, 231, 37}};
    frac = std::clamp(frac, 0.0, 1.0);
    const double pos = frac * 4.0;
    const int lo = std::min(3, static_cast<int>(pos));
    const double t = pos - lo;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(stops[lo][0] + t * (stops[lo + 1][0] - stops[lo][0])),
                  static_cast<int>(stops[lo][1] + t * (stops[lo + 1][1] - stops[lo][1])),
                  static_cast<int>(stops[lo][2] + t * (stops[lo + 1][2] - stops[lo][2])));
    return buf;
}

// monthly mean of same-hour values; short horizons bucket days evenly
std::vector<std::vector<double>> hour_month_grid(const std::vector<double>& series,
                                                 int* months_out) {
    const int T = static_cast<int>(series.size());
    const int days = std::max(1, T / 24);
    const int months = std::min(12, days);
    std::vector<std::vector<double>> sum(months, std::vector<double>(24, 0.0));
    std::vector<std::vector<int>> count(months, std::vector<int>(24, 0));
    for (int t = 0; t < T; ++t) {
        const int hour = t % 24;
        const int day = t / 24;
        const int month = std::min(months - 1, day * months / days);
        sum[month][hour] += series[t];
        ++count[month][hour];
    }
    for (int m = 0; m < months; ++m)
        for (int h = 0; h < 24; ++h)
            if (count[m][h] > 0) sum[m][h] /= count[m][h];
    *months_out = months;
    return sum;
}

void write_heatmap_svg(const fs::path& path, const std::string& title,
                       const std::vector<double>& series) {
    int months = 0;
    auto grid = hour_month_grid(series, &months);
    double lo = 1e300, hi = -1e300;
    for (const auto& row : grid)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi <= lo) hi = lo + 1.0;
    const int cell = 14, left = 60, top = 30;
    const int width = left + 24 * cell + 20;
    const int height = top + months * cell + 30;
    std::ofstream f(path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
    f << "<text x=\"" << left << "\" y=\"18\" font-family=\"monospace\" font-size=\"12\">"
      << title << " (max " << fmt(hi) << ")</text>\n";
    for (int m = 0; m < months; ++m) {
        f << "<text x=\"6\" y=\"" << top + m * cell + 11
          << "\" font-family=\"monospace\" font-size=\"9\">m" << m + 1 << "</text>\n";
        for (int h = 0; h < 24; ++h) {
            const double frac = (grid[m][h] - lo) / (hi - lo);
            f << "<rect x=\"" << left + h * cell << "\" y=\"" << top + m * cell
              << "\" width=\"" << cell - 1 << "\" height=\"" << cell - 1 << "\" fill=\""
              << color(frac) << "\"><title>h" << h + 1 << " m" << m + 1 << ": "
              << fmt(grid[m][h]) << "</title></rect>\n";
        }
    }
    for (int h = 0; h < 24; h += 6)
        f << "<text x=\"" << left + h * cell << "\" y=\"" << top + months * cell + 14
          << "\" font-family=\"monospace\" font-size=\"9\">h" << h + 1 << "</text>\n";
    f << "</svg>\n";
}

void write_line_svg(const fs::path& path, const std::string& title,
                    const std::vector<double>& series) {
    const int width = 640, height = 200, left = 50, top = 26, bottom = 20;
    double lo = 0.0, hi = -1e300;
    for (double v : series) hi = std::max(hi, v);
    if (hi <= lo) hi = lo + 1.0;
    std::ofstream f(path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
    f << "<text x=\"" << left << "\" y=\"16\" font-family=\"monospace\" font-size=\"12\">"
      << title << " (max " << fmt(hi) << ")</text>\n";
    f << "<polyline fill=\"none\" stroke=\"#2166ac\" stroke-width=\"1.5\" points=\"";
    const double plot_w = width - left - 10, plot_h = height - top - bottom;
    for (size_t t = 0; t < series.size(); ++t) {
        const double x = left + plot_w * static_cast<double>(t) /
                                    std::max<size_t>(series.size() - 1, 1);
        const double y = top + plot_h * (1.0 - (series[t] - lo) / (hi - lo));
        f << fmt(x) << ',' << fmt(y) << ' ';
    }
    f << "\"/>\n";
    f << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << width - 10
      << "\" y2=\"" << top + plot_h << "\" stroke=\"#888\"/>\n";
    f << "</svg>\n";
}

struct SeriesRow {
    std::string quantity, region, tech;
    std::vector<double> values;
};

std::vector<SeriesRow> read_dispatch_csv(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("run directory has no dispatch.csv");
    std::vector<SeriesRow> rows;
    std::map<std::string, size_t> index;
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string quantity, region, tech, hour, value;
        std::getline(is, quantity, ',');
        std::getline(is, region, ',');
        std::getline(is, tech, ',');
        std::getline(is, hour, ',');
        std::getline(is, value, ',');
        const std::string key = quantity + "/" + region + "/" + tech;
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, rows.size());
            rows.push_back({quantity, region, tech, {}});
            it = index.find(key);
        }
        rows[it->second].values.push_back(std::stod(value));
    }
    return rows;
}

}  // namespace

int cmd_report(const ReportArgs& args) {
    const fs::path out = args.out_dir.empty() ? args.run_dir / "report" : args.out_dir;
    fs::create_directories(out);
    auto rows = read_dispatch_csv(args.run_dir / "dispatch.csv");
    int heatmaps = 0, traces = 0;
    for (const auto& row : rows) {
        if (row.values.empty()) {
            std::fprintf(stderr, "warning: empty series %s/%s/%s skipped\n",
                         row.quantity.c_str(), row.region.c_str(), row.tech.c_str());
            continue;
        }
        const std::string base = row.quantity + "_" + row.region +
                                 (row.tech.empty() ? "" : "_" + row.tech);
        if (row.quantity == "dispatch" || row.quantity == "charge" ||
            row.quantity == "discharge" || row.quantity == "heat_curtailment" ||
            row.quantity == "flow") {
            write_heatmap_svg(out / ("heatmap_" + base + ".svg"), base, row.values);
            ++heatmaps;
        } else if (row.quantity == "soc") {
            write_line_svg(out / ("soc_" + row.region + "_" + row.tech + ".svg"), base,
                           row.values);
            ++traces;
        }
    }
    // cost table travels with the report
    if (fs::exists(args.run_dir / "costs.csv"))
        fs::copy_file(args.run_dir / "costs.csv", out / "cost_table.csv",
                      fs::copy_options::overwrite_existing);
    std::printf("report: %d heatmaps, %d soc traces -> %s\n", heatmaps, traces,
                out.string().c_str());
    return 0;
}

}  // namespace h2plan::cli
