#include "spineout/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spineout/error.hpp"

namespace spineout {

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string num(double v, int decimals = 1) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace

std::string table4_csv(const ExperimentMatrix& m) {
  std::string out = "Model";
  for (GroupId g : m.groups) out += "," + std::string(to_string(g));
  out += '\n';
  for (ModelId id : m.models) {
    for (int metric = 0; metric < 2; ++metric) {
      std::vector<std::string> shown;
      std::string best;
      for (GroupId g : m.groups) {
        const CellResult* c = m.find(id, g);
        if (!c || !c->ok()) {
          shown.emplace_back("ERR");
          continue;
        }
        shown.push_back(fixed2(metric == 0 ? c->accuracy : c->f1));
        if (best.empty() || std::stod(shown.back()) > std::stod(best)) best = shown.back();
      }
      out += std::string(to_string(id)) + (metric == 0 ? " (Acc)" : " (F1)");
      for (const auto& s : shown) out += "," + s + (s == best ? "*" : "");
      out += '\n';
    }
  }
  return out;
}

std::string table5_csv(const ExperimentMatrix& m) {
  std::string out = "group,name,mean_acc,sd_acc,mean_f1,sd_f1\n";
  for (const auto& g : m.group_aggregates) {
    out += std::string(to_string(g.group)) + ",\"" + builtin_group(g.group).name + "\"," + fixed2(g.mean_acc) + "," +
           fixed2(g.sd_acc) + "," + fixed2(g.mean_f1) + "," + fixed2(g.sd_f1) + "\n";
  }
  return out;
}

std::string table5_text(const ExperimentMatrix& m) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-5s %-30s %8s %8s %8s %8s\n", "Group", "Variables", "Acc", "SD", "F1", "SD");
  out += line;
  for (const auto& g : m.group_aggregates) {
    std::snprintf(line, sizeof(line), "%-5s %-30s %8.2f %8.2f %8.2f %8.2f\n", std::string(to_string(g.group)).c_str(),
                  builtin_group(g.group).name.c_str(), g.mean_acc, g.sd_acc, g.mean_f1, g.sd_f1);
    out += line;
  }
  return out;
}

std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& categories,
                          const std::vector<BarSeries>& series) {
  static const char* const kColors[] = {"#4878a8", "#e0903c", "#6aa56a", "#c75a5a"};
  const double left = 60, right = 20, top = 50, bottom = 70;
  const double group_width = std::max(60.0, 22.0 * static_cast<double>(series.size()) + 30.0);
  const double plot_w = group_width * static_cast<double>(categories.size());
  const double plot_h = 300;
  const double width = left + plot_w + right;
  const double height = top + plot_h + bottom;
  auto y_of = [&](double v) { return top + plot_h * (1.0 - std::clamp(v, 0.0, 1.0)); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, 0) + "\" height=\"" + num(height, 0) +
       "\" viewBox=\"0 0 " + num(width, 0) + " " + num(height, 0) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + xml_escape(title) +
       "</text>\n";
  for (int t = 0; t <= 10; ++t) {
    const double v = t / 10.0;
    const double y = y_of(v);
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" + num(y) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
         num(v, 1) + "</text>\n";
  }
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + plot_h) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
       num(top + plot_h) + "\" stroke=\"black\"/>\n";

  const double bar_w = (group_width - 30.0) / static_cast<double>(std::max<std::size_t>(1, series.size()));
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = left + group_width * static_cast<double>(c) + 15.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
      const double v = series[k].values.at(c);
      const double x = gx + bar_w * static_cast<double>(k);
      const double y = y_of(v);
      s += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(bar_w - 2) + "\" height=\"" +
           num(top + plot_h - y) + "\" fill=\"" + kColors[k % 4] + "\"/>\n";
      s += "<text x=\"" + num(x + (bar_w - 2) / 2) + "\" y=\"" + num(y - 3) +
           "\" text-anchor=\"middle\" font-size=\"9\">" + fixed2(v) + "</text>\n";
    }
    s += "<text x=\"" + num(gx + (group_width - 30.0) / 2) + "\" y=\"" + num(top + plot_h + 16) +
         "\" text-anchor=\"middle\" font-size=\"11\">" + xml_escape(categories[c]) + "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double x = left + 90.0 * static_cast<double>(k);
    const double y = top + plot_h + 40;
    s += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"12\" height=\"12\" fill=\"" + kColors[k % 4] +
         "\"/>\n";
    s += "<text x=\"" + num(x + 16) + "\" y=\"" + num(y + 10) + "\" font-size=\"11\">" + xml_escape(series[k].name) +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void check_aggregates(const ExperimentMatrix& matrix) {
  ExperimentMatrix copy = matrix;
  compute_aggregates(copy);
  auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-12; };
  bool ok = copy.group_aggregates.size() == matrix.group_aggregates.size() &&
            copy.model_aggregates.size() == matrix.model_aggregates.size();
  for (std::size_t i = 0; ok && i < copy.group_aggregates.size(); ++i) {
    const auto& a = copy.group_aggregates[i];
    const auto& b = matrix.group_aggregates[i];
    ok = a.group == b.group && a.count == b.count && close(a.mean_acc, b.mean_acc) && close(a.sd_acc, b.sd_acc) &&
         close(a.mean_f1, b.mean_f1) && close(a.sd_f1, b.sd_f1);
  }
  for (std::size_t i = 0; ok && i < copy.model_aggregates.size(); ++i) {
    const auto& a = copy.model_aggregates[i];
    const auto& b = matrix.model_aggregates[i];
    ok = a.model == b.model && a.count == b.count && close(a.mean_acc, b.mean_acc) && close(a.mean_f1, b.mean_f1);
  }
  if (!ok) fail(ErrorCode::CorruptFile, "aggregates do not match the cell results");
}

std::vector<std::string> render_tables_and_figures(const ExperimentMatrix& matrix, const std::string& out_dir) {
  check_aggregates(matrix);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create output directory " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);

  std::vector<std::string> group_names;
  BarSeries g_acc{"Accuracy", {}}, g_f1{"F1-Score", {}};
  for (const auto& g : matrix.group_aggregates) {
    group_names.emplace_back("Group " + std::string(to_string(g.group)));
    g_acc.values.push_back(g.mean_acc);
    g_f1.values.push_back(g.mean_f1);
  }
  std::vector<std::string> model_names;
  BarSeries m_acc{"Accuracy", {}}, m_f1{"F1-Score", {}};
  for (const auto& a : matrix.model_aggregates) {
    model_names.emplace_back(to_string(a.model));
    m_acc.values.push_back(a.mean_acc);
    m_f1.values.push_back(a.mean_f1);
  }

  std::vector<std::string> written;
  auto put = [&](const char* name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back((dir / name).string());
  };
  put("table4.csv", table4_csv(matrix));
  put("table5.csv", table5_csv(matrix));
  put("fig2a.svg", bar_chart_svg("Mean Accuracy and F1-Score per variable group", group_names, {g_acc, g_f1}));
  put("fig2b.svg", bar_chart_svg("Mean Accuracy and F1-Score per model", model_names, {m_acc, m_f1}));
  return written;
}

std::vector<std::string> emit_report(const ExperimentMatrix& matrix, const std::string& out_dir) {
  auto written = render_tables_and_figures(matrix, out_dir);
  const auto path = std::filesystem::path(out_dir) / "results.json";
  write_file(path, to_json(matrix).dump(2) + "\n");
  written.push_back(path.string());
  return written;
}

}  // namespace spineout
