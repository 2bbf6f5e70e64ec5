#include "hecke/plot_data.hpp"

#include <cstdio>

namespace hecke {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string plot_table(const std::string& title, const std::vector<Column>& columns,
                       const std::vector<std::vector<double>>& rows) {
  std::string out = "# " + title + "\n#";
  for (const auto& c : columns) out += " " + c.name + "[" + c.unit + "]";
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + num(row[i]);
    out += "\n";
  }
  return out;
}

std::string csv_table(const std::vector<Column>& columns, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i].name;
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + num(row[i]);
    out += "\n";
  }
  return out;
}

std::string clt_plot(const DistReport& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& b : r.histogram) rows.push_back({0.5 * (b.lo + b.hi), b.mass, b.target_mass});
  return plot_table("normalized log-ratio histogram",
                    {{"bin_center", "1"}, {"empirical_mass", "probability"}, {"target_mass", "probability"}}, rows);
}

std::string zeros_plot(const ScanResult& r) {
  std::vector<std::vector<double>> rows;
  for (const auto& z : r.zeros) rows.push_back({z.ordinate, z.width});
  return plot_table("critical-line sign changes", {{"ordinate", "t"}, {"bracket_width", "t"}}, rows);
}

std::string moments_plot(const std::vector<MomentReport>& reports) {
  std::vector<std::vector<double>> rows;
  for (const auto& m : reports) rows.push_back({m.T, m.rho5, m.rho6, m.rho7});
  return plot_table("normalized mean squares",
                    {{"T", "t"}, {"rho5", "1"}, {"rho6", "1"}, {"rho7", "1"}}, rows);
}

}  // namespace hecke
