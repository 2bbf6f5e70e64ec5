#pragma once

#include <string>
#include <vector>

#include "hecke/moments.hpp"
#include "hecke/value_dist.hpp"
#include "hecke/zero_scan.hpp"

namespace hecke {

struct Column {
  std::string name;
  std::string unit;
};

/// Whitespace separated columns under a '#' header naming columns and units.
/// Numbers are printed with 17 significant digits.
std::string plot_table(const std::string& title, const std::vector<Column>& columns,
                       const std::vector<std::vector<double>>& rows);

/// Same layout, comma separated, header line without '#'.
std::string csv_table(const std::vector<Column>& columns, const std::vector<std::vector<double>>& rows);

/// (bin_center, empirical_mass, target_mass)
std::string clt_plot(const DistReport& r);
/// (ordinate, bracket_width)
std::string zeros_plot(const ScanResult& r);
/// (T, rho5, rho6, rho7)
std::string moments_plot(const std::vector<MomentReport>& reports);

}  // namespace hecke
