#pragma once

// Table rendering (plain text and TSV), least-squares log-log fits and
// two-column plot data.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ekspace/classify.hpp"
#include "ekspace/enumerate.hpp"

namespace ekspace {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  /// Euclidean norm of the residuals in log space.
  double residual_norm = 0;
  std::size_t points = 0;
};

struct RegressionFit : LineFit {
  /// Separate fits for even and odd k.
  std::optional<std::pair<LineFit, LineFit>> parity_split;
};

/// Ordinary least squares of ln(value) on ln(k). Throws kDegenerateFit with
/// fewer than two distinct k (per parity class when splitting) and
/// std::invalid_argument for non-positive k or values.
RegressionFit loglog_fit(const std::vector<std::pair<double, double>>& points, bool parity_split = false);

enum class TableFormat { kText, kTsv };

/// "-1/28" for exact values, "~-4.64e-01" style otherwise.
std::string format_invariant(const RationalInvariant& r, const BigFloat& value);

std::string render_count_table(const std::vector<CountRow>& rows, TableFormat format);
std::string render_reps_table(const std::vector<RepBlock>& blocks, TableFormat format);
std::string render_pattern_table(const std::vector<OrbitRow>& rows, TableFormat format);
std::string render_growth_table(const std::vector<GrowthRow>& rows, TableFormat format);
std::string render_fit(const RegressionFit& fit);

/// One row per diffeomorphism class: key, s1, member count, smallest member.
std::string render_class_table(const std::vector<HomeoClass>& classes, TableFormat format);

/// Gnuplot-ready "x y" lines.
void write_plot_data(const std::filesystem::path& path, const std::vector<std::pair<double, double>>& points,
                     const std::string& comment);

}  // namespace ekspace
