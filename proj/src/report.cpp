#include "ekspace/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ekspace/error.hpp"

namespace ekspace {

namespace {

LineFit fit_line(const std::vector<std::pair<double, double>>& pts, const char* what) {
  if (pts.size() < 2) throw Error(ErrorCode::kDegenerateFit, std::string(what) + ": fewer than two points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(pts.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw Error(ErrorCode::kDegenerateFit, std::string(what) + ": all k equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (const auto& [x, y] : pts) {
    const double e = y - (fit.intercept + fit.slope * x);
    rss += e * e;
  }
  fit.residual_norm = std::sqrt(rss);
  fit.points = pts.size();
  return fit;
}

std::string dash_or(std::int64_t v, TableFormat format) {
  if (v == 0 && format == TableFormat::kText) return "-";
  return std::to_string(v);
}

// Text tables are right-aligned columns separated by two spaces.
std::string layout(const std::vector<std::vector<std::string>>& rows, TableFormat format) {
  std::ostringstream os;
  if (format == TableFormat::kTsv) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
      os << '\n';
    }
    return os.str();
  }
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (row.size() > width.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += std::string(width[i] - row[i].size(), ' ') + row[i];
    }
    os << line << '\n';
  }
  return os.str();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

RegressionFit loglog_fit(const std::vector<std::pair<double, double>>& points, bool parity_split) {
  std::vector<std::pair<double, double>> all, even, odd;
  for (const auto& [k, v] : points) {
    if (!(k > 0) || !(v > 0)) throw std::invalid_argument("log-log fit needs positive k and values");
    const std::pair<double, double> pt{std::log(k), std::log(v)};
    all.push_back(pt);
    const auto ki = static_cast<long long>(std::llround(k));
    (ki % 2 == 0 ? even : odd).push_back(pt);
  }
  RegressionFit fit;
  static_cast<LineFit&>(fit) = fit_line(all, "fit");
  if (parity_split) fit.parity_split = std::make_pair(fit_line(even, "even k"), fit_line(odd, "odd k"));
  return fit;
}

std::string format_invariant(const RationalInvariant& r, const BigFloat& value) {
  if (r.exact) return r.to_string();
  return "~" + value.to_decimal(12);
}

std::string render_count_table(const std::vector<CountRow>& rows, TableFormat format) {
  std::vector<std::vector<std::string>> cells{{"|r|", "#Top", "28", "27", "14-26", "2-13", "1"}};
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.abs_r), std::to_string(r.top), dash_or(r.n28, format), dash_or(r.n27, format),
                     dash_or(r.n14_26, format), dash_or(r.n2_13, format), dash_or(r.n1, format)});
  }
  return layout(cells, format);
}

std::string render_reps_table(const std::vector<RepBlock>& blocks, TableFormat format) {
  if (format == TableFormat::kTsv) {
    std::vector<std::vector<std::string>> cells{{"abs_r", "s_mod", "p1_mod", "s2", "sum", "k0", "k1", "l0", "l1", "s1"}};
    for (const auto& b : blocks) {
      for (const auto& row : b.rows) {
        const ParamPair& p = row.pair;
        cells.push_back({std::to_string(b.abs_r), b.s_key.to_string(), b.p1_key.to_string(),
                         format_invariant(b.s2, b.s2_value), std::to_string(p.sum()), std::to_string(p.k[0]),
                         std::to_string(p.k[1]), std::to_string(p.l[0]), std::to_string(p.l[1]),
                         format_invariant(row.s1, row.s1_value)});
      }
    }
    return layout(cells, format);
  }
  std::ostringstream os;
  for (const auto& b : blocks) {
    os << "|r|=" << b.abs_r << "  s=" << b.s_key << "  p1=" << b.p1_key << "  s2=" << format_invariant(b.s2, b.s2_value)
       << '\n';
    std::vector<std::vector<std::string>> cells{{"sum", "k0", "k1", "l0", "l1", "s1"}};
    for (const auto& row : b.rows) {
      const ParamPair& p = row.pair;
      cells.push_back({std::to_string(p.sum()), std::to_string(p.k[0]), std::to_string(p.k[1]), std::to_string(p.l[0]),
                       std::to_string(p.l[1]), format_invariant(row.s1, row.s1_value)});
    }
    os << layout(cells, format) << '\n';
  }
  return os.str();
}

std::string render_pattern_table(const std::vector<OrbitRow>& rows, TableFormat format) {
  std::vector<std::vector<std::string>> cells{{"|r|", "s", "p1", "s2", "s1", "classes", "violations"}};
  for (const auto& r : rows) {
    std::string s2 = r.s2_base.to_string();
    if (r.s2_step) s2 += "+k*" + r.s2_step->to_string();
    std::string s1;
    for (const auto& b : r.s1_bases) s1 += (s1.empty() ? "" : ",") + b.to_string();
    s1 += "+l/28";
    cells.push_back({std::to_string(r.abs_r), r.s_key.to_string(), r.p1_key.to_string(), s2, s1,
                     std::to_string(r.class_count), std::to_string(r.violations.size())});
  }
  return layout(cells, format);
}

std::string render_growth_table(const std::vector<GrowthRow>& rows, TableFormat format) {
  std::vector<std::vector<std::string>> cells{{"k", "N", "dN"}};
  for (const auto& r : rows) cells.push_back({std::to_string(r.k), std::to_string(r.n), std::to_string(r.delta)});
  return layout(cells, format);
}

std::string render_fit(const RegressionFit& fit) {
  std::ostringstream os;
  os << "slope " << fixed(fit.slope, 6) << "  intercept " << fixed(fit.intercept, 6) << "  residual "
     << fixed(fit.residual_norm, 6) << "  points " << fit.points << '\n';
  if (fit.parity_split) {
    const auto& [even, odd] = *fit.parity_split;
    os << "even k: slope " << fixed(even.slope, 6) << "  intercept " << fixed(even.intercept, 6) << '\n';
    os << "odd k:  slope " << fixed(odd.slope, 6) << "  intercept " << fixed(odd.intercept, 6) << '\n';
  }
  return os.str();
}

std::string render_class_table(const std::vector<HomeoClass>& classes, TableFormat format) {
  std::vector<std::vector<std::string>> cells{
      {"abs_r", "s", "p1", "s2", "s1", "members", "sum", "k0", "k1", "l0", "l1"}};
  for (const auto& c : classes) {
    for (const auto& d : c.diffeo_classes) {
      std::size_t best = d.members.front();
      for (std::size_t m : d.members) {
        if (smaller_representative(c.members[m].pair, c.members[best].pair)) best = m;
      }
      const ParamPair& p = c.members[best].pair;
      cells.push_back({std::to_string(c.key.abs_r), c.key.s_key.to_string(), c.key.p1_key.to_string(),
                       format_invariant(c.key.s2, c.key.s2_value), format_invariant(d.s1, d.s1_value),
                       std::to_string(d.members.size()), std::to_string(p.sum()), std::to_string(p.k[0]),
                       std::to_string(p.k[1]), std::to_string(p.l[0]), std::to_string(p.l[1])});
    }
  }
  return layout(cells, format);
}

void write_plot_data(const std::filesystem::path& path, const std::vector<std::pair<double, double>>& points,
                     const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const auto& [x, y] : points) out << fixed(x, 0) << ' ' << fixed(y, 0) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace ekspace
