// ekspace: enumerate Eschenburg-Kruggel spaces, compute their invariants,
// classify them and render the tables.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ekspace/classify.hpp"
#include "ekspace/enumerate.hpp"
#include "ekspace/error.hpp"
#include "ekspace/records_io.hpp"
#include "ekspace/report.hpp"

using namespace ekspace;

namespace {

constexpr int kExitFailure = 2;
constexpr int kExitPartial = 3;

struct RunConfig {
  std::int64_t half_width = 0;
  std::int64_t sum_lo = 0;
  std::int64_t sum_hi = 2;
  std::vector<std::string> r_specs;
  int prec = 130;
  int compare_bits = 100;
  std::int64_t den_bound = kDefaultDenBound;
  int table_size = CoprimalityTable::kDefaultSize;
  int jobs = 1;
  bool strict_s = false;
  bool canonical_only = false;
  bool with_ks = false;
  std::string in;
  std::string out;
  std::string k_text;
  std::string l_text;
  std::int64_t growth_min = 25;
  std::int64_t growth_max = 0;
  std::int64_t bench_samples = 200;

  KSOptions ks_options() const {
    KSOptions o;
    o.precision.mantissa_bits = prec;
    o.precision.compare_bits = compare_bits;
    o.den_bound = den_bound;
    return o;
  }
};

// Parses "5" or "3-9" into a set of |r| values.
std::set<std::int64_t> parse_r_filter(const std::vector<std::string>& specs) {
  std::set<std::int64_t> out;
  for (const auto& spec : specs) {
    const auto dash = spec.find('-', 1);
    const std::int64_t lo = std::stoll(spec.substr(0, dash));
    const std::int64_t hi = dash == std::string::npos ? lo : std::stoll(spec.substr(dash + 1));
    if (lo <= 0 || hi < lo) throw std::invalid_argument("bad --r value '" + spec + "'");
    for (std::int64_t v = lo; v <= hi; ++v) out.insert(v);
  }
  return out;
}

Triple parse_triple(const std::string& text) {
  Triple t{};
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 3) throw std::invalid_argument("expected three comma-separated integers, got '" + text + "'");
    t[n++] = std::stoll(item);
  }
  if (n != 3) throw std::invalid_argument("expected three comma-separated integers, got '" + text + "'");
  return t;
}

// Everything that determines the output; the job count is left out because it
// never changes results.
std::string describe(const RunConfig& c, const std::string& command) {
  std::ostringstream os;
  os << "version=" << EKSPACE_VERSION << " command=" << command;
  if (command == "enumerate") {
    os << " half_width=" << c.half_width << " sum=" << c.sum_lo << ".." << c.sum_hi << " r=";
    if (c.r_specs.empty()) os << "all";
    for (std::size_t i = 0; i < c.r_specs.size(); ++i) os << (i ? "," : "") << c.r_specs[i];
    os << " canonical_only=" << c.canonical_only << " table_size=" << c.table_size;
  }
  if (command != "enumerate" || c.with_ks) {
    os << " prec=" << c.prec << " compare_bits=" << c.compare_bits << " den_bound=" << c.den_bound;
  }
  if (command == "classify" || command == "report") os << " strict_s=" << c.strict_s;
  return os.str();
}

void log_failures(const std::vector<RecordFailure>& failures) {
  for (const auto& f : failures) std::cerr << "error: " << f.message << '\n';
}

std::vector<SpaceRecord> load_shards(const std::string& prefix) {
  const auto paths = find_shards(prefix);
  if (paths.empty()) throw Error(ErrorCode::kIo, "no shards match " + prefix + ".r*.tsv");
  return read_records(paths);
}

void write_text(const std::string& path, const std::string& header, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  out << "# " << header << '\n' << body;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

int cmd_enumerate(const RunConfig& c) {
  const CoprimalityTable table(c.table_size);
  SearchBox box;
  box.half_width = c.half_width;
  box.sum_lo = c.sum_lo;
  box.sum_hi = c.sum_hi;
  box.canonical_only = c.canonical_only;
  if (!c.r_specs.empty()) box.r_filter = parse_r_filter(c.r_specs);

  std::vector<SpaceRecord> records;
  std::size_t skipped = 0;
  enumerate_box(
      box, table,
      [&](const ParamPair& p) {
        try {
          records.push_back(make_record(p));
        } catch (const Error& e) {
          ++skipped;
          std::cerr << "error: " << p << ": " << e.what() << '\n';
        }
      },
      c.jobs);
  std::vector<RecordFailure> failures;
  if (c.with_ks) failures = attach_ks(records, c.ks_options(), table, c.jobs);
  log_failures(failures);
  const auto paths = write_records(records, c.out, describe(c, "enumerate"));
  std::cout << records.size() << " records in " << paths.size() << " file(s)\n";
  for (const auto& p : paths) std::cout << "  " << p.string() << '\n';
  return skipped + failures.size() > 0 ? kExitPartial : 0;
}

int cmd_invariants_one(const RunConfig& c) {
  const CoprimalityTable table(c.table_size);
  const ParamPair p = make_params(parse_triple(c.k_text), parse_triple(c.l_text));
  std::cout << "pair        " << p << '\n';
  if (!is_admissible(p, table)) {
    std::cout << "not admissible\n";
    return kExitFailure;
  }
  if (condition_c(p, table).empty()) throw Error(ErrorCode::kNoConditionC, p.to_string());
  const SpaceRecord rec = make_record(p);
  const KSOptions opt = c.ks_options();
  const KSResult ks = ks_invariants(p, opt.precision, table);
  const RationalInvariant s1 = rationalize(ks.s1, opt.den_bound, opt.rational_bits);
  const RationalInvariant s2 = rationalize(ks.s2, opt.den_bound, opt.rational_bits);
  const int digits = BigFloat::decimal_digits(c.prec);
  std::cout << "r           " << rec.inv.r << '\n'
            << "s           " << rec.inv.s << "  (mod |r|: " << rec.inv.s_mod << ")\n"
            << "p1          " << rec.inv.p1 << "  (mod |r|: " << rec.inv.p1_mod << ")\n"
            << "linking     " << rec.inv.linking.numerator << '/' << rec.inv.linking.denominator << '\n'
            << "normalized  " << ks.normalized_pair << '\n'
            << "q           " << ks.q << '\n'
            << "w           " << ks.w << '\n'
            << "s1          " << format_invariant(s1, ks.s1.value()) << "  " << ks.s1.value().to_decimal(digits) << '\n'
            << "s2          " << format_invariant(s2, ks.s2.value()) << "  " << ks.s2.value().to_decimal(digits) << '\n'
            << "|Im s2|     " << ks.s2_imag_residual.to_decimal(6) << '\n';
  return 0;
}

int cmd_invariants(const RunConfig& c) {
  if (!c.k_text.empty() || !c.l_text.empty()) return cmd_invariants_one(c);
  if (c.in.empty()) throw std::invalid_argument("invariants needs --in or --k/--l");
  const CoprimalityTable table(c.table_size);
  std::vector<SpaceRecord> records = load_shards(c.in);
  const std::string previous = read_config(find_shards(c.in).front());
  const auto failures = attach_ks(records, c.ks_options(), table, c.jobs);
  log_failures(failures);
  const auto paths = write_records(records, c.out.empty() ? c.in : c.out, previous + " | " + describe(c, "invariants"));
  std::cout << records.size() - failures.size() << " of " << records.size() << " records evaluated, "
            << paths.size() << " file(s) written\n";
  return failures.empty() ? 0 : kExitPartial;
}

std::vector<HomeoClass> classify_shards(const RunConfig& c, std::size_t& missing) {
  const CoprimalityTable table(c.table_size);
  std::vector<SpaceRecord> records = load_shards(c.in);
  missing = 0;
  for (const auto& r : records) missing += !r.ks.has_value();
  ClassifyOptions opt;
  opt.precision = c.ks_options().precision;
  opt.strict_s = c.strict_s;
  const KSOptions ks = c.ks_options();
  opt.recompute = [ks, &table](const ParamPair& p, int bits) {
    KSOptions fine = ks;
    fine.precision.mantissa_bits = bits;
    fine.precision.compare_bits = 2 * ks.precision.compare_bits;
    return compute_ks(p, fine, table);
  };
  return classify(std::move(records), opt);
}

int cmd_classify(const RunConfig& c) {
  std::size_t missing = 0;
  const auto classes = classify_shards(c, missing);
  const std::string out = c.out.empty() ? c.in : c.out;
  write_text(out + ".classes.tsv", describe(c, "classify"), render_class_table(classes, TableFormat::kTsv));
  std::cout << render_count_table(count_table(classes), TableFormat::kText);
  if (missing) std::cerr << missing << " record(s) without Kreck-Stolz values were skipped\n";
  return missing ? kExitPartial : 0;
}

int cmd_report(const RunConfig& c) {
  const std::string out = c.out.empty() ? c.in : c.out;
  if (out.empty()) throw std::invalid_argument("report needs --in or --out");
  const std::string header = describe(c, "report");
  int status = 0;
  if (!c.in.empty()) {
    std::size_t missing = 0;
    const auto classes = classify_shards(c, missing);
    if (missing) status = kExitPartial;
    write_text(out + ".counts.txt", header, render_count_table(count_table(classes), TableFormat::kText));
    std::set<std::int64_t> radii;
    for (const auto& cl : classes) radii.insert(cl.key.abs_r);
    std::string reps;
    for (std::int64_t r : radii) reps += render_reps_table(smallest_reps(classes, r), TableFormat::kText);
    write_text(out + ".reps.txt", header, reps);
    const auto patterns = orbit_summary(classes);
    std::string body = render_pattern_table(patterns, TableFormat::kText);
    for (const auto& row : patterns) {
      for (const auto& v : row.violations) body += "# |r|=" + std::to_string(row.abs_r) + ": " + v + "\n";
    }
    write_text(out + ".patterns.txt", header, body);
    std::cout << render_count_table(count_table(classes), TableFormat::kText);
  }
  if (c.growth_max > 0) {
    const CoprimalityTable table(c.table_size);
    std::vector<std::int64_t> widths;
    for (std::int64_t k = 1; k <= c.growth_max; ++k) widths.push_back(k);
    const auto rows = growth_counts(widths, table, c.jobs);
    std::vector<std::pair<double, double>> delta;
    for (const auto& r : rows) {
      if (r.k >= c.growth_min && r.delta > 0) delta.emplace_back(static_cast<double>(r.k), static_cast<double>(r.delta));
    }
    const RegressionFit fit = loglog_fit(delta, true);
    const std::string growth_header = header + " growth=" + std::to_string(c.growth_min) + ".." + std::to_string(c.growth_max);
    write_text(out + ".growth.txt", growth_header, render_growth_table(rows, TableFormat::kText) + "\n# dN fit\n" + render_fit(fit));
    write_plot_data(out + ".growth.dat", delta, "k dN");
    std::cout << "dN log-log fit over k in [" << c.growth_min << ", " << c.growth_max << "]: " << render_fit(fit);
  }
  return status;
}

int cmd_bench(const RunConfig& c) {
  using clock = std::chrono::steady_clock;
  const CoprimalityTable table(c.table_size);
  SearchBox box;
  box.half_width = c.half_width;
  box.sum_lo = c.sum_lo;
  box.sum_hi = c.sum_hi;
  std::vector<ParamPair> pairs;
  const auto t0 = clock::now();
  enumerate_box(box, table, [&](const ParamPair& p) { pairs.push_back(p); }, c.jobs);
  const double enum_s = std::chrono::duration<double>(clock::now() - t0).count();
  const double side = static_cast<double>(2 * c.half_width + 1);
  const double tested = static_cast<double>(c.sum_hi - c.sum_lo + 1) * side * side * side * side;

  const std::size_t n = std::min<std::size_t>(pairs.size(), static_cast<std::size_t>(c.bench_samples));
  const KSOptions opt = c.ks_options();
  const auto t1 = clock::now();
  for (std::size_t i = 0; i < n; ++i) {
    const ParamPair& p = pairs[i * (pairs.size() / n)];
    if (integer_invariants(p).abs_r > 0) ks_invariants(p, opt.precision, table);
  }
  const double ks_s = std::chrono::duration<double>(clock::now() - t1).count();
  std::printf("half_width %lld: %zu pairs, %.3g candidates in %.3f s (%.3g pairs tested/s)\n",
              static_cast<long long>(c.half_width), pairs.size(), tested, enum_s, tested / std::max(enum_s, 1e-9));
  std::printf("invariants: %zu in %.3f s (%.3g /s at %d bits)\n", n, ks_s, n / std::max(ks_s, 1e-9), c.prec);
  return 0;
}

void add_precision(CLI::App* app, RunConfig& c) {
  app->add_option("--prec", c.prec, "Mantissa bits")->capture_default_str()->check(CLI::Range(32, 1 << 16));
  app->add_option("--compare-bits", c.compare_bits, "Comparison tolerance 2^-bits")->capture_default_str();
  app->add_option("--den-bound", c.den_bound, "Largest denominator accepted by rationalization")->capture_default_str();
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--table-size", c.table_size, "Coprimality table size")->capture_default_str()->check(CLI::Range(1, 1 << 16));
  app->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1, 1024));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eschenburg-Kruggel space enumeration and classification"};
  app.set_version_flag("--version", std::string(EKSPACE_VERSION));
  app.require_subcommand(1);
  RunConfig c;

  auto* en = app.add_subcommand("enumerate", "Enumerate pairs in a box and write record shards");
  en->add_option("--half-width", c.half_width, "Entries lie in [-w, w]")->required()->check(CLI::NonNegativeNumber);
  en->add_option("--sum-lo", c.sum_lo, "Lowest common sum")->capture_default_str();
  en->add_option("--sum-hi", c.sum_hi, "Highest common sum")->capture_default_str();
  en->add_option("--r", c.r_specs, "Admitted |r|: a value or a range a-b; repeatable");
  en->add_flag("--canonical-only", c.canonical_only, "Only emit canonical orbit representatives");
  en->add_flag("--with-ks", c.with_ks, "Also compute s1, s2");
  en->add_option("-o,--out", c.out, "Output prefix")->required();
  add_precision(en, c);
  add_common(en, c);

  auto* inv = app.add_subcommand("invariants", "Add s1, s2 to record shards, or evaluate one pair");
  inv->add_option("--in", c.in, "Input prefix");
  inv->add_option("-o,--out", c.out, "Output prefix (default: rewrite the input)");
  inv->add_option("--k", c.k_text, "One-shot mode: k as a,b,c")->allow_extra_args(false);
  inv->add_option("--l", c.l_text, "One-shot mode: l as d,e,f")->allow_extra_args(false);
  add_precision(inv, c);
  add_common(inv, c);

  auto* cl = app.add_subcommand("classify", "Group records into homeomorphism and diffeomorphism classes");
  cl->add_option("--in", c.in, "Input prefix")->required();
  cl->add_option("-o,--out", c.out, "Output prefix (default: input prefix)");
  cl->add_flag("--strict-s", c.strict_s, "Match raw s and p1 instead of residues mod |r|");
  add_precision(cl, c);
  add_common(cl, c);

  auto* rep = app.add_subcommand("report", "Render count, representative, pattern and growth tables");
  rep->add_option("--in", c.in, "Input prefix");
  rep->add_option("-o,--out", c.out, "Output prefix (default: input prefix)");
  rep->add_flag("--strict-s", c.strict_s, "Match raw s and p1 instead of residues mod |r|");
  rep->add_option("--growth-max", c.growth_max, "Also compute N(k), dN(k) for k up to this value");
  rep->add_option("--growth-min", c.growth_min, "Smallest k in the dN fit")->capture_default_str();
  add_precision(rep, c);
  add_common(rep, c);

  auto* bench = app.add_subcommand("bench", "Time enumeration and invariant evaluation");
  bench->add_option("--half-width", c.half_width, "Box half width")->required()->check(CLI::PositiveNumber);
  bench->add_option("--sum-lo", c.sum_lo, "Lowest common sum")->capture_default_str();
  bench->add_option("--sum-hi", c.sum_hi, "Highest common sum")->capture_default_str();
  bench->add_option("--samples", c.bench_samples, "Pairs evaluated")->capture_default_str();
  add_precision(bench, c);
  add_common(bench, c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c.compare_bits >= c.prec) throw std::invalid_argument("--compare-bits must be below --prec");
    if (en->parsed()) return cmd_enumerate(c);
    if (inv->parsed()) return cmd_invariants(c);
    if (cl->parsed()) return cmd_classify(c);
    if (rep->parsed()) return cmd_report(c);
    if (bench->parsed()) return cmd_bench(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
