// Acceptance checks. One line per criterion:
//   [PASS] 3 <name>: <detail> (<seconds> s)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "ekspace/classify.hpp"
#include "ekspace/enumerate.hpp"
#include "ekspace/error.hpp"
#include "ekspace/invariants.hpp"
#include "ekspace/kreck_stolz.hpp"
#include "ekspace/rational.hpp"
#include "ekspace/record.hpp"
#include "ekspace/report.hpp"

using namespace ekspace;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and boxes.
constexpr int kMantissaBits = 130;
constexpr int kCompareBits = 100;
constexpr int kRationalBits = 80;
constexpr std::int64_t kClassBoxR1 = 70;
constexpr std::int64_t kPatternBoxR1 = 110;
constexpr std::int64_t kClassBoxOdd = 200;
constexpr std::int64_t kGrowthMin = 25;
constexpr std::int64_t kGrowthMax = 200;
constexpr double kSlopeLo = 2.7;
constexpr double kSlopeHi = 3.3;
constexpr int kFreeSamples = 100000;
constexpr int kSymmetrySamples = 1000;
constexpr std::int64_t kSampleHalfWidth = 40;
constexpr std::int64_t kDeterminismBox = 24;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  fs::path data;
  fs::path cli;
  int jobs = 1;
};

const CoprimalityTable& table() {
  static const CoprimalityTable t;
  return t;
}

KSOptions ks_options() {
  KSOptions o;
  o.precision.mantissa_bits = kMantissaBits;
  o.precision.compare_bits = kCompareBits;
  o.rational_bits = kRationalBits;
  return o;
}

bool below(const BigFloat& x, long bits) { return x.is_zero() || x.exponent() <= -bits; }

std::vector<HomeoClass> pipeline(std::int64_t h, std::set<std::int64_t> r, int jobs,
                                 std::vector<SpaceRecord>* keep = nullptr) {
  SearchBox box;
  box.half_width = h;
  box.r_filter = std::move(r);
  std::vector<SpaceRecord> recs;
  enumerate_box(box, table(), [&](const ParamPair& p) { recs.push_back(make_record(p)); }, jobs);
  const auto failures = attach_ks(recs, ks_options(), table(), jobs);
  if (!failures.empty()) throw std::runtime_error(failures.front().message);
  if (keep) *keep = recs;
  ClassifyOptions opt;
  opt.precision = ks_options().precision;
  opt.recompute = [](const ParamPair& p, int bits) {
    KSOptions o = ks_options();
    o.precision = o.precision.with_bits(bits);
    o.precision.compare_bits = 2 * kCompareBits;
    return compute_ks(p, o, table());
  };
  return classify(std::move(recs), opt);
}

const std::vector<HomeoClass>& r1_classes(int jobs, std::vector<SpaceRecord>** recs = nullptr) {
  static std::vector<SpaceRecord> records;
  static const auto classes = pipeline(kClassBoxR1, {1}, jobs, &records);
  if (recs) *recs = &records;
  return classes;
}

std::set<Fraction> s1_set(const HomeoClass& c) {
  std::set<Fraction> out;
  for (const auto& d : c.diffeo_classes) out.insert(d.s1.fraction());
  return out;
}

std::set<Fraction> lattice(std::int64_t n) {
  std::set<Fraction> out;
  for (std::int64_t j = 0; j < n; ++j) out.insert(Fraction::make(-1, 2) + Fraction::make(j, n));
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

// --- criteria ---------------------------------------------------------------

Outcome worked_example(const Options&) {
  const ParamPair p = make_params({-1, -1, 2}, {-2, 0, 2});
  const DifferenceMatrix want{{{{1, -1, -3}, {1, -1, -3}, {4, 2, 0}}}};
  const bool matrix = difference_matrix(p) == want;
  const bool adm = is_admissible(p, table());
  const auto w = condition_c(p, table());
  const bool col0 = !w.empty() && w.front() == ConditionCWitness{LineKind::kColumn, 0};
  return {matrix && adm && col0, std::string("matrix ") + (matrix ? "ok" : "differs") + ", admissible " +
                                     (adm ? "yes" : "no") + ", first witness " +
                                     (w.empty() ? "none" : to_string(w.front()))};
}

struct RepRowData {
  std::int64_t abs_r, s_mod, p1_mod;
  std::string s2;
  ParamPair pair;
  std::string s1;
};

std::vector<RepRowData> read_reps(const Options& o) {
  std::ifstream in(o.data / "representatives.tsv");
  if (!in) throw std::runtime_error("cannot open " + (o.data / "representatives.tsv").string());
  std::vector<RepRowData> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    RepRowData r;
    std::int64_t sum, k0, k1, l0, l1;
    ss >> r.abs_r >> r.s_mod >> r.p1_mod >> r.s2 >> sum >> k0 >> k1 >> l0 >> l1 >> r.s1;
    r.pair = params_from_row(sum, k0, k1, l0, l1);
    out.push_back(r);
  }
  return out;
}

Fraction parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  return Fraction::make(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

// Equal on Q/Z; the table prints 1/2 and -1/2 interchangeably.
bool same_mod_one(const RationalInvariant& got, const std::string& want) {
  return got.fraction().mod_one() == parse_fraction(want).mod_one();
}

// Rows whose computed invariants disagree with the table.
std::vector<std::string> check_reps(const std::vector<RepRowData>& rows) {
  std::vector<std::string> bad;
  for (const auto& r : rows) {
    const IntegerInvariants inv = integer_invariants(r.pair);
    const KSValues ks = compute_ks(r.pair, ks_options(), table());
    const bool ok = inv.abs_r == r.abs_r && inv.s_mod == r.s_mod && inv.p1_mod == r.p1_mod &&
                    ks.s1_rat.exact && ks.s2_rat.exact && below(ks.s1_rat.residual, kRationalBits) &&
                    below(ks.s2_rat.residual, kRationalBits) && same_mod_one(ks.s1_rat, r.s1) &&
                    same_mod_one(ks.s2_rat, r.s2);
    if (!ok) {
      bad.push_back(r.pair.to_string() + " got s2=" + ks.s2_rat.to_string() + " s1=" + ks.s1_rat.to_string());
    }
  }
  return bad;
}

Outcome representative_table(const Options& o) {
  std::vector<RepRowData> rows;
  for (auto& r : read_reps(o))
    if (r.abs_r == 1) rows.push_back(r);
  std::map<std::string, int> blocks;
  for (const auto& r : rows) ++blocks[r.s2];
  bool shape = blocks.size() == 6;
  for (const auto& [s2, n] : blocks) shape = shape && n == 28;
  const auto bad = check_reps(rows);
  return {shape && bad.empty(), std::to_string(rows.size()) + " rows in " + std::to_string(blocks.size()) +
                                    " blocks, " + std::to_string(bad.size()) + " mismatches" +
                                    (bad.empty() ? "" : ": " + bad.front())};
}

Outcome class_count_r1(const Options& o) {
  const auto& classes = r1_classes(o.jobs);
  const auto full = lattice(28);
  bool pass = classes.size() == 12;
  std::vector<std::string> short_classes;
  for (const auto& c : classes) {
    const auto s1 = s1_set(c);
    bool on_lattice = true;
    for (const auto& f : s1) on_lattice = on_lattice && full.count(f);
    pass = pass && s1.size() == 28 && on_lattice;
    if (s1.size() != 28 || !on_lattice) {
      std::vector<std::string> missing;
      for (const auto& f : full)
        if (!s1.count(f)) missing.push_back(f.to_string());
      short_classes.push_back("s2=" + c.key.s2.to_string() + " has " + std::to_string(s1.size()) +
                              (on_lattice ? "" : " (off lattice)") + ", missing s1 " + join(missing, " "));
    }
  }
  std::string detail = std::to_string(classes.size()) + " classes at half width " + std::to_string(kClassBoxR1);
  if (!short_classes.empty()) detail += "; " + join(short_classes, "; ");
  return {pass, detail};
}

Outcome class_count_odd(const Options& o) {
  const std::map<std::int64_t, std::size_t> top{{3, 8}, {5, 48}, {7, 120}, {9, 24}};
  bool pass = true;
  std::vector<std::string> parts;
  for (const auto& [r, limit] : top) {
    const auto classes = pipeline(kClassBoxOdd, {r}, o.jobs);
    pass = pass && classes.size() <= limit;
    std::string part = "|r|=" + std::to_string(r) + ": " + std::to_string(classes.size()) + "/" + std::to_string(limit);
    if (r == 3) {
      bool all28 = classes.size() == limit;
      for (const auto& c : classes) all28 = all28 && c.smooth_count() == 28;
      pass = pass && all28;
      part += all28 ? " all 28" : " not all 28";
    }
    parts.push_back(part);
  }
  std::vector<RepRowData> rows;
  for (auto& r : read_reps(o))
    if (r.abs_r == 3) rows.push_back(r);
  const auto bad = check_reps(rows);
  pass = pass && !rows.empty() && bad.empty();
  parts.push_back(std::to_string(rows.size()) + " |r|=3 table rows, " + std::to_string(bad.size()) + " mismatches");
  return {pass, join(parts)};
}

Outcome orbit_pattern(const Options& o) {
  const auto classes = pipeline(kPatternBoxR1, {1}, o.jobs);
  std::set<Fraction> s2;
  std::size_t complete = 0;
  const auto full = lattice(28);
  for (const auto& c : classes) {
    s2.insert(c.key.s2.fraction());
    complete += s1_set(c) == full;
  }
  const bool pass = s2 == lattice(12) && complete == classes.size();
  return {pass, "half width " + std::to_string(kPatternBoxR1) + ": " + std::to_string(s2.size()) +
                    " s2 values, " + std::to_string(complete) + "/" + std::to_string(classes.size()) +
                    " classes with s1 = -1/2 + l/28, l = 0..27"};
}

Outcome properties(const Options& o) {
  std::vector<std::string> fails;
  std::vector<SpaceRecord>* recs = nullptr;
  r1_classes(o.jobs, &recs);
  std::size_t even = 0;
  for (const auto& r : *recs) even += r.inv.abs_r % 2 == 0;
  if (even) fails.push_back(std::to_string(even) + " even r");

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> entry(-100, 100), sum(0, 2);
  std::size_t admissible = 0, unfree = 0;
  for (int i = 0; i < kFreeSamples; ++i) {
    const std::int64_t s = sum(rng);
    const std::int64_t k0 = entry(rng), k1 = entry(rng), l0 = entry(rng), l1 = entry(rng);
    const ParamPair p = params_from_row(s, k0, k1, l0, l1);
    if (!is_admissible(p, table())) continue;
    ++admissible;
    unfree += !is_free(p);
  }
  if (unfree) fails.push_back(std::to_string(unfree) + " admissible pairs not free");

  PrecisionConfig cfg = ks_options().precision;
  const PrecisionConfig wide = cfg.with_bits(cfg.mantissa_bits + cfg.guard_bits);
  std::size_t sym = 0, witness = 0, stability = 0, imag = 0, multi = 0;
  std::uniform_int_distribution<std::int64_t> e(-kSampleHalfWidth, kSampleHalfWidth);
  int sampled = 0;
  while (sampled < kSymmetrySamples) {
    const ParamPair p = params_from_row(sum(rng), e(rng), e(rng), e(rng), e(rng));
    if (p.max_abs() > kSampleHalfWidth || !is_eschenburg_kruggel(p, table())) continue;
    ++sampled;
    const IntegerInvariants inv = integer_invariants(p);
    const KSResult base = ks_invariants(p, cfg, table());
    imag += !below(base.s2_imag_residual, kCompareBits);
    const KSResult hi = ks_invariants(p, wide, table());
    stability += !below(mod_one_distance(base.s1, hi.s1), kCompareBits) ||
                 !below(mod_one_distance(base.s2, hi.s2), kCompareBits);
    for (const auto& g : SymmetryElement::orientation_preserving()) {
      const ParamPair q = apply_symmetry(p, g).pair;
      const IntegerInvariants qi = integer_invariants(q);
      const KSResult qk = ks_invariants(q, cfg, table());
      sym += qi.abs_r != inv.abs_r || qi.s_mod != inv.s_mod || qi.p1_mod != inv.p1_mod ||
             !below(mod_one_distance(qk.s1, base.s1), kCompareBits) ||
             !below(mod_one_distance(qk.s2, base.s2), kCompareBits);
    }
    const auto ws = condition_c(p, table());
    multi += ws.size() > 1;
    for (const auto& w : ws) {
      const KSResult alt = ks_invariants_normalized(normalize_for_witness(p, w), cfg);
      witness += !below(mod_one_distance(alt.s1, base.s1), kCompareBits) ||
                 !below(mod_one_distance(alt.s2, base.s2), kCompareBits);
    }
  }
  if (sym) fails.push_back(std::to_string(sym) + " symmetry images differ");
  if (witness) fails.push_back(std::to_string(witness) + " witness choices differ");
  if (stability) fails.push_back(std::to_string(stability) + " unstable under precision increase");
  if (imag) fails.push_back(std::to_string(imag) + " imaginary residuals too large");
  std::string detail = std::to_string(recs->size()) + " enumerated r odd, " + std::to_string(admissible) +
                       " admissible of " + std::to_string(kFreeSamples) + " random, " + std::to_string(sampled) +
                       " spaces x 72 images, " + std::to_string(multi) + " with several witnesses";
  if (!fails.empty()) detail += "; " + join(fails);
  return {fails.empty(), detail};
}

Outcome lens_closed_forms(const Options&) {
  PrecisionConfig cfg = ks_options().precision;
  const LensSpace l = make_lens(3, {1, 1, 1, 1});
  const BigFloat d1 = rational_residual(lens_s1(l, cfg).value(), 25, 336);
  const LensS2 s2 = lens_s2(l, cfg);
  const BigFloat d2 = rational_residual(s2.value.value(), -1, 9);
  const bool pass = below(d1, kCompareBits) && below(d2, kCompareBits) && below(s2.imag_residual, kCompareBits);
  return {pass, "s1 = 25/336 within 2^" + std::to_string(d1.is_zero() ? -9999 : d1.exponent()) + ", s2 = -1/9 within 2^" +
                    std::to_string(d2.is_zero() ? -9999 : d2.exponent())};
}

Outcome growth_law(const Options& o) {
  const auto hist = count_by_max_entry(kGrowthMax, table(), 0, 2, o.jobs);
  std::vector<std::pair<double, double>> pts;
  for (std::int64_t k = kGrowthMin; k <= kGrowthMax; ++k) pts.emplace_back(k, static_cast<double>(hist[k]));
  const RegressionFit fit = loglog_fit(pts);
  char buf[128];
  std::snprintf(buf, sizeof buf, "slope %.4f over k in [%lld, %lld], residual %.3g", fit.slope,
                static_cast<long long>(kGrowthMin), static_cast<long long>(kGrowthMax), fit.residual_norm);
  return {fit.slope >= kSlopeLo && fit.slope <= kSlopeHi, buf};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const Options& o) {
  if (o.cli.empty() || !fs::exists(o.cli)) return {false, "command-line tool not found: " + o.cli.string()};
  const fs::path root = fs::temp_directory_path() / ("ekspace-det-" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::string exe = o.cli.string();
  std::map<int, std::map<std::string, std::string>> outputs;
  for (int jobs : {1, 4}) {
    const fs::path dir = root / ("jobs" + std::to_string(jobs));
    fs::create_directories(dir);
    const std::string pre = (dir / "run").string();
    const std::string j = " --jobs " + std::to_string(jobs) + " > /dev/null";
    const std::vector<std::string> cmds{
        exe + " enumerate --half-width " + std::to_string(kDeterminismBox) + " --r 1-9 -o " + pre + j,
        exe + " invariants --in " + pre + j,
        exe + " classify --in " + pre + j,
        exe + " report --in " + pre + " --growth-max " + std::to_string(kDeterminismBox) + " --growth-min 4" + j,
    };
    for (const auto& c : cmds) {
      if (std::system(c.c_str()) != 0) {
        fs::remove_all(root);
        return {false, "command failed: " + c};
      }
    }
    for (const auto& f : fs::directory_iterator(dir)) outputs[jobs][f.path().filename().string()] = slurp(f.path());
  }
  fs::remove_all(root);
  std::vector<std::string> differ;
  for (const auto& [name, text] : outputs[1]) {
    const auto it = outputs[4].find(name);
    if (it == outputs[4].end() || it->second != text) differ.push_back(name);
  }
  const bool pass = differ.empty() && outputs[1].size() == outputs[4].size() && !outputs[1].empty();
  return {pass, std::to_string(outputs[1].size()) + " files compared between --jobs 1 and --jobs 4" +
                    (differ.empty() ? "" : ", differing: " + join(differ))};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(const Options&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  Options opt;
  std::vector<int> only;
  opt.data = EKSPACE_TEST_DATA;
  app.add_option("--data", opt.data, "Fixture directory")->capture_default_str();
  app.add_option("--cli", opt.cli, "Path to the ekspace tool");
  app.add_option("--jobs", opt.jobs, "Worker threads")->capture_default_str();
  app.add_option("--only", only, "Criteria to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "worked example", worked_example},
      {2, "|r|=1 representative table", representative_table},
      {3, "|r|=1 class counts", class_count_r1},
      {4, "|r| in {3,5,7,9} class counts", class_count_odd},
      {5, "|r|=1 orbit pattern", orbit_pattern},
      {6, "property suite", properties},
      {7, "lens closed forms", lens_closed_forms},
      {8, "growth law", growth_law},
      {9, "determinism across job counts", determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(opt);
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !out.pass;
    std::printf("[%s] %d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
