#include "ekspace/records_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ekspace/error.hpp"

namespace ekspace {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::int64_t parse_int(const std::string& field, const char* name) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::kFormatError, std::string("bad ") + name + " '" + field + "'");
  }
  return v;
}

bool parse_bool(const std::string& field, const char* name) {
  if (field == "1") return true;
  if (field == "0") return false;
  throw Error(ErrorCode::kFormatError, std::string("bad ") + name + " '" + field + "'");
}

std::string decimal(const BigFloat& x, int bits) {
  const std::string text = x.to_decimal(BigFloat::decimal_digits(bits));
  if (!(BigFloat::parse(text, bits) == x)) {
    throw Error(ErrorCode::kSerializationPrecisionLoss, text + " does not round-trip at " + std::to_string(bits) + " bits");
  }
  return text;
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kFormatError, what);
}

}  // namespace

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns{
      "sum",      "k0",       "k1",     "k2",     "l0",     "l1",       "l2",       "r",
      "s",        "p1",       "s_mod",  "p1_mod", "prec_bits", "s1_dec", "s2_dec",  "s1_num",
      "s1_den",   "s2_num",   "s2_den", "s1_exact", "s2_exact", "s2_imag_exp"};
  return columns;
}

std::string format_record(const SpaceRecord& r) {
  std::ostringstream os;
  const ParamPair& p = r.pair;
  os << p.sum() << '\t' << p.k[0] << '\t' << p.k[1] << '\t' << p.k[2] << '\t' << p.l[0] << '\t' << p.l[1] << '\t'
     << p.l[2] << '\t' << r.inv.r << '\t' << r.inv.s << '\t' << r.inv.p1 << '\t' << r.inv.s_mod << '\t'
     << r.inv.p1_mod;
  if (!r.ks) {
    for (int i = 0; i < 10; ++i) os << "\tNA";
    return os.str();
  }
  const KSValues& ks = *r.ks;
  os << '\t' << ks.prec_bits << '\t' << decimal(ks.s1.value(), ks.prec_bits) << '\t'
     << decimal(ks.s2.value(), ks.prec_bits) << '\t' << ks.s1_rat.numerator << '\t' << ks.s1_rat.denominator
     << '\t' << ks.s2_rat.numerator << '\t' << ks.s2_rat.denominator << '\t' << (ks.s1_rat.exact ? 1 : 0) << '\t'
     << (ks.s2_rat.exact ? 1 : 0) << '\t';
  if (ks.s2_imag_exp) {
    os << *ks.s2_imag_exp;
  } else {
    os << "-inf";
  }
  return os.str();
}

SpaceRecord parse_record(const std::string& line) {
  const auto f = split_tabs(line);
  expect(f.size() == record_columns().size(),
         "expected " + std::to_string(record_columns().size()) + " fields, found " + std::to_string(f.size()));
  const std::int64_t sum = parse_int(f[0], "sum");
  const ParamPair p{{parse_int(f[1], "k0"), parse_int(f[2], "k1"), parse_int(f[3], "k2")},
                    {parse_int(f[4], "l0"), parse_int(f[5], "l1"), parse_int(f[6], "l2")}};
  expect(p.sum() == sum && p.l[0] + p.l[1] + p.l[2] == sum, "entries do not add up to sum " + f[0]);

  SpaceRecord rec;
  try {
    rec = make_record(p);
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormatError, std::string("invalid pair: ") + e.what());
  }
  expect(rec.inv.r == WideInt::parse(f[7]) && rec.inv.s == WideInt::parse(f[8]) && rec.inv.p1 == WideInt::parse(f[9]) &&
             rec.inv.s_mod == parse_int(f[10], "s_mod") && rec.inv.p1_mod == parse_int(f[11], "p1_mod"),
         "integer invariants do not match the pair");

  if (f[12] == "NA") {
    for (std::size_t i = 13; i < f.size(); ++i) expect(f[i] == "NA", "partial NA row");
    return rec;
  }
  KSValues ks;
  ks.prec_bits = static_cast<int>(parse_int(f[12], "prec_bits"));
  expect(ks.prec_bits >= 2 && ks.prec_bits <= 1 << 20, "prec_bits out of range");
  const BigFloat s1 = BigFloat::parse(f[13], ks.prec_bits);
  const BigFloat s2 = BigFloat::parse(f[14], ks.prec_bits);
  for (const BigFloat* v : {&s1, &s2}) {
    expect(mpfr_cmp_d(v->get(), -0.5) >= 0 && mpfr_cmp_d(v->get(), 0.5) < 0, "value outside [-1/2, 1/2)");
  }
  ks.s1 = ModOneReal::from_reduced(s1);
  ks.s2 = ModOneReal::from_reduced(s2);
  auto rational = [&](const BigFloat& x, std::size_t num, std::size_t den, std::size_t exact, const char* name) {
    RationalInvariant out;
    out.numerator = parse_int(f[num], name);
    out.denominator = parse_int(f[den], name);
    expect(out.denominator > 0, std::string(name) + " denominator must be positive");
    out.exact = parse_bool(f[exact], name);
    out.residual = rational_residual(x, out.numerator, out.denominator);
    return out;
  };
  ks.s1_rat = rational(s1, 15, 16, 19, "s1");
  ks.s2_rat = rational(s2, 17, 18, 20, "s2");
  if (f[21] != "-inf") ks.s2_imag_exp = parse_int(f[21], "s2_imag_exp");
  rec.ks = std::move(ks);
  return rec;
}

std::vector<std::filesystem::path> write_records(std::vector<SpaceRecord> records, const std::string& prefix,
                                                 const std::string& config) {
  std::sort(records.begin(), records.end(), record_less);
  std::map<std::int64_t, std::vector<const SpaceRecord*>> shards;
  for (const auto& r : records) shards[r.inv.abs_r].push_back(&r);

  std::string columns;
  for (const auto& c : record_columns()) columns += (columns.empty() ? "" : "\t") + c;

  std::vector<std::filesystem::path> paths;
  for (const auto& [abs_r, rows] : shards) {
    const std::filesystem::path path = prefix + ".r" + std::to_string(abs_r) + ".tsv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
    out << kRecordsMagic << (config.empty() ? "" : " ") << config << '\n' << columns << '\n';
    for (const SpaceRecord* r : rows) out << format_record(*r) << '\n';
    out.close();
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
    paths.push_back(path);
  }
  return paths;
}

std::string read_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  const std::string magic(kRecordsMagic);
  if (line.rfind(magic, 0) != 0) throw Error(ErrorCode::kFormatError, path.string() + ":1: missing header");
  return line.size() > magic.size() ? line.substr(magic.size() + 1) : std::string();
}

std::vector<SpaceRecord> read_records(const std::vector<std::filesystem::path>& paths) {
  std::vector<SpaceRecord> out;
  std::string columns;
  for (const auto& c : record_columns()) columns += (columns.empty() ? "" : "\t") + c;
  for (const auto& path : paths) {
    read_config(path);
    std::ifstream in(path, std::ios::binary);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (number == 1) continue;
      const std::string where = path.string() + ":" + std::to_string(number) + ": ";
      if (number == 2) {
        if (line != columns) throw Error(ErrorCode::kFormatError, where + "unexpected column header");
        continue;
      }
      try {
        out.push_back(parse_record(line));
      } catch (const Error& e) {
        throw Error(ErrorCode::kFormatError, where + e.what());
      }
    }
    if (number < 2) throw Error(ErrorCode::kFormatError, path.string() + ": missing column header");
  }
  return out;
}

std::vector<std::filesystem::path> find_shards(const std::string& prefix) {
  const std::filesystem::path base(prefix);
  std::filesystem::path dir = base.parent_path();
  if (dir.empty()) dir = ".";
  const std::string stem = base.filename().string() + ".r";
  std::vector<std::pair<std::int64_t, std::filesystem::path>> found;
  if (!std::filesystem::is_directory(dir)) return {};
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(stem, 0) != 0 || name.size() <= stem.size() + 4 || !name.ends_with(".tsv")) continue;
    const std::string digits = name.substr(stem.size(), name.size() - stem.size() - 4);
    std::int64_t r = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) found.emplace_back(r, entry.path());
  }
  std::sort(found.begin(), found.end());
  std::vector<std::filesystem::path> out;
  for (auto& [r, p] : found) out.push_back(p);
  return out;
}

}  // namespace ekspace
