#include "ekspace/params.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ekspace/error.hpp"

namespace ekspace {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Triple permute(const Triple& v, const Permutation& perm) {
  return {v[perm[0]], v[perm[1]], v[perm[2]]};
}

bool line_qualifies(const Triple& v, const CoprimalityTable& t) {
  return t.coprime(v[0], v[1]) && t.coprime(v[0], v[2]) && t.coprime(v[1], v[2]);
}

std::vector<SymmetryElement> build_group() {
  std::vector<Permutation> perms;
  Permutation p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<SymmetryElement> out;
  out.reserve(144);
  for (bool negate : {false, true}) {
    for (bool swap : {false, true}) {
      for (const auto& alpha : perms) {
        for (const auto& beta : perms) {
          out.push_back(SymmetryElement{alpha, beta, swap, negate});
        }
      }
    }
  }
  return out;
}

const std::vector<SymmetryElement>& group() {
  static const std::vector<SymmetryElement> g = build_group();
  return g;
}

bool meets_canonical_inequalities(const ParamPair& p) {
  return p.k[0] <= p.k[1] && p.k[1] <= p.k[2] && p.l[0] <= p.l[1] && p.l[1] <= p.l[2] &&
         p.k[0] <= p.l[0];
}

}  // namespace

std::int64_t ParamPair::max_abs() const {
  std::int64_t m = 0;
  for (auto v : k) m = std::max(m, v < 0 ? -v : v);
  for (auto v : l) m = std::max(m, v < 0 ? -v : v);
  return m;
}

std::string ParamPair::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ParamPair& p) {
  return os << "k=(" << p.k[0] << "," << p.k[1] << "," << p.k[2] << ") l=(" << p.l[0] << ","
            << p.l[1] << "," << p.l[2] << ")";
}

ParamPair make_params(const Triple& k, const Triple& l) {
  ParamPair p{k, l};
  if (p.sum() != l[0] + l[1] + l[2]) {
    throw Error(ErrorCode::kSumMismatch, p.to_string());
  }
  return p;
}

ParamPair params_from_row(std::int64_t sum, std::int64_t k0, std::int64_t k1, std::int64_t l0,
                          std::int64_t l1) {
  return ParamPair{{k0, k1, sum - k0 - k1}, {l0, l1, sum - l0 - l1}};
}

ParamPair shift_sum(const ParamPair& p, std::int64_t lo) {
  const std::int64_t n = floor_div(lo + 2 - p.sum(), 3);
  ParamPair out = p;
  for (auto& v : out.k) v += n;
  for (auto& v : out.l) v += n;
  return out;
}

DifferenceMatrix difference_matrix(const ParamPair& p) {
  DifferenceMatrix m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.a[i][j] = p.k[i] - p.l[j];
  }
  return m;
}

bool is_admissible(const ParamPair& p, const CoprimalityTable& t) {
  const DifferenceMatrix a = difference_matrix(p);
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x != y && !t.gcd_is_one(a(0, x), a(1, y))) return false;
    }
  }
  return true;
}

bool is_free(const ParamPair& p) {
  Permutation sigma{0, 1, 2};
  do {
    const Triple ls = permute(p.l, sigma);
    std::int64_t g = 0;
    for (int i = 0; i < 3; ++i) g = std::gcd(g, p.k[i] - ls[i]);
    if (g != 1) return false;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return true;
}

std::string to_string(const ConditionCWitness& w) {
  return std::string(w.kind == LineKind::kColumn ? "column " : "row ") + std::to_string(w.index);
}

std::vector<ConditionCWitness> condition_c(const ParamPair& p, const CoprimalityTable& t) {
  const DifferenceMatrix a = difference_matrix(p);
  std::vector<ConditionCWitness> out;
  for (int j = 0; j < 3; ++j) {
    if (line_qualifies(a.column(j), t)) out.push_back({LineKind::kColumn, j});
  }
  for (int i = 0; i < 3; ++i) {
    if (line_qualifies(a.row(i), t)) out.push_back({LineKind::kRow, i});
  }
  return out;
}

bool is_eschenburg_kruggel(const ParamPair& p, const CoprimalityTable& t) {
  if (!is_admissible(p, t)) return false;
  const DifferenceMatrix a = difference_matrix(p);
  for (int j = 0; j < 3; ++j) {
    if (line_qualifies(a.column(j), t) || line_qualifies(a.row(j), t)) return true;
  }
  return false;
}

std::span<const SymmetryElement> SymmetryElement::all() { return group(); }

std::span<const SymmetryElement> SymmetryElement::orientation_preserving() {
  return std::span<const SymmetryElement>(group()).first(72);
}

OrientedPair apply_symmetry(const ParamPair& p, const SymmetryElement& g) {
  ParamPair out{permute(p.k, g.alpha), permute(p.l, g.beta)};
  if (g.swap) std::swap(out.k, out.l);
  if (g.negate) {
    for (auto& v : out.k) v = -v;
    for (auto& v : out.l) v = -v;
  }
  return {out, g.orientation()};
}

OrientedPair canonical_form(const ParamPair& p) {
  OrientedPair best;
  bool found = false;
  for (const auto& g : SymmetryElement::all()) {
    OrientedPair image = apply_symmetry(p, g);
    image.pair = shift_sum(image.pair);
    if (!meets_canonical_inequalities(image.pair)) continue;
    if (!found || image.pair < best.pair) {
      best = image;
      found = true;
    }
  }
  return best;
}

ParamPair orientation_preserving_key(const ParamPair& p) {
  const ParamPair base = shift_sum(p);
  ParamPair best = base;
  for (const auto& g : SymmetryElement::orientation_preserving()) {
    const ParamPair image = apply_symmetry(base, g).pair;
    if (image < best) best = image;
  }
  return best;
}

ParamPair normalize_for_witness(const ParamPair& p, const ConditionCWitness& w) {
  ParamPair out = p;
  if (w.kind == LineKind::kRow) std::swap(out.k, out.l);  // A -> -A^T, row j becomes column j
  std::swap(out.l[0], out.l[w.index]);
  return out;
}

ParamPair normalize_for_kruggel(const ParamPair& p, const CoprimalityTable& t) {
  const auto witnesses = condition_c(p, t);
  if (witnesses.empty()) throw Error(ErrorCode::kNoConditionC, p.to_string());
  return normalize_for_witness(p, witnesses.front());
}

}  // namespace ekspace
