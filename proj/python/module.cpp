#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ekspace/classify.hpp"
#include "ekspace/enumerate.hpp"
#include "ekspace/error.hpp"
#include "ekspace/invariants.hpp"
#include "ekspace/kreck_stolz.hpp"
#include "ekspace/rational.hpp"
#include "ekspace/record.hpp"

namespace py = pybind11;
using namespace ekspace;

namespace {

const CoprimalityTable& table() {
  static const CoprimalityTable t;
  return t;
}

py::tuple as_tuple(const ParamPair& p) {
  return py::make_tuple(py::make_tuple(p.k[0], p.k[1], p.k[2]), py::make_tuple(p.l[0], p.l[1], p.l[2]));
}

py::object wide(WideInt v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.to_string().c_str(), nullptr, 10));
}

py::tuple rational(const RationalInvariant& r) { return py::make_tuple(r.numerator, r.denominator); }

PrecisionConfig precision(int bits) {
  PrecisionConfig c;
  c.mantissa_bits = bits;
  c.compare_bits = std::min(c.compare_bits, bits - 16);
  c.validate();
  return c;
}

py::dict invariants_dict(const IntegerInvariants& inv) {
  py::dict d;
  d["r"] = wide(inv.r);
  d["s"] = wide(inv.s);
  d["p1"] = wide(inv.p1);
  d["abs_r"] = inv.abs_r;
  d["s_mod"] = inv.s_mod;
  d["p1_mod"] = inv.p1_mod;
  d["linking"] = py::make_tuple(inv.linking.numerator, inv.linking.denominator);
  return d;
}

py::dict ks_dict(const ParamPair& p, int bits) {
  KSOptions opt;
  opt.precision = precision(bits);
  const KSResult res = ks_invariants(p, opt.precision, table());
  const RationalInvariant s1 = rationalize(res.s1, opt.den_bound, opt.rational_bits);
  const RationalInvariant s2 = rationalize(res.s2, opt.den_bound, opt.rational_bits);
  const int digits = BigFloat::decimal_digits(bits);
  py::dict d;
  d["s1"] = rational(s1);
  d["s2"] = rational(s2);
  d["s1_exact"] = s1.exact;
  d["s2_exact"] = s2.exact;
  d["s1_decimal"] = res.s1.value().to_decimal(digits);
  d["s2_decimal"] = res.s2.value().to_decimal(digits);
  d["s2_imag"] = res.s2_imag_residual.to_double();
  d["q"] = wide(res.q);
  d["w"] = wide(res.w);
  d["normalized"] = as_tuple(res.normalized_pair);
  return d;
}

ParamPair pair_of(const Triple& k, const Triple& l) { return make_params(k, l); }

SearchBox box_of(std::int64_t h, std::optional<std::set<std::int64_t>> r, std::int64_t sum_lo,
                 std::int64_t sum_hi, bool canonical_only) {
  SearchBox b;
  b.half_width = h;
  b.sum_lo = sum_lo;
  b.sum_hi = sum_hi;
  b.r_filter = std::move(r);
  b.canonical_only = canonical_only;
  b.validate();
  return b;
}

}  // namespace

PYBIND11_MODULE(_ekspace, m) {
  m.doc() = "Eschenburg-Kruggel spaces: enumeration, invariants, classification";
  m.attr("__version__") = EKSPACE_VERSION;

  static py::exception<Error> error(m, "EkspaceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("difference_matrix", [](const Triple& k, const Triple& l) { return difference_matrix(pair_of(k, l)).a; },
        py::arg("k"), py::arg("l"));
  m.def("is_admissible", [](const Triple& k, const Triple& l) { return is_admissible(pair_of(k, l), table()); },
        py::arg("k"), py::arg("l"));
  m.def("is_free", [](const Triple& k, const Triple& l) { return is_free(pair_of(k, l)); }, py::arg("k"), py::arg("l"));
  m.def(
      "condition_c",
      [](const Triple& k, const Triple& l) {
        std::vector<std::string> out;
        for (const auto& w : condition_c(pair_of(k, l), table())) out.push_back(to_string(w));
        return out;
      },
      py::arg("k"), py::arg("l"));
  m.def(
      "is_eschenburg_kruggel", [](const Triple& k, const Triple& l) { return is_eschenburg_kruggel(pair_of(k, l), table()); },
      py::arg("k"), py::arg("l"));
  m.def(
      "canonical_form",
      [](const Triple& k, const Triple& l) {
        const OrientedPair c = canonical_form(pair_of(k, l));
        return py::make_tuple(as_tuple(c.pair), c.orientation);
      },
      py::arg("k"), py::arg("l"));
  m.def(
      "integer_invariants", [](const Triple& k, const Triple& l) { return invariants_dict(integer_invariants(pair_of(k, l))); },
      py::arg("k"), py::arg("l"));
  m.def(
      "ks_invariants", [](const Triple& k, const Triple& l, int bits) { return ks_dict(pair_of(k, l), bits); },
      py::arg("k"), py::arg("l"), py::arg("bits") = 130);
  m.def(
      "lens_invariants",
      [](std::int64_t p, const std::array<std::int64_t, 4>& w, int bits) {
        const PrecisionConfig c = precision(bits);
        const LensSpace l = make_lens(p, w);
        const RationalInvariant s1 = rationalize(lens_s1(l, c));
        const LensS2 s2 = lens_s2(l, c);
        return py::make_tuple(rational(s1), rational(rationalize(s2.value)));
      },
      py::arg("p"), py::arg("weights"), py::arg("bits") = 130);
  m.def(
      "rationalize",
      [](const std::string& decimal, std::int64_t den_bound, int bits) {
        const RationalInvariant r = rationalize(BigFloat::parse(decimal, bits), den_bound);
        return py::make_tuple(r.numerator, r.denominator, r.exact);
      },
      py::arg("decimal"), py::arg("den_bound") = kDefaultDenBound, py::arg("bits") = 130);
  m.def(
      "enumerate",
      [](std::int64_t h, std::optional<std::set<std::int64_t>> r, std::int64_t sum_lo, std::int64_t sum_hi,
         bool canonical_only, int jobs) {
        const SearchBox b = box_of(h, std::move(r), sum_lo, sum_hi, canonical_only);
        std::vector<ParamPair> pairs;
        {
          py::gil_scoped_release release;
          pairs = enumerate_all(b, table(), jobs);
        }
        py::list out;
        for (const auto& p : pairs) out.append(as_tuple(p));
        return out;
      },
      py::arg("half_width"), py::arg("r") = py::none(), py::arg("sum_lo") = 0, py::arg("sum_hi") = 2,
      py::arg("canonical_only") = false, py::arg("jobs") = 1);
  m.def(
      "growth_counts",
      [](const std::vector<std::int64_t>& ks, int jobs) {
        std::vector<GrowthRow> rows;
        {
          py::gil_scoped_release release;
          rows = growth_counts(ks, table(), jobs);
        }
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
        for (const auto& r : rows) out.emplace_back(r.k, r.n, r.delta);
        return out;
      },
      py::arg("half_widths"), py::arg("jobs") = 1);
  m.def(
      "classify",
      [](std::int64_t h, std::set<std::int64_t> r, bool strict_s, int jobs) {
        std::vector<HomeoClass> classes;
        {
          py::gil_scoped_release release;
          const SearchBox b = box_of(h, std::move(r), 0, 2, false);
          std::vector<SpaceRecord> recs;
          for (const auto& p : enumerate_all(b, table(), jobs)) recs.push_back(make_record(p));
          const auto failures = attach_ks(recs, KSOptions{}, table(), jobs);
          if (!failures.empty()) throw Error(ErrorCode::kPrecisionLoss, failures.front().message);
          ClassifyOptions opt;
          opt.strict_s = strict_s;
          classes = classify(std::move(recs), opt);
        }
        py::list out;
        for (const auto& c : classes) {
          py::dict d;
          d["abs_r"] = c.key.abs_r;
          d["s"] = wide(c.key.s_key);
          d["p1"] = wide(c.key.p1_key);
          d["s2"] = rational(c.key.s2);
          d["members"] = c.members.size();
          py::list s1;
          for (const auto& dc : c.diffeo_classes) s1.append(rational(dc.s1));
          d["s1"] = s1;
          out.append(d);
        }
        return out;
      },
      py::arg("half_width"), py::arg("r"), py::arg("strict_s") = false, py::arg("jobs") = 1);
}
