#include "ekspace/record.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <tuple>

#include "ekspace/error.hpp"

namespace ekspace {

SpaceRecord make_record(const ParamPair& p) { return SpaceRecord{p, integer_invariants(p), std::nullopt}; }

KSValues compute_ks(const ParamPair& p, const KSOptions& opt, const CoprimalityTable& t) {
  const KSResult ks = ks_invariants(orientation_preserving_key(p), opt.precision, t);
  KSValues out{ks.s1,
               ks.s2,
               rationalize(ks.s1, opt.den_bound, opt.rational_bits),
               rationalize(ks.s2, opt.den_bound, opt.rational_bits),
               std::nullopt,
               opt.precision.mantissa_bits};
  if (!ks.s2_imag_residual.is_zero()) out.s2_imag_exp = ks.s2_imag_residual.exponent();
  return out;
}

std::vector<RecordFailure> attach_ks(std::vector<SpaceRecord>& records, const KSOptions& opt,
                                     const CoprimalityTable& t, int jobs) {
  std::map<ParamPair, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_key[orientation_preserving_key(records[i].pair)].push_back(i);
  }
  struct Job {
    const ParamPair* key;
    const std::vector<std::size_t>* members;
  };
  std::vector<Job> work;
  work.reserve(by_key.size());
  for (const auto& [key, members] : by_key) work.push_back({&key, &members});

  struct Outcome {
    std::optional<KSValues> values;
    std::string error;
  };
  auto evaluate = [&](std::size_t lo, std::size_t hi) {
    std::vector<Outcome> out;
    out.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        out.push_back({compute_ks(*work[i].key, opt, t), {}});
      } catch (const std::exception& e) {
        out.push_back({std::nullopt, e.what()});
      }
    }
    return out;
  };

  jobs = std::max(1, jobs);
  std::vector<Outcome> outcomes;
  outcomes.reserve(work.size());
  if (jobs == 1) {
    outcomes = evaluate(0, work.size());
  } else {
    const std::size_t chunk = (work.size() + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
    std::vector<std::future<std::vector<Outcome>>> futures;
    for (std::size_t lo = 0; lo < work.size(); lo += chunk) {
      futures.push_back(std::async(std::launch::async, evaluate, lo, std::min(work.size(), lo + chunk)));
    }
    for (auto& f : futures) {
      for (auto& o : f.get()) outcomes.push_back(std::move(o));
    }
  }

  std::vector<RecordFailure> failures;
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t idx : *work[i].members) {
      if (outcomes[i].values) {
        records[idx].ks = outcomes[i].values;
      } else {
        records[idx].ks.reset();
        failures.push_back({idx, records[idx].pair.to_string() + ": " + outcomes[i].error});
      }
    }
  }
  std::sort(failures.begin(), failures.end(),
            [](const RecordFailure& a, const RecordFailure& b) { return a.index < b.index; });
  return failures;
}

bool record_less(const SpaceRecord& a, const SpaceRecord& b) {
  auto key = [](const SpaceRecord& r) {
    return std::make_tuple(r.inv.abs_r, r.inv.s_mod, r.inv.p1_mod, r.pair.sum(), r.pair.k[0], r.pair.k[1],
                           r.pair.l[0], r.pair.l[1]);
  };
  return key(a) < key(b);
}

}  // namespace ekspace
