#include "wc/batch.hpp"

#include <exception>
#include <optional>

namespace wc {

namespace {

// out[i] = fn(i), possibly in parallel; the first exception by index is rethrown.
template <class T, class Fn> std::vector<T> indexed_map(std::size_t count, Execution exec, Fn fn) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  const bool par = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      slots[i].emplace(fn(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

std::vector<TwistedElement> coset_elements(const GroupPtr& group, int twist_power, std::uint64_t budget) {
  std::vector<TwistedElement> out;
  for (const auto& cls : conjugacy_classes(group, twist_power, budget)) {
    auto els = ordered_elements(cls);
    out.insert(out.end(), els.begin(), els.end());
  }
  return out;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

bool ClassRow::verified() const {
  const ConvexityReport fresh = analyze(result.representative);
  return fresh.convex && fresh.phi_equals_fixed && result.report.convex && result.report.phi_equals_fixed;
}

std::vector<ClassRow> class_table(const GroupPtr& group, int twist_power, Execution exec, std::uint64_t budget,
                                  std::uint64_t seed) {
  const auto classes = conjugacy_classes(group, twist_power, budget);
  return indexed_map<ClassRow>(classes.size(), exec, [&](std::size_t i) {
    const auto& cls = classes[i];
    return ClassRow{static_cast<int>(i), cls.size(), cls.min_length, cls.representative_word,
                    find_convex_representative(cls, seed)};
  });
}

template <class F>
RoundtripStats roundtrip_trials(const F& field, const CrossSectionData& data, std::size_t trials, std::uint64_t seed,
                                Execution exec) {
  enum Outcome { pass, fail, refused };
  const auto outcomes = indexed_map<int>(trials, exec, [&](std::size_t t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const auto p = random_cell_point(field, data, rng);
    const auto g = xi(field, data, p);
    try {
      const auto q = sigma(field, data, g);
      return q == p && xi(field, data, q) == g ? pass : fail;
    } catch (const NotInCell&) {
      return refused;
    }
  });
  RoundtripStats s;
  s.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    if (outcomes[t] == pass) {
      ++s.passed;
      continue;
    }
    s.not_in_cell += outcomes[t] == refused;
    s.failed.push_back(t);
  }
  return s;
}

template RoundtripStats roundtrip_trials(const PrimeField&, const CrossSectionData&, std::size_t, std::uint64_t, Execution);
template RoundtripStats roundtrip_trials(const RationalField&, const CrossSectionData&, std::size_t, std::uint64_t,
                                         Execution);

TransversalityStats transversality_trials(const CrossSectionData& data, std::size_t trials, std::uint64_t seed,
                                          bool traceless, Execution exec) {
  const RationalField q;
  const auto results = indexed_map<TransversalityResult>(trials, exec, [&](std::size_t t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const auto p = random_cell_point(q, data, rng);
    const auto z = multiply(q, multiply(q, lift(q, data), lx_matrix(q, p.ell)), p.u);
    return transversality_check(data, z, traceless);
  });
  TransversalityStats s;
  s.trials = trials;
  s.expected = results.empty() ? 0 : results.front().expected;
  for (const auto& r : results) {
    s.ranks.push_back(r.rank);
    s.full += r.full();
  }
  return s;
}

std::vector<GoodPositionRecord> good_position_scan(const GroupPtr& group, int twist_power, Execution exec,
                                                   std::uint64_t budget) {
  const auto elements = coset_elements(group, twist_power, budget);
  const auto per_element = indexed_map<std::vector<GoodPositionRecord>>(elements.size(), exec, [&](std::size_t i) {
    const TwistedElement& x = elements[i];
    std::vector<GoodPositionRecord> found;
    std::optional<ConvexityReport> report;
    for (const auto& seq : admissible_sequences(x)) {
      const auto cert = is_good_position(x, seq);
      if (!cert) continue;
      if (!report) report = analyze(x);
      found.push_back({reduced_word(x), seq, x.length(), good_position_length(*cert), report->convex,
                       report->phi_equals_fixed});
    }
    return found;
  });
  std::vector<GoodPositionRecord> out;
  for (const auto& v : per_element) out.insert(out.end(), v.begin(), v.end());
  return out;
}

} // namespace wc
