#include "wc/construction.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wc/errors.hpp"

namespace wc {

std::string to_string(Method m) { return m == Method::geometric ? "geometric" : "exhaustive"; }

namespace {

constexpr int kDominanceSteps = 100000;

double stage_pairing_simple(const Stage& s, const Eigen::VectorXd& e, std::size_t a) {
  double acc = 0;
  for (std::size_t b = 0; b < s.labels.size(); ++b) acc += e[static_cast<Eigen::Index>(b)] * static_cast<double>(s.gram[b][a]);
  return acc;
}

bool valid_representative(const ConvexityReport& r) { return r.convex && r.phi_equals_fixed; }

} // namespace

std::optional<RepresentativeResult> geometric_representative(const TwistedElement& x, std::uint64_t seed,
                                                             std::string* reason) {
  auto fail = [&](std::string why) -> std::optional<RepresentativeResult> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };
  const RootSystem& rs = x.roots();
  std::mt19937_64 rng(seed);
  TwistedElement y = x;
  RepresentativeResult out{x, {}, Method::geometric, {}, {}, {}, {}};
  std::vector<int> labels(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) labels[i] = i;

  for (;;) {
    const Stage stage = restrict_stage(y, labels);
    const auto comps = eigen_angles(stage);
    const AngleComponent* c = nullptr;
    for (const auto& comp : comps)
      if (!comp.angle.is_zero()) {
        c = &comp;
        break;
      }
    if (!c) break;

    const auto target = psi(stage, c->angle);
    const RegularPoint rp = regular_point(stage, c->space, rng);
    if (rp.psi != target) return fail("regular point subspace disagrees with the exact hyperplane set");
    Eigen::VectorXd e = rp.point;
    const double sc = std::max(1.0, e.cwiseAbs().maxCoeff());

    StageLogEntry log{c->angle, {}, {}};
    for (int step = 0;; ++step) {
      if (step > kDominanceSteps) return fail("dominance loop did not terminate");
      std::size_t hit = labels.size();
      for (std::size_t a = 0; a < labels.size(); ++a)
        if (stage_pairing_simple(stage, e, a) < -kGeometryTolerance * sc) {
          hit = a;
          break;
        }
      if (hit == labels.size()) break;
      const double p = stage_pairing_simple(stage, e, hit);
      e[static_cast<Eigen::Index>(hit)] -= 2.0 * p / static_cast<double>(stage.gram[hit][hit]);
      y = y.conjugate_by_simple(labels[hit]);
      log.conjugator.push_back(labels[hit]);
    }

    std::vector<int> next;
    const Stage moved = restrict_stage(y, labels);
    for (std::size_t a = 0; a < labels.size(); ++a)
      if (std::abs(stage_pairing_simple(moved, e, a)) <= kGeometryTolerance * sc) next.push_back(labels[a]);
    if (psi(moved, c->angle) != parabolic_subsystem(rs, next))
      return fail("stabilizer of the dominant point is not the expected parabolic subsystem");
    if (next.size() >= labels.size()) return fail("stage did not shrink the subsystem");

    out.conjugator.insert(out.conjugator.end(), log.conjugator.begin(), log.conjugator.end());
    log.labels = next;
    out.stage_log.push_back(std::move(log));
    labels = std::move(next);
  }

  out.representative = y;
  out.word = reduced_word(y);
  out.report = analyze(y);
  if (!valid_representative(out.report)) return fail("geometric output failed exact verification");
  return out;
}

std::vector<TwistedElement> ordered_elements(const ConjugacyClass& cls) {
  std::vector<std::pair<Word, std::size_t>> keys;
  keys.reserve(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) keys.emplace_back(reduced_word(cls.elements[i]), i);
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<TwistedElement> out;
  out.reserve(cls.size());
  for (const auto& k : keys) out.push_back(cls.elements[k.second]);
  return out;
}

RepresentativeResult exhaustive_representative(const ConjugacyClass& cls) {
  for (const auto& y : ordered_elements(cls)) {
    auto rep = analyze(y);
    if (valid_representative(rep)) return RepresentativeResult{y, reduced_word(y), Method::exhaustive, {}, {}, rep, {}};
  }
  throw InconsistencyError("convexity guarantee violated: no convex element with Phi(y) = Phi^y in the class of " +
                           format_word(cls.representative_word));
}

RepresentativeResult find_convex_representative(const ConjugacyClass& cls, std::uint64_t seed) {
  std::string reason;
  auto geo = geometric_representative(cls.representative, seed, &reason);
  if (geo) {
    if (std::find(cls.elements.begin(), cls.elements.end(), geo->representative) == cls.elements.end())
      throw InconsistencyError("geometric representative left its conjugacy class");
    return std::move(*geo);
  }
  RepresentativeResult r = exhaustive_representative(cls);
  r.fallback_reason = reason;
  return r;
}

GoodPositionSearch find_good_position_conjugate(const ConjugacyClass& cls, const std::vector<Angle>& sequence,
                                                std::size_t budget) {
  if (!is_admissible(cls.representative, sequence)) throw InputError("sequence is not admissible for the class");
  GoodPositionSearch out;
  for (const auto& y : ordered_elements(cls)) {
    if (out.scanned >= budget) {
      out.budget_exhausted = true;
      return out;
    }
    ++out.scanned;
    if (auto cert = is_good_position(y, sequence)) {
      out.element = y;
      out.certificate = std::move(cert);
      return out;
    }
  }
  throw InconsistencyError("no element of the class is at good position for an admissible sequence");
}

TwistedElement elliptic_min_convex(const ConjugacyClass& cls) {
  if (!is_elliptic(cls.representative)) throw InputError("class is not elliptic");
  auto reach = cyclic_shift_closure(cls.representative);
  std::vector<std::pair<Word, std::size_t>> keys;
  for (std::size_t i = 0; i < reach.size(); ++i)
    if (reach[i].length() == cls.min_length) keys.emplace_back(reduced_word(reach[i]), i);
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys)
    if (is_convex(reach[k.second])) return reach[k.second];
  throw InconsistencyError("no convex element of minimal length reachable by cyclic shifts in an elliptic class");
}

} // namespace wc
