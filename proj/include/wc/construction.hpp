#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wc/convexity.hpp"
#include "wc/geometry.hpp"
#include "wc/weyl.hpp"

namespace wc {

enum class Method { geometric, exhaustive };
std::string to_string(Method m);

struct StageLogEntry {
  Angle angle;
  Word conjugator;         // simple reflections applied at this stage, in order
  std::vector<int> labels; // simple labels of the residual subsystem after the stage
};

struct RepresentativeResult {
  TwistedElement representative;
  Word word;
  Method method = Method::geometric;
  std::vector<StageLogEntry> stage_log;
  Word conjugator; // representative = s_{c_k} ... s_{c_1} x s_{c_1} ... s_{c_k}
  ConvexityReport report;
  std::string fallback_reason; // set when the geometric path was abandoned
};

// The geometric induction alone: rotate a regular point of the smallest
// angle into the dominant chamber, descend to its stabilizer, repeat until
// the residual subsystem is fixed pointwise. Returns nullopt when an exact
// check disagrees with the floating-point guidance.
std::optional<RepresentativeResult> geometric_representative(const TwistedElement& x, std::uint64_t seed = 1,
                                                             std::string* reason = nullptr);

// First convex y with Phi(y) = Phi^y in (length, word) order. Throws
// InconsistencyError if the class has none.
RepresentativeResult exhaustive_representative(const ConjugacyClass& cls);

// Geometric path from the class representative, falling back to the
// exhaustive scan when exact verification fails.
RepresentativeResult find_convex_representative(const ConjugacyClass& cls, std::uint64_t seed = 1);

struct GoodPositionSearch {
  std::optional<TwistedElement> element;
  std::optional<GoodPositionCertificate> certificate;
  bool budget_exhausted = false;
  std::size_t scanned = 0;
};

// Scans the class in (length, word) order. A full scan with no hit throws
// InconsistencyError; running out of budget is reported instead.
GoodPositionSearch find_good_position_conjugate(const ConjugacyClass& cls, const std::vector<Angle>& sequence,
                                                std::size_t budget = SIZE_MAX);

// A convex element of O_min reachable from the class representative by
// cyclic shifts. Throws InputError for a non-elliptic class and
// InconsistencyError if none exists.
TwistedElement elliptic_min_convex(const ConjugacyClass& cls);

// Class elements ordered by (length, reduced word).
std::vector<TwistedElement> ordered_elements(const ConjugacyClass& cls);

} // namespace wc
