#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "wc/batch.hpp"
#include "wc/coxeter.hpp"

namespace wc {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Words are 1-indexed comma lists, roots are named in simple-root coefficients.
json element_json(const TwistedElement& x);
json convexity_json(const TwistedElement& x, const ConvexityReport& r);
json representative_json(const RepresentativeResult& r);
json class_row_json(const ClassRow& row);
json coxeter_json(const CoxeterReport& r);
json certificate_json(const RootSystem& rs, const GoodPositionCertificate& c);
json roundtrip_json(const std::string& field, const RoundtripStats& s);
json transversality_json(const TransversalityStats& s);
json injectivity_json(const InjectivityCheck& c);
json collision_json(const CollisionSearch& c);
json matrix_json(const Matrix<Fp>& m);

struct RunReport {
  json command; // {"name": ..., "args": {...}} in canonical form
  json result;
  std::optional<std::uint64_t> seed;
  int exit_code = 0;
  double wall_time = 0;

  json to_json() const;
  static RunReport from_json(const json& j);
};

// Canonical text of a command: schema version plus the sorted-key dump.
std::string cache_key(const json& command);

// One file per command under a directory; writes go through a temporary
// file and a rename.
class ResultCache {
public:
  explicit ResultCache(std::filesystem::path dir);
  // Reads WC_CACHE_DIR; nullopt when unset or empty.
  static std::optional<ResultCache> from_env();

  std::optional<RunReport> load(const json& command) const;
  void store(const RunReport& report) const;
  std::filesystem::path path_for(const json& command) const;

private:
  std::filesystem::path dir_;
};

} // namespace wc
