#include "wc/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace wc {

namespace {

json level_json(const Level& l) { return l.is_infinite() ? json("inf") : json(l.value()); }

json names(const RootSystem& rs, const std::vector<RootIndex>& roots) {
  json out = json::array();
  for (RootIndex r : roots) out.push_back(root_name(rs, r));
  return out;
}

json labels_json(const std::vector<int>& labels) {
  json out = json::array();
  for (int l : labels) out.push_back(l + 1);
  return out;
}

json violations_json(const RootSystem& rs, const QuasiConvexity& q) {
  json v = json::array();
  for (const auto& x : q.violations)
    v.push_back({{"alpha", root_name(rs, x.alpha)},
                 {"beta", root_name(rs, x.beta)},
                 {"sum", root_name(rs, x.sum)},
                 {"n_alpha", level_json(x.n_alpha)},
                 {"n_beta", level_json(x.n_beta)},
                 {"n_sum", level_json(x.n_sum)}});
  return {{"condition1", q.condition1_ok}, {"condition2", q.condition2_ok}, {"violations", v}};
}

json angles_json(const std::vector<Angle>& seq) {
  json out = json::array();
  for (const auto& a : seq) out.push_back(a.to_string());
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(std::round(v[i] * 1e9) / 1e9);
  return out;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace

json element_json(const TwistedElement& x) {
  return {{"type", x.roots().cartan_type().name()},
          {"twist", labels_json(x.group().twist().simple_perm)},
          {"twist_power", x.twist_power()},
          {"word", format_word_csv(reduced_word(x))},
          {"length", x.length()}};
}

json convexity_json(const TwistedElement& x, const ConvexityReport& r) {
  const RootSystem& rs = x.roots();
  const auto inv = levels(x.inverse());
  json lv = json::array();
  for (RootIndex g = 0; g < rs.positive_count(); ++g)
    lv.push_back({{"root", root_name(rs, g)}, {"n", level_json(r.n_table[g])}, {"n_inverse", level_json(inv[g])}});
  json filtration = json::array();
  for (std::size_t i = 1; i < r.positive_levels.size(); ++i) filtration.push_back(names(rs, r.positive_levels[i]));
  return {{"element", element_json(x)},
          {"phi_x", names(rs, r.phi_x)},
          {"parabolic_J", r.parabolic_J ? labels_json(*r.parabolic_J) : json(nullptr)},
          {"levels", lv},
          {"max_level", r.max_level},
          {"positive_levels", filtration},
          {"forward", violations_json(rs, r.forward)},
          {"inverse", violations_json(rs, r.inverse)},
          {"quasi_convex", r.quasi_convex()},
          {"inverse_quasi_convex", r.inverse_quasi_convex()},
          {"convex", r.convex},
          {"phi_equals_fixed", r.phi_equals_fixed},
          {"elliptic", is_elliptic(x)}};
}

json representative_json(const RepresentativeResult& r) {
  json log = json::array();
  for (const auto& s : r.stage_log)
    log.push_back({{"angle", s.angle.to_string()}, {"conjugator", format_word_csv(s.conjugator)}, {"labels", labels_json(s.labels)}});
  json out{{"word", format_word_csv(r.word)},
           {"method", to_string(r.method)},
           {"conjugator", format_word_csv(r.conjugator)},
           {"stage_log", log},
           {"convex", r.report.convex},
           {"phi_equals_fixed", r.report.phi_equals_fixed}};
  if (!r.fallback_reason.empty()) out["fallback_reason"] = r.fallback_reason;
  return out;
}

json class_row_json(const ClassRow& row) {
  return {{"class_id", row.class_id},
          {"size", row.size},
          {"min_length", row.min_length},
          {"class_word", format_word_csv(row.class_word)},
          {"representative", representative_json(row.result)},
          {"verified", row.verified()}};
}

json coxeter_json(const CoxeterReport& r) {
  json els = json::array();
  for (const auto& e : r.elements)
    els.push_back({{"word", format_word_csv(e.word)},
                   {"length", e.length},
                   {"elliptic", e.elliptic},
                   {"phi_empty", e.phi_empty},
                   {"quasi_convex", e.quasi_convex},
                   {"inverse_quasi_convex", e.inverse_quasi_convex},
                   {"convex", e.convex},
                   {"w0_condition", e.w0_condition},
                   {"levels_match", e.w0_condition ? json(e.levels_match) : json(nullptr)},
                   {"chain_is_reflection_ordering", e.w0_condition ? json(e.chain_is_reflection_ordering) : json(nullptr)},
                   {"chain_matches_w0_word", e.w0_condition ? json(e.chain_matches_w0_word) : json(nullptr)}});
  const int n = static_cast<int>(r.elements.size());
  return {{"type", r.type},
          {"twist", labels_json(r.twist)},
          {"h", r.h},
          {"elements", els},
          {"status", r.status},
          {"scope", r.in_scope == n ? "w0-condition" : r.in_scope == 0 ? "outside w0-condition" : "mixed"},
          {"in_scope", r.in_scope},
          {"counterexamples", r.counterexamples}};
}

json certificate_json(const RootSystem& rs, const GoodPositionCertificate& c) {
  json pts = json::array(), chain = json::array(), stages = json::array();
  for (const auto& p : c.regular_points) pts.push_back(vector_json(p));
  for (const auto& p : c.parabolic_chain) chain.push_back(names(rs, p));
  for (const auto& l : c.stage_labels) stages.push_back(labels_json(l));
  return {{"sequence", angles_json(c.sequence)},
          {"regular_points", pts},
          {"stage_labels", stages},
          {"parabolic_chain", chain},
          {"h_values", c.h_values},
          {"exact", c.exact},
          {"length", good_position_length(c)}};
}

json roundtrip_json(const std::string& field, const RoundtripStats& s) {
  return {{"field", field}, {"trials", s.trials}, {"passed", s.passed}, {"not_in_cell", s.not_in_cell}, {"failed", s.failed}};
}

json transversality_json(const TransversalityStats& s) {
  return {{"trials", s.trials}, {"full", s.full}, {"expected_rank", s.expected}, {"ranks", s.ranks}};
}

json matrix_json(const Matrix<Fp>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).value());
    out.push_back(row);
  }
  return out;
}

namespace {

json cell_point_json(const CellPoint<Fp>& p) {
  json d = json::array();
  for (const auto& v : p.ell.diag) d.push_back(v.value());
  return {{"y", matrix_json(p.y)},
          {"ell_upper", matrix_json(p.ell.upper)},
          {"ell_diag", d},
          {"ell_lower", matrix_json(p.ell.lower)},
          {"u", matrix_json(p.u)}};
}

json witness_json(const std::optional<CollisionWitness>& w) {
  if (!w) return nullptr;
  return {{"prime", w->prime}, {"first", cell_point_json(w->first)}, {"second", cell_point_json(w->second)}, {"image", matrix_json(w->image)}};
}

} // namespace

json injectivity_json(const InjectivityCheck& c) {
  return {{"points", c.points}, {"injective", c.injective}, {"roundtrip", c.roundtrip}, {"witness", witness_json(c.witness)}};
}

json collision_json(const CollisionSearch& c) {
  return {{"primes_tried", c.primes_tried},
          {"points", c.points},
          {"exhaustive", c.exhaustive},
          {"collision", c.witness.has_value()},
          {"witness", witness_json(c.witness)}};
}

json RunReport::to_json() const {
  return {{"schema_version", kSchemaVersion},
          {"engine_version", WC_VERSION},
          {"command", command},
          {"seed", seed ? json(*seed) : json(nullptr)},
          {"result", result},
          {"exit_code", exit_code},
          {"wall_time_s", wall_time}};
}

RunReport RunReport::from_json(const json& j) {
  RunReport r;
  r.command = j.at("command");
  r.result = j.at("result");
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  r.exit_code = j.at("exit_code").get<int>();
  r.wall_time = j.at("wall_time_s").get<double>();
  return r;
}

std::string cache_key(const json& command) { return "v" + std::to_string(kSchemaVersion) + ":" + command.dump(); }

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<ResultCache> ResultCache::from_env() {
  const char* dir = std::getenv("WC_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return ResultCache(dir);
}

std::filesystem::path ResultCache::path_for(const json& command) const {
  // FNV-1a, stable across builds.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : cache_key(command)) h = (h ^ c) * 0x100000001b3ull;
  return dir_ / (hex64(h) + ".json");
}

std::optional<RunReport> ResultCache::load(const json& command) const {
  std::ifstream in(path_for(command));
  if (!in) return std::nullopt;
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("schema_version", -1) != kSchemaVersion) return std::nullopt;
  try {
    RunReport r = RunReport::from_json(j);
    if (cache_key(r.command) != cache_key(command)) return std::nullopt;
    return r;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const RunReport& report) const {
  std::filesystem::create_directories(dir_);
  const auto target = path_for(report.command);
  std::random_device rd;
  const auto tmp = target.string() + ".tmp." + hex64((std::uint64_t{rd()} << 32) ^ rd());
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << report.to_json().dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, target);
}

} // namespace wc
