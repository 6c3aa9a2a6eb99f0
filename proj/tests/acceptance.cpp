// Prints one line per acceptance criterion; exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "wc/manifest.hpp"

using namespace wc;

namespace {

constexpr double kManifestLimit = 60;
constexpr double kBatteryLimit = 600;
constexpr double kSectionLimit = 300;
constexpr std::size_t kRoundtrips = 500;
constexpr std::uint64_t kRoundtripSeed = 42;
constexpr std::size_t kRationalPoints = 20;
constexpr std::uint64_t kRationalSeed = 7;

GroupPtr group_of(const char* name) { return make_group(CartanType::parse(name)); }

std::vector<GroupPtr> twisted_groups(const char* name) {
  auto rs = std::make_shared<const RootSystem>(CartanType::parse(name));
  std::vector<GroupPtr> out;
  const auto autos = diagram_automorphisms(*rs);
  for (std::size_t k = 1; k < autos.size(); ++k) out.push_back(make_group(rs, autos[k]));
  return out;
}

std::string label(const GroupPtr& g) {
  std::string s = g->roots().cartan_type().name();
  if (!g->twist().is_identity()) s += "[" + format_word_csv(g->twist().simple_perm) + "]";
  return s;
}

// (group, twist power) pairs: untwisted types on W, twisted types on W delta.
std::vector<std::pair<GroupPtr, int>> battery_groups() {
  std::vector<std::pair<GroupPtr, int>> out;
  for (const char* t : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"}) out.emplace_back(group_of(t), 0);
  for (const char* t : {"A2", "A3", "A4", "D4"})
    for (auto& g : twisted_groups(t)) out.emplace_back(g, 1);
  return out;
}

struct Verdict {
  bool pass = false;
  std::string detail;
  double limit = 0; // seconds, 0 when untimed
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = v.limit <= 0 || secs < v.limit;
  const bool pass = v.pass && in_time;
  failures += !pass;
  std::ostringstream timing;
  timing.precision(3);
  timing << std::fixed << secs << " s";
  if (v.limit > 0) timing << ", limit " << v.limit << " s";
  std::printf("%s [%d] %s: %s (%s)\n", pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), timing.str().c_str());
  std::fflush(stdout);
}

std::vector<RepresentativeResult> convex_reps(const GroupPtr& g) {
  std::vector<RepresentativeResult> out;
  for (const auto& row : class_table(g, 0)) out.push_back(row.result);
  return out;
}

} // namespace

int main() {
  criterion(1, "worked-example manifest", [] {
    const auto checks = run_manifest();
    std::size_t ok = 0;
    std::string failed;
    for (const auto& c : checks) {
      ok += c.pass;
      if (!c.pass) failed += " " + c.id;
    }
    return Verdict{ok == checks.size(), std::to_string(ok) + "/" + std::to_string(checks.size()) + " entries" +
                                            (failed.empty() ? "" : ", failed:" + failed),
                   kManifestLimit};
  });

  criterion(2, "convex representative in every class", [] {
    std::size_t rows = 0, bad = 0, groups = 0;
    std::string failed;
    for (const auto& [g, k] : battery_groups()) {
      ++groups;
      for (const auto& row : class_table(g, k)) {
        ++rows;
        if (!row.verified()) {
          ++bad;
          failed += " " + label(g) + "#" + std::to_string(row.class_id);
        }
      }
    }
    return Verdict{bad == 0, std::to_string(rows) + " classes over " + std::to_string(groups) + " cosets, " +
                                 std::to_string(bad) + " failures" + failed,
                   kBatteryLimit};
  });

  criterion(3, "good position implies convex, length formula", [] {
    std::size_t certs = 0, bad = 0;
    for (const auto& [g, k] : battery_groups())
      for (const auto& r : good_position_scan(g, k)) {
        ++certs;
        bad += !r.consistent();
      }
    return Verdict{bad == 0 && certs > 0, std::to_string(certs) + " certificates, " + std::to_string(bad) + " inconsistent"};
  });

  criterion(4, "xi injective and sigma inverse at desk scale", [] {
    std::size_t sl3 = 0, sl3_ok = 0, reps = 0, reps_ok = 0, trials = 0;
    for (const auto& r : convex_reps(group_of("A2"))) {
      CrossSectionData d(r.representative, MatrixGroup::SL);
      const auto inj = exhaustive_injectivity(d, 2);
      ++sl3;
      sl3_ok += inj.injective && inj.roundtrip;
    }
    const PrimeField f(101);
    for (const char* t : {"A3", "A4"})
      for (const auto& r : convex_reps(group_of(t))) {
        CrossSectionData d(r.representative, MatrixGroup::SL);
        const auto s = roundtrip_trials(f, d, kRoundtrips, kRoundtripSeed);
        ++reps;
        trials += s.passed;
        reps_ok += s.passed == kRoundtrips;
      }
    return Verdict{sl3_ok == sl3 && reps_ok == reps,
                   "SL3/F2 exhaustive " + std::to_string(sl3_ok) + "/" + std::to_string(sl3) + " reps; SL4-SL5/F101 " +
                       std::to_string(reps_ok) + "/" + std::to_string(reps) + " reps at " + std::to_string(kRoundtrips) +
                       "/" + std::to_string(kRoundtrips) + " (" + std::to_string(trials) + " roundtrips)",
                   kSectionLimit};
  });

  criterion(5, "transversal slice: rank n^2 at rational points", [] {
    std::size_t reps = 0, points = 0, full = 0, sl_full = 0;
    for (int n = 3; n <= 5; ++n)
      for (const auto& r : convex_reps(group_of(("A" + std::to_string(n - 1)).c_str()))) {
        CrossSectionData d(r.representative, MatrixGroup::SL);
        const auto gl = transversality_trials(d, kRationalPoints, kRationalSeed);
        const auto sl = transversality_trials(d, kRationalPoints, kRationalSeed, true);
        ++reps;
        points += gl.trials;
        full += gl.full * (gl.expected == static_cast<std::size_t>(n * n));
        sl_full += sl.full;
      }
    return Verdict{full == points && sl_full == points && points == reps * kRationalPoints,
                   std::to_string(full) + "/" + std::to_string(points) + " points at rank n^2 over " + std::to_string(reps) +
                       " reps (sl_n: " + std::to_string(sl_full) + " at n^2-1)"};
  });

  criterion(6, "twisted Coxeter elements under the w0 condition", [] {
    std::vector<GroupPtr> groups;
    for (const char* t : {"G2", "B2", "B3", "B4", "C3", "C4", "D4", "F4"}) groups.push_back(group_of(t));
    for (const char* t : {"A2", "A3", "A4", "D4"})
      for (auto& g : twisted_groups(t)) groups.push_back(g);
    for (auto& g : twisted_groups("E6")) groups.push_back(g);
    std::size_t elements = 0, bad = 0;
    std::string failed;
    for (const auto& g : groups) {
      const auto rep = verify_conjecture(g);
      bool ok = rep.status == "pass" && rep.in_scope == static_cast<int>(rep.elements.size());
      for (const auto& e : rep.elements) {
        ++elements;
        const bool good = e.convex && e.w0_condition && e.levels_match && e.chain_is_reflection_ordering && e.chain_matches_w0_word;
        bad += !good;
        ok = ok && good;
      }
      if (!ok) failed += " " + label(g);
    }
    const auto a4 = verify_conjecture(group_of("A4"));
    std::printf("INFO [6] A4 outside the w0 condition: status %s, %d of %zu elements non-convex\n", a4.status.c_str(),
                a4.counterexamples, a4.elements.size());
    return Verdict{bad == 0 && failed.empty(), std::to_string(elements) + " elements in " + std::to_string(groups.size()) +
                                                   " groups, " + std::to_string(bad) + " failures" + failed};
  });

  criterion(7, "oracle equivalences", [] {
    std::size_t cond = 0, cond_bad = 0;
    for (const char* t : {"A3", "B2"}) {
      auto g = group_of(t);
      for (const auto& w : enumerate_weyl_group(g->roots()))
        for (const auto& x : {TwistedElement(g, w, 0), TwistedElement(g, w, 0).inverse()}) {
          const auto n = levels(x);
          ++cond;
          cond_bad += condition2_reduced(x, n).empty() != condition2_full(x, n).empty();
        }
    }

    std::size_t sep = 0, sep_bad = 0;
    std::vector<std::pair<GroupPtr, int>> geo{{group_of("A3"), 0}, {group_of("B3"), 0}, {group_of("G2"), 0}, {group_of("B2"), 0}};
    for (auto& g : twisted_groups("A3")) geo.emplace_back(g, 1);
    geo.emplace_back(twisted_groups("D4").front(), 1);
    for (const auto& [g, k] : geo) {
      std::mt19937_64 rng(11);
      const int np = g->roots().positive_count();
      for (const auto& cls : conjugacy_classes(g, k))
        for (const auto& x : cls.elements) {
          const Stage s = full_stage(x);
          const auto n = levels(x);
          for (const auto& c : eigen_angles(s)) {
            if (c.angle.is_zero()) continue;
            const auto ps = psi(s, c.angle);
            std::vector<RootIndex> avoid;
            for (RootIndex r = 0; r < np; ++r)
              if (!std::binary_search(ps.begin(), ps.end(), r)) avoid.push_back(r);
            const auto e = dominant_regular_point(s, c.space, avoid, rng);
            if (!e) continue;
            for (RootIndex r : avoid) {
              ++sep;
              sep_bad += separation_witness(x, e->point, r) != n[r].value();
            }
          }
          for (const auto& seq : admissible_sequences(x)) {
            if (seq.empty()) continue;
            const auto cert = is_good_position(x, seq);
            if (!cert) continue;
            const auto ps = psi(s, seq.front());
            for (RootIndex r = 0; r < np; ++r) {
              if (std::binary_search(ps.begin(), ps.end(), r)) continue;
              ++sep;
              sep_bad += separation_witness(x, cert->regular_points.front(), r) != n[r].value();
            }
          }
        }
    }

    std::size_t mono = 0, mono_bad = 0;
    for (const char* t : {"A3", "B3", "G2"}) {
      auto g = group_of(t);
      const auto& rs = g->roots();
      for (const auto& w : enumerate_weyl_group(rs)) {
        const TwistedElement x(g, w, 0);
        const auto n = levels(x);
        for (RootIndex a = 0; a < rs.positive_count(); ++a)
          for (RootIndex b = 0; b < rs.positive_count(); ++b)
            if (auto sum = rs.sum(a, b)) {
              ++mono;
              mono_bad += !(std::min(n[a], n[b]) <= n[*sum]);
            }
      }
    }
    return Verdict{cond_bad == 0 && sep_bad == 0 && mono_bad == 0 && sep > 0,
                   "(2) vs (2') " + std::to_string(cond - cond_bad) + "/" + std::to_string(cond) + ", separation " +
                       std::to_string(sep - sep_bad) + "/" + std::to_string(sep) + ", min-level " +
                       std::to_string(mono - mono_bad) + "/" + std::to_string(mono)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
