#include "cli.hpp"

#include <chrono>
#include <functional>

#include "CLI11.hpp"

#include "wc/manifest.hpp"

namespace wc::cli {

namespace {

struct Options {
  std::string type, delta, word, perm, sequence, group = "GL", field = "101", primes = "2,3";
  int twist = -1, n = 0;
  bool strict = false, allow_large = false, no_cache = false, serial = false;
  std::size_t trials = 500, transversality = 0;
  std::uint64_t seed = 1, collisions = 0;
  std::uint32_t exhaustive = 0;
};

struct Outcome {
  json result;
  int exit_code = kExitTrue;
};

struct Command {
  json descriptor;
  std::optional<std::uint64_t> seed;
  std::function<Outcome()> run;
};

Execution exec_of(const Options& o) { return o.serial ? Execution::serial : Execution::parallel; }

GroupPtr build_group(const Options& o) {
  auto rs = std::make_shared<const RootSystem>(CartanType::parse(o.type));
  return make_group(rs, o.delta.empty() ? identity_automorphism(*rs) : parse_automorphism(*rs, o.delta));
}

int twist_power(const Options& o, const GroupPtr& g) {
  if (o.twist >= 0) return o.twist % g->twist_order();
  return g->twist().is_identity() ? 0 : 1;
}

json group_args(const Options& o, const GroupPtr& g) {
  return {{"type", g->roots().cartan_type().name()},
          {"delta", format_word_csv(g->twist().simple_perm)},
          {"twist", twist_power(o, g)}};
}

bool large_family(const GroupPtr& g) { return g->roots().cartan_type().family == 'E'; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Angle> parse_sequence(const std::string& s) {
  std::vector<Angle> out;
  for (const auto& a : split(s, ',')) out.push_back(Angle::parse(a));
  return out;
}

std::string sequence_text(const std::vector<Angle>& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + seq[i].to_string();
  return s;
}

Command convex_check(const Options& o) {
  auto g = build_group(o);
  const Word w = parse_word(o.word);
  const int k = twist_power(o, g);
  json args = group_args(o, g);
  args["word"] = format_word_csv(w);
  args["strict"] = o.strict;
  return {{{"name", "convex-check"}, {"args", args}}, std::nullopt, [g, w, k, strict = o.strict] {
            const auto x = from_word(g, w, k);
            const auto r = analyze(x, {strict});
            return Outcome{convexity_json(x, r), r.convex ? kExitTrue : kExitFalse};
          }};
}

Command reps(const Options& o) {
  auto g = build_group(o);
  json args = group_args(o, g);
  args["allow_large"] = o.allow_large;
  const int k = twist_power(o, g);
  const std::uint64_t budget = o.allow_large ? UINT64_MAX : kDefaultEnumerationBudget;
  return {{{"name", "reps"}, {"args", args}}, std::nullopt, [g, k, budget, exec = exec_of(o)] {
            const auto rows = class_table(g, k, exec, budget);
            json table = json::array();
            bool all = true;
            for (const auto& r : rows) {
              table.push_back(class_row_json(r));
              all = all && r.verified();
            }
            return Outcome{{{"classes", rows.size()}, {"all_verified", all}, {"rows", table}}, all ? kExitTrue : kExitFalse};
          }};
}

Command conjecture(const Options& o) {
  auto g = build_group(o);
  if (large_family(g) && !o.allow_large)
    throw BudgetExceeded("type " + g->roots().cartan_type().name() + " needs --allow-large");
  json args = group_args(o, g);
  args.erase("twist");
  return {{{"name", "conjecture"}, {"args", args}}, std::nullopt, [g] {
            const auto r = verify_conjecture(g);
            return Outcome{coxeter_json(r), r.status == "fail" ? kExitFalse : kExitTrue};
          }};
}

Command cross_section(const Options& o) {
  if (!o.type.empty() && o.type != "A" && o.type != "a") throw InputError("cross sections are implemented for type A only");
  if (o.n < 2) throw InputError("--n must be at least 2");
  if (o.word.empty() == o.perm.empty()) throw InputError("give exactly one of --word and --perm");
  const MatrixGroup grp = o.group == "SL" || o.group == "sl" ? MatrixGroup::SL : MatrixGroup::GL;
  if (grp == MatrixGroup::GL && o.group != "GL" && o.group != "gl") throw InputError("--group must be GL or SL");
  auto g = make_group(CartanType{'A', o.n - 1});
  const TwistedElement x =
      o.perm.empty() ? from_word(g, parse_word(o.word)) : element_from_permutation(g, parse_cycles(o.perm, o.n));
  const bool rational = o.field == "Q" || o.field == "q";
  std::uint32_t p = 0;
  if (!rational) {
    try {
      p = static_cast<std::uint32_t>(std::stoul(o.field));
    } catch (const std::exception&) {
      throw InputError("--field must be a prime or Q");
    }
    (void)PrimeField(p);
  }
  std::vector<std::uint32_t> primes;
  for (const auto& s : split(o.primes, ',')) {
    try {
      primes.push_back(static_cast<std::uint32_t>(std::stoul(s)));
    } catch (const std::exception&) {
      throw InputError("bad prime list '" + o.primes + "'");
    }
  }
  json args{{"n", o.n},
            {"group", to_string(grp)},
            {"word", format_word_csv(reduced_word(x))},
            {"field", rational ? "Q" : std::to_string(p)},
            {"trials", o.trials},
            {"transversality", o.transversality},
            {"exhaustive", o.exhaustive},
            {"collisions", o.collisions},
            {"primes", primes}};
  return {{{"name", "cross-section"}, {"args", args}}, o.seed, [=, exec = exec_of(o)] {
            CrossSectionData d(x, grp);
            json lv = json::array();
            for (int i = 1; i <= d.max_level(); ++i) lv.push_back(d.level_positions(i).size());
            json perm = json::array();
            for (int v : d.perm()) perm.push_back(v + 1);
            json res{{"element", element_json(x)},
                     {"perm", perm},
                     {"group", to_string(grp)},
                     {"quasi_convex", d.quasi_convex()},
                     {"parabolic_J", d.parabolic_J()},
                     {"max_level", d.max_level()},
                     {"level_sizes", lv},
                     {"radical_dim", d.radical().size()},
                     {"cell_dimension", d.cell_dimension()}};
            for (auto& j : res["parabolic_J"]) j = j.get<int>() + 1;
            bool ok = d.quasi_convex();
            if (d.quasi_convex() && o.trials) {
              const auto s = rational ? roundtrip_trials(RationalField{}, d, o.trials, o.seed, exec)
                                      : roundtrip_trials(PrimeField(p), d, o.trials, o.seed, exec);
              res["roundtrip"] = roundtrip_json(rational ? "Q" : "F" + std::to_string(p), s);
              ok = ok && s.all_passed();
            } else {
              res["roundtrip"] = nullptr;
            }
            if (o.transversality) {
              const auto t = transversality_trials(d, o.transversality, o.seed, false, exec);
              res["transversality"] = transversality_json(t);
              ok = ok && t.all_full();
            }
            if (o.exhaustive) {
              const auto inj = exhaustive_injectivity(d, o.exhaustive);
              res["injectivity"] = injectivity_json(inj);
              ok = ok && inj.injective && (!d.quasi_convex() || inj.roundtrip);
            }
            const std::uint64_t budget = o.collisions ? o.collisions : d.quasi_convex() ? 0 : std::uint64_t{1} << 24;
            if (budget) {
              const auto c = collision_search(d, budget, o.seed, primes, exec);
              res["collision_search"] = collision_json(c);
              ok = ok && !c.witness;
            }
            return Outcome{res, ok ? kExitTrue : kExitFalse};
          }};
}

Command good_position(const Options& o) {
  auto g = build_group(o);
  const Word w = parse_word(o.word);
  const int k = twist_power(o, g);
  json args = group_args(o, g);
  args["word"] = format_word_csv(w);
  std::optional<std::vector<Angle>> seq;
  if (!o.sequence.empty()) seq = parse_sequence(o.sequence);
  args["sequence"] = seq ? json(sequence_text(*seq)) : json(nullptr);
  return {{{"name", "good-position"}, {"args", args}}, std::nullopt, [g, w, k, seq] {
            const auto x = from_word(g, w, k);
            const auto all = admissible_sequences(x);
            json admissible = json::array();
            for (const auto& s : all) admissible.push_back(sequence_text(s));
            json checks = json::array();
            bool any = false;
            for (const auto& s : seq ? std::vector<std::vector<Angle>>{*seq} : all) {
              if (!is_admissible(x, s)) throw InputError("sequence " + sequence_text(s) + " is not admissible");
              const auto cert = is_good_position(x, s);
              const bool direct = is_good_position_direct(x, s);
              if (cert.has_value() != direct) throw InconsistencyError("good-position recursion and direct check disagree");
              any = any || cert.has_value();
              checks.push_back({{"sequence", sequence_text(s)},
                                {"good_position", cert.has_value()},
                                {"certificate", cert ? certificate_json(x.roots(), *cert) : json(nullptr)}});
            }
            const auto r = analyze(x);
            if (any && !(r.convex && r.phi_equals_fixed))
              throw InconsistencyError("good-position element failed the convexity check");
            return Outcome{{{"element", element_json(x)},
                            {"admissible_sequences", admissible},
                            {"checks", checks},
                            {"convex", r.convex},
                            {"phi_equals_fixed", r.phi_equals_fixed}},
                           any ? kExitTrue : kExitFalse};
          }};
}

Command reproduce() {
  return {{{"name", "reproduce-examples"}, {"args", json::object()}}, std::nullopt, [] {
            json checks = json::array();
            std::size_t passed = 0;
            for (const auto& c : run_manifest()) {
              checks.push_back({{"id", c.id}, {"claim", c.claim}, {"pass", c.pass}, {"observed", c.observed}});
              passed += c.pass;
            }
            const bool all = passed == checks.size();
            return Outcome{{{"checks", checks}, {"passed", passed}, {"total", checks.size()}}, all ? kExitTrue : kExitFalse};
          }};
}

void diagnostic(std::ostream& err, const char* kind, const std::string& what) {
  err << json{{"error", kind}, {"message", what}}.dump() << '\n';
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convexity of twisted Weyl group elements and Steinberg cross-sections", "weylconvex"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--no-cache", o.no_cache, "Ignore WC_CACHE_DIR");
  app.add_flag("--serial", o.serial, "Run the serial reference kernels");

  auto add_group = [&](CLI::App* s, bool word) {
    s->add_option("--type", o.type, "Cartan type, e.g. A4, C3, D4")->required();
    s->add_option("--delta", o.delta, "Diagram automorphism as a 1-indexed image list, e.g. 3,2,1");
    s->add_option("--twist", o.twist, "Power k of delta in x = w delta^k (default 1 when delta is given)");
    if (word) s->add_option("--word", o.word, "1-indexed comma list, e.g. 2,3,4,1,2,3")->required();
  };
  auto* cc = app.add_subcommand("convex-check", "Convexity report for one element");
  add_group(cc, true);
  cc->add_flag("--strict", o.strict, "Also test triples whose sum lies in Phi(x)");
  auto* rp = app.add_subcommand("reps", "Convex representative of every conjugacy class");
  add_group(rp, false);
  rp->add_flag("--allow-large", o.allow_large, "Lift the enumeration budget");
  auto* cj = app.add_subcommand("conjecture", "Convexity of every twisted Coxeter element");
  cj->add_option("--type", o.type, "Cartan type")->required();
  cj->add_option("--delta", o.delta, "Diagram automorphism");
  cj->add_flag("--allow-large", o.allow_large, "Allow exceptional types E6-E8");
  auto* cs = app.add_subcommand("cross-section", "Xi/Sigma checks in GL_n or SL_n");
  cs->add_option("--type", o.type, "Must be A")->default_val("A");
  cs->add_option("--n", o.n, "Matrix size")->required();
  cs->add_option("--word", o.word, "Element as a 1-indexed word");
  cs->add_option("--perm", o.perm, "Element as 1-based cycles, e.g. (1,6,4,5,2,3)");
  cs->add_option("--group", o.group, "GL or SL")->default_val("GL");
  cs->add_option("--field", o.field, "Prime or Q")->default_val("101");
  cs->add_option("--trials", o.trials, "Roundtrip trials")->default_val(500);
  cs->add_option("--seed", o.seed, "Run seed")->default_val(1);
  cs->add_option("--transversality", o.transversality, "Rational transversality trials")->default_val(0);
  cs->add_option("--exhaustive", o.exhaustive, "Enumerate the whole domain over this prime");
  cs->add_option("--collisions", o.collisions, "Collision-search budget (automatic when x is not quasi-convex)");
  cs->add_option("--primes", o.primes, "Primes for the collision search")->default_val("2,3");
  auto* gp = app.add_subcommand("good-position", "Good-position certificates");
  add_group(gp, true);
  gp->add_option("--sequence", o.sequence, "Angle sequence, e.g. pi/2,pi (default: every admissible one)");
  auto* rep = app.add_subcommand("reproduce-examples", "Run the manifest of worked examples");
  rep->alias("reproduce-paper");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitUsage;
  }

  try {
    Command cmd = cc->parsed()   ? convex_check(o)
                  : rp->parsed() ? reps(o)
                  : cj->parsed() ? conjecture(o)
                  : cs->parsed() ? cross_section(o)
                  : gp->parsed() ? good_position(o)
                                 : (void(rep), reproduce());
    const auto cache = o.no_cache ? std::nullopt : ResultCache::from_env();
    if (cache)
      if (auto hit = cache->load(cmd.descriptor)) {
        out << hit->to_json().dump(2) << '\n';
        return hit->exit_code;
      }
    const auto start = std::chrono::steady_clock::now();
    Outcome res = cmd.run();
    RunReport report{cmd.descriptor, std::move(res.result), cmd.seed, res.exit_code,
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    if (cache) {
      try {
        cache->store(report);
      } catch (const std::exception& e) {
        diagnostic(err, "cache", e.what());
      }
    }
    out << report.to_json().dump(2) << '\n';
    return report.exit_code;
  } catch (const InputError& e) {
    diagnostic(err, "input", e.what());
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    diagnostic(err, "budget", e.what());
    return kExitUsage;
  } catch (const InconsistencyError& e) {
    diagnostic(err, "inconsistency", e.what());
    return kExitInconsistent;
  } catch (const std::exception& e) {
    diagnostic(err, "internal", e.what());
    return kExitInconsistent;
  }
}

} // namespace wc::cli
