#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "wc/report.hpp"

using namespace wc;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "weylconvex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string stripped(const Run& r) {
  json j = r.report();
  j.erase("wall_time_s");
  return j.dump();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / ("wc_cli_test_" + std::to_string(std::random_device{}()))) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("convex-check exit codes") {
  unsetenv("WC_CACHE_DIR");
  auto r = run({"convex-check", "--type", "A4", "--word", "2,3,4,1,2,3"});
  CHECK(r.code == 0);
  CHECK(r.report()["result"]["convex"] == true);
  r = run({"convex-check", "--type", "A4", "--word", "1,2,3,4,1,2"});
  CHECK(r.code == 1);
  CHECK(r.report()["result"]["quasi_convex"] == true);
  CHECK(r.report()["result"]["convex"] == false);
  r = run({"convex-check", "--type", "C3", "--word", "3,2,3,1,2"});
  CHECK(r.code == 1);
  CHECK(r.report()["result"]["elliptic"] == true);

  CHECK(run({"convex-check", "--type", "A4", "--word", "1,,2"}).code == 2);
  CHECK(run({"convex-check", "--type", "A4", "--word", "9"}).code == 2);
  CHECK(run({"convex-check", "--type", "Q4", "--word", "1"}).code == 2);
  CHECK(run({"convex-check", "--type", "A4"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  r = run({"convex-check", "--type", "A3", "--delta", "3,2,1", "--word", "1"});
  CHECK(r.report()["result"]["element"]["twist_power"] == 1);
  CHECK(r.report()["command"]["args"]["delta"] == "3,2,1");
}

TEST_CASE("reps") {
  unsetenv("WC_CACHE_DIR");
  auto r = run({"reps", "--type", "A2"});
  CHECK(r.code == 0);
  CHECK(r.report()["result"]["rows"].size() == 3);
  r = run({"reps", "--type", "F4"});
  CHECK(r.code == 0);
  CHECK(r.report()["result"]["rows"].size() == 25);
  CHECK(r.report()["result"]["all_verified"] == true);
  r = run({"reps", "--type", "E7"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(json::parse(r.err)["error"] == "budget");
}

TEST_CASE("conjecture, good-position, cross-section") {
  unsetenv("WC_CACHE_DIR");
  auto r = run({"conjecture", "--type", "G2"});
  CHECK(r.code == 0);
  CHECK(r.report()["result"]["status"] == "pass");
  CHECK(r.report()["result"]["scope"] == "w0-condition");
  CHECK(run({"conjecture", "--type", "E6", "--delta", "6,2,5,4,3,1"}).code == 2);

  r = run({"good-position", "--type", "A3", "--word", "2,1,3", "--sequence", "pi/2,pi"});
  CHECK(r.code == 0);
  CHECK(r.report()["result"]["checks"][0]["certificate"]["length"] == 3);
  CHECK(run({"good-position", "--type", "A3", "--word", "2,1,3", "--sequence", "pi,pi/2"}).code == 1);
  CHECK(run({"good-position", "--type", "A3", "--word", "1,2,3"}).code == 1);
  CHECK(run({"good-position", "--type", "A3", "--word", "2,1,3", "--sequence", "pi"}).code == 2);

  r = run({"cross-section", "--n", "5", "--word", "2,3,4,1,2,3", "--field", "101", "--trials", "500", "--seed", "42"});
  CHECK(r.code == 0);
  CHECK(r.report()["result"]["roundtrip"]["passed"] == 500);
  CHECK(r.report()["seed"] == 42);
  r = run({"cross-section", "--n", "3", "--word", "1,2", "--group", "SL", "--exhaustive", "2", "--field", "Q", "--trials", "5",
           "--transversality", "3"});
  CHECK(r.code == 0);
  CHECK(r.report()["result"]["injectivity"]["injective"] == true);
  CHECK(r.report()["result"]["transversality"]["full"] == 3);
  CHECK(run({"cross-section", "--n", "4", "--word", "1", "--perm", "(1,2)"}).code == 2);
  CHECK(run({"cross-section", "--n", "4", "--word", "1", "--field", "6"}).code == 2);
  CHECK(run({"cross-section", "--type", "B", "--n", "4", "--word", "1"}).code == 2);
}

TEST_CASE("determinism and execution modes") {
  unsetenv("WC_CACHE_DIR");
  const std::vector<std::string> cmd{"cross-section", "--n", "4", "--word", "2,1,3,2", "--trials", "40", "--seed", "9",
                                     "--transversality", "2", "--collisions", "4096"};
  const auto a = run(cmd), b = run(cmd);
  auto serial = cmd;
  serial.insert(serial.begin(), "--serial");
  const auto c = run(serial);
  CHECK(stripped(a) == stripped(b));
  CHECK(stripped(a) == stripped(c));
  const auto d = run({"cross-section", "--n", "4", "--word", "2,1,3,2", "--trials", "40", "--seed", "10", "--transversality",
                      "2", "--collisions", "4096"});
  CHECK(stripped(a) != stripped(d));
}

TEST_CASE("result cache") {
  TempDir dir;
  setenv("WC_CACHE_DIR", dir.path.c_str(), 1);
  const std::vector<std::string> cmd{"convex-check", "--type", "B3", "--word", "1,2,3"};
  const auto first = run(cmd);
  REQUIRE(first.code == 0);
  const json key = first.report()["command"];
  const ResultCache cache(dir.path);
  const auto file = cache.path_for(key);
  CHECK(std::filesystem::exists(file));
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path)) files += e.is_regular_file();
  CHECK(files == 1);

  const auto second = run(cmd);
  CHECK(second.out == first.out);
  CHECK(second.code == first.code);
  CHECK(cache.load(key).has_value());

  // A command that differs only in execution mode shares the entry.
  auto serial = cmd;
  serial.insert(serial.begin(), "--serial");
  CHECK(run(serial).out == first.out);

  { std::ofstream(file) << "{ not json"; }
  CHECK_FALSE(cache.load(key).has_value());
  const auto third = run(cmd);
  CHECK(stripped(third) == stripped(first));
  CHECK(cache.load(key).has_value());

  auto bypass = cmd;
  bypass.insert(bypass.begin(), "--no-cache");
  CHECK(stripped(run(bypass)) == stripped(first));
  unsetenv("WC_CACHE_DIR");
  CHECK(cache_key(key).rfind("v1:", 0) == 0);
}

TEST_CASE("reproduce-examples") {
  unsetenv("WC_CACHE_DIR");
  CHECK(run({"reproduce-paper", "--help"}).code == 0);
  const auto r = run({"reproduce-examples"});
  CHECK(r.code == 0);
  const json res = r.report()["result"];
  CHECK(res["passed"] == res["total"]);
  CHECK(res["total"].get<int>() >= 10);
}
