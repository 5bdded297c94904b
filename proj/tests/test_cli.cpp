// Config parsing, CSV artifacts, the experiment catalog, and the installed
// command-line front end (exercised through system()).
#include <sys/wait.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "blowlab/config.hpp"
#include "blowlab/report.hpp"
#include "support/harness.hpp"

using namespace blowlab;
using harness::close;
using harness::num;
using harness::record;
using harness::throws;
namespace fs = std::filesystem;

static int run(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

static std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static int count_of(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos;
       p = hay.find(needle, p + 1))
    ++n;
  return n;
}

static void test_config() {
  const std::string text =
      "# top comment\n"
      "tol = 1e-8\n"
      "\n"
      "[riccati]\n"
      "k_lo = 6   # inline comment\n"
      "k_hi = 9\n"
      "strict = true\n"
      "label = \"sharp # not a comment\"\n"
      "[grid]\n"
      "nr = 128\n";
  Config cfg = Config::parse_string(text);
  record("top-level key visible", cfg.has("tol") && close(cfg.num("tol", 0.0), 1e-8, 1e-20));
  record("section keys become dotted",
         cfg.integer("riccati.k_lo", -1) == 6 && cfg.integer("riccati.k_hi", -1) == 9 &&
             cfg.integer("grid.nr", -1) == 128);
  record("flag parsing", cfg.flag("riccati.strict", false));
  record("quotes shield comments and are stripped",
         cfg.str("riccati.label", "") == "sharp # not a comment");
  record("absent key falls back",
         close(cfg.num("nope", 3.5), 3.5, 1e-15) && cfg.integer("nope", 7) == 7 &&
             cfg.flag("nope", true) && cfg.str("nope", "d") == "d");
  auto ks = cfg.keys();
  record("keys come back sorted",
         ks.size() == 6 && ks.front() == "grid.nr" && ks.back() == "tol");

  record("duplicate key is refused",
         throws([] { Config::parse_string("a = 1\na = 2\n"); }));
  record("line without assignment is refused",
         throws([] { Config::parse_string("just words\n"); }));
  record("unterminated section is refused",
         throws([] { Config::parse_string("[oops\n"); }));
  record("empty section name is refused",
         throws([] { Config::parse_string("[]\n"); }));
  record("empty value is refused", throws([] { Config::parse_string("k =\n"); }));
  record("non-numeric number access is refused",
         throws([&] { cfg.num("riccati.label", 0.0); }));
  record("fractional integer access is refused", throws([] {
           Config c = Config::parse_string("n = 2.5\n");
           c.integer("n", 0);
         }));
  record("non-boolean flag access is refused", throws([] {
           Config c = Config::parse_string("f = yes\n");
           c.flag("f", false);
         }));

  record("empty config hash is the offset basis",
         Config().hash() == 0xcbf29ce484222325ull);
  Config reordered = Config::parse_string(
      "tol = 1e-8\n[grid]\nnr = 128\n[riccati]\nlabel = \"sharp # not a comment\"\n"
      "k_hi = 9\nstrict = true\nk_lo = 6\n");
  record("hash ignores declaration order", cfg.hash() == reordered.hash());
  Config changed = Config::parse_string(text + "[extra]\nz = 1\n");
  record("hash tracks content", cfg.hash() != changed.hash());
}

static void test_csv() {
  fs::create_directories("cli_scratch");
  const std::string path = "cli_scratch/roundtrip.csv";
  std::vector<double> vals = {0.1, 2.0 / 3.0, 1e-300, 12345.678901234567};
  write_csv(path, {"a", "b", "c", "d"}, {vals});
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  record("csv header", header == "a,b,c,d");
  std::istringstream rs(row);
  std::string cell;
  bool exact = true;
  for (double want : vals) {
    std::getline(rs, cell, ',');
    exact = exact && std::strtod(cell.c_str(), nullptr) == want;
  }
  record("csv cells survive a text round trip bit for bit", exact, row);
  record("csv row width mismatch is refused",
         throws([&] { write_csv(path, {"a", "b"}, {{1.0}}); }));
  record("csv unwritable path is refused",
         throws([] { write_csv("/nonexistent-dir-zz/x.csv", {"a"}, {{1.0}}); }));
}

static void test_catalog() {
  const auto& cat = experiment_catalog();
  record("catalog holds eleven studies", cat.size() == 11, num(double(cat.size())));
  bool anchors_ok = true;
  for (int k = 1; k <= 11; ++k) {
    int hits = 0;
    for (const auto& e : cat)
      if (e.anchor == "AC-" + std::to_string(k)) ++hits;
    anchors_ok = anchors_ok && hits == 1;
  }
  record("each anchor appears exactly once", anchors_ok);
  bool names_ok = true;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i + 1; j < cat.size(); ++j)
      names_ok = names_ok && cat[i].name != cat[j].name;
  record("study names are unique", names_ok);
  record("lookup finds a study", find_experiment("riccati-slopes") != nullptr);
  record("lookup rejects a stranger", find_experiment("nope") == nullptr);

  auto j = run_experiment("burgers-origin-slope", Config(), 0, "");
  record("envelope carries provenance",
         j["experiment"] == "burgers-origin-slope" && j["anchor"] == "AC-3" &&
             j["config_hash"] == "cbf29ce484222325" && j["seed"] == 0);
  record("origin slope study is clean",
         j["data"]["max_rel_error"].get<double>() < 1e-10 &&
             j["data"]["T_star"].get<double>() == 1.0,
         num(j["data"]["max_rel_error"].get<double>()));
  record("unknown study is refused",
         throws([] { run_experiment("nope", Config(), 0, ""); }));
}

static void test_binary() {
  bool present = fs::exists("./blowlab");
  record("front end binary present", present);
  if (!present) return;

  record("bare invocation exits 2", run("./blowlab >/dev/null 2>&1") == 2);
  record("unknown command exits 2", run("./blowlab bogus >/dev/null 2>&1") == 2);
  record("report without a name exits 2",
         run("./blowlab report >/dev/null 2>&1") == 2);
  record("unknown study exits 1",
         run("./blowlab report not-a-study >/dev/null 2>&1") == 1);
  record("missing config file exits 1",
         run("./blowlab list --config cli_scratch/absent.toml >/dev/null 2>&1") == 1);
  record("help exits 0", run("./blowlab --help >/dev/null 2>&1") == 0);

  record("list exits 0", run("./blowlab list > cli_scratch/list.txt 2>&1") == 0);
  std::string listing = slurp("cli_scratch/list.txt");
  bool anchors_ok = true;
  for (int k = 1; k <= 11; ++k)
    anchors_ok = anchors_ok && count_of(listing, "[AC-" + std::to_string(k) + "]") == 1;
  record("listing shows each anchor once", anchors_ok);

  record("slope study runs",
         run("./blowlab report burgers-origin-slope --out cli_scratch/art "
             "> cli_scratch/slope.json 2>/dev/null") == 0);
  auto j = nlohmann::json::parse(slurp("cli_scratch/slope.json"));
  record("slope study lands on its anchor", j["anchor"] == "AC-3");
  record("slope study reproduces the closed form",
         j["data"]["max_rel_error"].get<double>() < 1e-6,
         num(j["data"]["max_rel_error"].get<double>()));
  std::string art = slurp("cli_scratch/art/burgers_origin_slope.csv");
  record("slope study leaves its artifact",
         art.rfind("t,measured,exact\n", 0) == 0 && count_of(art, "\n") == 4);

  std::ofstream("cli_scratch/run.toml")
      << "[riccati]\nk_lo = 6\nk_hi = 9\n";
  record("configured study runs",
         run("./blowlab report riccati-slopes --config cli_scratch/run.toml "
             "--out cli_scratch/art2 > cli_scratch/ric.json 2>/dev/null") == 0);
  auto r = nlohmann::json::parse(slurp("cli_scratch/ric.json"));
  char want_hash[24];
  std::snprintf(want_hash, sizeof want_hash, "%016llx",
                static_cast<unsigned long long>(
                    Config::parse_file("cli_scratch/run.toml").hash()));
  record("config hash agrees across the process boundary",
         r["config_hash"].get<std::string>() == want_hash);
  record("configured slope lands near its target",
         close(r["data"]["slope_p2"].get<double>(), -1.75, 0.05),
         num(r["data"]["slope_p2"].get<double>()));
  std::string art2 = slurp("cli_scratch/art2/riccati_slopes.csv");
  record("configured study leaves a four-row artifact",
         art2.rfind("t,log_g1,log_g2,log_ginf\n", 0) == 0 && count_of(art2, "\n") == 5);
}

int main() {
  test_config();
  test_csv();
  test_catalog();
  test_binary();
  return harness::summary("test_cli");
}
