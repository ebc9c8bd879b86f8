#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "support.hpp"
#include "williamson/driver.hpp"
#include "williamson/equivalence.hpp"
#include "williamson/oracle.hpp"
#include "williamson/text_format.hpp"

using namespace williamson;
using namespace williamson::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("williamson-" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = std::string(WILLIAMSON_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

RunConfig config_for(int n) {
  RunConfig c;
  c.order = n;
  return c;
}

}  // namespace

TEST_SUITE("driver") {
  TEST_CASE("compression factor is the smallest prime divisor") {
    CHECK(compression_factor(12) == 2);
    CHECK(compression_factor(9) == 3);
    CHECK_THROWS_AS(compression_factor(5), std::invalid_argument);
    CHECK_THROWS_AS(compression_factor(35), std::invalid_argument);
    CHECK_THROWS_AS(cmd_enumerate(config_for(7)), std::invalid_argument);
    RunConfig bad = config_for(6);
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(cmd_enumerate(bad), std::invalid_argument);
  }

  TEST_CASE("small counts") {
    CHECK(cmd_enumerate(config_for(2)).canonical.size() == 1);
    CHECK(cmd_enumerate(config_for(9)).canonical.size() == 3);
    CHECK(cmd_enumerate(config_for(18)).canonical.size() == 23);
  }

  TEST_CASE("disabling optimizations keeps the class set") {
    for (int n : {10, 12, 15}) {
      const auto base = cmd_enumerate(config_for(n)).canonical;
      for (int flag = 0; flag < 5; ++flag) {
        RunConfig c = config_for(n);
        c.prune_automorphisms = flag != 0;
        c.product_clauses = flag != 1;
        c.callback = flag != 2;
        c.mod4_filter = flag != 3;
        c.instance_dedupe = flag != 4;
        CHECK(cmd_enumerate(c).canonical == base);
      }
    }
  }

  TEST_CASE("class expansion matches the oracle") {
    for (int n : {4, 6, 9}) {
      std::set<Quadruple> expanded;
      for (const auto& c : cmd_enumerate(config_for(n)).canonical) {
        const auto cls = expand_class(c);
        expanded.insert(cls.begin(), cls.end());
      }
      const auto oracle = brute_force_enumerate(n);
      CHECK(expanded == std::set<Quadruple>(oracle.begin(), oracle.end()));
    }
  }

  TEST_CASE("runs are deterministic across worker counts") {
    RunConfig one = config_for(20);
    RunConfig many = config_for(20);
    many.workers = 4;
    const auto a = cmd_enumerate(one);
    const auto b = cmd_enumerate(many);
    CHECK(a.canonical == b.canonical);
    CHECK(a.solutions == b.solutions);
    CHECK(a.instances == b.instances);
  }

  TEST_CASE("outputs and resume after budget exhaustion") {
    TempDir dir("resume");
    RunConfig c = config_for(22);
    c.output_dir = dir.path / "run";
    c.instance_budget = 5;
    CHECK_THROWS_AS(cmd_enumerate(c), BudgetExhausted);
    CHECK(fs::exists(c.output_dir / "journal.tsv"));
    CHECK_FALSE(fs::exists(c.output_dir / "summary.tsv"));
    CHECK_THROWS_AS(cmd_enumerate(c), BudgetExhausted);

    // Simulate a write torn by a kill.
    std::ofstream(c.output_dir / "journal.tsv", std::ios::app) << "done\t3\t0\t12";

    c.instance_budget = 0;
    c.dump_cnf = true;
    const RunReport resumed = cmd_enumerate(c);
    CHECK(resumed.resumed_instances == 10);
    const RunReport fresh = cmd_enumerate(config_for(22));
    CHECK(resumed.canonical == fresh.canonical);
    CHECK(resumed.solutions == fresh.solutions);
    CHECK(resumed.canonical.size() == 15);

    const std::string summary = read_file(c.output_dir / "summary.tsv");
    CHECK(summary.starts_with("n\ttime_s\tinstances\tsolutions\tinequivalent\n22\t"));
    CHECK(summary.ends_with("\t" + std::to_string(fresh.solutions.size()) + "\t15\n"));
    std::ifstream canon(c.output_dir / "canonical.txt");
    CHECK(read_quadruples(canon) == fresh.canonical);
    std::ifstream sols(c.output_dir / "solutions.txt");
    CHECK(read_quadruples(sols).size() == fresh.solutions.size());
    CHECK(fs::exists(c.output_dir / "instance_stats.tsv"));
    CHECK(fs::exists(c.output_dir / "duplicates.tsv"));
    CHECK(fs::exists(c.output_dir / "instances"));
    CHECK_FALSE(fs::exists(c.output_dir / "spill"));

    // A finished journal makes the next run solve nothing new.
    const RunReport again = cmd_enumerate(c);
    CHECK(again.resumed_instances == again.instances);
    CHECK(again.canonical == fresh.canonical);
  }

  TEST_CASE("a journal from another configuration is ignored") {
    TempDir dir("journal-config");
    RunConfig c = config_for(14);
    c.output_dir = dir.path;
    c.instance_budget = 1;
    CHECK_THROWS_AS(cmd_enumerate(c), BudgetExhausted);
    c.instance_budget = 0;
    c.callback = false;
    CHECK(cmd_enumerate(c).resumed_instances == 0);
  }

  TEST_CASE("worker count from the environment") {
    ::setenv("WILLIAMSON_WORKERS", "3", 1);
    CHECK(worker_count_from_env(1) == 3);
    ::setenv("WILLIAMSON_WORKERS", "zero", 1);
    CHECK(worker_count_from_env(2) == 2);
    ::unsetenv("WILLIAMSON_WORKERS");
    CHECK(worker_count_from_env(5) == 5);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("decompose and usage errors") {
    TempDir dir("cli-basic");
    const Run r = cli("decompose 2", dir.path);
    CHECK(r.code == 0);
    CHECK(r.out == "0 0 2 2\n");
    CHECK(cli("decompose", dir.path).code == 2);
    CHECK(cli("frobnicate", dir.path).code == 2);
    CHECK(cli("enumerate --order 5", dir.path).code == 1);
    CHECK(cli("oracle --order 13", dir.path).code == 1);
  }

  TEST_CASE("verify") {
    TempDir dir("cli-verify");
    const std::string witness = std::string(WILLIAMSON_TEST_DATA) + "/order63.txt";
    CHECK(cli("verify " + witness, dir.path).code == 0);

    std::string text = read_file(witness);
    text[5] = text[5] == '+' ? '-' : '+';
    text[58] = text[58] == '+' ? '-' : '+';
    std::ofstream(dir.path / "bad.txt") << text;
    const Run bad = cli("verify " + (dir.path / "bad.txt").string(), dir.path);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("not williamson") != std::string::npos);

    std::ofstream(dir.path / "one.txt") << "+\n+\n+\n+\n";
    CHECK(cli("verify " + (dir.path / "one.txt").string(), dir.path).code == 0);
    std::ofstream(dir.path / "broken.txt") << "+\n+\n+x\n+\n";
    CHECK(cli("verify " + (dir.path / "broken.txt").string(), dir.path).code == 1);
    CHECK(cli("verify " + (dir.path / "missing.txt").string(), dir.path).code == 1);
  }

  TEST_CASE("canonicalize is idempotent") {
    TempDir dir("cli-canon");
    const Run oracle = cli("oracle --order 6 -j 1", dir.path);
    REQUIRE(oracle.code == 0);
    std::ofstream(dir.path / "all.txt") << oracle.out;
    const Run first = cli("canonicalize " + (dir.path / "all.txt").string(), dir.path);
    std::ofstream(dir.path / "first.txt") << first.out;
    const Run second = cli("canonicalize " + (dir.path / "first.txt").string(), dir.path);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    std::istringstream in(first.out);
    CHECK(read_quadruples(in).size() == 1);
  }

  TEST_CASE("oracle classes agree with enumerate") {
    TempDir dir("cli-oracle");
    const Run oracle = cli("oracle --order 3 --classes", dir.path);
    const Run run = cli("enumerate --order 3 -q", dir.path);
    CHECK(oracle.code == 0);
    CHECK(run.code == 0);
    std::istringstream in(oracle.out);
    CHECK(read_quadruples(in).size() == 1);
    CHECK(run.out.ends_with("\t1\n"));
  }

  TEST_CASE("enumerate writes the run directory") {
    TempDir dir("cli-enumerate");
    const Run r = cli("enumerate --order 12 -q -j 2 --dump-cnf -o " + (dir.path / "run").string(), dir.path);
    CHECK(r.code == 0);
    CHECK(fs::exists(dir.path / "run" / "summary.tsv"));
    CHECK_FALSE(fs::is_empty(dir.path / "run" / "instances"));
    const auto cnf = *fs::directory_iterator(dir.path / "run" / "instances");
    const Run solved = cli("solve " + cnf.path().string(), dir.path);
    CHECK(solved.code == 0);
    CHECK(solved.out.starts_with("s "));
  }

  TEST_CASE("constructions through the CLI") {
    TempDir dir("cli-constructions");
    std::ofstream(dir.path / "one.txt") << "+\n+\n+\n+\n";
    const Run d = cli("double " + (dir.path / "one.txt").string(), dir.path);
    CHECK(d.code == 0);
    CHECK(d.out == "++\n-+\n++\n-+\n\n");
    std::ofstream(dir.path / "two.txt") << "++\n++\n+-\n+-\n";
    const Run e = cli("extract8 " + (dir.path / "two.txt").string(), dir.path);
    CHECK(e.code == 0);
    CHECK(e.out == "+\n+\n+\n+\n+\n-\n+\n-\n\n");
    const Run h = cli("hadamard " + (dir.path / "one.txt").string(), dir.path);
    CHECK(h.code == 0);
    CHECK(h.out == "++++\n-+-+\n-++-\n--++\n");
    const Run s = cli("stats " + (dir.path / "one.txt").string(), dir.path);
    CHECK(s.code == 0);
    CHECK(cli("double " + (dir.path / "two.txt").string(), dir.path).code == 1);
  }
}
