#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "support.hpp"
#include "williamson/candidates.hpp"
#include "williamson/diophantine.hpp"
#include "williamson/key_runs.hpp"
#include "williamson/matching.hpp"
#include "williamson/oracle.hpp"

using namespace williamson;
using namespace williamson::testing;

namespace {

bool has(const std::vector<RowsumDecomposition>& ds, std::array<int, 4> r) {
  return std::find(ds.begin(), ds.end(), RowsumDecomposition{r}) != ds.end();
}

}  // namespace

TEST_SUITE("diophantine") {
  TEST_CASE("even orders use sorted non-negative rowsums") {
    const auto two = decompose_four_squares(2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].rowsums == std::array<int, 4>{0, 0, 2, 2});
    CHECK(has(decompose_four_squares(6), {0, 2, 2, 4}));
    for (int n = 2; n <= 40; n += 2) {
      for (const auto& d : decompose_four_squares(n)) {
        CHECK(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3] == 4 * n);
        CHECK(std::is_sorted(d.rowsums.begin(), d.rowsums.end()));
        CHECK(d[0] >= 0);
      }
    }
  }

  TEST_CASE("odd orders fix signs mod 4") {
    const auto three = decompose_four_squares(3);
    REQUIRE(three.size() == 1);
    CHECK(three[0].rowsums == std::array<int, 4>{-1, -1, -1, 3});
    for (int n = 3; n <= 45; n += 2) {
      for (const auto& d : decompose_four_squares(n)) {
        for (int r : d.rowsums) CHECK(((r - n) % 4 + 4) % 4 == 0);
      }
    }
    CHECK(sign_fix(1, 3) == -1);
    CHECK(sign_fix(3, 3) == 3);
    CHECK(sign_fix(1, 5) == 1);
    CHECK_THROWS_AS(sign_fix(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(sign_fix(2, 3), std::invalid_argument);
  }

  TEST_CASE("every Williamson quadruple has its rowsums listed") {
    for (int n : {3, 4, 6}) {
      const auto ds = decompose_four_squares(n);
      for (const auto& q : brute_force_enumerate(n)) {
        std::array<int, 4> r{};
        for (std::size_t i = 0; i < 4; ++i) r[i] = q[i].rowsum();
        if (n % 2 == 0) {
          for (int& x : r) x = std::abs(x);
          std::sort(r.begin(), r.end());
          CHECK(has(ds, r));
        }
      }
    }
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("candidates for n = 2") {
    const auto ds = decompose_four_squares(2);
    CandidateOptions opts;
    opts.prune_automorphisms = false;
    const CandidatePool pool = generate_candidates(2, ds, opts);
    CHECK(pool.examined == 4);
    REQUIRE(pool.by_rowsum.contains(0));
    REQUIRE(pool.by_rowsum.contains(2));
    CHECK(pool.by_rowsum.at(0).members == std::vector<SymmetricSequence>{seq("+-"), seq("-+")});
    CHECK(pool.by_rowsum.at(2).members == std::vector<SymmetricSequence>{seq("++")});
  }

  TEST_CASE("boundary candidate with PSD exactly 4n is kept") {
    const auto pool = generate_candidates(4, decompose_four_squares(4));
    CHECK(std::ranges::count(pool.by_rowsum.at(4).members, seq("++++")) == 1);
  }

  TEST_CASE("orbit pruning keeps one representative per orbit") {
    const auto pool = generate_candidates(10, decompose_four_squares(10));
    const auto units = unit_multipliers(10);
    for (const auto& [r, list] : pool.a_role) {
      std::set<SymmetricSequence> orbits;
      for (const auto& s : list.members) {
        CHECK(is_orbit_minimum(s, units));
        SymmetricSequence m = s;
        for (int k : units) m = std::min(m, s.permuted(k));
        CHECK(orbits.insert(m).second);
      }
    }
  }

  TEST_CASE("compression lists for n = 2") {
    const auto ds = decompose_four_squares(2);
    const auto pool = generate_candidates(2, ds);
    const CompressionLists lists = build_compression_lists(pool, ds[0], 2);
    CHECK(lists.lists[0].size() == 1);
    CHECK(lists.lists[0][0].sequence.entries(0) == 0);
    CHECK(lists.lists[1][0].sequence.entries(0) == 0);
    CHECK(lists.lists[2][0].sequence.entries(0) == 2);
    CHECK(lists.lists[3][0].sequence.entries(0) == 2);
    CHECK(lists.lists[1][0].sources.size() == 2);
    CHECK_THROWS_AS(build_compression_lists(pool, ds[0], 3), std::invalid_argument);
  }

  TEST_CASE("compressed entries stay in range") {
    for (int n : {12, 15}) {
      const auto ds = decompose_four_squares(n);
      const auto pool = generate_candidates(n, ds);
      const int m = n % 2 == 0 ? 2 : 3;
      for (const auto& d : ds) {
        const auto lists = build_compression_lists(pool, d, m);
        for (const auto& l : lists.lists) {
          for (const auto& e : l) {
            for (int j = 0; j < e.sequence.length(); ++j) {
              const int v = e.sequence.entries(j);
              if (m == 2) CHECK((v == -2 || v == 0 || v == 2));
              if (m == 3) CHECK((v == -3 || v == -1 || v == 1 || v == 3));
            }
          }
        }
      }
    }
  }

  TEST_CASE("match for n = 2") {
    const auto ds = decompose_four_squares(2);
    const auto pool = generate_candidates(2, ds);
    MatchStats stats;
    const auto matches = match_compressions(build_compression_lists(pool, ds[0], 2), 2, {}, &stats);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].members[0].entries(0) == 0);
    CHECK(matches[0].members[2].entries(0) == 2);
    CHECK(sum_is_zero_mod4(matches[0]));
  }

  TEST_CASE("empty list gives no matches") {
    CompressionLists lists;
    lists.order = 4;
    lists.factor = 2;
    CHECK(match_compressions(lists, 4).empty());
  }

  TEST_CASE("matched compressions satisfy the PAF identity and are unique") {
    for (int n : {10, 12, 15}) {
      const auto ds = decompose_four_squares(n);
      const auto pool = generate_candidates(n, ds);
      const int m = n % 2 == 0 ? 2 : 3;
      for (const auto& d : ds) {
        const auto matches = match_compressions(build_compression_lists(pool, d, m), n);
        std::set<std::array<std::uint32_t, 4>> seen;
        for (const auto& mc : matches) {
          Eigen::VectorXi total = Eigen::VectorXi::Zero(n / m);
          for (const auto& c : mc.members) total += paf(c);
          CHECK(total(0) == 4 * n);
          CHECK(total.tail(n / m - 1).isZero());
          CHECK(seen.insert(mc.entries).second);
          if (n % 2 == 0) CHECK(sum_is_zero_mod4(mc));
        }
      }
    }
  }

  TEST_CASE("spilling to disk gives the same matches") {
    const int n = 16;
    const auto ds = decompose_four_squares(n);
    const auto pool = generate_candidates(n, ds);
    const auto dir = std::filesystem::temp_directory_path() / "williamson-spill-test";
    std::filesystem::create_directories(dir);
    for (const auto& d : ds) {
      const auto lists = build_compression_lists(pool, d, 2);
      MatchOptions mem;
      MatchOptions disk;
      disk.memory_budget_records = 7;
      disk.spill_dir = dir;
      disk.workers = 3;
      MatchStats stats;
      const auto a = match_compressions(lists, n, mem);
      const auto b = match_compressions(lists, n, disk, &stats);
      std::set<std::array<std::uint32_t, 4>> sa, sb;
      for (const auto& x : a) sa.insert(x.entries);
      for (const auto& x : b) sb.insert(x.entries);
      CHECK(sa == sb);
    }
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("key runs merge in sorted order") {
    const auto dir = std::filesystem::temp_directory_path() / "williamson-keyrun-test";
    std::filesystem::create_directories(dir);
    {
      KeyRuns runs(2, 3, dir);
      const int keys[][2] = {{3, 1}, {0, 0}, {2, -5}, {0, 0}, {-1, 4}, {2, -6}, {9, 9}};
      std::uint32_t i = 0;
      for (const auto& k : keys) runs.add(std::span<const std::int32_t>(k, 2), i, i + 100), ++i;
      runs.seal();
      CHECK(runs.spilled_runs() >= 2);
      CHECK(runs.record_count() == 7);
      KeyStream stream(runs);
      std::vector<std::vector<std::int32_t>> seen;
      while (!stream.done()) {
        auto rec = stream.current();
        seen.emplace_back(rec.begin(), rec.begin() + 2);
        CHECK(rec[3] == rec[2] + 100);
        stream.advance();
      }
      CHECK(seen.size() == 7);
      CHECK(std::is_sorted(seen.begin(), seen.end()));
    }
    CHECK(std::filesystem::is_empty(dir));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("little-endian record encoding") {
    std::stringstream buf;
    write_le32(buf, -2);
    write_le32(buf, 0x01020304);
    const std::string bytes = buf.str();
    REQUIRE(bytes.size() == 8);
    CHECK(static_cast<unsigned char>(bytes[0]) == 0xFE);
    CHECK(static_cast<unsigned char>(bytes[3]) == 0xFF);
    CHECK(static_cast<unsigned char>(bytes[4]) == 0x04);
    std::int32_t a = 0, b = 0, c = 0;
    CHECK(read_le32(buf, a));
    CHECK(read_le32(buf, b));
    CHECK_FALSE(read_le32(buf, c));
    CHECK(a == -2);
    CHECK(b == 0x01020304);
  }
}
