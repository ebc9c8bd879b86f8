#include <doctest.h>

#include <set>

#include "support.hpp"
#include "williamson/candidates.hpp"
#include "williamson/diophantine.hpp"
#include "williamson/oracle.hpp"
#include "williamson/seqcore.hpp"

using namespace williamson;

TEST_SUITE("oracle") {
  TEST_CASE("small orders") {
    CHECK(brute_force_enumerate(1).size() == 16);
    CHECK(brute_force_enumerate(2).size() == 96);
    for (const auto& q : brute_force_enumerate(5)) CHECK(verify_williamson(q));
    CHECK(brute_force_enumerate(6, 3) == brute_force_enumerate(6, 1));
    CHECK_THROWS_AS(brute_force_enumerate(13), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_enumerate(0), std::invalid_argument);
  }

  TEST_CASE("uncompression oracle") {
    MatchedCompression mc;
    mc.order = 2;
    for (std::size_t r = 0; r < 4; ++r) mc.members[r] = {Eigen::VectorXi::Constant(1, r < 2 ? 0 : 2), 2};
    CHECK(brute_force_uncompress(mc, 2).size() == 4);
    mc.members[0].entries(0) = 1;
    CHECK(brute_force_uncompress(mc, 2).empty());
  }

  TEST_CASE("union over matches covers the rowsum pattern") {
    const int n = 6;
    const auto ds = decompose_four_squares(n);
    const auto pool = generate_candidates(n, ds, {kDefaultEpsilon, false, 1});
    for (const auto& d : ds) {
      std::set<Quadruple> from_matches;
      for (const auto& mc : match_compressions(build_compression_lists(pool, d, 2), n)) {
        for (const auto& q : brute_force_uncompress(mc, n)) from_matches.insert(q);
      }
      std::set<Quadruple> direct;
      for (const auto& q : brute_force_enumerate(n)) {
        bool match = true;
        for (std::size_t r = 0; r < 4; ++r) match = match && q[r].rowsum() == d[r];
        if (match) direct.insert(q);
      }
      CHECK(from_matches == direct);
    }
  }
}
