#include <doctest.h>

#include <random>
#include <sstream>

#include "support.hpp"
#include "williamson/seqcore.hpp"

using namespace williamson;
using namespace williamson::testing;

TEST_SUITE("seqcore") {
  TEST_CASE("paf of a small sequence") {
    Eigen::VectorXi x(4);
    x << 1, 1, -1, 1;
    CHECK(paf(x) == Eigen::Vector4i(4, 0, 0, 0));
    const Eigen::VectorXd s = psd(x);
    for (int k = 0; k < 4; ++k) CHECK(s(k) == doctest::Approx(4.0));
  }

  TEST_CASE("compression sums residues") {
    Eigen::VectorXi x(6);
    x << 1, 1, -1, 1, 1, -1;
    const CompressedSequence c = compress(x, 2);
    CHECK(c.factor == 3);
    CHECK(c.entries == Eigen::Vector2i(1, 1));
    CHECK_THROWS_AS(compress(x, 4), std::invalid_argument);
  }

  TEST_CASE("compression preserves the PAF sum identity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXi x = random_signs(rng, 12);
      const Eigen::VectorXi full = paf(x);
      const CompressedSequence c = compress(x, 4);
      const Eigen::VectorXi small = paf(c);
      for (int s = 0; s < 4; ++s) CHECK(small(s) == full(s) + full(s + 4) + full(s + 8));
    }
  }

  TEST_CASE("symmetric sequence storage and transforms") {
    const SymmetricSequence a = seq("+-++-");
    CHECK(a.order() == 5);
    CHECK(a.free_count() == 3);
    CHECK(a[4] == a[1]);
    CHECK(to_text(a) == "+-++-");
    CHECK(a.rowsum() == 1);
    CHECK(a.negated().negated() == a);
    CHECK(a.permuted(1) == a);
    CHECK(a.permuted(2) == seq("++--+"));
    CHECK_THROWS_AS(a.permuted(5), std::invalid_argument);
    CHECK_THROWS_AS(seq("+-++"), std::invalid_argument);
    CHECK_THROWS_AS(a.shifted_half(), std::invalid_argument);
    CHECK(SymmetricSequence::from_mask(5, a.negative_mask()) == a);

    const SymmetricSequence b = seq("++-+");
    CHECK(b.shifted_half() == seq("-+++"));
    CHECK(b.shifted_half().shifted_half() == b);
    CHECK(b.alternated() == seq("+---"));
  }

  TEST_CASE("ordering puts +1 before -1") {
    CHECK(seq("++") < seq("--"));
    CHECK(seq("+--") < seq("-++"));
    CHECK_FALSE(seq("++") < seq("++"));
  }

  TEST_CASE("symmetric spectrum agrees with the direct transform") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 20; ++n) {
      const SymmetricSpectrum spectrum(n);
      for (int trial = 0; trial < 20; ++trial) {
        const SymmetricSequence x = random_symmetric(rng, n);
        const Eigen::VectorXd half = spectrum(x);
        const Eigen::VectorXd full = psd(x);
        REQUIRE(half.size() == n / 2 + 1);
        for (int s = 0; s < half.size(); ++s) CHECK(half(s) == doctest::Approx(full(s)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("psd filter") {
    Eigen::VectorXd a(2), b(2);
    a << 4, 0;
    b << 4, 0;
    std::vector<Eigen::VectorXd> two{a, b};
    CHECK_FALSE(psd_filter(two, 2));
    two.push_back(a);
    CHECK(psd_filter(two, 2));
    CHECK_THROWS_AS(psd_filter(std::vector<Eigen::VectorXd>{}, 2), std::invalid_argument);
  }

  TEST_CASE("verify_williamson") {
    CHECK(verify_williamson(quad("+", "+", "+", "+")));
    CHECK(verify_williamson(quad("++", "-+", "++", "-+")));
    CHECK_FALSE(verify_williamson(quad("++", "++", "++", "++")));
  }

  TEST_CASE("text blocks") {
    std::istringstream in("# comment\n++\n-+\n++\n-+\n\n+\n+\n+\n+\n");
    const auto quads = read_quadruples(in);
    REQUIRE(quads.size() == 2);
    CHECK(quads[1] == quad("+", "+", "+", "+"));

    std::istringstream bad("++\n+x\n");
    try {
      read_blocks(bad);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }

    std::istringstream three("+\n+\n+\n");
    CHECK_THROWS_AS(read_quadruples(three), ParseError);

    std::ostringstream out;
    write_tuple(out, quads[0]);
    CHECK(out.str() == "++\n-+\n++\n-+\n\n");
  }
}
