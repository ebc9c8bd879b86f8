#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "williamson/constructions.hpp"
#include "williamson/driver.hpp"
#include "williamson/equivalence.hpp"
#include "williamson/oracle.hpp"

using namespace williamson;
using namespace williamson::testing;

namespace {

EquivalenceOp<4> random_op(std::mt19937_64& rng, int n) {
  const bool even = n % 2 == 0;
  const auto units = automorphisms(n);
  std::uniform_int_distribution<int> kind(0, even ? 4 : 2);
  std::uniform_int_distribution<std::size_t> member(0, 3);
  switch (kind(rng)) {
    case 0: {
      Reorder<4> r{{0, 1, 2, 3}};
      std::shuffle(r.permutation.begin(), r.permutation.end(), rng);
      return r;
    }
    case 1:
      return Negate{member(rng)};
    case 2:
      return Permute{units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)].multiplier()};
    case 3:
      return ShiftHalf{member(rng)};
    default:
      return Alternate{};
  }
}

}  // namespace

TEST_SUITE("equivalence") {
  TEST_CASE("automorphisms of C_n") {
    CHECK(automorphisms(1).size() == 1);
    CHECK(automorphisms(12).size() == 4);
    CHECK(automorphisms(30).size() == 8);
    CHECK(automorphisms(63).size() == 36);
    for (const auto& sigma : automorphisms(10)) {
      std::set<int> image;
      for (int i = 0; i < 10; ++i) image.insert(sigma(i));
      CHECK(image.size() == 10);
      CHECK(sigma(0) == 0);
    }
    CHECK_THROWS_AS(Automorphism(2, 4), std::invalid_argument);
  }

  TEST_CASE("individual operations") {
    const Quadruple q = quad("++", "++", "+-", "+-");
    CHECK(apply_equivalence<4>(q, Alternate{}) == quad("+-", "+-", "++", "++"));
    CHECK(apply_equivalence<4>(apply_equivalence<4>(q, Negate{2}), Negate{2}) == q);
    CHECK(apply_equivalence<4>(q, Permute{1}) == q);
    CHECK(apply_equivalence<4>(q, Reorder<4>{{2, 3, 0, 1}}) == quad("+-", "+-", "++", "++"));
    CHECK(apply_equivalence<4>(q, ShiftHalf{2}) == quad("++", "++", "-+", "+-"));

    const Quadruple odd = quad("+", "+", "+", "+");
    CHECK_THROWS_AS(apply_equivalence<4>(odd, ShiftHalf{0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_equivalence<4>(odd, Alternate{}), std::invalid_argument);
    CHECK_THROWS_AS(apply_equivalence<4>(q, Permute{2}), std::invalid_argument);
    CHECK_THROWS_AS(apply_equivalence<4>(q, Reorder<4>{{0, 0, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(apply_equivalence<4>(q, Negate{4}), std::out_of_range);
  }

  TEST_CASE("canonical form is idempotent and sign invariant") {
    const auto all = brute_force_enumerate(6);
    for (std::size_t i = 0; i < all.size(); i += 37) {
      const Quadruple c = canonical_form(all[i]);
      CHECK(canonical_form(c) == c);
      CHECK(!(all[i] < c));
      for (unsigned signs = 0; signs < 16; ++signs) {
        Quadruple v = all[i];
        for (std::size_t r = 0; r < 4; ++r) {
          if ((signs >> r) & 1U) v = apply_equivalence<4>(v, Negate{r});
        }
        CHECK(canonical_form(v) == c);
      }
    }
  }

  TEST_CASE("canonical form is invariant under random operation sequences") {
    std::mt19937_64 rng(42);
    for (int n : {4, 6, 9, 10, 12}) {
      const auto all = brute_force_enumerate(n);
      for (int trial = 0; trial < 200; ++trial) {
        const Quadruple& q = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
        Quadruple t = q;
        for (int step = 0; step < 6; ++step) t = apply_equivalence<4>(t, random_op(rng, n));
        CHECK(canonical_form(t) == canonical_form(q));
      }
    }
  }

  TEST_CASE("canonical form is the minimum of the full class") {
    for (int n : {2, 3, 4, 5, 6, 8}) {
      std::set<Quadruple> done;
      for (const auto& q : brute_force_enumerate(n)) {
        const Quadruple c = canonical_form(q);
        if (!done.insert(c).second) continue;
        const auto cls = expand_class(q);
        CHECK(cls.contains(c));
        CHECK(*std::min_element(cls.begin(), cls.end()) == c);
      }
    }
  }

  TEST_CASE("oracle class counts") {
    CHECK(dedupe(brute_force_enumerate(2)).size() == 1);
    CHECK(dedupe(brute_force_enumerate(3)).size() == 1);
    CHECK(dedupe(std::vector<Quadruple>{}).empty());
  }

  TEST_CASE("dedupe keeps first-seen order") {
    const auto all = brute_force_enumerate(10);
    const auto classes = dedupe(all);
    CHECK(classes.size() == 2);
    CHECK(classes[0] == canonical_form(all.front()));
  }

  TEST_CASE("the two order-10 classes come from doubling the order-5 class") {
    const auto five = brute_force_enumerate(5);
    std::set<Quadruple> doubled;
    for (const auto& q : five) doubled.insert(canonical_form(double_order(q)));
    CHECK(doubled.size() == 2);
    const auto ten = dedupe(brute_force_enumerate(10));
    CHECK(doubled == std::set<Quadruple>(ten.begin(), ten.end()));
  }

  TEST_CASE("octuple canonical form uses reorder, negate and automorphisms") {
    const Octuple o(seq("+++"), seq("+--"), seq("+++"), seq("-++"), seq("+--"), seq("+++"), seq("---"),
                    seq("+--"));
    const Octuple c = canonical_form(o);
    CHECK(canonical_form(c) == c);
    CHECK(canonical_form(apply_equivalence<8>(o, Negate{7})) == c);
    CHECK(canonical_form(apply_equivalence<8>(o, Reorder<8>{{7, 6, 5, 4, 3, 2, 1, 0}})) == c);
    CHECK(canonical_form(apply_equivalence<8>(o, Permute{2})) == c);
  }
}
