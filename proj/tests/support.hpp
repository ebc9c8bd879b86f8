#pragma once

#include <random>
#include <string>
#include <vector>

#include "williamson/sequence.hpp"
#include "williamson/text_format.hpp"

namespace williamson::testing {

inline SymmetricSequence seq(const std::string& text) { return parse_sequence(text); }

inline Quadruple quad(const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
  return Quadruple(seq(a), seq(b), seq(c), seq(d));
}

inline SymmetricSequence random_symmetric(std::mt19937_64& rng, int n) {
  std::vector<Sign> free(static_cast<std::size_t>(n / 2 + 1));
  std::bernoulli_distribution coin(0.5);
  for (auto& x : free) x = coin(rng) ? 1 : -1;
  return SymmetricSequence(n, free);
}

inline Eigen::VectorXi random_signs(std::mt19937_64& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  Eigen::VectorXi x(n);
  for (int i = 0; i < n; ++i) x(i) = coin(rng) ? 1 : -1;
  return x;
}

}  // namespace williamson::testing
