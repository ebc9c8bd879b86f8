#include "williamson/diophantine.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace williamson {
namespace {

int exact_sqrt(int value) {
  if (value < 0) return -1;
  int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(value))));
  while (root * root > value) --root;
  while ((root + 1) * (root + 1) <= value) ++root;
  return root * root == value ? root : -1;
}

}  // namespace

int sign_fix(int r, int n) {
  if (n % 2 == 0) throw std::invalid_argument("sign_fix requires odd order");
  if (r % 2 == 0) throw std::invalid_argument("rowsum of an odd-order sequence must be odd");
  const int magnitude = std::abs(r);
  const int target = ((n % 4) + 4) % 4;
  return ((magnitude % 4) + 4) % 4 == target ? magnitude : -magnitude;
}

std::vector<RowsumDecomposition> decompose_four_squares(int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  const int total = 4 * n;
  const int parity = n % 2;
  std::vector<RowsumDecomposition> out;
  // Absolute values, ascending; each must share n's parity.
  for (int a = parity; a * a * 4 <= total; a += 2) {
    for (int b = a; a * a + 3 * b * b <= total; b += 2) {
      for (int c = b; a * a + b * b + 2 * c * c <= total; c += 2) {
        const int d = exact_sqrt(total - a * a - b * b - c * c);
        if (d < c || d % 2 != parity) continue;
        if (parity == 0) {
          out.push_back({{a, b, c, d}});
        } else {
          out.push_back({{sign_fix(a, n), sign_fix(b, n), sign_fix(c, n), sign_fix(d, n)}});
        }
      }
    }
  }
  return out;
}

}  // namespace williamson
