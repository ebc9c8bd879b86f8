#pragma once

#include <array>
#include <compare>
#include <vector>

namespace williamson {

/// Rowsums (R_A, R_B, R_C, R_D) with R_A^2 + R_B^2 + R_C^2 + R_D^2 = 4n.
///
/// Even n: 0 <= R_A <= R_B <= R_C <= R_D. Odd n: ordered by absolute value,
/// with each sign chosen so that R ≡ n (mod 4), which pins x_0 = +1.
struct RowsumDecomposition {
  std::array<int, 4> rowsums{};

  int operator[](std::size_t i) const noexcept { return rowsums[i]; }
  friend auto operator<=>(const RowsumDecomposition&, const RowsumDecomposition&) = default;
};

std::vector<RowsumDecomposition> decompose_four_squares(int n);

/// Of ±|r|, the one congruent to n mod 4 (n odd, r odd).
int sign_fix(int r, int n);

}  // namespace williamson
