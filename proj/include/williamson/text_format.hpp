#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "williamson/sequence.hpp"

namespace williamson {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// '+' for +1, '-' for -1.
std::string to_text(const SymmetricSequence& seq);
std::string to_text(const Eigen::VectorXi& entries);
SymmetricSequence parse_sequence(std::string_view text);

/// A run of non-blank lines. Each line may hold several whitespace-separated
/// sequences (octuples are often printed as two halves per line).
struct TextBlock {
  std::size_t first_line = 0;
  std::vector<SymmetricSequence> sequences;
};

std::vector<TextBlock> read_blocks(std::istream& in);

template <std::size_t N>
SequenceTuple<N> to_tuple(const TextBlock& block) {
  if (block.sequences.size() != N) {
    throw ParseError(block.first_line, "expected " + std::to_string(N) + " sequences, found " +
                                           std::to_string(block.sequences.size()));
  }
  std::array<SymmetricSequence, N> members;
  for (std::size_t i = 0; i < N; ++i) members[i] = block.sequences[i];
  try {
    return SequenceTuple<N>(std::move(members));
  } catch (const std::invalid_argument& e) {
    throw ParseError(block.first_line, e.what());
  }
}

std::vector<Quadruple> read_quadruples(std::istream& in);

/// One member per line, then a blank separator line.
template <std::size_t N>
void write_tuple(std::ostream& out, const SequenceTuple<N>& tuple) {
  for (const auto& m : tuple.members()) out << to_text(m) << '\n';
  out << '\n';
}

}  // namespace williamson
