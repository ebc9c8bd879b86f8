#include "williamson/text_format.hpp"

#include <sstream>

namespace williamson {

std::string to_text(const SymmetricSequence& seq) { return to_text(seq.expand()); }

std::string to_text(const Eigen::VectorXi& entries) {
  std::string out;
  out.reserve(static_cast<std::size_t>(entries.size()));
  for (Eigen::Index i = 0; i < entries.size(); ++i) out.push_back(entries(i) > 0 ? '+' : '-');
  return out;
}

SymmetricSequence parse_sequence(std::string_view text) {
  std::vector<int> entries;
  entries.reserve(text.size());
  for (char c : text) {
    if (c == '+') {
      entries.push_back(1);
    } else if (c == '-') {
      entries.push_back(-1);
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c + "'");
    }
  }
  return SymmetricSequence::from_entries(std::span<const int>(entries));
}

std::vector<TextBlock> read_blocks(std::istream& in) {
  std::vector<TextBlock> blocks;
  TextBlock current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.sequences.empty()) blocks.push_back(std::move(current));
    current = TextBlock{};
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    if (current.sequences.empty()) current.first_line = line_no;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      try {
        current.sequences.push_back(parse_sequence(token));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    }
  }
  flush();
  return blocks;
}

std::vector<Quadruple> read_quadruples(std::istream& in) {
  std::vector<Quadruple> out;
  for (const auto& block : read_blocks(in)) out.push_back(to_tuple<4>(block));
  return out;
}

}  // namespace williamson
