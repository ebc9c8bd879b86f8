#include "williamson/williamson_callback.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace williamson {
namespace {

// -1 when the block is not fully assigned, otherwise its negative mask.
std::int64_t block_mask(const Assignment& assignment, const VariableMap& map, Role role) {
  std::int64_t mask = 0;
  for (int i = 0; i < map.free_count(); ++i) {
    const Value v = assignment.value(map.variable(role, i));
    if (v == Value::Undef) return -1;
    if (v == Value::False) mask |= std::int64_t{1} << i;
  }
  return mask;
}

AssignedBlock make_block(const VariableMap& map, Role role, std::uint64_t mask, Eigen::VectorXd psd) {
  AssignedBlock block{role, SymmetricSequence::from_mask(map.order(), mask), std::move(psd), {}};
  for (int i = 0; i < map.free_count(); ++i) {
    block.literals.push_back({map.variable(role, i), ((mask >> i) & 1U) == 0});
  }
  return block;
}

// Blocks sorted by PSD at bin s (descending, stable) and the prefix length
// needed to exceed the bound; 0 when even all of them stay below it.
std::pair<std::vector<std::size_t>, std::size_t> minimal_prefix(std::span<const AssignedBlock> blocks, int s,
                                                                double bound) {
  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return blocks[x].psd(s) > blocks[y].psd(s);
  });
  double total = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    total += blocks[order[k]].psd(s);
    if (total > bound) return {order, k + 1};
  }
  return {order, 0};
}

CallbackOutcome evaluate(std::span<const AssignedBlock> blocks, int n, double epsilon) {
  if (blocks.empty()) return NoAction{};
  if (auto s = violated_bin(blocks, n, epsilon)) return LearnedClause{learn_minimal_psd_clause(blocks, *s, n, epsilon)};
  if (blocks.size() == 4) return SolutionFound{Quadruple(blocks[0].sequence, blocks[1].sequence, blocks[2].sequence, blocks[3].sequence)};
  return NoAction{};
}

}  // namespace

std::vector<AssignedBlock> assigned_blocks(const Assignment& assignment, const VariableMap& map) {
  const SymmetricSpectrum spectrum(map.order());
  std::vector<AssignedBlock> out;
  for (std::size_t r = 0; r < 4; ++r) {
    const Role role = static_cast<Role>(r);
    const std::int64_t mask = block_mask(assignment, map, role);
    if (mask < 0) continue;
    const auto seq = SymmetricSequence::from_mask(map.order(), static_cast<std::uint64_t>(mask));
    out.push_back(make_block(map, role, static_cast<std::uint64_t>(mask), spectrum(seq)));
  }
  return out;
}

std::optional<int> violated_bin(std::span<const AssignedBlock> blocks, int n, double epsilon) {
  if (blocks.empty()) return std::nullopt;
  const double bound = 4.0 * n + epsilon;
  std::optional<int> best;
  std::size_t best_size = 0;
  for (int s = 0; s < static_cast<int>(blocks[0].psd.size()); ++s) {
    const std::size_t size = minimal_prefix(blocks, s, bound).second;
    if (size != 0 && (!best || size < best_size)) {
      best = s;
      best_size = size;
      if (size == 1) break;
    }
  }
  return best;
}

Clause learn_minimal_psd_clause(std::span<const AssignedBlock> blocks, int s, int n, double epsilon) {
  auto [order, size] = minimal_prefix(blocks, s, 4.0 * n + epsilon);
  if (size == 0) throw std::invalid_argument("no subset of the assigned blocks violates the bound");
  Clause clause;
  for (std::size_t k = 0; k < size; ++k) {
    for (const Literal& l : blocks[order[k]].literals) clause.push_back(~l);
  }
  std::sort(clause.begin(), clause.end());
  return clause;
}

CallbackOutcome williamson_callback(const Assignment& assignment, const VariableMap& map, int n, double epsilon) {
  const auto blocks = assigned_blocks(assignment, map);
  return evaluate(blocks, n, epsilon);
}

WilliamsonCallback::WilliamsonCallback(int order, double epsilon)
    : order_(order), epsilon_(epsilon), map_(order), spectrum_(order) {
  if (map_.free_count() > 63) throw std::invalid_argument("order too large for the callback");
}

const Eigen::VectorXd& WilliamsonCallback::spectrum_of(std::uint64_t negative_mask) {
  auto it = memo_.find(negative_mask);
  if (it == memo_.end()) {
    it = memo_.emplace(negative_mask, spectrum_(SymmetricSequence::from_mask(order_, negative_mask))).first;
  }
  return it->second;
}

CallbackOutcome WilliamsonCallback::on_fixpoint(const Assignment& assignment) {
  std::array<std::int64_t, 4> signature{};
  for (std::size_t r = 0; r < 4; ++r) signature[r] = block_mask(assignment, map_, static_cast<Role>(r));
  // An unchanged signature means the previous call already returned NoAction:
  // any other outcome forces the solver to change the assignment.
  if (signature == last_signature_) return NoAction{};
  std::vector<AssignedBlock> blocks;
  for (std::size_t r = 0; r < 4; ++r) {
    if (signature[r] < 0) continue;
    const auto mask = static_cast<std::uint64_t>(signature[r]);
    blocks.push_back(make_block(map_, static_cast<Role>(r), mask, spectrum_of(mask)));
  }
  CallbackOutcome outcome = evaluate(blocks, order_, epsilon_);
  last_signature_ = std::holds_alternative<NoAction>(outcome) ? signature : std::array<std::int64_t, 4>{-1, -1, -1, -1};
  if (auto* found = std::get_if<SolutionFound>(&outcome)) solutions_.push_back(found->quadruple);
  return outcome;
}

}  // namespace williamson
