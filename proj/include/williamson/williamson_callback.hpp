#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "williamson/cnf.hpp"
#include "williamson/seqcore.hpp"
#include "williamson/solver.hpp"

namespace williamson {

/// A sequence block whose free entries are all assigned.
struct AssignedBlock {
  Role role = Role::A;
  SymmetricSequence sequence;
  /// PSD at bins 0..n/2.
  Eigen::VectorXd psd;
  /// The currently true literal of each free entry.
  Clause literals;
};

/// Blocks of `assignment` that are fully assigned, in order A, B, C, D.
std::vector<AssignedBlock> assigned_blocks(const Assignment& assignment, const VariableMap& map);

/// The bin whose violating subset is smallest, or nullopt when no subset of
/// `blocks` exceeds 4n + epsilon anywhere.
std::optional<int> violated_bin(std::span<const AssignedBlock> blocks, int n, double epsilon = kDefaultEpsilon);

/// Negation of the current literals of a minimum-size subset of `blocks`
/// whose PSD values at bin s sum above 4n + epsilon (largest values first).
/// Throws if no subset violates the bound at s.
Clause learn_minimal_psd_clause(std::span<const AssignedBlock> blocks, int s, int n,
                                double epsilon = kDefaultEpsilon);

/// Stateless form of the programmatic check.
CallbackOutcome williamson_callback(const Assignment& assignment, const VariableMap& map, int n,
                                    double epsilon = kDefaultEpsilon);

/// The same check with PSD values memoized by bit pattern and an early exit
/// when the assigned blocks are unchanged since the previous call.
class WilliamsonCallback : public SolverCallback {
 public:
  explicit WilliamsonCallback(int order, double epsilon = kDefaultEpsilon);

  CallbackOutcome on_fixpoint(const Assignment& assignment) override;

  const std::vector<Quadruple>& solutions() const noexcept { return solutions_; }
  const VariableMap& map() const noexcept { return map_; }

 private:
  const Eigen::VectorXd& spectrum_of(std::uint64_t negative_mask);

  int order_;
  double epsilon_;
  VariableMap map_;
  SymmetricSpectrum spectrum_;
  std::unordered_map<std::uint64_t, Eigen::VectorXd> memo_;
  std::array<std::int64_t, 4> last_signature_{-1, -1, -1, -1};
  std::vector<Quadruple> solutions_;
};

}  // namespace williamson
