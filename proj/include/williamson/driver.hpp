#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "williamson/matching.hpp"
#include "williamson/seqcore.hpp"
#include "williamson/sequence.hpp"
#include "williamson/solver.hpp"

namespace williamson {

struct RunConfig {
  int order = 0;
  double epsilon = kDefaultEpsilon;
  int workers = 1;
  /// Empty: nothing is written and the run cannot be resumed.
  std::filesystem::path output_dir;
  std::size_t memory_budget_records = std::size_t{1} << 22;

  bool prune_automorphisms = true;
  bool product_clauses = true;
  bool callback = true;
  bool mod4_filter = true;
  bool instance_dedupe = true;

  bool dump_cnf = false;
  /// Instances solved per invocation before stopping; 0 means no limit.
  std::size_t instance_budget = 0;
  std::ostream* log = nullptr;
};

struct InstanceResult {
  std::size_t index = 0;
  std::size_t decomposition = 0;
  std::vector<Quadruple> solutions;
  SolverStats stats;
  double seconds = 0.0;
};

struct RunReport {
  int order = 0;
  double seconds = 0.0;
  std::uint64_t candidates_examined = 0;
  std::uint64_t matched = 0;
  std::uint64_t duplicate_instances = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> discarded;
  /// Solved SAT instances (after instance deduplication).
  std::uint64_t instances = 0;
  std::uint64_t resumed_instances = 0;
  /// Verified quadruples, sorted.
  std::vector<Quadruple> solutions;
  /// Sorted canonical forms.
  std::vector<Quadruple> canonical;
  SolverStats totals;
  std::vector<InstanceResult> per_instance;
};

/// Raised when the instance budget stops a run; finished instances are kept
/// in the run directory's journal and a later run resumes from them.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest prime divisor of n when it is 2 or 3; throws otherwise.
int compression_factor(int n);

/// One SAT instance: a matched compression that survived deduplication.
struct InstanceSpec {
  std::size_t index = 0;
  std::size_t decomposition = 0;
  MatchedCompression compression;
};

struct InstanceSet {
  std::vector<InstanceSpec> instances;
  std::uint64_t candidates_examined = 0;
  std::uint64_t matched = 0;
  std::uint64_t duplicates = 0;
  /// (matched compression ordinal, index of the instance standing in for it).
  std::vector<std::pair<std::uint64_t, std::size_t>> discarded;
};

/// Decomposition, candidate generation, compression and matching; spill
/// files go to `spill_dir` when it is non-empty.
InstanceSet build_instances(const RunConfig& config, const std::filesystem::path& spill_dir = {});

/// Verified Williamson solutions of one instance, sorted. With
/// `raw_models` set, it receives every decoded model before verification.
InstanceResult solve_instance(const InstanceSpec& spec, const RunConfig& config,
                              const std::filesystem::path& cnf_dir = {}, std::vector<Quadruple>* raw_models = nullptr);

/// Steps: decompose 4n, generate candidates, compress, match, then solve one
/// SAT instance per distinct matched compression.
RunReport cmd_enumerate(const RunConfig& config);

/// WILLIAMSON_WORKERS when set to a positive integer, otherwise `fallback`.
int worker_count_from_env(int fallback);

/// Decodes the free-entry variables of a model into a quadruple.
Quadruple decode_model(const Model& model, int order);

}  // namespace williamson
