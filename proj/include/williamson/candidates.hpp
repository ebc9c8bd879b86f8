#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "williamson/diophantine.hpp"
#include "williamson/seqcore.hpp"
#include "williamson/sequence.hpp"

namespace williamson {

/// Multipliers k in [1, n) coprime to n (k = 1 alone when n = 1).
std::vector<int> unit_multipliers(int n);

/// Symmetric sequences of one rowsum that pass the single-sequence PSD test.
struct CandidateList {
  int order = 0;
  int rowsum = 0;
  std::vector<SymmetricSequence> members;
};

struct CandidateOptions {
  double epsilon = kDefaultEpsilon;
  bool prune_automorphisms = true;
  int workers = 1;
};

struct CandidatePool {
  int order = 0;
  std::map<int, CandidateList> by_rowsum;
  /// Lists used for the A role: one representative (the lexicographic
  /// minimum) per orbit of Aut(C_n) when pruning is enabled.
  std::map<int, CandidateList> a_role;
  std::uint64_t examined = 0;

  /// The list feeding `role` (0..3) for the given rowsum; empty if absent.
  const CandidateList& list_for(std::size_t role, int rowsum) const;
};

CandidatePool generate_candidates(int n, std::span<const RowsumDecomposition> decompositions,
                                  const CandidateOptions& options = {});

/// True iff seq is the lexicographic minimum of its Aut(C_n) orbit.
bool is_orbit_minimum(const SymmetricSequence& seq, std::span<const int> multipliers);

struct CompressionEntry {
  CompressedSequence sequence;
  /// Indices into the source CandidateList of every preimage.
  std::vector<std::uint32_t> sources;
};

/// L_A, L_B, L_C, L_D for one decomposition.
struct CompressionLists {
  int order = 0;
  int factor = 0;
  RowsumDecomposition decomposition;
  std::array<std::vector<CompressionEntry>, 4> lists;
};

CompressionLists build_compression_lists(const CandidatePool& pool, const RowsumDecomposition& decomposition,
                                         int factor);

}  // namespace williamson
