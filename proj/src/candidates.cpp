#include "williamson/candidates.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

namespace williamson {

std::vector<int> unit_multipliers(int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (n == 1) return {1};
  std::vector<int> out;
  for (int k = 1; k < n; ++k) {
    if (std::gcd(k, n) == 1) out.push_back(k);
  }
  return out;
}

const CandidateList& CandidatePool::list_for(std::size_t role, int rowsum) const {
  static const CandidateList empty;
  const auto& lists = role == 0 ? a_role : by_rowsum;
  auto it = lists.find(rowsum);
  return it == lists.end() ? empty : it->second;
}

bool is_orbit_minimum(const SymmetricSequence& seq, std::span<const int> multipliers) {
  return std::none_of(multipliers.begin(), multipliers.end(),
                      [&](int k) { return seq.permuted(k) < seq; });
}

namespace {

struct ScanResult {
  std::vector<std::uint64_t> masks;
};

// Tests masks in [begin, end) against the rowsum set and the 4n bound.
ScanResult scan_range(int n, const Eigen::MatrixXd& basis, const std::set<int>& rowsums, double bound,
                      std::uint64_t begin, std::uint64_t end) {
  const int free_count = static_cast<int>(basis.cols());
  std::vector<double> x(static_cast<std::size_t>(free_count));
  ScanResult out;
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    int sum = 0;
    for (int k = 0; k < free_count; ++k) {
      const int v = ((mask >> k) & 1U) ? -1 : 1;
      x[static_cast<std::size_t>(k)] = v;
      sum += (k == 0 || 2 * k == n) ? v : 2 * v;
    }
    if (!rowsums.contains(sum)) continue;
    bool keep = true;
    for (int s = 0; s < basis.rows() && keep; ++s) {
      double acc = 0.0;
      for (int k = 0; k < free_count; ++k) acc += basis(s, k) * x[static_cast<std::size_t>(k)];
      keep = acc * acc <= bound;
    }
    if (keep) out.masks.push_back(mask);
  }
  return out;
}

}  // namespace

CandidatePool generate_candidates(int n, std::span<const RowsumDecomposition> decompositions,
                                  const CandidateOptions& options) {
  if (decompositions.empty()) throw std::invalid_argument("no rowsum decompositions supplied");
  const int free_count = n / 2 + 1;
  if (free_count > 40) throw std::invalid_argument("order too large for exhaustive candidate generation");

  std::set<int> rowsums;
  std::set<int> a_rowsums;
  for (const auto& dec : decompositions) {
    rowsums.insert(dec.rowsums.begin(), dec.rowsums.end());
    a_rowsums.insert(dec[0]);
  }

  const SymmetricSpectrum spectrum(n);
  const Eigen::MatrixXd& basis = spectrum.basis();
  const double bound = 4.0 * n + options.epsilon;
  const std::uint64_t total = std::uint64_t{1} << free_count;
  const int workers = std::max(1, options.workers);
  std::vector<ScanResult> parts(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> threads;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t begin = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
      const std::uint64_t end = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
      threads.emplace_back([&, w, begin, end] {
        parts[static_cast<std::size_t>(w)] = scan_range(n, basis, rowsums, bound, begin, end);
      });
    }
  }

  CandidatePool pool;
  pool.order = n;
  pool.examined = total;
  for (int r : rowsums) pool.by_rowsum[r] = CandidateList{n, r, {}};
  for (const auto& part : parts) {
    for (std::uint64_t mask : part.masks) {
      SymmetricSequence seq = SymmetricSequence::from_mask(n, mask);
      pool.by_rowsum[seq.rowsum()].members.push_back(std::move(seq));
    }
  }
  for (auto& [r, list] : pool.by_rowsum) std::sort(list.members.begin(), list.members.end());

  const std::vector<int> multipliers = unit_multipliers(n);
  for (int r : a_rowsums) {
    CandidateList reps{n, r, {}};
    for (const auto& seq : pool.by_rowsum[r].members) {
      if (!options.prune_automorphisms || is_orbit_minimum(seq, multipliers)) reps.members.push_back(seq);
    }
    pool.a_role[r] = std::move(reps);
  }
  return pool;
}

CompressionLists build_compression_lists(const CandidatePool& pool, const RowsumDecomposition& decomposition,
                                         int factor) {
  const int n = pool.order;
  if ((factor != 2 && factor != 3) || n % factor != 0) {
    throw std::invalid_argument("compression factor must be 2 or 3 and divide the order");
  }
  const int d = n / factor;
  CompressionLists out;
  out.order = n;
  out.factor = factor;
  out.decomposition = decomposition;
  for (std::size_t role = 0; role < 4; ++role) {
    const CandidateList& source = pool.list_for(role, decomposition[role]);
    std::map<CompressedSequence, std::vector<std::uint32_t>> grouped;
    for (std::size_t i = 0; i < source.members.size(); ++i) {
      grouped[compress(source.members[i], d)].push_back(static_cast<std::uint32_t>(i));
    }
    for (auto& [seq, sources] : grouped) out.lists[role].push_back({seq, std::move(sources)});
  }
  return out;
}

}  // namespace williamson
