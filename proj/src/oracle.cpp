#include "williamson/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "williamson/seqcore.hpp"

namespace williamson {
namespace {

void check_budget(int n) {
  if (n < 1 || n > kOracleMaxOrder) {
    throw std::invalid_argument("oracle order " + std::to_string(n) + " outside 1.." +
                                std::to_string(kOracleMaxOrder));
  }
}

std::vector<SymmetricSequence> all_symmetric(int n) {
  std::vector<SymmetricSequence> out;
  const std::uint64_t count = std::uint64_t{1} << (n / 2 + 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) out.push_back(SymmetricSequence::from_mask(n, mask));
  return out;
}

// PAF at shifts 1..n/2.
std::vector<int> paf_tail(const SymmetricSequence& s) {
  const Eigen::VectorXi p = paf(s);
  return {p.data() + 1, p.data() + 1 + s.order() / 2};
}

}  // namespace

std::vector<Quadruple> brute_force_enumerate(int n, int workers) {
  check_budget(n);
  const auto seqs = all_symmetric(n);
  std::vector<std::vector<int>> pafs;
  std::map<std::vector<int>, std::vector<std::size_t>> by_paf;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    pafs.push_back(paf_tail(seqs[i]));
    by_paf[pafs.back()].push_back(i);
  }
  const std::size_t shifts = static_cast<std::size_t>(n / 2);
  std::vector<Quadruple> out;
  std::mutex out_mutex;
  auto work = [&](std::size_t first) {
    const std::size_t stride = static_cast<std::size_t>(std::max(workers, 1));
    std::vector<Quadruple> local;
    std::vector<int> need(shifts);
    for (std::size_t a = first; a < seqs.size(); a += stride) {
      for (std::size_t b = 0; b < seqs.size(); ++b) {
        for (std::size_t c = 0; c < seqs.size(); ++c) {
          for (std::size_t s = 0; s < shifts; ++s) need[s] = -(pafs[a][s] + pafs[b][s] + pafs[c][s]);
          auto it = by_paf.find(need);
          if (it == by_paf.end()) continue;
          for (std::size_t d : it->second) local.emplace_back(seqs[a], seqs[b], seqs[c], seqs[d]);
        }
      }
    }
    std::lock_guard lock(out_mutex);
    out.insert(out.end(), local.begin(), local.end());
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work, static_cast<std::size_t>(w));
    work(0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Quadruple> brute_force_uncompress(const MatchedCompression& mc, int n) {
  check_budget(n);
  const auto seqs = all_symmetric(n);
  std::array<std::vector<SymmetricSequence>, 4> preimages;
  for (std::size_t r = 0; r < 4; ++r) {
    const auto& target = mc.members[r];
    if (target.length() == 0 || n % target.length() != 0 || target.order() != n) return {};
    for (const auto& s : seqs) {
      if (compress(s, target.length()) == target) preimages[r].push_back(s);
    }
  }
  std::vector<Quadruple> out;
  for (const auto& a : preimages[0]) {
    for (const auto& b : preimages[1]) {
      for (const auto& c : preimages[2]) {
        for (const auto& d : preimages[3]) {
          Quadruple q(a, b, c, d);
          if (verify_williamson(q)) out.push_back(std::move(q));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace williamson
