#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace williamson {

/// Sorted storage for (key, first, second) records used by the matcher.
///
/// Records are appended to an in-memory buffer; once the buffer holds
/// `budget_records` records it is sorted and, if a spill directory is set,
/// written to disk as a run. Spill files hold little-endian int32 values,
/// `key_length` key values followed by the two back-reference indices per
/// record. Runs are merged back in sorted order by KeyStream.
class KeyRuns {
 public:
  KeyRuns(int key_length, std::size_t budget_records, std::filesystem::path spill_dir = {});
  ~KeyRuns();
  KeyRuns(const KeyRuns&) = delete;
  KeyRuns& operator=(const KeyRuns&) = delete;

  int key_length() const noexcept { return key_length_; }
  int stride() const noexcept { return key_length_ + 2; }

  void add(std::span<const std::int32_t> key, std::uint32_t first, std::uint32_t second);
  /// Sorts the pending buffer into a run. Call before reading.
  void seal();
  /// Moves all runs of `other` (which must be sealed) into this set.
  void absorb(KeyRuns& other);

  std::size_t record_count() const noexcept { return record_count_; }
  std::size_t spilled_runs() const noexcept { return spill_files_.size(); }

 private:
  friend class KeyStream;

  void flush_buffer();

  int key_length_;
  std::size_t budget_records_;
  std::filesystem::path spill_dir_;
  std::vector<std::int32_t> buffer_;
  std::vector<std::vector<std::int32_t>> memory_runs_;
  std::vector<std::filesystem::path> spill_files_;
  std::size_t record_count_ = 0;
};

/// Merged, sorted view of every run in a sealed KeyRuns.
class KeyStream {
 public:
  explicit KeyStream(const KeyRuns& runs);
  ~KeyStream();

  /// The current record (key_length + 2 values); empty once exhausted.
  std::span<const std::int32_t> current() const noexcept;
  bool done() const noexcept;
  void advance();

  class Cursor;

 private:
  int stride_;
  std::vector<std::unique_ptr<Cursor>> cursors_;
  std::vector<std::size_t> heap_;
  void sift_down(std::size_t pos);
};

/// Lexicographic comparison of two records' keys (first `key_length` values).
int compare_keys(std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs, int key_length) noexcept;

/// Writes/reads one int32 in little-endian byte order.
void write_le32(std::ostream& out, std::int32_t value);
bool read_le32(std::istream& in, std::int32_t& value);

}  // namespace williamson
