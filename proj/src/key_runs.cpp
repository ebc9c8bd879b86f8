#include "williamson/key_runs.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include <unistd.h>

namespace williamson {
namespace {

int compare_records(std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs) noexcept {
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != rhs[i]) return lhs[i] < rhs[i] ? -1 : 1;
  }
  return 0;
}

std::filesystem::path unique_spill_path(const std::filesystem::path& dir) {
  static std::atomic<std::uint64_t> counter{0};
  return dir / ("keys-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".bin");
}

}  // namespace

int compare_keys(std::span<const std::int32_t> lhs, std::span<const std::int32_t> rhs, int key_length) noexcept {
  return compare_records(lhs.first(static_cast<std::size_t>(key_length)),
                         rhs.first(static_cast<std::size_t>(key_length)));
}

void write_le32(std::ostream& out, std::int32_t value) {
  const auto u = static_cast<std::uint32_t>(value);
  const char bytes[4] = {static_cast<char>(u & 0xFF), static_cast<char>((u >> 8) & 0xFF),
                         static_cast<char>((u >> 16) & 0xFF), static_cast<char>((u >> 24) & 0xFF)};
  out.write(bytes, 4);
}

bool read_le32(std::istream& in, std::int32_t& value) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) return false;
  const std::uint32_t u = static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
                          (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
  value = static_cast<std::int32_t>(u);
  return true;
}

KeyRuns::KeyRuns(int key_length, std::size_t budget_records, std::filesystem::path spill_dir)
    : key_length_(key_length), budget_records_(std::max<std::size_t>(budget_records, 1)),
      spill_dir_(std::move(spill_dir)) {
  if (key_length < 1) throw std::invalid_argument("key length must be positive");
}

KeyRuns::~KeyRuns() {
  std::error_code ec;
  for (const auto& path : spill_files_) std::filesystem::remove(path, ec);
}

void KeyRuns::add(std::span<const std::int32_t> key, std::uint32_t first, std::uint32_t second) {
  buffer_.insert(buffer_.end(), key.begin(), key.end());
  buffer_.push_back(static_cast<std::int32_t>(first));
  buffer_.push_back(static_cast<std::int32_t>(second));
  ++record_count_;
  if (buffer_.size() / static_cast<std::size_t>(stride()) >= budget_records_) flush_buffer();
}

void KeyRuns::seal() { flush_buffer(); }

void KeyRuns::flush_buffer() {
  if (buffer_.empty()) return;
  const std::size_t stride_sz = static_cast<std::size_t>(stride());
  const std::size_t count = buffer_.size() / stride_sz;
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0U);
  auto record = [&](std::uint32_t i) { return std::span<const std::int32_t>(buffer_.data() + i * stride_sz, stride_sz); };
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t x, std::uint32_t y) { return compare_records(record(x), record(y)) < 0; });
  std::vector<std::int32_t> sorted;
  sorted.reserve(buffer_.size());
  for (std::uint32_t i : order) {
    auto r = record(i);
    sorted.insert(sorted.end(), r.begin(), r.end());
  }
  buffer_.clear();
  buffer_.shrink_to_fit();

  if (spill_dir_.empty()) {
    memory_runs_.push_back(std::move(sorted));
    return;
  }
  std::filesystem::create_directories(spill_dir_);
  const auto path = unique_spill_path(spill_dir_);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open spill file " + path.string());
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(sorted.data()),
              static_cast<std::streamsize>(sorted.size() * sizeof(std::int32_t)));
  } else {
    for (std::int32_t v : sorted) write_le32(out, v);
  }
  if (!out) throw std::runtime_error("failed writing spill file " + path.string());
  spill_files_.push_back(path);
}

void KeyRuns::absorb(KeyRuns& other) {
  if (other.key_length_ != key_length_) throw std::invalid_argument("key lengths differ");
  other.seal();
  for (auto& run : other.memory_runs_) memory_runs_.push_back(std::move(run));
  for (auto& path : other.spill_files_) spill_files_.push_back(std::move(path));
  record_count_ += other.record_count_;
  other.memory_runs_.clear();
  other.spill_files_.clear();
  other.record_count_ = 0;
}

class KeyStream::Cursor {
 public:
  virtual ~Cursor() = default;
  virtual std::span<const std::int32_t> current() const = 0;
  virtual bool done() const = 0;
  virtual void advance() = 0;
};

namespace {

class MemoryCursor final : public KeyStream::Cursor {
 public:
  MemoryCursor(const std::vector<std::int32_t>& run, std::size_t stride) : run_(run), stride_(stride) {}
  std::span<const std::int32_t> current() const override { return {run_.data() + pos_, stride_}; }
  bool done() const override { return pos_ >= run_.size(); }
  void advance() override { pos_ += stride_; }

 private:
  const std::vector<std::int32_t>& run_;
  std::size_t stride_;
  std::size_t pos_ = 0;
};

class FileCursor final : public KeyStream::Cursor {
 public:
  FileCursor(const std::filesystem::path& path, std::size_t stride) : in_(path, std::ios::binary), stride_(stride) {
    if (!in_) throw std::runtime_error("cannot open spill file " + path.string());
    refill();
  }
  std::span<const std::int32_t> current() const override { return {chunk_.data() + pos_, stride_}; }
  bool done() const override { return pos_ >= chunk_.size(); }
  void advance() override {
    pos_ += stride_;
    if (pos_ >= chunk_.size()) refill();
  }

 private:
  void refill() {
    constexpr std::size_t kRecordsPerChunk = 4096;
    chunk_.clear();
    pos_ = 0;
    std::int32_t v;
    for (std::size_t i = 0; i < kRecordsPerChunk * stride_ && read_le32(in_, v); ++i) chunk_.push_back(v);
    if (chunk_.size() % stride_ != 0) throw std::runtime_error("truncated spill file");
  }

  std::ifstream in_;
  std::size_t stride_;
  std::vector<std::int32_t> chunk_;
  std::size_t pos_ = 0;
};

}  // namespace

KeyStream::KeyStream(const KeyRuns& runs) : stride_(runs.stride()) {
  if (!runs.buffer_.empty()) throw std::logic_error("KeyRuns must be sealed before streaming");
  const auto stride = static_cast<std::size_t>(stride_);
  for (const auto& run : runs.memory_runs_) cursors_.push_back(std::make_unique<MemoryCursor>(run, stride));
  for (const auto& path : runs.spill_files_) cursors_.push_back(std::make_unique<FileCursor>(path, stride));
  for (std::size_t i = 0; i < cursors_.size(); ++i) {
    if (!cursors_[i]->done()) heap_.push_back(i);
  }
  for (std::size_t i = heap_.size(); i-- > 0;) sift_down(i);
}

KeyStream::~KeyStream() = default;

std::span<const std::int32_t> KeyStream::current() const noexcept {
  if (heap_.empty()) return {};
  return cursors_[heap_.front()]->current();
}

bool KeyStream::done() const noexcept { return heap_.empty(); }

void KeyStream::advance() {
  if (heap_.empty()) return;
  Cursor& top = *cursors_[heap_.front()];
  top.advance();
  if (top.done()) {
    heap_.front() = heap_.back();
    heap_.pop_back();
  }
  if (!heap_.empty()) sift_down(0);
}

void KeyStream::sift_down(std::size_t pos) {
  auto less = [&](std::size_t a, std::size_t b) {
    return compare_records(cursors_[heap_[a]]->current(), cursors_[heap_[b]]->current()) < 0;
  };
  for (;;) {
    std::size_t smallest = pos;
    const std::size_t left = 2 * pos + 1;
    const std::size_t right = left + 1;
    if (left < heap_.size() && less(left, smallest)) smallest = left;
    if (right < heap_.size() && less(right, smallest)) smallest = right;
    if (smallest == pos) return;
    std::swap(heap_[pos], heap_[smallest]);
    pos = smallest;
  }
}

}  // namespace williamson
