#pragma once

// Fat-node partial persistence. Every field keeps its (version, value)
// history; reads binary-search it, writes append at the open version.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "hpq/errors.hpp"

namespace hpq {

using VersionId = std::uint64_t;

// Reads with this version see the newest value.
inline constexpr VersionId kLatest = std::numeric_limits<VersionId>::max();

class VersionStore {
 public:
  // Opens and returns a fresh version; the first call returns 1.
  VersionId new_version() { return current_ = ++last_; }
  VersionId current() const { return current_; }

  // Every write call, including ones collapsed into an existing entry.
  std::uint64_t write_count() const { return writes_; }
  // Entries actually stored across all histories.
  std::uint64_t history_length() const { return entries_; }

  void require_open() const {
    if (current_ == 0) throw ContractViolation("write with no open version");
  }
  void note_write(bool appended) {
    ++writes_;
    entries_ += appended;
  }

 private:
  VersionId last_ = 0;
  VersionId current_ = 0;
  std::uint64_t writes_ = 0;
  std::uint64_t entries_ = 0;
};

template <class T>
class VersionedCell {
 public:
  VersionedCell() = default;
  explicit VersionedCell(T initial) : initial_(std::move(initial)) {}

  const T& latest() const { return hist_.empty() ? initial_ : hist_.back().second; }

  const T& read(VersionId v) const {
    if (v == kLatest) return latest();
    auto it = std::upper_bound(hist_.begin(), hist_.end(), v,
                               [](VersionId x, const Entry& e) { return x < e.first; });
    return it == hist_.begin() ? initial_ : std::prev(it)->second;
  }

  void write(VersionStore& store, const T& value) {
    store.require_open();
    const VersionId v = store.current();
    if (!hist_.empty() && hist_.back().first == v) {
      hist_.back().second = value;
      store.note_write(false);
      return;
    }
    hist_.emplace_back(v, value);
    store.note_write(true);
  }

  std::size_t history_size() const { return hist_.size(); }
  const auto& history() const { return hist_; }

 private:
  using Entry = std::pair<VersionId, T>;
  T initial_{};
  std::vector<Entry> hist_;
};

}  // namespace hpq
