#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "curvedet/image.hpp"

namespace curvedet {

enum class RmqBackend { Sparse, SegTree };

std::string_view to_string(RmqBackend backend);
RmqBackend parse_rmq_backend(std::string_view name);

struct RangeMax {
  Pixel value = 0;
  int index = 0;
  bool operator==(const RangeMax&) const = default;
};

// Sparse table of interval argmaxes. O(n log n) build, O(1) query.
class SparseTable {
 public:
  void assign(std::span<const Pixel> values);
  RangeMax query(int lo, int hi) const;
  int size() const { return static_cast<int>(values_.size()); }

 private:
  std::vector<Pixel> values_;
  // levels_[j * n + i] is the argmax of [i, i + 2^j).
  std::vector<std::int32_t> levels_;
};

// Bottom-up segment tree over N = 2^ceil(log2 n) leaves. Padding leaves hold
// no index and lose every comparison. O(n) build, O(log n) query.
class SegmentTree {
 public:
  void assign(std::span<const Pixel> values);
  RangeMax query(int lo, int hi) const;
  int size() const { return static_cast<int>(values_.size()); }

 private:
  int better(int a, int b) const;

  std::vector<Pixel> values_;
  int leaves_ = 0;
  std::vector<std::int32_t> tree_;
};

// Range maximum over an immutable sequence. Queries are inclusive on both
// ends and return the smallest index attaining the maximum.
class RmqIndex {
 public:
  RmqIndex() = default;
  RmqIndex(std::span<const Pixel> values, RmqBackend backend);

  // Rebuilds over new values, reusing storage.
  void assign(std::span<const Pixel> values);

  RangeMax query(int lo, int hi) const;
  int size() const;
  RmqBackend backend() const;

 private:
  std::variant<SparseTable, SegmentTree> impl_;
};

RmqIndex rmq_build(std::span<const Pixel> values, RmqBackend backend);
RangeMax rmq_query(const RmqIndex& index, int lo, int hi);

}  // namespace curvedet
