#include "curvedet/rmq.hpp"

#include <bit>
#include <string>

#include "curvedet/error.hpp"

namespace curvedet {

namespace {

int floor_log2(unsigned n) { return std::bit_width(n) - 1; }

void check_range(int lo, int hi, int n) {
  if (lo < 0 || lo > hi || hi >= n) {
    throw InvalidParameter("range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] invalid for " + std::to_string(n) + " elements");
  }
}

}  // namespace

std::string_view to_string(RmqBackend backend) {
  return backend == RmqBackend::Sparse ? "sparse" : "segtree";
}

RmqBackend parse_rmq_backend(std::string_view name) {
  if (name == "sparse") return RmqBackend::Sparse;
  if (name == "segtree") return RmqBackend::SegTree;
  throw InvalidParameter("unknown RMQ backend '" + std::string(name) + "'");
}

void SparseTable::assign(std::span<const Pixel> values) {
  values_.assign(values.begin(), values.end());
  const int n = static_cast<int>(values_.size());
  const int levels = floor_log2(static_cast<unsigned>(n)) + 1;
  levels_.resize(static_cast<std::size_t>(levels) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) levels_[static_cast<std::size_t>(i)] = i;
  for (int j = 1; j < levels; ++j) {
    const std::int32_t* prev = levels_.data() + static_cast<std::size_t>(j - 1) * n;
    std::int32_t* cur = levels_.data() + static_cast<std::size_t>(j) * n;
    const int half = 1 << (j - 1);
    const int last = n - (1 << j);
    for (int i = 0; i <= last; ++i) {
      const std::int32_t a = prev[i];
      const std::int32_t b = prev[i + half];
      cur[i] = values_[static_cast<std::size_t>(b)] > values_[static_cast<std::size_t>(a)] ? b : a;
    }
  }
}

RangeMax SparseTable::query(int lo, int hi) const {
  const int n = size();
  const int j = floor_log2(static_cast<unsigned>(hi - lo + 1));
  const std::int32_t* level = levels_.data() + static_cast<std::size_t>(j) * n;
  const std::int32_t a = level[lo];
  const std::int32_t b = level[hi - (1 << j) + 1];
  // a precedes b; an equal value at b implies b is not smaller than a.
  const std::int32_t best =
      values_[static_cast<std::size_t>(b)] > values_[static_cast<std::size_t>(a)] ? b : a;
  return {values_[static_cast<std::size_t>(best)], best};
}

int SegmentTree::better(int a, int b) const {
  if (a < 0) return b;
  if (b < 0) return a;
  const Pixel va = values_[static_cast<std::size_t>(a)];
  const Pixel vb = values_[static_cast<std::size_t>(b)];
  if (va != vb) return va > vb ? a : b;
  return a < b ? a : b;
}

void SegmentTree::assign(std::span<const Pixel> values) {
  values_.assign(values.begin(), values.end());
  const int n = static_cast<int>(values_.size());
  leaves_ = static_cast<int>(std::bit_ceil(static_cast<unsigned>(n)));
  tree_.assign(static_cast<std::size_t>(2 * leaves_), -1);
  for (int i = 0; i < n; ++i) tree_[static_cast<std::size_t>(leaves_ + i)] = i;
  for (int node = leaves_ - 1; node >= 1; --node) {
    tree_[static_cast<std::size_t>(node)] =
        better(tree_[static_cast<std::size_t>(2 * node)], tree_[static_cast<std::size_t>(2 * node + 1)]);
  }
}

RangeMax SegmentTree::query(int lo, int hi) const {
  int best = -1;
  int l = lo + leaves_;
  int r = hi + leaves_ + 1;
  while (l < r) {
    if (l & 1) best = better(best, tree_[static_cast<std::size_t>(l++)]);
    if (r & 1) best = better(best, tree_[static_cast<std::size_t>(--r)]);
    l >>= 1;
    r >>= 1;
  }
  return {values_[static_cast<std::size_t>(best)], best};
}

RmqIndex::RmqIndex(std::span<const Pixel> values, RmqBackend backend) {
  if (backend == RmqBackend::SegTree) impl_.emplace<SegmentTree>();
  assign(values);
}

void RmqIndex::assign(std::span<const Pixel> values) {
  if (values.empty()) throw InvalidParameter("range maximum index needs at least one value");
  std::visit([&](auto& impl) { impl.assign(values); }, impl_);
}

RangeMax RmqIndex::query(int lo, int hi) const {
  return std::visit(
      [&](const auto& impl) {
        check_range(lo, hi, impl.size());
        return impl.query(lo, hi);
      },
      impl_);
}

int RmqIndex::size() const {
  return std::visit([](const auto& impl) { return impl.size(); }, impl_);
}

RmqBackend RmqIndex::backend() const {
  return std::holds_alternative<SparseTable>(impl_) ? RmqBackend::Sparse : RmqBackend::SegTree;
}

RmqIndex rmq_build(std::span<const Pixel> values, RmqBackend backend) {
  return RmqIndex(values, backend);
}

RangeMax rmq_query(const RmqIndex& index, int lo, int hi) { return index.query(lo, hi); }

}  // namespace curvedet
