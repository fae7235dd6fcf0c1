#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modflow/graph.hpp"
#include "modflow/mdtree.hpp"
#include "modflow/wide.hpp"

namespace modflow {

/// A solver answer: an exact non-negative integer, or unbounded.
class Value {
 public:
  Value() = default;
  static Value finite(wide_uint v) { return Value(false, v); }
  static Value unbounded() { return Value(true, 0); }

  bool is_unbounded() const noexcept { return unbounded_; }
  bool is_finite() const noexcept { return !unbounded_; }
  wide_uint get() const {
    if (unbounded_) throw std::logic_error("value is unbounded");
    return v_;
  }
  std::string str() const { return unbounded_ ? "inf" : to_string(v_); }

  friend bool operator==(const Value& a, const Value& b) {
    return a.unbounded_ == b.unbounded_ && (a.unbounded_ || a.v_ == b.v_);
  }

 private:
  Value(bool unbounded, wide_uint v) : unbounded_(unbounded), v_(v) {}
  bool unbounded_ = false;
  wide_uint v_ = 0;
};

struct SolveReport {
  std::string problem;
  Value value;
  std::size_t n = 0;
  std::size_t m = 0;
  /// Present when the solver built the whole decomposition tree.
  std::optional<DecompositionStats> tree;
  /// Width of the single decomposition level actually used, when only the root was split.
  std::optional<std::size_t> root_width;
  /// Node count of the reduced flow or cut instance, when one was solved.
  std::optional<std::size_t> kernel_nodes;
  /// Matching edges, or the edges of a minimum cut.
  std::vector<Edge> witness_edges;
  /// One side of a minimum cut, or a minimum separator.
  std::vector<Vertex> witness_vertices;
  std::string note;
  double time_ms = 0;

  std::size_t modular_width() const {
    if (tree) return tree->modular_width;
    if (root_width) return *root_width;
    return 2;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace modflow
