#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bcl/graph.hpp"

namespace bcl {

/// Assignment of n vertices to labels {0, ..., K-1}.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<std::uint32_t> labels, std::size_t classes);

  std::size_t size() const { return labels_.size(); }
  std::size_t classes() const { return counts_.size(); }
  std::span<const std::uint32_t> labels() const { return labels_; }
  std::uint32_t label(std::size_t i) const { return labels_[i]; }
  std::span<const std::size_t> counts() const { return counts_; }
  /// |Y_k| as a fraction of n.
  double fraction(std::size_t k) const;
  /// Every class nonempty.
  bool proper() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> counts_;
};

class ObjectiveKind {
 public:
  enum class Kind { CheegerTwoWay, RatioTwoWay, RatioMultiway };

  static ObjectiveKind cheeger() { return ObjectiveKind(Kind::CheegerTwoWay, 2); }
  static ObjectiveKind ratio() { return ObjectiveKind(Kind::RatioTwoWay, 2); }
  static ObjectiveKind multiway(std::size_t classes);
  /// "cheeger", "ratio" or "multiway:K".
  static ObjectiveKind parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::size_t classes() const { return classes_; }
  bool two_way() const { return kind_ != Kind::RatioMultiway; }
  std::string label() const;

  /// Objective from per-class cuts and counts; cut_by_class[k] = Cut(Y_k, Y_k^c).
  double evaluate(std::span<const double> cut_by_class, std::span<const std::size_t> counts,
                  std::size_t n) const;

  friend bool operator==(const ObjectiveKind&, const ObjectiveKind&) = default;

 private:
  ObjectiveKind(Kind kind, std::size_t classes) : kind_(kind), classes_(classes) {}
  Kind kind_;
  std::size_t classes_;
};

struct CutResult {
  /// Total weight of edges joining different classes, each edge once.
  double raw_cut = 0.0;
  /// Two-way: Bal(Y, Y^c). Multiway: raw_cut / objective (effective balance).
  double balance = 0.0;
  double objective = 0.0;
  /// objective / (n^2 eps^(d+1)).
  double rescaled_constant = 0.0;
};

/// Cut(Y_k, Y_k^c): weight of edges with exactly one endpoint labelled k.
double cut_value(const GeometricGraph& graph, const Partition& partition, std::size_t k);

/// Cut(Y_k, Y_k^c) for all k at once.
std::vector<double> cuts_by_class(const GeometricGraph& graph, const Partition& partition);

/// Ratio: 2|Y||Y^c|; Cheeger: min(|Y|, |Y^c|), with Y = class 0.
double balance_two_way(const Partition& partition, const ObjectiveKind& kind);

CutResult objective(const GeometricGraph& graph, const Partition& partition, const ObjectiveKind& kind);

double graph_total_variation(const GeometricGraph& graph, std::span<const double> u);

/// (1/n) sum |u_i - mean(u)|.
double ratio_balance_of(std::span<const double> u);
/// min_c (1/n) sum |u_i - c|, attained at the lower median.
double cheeger_balance_of(std::span<const double> u);
/// Lower median of u.
double lower_median(std::span<const double> u);

/// 1_Y / B_n(1_Y) with Y = class 0.
std::vector<double> normalized_indicator(const Partition& partition, const ObjectiveKind& kind);

std::vector<double> indicator_of(const Partition& partition, std::size_t k);

}  // namespace bcl
