#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcl/error.hpp"
#include "bcl/experiments.hpp"

namespace bcl {

/// A referenced column is absent from the input table.
class MissingColumn : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Comma-separated table with a header row. Lines of the form `#key value`
/// before the header are kept as metadata.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> meta;

  std::optional<std::size_t> column(const std::string& name) const;
  /// Values of a column parsed as doubles ("nan" allowed). Throws MissingColumn.
  std::vector<double> numbers(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

enum class PlotKind { LogLogError, DegreeRegularity, GiantFraction, PartitionScatter };

/// "loglog", "degree", "giant" or "scatter".
PlotKind parse_plot_kind(const std::string& text);

struct PlotSpec {
  PlotKind kind = PlotKind::LogLogError;
  std::string input;
  std::string output;
};

struct Plot {
  std::string svg;
  /// Least-squares fit drawn on a LogLogError plot.
  std::optional<LineFit> fit;
};

/// Renders a standalone SVG document. The summary CSV feeds LogLogError,
/// DegreeRegularity and GiantFraction; PartitionScatter reads the partition
/// CSV written by `bcl solve` (columns x,y,label; `#domain` and `#cut` metadata).
Plot render_plot(PlotKind kind, const CsvTable& table);

}  // namespace bcl
