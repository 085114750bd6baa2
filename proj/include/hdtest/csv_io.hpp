#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdtest/regression.hpp"

namespace hdtest {

/// Rows are observations. `names` is empty when the file has no header.
struct DataMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> names;
};

/// Comma-separated numbers with an optional header row. The first row is a
/// header when none of its cells parses as a number. Errors name the 1-based
/// file line and column.
DataMatrix read_csv(std::istream& in);
DataMatrix read_csv_file(const std::string& path);

/// Writes the header (if any) and values with 17 significant digits.
void write_csv(std::ostream& out, const DataMatrix& data);

/// Column selector: a header name or a 1-based index.
struct RegressionLayout {
  std::string response;
  std::vector<std::string> nuisance;
};

/// Splits columns into y (response), X_a (nuisance, in the order given) and
/// X_b (all remaining columns in file order).
RegressionProblem to_regression(const DataMatrix& data, const RegressionLayout& layout);

/// Splits "a,b,c" on commas, trimming blanks; empty input gives no items.
std::vector<std::string> split_list(const std::string& list);

}  // namespace hdtest
