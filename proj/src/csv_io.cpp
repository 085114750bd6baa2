#include "hdtest/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "hdtest/errors.hpp"

namespace hdtest {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

[[noreturn]] void csv_error(const std::string& what) { throw Error(ErrorCode::Csv, what); }

Eigen::Index resolve_column(const DataMatrix& data, const std::string& selector) {
  const auto it = std::find(data.names.begin(), data.names.end(), selector);
  if (it != data.names.end()) return it - data.names.begin();
  int index = 0;
  const auto [ptr, ec] = std::from_chars(selector.data(), selector.data() + selector.size(), index);
  if (ec == std::errc() && ptr == selector.data() + selector.size() && index >= 1 &&
      index <= data.values.cols()) {
    return index - 1;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown column '" + selector + "'");
}

}  // namespace

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> items;
  if (trim(list).empty()) return items;
  for (auto& cell : split_cells(list)) {
    if (!cell.empty()) items.push_back(cell);
  }
  return items;
}

DataMatrix read_csv(std::istream& in) {
  DataMatrix out;
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    if (first) {
      first = false;
      width = cells.size();
      const bool header = std::none_of(cells.begin(), cells.end(), [](const std::string& c) {
        return parse_number(c).has_value();
      });
      if (header) {
        for (const auto& c : cells) out.names.push_back(unquote(c));
        continue;
      }
    }
    if (cells.size() != width) {
      csv_error("ragged row at row " + std::to_string(line_no) + ": expected " +
                std::to_string(width) + " columns, found " + std::to_string(cells.size()));
    }
    std::vector<double> row(width);
    for (std::size_t j = 0; j < width; ++j) {
      const auto v = parse_number(cells[j]);
      if (!v) {
        csv_error("non-numeric cell at row " + std::to_string(line_no) + " col " +
                  std::to_string(j + 1) + ": '" + cells[j] + "'");
      }
      row[j] = *v;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) csv_error("no data rows");
  out.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return out;
}

DataMatrix read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return read_csv(in);
}

void write_csv(std::ostream& out, const DataMatrix& data) {
  if (!data.names.empty()) {
    for (std::size_t j = 0; j < data.names.size(); ++j) {
      out << (j ? "," : "") << data.names[j];
    }
    out << '\n';
  }
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < data.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.values.cols(); ++j) {
      out << (j ? "," : "") << data.values(i, j);
    }
    out << '\n';
  }
  out.precision(old);
}

RegressionProblem to_regression(const DataMatrix& data, const RegressionLayout& layout) {
  const Eigen::Index y_col = resolve_column(data, layout.response);
  std::vector<bool> used(static_cast<std::size_t>(data.values.cols()), false);
  used[static_cast<std::size_t>(y_col)] = true;
  std::vector<Eigen::Index> a_cols;
  for (const auto& sel : layout.nuisance) {
    const Eigen::Index c = resolve_column(data, sel);
    if (used[static_cast<std::size_t>(c)]) {
      throw Error(ErrorCode::InvalidArgument, "column '" + sel + "' selected twice");
    }
    used[static_cast<std::size_t>(c)] = true;
    a_cols.push_back(c);
  }
  std::vector<Eigen::Index> b_cols;
  for (Eigen::Index c = 0; c < data.values.cols(); ++c) {
    if (!used[static_cast<std::size_t>(c)]) b_cols.push_back(c);
  }
  if (b_cols.empty()) throw Error(ErrorCode::InvalidArgument, "no tested columns remain");
  RegressionProblem problem;
  problem.y = data.values.col(y_col);
  problem.x_a = data.values(Eigen::all, a_cols);
  problem.x_b = data.values(Eigen::all, b_cols);
  return problem;
}

}  // namespace hdtest
