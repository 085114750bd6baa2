#pragma once

#include <iosfwd>
#include <string>

#include "hdtest/errors.hpp"
#include "hdtest/simlab.hpp"

namespace hdtest::cli {

/// Runs one subcommand. Returns 0 on success, 1 on a validation error and 2 on
/// numerical degeneracy; failures also write one JSON line to `err`.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err);

/// {"error": <code>, "kind": "validation"|"numerical", "message": ...}
std::string error_record(ErrorCode code, const std::string& message);

/// Experiment for one published table cell, e.g. table "1" with cell
/// "I,normal,n=100,p=200". Tokens without '=' are scenario then innovation;
/// keyed tokens set n, n2, p and q.
SimConfig table_cell_config(const std::string& table, const std::string& cell);

}  // namespace hdtest::cli
