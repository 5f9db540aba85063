#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bfgslab/bfgs.hpp"
#include "bfgslab/types.hpp"

namespace bfgslab {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Trace CSV: header `k,x_0..x_{n-1},f,gnorm,t,evals`, one row per iterate,
/// and a trailing `# status=<reason>` comment line.
void write_trace_csv(std::ostream& os, const Trace& trace);
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);

/// Reads the x_* columns of a trace-schema CSV; other columns, blank lines
/// and `#` comments are ignored.
std::vector<Vector> read_sequence_csv(std::istream& is);
std::vector<Vector> read_sequence_csv(const std::filesystem::path& path);

}  // namespace bfgslab
