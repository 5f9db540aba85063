#include "bfgslab/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace bfgslab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

double parse_cell(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::runtime_error("malformed CSV number '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  const Index n = trace.dim();
  os << "k";
  for (Index i = 0; i < n; ++i) os << ",x_" << i;
  os << ",f,gnorm,t,evals\n";
  for (const TraceRecord& r : trace.records) {
    os << r.k;
    for (Index i = 0; i < n; ++i) os << ',' << format_double(r.x[i]);
    os << ',' << format_double(r.f) << ','
       << format_double(r.g.size() ? r.g.norm() : 0.0) << ',' << format_double(r.step) << ','
       << r.evals << '\n';
  }
  os << "# status=" << to_string(trace.status) << '\n';
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_trace_csv(os, trace);
}

std::vector<Vector> read_sequence_csv(std::istream& is) {
  std::string line;
  bool have_header = false;
  std::vector<std::pair<int, int>> layout;  // (cell index, coordinate)
  Index dim = 0;
  std::vector<Vector> points;

  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split_row(t);
    if (!have_header) {
      for (std::size_t j = 0; j < cells.size(); ++j) {
        const std::string& name = cells[j];
        if (name.rfind("x_", 0) == 0) {
          std::size_t pos = 0;
          const int coord = std::stoi(name.substr(2), &pos);
          if (pos != name.size() - 2 || coord < 0)
            throw std::runtime_error("malformed coordinate column '" + name + "'");
          layout.emplace_back(static_cast<int>(j), coord);
          dim = std::max<Index>(dim, coord + 1);
        }
      }
      if (layout.empty()) throw std::runtime_error("sequence CSV has no x_* columns");
      have_header = true;
      continue;
    }
    Vector x(dim);
    for (const auto& [cell, coord] : layout) {
      if (cell >= static_cast<int>(cells.size()))
        throw std::runtime_error("sequence CSV row is shorter than its header");
      x[coord] = parse_cell(cells[cell]);
    }
    points.push_back(std::move(x));
  }
  if (!have_header) throw std::runtime_error("sequence CSV is empty");
  return points;
}

std::vector<Vector> read_sequence_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_sequence_csv(is);
}

}  // namespace bfgslab
