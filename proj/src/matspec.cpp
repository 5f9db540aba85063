#include "bfgslab/matspec.hpp"

#include <cmath>
#include <stdexcept>

namespace bfgslab {

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    std::size_t pos = 0;
    const double v = std::stod(cur, &pos);
    if (pos != cur.size()) throw std::invalid_argument("malformed number '" + cur + "'");
    if (!std::isfinite(v)) throw std::invalid_argument("nonfinite number in list");
    out.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (cur.empty()) throw std::invalid_argument("trailing comma in number list");
  flush();
  return out;
}

Matrix parse_matrix_spec(const std::string& spec, Index dim) {
  auto check_dim = [dim](Index n) {
    if (dim > 0 && n != dim)
      throw std::invalid_argument("matrix spec dimension " + std::to_string(n) +
                                  " does not match expected " + std::to_string(dim));
    return n;
  };

  if (spec == "identity") {
    if (dim < 1) throw std::invalid_argument("'identity' needs a dimension from context");
    return Matrix::Identity(dim, dim);
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("matrix spec must be identity | diag:... | full:...");
  const std::string kind = spec.substr(0, colon);
  const auto values = parse_number_list(spec.substr(colon + 1));

  if (kind == "diag") {
    const Index n = check_dim(static_cast<Index>(values.size()));
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = values[i];
    return m;
  }
  if (kind == "full") {
    // count = n (n + 1) / 2 entries of the upper triangle
    Index n = 0;
    while (n * (n + 1) / 2 < static_cast<Index>(values.size())) ++n;
    if (n * (n + 1) / 2 != static_cast<Index>(values.size()))
      throw std::invalid_argument("'full' expects n(n+1)/2 upper-triangle entries");
    check_dim(n);
    Matrix m(n, n);
    std::size_t idx = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) {
        m(i, j) = values[idx];
        m(j, i) = values[idx];
        ++idx;
      }
    return m;
  }
  throw std::invalid_argument("unknown matrix spec kind '" + kind + "'");
}

}  // namespace bfgslab
