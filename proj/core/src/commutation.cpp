#include "latpoly/commutation.hpp"

#include <string>

namespace latpoly {

namespace {

// domain^exponent, or nullopt on overflow past limit.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, int exponent,
                                         std::uint64_t limit) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > limit / base) return std::nullopt;
    out *= base;
  }
  return out;
}

std::uint64_t table_size_or_throw(int domain_size, int arity,
                                  std::uint64_t cap, const char* what) {
  if (domain_size < 1) throw std::invalid_argument("domain size must be positive");
  if (arity < 1 || arity > kMaxArity) {
    throw std::invalid_argument("arity must be in 1..16");
  }
  auto size = checked_pow(domain_size, arity, cap);
  if (!size) {
    throw ResourceLimitError(std::string(what) + " would exceed the evaluation cap of " +
                             std::to_string(cap) + " entries");
  }
  return *size;
}

}  // namespace

OperationTable::OperationTable(int domain_size, int arity,
                               std::vector<ElemId> values)
    : domain_size_(domain_size), arity_(arity), values_(std::move(values)) {
  const std::uint64_t expected = table_size_or_throw(
      domain_size_, arity_, std::uint64_t{1} << 62, "operation table");
  if (values_.size() != expected) {
    throw std::invalid_argument("operation table has the wrong number of entries");
  }
  for (ElemId v : values_) {
    if (v < 0 || v >= domain_size_) {
      throw std::invalid_argument("operation table value out of the domain");
    }
  }
}

std::size_t OperationTable::index_of(std::span<const ElemId> args) const {
  if (static_cast<int>(args.size()) != arity_) {
    throw std::invalid_argument("argument tuple has the wrong arity");
  }
  std::size_t idx = 0;
  for (ElemId a : args) {
    if (a < 0 || a >= domain_size_) {
      throw std::invalid_argument("argument out of the domain");
    }
    idx = idx * domain_size_ + a;
  }
  return idx;
}

OperationTable table_of(const DnfPolynomial& p, std::uint64_t evaluation_cap) {
  const int s = p.lattice().size();
  const int n = p.arity();
  const std::uint64_t total =
      table_size_or_throw(s, n, evaluation_cap, "tabulation");
  std::vector<ElemId> values;
  values.reserve(total);
  std::vector<ElemId> point(n, 0);
  for (std::uint64_t step = 0;; ++step) {
    values.push_back(p.eval(point));
    int pos = n - 1;
    while (pos >= 0 && point[pos] == s - 1) point[pos--] = 0;
    if (pos < 0) break;
    ++point[pos];
  }
  return OperationTable(s, n, std::move(values));
}

std::optional<CommutationWitness> commute(const OperationTable& f,
                                          const OperationTable& g,
                                          std::uint64_t evaluation_cap) {
  if (f.domain_size() != g.domain_size()) {
    throw std::invalid_argument("operations live on different domains");
  }
  const int s = f.domain_size();
  const int n = f.arity();
  const int m = g.arity();
  if (!checked_pow(s, n * m, evaluation_cap)) {
    throw ResourceLimitError("commutation scan of " + std::to_string(s) + "^" +
                             std::to_string(n * m) +
                             " matrices would exceed the evaluation cap of " +
                             std::to_string(evaluation_cap));
  }

  // Matrix entries in row-major order; entry (i,j) is digit i*m+j. Row and
  // column table indices are maintained incrementally: the last digit is the
  // least significant of both row n-1 and column m-1.
  std::vector<ElemId> a(static_cast<std::size_t>(n) * m, 0);
  std::vector<std::size_t> row_idx(n, 0), col_idx(m, 0);
  std::vector<ElemId> row_val(n), col_val(m);
  const auto& fv = f.values();
  const auto& gv = g.values();

  auto recompute_row = [&](int i) {
    std::size_t idx = 0;
    for (int j = 0; j < m; ++j) idx = idx * s + a[static_cast<std::size_t>(i) * m + j];
    row_idx[i] = idx;
    row_val[i] = gv[idx];
  };
  auto recompute_col = [&](int j) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * s + a[static_cast<std::size_t>(i) * m + j];
    col_idx[j] = idx;
    col_val[j] = fv[idx];
  };
  for (int i = 0; i < n; ++i) recompute_row(i);
  for (int j = 0; j < m; ++j) recompute_col(j);

  for (;;) {
    std::size_t fi = 0;
    for (int i = 0; i < n; ++i) fi = fi * s + row_val[i];
    std::size_t gi = 0;
    for (int j = 0; j < m; ++j) gi = gi * s + col_val[j];
    const ElemId row_first = fv[fi];
    const ElemId column_first = gv[gi];
    if (row_first != column_first) {
      return CommutationWitness{n, m, a, row_first, column_first};
    }

    int pos = n * m - 1;
    while (pos >= 0 && a[pos] == s - 1) a[pos--] = 0;
    if (pos < 0) return std::nullopt;
    ++a[pos];
    if (pos == n * m - 1) {
      // Fast path: only the least significant digit moved.
      row_idx[n - 1] += 1;
      row_val[n - 1] = gv[row_idx[n - 1]];
      col_idx[m - 1] += 1;
      col_val[m - 1] = fv[col_idx[m - 1]];
    } else {
      for (int i = pos / m; i < n; ++i) recompute_row(i);
      for (int j = 0; j < m; ++j) recompute_col(j);
    }
  }
}

std::pair<ElemId, ElemId> replay_witness(const OperationTable& f,
                                         const OperationTable& g,
                                         const CommutationWitness& witness) {
  const int n = witness.rows;
  const int m = witness.cols;
  if (n != f.arity() || m != g.arity() ||
      witness.entries.size() != static_cast<std::size_t>(n) * m) {
    throw std::invalid_argument("witness shape does not match the operations");
  }
  std::vector<ElemId> row_images(n), col_images(m);
  for (int i = 0; i < n; ++i) {
    row_images[i] = g(std::span(witness.entries).subspan(
        static_cast<std::size_t>(i) * m, m));
  }
  std::vector<ElemId> column(n);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) column[i] = witness.entries[static_cast<std::size_t>(i) * m + j];
    col_images[j] = f(column);
  }
  return {f(row_images), g(col_images)};
}

std::optional<FamilyFailure> strongly_bisymmetric(
    std::span<const OperationTable> family, std::uint64_t evaluation_cap) {
  if (family.empty()) {
    throw std::invalid_argument("family must not be empty");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (auto witness = commute(family[i], family[j], evaluation_cap)) {
        return FamilyFailure{i + 1, j + 1, std::move(*witness)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace latpoly
