#include "latpoly/lattice.hpp"

#include <algorithm>
#include <utility>

namespace latpoly {

namespace {

void check_size_cap(long long size, int size_cap) {
  if (size > size_cap) {
    throw ResourceLimitError("lattice size " + std::to_string(size) +
                             " exceeds cap " + std::to_string(size_cap));
  }
}

}  // namespace

LatticePtr BoundedLattice::chain(int size, int size_cap) {
  if (size < 2) throw std::invalid_argument("chain size must be at least 2");
  check_size_cap(size, size_cap);
  auto lat = std::shared_ptr<BoundedLattice>(new BoundedLattice());
  lat->kind_ = LatticeKind::Chain;
  lat->size_ = size;
  lat->compute_cached_properties();
  return lat;
}

LatticePtr BoundedLattice::product(std::vector<int> factors, int size_cap) {
  if (factors.empty()) {
    throw std::invalid_argument("product needs at least one factor");
  }
  long long size = 1;
  for (int k : factors) {
    if (k < 2) throw std::invalid_argument("product factors must be at least 2");
    size *= k;
    check_size_cap(size, size_cap);
  }
  auto lat = std::shared_ptr<BoundedLattice>(new BoundedLattice());
  lat->kind_ = LatticeKind::Product;
  lat->size_ = static_cast<int>(size);
  lat->factors_ = std::move(factors);
  lat->compute_cached_properties();
  return lat;
}

LatticePtr BoundedLattice::from_tables(int size,
                                       std::vector<std::vector<ElemId>> meet,
                                       std::vector<std::vector<ElemId>> join,
                                       int size_cap) {
  if (size < 2) throw std::invalid_argument("table size must be at least 2");
  check_size_cap(size, size_cap);
  auto flatten = [size](const std::vector<std::vector<ElemId>>& rows,
                        const char* name) {
    if (static_cast<int>(rows.size()) != size) {
      throw std::invalid_argument(std::string(name) + " table must have " +
                                  std::to_string(size) + " rows");
    }
    std::vector<ElemId> flat;
    flat.reserve(static_cast<std::size_t>(size) * size);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != size) {
        throw std::invalid_argument(std::string(name) + " table rows must have " +
                                    std::to_string(size) + " entries");
      }
      for (ElemId v : row) {
        if (v < 0 || v >= size) {
          throw std::invalid_argument(std::string(name) +
                                      " table entry out of range");
        }
        flat.push_back(v);
      }
    }
    return flat;
  };
  auto lat = std::shared_ptr<BoundedLattice>(new BoundedLattice());
  lat->kind_ = LatticeKind::Table;
  lat->size_ = size;
  lat->meet_table_ = flatten(meet, "meet");
  lat->join_table_ = flatten(join, "join");
  lat->compute_cached_properties();
  return lat;
}

void BoundedLattice::check_element(ElemId id) const {
  if (id < 0 || id >= size_) {
    throw std::out_of_range("element id " + std::to_string(id) +
                            " out of range for " + describe());
  }
}

ElemId BoundedLattice::meet(ElemId a, ElemId b) const {
  check_element(a);
  check_element(b);
  switch (kind_) {
    case LatticeKind::Chain:
      return std::min(a, b);
    case LatticeKind::Product: {
      ElemId out = 0;
      int stride = 1;
      for (int k : factors_) {
        out += std::min(a % k, b % k) * stride;
        a /= k;
        b /= k;
        stride *= k;
      }
      return out;
    }
    case LatticeKind::Table:
      return meet_table_[static_cast<std::size_t>(a) * size_ + b];
  }
  throw std::logic_error("unreachable");
}

ElemId BoundedLattice::join(ElemId a, ElemId b) const {
  check_element(a);
  check_element(b);
  switch (kind_) {
    case LatticeKind::Chain:
      return std::max(a, b);
    case LatticeKind::Product: {
      ElemId out = 0;
      int stride = 1;
      for (int k : factors_) {
        out += std::max(a % k, b % k) * stride;
        a /= k;
        b /= k;
        stride *= k;
      }
      return out;
    }
    case LatticeKind::Table:
      return join_table_[static_cast<std::size_t>(a) * size_ + b];
  }
  throw std::logic_error("unreachable");
}

ElemId BoundedLattice::bottom() const {
  if (bottom_ < 0) throw std::logic_error("lattice has no bottom element");
  return bottom_;
}

ElemId BoundedLattice::top() const {
  if (top_ < 0) throw std::logic_error("lattice has no top element");
  return top_;
}

const std::vector<int>& BoundedLattice::factors() const {
  if (kind_ != LatticeKind::Product) {
    throw std::logic_error("factors() requires a product lattice");
  }
  return factors_;
}

std::vector<int> BoundedLattice::coordinates(ElemId id) const {
  if (kind_ != LatticeKind::Product) {
    throw std::logic_error("coordinates() requires a product lattice");
  }
  check_element(id);
  std::vector<int> coords;
  coords.reserve(factors_.size());
  for (int k : factors_) {
    coords.push_back(id % k);
    id /= k;
  }
  return coords;
}

ElemId BoundedLattice::element_at(std::span<const int> coords) const {
  if (kind_ != LatticeKind::Product) {
    throw std::logic_error("element_at() requires a product lattice");
  }
  if (coords.size() != factors_.size()) {
    throw std::invalid_argument("coordinate count does not match factor count");
  }
  ElemId out = 0;
  int stride = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= factors_[i]) {
      throw std::out_of_range("coordinate out of range");
    }
    out += coords[i] * stride;
    stride *= factors_[i];
  }
  return out;
}

std::string BoundedLattice::describe() const {
  switch (kind_) {
    case LatticeKind::Chain:
      return "chain(" + std::to_string(size_) + ")";
    case LatticeKind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i > 0) s += "x";
        s += std::to_string(factors_[i]);
      }
      return s + ")";
    }
    case LatticeKind::Table:
      return "table(" + std::to_string(size_) + ")";
  }
  throw std::logic_error("unreachable");
}

bool BoundedLattice::same_structure(const BoundedLattice& other) const {
  if (size_ != other.size_) return false;
  for (ElemId a = 0; a < size_; ++a) {
    for (ElemId b = 0; b < size_; ++b) {
      if (meet(a, b) != other.meet(a, b)) return false;
      if (join(a, b) != other.join(a, b)) return false;
    }
  }
  return true;
}

void BoundedLattice::compute_cached_properties() {
  // Bounds. For chains and products id 0 is all-minimum coordinates and
  // id size-1 all-maximum, but the generic search keeps tables honest.
  bottom_ = -1;
  top_ = -1;
  for (ElemId c = 0; c < size_; ++c) {
    bool is_bottom = true;
    bool is_top = true;
    for (ElemId x = 0; x < size_; ++x) {
      if (meet(c, x) != c) is_bottom = false;
      if (join(c, x) != c) is_top = false;
      if (!is_bottom && !is_top) break;
    }
    if (is_bottom && bottom_ < 0) bottom_ = c;
    if (is_top && top_ < 0) top_ = c;
  }

  is_chain_ = true;
  for (ElemId a = 0; a < size_ && is_chain_; ++a) {
    for (ElemId b = a + 1; b < size_; ++b) {
      if (meet(a, b) != a && meet(a, b) != b) {
        is_chain_ = false;
        break;
      }
    }
  }

  passes_validation_ =
      kind_ == LatticeKind::Table ? validate().ok() : true;
}

ValidationReport BoundedLattice::validate() const {
  ValidationReport report;
  auto violation = [&report](const char* axiom, ElemId a, ElemId b, ElemId c) {
    report.violations.push_back({axiom, {a, b, c}});
  };

  bool idem_meet = true, idem_join = true;
  for (ElemId a = 0; a < size_; ++a) {
    if (idem_meet && meet(a, a) != a) {
      violation("meet-idempotence", a, -1, -1);
      idem_meet = false;
    }
    if (idem_join && join(a, a) != a) {
      violation("join-idempotence", a, -1, -1);
      idem_join = false;
    }
  }

  bool comm_meet = true, comm_join = true, absorb_mj = true, absorb_jm = true;
  for (ElemId a = 0; a < size_; ++a) {
    for (ElemId b = 0; b < size_; ++b) {
      if (comm_meet && meet(a, b) != meet(b, a)) {
        violation("meet-commutativity", a, b, -1);
        comm_meet = false;
      }
      if (comm_join && join(a, b) != join(b, a)) {
        violation("join-commutativity", a, b, -1);
        comm_join = false;
      }
      if (absorb_mj && meet(a, join(a, b)) != a) {
        violation("absorption-meet-join", a, b, -1);
        absorb_mj = false;
      }
      if (absorb_jm && join(a, meet(a, b)) != a) {
        violation("absorption-join-meet", a, b, -1);
        absorb_jm = false;
      }
    }
  }

  bool assoc_meet = true, assoc_join = true, dist_mj = true, dist_jm = true;
  for (ElemId a = 0; a < size_; ++a) {
    for (ElemId b = 0; b < size_; ++b) {
      for (ElemId c = 0; c < size_; ++c) {
        if (assoc_meet && meet(meet(a, b), c) != meet(a, meet(b, c))) {
          violation("meet-associativity", a, b, c);
          assoc_meet = false;
        }
        if (assoc_join && join(join(a, b), c) != join(a, join(b, c))) {
          violation("join-associativity", a, b, c);
          assoc_join = false;
        }
        if (dist_mj && meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) {
          violation("distributivity-meet-over-join", a, b, c);
          dist_mj = false;
        }
        if (dist_jm && join(a, meet(b, c)) != meet(join(a, b), join(a, c))) {
          violation("distributivity-join-over-meet", a, b, c);
          dist_jm = false;
        }
      }
    }
  }

  if (bottom_ < 0) violation("bottom-exists", -1, -1, -1);
  if (top_ < 0) violation("top-exists", -1, -1, -1);

  return report;
}

}  // namespace latpoly
