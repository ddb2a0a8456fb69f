#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jordan/algebra.hpp"

namespace jordan {

/// Index of a carrier element. Indices follow lexicographic coordinate order:
/// index = sum_i c_i * p^(d-1-i).
using CarrierIndex = std::uint32_t;

/// The finite set of elements of an algebra over F_p, with integer-indexed
/// arithmetic. Small carriers (<= kTableLimit elements) precompute the full
/// product table.
class FiniteCarrier {
 public:
  static constexpr std::size_t kTableLimit = 1024;

  /// Throws CarrierInfinite over Q and EnumerationTooLarge above the cap.
  explicit FiniteCarrier(AlgebraPtr algebra, std::size_t cap = kDefaultEnumerationCap);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint32_t modulus() const noexcept { return p_; }

  CarrierIndex encode(const Element& x) const;
  Element decode(CarrierIndex i) const;
  std::uint32_t digit(CarrierIndex i, std::size_t k) const { return digits_[i * dim_ + k]; }

  CarrierIndex add(CarrierIndex a, CarrierIndex b) const;
  CarrierIndex sub(CarrierIndex a, CarrierIndex b) const;
  CarrierIndex neg(CarrierIndex a) const;
  CarrierIndex scale(std::uint32_t c, CarrierIndex a) const;
  CarrierIndex mul(CarrierIndex a, CarrierIndex b) const {
    return table_.empty() ? compute_mul(a, b) : table_[static_cast<std::size_t>(a) * size_ + b];
  }

  /// Elements of the F_p-span of the given vectors, in ascending index order.
  std::vector<CarrierIndex> span_elements(const std::vector<Vector>& basis) const;

 private:
  CarrierIndex compose(const std::uint32_t* digits) const;
  CarrierIndex compute_mul(CarrierIndex a, CarrierIndex b) const;

  AlgebraPtr algebra_;
  std::size_t dim_;
  std::uint32_t p_;
  std::size_t size_;
  std::vector<std::uint32_t> digits_;
  std::vector<std::uint32_t> constants_;  // d^3 residues
  std::vector<CarrierIndex> table_;
};

}  // namespace jordan
