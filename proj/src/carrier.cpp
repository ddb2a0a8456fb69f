#include "jordan/carrier.hpp"

#include <algorithm>

#include "jordan/error.hpp"

namespace jordan {

FiniteCarrier::FiniteCarrier(AlgebraPtr algebra, std::size_t cap) : algebra_(std::move(algebra)) {
  const auto size = algebra_->carrier_size();
  if (algebra_->field().is_rational()) {
    throw Error(ErrorCode::CarrierInfinite, "algebra '" + algebra_->name() + "' is over Q");
  }
  if (!size || *size > cap) {
    throw Error(ErrorCode::EnumerationTooLarge, "carrier of '" + algebra_->name() + "' exceeds the enumeration cap");
  }
  dim_ = algebra_->dim();
  if (dim_ > 16) throw Error(ErrorCode::EnumerationTooLarge, "carrier indexing supports dim <= 16");
  p_ = algebra_->field().modulus();
  size_ = *size;

  digits_.assign(size_ * dim_, 0);
  for (std::size_t n = 0; n < size_; ++n) {
    std::size_t v = n;
    for (std::size_t k = dim_; k-- > 0;) {
      digits_[n * dim_ + k] = static_cast<std::uint32_t>(v % p_);
      v /= p_;
    }
  }
  constants_.resize(dim_ * dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        constants_[(i * dim_ + j) * dim_ + k] = algebra_->constant(i, j, k).residue();

  if (size_ <= kTableLimit) {
    table_.resize(size_ * size_);
    for (std::size_t a = 0; a < size_; ++a)
      for (std::size_t b = 0; b < size_; ++b)
        table_[a * size_ + b] = compute_mul(static_cast<CarrierIndex>(a), static_cast<CarrierIndex>(b));
  }
}

CarrierIndex FiniteCarrier::compose(const std::uint32_t* digits) const {
  std::size_t v = 0;
  for (std::size_t k = 0; k < dim_; ++k) v = v * p_ + digits[k];
  return static_cast<CarrierIndex>(v);
}

CarrierIndex FiniteCarrier::encode(const Element& x) const {
  require_same_algebra(*algebra_, *x.algebra());
  std::vector<std::uint32_t> d(dim_);
  for (std::size_t k = 0; k < dim_; ++k) d[k] = x[k].residue();
  return compose(d.data());
}

Element FiniteCarrier::decode(CarrierIndex i) const {
  Vector coords;
  coords.reserve(dim_);
  for (std::size_t k = 0; k < dim_; ++k) coords.push_back(algebra_->field().from_int(digit(i, k)));
  return algebra_->element(std::move(coords));
}

CarrierIndex FiniteCarrier::add(CarrierIndex a, CarrierIndex b) const {
  std::uint32_t d[16];
  for (std::size_t k = 0; k < dim_; ++k) d[k] = (digit(a, k) + digit(b, k)) % p_;
  return compose(d);
}

CarrierIndex FiniteCarrier::neg(CarrierIndex a) const {
  std::uint32_t d[16];
  for (std::size_t k = 0; k < dim_; ++k) d[k] = (p_ - digit(a, k)) % p_;
  return compose(d);
}

CarrierIndex FiniteCarrier::sub(CarrierIndex a, CarrierIndex b) const { return add(a, neg(b)); }

CarrierIndex FiniteCarrier::scale(std::uint32_t c, CarrierIndex a) const {
  std::uint32_t d[16];
  for (std::size_t k = 0; k < dim_; ++k) d[k] = static_cast<std::uint32_t>(std::uint64_t{c % p_} * digit(a, k) % p_);
  return compose(d);
}

CarrierIndex FiniteCarrier::compute_mul(CarrierIndex a, CarrierIndex b) const {
  std::uint64_t acc[16] = {};
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::uint64_t x = digit(a, i);
    if (!x) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const std::uint64_t xy = x * digit(b, j) % p_;
      if (!xy) continue;
      const std::uint32_t* c = &constants_[(i * dim_ + j) * dim_];
      for (std::size_t k = 0; k < dim_; ++k) acc[k] = (acc[k] + xy * c[k]) % p_;
    }
  }
  std::uint32_t d[16];
  for (std::size_t k = 0; k < dim_; ++k) d[k] = static_cast<std::uint32_t>(acc[k]);
  return compose(d);
}

std::vector<CarrierIndex> FiniteCarrier::span_elements(const std::vector<Vector>& basis) const {
  std::vector<CarrierIndex> gens;
  for (const auto& v : basis) gens.push_back(encode(algebra_->element(v)));
  std::vector<CarrierIndex> out{compose(std::vector<std::uint32_t>(dim_, 0).data())};
  for (CarrierIndex g : gens) {
    const std::size_t n = out.size();
    for (std::uint32_t c = 1; c < p_; ++c)
      for (std::size_t t = 0; t < n; ++t) out.push_back(add(out[t], scale(c, g)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace jordan
