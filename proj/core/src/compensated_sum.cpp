#include "wcsl/numeric/compensated_sum.hpp"

#include <cmath>

namespace wcsl::numeric {

CompensatedSum& CompensatedSum::operator+=(double value) noexcept {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    compensation_ += (sum_ - t) + value;
  } else {
    compensation_ += (value - t) + sum_;
  }
  sum_ = t;
  return *this;
}

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum acc;
  for (double v : values) acc += v;
  return acc.value();
}

}  // namespace wcsl::numeric
