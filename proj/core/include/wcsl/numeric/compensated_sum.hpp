#pragma once

#include <span>

namespace wcsl::numeric {

// Neumaier's variant of Kahan summation: the compensation also captures the
// case where the incoming term is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double value) noexcept;
  CompensatedSum& operator-=(double value) noexcept { return *this += -value; }

  double value() const noexcept { return sum_ + compensation_; }
  operator double() const noexcept { return value(); }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

}  // namespace wcsl::numeric
