// Exact elements of (1/2)Z, stored as twice their value in a signed integer.
// Net-local-maxima counts and multiplicities live in this domain; keeping
// them integral makes balance and antisymmetry checks exact.
#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace netcurv {

class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_doubled(std::int64_t d) { return HalfInteger(d); }
  static constexpr HalfInteger whole(std::int64_t n) { return HalfInteger(2 * n); }

  constexpr std::int64_t doubled() const { return doubled_; }
  double value() const { return static_cast<double>(doubled_) / 2.0; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }

  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(doubled_ + o.doubled_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(doubled_ - o.doubled_); }
  constexpr HalfInteger operator-() const { return HalfInteger(-doubled_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    doubled_ += o.doubled_;
    return *this;
  }

  constexpr HalfInteger positive_part() const { return HalfInteger(doubled_ > 0 ? doubled_ : 0); }
  constexpr HalfInteger negative_part() const { return HalfInteger(doubled_ < 0 ? -doubled_ : 0); }

  constexpr auto operator<=>(const HalfInteger&) const = default;

  std::string str() const {
    if (doubled_ % 2 == 0) return std::to_string(doubled_ / 2);
    return std::to_string(doubled_) + "/2";
  }

 private:
  explicit constexpr HalfInteger(std::int64_t d) : doubled_(d) {}
  std::int64_t doubled_ = 0;
};

}  // namespace netcurv
