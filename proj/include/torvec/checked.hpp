#pragma once

#include <cstdint>
#include <stdexcept>

namespace torvec::checked {

__extension__ using i128 = __int128;

inline auto add(std::int64_t a, std::int64_t b) -> std::int64_t {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
  return r;
}
inline auto sub(std::int64_t a, std::int64_t b) -> std::int64_t {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in subtraction");
  return r;
}
inline auto mul(std::int64_t a, std::int64_t b) -> std::int64_t {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in product");
  return r;
}
inline auto narrow(i128 v) -> std::int64_t {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("int64 overflow");
  return static_cast<std::int64_t>(v);
}
// Floor division, b != 0.
inline auto floor_div(std::int64_t a, std::int64_t b) -> std::int64_t {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

} // namespace torvec::checked
