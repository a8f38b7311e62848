#include "sldiam/field.hpp"

#include <ostream>
#include <string>

namespace sldiam {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldModulus::FieldModulus(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31)) throw std::invalid_argument("FieldModulus: p must be below 2^31");
  if (!is_prime(p)) throw std::invalid_argument("FieldModulus: " + std::to_string(p) + " is not prime");
}

std::uint32_t FieldModulus::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % p_;
  std::uint32_t base = a % p_;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t FieldModulus::inv(std::uint32_t a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("FieldModulus: zero has no inverse");
  return pow(a, p_ - 2);
}

std::ostream& operator<<(std::ostream& os, const GFScalar& s) { return os << s.value(); }

}  // namespace sldiam
