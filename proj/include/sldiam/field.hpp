#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>

namespace sldiam {

/// Prime modulus p of the field F_p. Only primes below 2^31 are accepted so a
/// product of two residues fits in 64 bits.
class FieldModulus {
 public:
  explicit FieldModulus(std::uint32_t p);

  [[nodiscard]] std::uint32_t value() const noexcept { return p_; }

  [[nodiscard]] std::uint32_t reduce(std::int64_t x) const noexcept {
    auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  [[nodiscard]] std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  [[nodiscard]] std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  [[nodiscard]] std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  [[nodiscard]] std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  [[nodiscard]] std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; throws std::domain_error for 0.
  [[nodiscard]] std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const FieldModulus&, const FieldModulus&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A single element of F_p, kept as its canonical residue.
class GFScalar {
 public:
  GFScalar(FieldModulus mod, std::int64_t value) : mod_(mod), value_(mod.reduce(value)) {}

  [[nodiscard]] std::uint32_t value() const noexcept { return value_; }
  [[nodiscard]] FieldModulus modulus() const noexcept { return mod_; }
  [[nodiscard]] bool is_zero() const noexcept { return value_ == 0; }
  [[nodiscard]] GFScalar inverse() const { return {mod_, mod_.inv(value_)}; }

  friend GFScalar operator+(GFScalar a, GFScalar b) { return {a.checked(b), a.mod_.add(a.value_, b.value_)}; }
  friend GFScalar operator-(GFScalar a, GFScalar b) { return {a.checked(b), a.mod_.sub(a.value_, b.value_)}; }
  friend GFScalar operator*(GFScalar a, GFScalar b) { return {a.checked(b), a.mod_.mul(a.value_, b.value_)}; }
  friend GFScalar operator/(GFScalar a, GFScalar b) { return a * b.inverse(); }
  GFScalar operator-() const { return {mod_, mod_.neg(value_)}; }

  friend bool operator==(const GFScalar&, const GFScalar&) = default;

 private:
  FieldModulus checked(const GFScalar& other) const {
    if (!(mod_ == other.mod_)) throw std::invalid_argument("GFScalar: modulus mismatch");
    return mod_;
  }

  FieldModulus mod_;
  std::uint32_t value_;
};

std::ostream& operator<<(std::ostream& os, const GFScalar& s);

}  // namespace sldiam
