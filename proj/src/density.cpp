#include "sldiam/density.hpp"

#include <stdexcept>

namespace sldiam {

DensityThreshold density_threshold(std::int64_t n, std::int64_t t, Rational d) {
  if (n < 1) throw std::invalid_argument("density_threshold: n must be positive");
  if (t < 0 || t > n) throw std::invalid_argument("density_threshold: need 0 <= t <= n");
  if (d <= 0) throw std::invalid_argument("density_threshold: d must be positive");
  const Rational one(1);
  const Rational nn(n * n);
  const Rational rest((n - t) * (n - t));
  const Rational eps(t, n);
  return {(one - one / d) * nn + rest / d, (one - (one - eps) * (one - eps)) / d};
}

Rational parse_rational(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      const auto v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(v);
    }
    const auto num = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    const auto den_text = text.substr(slash + 1);
    const auto den = std::stoll(den_text, &used);
    if (used != den_text.size() || den == 0) throw std::invalid_argument(text);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace sldiam
