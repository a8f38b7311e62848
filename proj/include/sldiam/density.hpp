#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace sldiam {

using Rational = boost::rational<std::int64_t>;

/// Sufficient size condition for A to contain a block SL_{n-t} subgroup in
/// A^4, given the density exponent d: |A| >= q^exponent, with
///   exponent = (1 - 1/d) n^2 + (1/d) (n - t)^2
///   c_eps    = (1 - (1 - t/n)^2) / d.
struct DensityThreshold {
  Rational exponent;
  Rational c_eps;
};

DensityThreshold density_threshold(std::int64_t n, std::int64_t t, Rational d);

/// Parses "7", "-3" or "5/9".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

}  // namespace sldiam
