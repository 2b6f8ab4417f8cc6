#include "pdorbit/uinorms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace pdorbit {

NormSpec NormSpec::schatten(double p) {
  if (std::isnan(p) || p < 1.0)
    throw ValidationError("schatten norm requires p >= 1, got " + std::to_string(p));
  if (std::isinf(p)) return spectral();
  return NormSpec(Kind::schatten, p, 0);
}

NormSpec NormSpec::kyfan(std::size_t k) {
  if (k < 1) throw ValidationError("kyfan norm requires k >= 1");
  return NormSpec(Kind::kyfan, 0.0, k);
}

NormSpec NormSpec::parse(std::string_view spec) {
  if (spec == "spectral") return spectral();
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : spec.substr(colon + 1);
  if (head == "schatten") {
    if (arg == "inf") return spectral();
    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      throw ValidationError("cannot parse schatten order in norm spec '" + std::string(spec) + "'");
    return schatten(p);
  }
  if (head == "kyfan") {
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      throw ValidationError("cannot parse kyfan order in norm spec '" + std::string(spec) + "'");
    return kyfan(k);
  }
  throw ValidationError("unknown norm spec '" + std::string(spec) +
                        "'; expected schatten:p, kyfan:k, or spectral");
}

std::string NormSpec::label() const {
  switch (kind_) {
    case Kind::spectral: return "spectral";
    case Kind::kyfan: return "kyfan:" + std::to_string(k_);
    case Kind::schatten: {
      // integral orders print without a decimal tail
      if (p_ == std::floor(p_) && p_ < 1e15)
        return "schatten:" + std::to_string(static_cast<long long>(p_));
      return "schatten:" + std::to_string(p_);
    }
  }
  return "?";
}

double vector_norm(const NormSpec& n, std::span<const double> x) {
  switch (n.kind()) {
    case NormSpec::Kind::spectral: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
    case NormSpec::Kind::kyfan: {
      if (n.k() > x.size())
        throw ValidationError("kyfan:" + std::to_string(n.k()) + " applied to a vector of length " +
                              std::to_string(x.size()));
      std::vector<double> a(x.begin(), x.end());
      for (double& v : a) v = std::abs(v);
      std::sort(a.begin(), a.end(), std::greater<double>());
      double s = 0.0;
      for (std::size_t i = 0; i < n.k(); ++i) s += a[i];
      return s;
    }
    case NormSpec::Kind::schatten: {
      const double p = n.p();
      if (p == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
      }
      if (p == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
      }
      // scale out the largest entry so powers stay in range
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double v : x) s += std::pow(std::abs(v) / m, p);
      return m * std::pow(s, 1.0 / p);
    }
  }
  return 0.0;
}

double evaluate(const NormSpec& n, const ComplexMatrix& m) {
  const std::vector<double> s = singular_values(m);
  return vector_norm(n, s);
}

double evaluate(const NormSpec& n, const HermitianMatrix& m) {
  const SpectralDecomposition dec = eigh(m);
  std::vector<double> s(dec.eigenvalues.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::abs(dec.eigenvalues[i]);
  return vector_norm(n, s);
}

}  // namespace pdorbit
