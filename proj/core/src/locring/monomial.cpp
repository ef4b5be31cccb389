#include "lochf/locring/monomial.hpp"

#include <numeric>

#include "lochf/error.hpp"

namespace lochf::locring {

Monomial::Monomial(std::vector<std::uint32_t> exponents)
    : exponents_(std::move(exponents)),
      degree_(std::accumulate(exponents_.begin(), exponents_.end(), 0u)) {}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  std::vector<std::uint32_t> e(nvars, 0);
  e.at(i) = 1;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) {
    throw Error(Errc::invalid_input, "monomials over different variable sets");
  }
  Monomial out = a;
  for (std::size_t i = 0; i < out.exponents_.size(); ++i) {
    out.exponents_[i] += b.exponents_[i];
  }
  out.degree_ += b.degree_;
  return out;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out = other;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    out.exponents_[i] -= exponents_[i];
  }
  out.degree_ -= degree_;
  return out;
}

std::string Monomial::to_string(std::span<const std::string> names) const {
  std::string out;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (exponents_[i] > 1) out += '^' + std::to_string(exponents_[i]);
  }
  return out.empty() ? "1" : out;
}

std::strong_ordering deglex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint32_t> e(nvars, 0);
  // Lexicographically decreasing enumeration of compositions of `degree`.
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

}  // namespace lochf::locring
