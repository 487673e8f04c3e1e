#pragma once

#include <cstdint>
#include <vector>

namespace turanforge {

bool is_prime(std::int64_t q);

/// Integers mod an odd prime q.
class PrimeField {
 public:
  explicit PrimeField(std::int64_t q);

  std::int64_t order() const { return q_; }
  std::int64_t reduce(std::int64_t x) const {
    const std::int64_t r = x % q_;
    return r < 0 ? r + q_ : r;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
  std::int64_t neg(std::int64_t a) const { return reduce(-a); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const;
  std::int64_t pow(std::int64_t a, std::int64_t e) const;
  std::int64_t inv(std::int64_t a) const;

 private:
  std::int64_t q_;
};

enum class CharacterValue : int { NonResidue = -1, Zero = 0, Residue = 1 };

inline int to_int(CharacterValue c) { return static_cast<int>(c); }

/// Euler's criterion. x must already be reduced.
CharacterValue quadratic_character(const PrimeField& field, std::int64_t x);

/// Requires q >= 5.
bool minus_three_is_nonresidue(const PrimeField& field);

/// Coefficients in ascending degree: coeffs[i] is the coefficient of x^i.
using Polynomial = std::vector<std::int64_t>;

// Strips zero leading coefficients after reduction.
Polynomial normalize(const PrimeField& field, const Polynomial& f);

std::int64_t evaluate(const PrimeField& field, const Polynomial& f, std::int64_t x);

/// True iff f = c * g^2 for some constant c and polynomial g.
bool is_constant_times_square(const PrimeField& field, const Polynomial& f);

/// Sum of chi(f(x)) over the field. Rejects constant f and f = c*g^2.
std::int64_t weil_sum(const PrimeField& field, const Polynomial& f);

/// |weil_sum| <= (deg f - 1) sqrt(q), compared as squares of integers.
bool weil_holds(const PrimeField& field, const Polynomial& f);

}  // namespace turanforge
