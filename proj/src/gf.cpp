#include "turanforge/gf.hpp"

#include "turanforge/errors.hpp"

#include <string>

namespace turanforge {

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::int64_t q) : q_(q) {
  if (!is_prime(q)) throw DomainError(std::to_string(q) + " is not prime");
  if (q == 2) throw DomainError("the field must have odd characteristic");
  if (q >= (std::int64_t{1} << 32)) throw DomainError("field order must be below 2^32");
}

std::int64_t PrimeField::mul(std::int64_t a, std::int64_t b) const {
  return static_cast<std::int64_t>(static_cast<unsigned __int128>(reduce(a)) * static_cast<unsigned __int128>(reduce(b)) %
                                   static_cast<unsigned __int128>(q_));
}

std::int64_t PrimeField::pow(std::int64_t a, std::int64_t e) const {
  std::int64_t base = reduce(a);
  std::int64_t result = 1 % q_;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::int64_t PrimeField::inv(std::int64_t a) const {
  if (reduce(a) == 0) throw DomainError("zero has no inverse");
  return pow(a, q_ - 2);
}

CharacterValue quadratic_character(const PrimeField& field, std::int64_t x) {
  const std::int64_t r = field.reduce(x);
  if (r == 0) return CharacterValue::Zero;
  return field.pow(r, (field.order() - 1) / 2) == 1 ? CharacterValue::Residue : CharacterValue::NonResidue;
}

bool minus_three_is_nonresidue(const PrimeField& field) {
  if (field.order() < 5) throw DomainError("need q >= 5");
  return quadratic_character(field, field.order() - 3) == CharacterValue::NonResidue;
}

Polynomial normalize(const PrimeField& field, const Polynomial& f) {
  Polynomial out;
  out.reserve(f.size());
  for (std::int64_t c : f) out.push_back(field.reduce(c));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::int64_t evaluate(const PrimeField& field, const Polynomial& f, std::int64_t x) {
  std::int64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
  return acc;
}

bool is_constant_times_square(const PrimeField& field, const Polynomial& raw) {
  const Polynomial f = normalize(field, raw);
  if (f.empty()) return true;
  const int d = static_cast<int>(f.size()) - 1;
  if (d % 2 != 0) return false;
  const int h = d / 2;
  // Monic g of degree h with g^2 = f / lead; solve g's coefficients from the top down.
  const std::int64_t lead_inv = field.inv(f.back());
  Polynomial target(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) target[i] = field.mul(f[i], lead_inv);
  Polynomial g(static_cast<std::size_t>(h) + 1, 0);
  g[static_cast<std::size_t>(h)] = 1;
  const std::int64_t inv2 = field.inv(2);
  for (int k = h - 1; k >= 0; --k) {
    // Coefficient of x^{h+k} in g^2 is 2 g_h g_k + sum_{i+j=h+k, i,j in (k,h)} g_i g_j.
    std::int64_t rest = 0;
    for (int i = k + 1; i < h; ++i) {
      const int j = h + k - i;
      if (j > k && j < h) rest = field.add(rest, field.mul(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]));
    }
    g[static_cast<std::size_t>(k)] = field.mul(field.sub(target[static_cast<std::size_t>(h + k)], rest), inv2);
  }
  Polynomial sq(f.size(), 0);
  for (int i = 0; i <= h; ++i)
    for (int j = 0; j <= h; ++j) {
      auto& c = sq[static_cast<std::size_t>(i + j)];
      c = field.add(c, field.mul(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]));
    }
  return sq == target;
}

std::int64_t weil_sum(const PrimeField& field, const Polynomial& raw) {
  const Polynomial f = normalize(field, raw);
  if (f.size() < 2) throw DomainError("polynomial must have degree at least 1");
  if (is_constant_times_square(field, f)) throw DomainError("polynomial is a constant times a square");
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < field.order(); ++x) sum += to_int(quadratic_character(field, evaluate(field, f, x)));
  return sum;
}

bool weil_holds(const PrimeField& field, const Polynomial& f) {
  const std::int64_t s = weil_sum(field, f);
  const std::int64_t d = static_cast<std::int64_t>(normalize(field, f).size()) - 1;
  return s * s <= (d - 1) * (d - 1) * field.order();
}

}  // namespace turanforge
