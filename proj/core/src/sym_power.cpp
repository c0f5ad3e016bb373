#include "sl2lab/sym_power.hpp"

#include <numeric>

#include "sl2lab/subgroups.hpp"

namespace sl2lab {

namespace {

int64_t checked_narrow(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw ResourceError(std::string(what) + ": rational overflow");
  return int64_t(v);
}

}  // namespace

Rat::Rat(int64_t n, int64_t d) {
  if (d == 0) throw DomainError("Rat: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Rat Rat::operator+(const Rat& o) const {
  __int128 n = __int128(num) * o.den + __int128(o.num) * den;
  __int128 d = __int128(den) * o.den;
  __int128 g = 1;
  {
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    g = a == 0 ? 1 : a;
  }
  return Rat(checked_narrow(n / g, "Rat::operator+"), checked_narrow(d / g, "Rat::operator+"));
}

Rat Rat::operator*(const Rat& o) const {
  int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
  int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  __int128 n = __int128(num / g1) * (o.num / g2);
  __int128 d = __int128(den / g2) * (o.den / g1);
  return Rat(checked_narrow(n, "Rat::operator*"), checked_narrow(d, "Rat::operator*"));
}

uint8_t Rat::mod_p(uint32_t p) const {
  if (!is_p_integral(p)) throw DomainError("Rat::mod_p: value is not p-integral");
  int64_t n = num % int64_t(p);
  if (n < 0) n += p;
  uint32_t dinv = inv_mod(uint32_t(((den % p) + p) % p), p);
  return uint8_t((uint64_t(n) * dinv) % p);
}

Rat HomPoly::eval(int64_t a, int64_t c) const {
  Rat acc(0);
  // Horner in c/a would divide; with degree <= 8 direct powers are fine.
  for (uint32_t i = 0; i <= deg; ++i) {
    if (coef[i].num == 0) continue;
    __int128 m = 1;
    for (uint32_t j = 0; j < deg - i; ++j) m *= a;
    for (uint32_t j = 0; j < i; ++j) m *= c;
    acc = acc + coef[i] * Rat(checked_narrow(m, "HomPoly::eval"));
  }
  return acc;
}

HomPoly HomPoly::substitute(int64_t m00, int64_t m01, int64_t m10, int64_t m11) const {
  HomPoly out(deg);
  // (m00 a + m01 c)^(deg-i) (m10 a + m11 c)^i expanded binomially.
  for (uint32_t i = 0; i <= deg; ++i) {
    if (coef[i].num == 0) continue;
    std::vector<Rat> first(deg - i + 1), second(i + 1);
    for (uint32_t r = 0; r <= deg - i; ++r) {
      // binom(deg-i, r) m00^(deg-i-r) m01^r
      __int128 v = 1;
      for (uint32_t x = 0; x < deg - i - r; ++x) v *= m00;
      for (uint32_t x = 0; x < r; ++x) v *= m01;
      uint64_t binom = 1;
      for (uint32_t x = 1; x <= r; ++x) binom = binom * (deg - i - x + 1) / x;
      first[r] = Rat(checked_narrow(v * int64_t(binom), "substitute"));
    }
    for (uint32_t r = 0; r <= i; ++r) {
      __int128 v = 1;
      for (uint32_t x = 0; x < i - r; ++x) v *= m10;
      for (uint32_t x = 0; x < r; ++x) v *= m11;
      uint64_t binom = 1;
      for (uint32_t x = 1; x <= r; ++x) binom = binom * (i - x + 1) / x;
      second[r] = Rat(checked_narrow(v * int64_t(binom), "substitute"));
    }
    for (uint32_t r1 = 0; r1 <= deg - i; ++r1)
      for (uint32_t r2 = 0; r2 <= i; ++r2)
        out.coef[r1 + r2] = out.coef[r1 + r2] + coef[i] * first[r1] * second[r2];
  }
  return out;
}

std::vector<SymBasisFunction> sym_lattice_basis(uint32_t p, uint32_t k, uint32_t d) {
  uint64_t n = ipow(p, k - 1);
  if (d >= n) throw ParamError("sym_lattice_basis: need d < p^(k-1)");
  std::vector<SymBasisFunction> out;
  for (uint32_t t = 0; t <= d; ++t) {
    // prod_{i<t} (c - i p a), then shift by a^(d-t), then divide by p^t t!.
    std::vector<Rat> poly{Rat(1)};  // coefficients in powers of c
    for (uint32_t i = 0; i < t; ++i) {
      std::vector<Rat> next(poly.size() + 1);
      for (size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] = next[j + 1] + poly[j];
        next[j] = next[j] + poly[j] * Rat(-int64_t(i) * int64_t(p));
      }
      poly = std::move(next);
    }
    int64_t denom = 1;
    for (uint32_t i = 1; i <= t; ++i) denom *= int64_t(i) * 1;
    for (uint32_t i = 0; i < t; ++i) denom *= p;
    SymBasisFunction f{t, HomPoly(d)};
    for (uint32_t i = 0; i <= t; ++i) f.poly.coef[i] = poly[i] * Rat(1, denom);
    out.push_back(std::move(f));
  }
  return out;
}

bool integrality_certificate(uint32_t p, uint32_t d, const SymBasisFunction& f) {
  uint32_t t = f.t;
  uint32_t w = t;
  {
    uint64_t fact = 1;
    for (uint32_t i = 2; i <= t; ++i) fact *= i;
    w += valuation(fact == 0 ? 1 : fact, p);
  }
  if (w == 0) return true;
  uint64_t q = ipow(p, w);
  // P(a, c) = a^(d-t) prod (c - i p a); integrality of P / p^w on the
  // domain depends only on residues mod p^w.
  for (uint64_t ra = 1 % q; ra < q; ra += p) {
    for (uint64_t rc = 0; rc < q; rc += p) {
      uint64_t v = 1;
      for (uint32_t i = 0; i < d - t; ++i) v = v * ra % q;
      for (uint32_t i = 0; i < t; ++i) {
        uint64_t factor = (rc + q * p - (uint64_t(i) * p % q) * ra % q) % q;
        v = v * factor % q;
      }
      if (v % q != 0) return false;
    }
  }
  return true;
}

bool integrality_spot_check(uint32_t p, uint32_t k, const SymBasisFunction& f, uint32_t samples,
                            Rng& rng) {
  uint64_t range = ipow(p, k + 2);
  for (uint32_t s = 0; s < samples; ++s) {
    int64_t a = 1 + int64_t(p) * int64_t(rng.below(range));
    int64_t c = int64_t(p) * int64_t(rng.below(range));
    if (!f.poly.eval(a, c).is_p_integral(p)) return false;
  }
  return true;
}

FpVec sym_reduce(uint32_t p, uint32_t k, const HomPoly& f) {
  uint32_t n = uint32_t(ipow(p, k - 1));
  FpVec out(n);
  for (uint32_t x = 0; x < n; ++x) out[x] = f.eval(1, int64_t(p) * x).mod_p(p);
  return out;
}

HomPoly sym_act(const GroupElement& g, const HomPoly& f) {
  // g^-1 = (d, -b; -c, a); the first column of g^-1 h is linear in that of h.
  int64_t m = g.ctx.modulus;
  return f.substitute(int64_t(g.d), -(int64_t(g.b)), -(int64_t(g.c)) + 0 * m, int64_t(g.a));
}

SymReductionResult sym_reduction(uint32_t p, uint32_t k, uint32_t d) {
  uint64_t n = ipow(p, k - 1);
  if (uint64_t(d) + 1 > n) throw ParamError("sym_reduction: need d + 1 <= p^(k-1)");
  auto basis = sym_lattice_basis(p, k, d);
  std::vector<FpVec> rows;
  for (const auto& f : basis) rows.push_back(sym_reduce(p, k, f.poly));
  SymReductionResult res;
  res.image = FpSubspace::from_vectors(p, uint32_t(n), rows);
  res.m = res.image.dim();
  if (!(res.image == filtration_F(p, k, res.m)))
    throw StructuralError("sym_reduction: image is not one of the filtration subspaces F(m)");

  res.g_invariant = true;
  auto gens = subgroup_generators(SubgroupSpec::Gk(1), LevelContext(p, k));
  for (const auto& g : gens) {
    for (const auto& f : basis) {
      FpVec v = sym_reduce(p, k, sym_act(g, f.poly));
      if (!res.image.contains(v)) {
        res.g_invariant = false;
        break;
      }
    }
    if (!res.g_invariant) break;
  }
  return res;
}

bool sym_equivariance_check(uint32_t p, uint32_t k, uint32_t d, uint32_t samples, Rng& rng) {
  LevelContext ctx(p, k);
  auto basis = sym_lattice_basis(p, k, d);
  auto check = [&](const GroupElement& g) {
    for (const auto& f : basis) {
      FpVec lhs = sym_reduce(p, k, sym_act(g, f.poly));
      FpVec rhs = apply_point_action(g, k, sym_reduce(p, k, f.poly));
      if (lhs != rhs) return false;
    }
    return true;
  };
  for (const auto& g : subgroup_generators(SubgroupSpec::Gk(1), ctx))
    if (!check(g)) return false;
  uint32_t m = ctx.modulus;
  for (uint32_t s = 0; s < samples; ++s) {
    uint32_t a = uint32_t((1 + ctx.p * rng.below(m / ctx.p)) % m);
    uint32_t b = uint32_t(ctx.p * rng.below(m / ctx.p) % m);
    uint32_t c = uint32_t(ctx.p * rng.below(m / ctx.p) % m);
    uint32_t dd = mul_mod(add_mod(1, mul_mod(b, c, m), m), inv_mod(a, m), m);
    if (!check(GroupElement(ctx, a, b, c, dd))) return false;
  }
  return true;
}

}  // namespace sl2lab
