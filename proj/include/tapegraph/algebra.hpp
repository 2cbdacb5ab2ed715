#pragma once

// Truncated non-commuting polynomial arithmetic over F2, the (1+x_i) group
// generators with their degree-15 inverses, relator extraction from even
// subwords, degree-wise homogeneous ideal membership, and the power-series
// coefficients behind the Golod-Shafarevich criterion.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tapegraph/bigint.hpp"
#include "tapegraph/group.hpp"  // Error hierarchy

namespace tapegraph::algebra {

class LowDegreeResidue : public Error {
 public:
  explicit LowDegreeResidue(std::string const& what) : Error(what) {}
};

class DimensionOverflow : public Error {
 public:
  explicit DimensionOverflow(std::string const& what) : Error(what) {}
};

/// A word in the indeterminates x_0..x_{d-1}; degree = length. The empty
/// monomial is the constant 1.
using Monomial = std::vector<uint8_t>;

struct MonomialShortlex {
  bool operator()(Monomial const& a, Monomial const& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using MonomialSet = std::set<Monomial, MonomialShortlex>;

/// F2 polynomial in d non-commuting indeterminates, truncated at degree D:
/// monomials of higher degree are discarded, so addition is symmetric
/// difference and multiplication is exact below the truncation line.
struct TruncatedPoly {
  size_t d = 0;
  size_t trunc = 0;
  MonomialSet monomials;

  static TruncatedPoly zero(size_t d, size_t trunc) { return {d, trunc, {}}; }
  static TruncatedPoly one(size_t d, size_t trunc) { return {d, trunc, {Monomial{}}}; }
  static TruncatedPoly indeterminate(size_t i, size_t d, size_t trunc) {
    if (i >= d) throw Error("indeterminate index out of range");
    TruncatedPoly p{d, trunc, {}};
    if (trunc >= 1) p.monomials.insert(Monomial{static_cast<uint8_t>(i)});
    return p;
  }
  static TruncatedPoly monomial_power(size_t i, size_t e, size_t d, size_t trunc) {
    TruncatedPoly p{d, trunc, {}};
    if (e <= trunc) p.monomials.insert(Monomial(e, static_cast<uint8_t>(i)));
    return p;
  }

  bool is_zero() const { return monomials.empty(); }
  bool is_one() const { return monomials.size() == 1 && monomials.begin()->empty(); }

  /// Degree of the highest surviving monomial; -1 when zero.
  int64_t degree() const {
    return monomials.empty() ? -1 : static_cast<int64_t>(monomials.rbegin()->size());
  }
  int64_t low_degree() const {
    return monomials.empty() ? -1 : static_cast<int64_t>(monomials.begin()->size());
  }

  bool is_homogeneous() const {
    return monomials.empty() || monomials.begin()->size() == monomials.rbegin()->size();
  }

  TruncatedPoly homogeneous_component(size_t e) const {
    TruncatedPoly out{d, trunc, {}};
    for (auto const& m : monomials) {
      if (m.size() == e) out.monomials.insert(m);
    }
    return out;
  }

  friend bool operator==(TruncatedPoly const& a, TruncatedPoly const& b) {
    return a.d == b.d && a.trunc == b.trunc && a.monomials == b.monomials;
  }
};

inline void check_compatible(TruncatedPoly const& f, TruncatedPoly const& g) {
  if (f.d != g.d || f.trunc != g.trunc) {
    throw Error("polynomials have different indeterminate counts or truncation degrees");
  }
}

inline TruncatedPoly poly_add(TruncatedPoly const& f, TruncatedPoly const& g) {
  check_compatible(f, g);
  TruncatedPoly out{f.d, f.trunc, {}};
  auto it = f.monomials.begin();
  auto jt = g.monomials.begin();
  MonomialShortlex less;
  while (it != f.monomials.end() || jt != g.monomials.end()) {
    if (jt == g.monomials.end() || (it != f.monomials.end() && less(*it, *jt))) {
      out.monomials.insert(out.monomials.end(), *it++);
    } else if (it == f.monomials.end() || less(*jt, *it)) {
      out.monomials.insert(out.monomials.end(), *jt++);
    } else {
      ++it;  // equal monomials cancel over F2
      ++jt;
    }
  }
  return out;
}

inline TruncatedPoly poly_mul(TruncatedPoly const& f, TruncatedPoly const& g) {
  check_compatible(f, g);
  TruncatedPoly out{f.d, f.trunc, {}};
  for (auto const& a : f.monomials) {
    for (auto const& b : g.monomials) {
      if (a.size() + b.size() > f.trunc) continue;
      Monomial m = a;
      m.insert(m.end(), b.begin(), b.end());
      auto [it, inserted] = out.monomials.insert(std::move(m));
      if (!inserted) out.monomials.erase(it);
    }
  }
  return out;
}

inline TruncatedPoly poly_pow(TruncatedPoly const& f, size_t e) {
  TruncatedPoly r = TruncatedPoly::one(f.d, f.trunc);
  for (size_t i = 0; i < e; ++i) r = poly_mul(r, f);
  return r;
}

// The construction's constants: (1 + x_i) has order 16 over F2, so its
// inverse is its 15th power.
constexpr size_t kGeneratorOrder = 16;
constexpr size_t kInverseExponent = 15;

/// Construction symbols: 2d formal letters, symbol 2i expanding to (1+x_i)
/// and symbol 2i+1 to (1+x_i)^15. Formal inverses pair 2i with 2i+1.
struct ConstructionGenerators {
  size_t d;

  size_t symbol_count() const { return 2 * d; }
  static uint32_t inverse_symbol(uint32_t s) { return s ^ 1u; }
  static size_t indeterminate_of(uint32_t s) { return s / 2; }
  static bool is_inverse_half(uint32_t s) { return (s & 1u) != 0; }

  std::string symbol_name(uint32_t s) const {
    std::string base = "(1+x" + std::to_string(s / 2 + 1) + ")";
    return is_inverse_half(s) ? base + "15" : base;
  }

  TruncatedPoly expand_symbol(uint32_t s, size_t trunc) const {
    if (s >= symbol_count()) throw Error("construction symbol out of range");
    TruncatedPoly base = poly_add(TruncatedPoly::one(d, trunc),
                                  TruncatedPoly::indeterminate(s / 2, d, trunc));
    return is_inverse_half(s) ? poly_pow(base, kInverseExponent) : base;
  }
};

/// Product of the expanded symbols of w, truncated. The constant term is
/// always 1.
inline TruncatedPoly expand_group_word(std::vector<uint32_t> const& w,
                                       ConstructionGenerators const& gens, size_t trunc) {
  TruncatedPoly p = TruncatedPoly::one(gens.d, trunc);
  for (uint32_t s : w) p = poly_mul(p, gens.expand_symbol(s, trunc));
  return p;
}

/// (1+x_i)(1+x_i)^15 = 1 + x_i^16, which the relator x_i^16 kills.
inline bool binomial_inverse_check(size_t i, size_t d, size_t trunc) {
  ConstructionGenerators gens{d};
  TruncatedPoly product = poly_mul(gens.expand_symbol(static_cast<uint32_t>(2 * i), trunc),
                                   gens.expand_symbol(static_cast<uint32_t>(2 * i + 1), trunc));
  TruncatedPoly relator = TruncatedPoly::monomial_power(i, kGeneratorOrder, d, trunc);
  return poly_add(product, relator).is_one();
}

/// Homogeneous components of p - 1 for the expansion p of w, restricted to
/// degrees in (r_lo, trunc]. A word that is even to depth r_lo over the
/// construction alphabet leaves nothing at or below r_lo; a surviving low
/// component means the precondition was violated.
inline std::vector<TruncatedPoly> relator_from_even_subword(std::vector<uint32_t> const& w,
                                                            ConstructionGenerators const& gens,
                                                            size_t r_lo, size_t trunc) {
  TruncatedPoly p = expand_group_word(w, gens, trunc);
  TruncatedPoly residual = poly_add(p, TruncatedPoly::one(gens.d, trunc));  // p - 1 over F2
  std::vector<TruncatedPoly> components;
  for (size_t e = 1; e <= trunc; ++e) {
    TruncatedPoly comp = residual.homogeneous_component(e);
    if (comp.is_zero()) continue;
    if (e <= r_lo) {
      throw LowDegreeResidue("non-zero component of degree " + std::to_string(e) +
                             " at or below the even depth " + std::to_string(r_lo));
    }
    components.push_back(std::move(comp));
  }
  return components;
}

/// Homogeneous generating set with its per-degree counts r_i.
struct HomogeneousBasis {
  size_t d = 0;
  size_t trunc = 0;
  std::vector<TruncatedPoly> polys;

  void validate() const {
    size_t prev = 2;
    for (auto const& f : polys) {
      if (f.d != d || f.trunc != trunc) throw Error("basis polynomial has mismatched d or D");
      if (f.is_zero()) throw Error("zero polynomial in basis");
      if (!f.is_homogeneous()) throw Error("basis polynomial is not homogeneous");
      size_t deg = static_cast<size_t>(f.degree());
      if (deg < 2) throw Error("basis degrees must be at least 2");
      if (deg < prev) throw Error("basis degrees must be non-decreasing");
      prev = deg;
    }
  }

  std::map<size_t, size_t> degree_counts() const {
    std::map<size_t, size_t> r;
    for (auto const& f : polys) r[static_cast<size_t>(f.degree())] += 1;
    return r;
  }
};

/// The construction's shape: d relators of degree 16 (the x_i^16), nothing
/// below 16, and at most one relator per degree above.
inline bool check_construction_discipline(HomogeneousBasis const& basis) {
  auto counts = basis.degree_counts();
  for (auto const& [deg, count] : counts) {
    if (deg < kGeneratorOrder && count > 0) return false;
    if (deg == kGeneratorOrder && count != basis.d) return false;
    if (deg > kGeneratorOrder && count > 1) return false;
  }
  return counts.contains(kGeneratorOrder);
}

namespace detail {

// F2 row reduction keyed by leading (shortlex-least) monomial.
struct Eliminator {
  std::map<Monomial, MonomialSet, MonomialShortlex> pivots;

  // Reduces v in place against the pivots; returns true if it vanished.
  bool reduce(MonomialSet& v) const {
    while (!v.empty()) {
      auto it = pivots.find(*v.begin());
      if (it == pivots.end()) return false;
      symmetric_difference(v, it->second);
    }
    return true;
  }

  void insert(MonomialSet v) {
    while (!v.empty()) {
      auto it = pivots.find(*v.begin());
      if (it == pivots.end()) {
        pivots.emplace(*v.begin(), std::move(v));
        return;
      }
      symmetric_difference(v, it->second);
    }
  }

  static void symmetric_difference(MonomialSet& a, MonomialSet const& b) {
    for (auto const& m : b) {
      auto [it, inserted] = a.insert(m);
      if (!inserted) a.erase(it);
    }
  }
};

inline uint64_t checked_pow(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

inline void all_monomials(size_t d, size_t deg, std::vector<Monomial>& out) {
  out.clear();
  Monomial m(deg, 0);
  while (true) {
    out.push_back(m);
    size_t i = deg;
    while (i > 0 && m[i - 1] == d - 1) {
      m[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    m[i - 1] += 1;
  }
  if (deg == 0) out.assign(1, Monomial{});
}

}  // namespace detail

constexpr uint64_t kDefaultDimensionCap = 1u << 20;

/// Degree-wise membership of f in the two-sided ideal generated by the
/// basis: for each degree e carrying a component of f, the span over F2 of
/// {m1 * g * m2 : total degree e} is row-reduced on the monomial basis and
/// the component is tested against it. Exact for homogeneous ideals at
/// degrees within the truncation.
inline bool ideal_membership(TruncatedPoly const& f, HomogeneousBasis const& basis,
                             uint64_t dimension_cap = kDefaultDimensionCap) {
  basis.validate();
  if (f.d != basis.d || f.trunc != basis.trunc) throw Error("polynomial and basis disagree");
  if (f.is_zero()) return true;
  // A constant term can never be absorbed: the degree-0 slice of an ideal
  // generated in degrees >= 2 is zero.
  if (f.monomials.begin()->empty()) return false;

  std::vector<Monomial> left, right;
  for (size_t e = 1; e <= f.trunc; ++e) {
    TruncatedPoly comp = f.homogeneous_component(e);
    if (comp.is_zero()) continue;
    if (detail::checked_pow(f.d, e, dimension_cap) > dimension_cap) {
      throw DimensionOverflow("monomial basis at degree " + std::to_string(e) +
                              " exceeds the configured cap");
    }

    detail::Eliminator elim;
    for (auto const& g : basis.polys) {
      size_t deg = static_cast<size_t>(g.degree());
      if (deg > e) continue;
      for (size_t a = 0; a + deg <= e; ++a) {
        size_t b = e - deg - a;
        detail::all_monomials(f.d, a, left);
        detail::all_monomials(f.d, b, right);
        for (auto const& m1 : left) {
          for (auto const& m2 : right) {
            MonomialSet vec;
            for (auto const& gm : g.monomials) {
              Monomial m = m1;
              m.insert(m.end(), gm.begin(), gm.end());
              m.insert(m.end(), m2.begin(), m2.end());
              auto [it, inserted] = vec.insert(std::move(m));
              if (!inserted) vec.erase(it);
            }
            if (!vec.empty()) elim.insert(std::move(vec));
          }
        }
      }
    }
    MonomialSet target = comp.monomials;
    if (!elim.reduce(target)) return false;
  }
  return true;
}

/// u and v name distinct elements of the quotient group exactly when the
/// expansion of u minus the expansion of v misses the ideal.
inline bool distinctness_witness(std::vector<uint32_t> const& u, std::vector<uint32_t> const& v,
                                 HomogeneousBasis const& basis,
                                 uint64_t dimension_cap = kDefaultDimensionCap) {
  ConstructionGenerators gens{basis.d};
  TruncatedPoly diff =
      poly_add(expand_group_word(u, gens, basis.trunc), expand_group_word(v, gens, basis.trunc));
  return !ideal_membership(diff, basis, dimension_cap);
}

/// First K+1 coefficients of (1 - d t + sum_i r_i t^i)^{-1}, exactly:
/// c_0 = 1, c_k = d c_{k-1} - sum_{i>=2} r(i) c_{k-i}.
inline std::vector<BigInt> gs_series_coefficients(size_t d, std::map<size_t, BigInt> const& r,
                                                  size_t terms) {
  for (auto const& [i, ri] : r) {
    if (i < 2 && !(ri == BigInt(0))) throw Error("relator counts must vanish below degree 2");
  }
  std::vector<BigInt> c(terms + 1);
  c[0] = BigInt(1);
  for (size_t k = 1; k <= terms; ++k) {
    BigInt v = BigInt(static_cast<long long>(d)) * c[k - 1];
    for (auto const& [i, ri] : r) {
      if (i >= 2 && i <= k) v -= ri * c[k - i];
    }
    c[k] = v;
  }
  return c;
}

/// r_i <= eps^2 (d - 2 eps)^{i-2} for every listed degree, with eps = p/q
/// rational and 0 < eps < d/2; checked in exact integer arithmetic as
/// r_i q^i <= p^2 (d q - 2 p)^{i-2}.
inline bool corollary_bound_check(size_t d, long long eps_num, long long eps_den,
                                  std::map<size_t, BigInt> const& r) {
  if (eps_num <= 0 || eps_den <= 0) throw Error("epsilon must be positive");
  BigInt p(eps_num), q(eps_den);
  BigInt margin = BigInt(static_cast<long long>(d)) * q - BigInt(2) * p;
  if (!(BigInt(0) < margin)) throw Error("epsilon must be below d/2");
  for (auto const& [i, ri] : r) {
    if (ri == BigInt(0)) continue;
    if (i < 2) return false;
    BigInt lhs = ri * BigInt::pow(q, i);
    BigInt rhs = p * p * BigInt::pow(margin, i - 2);
    if (rhs < lhs) return false;
  }
  return true;
}

}  // namespace tapegraph::algebra
