#pragma once

// Named groups: C<n>, D<m> (dihedral of order m), S<n>, A<n> (n <= 6),
// Q<4m> (Q8, Q16, ...), EA(p,k), SL2F3, and direct products joined by 'x'.

#include <array>
#include <cctype>
#include <string>
#include <vector>

#include "spq/group.hpp"

namespace spq {

namespace detail {

inline std::size_t parse_count(const std::string& s, const std::string& whole) {
  if (s.empty() || s.size() > 6) throw Error(Errc::UnknownSpec, "bad number in '" + whole + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(Errc::UnknownSpec, "bad number in '" + whole + "'");
  return std::stoul(s);
}

inline FiniteGroup cyclic(std::size_t n, std::string label, const Limits& limits) {
  if (n == 0) throw Error(Errc::UnknownSpec, "C0 is not a group");
  if (n > limits.order_cap) throw Error(Errc::OrderCapExceeded, label + " exceeds order cap");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
  auto g = FiniteGroup::from_cayley_table(std::move(t), std::move(label), limits);
  return n > 1 ? g.with_generators({1}) : g;
}

// Elements r^i s^e with index i + r*e, where r has order `half`.
inline FiniteGroup dihedral(std::size_t order, std::string label, const Limits& limits) {
  if (order == 0 || order % 2) throw Error(Errc::UnknownSpec, "dihedral order must be even");
  if (order > limits.order_cap) throw Error(Errc::OrderCapExceeded, label + " exceeds order cap");
  const std::size_t h = order / 2;
  std::vector<std::vector<Element>> t(order, std::vector<Element>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t i = x % h, e = x / h, j = y % h, f = y / h;
      std::size_t k = e ? (i + h - j) % h : (i + j) % h;
      t[x][y] = static_cast<Element>(k + h * (e ^ f));
    }
  auto g = FiniteGroup::from_cayley_table(std::move(t), std::move(label), limits);
  return h > 1 ? g.with_generators({1, static_cast<Element>(h)}) : g.with_generators({static_cast<Element>(h)});
}

// Generalised quaternion of order 4m: a^i b^e, a of order 2m, b^2 = a^m, b a b^-1 = a^-1.
inline FiniteGroup quaternion(std::size_t order, std::string label, const Limits& limits) {
  if (order < 8 || order % 4) throw Error(Errc::UnknownSpec, "quaternion order must be a multiple of 4, at least 8");
  if (order > limits.order_cap) throw Error(Errc::OrderCapExceeded, label + " exceeds order cap");
  const std::size_t h = order / 2, m = order / 4;
  std::vector<std::vector<Element>> t(order, std::vector<Element>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t i = x % h, e = x / h, j = y % h, f = y / h;
      std::size_t k = e ? (i + h - j) % h : (i + j) % h;
      if (e && f) k = (k + m) % h;
      t[x][y] = static_cast<Element>(k + h * (e ^ f));
    }
  auto g = FiniteGroup::from_cayley_table(std::move(t), std::move(label), limits);
  return g.with_generators({1, static_cast<Element>(h)});
}

inline FiniteGroup symmetric(std::size_t n, bool alternating, std::string label, const Limits& limits) {
  if (n == 0 || n > 6) throw Error(Errc::UnknownSpec, "symmetric/alternating degree must be in 1..6");
  std::vector<std::vector<std::size_t>> gens;
  auto cycle = [n](std::vector<std::size_t> pts) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = 0; i < pts.size(); ++i) p[pts[i]] = pts[(i + 1) % pts.size()];
    return p;
  };
  if (!alternating) {
    if (n >= 2) {
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      gens.push_back(cycle(all));
      gens.push_back(cycle({0, 1}));
    }
  } else {
    for (std::size_t i = 2; i < n; ++i) gens.push_back(cycle({0, 1, i}));
  }
  return FiniteGroup::from_permutation_generators(n, gens, std::move(label), limits);
}

inline FiniteGroup sl2f3(std::string label, const Limits& limits) {
  using M = std::array<int, 4>;  // row-major 2x2 over F_3
  auto mul = [](const M& a, const M& b) {
    return M{(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3,
             (a[2] * b[0] + a[3] * b[2]) % 3, (a[2] * b[1] + a[3] * b[3]) % 3};
  };
  return FiniteGroup::from_generators<M>({M{1, 1, 0, 1}, M{1, 0, 1, 1}}, M{1, 0, 0, 1}, mul,
                                         std::move(label), limits);
}

inline FiniteGroup builtin_factor(const std::string& s, const Limits& limits) {
  if (s == "SL2F3") return sl2f3(s, limits);
  if (s.rfind("EA(", 0) == 0 && s.back() == ')') {
    auto body = s.substr(3, s.size() - 4);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw Error(Errc::UnknownSpec, "EA needs (p,k): '" + s + "'");
    auto p = parse_count(body.substr(0, comma), s);
    auto k = parse_count(body.substr(comma + 1), s);
    bool prime = p >= 2;
    for (std::size_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (!prime) throw Error(Errc::UnknownSpec, "EA needs a prime p: '" + s + "'");
    std::size_t order = 1;
    for (std::size_t i = 0; i < k; ++i) {
      order *= p;
      if (order > limits.order_cap) throw Error(Errc::OrderCapExceeded, s + " exceeds order cap");
    }
    FiniteGroup g;
    auto cp = cyclic(p, "C" + std::to_string(p), limits);
    for (std::size_t i = 0; i < k; ++i) g = direct_product(g, cp, s, limits);
    return g.with_label(s);
  }
  if (s.size() >= 2) {
    const char head = s[0];
    const auto rest = s.substr(1);
    switch (head) {
      case 'C': return cyclic(parse_count(rest, s), s, limits);
      case 'D': return dihedral(parse_count(rest, s), s, limits);
      case 'Q': return quaternion(parse_count(rest, s), s, limits);
      case 'S': return symmetric(parse_count(rest, s), false, s, limits);
      case 'A': return symmetric(parse_count(rest, s), true, s, limits);
      default: break;
    }
  }
  throw Error(Errc::UnknownSpec, "unknown group spec '" + s + "'");
}

}  // namespace detail

/// Builds a named group from the catalog grammar.
inline FiniteGroup builtin(const std::string& spec, const Limits& limits = {}) {
  std::vector<std::string> factors;
  std::string cur;
  for (char c : spec) {
    if (c == 'x') {
      factors.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  factors.push_back(cur);
  for (const auto& f : factors)
    if (f.empty()) throw Error(Errc::UnknownSpec, "empty factor in '" + spec + "'");
  FiniteGroup g = detail::builtin_factor(factors[0], limits);
  for (std::size_t i = 1; i < factors.size(); ++i)
    g = direct_product(g, detail::builtin_factor(factors[i], limits), spec, limits);
  return g.with_label(spec);
}

}  // namespace spq
