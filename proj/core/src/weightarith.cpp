#include "hkq/weightarith.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "hkq/errors.hpp"

namespace hkq {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer product");
  return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

Int gcd(Int a, Int b) {
  a = a < 0 ? checked_neg(a) : a;
  b = b < 0 ? checked_neg(b) : b;
  while (b != 0) {
    const Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace {

std::string fmt_gcd(const std::string& args, Int value) {
  return "gcd(" + args + ") = " + std::to_string(value);
}

Int det2(Int a, Int b, Int c, Int d) { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }

// gcd(x +- y, x +- z) conditions with x as the pivot; returns the first failure.
Verdict sum_difference_conditions(Int x, Int y, Int z, const char* nx, const char* ny,
                                  const char* nz) {
  for (int sy : {-1, 1}) {
    for (int sz : {-1, 1}) {
      const Int a = sy < 0 ? checked_sub(x, y) : checked_add(x, y);
      const Int b = sz < 0 ? checked_sub(x, z) : checked_add(x, z);
      const Int g = gcd(a, b);
      if (g != 1) {
        const std::string args = std::string(nx) + (sy < 0 ? "-" : "+") + ny + ", " + nx +
                                 (sz < 0 ? "-" : "+") + nz;
        return {false, fmt_gcd(args, g)};
      }
    }
  }
  return {true, {}};
}

}  // namespace

Verdict satisfies_gcd_conditions(const WeightTriple& p) {
  static constexpr const char* names[] = {"p1", "p2", "p3"};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Int g = gcd(p[i], p[j]);
      if (g != 1) return {false, fmt_gcd(std::string(names[i]) + "," + names[j], g)};
    }
  return sum_difference_conditions(p[0], p[1], p[2], "p1", "p2", "p3");
}

Verdict admissibility(const WeightTriple& p) {
  if (!(0 < p[0] && p[0] < p[1] && p[1] < p[2]))
    return {false, "not 0 < p1 < p2 < p3"};
  return satisfies_gcd_conditions(p);
}

bool is_admissible_triple(const WeightTriple& p) { return admissibility(p).value; }

WeightTriple normalize_weights(const WeightTriple& p) {
  WeightTriple out;
  for (int i = 0; i < 3; ++i) out.p[i] = p[i] < 0 ? checked_neg(p[i]) : p[i];
  std::sort(out.p.begin(), out.p.end());
  return out;
}

Verdict quad_freeness(const WeightQuad& p) {
  if (!(0 <= p[0] && p[0] < p[1] && p[1] < p[2] && p[2] < p[3]))
    return {false, "not 0 <= p1 < p2 < p3 < p4"};
  static constexpr int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& t : triples) {
    const Int a = p[t[0]], b = p[t[1]], c = p[t[2]];
    const std::string label =
        "triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "): ";
    const Int g = gcd(gcd(a, b), c);
    if (g != 1) return {false, label + fmt_gcd("pi,pj,pk", g)};
    const Verdict v = sum_difference_conditions(a, b, c, "pi", "pj", "pk");
    if (!v) return {false, label + v.reason};
  }
  return {true, {}};
}

bool is_free_quadruple(const WeightQuad& p) { return quad_freeness(p).value; }

MinorTriple minor_determinants(const WeightMatrix& t) {
  return {det2(t.p[0], t.p[1], t.q[0], t.q[1]), det2(t.p[0], t.p[2], t.q[0], t.q[2]),
          det2(t.p[1], t.p[2], t.q[1], t.q[2])};
}

BoxQuad box_determinants(const WeightMatrix& t) {
  BoxQuad b;
  auto row = [&](int col, int s) {
    return std::array<Int, 2>{s < 0 ? checked_sub(t.p[0], t.p[col]) : checked_add(t.p[0], t.p[col]),
                              s < 0 ? checked_sub(t.q[0], t.q[col]) : checked_add(t.q[0], t.q[col])};
  };
  // (p1 -+ p2 row sign, p1 -+ p3 row sign) per label
  static constexpr int signs[4][2] = {{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}};
  for (int k = 0; k < 4; ++k) {
    const auto r1 = row(1, signs[k][0]);
    const auto r2 = row(2, signs[k][1]);
    b.v[k] = det2(r1[0], r1[1], r2[0], r2[1]);
  }
  return b;
}

BoxQuad boxes_from_minors(const MinorTriple& m) {
  const Int a = m.d12, b = m.d23, c = m.d13;
  return {{checked_sub(checked_add(a, b), c), checked_add(checked_sub(a, b), c),
           checked_sub(checked_sub(checked_neg(a), b), c), checked_add(checked_add(checked_neg(a), b), c)}};
}

bool verify_box_identity(const WeightMatrix& theta) {
  return box_determinants(theta) == boxes_from_minors(minor_determinants(theta));
}

Verdict theta_locally_free(const WeightMatrix& theta) {
  const MinorTriple m = minor_determinants(theta);
  if (m.d12 == 0) return {false, "d12 = 0"};
  if (m.d13 == 0) return {false, "d13 = 0"};
  if (m.d23 == 0) return {false, "d23 = 0"};
  if (checked_add(checked_add(m.d12, m.d13), m.d23) == 0) return {false, "d12 + d13 + d23 = 0"};
  if (m.d12 == checked_add(m.d13, m.d23)) return {false, "d12 = d13 + d23"};
  if (m.d13 == checked_add(m.d12, m.d23)) return {false, "d13 = d12 + d23"};
  if (m.d23 == checked_add(m.d12, m.d13)) return {false, "d23 = d12 + d13"};
  return {true, {}};
}

WeightMatrix apply_row_transform(const std::array<std::array<Int, 2>, 2>& u,
                                 const WeightMatrix& t) {
  WeightMatrix out;
  for (int c = 0; c < 3; ++c) {
    out.p[c] = checked_add(checked_mul(u[0][0], t.p[c]), checked_mul(u[0][1], t.q[c]));
    out.q[c] = checked_add(checked_mul(u[1][0], t.p[c]), checked_mul(u[1][1], t.q[c]));
  }
  return out;
}

ObstructionReport theta_smoothness_obstruction() {
  ObstructionReport rep;
  rep.every_row_has_pm3 = true;
  rep.two_or_more_pm3_everywhere = true;
  rep.min_count_pm3 = 4;
  for (int mask = 0; mask < 8; ++mask) {
    ObstructionRow row;
    // bit 2 -> d12, bit 1 -> d23, bit 0 -> d13; bit set means -1
    row.minors = {(mask & 4) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 1) ? -1 : 1};
    MinorTriple m{row.minors[0], row.minors[2], row.minors[1]};
    row.boxes = boxes_from_minors(m);
    for (Int b : row.boxes.v) {
      if (b == 3 || b == -3) ++row.count_pm3;
      if (b == 1 || b == -1) ++row.count_pm1;
    }
    rep.every_row_has_pm3 = rep.every_row_has_pm3 && row.count_pm3 >= 1;
    rep.some_row_all_pm1 = rep.some_row_all_pm1 || row.count_pm1 == 4;
    rep.two_or_more_pm3_everywhere = rep.two_or_more_pm3_everywhere && row.count_pm3 >= 2;
    rep.min_count_pm3 = std::min(rep.min_count_pm3, row.count_pm3);
    rep.max_count_pm3 = std::max(rep.max_count_pm3, row.count_pm3);
    rep.rows.push_back(row);
  }
  return rep;
}

std::string IsotropyOrder::str() const { return infinite ? "infinite" : std::to_string(order); }

IsotropyOrder circle_isotropy_order(const std::vector<Int>& exponents) {
  Int g = 0;
  for (Int e : exponents) g = gcd(g, e);
  if (g == 0) return IsotropyOrder::unbounded();
  return IsotropyOrder::finite(static_cast<std::uint64_t>(g));
}

std::array<Int, 2> smith_diagonal(const IntMatrix2& e) {
  const Int d1 = gcd(gcd(e[0][0], e[0][1]), gcd(e[1][0], e[1][1]));
  if (d1 == 0) return {0, 0};
  Int det = det2(e[0][0], e[0][1], e[1][0], e[1][1]);
  if (det < 0) det = checked_neg(det);
  return {d1, det / d1};
}

IsotropyOrder torus_isotropy_order(const IntMatrix2& e) {
  const auto d = smith_diagonal(e);
  if (d[0] == 0 || d[1] == 0) return IsotropyOrder::unbounded();
  return IsotropyOrder::finite(static_cast<std::uint64_t>(checked_mul(d[0], d[1])));
}

std::array<IntMatrix2, 4> singular_fixed_point_systems(const WeightMatrix& t) {
  static constexpr int signs[4][2] = {{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}};
  std::array<IntMatrix2, 4> out{};
  for (int k = 0; k < 4; ++k) {
    for (int r = 0; r < 2; ++r) {
      const int col = r + 1;
      const int s = signs[k][r];
      // tau^(p1 -+ pc) = rho^(-q1 +- qc)  <=>  tau^(p1 -+ pc) rho^(q1 -+ qc) = 1
      out[k][r][0] = s < 0 ? checked_sub(t.p[0], t.p[col]) : checked_add(t.p[0], t.p[col]);
      out[k][r][1] = s < 0 ? checked_sub(t.q[0], t.q[col]) : checked_add(t.q[0], t.q[col]);
    }
  }
  return out;
}

std::array<std::uint64_t, 4> singular_group_orders(const WeightMatrix& theta) {
  const Verdict v = theta_locally_free(theta);
  if (!v) throw Error(ErrorKind::NotLocallyFree, v.reason);
  const BoxQuad b = box_determinants(theta);
  std::array<std::uint64_t, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = static_cast<std::uint64_t>(b[k] < 0 ? -b[k] : b[k]);
  return out;
}

std::vector<WeightTriple> enumerate_admissible_triples(Int bound) {
  if (bound < 3) throw Error(ErrorKind::InvalidArgument, "bound must be >= 3");
  std::vector<WeightTriple> out;
  for (Int a = 1; a <= bound; ++a)
    for (Int b = a + 1; b <= bound; ++b)
      for (Int c = b + 1; c <= bound; ++c) {
        const WeightTriple t{{a, b, c}};
        if (is_admissible_triple(t)) out.push_back(t);
      }
  return out;
}

std::vector<WeightQuad> enumerate_free_quadruples(Int bound) {
  if (bound < 3) throw Error(ErrorKind::InvalidArgument, "bound must be >= 3");
  std::vector<WeightQuad> out;
  for (Int a = 0; a <= bound; ++a)
    for (Int b = a + 1; b <= bound; ++b)
      for (Int c = b + 1; c <= bound; ++c)
        for (Int d = c + 1; d <= bound; ++d) {
          const WeightQuad q{{a, b, c, d}};
          if (is_free_quadruple(q)) out.push_back(q);
        }
  return out;
}

ParityReport verify_parity_obstruction(Int bound) {
  if (bound < 4) throw Error(ErrorKind::InvalidArgument, "bound must be >= 4");
  ParityReport rep;
  rep.bound = bound;
  for (Int a = 1; a <= bound && !rep.counterexample; ++a)
    for (Int b = a + 1; b <= bound && !rep.counterexample; ++b)
      for (Int c = b + 1; c <= bound && !rep.counterexample; ++c)
        for (Int d = c + 1; d <= bound; ++d) {
          ++rep.quadruples_checked;
          if (is_admissible_triple({{a, b, c}}) && is_admissible_triple({{a, b, d}}) &&
              is_admissible_triple({{a, c, d}}) && is_admissible_triple({{b, c, d}})) {
            rep.counterexample = WeightQuad{{a, b, c, d}};
            break;
          }
        }
  rep.every_admissible_triple_has_one_even = true;
  for (const auto& t : enumerate_admissible_triples(bound)) {
    ++rep.admissible_triples;
    const int evens = (t[0] % 2 == 0) + (t[1] % 2 == 0) + (t[2] % 2 == 0);
    if (evens != 1) rep.every_admissible_triple_has_one_even = false;
  }
  return rep;
}

}  // namespace hkq
