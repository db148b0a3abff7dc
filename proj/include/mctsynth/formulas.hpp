#pragma once

/// Closed-form depth/count formulas for the conditionally-clean-ancilla
/// constructions, exact-integer interval lookup for the piecewise families,
/// and the log-lower-bound checks. All arithmetic is in exact integers.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mctsynth {

/// Smallest d with 2^d >= n (n >= 1).
inline uint32_t ceil_log2(uint64_t n) {
  if (n == 0) throw std::invalid_argument("ceil_log2(0)");
  uint32_t d = 0;
  while ((uint64_t{1} << d) < n) ++d;
  return d;
}

/// Largest j with 2^j <= n (n >= 1).
inline uint32_t floor_log2(uint64_t n) {
  if (n == 0) throw std::invalid_argument("floor_log2(0)");
  uint32_t j = 0;
  while ((uint64_t{2} << j) <= n) ++j;
  return j;
}

/// Smallest d with 2^d >= n/den (ceil(log2(n/den)) over the rationals).
inline uint32_t ceil_log2_ratio(uint64_t n, uint64_t den) {
  uint32_t d = 0;
  while ((static_cast<unsigned __int128>(1) << d) * den < n) ++d;
  return d;
}

/// Every circuit touching all n inputs is at least this deep.
inline uint32_t lower_bound_depth(uint64_t n) {
  if (n < 2) throw std::invalid_argument("lower_bound_depth needs n >= 2");
  return ceil_log2(n);
}

enum class Branch : uint8_t { First, Second };

struct IntervalHit {
  uint32_t k = 2;       // >= 2
  Branch branch = Branch::First;
  uint64_t lo = 0, hi = 0;  // inclusive
};

struct FormulaResult {
  uint64_t value = 0;
  std::string source;
  std::optional<IntervalHit> hit;
};

struct OutOfDomain : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

/// Interval family endpoints for Step-I ancilla count m1 (j = floor(log2 m1)):
///   A(k) = m1*2^(k-1) + 2^(j+k-2) + k - 1   (family minimum at k = 2)
///   B(k) = m1*2^k + k - 1
///   C(k) = m1*2^k + 2^(j+k-1) + k - 1
/// The families tile [A(2), inf): first branch [A(k), B(k)-1] or [A(k), B(k)]
/// depending on the quantity, second branch the rest up to C(k) = A(k+1) - 1.
struct Endpoints {
  uint64_t a, b, c;
};

inline Endpoints endpoints(uint64_t m1, uint32_t k) {
  uint32_t j = floor_log2(m1);
  uint64_t a = m1 * (uint64_t{1} << (k - 1)) + (uint64_t{1} << (j + k - 2)) + k - 1;
  uint64_t b = m1 * (uint64_t{1} << k) + k - 1;
  uint64_t c = m1 * (uint64_t{1} << k) + (uint64_t{1} << (j + k - 1)) + k - 1;
  return {a, b, c};
}

enum class Family : uint8_t { Step2, Sigma, Total };

inline uint64_t family_value(Family f, uint64_t m1, uint32_t k, Branch br) {
  uint32_t j = floor_log2(m1);
  uint64_t second = br == Branch::Second ? 1 : 0;
  switch (f) {
    case Family::Step2:
      return j + 2 * uint64_t{k} - 3 + second;
    case Family::Sigma:
      return uint64_t{k} + m1 - 1 + second;
    case Family::Total:
      if (m1 == 1) return 4 * uint64_t{k} - 2 + 2 * second;
      return 2 * uint64_t{j} + 4 * uint64_t{k} + 2 * second;
  }
  return 0;
}

/// Locates n in the interval family and returns the branch value. The sigma
/// family closes its first branch at B(k); step2/total close it at B(k)-1
/// (second branch owns B(k)), which the anchor values force. If families ever
/// overlapped at a boundary, the smaller value would win (documented
/// tie-break); with this partition the scan finds exactly one hit.
inline FormulaResult lookup(Family f, uint64_t n, uint64_t m1, const std::string& source) {
  if (m1 < 1) throw std::invalid_argument(source + ": m1 >= 1 required");
  std::optional<FormulaResult> best;
  for (uint32_t k = 2;; ++k) {
    Endpoints e = endpoints(m1, k);
    if (e.a > n) break;
    uint64_t first_hi = f == Family::Sigma ? e.b : e.b - 1;
    uint64_t second_lo = first_hi + 1;
    std::optional<IntervalHit> hit;
    if (n >= e.a && n <= first_hi) hit = IntervalHit{k, Branch::First, e.a, first_hi};
    else if (n >= second_lo && n <= e.c) hit = IntervalHit{k, Branch::Second, second_lo, e.c};
    if (hit) {
      uint64_t v = family_value(f, m1, k, hit->branch);
      if (!best || v < best->value) best = FormulaResult{v, source, hit};
    }
  }
  if (!best)
    throw OutOfDomain(source + ": n=" + std::to_string(n) + " below the k=2 interval (min " +
                      std::to_string(endpoints(m1, 2).a) + ")");
  return *best;
}

}  // namespace detail

/// Smallest n the piecewise families cover for a given m1 (the k=2 low end).
inline uint64_t formula_domain_min(uint64_t m1) { return detail::endpoints(m1, 2).a; }

// Two-ancilla scheme (m1 = 1): Step-II depth 2k-3 / 2k-2, sigma k / k+1,
// end-to-end depth 4k-2 / 4k.
inline FormulaResult khattar2_step2_depth(uint64_t n) {
  return detail::lookup(detail::Family::Step2, n, 1, "khattar2_step2_depth");
}
inline FormulaResult khattar2_sigma(uint64_t n) {
  return detail::lookup(detail::Family::Sigma, n, 1, "khattar2_sigma");
}
inline FormulaResult khattar2_total_depth(uint64_t n) {
  return detail::lookup(detail::Family::Total, n, 1, "khattar2_total_depth");
}

// Ancilla/depth trade-off (m1 >= 2): adds the floor(log2 m1) terms.
inline FormulaResult tradeoff_step2_depth(uint64_t n, uint64_t m1) {
  if (m1 < 2) throw std::invalid_argument("tradeoff_step2_depth: m1 >= 2");
  return detail::lookup(detail::Family::Step2, n, m1, "tradeoff_step2_depth");
}
inline FormulaResult tradeoff_sigma(uint64_t n, uint64_t m1) {
  if (m1 < 2) throw std::invalid_argument("tradeoff_sigma: m1 >= 2");
  return detail::lookup(detail::Family::Sigma, n, m1, "tradeoff_sigma");
}
inline FormulaResult tradeoff_total_depth(uint64_t n, uint64_t m1) {
  if (m1 < 2) throw std::invalid_argument("tradeoff_total_depth: m1 >= 2");
  return detail::lookup(detail::Family::Total, n, m1, "tradeoff_total_depth");
}

/// True iff the two-ancilla end-to-end depth is >= 3*log2(n). Epsilon-free:
/// d >= 3*log2(n) over the reals iff 2^d >= n^3 (both sides monotone, d
/// integral), so compare 2^d against n cubed in wide integers.
inline bool khattar2_lower_bound_check(uint64_t n) {
  if (n < 7) throw std::invalid_argument("khattar2_lower_bound_check: n >= 7");
  uint64_t d = khattar2_total_depth(n).value;
  if (d >= 127) return true;  // 2^127 exceeds any representable n^3
  unsigned __int128 lhs = (unsigned __int128){1} << d;
  unsigned __int128 cube = (unsigned __int128)n * n * n;
  return lhs >= cube;
}

/// One row of the published benchmark comparison, evaluated at concrete n.
struct ComparisonMetrics {
  uint64_t toffoli_count = 0;
  uint64_t t_count = 0;
  uint64_t t_depth_formula = 0;
  bool count_is_lower_bound = false;  // formula-only row reports ">= count"
};

/// Printed closed forms per decomposition family. `strategy` is one of
/// gidney-ladder, nakanishi, nie, khattar-1anc, khattar-2anc, tradeoff
/// (m1 required for tradeoff).
inline ComparisonMetrics comparison_metrics(const std::string& strategy, uint64_t n,
                                    std::optional<uint64_t> m1 = std::nullopt) {
  if (n < 3) throw std::invalid_argument("comparison_metrics: n >= 3");
  ComparisonMetrics m;
  if (strategy == "gidney-ladder") {
    m.toffoli_count = n - 2;  // (n-3) two-controlled + 1 three-controlled
    m.t_count = 4 * n - 6;
    m.t_depth_formula = ceil_log2_ratio(n, 3) + 6;
  } else if (strategy == "nakanishi") {
    m.toffoli_count = n - 2;
    m.t_count = 4 * n - 6;
    m.t_depth_formula = ceil_log2_ratio(n, 3) + 2;
  } else if (strategy == "nie") {
    m.toffoli_count = 4 * n + 4;
    m.count_is_lower_bound = true;
    m.t_count = 16 * n + 16;
    m.t_depth_formula = 20 * uint64_t{ceil_log2(n)};
  } else if (strategy == "khattar-1anc") {
    m.toffoli_count = 2 * n - 3;
    m.t_count = 8 * n - 12;
    m.t_depth_formula = 2 * n - 3;
  } else if (strategy == "khattar-2anc") {
    m.toffoli_count = 2 * n - 3;
    m.t_count = 8 * n - 12;
    m.t_depth_formula = khattar2_total_depth(n).value;
  } else if (strategy == "tradeoff") {
    if (!m1 || *m1 < 2) throw std::invalid_argument("comparison_metrics: tradeoff needs m1 >= 2");
    m.toffoli_count = 2 * n - *m1 - 3;
    m.t_count = 8 * n - 4 * *m1 - 12;
    m.t_depth_formula = tradeoff_total_depth(n, *m1).value;
  } else {
    throw std::invalid_argument("comparison_metrics: unknown strategy '" + strategy + "'");
  }
  return m;
}

}  // namespace mctsynth
