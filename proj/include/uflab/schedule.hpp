#pragma once

#include <string>
#include <utility>
#include <vector>

namespace uflab {

enum class ScheduleFamily { UnionFind, Greedy, Table };

// Scale sequences (b_k, d_k) for k >= 1 and the derived f_k. The UF family
// uses b_k = beta lambda^{(k+1) ln(k+1)} + 1 and d_k = gamma lambda^{k ln k} - 1,
// the greedy family b_k = beta lambda^{k+1} + 1 and d_k = gamma lambda^k - 1,
// and a table schedule lists d_k and b_k explicitly.
class ScaleSchedule {
 public:
  static constexpr int kMaxLevel = 64;

  static ScaleSchedule union_find(long double beta, long double gamma, long double lambda);
  static ScaleSchedule greedy(long double beta, long double gamma, long double lambda);
  static ScaleSchedule table(std::vector<long double> d, std::vector<long double> b);

  ScheduleFamily family() const { return family_; }
  long double beta() const { return beta_; }
  long double gamma() const { return gamma_; }
  long double lambda() const { return lambda_; }

  // Highest k for which b_k and d_k are defined.
  int levels() const { return levels_; }
  long double b(int k) const;
  long double d(int k) const;
  // f_k from the stopping-guarantee recursion; f_1 = 1.
  long double f(int k) const;
  // The exponent function: k ln k (UF), k (greedy).
  long double exponent(long double k) const;

 private:
  ScaleSchedule() = default;
  void fill();

  ScheduleFamily family_ = ScheduleFamily::Table;
  long double beta_ = 0, gamma_ = 0, lambda_ = 0;
  int levels_ = 0;
  std::vector<long double> b_, d_, f_;  // index k - 1
};

std::string to_string(ScheduleFamily f);

// Riemann zeta by direct summation plus an integral tail, relative accuracy
// about 1e-12. Infinite for s <= 1.
long double riemann_zeta(long double s);

// Series constant c: sum_{n>=2} n ln n / 2^{n-1} for the UF family, 3 for the
// greedy family.
long double series_constant(ScheduleFamily family);

struct ConstraintResult {
  std::string name;
  bool ok = false;
};

// Every constraint of the family, per-level ones checked for k <= max_k (or
// the table length).
std::vector<ConstraintResult> check_constraints(const ScaleSchedule& s, int max_k = 50);
bool all_ok(const std::vector<ConstraintResult>& results);

// log10 of the clustering bound xi p squared 2^k times, times the product
// over j < k of [Lambda (b_{k-j} + d_{k-j}/2)^Delta]^{2^j}.
long double log10_p_k_bound(int k, long double p, long double xi, long double Lambda, int Delta,
                            const ScaleSchedule& s);

struct ThresholdReport {
  bool defined = false;          // constraints hold and p_th was evaluated
  long double log10_p_th = 0;    // log10 of the threshold
  long double p_th = 0;          // may underflow to 0 in double precision consumers
  long double c = 0;
  long double xi = 0;
  long double Lambda = 0;
  int Delta = 0;
  std::vector<ConstraintResult> constraints;
  int k0 = -1;          // for the requested distance, -1 when no level fits
  long long kbar = -1;  // for the requested (d, p); -1 when none
  bool kbar_unbounded = false;  // p >= p_th
  long double eta_limit = 0;    // log_lambda 2
};

ThresholdReport analytical_threshold(long double xi, long double Lambda, int Delta, const ScaleSchedule& s,
                                     int distance = 0, long double p = 0);

// Largest k with the level-k extended cluster still shorter than d:
// UF: d_k + (d_k + 1)/f_k + 1 < d; greedy: d_k + 1 < d. Returns 0 if none.
int k0_cutoff(const ScaleSchedule& s, int distance);

// max{k >= 0 : d^3 (p/p_th)^{2^k} >= 1}; -1 if even k = 0 fails.
long long kbar_cutoff(int distance, long double log10_ratio);

}  // namespace uflab
