#include "uflab/schedule.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uflab {

ScaleSchedule ScaleSchedule::union_find(long double beta, long double gamma, long double lambda) {
  ScaleSchedule s;
  s.family_ = ScheduleFamily::UnionFind;
  s.beta_ = beta;
  s.gamma_ = gamma;
  s.lambda_ = lambda;
  s.levels_ = kMaxLevel;
  s.fill();
  return s;
}

ScaleSchedule ScaleSchedule::greedy(long double beta, long double gamma, long double lambda) {
  ScaleSchedule s = union_find(beta, gamma, lambda);
  s.family_ = ScheduleFamily::Greedy;
  s.fill();
  return s;
}

ScaleSchedule ScaleSchedule::table(std::vector<long double> d, std::vector<long double> b) {
  if (d.size() != b.size() || d.empty()) throw std::invalid_argument("table schedule needs matching non-empty d and b");
  ScaleSchedule s;
  s.family_ = ScheduleFamily::Table;
  s.levels_ = static_cast<int>(d.size());
  s.d_ = std::move(d);
  s.b_ = std::move(b);
  s.fill();
  return s;
}

long double ScaleSchedule::exponent(long double k) const {
  if (family_ == ScheduleFamily::Greedy) return k;
  return k <= 0 ? 0.0L : k * std::log(k);
}

void ScaleSchedule::fill() {
  if (family_ != ScheduleFamily::Table) {
    if (!(beta_ > 0 && gamma_ > 0 && lambda_ > 0)) throw std::invalid_argument("beta, gamma, lambda must be positive");
    b_.assign(levels_, 0);
    d_.assign(levels_, 0);
    const long double ll = std::log(lambda_);
    for (int k = 1; k <= levels_; ++k) {
      b_[k - 1] = beta_ * std::exp(exponent(k + 1) * ll) + 1;
      d_[k - 1] = gamma_ * std::exp(exponent(k) * ll) - 1;
    }
  }
  f_.assign(levels_, 0);
  long double f = 1;
  for (int k = 1; k <= levels_; ++k) {
    f_[k - 1] = f;
    const long double dk = d_[k - 1];
    const long double bk = b_[k - 1];
    f -= (f + 1) * (dk + 1) / ((f + 1) * (dk + 0.5L) + f * (bk - 1));
  }
}

long double ScaleSchedule::b(int k) const {
  if (k < 1 || k > levels_) throw std::out_of_range("schedule level out of range");
  return b_[k - 1];
}

long double ScaleSchedule::d(int k) const {
  if (k < 1 || k > levels_) throw std::out_of_range("schedule level out of range");
  return d_[k - 1];
}

long double ScaleSchedule::f(int k) const {
  if (k < 1 || k > levels_) throw std::out_of_range("schedule level out of range");
  return f_[k - 1];
}

std::string to_string(ScheduleFamily f) {
  switch (f) {
    case ScheduleFamily::UnionFind: return "uf";
    case ScheduleFamily::Greedy: return "greedy";
    case ScheduleFamily::Table: return "table";
  }
  return "?";
}

long double riemann_zeta(long double s) {
  if (s <= 1) return std::numeric_limits<long double>::infinity();
  long double sum = 0;
  for (long long n = 1;; ++n) {
    sum += std::pow(static_cast<long double>(n), -s);
    // Midpoint integral estimate of the remaining terms.
    const long double tail = std::pow(n + 0.5L, 1 - s) / (s - 1);
    if (tail < 1e-13L * sum || n > 50'000'000) return sum + tail;
  }
}

long double series_constant(ScheduleFamily family) {
  if (family == ScheduleFamily::Greedy) return 3;
  long double c = 0;
  for (int n = 2; n < 400; ++n) {
    const long double term = n * std::log(static_cast<long double>(n)) / std::ldexp(1.0L, n - 1);
    c += term;
    if (term < 1e-18L) break;
  }
  return c;
}

std::vector<ConstraintResult> check_constraints(const ScaleSchedule& s, int max_k) {
  std::vector<ConstraintResult> out;
  const int K = std::min(max_k, s.levels());
  const long double beta = s.beta(), gamma = s.gamma(), lambda = s.lambda();

  if (s.family() == ScheduleFamily::UnionFind) {
    out.push_back({"lambda > e", lambda > std::exp(1.0L)});
    const long double z = riemann_zeta(std::log(lambda));
    out.push_back({"(8 gamma / beta)(zeta(log lambda) - 1) <= 1", std::isfinite(z) && 8 * gamma / beta * (z - 1) <= 1});
    out.push_back({"beta lambda > 2 gamma", beta * lambda > 2 * gamma});
    out.push_back({"gamma >= 2 gamma / lambda + 2 beta + lambda^(-2 log 2)",
                   gamma >= 2 * gamma / lambda + 2 * beta + std::pow(lambda, -2 * std::log(2.0L))});
    out.push_back({"gamma lambda >= 2", gamma * lambda >= 2});
  } else if (s.family() == ScheduleFamily::Greedy) {
    out.push_back({"gamma lambda >= 2", gamma * lambda >= 2});
    out.push_back({"beta lambda > gamma", beta * lambda > gamma});
    out.push_back({"gamma lambda - 1/lambda >= 2(gamma + 2 beta lambda)",
                   gamma * lambda - 1 / lambda >= 2 * (gamma + 2 * beta * lambda)});
  }

  bool order = true, spacing = true, dmin = true, level = true;
  for (int k = 1; k <= K; ++k) {
    const long double dk = s.d(k), bk = s.b(k);
    if (!(bk >= dk && dk > 0)) order = false;
    if (k < s.levels() && !(s.d(k + 1) >= 2 * (dk + bk))) spacing = false;
    if (!(dk >= 1)) dmin = false;
    if (s.family() == ScheduleFamily::Greedy) {
      if (!(bk - 1 > dk + 1)) level = false;
    } else {
      const long double ratio = (dk + 1) / (bk - 1);
      if (!(s.f(k) > ratio && ratio > 0)) level = false;
    }
  }
  out.push_back({"b_k >= d_k > 0", order});
  out.push_back({"d_{k+1} >= 2(d_k + b_k)", spacing});
  out.push_back({"d_k >= 1", dmin});
  if (s.family() == ScheduleFamily::Greedy) {
    out.push_back({"b_k - 1 > d_k + 1", level});
  } else {
    out.push_back({"f_k > (d_k + 1)/(b_k - 1) > 0", level});
  }
  return out;
}

bool all_ok(const std::vector<ConstraintResult>& results) {
  for (const auto& r : results) {
    if (!r.ok) return false;
  }
  return true;
}

long double log10_p_k_bound(int k, long double p, long double xi, long double Lambda, int Delta,
                            const ScaleSchedule& s) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > s.levels()) throw std::out_of_range("schedule too short for k");
  long double total = std::ldexp(1.0L, k) * std::log10(xi * p);
  for (int j = 0; j < k; ++j) {
    const int m = k - j;
    const long double factor = std::log10(Lambda) + Delta * std::log10(s.b(m) + s.d(m) / 2);
    total += std::ldexp(1.0L, j) * factor;
  }
  return total;
}

int k0_cutoff(const ScaleSchedule& s, int distance) {
  int best = 0;
  for (int k = 1; k <= s.levels(); ++k) {
    const long double dk = s.d(k);
    const bool fits = s.family() == ScheduleFamily::Greedy ? dk + 1 < distance
                                                           : dk + (dk + 1) / s.f(k) + 1 < distance;
    if (!fits) break;
    best = k;
  }
  return best;
}

long long kbar_cutoff(int distance, long double log10_ratio) {
  const long double head = 3 * std::log10(static_cast<long double>(distance));
  long long best = -1;
  for (long long k = 0; k < 63; ++k) {
    if (head + std::ldexp(1.0L, static_cast<int>(k)) * log10_ratio >= 0) {
      best = k;
    } else {
      break;
    }
  }
  return best;
}

ThresholdReport analytical_threshold(long double xi, long double Lambda, int Delta, const ScaleSchedule& s,
                                     int distance, long double p) {
  ThresholdReport r;
  r.xi = xi;
  r.Lambda = Lambda;
  r.Delta = Delta;
  r.constraints = check_constraints(s);
  if (s.family() == ScheduleFamily::Table) return r;
  r.c = series_constant(s.family());
  const long double lambda = s.lambda();
  r.eta_limit = std::log(2.0L) / std::log(lambda);
  if (distance > 0) r.k0 = k0_cutoff(s, distance);
  if (!all_ok(r.constraints)) return r;

  const long double f1 = s.exponent(1);
  const long double K = s.beta() + (s.gamma() + std::pow(lambda, -f1)) / 2;
  r.log10_p_th = -(std::log10(xi) + std::log10(Lambda) + r.c * Delta * std::log10(lambda) + Delta * std::log10(K));
  r.p_th = std::pow(10.0L, r.log10_p_th);
  r.defined = true;
  if (distance > 0 && p > 0) {
    const long double ratio = std::log10(p) - r.log10_p_th;
    r.kbar_unbounded = ratio >= 0;
    if (!r.kbar_unbounded) r.kbar = kbar_cutoff(distance, ratio);
  }
  return r;
}

}  // namespace uflab
