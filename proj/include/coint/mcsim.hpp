#pragma once

// Monte Carlo engine: data-generating processes, size / power experiments
// and simulated null quantiles used to cross-check the embedded tables.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "coint/cointegration.hpp"
#include "coint/error.hpp"
#include "coint/rng.hpp"
#include "coint/series.hpp"
#include "coint/unitroot.hpp"

namespace coint::mc {

enum class DgpKind { RandomWalk, Ar1, I2, Cointegrated };

/// Data-generating process. Every component starts at zero.
///
///  RandomWalk:   y_t = y_{t-1} + drift + e_t, `dimension` independent walks.
///  Ar1:          y_t = rho y_{t-1} + e_t.
///  I2:           y_t = y_{t-1} + w_t with w_t a driftless random walk.
///  Cointegrated: triangular system with `dimension - rank` common trends
///                w_j (random walks with `drift`) and, for i < rank,
///                y_i = sum_j w_j + u_i, u_i,t = (1 - loading) u_i,t-1 + e_t.
///                y_{rank + j} = w_j. beta_i = e_i - sum_j e_{rank+j}.
///
/// `trend_drift` adds a linear trend to the increments of the first component
/// (Δy_t gains trend_drift * t), giving a quadratic trend in levels.
struct Dgp {
  DgpKind kind = DgpKind::RandomWalk;
  int dimension = 1;
  double rho = 0.0;
  int rank = 1;
  double loading = 1.0;
  double scale = 1.0;
  double drift = 0.0;
  double trend_drift = 0.0;
  bool drift_first_only = false;

  static Dgp random_walk(int dimension = 1, double drift = 0.0) {
    Dgp d;
    d.dimension = dimension;
    d.drift = drift;
    return d;
  }
  static Dgp ar1(double rho, int dimension = 1) {
    Dgp d;
    d.kind = DgpKind::Ar1;
    d.rho = rho;
    d.dimension = dimension;
    return d;
  }
  static Dgp i2(int dimension = 1) {
    Dgp d;
    d.kind = DgpKind::I2;
    d.dimension = dimension;
    return d;
  }
  static Dgp cointegrated(int dimension, int rank, double loading = 1.0, double drift = 0.0) {
    Dgp d;
    d.kind = DgpKind::Cointegrated;
    d.dimension = dimension;
    d.rank = rank;
    d.loading = loading;
    d.drift = drift;
    return d;
  }
};

struct McConfig {
  std::uint64_t seed = 20240101;
  int replications = 1000;
  int sample_length = 100;
  int threads = 0;  ///< 0: hardware concurrency
};

struct McReport {
  double rejection_rate = 0.0;
  std::map<double, double> quantiles;  ///< probability -> statistic
  std::map<int, int> rank_counts;      ///< Johansen experiments: selected rank -> count
  std::vector<double> statistics;      ///< per replication, in replication order (NaN on failure)
  double mean = 0.0;
  double variance = 0.0;
  int replications_used = 0;
  int failures = 0;
  std::string first_failure;
  double elapsed_seconds = 0.0;

  double rank_frequency(int rank) const {
    auto it = rank_counts.find(rank);
    return replications_used == 0 || it == rank_counts.end()
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(replications_used);
  }
};

inline void validate(const Dgp& dgp) {
  if (dgp.dimension < 1) throw detail::make_error(ErrorKind::BadParameter, "DGP dimension must be positive");
  if (!(dgp.scale > 0.0)) throw detail::make_error(ErrorKind::BadParameter, "innovation scale must be positive");
  if (dgp.kind == DgpKind::Ar1 && !(std::abs(dgp.rho) < 1.0)) {
    throw detail::make_error(ErrorKind::BadParameter, "AR(1) coefficient must satisfy |rho| < 1");
  }
  if (dgp.kind == DgpKind::Cointegrated) {
    if (dgp.rank < 1 || dgp.rank >= dgp.dimension) {
      throw detail::make_error(ErrorKind::BadParameter, "cointegrated DGP needs 1 <= rank < dimension");
    }
    if (!(dgp.loading > 0.0 && dgp.loading < 2.0)) {
      throw detail::make_error(ErrorKind::BadParameter, "loading strength must lie in (0, 2)");
    }
  }
}

/// Draws one dataset with series named y1..yn. Output is a pure function of
/// (dgp, length, seed).
inline Dataset generate(const Dgp& dgp, int length, std::uint64_t seed, int start_year = 1) {
  validate(dgp);
  if (length < 20) throw detail::make_error(ErrorKind::BadParameter, "DGP length must be at least 20");
  const int n = dgp.dimension;
  Xoshiro256 rng(seed);
  std::vector<std::vector<double>> y(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(length)));
  std::vector<double> level(static_cast<std::size_t>(n), 0.0);  // walk / trend / AR state
  std::vector<double> aux(static_cast<std::size_t>(n), 0.0);    // I2 inner walk, cointegration errors
  std::vector<double> e(static_cast<std::size_t>(n));

  auto drift_for = [&](int j) { return dgp.drift_first_only && j > 0 ? 0.0 : dgp.drift; };

  for (int t = 0; t < length; ++t) {
    for (auto& v : e) v = dgp.scale * rng.gaussian();
    const double trend_inc = dgp.trend_drift * static_cast<double>(t + 1);
    switch (dgp.kind) {
      case DgpKind::RandomWalk:
        for (int j = 0; j < n; ++j) {
          level[j] += drift_for(j) + e[j] + (j == 0 ? trend_inc : 0.0);
          y[j][t] = level[j];
        }
        break;
      case DgpKind::Ar1:
        for (int j = 0; j < n; ++j) {
          level[j] = dgp.rho * level[j] + e[j];
          y[j][t] = level[j];
        }
        break;
      case DgpKind::I2:
        for (int j = 0; j < n; ++j) {
          aux[j] += e[j];
          level[j] += aux[j];
          y[j][t] = level[j];
        }
        break;
      case DgpKind::Cointegrated: {
        const int r = dgp.rank;
        double common = 0.0;
        for (int j = r; j < n; ++j) {
          level[j] += drift_for(j - r) + e[j];
          y[j][t] = level[j];
          common += level[j];
        }
        for (int i = 0; i < r; ++i) {
          aux[i] = (1.0 - dgp.loading) * aux[i] + e[i];
          y[i][t] = common + aux[i];
        }
        break;
      }
    }
  }

  std::vector<Series> out;
  for (int j = 0; j < n; ++j) out.emplace_back("y" + std::to_string(j + 1), start_year, std::move(y[j]));
  return Dataset(std::move(out));
}

namespace detail {

/// Runs `body(index)` for every replication, spreading the indices over
/// worker threads. Results land in per-index slots, so order is irrelevant.
inline void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, std::max(1, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Outcome {
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double secondary = std::numeric_limits<double>::quiet_NaN();
  bool reject = false;
  int rank = -1;
  std::string error;
};

inline double empirical_quantile(std::vector<double> sorted_or_not, double p) {
  std::sort(sorted_or_not.begin(), sorted_or_not.end());
  const auto& v = sorted_or_not;
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  // Linear interpolation between order statistics (Hyndman-Fan type 7).
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline McReport aggregate(const std::vector<Outcome>& outcomes, std::chrono::steady_clock::time_point started) {
  McReport rep;
  std::vector<double> ok;
  int rejections = 0;
  rep.statistics.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    rep.statistics.push_back(o.statistic);
    if (!o.error.empty()) {
      if (rep.failures++ == 0) rep.first_failure = o.error;
      continue;
    }
    ok.push_back(o.statistic);
    rejections += o.reject ? 1 : 0;
    if (o.rank >= 0) ++rep.rank_counts[o.rank];
  }
  rep.replications_used = static_cast<int>(ok.size());
  if (!ok.empty()) {
    rep.rejection_rate = static_cast<double>(rejections) / static_cast<double>(ok.size());
    double sum = 0.0;
    for (double s : ok) sum += s;
    rep.mean = sum / static_cast<double>(ok.size());
    double ss = 0.0;
    for (double s : ok) ss += (s - rep.mean) * (s - rep.mean);
    rep.variance = ok.size() > 1 ? ss / static_cast<double>(ok.size() - 1) : 0.0;
    std::sort(ok.begin(), ok.end());
    for (double p : {0.01, 0.05, 0.10, 0.50, 0.90, 0.95, 0.99}) rep.quantiles[p] = empirical_quantile(ok, p);
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

inline std::vector<Outcome> run_outcomes(const McConfig& cfg,
                                         const std::function<Outcome(std::uint64_t seed)>& replicate) {
  if (cfg.replications < 1) throw coint::detail::make_error(ErrorKind::BadParameter, "replications must be positive");
  std::vector<Outcome> outcomes(static_cast<std::size_t>(cfg.replications));
  parallel_for(cfg.replications, cfg.threads, [&](int i) {
    try {
      outcomes[static_cast<std::size_t>(i)] = replicate(stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    } catch (const std::exception& ex) {
      outcomes[static_cast<std::size_t>(i)].error = ex.what();
    }
  });
  return outcomes;
}

inline McReport run(const McConfig& cfg, const std::function<Outcome(std::uint64_t seed)>& replicate) {
  const auto started = std::chrono::steady_clock::now();
  return aggregate(run_outcomes(cfg, replicate), started);
}

}  // namespace detail

enum class TestKind { Adf, JohansenTrace, JohansenMax };

inline TestKind parse_test_kind(std::string_view s) {
  if (s == "adf" || s == "adf-t") return TestKind::Adf;
  if (s == "johansen-trace" || s == "trace") return TestKind::JohansenTrace;
  if (s == "johansen-max" || s == "max-eigen" || s == "max") return TestKind::JohansenMax;
  throw coint::detail::make_error(ErrorKind::BadParameter, "unknown test '" + std::string(s) + "'");
}

/// Settings for the test run inside each replication.
struct TestOptions {
  AdfSpec adf{Deterministics::Constant, LagSelection::Fixed, 0, std::nullopt, 0.05};
  JohansenSpec johansen{};
};

/// Fraction of replications rejecting at `nominal` (0.01, 0.05 or 0.10)
/// against the embedded critical values. ADF uses the first series; the
/// Johansen tests reject when rank 0 is rejected and also tally the rank the
/// sequential procedure selects. Replications that throw are counted in
/// `failures` and excluded from the rate.
inline McReport rejection_rate(TestKind test, const Dgp& dgp, const McConfig& cfg, double nominal = 0.05,
                               const TestOptions& opts = {}) {
  validate(dgp);
  if (cfg.replications < 100) throw coint::detail::make_error(ErrorKind::BadParameter, "at least 100 replications");
  return detail::run(cfg, [&](std::uint64_t seed) {
    const Dataset d = generate(dgp, cfg.sample_length, seed);
    detail::Outcome o;
    if (test == TestKind::Adf) {
      const AdfResult r = adf_test(d[0], opts.adf);
      o.statistic = r.t_stat;
      o.reject = r.t_stat < r.critical_values.at(nominal);
      return o;
    }
    JohansenSpec spec = opts.johansen;
    spec.significance = nominal;
    const JohansenResult r = johansen_test(d, spec);
    const bool trace = test == TestKind::JohansenTrace;
    o.statistic = trace ? r.trace_stats[0] : r.max_eigen_stats[0];
    const auto& cv = trace ? r.critical_values_trace[0] : r.critical_values_max[0];
    o.reject = o.statistic > cv.at(nominal);
    o.rank = trace ? r.rank_trace : r.rank_max;
    return o;
  });
}

enum class Statistic { AdfT, Trace, MaxEigen };

inline Statistic parse_statistic(std::string_view s) {
  if (s == "adf-t" || s == "adf") return Statistic::AdfT;
  if (s == "trace") return Statistic::Trace;
  if (s == "max-eigen" || s == "max") return Statistic::MaxEigen;
  throw coint::detail::make_error(ErrorKind::BadParameter, "unknown statistic '" + std::string(s) + "'");
}

/// Null DGP matching each Johansen deterministic case's asymptotic theory:
/// driftless walks for cases 1, 2 and 4; a unit drift in the first walk for
/// case 3; a linear trend in the first walk's increments for case 5.
inline Dgp johansen_null_dgp(JohansenCase c, int n_minus_r) {
  Dgp d = Dgp::random_walk(n_minus_r);
  d.drift_first_only = true;
  if (c == JohansenCase::UnrestrictedConstant) d.drift = 1.0;
  if (c == JohansenCase::UnrestrictedTrend) d.trend_drift = 0.01;
  return d;
}

struct JohansenNullReports {
  McReport trace;
  McReport max_eigen;
};

/// Trace and maximum-eigenvalue statistics at r = 0, k = 1, from the same
/// replications of johansen_null_dgp.
inline JohansenNullReports simulate_johansen_null(JohansenCase jc, int n_minus_r, int length, const McConfig& cfg) {
  if (length < 20) throw coint::detail::make_error(ErrorKind::BadParameter, "length must be at least 20");
  if (n_minus_r < 1 || n_minus_r > johansen_tables::kMaxDimension) {
    throw coint::detail::make_error(ErrorKind::BadParameter, "n - r must lie in 1.." +
                                                                 std::to_string(johansen_tables::kMaxDimension));
  }
  const auto started = std::chrono::steady_clock::now();
  const Dgp dgp = johansen_null_dgp(jc, n_minus_r);
  const JohansenSpec spec{1, jc, 0.05};
  std::vector<detail::Outcome> outcomes = detail::run_outcomes(cfg, [&](std::uint64_t seed) {
    const Dataset d = generate(dgp, length, seed);
    const ConcentratedResiduals conc = residual_regressions(d, spec);
    const EigenSolution sol = solve_eigenproblem(moment_matrices(conc.r0, conc.r1, conc.t_eff));
    std::vector<double> lambda(sol.eigenvalues.data(), sol.eigenvalues.data() + n_minus_r);
    detail::Outcome o;
    o.statistic = trace_statistics(lambda, conc.t_eff)[0];
    o.secondary = max_eigen_statistics(lambda, conc.t_eff)[0];
    return o;
  });
  JohansenNullReports out;
  out.trace = detail::aggregate(outcomes, started);
  for (auto& o : outcomes) o.statistic = o.secondary;
  out.max_eigen = detail::aggregate(outcomes, started);
  return out;
}

/// Empirical null distribution of a statistic. For `AdfT`, `det_case` is
/// 1 = none, 2 = constant, 3 = constant + trend and the DGP is a driftless
/// random walk with zero-lag regressions; for the Johansen statistics it is
/// the 1..5 case, evaluated at r = 0 with k = 1 on johansen_null_dgp.
inline McReport simulate_quantiles(Statistic stat, int det_case, int n_minus_r, int length, const McConfig& cfg) {
  if (length < 20) throw coint::detail::make_error(ErrorKind::BadParameter, "length must be at least 20");
  if (cfg.replications < 100) throw coint::detail::make_error(ErrorKind::BadParameter, "at least 100 replications");
  if (stat == Statistic::AdfT) {
    if (det_case < 1 || det_case > 3 || n_minus_r != 1) {
      throw coint::detail::make_error(ErrorKind::BadParameter, "ADF simulation needs case 1..3 and one series");
    }
    const Deterministics det = det_case == 1   ? Deterministics::None
                               : det_case == 2 ? Deterministics::Constant
                                               : Deterministics::ConstantTrend;
    const AdfSpec spec{det, LagSelection::Fixed, 0, std::nullopt, 0.05};
    return detail::run(cfg, [&](std::uint64_t seed) {
      const Dataset d = generate(Dgp::random_walk(), length, seed);
      detail::Outcome o;
      o.statistic = adf_test(d[0], spec).t_stat;
      return o;
    });
  }
  auto both = simulate_johansen_null(johansen_case_from_int(det_case), n_minus_r, length, cfg);
  return stat == Statistic::Trace ? std::move(both.trace) : std::move(both.max_eigen);
}

/// Right-tail (Johansen) or left-tail (ADF) critical value at `level` from a report.
inline double critical_value(const McReport& rep, Statistic stat, double level) {
  const double p = stat == Statistic::AdfT ? level : 1.0 - level;
  auto it = rep.quantiles.lower_bound(p - 1e-12);
  if (it == rep.quantiles.end() || std::abs(it->first - p) > 1e-9) {
    std::vector<double> ok;
    for (double s : rep.statistics)
      if (!std::isnan(s)) ok.push_back(s);
    return detail::empirical_quantile(ok, p);
  }
  return it->second;
}

}  // namespace coint::mc
