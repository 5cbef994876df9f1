#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collrates/config.hpp"
#include "collrates/spline.hpp"
#include "collrates/xsec.hpp"

namespace collrates {

// Maxwell mean relative speed sqrt(8 kB T / (pi mu)), cm/s.
double mean_speed(double temperature_k, double mu_u, const PipelineConfig& cfg = {});

// Energetics and degeneracies of one directed transition. The rate integral
// starts at the threshold U_min = |dE|/4, where the bracket factor of the
// integrand vanishes.
struct TransitionContext {
    double delta_e_cm1 = 0.0;  // E_final - E_initial; negative for quenching
    double g1 = 1.0, g2 = 1.0;    // initial degeneracies (2j+1)
    double g1p = 1.0, g2p = 1.0;  // final degeneracies

    double u_min() const { return std::abs(delta_e_cm1) / 4.0; }

    static TransitionContext from(const TransitionKey& key, const LevelList& target,
                                  const LevelList& projectile);
};

// The thermally weighted integrand of the rate integral,
//
//   I(U) = sigma~(U) exp{-(U/kBT)[1 + (dE/4U)^2]} [1 - (dE/4U)^2] U,
//
// evaluable on [U_min, inf). sigma~ samples on the collision-energy grid are
// the data; the weight factor is analytic. Between samples sigma~ is a
// natural cubic spline of ln(sigma~) vs U (linear-sigma~ spline clamped at 0
// when a sample is zero); outside the sampled range sigma~ is continued
// exponentially with the log-slope of the two nearest samples, the upper
// slope clamped to 1/(2 kBT) so the tail stays integrable. The curve passes
// through the anchor (U_min, 0) exactly — the bracket factor vanishes there —
// and through every sampled integrand value.
class IntegrandCurve {
public:
    IntegrandCurve(const SymmetrizedXsec& sx, const TransitionContext& ctx,
                   double temperature_k, const PipelineConfig& cfg = {});

    double operator()(double u_cm1) const;  // I(U), >= 0; zero at/below U_min

    double u_min() const { return u_min_; }
    const std::vector<double>& sample_u() const { return u_; }
    const std::vector<double>& sample_i() const { return integrand_; }
    bool log_interpolation() const { return log_interp_; }
    double tail_log_slope() const { return slope_hi_; }
    double temperature() const { return temperature_; }

private:
    double sigma_at(double u) const;
    double weight_at(double u) const;

    double temperature_ = 0.0;
    double kbt_ = 0.0;
    double delta_e_ = 0.0;
    double u_min_ = 0.0;
    std::vector<double> u_;          // usable grid points (U > U_min, data present)
    std::vector<double> sigma_;      // sigma~ at those points
    std::vector<double> integrand_;  // I at those points
    CubicSpline interp_;             // of ln sigma~ (or sigma~ in fallback)
    bool log_interp_ = true;
    double slope_lo_ = 0.0;          // d ln(sigma~)/dU below the first sample
    double slope_hi_ = 0.0;          // d ln(sigma~)/dU above the last sample
};

// k(T) in cm^3/s:
//   k = v_ave(T)/(kBT)^2 * exp(-dE/2kBT)/(g1 g2) * Integral_{U_min}^inf I(U) dU,
// with the single A^2 -> cm^2 conversion applied here. Knot intervals are
// integrated by adaptive Simpson to cfg.quad_rtol; the tail beyond the last
// sample in panels of width kBT until a panel contributes less than
// quad_rtol of the accumulated integral. Non-convergence within
// cfg.max_refinements raises NumericalError, never a silent truncation.
double integrate_rate(const IntegrandCurve& curve, const TransitionContext& ctx,
                      double temperature_k, const PipelineConfig& cfg = {});

struct RateTable {
    std::vector<double> temps_k;
    std::map<TransitionKey, std::vector<double>> entries;  // cm^3/s per T
    std::optional<LevelList> target;
    std::optional<LevelList> projectile;
};

struct RateFailure {
    enum class Kind { data, numerical };
    TransitionKey key;
    Kind kind = Kind::data;
    std::string reason;
};

struct RateBatchResult {
    RateTable table;
    std::vector<RateFailure> failures;
    std::vector<std::string> warnings;
};

// Per-transition smoothness diagnostics, one row per (pair, T).
struct SmoothnessRecord {
    TransitionKey key;
    double temperature_k = 0.0;
    int n_points = 0;
    bool log_interpolation = true;
    int clamped_scan_points = 0;  // dense-scan points where the linear
                                  // fallback spline was clamped at zero
    double tail_log_slope = 0.0;
    double min_scan_value = 0.0;
};

// Rates for every transition pair in the table at every temperature, both
// directions. Pairs may be computed on `jobs` threads; each pair is a pure
// function of its inputs and results are merged in key order, so the output
// is identical for any job count. Per-pair failures are collected, not fatal.
RateBatchResult rate_table(const CrossSectionTable& table, const std::vector<double>& temps_k,
                           const PipelineConfig& cfg = {}, int jobs = 1,
                           std::vector<SmoothnessRecord>* smoothness = nullptr);

}  // namespace collrates
