#include "collrates/ratecalc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

#include "collrates/errors.hpp"

namespace collrates {

double mean_speed(double temperature_k, double mu_u, const PipelineConfig& cfg) {
    if (temperature_k <= 0) throw ConfigError("temperature must be positive");
    if (mu_u <= 0) throw ConfigError("reduced mass must be positive");
    const double kbt_erg = cfg.kb_cm1_per_k * temperature_k * cfg.hc_erg_cm;
    const double mu_g = mu_u * cfg.amu_g;
    return std::sqrt(8.0 * kbt_erg / (std::numbers::pi * mu_g));
}

TransitionContext TransitionContext::from(const TransitionKey& key, const LevelList& target,
                                          const LevelList& projectile) {
    TransitionContext ctx;
    const Level& t_i = target.at(key.initial.n1);
    const Level& p_i = projectile.at(key.initial.n2);
    const Level& t_f = target.at(key.final.n1);
    const Level& p_f = projectile.at(key.final.n2);
    ctx.delta_e_cm1 = (t_f.energy_cm1 + p_f.energy_cm1) - (t_i.energy_cm1 + p_i.energy_cm1);
    ctx.g1 = t_i.degeneracy();
    ctx.g2 = p_i.degeneracy();
    ctx.g1p = t_f.degeneracy();
    ctx.g2p = p_f.degeneracy();
    return ctx;
}

IntegrandCurve::IntegrandCurve(const SymmetrizedXsec& sx, const TransitionContext& ctx,
                               double temperature_k, const PipelineConfig& cfg) {
    if (temperature_k <= 0) throw ConfigError("temperature must be positive");
    temperature_ = temperature_k;
    kbt_ = cfg.kb_cm1_per_k * temperature_k;
    delta_e_ = ctx.delta_e_cm1;
    u_min_ = ctx.u_min();

    for (std::size_t i = 0; i < sx.u_cm1.size(); ++i) {
        if (sx.u_cm1[i] > u_min_ && !is_absent(sx.sigma[i])) {
            u_.push_back(sx.u_cm1[i]);
            sigma_.push_back(sx.sigma[i]);
        }
    }
    if (u_.size() < 2)
        throw DataError("insufficient data for " + to_string(sx.pair_id) + ": " +
                        std::to_string(u_.size()) + " usable point(s) above threshold");

    integrand_.resize(u_.size());
    for (std::size_t i = 0; i < u_.size(); ++i) integrand_[i] = sigma_[i] * weight_at(u_[i]);

    log_interp_ = std::all_of(sigma_.begin(), sigma_.end(), [](double s) { return s > 0; });
    if (log_interp_) {
        std::vector<double> log_sigma(sigma_.size());
        std::transform(sigma_.begin(), sigma_.end(), log_sigma.begin(),
                       [](double s) { return std::log(s); });
        interp_ = CubicSpline(u_, log_sigma);
        const std::size_t n = u_.size();
        slope_lo_ = (std::log(sigma_[1]) - std::log(sigma_[0])) / (u_[1] - u_[0]);
        const double span = u_.front() - u_min_;
        slope_lo_ = std::clamp(slope_lo_, -20.0 / span, 20.0 / span);
        slope_hi_ = (std::log(sigma_[n - 1]) - std::log(sigma_[n - 2])) / (u_[n - 1] - u_[n - 2]);
        // keep the tail integrable against the exp(-U/kBT) weight
        slope_hi_ = std::min(slope_hi_, 1.0 / (2.0 * kbt_));
    } else {
        // Zero cross sections present: interpolate sigma~ itself, clamped at 0,
        // and extend it flat outside the sampled range.
        interp_ = CubicSpline(u_, sigma_);
        slope_lo_ = 0.0;
        slope_hi_ = 0.0;
    }
}

double IntegrandCurve::sigma_at(double u) const {
    if (u <= u_.front()) {
        const double s = log_interp_ ? sigma_.front() : std::max(sigma_.front(), 0.0);
        return s * std::exp(slope_lo_ * (u - u_.front()));
    }
    if (u >= u_.back()) {
        const double s = log_interp_ ? sigma_.back() : std::max(sigma_.back(), 0.0);
        return s * std::exp(slope_hi_ * (u - u_.back()));
    }
    if (log_interp_) return std::exp(interp_(u));
    return std::max(interp_(u), 0.0);
}

double IntegrandCurve::weight_at(double u) const {
    if (u <= u_min_ || u <= 0) return 0.0;
    const double r = delta_e_ == 0.0 ? 0.0 : std::pow(delta_e_ / (4.0 * u), 2);
    return std::exp(-(u / kbt_) * (1.0 + r)) * (1.0 - r) * u;
}

double IntegrandCurve::operator()(double u_cm1) const {
    if (u_cm1 <= u_min_) return 0.0;
    return sigma_at(u_cm1) * weight_at(u_cm1);
}

namespace {

struct SimpsonQuad {
    const IntegrandCurve& f;
    int max_depth;

    double recurse(double a, double fa, double m, double fm, double b, double fb, double whole,
                   double eps, int depth) const {
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
        if (depth >= max_depth)
            throw NumericalError("quadrature did not converge within max_refinements on [" +
                                 std::to_string(a) + ", " + std::to_string(b) + "] cm^-1");
        return recurse(a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1) +
               recurse(m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1);
    }

    double integrate(double a, double b, double eps) const {
        const double m = 0.5 * (a + b);
        const double fa = f(a);
        const double fm = f(m);
        const double fb = f(b);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, fa, m, fm, b, fb, whole, eps, 0);
    }

    double rough(double a, double b) const {
        const double m = 0.5 * (a + b);
        return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    }
};

// Integral of the curve over [U_min, inf). Knot intervals adaptively, then
// tail panels of width kBT until a panel adds less than rtol of the total.
double curve_integral(const IntegrandCurve& curve, const PipelineConfig& cfg) {
    const auto& u = curve.sample_u();
    const auto& values = curve.sample_i();
    if (*std::max_element(values.begin(), values.end()) == 0.0) return 0.0;

    SimpsonQuad quad{curve, cfg.max_refinements};
    std::vector<double> knots;
    knots.reserve(u.size() + 1);
    if (curve.u_min() < u.front()) knots.push_back(curve.u_min());
    knots.insert(knots.end(), u.begin(), u.end());

    std::vector<double> rough(knots.size() - 1);
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        rough[i] = quad.rough(knots[i], knots[i + 1]);
        scale += std::abs(rough[i]);
    }
    if (scale == 0.0) scale = 1.0;

    const double eps_total = cfg.quad_rtol * scale / 8.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double eps = std::max(eps_total * std::abs(rough[i]) / scale,
                                    eps_total / (4.0 * static_cast<double>(rough.size())));
        total += quad.integrate(knots[i], knots[i + 1], eps);
    }

    const double kbt = cfg.kb_cm1_per_k * curve.temperature();
    double x = u.back();
    for (int panel = 0;; ++panel) {
        if (panel > 1000)
            throw NumericalError("tail integration did not converge after 1000 panels");
        const double contribution = quad.integrate(x, x + kbt, eps_total);
        total += contribution;
        x += kbt;
        if (std::abs(contribution) < cfg.quad_rtol * std::abs(total)) break;
    }
    return total;
}

double rate_prefactor(const TransitionContext& ctx, double temperature_k,
                      const PipelineConfig& cfg) {
    const double kbt = cfg.kb_cm1_per_k * temperature_k;
    return mean_speed(temperature_k, cfg.mu_u, cfg) / (kbt * kbt) *
           std::exp(-ctx.delta_e_cm1 / (2.0 * kbt)) / (ctx.g1 * ctx.g2) * cfg.ang2_to_cm2;
}

}  // namespace

double integrate_rate(const IntegrandCurve& curve, const TransitionContext& ctx,
                      double temperature_k, const PipelineConfig& cfg) {
    if (std::abs(temperature_k - curve.temperature()) >
        1e-12 * std::max(1.0, curve.temperature()))
        throw ConfigError("integrand curve was built for a different temperature");
    const double k = rate_prefactor(ctx, temperature_k, cfg) * curve_integral(curve, cfg);
    if (!std::isfinite(k) || k < 0)
        throw NumericalError("non-finite rate coefficient for dE = " +
                             std::to_string(ctx.delta_e_cm1) + " cm^-1 at T = " +
                             std::to_string(temperature_k) + " K");
    return k;
}

namespace {

struct PairTask {
    std::vector<std::pair<TransitionKey, std::vector<double>>> rows;
    std::vector<SmoothnessRecord> smoothness;
    std::vector<std::string> warnings;
    std::optional<RateFailure> failure;
};

SmoothnessRecord scan_curve(const IntegrandCurve& curve, const TransitionKey& key,
                            double temperature_k) {
    SmoothnessRecord rec;
    rec.key = key;
    rec.temperature_k = temperature_k;
    rec.n_points = static_cast<int>(curve.sample_u().size());
    rec.log_interpolation = curve.log_interpolation();
    rec.tail_log_slope = curve.tail_log_slope();
    double min_value = std::numeric_limits<double>::infinity();
    int clamped = 0;
    const auto& u = curve.sample_u();
    std::vector<double> pts;
    pts.push_back(curve.u_min());
    pts.insert(pts.end(), u.begin(), u.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (int s = 0; s <= 25; ++s) {
            const double x = pts[i] + (pts[i + 1] - pts[i]) * s / 25.0;
            const double v = curve(x);
            min_value = std::min(min_value, v);
            if (!curve.log_interpolation() && v == 0.0 && x > curve.u_min()) ++clamped;
        }
    }
    rec.min_scan_value = min_value;
    rec.clamped_scan_points = clamped;
    return rec;
}

PairTask compute_pair(const CrossSectionTable& table, const TransitionKey& pair,
                      const std::vector<double>& temps_k, const PipelineConfig& cfg,
                      bool want_smoothness) {
    PairTask task;
    try {
        const SymmetrizedXsec sx = symmetrize(table, pair, cfg.missing_reverse);
        if (sx.used_one_sided)
            task.warnings.push_back("one-sided cross sections used for pair " + to_string(pair));

        const TransitionContext fwd =
            TransitionContext::from(pair, table.target(), table.projectile());
        const TransitionContext bwd =
            TransitionContext::from(pair.reversed(), table.target(), table.projectile());

        std::vector<double> k_fwd(temps_k.size()), k_bwd(temps_k.size());
        for (std::size_t t = 0; t < temps_k.size(); ++t) {
            // The integrand depends on dE only through dE^2 and on the
            // direction-independent sigma~, so one curve and one integral
            // serve both directions; only the prefactor differs. This makes
            // detailed balance exact to machine precision.
            const IntegrandCurve curve(sx, fwd, temps_k[t], cfg);
            const double integral = curve_integral(curve, cfg);
            k_fwd[t] = rate_prefactor(fwd, temps_k[t], cfg) * integral;
            k_bwd[t] = rate_prefactor(bwd, temps_k[t], cfg) * integral;
            if (!std::isfinite(k_fwd[t]) || !std::isfinite(k_bwd[t]))
                throw NumericalError("non-finite rate for pair " + to_string(pair) + " at T = " +
                                     std::to_string(temps_k[t]) + " K");
            if (want_smoothness)
                task.smoothness.push_back(scan_curve(curve, pair, temps_k[t]));
        }
        task.rows.emplace_back(pair, std::move(k_fwd));
        if (!pair.elastic()) task.rows.emplace_back(pair.reversed(), std::move(k_bwd));
    } catch (const DataError& e) {
        task.failure = RateFailure{pair, RateFailure::Kind::data, e.what()};
    } catch (const std::exception& e) {
        task.failure = RateFailure{pair, RateFailure::Kind::numerical, e.what()};
    }
    return task;
}

}  // namespace

RateBatchResult rate_table(const CrossSectionTable& table, const std::vector<double>& temps_k,
                           const PipelineConfig& cfg, int jobs,
                           std::vector<SmoothnessRecord>* smoothness) {
    cfg.validate();
    if (temps_k.empty()) throw ConfigError("temperature list is empty");
    for (double t : temps_k)
        if (t <= 0) throw ConfigError("temperatures must be positive");

    RateBatchResult result;
    result.table.temps_k = temps_k;
    result.table.target = table.target();
    result.table.projectile = table.projectile();

    std::set<TransitionKey> canonical;
    for (const auto& [key, sigma] : table.entries()) {
        (void)sigma;
        canonical.insert(key.canonical());
    }
    const std::vector<TransitionKey> pairs(canonical.begin(), canonical.end());
    std::vector<PairTask> tasks(pairs.size());

    const auto run = [&](std::size_t i) {
        tasks[i] = compute_pair(table, pairs[i], temps_k, cfg, smoothness != nullptr);
    };

    if (jobs <= 1 || pairs.size() < 2) {
        for (std::size_t i = 0; i < pairs.size(); ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                            pairs.size());
        pool.reserve(n_threads);
        for (std::size_t w = 0; w < n_threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1))
                    run(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Merge in pair order: output is independent of scheduling.
    for (auto& task : tasks) {
        for (auto& [key, rates] : task.rows) result.table.entries.emplace(key, std::move(rates));
        if (task.failure) result.failures.push_back(*task.failure);
        for (auto& w : task.warnings) result.warnings.push_back(std::move(w));
        if (smoothness)
            smoothness->insert(smoothness->end(), task.smoothness.begin(), task.smoothness.end());
    }
    return result;
}

}  // namespace collrates
