#include "integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "check.hpp"

namespace bucketwheel::integrator {

std::string_view to_string(Method m) { return m == Method::rk4 ? "rk4" : "rk45"; }

void IntegratorConfig::validate() const {
  detail::require_positive(t_end, "t_end");
  detail::require_positive(output_step, "output_step");
  detail::require_positive(rel_tol, "rel_tol");
  detail::require_positive(abs_tol, "abs_tol");
  detail::require_positive(max_step, "max_step");
  detail::require_positive(fixed_step, "fixed_step");
  const double n = std::round(t_end / output_step);
  detail::require(n >= 1.0 && std::abs(n * output_step - t_end) <= 1e-9 * t_end,
                  "t_end must be a whole multiple of output_step");
}

std::size_t IntegratorConfig::sample_count() const {
  return static_cast<std::size_t>(std::llround(t_end / output_step)) + 1;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Workspace {
  explicit Workspace(std::size_t n) : tmp(n) {
    for (auto& k : ks) k.resize(n);
  }
  Vector ks[7];
  Vector tmp;
  std::size_t evaluations = 0;
};

void eval(const Rhs& rhs, double t, std::span<const double> y, Vector& out, Workspace& ws) {
  rhs(t, y, out);
  ++ws.evaluations;
  for (double v : out)
    if (!std::isfinite(v))
      throw NumericalError("non-finite stage derivative at t = " + std::to_string(t));
}

void rk4_into(const Rhs& rhs, double t, std::span<const double> y, double h, Vector& out,
              Workspace& ws) {
  const std::size_t n = y.size();
  auto& [k1, k2, k3, k4, u5, u6, u7] = ws.ks;
  (void)u5, (void)u6, (void)u7;
  Vector& tmp = ws.tmp;
  eval(rhs, t, y, k1, ws);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  eval(rhs, t + 0.5 * h, tmp, k2, ws);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  eval(rhs, t + 0.5 * h, tmp, k3, ws);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  eval(rhs, t + h, tmp, k4, ws);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void dopri5_into(const Rhs& rhs, double t, std::span<const double> y, double h, Vector& y_new,
                 Vector& err, Workspace& ws) {
  const std::size_t n = y.size();
  auto& [k1, k2, k3, k4, k5, k6, k7] = ws.ks;
  Vector& tmp = ws.tmp;
  y_new.resize(n);
  err.resize(n);

  eval(rhs, t, y, k1, ws);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  eval(rhs, t + c2 * h, tmp, k2, ws);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  eval(rhs, t + c3 * h, tmp, k3, ws);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  eval(rhs, t + c4 * h, tmp, k4, ws);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  eval(rhs, t + c5 * h, tmp, k5, ws);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  eval(rhs, t + h, tmp, k6, ws);
  for (std::size_t i = 0; i < n; ++i)
    y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  eval(rhs, t + h, y_new, k7, ws);
  for (std::size_t i = 0; i < n; ++i)
    err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
}

double error_norm(std::span<const double> err, std::span<const double> y0,
                  std::span<const double> y1, const IntegratorConfig& cfg) {
  double sum = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / scale;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

// Starting step from the size of y and f (Hairer, Norsett & Wanner II.4).
double initial_step(const Rhs& rhs, std::span<const double> y0, const IntegratorConfig& cfg,
                    Workspace& ws) {
  const std::size_t n = y0.size();
  Vector f0(n), f1(n), y1(n);
  eval(rhs, 0.0, y0, f0, ws);
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, cfg.max_step);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  eval(rhs, h0, y1, f1, ws);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    const double r = (f1[i] - f0[i]) / sc;
    d2 += r * r;
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, cfg.max_step});
}

}  // namespace

Vector rk4_step(const Rhs& rhs, double t, std::span<const double> y, double h) {
  Workspace ws(y.size());
  Vector out;
  rk4_into(rhs, t, y, h, out, ws);
  return out;
}

EmbeddedStep dopri5_step(const Rhs& rhs, double t, std::span<const double> y, double h) {
  Workspace ws(y.size());
  EmbeddedStep out;
  dopri5_into(rhs, t, y, h, out.y, out.error, ws);
  return out;
}

Solution integrate(const Rhs& rhs, Vector y0, const IntegratorConfig& config, const Hooks& hooks) {
  config.validate();
  const std::size_t n = y0.size();
  const std::size_t samples = config.sample_count();
  const double h_min = 1e-12 * config.t_end;

  Solution sol;
  sol.times.reserve(samples);
  sol.states.reserve(samples);

  Workspace ws(n);
  Vector y = std::move(y0);
  Vector y_new(n), err(n);
  double t = 0.0;

  auto record = [&](std::size_t k) {
    sol.times.push_back(static_cast<double>(k) * config.output_step);
    sol.states.push_back(y);
    if (hooks.on_sample) hooks.on_sample(k, sol.times.back(), y);
  };
  auto fail = [&](const std::string& why) {
    sol.rhs_evaluations = ws.evaluations;
    throw IntegrationFailure(why, sol, t, y);
  };

  for (double v : y)
    if (!std::isfinite(v)) fail("non-finite initial state");
  record(0);

  try {
    if (config.method == Method::rk4) {
      const auto substeps = static_cast<std::size_t>(
          std::max(1.0, std::ceil(config.output_step / config.fixed_step - 1e-9)));
      const double h = config.output_step / static_cast<double>(substeps);
      for (std::size_t k = 1; k < samples; ++k) {
        const double t0 = static_cast<double>(k - 1) * config.output_step;
        for (std::size_t j = 0; j < substeps; ++j) {
          rk4_into(rhs, t, y, h, y_new, ws);
          y.swap(y_new);
          t = (j + 1 == substeps) ? static_cast<double>(k) * config.output_step
                                  : t0 + static_cast<double>(j + 1) * h;
          ++sol.accepted_steps;
          if (hooks.on_step) hooks.on_step(t, y);
        }
        record(k);
      }
    } else {
      double h = initial_step(rhs, y, config, ws);
      for (std::size_t k = 1; k < samples; ++k) {
        const double target = static_cast<double>(k) * config.output_step;
        while (t < target) {
          if (h < h_min) fail("step size underflow at t = " + std::to_string(t));
          double step = std::min(h, config.max_step);
          bool lands = false;
          // Clip onto the grid point; absorb slivers shorter than 1e-10 of a step.
          if (t + step >= target - 1e-10 * step) {
            step = target - t;
            lands = true;
          }
          dopri5_into(rhs, t, y, step, y_new, err, ws);
          const double e = error_norm(err, y, y_new, config);
          if (e <= 1.0) {
            y.swap(y_new);
            t = lands ? target : t + step;
            ++sol.accepted_steps;
            if (hooks.on_step) hooks.on_step(t, y);
            const double grow = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
            // A step shortened to hit the grid must not shrink the proposal.
            h = (lands && step < h && grow >= 1.0) ? h : step * grow;
          } else {
            ++sol.rejected_steps;
            h = step * std::clamp(0.9 * std::pow(e, -0.2), 0.2, 1.0);
          }
        }
        record(k);
      }
    }
  } catch (const IntegrationFailure&) {
    throw;
  } catch (const NumericalError& e) {
    fail(e.what());
  }
  sol.rhs_evaluations = ws.evaluations;
  return sol;
}

}  // namespace bucketwheel::integrator
