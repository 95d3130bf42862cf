#pragma once

#include "s3tb/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace s3tb {

template <std::size_t N>
using StateVec = std::array<double, N>;

struct FlowConfig {
    double rel_tol{1e-10};
    double abs_tol{1e-10};
    /// Zero or negative means no limit.
    double max_step{0.0};
    bool projection{false};
    /// Keep every n-th accepted step (the final state is always kept).
    std::size_t stride{1};
    std::size_t max_steps{50'000'000};

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !std::isfinite(rel_tol) || !std::isfinite(abs_tol)) {
            throw std::invalid_argument("FlowConfig: tolerances must be positive");
        }
        if (stride == 0) throw std::invalid_argument("FlowConfig: stride must be at least 1");
    }
};

template <std::size_t N>
struct Trajectory {
    std::vector<double> t;
    std::vector<StateVec<N>> x;
    std::size_t accepted{0};
    std::size_t rejected{0};

    [[nodiscard]] const StateVec<N>& back() const { return x.back(); }
};

/// Dormand-Prince 5(4) with PI step-size control.
///
/// The right-hand side may throw SingularityError; the step is then rejected and retried
/// with a smaller size. A step size below the floating resolution of t raises
/// IntegrationError carrying the current time.
template <std::size_t N>
class DormandPrince {
public:
    using State = StateVec<N>;
    using Rhs = std::function<State(double, const State&)>;
    using Projector = std::function<void(State&)>;

    DormandPrince(Rhs rhs, FlowConfig cfg, Projector project = {})
        : rhs_(std::move(rhs)), cfg_(cfg), project_(std::move(project)) {
        cfg_.validate();
    }

    Trajectory<N> integrate(const State& x0, double t0, double t1) const {
        if (!(t1 >= t0)) throw std::invalid_argument("integrate: end time before start time");
        Trajectory<N> out;
        out.t.push_back(t0);
        out.x.push_back(x0);
        if (t1 == t0) return out;

        State x = x0;
        double t = t0;
        State k1 = eval_or_throw(t, x);
        double h = initial_step(t, x, k1, t1 - t0);
        double err_old = 1e-4;
        bool last_rejected = false;
        bool singular = false;
        std::size_t since_store = 0;

        while (t < t1) {
            if (out.accepted + out.rejected >= cfg_.max_steps) {
                throw IntegrationError("integrate: step budget exhausted", t);
            }
            if (cfg_.max_step > 0.0) h = std::min(h, cfg_.max_step);
            bool final_step = false;
            if (t + h >= t1 || t + 1.01 * h >= t1) {
                h = t1 - t;
                final_step = true;
            }
            if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
                throw IntegrationError(singular ? "integrate: singularity reached (step size underflow)"
                                                : "integrate: step size underflow",
                                       t);
            }

            State x5;
            State k7;
            double err = 0.0;
            if (!attempt(t, h, x, k1, x5, k7, err, singular)) {
                ++out.rejected;
                h *= 0.25;
                last_rejected = true;
                continue;
            }

            if (err <= 1.0) {
                t = final_step ? t1 : t + h;
                x = x5;
                if (project_) {
                    project_(x);
                    k1 = eval_or_throw(t, x);
                } else {
                    k1 = k7;
                }
                ++out.accepted;
                if (++since_store == cfg_.stride || final_step) {
                    out.t.push_back(t);
                    out.x.push_back(x);
                    since_store = 0;
                }
                double fac = kSafety * std::pow(err, -kAlpha) * std::pow(err_old, kBeta);
                fac = std::clamp(fac, kFacMin, kFacMax);
                if (last_rejected) fac = std::min(fac, 1.0);
                h *= fac;
                err_old = std::max(err, 1e-4);
                last_rejected = false;
            } else {
                ++out.rejected;
                h *= std::max(kFacMin, kSafety * std::pow(err, -kAlpha));
                last_rejected = true;
            }
        }
        return out;
    }

private:
    static constexpr double kSafety = 0.9;
    static constexpr double kBeta = 0.04;
    static constexpr double kAlpha = 0.2 - 0.75 * kBeta;
    static constexpr double kFacMin = 0.2;
    static constexpr double kFacMax = 10.0;

    State eval_or_throw(double t, const State& x) const {
        try {
            return rhs_(t, x);
        } catch (const SingularityError& e) {
            throw IntegrationError(std::string("integrate: ") + e.what(), t);
        }
    }

    double scale(double a, double b) const { return cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(a), std::abs(b)); }

    double initial_step(double t, const State& x, const State& f0, double span) const {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = scale(x[i], x[i]);
            d0 += (x[i] / sc) * (x[i] / sc);
            d1 += (f0[i] / sc) * (f0[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        State x1;
        for (std::size_t i = 0; i < N; ++i) x1[i] = x[i] + h0 * f0[i];
        State f1;
        try {
            f1 = rhs_(t + h0, x1);
        } catch (const SingularityError&) {
            return h0 * 1e-3;
        }
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double v = (f1[i] - f0[i]) / scale(x[i], x[i]);
            d2 += v * v;
        }
        d2 = std::sqrt(d2 / N) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        return std::min({100.0 * h0, h1, span});
    }

    bool attempt(double t, double h, const State& x, const State& k1, State& x5, State& k7, double& err,
                 bool& singular) const {
        singular = false;
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                                a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                                a76 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                                e6 = 22.0 / 525, e7 = -1.0 / 40;
        try {
            State y;
            for (std::size_t i = 0; i < N; ++i) y[i] = x[i] + h * a21 * k1[i];
            const State k2 = rhs_(t + c2 * h, y);
            for (std::size_t i = 0; i < N; ++i) y[i] = x[i] + h * (a31 * k1[i] + a32 * k2[i]);
            const State k3 = rhs_(t + c3 * h, y);
            for (std::size_t i = 0; i < N; ++i) y[i] = x[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            const State k4 = rhs_(t + c4 * h, y);
            for (std::size_t i = 0; i < N; ++i) {
                y[i] = x[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            }
            const State k5 = rhs_(t + c5 * h, y);
            for (std::size_t i = 0; i < N; ++i) {
                y[i] = x[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            }
            const State k6 = rhs_(t + h, y);
            for (std::size_t i = 0; i < N; ++i) {
                x5[i] = x[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
            }
            k7 = rhs_(t + h, x5);
            double acc = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e =
                    h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double v = e / scale(x[i], x5[i]);
                acc += v * v;
            }
            err = std::sqrt(acc / N);
            if (!std::isfinite(err)) return false;
        } catch (const SingularityError&) {
            singular = true;
            return false;
        }
        return true;
    }

    Rhs rhs_;
    FlowConfig cfg_;
    Projector project_;
};

}  // namespace s3tb
