#pragma once

#include "s3tb/stability.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace s3tb {

/// One point of the energy-Casimir image (H, |lambda|^2, |rho|^2) of an RE family.
struct ECSample {
    double theta{0};
    double tau{0};
    double phi1{0};
    double H{0};
    double lam2{0};
    double rho2{0};
    REKind family{REKind::acute};
    bool isosceles{false};
    StabilityClass stability{StabilityClass::degenerate};
    double xi{0};
    double eta{0};
    /// "ok", or the error message of a failed sample (the numeric fields are then NaN).
    std::string status{"ok"};

    [[nodiscard]] bool ok() const { return status == "ok"; }
};

/// RE at (theta, tau) of the main family (see re_from_tau), with H and both momenta
/// evaluated on the reconstructed state.
[[nodiscard]] ECSample ec_sample(double theta, double tau, const MassParams& m, const Potential& pot);
/// Right-angled family at (phi1, tau), equal masses.
[[nodiscard]] ECSample ec_sample_right_angled(double phi1, double tau, const MassParams& m, const Potential& pot);
/// Singular family: |xi| = e^tau |eta|, coincident (antipodal = false) or antipodal.
[[nodiscard]] ECSample ec_sample_thread(bool antipodal, double eta, double tau, const MassParams& m,
                                        const Potential& pot);

/// Rebuilds the state from the stored (family, phi1, |xi|, |eta|) and returns (H, |lambda|^2, |rho|^2).
[[nodiscard]] std::array<double, 3> recompute_sample(const ECSample& s, const MassParams& m, const Potential& pot);

enum class ECFamily { main, right_angled, thread0, threadpi };

[[nodiscard]] const char* to_string(ECFamily f);
/// "isosceles", "main" or "theta"; "right-angled"; "thread0"; "threadpi".
[[nodiscard]] ECFamily parse_ec_family(const std::string& s);

/// Rectangular grid. The first coordinate is theta (main), phi1 (right_angled) or |eta| (threads).
struct ECGrid {
    ECFamily family{ECFamily::main};
    double a_min{0.05};
    double a_max{3.0915926535897931};
    int na{100};
    double tau_min{-3.0};
    double tau_max{3.0};
    int ntau{100};

    /// Family defaults for the first coordinate; an attractive force gives phi1 in (0, pi/2).
    static ECGrid defaults(ECFamily family, bool attractive = true);
    void validate() const;
};

/// Worker count: S3TB_THREADS if set and positive, else the hardware concurrency.
[[nodiscard]] unsigned worker_count();

/// Samples in row-major order (first coordinate outer). Failures are recorded per sample.
[[nodiscard]] std::vector<ECSample> ec_surface(const ECGrid& grid, const MassParams& m, const Potential& pot,
                                               unsigned threads = 0);

/// family, theta, tau, H, lam2, rho2, stability, phi1, xi, eta, isosceles, status.
void write_ec_csv(std::ostream& os, const std::vector<ECSample>& samples);
/// Standalone matplotlib script that scatters (lam2, rho2, H) from the named CSV.
void write_plot_script(std::ostream& os, const std::string& csv_path);

/// Where the second factor of the Lagrange quartic along the theta = 0 thread changes sign.
struct ThreadDetachment {
    /// |R|^2 at the sign change, located from traces of powers of the numeric linearisation.
    double R2{0};
    /// 2 gamma / alpha.
    double R2_predicted{0};
    /// Values of t^2 for the two nonzero pairs just below and just above the crossing.
    std::array<double, 2> s_below{};
    std::array<double, 2> s_above{};
};

/// Scans c = |xi| - |eta| in (0, c_max] along the coincident thread of the Lagrange top.
[[nodiscard]] std::optional<ThreadDetachment> detect_thread_detachment(double alpha, double gamma, double c_max = 10.0);

/// The two values of t^2 of the nonzero eigenvalue pairs, from tr(J^2) and tr(J^4).
[[nodiscard]] std::array<double, 2> pair_squares(const Matrix8& J);

}  // namespace s3tb
