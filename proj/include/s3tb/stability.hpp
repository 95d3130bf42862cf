#pragma once

#include "s3tb/relequil.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace s3tb {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

enum class StabilityClass { linearly_stable, linearly_unstable, degenerate };

[[nodiscard]] const char* to_string(StabilityClass c);

/// |lambda| below this counts as a zero eigenvalue.
inline constexpr double kZeroEigenvalue = 1e-8;
/// |Re lambda| above this marks instability.
inline constexpr double kRealPartThreshold = 1e-8;

/// Relative size below which a characteristic-polynomial coefficient counts as zero.
inline constexpr double kCoefficientTolerance = 1e-10;

struct LinearizationReport {
    /// Coordinates ordered (k11, k12, k13, k22, k23, k33, r, delta).
    Matrix8 matrix;
    /// Sorted by magnitude.
    std::vector<std::complex<double>> eigenvalues;
    /// Multiplicity of the zero eigenvalue (see zero_multiplicity).
    int zero_count{0};
    StabilityClass classification{StabilityClass::degenerate};
};

/// Jacobian of the invariant two-body vector field at a point with k13 = k23 = 0.
/// Throws std::invalid_argument when |k13| or |k23| exceeds `tol`.
[[nodiscard]] Matrix8 linearization_matrix(const InvariantPoint& pt, const MassParams& m, const Potential& pot,
                                           double tol = 1e-8);

[[nodiscard]] LinearizationReport linearize(const RelativeEquilibrium& re, const MassParams& m, const Potential& pot);
/// Uses the masses and potential stored in the RE.
[[nodiscard]] LinearizationReport linearize(const RelativeEquilibrium& re);

/// Unstable if some eigenvalue outside the zero_count smallest has |Re| > kRealPartThreshold;
/// otherwise stable with exactly four zeros and degenerate with more.
[[nodiscard]] StabilityClass classify_stability(const LinearizationReport& report);
/// Same rule on a bare spectrum, counting |lambda| < zero_tol as zero.
[[nodiscard]] StabilityClass classify_stability(const std::vector<std::complex<double>>& eigenvalues, int* zero_count = nullptr,
                                               double zero_tol = kZeroEigenvalue);

/// Algebraic multiplicity of 0: the number of vanishing low-order coefficients of prod (t - lambda),
/// each compared with binom(n, k) rho^(n-k), rho the spectral radius. Clustered eigenvalues from a
/// split Jordan block (size k, spread ~ eps^(1/k)) still give vanishing coefficients.
[[nodiscard]] int zero_multiplicity(const std::vector<std::complex<double>>& eigenvalues);

struct CharPoly {
    double c0{0};
    double c2{0};
};

[[nodiscard]] CharPoly charpoly_2body(double theta, double k11, double k22, const MassParams& m);
[[nodiscard]] CharPoly charpoly_2body(const RelativeEquilibrium& re);

/// Positive roots z, w of the gravitational quartic: the spectrum is {+-z, +-w}.
struct ClosedFormPairs {
    std::complex<double> z;
    std::complex<double> w;
    /// Radicands: z^2 and w^2.
    double z2{0};
    double w2{0};
};

[[nodiscard]] ClosedFormPairs closed_form_eigs_2body(double theta, double k11, double k22, const MassParams& m);
[[nodiscard]] ClosedFormPairs closed_form_eigs_2body(const RelativeEquilibrium& re);

/// Lagrange-top quartic t^4 + c2 t^2 + c0 with its two roots in t^2.
struct LagrangeCharPoly {
    bool right_angled{false};
    double c0{0};
    double c2{0};
    /// Values of t^2 at the four nonzero roots.
    double s1{0};
    double s2{0};
    /// +-sqrt(s1), +-sqrt(s2).
    std::vector<std::complex<double>> roots;
};

/// Requires the linear potential; |R|^2 = k11 = k22 away from theta = pi/2.
[[nodiscard]] LagrangeCharPoly charpoly_lagrange(const RelativeEquilibrium& re, double alpha, double gamma);

/// (4 alpha^2 |R|^2 - 8 alpha gamma cos(theta), 4|eta|^2 + alpha^2 gamma^2 / |eta|^2 - 4 alpha gamma cos(theta)).
[[nodiscard]] std::pair<double, double> lagrange_spin_identity(const RelativeEquilibrium& re, double alpha, double gamma);

/// (c2 / 2, (16|eta|^4 cos^2 sin^6 + m1^2 + m2^2 + 2 m1 m2 cos 2theta) / (8 |eta|^2 sin^6 cos^2)).
/// Both sides of the identity that makes c2 positive at gravitational REs.
[[nodiscard]] std::pair<double, double> positivity_identity(const RelativeEquilibrium& re);

/// Closed form evaluated on the numeric spectrum: nonzero eigenvalues, sorted.
[[nodiscard]] std::vector<std::complex<double>> nonzero_eigenvalues(const LinearizationReport& report);

/// Largest distance between two spectra after optimal matching (both must have the same size).
[[nodiscard]] double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b);

/// Rank of the stacked linearised k11 and k22 rows of the flows of H~ and I at a Lagrange RE.
[[nodiscard]] int lagrange_linearisation_rank(const RelativeEquilibrium& re, double alpha, double gamma);

struct FoldReport {
    double theta{0};
    double tau{0};
    double c0_at_fold{0};
    /// Determinant of d(|lambda|^2, |rho|^2) / d(theta, tau), Richardson-extrapolated differences.
    double jacobian_det{0};
    /// Same determinant normalised by the product of the two row norms.
    double jacobian_det_normalised{0};
    double c0_below{0};
    double c0_above{0};
    /// w^2 on each side of the fold (negative means imaginary pair).
    double w2_below{0};
    double w2_above{0};
};

/// c0 at the gravitational RE parameterised by (theta, tau).
[[nodiscard]] double c0_at(double theta, double tau, const MassParams& m);

/// tau >= 0 with c0(theta, tau) = 0 for the gravitational law; c0 is symmetric in tau so -tau
/// is a fold as well. Empty when c0 has no root.
[[nodiscard]] std::optional<FoldReport> fold_locus(double theta, const MassParams& m);

/// d(|lambda|^2, |rho|^2) / d(theta, tau): central differences at h, h/2, h/4 with two Richardson steps.
[[nodiscard]] Eigen::Matrix2d momentum_jacobian(double theta, double tau, const MassParams& m, const Potential& pot,
                                                double h = 2e-3);

}  // namespace s3tb
