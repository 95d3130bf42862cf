#pragma once

#include "s3tb/phase_space.hpp"

#include <array>
#include <string>

namespace s3tb {

enum class Side { left, right };

[[nodiscard]] const char* to_string(Side s);

/// (A1, A2, gD): (R1, R2, gL) on the left side, (L1, L2, gR) on the right.
struct ReducedState {
    ImaginaryQuaternion A1;
    ImaginaryQuaternion A2;
    Quaternion gD{1, 0, 0, 0};
    Side side{Side::left};
};

/// Generators of the invariant ring together with r.
struct InvariantPoint {
    double k11{0}, k12{0}, k13{0}, k22{0}, k23{0}, k33{0}, delta{0}, r{0};

    static constexpr std::size_t size = 8;
    /// Coordinate order (k11, k12, k13, k22, k23, k33, r, delta).
    using Array = std::array<double, size>;
    [[nodiscard]] Array to_array() const { return {k11, k12, k13, k22, k23, k33, r, delta}; }
    static InvariantPoint from_array(const Array& a) { return {a[0], a[1], a[2], a[3], a[4], a[5], a[7], a[6]}; }

    [[nodiscard]] double det_k() const;
    /// delta^2 - det(k).
    [[nodiscard]] double syzygy_residual() const;
    /// delta^2 = det k and the Cauchy-Schwarz inequalities, each to `tol`.
    [[nodiscard]] bool on_variety(double tol = 1e-9) const;
};

/// Names in to_array() order.
inline constexpr std::array<const char*, 8> kInvariantNames = {"k11", "k12", "k13", "k22",
                                                               "k23", "k33", "r",   "delta"};

struct CasimirValues {
    double C1{0};
    double C2{0};
    double C3{0};
};

[[nodiscard]] ReducedState left_reduce(const PhaseState& s);
[[nodiscard]] ReducedState right_reduce(const PhaseState& s);

struct OrbitCoordinates {
    ImaginaryQuaternion X;
    ImaginaryQuaternion Y;
    Quaternion g;
};

/// (A1 g + g A2) g^{-1}, -A1 + g A2 g^{-1}, g. Throws std::domain_error for g = 0.
[[nodiscard]] OrbitCoordinates orbit_diffeo(const ReducedState& rs);
[[nodiscard]] ReducedState orbit_diffeo_inverse(const OrbitCoordinates& oc, Side side = Side::left);

/// |A1 gD + gD A2|^2 evaluated by quaternion products.
[[nodiscard]] double casimir_C2_direct(const ReducedState& rs);
/// Same Casimir from the invariant generators.
[[nodiscard]] double casimir_C2(const InvariantPoint& pt);
[[nodiscard]] double casimir_C1(const InvariantPoint& pt);
/// k11 + k22 + 2 k12.
[[nodiscard]] double casimir_C3(const InvariantPoint& pt);

/// C1 and C2 of the reduced state; C3 is left at zero. Both C2 routes are evaluated and
/// compared unless `check` is false; a mismatch above 1e-10 (relative) throws std::logic_error.
[[nodiscard]] CasimirValues casimirs(const ReducedState& rs, bool check = true);
/// All three Casimirs from the invariant generators.
[[nodiscard]] CasimirValues casimirs(const InvariantPoint& pt);

[[nodiscard]] InvariantPoint hilbert_map(const ReducedState& rs);

enum class Stratum { free, so2_isotropy, full_isotropy };

[[nodiscard]] const char* to_string(Stratum s);

/// Absolute tolerance 1e-9 on k_ij^2 - k_ii k_jj, delta and the vanishing tests.
[[nodiscard]] Stratum stratum_classify(const InvariantPoint& pt, double tol = 1e-9);

/// k11 on the rho = 0 leaf: (|lambda|^2 + 4 k13^2) / (4 sin^2 theta).
[[nodiscard]] double degenerate_leaf_sample(double lambda_mag, double k13, double theta);

/// "k11,k12,k13,k22,k23,k33,delta,r"
[[nodiscard]] std::string invariant_csv_header();
[[nodiscard]] std::string invariant_csv_row(const InvariantPoint& pt);

/// Invariant point of a full state through the left reduction.
[[nodiscard]] InvariantPoint invariants_of(const PhaseState& s);

}  // namespace s3tb
