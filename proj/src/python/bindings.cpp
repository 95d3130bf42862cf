#include "s3tb/energy_casimir.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace s3tb;

namespace {

template <std::size_t N>
py::tuple to_arrays(const Trajectory<N>& tr) {
    py::array_t<double> t(static_cast<py::ssize_t>(tr.t.size()));
    py::array_t<double> x({static_cast<py::ssize_t>(tr.x.size()), static_cast<py::ssize_t>(N)});
    auto tv = t.mutable_unchecked<1>();
    auto xv = x.mutable_unchecked<2>();
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        tv(static_cast<py::ssize_t>(i)) = tr.t[i];
        for (std::size_t k = 0; k < N; ++k) xv(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(k)) = tr.x[i][k];
    }
    return py::make_tuple(t, x);
}

FlowConfig flow_config(double rel_tol, double abs_tol, bool projection) {
    FlowConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.projection = projection;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-body problem on the 3-sphere: reduction, relative equilibria and their stability.";

    py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
    py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);
    py::register_exception<NoSolutionError>(m, "NoSolutionError", PyExc_ValueError);

    py::class_<Quaternion>(m, "Quaternion")
        .def(py::init<double, double, double, double>(), py::arg("w") = 0.0, py::arg("x") = 0.0, py::arg("y") = 0.0,
             py::arg("z") = 0.0)
        .def_readwrite("w", &Quaternion::w)
        .def_readwrite("x", &Quaternion::x)
        .def_readwrite("y", &Quaternion::y)
        .def_readwrite("z", &Quaternion::z)
        .def("norm", &Quaternion::norm)
        .def("conj", &Quaternion::conj)
        .def("inverse", &Quaternion::inverse)
        .def("__mul__", [](const Quaternion& a, const Quaternion& b) { return a * b; })
        .def("__add__", [](const Quaternion& a, const Quaternion& b) { return a + b; })
        .def("__sub__", [](const Quaternion& a, const Quaternion& b) { return a - b; })
        .def("to_list", [](const Quaternion& q) { return std::vector<double>{q.w, q.x, q.y, q.z}; })
        .def("__repr__", [](const Quaternion& q) {
            std::ostringstream os;
            os << "Quaternion(" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ")";
            return os.str();
        });
    m.def("exp_i", &Quaternion::exp_i, py::arg("angle"));

    py::class_<MassParams>(m, "MassParams")
        .def(py::init<double, double>(), py::arg("m1") = 1.0, py::arg("m2") = 1.0)
        .def_readonly("m1", &MassParams::m1)
        .def_readonly("m2", &MassParams::m2)
        .def_static("lagrange", &MassParams::lagrange, py::arg("alpha"));

    py::class_<Potential>(m, "Potential")
        .def_static("gravitational", &Potential::gravitational)
        .def_static("linear", &Potential::linear, py::arg("gamma"))
        .def_static("parse", &Potential::parse)
        .def("describe", &Potential::describe)
        .def("value", &Potential::value)
        .def("force", &Potential::force)
        .def("dforce", &Potential::dforce);

    py::class_<PhaseState>(m, "PhaseState")
        .def(py::init<>())
        .def(py::init([](const Quaternion& g1, const Quaternion& p1, const Quaternion& g2, const Quaternion& p2) {
                 return PhaseState{g1, p1, g2, p2};
             }),
             py::arg("g1"), py::arg("p1"), py::arg("g2"), py::arg("p2"))
        .def_readwrite("g1", &PhaseState::g1)
        .def_readwrite("p1", &PhaseState::p1)
        .def_readwrite("g2", &PhaseState::g2)
        .def_readwrite("p2", &PhaseState::p2)
        .def("is_valid", &PhaseState::is_valid, py::arg("tol") = kUnitTolerance)
        .def("separation_cosine", &PhaseState::separation_cosine);

    m.def("random_state", [](std::uint64_t seed, const std::string& kind, double scale) {
        Rng rng(seed);
        if (kind == "cospherical") return random_cospherical_state(rng, scale, 0.05);
        if (kind == "cocircular") return random_cocircular_state(rng, scale, 0.05);
        if (kind == "imaginary") return random_imaginary_state(rng, scale, 0.05);
        if (kind != "generic") throw std::invalid_argument("unknown kind " + kind);
        return random_phase_state(rng, scale, 0.05);
    }, py::arg("seed"), py::arg("kind") = "generic", py::arg("scale") = 1.0);

    m.def("hamiltonian", &hamiltonian_2body);
    m.def("momentum_left", [](const PhaseState& s) {
        const auto v = momentum_left(s);
        return std::vector<double>{v.x, v.y, v.z};
    });
    m.def("momentum_right", [](const PhaseState& s) {
        const auto v = momentum_right(s);
        return std::vector<double>{v.x, v.y, v.z};
    });
    m.def("classify_point", [](const PhaseState& s) { return std::string(to_string(classify_point(s))); });

    py::class_<InvariantPoint>(m, "InvariantPoint")
        .def_readonly("k11", &InvariantPoint::k11)
        .def_readonly("k12", &InvariantPoint::k12)
        .def_readonly("k13", &InvariantPoint::k13)
        .def_readonly("k22", &InvariantPoint::k22)
        .def_readonly("k23", &InvariantPoint::k23)
        .def_readonly("k33", &InvariantPoint::k33)
        .def_readonly("r", &InvariantPoint::r)
        .def_readonly("delta", &InvariantPoint::delta)
        .def("to_list", [](const InvariantPoint& p) {
            const auto a = p.to_array();
            return std::vector<double>(a.begin(), a.end());
        })
        .def("syzygy_residual", &InvariantPoint::syzygy_residual);

    m.def("invariants", &invariants_of, py::arg("state"));
    m.def("casimirs", [](const InvariantPoint& p) {
        const CasimirValues c = casimirs(p);
        return py::make_tuple(c.C1, c.C2, c.C3);
    });
    m.def("stratum", [](const InvariantPoint& p) { return std::string(to_string(stratum_classify(p))); });

    m.def("integrate_full", [](const PhaseState& s, const MassParams& mp, const Potential& pot, double T,
                               double rel_tol, double abs_tol, bool projection) {
        return to_arrays(integrate_full(s, mp, pot, T, flow_config(rel_tol, abs_tol, projection)));
    }, py::arg("state"), py::arg("masses"), py::arg("potential"), py::arg("T"), py::arg("rel_tol") = 1e-10,
          py::arg("abs_tol") = 1e-10, py::arg("projection") = false);
    m.def("integrate_invariant", [](const PhaseState& s, const MassParams& mp, const Potential& pot, double T,
                                    double rel_tol, double abs_tol) {
        return to_arrays(integrate_invariant(invariants_of(s), mp, pot, T, flow_config(rel_tol, abs_tol, false)));
    }, py::arg("state"), py::arg("masses"), py::arg("potential"), py::arg("T"), py::arg("rel_tol") = 1e-10,
          py::arg("abs_tol") = 1e-10);

    py::class_<RelativeEquilibrium>(m, "RelativeEquilibrium")
        .def_property_readonly("kind", [](const RelativeEquilibrium& re) { return std::string(to_string(re.kind)); })
        .def_readonly("isosceles", &RelativeEquilibrium::isosceles)
        .def_readonly("theta", &RelativeEquilibrium::theta)
        .def_readonly("phi1", &RelativeEquilibrium::phi1)
        .def_readonly("phi2", &RelativeEquilibrium::phi2)
        .def_readonly("xi", &RelativeEquilibrium::xi_mag)
        .def_readonly("eta", &RelativeEquilibrium::eta_mag)
        .def_readonly("x1", &RelativeEquilibrium::x1)
        .def_readonly("x2", &RelativeEquilibrium::x2)
        .def_readonly("y", &RelativeEquilibrium::y)
        .def_readonly("state", &RelativeEquilibrium::state);

    m.def("make_re", &make_re, py::arg("theta"), py::arg("eta"), py::arg("masses"), py::arg("potential"));
    m.def("make_right_angled", &make_right_angled, py::arg("phi1"), py::arg("eta"), py::arg("masses"),
          py::arg("potential"));
    m.def("make_singular", &make_singular, py::arg("antipodal"), py::arg("xi"), py::arg("eta"), py::arg("masses"),
          py::arg("potential"));
    m.def("re_from_tau", &re_from_tau, py::arg("theta"), py::arg("tau"), py::arg("masses"), py::arg("potential"));
    m.def("fixed_point_residual", &verify_re_fixed_point);

    m.def("linearize", [](const RelativeEquilibrium& re) {
        const LinearizationReport rep = linearize(re);
        Eigen::MatrixXd mat = rep.matrix;
        return py::dict(py::arg("matrix") = mat, py::arg("eigenvalues") = rep.eigenvalues,
                        py::arg("zero_count") = rep.zero_count,
                        py::arg("classification") = std::string(to_string(rep.classification)));
    });
    m.def("closed_form_eigs", [](const RelativeEquilibrium& re) {
        const ClosedFormPairs cf = closed_form_eigs_2body(re);
        return py::make_tuple(cf.z, cf.w);
    });
    m.def("fold_locus", [](double theta, const MassParams& mp) -> py::object {
        const auto f = fold_locus(theta, mp);
        if (!f) return py::none();
        return py::dict(py::arg("theta") = f->theta, py::arg("tau") = f->tau, py::arg("c0") = f->c0_at_fold,
                        py::arg("jacobian_det") = f->jacobian_det, py::arg("w2_below") = f->w2_below,
                        py::arg("w2_above") = f->w2_above);
    });

    m.def("ec_sample", [](double theta, double tau, const MassParams& mp, const Potential& pot) {
        const ECSample s = ec_sample(theta, tau, mp, pot);
        return py::dict(py::arg("H") = s.H, py::arg("lam2") = s.lam2, py::arg("rho2") = s.rho2,
                        py::arg("family") = std::string(to_string(s.family)),
                        py::arg("stability") = std::string(to_string(s.stability)));
    });
    m.def("ec_surface_csv", [](const std::string& family, const MassParams& mp, const Potential& pot, int na,
                               int ntau) {
        ECGrid grid = ECGrid::defaults(parse_ec_family(family), pot.force(0.0, mp) > 0.0);
        grid.na = na;
        grid.ntau = ntau;
        std::ostringstream os;
        {
            py::gil_scoped_release release;
            write_ec_csv(os, ec_surface(grid, mp, pot));
        }
        return os.str();
    }, py::arg("family"), py::arg("masses"), py::arg("potential"), py::arg("na") = 100, py::arg("ntau") = 100);
}
