// Python bindings for the channel constructors, conversions and the fidelity
// moment machinery. Matrices cross the boundary as complex numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fidmom/channels.hpp"
#include "fidmom/mc.hpp"
#include "fidmom/moments.hpp"

namespace py = pybind11;
using namespace fidmom;

namespace {

KrausChannel make_channel(Index dim, const std::vector<Matrix>& kraus) {
    KrausChannel out{dim, kraus};
    if (out.kraus.empty()) throw std::invalid_argument("KrausChannel: empty Kraus list");
    for (const auto& K : out.kraus)
        if (K.rows() != dim || K.cols() != dim)
            throw std::invalid_argument("KrausChannel: Kraus operator shape mismatch");
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact and Monte Carlo moments of the quantum gate fidelity";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<KrausChannel>(m, "KrausChannel")
        .def(py::init(&make_channel), py::arg("dim"), py::arg("kraus"))
        .def_readonly("dim", &KrausChannel::d)
        .def_readonly("kraus", &KrausChannel::kraus)
        .def("__repr__", [](const KrausChannel& c) {
            return "KrausChannel(dim=" + std::to_string(c.d) +
                   ", rank=" + std::to_string(c.kraus.size()) + ")";
        });

    py::class_<CptpReport>(m, "CptpReport")
        .def_readonly("tp_residual", &CptpReport::tp_residual)
        .def_readonly("min_choi_eig", &CptpReport::min_choi_eig)
        .def_readonly("verdict", &CptpReport::verdict)
        .def("__repr__", [](const CptpReport& r) {
            return "CptpReport(verdict=" + std::string(r.verdict ? "True" : "False") + ")";
        });

    py::class_<VarianceResult>(m, "VarianceResult")
        .def_readonly("value", &VarianceResult::value)
        .def_readonly("raw", &VarianceResult::raw)
        .def_readonly("rational", &VarianceResult::rational)
        .def_readonly("qubit_closed_form", &VarianceResult::qubit_closed_form)
        .def_readonly("flags", &VarianceResult::flags);

    py::class_<MomentReport>(m, "MomentReport")
        .def_readonly("avg", &MomentReport::avg)
        .def_readonly("second_moment", &MomentReport::second_moment)
        .def_readonly("variance", &MomentReport::variance)
        .def_readonly("variance_raw", &MomentReport::variance_raw)
        .def_readonly("variance_rational", &MomentReport::variance_rational)
        .def_readonly("variance_qubit", &MomentReport::variance_qubit)
        .def_readonly("variance_method", &MomentReport::variance_method)
        .def_readonly("higher_moments", &MomentReport::higher_moments)
        .def_readonly("flags", &MomentReport::flags);

    py::class_<MomentEstimate>(m, "MomentEstimate")
        .def_readonly("order", &MomentEstimate::order)
        .def_readonly("estimate", &MomentEstimate::estimate)
        .def_readonly("std_error", &MomentEstimate::std_error);

    py::class_<EmpiricalMoments>(m, "EmpiricalMoments")
        .def_readonly("moments", &EmpiricalMoments::moments)
        .def_readonly("variance_estimate", &EmpiricalMoments::variance_estimate)
        .def_readonly("variance_std_error", &EmpiricalMoments::variance_std_error)
        .def_readonly("n_samples", &EmpiricalMoments::n_samples)
        .def_readonly("seed", &EmpiricalMoments::seed)
        .def_readonly("shards", &EmpiricalMoments::shards);

    py::class_<CompareRow>(m, "CompareRow")
        .def_readonly("name", &CompareRow::name)
        .def_readonly("analytic", &CompareRow::analytic)
        .def_readonly("empirical", &CompareRow::empirical)
        .def_readonly("std_error", &CompareRow::std_error)
        .def_readonly("z", &CompareRow::z)
        .def_readonly("pass_", &CompareRow::pass)
        .def("__repr__", [](const CompareRow& r) {
            return r.name + ": z=" + std::to_string(r.z) +
                   (r.pass ? " (pass)" : " (FAIL)");
        });

    py::class_<BoundCheck>(m, "BoundCheck")
        .def_readonly("name", &BoundCheck::name)
        .def_readonly("value", &BoundCheck::value)
        .def_readonly("lo", &BoundCheck::lo)
        .def_readonly("hi", &BoundCheck::hi)
        .def_readonly("slack", &BoundCheck::slack)
        .def_readonly("holds", &BoundCheck::holds);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("r", &BoundReport::r)
        .def_readonly("s", &BoundReport::s)
        .def_readonly("u", &BoundReport::u)
        .def_readonly("v", &BoundReport::v)
        .def_readonly("w", &BoundReport::w)
        .def_readonly("checks", &BoundReport::checks)
        .def_readonly("all_hold", &BoundReport::all_hold);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("d", &SweepRow::d)
        .def_readonly("mean_var", &SweepRow::mean_var)
        .def_readonly("max_var", &SweepRow::max_var);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("trend_ok", &SweepResult::trend_ok);

    // channel constructors and conversions
    m.def("unitary_channel", &unitary_channel, py::arg("u"));
    m.def("deviation_channel", &deviation_channel, py::arg("channel"), py::arg("ideal"));
    m.def("apply_channel", &apply_channel, py::arg("channel"), py::arg("rho"));
    m.def("depolarizing", &depolarizing, py::arg("dim"), py::arg("p"));
    m.def("dephasing", &dephasing, py::arg("p"));
    m.def("amplitude_damping", &amplitude_damping, py::arg("gamma"));
    m.def("random_cptp", &random_cptp, py::arg("dim"), py::arg("rank"), py::arg("seed"));
    m.def("haar_unitary", &haar_unitary, py::arg("dim"), py::arg("seed"));
    m.def(
        "kraus_to_chi",
        [](const KrausChannel& c) { return kraus_to_chi(c).matrix; },
        py::arg("channel"), "chi coefficient matrix in the canonical Hermitian basis");
    m.def(
        "chi_to_kraus",
        [](Index dim, const Matrix& chi) { return chi_to_kraus({dim, nullptr, chi}); },
        py::arg("dim"), py::arg("chi"));
    m.def(
        "jamiolkowski_state",
        [](const KrausChannel& c) { return jamiolkowski_state(c).matrix; },
        py::arg("channel"));
    m.def("validate_cptp", &validate_cptp, py::arg("channel"), py::arg("tol") = 1e-8);
    m.def(
        "hermitian_basis",
        [](Index d) { return hermitian_basis(d).elements; },
        py::arg("dim"), "supernormalized Hermitian basis with tr(P_a P_b) = d delta_ab");
    m.def("max_entangled", &max_entangled, py::arg("dim"));

    // fidelity moments
    m.def("gate_fidelity", &gate_fidelity, py::arg("channel"), py::arg("psi"));
    m.def("average_fidelity", &average_fidelity, py::arg("channel"));
    m.def("second_moment", &second_moment, py::arg("channel"));
    m.def("second_moment_direct", &second_moment_direct, py::arg("channel"));
    m.def("variance", &variance, py::arg("channel"));
    m.def("variance_detailed", &variance_detailed, py::arg("channel"));
    m.def("variance_qubit", &variance_qubit, py::arg("channel"));
    m.def("moment", &moment, py::arg("channel"), py::arg("m"),
          py::arg("budget") = kDefaultMomentBudget);
    m.def("central_moment", &central_moment, py::arg("channel"), py::arg("m"),
          py::arg("budget") = kDefaultMomentBudget);
    m.def("sym_dim", &sym_dim, py::arg("k"), py::arg("dim"));
    m.def("analyze", &analyze, py::arg("channel"), py::arg("m_max") = 2,
          py::arg("budget") = kDefaultMomentBudget);
    m.def("bound_report", &bound_report, py::arg("channel"));
    m.def("scaling_sweep", &scaling_sweep, py::arg("dims"), py::arg("rank"),
          py::arg("trials"), py::arg("seed"));

    // Monte Carlo oracle
    m.def(
        "estimate_moments",
        [](const KrausChannel& c, int m_max, std::int64_t n, std::uint64_t seed, int shards) {
            return estimate_moments(c, m_max, SampleConfig{n, seed, shards});
        },
        py::arg("channel"), py::arg("m_max") = 2, py::arg("n_samples") = 100000,
        py::arg("seed") = 0, py::arg("shards") = 1);
    m.def("compare", &compare, py::arg("analytic"), py::arg("empirical"),
          py::arg("z_gate") = 5.0);
}
