#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dispest/bounds.hpp"
#include "dispest/errors.hpp"
#include "dispest/estimation.hpp"
#include "dispest/io.hpp"
#include "dispest/montecarlo.hpp"
#include "dispest/rng.hpp"
#include "dispest/wigner.hpp"

namespace py = pybind11;
using namespace dispest;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bayesian two-parameter displacement estimation with single-photon probes";

    py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
    py::register_exception<DegeneratePosteriorError>(m, "DegeneratePosteriorError",
                                                     PyExc_RuntimeError);
    py::register_exception<DegenerateSelectionError>(m, "DegenerateSelectionError",
                                                     PyExc_RuntimeError);
    py::register_exception<NoEventsError>(m, "NoEventsError", PyExc_RuntimeError);
    py::register_exception<RetargetDirectionError>(m, "RetargetDirectionError",
                                                   PyExc_ValueError);

    py::class_<QuadraturePoint>(m, "QuadraturePoint")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("p") = 0.0)
        .def_readwrite("x", &QuadraturePoint::x)
        .def_readwrite("p", &QuadraturePoint::p);

    py::class_<PhotonMixture>(m, "PhotonMixture")
        .def(py::init<std::vector<std::pair<int, double>>>(), py::arg("weights"))
        .def(py::init([](const std::map<int, double>& w) {
                 return PhotonMixture(std::vector<std::pair<int, double>>(w.begin(), w.end()));
             }),
             py::arg("weights"))
        .def_static("fock", &PhotonMixture::fock, py::arg("n"))
        .def_property_readonly("weights", &PhotonMixture::weights)
        .def("weight", &PhotonMixture::weight, py::arg("n"))
        .def("__repr__",
             [](const PhotonMixture& mix) { return "PhotonMixture(" + mixture_to_string(mix) + ")"; });

    py::class_<RadialPolyGaussian>(m, "RadialPolyGaussian")
        .def(py::init<double, std::vector<double>>(), py::arg("lam"), py::arg("coeffs"))
        .def_property_readonly("lam", &RadialPolyGaussian::lambda)
        .def_property_readonly("coeffs", &RadialPolyGaussian::coeffs)
        .def_property_readonly("degree", &RadialPolyGaussian::degree)
        .def("integral", &RadialPolyGaussian::integral)
        .def("value_at", &RadialPolyGaussian::value_at, py::arg("s"))
        .def("__call__", [](const RadialPolyGaussian& f, double x, double p) {
            return f.value(QuadraturePoint{x, p});
        });

    m.def("fock_wigner", &fock_wigner, py::arg("n"));
    m.def("mixture_wigner", &mixture_wigner, py::arg("mix"));
    m.def("apply_loss", &apply_loss, py::arg("mix"), py::arg("loss"));
    m.def("convolve", &convolve, py::arg("a"), py::arg("b"));
    m.def("fourier_transform", &fourier_transform, py::arg("f"));
    m.def(
        "radial_profile",
        [](const RadialPolyGaussian& f, const std::vector<double>& radii) {
            return radial_profile(f, radii);
        },
        py::arg("f"), py::arg("radii"));

    py::class_<PriorModel>(m, "PriorModel")
        .def(py::init<double>(), py::arg("v"))
        .def_readonly("v", &PriorModel::v);

    py::class_<Displacement>(m, "Displacement")
        .def(py::init<double, double>(), py::arg("xi") = 0.0, py::arg("eta") = 0.0)
        .def_readwrite("xi", &Displacement::xi)
        .def_readwrite("eta", &Displacement::eta);

    py::class_<Outcome>(m, "Outcome")
        .def(py::init<double, double>(), py::arg("y_x") = 0.0, py::arg("y_p") = 0.0)
        .def_readwrite("y_x", &Outcome::y_x)
        .def_readwrite("y_p", &Outcome::y_p);

    py::class_<LikelihoodKernel>(m, "LikelihoodKernel")
        .def(py::init<RadialPolyGaussian>(), py::arg("kernel"))
        .def_property_readonly("kernel", &LikelihoodKernel::kernel);

    py::class_<PosteriorSummary>(m, "PosteriorSummary")
        .def_readonly("mean_xi", &PosteriorSummary::mean_xi)
        .def_readonly("mean_eta", &PosteriorSummary::mean_eta)
        .def_readonly("var_xi", &PosteriorSummary::var_xi)
        .def_readonly("var_eta", &PosteriorSummary::var_eta)
        .def_readonly("log_evidence", &PosteriorSummary::log_evidence);

    py::class_<ErrorStats>(m, "ErrorStats")
        .def_readonly("v_prime", &ErrorStats::v_prime)
        .def_readonly("std_error", &ErrorStats::std_error)
        .def_readonly("n_selected", &ErrorStats::n_selected);

    py::class_<ExpectedError>(m, "ExpectedError")
        .def_readonly("v_prime", &ExpectedError::v_prime)
        .def_readonly("select_prob", &ExpectedError::select_prob);

    m.def("prior_density", &prior_density, py::arg("prior"), py::arg("d"));
    m.def("build_likelihood", &build_likelihood, py::arg("probe"), py::arg("ancilla"));
    m.def("likelihood_density", &likelihood_density, py::arg("k"), py::arg("y"), py::arg("d"));
    m.def("posterior_density", &posterior_density, py::arg("prior"), py::arg("k"), py::arg("y"),
          py::arg("d"));
    m.def("posterior_mean", &posterior_mean, py::arg("prior"), py::arg("k"), py::arg("y"));
    m.def("post_select", &post_select, py::arg("y"), py::arg("r"));
    m.def(
        "estimation_error",
        [](const std::vector<EventRecord>& events) { return estimation_error(events); },
        py::arg("events"));
    m.def("expected_error_quadrature", &expected_error_quadrature, py::arg("prior"),
          py::arg("k"), py::arg("r"));

    py::class_<ClassicalLimit>(m, "ClassicalLimit")
        .def_readonly("v", &ClassicalLimit::v)
        .def_readonly("v_prime_c", &ClassicalLimit::v_prime_c);
    m.def("classical_limit", &classical_limit, py::arg("v"), py::arg("r"));
    m.def("classical_limit_closed_form", &classical_limit_closed_form, py::arg("v"));

    py::class_<EventRecord>(m, "EventRecord")
        .def(py::init<>())
        .def_readwrite("xi", &EventRecord::xi)
        .def_readwrite("eta", &EventRecord::eta)
        .def_readwrite("y_x", &EventRecord::y_x)
        .def_readwrite("y_p", &EventRecord::y_p)
        .def_readwrite("selected", &EventRecord::selected)
        .def_readwrite("est_xi", &EventRecord::est_xi)
        .def_readwrite("est_eta", &EventRecord::est_eta)
        .def_readwrite("sq_err", &EventRecord::sq_err);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init([](double v, double r, const PhotonMixture& probe,
                         const PhotonMixture& ancilla, std::uint64_t n_events,
                         std::uint64_t seed) {
                 return RunConfig{v, r, probe, ancilla, n_events, seed};
             }),
             py::arg("v"), py::arg("r"), py::arg("probe"), py::arg("ancilla"),
             py::arg("n_events"), py::arg("seed"))
        .def_readwrite("v", &RunConfig::v)
        .def_readwrite("r", &RunConfig::r)
        .def_readwrite("probe", &RunConfig::probe)
        .def_readwrite("ancilla", &RunConfig::ancilla)
        .def_readwrite("n_events", &RunConfig::n_events)
        .def_readwrite("seed", &RunConfig::seed);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("index"))
        .def("next_u64", &RngStream::next_u64)
        .def("next_unit", &RngStream::next_unit);

    m.def("sample_displacement", &sample_displacement, py::arg("prior"), py::arg("rng"));
    m.def("sample_outcome", &sample_outcome, py::arg("k"), py::arg("d"), py::arg("rng"));
    m.def("run_experiment", &run_experiment, py::arg("cfg"), py::arg("n_threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "retarget_variance",
        [](const std::vector<EventRecord>& events, double v_source, double v_target,
           const LikelihoodKernel& k, RngStream& rng) {
            return retarget_variance(events, v_source, v_target, k, rng);
        },
        py::arg("events"), py::arg("v_source"), py::arg("v_target"), py::arg("k"),
        py::arg("rng"));

    m.def("write_events_csv",
          [](const std::filesystem::path& path, const std::vector<EventRecord>& events) {
              write_events_csv(path, events);
          });
    m.def("read_events_csv", &read_events_csv, py::arg("path"));
}
