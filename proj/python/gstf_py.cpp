#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gstf/catalog.hpp"
#include "gstf/classify.hpp"
#include "gstf/cli.hpp"
#include "gstf/inequalities.hpp"
#include "gstf/parallel.hpp"
#include "gstf/parser.hpp"
#include "gstf/toeplitz.hpp"
#include "gstf/transforms.hpp"
#include "gstf/verify.hpp"
#include "gstf/witnesses.hpp"

namespace py = pybind11;
using namespace gstf;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

template <typename T>
py::array_t<T> to_numpy(std::span<const T> v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<cplx> from_numpy(const CArray& a) {
  if (a.ndim() != 1) throw Error(ErrorKind::InvalidArgument, "expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

CArray tfr_values(const TFR& a) {
  CArray out({static_cast<py::ssize_t>(a.rows()), static_cast<py::ssize_t>(a.cols())});
  std::copy(a.values().begin(), a.values().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Short-time Fourier transforms and Gelfand-Shilov envelope classification";

  // Kept alive for the interpreter's lifetime by the module attribute.
  static PyObject* error_type = py::exception<Error>(m, "GstfError", PyExc_RuntimeError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::reinterpret_borrow<py::object>(error_type);
      py::object exc = cls(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("offset") = e.offset() == Error::npos ? py::object(py::none()) : py::object(py::int_(e.offset()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::enum_<Regularity>(m, "Regularity").value("Roumieu", Regularity::Roumieu).value("Beurling", Regularity::Beurling);
  py::enum_<Verdict>(m, "Verdict")
      .value("Member", Verdict::Member)
      .value("NotMember", Verdict::NotMember)
      .value("Inconclusive", Verdict::Inconclusive);
  py::enum_<SymbolSide>(m, "SymbolSide")
      .value("PositionDecay", SymbolSide::PositionDecay)
      .value("FrequencyDecay", SymbolSide::FrequencyDecay);

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init<double, double, std::size_t>(), py::arg("center"), py::arg("step"), py::arg("count"))
      .def_property_readonly("center", &Grid1D::center)
      .def_property_readonly("step", &Grid1D::step)
      .def_property_readonly("count", &Grid1D::count)
      .def_property_readonly("half_width", &Grid1D::half_width)
      .def("coordinates", [](const Grid1D& g) {
        const auto x = g.coordinates();
        return to_numpy(std::span<const double>(x));
      })
      .def("__eq__", [](const Grid1D& a, const Grid1D& b) { return a == b; })
      .def("__repr__", [](const Grid1D& g) {
        std::ostringstream os;
        os << "Grid1D(center=" << g.center() << ", step=" << g.step() << ", count=" << g.count() << ")";
        return os.str();
      });
  m.def("build_grid", &build_grid, py::arg("half_width"), py::arg("exponent"));
  m.def("build_lattice", &build_lattice, py::arg("step"), py::arg("half_count"));
  m.def("dual_grid", &dual_grid, py::arg("grid"));

  py::class_<TFGrid>(m, "TFGrid")
      .def(py::init([](const Grid1D& x, const Grid1D& xi) { return TFGrid{x, xi}; }), py::arg("x"), py::arg("xi"))
      .def_readonly("x", &TFGrid::x)
      .def_readonly("xi", &TFGrid::xi);
  m.def("default_tfgrid", &default_tfgrid, py::arg("grid"));

  py::class_<SampledFunction>(m, "SampledFunction")
      .def(py::init([](const Grid1D& g, const CArray& v) { return SampledFunction(g, from_numpy(v)); }),
           py::arg("grid"), py::arg("values"))
      .def_static("zeros", &SampledFunction::zeros, py::arg("grid"))
      .def_property_readonly("grid", &SampledFunction::grid)
      .def_property_readonly("values", [](const SampledFunction& f) { return to_numpy(f.values()); })
      .def("sup_abs", &SampledFunction::sup_abs)
      .def("l2_norm", &SampledFunction::l2_norm)
      .def("__len__", &SampledFunction::size);

  py::class_<TFR>(m, "TFR")
      .def(py::init([](const TFGrid& g, const CArray& v) {
             if (v.ndim() != 2) throw Error(ErrorKind::InvalidArgument, "expected a two-dimensional array");
             return TFR(g, std::vector<cplx>(v.data(), v.data() + v.size()));
           }),
           py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid", &TFR::grid)
      .def_property_readonly("values", &tfr_values)
      .def("sup_abs", &TFR::sup_abs);

  py::class_<GSIndex>(m, "GSIndex")
      .def(py::init<double, double, Regularity>(), py::arg("s"), py::arg("sigma"), py::arg("regularity"))
      .def_static("decay", &GSIndex::decay, py::arg("s"), py::arg("regularity") = Regularity::Roumieu)
      .def_static("fourier", &GSIndex::fourier, py::arg("sigma"), py::arg("regularity") = Regularity::Roumieu)
      .def_readonly("s", &GSIndex::s)
      .def_readonly("sigma", &GSIndex::sigma)
      .def_readonly("regularity", &GSIndex::regularity)
      .def("name", &GSIndex::name)
      .def("__repr__", &GSIndex::name);

  m.def("parse", [](const std::string& text) { return pretty_print(parse_function_expr(text)); }, py::arg("text"),
        "Canonical text of a parsed expression");
  m.def("sample", [](const std::string& expr, const Grid1D& g) { return catalog_eval(parse_function_expr(expr), g); },
        py::arg("expr"), py::arg("grid"));

  m.def("dft", &dft, py::arg("f"));
  m.def("idft", &idft, py::arg("F"));
  m.def("stft", &stft, py::arg("f"), py::arg("window"), py::arg("tfgrid"));
  m.def("adjoint_stft", &adjoint_stft, py::arg("F"), py::arg("window"));
  m.def("moyal_defect", &moyal_defect, py::arg("f"), py::arg("window"), py::arg("tfgrid"));
  m.def("stft_inversion_defect", &stft_inversion_defect, py::arg("f"), py::arg("window"), py::arg("tfgrid"));
  m.def("set_threads", &set_thread_count, py::arg("n"));

  py::class_<ClassifyOptions>(m, "ClassifyOptions")
      .def(py::init<>())
      .def_readwrite("n_max", &ClassifyOptions::n_max)
      .def_readwrite("r_list", &ClassifyOptions::r_list)
      .def_readwrite("r_scale", &ClassifyOptions::r_scale)
      .def_readwrite("floor_rel", &ClassifyOptions::floor_rel)
      .def_readwrite("guard", &ClassifyOptions::guard);

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("rate", &RateFit::rate)
      .def_property_readonly("flag", [](const RateFit& r) { return std::string(to_string(r.flag)); })
      .def_readonly("resolved", &RateFit::resolved)
      .def_readonly("argmin", &RateFit::argmin);
  m.def("fit_decay_rate", &fit_decay_rate, py::arg("f"), py::arg("s"), py::arg("floor") = -1.0);

  py::class_<EnvelopeReport>(m, "EnvelopeReport")
      .def_readonly("verdict", &EnvelopeReport::verdict)
      .def_readonly("trivial", &EnvelopeReport::trivial)
      .def_readonly("space", &EnvelopeReport::space)
      .def_readonly("C_peak", &EnvelopeReport::C_peak)
      .def_readonly("r_fit", &EnvelopeReport::r_fit)
      .def_readonly("rate_resolved", &EnvelopeReport::rate_resolved)
      .def_readonly("notes", &EnvelopeReport::notes)
      .def_readonly("parts", &EnvelopeReport::parts)
      .def_property_readonly("N_table",
                             [](const EnvelopeReport& r) {
                               py::list out;
                               for (const auto& e : r.N_table)
                                 out.append(py::dict(py::arg("N") = e.N, py::arg("C") = e.C,
                                                     py::arg("interior_attained") = e.interior_attained));
                               return out;
                             })
      .def_property_readonly("beurling_table",
                             [](const EnvelopeReport& r) {
                               py::list out;
                               for (const auto& e : r.beurling_table)
                                 out.append(py::dict(py::arg("r") = e.r, py::arg("C") = e.C,
                                                     py::arg("interior_attained") = e.interior_attained));
                               return out;
                             })
      .def_property_readonly("growth_table", [](const EnvelopeReport& r) {
        py::list out;
        for (const auto& e : r.growth_table) out.append(py::dict(py::arg("r") = e.r, py::arg("N0") = e.N0, py::arg("C") = e.C));
        return out;
      });

  m.def("classify_function", &classify_function, py::arg("f"), py::arg("index"),
        py::arg("options") = ClassifyOptions{});
  m.def("classify_stft", &classify_stft, py::arg("f"), py::arg("window"), py::arg("index"), py::arg("tfgrid"),
        py::arg("options") = ClassifyOptions{});
  m.def("dual_growth_report", &dual_growth_report, py::arg("f"), py::arg("window"), py::arg("index"),
        py::arg("tfgrid"), py::arg("options") = ClassifyOptions{});
  m.def("classify_symbol", &classify_symbol, py::arg("a"), py::arg("s_or_sigma"), py::arg("side"),
        py::arg("options") = ClassifyOptions{});

  py::class_<Witness>(m, "Witness")
      .def_readonly("construction", &Witness::construction)
      .def_readonly("fourier_image", &Witness::fourier_image)
      .def_readonly("samples", &Witness::samples);
  py::class_<WitnessCheck>(m, "WitnessCheck")
      .def_readonly("decay_side", &WitnessCheck::decay_side)
      .def_readonly("fourier_side", &WitnessCheck::fourier_side)
      .def_readonly("passed", &WitnessCheck::passed);
  m.def("make_witness", py::overload_cast<const GSIndex&>(&make_witness), py::arg("index"));
  m.def("check_witness", &check_witness, py::arg("witness"), py::arg("index"));

  py::class_<DemoCandidate>(m, "DemoCandidate")
      .def_readonly("name", &DemoCandidate::name)
      .def_readonly("passed", &DemoCandidate::passed)
      .def_readonly("failing_side", &DemoCandidate::failing_side)
      .def_readonly("first_failing_r", &DemoCandidate::first_failing_r);
  py::class_<BoundaryDemo>(m, "BoundaryDemo")
      .def_readonly("s", &BoundaryDemo::s)
      .def_readonly("sigma", &BoundaryDemo::sigma)
      .def_readonly("candidates", &BoundaryDemo::candidates)
      .def_readonly("passing", &BoundaryDemo::passing);
  m.def("boundary_triviality_demo", py::overload_cast<double>(&boundary_triviality_demo), py::arg("s"));

  m.def("constant_symbol", &constant_symbol, py::arg("tfgrid"), py::arg("value") = 1.0);
  m.def("gaussian_symbol", &gaussian_symbol, py::arg("tfgrid"));
  m.def("disk_symbol", &disk_symbol, py::arg("tfgrid"), py::arg("radius"));
  m.def("polynomial_symbol", &polynomial_symbol, py::arg("tfgrid"));
  m.def("apply_toeplitz", &apply_toeplitz, py::arg("a"), py::arg("phi1"), py::arg("phi2"), py::arg("f"));
  m.def("toeplitz_adjoint_residual", &toeplitz_adjoint_residual, py::arg("a"), py::arg("phi1"), py::arg("phi2"),
        py::arg("f"), py::arg("g"));
  m.def("toeplitz_quadratic_form", &toeplitz_quadratic_form, py::arg("a"), py::arg("phi"), py::arg("f"));

  m.def("peetre_bound_holds", [](double xi, double eta, int N) { return peetre_bound_check(xi, eta, N).holds; },
        py::arg("xi"), py::arg("eta"), py::arg("N"));
  m.def("subexp_triangle_holds",
        [](double x, double y, double s) {
          const auto c = subexp_triangle_check(x, y, s);
          return c.lower_holds && c.upper_holds;
        },
        py::arg("x"), py::arg("y"), py::arg("s"));

  m.def("run_verification",
        [](const std::string& suite) {
          py::list out;
          for (const auto& c : run_verification(suite))
            out.append(py::dict(py::arg("suite") = c.suite, py::arg("name") = c.name, py::arg("value") = c.value,
                                py::arg("tolerance") = c.tolerance, py::arg("bound") = c.bound,
                                py::arg("passed") = c.passed));
          return out;
        },
        py::arg("suite") = "all");

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run_command(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a gstf subcommand; returns (exit_code, stdout, stderr)");
}
