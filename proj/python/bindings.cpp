#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zetalab/bounds.hpp"
#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/perron.hpp"
#include "zetalab/smoothing.hpp"
#include "zetalab/zeta_eval.hpp"

namespace py = pybind11;
using namespace zetalab;

namespace {

py::dict eval_dict(const EvalResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["err"] = r.err;
    return d;
}

py::dict quad_dict(const QuadResult& q) {
    py::dict d;
    d["value"] = q.value;
    d["err"] = q.err;
    d["coarse"] = q.coarse;
    d["dt"] = q.dt;
    d["panels"] = q.panels;
    return d;
}

py::dict report_dict(const BoundReport& r) {
    py::dict d;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["ratio"] = r.ratio;
    return d;
}

py::array_t<std::complex<double>> to_array(const std::vector<cplx>& v) {
    py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::object cell_object(const Cell& c) {
    return std::visit([](const auto& v) -> py::object { return py::cast(v); }, c);
}

py::dict record_dict(const RunRecord& r) {
    py::dict d;
    d["command"] = r.command;
    py::dict config;
    for (const auto& [k, v] : r.config) config[py::str(k)] = v;
    d["config"] = config;
    py::list rows;
    for (const auto& row : r.rows) {
        py::dict item;
        for (std::size_t i = 0; i < r.columns.size(); ++i) item[py::str(r.columns[i])] = cell_object(row[i]);
        rows.append(item);
    }
    d["results"] = rows;
    py::dict summary;
    for (const auto& [k, v] : r.summary) summary[py::str(k)] = cell_object(v);
    d["summary"] = summary;
    d["failure"] = r.failure ? py::cast(*r.failure) : py::none();
    d["version"] = r.version;
    return d;
}

Precision precision_of(const std::string& name) { return parse_precision(name); }

QuadParams quad_params(double dt, double zeta_tol, unsigned threads) {
    QuadParams p;
    p.dt = dt;
    p.zeta_tol = zeta_tol;
    p.threads = threads;
    return p;
}

}  // namespace

PYBIND11_MODULE(_zetalab, m) {
    m.doc() = "Numerical experiments on moments of zeta sums";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    m.def("eval_zeta",
          [](double sigma, double t, double tol, const std::string& precision) {
              return eval_dict(eval_zeta({sigma, t}, tol, precision_of(precision)));
          },
          py::arg("sigma"), py::arg("t"), py::arg("tol") = 1e-12, py::arg("precision") = "double");
    m.def("hardy_z",
          [](double t, double tol, const std::string& precision) {
              return eval_dict(hardy_z(t, tol, precision_of(precision)));
          },
          py::arg("t"), py::arg("tol") = 1e-10, py::arg("precision") = "double");
    m.def("riemann_siegel_theta", &riemann_siegel_theta, py::arg("t"));
    m.def("eval_zeta_one_line",
          [](double alpha, double T, double tol) { return eval_dict(eval_zeta_one_line(alpha, T, tol)); },
          py::arg("alpha"), py::arg("T"), py::arg("tol") = 1e-10);

    m.def("zsum_direct", [](double Y, double t) { return zsum_direct({Y, t}); }, py::arg("Y"), py::arg("t"));
    m.def("zsum_batch",
          [](double Y, double t0, double dt, std::size_t count, unsigned threads) {
              std::vector<cplx> v;
              {
                  py::gil_scoped_release release;
                  v = zsum_batch(Y, Grid{t0, dt, count}, threads);
              }
              return to_array(v);
          },
          py::arg("Y"), py::arg("t0"), py::arg("dt"), py::arg("count"), py::arg("threads") = 0);
    m.def("long_range_approx", &long_range_approx, py::arg("x"), py::arg("t"));

    py::class_<SmoothCutoff>(m, "SmoothCutoff")
        .def(py::init<double, double>(), py::arg("U"), py::arg("c_exponent") = 1.0)
        .def_property_readonly("U", &SmoothCutoff::U)
        .def("__call__", &SmoothCutoff::operator(), py::arg("x"))
        .def("derivative", &SmoothCutoff::derivative, py::arg("x"), py::arg("j"));
    m.def("zsum_smoothed", &zsum_smoothed, py::arg("Y"), py::arg("t"), py::arg("cutoff"));
    m.def("mellin_transform",
          [](const SmoothCutoff& c, cplx s, double tol) {
              const MellinValue v = mellin_transform(c, s, tol);
              py::dict d;
              d["value"] = v.value;
              d["err"] = v.err;
              return d;
          },
          py::arg("cutoff"), py::arg("s"), py::arg("abs_tol") = 1e-13);
    m.def("decay_envelope_check",
          [](const SmoothCutoff& c, int i, const std::vector<cplx>& s) {
              return report_dict(decay_envelope_check(c, i, s));
          },
          py::arg("cutoff"), py::arg("i"), py::arg("s_samples"));
    m.def("diff_mass", &diff_mass, py::arg("Y"), py::arg("cutoff"));

    m.def("integrate_moment",
          [](double mm, double T, double Y, double U, double dt, unsigned threads) {
              MomentSpec spec{mm, T, Y};
              if (U > 0.0) {
                  spec.variant = Variant::smoothed;
                  spec.U = U;
              }
              QuadResult q;
              {
                  py::gil_scoped_release release;
                  q = integrate_moment(spec, quad_params(dt, 1e-9, threads));
              }
              return quad_dict(q);
          },
          py::arg("m"), py::arg("T"), py::arg("Y"), py::arg("U") = 0.0, py::arg("dt") = 0.0,
          py::arg("threads") = 0);
    m.def("shifted_moment",
          [](const std::vector<double>& a, const std::vector<double>& b, double T, double sigma, double dt,
             unsigned threads) {
              const ShiftConfig cfg{a, b};
              const QuadParams p = quad_params(dt, 1e-9, threads);
              QuadResult q;
              {
                  py::gil_scoped_release release;
                  q = sigma == 0.5 ? shifted_moment(cfg, T, p) : sigma_moment(cfg, sigma, T, p);
              }
              return quad_dict(q);
          },
          py::arg("a"), py::arg("b"), py::arg("T"), py::arg("sigma") = 0.5, py::arg("dt") = 0.0,
          py::arg("threads") = 0);
    m.def("window_moment",
          [](double mm, double T, double E, int sign, unsigned threads) {
              QuadResult q;
              {
                  py::gil_scoped_release release;
                  q = window_moment(mm, T, E, sign, quad_params(0.0, 1e-9, threads));
              }
              return quad_dict(q);
          },
          py::arg("m"), py::arg("T"), py::arg("E"), py::arg("sign") = 1, py::arg("threads") = 0);

    m.def("g_func", [](double x, double T) { return g_func(x, {T}); }, py::arg("x"), py::arg("T"));
    m.def("curran_rhs", [](const std::vector<double>& a, const std::vector<double>& b, double T) {
        return curran_rhs({a, b}, T);
    }, py::arg("a"), py::arg("b"), py::arg("T"));
    m.def("corollary_rhs", [](const std::vector<double>& a, const std::vector<double>& b, double T) {
        return corollary_rhs({a, b}, T);
    }, py::arg("a"), py::arg("b"), py::arg("T"));
    m.def("main_rhs", &main_rhs, py::arg("m"), py::arg("T"), py::arg("Y"));
    m.def("prop24_rhs", &prop24_rhs, py::arg("m"), py::arg("T"), py::arg("E"));
    m.def("holder_reduce", &holder_reduce, py::arg("m"), py::arg("n"), py::arg("S_mn"), py::arg("T"));
    m.def("fit_exponent", [](const std::vector<std::pair<double, double>>& pts) {
        const FitResult f = fit_exponent(pts);
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["residual"] = f.residual;
        return d;
    }, py::arg("points"));

    m.def("truncated_vertical", [](double Y, double t, unsigned threads) {
        PerronParams p;
        p.threads = threads;
        return eval_dict(truncated_vertical({Y, t}, p));
    }, py::arg("Y"), py::arg("t"), py::arg("threads") = 0);
    m.def("contour_decomposition", [](double Y, double t, unsigned threads) {
        PerronParams p;
        p.threads = threads;
        const ContourPieces c = contour_decomposition({Y, t}, p);
        py::dict d;
        d["horiz_lower"] = c.horiz_lower;
        d["vertical_half"] = c.vertical_half;
        d["horiz_upper"] = c.horiz_upper;
        d["residue"] = c.residue;
        d["total"] = c.total();
        d["err"] = c.err;
        d["r1"] = c.r1;
        d["r2"] = c.r2;
        return d;
    }, py::arg("Y"), py::arg("t"), py::arg("threads") = 0);
    m.def("perron_residual", [](double Y, double t, unsigned threads) {
        PerronParams p;
        p.threads = threads;
        return report_dict(perron_residual({Y, t}, p));
    }, py::arg("Y"), py::arg("t"), py::arg("threads") = 0);

    m.def("run_scaling", [](double mm, const std::vector<double>& T_list, const std::string& rule, double dt,
                            unsigned threads) {
        ScalingOptions o;
        o.m = mm;
        o.T_list = T_list;
        o.Y_rule = rule;
        o.dt = dt;
        o.threads = threads;
        return record_dict(run_scaling(o));
    }, py::arg("m"), py::arg("T_list"), py::arg("Y_rule") = "sqrt(T)", py::arg("dt") = 0.0, py::arg("threads") = 0);
    m.def("run_verify", [](const std::string& suite, unsigned threads) {
        VerifyOptions o;
        o.suite = suite;
        o.threads = threads;
        return record_dict(run_verify(o));
    }, py::arg("suite") = "fast", py::arg("threads") = 0);
}
