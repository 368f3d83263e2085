// SPDX-License-Identifier: Apache-2.0
//
// string-sausage: random strings moving through Poisson trap fields
// Copyright (C) 2026 The string-sausage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "string_sausage/asymptotics_lab.hpp"
#include "string_sausage/error.hpp"
#include "string_sausage/experiment.hpp"
#include "string_sausage/sausage_geometry.hpp"
#include "string_sausage/spectral_string.hpp"
#include "string_sausage/survival_engine.hpp"

namespace py = pybind11;
using namespace string_sausage;

namespace {

py::array_t<double> trajectory_array(Trajectory const& t)
{
    py::array_t<double> out({static_cast<py::ssize_t>(t.samples()), static_cast<py::ssize_t>(t.M),
                             static_cast<py::ssize_t>(t.d)});
    std::copy(t.values.begin(), t.values.end(), out.mutable_data());
    return out;
}

PointCloud cloud_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> pts)
{
    if (pts.ndim() != 2) {
        throw ConfigError("points must be a 2-d array of shape (n, d)");
    }
    PointCloud c;
    c.d = static_cast<int>(pts.shape(1));
    c.points.assign(pts.data(), pts.data() + pts.size());
    return c;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Spectral simulation of random strings among Poisson traps";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
    py::register_exception<CoverageError>(m, "CoverageError", PyExc_RuntimeError);

    py::enum_<PotentialKind>(m, "PotentialKind")
        .value("HARD", PotentialKind::kHard)
        .value("SOFT", PotentialKind::kSoftIndicator);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("d", &ModelParams::d)
        .def_readwrite("J", &ModelParams::J)
        .def_readwrite("nu", &ModelParams::nu)
        .def_readwrite("a", &ModelParams::a)
        .def_readwrite("potential", &ModelParams::potential)
        .def_readwrite("height", &ModelParams::height)
        .def_readwrite("K", &ModelParams::K)
        .def_readwrite("M", &ModelParams::M)
        .def_readwrite("dt", &ModelParams::dt)
        .def_readwrite("T", &ModelParams::T)
        .def_readwrite("tail_tolerance", &ModelParams::tail_tolerance)
        .def("validate", &ModelParams::validate)
        .def("steps", &ModelParams::steps)
        .def("__repr__", [](ModelParams const& p) {
            return "ModelParams(d=" + std::to_string(p.d) + ", J=" + format_double(p.J) +
                   ", nu=" + format_double(p.nu) + ", a=" + format_double(p.a) + ", T=" + format_double(p.T) +
                   ", K=" + std::to_string(p.K) + ", M=" + std::to_string(p.M) + ", dt=" + format_double(p.dt) +
                   ")";
        });

    m.def(
        "simulate",
        [](ModelParams const& p, std::uint64_t seed, std::uint64_t replica) {
            p.validate();
            return trajectory_array(simulate_trajectory(p, StringState::zero(p.d, p.K, p.J), seed, replica));
        },
        py::arg("params"), py::arg("seed"), py::arg("replica") = 0,
        "Sampled string from the zero profile; array of shape (steps + 1, M, d).");

    m.def(
        "variance_series",
        [](std::string const& kind, double t, double x, double y, int K) {
            static std::map<std::string, VarianceKind> const kinds{{"u", VarianceKind::kU},
                                                                   {"N2", VarianceKind::kN2},
                                                                   {"N1diff", VarianceKind::kN1Diff},
                                                                   {"Ndiff", VarianceKind::kNDiff}};
            auto const it = kinds.find(kind);
            if (it == kinds.end()) {
                throw ConfigError("kind must be u, N2, N1diff or Ndiff");
            }
            return variance_series(it->second, t, x, y, K);
        },
        py::arg("kind"), py::arg("t"), py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("K") = 4096);

    py::class_<SurvivalEstimate>(m, "SurvivalEstimate")
        .def_readonly("p_hat", &SurvivalEstimate::p_hat)
        .def_readonly("stderr", &SurvivalEstimate::std_error)
        .def_readonly("n", &SurvivalEstimate::n_replicas)
        .def_readonly("seed", &SurvivalEstimate::seed)
        .def_readonly("resolution_tag", &SurvivalEstimate::resolution_tag)
        .def_property_readonly("method", [](SurvivalEstimate const& e) { return std::string(to_string(e.method)); })
        .def_property_readonly("ci", [](SurvivalEstimate const& e) { return py::make_tuple(e.ci_low(), e.ci_high()); });

    m.def(
        "annealed_survival",
        [](ModelParams const& p, long n, std::string const& method, std::uint64_t seed, unsigned threads) {
            SurvivalOptions o;
            o.threads = threads;
            auto const mth = survival_method_from_string(method);
            return mth == SurvivalMethod::kSoftWeight ? annealed_soft(p, n, seed, o) : annealed_hard(p, n, mth, seed, o);
        },
        py::arg("params"), py::arg("n"), py::arg("method"), py::arg("seed"), py::arg("threads") = 0);

    m.def(
        "scaling_transform",
        [](ModelParams const& p) {
            auto const s = scaling_transform(p);
            py::dict d;
            d["T"] = s.T_tilde;
            d["nu"] = s.nu_tilde;
            d["a"] = s.a_tilde;
            d["H_scale"] = s.H_scale;
            return d;
        },
        py::arg("params"));
    m.def("unit_length_image", &unit_length_image, py::arg("params"));

    m.def(
        "sausage_volume",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> pts, double radius, std::string const& method,
           long n_mc, double voxel, std::uint64_t seed) {
            auto const cloud = cloud_from_array(pts);
            SausageEstimate e;
            if (method == "voxel") {
                e = sausage_volume_voxel(cloud, radius, voxel > 0.0 ? voxel : radius / 8.0);
            } else if (method == "hit_or_miss") {
                RandomStream rng(seed, stream_id({static_cast<std::uint64_t>(Purpose::kVolume), 0, 0}));
                e = sausage_volume_hit_or_miss(cloud, radius, n_mc, rng);
            } else {
                throw ConfigError("method must be voxel or hit_or_miss");
            }
            return py::make_tuple(e.volume, method == "voxel" ? e.discretization : e.std_error);
        },
        py::arg("points"), py::arg("radius"), py::arg("method") = "hit_or_miss", py::arg("n_mc") = 100000,
        py::arg("voxel") = 0.0, py::arg("seed") = 0,
        "Volume of the union of closed balls; returns (volume, stderr or bracket half-width).");

    m.def(
        "box_counting_slope",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> pts, std::vector<double> const& scales) {
            auto const r = box_counting_dimension(cloud_from_array(pts), scales);
            return py::make_tuple(r.slope, r.counts);
        },
        py::arg("points"), py::arg("scales"));

    m.def(
        "clearing_bound",
        [](int d, double nu, double a, double J, double T, double log_C0) {
            auto const c = clearing_bound(d, nu, a, J, T, log_C0);
            py::dict out;
            out["alpha_star"] = c.alpha_star;
            out["exponent_value"] = c.exponent_value;
            out["clearing_probability"] = c.clearing_probability;
            out["c_d"] = c.c_d;
            return out;
        },
        py::arg("d"), py::arg("nu"), py::arg("a"), py::arg("J"), py::arg("T"), py::arg("log_C0"));

    m.def(
        "exponent_fit",
        [](std::vector<double> const& Ts, std::vector<double> const& y, std::vector<double> const& se) {
            auto const f = exponent_fit(Ts, y, se);
            return py::make_tuple(f.gamma, f.ci_low, f.ci_high);
        },
        py::arg("T"), py::arg("neg_log_S"), py::arg("stderr") = std::vector<double>{},
        "Slope of log(-log S) against log T; returns (gamma, ci_low, ci_high).");

    m.def(
        "run_config",
        [](std::string const& text) {
            auto const trimmed = text.find_first_not_of(" \t\r\n");
            auto const cfg = trimmed != std::string::npos && text[trimmed] == '{' ? parse_config_json(text)
                                                                                  : parse_config_text(text);
            ExperimentOutput out;
            {
                py::gil_scoped_release release;
                out = run_experiment(cfg);
            }
            return py::make_tuple(to_csv(out.rows), out.summary);
        },
        py::arg("config"), "Run an experiment from key = value (or JSON) text; returns (csv, json_summary).");
}
