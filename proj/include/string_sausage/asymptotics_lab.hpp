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
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "sausage_geometry.hpp"
#include "spectral_string.hpp"
#include "string_statistics.hpp"

namespace string_sausage {

//! Spectral states of one replica at every sample time, kept for after-the-fact analysis.
struct RunTrace {
    ModelParams params;
    std::vector<StringState> states;

    std::size_t size() const { return states.size(); }
    double time(std::size_t i) const { return states[i].t; }
};

RunTrace record_trace(ModelParams const& params, StringState const& initial, std::uint64_t seed,
                      std::uint64_t replica);

//! Center-of-mass path of a trace; radii are filled only when with_radius is set.
PathRecord trace_path(RunTrace const& trace, bool with_radius = false);

struct TauSequence {
    std::vector<double> times;       //!< tau_0 = 0, tau_1, ...
    std::vector<std::size_t> index;  //!< sample index of each tau
    double max_step = 0.0;           //!< largest displacement between consecutive samples
    bool guard_ok = true;            //!< max_step < Lambda / 10

    //! #(T): number of tau_i in (0, T].
    long count_up_to(double T) const;
};

/*!
 * tau_{i+1} is the first sample time at which X is at distance >= 4 Lambda
 * from every previously selected center X_{tau_0..tau_i}.
 */
TauSequence tau_sequence(PathRecord const& path, double Lambda);

//! Every path point before the next selection lies within 4 Lambda of a selected center.
bool tau_covering_holds(PathRecord const& path, TauSequence const& taus, double Lambda);

//! L2 norm of f - mean over the unit circle, all coordinates together (Parseval on the coefficients).
double centered_l2_norm(StringState const& state);
double centered_l2_norm(FieldSamples const& samples);

struct RangeSmoothingReport {
    double t = 0.0;
    double lhs = 0.0;  //!< range(G_t f)
    double rhs = 0.0;  //!< 4 d e^{-2 pi^2 t} ||f - mean||_2
    bool holds = false;
    bool in_hypothesis = true;  //!< t >= 1
};

//! range(G_t f) <= 4 d exp(-2 pi^2 t) ||f - mean||_2, evaluated on the sample grid.
RangeSmoothingReport range_smoothing_check(FieldSamples const& f, double t);
RangeSmoothingReport range_smoothing_check(StringState const& f, double t, int M);

struct DeltaL {
    double a = 0.0;
    int d = 0;
    double E = 1.0;
    double delta = 0.0;  //!< a / 100
    double L = 0.0;      //!< E + 3 |log a|
    double C0 = 0.0;
    //! Conditions that can be evaluated and were enforced by raising E.
    std::vector<std::string> checked;
    //! Conditions whose constants are not constructive; recorded, not enforced.
    std::vector<std::string> unchecked;
};

/*!
 * delta = a/100 and L = E + 3|log a|, with E raised in unit steps from
 * E_initial until 4 d e^{-2 pi^2 L} <= delta and e^{2 pi^2 L} >= 8 C0 d^{3/2} / delta.
 */
DeltaL choose_delta_L(double a, int d, double E_initial = 1.0, double C0 = 0.28867513459481287);

struct LambdaCalibration {
    double Lambda = 1.0;
    double quantile = 0.0;  //!< empirical quantile before clamping to >= 1
    std::vector<double> ranges;
};

/*!
 * Lambda as the q-quantile of range(N(0,L)) over n_rep replicas started from
 * the zero string, clamped to at least 1.
 */
LambdaCalibration calibrate_lambda(ModelParams const& params, double L, long n_rep, std::uint64_t seed,
                                   double q = 0.75, unsigned threads = 0);

struct ChainInterval {
    double T_prev = 0.0;
    double S = 0.0;
    double T = 0.0;
    double range_noise = 0.0;  //!< range N(T_prev, T)
    double range_u = 0.0;      //!< range u(T)
    bool range_ok = false;     //!< |range_u - range_noise| <= 2 delta
    RangeSmoothingReport smoothing;
    SausageEstimate volume_u;           //!< sausage of u(T) at radius a
    SausageEstimate volume_noise_half;  //!< sausage of N(T_prev, T) at radius a/2
    bool volume_ok = false;
};

struct StoppingChain {
    double Lambda = 1.0;
    double delta = 0.0;
    double L = 0.0;
    double a = 0.0;
    std::vector<double> tau;
    std::vector<double> S;
    std::vector<double> T_seq;
    std::vector<ChainInterval> intervals;

    //! Ordering invariants: T_i >= S_i >= T_{i-1} + L and T_i is the first tau >= S_i.
    bool ordering_ok() const;
    bool all_ok() const;
};

/*!
 * S_i is the first time t >= T_{i-1} + L at which the smoothed previous noise
 * segment (u_0 for i = 1) has range <= delta; it is located exactly in
 * continuous time since the smoothing is analytic in the coefficients. T_i is
 * the first tau >= S_i. The chain stops when the trace runs out.
 */
StoppingChain stopping_chain(RunTrace const& trace, double Lambda, double delta, double L, double a);

struct GspaceRatioReport {
    std::vector<std::pair<double, double>> pairs;
    std::vector<double> distance;
    std::vector<double> series;
    std::vector<double> ratio;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double spread = 0.0;
    bool bounded = false;  //!< spread <= 25
};

//! Var(N(0,t;x) - N(0,t;y)) / d(x,y) for each pair; pairs with x = y are skipped.
GspaceRatioReport gspace_ratio(double t, std::span<std::pair<double, double> const> pairs, int K = 8192);

//! g(alpha) = -A alpha^d - B / alpha^2.
double clearing_objective(double alpha, double A, double B, int d);
//! Maximizer (2B / (d A))^(1/(d+2)) of clearing_objective.
double clearing_argmax(double A, double B, int d);

struct ClearingBound {
    double A = 0.0;
    double B = 0.0;
    double c_d = 0.0;
    double log_C0 = 0.0;
    double alpha_star = 0.0;
    double exponent_value = 0.0;
    double clearing_probability = 0.0;  //!< exp(-nu c_d (alpha* + a)^d)
};

/*!
 * Closed-form optimum of -nu J^{d/2} c_d 2^d alpha^d + (T / (J^2 alpha^2)) log C0.
 */
ClearingBound clearing_bound(int d, double nu, double a, double J, double T, double log_C0);

struct ExponentFit {
    double gamma = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool weighted = false;
    std::size_t n = 0;
};

/*!
 * Least squares of log(-log S) against log T. With standard errors of -log S,
 * points are weighted by the delta-method inverse variance and the CI uses
 * the normal quantile; otherwise the residual variance and Student t.
 */
ExponentFit exponent_fit(std::span<double const> Ts, std::span<double const> neg_log_S,
                         std::span<double const> std_errors = {});

//! Two-sided 97.5% Student t quantile.
double student_t_975(std::size_t dof);

struct ConfinementReport {
    double t = 0.0;
    double window = 0.0;
    long n = 0;
    double freq_range = 0.0;  //!< range N(0,t) <= a/8
    double freq_noise = 0.0;  //!< sup over window of |N(0,t+s) - N(0,t)| <= a/16
    double freq_center = 0.0; //!< sup over window of |X_{t+s} - X_t| <= a/16
    double freq_all = 0.0;
};

/*!
 * Frequencies of the soft-trap confinement events at time t over a window
 * of length c6 a^{4+eta}, sampled with n_sub substeps, from the zero string.
 */
ConfinementReport confinement_frequency(ModelParams const& params, double t, double eta, double c6, int n_sub,
                                        long n_rep, std::uint64_t seed, unsigned threads = 0);

} // namespace string_sausage
