#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gi/time_series.hpp"

namespace gi::numerics {

// ---------------------------------------------------------------------------
// Percentiles

// Linear-interpolation percentile on sorted order statistics with rank
// h = (n-1)*q (inclusive "type 7" convention). q in [0,1].
double percentile(std::vector<double> values, double q);

// ---------------------------------------------------------------------------
// Ordinary least squares

struct OlsFit {
    std::vector<double> coefficients; // intercept first when present in design
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values; // two-sided
    std::vector<double> residuals;
    double r_squared = 0.0;
    int n_obs = 0;
};

// design: row-major n x k matrix including the intercept column.
// Throws DomainError on rank deficiency or insufficient observations.
OlsFit ols_fit(const std::vector<std::vector<double>>& design, const std::vector<double>& response);

// Upper tail P(T > t) of the Student-t distribution via the regularized
// incomplete beta function.
double student_t_sf(double t, int df);

double incomplete_beta(double a, double b, double x); // regularized I_x(a,b)

// ---------------------------------------------------------------------------
// Correlation and rolling statistics

struct CorrResult {
    double value = 0.0;
    bool degenerate = false; // zero variance on either side
};

CorrResult pearson_corr(const std::vector<double>& x, const std::vector<double>& y);

enum class RollingKind { Variance, Rms, Mean };

// Value at year t is computed over the trailing window (t-window+1 .. t),
// emitted only when every slot in the window is present. Variance uses the
// sample (n-1) divisor; RMS uses sqrt(mean of squares).
TimeSeries rolling_stat(const TimeSeries& series, int window, RollingKind kind);

TimeSeries rolling_corr(const TimeSeries& x, const TimeSeries& y, int window);

// ---------------------------------------------------------------------------
// Riemann zeta on the critical line

// zeta(0.5 + i*t) by Euler-Maclaurin summation with adaptive truncation.
// Supported range |t| <= 1e6; absolute error <= 1e-8 within it.
std::complex<double> zeta_critical_line(double t);

// ---------------------------------------------------------------------------
// Two-state Gaussian hidden Markov model

struct HmmConfig {
    int n_states = 2;
    int max_iter = 200;
    double tol = 1e-8;
    double variance_floor = 1e-6;
    unsigned seed = 0; // recorded for reproducibility; initialization is deterministic
};

struct HmmModel {
    int n_states = 2;
    std::vector<double> means;                    // canonical order: ascending mean
    std::vector<double> variances;                // >= variance floor
    std::vector<std::vector<double>> transition;  // row-stochastic
    std::vector<double> initial;
    std::vector<double> log_likelihoods;          // per EM iteration, non-decreasing
    bool degenerate = false;                      // constant input, states collapsed
};

HmmModel hmm_fit(const std::vector<double>& series, const HmmConfig& config);

// Viterbi most-likely state path; state 0 is the lower-mean state.
std::vector<int> hmm_decode(const HmmModel& model, const std::vector<double>& series);

} // namespace gi::numerics
