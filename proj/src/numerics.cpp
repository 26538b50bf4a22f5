#include "gi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gi/error.hpp"

namespace gi::numerics {

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw DomainError("percentile: empty input");
    if (q < 0.0 || q > 1.0) throw DomainError("percentile: q outside [0,1]");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("percentile: non-finite input");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const size_t lo = static_cast<size_t>(std::floor(h));
    const double frac = h - std::floor(h);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

// ---------------------------------------------------------------------------
// OLS via normal equations with partial-pivot Gaussian elimination. The
// designs here are tiny (<= 8 columns), so no external linear algebra.

namespace {

// Solves A*X = B in place for the k x k system, also producing inv(A) when
// identity columns are appended. Throws on numerically singular A.
std::vector<std::vector<double>> invert_spd(std::vector<std::vector<double>> a) {
    const size_t k = a.size();
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i) inv[i][i] = 1.0;

    double scale = 0.0;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) scale = std::max(scale, std::fabs(a[i][j]));
    if (scale == 0.0) throw DomainError("ols_fit: zero design matrix");

    for (size_t col = 0; col < k; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-12 * scale)
            throw DomainError("ols_fit: singular design (rank deficient)");
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double d = a[col][col];
        for (size_t j = 0; j < k; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (size_t j = 0; j < k; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

OlsFit ols_fit(const std::vector<std::vector<double>>& design, const std::vector<double>& response) {
    const size_t n = design.size();
    if (n == 0 || n != response.size()) throw DomainError("ols_fit: design/response size mismatch");
    const size_t k = design[0].size();
    if (k == 0 || k > 8) throw DomainError("ols_fit: unsupported column count");
    if (n <= k) throw DomainError("ols_fit: insufficient observations");
    for (const auto& row : design)
        if (row.size() != k) throw DomainError("ols_fit: ragged design matrix");

    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t a = 0; a < k; ++a) {
            xty[a] += design[i][a] * response[i];
            for (size_t b = 0; b < k; ++b) xtx[a][b] += design[i][a] * design[i][b];
        }
    }
    const auto xtx_inv = invert_spd(xtx);

    OlsFit fit;
    fit.n_obs = static_cast<int>(n);
    fit.coefficients.assign(k, 0.0);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) fit.coefficients[a] += xtx_inv[a][b] * xty[b];

    fit.residuals.resize(n);
    double sse = 0.0;
    double mean_y = std::accumulate(response.begin(), response.end(), 0.0) / static_cast<double>(n);
    double sst = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double yhat = 0.0;
        for (size_t a = 0; a < k; ++a) yhat += design[i][a] * fit.coefficients[a];
        fit.residuals[i] = response[i] - yhat;
        sse += fit.residuals[i] * fit.residuals[i];
        sst += (response[i] - mean_y) * (response[i] - mean_y);
    }
    fit.r_squared = sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : 0.0;

    const int df = static_cast<int>(n - k);
    const double sigma2 = sse / static_cast<double>(df);
    fit.std_errors.resize(k);
    fit.t_stats.resize(k);
    fit.p_values.resize(k);
    for (size_t a = 0; a < k; ++a) {
        fit.std_errors[a] = std::sqrt(std::max(0.0, sigma2 * xtx_inv[a][a]));
        if (fit.std_errors[a] > 0.0) {
            fit.t_stats[a] = fit.coefficients[a] / fit.std_errors[a];
            fit.p_values[a] = 2.0 * student_t_sf(std::fabs(fit.t_stats[a]), df);
        } else {
            fit.t_stats[a] = 0.0;
            fit.p_values[a] = 1.0;
        }
    }
    return fit;
}

// Regularized incomplete beta via the standard continued fraction (modified
// Lentz iteration).
double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);

    auto contfrac = [](double a_, double b_, double x_) {
        const double tiny = 1e-300;
        double c = 1.0;
        double d = 1.0 - (a_ + b_) * x_ / (a_ + 1.0);
        if (std::fabs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 300; ++m) {
            const double m2 = 2.0 * m;
            double num = m * (b_ - m) * x_ / ((a_ + m2 - 1.0) * (a_ + m2));
            d = 1.0 + num * d;
            if (std::fabs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(a_ + m) * (a_ + b_ + m) * x_ / ((a_ + m2) * (a_ + m2 + 1.0));
            d = 1.0 + num * d;
            if (std::fabs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = d * c;
            h *= delta;
            if (std::fabs(delta - 1.0) < 1e-15) break;
        }
        return h;
    };

    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_front) * contfrac(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     contfrac(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, int df) {
    if (df < 1) throw DomainError("student_t_sf: df must be >= 1");
    if (t < 0.0) return 1.0 - student_t_sf(-t, df);
    const double x = df / (df + t * t);
    return 0.5 * incomplete_beta(0.5 * df, 0.5, x);
}

CorrResult pearson_corr(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("pearson_corr: length mismatch");
    if (x.size() < 2) throw DomainError("pearson_corr: need at least 2 points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return {0.0, true};
    return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

TimeSeries rolling_stat(const TimeSeries& series, int window, RollingKind kind) {
    const int min_window = kind == RollingKind::Variance ? 2 : 1;
    if (window < min_window) throw DomainError("rolling_stat: window too small");
    TimeSeries out;
    out.years = series.years;
    out.values.assign(series.size(), std::nullopt);
    for (size_t t = 0; t < series.size(); ++t) {
        if (t + 1 < static_cast<size_t>(window)) continue;
        bool complete = true;
        std::vector<double> slice;
        slice.reserve(static_cast<size_t>(window));
        for (int k = 0; k < window; ++k) {
            const auto& v = series.values[t - static_cast<size_t>(k)];
            if (!v) {
                complete = false;
                break;
            }
            slice.push_back(*v);
        }
        if (!complete) continue;
        const double n = static_cast<double>(window);
        switch (kind) {
            case RollingKind::Mean: {
                out.values[t] = std::accumulate(slice.begin(), slice.end(), 0.0) / n;
                break;
            }
            case RollingKind::Variance: {
                const double mean = std::accumulate(slice.begin(), slice.end(), 0.0) / n;
                double ss = 0.0;
                for (double v : slice) ss += (v - mean) * (v - mean);
                out.values[t] = ss / (n - 1.0);
                break;
            }
            case RollingKind::Rms: {
                double ss = 0.0;
                for (double v : slice) ss += v * v;
                out.values[t] = std::sqrt(ss / n);
                break;
            }
        }
    }
    return out;
}

TimeSeries rolling_corr(const TimeSeries& x, const TimeSeries& y, int window) {
    if (window < 3) throw DomainError("rolling_corr: window must be >= 3");
    if (x.years != y.years) throw DomainError("rolling_corr: series not aligned");
    TimeSeries out;
    out.years = x.years;
    out.values.assign(x.size(), std::nullopt);
    for (size_t t = 0; t < x.size(); ++t) {
        if (t + 1 < static_cast<size_t>(window)) continue;
        std::vector<double> xs, ys;
        bool complete = true;
        for (int k = window - 1; k >= 0; --k) {
            const size_t i = t - static_cast<size_t>(k);
            if (!x.values[i] || !y.values[i]) {
                complete = false;
                break;
            }
            xs.push_back(*x.values[i]);
            ys.push_back(*y.values[i]);
        }
        if (!complete) continue;
        out.values[t] = pearson_corr(xs, ys).value;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Riemann zeta, Euler-Maclaurin on the critical line.

namespace {

// B_{2k} / (2k)! for k = 1..12
constexpr double kBernoulliOverFactorial[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
};

std::complex<double> zeta_euler_maclaurin(std::complex<double> s, int n_terms) {
    std::complex<double> sum = 0.0;
    for (int n = 1; n < n_terms; ++n)
        sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double N = static_cast<double>(n_terms);
    const std::complex<double> n_pow_ms = std::exp(-s * std::log(N));
    sum += N * n_pow_ms / (s - 1.0); // N^{1-s}/(s-1)
    sum += 0.5 * n_pow_ms;

    // Tail corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    std::complex<double> poch = s;       // rising factorial through s+2k-2
    std::complex<double> npow = n_pow_ms / N; // N^{-s-1}, maintained as N^{-s-2k+1}
    for (size_t k = 0; k < std::size(kBernoulliOverFactorial); ++k) {
        if (k > 0) {
            poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
            npow /= N * N;
        }
        sum += kBernoulliOverFactorial[k] * poch * npow; // N^{-s-2k+1}
    }
    return sum;
}

} // namespace

std::complex<double> zeta_critical_line(double t) {
    if (!std::isfinite(t)) throw DomainError("zeta_critical_line: non-finite t");
    if (std::fabs(t) > 1e6) throw DomainError("zeta_critical_line: |t| exceeds supported range");
    const std::complex<double> s(0.5, t);
    // Euler-Maclaurin needs the truncation point beyond |t|/(2*pi); adapt
    // upward until two refinements agree.
    int n = std::max(24, static_cast<int>(std::fabs(t) / 4.0) + 24);
    std::complex<double> prev = zeta_euler_maclaurin(s, n);
    for (int iter = 0; iter < 6; ++iter) {
        n = n * 3 / 2 + 8;
        const std::complex<double> cur = zeta_euler_maclaurin(s, n);
        if (std::abs(cur - prev) < 5e-10) return cur;
        prev = cur;
    }
    return prev;
}

// ---------------------------------------------------------------------------
// Two-state Gaussian HMM, Baum-Welch with scaled forward-backward.

namespace {

double gauss_pdf(double x, double mean, double var) {
    const double d = x - mean;
    return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * M_PI * var);
}

void canonicalize(HmmModel& m) {
    if (m.means.size() == 2 && m.means[0] > m.means[1]) {
        std::swap(m.means[0], m.means[1]);
        std::swap(m.variances[0], m.variances[1]);
        std::swap(m.initial[0], m.initial[1]);
        std::swap(m.transition[0], m.transition[1]);
        std::swap(m.transition[0][0], m.transition[0][1]);
        std::swap(m.transition[1][0], m.transition[1][1]);
    }
}

} // namespace

HmmModel hmm_fit(const std::vector<double>& series, const HmmConfig& config) {
    if (config.n_states != 2) throw DomainError("hmm_fit: only 2-state models supported");
    const size_t n = series.size();
    if (n < 4) throw DomainError("hmm_fit: series too short");
    for (double v : series)
        if (!std::isfinite(v)) throw DomainError("hmm_fit: non-finite input");

    HmmModel model;
    model.n_states = 2;
    const auto [mn_it, mx_it] = std::minmax_element(series.begin(), series.end());
    if (*mn_it == *mx_it) {
        model.degenerate = true;
        model.means = {*mn_it, *mn_it};
        model.variances = {config.variance_floor, config.variance_floor};
        model.transition = {{0.5, 0.5}, {0.5, 0.5}};
        model.initial = {0.5, 0.5};
        return model;
    }

    // Deterministic init: split the sorted sample into halves.
    std::vector<double> sorted(series);
    std::sort(sorted.begin(), sorted.end());
    const size_t half = n / 2;
    auto moments = [&](size_t lo, size_t hi) {
        double mean = 0.0;
        for (size_t i = lo; i < hi; ++i) mean += sorted[i];
        mean /= static_cast<double>(hi - lo);
        double var = 0.0;
        for (size_t i = lo; i < hi; ++i) var += (sorted[i] - mean) * (sorted[i] - mean);
        var /= static_cast<double>(hi - lo);
        return std::pair<double, double>{mean, std::max(var, config.variance_floor)};
    };
    auto [m0, v0] = moments(0, half);
    auto [m1, v1] = moments(half, n);
    model.means = {m0, m1};
    model.variances = {v0, v1};
    model.transition = {{0.9, 0.1}, {0.1, 0.9}};
    model.initial = {0.5, 0.5};

    std::vector<std::vector<double>> emis(n, std::vector<double>(2));
    std::vector<std::vector<double>> alpha(n, std::vector<double>(2));
    std::vector<std::vector<double>> beta(n, std::vector<double>(2));
    std::vector<double> scale(n);

    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < config.max_iter; ++iter) {
        for (size_t t = 0; t < n; ++t)
            for (int j = 0; j < 2; ++j)
                emis[t][j] = std::max(gauss_pdf(series[t], model.means[j], model.variances[j]), 1e-300);

        // forward, scaled
        for (int j = 0; j < 2; ++j) alpha[0][j] = model.initial[j] * emis[0][j];
        scale[0] = alpha[0][0] + alpha[0][1];
        alpha[0][0] /= scale[0];
        alpha[0][1] /= scale[0];
        for (size_t t = 1; t < n; ++t) {
            for (int j = 0; j < 2; ++j)
                alpha[t][j] = emis[t][j] * (alpha[t - 1][0] * model.transition[0][j] +
                                            alpha[t - 1][1] * model.transition[1][j]);
            scale[t] = alpha[t][0] + alpha[t][1];
            alpha[t][0] /= scale[t];
            alpha[t][1] /= scale[t];
        }
        double ll = 0.0;
        for (size_t t = 0; t < n; ++t) ll += std::log(scale[t]);
        model.log_likelihoods.push_back(ll);

        // backward, same scaling
        beta[n - 1][0] = beta[n - 1][1] = 1.0 / scale[n - 1];
        for (size_t t = n - 1; t-- > 0;) {
            for (int i = 0; i < 2; ++i) {
                beta[t][i] = 0.0;
                for (int j = 0; j < 2; ++j)
                    beta[t][i] += model.transition[i][j] * emis[t + 1][j] * beta[t + 1][j];
                beta[t][i] /= scale[t];
            }
        }

        // E-step accumulators
        double xi_num[2][2] = {{0, 0}, {0, 0}};
        double gamma_sum[2] = {0, 0};
        double gamma_sum_nolast[2] = {0, 0};
        double mean_num[2] = {0, 0};
        std::vector<std::vector<double>> gamma(n, std::vector<double>(2));
        for (size_t t = 0; t < n; ++t) {
            const double norm = alpha[t][0] * beta[t][0] + alpha[t][1] * beta[t][1];
            for (int j = 0; j < 2; ++j) {
                gamma[t][j] = alpha[t][j] * beta[t][j] / norm;
                gamma_sum[j] += gamma[t][j];
                mean_num[j] += gamma[t][j] * series[t];
                if (t + 1 < n) gamma_sum_nolast[j] += gamma[t][j];
            }
            if (t + 1 < n) {
                double denom = 0.0;
                double raw[2][2];
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        raw[i][j] = alpha[t][i] * model.transition[i][j] * emis[t + 1][j] *
                                    beta[t + 1][j];
                        denom += raw[i][j];
                    }
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) xi_num[i][j] += raw[i][j] / denom;
            }
        }

        // M-step
        for (int j = 0; j < 2; ++j) {
            model.initial[j] = gamma[0][j];
            model.means[j] = mean_num[j] / gamma_sum[j];
        }
        for (int j = 0; j < 2; ++j) {
            double var_num = 0.0;
            for (size_t t = 0; t < n; ++t) {
                const double d = series[t] - model.means[j];
                var_num += gamma[t][j] * d * d;
            }
            model.variances[j] = std::max(var_num / gamma_sum[j], config.variance_floor);
        }
        for (int i = 0; i < 2; ++i) {
            const double denom = std::max(gamma_sum_nolast[i], 1e-300);
            for (int j = 0; j < 2; ++j) model.transition[i][j] = xi_num[i][j] / denom;
            const double rowsum = model.transition[i][0] + model.transition[i][1];
            model.transition[i][0] /= rowsum;
            model.transition[i][1] /= rowsum;
        }

        if (ll - prev_ll < config.tol && iter > 0) break;
        prev_ll = ll;
    }
    canonicalize(model);
    return model;
}

std::vector<int> hmm_decode(const HmmModel& model, const std::vector<double>& series) {
    const size_t n = series.size();
    if (n == 0) return {};
    auto log_emis = [&](size_t t, int j) {
        return std::log(std::max(gauss_pdf(series[t], model.means[j], model.variances[j]), 1e-300));
    };
    std::vector<std::vector<double>> delta(n, std::vector<double>(2));
    std::vector<std::vector<int>> back(n, std::vector<int>(2, 0));
    for (int j = 0; j < 2; ++j)
        delta[0][j] = std::log(std::max(model.initial[j], 1e-300)) + log_emis(0, j);
    for (size_t t = 1; t < n; ++t) {
        for (int j = 0; j < 2; ++j) {
            double best = -std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int i = 0; i < 2; ++i) {
                const double cand =
                    delta[t - 1][i] + std::log(std::max(model.transition[i][j], 1e-300));
                if (cand > best) {
                    best = cand;
                    arg = i;
                }
            }
            delta[t][j] = best + log_emis(t, j);
            back[t][j] = arg;
        }
    }
    std::vector<int> path(n);
    path[n - 1] = delta[n - 1][1] > delta[n - 1][0] ? 1 : 0;
    for (size_t t = n - 1; t-- > 0;) path[t] = back[t + 1][path[t + 1]];
    return path;
}

} // namespace gi::numerics
