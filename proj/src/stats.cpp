#include "pvauction/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pvauction {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

double ln_gamma(double x) {
    return std::lgamma(x);
}

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-16;
    constexpr double kFpMin = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * std::log(x) +
                      b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    double x = df / (df + t * t);
    return std::min(1.0, incomplete_beta(df / 2.0, 0.5, x));
}

double f_upper_tail(double f, double d1, double d2) {
    if (f <= 0.0) return 1.0;
    return std::min(1.0, incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f)));
}

// --------------------------------------------------------------------------

namespace {

struct RankInfo {
    double u_a = 0;       // U of group A via midranks
    double tie_term = 0;  // sum of (t^3 - t) over tie groups
    bool has_ties = false;
};

RankInfo rank_statistics(std::span<const double> a, std::span<const double> b) {
    struct Tagged {
        double value;
        bool from_a;
    };
    std::vector<Tagged> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    RankInfo info;
    double rank_sum_a = 0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
        double t = static_cast<double>(j - i);
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].from_a) rank_sum_a += midrank;
        if (t > 1) {
            info.has_ties = true;
            info.tie_term += t * t * t - t;
        }
        i = j;
    }
    double n1 = static_cast<double>(a.size());
    info.u_a = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    return info;
}

double sample_mean(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

double mean_of(std::span<const double> x) {
    return sample_mean(x);
}

double mann_whitney_exact_p(std::size_t n1, std::size_t n2, double u) {
    // Count subsets of size n1 from ranks 1..n by rank sum; U = sum - n1(n1+1)/2.
    std::size_t n = n1 + n2;
    std::size_t max_u = n1 * n2;
    // ways[k][s]: subsets of size k with U value s, built up rank by rank
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(max_u + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t rank = 1; rank <= n; ++rank) {
        for (std::size_t k = std::min(rank, n1); k >= 1; --k) {
            // adding rank r as the k-th smallest element contributes r - k to U
            std::size_t add = rank - k;
            if (add > max_u) continue;
            auto& dst = ways[k];
            const auto& src = ways[k - 1];
            for (std::size_t s = max_u + 1; s-- > add;) {
                double w = src[s - add];
                if (w != 0.0) dst[s] += w;
            }
        }
    }
    double total = 0;
    for (double w : ways[n1]) total += w;

    double u_round = std::round(u);  // tie-free U values are integers
    double lower = 0, upper = 0;
    for (std::size_t s = 0; s <= max_u; ++s) {
        if (static_cast<double>(s) <= u_round) lower += ways[n1][s];
        if (static_cast<double>(s) >= u_round) upper += ways[n1][s];
    }
    double p = 2.0 * std::min(lower, upper) / total;
    return std::min(1.0, p);
}

RankTestResult mann_whitney_normal(std::span<const double> a, std::span<const double> b) {
    RankTestResult r;
    r.n_a = a.size();
    r.n_b = b.size();
    r.mean_a = sample_mean(a);
    r.mean_b = sample_mean(b);
    r.method = RankPMethod::NormalApprox;

    RankInfo info = rank_statistics(a, b);
    r.u = info.u_a;
    double n1 = static_cast<double>(a.size());
    double n2 = static_cast<double>(b.size());
    double n = n1 + n2;
    double mu = n1 * n2 / 2.0;
    double var = n1 * n2 / 12.0 * ((n + 1.0) - info.tie_term / (n * (n - 1.0)));
    if (var <= 0) {
        // every pooled value identical: no evidence either way
        r.z = 0;
        r.p_value = 1.0;
        return r;
    }
    double num = std::max(std::fabs(info.u_a - mu) - 0.5, 0.0);  // continuity correction
    r.z = num / std::sqrt(var);
    r.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(r.z)));
    return r;
}

RankTestResult mann_whitney(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ValidationError("mann_whitney: empty group");
    RankInfo info = rank_statistics(a, b);
    if (!info.has_ties && a.size() + b.size() <= 16) {
        RankTestResult r;
        r.n_a = a.size();
        r.n_b = b.size();
        r.mean_a = sample_mean(a);
        r.mean_b = sample_mean(b);
        r.method = RankPMethod::ExactEnumeration;
        r.u = info.u_a;
        r.z = 0;
        r.p_value = mann_whitney_exact_p(a.size(), b.size(), info.u_a);
        return r;
    }
    return mann_whitney_normal(a, b);
}

// --------------------------------------------------------------------------

CorrelationResult pearson_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("pearson_test: length mismatch");
    if (x.size() < 3) throw ValidationError("pearson_test: need n >= 3");
    std::size_t n = x.size();
    double mx = sample_mean(x), my = sample_mean(y);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0 || syy == 0) throw ValidationError("pearson_test: zero variance");

    CorrelationResult res;
    res.n = n;
    res.r = sxy / std::sqrt(sxx * syy);
    res.r = std::clamp(res.r, -1.0, 1.0);
    double df = static_cast<double>(n) - 2.0;
    double denom = 1.0 - res.r * res.r;
    if (denom <= 0) {
        res.t = std::numeric_limits<double>::infinity();
        res.p_value = 0.0;
    } else {
        res.t = res.r * std::sqrt(df / denom);
        res.p_value = student_t_two_sided_p(res.t, df);
    }
    return res;
}

// --------------------------------------------------------------------------

std::vector<double> z_scores(std::span<const double> x) {
    double m = sample_mean(x);
    double ss = 0;
    for (double v : x) ss += (v - m) * (v - m);
    double sd = std::sqrt(ss / (static_cast<double>(x.size()) - 1.0));
    if (sd == 0) throw ValidationError("z_scores: zero variance");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - m) / sd;
    return out;
}

RegressionResult ols_normalized(std::span<const double> y, std::span<const double> pvc6,
                                std::span<const double> bcr) {
    if (y.size() != pvc6.size() || y.size() != bcr.size())
        throw ValidationError("ols_normalized: length mismatch");
    if (y.size() < 4) throw ValidationError("ols_normalized: need n >= 4");
    std::size_t n = y.size();

    std::vector<double> z1 = z_scores(pvc6);
    std::vector<double> z2 = z_scores(bcr);
    double ybar = sample_mean(y);

    // Centered normal equations; intercept = mean(y) since the z columns
    // have exactly zero mean.
    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dy = y[i] - ybar;
        s11 += z1[i] * z1[i];
        s12 += z1[i] * z2[i];
        s22 += z2[i] * z2[i];
        s1y += z1[i] * dy;
        s2y += z2[i] * dy;
        syy += dy * dy;
    }
    double det = s11 * s22 - s12 * s12;
    if (std::fabs(det) <= 1e-10 * s11 * s22)
        throw ValidationError("ols_normalized: regressors are collinear");

    RegressionResult res;
    res.n = n;
    res.df = static_cast<long>(n) - 3;
    res.beta_pvc6 = (s22 * s1y - s12 * s2y) / det;
    res.beta_bcr = (s11 * s2y - s12 * s1y) / det;
    res.intercept = ybar;

    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = res.intercept + res.beta_pvc6 * z1[i] + res.beta_bcr * z2[i];
        double e = y[i] - fit;
        sse += e * e;
    }
    double sigma2 = sse / static_cast<double>(res.df);
    res.residual_se = std::sqrt(sigma2);

    // var(beta) = sigma^2 * (X'X)^{-1}; with centered regressors the
    // intercept block separates to sigma^2 / n.
    res.se_intercept = std::sqrt(sigma2 / static_cast<double>(n));
    res.se_pvc6 = std::sqrt(sigma2 * s22 / det);
    res.se_bcr = std::sqrt(sigma2 * s11 / det);

    auto t_and_p = [&](double beta, double se, double& t, double& p) {
        if (se == 0) {
            t = beta == 0 ? 0 : std::numeric_limits<double>::infinity();
            p = beta == 0 ? 1.0 : 0.0;
            return;
        }
        t = beta / se;
        p = student_t_two_sided_p(t, static_cast<double>(res.df));
    };
    t_and_p(res.intercept, res.se_intercept, res.t_intercept, res.p_intercept);
    t_and_p(res.beta_pvc6, res.se_pvc6, res.t_pvc6, res.p_pvc6);
    t_and_p(res.beta_bcr, res.se_bcr, res.t_bcr, res.p_bcr);

    if (syy == 0) {
        res.r_squared = 0;  // constant response: nothing to explain
        res.adj_r_squared = 0;
        res.f_statistic = 0;
        res.f_p_value = 1.0;
    } else {
        res.r_squared = 1.0 - sse / syy;
        double nn = static_cast<double>(n);
        res.adj_r_squared = 1.0 - (1.0 - res.r_squared) * (nn - 1.0) / (nn - 3.0);
        if (sse == 0) {
            res.f_statistic = std::numeric_limits<double>::infinity();
            res.f_p_value = 0.0;
        } else {
            res.f_statistic = (res.r_squared / 2.0) / ((1.0 - res.r_squared) / (nn - 3.0));
            res.f_p_value = f_upper_tail(res.f_statistic, 2.0, nn - 3.0);
        }
    }
    return res;
}

}  // namespace pvauction
