#pragma once

// Self-contained hypothesis-testing machinery: two-sided Mann-Whitney-
// Wilcoxon (exact by enumeration for small tie-free samples, normal
// approximation with tie and continuity correction otherwise), Pearson
// correlation with t-based significance, and OLS on z-normalized regressors
// with the full summary-statistics block. The normal/t/F tail probabilities
// are computed numerically (erfc and a continued-fraction incomplete beta),
// no table lookups.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pvauction/errors.hpp"

namespace pvauction {

// --------------------------------------------------------------------------
// Distribution tails.

double normal_cdf(double z);
// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
// Two-sided p for a t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);
// Upper tail P(F >= f) with (d1, d2) degrees of freedom.
double f_upper_tail(double f, double d1, double d2);

// --------------------------------------------------------------------------
// Mann-Whitney-Wilcoxon.

enum class RankPMethod { ExactEnumeration, NormalApprox };

struct RankTestResult {
    double u = 0;  // U statistic of group A (midranks)
    RankPMethod method = RankPMethod::NormalApprox;
    double z = 0;  // tie/continuity-corrected z, 0 under the exact method
    double p_value = 1;
    double mean_a = 0, mean_b = 0;
    std::size_t n_a = 0, n_b = 0;
};

// Exact path when n_a + n_b <= 16 and the pooled sample is tie-free.
RankTestResult mann_whitney(std::span<const double> a, std::span<const double> b);

// Exposed for cross-checking the two routes against each other.
double mann_whitney_exact_p(std::size_t n1, std::size_t n2, double u);
RankTestResult mann_whitney_normal(std::span<const double> a, std::span<const double> b);

// --------------------------------------------------------------------------
// Pearson correlation.

struct CorrelationResult {
    double r = 0;
    double t = 0;
    double p_value = 1;
    std::size_t n = 0;
};

CorrelationResult pearson_test(std::span<const double> x, std::span<const double> y);

// --------------------------------------------------------------------------
// OLS of y on [1, z(x1), z(x2)] where z() is the (mean 0, sd 1) score.

struct RegressionResult {
    double intercept = 0, beta_pvc6 = 0, beta_bcr = 0;
    double se_intercept = 0, se_pvc6 = 0, se_bcr = 0;
    double t_intercept = 0, t_pvc6 = 0, t_bcr = 0;
    double p_intercept = 1, p_pvc6 = 1, p_bcr = 1;
    double r_squared = 0, adj_r_squared = 0;
    double residual_se = 0;
    double f_statistic = 0, f_p_value = 1;
    long df = 0;  // n - 3
    std::size_t n = 0;
};

RegressionResult ols_normalized(std::span<const double> y, std::span<const double> pvc6,
                                std::span<const double> bcr);

// Sample z-scores ((x - mean) / sd, sd with n-1 denominator).
std::vector<double> z_scores(std::span<const double> x);

double mean_of(std::span<const double> x);

}  // namespace pvauction
