#pragma once

#include <span>
#include <vector>

namespace srd {

struct MeanSe {
    double mean = 0.0;
    double std_error = 0.0;
    long count = 0;
};

/// Sample mean and standard error (sample std / sqrt(count)), reduced with
/// compensated summation in index order so the result is independent of how
/// the samples were produced across workers.
MeanSe mean_se(std::span<const double> values);

/// Empirical quantile by order statistic: the ceil(q * count)-th smallest.
double empirical_quantile(std::vector<double> values, double q);

struct KsResult {
    double statistic = 0.0;  // sup_x |F_a(x) - F_b(x)|
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value (small
/// effective-sample correction included).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Inverse standard normal CDF.
double normal_quantile(double p);

/// Two-sided z threshold for a family of `tests` tests whose uncorrected
/// per-test level matches the 3-sigma rule: the Bonferroni-adjusted
/// quantile z(alpha / (2 k)) with alpha = 0.0027.
double bonferroni_z(int tests, double family_alpha = 0.0027);

}  // namespace srd
