#include "srd/stats.hpp"

#include <algorithm>
#include <cmath>

#include "srd/errors.hpp"
#include "srd/grid.hpp"

namespace srd {

MeanSe mean_se(std::span<const double> values) {
    MeanSe out;
    out.count = static_cast<long>(values.size());
    if (out.count == 0) return out;
    out.mean = compensated_sum(values) / static_cast<double>(out.count);
    if (out.count < 2) return out;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    double var = compensated_sum(sq) / static_cast<double>(out.count - 1);
    out.std_error = std::sqrt(var / static_cast<double>(out.count));
    return out;
}

double empirical_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidParameter("empirical_quantile: empty sample");
    if (!(q > 0.0) || q > 1.0) throw InvalidParameter("empirical_quantile: q must lie in (0,1]");
    std::sort(values.begin(), values.end());
    std::size_t idx = static_cast<std::size_t>(std::ceil(q * values.size()));
    if (idx == 0) idx = 1;
    if (idx > values.size()) idx = values.size();
    return values[idx - 1];
}

namespace {
double kolmogorov_tail(double lambda) {
    // Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2)
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}
}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidParameter("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        double xa = a[ia];
        double xb = b[ib];
        double x = std::min(xa, xb);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(ia / na - ib / nb));
    }

    double ne = std::sqrt(na * nb / (na + nb));
    double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return {d, kolmogorov_tail(lambda)};
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw InvalidParameter("normal_quantile: p must lie in (0,1)");
    // Acklam's rational approximation, refined with one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    }
    // Halley refinement against the exact CDF
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

double bonferroni_z(int tests, double family_alpha) {
    if (tests < 1) throw InvalidParameter("bonferroni_z: need at least one test");
    double per_test = family_alpha / tests;
    return normal_quantile(1.0 - 0.5 * per_test);
}

}  // namespace srd
