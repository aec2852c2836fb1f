#include "srd/quadrature.hpp"

#include <cmath>

#include "srd/errors.hpp"

namespace srd {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(fa, flm, fm, a, m);
    double right = simpson(fm, frm, fb, m, b);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = simpson(fa, fm, fb, a, b);
    return adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double log_substituted_integral(const std::function<double(double)>& f, double a, double b,
                                double tol) {
    if (!(a > 0.0) || !(b > a)) throw InvalidParameter("log_substituted_integral: need 0 < a < b");
    auto g = [&f](double x) {
        double r = std::exp(x);
        return f(r) * r;
    };
    return adaptive_simpson(g, std::log(a), std::log(b), tol);
}

}  // namespace srd
