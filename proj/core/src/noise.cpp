#include "srd/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srd/errors.hpp"

namespace srd {

namespace {

std::vector<double> geometric(double c0, double decay, int K) {
    std::vector<double> c(K);
    double v = c0;
    for (int k = 0; k < K; ++k) {
        c[k] = v;
        v *= decay;
    }
    return c;
}

double geometric_tail(double c0, double decay, int K) {
    // sum_{k>K} c_k^2 for c_k = c0 decay^{k-1}
    if (!(std::abs(decay) < 1.0)) return std::numeric_limits<double>::infinity();
    double r2 = decay * decay;
    return c0 * c0 * std::pow(r2, K) / (1.0 - r2);
}

}  // namespace

LinearTable::LinearTable(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size() || xs_.empty())
        throw InvalidParameter("LinearTable: need matching nonempty abscissae/ordinates");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1])) throw InvalidParameter("LinearTable: abscissae must increase");
}

double LinearTable::operator()(double x) const {
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
}

NoiseFamily NoiseFamily::none(const SpatialGrid& grid) {
    NoiseFamily f(grid);
    f.state_independent_ = true;
    return f;
}

NoiseFamily NoiseFamily::holder_sqrt(const SpatialGrid& grid, double c0, double decay, int K) {
    if (K < 0) throw InvalidParameter("holder_sqrt: K must be nonnegative");
    NoiseFamily f(grid);
    auto c = geometric(c0, decay, K);
    for (int k = 0; k < K; ++k) {
        Mode m;
        m.shape.assign(grid.n, 1.0);
        m.shape_fn = [](double) { return 1.0; };
        m.profile = [](double r) { return std::sqrt(std::abs(r)); };
        // sqrt(|r|) <= 1 + |r| and |sqrt a - sqrt b| <= sqrt|a-b|
        m.alpha = c[k];
        m.beta = c[k];
        double ck = c[k];
        m.sigma = [ck](double r) { return ck * std::sqrt(r); };
        // scale the unit profile by c_k through the shape
        for (double& s : m.shape) s = ck;
        m.shape_fn = [ck](double) { return ck; };
        f.modes_.push_back(std::move(m));
    }
    f.tail_bound_ = 2.0 * geometric_tail(c0, decay, K);
    return f;
}

NoiseFamily NoiseFamily::lipschitz(const SpatialGrid& grid, double c0, double decay, int K) {
    if (K < 0) throw InvalidParameter("lipschitz: K must be nonnegative");
    NoiseFamily f(grid);
    auto c = geometric(c0, decay, K);
    for (int k = 0; k < K; ++k) {
        double ck = c[k];
        Mode m;
        m.shape.assign(grid.n, ck);
        m.shape_fn = [ck](double) { return ck; };
        m.profile = [](double r) { return r; };
        m.alpha = 0.0;
        m.beta = ck;
        m.sigma = [ck](double r) { return ck * r; };
        f.modes_.push_back(std::move(m));
    }
    f.tail_bound_ = geometric_tail(c0, decay, K);
    return f;
}

NoiseFamily NoiseFamily::additive(const SpatialGrid& grid, double q0, double decay, int K) {
    if (K < 0) throw InvalidParameter("additive: K must be nonnegative");
    NoiseFamily f(grid);
    auto q = geometric(q0, decay, K);
    for (int k = 0; k < K; ++k) {
        double qk = q[k];
        Mode m;
        m.shape.assign(grid.n, qk);
        m.shape_fn = [qk](double) { return qk; };
        m.profile = [](double) { return 1.0; };
        m.alpha = std::abs(qk);
        m.beta = 0.0;
        m.sigma = [](double) { return 0.0; };
        f.modes_.push_back(std::move(m));
    }
    f.tail_bound_ = geometric_tail(q0, decay, K);
    f.state_independent_ = true;
    return f;
}

NoiseFamily NoiseFamily::additive_modes(const SpatialGrid& grid, const SemigroupCache& cache,
                                        double q0, double decay, int K) {
    if (K < 0 || K > cache.size())
        throw InvalidParameter("additive_modes: K must be within the cached spectrum");
    NoiseFamily f(grid);
    auto q = geometric(q0, decay, K);
    for (int k = 0; k < K; ++k) {
        Mode m;
        m.shape = cache.eigenvector(k);
        double amax = 0.0;
        for (double& s : m.shape) {
            s *= q[k];
            amax = std::max(amax, std::abs(s));
        }
        // piecewise-linear extension of the sampled eigenvector; Dirichlet
        // modes extend to zero at the boundary, Neumann modes extend flat
        std::vector<double> xs, ys;
        xs.reserve(grid.n + 2);
        ys.reserve(grid.n + 2);
        if (grid.bc == Boundary::Dirichlet) {
            xs.push_back(0.0);
            ys.push_back(0.0);
        }
        for (int i = 0; i < grid.n; ++i) {
            xs.push_back(grid.nodes[i]);
            ys.push_back(m.shape[i]);
        }
        if (grid.bc == Boundary::Dirichlet) {
            xs.push_back(grid.length);
            ys.push_back(0.0);
        }
        m.shape_fn = LinearTable(std::move(xs), std::move(ys));
        m.profile = [](double) { return 1.0; };
        m.alpha = amax;
        m.beta = 0.0;
        m.sigma = [](double) { return 0.0; };
        f.modes_.push_back(std::move(m));
    }
    f.tail_bound_ = geometric_tail(q0, decay, K);
    f.state_independent_ = true;
    return f;
}

NoiseFamily NoiseFamily::truncated(const NoiseFamily& base, double cap) {
    if (!(cap > 0.0)) throw InvalidParameter("truncated: cap must be positive");
    NoiseFamily f(base.grid_);
    f.tail_bound_ = base.tail_bound_;
    f.state_independent_ = base.state_independent_;
    for (const Mode& bm : base.modes_) {
        Mode m = bm;
        auto inner = bm.profile;
        m.profile = [inner, cap](double r) { return inner(std::clamp(r, -cap, cap)); };
        f.modes_.push_back(std::move(m));
    }
    return f;
}

NoiseFamily NoiseFamily::custom(const SpatialGrid& grid, std::vector<Mode> modes,
                                double tail_bound) {
    NoiseFamily f(grid);
    for (const Mode& m : modes)
        if (static_cast<int>(m.shape.size()) != grid.n)
            throw InvalidParameter("NoiseFamily::custom: mode shape length != grid size");
    f.modes_ = std::move(modes);
    f.tail_bound_ = tail_bound;
    return f;
}

double NoiseFamily::g(int k, double x, double r) const {
    const Mode& m = modes_[k];
    double s = m.shape_fn ? m.shape_fn(x) : 0.0;
    return s * m.profile(r);
}

double NoiseFamily::h(double r) const {
    double sum = 0.0;
    for (const Mode& m : modes_)
        if (m.sigma) sum += m.sigma(r);
    return sum;
}

std::vector<double> NoiseFamily::alphas() const {
    std::vector<double> a(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) a[k] = modes_[k].alpha;
    return a;
}

std::vector<double> NoiseFamily::betas() const {
    std::vector<double> b(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) b[k] = modes_[k].beta;
    return b;
}

void NoiseFamily::eval_columns(std::span<const double> u, std::span<double> out) const {
    const int nn = n();
    for (int k = 0; k < K(); ++k) {
        const Mode& m = modes_[k];
        double* col = out.data() + static_cast<std::size_t>(k) * nn;
        for (int i = 0; i < nn; ++i) col[i] = m.shape[i] * m.profile(u[i]);
    }
}

std::vector<double> NoiseFamily::eval_columns(std::span<const double> u) const {
    std::vector<double> out(static_cast<std::size_t>(n()) * K());
    eval_columns(u, out);
    return out;
}

double NoiseFamily::hs_norm(std::span<const double> u, double p) const {
    if (!(p >= 1.0)) throw InvalidParameter("hs_norm: p must be >= 1");
    const int nn = n();
    std::vector<double> terms(nn);
    for (int i = 0; i < nn; ++i) {
        double sq = 0.0;
        for (int k = 0; k < K(); ++k) {
            double gi = modes_[k].shape[i] * modes_[k].profile(u[i]);
            sq += gi * gi;
        }
        terms[i] = grid_.weights[i] * std::pow(sq, 0.5 * p);
    }
    return std::pow(compensated_sum(terms), 1.0 / p);
}

}  // namespace srd
