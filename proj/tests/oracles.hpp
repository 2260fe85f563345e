#pragma once

// Reference computations written independently of the library: plain
// per-row likelihoods, finite differences and exhaustive grids.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Multinomial log-likelihood summed row by row. theta is category-major
/// [a_j, b_j1..b_jp] over the non-reference categories in ascending order.
inline double multinomial_loglik(const Eigen::MatrixXd& x, const std::vector<int>& y, int categories, int reference,
                                 const Eigen::VectorXd& theta) {
    const int p = static_cast<int>(x.cols());
    double total = 0.0;
    for (int i = 0; i < x.rows(); ++i) {
        std::vector<double> eta(static_cast<std::size_t>(categories), 0.0);
        int block = 0;
        for (int j = 0; j < categories; ++j) {
            if (j == reference) continue;
            double e = theta(block * (p + 1));
            for (int c = 0; c < p; ++c) e += theta(block * (p + 1) + 1 + c) * x(i, c);
            eta[static_cast<std::size_t>(j)] = e;
            ++block;
        }
        double m = eta[0];
        for (double e : eta) m = std::max(m, e);
        double s = 0.0;
        for (double e : eta) s += std::exp(e - m);
        total += eta[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])] - m - std::log(s);
    }
    return total;
}

inline double logistic_loglik(const Eigen::MatrixXd& x, const std::vector<int>& y, const Eigen::VectorXd& beta) {
    double total = 0.0;
    for (int i = 0; i < x.rows(); ++i) {
        double eta = beta(0);
        for (int c = 0; c < x.cols(); ++c) eta += beta(c + 1) * x(i, c);
        // log p = -log(1+e^-eta), log(1-p) = -log(1+e^eta)
        total += y[static_cast<std::size_t>(i)] ? -std::log1p(std::exp(-eta)) : -std::log1p(std::exp(eta));
    }
    return total;
}

using Objective = std::function<double(const Eigen::VectorXd&)>;

inline Eigen::VectorXd central_gradient(const Objective& f, const Eigen::VectorXd& at, double h = 1e-5) {
    Eigen::VectorXd g(at.size());
    for (Eigen::Index k = 0; k < at.size(); ++k) {
        Eigen::VectorXd up = at, down = at;
        up(k) += h;
        down(k) -= h;
        g(k) = (f(up) - f(down)) / (2 * h);
    }
    return g;
}

/// Second-order central differences of f.
inline Eigen::MatrixXd central_hessian(const Objective& f, const Eigen::VectorXd& at, double h = 1e-4) {
    const auto n = at.size();
    Eigen::MatrixXd hess(n, n);
    const double f0 = f(at);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a; b < n; ++b) {
            double v;
            if (a == b) {
                Eigen::VectorXd up = at, down = at;
                up(a) += h;
                down(a) -= h;
                v = (f(up) - 2 * f0 + f(down)) / (h * h);
            } else {
                Eigen::VectorXd pp = at, pm = at, mp = at, mm = at;
                pp(a) += h; pp(b) += h;
                pm(a) += h; pm(b) -= h;
                mp(a) -= h; mp(b) += h;
                mm(a) -= h; mm(b) -= h;
                v = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
            }
            hess(a, b) = hess(b, a) = v;
        }
    }
    return hess;
}

/// Largest elementwise |a - b| / max(|b|, 1).
inline double max_rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::max(std::abs(b(i, j)), 1.0));
    return worst;
}

inline double frobenius_rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / b.norm();
}

/// Pools identical rows so grid evaluation is cheap: pattern -> per-category counts.
struct Pooled {
    std::vector<std::vector<double>> patterns;
    std::vector<std::vector<double>> counts;
};

inline Pooled pool(const Eigen::MatrixXd& x, const std::vector<int>& y, int categories) {
    std::map<std::vector<double>, std::vector<double>> m;
    for (int i = 0; i < x.rows(); ++i) {
        std::vector<double> key(static_cast<std::size_t>(x.cols()));
        for (int c = 0; c < x.cols(); ++c) key[static_cast<std::size_t>(c)] = x(i, c);
        auto& cnt = m[key];
        cnt.resize(static_cast<std::size_t>(categories), 0.0);
        cnt[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])] += 1.0;
    }
    Pooled out;
    for (auto& [k, v] : m) {
        out.patterns.push_back(k);
        out.counts.push_back(v);
    }
    return out;
}

/// Multinomial log-likelihood over pooled patterns (same parameter layout).
inline double pooled_loglik(const Pooled& d, int categories, int reference, const std::vector<double>& theta) {
    const std::size_t p = d.patterns.empty() ? 0 : d.patterns[0].size();
    double total = 0.0;
    std::vector<double> eta(static_cast<std::size_t>(categories));
    for (std::size_t u = 0; u < d.patterns.size(); ++u) {
        std::size_t block = 0;
        double m = 0.0;
        for (int j = 0; j < categories; ++j) {
            if (j == reference) {
                eta[static_cast<std::size_t>(j)] = 0.0;
                continue;
            }
            double e = theta[block * (p + 1)];
            for (std::size_t c = 0; c < p; ++c) e += theta[block * (p + 1) + 1 + c] * d.patterns[u][c];
            eta[static_cast<std::size_t>(j)] = e;
            m = std::max(m, e);
            ++block;
        }
        double s = 0.0;
        for (double e : eta) s += std::exp(e - m);
        const double lse = m + std::log(s);
        for (int j = 0; j < categories; ++j)
            total += d.counts[u][static_cast<std::size_t>(j)] * (eta[static_cast<std::size_t>(j)] - lse);
    }
    return total;
}

/// Maximum of `f` over the regular grid with `points` values per axis on [lo, hi]^k.
inline double grid_max(const std::function<double(const std::vector<double>&)>& f, std::size_t k, double lo,
                       double hi, int points) {
    std::vector<int> idx(k, 0);
    std::vector<double> theta(k, lo);
    const double step = (hi - lo) / (points - 1);
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t a = 0; a < k; ++a) theta[a] = lo + step * idx[a];
        best = std::max(best, f(theta));
        std::size_t a = 0;
        while (a < k && ++idx[a] == points) idx[a++] = 0;
        if (a == k) break;
    }
    return best;
}

/// Standard normal CDF through the complementary error function.
inline double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace oracle
