#include "shuttle/glm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "text.hpp"

namespace shuttle {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

// --- likelihood ---------------------------------------------------------------

MultinomialLikelihood::MultinomialLikelihood(const Eigen::MatrixXd& x, std::span<const int> y,
                                             std::size_t categories, std::size_t reference)
    : n_categories_(categories), reference_(reference), n_obs_(y.size()) {
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw FitError("design has " + std::to_string(x.rows()) + " rows but response has " +
                       std::to_string(y.size()));
    }
    if (categories < 2) throw FitError("need at least two response categories");
    if (reference >= categories) throw FitError("reference category out of range");

    const auto p = static_cast<std::size_t>(x.cols());
    std::map<std::vector<double>, std::size_t> index;
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<double>> counts;
    std::vector<double> key(p);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const int cat = y[static_cast<std::size_t>(i)];
        if (cat < 0 || static_cast<std::size_t>(cat) >= categories) {
            throw FitError("response " + std::to_string(cat) + " at row " + std::to_string(i) +
                           " is not a valid category index");
        }
        for (std::size_t c = 0; c < p; ++c) key[c] = x(i, static_cast<Eigen::Index>(c));
        auto [it, inserted] = index.try_emplace(key, rows.size());
        if (inserted) {
            rows.push_back(key);
            counts.emplace_back(categories, 0.0);
        }
        counts[it->second][static_cast<std::size_t>(cat)] += 1.0;
    }

    const auto u = static_cast<Eigen::Index>(rows.size());
    patterns_.resize(u, static_cast<Eigen::Index>(p));
    counts_.resize(u, static_cast<Eigen::Index>(categories));
    totals_.resize(u);
    for (Eigen::Index r = 0; r < u; ++r) {
        const auto ru = static_cast<std::size_t>(r);
        for (std::size_t c = 0; c < p; ++c) patterns_(r, static_cast<Eigen::Index>(c)) = rows[ru][c];
        double m = 0.0;
        for (std::size_t j = 0; j < categories; ++j) {
            counts_(r, static_cast<Eigen::Index>(j)) = counts[ru][j];
            m += counts[ru][j];
        }
        totals_(r) = m;
    }
}

Eigen::MatrixXd MultinomialLikelihood::probabilities(const Eigen::VectorXd& theta) const {
    const auto u = patterns_.rows();
    const auto t = static_cast<Eigen::Index>(n_terms());
    Eigen::MatrixXd prob(u, static_cast<Eigen::Index>(n_categories_));
    Eigen::VectorXd eta(static_cast<Eigen::Index>(n_categories_));
    for (Eigen::Index r = 0; r < u; ++r) {
        Eigen::Index block = 0;
        for (std::size_t j = 0; j < n_categories_; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            if (j == reference_) {
                eta(jj) = 0.0;
                continue;
            }
            const auto base = block * t;
            eta(jj) = theta(base) + patterns_.row(r).dot(theta.segment(base + 1, t - 1));
            ++block;
        }
        const double top = eta.maxCoeff();
        const Eigen::VectorXd e = (eta.array() - top).exp();
        prob.row(r) = e.transpose() / e.sum();
    }
    return prob;
}

double MultinomialLikelihood::log_likelihood(const Eigen::VectorXd& theta) const {
    const auto t = static_cast<Eigen::Index>(n_terms());
    double ll = 0.0;
    Eigen::VectorXd eta(static_cast<Eigen::Index>(n_categories_));
    for (Eigen::Index r = 0; r < patterns_.rows(); ++r) {
        Eigen::Index block = 0;
        for (std::size_t j = 0; j < n_categories_; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            if (j == reference_) {
                eta(jj) = 0.0;
                continue;
            }
            const auto base = block * t;
            eta(jj) = theta(base) + patterns_.row(r).dot(theta.segment(base + 1, t - 1));
            ++block;
        }
        const double top = eta.maxCoeff();
        const double lse = top + std::log((eta.array() - top).exp().sum());
        ll += counts_.row(r).dot(eta) - totals_(r) * lse;
    }
    return ll;
}

Eigen::VectorXd MultinomialLikelihood::score(const Eigen::VectorXd& theta) const {
    const auto t = static_cast<Eigen::Index>(n_terms());
    const Eigen::MatrixXd prob = probabilities(theta);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_params()));
    for (Eigen::Index r = 0; r < patterns_.rows(); ++r) {
        Eigen::Index block = 0;
        for (std::size_t j = 0; j < n_categories_; ++j) {
            if (j == reference_) continue;
            const auto jj = static_cast<Eigen::Index>(j);
            const double resid = counts_(r, jj) - totals_(r) * prob(r, jj);
            const auto base = block * t;
            g(base) += resid;
            g.segment(base + 1, t - 1) += resid * patterns_.row(r).transpose();
            ++block;
        }
    }
    return g;
}

Eigen::MatrixXd MultinomialLikelihood::information(const Eigen::VectorXd& theta) const {
    const auto t = static_cast<Eigen::Index>(n_terms());
    const auto k = static_cast<Eigen::Index>(n_params());
    const Eigen::MatrixXd prob = probabilities(theta);
    Eigen::MatrixXd info = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd xt(t);
    std::vector<Eigen::Index> cats;
    for (std::size_t j = 0; j < n_categories_; ++j) {
        if (j != reference_) cats.push_back(static_cast<Eigen::Index>(j));
    }
    for (Eigen::Index r = 0; r < patterns_.rows(); ++r) {
        xt(0) = 1.0;
        xt.tail(t - 1) = patterns_.row(r).transpose();
        const Eigen::MatrixXd outer = xt * xt.transpose();
        for (std::size_t a = 0; a < cats.size(); ++a) {
            const double pa = prob(r, cats[a]);
            for (std::size_t b = a; b < cats.size(); ++b) {
                const double pb = prob(r, cats[b]);
                const double w = totals_(r) * pa * ((a == b ? 1.0 : 0.0) - pb);
                const auto ia = static_cast<Eigen::Index>(a) * t;
                const auto ib = static_cast<Eigen::Index>(b) * t;
                info.block(ia, ib, t, t) += w * outer;
                if (a != b) info.block(ib, ia, t, t) += w * outer;
            }
        }
    }
    return info;
}

// --- fitting -------------------------------------------------------------------

namespace {

struct EngineResult {
    Eigen::VectorXd theta;
    Eigen::MatrixXd covariance;
    double log_likelihood = 0.0;
    FitDiagnostics diagnostics;
};

std::vector<std::string> labels_for(const std::vector<std::string>& categories, std::size_t reference,
                                    const std::vector<std::string>& columns, bool prefix_category) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < categories.size(); ++j) {
        if (j == reference) continue;
        const std::string prefix = prefix_category ? categories[j] + ":" : "";
        out.push_back(prefix + kInterceptLabel);
        for (const auto& c : columns) out.push_back(prefix + c);
    }
    return out;
}

// Names design columns that fall outside the numerical rank of [1 | X].
std::vector<std::string> collinear_columns(const Eigen::MatrixXd& patterns,
                                           const std::vector<std::string>& columns) {
    Eigen::MatrixXd full(patterns.rows(), patterns.cols() + 1);
    full.col(0).setOnes();
    full.rightCols(patterns.cols()) = patterns;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(full);
    qr.setThreshold(1e-10);
    const auto rank = qr.rank();
    std::vector<std::string> out;
    if (rank == full.cols()) return out;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = rank; i < full.cols(); ++i) {
        const auto col = perm(i);
        out.push_back(col == 0 ? std::string(kInterceptLabel) : columns[static_cast<std::size_t>(col - 1)]);
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

EngineResult run_newton(const MultinomialLikelihood& lik, const std::vector<std::string>& labels,
                        const std::vector<std::string>& columns, const FitOptions& opt) {
    const auto k = static_cast<Eigen::Index>(lik.n_params());
    EngineResult res;
    bool use_ridge = false;

    if (auto bad = collinear_columns(lik.patterns(), columns); !bad.empty()) {
        if (!opt.allow_ridge) {
            throw SingularInformationError("singular information matrix: collinear design columns: " + join(bad),
                                           std::move(bad));
        }
        use_ridge = true;
    }

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(k);
    double ll = lik.log_likelihood(theta);
    double last_change = std::numeric_limits<double>::infinity();
    double last_step = std::numeric_limits<double>::infinity();
    const double cap = opt.parameter_cap;

    std::vector<Eigen::Index> free_idx;
    std::vector<bool> fixed(static_cast<std::size_t>(k), false);
    Eigen::MatrixXd info;
    double grad_norm = 0.0;
    int iter = 0;
    Eigen::Index jumps = 0;
    int flat_iterations = 0;
    constexpr int kFlatIterations = 5;
    std::vector<bool> diverging(static_cast<std::size_t>(k), false);
    Eigen::VectorXd last_delta = Eigen::VectorXd::Zero(k);

    for (;; ++iter) {
        const Eigen::VectorXd g = lik.score(theta);
        info = lik.information(theta);

        // A parameter sitting on the cap whose score still points outward is
        // held fixed; the rest take the Newton step.
        free_idx.clear();
        grad_norm = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            fixed[iu] = std::abs(theta(i)) >= cap && g(i) * theta(i) >= 0.0;
            if (!fixed[iu]) {
                free_idx.push_back(i);
                grad_norm = std::max(grad_norm, std::abs(g(i)));
            }
        }

        if (iter > 0 && std::abs(last_change) < opt.loglik_tolerance * (1.0 + std::abs(ll)) &&
            last_step < opt.step_tolerance && grad_norm < opt.gradient_tolerance) {
            res.diagnostics.converged = true;
            break;
        }
        // Likelihood and score are flat but some parameters keep moving: they
        // are running off to infinity. Send them to the cap in one jump; when
        // the drift is not along single coordinates, stop after a few flat
        // iterations and flag the movers.
        if (iter > 0 && std::abs(last_change) < opt.loglik_tolerance * (1.0 + std::abs(ll)) &&
            grad_norm < opt.gradient_tolerance && last_step >= opt.step_tolerance) {
            if (++flat_iterations >= kFlatIterations) {
                for (Eigen::Index i = 0; i < k; ++i)
                    if (std::abs(last_delta(i)) >= opt.step_tolerance) diverging[static_cast<std::size_t>(i)] = true;
                res.diagnostics.converged = true;
                break;
            }
            if (jumps < k) {
                Eigen::VectorXd jump = theta;
                for (Eigen::Index i = 0; i < k; ++i)
                    if (std::abs(last_delta(i)) >= opt.step_tolerance) jump(i) = std::copysign(cap, last_delta(i));
                const double jump_ll = lik.log_likelihood(jump);
                ++jumps;
                if (jump_ll >= ll - opt.loglik_tolerance * (1.0 + std::abs(ll))) {
                    last_change = jump_ll - ll;
                    theta = jump;
                    ll = jump_ll;
                    continue;
                }
            }
        } else {
            flat_iterations = 0;
        }
        if (iter >= opt.max_iterations) {
            throw NonConvergenceError("Newton-Raphson did not converge in " + std::to_string(iter) +
                                          " iterations (gradient max-norm " + text::fixed(grad_norm, 8) + ")",
                                      theta, iter, grad_norm);
        }
        if (free_idx.empty()) {
            res.diagnostics.converged = true;
            break;
        }

        const auto nf = static_cast<Eigen::Index>(free_idx.size());
        Eigen::MatrixXd hff(nf, nf);
        Eigen::VectorXd gf(nf);
        for (Eigen::Index a = 0; a < nf; ++a) {
            gf(a) = g(free_idx[static_cast<std::size_t>(a)]);
            for (Eigen::Index b = 0; b < nf; ++b) {
                hff(a, b) = info(free_idx[static_cast<std::size_t>(a)], free_idx[static_cast<std::size_t>(b)]);
            }
        }
        if (use_ridge) hff.diagonal().array() += opt.ridge;

        Eigen::LDLT<Eigen::MatrixXd> ldlt(hff);
        Eigen::VectorXd delta;
        bool solved = ldlt.info() == Eigen::Success && ldlt.isPositive();
        if (solved) {
            delta = ldlt.solve(gf);
            solved = delta.allFinite();
        }
        if (!solved) {
            if (!opt.allow_ridge || use_ridge) {
                throw SingularInformationError("singular information matrix at iteration " + std::to_string(iter),
                                               collinear_columns(lik.patterns(), columns));
            }
            use_ridge = true;
            --iter;
            continue;
        }

        // Step halving until the log-likelihood does not decrease.
        double scale = 1.0;
        Eigen::VectorXd candidate = theta;
        double cand_ll = ll;
        bool accepted = false;
        for (int h = 0; h < 50; ++h, scale *= 0.5) {
            candidate = theta;
            for (Eigen::Index a = 0; a < nf; ++a) {
                const auto i = free_idx[static_cast<std::size_t>(a)];
                candidate(i) = std::clamp(theta(i) + scale * delta(a), -cap, cap);
            }
            cand_ll = lik.log_likelihood(candidate);
            if (cand_ll >= ll) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No ascent direction left at machine precision.
            candidate = theta;
            cand_ll = ll;
        }
        last_change = cand_ll - ll;
        last_delta = candidate - theta;
        last_step = last_delta.cwiseAbs().maxCoeff();
        theta = candidate;
        ll = cand_ll;
    }

    // Covariance over the free block; parameters held at the cap or still
    // drifting get NaN.
    std::erase_if(free_idx, [&](Eigen::Index i) { return diverging[static_cast<std::size_t>(i)]; });
    Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(k, k, kNaN);
    const auto nf = static_cast<Eigen::Index>(free_idx.size());
    if (nf > 0) {
        Eigen::MatrixXd hff(nf, nf);
        for (Eigen::Index a = 0; a < nf; ++a)
            for (Eigen::Index b = 0; b < nf; ++b)
                hff(a, b) = info(free_idx[static_cast<std::size_t>(a)], free_idx[static_cast<std::size_t>(b)]);
        if (use_ridge) hff.diagonal().array() += opt.ridge;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hff);
        Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(nf, nf));
        inv = 0.5 * (inv + inv.transpose());
        for (Eigen::Index a = 0; a < nf; ++a)
            for (Eigen::Index b = 0; b < nf; ++b)
                cov(free_idx[static_cast<std::size_t>(a)], free_idx[static_cast<std::size_t>(b)]) = inv(a, b);
    }

    for (Eigen::Index i = 0; i < k; ++i) {
        if (std::abs(theta(i)) >= cap || diverging[static_cast<std::size_t>(i)]) {
            res.diagnostics.separation_suspected = true;
            res.diagnostics.capped_parameters.push_back(labels[static_cast<std::size_t>(i)]);
        }
    }
    res.diagnostics.iterations = iter;
    res.diagnostics.gradient_norm = grad_norm;
    res.diagnostics.ridge_used = use_ridge;
    res.theta = std::move(theta);
    res.covariance = std::move(cov);
    res.log_likelihood = ll;
    return res;
}

void check_shape(const DesignMatrix& x, std::span<const int> y) {
    if (x.columns.size() != x.cols()) {
        throw FitError("design has " + std::to_string(x.cols()) + " columns but " +
                       std::to_string(x.columns.size()) + " labels");
    }
    if (x.rows() != y.size()) {
        throw FitError("design has " + std::to_string(x.rows()) + " rows but response has " +
                       std::to_string(y.size()));
    }
    if (x.rows() < x.cols() + 1) {
        throw FitError("need at least p+1 = " + std::to_string(x.cols() + 1) + " rows, got " +
                       std::to_string(x.rows()));
    }
}

}  // namespace

MultinomialFit fit_multinomial(const DesignMatrix& x, std::span<const int> y,
                               std::vector<std::string> categories, std::size_t reference,
                               const FitOptions& options) {
    check_shape(x, y);
    if (reference >= categories.size()) throw FitError("reference category out of range");
    std::vector<bool> seen(categories.size(), false);
    for (int v : y) {
        if (v >= 0 && static_cast<std::size_t>(v) < categories.size()) seen[static_cast<std::size_t>(v)] = true;
    }
    if (std::count(seen.begin(), seen.end(), true) < 2) {
        throw FitError("need at least two observed response categories");
    }

    const MultinomialLikelihood lik(x.values, y, categories.size(), reference);
    const auto labels = labels_for(categories, reference, x.columns, true);
    auto engine = run_newton(lik, labels, x.columns, options);

    MultinomialFit fit;
    fit.categories = std::move(categories);
    fit.reference = reference;
    fit.columns = x.columns;
    const auto t = static_cast<Eigen::Index>(lik.n_terms());
    const auto rows = static_cast<Eigen::Index>(fit.categories.size() - 1);
    fit.coefficients.resize(rows, t);
    for (Eigen::Index r = 0; r < rows; ++r) fit.coefficients.row(r) = engine.theta.segment(r * t, t).transpose();
    fit.covariance = std::move(engine.covariance);
    fit.log_likelihood = engine.log_likelihood;
    fit.n_params = lik.n_params();
    fit.n_obs = lik.n_obs();
    fit.bic = bic(fit.log_likelihood, fit.n_params, fit.n_obs);
    fit.diagnostics = std::move(engine.diagnostics);
    return fit;
}

BinaryFit fit_logistic(const DesignMatrix& x, std::span<const int> y, const FitOptions& options) {
    check_shape(x, y);
    std::size_t ones = 0;
    for (int v : y) {
        if (v != 0 && v != 1) throw FitError("binary response must be 0 or 1, got " + std::to_string(v));
        ones += static_cast<std::size_t>(v);
    }
    if (ones == 0 || ones == y.size()) throw FitError("binary response has only one class");

    const MultinomialLikelihood lik(x.values, y, 2, 0);
    std::vector<std::string> labels{kInterceptLabel};
    labels.insert(labels.end(), x.columns.begin(), x.columns.end());
    auto engine = run_newton(lik, labels, x.columns, options);

    BinaryFit fit;
    fit.columns = x.columns;
    fit.coefficients = std::move(engine.theta);
    fit.covariance = std::move(engine.covariance);
    fit.log_likelihood = engine.log_likelihood;
    fit.n_params = lik.n_params();
    fit.n_obs = lik.n_obs();
    fit.bic = bic(fit.log_likelihood, fit.n_params, fit.n_obs);
    fit.diagnostics = std::move(engine.diagnostics);
    return fit;
}

std::vector<std::size_t> MultinomialFit::non_reference() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < categories.size(); ++j)
        if (j != reference) out.push_back(j);
    return out;
}

std::optional<std::size_t> MultinomialFit::row_of(std::size_t category) const {
    if (category == reference || category >= categories.size()) return std::nullopt;
    return category < reference ? category : category - 1;
}

std::vector<std::string> MultinomialFit::parameter_labels() const {
    return labels_for(categories, reference, columns, true);
}

std::vector<std::string> BinaryFit::parameter_labels() const {
    std::vector<std::string> out{kInterceptLabel};
    out.insert(out.end(), columns.begin(), columns.end());
    return out;
}

// --- prediction ----------------------------------------------------------------

std::vector<double> predict_proba(const MultinomialFit& fit, std::span<const double> x) {
    if (x.size() != fit.columns.size()) {
        throw std::invalid_argument("predictor row has " + std::to_string(x.size()) + " entries, model expects " +
                                    std::to_string(fit.columns.size()));
    }
    const auto j_count = fit.categories.size();
    std::vector<double> eta(j_count, 0.0);
    for (std::size_t j = 0; j < j_count; ++j) {
        const auto row = fit.row_of(j);
        if (!row) continue;
        const auto r = static_cast<Eigen::Index>(*row);
        double v = fit.coefficients(r, 0);
        for (std::size_t c = 0; c < x.size(); ++c) v += fit.coefficients(r, static_cast<Eigen::Index>(c + 1)) * x[c];
        eta[j] = v;
    }
    const double top = *std::max_element(eta.begin(), eta.end());
    double sum = 0.0;
    for (auto& e : eta) {
        e = std::exp(e - top);
        sum += e;
    }
    for (auto& e : eta) e /= sum;
    return eta;
}

double predict_proba(const BinaryFit& fit, std::span<const double> x) {
    if (x.size() != fit.columns.size()) {
        throw std::invalid_argument("predictor row has " + std::to_string(x.size()) + " entries, model expects " +
                                    std::to_string(fit.columns.size()));
    }
    double eta = fit.coefficients(0);
    for (std::size_t c = 0; c < x.size(); ++c) eta += fit.coefficients(static_cast<Eigen::Index>(c + 1)) * x[c];
    return eta >= 0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta));
}

// --- inference -----------------------------------------------------------------

double normal_cdf(double z) {
    const double upper = 0.5 * two_sided_p(z);
    return z >= 0 ? 1.0 - upper : upper;
}

double two_sided_p(double z) {
    if (std::isnan(z)) return kNaN;
    const double x = std::abs(z);
    constexpr double p = 0.2316419;
    constexpr double b1 = 0.319381530, b2 = -0.356563782, b3 = 1.781477937, b4 = -1.821255978,
                     b5 = 1.330274429;
    const double t = 1.0 / (1.0 + p * x);
    const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    const double tail = density * t * (b1 + t * (b2 + t * (b3 + t * (b4 + t * b5))));
    return std::clamp(2.0 * tail, 0.0, 1.0);
}

std::string format_p_value(double p) {
    if (std::isnan(p)) return "NA";
    if (p < 0.0001) return "<0.0001";
    return text::fixed(p, 4);
}

WaldEntry wald_entry(double estimate, double variance) {
    WaldEntry e;
    e.estimate = estimate;
    if (std::isfinite(variance) && variance > 0.0) {
        e.se = std::sqrt(variance);
        e.z = estimate / *e.se;
        e.p_value = two_sided_p(*e.z);
    }
    return e;
}

WaldReport wald(const MultinomialFit& fit) {
    WaldReport report;
    const auto t = fit.coefficients.cols();
    Eigen::Index idx = 0;
    for (std::size_t j : fit.non_reference()) {
        const auto r = static_cast<Eigen::Index>(*fit.row_of(j));
        for (Eigen::Index c = 0; c < t; ++c, ++idx) {
            auto e = wald_entry(fit.coefficients(r, c), fit.covariance(idx, idx));
            e.category = fit.categories[j];
            e.term = c == 0 ? std::string(kInterceptLabel) : fit.columns[static_cast<std::size_t>(c - 1)];
            e.label = e.category + ":" + e.term;
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

WaldReport wald(const BinaryFit& fit) {
    WaldReport report;
    const auto labels = fit.parameter_labels();
    for (Eigen::Index i = 0; i < fit.coefficients.size(); ++i) {
        auto e = wald_entry(fit.coefficients(i), fit.covariance(i, i));
        e.term = labels[static_cast<std::size_t>(i)];
        e.label = e.term;
        report.entries.push_back(std::move(e));
    }
    return report;
}

WaldReport wald(const ModelFit& fit) {
    return std::visit([](const auto& f) { return wald(f); }, fit);
}

WaldReport WaldReport::filtered(double p_max) const {
    WaldReport out;
    for (const auto& e : entries) {
        if (e.term == kInterceptLabel) continue;
        if (e.p_value && *e.p_value < p_max) out.entries.push_back(e);
    }
    return out;
}

const WaldEntry* WaldReport::find(const std::string& category, const std::string& term) const {
    for (const auto& e : entries)
        if (e.category == category && e.term == term) return &e;
    return nullptr;
}

double bic(double log_likelihood, std::size_t n_params, std::size_t n_obs) {
    const double penalty = n_params == 0 ? 0.0 : static_cast<double>(n_params) * std::log(static_cast<double>(n_obs));
    return -2.0 * log_likelihood + penalty;
}

double bic(const MultinomialFit& fit) { return bic(fit.log_likelihood, fit.n_params, fit.n_obs); }
double bic(const BinaryFit& fit) { return bic(fit.log_likelihood, fit.n_params, fit.n_obs); }
double bic(const ModelFit& fit) {
    return std::visit([](const auto& f) { return bic(f); }, fit);
}

double odds_ratio(double estimate) { return std::exp(estimate); }

}  // namespace shuttle
