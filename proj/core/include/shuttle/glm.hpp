#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace shuttle {

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Newton iterations ran out before the convergence test passed.
class NonConvergenceError : public FitError {
public:
    NonConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, int iterations,
                        double gradient_norm)
        : FitError(what),
          last_iterate_(std::move(last_iterate)),
          iterations_(iterations),
          gradient_norm_(gradient_norm) {}

    const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
    int iterations() const noexcept { return iterations_; }
    double gradient_norm() const noexcept { return gradient_norm_; }

private:
    Eigen::VectorXd last_iterate_;
    int iterations_;
    double gradient_norm_;
};

/// The information matrix cannot be inverted. `collinear_columns` names the
/// design columns that are linear combinations of the others (including the
/// intercept), when the rank test could pin them down.
class SingularInformationError : public FitError {
public:
    SingularInformationError(const std::string& what, std::vector<std::string> collinear_columns)
        : FitError(what), collinear_columns_(std::move(collinear_columns)) {}

    const std::vector<std::string>& collinear_columns() const noexcept { return collinear_columns_; }

private:
    std::vector<std::string> collinear_columns_;
};

/// n x p matrix of 0/1 indicators. The intercept is implicit.
struct DesignMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> columns;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

struct FitOptions {
    int max_iterations = 100;
    /// Relative log-likelihood change: |dl| < tol * (1 + |l|).
    double loglik_tolerance = 1e-10;
    /// Max-norm of the score over parameters not held at the cap.
    double gradient_tolerance = 1e-6;
    /// Max-norm of the last Newton step. Keeps a parameter drifting to
    /// infinity (where l and the score are already flat) from passing as
    /// converged.
    double step_tolerance = 1e-5;
    /// |theta| is clamped here; hitting it marks the fit as separated.
    double parameter_cap = 30.0;
    /// Add `ridge` to the information diagonal when it is singular instead of throwing.
    bool allow_ridge = false;
    double ridge = 1e-8;
};

struct FitDiagnostics {
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = false;
    bool separation_suspected = false;
    bool ridge_used = false;
    /// Labels of the parameters pinned at +-parameter_cap, or still drifting
    /// towards infinity when the likelihood went flat.
    std::vector<std::string> capped_parameters;
};

/// Generalized logit fit: log(p_j / p_ref) = alpha_j + x' beta_j.
struct MultinomialFit {
    std::vector<std::string> categories;  // all response categories, in model order
    std::size_t reference = 0;            // index into categories
    std::vector<std::string> columns;     // predictor column labels

    /// (J-1) x (p+1). One row per non-reference category (ascending category
    /// index); column 0 is the intercept alpha_j.
    Eigen::MatrixXd coefficients;

    /// Covariance of the row-major flattening of `coefficients`. Entries for
    /// capped or diverging parameters are NaN.
    Eigen::MatrixXd covariance;

    double log_likelihood = 0.0;
    std::size_t n_params = 0;
    std::size_t n_obs = 0;
    double bic = 0.0;
    FitDiagnostics diagnostics;

    /// Category indices of the coefficient rows.
    std::vector<std::size_t> non_reference() const;
    /// Row of `coefficients` for a category; nullopt for the reference.
    std::optional<std::size_t> row_of(std::size_t category) const;
    /// "<category>:(Intercept)", "<category>:<column>", in covariance order.
    std::vector<std::string> parameter_labels() const;
};

/// Binary logistic fit: logit(p) = beta_0 + x' beta.
struct BinaryFit {
    std::vector<std::string> columns;
    Eigen::VectorXd coefficients;  // p+1, intercept first
    Eigen::MatrixXd covariance;
    double log_likelihood = 0.0;
    std::size_t n_params = 0;
    std::size_t n_obs = 0;
    double bic = 0.0;
    FitDiagnostics diagnostics;

    std::vector<std::string> parameter_labels() const;  // "(Intercept)", then columns
};

using ModelFit = std::variant<MultinomialFit, BinaryFit>;

inline constexpr const char* kInterceptLabel = "(Intercept)";

/// Log-likelihood, score and observed information of the generalized logit
/// model. Rows with identical covariate patterns are pooled on construction, so
/// evaluation cost scales with the number of distinct patterns.
///
/// Parameters are laid out category-major: for each non-reference category j
/// in ascending order, [alpha_j, beta_j1, ..., beta_jp].
class MultinomialLikelihood {
public:
    MultinomialLikelihood(const Eigen::MatrixXd& x, std::span<const int> y, std::size_t categories,
                          std::size_t reference);

    std::size_t n_params() const noexcept { return (n_categories_ - 1) * n_terms(); }
    std::size_t n_terms() const noexcept { return static_cast<std::size_t>(patterns_.cols()) + 1; }
    std::size_t n_obs() const noexcept { return n_obs_; }
    std::size_t n_patterns() const noexcept { return static_cast<std::size_t>(patterns_.rows()); }
    const Eigen::MatrixXd& patterns() const noexcept { return patterns_; }

    double log_likelihood(const Eigen::VectorXd& theta) const;
    Eigen::VectorXd score(const Eigen::VectorXd& theta) const;
    /// Negative Hessian of the log-likelihood.
    Eigen::MatrixXd information(const Eigen::VectorXd& theta) const;

private:
    // Probabilities for every pattern (U x J) at theta.
    Eigen::MatrixXd probabilities(const Eigen::VectorXd& theta) const;

    Eigen::MatrixXd patterns_;  // U x p distinct covariate rows
    Eigen::MatrixXd counts_;    // U x J response counts
    Eigen::VectorXd totals_;    // U
    std::size_t n_categories_;
    std::size_t reference_;
    std::size_t n_obs_;
};

/// Maximum-likelihood fit by Newton-Raphson with step halving.
/// `y` holds category indices in [0, categories.size()).
MultinomialFit fit_multinomial(const DesignMatrix& x, std::span<const int> y,
                               std::vector<std::string> categories, std::size_t reference,
                               const FitOptions& options = {});

/// `y` holds 0/1 outcomes.
BinaryFit fit_logistic(const DesignMatrix& x, std::span<const int> y, const FitOptions& options = {});

std::vector<double> predict_proba(const MultinomialFit& fit, std::span<const double> x);
double predict_proba(const BinaryFit& fit, std::span<const double> x);

struct WaldEntry {
    std::string label;
    std::string category;  // response category; empty for binary fits
    std::string term;      // "(Intercept)" or a column label
    double estimate = 0.0;
    // Absent when the variance is non-positive or undefined.
    std::optional<double> se;
    std::optional<double> z;
    std::optional<double> p_value;
};

struct WaldReport {
    std::vector<WaldEntry> entries;

    /// Slope entries with p < p_max, intercepts dropped: the usual compact
    /// coefficient table.
    WaldReport filtered(double p_max = 0.2) const;
    const WaldEntry* find(const std::string& category, const std::string& term) const;
};

WaldReport wald(const MultinomialFit& fit);
WaldReport wald(const BinaryFit& fit);
WaldReport wald(const ModelFit& fit);

/// z and two-sided p for a single estimate.
WaldEntry wald_entry(double estimate, double variance);

/// Standard normal CDF via the Abramowitz-Stegun 26.2.17 rational
/// approximation (|error| < 7.5e-8).
double normal_cdf(double z);
double two_sided_p(double z);
/// Four decimals, "<0.0001" below that.
std::string format_p_value(double p);

double bic(double log_likelihood, std::size_t n_params, std::size_t n_obs);
double bic(const MultinomialFit& fit);
double bic(const BinaryFit& fit);
double bic(const ModelFit& fit);

double odds_ratio(double estimate);

}  // namespace shuttle
