#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace omec {

using cdouble = std::complex<double>;

// Rates share one arbitrary angular-frequency unit. Only ratios matter.
struct SystemParams {
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double kappa1_int = 0.0;
    double kappa2_int = 0.0;
    double gamma = 1e-3;
    double G1 = 0.0;
    double G2 = 0.0;
    double omega_m = 0.0;
    double N_m = 0.0;
    double N_1 = 0.0;
    double N_2 = 0.0;

    double kappa1_tot() const { return kappa1 + kappa1_int; }
    double kappa2_tot() const { return kappa2 + kappa2_int; }
    bool lossy() const { return kappa1_int > 0.0 || kappa2_int > 0.0; }

    // Couplings chosen so that 4 G_i^2 / (gamma kappa_i,tot) = C_i.
    static SystemParams from_cooperativities(double C1, double C2, double kappa1 = 1.0,
                                             double kappa2 = 1.0, double gamma = 1e-3);
};

struct DerivedQuantities {
    double C1 = 0.0;
    double C2 = 0.0;
    std::optional<double> r;        // absent unless G1 > G2
    std::optional<double> G_tilde;  // absent when G2 > G1
    double gamma_tot = 0.0;
};

struct StabilityReport {
    bool stable_exact = false;
    bool stable_approx = false;
    double max_real_eig = 0.0;
    double margin = 0.0;  // gamma_tot
};

// Quadrature covariance matrix, ordering (x1, p1, ..., xN, pN), vacuum = identity.
struct QuadratureCM {
    int n_modes = 0;
    Eigen::MatrixXd V;

    QuadratureCM() = default;
    explicit QuadratureCM(Eigen::MatrixXd m) : n_modes(int(m.rows() / 2)), V(std::move(m)) {}
    Eigen::MatrixXd block(int i, int j) const { return V.block(2 * i, 2 * j, 2, 2); }
    QuadratureCM reduced(const std::vector<int>& modes) const;
};

enum class Mode { Cavity1 = 0, Cavity2 = 1, Mechanics = 2 };

// Error hierarchy. ParameterError maps to CLI exit code 2, NumericalError to 3.
struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidParameters : ParameterError {
    using ParameterError::ParameterError;
};
struct DomainError : ParameterError {
    using ParameterError::ParameterError;
};
struct NoSteadyState : ParameterError {
    using ParameterError::ParameterError;
};
struct InvalidState : ParameterError {
    using ParameterError::ParameterError;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : NumericalError {
    double omega;
    PoleError(const std::string& what, double w) : NumericalError(what), omega(w) {}
};
struct IntegrationError : NumericalError {
    double achieved;
    IntegrationError(const std::string& what, double tol) : NumericalError(what), achieved(tol) {}
};
struct MappingError : NumericalError {
    using NumericalError::NumericalError;
};
struct PurityError : NumericalError {
    using NumericalError::NumericalError;
};
struct StructureMismatch : NumericalError {
    using NumericalError::NumericalError;
};
struct ConsistencyError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace omec
