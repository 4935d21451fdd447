#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace knot {

/// Raised when a phase lies on an anti-Stokes line theta = k*pi, where the
/// asymptotic sector is undefined.
class SectorBoundaryError : public std::domain_error {
public:
    explicit SectorBoundaryError(const std::string& what) : std::domain_error(what) {}
};

/// A series or expansion did not reach its accuracy target.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// ODE integration failure; carries the path parameter and complex position
/// where it happened.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t, std::complex<double> r)
        : std::runtime_error(what), t_(t), r_(r) {}
    double t() const noexcept { return t_; }
    std::complex<double> r() const noexcept { return r_; }

private:
    double t_;
    std::complex<double> r_;
};

}  // namespace knot
