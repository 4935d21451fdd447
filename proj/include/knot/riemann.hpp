#pragma once

#include <complex>
#include <optional>

namespace knot {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// A point on the infinitely-sheeted Riemann surface of log r.
///
/// The phase is stored unwrapped: (rho, theta) and (rho, theta + 2 pi) project
/// to the same complex number but are different points. The sheet index is
/// derived from theta, never stored.
class SurfacePoint {
public:
    /// Throws std::domain_error unless rho > 0 and both values are finite.
    SurfacePoint(double rho, double theta);

    double rho() const noexcept { return rho_; }
    double theta() const noexcept { return theta_; }

    /// Canonical complex projection rho * e^{i theta}.
    cplx to_complex() const noexcept;

    /// sqrt(r) on this sheet, sqrt(rho) e^{i theta / 2}.
    cplx sqrt() const noexcept;

    SurfacePoint scaled(double factor) const { return {rho_ * factor, theta_}; }
    SurfacePoint rotated(double dtheta) const { return {rho_, theta_ + dtheta}; }

    friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;

private:
    double rho_;
    double theta_;
};

/// The Hankel kind; kind two is H^(2).
enum class HankelKind { one, two };

inline constexpr double kSectorBoundaryTolerance = 1e-12;

/// Index k of the asymptotic sector S_k = {theta in (k pi - pi, k pi)}.
/// Throws SectorBoundaryError when theta is within 1e-12 of a multiple of pi.
int sector_of(const SurfacePoint& p);

/// Non-throwing variant; empty on a sector boundary.
std::optional<int> try_sector_of(const SurfacePoint& p) noexcept;

/// The Hankel kind that decays at large |r| inside S_k: H^(2) on even k,
/// H^(1) on odd k.
HankelKind decaying_kind_in_sector(int k) noexcept;

}  // namespace knot
