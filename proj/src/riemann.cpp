#include "knot/riemann.hpp"

#include "knot/errors.hpp"

#include <cmath>
#include <sstream>

namespace knot {

SurfacePoint::SurfacePoint(double rho, double theta) : rho_(rho), theta_(theta) {
    if (!(rho > 0.0) || !std::isfinite(rho) || !std::isfinite(theta)) {
        std::ostringstream os;
        os << "SurfacePoint requires finite rho > 0 (got rho=" << rho << ", theta=" << theta << ")";
        throw std::domain_error(os.str());
    }
}

cplx SurfacePoint::to_complex() const noexcept {
    return {rho_ * std::cos(theta_), rho_ * std::sin(theta_)};
}

cplx SurfacePoint::sqrt() const noexcept {
    return std::polar(std::sqrt(rho_), 0.5 * theta_);
}

std::optional<int> try_sector_of(const SurfacePoint& p) noexcept {
    const double turns = p.theta() / kPi;
    const double nearest = std::round(turns);
    if (std::abs(p.theta() - nearest * kPi) < kSectorBoundaryTolerance) return std::nullopt;
    return static_cast<int>(std::floor(turns)) + 1;
}

int sector_of(const SurfacePoint& p) {
    if (auto k = try_sector_of(p)) return *k;
    std::ostringstream os;
    os.precision(17);
    os << "phase " << p.theta() << " lies on an anti-Stokes line; sector undefined";
    throw SectorBoundaryError(os.str());
}

HankelKind decaying_kind_in_sector(int k) noexcept {
    return (k % 2 == 0) ? HankelKind::two : HankelKind::one;
}

}  // namespace knot
