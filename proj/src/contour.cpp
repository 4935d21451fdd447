#include "knot/contour.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace knot {

void ContourSpec::validate() const {
    std::ostringstream os;
    if (N < 0) os << "N must be >= 0; ";
    if (!(rho0 > 0.0)) os << "rho0 must be > 0; ";
    if (!(r_max > rho0)) os << "r_max must exceed rho0; ";
    if (!(eps > 0.0 && eps < 1.0)) os << "eps must lie in (0, 1); ";
    if (n_samples < 3) os << "n_samples must be >= 3; ";
    if (!std::isfinite(rho0) || !std::isfinite(r_max) || !std::isfinite(eps)) os << "non-finite parameter; ";
    const std::string msg = os.str();
    if (!msg.empty()) throw std::invalid_argument("invalid contour: " + msg.substr(0, msg.size() - 2));
}

std::string_view to_string(Segment s) noexcept {
    switch (s) {
        case Segment::incoming_ray: return "incoming-ray";
        case Segment::loop: return "loop";
        case Segment::outgoing_ray: return "outgoing-ray";
    }
    return "?";
}

double ContourPath::ray_angle() const noexcept {
    return spec_.N == 0 ? std::atan(spec_.rho0 / spec_.r_max) : std::atan(spec_.eps);
}

double ContourPath::theta_left() const noexcept { return -kPi + ray_angle(); }

double ContourPath::theta_right() const noexcept { return 2.0 * kPi * spec_.N - ray_angle(); }

Segment ContourPath::segment_at(double t) const noexcept {
    if (spec_.N == 0) return t < 0.5 ? Segment::incoming_ray : Segment::outgoing_ray;
    if (t < 1.0) return Segment::incoming_ray;
    if (t <= 2.0) return Segment::loop;
    return Segment::outgoing_ray;
}

SurfacePoint ContourPath::point_at(double t) const {
    const double R = spec_.r_max;
    const double r0 = spec_.rho0;
    if (spec_.N == 0) {
        const double s = R * (2.0 * t - 1.0);
        return {std::hypot(s, r0), std::atan2(-r0, s)};
    }
    if (t <= 1.0) return {R * std::pow(r0 / R, t), theta_left()};
    if (t <= 2.0) return {r0, theta_left() + (t - 1.0) * arc_turn()};
    return {r0 * std::pow(R / r0, t - 2.0), theta_right()};
}

cplx ContourPath::tangent_at(double t) const {
    const double R = spec_.r_max;
    const double r0 = spec_.rho0;
    if (spec_.N == 0) return {2.0 * R, 0.0};
    const cplx r = point_at(t).to_complex();
    if (t <= 1.0) return r * std::log(r0 / R);
    if (t <= 2.0) return cplx{0.0, arc_turn()} * r;
    return r * std::log(R / r0);
}

ContourPath::ContourPath(const ContourSpec& spec) : spec_(spec) {
    spec_.validate();
    auto push = [this](double t) {
        t_.push_back(t);
        points_.push_back(point_at(t));
        tangents_.push_back(tangent_at(t));
        segments_.push_back(segment_at(t));
    };
    if (spec_.N == 0) {
        const int n = std::max(spec_.n_samples, 3);
        for (int i = 0; i < n; ++i) push(static_cast<double>(i) / (n - 1));
        return;
    }
    // At least 32 samples per half turn on the loop.
    const int n_arc = std::max(spec_.n_samples / 2, static_cast<int>(std::ceil(32.0 * arc_turn() / kPi)));
    const int n_ray = std::max((spec_.n_samples - n_arc) / 2, 16);
    for (int i = 0; i < n_ray; ++i) push(static_cast<double>(i) / n_ray);
    for (int i = 0; i < n_arc; ++i) push(1.0 + static_cast<double>(i) / n_arc);
    for (int i = 0; i <= n_ray; ++i) push(2.0 + static_cast<double>(i) / n_ray);
}

ContourPath build_contour(const ContourSpec& spec) { return ContourPath(spec); }

int winding_number(const ContourPath& path) {
    const double first = path.points().front().theta();
    const double last = path.points().back().theta();
    const double turns = (last - first - kPi + 2.0 * path.ray_angle()) / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "malformed contour: endpoint phases give " << turns << " turns";
        throw std::runtime_error(os.str());
    }
    return static_cast<int>(rounded);
}

std::vector<ContourRecord> export_contour(const ContourPath& path) {
    std::vector<ContourRecord> rows;
    rows.reserve(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        const SurfacePoint& p = path.points()[i];
        const cplx r = p.to_complex();
        rows.push_back({path.params()[i], p.rho(), p.theta(), r.real(), r.imag(), try_sector_of(p),
                        path.segments()[i]});
    }
    return rows;
}

void write_contour_csv(std::ostream& os, const ContourPath& path) {
    const auto old_precision = os.precision(17);
    os << "t,rho,theta,re,im,sector,segment\n";
    for (const ContourRecord& row : export_contour(path)) {
        os << row.t << ',' << row.rho << ',' << row.theta << ',' << row.re << ',' << row.im << ',';
        if (row.sector) os << *row.sector;
        os << ',' << to_string(row.segment) << '\n';
    }
    os.precision(old_precision);
}

}  // namespace knot
