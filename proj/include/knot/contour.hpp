#pragma once

#include "knot/riemann.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace knot {

/// Parameters of the knot contour C^(N).
struct ContourSpec {
    int N = 1;             ///< counterclockwise turns around r = 0
    double rho0 = 1.0;     ///< radius of the loop joining the two rays
    double eps = 0.1;      ///< asymptotic slope of the rays
    double r_max = 30.0;   ///< truncation radius of the rays
    int n_samples = 400;   ///< sampling hint

    /// Throws std::invalid_argument on violated invariants.
    void validate() const;
};

enum class Segment { incoming_ray, loop, outgoing_ray };

std::string_view to_string(Segment s) noexcept;

/// Sampled realization of C^(N): incoming ray at theta_L = -pi + atan(eps)
/// from r_max down to rho0, a counterclockwise arc of radius rho0 up to
/// theta_R = 2 pi N - atan(eps), and the outgoing ray back to r_max. The path
/// parameter t runs over [0, 1], [1, 2], [2, 3] on the three pieces; rays are
/// uniform in log rho, the arc uniform in theta.
///
/// N = 0 is the straight line r = s - i rho0, s in [-r_max, r_max], t in [0, 1].
class ContourPath {
public:
    explicit ContourPath(const ContourSpec& spec);

    const ContourSpec& spec() const noexcept { return spec_; }
    const std::vector<double>& params() const noexcept { return t_; }
    const std::vector<SurfacePoint>& points() const noexcept { return points_; }
    const std::vector<cplx>& tangents() const noexcept { return tangents_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }
    std::size_t size() const noexcept { return points_.size(); }

    double t_begin() const noexcept { return 0.0; }
    double t_end() const noexcept { return spec_.N == 0 ? 1.0 : 3.0; }

    /// Exact geometry at any parameter value.
    SurfacePoint point_at(double t) const;
    cplx position_at(double t) const { return point_at(t).to_complex(); }
    cplx tangent_at(double t) const;
    Segment segment_at(double t) const noexcept;

    /// Angle between the rays and the real axis: atan(eps), or atan(rho0 / r_max)
    /// for the N = 0 line.
    double ray_angle() const noexcept;
    double theta_left() const noexcept;
    double theta_right() const noexcept;
    /// Total phase swept by the loop, 2 pi N + pi - 2 atan(eps).
    double arc_turn() const noexcept { return theta_right() - theta_left(); }

private:
    ContourSpec spec_;
    std::vector<double> t_;
    std::vector<SurfacePoint> points_;
    std::vector<cplx> tangents_;
    std::vector<Segment> segments_;
};

ContourPath build_contour(const ContourSpec& spec);

/// Number of turns recovered from the endpoint phases; throws
/// std::runtime_error if the phases are inconsistent with any integer.
int winding_number(const ContourPath& path);

struct ContourRecord {
    double t;
    double rho;
    double theta;
    double re;
    double im;
    std::optional<int> sector;  ///< empty on an anti-Stokes line
    Segment segment;
};

std::vector<ContourRecord> export_contour(const ContourPath& path);

/// CSV with header `t,rho,theta,re,im,sector,segment`, 17 significant digits.
void write_contour_csv(std::ostream& os, const ContourPath& path);

}  // namespace knot
