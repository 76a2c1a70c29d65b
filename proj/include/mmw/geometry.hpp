// SPDX-License-Identifier: Apache-2.0
//
// mmwave-pdp: first-order reflection channel model for outdoor mmWave links
// Copyright (C) 2026 The mmwave-pdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMW_GEOMETRY_HPP
#define MMW_GEOMETRY_HPP

// Planar geometry for the reflection model: the constant-delay ellipse, its
// tangency (reflection) points, image-method specular reflection, and the
// convex-polygon machinery used to measure blockage regions exactly.
//
// All types are templated on the scalar type and use Eigen fixed-size
// vectors for points. Double precision aliases are provided at the bottom.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mmw/errors.hpp"

namespace mmw
{

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

// Tolerance shared by every intersection and pruning predicate (meters).
template <typename Scalar>
inline constexpr Scalar grazing_tolerance = Scalar(1e-9);

template <typename Scalar>
inline Scalar cross2(const Point2<Scalar> &a, const Point2<Scalar> &b)
{
    return a.x() * b.y() - a.y() * b.x();
}

template <typename Scalar>
inline Point2<Scalar> unit_direction(Scalar angle)
{
    using std::cos;
    using std::sin;
    return Point2<Scalar>(cos(angle), sin(angle));
}

template <typename Scalar>
class Segment2
{
public:
    Segment2(const Point2<Scalar> &a, const Point2<Scalar> &b) : a_(a), b_(b)
    {
        if (!a.allFinite() || !b.allFinite())
            throw DomainError("Segment2: non-finite endpoint");
        if ((b - a).squaredNorm() <= Scalar(0))
            throw DomainError("Segment2: endpoints coincide");
    }

    const Point2<Scalar> &a() const { return a_; }
    const Point2<Scalar> &b() const { return b_; }
    Point2<Scalar> direction() const { return b_ - a_; }
    Scalar length() const { return (b_ - a_).norm(); }

private:
    Point2<Scalar> a_;
    Point2<Scalar> b_;
};

// A rectangular building. theta is the anticlockwise angle between the x-axis
// and the length side, restricted to (0, pi].
template <typename Scalar>
class OrientedRect
{
public:
    OrientedRect(const Point2<Scalar> &center, Scalar length, Scalar width, Scalar theta)
        : center_(center), length_(length), width_(width), theta_(theta)
    {
        if (!center.allFinite())
            throw DomainError("OrientedRect: non-finite center");
        if (!(length > Scalar(0)) || !(width > Scalar(0)))
            throw DomainError("OrientedRect: length and width must be positive");
        if (!(theta > Scalar(0)) || theta > std::numbers::pi_v<Scalar>)
            throw DomainError("OrientedRect: orientation must lie in (0, pi]");
    }

    const Point2<Scalar> &center() const { return center_; }
    Scalar length() const { return length_; }
    Scalar width() const { return width_; }
    Scalar theta() const { return theta_; }

    Point2<Scalar> length_axis() const { return unit_direction(theta_); }
    Point2<Scalar> width_axis() const { return Point2<Scalar>(-std::sin(theta_), std::cos(theta_)); }

    // Counter-clockwise, starting from the (-l/2, -w/2) corner in the local frame.
    std::array<Point2<Scalar>, 4> corners() const
    {
        const Point2<Scalar> hu = Scalar(0.5) * length_ * length_axis();
        const Point2<Scalar> hv = Scalar(0.5) * width_ * width_axis();
        return {center_ - hu - hv, center_ + hu - hv, center_ + hu + hv, center_ - hu + hv};
    }

    // Wall i runs from corner i to corner i+1; walls 0 and 2 are length sides.
    std::array<Segment2<Scalar>, 4> walls() const
    {
        const auto c = corners();
        return {Segment2<Scalar>(c[0], c[1]), Segment2<Scalar>(c[1], c[2]),
                Segment2<Scalar>(c[2], c[3]), Segment2<Scalar>(c[3], c[0])};
    }

    // Radius of the circumscribed circle, for cheap rejection tests.
    Scalar circumradius() const
    {
        return Scalar(0.5) * std::hypot(length_, width_);
    }

private:
    Point2<Scalar> center_;
    Scalar length_;
    Scalar width_;
    Scalar theta_;
};

// ---------------------------------------------------------------------------
// Convex polygons
// ---------------------------------------------------------------------------

template <typename Scalar>
class ConvexPolygon
{
public:
    using Vertices = std::vector<Point2<Scalar>>;

    // Vertices must be listed counter-clockwise. Duplicate and collinear
    // vertices are pruned first; throws DomainError if what remains is not a
    // strictly convex polygon with positive area.
    explicit ConvexPolygon(Vertices ccw, Scalar eps = grazing_tolerance<Scalar>)
    {
        auto poly = try_make(std::move(ccw), eps);
        if (!poly)
            throw DomainError("ConvexPolygon: vertices do not form a strictly convex CCW polygon");
        *this = std::move(*poly);
    }

    static std::optional<ConvexPolygon> try_make(Vertices ccw, Scalar eps = grazing_tolerance<Scalar>)
    {
        prune(ccw, eps);
        if (ccw.size() < 3)
            return std::nullopt;
        const std::size_t n = ccw.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const auto &p = ccw[i];
            const auto &q = ccw[(i + 1) % n];
            const auto &r = ccw[(i + 2) % n];
            if (cross2<Scalar>(q - p, r - q) <= Scalar(0))
                return std::nullopt;
        }
        ConvexPolygon poly;
        poly.vertices_ = std::move(ccw);
        if (!(poly.area() > Scalar(0)))
            return std::nullopt;
        return poly;
    }

    // Convex hull (Andrew's monotone chain). Throws if the points are
    // collinear or fewer than three distinct points remain.
    static ConvexPolygon hull(std::span<const Point2<Scalar>> points, Scalar eps = grazing_tolerance<Scalar>)
    {
        Vertices pts(points.begin(), points.end());
        std::sort(pts.begin(), pts.end(), [](const Point2<Scalar> &a, const Point2<Scalar> &b) {
            return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
        });
        if (pts.size() < 3)
            throw DomainError("ConvexPolygon::hull: need at least three points");

        Vertices h(2 * pts.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
        {
            while (k >= 2 && cross2<Scalar>(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= Scalar(0))
                --k;
            h[k++] = pts[i];
        }
        for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i)
        {
            while (k >= t && cross2<Scalar>(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= Scalar(0))
                --k;
            h[k++] = pts[i - 1];
        }
        h.resize(k - 1);
        return ConvexPolygon(std::move(h), eps);
    }

    const Vertices &vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    // Shoelace formula.
    Scalar area() const
    {
        Scalar twice = 0;
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i)
            twice += cross2<Scalar>(vertices_[i], vertices_[(i + 1) % n]);
        return Scalar(0.5) * twice;
    }

    bool contains(const Point2<Scalar> &p) const
    {
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const auto &a = vertices_[i];
            const auto &b = vertices_[(i + 1) % n];
            if (cross2<Scalar>(b - a, p - a) < Scalar(0))
                return false;
        }
        return true;
    }

private:
    ConvexPolygon() = default;

    // Removes repeated vertices and vertices within eps of the line through
    // their neighbours, until no more can be removed.
    static void prune(Vertices &v, Scalar eps)
    {
        bool changed = true;
        while (changed && v.size() >= 3)
        {
            changed = false;
            for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i)
            {
                const std::size_t n = v.size();
                const auto &prev = v[(i + n - 1) % n];
                const auto &cur = v[i];
                const auto &next = v[(i + 1) % n];
                const Point2<Scalar> span = next - prev;
                const Scalar span_len = span.norm();
                const bool duplicate = (cur - prev).norm() <= eps;
                const bool collinear = span_len <= eps || std::abs(cross2<Scalar>(span, cur - prev)) / span_len <= eps;
                if (duplicate || collinear)
                {
                    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    --i;
                }
            }
        }
    }

    Vertices vertices_;
};

template <typename Scalar>
inline Scalar polygon_area(const ConvexPolygon<Scalar> &p)
{
    return p.area();
}

// Sutherland-Hodgman clipping of a against each edge of b. Empty when the
// overlap has no area.
template <typename Scalar>
std::optional<ConvexPolygon<Scalar>> convex_intersection(const ConvexPolygon<Scalar> &a, const ConvexPolygon<Scalar> &b,
                                                         Scalar eps = grazing_tolerance<Scalar>)
{
    using Vertices = typename ConvexPolygon<Scalar>::Vertices;
    Vertices out = a.vertices();
    const auto &clip = b.vertices();
    const std::size_t m = clip.size();
    for (std::size_t e = 0; e < m && !out.empty(); ++e)
    {
        const Point2<Scalar> p = clip[e];
        const Point2<Scalar> edge = clip[(e + 1) % m] - p;
        Vertices in;
        in.swap(out);
        const std::size_t n = in.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const Point2<Scalar> &s = in[i];
            const Point2<Scalar> &t = in[(i + 1) % n];
            const Scalar ds = cross2<Scalar>(edge, s - p);
            const Scalar dt = cross2<Scalar>(edge, t - p);
            if (ds >= Scalar(0))
                out.push_back(s);
            if ((ds >= Scalar(0)) != (dt >= Scalar(0)))
                out.push_back(s + (ds / (ds - dt)) * (t - s));
        }
    }
    return ConvexPolygon<Scalar>::try_make(std::move(out), eps);
}

// ---------------------------------------------------------------------------
// Constant-delay ellipse
// ---------------------------------------------------------------------------

template <typename Scalar>
struct EllipseRadii
{
    Scalar major;
    Scalar minor;
};

// Half-axes of the ellipse of points whose summed distance to the foci
// (-D/2, 0) and (D/2, 0) equals speed * delay.
template <typename Scalar>
EllipseRadii<Scalar> ellipse_radii(Scalar distance, Scalar delay, Scalar speed)
{
    const Scalar path = speed * delay;
    if (!(path >= distance))
        throw DomainError("ellipse_radii: path length shorter than the focal distance");
    return {Scalar(0.5) * path, Scalar(0.5) * std::sqrt(path * path - distance * distance)};
}

template <typename Scalar>
class EllipseLocus
{
public:
    EllipseLocus(Scalar distance, Scalar path_length) : distance_(distance), path_length_(path_length)
    {
        if (!(distance >= Scalar(0)) || !(path_length >= distance))
            throw DomainError("EllipseLocus: need 0 <= D <= L_r");
    }

    Scalar distance() const { return distance_; }
    Scalar path_length() const { return path_length_; }
    Scalar major() const { return Scalar(0.5) * path_length_; }
    Scalar minor() const { return Scalar(0.5) * std::sqrt(path_length_ * path_length_ - distance_ * distance_); }
    Point2<Scalar> focus_tx() const { return Point2<Scalar>(-Scalar(0.5) * distance_, 0); }
    Point2<Scalar> focus_rx() const { return Point2<Scalar>(Scalar(0.5) * distance_, 0); }

private:
    Scalar distance_;
    Scalar path_length_;
};

// The four reflection points a family of identically oriented buildings can
// produce on one ellipse. Branches 1 and 3 are tangencies of the length-side
// wall (direction theta), branches 2 and 4 of the width-side wall (direction
// theta + pi/2). Branches 3 and 4 are the point reflections of 1 and 2
// through the origin.
enum class ReflectionBranch : int
{
    length_side = 1,
    width_side = 2,
    length_side_mirrored = 3,
    width_side_mirrored = 4,
};

// Point of the ellipse (foci +-D/2, path length L_r) whose tangent has
// direction theta (or theta + pi/2 for the width-side branches).
//
// With r = sqrt(L_r^2 - D^2 cos^2 phi) for tangent direction phi, the point is
//   ( L_r^2 sin phi / (2r), -(L_r^2 - D^2) cos phi / (2r) )
// which is the tan/sec form multiplied through by |cos phi|, so phi = pi/2
// needs no special case.
template <typename Scalar>
Point2<Scalar> reflection_point(Scalar distance, Scalar path_length, Scalar theta, ReflectionBranch branch)
{
    if (!(path_length > distance) || !(distance >= Scalar(0)))
        throw DomainError("reflection_point: path length must exceed the Tx-Rx distance");
    if (!(theta > Scalar(0)) || theta > std::numbers::pi_v<Scalar>)
        throw DomainError("reflection_point: orientation must lie in (0, pi]");

    const bool width_side = branch == ReflectionBranch::width_side || branch == ReflectionBranch::width_side_mirrored;
    const bool mirrored =
        branch == ReflectionBranch::length_side_mirrored || branch == ReflectionBranch::width_side_mirrored;
    const Scalar phi = width_side ? theta + std::numbers::pi_v<Scalar> / 2 : theta;

    const Scalar c = std::cos(phi);
    const Scalar s = std::sin(phi);
    const Scalar l2 = path_length * path_length;
    const Scalar d2 = distance * distance;
    const Scalar r = std::sqrt(l2 - d2 * c * c);
    Point2<Scalar> p(l2 * s / (2 * r), -(l2 - d2) * c / (2 * r));
    return mirrored ? Point2<Scalar>(-p) : p;
}

// ---------------------------------------------------------------------------
// Ray tracing primitives
// ---------------------------------------------------------------------------

template <typename Scalar>
struct SpecularHit
{
    Point2<Scalar> point;
    Scalar length; // |tx -> point| + |point -> rx|
};

// Image-method reflection off a wall segment. Empty unless tx and rx are
// strictly on the same side of the wall line and the specular point falls
// inside the segment.
template <typename Scalar>
std::optional<SpecularHit<Scalar>> specular_reflection(const Point2<Scalar> &tx, const Point2<Scalar> &rx,
                                                       const Segment2<Scalar> &wall)
{
    const Point2<Scalar> dir = wall.direction();
    const Scalar len = dir.norm();
    const Point2<Scalar> normal(-dir.y() / len, dir.x() / len);
    const Scalar dtx = normal.dot(tx - wall.a());
    const Scalar drx = normal.dot(rx - wall.a());
    const Scalar eps = grazing_tolerance<Scalar>;
    if (!(dtx * drx > Scalar(0)) || std::abs(dtx) <= eps || std::abs(drx) <= eps)
        return std::nullopt;

    const Point2<Scalar> image = tx - 2 * dtx * normal;
    const Scalar frac = std::abs(dtx) / (std::abs(dtx) + std::abs(drx));
    const Point2<Scalar> point = image + frac * (rx - image);
    const Scalar along = (point - wall.a()).dot(dir) / (len * len);
    if (!(along > Scalar(0) && along < Scalar(1)))
        return std::nullopt;
    return SpecularHit<Scalar>{point, (rx - image).norm()};
}

// True iff the segment passes through the rectangle shrunk by eps on every
// side, i.e. it penetrates the interior by more than eps. Touching a wall or
// a corner is not a blockage.
template <typename Scalar>
bool segment_intersects_rect(const Segment2<Scalar> &seg, const OrientedRect<Scalar> &rect,
                             Scalar eps = grazing_tolerance<Scalar>)
{
    const Scalar hu = Scalar(0.5) * rect.length() - eps;
    const Scalar hv = Scalar(0.5) * rect.width() - eps;
    if (hu <= Scalar(0) || hv <= Scalar(0))
        return false;

    const Point2<Scalar> u = rect.length_axis();
    const Point2<Scalar> v = rect.width_axis();
    const Point2<Scalar> p0 = seg.a() - rect.center();
    const Point2<Scalar> d = seg.direction();

    Scalar t0 = 0;
    Scalar t1 = 1;
    // Liang-Barsky against the two slabs of the local frame.
    const auto clip = [&](Scalar start, Scalar step, Scalar half) {
        if (step == Scalar(0))
            return std::abs(start) < half;
        Scalar ta = (-half - start) / step;
        Scalar tb = (half - start) / step;
        if (ta > tb)
            std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        return t0 < t1;
    };
    return clip(p0.dot(u), d.dot(u), hu) && clip(p0.dot(v), d.dot(v), hv);
}

// ---------------------------------------------------------------------------
// Blockage regions
// ---------------------------------------------------------------------------

// Set of centers for which an l x w building at orientation theta meets the
// segment: the Minkowski sum of the segment and the centered rectangle.
template <typename Scalar>
ConvexPolygon<Scalar> blockage_hexagon(const Segment2<Scalar> &seg, Scalar length, Scalar width, Scalar theta)
{
    const OrientedRect<Scalar> footprint(Point2<Scalar>::Zero(), length, width, theta);
    std::array<Point2<Scalar>, 8> pts;
    const auto corners = footprint.corners();
    for (std::size_t i = 0; i < 4; ++i)
    {
        pts[i] = seg.a() + corners[i];
        pts[i + 4] = seg.b() + corners[i];
    }
    return ConvexPolygon<Scalar>::hull(std::span<const Point2<Scalar>>(pts));
}

// Width of the rectangle measured perpendicular to the segment; the hexagon
// area is l*w + |seg| * projected_width.
template <typename Scalar>
Scalar projected_width(const Segment2<Scalar> &seg, Scalar length, Scalar width, Scalar theta)
{
    const Point2<Scalar> d = seg.direction() / seg.length();
    const Scalar cos_alpha = d.dot(unit_direction(theta));
    const Scalar sin_alpha = cross2<Scalar>(unit_direction(theta), d);
    return length * std::abs(sin_alpha) + width * std::abs(cos_alpha);
}

// Exact area of the union of the blockage regions of Tx->R1 and R1->Rx for
// the length-side reflection point R1 (branch 1).
template <typename Scalar>
Scalar exact_blockage_area(Scalar distance, Scalar path_length, Scalar theta, Scalar length, Scalar width)
{
    const Point2<Scalar> r1 = reflection_point(distance, path_length, theta, ReflectionBranch::length_side);
    const Point2<Scalar> tx(-Scalar(0.5) * distance, 0);
    const Point2<Scalar> rx(Scalar(0.5) * distance, 0);
    const auto first = blockage_hexagon(Segment2<Scalar>(tx, r1), length, width, theta);
    const auto second = blockage_hexagon(Segment2<Scalar>(r1, rx), length, width, theta);
    const auto overlap = convex_intersection(first, second);
    return first.area() + second.area() - (overlap ? overlap->area() : Scalar(0));
}

using Point2d = Point2<double>;
using Segment2d = Segment2<double>;
using OrientedRectd = OrientedRect<double>;
using ConvexPolygond = ConvexPolygon<double>;

} // namespace mmw

#endif
